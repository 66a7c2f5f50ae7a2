"""The two-consumer storage game: who buys, who sells, and what the company
earns, as the selling price moves.

Each active consumer either charges its storage unit (buying at the company
price) or discharges its surplus (earning the selling price), and both share
a quadratic penalty for pushing total generation off its set-point. The
rational equilibrium drifts smoothly from buying toward selling as the
selling price rises; behavioral consumers overshoot it on both sides, and
cross over exactly where the rational buy probability passes one half.
"""
import numpy as np

from ptgrid import StorageConsumer, StorageGridConfig
from ptgrid.storage import framing_sweep, sweep_company_price, sweep_selling_price

consumers = (
    StorageConsumer(load=20.0, surplus=10.0),
    StorageConsumer(load=15.0, surplus=5.0),
)
grid = StorageGridConfig(
    passive_load=80.0,
    nominal_generation=100.0,
    penalty_coeff=0.012,
    company_price=0.145,
    selling_price=0.06,
)

b_grid = np.linspace(0.03, 0.09, 13)
rows = sweep_selling_price(consumers, grid, b_grid, alphas=[0.25, 0.65])

print("buy probabilities vs selling price (consumer 1)")
print(f"{'b':>6} {'rational':>9} {'a=0.65':>8} {'a=0.25':>8}")
for r in rows:
    print(f"{r.value:6.3f} {r.buy_probs['eut'][0]:9.4f} "
          f"{r.buy_probs[0.65][0]:8.4f} {r.buy_probs[0.25][0]:8.4f}")

print("\ncompany revenue collected from the two consumers")
print(f"{'b':>6} {'rational':>9} {'a=0.65':>8} {'a=0.25':>8}")
for r in rows[::3]:
    print(f"{r.value:6.3f} {r.revenue['eut']:9.4f} "
          f"{r.revenue[0.65]:8.4f} {r.revenue[0.25]:8.4f}")
print("revenue falls as selling gets more attractive; behavioral consumers")
print("overpay at low prices and undercut at high ones")

print("\nexpected net load vs the company price")
rho_rows = sweep_company_price(consumers, grid, np.linspace(0.10, 0.20, 11), [0.25])
for r in rho_rows[::2]:
    print(f"  rho={r.value:5.3f}: rational {r.load['eut']:7.3f} kWh, "
          f"behavioral {r.load[0.25]:7.3f} kWh")

print("\nframing: total utility as the reference point rises")
frame_rows = framing_sweep(consumers, grid, np.linspace(0, 2, 5), gammas=[1.0, 2.0])
for gamma in (1.0, 2.0):
    line = "  ".join(
        f"{r.pt_total:8.3f}" for r in frame_rows if r.gamma == gamma
    )
    print(f"  gamma={gamma}: {line}")
print("a higher reference point turns the same cash flows into felt losses;")
print("doubling loss aversion doubles how much that hurts")
