"""How the two behavioral primitives distort objective quantities.

The weighting function bends probabilities: small chances feel larger than
they are, near-certainties feel smaller, and 1/e maps to itself. The value
frame bends outcomes: gains flatten, losses steepen, and everything is
measured against a reference point. Run this to print both curves and, if
matplotlib is around, save them as PNGs next to this script.
"""
import numpy as np

from ptgrid import ValueFrame, frame_value, prelec_weight

probs = np.linspace(0.01, 0.99, 15)

print("Prelec weighting, w(p) = exp(-(-ln p)^alpha)")
print(f"{'p':>6} " + " ".join(f"a={a:<4}" for a in (1.0, 0.65, 0.4, 0.2)))
for p in probs:
    row = " ".join(f"{prelec_weight(float(p), a):.4f}" for a in (1.0, 0.65, 0.4, 0.2))
    print(f"{p:6.2f} {row}")

print()
print("fixed point: w(1/e) =", prelec_weight(1 / np.e, 0.4), "= 1/e =", 1 / np.e)
print("below 1/e probabilities are overweighted, above it underweighted")

frame = ValueFrame(reference=0.0, gamma=2.25, beta_gain=0.88, beta_loss=0.88)
values = np.linspace(-100, 100, 11)
print()
print("Value framing, reference 0, loss aversion 2.25, curvature 0.88")
print(f"{'outcome':>8} {'framed':>10}")
for v in values:
    print(f"{v:8.1f} {frame_value(float(v), frame):10.3f}")
print("a $50 loss stings more than a $50 gain pleases:",
      abs(frame_value(-50.0, frame)) / frame_value(50.0, frame))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    p = np.linspace(0.001, 0.999, 400)
    for a in (1.0, 0.65, 0.4, 0.2):
        ax1.plot(p, prelec_weight(p, a), label=f"alpha={a}")
    ax1.plot(p, p, "k--", lw=0.5)
    ax1.set_xlabel("objective probability")
    ax1.set_ylabel("decision weight")
    ax1.legend()
    u = np.linspace(-100, 100, 400)
    ax2.plot(u, frame_value(u, frame))
    ax2.plot(u, u, "k--", lw=0.5)
    ax2.set_xlabel("objective outcome")
    ax2.set_ylabel("framed value")
    fig.tight_layout()
    fig.savefig("weighting_and_framing.png", dpi=120)
    print("\nsaved weighting_and_framing.png")
except ImportError:
    print("\n(matplotlib not installed; skipping the plot)")
