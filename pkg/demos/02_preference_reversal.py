"""The buy-in letter experiment: identical alternatives, opposite choices.

A certain $50 credit and a 50% shot at $100 have the same expected value,
as do a certain $50 bill and a 50% shot at a $100 bill. A rational consumer
is indifferent in both pairs. A behavioral one takes the sure credit in the
gain frame yet gambles in the loss frame, purely because of how the letter
is worded.
"""
from ptgrid import PtProfile, preference_demo

print("rational baseline")
print(preference_demo(PtProfile.eut()).render())
print()

print("canonical behavioral profile (alpha 0.65, loss aversion 2.25)")
report = preference_demo()
print(report.render())
print()

print("the gap closes as the profile approaches rationality:")
for eps in (0.35, 0.2, 0.1, 0.05, 0.01):
    p = PtProfile.behavioral(alpha=1 - eps, gamma=1 + eps, beta=1 - eps)
    r = preference_demo(p)
    gap = r.pt_values["b"] - r.pt_values["a"]
    print(f"  distance from rational {eps:4.2f}: gain-pair gap {gap:8.4f}")
