"""Sizing a surface for a diversity or coding-gain target.

The equivalent channel's diversity order grows linearly with the number
of reflectors and the coding gain roughly linearly too (past the small
sizes), so both targets can be inverted for the minimum element count.
The script sizes surfaces for several targets under different
phase-error assumptions and shows the cost of sloppier phase control.
"""

import math

from rislab import NoError, Quantizer, Rayleigh, Rician, VonMises, gains
from rislab.equiv_channel import LrsScenario
from rislab.performance import reflectors_for_coding_gain, reflectors_for_diversity

a = math.sqrt(Rician(1.0).mean_magnitude() * Rayleigh().mean_magnitude())
models = {
    "ideal": NoError(),
    "von Mises kappa=8": VonMises(8.0),
    "quantizer 2 bits": Quantizer(2),
    "von Mises kappa=2": VonMises(2.0),
}

print("reflectors needed for a diversity order of 20:")
for name, pe in models.items():
    phi1, phi2 = pe.trig_moment(1), pe.trig_moment(2)
    n = reflectors_for_diversity(20.0, a, phi1, phi2)
    g = gains(LrsScenario(n, 1.0, Rician(1.0), Rayleigh(), pe))
    print(f"  {name:20s} n={n:4d}  (achieved G_d={g.diversity_gain:.2f}, G_c={g.coding_gain:.1f})")

print("\nreflectors needed for a coding gain of 2000 (33 dB):")
for name, pe in models.items():
    phi1, phi2 = pe.trig_moment(1), pe.trig_moment(2)
    plan = reflectors_for_coding_gain(2000.0, 1.0, a, phi1, phi2)
    print(f"  {name:20s} n={plan.n:4d}  (achieved G_c={plan.achieved:.1f})")

print("\nan unreachable target reports the best achievable value instead:")
plan = reflectors_for_coding_gain(1e9, 1.0, a, 0.9, 0.7, n_max=10**5)
print(
    f"  target 1e9 with n capped at 1e5: feasible={plan.feasible}, "
    f"best G_c={plan.achieved:.3e} at n={plan.searched_up_to}"
)
