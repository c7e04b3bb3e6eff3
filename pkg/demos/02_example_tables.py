"""Outcome tables for the three bundled example procedures.

For each outcome (j, eps) we print the normalized Bob map V, the correction
U that undoes it and the outcome probability kappa**2. A random target is
then teleported through every outcome to show that the fidelity is 1.
"""

import numpy as np

from qwteleport import load_example, outcome_table, teleport_round
from qwteleport.algebra import random_unit_vector


def fmt(m):
    return "[" + "; ".join(", ".join(f"{z.real:+.3f}{z.imag:+.3f}j" for z in row) for row in m) + "]"


rng = np.random.default_rng(0)
phi = random_unit_vector(2, rng)
for number in (1, 2, 3):
    proc, _ = load_example(number)
    print(f"example {number}")
    for a in outcome_table(proc):
        _, fid = teleport_round(proc, phi, a.outcome)
        print(f"  {str(a.outcome):<7} p={a.probability:.4f}  V={fmt(a.v_normalized)}")
        print(f"  {'':<7} fidelity={fid:.12f}  U={fmt(a.correction)}")
    print()
