"""Which procedures teleport?

Take example 1 and break it one piece at a time: trivial measurement
bases, a biased coin, a generic position basis. Each variant is classified
both by the closed-form conditions and by directly testing every V~.
"""

import numpy as np

from qwteleport import Procedure, load_example, verdict
from qwteleport.algebra import I2, I3, haar_unitary

base, _ = load_example(1)
rng = np.random.default_rng(3)
biased = np.array([np.sqrt(0.7), np.sqrt(0.3)])

variants = {
    "example 1": base,
    "H1 = I": Procedure(base.psi, base.c1, base.c2, I2, base.h2_tilde),
    "H2 = I": Procedure(base.psi, base.c1, base.c2, base.h1, I3),
    "biased coin": Procedure(biased, base.c1, I2, base.h1, base.h2_tilde),
    "Haar H2": Procedure(base.psi, base.c1, base.c2, base.h1, haar_unitary(3, rng)),
    "Haar C1": Procedure(base.psi, haar_unitary(2, rng), base.c2, base.h1, base.h2_tilde),
}

print(f"{'variant':<13} {'I':>6} {'II':>6} {'III-i':>6} {'III-ii':>7} {'theorem':>8} {'oracle':>7}")
for name, proc in variants.items():
    v = verdict(proc)
    print(f"{name:<13} {v.cond_I!s:>6} {v.cond_II!s:>6} {v.cond_III_i!s:>6} {v.cond_III_ii!s:>7}"
          f" {v.theorem_member!s:>8} {v.oracle_member!s:>7}")
