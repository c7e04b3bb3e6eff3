"""Spread of a two-coin walk.

Start at the origin with both coins in |R>, put a Hadamard on each coin and
run two steps. The walker ends on {2, 0, -2}; the printout shows how the
weight splits and that the state stays normalized.
"""

from qwteleport import WalkConfig, evolve, initial_state, position_distribution
from qwteleport.algebra import HADAMARD, KET_R

walk = WalkConfig((HADAMARD, HADAMARD))
state = initial_state(0, [KET_R, KET_R])
for n in range(walk.m + 1):
    s = evolve(state, walk, n)
    dist = position_distribution(s)
    cells = "  ".join(f"x={x:+d}: {p:.3f}" for x, p in sorted(dist.items(), reverse=True))
    print(f"after {n} step(s)  norm={s.norm():.12f}  {cells}")
