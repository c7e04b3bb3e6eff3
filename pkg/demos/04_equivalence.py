"""Closed-form conditions against the brute-force check, at scale.

Samples procedures from four families (generic Haar draws and three
constructions that land inside the member class) and counts agreement.
"""

import time

from qwteleport import equivalence_harness

start = time.perf_counter()
report = equivalence_harness(trials_per_family=500, rng_seed=42)
print(report.to_text())
print(f"took {time.perf_counter() - start:.2f}s")
