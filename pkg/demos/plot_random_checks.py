"""
Random seeds and identity checks
================================

Draw small random seeds with bounded growth, and run every identity check
on them. This is what ``gencluster verify --seed-random`` does.
"""

import random

from gencluster import run_checks
from gencluster.verify import random_classical_instance, random_trials

rng = random.Random(1)
seed, path = random_classical_instance(rng, max_len=5)
print(seed.B, seed.md.r, path)

report = run_checks(seed, path, checks=("duality", "gbbc", "separation", "structure", "triple"))
for res in report.results:
    print(f"{res.name:<11} {res.status}  {res.seconds:.3f}s")

###############################################################################
# A batch of trials, classical and quantum.

for mode in ("classical", "quantum"):
    rep = random_trials(20, seed=3, mode=mode)
    print(mode, rep.status, rep.counts())
