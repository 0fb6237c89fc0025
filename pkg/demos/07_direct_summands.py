"""
Filtrations of direct summands
==============================

If M = M1 + M2 has a filtration then so do M1 and M2.  The construction runs
the layered trace inside each summand and checks that the layers of M are the
sums of the summands' layers.
"""

import numpy as np

from deltafilt import filtration as filt
from deltafilt.generators import a2_system, random_direct_sum, random_system
from deltafilt.modules import direct_sum

## The worked example
sys_ = a2_system(2)
ds = direct_sum(sys_.delta["1"], sys_.delta["2"])
f1, f2 = filt.decompose_summands(sys_, ds.module, *ds.injections)
print("P1 summand:", f1.dim_vectors(), f1.labels)
print("S2 summand:", f2.dim_vectors(), f2.labels)

## Random sums of spliced modules
for seed in range(5):
    rng = np.random.default_rng(seed)
    rsys = random_system(rng)
    rds, fa, fb = random_direct_sum(rsys, rng)
    g1, g2 = filt.decompose_summands(rsys, rds.module, *rds.injections, rng=rng)
    print(f"seed {seed}: M dims {rds.module.dims}, summand counts",
          filt.multiplicities(g1), filt.multiplicities(g2))
