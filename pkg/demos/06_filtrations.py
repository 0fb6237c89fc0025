"""
Filtrations: verify, normalize, and read off layers
===================================================

A filtration of M is a chain 0 = M_0 < ... < M_t = M whose factors are the
system's modules.  Normalizing swaps adjacent factors until heights decrease
along the chain; grouping by height gives layers that do not depend on the
filtration we started from.
"""

import numpy as np

from deltafilt import filtration as filt
from deltafilt.generators import a2_system, random_filtration, random_system, second_filtration
from deltafilt.modules import Submodule, direct_sum, simple

sys_ = a2_system(2)
p1, s2 = sys_.delta["1"], sys_.delta["2"]
ds = direct_sum(p1, s2)
m = ds.module

## S2 at the bottom: heights 1 then 2, so one swap is needed
f = filt.Filtration(m, [Submodule.zero(m), ds.injections[1].image(), Submodule.full(m)], ["2", "1"])
print("verify:", filt.verify_filtration(sys_, f))
res = filt.normalize(sys_, f, transcript=True)
print("normalized:", res.filtration.labels, res.filtration.dim_vectors(), "swaps at", res.swaps)

## Layers by traces, no filtration needed
hc = filt.h_filtration_canonical(sys_, m)
print("layers:", {i: w.dim_vector for i, w in hc.layers.items()})
print("S1 is not filtered:", filt.h_filtration_canonical(sys_, simple(sys_.algebra, "1")) is None)

## A random module built by splicing extensions, filtered two ways
rng = np.random.default_rng(4)
rsys = random_system(rng)
rf = random_filtration(rsys, rng)
rf2 = second_filtration(rsys, rf, rng)
print("random module dims", rf.module.dims, "labels", rf.labels, "vs", rf2.labels)
print("multiplicity differences:", filt.check_uniqueness(rsys, rf.module, rf, rf2, rng))
print("same layers:", filt.h_filtration_from(rsys, rf, rng).layers == filt.h_filtration_from(rsys, rf2, rng).layers)
