"""
Checking the four axioms
========================

A system is a family of modules indexed by a pre-order.  Nonzero Hom must go
up the order, nonzero Ext^1 strictly up; the modules must be indecomposable
and pairwise non-isomorphic.
"""

import numpy as np

from deltafilt.generators import a2_algebra, random_system
from deltafilt.modules import projective, simple
from deltafilt.preorder import Preorder
from deltafilt.system import HomologicalSystem, check_system, height_consequences

alg = a2_algebra(2)
p1, s1, s2 = projective(alg, "1"), simple(alg, "1"), simple(alg, "2")


def show(title, omega_pairs, d1, d2):
    sys_ = HomologicalSystem(alg, Preorder.from_pairs(("1", "2"), omega_pairs), {"1": d1, "2": d2})
    res = check_system(sys_)
    print(f"{title}: ok={res.ok}", [(v.axiom, v.pair) for v in res.violations])
    return sys_


sys_ = show("P1, S2 with 2 <= 1", [("2", "1")], p1, s2)
print("  heights", sys_.height.values, " consequences:", height_consequences(sys_))
show("P1, S2 unordered", [], p1, s2)
show("S1, S1", [], s1, simple(alg, "1"))
show("S1, S2 with 1 ~ 2", [("1", "2"), ("2", "1")], s1, s2)

## Random systems used by the property suites
for seed in range(3):
    rsys = random_system(np.random.default_rng(seed))
    print(f"seed {seed}: p={rsys.algebra.p}, dims", [d.dims for d in rsys.delta.values()],
          "heights", rsys.height.values)
