"""
Ext^1, extensions and sections
==============================

An element of Ext^1(X, Y) is a class of cochains, one matrix per arrow.  A
cochain builds a middle term with block maps [[Y_a, d_a], [0, X_a]]; the
sequence splits exactly when the cochain is a coboundary.
"""

import numpy as np

from deltafilt.ext import build_extension, complement_of_sub, ext_space, find_section
from deltafilt.generators import a2_algebra
from deltafilt.linalg import PrimeField
from deltafilt.modules import BoundQuiverAlgebra, Quiver, iso_test, projective, simple

alg = a2_algebra(2)
p1, s1, s2 = projective(alg, "1"), simple(alg, "1"), simple(alg, "2")

e = ext_space(s1, s2)
print("dim Ext^1(S1, S2) =", e.dim, "  dim Ext^1(S2, S1) =", ext_space(s2, s1).dim)

## The nonzero class glues S1 on top of S2 and gives P1
seq = build_extension(s1, s2, {"a": [[1]]})
print("middle ~ P1:", iso_test(seq.middle, p1) is not None)
print("section exists:", find_section(seq) is not None)

## The zero class splits; the section's image is a complement
split = build_extension(s1, s2, e.zero())
sec = find_section(split)
print("split middle complement:", complement_of_sub(split, sec).dim_vector)

## A relation restricts the cocycles
q = Quiver(("1", "2", "3"), [("a", "1", "2"), ("b", "2", "3")])
free = BoundQuiverAlgebra(q, PrimeField(2))
bound = BoundQuiverAlgebra(q, PrimeField(2), [[(1, ("a", "b"))]])
for alg_ in (free, bound):
    x, y = simple(alg_, "1"), projective(alg_, "2")
    print(f"{len(alg_.relations)} relation(s): dim Ext^1(S1, P2) =", ext_space(x, y).dim)

rng = np.random.default_rng(0)
print("random cocycle of Ext^1(S1, S2):", e.random_cocycle(rng))
