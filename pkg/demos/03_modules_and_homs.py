"""
Representations, Hom spaces, traces and summands
================================================

The path algebra of 1 -a-> 2 has three indecomposable modules: the simples
S1, S2 and the projective P1 (a copy of k at each vertex, a the identity).
"""

from deltafilt.generators import a2_algebra
from deltafilt.modules import (direct_sum, hom_dim, indecomposable_test, iso_test, peel_completely, projective,
                               simple, trace)

alg = a2_algebra(2)
p1, s1, s2 = projective(alg, "1"), simple(alg, "1"), simple(alg, "2")

## Hom dimensions come from the commuting-square linear system
for x, y in [(s2, p1), (p1, s2), (p1, s1), (p1, p1)]:
    print(f"dim Hom({x.name}, {y.name}) = {hom_dim(x, y)}")

## P1 and S1 + S2 share a dimension vector but are not isomorphic
ss = direct_sum(s1, s2).module
print("P1 ~ S1+S2 ?", iso_test(p1, ss) is not None)
print("P1 indecomposable:", indecomposable_test(p1) is None)
print("S1+S1 splits:", indecomposable_test(direct_sum(s1, s1).module) is not None)

## Traces inside M = P1 + S2
m = direct_sum(p1, s2).module
print("trace of P1 in M:", trace([p1], m).dim_vector)
print("trace of S2 in M:", trace([s2], m).dim_vector)

## Splitting M back into the pieces it was built from
pieces, residue = peel_completely(m, [p1, s2])
print("peeled:", [(["P1", "S2"][i], sub.dim_vector) for i, sub in pieces], "residue", residue.dim_vector)
