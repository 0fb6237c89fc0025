"""
Exact linear algebra over GF(p)
===============================

Everything in the package runs on integer matrices reduced mod p.  Subspaces
are stored by their reduced row-echelon basis, so equal subspaces compare
equal no matter which spanning set built them.
"""

import numpy as np

from deltafilt import linalg as la

p = 3

## Row reduction, rank and kernel
m = np.array([[1, 2, 0],
              [2, 1, 0],
              [0, 0, 1]])
r, rank, pivots = la.rref(m, p)
print("rref mod 3:\n", r)
print("rank", rank, "pivots", pivots)
print("kernel basis:", la.kernel(m, p).tolist())

## Solving a x = b, or learning there is no solution
a = np.array([[1], [1]])
print("solve [1;1] x = [1;0] mod 3:", la.solve(a, np.array([[1], [0]]), p))
print("solve [1;1] x = [2;2] mod 3:", la.solve(a, np.array([[2], [2]]), p).ravel())

## Canonical subspaces
u = la.Subspace.span([[1, 1, 0], [0, 1, 1]], 3, p)
v = la.Subspace.span([[1, 2, 1], [1, 0, 2]], 3, p)   # another basis of the same plane
print("same plane from two bases:", u == v)
w = la.Subspace.span([[0, 0, 1]], 3, p)
print("dim(u + w) =", (u + w).dim, " dim(u & w) =", (u & w).dim)
