"""Exact dense linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` integer arrays whose entries are residues in
``[0, p)``.  Every function takes the characteristic ``p`` explicitly and
returns fresh arrays; nothing is modified in place.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

DTYPE = np.int64


class AmbientMismatch(ValueError):
    """Raised when two subspaces (or a subspace and a matrix) do not share an ambient space."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p)."""

    p: int = 2

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"field characteristic must be prime, got {self.p!r}")

    def inv(self, x: int) -> int:
        return pow(int(x) % self.p, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


def mat(entries, p: int, shape: Optional[tuple[int, int]] = None) -> np.ndarray:
    """Coerce ``entries`` to a 2-d residue array mod ``p``.

    An empty list needs ``shape`` to know its column count.
    """
    a = np.asarray(entries, dtype=DTYPE)
    if shape is not None:
        a = a.reshape(shape)
    elif a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    return np.mod(a, p)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=DTYPE)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=DTYPE)


def matmul(*ms: np.ndarray, p: int) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = np.mod(out @ m, p)
    return np.mod(out, p)


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Returns ``(R, rank, pivots)`` where ``R`` has the same shape as ``m`` and
    ``pivots`` lists the pivot column of each of the first ``rank`` rows.
    """
    r = np.mod(np.array(m, dtype=DTYPE, copy=True), p)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = (r[row] * pow(int(r[row, col]), -1, p)) % p
        factors = r[:, col].copy()
        factors[row] = 0
        mask = factors != 0
        if mask.any():
            r[mask] = (r[mask] - np.outer(factors[mask], r[row])) % p
        pivots.append(col)
        row += 1
    return r, len(pivots), pivots


def rank(m: np.ndarray, p: int) -> int:
    if m.size == 0:
        return 0
    return rref(m, p)[1]


def kernel(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right null space ``{x : m x = 0}``, one vector per row, in RREF."""
    rows, cols = m.shape
    r, rk, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = zeros(len(free), cols)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = (-r[j, f]) % p
    return rref(basis, p)[0] if len(free) else basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution ``x`` of ``a @ x == b`` over GF(p), or ``None`` if inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row mismatch: {a.shape} vs {b.shape}")
    n = a.shape[1]
    aug = np.hstack([np.mod(a, p), np.mod(b, p)]).astype(DTYPE)
    r, rk, pivots = rref(aug, p)
    if any(pc >= n for pc in pivots):
        return None
    x = zeros(n, b.shape[1])
    for j, pc in enumerate(pivots):
        x[pc] = r[j, n:]
    return x


def inverse(m: np.ndarray, p: int) -> Optional[np.ndarray]:
    n, k = m.shape
    if n != k:
        return None
    if n == 0:
        return zeros(0, 0)
    r, rk, _ = rref(np.hstack([np.mod(m, p), identity(n)]), p)
    if rk < n or not np.array_equal(r[:, :n], identity(n)):
        return None
    return r[:, n:]


def is_invertible(m: np.ndarray, p: int) -> bool:
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n stored by its canonical RREF basis (rows)."""

    ambient: int
    basis: np.ndarray
    p: int

    @classmethod
    def span(cls, vectors, ambient: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=DTYPE)
        if v.size == 0:
            return cls.zero(ambient, p)
        v = v.reshape(-1, ambient)
        r, rk, _ = rref(v, p)
        return cls(ambient, r[:rk], p)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, zeros(0, ambient), p)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, identity(ambient), p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.nonzero(row)[0][0]) for row in self.basis]

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of the columns of ``vectors`` (shape ``ambient x k``), assumed to lie here.

        With an RREF basis the coordinate of ``v`` along row ``j`` is ``v`` at
        pivot ``j``.
        """
        return np.mod(np.asarray(vectors, dtype=DTYPE)[self.pivots, :], self.p)

    def contains(self, vectors) -> bool:
        v = np.asarray(vectors, dtype=DTYPE)
        if v.size == 0:
            return True
        v = v.reshape(-1, self.ambient)
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def issubset(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return other.contains(self.basis)

    def annihilator(self) -> np.ndarray:
        """Matrix ``C`` with ``self == ker C``."""
        if self.dim == 0:
            return identity(self.ambient)
        return kernel(self.basis, self.p)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersection(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.p == other.p
                and np.array_equal(self.basis, other.basis))

    def __hash__(self) -> int:
        return hash((self.ambient, self.p, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient or u.p != v.p:
        raise AmbientMismatch(f"ambient mismatch: GF({u.p})^{u.ambient} vs GF({v.p})^{v.ambient}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace.span(np.vstack([u.basis, v.basis]), u.ambient, u.p)


def subspace_intersection(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    constraints = np.vstack([u.annihilator(), v.annihilator()])
    return Subspace.span(kernel(constraints, u.p), u.ambient, u.p)


def subspace_image(m: np.ndarray, u: Subspace) -> Subspace:
    """Image ``m(u)`` for a matrix acting on column vectors."""
    if m.shape[1] != u.ambient:
        raise AmbientMismatch(f"matrix with {m.shape[1]} columns applied to subspace of GF({u.p})^{u.ambient}")
    return Subspace.span(np.mod(u.basis @ m.T, u.p), m.shape[0], u.p)


def subspace_preimage(m: np.ndarray, w: Subspace) -> Subspace:
    """``{x : m x in w}``."""
    if m.shape[0] != w.ambient:
        raise AmbientMismatch(f"matrix with {m.shape[0]} rows pulled back along GF({w.p})^{w.ambient}")
    c = matmul(w.annihilator(), m, p=w.p)
    return Subspace.span(kernel(c, w.p), m.shape[1], w.p)


def column_space(m: np.ndarray, p: int) -> Subspace:
    return Subspace.span(np.asarray(m).T, m.shape[0], p)


def null_space(m: np.ndarray, p: int) -> Subspace:
    return Subspace.span(kernel(m, p), m.shape[1], p)


def iter_vectors(n: int, p: int) -> Iterable[np.ndarray]:
    """All vectors of GF(p)^n in lexicographic order."""
    for idx in np.ndindex(*([p] * n)) if n else [()]:
        yield np.array(idx, dtype=DTYPE)


def combine(coeffs: Sequence[int], mats: Sequence[np.ndarray], p: int) -> np.ndarray:
    out = np.zeros_like(mats[0])
    for c, m in zip(coeffs, mats):
        if c:
            out = out + int(c) * m
    return np.mod(out, p)
