"""Finite pre-ordered sets, their quotient posets and height functions."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components


class PreorderError(ValueError):
    """A relation that is not a valid finite preorder was used where one is required."""


@dataclass(frozen=True, eq=False)
class Preorder:
    """A finite set ``elements`` with a relation ``leq[i, j]`` meaning ``elements[i] <= elements[j]``.

    The constructor does not close the relation; call :func:`transitive_closure_check`
    (or :meth:`validate`) to find missing pairs.
    """

    elements: tuple
    leq: np.ndarray

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise PreorderError("duplicate element labels")
        if self.leq.shape != (n, n):
            raise PreorderError(f"relation matrix has shape {self.leq.shape}, expected {(n, n)}")
        object.__setattr__(self, "leq", self.leq.astype(bool))

    @classmethod
    def from_pairs(cls, elements: Iterable[Hashable], pairs: Iterable[tuple], reflexive: bool = True) -> "Preorder":
        """Build from ``(x, y)`` pairs meaning ``x <= y``.

        ``reflexive`` adds the diagonal; transitivity is never added.
        """
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        leq = np.eye(len(elements), dtype=bool) if reflexive else np.zeros((len(elements),) * 2, dtype=bool)
        for x, y in pairs:
            if x not in index or y not in index:
                raise PreorderError(f"pair ({x!r}, {y!r}) mentions an unknown element")
            leq[index[x], index[y]] = True
        return cls(elements, leq)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        return self.elements.index(x)

    def le(self, x, y) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def pairs(self) -> list[tuple]:
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(self.leq))]

    def with_pair(self, x, y) -> "Preorder":
        leq = self.leq.copy()
        leq[self.index(x), self.index(y)] = True
        return Preorder(self.elements, leq)

    def validate(self) -> None:
        problems = transitive_closure_check(self)
        if problems:
            raise PreorderError(f"not a preorder; missing pairs {problems}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __repr__(self) -> str:
        return f"Preorder({list(self.elements)}, pairs={self.pairs()})"


def transitive_closure_check(p: Preorder) -> list[tuple]:
    """Every missing reflexive or transitive pair ``(x, y)`` (``x <= y`` absent but required).

    An empty list means ``p`` is a valid preorder. An empty element set is
    reported as ``[()]``.
    """
    n = len(p)
    if n == 0:
        return [()]
    missing = []
    for i in range(n):
        if not p.leq[i, i]:
            missing.append((p.elements[i], p.elements[i]))
    # pairs reachable in two steps but not directly related
    two_step = (p.leq.astype(np.int64) @ p.leq.astype(np.int64)) > 0
    for i, j in zip(*np.nonzero(two_step & ~p.leq)):
        if i != j:
            missing.append((p.elements[i], p.elements[j]))
    return missing


@dataclass(frozen=True)
class QuotientPoset:
    """The poset of ``~``-classes, with ``projection[i]`` the class of element ``i``.

    ``prec[c, d]`` means class ``c`` precedes class ``d``.
    """

    preorder: Preorder
    classes: tuple[tuple, ...]
    projection: tuple[int, ...]
    prec: np.ndarray = field(repr=False)

    def class_of(self, x) -> int:
        return self.projection[self.preorder.index(x)]


def quotient(p: Preorder) -> QuotientPoset:
    """Collapse the equivalence ``x ~ y`` (``x <= y <= x``) to a poset."""
    if transitive_closure_check(p):
        raise PreorderError("quotient needs a valid preorder")
    n_comp, labels = connected_components(csr_matrix(p.leq), directed=True, connection="strong")
    # renumber classes by first occurrence so output is independent of scipy's labelling
    order: dict[int, int] = {}
    for lab in labels:
        order.setdefault(int(lab), len(order))
    projection = tuple(order[int(lab)] for lab in labels)
    members: list[list] = [[] for _ in range(n_comp)]
    for i, c in enumerate(projection):
        members[c].append(p.elements[i])
    reps = [projection.index(c) for c in range(n_comp)]
    prec = np.array([[p.leq[reps[c], reps[d]] for d in range(n_comp)] for c in range(n_comp)], dtype=bool)
    return QuotientPoset(p, tuple(tuple(m) for m in members), projection, prec)


@dataclass(frozen=True)
class HeightMap:
    """Height ``h(x)`` of every element, with image ``{1, ..., max_height}``."""

    values: dict
    max_height: int

    def __getitem__(self, x) -> int:
        return self.values[x]

    def level(self, i: int) -> list:
        return [x for x, h in self.values.items() if h == i]


def _class_heights_peeling(q: QuotientPoset) -> list[int]:
    m = len(q.classes)
    heights = [0] * m
    remaining = set(range(m))
    level = 0
    while remaining:
        level += 1
        minimal = [c for c in remaining
                   if not any(q.prec[d, c] for d in remaining if d != c)]
        for c in minimal:
            heights[c] = level
        remaining -= set(minimal)
    return heights


def height(p: Preorder) -> HeightMap:
    """Height function: minimal classes get 1, then peel them off and repeat."""
    q = quotient(p)
    class_h = _class_heights_peeling(q)
    values = {x: class_h[q.projection[i]] for i, x in enumerate(p.elements)}
    return HeightMap(values, max(values.values()))


def longest_chain_height(p: Preorder) -> HeightMap:
    """Height as ``1 +`` the length of the longest strict chain below each element.

    Computed directly on the preorder without forming the quotient; used to
    cross-check :func:`height`.
    """
    n = len(p)
    strict = p.leq & ~p.leq.T
    memo: dict[int, int] = {}

    def depth(i: int) -> int:
        if i not in memo:
            below = [j for j in range(n) if strict[j, i]]
            memo[i] = 1 + max((depth(j) for j in below), default=0)
        return memo[i]

    values = {p.elements[i]: depth(i) for i in range(n)}
    return HeightMap(values, max(values.values()))


def height_pair_check(p: Preorder, h: HeightMap, x, y) -> Optional[str]:
    """``None`` if both height/order implications hold for ``(x, y)``, else a description.

    Checks ``x <= y and not y <= x  =>  h(x) < h(y)`` and ``h(x) < h(y)  =>  not y <= x``.
    """
    strictly_below = p.le(x, y) and not p.le(y, x)
    if strictly_below and not h[x] < h[y]:
        return f"{x!r} < {y!r} strictly but h={h[x]} >= {h[y]}"
    if h[x] < h[y] and p.le(y, x):
        return f"h({x!r})={h[x]} < h({y!r})={h[y]} but {y!r} <= {x!r}"
    return None


def all_preorders(n: int) -> Iterable[Preorder]:
    """Every preorder on ``range(n)`` (brute force over reflexive relations)."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    for mask in range(1 << len(off)):
        leq = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(off):
            if mask >> k & 1:
                leq[i, j] = True
        pre = Preorder(tuple(range(n)), leq)
        if not transitive_closure_check(pre):
            yield pre
