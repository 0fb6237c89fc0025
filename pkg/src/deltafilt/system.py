"""Homological systems and their axiom checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional

from .ext import ext_dim
from .modules import (BoundQuiverAlgebra, Representation, SearchExhausted, hom_dim,
                      indecomposable_test, iso_test, validate_representation)
from .preorder import HeightMap, Preorder, height, transitive_closure_check


@dataclass(frozen=True)
class Violation:
    axiom: str
    pair: tuple
    detail: str
    dimension: Optional[int] = None

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "pair": [str(x) for x in self.pair],
                "detail": self.detail, "dimension": self.dimension}


class HomologicalSystem:
    """A family ``delta[w]`` of modules indexed by the elements of a preorder ``omega``."""

    def __init__(self, algebra: BoundQuiverAlgebra, omega: Preorder, delta: Mapping):
        self.algebra = algebra
        self.omega = omega
        self.delta = {w: delta[w] for w in omega.elements}
        if set(delta) != set(omega.elements):
            raise ValueError("delta must be indexed exactly by the preorder's elements")
        for w, d in self.delta.items():
            if d.algebra != algebra:
                raise ValueError(f"delta[{w!r}] lives over a different algebra")

    @cached_property
    def height(self) -> HeightMap:
        return height(self.omega)

    @cached_property
    def hom_dims(self) -> dict:
        return {(u, w): hom_dim(self.delta[u], self.delta[w])
                for u in self.omega.elements for w in self.omega.elements}

    @cached_property
    def ext_dims(self) -> dict:
        return {(u, w): ext_dim(self.delta[u], self.delta[w])
                for u in self.omega.elements for w in self.omega.elements}

    def level(self, i: int) -> list:
        """Elements of height ``i``, in preorder order."""
        return [w for w in self.omega.elements if self.height[w] == i]

    def deltas_at(self, i: int) -> list[Representation]:
        return [self.delta[w] for w in self.level(i)]

    def __repr__(self) -> str:
        return f"<HomologicalSystem omega={list(self.omega.elements)}>"


@dataclass
class CheckResult:
    violations: list = field(default_factory=list)
    unverified: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.unverified


def check_system(sys: HomologicalSystem, rng=None) -> CheckResult:
    """Verify the four axioms; never reports ok when a search was inconclusive.

    * HS1: the relation is a finite nonempty preorder.
    * HS2: each module is indecomposable and no two are isomorphic.
    * HS3: ``Hom(D_u, D_w) != 0`` forces ``u <= w``.
    * HS4: ``Ext^1(D_u, D_w) != 0`` forces ``u <= w`` and not ``w <= u``.
    """
    res = CheckResult()
    elems = sys.omega.elements
    for pair in transitive_closure_check(sys.omega):
        res.violations.append(Violation("HS1", pair, "missing pair in reflexive-transitive relation"))
    for w in elems:
        bad = validate_representation(sys.algebra, sys.delta[w])
        if bad:
            res.violations.append(Violation("relations", (w,), f"relations {bad} do not vanish"))
    if res.violations:
        return res

    local = {}
    for w in elems:
        d = sys.delta[w]
        if d.is_zero():
            res.violations.append(Violation("HS2", (w,), "zero module is not indecomposable"))
            local[w] = False
            continue
        try:
            split = indecomposable_test(d, rng=rng)
        except SearchExhausted as exc:
            res.unverified.append(Violation("HS2", (w,), f"indecomposability unverified: {exc}"))
            local[w] = False
            continue
        if split is not None:
            res.violations.append(Violation("HS2", (w,), f"decomposes as {split.image.dim_vector} + "
                                            f"{split.kernel.dim_vector}"))
        local[w] = split is None
    for i, u in enumerate(elems):
        for w in elems[i + 1:]:
            try:
                f = iso_test(sys.delta[u], sys.delta[w], rng=rng, indecomposable=local[u] or local[w])
            except SearchExhausted as exc:
                res.unverified.append(Violation("HS2", (u, w), f"isomorphism undecided: {exc}"))
                continue
            if f is not None:
                res.violations.append(Violation("HS2", (u, w), "isomorphic modules"))

    for u in elems:
        for w in elems:
            hd = sys.hom_dims[u, w]
            if hd and not sys.omega.le(u, w):
                res.violations.append(Violation("HS3", (u, w), f"dim Hom = {hd} but not {u} <= {w}", hd))
            ed = sys.ext_dims[u, w]
            if ed and not (sys.omega.le(u, w) and not sys.omega.le(w, u)):
                res.violations.append(Violation("HS4", (u, w), f"dim Ext^1 = {ed} but not {u} < {w} strictly", ed))
    return res


def height_consequences(sys: HomologicalSystem) -> list[Violation]:
    """Vanishing forced by heights: ``h(u) > h(w)`` kills Hom, ``h(u) >= h(w)`` kills Ext^1."""
    h = sys.height
    out = []
    for u in sys.omega.elements:
        for w in sys.omega.elements:
            if h[u] > h[w] and sys.hom_dims[u, w]:
                out.append(Violation("Hom-height", (u, w), f"h={h[u]} > {h[w]} but dim Hom = "
                                     f"{sys.hom_dims[u, w]}", sys.hom_dims[u, w]))
            if h[u] >= h[w] and sys.ext_dims[u, w]:
                out.append(Violation("Ext-height", (u, w), f"h={h[u]} >= {h[w]} but dim Ext^1 = "
                                     f"{sys.ext_dims[u, w]}", sys.ext_dims[u, w]))
    return out
