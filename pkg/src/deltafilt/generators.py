"""Random algebras, homological systems and Delta-filtered modules for property runs."""
from __future__ import annotations

import string
from typing import Optional

import numpy as np

from . import linalg as la
from .ext import build_extension, ext_dim, ext_space
from .filtration import Filtration, attach_witnesses, swap_adjacent, transport
from .linalg import PrimeField
from .modules import (BoundQuiverAlgebra, ModuleMap, Quiver, Representation, SearchExhausted, Submodule,
                      default_rng, direct_sum, hom_dim, indecomposable_test, iso_test, projective, push,
                      random_automorphism, random_representation, simple)
from .preorder import Preorder
from .system import HomologicalSystem, check_system


def a2_algebra(p: int = 2) -> BoundQuiverAlgebra:
    """The path algebra of ``1 -a-> 2``."""
    return BoundQuiverAlgebra(Quiver(("1", "2"), [("a", "1", "2")]), PrimeField(p))


def a2_system(p: int = 2) -> HomologicalSystem:
    """``delta[1] = P1``, ``delta[2] = S2`` with ``2 <= 1``."""
    alg = a2_algebra(p)
    omega = Preorder.from_pairs(("1", "2"), [("2", "1")])
    return HomologicalSystem(alg, omega, {"1": projective(alg, "1"), "2": simple(alg, "2")})


def random_algebra(rng=None, n_vertices: Optional[int] = None, p: Optional[int] = None,
                   relation_prob: float = 0.4) -> BoundQuiverAlgebra:
    """Random acyclic bound quiver algebra on 2-4 vertices over GF(2), GF(3) or GF(5)."""
    rng = default_rng(rng)
    n = n_vertices or int(rng.integers(2, 5))
    p = p or int(rng.choice([2, 3, 5]))
    verts = tuple(str(i + 1) for i in range(n))
    names = iter(string.ascii_lowercase)
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            k = int(rng.choice([0, 1, 2], p=[0.45, 0.45, 0.1]))
            arrows.extend((next(names), verts[i], verts[j]) for _ in range(k))
    if not arrows:
        arrows.append((next(names), verts[0], verts[1]))
    quiver = Quiver(verts, arrows)
    relations = []
    by_ends: dict = {}
    for x in quiver.arrows:
        for y in quiver.arrows:
            if x.target == y.source:
                by_ends.setdefault((x.source, y.target), []).append((x.name, y.name))
    for ends, paths in by_ends.items():
        if rng.random() >= relation_prob:
            continue
        if len(paths) >= 2 and rng.random() < 0.5:
            i, j = rng.choice(len(paths), size=2, replace=False)
            relations.append([(1, paths[i]), (p - 1, paths[j])])
        else:
            relations.append([(1, paths[int(rng.integers(len(paths)))])])
    return BoundQuiverAlgebra(quiver, PrimeField(p), relations)


def candidate_modules(alg: BoundQuiverAlgebra, rng=None, n_random: int = 4, max_dim: int = 3) -> list:
    """Simples, indecomposable projectives and a few random small modules."""
    rng = default_rng(rng)
    out = [simple(alg, v) for v in alg.vertices]
    for v in alg.vertices:
        pv = projective(alg, v)
        if pv.total_dim <= max_dim + 1:
            out.append(pv)
    for _ in range(n_random):
        dims = {v: int(rng.integers(0, 2)) for v in alg.vertices}
        extra = alg.vertices[int(rng.integers(len(alg.vertices)))]
        dims[extra] += 1
        if sum(dims.values()) > max_dim:
            continue
        rep = random_representation(alg, dims, rng)
        if rep is not None:
            out.append(rep)
    return out


def _closure(leq: np.ndarray) -> np.ndarray:
    out = leq.copy()
    for k in range(len(out)):
        out = out | (out[:, [k]] & out[[k], :])
    return out


def _hs4_offenders(leq: np.ndarray, ext: np.ndarray) -> list[int]:
    bad = []
    for u, w in zip(*np.nonzero(ext)):
        if not leq[u, w] or leq[w, u]:
            bad.extend([int(u), int(w)])
    return bad


def random_system(rng=None, algebra: Optional[BoundQuiverAlgebra] = None, max_size: int = 4,
                  extra_pairs: int = 2, attempts: int = 100) -> HomologicalSystem:
    """A random homological system that passes :func:`check_system`.

    Picks pairwise non-isomorphic indecomposable candidates, orders them by the
    closure of the nonvanishing Hom/Ext^1 relation, drops modules that make
    the Ext condition fail, and adds a few random extra pairs that keep it.
    """
    rng = default_rng(rng)
    for _ in range(attempts):
        alg = algebra or random_algebra(rng)
        pool = candidate_modules(alg, rng)
        order = rng.permutation(len(pool))
        if rng.random() < 0.5:
            # simples first: their Ext^1 follows the arrows, so extensions are plentiful
            n_simple = len(alg.vertices)
            order = np.concatenate([rng.permutation(n_simple), rng.permutation(np.arange(n_simple, len(pool)))])
        chosen: list[Representation] = []
        target = int(rng.integers(min(2, max_size), max_size + 1))
        for idx in order:
            if len(chosen) == target:
                break
            c = pool[idx]
            try:
                if c.is_zero() or indecomposable_test(c, rng=rng) is not None:
                    continue
            except SearchExhausted:
                continue
            if ext_space(c, c).dim:
                continue
            if any(iso_test(c, d, indecomposable=True) is not None for d in chosen):
                continue
            chosen.append(c)
        while chosen:
            n = len(chosen)
            hom = np.array([[hom_dim(a, b) > 0 for b in chosen] for a in chosen])
            ext = np.array([[ext_dim(a, b) > 0 for b in chosen] for a in chosen])
            leq = _closure(hom | ext | np.eye(n, dtype=bool))
            bad = _hs4_offenders(leq, ext)
            if not bad:
                break
            chosen.pop(bad[int(rng.integers(len(bad)))])
        if not chosen:
            continue
        for _ in range(extra_pairs):
            u, w = (int(x) for x in rng.integers(0, len(chosen), size=2))
            trial = leq.copy()
            trial[u, w] = True
            trial = _closure(trial)
            if not _hs4_offenders(trial, ext):
                leq = trial
        labels = tuple(f"w{i}" for i in range(len(chosen)))
        sys = HomologicalSystem(alg, Preorder(labels, leq), dict(zip(labels, chosen)))
        if check_system(sys, rng=rng).ok:
            return sys
    raise RuntimeError("could not generate a homological system")


def random_basis_change(rep: Representation, rng=None) -> tuple[Representation, ModuleMap]:
    """An isomorphic copy of ``rep`` in a random basis, with the isomorphism ``rep -> copy``."""
    rng = default_rng(rng)
    p = rep.p
    mats = []
    for d in rep.dims:
        while True:
            t = rng.integers(0, p, size=(d, d))
            if la.is_invertible(t, p):
                break
        mats.append(t.astype(la.DTYPE))
    q = rep.algebra.quiver
    inv = [la.inverse(t, p) for t in mats]
    maps = {a.name: la.matmul(mats[q.vindex(a.target)], rep.maps[a.name], inv[q.vindex(a.source)], p=p)
            for a in rep.algebra.arrows}
    copy = Representation(rep.algebra, dict(zip(q.vertices, rep.dims)), maps)
    return copy, ModuleMap(rep, copy, mats)


def random_filtration(sys: HomologicalSystem, rng=None, max_factors: int = 5, max_dim: int = 12,
                      scramble: bool = True) -> Filtration:
    """A filtered module built by splicing random extensions of deltas onto each other.

    Labels are drawn uniformly, so factor heights come in arbitrary order.
    """
    rng = default_rng(rng)
    labels = list(sys.omega.elements)
    n = int(rng.integers(1, max_factors + 1))
    first = labels[int(rng.integers(len(labels)))]
    m = sys.delta[first]
    chain = [Submodule.zero(m), Submodule.full(m)]
    used = [first]
    for _ in range(n - 1):
        w = labels[int(rng.integers(len(labels)))]
        x = sys.delta[w]
        if m.total_dim + x.total_dim > max_dim:
            break
        delta = ext_space(x, m).random_cocycle(rng)
        seq = build_extension(x, m, delta)
        chain = [push(seq.inclusion, c) for c in chain] + [Submodule.full(seq.middle)]
        m = seq.middle
        used.append(w)
    f = Filtration(m, chain, used)
    if scramble:
        copy, iso = random_basis_change(m, rng)
        f = transport(f, iso)
    return attach_witnesses(sys, f, rng)


def second_filtration(sys: HomologicalSystem, f: Filtration, rng=None, swaps: int = 4) -> Filtration:
    """Another filtration of the same module: move ``f`` by a random automorphism, then swap split pairs."""
    rng = default_rng(rng)
    g = transport(f, random_automorphism(f.module, rng))
    g = attach_witnesses(sys, g, rng)
    for _ in range(swaps):
        if g.length < 2:
            break
        k = int(rng.integers(g.length - 1))
        swapped = swap_adjacent(sys, g, k, rng)
        if swapped is not None:
            g = swapped
    return g


def random_direct_sum(sys: HomologicalSystem, rng=None, max_dim: int = 12):
    """``(DirectSum, f1, f2)`` for two independently built filtered modules."""
    rng = default_rng(rng)
    f1 = random_filtration(sys, rng, max_dim=max_dim // 2)
    f2 = random_filtration(sys, rng, max_dim=max_dim - f1.module.total_dim)
    return direct_sum(f1.module, f2.module), f1, f2


def random_spliced_sequence(sys: HomologicalSystem, rng=None, max_dim: int = 12):
    """``(seq, f_sub, f_quot)``: a random extension of one filtered module by another."""
    rng = default_rng(rng)
    f_sub = random_filtration(sys, rng, max_dim=max_dim // 2)
    f_quot = random_filtration(sys, rng, max_dim=max_dim - f_sub.module.total_dim)
    delta = ext_space(f_quot.module, f_sub.module).random_cocycle(rng)
    return build_extension(f_quot.module, f_sub.module, delta), f_sub, f_quot
