"""Brute-force reference computations for tiny modules.

Everything here enumerates: all matrix tuples, all cochains, all candidate
sections.  Nothing calls the linear-system solvers of the main modules, so
these serve as independent checks of ``hom_space`` and ``ext_space``.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .modules import BoundQuiverAlgebra, Representation


def _all_matrices(shape: tuple[int, int], p: int):
    n = shape[0] * shape[1]
    for entries in itertools.product(range(p), repeat=n):
        yield np.array(entries, dtype=np.int64).reshape(shape)


def _all_tuples(shapes, p: int):
    return itertools.product(*[list(_all_matrices(s, p)) for s in shapes])


def _path_product(maps: dict, path, n_src: int) -> np.ndarray:
    out = np.eye(n_src, dtype=np.int64)
    for name in path:
        out = maps[name] @ out
    return out


def _satisfies_relations(alg: BoundQuiverAlgebra, maps: dict, dims: dict) -> bool:
    for rel in alg.relations:
        first = rel.terms[0][1]
        src = alg.quiver.arrow(first[0]).source
        total = sum(c * _path_product(maps, path, dims[src]) for c, path in rel.terms)
        if np.any(np.mod(total, alg.p)):
            return False
    return True


def all_representations(alg: BoundQuiverAlgebra, dims: dict) -> list[Representation]:
    """Every representation with dimension vector ``dims`` (not up to isomorphism)."""
    shapes = [(dims.get(a.target, 0), dims.get(a.source, 0)) for a in alg.arrows]
    out = []
    for mats in _all_tuples(shapes, alg.p):
        maps = {a.name: m for a, m in zip(alg.arrows, mats)}
        full = {v: dims.get(v, 0) for v in alg.vertices}
        if _satisfies_relations(alg, maps, full):
            out.append(Representation(alg, full, maps))
    return out


def dimension_vectors(alg: BoundQuiverAlgebra, total: int):
    """All dimension vectors with the given total dimension."""
    n = len(alg.vertices)
    for combo in itertools.combinations_with_replacement(range(n), total):
        dims = {v: 0 for v in alg.vertices}
        for i in combo:
            dims[alg.vertices[i]] += 1
        yield dims


def _log(count: int, p: int) -> int:
    d = round(math.log(count, p))
    if p ** d != count:
        raise AssertionError(f"{count} is not a power of {p}")
    return d


def _vertex_dims(rep: Representation) -> dict:
    return dict(zip(rep.algebra.vertices, rep.dims))


def count_homs(x: Representation, y: Representation) -> int:
    alg = x.algebra
    p = alg.p
    dx, dy = _vertex_dims(x), _vertex_dims(y)
    shapes = [(dy[v], dx[v]) for v in alg.vertices]
    count = 0
    for f in _all_tuples(shapes, p):
        fv = dict(zip(alg.vertices, f))
        if all(not np.any(np.mod(fv[a.target] @ x.maps[a.name] - y.maps[a.name] @ fv[a.source], p))
               for a in alg.arrows):
            count += 1
    return count


def brute_hom_dim(x: Representation, y: Representation) -> int:
    return _log(count_homs(x, y), x.p)


def _block_middle(x: Representation, y: Representation, cochain) -> dict:
    maps = {}
    for a, d in zip(x.algebra.arrows, cochain):
        top = np.hstack([y.maps[a.name], d])
        bottom = np.hstack([np.zeros((x.dim(a.target), y.dim(a.source)), dtype=np.int64), x.maps[a.name]])
        maps[a.name] = np.vstack([top, bottom])
    return maps


def has_section(x: Representation, mid_maps: dict, mid_dims: dict, y: Representation) -> bool:
    alg = x.algebra
    p = alg.p
    dx = _vertex_dims(x)
    # the X block of a section is forced to be the identity; enumerate the Y block
    shapes = [(y.dim(v), dx[v]) for v in alg.vertices]
    for s in _all_tuples(shapes, p):
        sv = {v: np.vstack([b, np.eye(dx[v], dtype=np.int64)]) for v, b in zip(alg.vertices, s)}
        if all(not np.any(np.mod(mid_maps[a.name] @ sv[a.source] - sv[a.target] @ x.maps[a.name], p))
               for a in alg.arrows):
            return True
    return False


def extension_counts(x: Representation, y: Representation) -> tuple[int, int]:
    """``(#cochains giving a valid middle term, #of those whose sequence splits)``."""
    alg = x.algebra
    shapes = [(y.dim(a.target), x.dim(a.source)) for a in alg.arrows]
    mid_dims = {v: x.dim(v) + y.dim(v) for v in alg.vertices}
    valid = split = 0
    for cochain in _all_tuples(shapes, alg.p):
        maps = _block_middle(x, y, cochain)
        if not _satisfies_relations(alg, maps, mid_dims):
            continue
        valid += 1
        if has_section(x, maps, mid_dims, y):
            split += 1
    return valid, split


def brute_ext_dim(x: Representation, y: Representation) -> int:
    valid, split = extension_counts(x, y)
    return _log(valid, x.p) - _log(split, x.p)


def brute_rank_gf2(m: np.ndarray) -> int:
    """Rank over GF(2) as log2 of the number of distinct row combinations."""
    rows = [tuple(r) for r in np.mod(m, 2)]
    seen = {tuple([0] * m.shape[1])}
    for r in rows:
        seen |= {tuple((a + b) % 2 for a, b in zip(s, r)) for s in seen}
    return _log(len(seen), 2)
