"""First extension groups of quiver representations via arrow cochains.

For modules ``X`` and ``Y`` an extension ``0 -> Y -> E -> X -> 0`` can be put in
the block form ``E_a = [[Y_a, d_a], [0, X_a]]`` with one cochain block
``d_a : X_s -> Y_t`` per arrow.  The blocks that make ``E`` satisfy the
relations are the cocycles; changing the splitting of the vertex spaces
shifts ``d`` by a coboundary ``Y_a c_s - c_t X_a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from . import linalg as la
from .linalg import DTYPE
from .modules import (ModuleMap, RelationViolation, Representation, ShapeError, Submodule,
                      _Blocks, quotient_module, validate_representation)

Cochain = dict  # arrow name -> matrix of shape (dim Y_target, dim X_source)


class _CochainLayout:
    def __init__(self, x: Representation, y: Representation):
        alg = x.algebra
        self.names = [a.name for a in alg.arrows]
        self.blocks = _Blocks([y.dim(a.target) for a in alg.arrows], [x.dim(a.source) for a in alg.arrows])
        self.size = self.blocks.size

    def slot(self, name: str) -> slice:
        return self.blocks.slot(self.names.index(name))

    def to_cochain(self, vec: np.ndarray) -> Cochain:
        return dict(zip(self.names, self.blocks.unflatten(np.asarray(vec, dtype=DTYPE))))

    def to_vector(self, delta: Mapping) -> np.ndarray:
        out = np.zeros(self.size, dtype=DTYPE)
        for i, n in enumerate(self.names):
            if n in delta:
                out[self.blocks.slot(i)] = np.asarray(delta[n], dtype=DTYPE).reshape(
                    self.blocks.rows[i], self.blocks.cols[i]).ravel()
        return out


def _cocycle_conditions(x: Representation, y: Representation, layout: _CochainLayout) -> np.ndarray:
    """Linear map from cochains to the top-right blocks of every relation evaluated on ``E``.

    For a path ``a_1 ... a_L`` the top-right block of ``E_{a_L} ... E_{a_1}`` is
    the sum over ``k`` of ``Y_{a_L} ... Y_{a_{k+1}} d_{a_k} X_{a_{k-1}} ... X_{a_1}``.
    """
    alg = x.algebra
    p = alg.p
    rows = []
    for rel in alg.relations:
        src, tgt = alg.path_ends(rel.terms[0][1])
        block = la.zeros(y.dim(tgt) * x.dim(src), layout.size)
        for coef, path in rel.terms:
            for k, name in enumerate(path):
                after = y.evaluate_path(path[k + 1:]) if k + 1 < len(path) else la.identity(y.dim(tgt))
                before = x.evaluate_path(path[:k]) if k > 0 else la.identity(x.dim(src))
                block[:, layout.slot(name)] += coef * np.kron(after, before.T)
        rows.append(np.mod(block, p))
    return np.vstack(rows) if rows else la.zeros(0, layout.size)


def _coboundary_matrix(x: Representation, y: Representation, layout: _CochainLayout) -> np.ndarray:
    """Columns span the coboundaries ``c -> (Y_a c_s - c_t X_a)_a`` for ``c_v : X_v -> Y_v``."""
    alg = x.algebra
    q = alg.quiver
    c_blocks = _Blocks(y.dims, x.dims)
    out = la.zeros(layout.size, c_blocks.size)
    for a in alg.arrows:
        s, t = q.vindex(a.source), q.vindex(a.target)
        sl = layout.slot(a.name)
        out[sl, c_blocks.slot(s)] += np.kron(y.maps[a.name], la.identity(x.dims[s]))
        out[sl, c_blocks.slot(t)] -= np.kron(la.identity(y.dims[t]), x.maps[a.name].T)
    return np.mod(out, alg.p)


@dataclass
class ExtSpace:
    """``Ext^1(x, y) = Z^1 / B^1`` with cochains flattened to vectors (rows of the bases)."""

    x: Representation
    y: Representation
    cocycles: np.ndarray
    coboundaries: np.ndarray
    layout: _CochainLayout

    @property
    def dim(self) -> int:
        return self.cocycles.shape[0] - self.coboundaries.shape[0]

    @property
    def p(self) -> int:
        return self.x.p

    def is_cocycle(self, delta: Mapping) -> bool:
        v = self.layout.to_vector(delta)
        return not np.any(la.matmul(_cocycle_conditions(self.x, self.y, self.layout), v.reshape(-1, 1), p=self.p))

    def is_coboundary(self, delta: Mapping) -> bool:
        v = self.layout.to_vector(delta)
        return la.Subspace(self.layout.size, self.coboundaries, self.p).contains(v)

    def class_representatives(self) -> list[Cochain]:
        """Cocycles whose classes form a basis of Ext^1."""
        reps = []
        span = self.coboundaries
        for v in self.cocycles:
            trial = np.vstack([span, v])
            if la.rank(trial, self.p) > span.shape[0]:
                span = trial
                reps.append(self.layout.to_cochain(v))
        return reps

    def random_cocycle(self, rng: np.random.Generator) -> Cochain:
        coeffs = rng.integers(0, self.p, size=self.cocycles.shape[0])
        return self.layout.to_cochain(np.mod(coeffs @ self.cocycles, self.p) if len(coeffs) else
                                      np.zeros(self.layout.size, dtype=DTYPE))

    def zero(self) -> Cochain:
        return self.layout.to_cochain(np.zeros(self.layout.size, dtype=DTYPE))


def ext_space(x: Representation, y: Representation) -> ExtSpace:
    if x.algebra != y.algebra:
        raise ShapeError("Ext between modules over different algebras")
    p = x.p
    layout = _CochainLayout(x, y)
    cond = _cocycle_conditions(x, y, layout)
    z = la.kernel(cond, p) if cond.shape[0] else la.identity(layout.size)
    b = la.column_space(_coboundary_matrix(x, y, layout), p).basis
    return ExtSpace(x, y, z, b, layout)


def ext_dim(x: Representation, y: Representation) -> int:
    return ext_space(x, y).dim


@dataclass
class ShortExactSequence:
    """``0 -> sub --inclusion--> middle --projection--> quot -> 0``."""

    sub: Representation
    middle: Representation
    quot: Representation
    inclusion: ModuleMap
    projection: ModuleMap

    def is_exact(self) -> bool:
        p = self.middle.p
        if not (self.inclusion.is_homomorphism() and self.projection.is_homomorphism()):
            return False
        for i, m in enumerate(self.inclusion.mats):
            if la.rank(m, p) != self.sub.dims[i]:
                return False
        for i, m in enumerate(self.projection.mats):
            if la.rank(m, p) != self.quot.dims[i]:
                return False
        return self.inclusion.image() == self.projection.kernel()


def build_extension(x: Representation, y: Representation, delta: Mapping) -> ShortExactSequence:
    """Middle term ``E`` with ``E_v = Y_v + X_v`` and arrow blocks ``[[Y_a, d_a], [0, X_a]]``."""
    alg = x.algebra
    q = alg.quiver
    dims = {v: y.dims[i] + x.dims[i] for i, v in enumerate(q.vertices)}
    maps = {}
    for a in alg.arrows:
        d = np.asarray(delta.get(a.name, la.zeros(y.dim(a.target), x.dim(a.source))), dtype=DTYPE)
        d = d.reshape(y.dim(a.target), x.dim(a.source))
        maps[a.name] = np.block([[y.maps[a.name], d],
                                 [la.zeros(x.dim(a.target), y.dim(a.source)), x.maps[a.name]]])
    e = Representation(alg, dims, maps)
    bad = validate_representation(alg, e)
    if bad:
        raise RelationViolation(f"cochain is not a cocycle: relations {bad} fail on the middle term")
    inc = [np.vstack([la.identity(ny), la.zeros(nx, ny)]) for ny, nx in zip(y.dims, x.dims)]
    proj = [np.hstack([la.zeros(nx, ny), la.identity(nx)]) for ny, nx in zip(y.dims, x.dims)]
    return ShortExactSequence(y, e, x, ModuleMap(y, e, inc), ModuleMap(e, x, proj))


def sequence_from_submodule(middle: Representation, sub: Submodule) -> ShortExactSequence:
    """``0 -> sub -> middle -> middle/sub -> 0`` in canonical coordinates."""
    s, inc = sub.as_module()
    quo, proj = quotient_module(middle, sub)
    return ShortExactSequence(s, middle, quo, inc, proj)


def find_section(seq: ShortExactSequence) -> Optional[ModuleMap]:
    """A module map ``s : quot -> middle`` with ``projection o s = id``, if the sequence splits.

    Solved as one affine system in all vertex blocks of ``s``.
    """
    x, e = seq.quot, seq.middle
    alg = x.algebra
    q = alg.quiver
    p = alg.p
    blocks = _Blocks(e.dims, x.dims)
    rows, rhs = [], []
    for i, (ne, nx) in enumerate(zip(e.dims, x.dims)):
        if nx == 0:
            continue
        r = la.zeros(nx * nx, blocks.size)
        r[:, blocks.slot(i)] = np.kron(seq.projection.mats[i], la.identity(nx))
        rows.append(r)
        rhs.append(la.identity(nx).ravel())
    for a in alg.arrows:
        s, t = q.vindex(a.source), q.vindex(a.target)
        n_eq = e.dims[t] * x.dims[s]
        if n_eq == 0:
            continue
        r = la.zeros(n_eq, blocks.size)
        r[:, blocks.slot(s)] += np.kron(e.maps[a.name], la.identity(x.dims[s]))
        r[:, blocks.slot(t)] -= np.kron(la.identity(e.dims[t]), x.maps[a.name].T)
        rows.append(r)
        rhs.append(np.zeros(n_eq, dtype=DTYPE))
    if not rows:
        return ModuleMap.zero(x, e)
    sol = la.solve(np.mod(np.vstack(rows), p), np.concatenate(rhs).reshape(-1, 1), p)
    if sol is None:
        return None
    return ModuleMap(x, e, blocks.unflatten(sol.ravel()))


def complement_of_sub(seq: ShortExactSequence, section: ModuleMap) -> Submodule:
    """Image of the section: a complement to the image of ``sub`` isomorphic to ``quot``."""
    ident = seq.projection @ section
    if not section.is_homomorphism() or ident != ModuleMap.identity(seq.quot):
        raise ValueError("not a section of this sequence")
    return section.image()
