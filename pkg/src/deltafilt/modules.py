"""Bound quiver algebras over GF(p) and their finite-dimensional modules.

A module is a quiver representation: one vector space ``GF(p)^d_v`` per vertex
and one matrix per arrow.  An arrow ``a : s -> t`` acts by a
``dims[t] x dims[s]`` matrix on column vectors.  A path is a tuple of arrow
names in traversal order, so the path ``("a", "b")`` evaluates to
``X_b @ X_a``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from . import linalg as la
from .linalg import DTYPE, PrimeField, Subspace

#: Above this many candidate elements, searches switch from enumeration to sampling.
EXHAUSTIVE_LIMIT = 4096
#: Default number of random samples before a search gives up.
MAX_TRIES = 256


class SearchExhausted(RuntimeError):
    """A randomized certificate search hit its retry bound without an answer either way."""


class ShapeError(ValueError):
    pass


class RelationViolation(ValueError):
    pass


class InvalidSubmodule(ValueError):
    pass


def default_rng(rng=None) -> np.random.Generator:
    if rng is None:
        return np.random.default_rng(0)
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


# --------------------------------------------------------------------------
# quivers and algebras


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertices:
                    raise ValueError(f"arrow {a.name!r} references unknown vertex {end!r}")

    def vindex(self, v) -> int:
        return self.vertices.index(v)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"no arrow named {name!r}")

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        queue.append(a.target)
        return seen == len(self.vertices)

    def paths_from(self, v) -> list[tuple]:
        """All paths starting at ``v`` (including the trivial one), for an acyclic quiver."""
        if not self.is_acyclic():
            raise ValueError("path enumeration needs an acyclic quiver")
        out = [()]
        frontier = [((), v)]
        while frontier:
            nxt = []
            for path, end in frontier:
                for a in self.arrows:
                    if a.source == end:
                        out.append(path + (a.name,))
                        nxt.append((path + (a.name,), a.target))
            frontier = nxt
        return out


@dataclass(frozen=True)
class Relation:
    """``sum(coef * path)`` over parallel paths, required to act as zero."""

    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(c), tuple(path)) for c, path in self.terms))


@dataclass(frozen=True)
class BoundQuiverAlgebra:
    quiver: Quiver
    field: PrimeField = PrimeField(2)
    relations: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(
            r if isinstance(r, Relation) else Relation(r) for r in self.relations))
        for k, rel in enumerate(self.relations):
            if not rel.terms:
                raise ValueError(f"relation {k} is empty")
            ends = {self.path_ends(path) for _, path in rel.terms}
            if len(ends) != 1:
                raise ValueError(f"relation {k} combines non-parallel paths")
            for _, path in rel.terms:
                if len(path) < 2:
                    raise ValueError(f"relation {k} has a path of length {len(path)} < 2")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def vertices(self) -> tuple:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple:
        return self.quiver.arrows

    def path_ends(self, path: Sequence[str]) -> tuple:
        arrows = [self.quiver.arrow(n) for n in path]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise ValueError(f"path {tuple(path)} is not composable at {a.name!r}->{b.name!r}")
        return arrows[0].source, arrows[-1].target


# --------------------------------------------------------------------------
# representations


class Representation:
    """A finite-dimensional module over ``algebra`` given as a quiver representation.

    Args:
        algebra: the bound quiver algebra.
        dims: vertex label -> dimension (missing vertices get 0).
        maps: arrow name -> matrix of shape ``(dims[target], dims[source])``
            (missing arrows get the zero map).
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Mapping, maps: Optional[Mapping] = None,
                 name: str = ""):
        self.algebra = algebra
        self.name = name
        for v in dims:
            if v not in algebra.vertices:
                raise ShapeError(f"unknown vertex {v!r}")
        self.dims = tuple(int(dims.get(v, 0)) for v in algebra.vertices)
        if any(d < 0 for d in self.dims):
            raise ShapeError("negative dimension")
        maps = dict(maps or {})
        for n in maps:
            algebra.quiver.arrow(n)
        self.maps: dict[str, np.ndarray] = {}
        p = algebra.p
        for a in algebra.arrows:
            shape = (self.dim(a.target), self.dim(a.source))
            if a.name in maps and maps[a.name] is not None:
                m = np.asarray(maps[a.name], dtype=DTYPE)
                if m.size == 0:
                    m = m.reshape(shape)
                if m.shape != shape:
                    raise ShapeError(f"arrow {a.name!r}: matrix shape {m.shape}, expected {shape}")
                self.maps[a.name] = np.mod(m, p)
            else:
                self.maps[a.name] = la.zeros(*shape)

    @property
    def p(self) -> int:
        return self.algebra.p

    def dim(self, v) -> int:
        return self.dims[self.algebra.quiver.vindex(v)]

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def evaluate_path(self, path: Sequence[str]) -> np.ndarray:
        src, _ = self.algebra.path_ends(path)
        out = la.identity(self.dim(src))
        for n in path:
            out = np.mod(self.maps[n] @ out, self.p)
        return out

    def evaluate_relation(self, rel: Relation) -> np.ndarray:
        src, tgt = self.algebra.path_ends(rel.terms[0][1])
        out = la.zeros(self.dim(tgt), self.dim(src))
        for c, path in rel.terms:
            out = out + c * self.evaluate_path(path)
        return np.mod(out, self.p)

    def check(self) -> "Representation":
        bad = validate_representation(self.algebra, self)
        if bad:
            raise RelationViolation(f"relations {bad} do not vanish on {self!r}")
        return self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.algebra == other.algebra and self.dims == other.dims
                and all(np.array_equal(self.maps[n], other.maps[n]) for n in self.maps))

    def __hash__(self):
        return hash((self.dims, tuple(m.tobytes() for m in self.maps.values())))

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<Representation {label}dims={self.dims}>"


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, {})


def validate_representation(algebra: BoundQuiverAlgebra, rep: Representation) -> list[int]:
    """Indices of relations that do not vanish on ``rep`` (empty when valid)."""
    if rep.algebra != algebra:
        raise ShapeError("representation belongs to a different algebra")
    for a in algebra.arrows:
        if rep.maps[a.name].shape != (rep.dim(a.target), rep.dim(a.source)):
            raise ShapeError(f"arrow {a.name!r} has the wrong shape")
    return [k for k, rel in enumerate(algebra.relations) if np.any(rep.evaluate_relation(rel))]


def simple(algebra: BoundQuiverAlgebra, v) -> Representation:
    return Representation(algebra, {v: 1}, name=f"S{v}")


def projective(algebra: BoundQuiverAlgebra, v) -> Representation:
    """Indecomposable projective ``P_v``: paths out of ``v`` modulo the relations.

    Only acyclic quivers are supported.
    """
    q = algebra.quiver
    p = algebra.p
    paths = q.paths_from(v)
    by_end: dict = {w: [] for w in q.vertices}
    for path in paths:
        end = v if not path else q.arrow(path[-1]).target
        by_end[end].append(path)
    index = {w: {path: i for i, path in enumerate(ps)} for w, ps in by_end.items()}
    maps = {}
    for a in q.arrows:
        m = la.zeros(len(by_end[a.target]), len(by_end[a.source]))
        for path, i in index[a.source].items():
            m[index[a.target][path + (a.name,)], i] = 1
        maps[a.name] = m
    free = Representation(algebra, {w: len(by_end[w]) for w in q.vertices}, maps)
    # the relation ideal inside the free module: r * rho * q for every relation rho
    gens: dict = {w: [] for w in q.vertices}
    for rel in algebra.relations:
        src, tgt = algebra.path_ends(rel.terms[0][1])
        for head in by_end[src]:
            vec = np.zeros(len(by_end[tgt]), dtype=DTYPE)
            for c, path in rel.terms:
                vec[index[tgt][head + path]] += c
            gens[tgt].append(np.mod(vec, p))
    ideal = submodule_generated(free, gens)
    quo, _ = quotient_module(free, ideal)
    quo.name = f"P{v}"
    return quo


# --------------------------------------------------------------------------
# homomorphisms


class ModuleMap:
    """A family of vertex matrices ``mats[i] : source_i -> target_i``."""

    def __init__(self, source: Representation, target: Representation, mats: Sequence[np.ndarray]):
        if source.algebra != target.algebra:
            raise ShapeError("maps must stay within one algebra")
        self.source = source
        self.target = target
        p = source.p
        self.mats = tuple(np.mod(np.asarray(m, dtype=DTYPE).reshape(ty, sx), p)
                          for m, sx, ty in zip(mats, source.dims, target.dims))
        if len(self.mats) != len(source.dims):
            raise ShapeError("one matrix per vertex required")

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> "ModuleMap":
        return cls(source, target, [la.zeros(t, s) for s, t in zip(source.dims, target.dims)])

    @classmethod
    def identity(cls, module: Representation) -> "ModuleMap":
        return cls(module, module, [la.identity(d) for d in module.dims])

    @property
    def p(self) -> int:
        return self.source.p

    def at(self, v) -> np.ndarray:
        return self.mats[self.source.algebra.quiver.vindex(v)]

    def is_homomorphism(self) -> bool:
        for a in self.source.algebra.arrows:
            left = self.at(a.target) @ self.source.maps[a.name]
            right = self.target.maps[a.name] @ self.at(a.source)
            if np.any(np.mod(left - right, self.p)):
                return False
        return True

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self o other``."""
        if other.target.dims != self.source.dims:
            raise ShapeError("composition of incompatible maps")
        return ModuleMap(other.source, self.target,
                         [np.mod(a @ b, self.p) for a, b in zip(self.mats, other.mats)])

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)])

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, [a - b for a, b in zip(self.mats, other.mats)])

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [int(c) * m for m in self.mats])

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.mats)

    def is_iso(self) -> bool:
        return all(la.is_invertible(m, self.p) for m in self.mats)

    def inverse(self) -> Optional["ModuleMap"]:
        inv = [la.inverse(m, self.p) for m in self.mats]
        if any(m is None for m in inv):
            return None
        return ModuleMap(self.target, self.source, inv)

    def power(self, n: int) -> "ModuleMap":
        out = ModuleMap.identity(self.source)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def image(self) -> "Submodule":
        return Submodule(self.target, [la.column_space(m, self.p) for m in self.mats], check=False)

    def kernel(self) -> "Submodule":
        return Submodule(self.source, [la.null_space(m, self.p) for m in self.mats], check=False)

    def flat(self) -> np.ndarray:
        return np.concatenate([m.ravel() for m in self.mats]) if self.mats else np.zeros(0, dtype=DTYPE)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))

    def __repr__(self) -> str:
        return f"<ModuleMap {self.source.dims} -> {self.target.dims}>"


class _Blocks:
    """Layout of one flat unknown vector holding a ``rows[v] x cols[v]`` block per vertex."""

    def __init__(self, rows: Sequence[int], cols: Sequence[int]):
        self.rows, self.cols = tuple(rows), tuple(cols)
        sizes = [r * c for r, c in zip(rows, cols)]
        self.offsets = list(itertools.accumulate([0] + sizes))
        self.size = self.offsets[-1]

    def slot(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i + 1])

    def unflatten(self, vec: np.ndarray) -> list[np.ndarray]:
        return [vec[self.slot(i)].reshape(r, c) for i, (r, c) in enumerate(zip(self.rows, self.cols))]


def _commuting_system(x: Representation, y: Representation) -> tuple[np.ndarray, _Blocks]:
    """Matrix whose kernel is ``{f : f_t X_a = Y_a f_s for every arrow a}``, in flattened coordinates."""
    alg = x.algebra
    q = alg.quiver
    blocks = _Blocks(y.dims, x.dims)
    eqs = []
    for a in alg.arrows:
        s, t = q.vindex(a.source), q.vindex(a.target)
        n_eq = y.dims[t] * x.dims[s]
        if n_eq == 0:
            continue
        row = la.zeros(n_eq, blocks.size)
        # row-major vec(A F B) = kron(A, B^T) vec(F)
        row[:, blocks.slot(t)] += np.kron(la.identity(y.dims[t]), x.maps[a.name].T)
        row[:, blocks.slot(s)] -= np.kron(y.maps[a.name], la.identity(x.dims[s]))
        eqs.append(row)
    system = np.mod(np.vstack(eqs), alg.p) if eqs else la.zeros(0, blocks.size)
    return system, blocks


@dataclass
class HomSpace:
    source: Representation
    target: Representation
    basis: list[ModuleMap]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coeffs: Sequence[int]) -> ModuleMap:
        out = ModuleMap.zero(self.source, self.target)
        for c, f in zip(coeffs, self.basis):
            if c:
                out = out + f.scale(c)
        return out

    def random(self, rng: np.random.Generator) -> ModuleMap:
        return self.combination(rng.integers(0, self.source.p, size=self.dim))


def hom_space(x: Representation, y: Representation) -> HomSpace:
    """Basis of ``Hom(x, y)``: solutions of the commuting-square system."""
    if x.algebra != y.algebra:
        raise ShapeError("Hom between modules over different algebras")
    system, blocks = _commuting_system(x, y)
    basis = la.kernel(system, x.p) if system.shape[0] else la.identity(blocks.size)
    return HomSpace(x, y, [ModuleMap(x, y, blocks.unflatten(v)) for v in basis])


def hom_dim(x: Representation, y: Representation) -> int:
    system, blocks = _commuting_system(x, y)
    return blocks.size - la.rank(system, x.p)


# --------------------------------------------------------------------------
# submodules


class Submodule:
    """Arrow-closed family of vertex subspaces of ``parent``."""

    def __init__(self, parent: Representation, spaces: Sequence[Subspace], check: bool = True):
        self.parent = parent
        self.spaces = tuple(spaces)
        if len(self.spaces) != len(parent.dims):
            raise InvalidSubmodule("one subspace per vertex required")
        for s, d in zip(self.spaces, parent.dims):
            if s.ambient != d:
                raise InvalidSubmodule(f"subspace of dimension {s.ambient} ambient where {d} expected")
        if check and not self.is_closed():
            raise InvalidSubmodule("vertex subspaces are not closed under the arrow maps")

    @classmethod
    def zero(cls, parent: Representation) -> "Submodule":
        return cls(parent, [Subspace.zero(d, parent.p) for d in parent.dims], check=False)

    @classmethod
    def full(cls, parent: Representation) -> "Submodule":
        return cls(parent, [Subspace.full(d, parent.p) for d in parent.dims], check=False)

    def is_closed(self) -> bool:
        q = self.parent.algebra.quiver
        for a in self.parent.algebra.arrows:
            img = la.subspace_image(self.parent.maps[a.name], self.spaces[q.vindex(a.source)])
            if not img.issubset(self.spaces[q.vindex(a.target)]):
                return False
        return True

    def at(self, v) -> Subspace:
        return self.spaces[self.parent.algebra.quiver.vindex(v)]

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.spaces)

    @property
    def total_dim(self) -> int:
        return sum(self.dim_vector)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_full(self) -> bool:
        return self.dim_vector == self.parent.dims

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, [a + b for a, b in zip(self.spaces, other.spaces)], check=False)

    def __and__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.parent, [a & b for a, b in zip(self.spaces, other.spaces)], check=False)

    def issubset(self, other: "Submodule") -> bool:
        return all(a.issubset(b) for a, b in zip(self.spaces, other.spaces))

    def as_module(self) -> tuple[Representation, ModuleMap]:
        """This submodule as a module in its RREF basis, with its inclusion into ``parent``."""
        q = self.parent.algebra.quiver
        p = self.parent.p
        maps = {}
        for a in self.parent.algebra.arrows:
            s, t = self.spaces[q.vindex(a.source)], self.spaces[q.vindex(a.target)]
            moved = np.mod(self.parent.maps[a.name] @ s.basis.T, p)
            maps[a.name] = t.coordinates(moved)
        sub = Representation(self.parent.algebra, dict(zip(q.vertices, self.dim_vector)), maps)
        return sub, ModuleMap(sub, self.parent, [s.basis.T for s in self.spaces])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.parent.dims == other.parent.dims and self.spaces == other.spaces

    def __hash__(self):
        return hash(self.spaces)

    def __repr__(self) -> str:
        return f"<Submodule dims={self.dim_vector} of {self.parent.dims}>"


def submodule_generated(rep: Representation, vectors: Mapping) -> Submodule:
    """Smallest submodule containing ``vectors[v]`` (a list of vectors) at each vertex ``v``."""
    q = rep.algebra.quiver
    p = rep.p
    spaces = [Subspace.span(vectors.get(v, []), d, p) if len(vectors.get(v, [])) else Subspace.zero(d, p)
              for v, d in zip(q.vertices, rep.dims)]
    changed = True
    while changed:
        changed = False
        for a in rep.algebra.arrows:
            s, t = q.vindex(a.source), q.vindex(a.target)
            grown = spaces[t] + la.subspace_image(rep.maps[a.name], spaces[s])
            if grown.dim > spaces[t].dim:
                spaces[t] = grown
                changed = True
    return Submodule(rep, spaces, check=False)


def push(f: ModuleMap, sub: Submodule) -> Submodule:
    """Image ``f(sub)`` as a submodule of ``f.target``."""
    return Submodule(f.target, [la.subspace_image(m, s) for m, s in zip(f.mats, sub.spaces)], check=False)


def preimage(f: ModuleMap, sub: Submodule) -> Submodule:
    """``f^{-1}(sub)`` as a submodule of ``f.source``; contains ``ker f``."""
    if sub.parent.dims != f.target.dims:
        raise ShapeError("submodule does not live in the codomain")
    return Submodule(f.source, [la.subspace_preimage(m, s) for m, s in zip(f.mats, sub.spaces)], check=False)


def quotient_module(rep: Representation, sub: Submodule) -> tuple[Representation, ModuleMap]:
    """``rep / sub`` with its canonical projection.

    Quotient coordinates at a vertex are the non-pivot coordinates of the
    submodule's RREF basis, so the result depends only on ``sub``.
    """
    if sub.parent.dims != rep.dims or not sub.is_closed():
        raise InvalidSubmodule("not a submodule of this representation")
    p = rep.p
    q = rep.algebra.quiver
    proj, lift = [], []
    for s, d in zip(sub.spaces, rep.dims):
        piv = s.pivots
        free = [c for c in range(d) if c not in set(piv)]
        pm = la.zeros(len(free), d)
        pm[:, free] = la.identity(len(free))
        if piv:
            pm[:, piv] = np.mod(-s.basis[:, free].T, p)
        lm = la.zeros(d, len(free))
        lm[free, :] = la.identity(len(free))
        proj.append(pm)
        lift.append(lm)
    maps = {a.name: la.matmul(proj[q.vindex(a.target)], rep.maps[a.name], lift[q.vindex(a.source)], p=p)
            for a in rep.algebra.arrows}
    quo = Representation(rep.algebra, {v: m.shape[0] for v, m in zip(q.vertices, proj)}, maps)
    return quo, ModuleMap(rep, quo, proj)


@dataclass
class Subquotient:
    """``upper / lower`` for submodules ``lower <= upper`` of ``module``.

    ``inclusion`` embeds the upper module into ``module``; ``projection`` maps
    the upper module onto ``quotient``.
    """

    upper: Representation
    inclusion: ModuleMap
    quotient: Representation
    projection: ModuleMap

    def lift(self, sub: Submodule) -> Submodule:
        """Pull a submodule of the quotient back to a submodule of the ambient module."""
        return push(self.inclusion, preimage(self.projection, sub))

    def image_of(self, sub: Submodule) -> Submodule:
        """Image in the quotient of an ambient submodule contained in the upper one."""
        inner = preimage(self.inclusion, sub)
        return push(self.projection, inner)


def subquotient(lower: Submodule, upper: Submodule) -> Subquotient:
    if not lower.issubset(upper):
        raise InvalidSubmodule("lower submodule is not contained in the upper one")
    up, inc = upper.as_module()
    low_in_up = preimage(inc, lower)
    quo, proj = quotient_module(up, low_in_up)
    return Subquotient(up, inc, quo, proj)


def trace(generators: Sequence[Representation], n: Representation) -> Submodule:
    """Sum of the images of all homomorphisms from the generators into ``n``."""
    out = Submodule.zero(n)
    for gen in generators:
        for f in hom_space(gen, n).basis:
            out = out + f.image()
    return out


# --------------------------------------------------------------------------
# direct sums


@dataclass
class DirectSum:
    module: Representation
    injections: list[ModuleMap]
    projections: list[ModuleMap]


def direct_sum(*summands: Representation) -> DirectSum:
    """Block-diagonal direct sum with canonical injections and projections."""
    if not summands:
        raise ValueError("need at least one summand")
    alg = summands[0].algebra
    if any(s.algebra != alg for s in summands):
        raise ShapeError("summands over different algebras")
    q = alg.quiver
    dims = [sum(s.dims[i] for s in summands) for i in range(len(q.vertices))]
    maps = {}
    for a in alg.arrows:
        blocks = [s.maps[a.name] for s in summands]
        m = la.zeros(dims[q.vindex(a.target)], dims[q.vindex(a.source)])
        r = c = 0
        for b in blocks:
            m[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        maps[a.name] = m
    total = Representation(alg, dict(zip(q.vertices, dims)), maps)
    total.name = "+".join(s.name for s in summands) if all(s.name for s in summands) else ""
    injections, projections = [], []
    start = [0] * len(dims)
    for s in summands:
        inj, proj = [], []
        for i, d in enumerate(s.dims):
            e = la.zeros(dims[i], d)
            e[start[i]:start[i] + d] = la.identity(d)
            inj.append(e)
            proj.append(e.T.copy())
            start[i] += d
        injections.append(ModuleMap(s, total, inj))
        projections.append(ModuleMap(total, s, proj))
    return DirectSum(total, injections, projections)


# --------------------------------------------------------------------------
# structure: radical, socle, Fitting


def radical(rep: Representation) -> Submodule:
    """Sum of the images of the arrows (the radical for an admissible ideal)."""
    out = Submodule.zero(rep)
    q = rep.algebra.quiver
    spaces = list(out.spaces)
    for a in rep.algebra.arrows:
        t = q.vindex(a.target)
        spaces[t] = spaces[t] + la.column_space(rep.maps[a.name], rep.p)
    return submodule_generated(rep, {v: s.basis for v, s in zip(q.vertices, spaces)})


def socle(rep: Representation) -> Submodule:
    """Vectors killed by every arrow."""
    q = rep.algebra.quiver
    spaces = []
    for v, d in zip(q.vertices, rep.dims):
        outgoing = [rep.maps[a.name] for a in rep.algebra.arrows if a.source == v]
        stacked = np.vstack(outgoing) if outgoing else la.zeros(0, d)
        spaces.append(la.null_space(stacked, rep.p))
    return Submodule(rep, spaces, check=False)


def is_nilpotent(f: ModuleMap) -> bool:
    return f.power(max(f.source.dims, default=0)).is_zero()


def fitting_split(f: ModuleMap) -> Optional[tuple[Submodule, Submodule]]:
    """``(im f^N, ker f^N)`` when ``f`` is neither nilpotent nor invertible, else ``None``."""
    fn = f.power(max(f.source.dims, default=0))
    if fn.is_zero() or fn.is_iso():
        return None
    return fn.image(), fn.kernel()


def projection_onto(image: Submodule, kernel: Submodule) -> ModuleMap:
    """Idempotent endomorphism with the given image and kernel (assumed complementary)."""
    p = image.parent.p
    mats = []
    for im, ke, d in zip(image.spaces, kernel.spaces, image.parent.dims):
        t = np.vstack([im.basis, ke.basis]).T if d else la.zeros(0, 0)
        t = t.reshape(d, d)
        diag = la.zeros(d, d)
        diag[:im.dim, :im.dim] = la.identity(im.dim)
        mats.append(la.matmul(t, diag, la.inverse(t, p), p=p) if d else la.zeros(0, 0))
    return ModuleMap(image.parent, image.parent, mats)


def certified_local(rep: Representation, end_dim: Optional[int] = None) -> bool:
    """Cheap sufficient conditions for indecomposability.

    One-dimensional endomorphism ring, simple top, or simple socle.
    """
    if rep.is_zero():
        return False
    if end_dim is None:
        end_dim = hom_dim(rep, rep)
    if end_dim == 1:
        return True
    if rep.total_dim - radical(rep).total_dim == 1:
        return True
    return socle(rep).total_dim == 1


def _coefficient_vectors(k: int, p: int, rng: np.random.Generator, exhaustive: bool, tries: int):
    if exhaustive:
        yield from itertools.product(range(p), repeat=k)
    else:
        for _ in range(tries):
            yield tuple(int(c) for c in rng.integers(0, p, size=k))


@dataclass
class Splitting:
    """Nontrivial decomposition ``module = image + kernel`` of an idempotent."""

    idempotent: ModuleMap
    image: Submodule
    kernel: Submodule


def indecomposable_test(rep: Representation, rng=None, max_tries: int = MAX_TRIES,
                        exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> Optional[Splitting]:
    """``None`` if ``rep`` is indecomposable, else a witnessing splitting.

    Uses Fitting's lemma: an endomorphism that is neither nilpotent nor
    invertible splits the module.  The endomorphism ring is searched
    exhaustively when it has at most ``exhaustive_limit`` elements, otherwise
    sampled; an inconclusive sample raises :class:`SearchExhausted`.
    """
    if rep.is_zero():
        raise ValueError("the zero module is not indecomposable")
    rng = default_rng(rng)
    end = hom_space(rep, rep)
    for f in end.basis:
        split = fitting_split(f)
        if split is not None:
            return Splitting(projection_onto(*split), *split)
    if certified_local(rep, end.dim):
        return None
    exhaustive = rep.p ** end.dim <= exhaustive_limit
    for coeffs in _coefficient_vectors(end.dim, rep.p, rng, exhaustive, max_tries):
        split = fitting_split(end.combination(coeffs))
        if split is not None:
            return Splitting(projection_onto(*split), *split)
    if exhaustive:
        return None
    raise SearchExhausted(f"no splitting of {rep!r} found in {max_tries} samples; locality unproven")


def iso_test(x: Representation, y: Representation, rng=None, indecomposable: bool = False,
             max_tries: int = MAX_TRIES, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> Optional[ModuleMap]:
    """An isomorphism ``x -> y``, or ``None`` when none exists.

    Pass ``indecomposable=True`` when ``x`` is known to be indecomposable; the
    answer is then decided exactly from products of Hom bases.
    """
    if x.algebra != y.algebra:
        raise ShapeError("modules over different algebras")
    if x.dims != y.dims:
        return None
    if x.is_zero():
        return ModuleMap.identity(x)
    hxy, hyx = hom_space(x, y), hom_space(y, x)
    if hxy.dim == 0 or hxy.dim != hyx.dim or hom_dim(x, x) != hom_dim(y, y) or hom_dim(x, x) != hxy.dim:
        return None
    for f in hxy.basis:
        if f.is_iso():
            return f
    # g o f invertible makes f a split mono; equal dimensions make it an iso
    for f in hxy.basis:
        for g in hyx.basis:
            if (g @ f).is_iso():
                return f
    if indecomposable or certified_local(x, hxy.dim):
        return None
    rng = default_rng(rng)
    exhaustive = x.p ** hxy.dim <= exhaustive_limit
    for coeffs in _coefficient_vectors(hxy.dim, x.p, rng, exhaustive, max_tries):
        f = hxy.combination(coeffs)
        if f.is_iso():
            return f
    if exhaustive:
        return None
    raise SearchExhausted(f"no isomorphism {x!r} -> {y!r} found in {max_tries} samples")


@dataclass
class Peel:
    """``module = summand + complement`` with ``summand`` the image of ``section : candidate -> module``.

    ``retraction o section`` is the identity of the candidate.
    """

    index: int
    section: ModuleMap
    retraction: ModuleMap
    summand: Submodule
    complement: Submodule


def _make_peel(index: int, f: ModuleMap, g: ModuleMap) -> Optional[Peel]:
    u = (g @ f).inverse()
    if u is None:
        return None
    g = u @ g
    return Peel(index, f, g, f.image(), g.kernel())


def peel_summand(rep: Representation, candidates: Sequence[Representation], rng=None,
                 indecomposable: bool = True, max_tries: int = MAX_TRIES,
                 exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> Optional[Peel]:
    """Split off the first candidate that is a direct summand of ``rep``.

    With indecomposable candidates the search over products of Hom bases is
    complete; otherwise combinations are enumerated or sampled.
    """
    if rep.is_zero():
        return None
    rng = default_rng(rng)
    unresolved = False
    for idx, cand in enumerate(candidates):
        if cand.is_zero() or any(c > r for c, r in zip(cand.dims, rep.dims)):
            continue
        hf, hg = hom_space(cand, rep), hom_space(rep, cand)
        for f in hf.basis:
            for g in hg.basis:
                peel = _make_peel(idx, f, g)
                if peel is not None:
                    return peel
        if not hf.basis or not hg.basis or indecomposable or certified_local(cand):
            continue
        k = hf.dim + hg.dim
        exhaustive = rep.p ** k <= exhaustive_limit
        for coeffs in _coefficient_vectors(k, rep.p, rng, exhaustive, max_tries):
            peel = _make_peel(idx, hf.combination(coeffs[:hf.dim]), hg.combination(coeffs[hf.dim:]))
            if peel is not None:
                return peel
        unresolved = unresolved or not exhaustive
    if unresolved:
        raise SearchExhausted("no candidate split off, but a sampled search was inconclusive")
    return None


def peel_completely(rep: Representation, candidates: Sequence[Representation], rng=None,
                    indecomposable: bool = True) -> tuple[list[tuple[int, Submodule]], Submodule]:
    """Repeatedly peel candidates off ``rep``.

    Returns ``(pieces, residue)``: each piece is ``(candidate index, summand
    submodule of rep)``; the summands together with ``residue`` form a direct
    sum decomposition of ``rep``.
    """
    pieces: list[tuple[int, Submodule]] = []
    current, inc = rep, ModuleMap.identity(rep)
    while True:
        peel = peel_summand(current, candidates, rng=rng, indecomposable=indecomposable)
        if peel is None:
            return pieces, push(inc, Submodule.full(current))
        pieces.append((peel.index, push(inc, peel.summand)))
        comp, comp_inc = peel.complement.as_module()
        current, inc = comp, inc @ comp_inc


def random_representation(algebra: BoundQuiverAlgebra, dims: Mapping, rng=None,
                          density: float = 0.5, tries: int = 50) -> Optional[Representation]:
    """Random representation of the given dimension vector satisfying the relations.

    Sparse random matrices are drawn until the relations hold; ``None`` after
    ``tries`` failures.
    """
    rng = default_rng(rng)
    p = algebra.p
    for _ in range(tries):
        maps = {}
        for a in algebra.arrows:
            shape = (int(dims.get(a.target, 0)), int(dims.get(a.source, 0)))
            vals = rng.integers(1, p, size=shape) if p > 2 else np.ones(shape, dtype=DTYPE)
            mask = rng.random(shape) < density
            maps[a.name] = np.where(mask, vals, 0)
        rep = Representation(algebra, dims, maps)
        if not validate_representation(algebra, rep):
            return rep
    return None


def random_automorphism(rep: Representation, rng=None, tries: int = 200) -> ModuleMap:
    rng = default_rng(rng)
    end = hom_space(rep, rep)
    for _ in range(tries):
        f = end.random(rng)
        if f.is_iso():
            return f
    return ModuleMap.identity(rep)
