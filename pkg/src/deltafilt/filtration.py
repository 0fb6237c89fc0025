"""Delta-filtrations: verification, height normalization, h-filtrations and summands.

A filtration of ``M`` is a strictly increasing chain ``0 = M_0 < ... < M_t = M``
of submodules with labels ``w_1, ..., w_t`` such that ``M_i / M_{i-1}`` is
isomorphic to ``delta[w_i]``.  Factors are always formed with
:func:`~deltafilt.modules.subquotient`, so a stored witness ``delta[w_i] ->
M_i / M_{i-1}`` stays valid for as long as the two chain members do.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ext import ShortExactSequence, complement_of_sub, find_section, sequence_from_submodule
from .modules import (ModuleMap, Representation, Submodule, iso_test, peel_completely, preimage, push,
                      quotient_module, subquotient, trace)
from .system import HomologicalSystem

log = logging.getLogger(__name__)


class InternalContradiction(RuntimeError):
    """A step that is guaranteed for a checked system failed; something upstream is wrong."""


class NotFiltered(ValueError):
    """The module has no Delta-filtration."""


@dataclass
class Filtration:
    module: Representation
    chain: list[Submodule]
    labels: list
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.chain) != len(self.labels) + 1:
            raise ValueError("a chain of t+1 submodules needs t labels")
        if not self.witnesses:
            self.witnesses = [None] * len(self.labels)

    @property
    def length(self) -> int:
        return len(self.labels)

    def factor(self, i: int) -> Representation:
        """``M_{i+1} / M_i`` (0-based factor index)."""
        return subquotient(self.chain[i], self.chain[i + 1]).quotient

    def dim_vectors(self) -> list[tuple[int, ...]]:
        return [c.dim_vector for c in self.chain]

    def __repr__(self) -> str:
        return f"<Filtration labels={self.labels} dims={self.dim_vectors()}>"


def multiplicities(f: Filtration, omega: Sequence = ()) -> dict:
    """``w -> number of factors labelled w``; every element of ``omega`` gets an entry."""
    counts = Counter(f.labels)
    out = {w: 0 for w in omega}
    out.update(counts)
    return out


def _witness(sys: HomologicalSystem, label, factor: Representation, rng=None) -> Optional[ModuleMap]:
    return iso_test(sys.delta[label], factor, rng=rng, indecomposable=True)


def attach_witnesses(sys: HomologicalSystem, f: Filtration, rng=None) -> Filtration:
    """Fill in missing factor isomorphisms (left ``None`` where there is none)."""
    wit = list(f.witnesses)
    for i, lab in enumerate(f.labels):
        if wit[i] is None:
            wit[i] = _witness(sys, lab, f.factor(i), rng)
    return Filtration(f.module, list(f.chain), list(f.labels), wit)


def verify_filtration(sys: HomologicalSystem, f: Filtration, rng=None) -> Optional[tuple[int, str]]:
    """``None`` when ``f`` is a Delta-filtration, else ``(index, reason)`` for the first failure.

    Index ``i`` refers to chain member ``M_i`` (or to the factor ``M_i / M_{i-1}``).
    """
    m = f.module
    if not f.chain[0].is_zero():
        return 0, "chain does not start at zero"
    if f.chain[-1] != Submodule.full(m):
        return len(f.chain) - 1, "chain does not end at the module"
    for i, c in enumerate(f.chain):
        if c.parent.dims != m.dims or not c.is_closed():
            return i, "not a submodule"
    for i in range(1, len(f.chain)):
        if not f.chain[i - 1].issubset(f.chain[i]) or f.chain[i - 1].total_dim == f.chain[i].total_dim:
            return i, "inclusion is not strict"
    for i, lab in enumerate(f.labels):
        if lab not in sys.delta:
            return i + 1, f"unknown label {lab!r}"
        factor = f.factor(i)
        w = f.witnesses[i]
        if w is not None and w.source.dims == sys.delta[lab].dims and w.target == factor \
                and w.is_homomorphism() and w.is_iso():
            continue
        if _witness(sys, lab, factor, rng) is None:
            return i + 1, f"factor is not isomorphic to delta[{lab!r}]"
    return None


def swap_adjacent(sys: HomologicalSystem, f: Filtration, k: int, rng=None) -> Optional[Filtration]:
    """Exchange factors ``k`` and ``k+1`` when the two-step subquotient splits.

    Splits ``M_{k+2} / M_k``, takes the complement of ``M_{k+1} / M_k``, and
    pulls it back to ``M_{k+2}``. Returns ``None`` if the sequence does not split.
    """
    sq = subquotient(f.chain[k], f.chain[k + 2])
    seq = sequence_from_submodule(sq.quotient, sq.image_of(f.chain[k + 1]))
    section = find_section(seq)
    if section is None:
        return None
    nbar = complement_of_sub(seq, section)
    chain = list(f.chain)
    chain[k + 1] = sq.lift(nbar)
    labels = list(f.labels)
    labels[k], labels[k + 1] = labels[k + 1], labels[k]
    wit = list(f.witnesses)
    wit[k] = _witness(sys, labels[k], subquotient(chain[k], chain[k + 1]).quotient, rng)
    wit[k + 1] = _witness(sys, labels[k + 1], subquotient(chain[k + 1], chain[k + 2]).quotient, rng)
    return Filtration(f.module, chain, labels, wit)


@dataclass
class NormalizeResult:
    filtration: Filtration
    swaps: list[int]


def normalize(sys: HomologicalSystem, f: Filtration, rng=None, transcript: bool = False):
    """Reorder factors so heights weakly decrease along the chain.

    Repeatedly fixes the leftmost adjacent pair with increasing height.  The
    multiset of labels is unchanged. With ``transcript=True`` a
    :class:`NormalizeResult` listing the swap positions is returned.
    """
    h = sys.height
    swaps = []
    while True:
        k = next((i for i in range(f.length - 1) if h[f.labels[i]] < h[f.labels[i + 1]]), None)
        if k is None:
            break
        swapped = swap_adjacent(sys, f, k, rng)
        if swapped is None:
            raise InternalContradiction(
                f"extension of delta[{f.labels[k + 1]!r}] by delta[{f.labels[k]!r}] does not split")
        f = swapped
        swaps.append(k)
    return NormalizeResult(f, swaps) if transcript else f


@dataclass
class HFiltration:
    """Layers ``W_1 = M >= W_2 >= ... >= W_{a+1} = 0`` with ``W_i / W_{i+1}`` a sum of height-``i`` deltas.

    ``pieces[i]`` lists ``(w, P)`` where each ``P`` is a submodule of ``M``
    containing ``W_{i+1}`` and ``P / W_{i+1}`` is one summand ``delta[w]`` of the layer.
    """

    module: Representation
    max_height: int
    layers: dict
    pieces: dict

    @property
    def multiplicities(self) -> dict:
        counts: Counter = Counter()
        for i, ps in self.pieces.items():
            counts.update(w for w, _ in ps)
        return dict(counts)

    def layer_multiplicities(self) -> dict:
        return {i: dict(Counter(w for w, _ in ps)) for i, ps in self.pieces.items()}

    def __repr__(self) -> str:
        return f"<HFiltration layers={ {i: w.dim_vector for i, w in self.layers.items()} }>"


def _split_layer(sys: HomologicalSystem, i: int, layer: Representation, rng=None):
    labels = sys.level(i)
    pieces, residue = peel_completely(layer, [sys.delta[w] for w in labels], rng=rng)
    return [(labels[j], s) for j, s in pieces], residue


def h_filtration_from(sys: HomologicalSystem, f: Filtration, rng=None) -> HFiltration:
    """Group a normalized filtration by height and split each layer into deltas."""
    g = normalize(sys, f, rng)
    h = sys.height
    a = h.max_height
    layers = {}
    for i in range(1, a + 2):
        layers[i] = g.chain[sum(1 for w in g.labels if h[w] >= i)]
    pieces = {}
    for i in range(1, a + 1):
        sq = subquotient(layers[i + 1], layers[i])
        split, residue = _split_layer(sys, i, sq.quotient, rng)
        if not residue.is_zero():
            raise InternalContradiction(f"layer {i} does not split into height-{i} deltas")
        pieces[i] = [(w, sq.lift(s)) for w, s in split]
        expected = Counter(w for w in g.labels if h[w] == i)
        if Counter(w for w, _ in split) != expected:
            raise InternalContradiction(f"layer {i} multiplicities disagree with the labels")
    return HFiltration(f.module, a, layers, pieces)


def h_filtration_canonical(sys: HomologicalSystem, m: Representation, rng=None) -> Optional[HFiltration]:
    """Layers by traces: ``W_a`` is the trace of the top-height deltas, then recurse on ``M / W_a``.

    Returns ``None`` when some layer does not split into deltas of its height,
    or the process does not exhaust ``M`` (then ``M`` has no Delta-filtration).
    """
    a = sys.height.max_height
    current = m
    to_current = ModuleMap.identity(m)
    layers = {a + 1: Submodule.zero(m)}
    pieces = {}
    for i in range(a, 0, -1):
        t = trace(sys.deltas_at(i), current)
        t_mod, t_inc = t.as_module()
        split, residue = _split_layer(sys, i, t_mod, rng)
        if not residue.is_zero():
            log.debug("layer %d leaves a residue of dimension %s", i, residue.dim_vector)
            return None
        layers[i] = preimage(to_current, t)
        pieces[i] = [(w, preimage(to_current, push(t_inc, s))) for w, s in split]
        current, proj = quotient_module(current, t)
        to_current = proj @ to_current
    if not current.is_zero():
        log.debug("traces leave a quotient of dimension %s", current.dims)
        return None
    return HFiltration(m, a, layers, pieces)


def flatten(sys: HomologicalSystem, hf: HFiltration, rng=None) -> Filtration:
    """Delta-filtration refining ``hf``: highest layer first, one piece at a time."""
    chain = [Submodule.zero(hf.module)]
    labels = []
    for i in range(hf.max_height, 0, -1):
        acc = hf.layers[i + 1]
        for w, piece in hf.pieces[i]:
            acc = acc + piece
            chain.append(acc)
            labels.append(w)
    return attach_witnesses(sys, Filtration(hf.module, chain, labels), rng)


def check_uniqueness(sys: HomologicalSystem, m: Representation, f1: Filtration, f2: Filtration,
                     rng=None) -> list[tuple]:
    """Differences ``(height, w, n1, n2)`` between the multiplicities of two filtrations of ``m``.

    Compares both the raw label counts and the layer multiplicities of the
    h-filtrations derived from each; an empty list means they agree.
    """
    if f1.module != m or f2.module != m:
        raise ValueError("both filtrations must filter the given module")
    h = sys.height
    diffs = set()
    c1, c2 = multiplicities(f1, sys.omega.elements), multiplicities(f2, sys.omega.elements)
    for w in sys.omega.elements:
        if c1[w] != c2[w]:
            diffs.add((h[w], w, c1[w], c2[w]))
    l1 = h_filtration_from(sys, f1, rng).multiplicities
    l2 = h_filtration_from(sys, f2, rng).multiplicities
    for w in sys.omega.elements:
        if l1.get(w, 0) != l2.get(w, 0):
            diffs.add((h[w], w, l1.get(w, 0), l2.get(w, 0)))
    return sorted(diffs, key=lambda d: (d[0], str(d[1])))


def additivity_check(sys: HomologicalSystem, seq: ShortExactSequence, f_sub: Filtration,
                     f_quot: Filtration, rng=None) -> tuple[Filtration, bool]:
    """Splice filtrations of the ends of ``seq`` into one of the middle term.

    The chain is the image of ``f_sub`` followed by preimages of ``f_quot``.
    Returns the spliced filtration and whether it verifies with
    ``l_w(middle) = l_w(sub) + l_w(quot)`` for every ``w``.
    """
    chain = [push(seq.inclusion, c) for c in f_sub.chain]
    chain += [preimage(seq.projection, c) for c in f_quot.chain[1:]]
    spliced = attach_witnesses(sys, Filtration(seq.middle, chain, list(f_sub.labels) + list(f_quot.labels)), rng)
    omega = sys.omega.elements
    cm, cl, cn = (multiplicities(x, omega) for x in (spliced, f_sub, f_quot))
    ok = verify_filtration(sys, spliced, rng) is None and all(cm[w] == cl[w] + cn[w] for w in omega)
    return spliced, ok


def _check_biproduct(m: Representation, inj1: ModuleMap, inj2: ModuleMap) -> None:
    for inj in (inj1, inj2):
        if inj.target.dims != m.dims or not inj.is_homomorphism():
            raise ValueError("injections must be module maps into M")
        if not inj.kernel().is_zero():
            raise ValueError("injection is not injective")
    im1, im2 = inj1.image(), inj2.image()
    if not (im1 & im2).is_zero() or not (im1 + im2).is_full():
        raise ValueError("the two images are not complementary in M")


def decompose_summands(sys: HomologicalSystem, m: Representation, inj1: ModuleMap, inj2: ModuleMap,
                       rng=None) -> tuple[Filtration, Filtration]:
    """Delta-filtrations of both summands of ``M = M1 + M2`` (given by their injections).

    Each summand gets its own layered trace construction; at every height the
    trace in ``M`` is checked to be the direct sum of the traces in the
    summands, and the resulting filtrations are verified and their counts
    checked to add up to those of ``M``.
    """
    _check_biproduct(m, inj1, inj2)
    hm = h_filtration_canonical(sys, m, rng)
    if hm is None:
        raise NotFiltered("M has no Delta-filtration")
    parts = []
    for inj in (inj1, inj2):
        hj = h_filtration_canonical(sys, inj.source, rng)
        if hj is None:
            raise InternalContradiction("a direct summand of a filtered module failed to filter")
        parts.append(hj)
    for i in range(1, hm.max_height + 2):
        if hm.layers[i] != push(inj1, parts[0].layers[i]) + push(inj2, parts[1].layers[i]):
            raise InternalContradiction(f"layer W_{i} is not the sum of the summands' layers")
    f1, f2 = (flatten(sys, hj, rng) for hj in parts)
    for fj in (f1, f2):
        bad = verify_filtration(sys, fj, rng)
        if bad is not None:
            raise InternalContradiction(f"summand filtration fails at {bad}")
    total = hm.multiplicities
    c1, c2 = multiplicities(f1), multiplicities(f2)
    for w in sys.omega.elements:
        if total.get(w, 0) != c1.get(w, 0) + c2.get(w, 0):
            raise InternalContradiction(f"multiplicity of {w!r} is not additive")
    return f1, f2


def transport(f: Filtration, iso: ModuleMap) -> Filtration:
    """Image of ``f`` under an isomorphism ``f.module -> iso.target``."""
    return Filtration(iso.target, [push(iso, c) for c in f.chain], list(f.labels))
