"""Small versions of the property suites, runnable from the command line."""
from __future__ import annotations

import itertools

import numpy as np

from . import filtration as filt
from .ext import ext_dim
from .generators import (random_direct_sum, random_filtration, random_spliced_sequence, random_system,
                         second_filtration)
from .linalg import PrimeField
from .modules import BoundQuiverAlgebra, Quiver, hom_dim
from .oracles import all_representations, brute_ext_dim, brute_hom_dim, dimension_vectors
from .system import check_system, height_consequences


def tiny_algebras() -> list[BoundQuiverAlgebra]:
    a2 = BoundQuiverAlgebra(Quiver(("1", "2"), [("a", "1", "2")]), PrimeField(2))
    a3 = BoundQuiverAlgebra(Quiver(("1", "2", "3"), [("a", "1", "2"), ("b", "2", "3")]), PrimeField(2),
                            [[(1, ("a", "b"))]])
    return [a2, a3]


def module_pairs(alg: BoundQuiverAlgebra, max_total: int):
    """All pairs of representations with ``dim X + dim Y <= max_total``."""
    by_dim = {n: [r for d in dimension_vectors(alg, n) for r in all_representations(alg, d)]
              for n in range(max_total + 1)}
    for nx in range(max_total + 1):
        for ny in range(max_total + 1 - nx):
            yield from itertools.product(by_dim[nx], by_dim[ny])


def oracle_suite(max_total: int = 3) -> bool:
    for alg in tiny_algebras():
        for x, y in module_pairs(alg, max_total):
            if hom_dim(x, y) != brute_hom_dim(x, y) or ext_dim(x, y) != brute_ext_dim(x, y):
                return False
    return True


def property_suite(seeds: int, seed: int = 0) -> dict:
    ok = {"height_consequences": True, "normalize": True, "h_filtration": True, "uniqueness": True,
          "additivity": True, "summands": True}
    for s in range(seed, seed + seeds):
        rng = np.random.default_rng(s)
        sys_ = random_system(rng)
        ok["height_consequences"] &= check_system(sys_, rng).ok and not height_consequences(sys_)
        f = random_filtration(sys_, rng)
        g = filt.normalize(sys_, f, rng)
        hs = [sys_.height[w] for w in g.labels]
        ok["normalize"] &= (filt.multiplicities(g) == filt.multiplicities(f)
                            and hs == sorted(hs, reverse=True) and filt.verify_filtration(sys_, g) is None)
        hf = filt.h_filtration_from(sys_, f, rng)
        hc = filt.h_filtration_canonical(sys_, f.module, rng)
        ok["h_filtration"] &= hc is not None and hf.layers == hc.layers
        f2 = second_filtration(sys_, f, rng)
        ok["uniqueness"] &= not filt.check_uniqueness(sys_, f.module, f, f2, rng)
        seq, f_sub, f_quot = random_spliced_sequence(sys_, rng)
        ok["additivity"] &= filt.additivity_check(sys_, seq, f_sub, f_quot, rng)[1]
        ds, _, _ = random_direct_sum(sys_, rng)
        f1, f2_ = filt.decompose_summands(sys_, ds.module, *ds.injections, rng=rng)
        ok["summands"] &= (filt.verify_filtration(sys_, f1) is None and filt.verify_filtration(sys_, f2_) is None)
    return {k: bool(v) for k, v in ok.items()}


def run_selftest(seeds: int = 10, seed: int = 0) -> dict:
    results = {"oracles": oracle_suite(max_total=3)}
    results.update(property_suite(seeds, seed))
    return results
