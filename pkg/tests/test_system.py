import numpy as np
import pytest

from deltafilt.generators import a2_algebra, random_system
from deltafilt.modules import direct_sum, projective, simple
from deltafilt.preorder import Preorder
from deltafilt.system import HomologicalSystem, check_system, height_consequences


def a2_with(omega_pairs, d1, d2):
    alg = a2_algebra(2)
    return HomologicalSystem(alg, Preorder.from_pairs(("1", "2"), omega_pairs), {"1": d1, "2": d2})


def test_a2_system_ok(a2sys):
    res = check_system(a2sys)
    assert res.ok
    assert a2sys.hom_dims == {("1", "1"): 1, ("1", "2"): 0, ("2", "1"): 1, ("2", "2"): 1}
    assert all(v == 0 for v in a2sys.ext_dims.values())
    assert (a2sys.height["2"], a2sys.height["1"]) == (1, 2)
    assert height_consequences(a2sys) == []


def test_antichain_breaks_hs3(a2mods):
    p1, _, s2 = a2mods
    res = check_system(a2_with([], p1, s2))
    assert [(v.axiom, v.pair, v.dimension) for v in res.violations] == [("HS3", ("2", "1"), 1)]


def test_isomorphic_pair_breaks_hs2(a2mods):
    _, s1, _ = a2mods
    res = check_system(a2_with([], s1, simple(s1.algebra, "1")))
    assert any(v.axiom == "HS2" and v.pair == ("1", "2") for v in res.violations)


def test_decomposable_delta_breaks_hs2(a2mods):
    p1, s1, s2 = a2mods
    res = check_system(a2_with([("2", "1")], direct_sum(s1, s2).module, s2))
    assert any(v.axiom == "HS2" and v.pair == ("1",) for v in res.violations)


def test_hs4_needs_strict_order(a2mods):
    _, s1, s2 = a2mods
    # Ext^1(S1, S2) != 0 needs 1 < 2 strictly
    assert check_system(a2_with([("1", "2")], s1, s2)).ok
    res = check_system(a2_with([("1", "2"), ("2", "1")], s1, s2))
    assert [v.axiom for v in res.violations] == ["HS4"]
    res = check_system(a2_with([], s1, s2))
    assert [v.axiom for v in res.violations] == ["HS4"]


def test_non_transitive_omega_is_hs1():
    alg = a2_algebra(2)
    delta = {"x": simple(alg, "1"), "y": simple(alg, "2"), "z": projective(alg, "1")}
    sys_ = HomologicalSystem(alg, Preorder.from_pairs("xyz", [("x", "y"), ("y", "z")]), delta)
    res = check_system(sys_)
    assert [(v.axiom, v.pair) for v in res.violations] == [("HS1", ("x", "z"))]


def test_single_element_needs_only_self_ext():
    alg = a2_algebra(3)
    sys_ = HomologicalSystem(alg, Preorder.from_pairs(["w"], []), {"w": projective(alg, "1")})
    assert check_system(sys_).ok and height_consequences(sys_) == []


def test_unverified_blocks_ok(monkeypatch, a2sys):
    from deltafilt import system
    from deltafilt.modules import SearchExhausted

    def exhausted(*args, **kwargs):
        raise SearchExhausted("forced")

    monkeypatch.setattr(system, "indecomposable_test", exhausted)
    res = check_system(a2sys)
    assert not res.ok and res.unverified and not res.violations


@pytest.mark.parametrize("seed", range(25))
def test_enlarging_the_order(seed):
    """Adding pairs never creates HS3 violations; HS4 can only be broken by making a pair equivalent."""
    rng = np.random.default_rng(seed)
    sys_ = random_system(rng)
    elems = sys_.omega.elements
    base = {(v.axiom, v.pair) for v in check_system(sys_, rng).violations}
    for u in elems:
        for w in elems:
            leq = sys_.omega.leq.copy()
            leq[sys_.omega.index(u), sys_.omega.index(w)] = True
            for k in range(len(elems)):
                leq = leq | (leq[:, [k]] & leq[[k], :])
            bigger = HomologicalSystem(sys_.algebra, Preorder(elems, leq), sys_.delta)
            after = check_system(bigger, rng).violations
            assert not any(v.axiom == "HS3" for v in after)
            for v in after:
                assert (v.axiom, v.pair) in base or (
                    v.axiom == "HS4" and bigger.omega.le(*v.pair) and bigger.omega.le(*v.pair[::-1]))
