import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import Z1, Z2, Z3, cfg, hirzebruch, product_of_projective, weighted
from mgreg import BettiTable, HypothesisViolated, InvalidSetup, Overflow, PointSet, Verdict, SearchExhausted
from mgreg.config import load_json
from mgreg.regularity import (
    criterion_violation,
    definition_violation,
    fujita_check,
    fujita_witness,
    is_regular_S,
    multiplication_surjective,
    padded_box,
    points_regularity,
    reg_window,
    resolution_bound,
    same_orbit,
    validate_points,
    window_violation,
)
from helpers import CONFIGS


def raster(setup, box, **kw):
    return {p.free for p, v in reg_window(setup, box, **kw).items() if v is Verdict.TRUE}


def orthant_union(shifts, box):
    pts = itertools.product(*[range(lo, hi + 1) for lo, hi in box])
    return {p for p in pts if any(all(a >= b for a, b in zip(p, s)) for s in shifts)}


BOX2 = [(-2, 4), (-2, 4)]


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_hirzebruch_rasters(t):
    s = hirzebruch(t)
    expected = orthant_union([(0, 0)] if t <= 1 else [(t - 1, 0), (0, 1)], BOX2)
    assert raster(s, BOX2) == expected
    assert raster(s, BOX2, method="definition") == expected


def test_product_of_lines_raster():
    s = cfg("p1p1p1")
    box = [(-1, 2)] * 3
    assert raster(s, box) == orthant_union([(0, 0, 0)], box)


def test_origin_regularity_of_products_and_blowup():
    for dims in [(1, 1), (1, 2), (1, 1, 1)]:
        s = product_of_projective(dims)
        assert is_regular_S(s, s.group.zero()) is Verdict.TRUE
    s = cfg("p2_blowup_3_points")
    assert is_regular_S(s, s.group.zero()) is Verdict.FALSE
    i, lam, p = criterion_violation(s, s.group.zero())
    assert i == 3 and sum(lam) == 2


def test_weighted_with_non_nef_C():
    s = weighted((2, 3), C=(1,))
    assert not s.C_in_K
    with pytest.raises(HypothesisViolated):
        is_regular_S(s, Z1.element((0,)), method="criterion")
    for m in range(-8, 3):
        v = is_regular_S(s, Z1.element((m,)))
        assert v is Verdict.of(m >= -3)
        # independent check: the support points in a large window
        hit = window_violation(s, Z1.element((m,)), 0, [(-40, 10)])
        assert (hit is None) == (m >= -3)


@pytest.mark.parametrize("weights", [(1, 1), (1, 2), (2, 3), (1, 1, 2), (1, 3, 4), (2, 2, 3)])
def test_positive_weights_with_unit_C(weights):
    s = weighted(weights, C=(1,))
    bound = len(weights) - sum(weights)
    for m in range(bound - 3, bound + 3):
        assert bool(is_regular_S(s, Z1.element((m,)))) == (m >= bound)


@pytest.mark.parametrize("n,C", [(2, (1,)), (3, (2, 3)), (3, (1, 3)), (4, (2,)), (4, (1, 2, 3))])
def test_standard_grading_with_general_C(n, C):
    s = weighted((1,) * n, C=C)
    bound = (n - 1) * (max(C) - 1)
    for m in range(bound - 3, bound + 3):
        assert bool(is_regular_S(s, Z1.element((m,)))) == (m >= bound)


def test_window_method_never_certifies():
    s = hirzebruch(2)
    box = [(-4, 4), (-4, 4)]
    for p in [(0, 0), (1, 1), (-1, 0)]:
        v = is_regular_S(s, Z2.element(p), method="window", box=box)
        assert v is not Verdict.TRUE
    assert is_regular_S(s, Z2.element((-1, 0)), method="window", box=box) is Verdict.FALSE
    with pytest.raises(ValueError):
        is_regular_S(s, Z2.element((0, 0)), method="window")
    with pytest.raises(ValueError):
        is_regular_S(s, Z2.element((0, 0)), method="guess")
    with pytest.raises(InvalidSetup):
        is_regular_S(s, Z1.element((0,)))


CRITERION_SETUPS = ["hirzebruch_f0", "hirzebruch_f1", "hirzebruch_f2", "hirzebruch_f3", "p2", "p1p2", "torsion_gamma1"]


@pytest.mark.parametrize("name", CRITERION_SETUPS)
def test_criterion_definition_window_agree(name):
    s = cfg(name)
    box = [(-2, 3)] * s.r
    big = padded_box(s, box, 2)
    for level in (0, 1, 2):
        for m in reg_window(s, box, level):
            c = criterion_violation(s, m, level) is None
            d = definition_violation(s, m, level) is None
            w = window_violation(s, m, level, big) is None
            assert c == d == w, (m, level)


RASTER_SETUPS = [hirzebruch(0), hirzebruch(1), hirzebruch(2), hirzebruch(3), product_of_projective((1, 2))]


@given(
    st.sampled_from(range(len(RASTER_SETUPS))),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
    st.integers(0, 3),
    st.integers(0, 1),
)
def test_monotonicity(k, m, level, j):
    s = RASTER_SETUPS[k]
    m = s.group.element(m[: s.r])
    c = s.C[j % len(s.C)]
    if is_regular_S(s, m, level):
        assert is_regular_S(s, m + c, level)
    # raising the level only removes conditions
    if level and is_regular_S(s, m, level - 1):
        assert is_regular_S(s, m, level)


# --- resolutions ---------------------------------------------------------------


def test_koszul_resolution_of_one_point():
    s = cfg("p1p1p1")
    betti = BettiTable.from_json(load_json(CONFIGS / "betti_one_point.json"), s.group)
    box = [(0, 2)] * 3
    got = {p.free for p in (s.group.element(q) for q in itertools.product(range(3), repeat=3)) if resolution_bound(s, betti, p)}
    shifts = [tuple(a + b for a, b in zip(ci, cj)) for ci, cj in itertools.combinations([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 2)]
    assert got == orthant_union(shifts, box)
    assert resolution_bound(s, betti, s.group.zero()) is Verdict.FALSE
    with pytest.raises(Overflow):
        resolution_bound(s, betti, s.group.element((2, 2, 2)), cap=1)
    assert BettiTable.from_json(betti.to_json(), s.group) == betti
    with pytest.raises(InvalidSetup):
        BettiTable(())


# --- points --------------------------------------------------------------------


def test_points_regularity():
    s = cfg("p1p1p1")
    one = PointSet.from_json(load_json(CONFIGS / "points_one.json"))
    two = PointSet.from_json(load_json(CONFIGS / "points_two.json"))
    for q in itertools.product(range(3), repeat=3):
        m = Z3.element(q)
        assert points_regularity(s, one, m)
        assert points_regularity(s, two, m) == (q != (0, 0, 0))
    assert PointSet.from_json(two.to_json()) == two


def test_same_orbit_and_validation():
    s = cfg("p1p1p1")
    P = PointSet.parse([[1] * 6]).points[0]
    assert same_orbit(s, P, PointSet.parse([[2, 2, 3, 3, "1/2", "1/2"]]).points[0])
    assert not same_orbit(s, P, PointSet.parse([[2, 1, 2, 1, 2, 1]]).points[0])
    with pytest.raises(InvalidSetup):
        validate_points(s, PointSet.parse([[1] * 6, [5] * 6]))
    with pytest.raises(InvalidSetup):
        validate_points(s, PointSet.parse([[0, 0, 1, 1, 1, 1]]))
    with pytest.raises(InvalidSetup):
        validate_points(s, PointSet.parse([[1] * 5]))
    # torsion grading: the torus is disconnected, so sign changes can matter
    t = cfg("torsion_gamma1")
    assert same_orbit(t, [1] * 5, [1] * 5)


# --- multiplication maps and a vanishing witness --------------------------------


def test_multiplication_surjective():
    s = hirzebruch(2)
    for p in s.generators_K():
        for q in itertools.product(range(3), repeat=2):
            assert multiplication_surjective(s, p, Z2.element(q))
    w = weighted((1, 2))
    assert not multiplication_surjective(w, Z1.element((1,)), Z1.element((1,)))
    assert multiplication_surjective(w, Z1.element((2,)), Z1.element((1,)))


def test_fujita_witnesses():
    for s in (weighted((1, 1, 1)), weighted((1, 1, 1, 1)), hirzebruch(2), weighted((2, 3))):
        res = fujita_witness(s)
        assert res.status == "Certified"
        assert fujita_check(s, res.m) is Verdict.TRUE
    assert fujita_witness(weighted((2, 3))).m == Z1.element((0,))
    assert fujita_check(weighted((2, 3)), Z1.element((-5,))) is Verdict.FALSE


def test_fujita_exhausted():
    s = weighted((2, 3))
    # height 0 already succeeds; a setup with no short witness needs max_height < 0
    with pytest.raises(SearchExhausted):
        fujita_witness(s, max_height=-1)
