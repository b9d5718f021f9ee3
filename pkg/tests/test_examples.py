"""Worked examples with known answers, one small check each."""

import itertools

from helpers import Z1, Z2, Z3, cfg, hirzebruch, product_of_projective, weighted
from mgreg import BettiTable, PointSet, SimplicialComplex, Verdict
from mgreg.cohomology import nonzero_witnesses
from mgreg.diophantine import DiophantineSystem, enumerate_fiber, smith_normal_form, solve_exists
from mgreg.exact import rank
from mgreg.fan import dual_configuration, lemma_BandC_check
from mgreg.local_cohomology import cech_dimension, hilbert_dim, support_table
from mgreg.region import Region, shift_index
from mgreg.regularity import (
    criterion_violation,
    fujita_check,
    is_regular_S,
    multiplication_surjective,
    points_regularity,
    reg_window,
    resolution_bound,
)

e1, e2 = Z2.element((1, 0)), Z2.element((0, 1))


def pts(region, box):
    return {p.free for p in region.window(box, region.components[0].shift.group if region else Z2)}


# --- regions -------------------------------------------------------------------


def test_shift_index():
    D = Region.monoid(Z2.zero(), [e1, e2])
    box = [(-3, 3), (-3, 3)]
    assert shift_index(D, 0, [e1, e2]) is D
    expected = (Region.monoid(-e1, [e1, e2]) | Region.monoid(-e2, [e1, e2]))
    assert pts(shift_index(D, -1, [e1, e2]), box) == pts(expected, box)
    L = Region.monoid(Z1.zero(), [Z1.element((1,))])
    got = shift_index(L, -2, [Z1.element((1,))])
    assert {p.free[0] for p in got.window([(-6, 3)])} == set(range(-2, 4))


def test_region_membership():
    R = Region.monoid(e1, [e1, e2])
    assert R.contains(Z2.element((3, 2)))
    F2reg = Region.monoid(e1, [e1, e2]) | Region.monoid(e2, [e1, e2])
    assert not F2reg.contains(Z2.zero())
    line = Region.monoid(Z1.element((-5,)), [Z1.element((-2,)), Z1.element((-3,))])
    assert not line.contains(Z1.element((-6,)))
    assert line.contains(Z1.element((-7,)))


def test_region_windows():
    N2 = Region.monoid(Z2.zero(), [e1, e2])
    assert len(N2.window([(0, 2), (0, 2)])) == 9
    assert Region.empty().window([(0, 2), (0, 2)], Z2) == set()
    s = hirzebruch(2)
    box = [(-1, 2), (-1, 2)]
    got = {p.free for p, v in reg_window(s, box).items() if v}
    F2reg = Region.monoid(e1, [e1, e2]) | Region.monoid(e2, [e1, e2])
    assert got == pts(F2reg, box)


# --- linear algebra and Diophantine examples -----------------------------------


def test_identity_smith_form():
    I = [[int(i == j) for j in range(3)] for i in range(3)]
    U, D, V = smith_normal_form(I)
    assert D == I


def test_numerical_semigroup_witness():
    two, three = Z1.element((2,)), Z1.element((3,))
    w = solve_exists(DiophantineSystem((two, three), Z1.element((7,))))
    assert w is not None and 2 * w[0] + 3 * w[1] == 7


def test_fibers():
    assert enumerate_fiber([Z1.element((1,))] * 2, Z1.element((2,))) == [(0, 2), (1, 1), (2, 0)]
    assert enumerate_fiber(hirzebruch(2).degrees, e1) == [(0, 0, 1, 0), (1, 0, 0, 0)]
    assert enumerate_fiber(weighted((2, 3)).degrees, Z1.element((1,))) == []


def _same_row_space(A, B):
    return rank(A) == rank(B) == rank(A + B)


def test_dual_configurations():
    a = (2, 3, 5)
    rows = dual_configuration([Z1.element((x,)) for x in a])
    assert _same_row_space(rows, [[a[2], 0, -a[0]], [0, a[2], -a[1]]])
    for t in range(4):
        rows = dual_configuration(hirzebruch(t).degrees)
        assert _same_row_space(rows, [[1, 0, -1, 0], [0, 1, t, -1]])


# --- semigroups ----------------------------------------------------------------


def test_membership_examples():
    p23 = weighted((2, 3))
    assert p23.in_K(Z1.element((6,))) and not p23.in_K(Z1.element((5,)))
    assert p23.in_Ksat(Z1.element((1,)))
    f2 = hirzebruch(2)
    assert f2.in_K(e1) and not f2.in_K(-e1)
    assert f2.in_interior_Ksat(Z2.element((1, 1))) and not f2.in_interior_Ksat(e1)
    g1 = cfg("torsion_gamma1")
    assert not g1.in_K(g1.group.element((1, 0), (0, 0)))
    assert g1.in_K(g1.group.element((2, 0), (0, 0)))
    assert g1.in_Ksat(g1.group.element((1, 1), (0, 0)))
    p111 = product_of_projective((1, 1, 1))
    assert p111.generators_Ksat() == sorted(Z3.basis())
    p11 = product_of_projective((1, 1))
    assert p11.generators_Ksat() == sorted([e1, e2])


def test_B_lemma_examples():
    f2 = hirzebruch(2)
    rep = lemma_BandC_check(f2, Z2.element((1, 1)))
    assert rep.part1 is True and rep.part2 is True
    assert lemma_BandC_check(f2, e1).part2 is True
    p2 = weighted((1, 1, 1))
    rep = lemma_BandC_check(p2, Z1.element((1,)))
    assert rep.part1 is True and rep.part2 is True
    assert [g for g in p2.irrelevant_ideal] == [(0,), (1,), (2,)]


# --- cohomology and local cohomology ---------------------------------------------


def test_subcomplex_witnesses():
    f2 = hirzebruch(2)
    assert nonzero_witnesses(f2.complex) == [((0, 2), 0, 1), ((1, 3), 0, 1), ((0, 1, 2, 3), 1, 1)]
    for n in (3, 4, 5):
        assert nonzero_witnesses(SimplicialComplex.simplex_boundary(n)) == [(tuple(range(n)), n - 2, 1)]
    hexagon = cfg("p2_blowup_3_points").complex
    assert (tuple(range(6)), 1, 1) in nonzero_witnesses(hexagon)


def test_projective_spaces_have_one_row():
    for n in (2, 3, 4):
        assert support_table(weighted((1,) * n)).nonzero_rows == [n]


def test_spot_values():
    p1 = weighted((1, 1))
    assert hilbert_dim(p1, None, 2, Z1.element((-2,))) == 1
    assert cech_dimension(p1, (-1, -1), 2) == 1
    f2 = hirzebruch(2)
    assert hilbert_dim(f2, None, 2, Z2.element((-2, 0))) >= 1
    assert cech_dimension(f2, (-1, 0, -1, 0), 2) == 1
    assert cech_dimension(f2, (-1, 0, -1, 0), 3) == 0
    for u in itertools.product(range(3), repeat=4):
        if f2.in_interior_Ksat(f2.degree(u)):
            assert all(cech_dimension(f2, u, i) == 0 for i in range(4))


# --- regularity ------------------------------------------------------------------


def test_regularity_examples():
    f2 = hirzebruch(2)
    assert is_regular_S(f2, e1) is Verdict.TRUE
    assert is_regular_S(f2, Z2.zero()) is Verdict.FALSE
    assert is_regular_S(f2, e2) is Verdict.TRUE
    p111 = product_of_projective((1, 1, 1))
    assert all(reg_window(p111, [(0, 2)] * 3).values())
    assert is_regular_S(p111, Z3.element((-1, 0, 0))) is Verdict.FALSE
    p11 = product_of_projective((1, 1))
    assert all(reg_window(p11, [(0, 2)] * 2).values())


def test_blowup_witness():
    s = cfg("p2_blowup_3_points")
    i, lam, p = criterion_violation(s, s.group.zero())
    total = s.group.zero()
    for a in s.degrees:
        total = total + a
    assert i == 3 and p == -total
    c = s.C
    assert p == -(c[2] + c[4])


def test_trivial_resolution_gives_reg():
    s = hirzebruch(2)
    betti = BettiTable(((Z2.zero(),),))
    for p in reg_window(s, [(-1, 2), (-1, 2)]):
        assert resolution_bound(s, betti, p) is is_regular_S(s, p)


def test_resolution_bound_is_inner_for_points():
    s = product_of_projective((1, 1, 1))
    from helpers import CONFIGS
    from mgreg.config import load_json

    betti = BettiTable.from_json(load_json(CONFIGS / "betti_one_point.json"), s.group)
    point = PointSet.from_json(load_json(CONFIGS / "points_one.json"))
    for q in itertools.product(range(3), repeat=3):
        p = Z3.element(q)
        if resolution_bound(s, betti, p):
            assert points_regularity(s, point, p)


def test_point_examples():
    p1 = weighted((1, 1))
    one = PointSet.parse([[1, 1]])
    two = PointSet.parse([[1, 0], [0, 1]])
    assert points_regularity(p1, one, Z1.element((0,)))
    assert not points_regularity(p1, two, Z1.element((0,)))
    assert points_regularity(p1, two, Z1.element((1,)))


def test_multiplication_examples():
    f2 = hirzebruch(2)
    assert multiplication_surjective(f2, Z2.element((1, 1)), e1)
    assert multiplication_surjective(f2, e2, e1)
    p1 = weighted((1, 1))
    assert multiplication_surjective(p1, Z1.element((1,)), Z1.element((1,)))


def test_fujita_examples():
    for n in (2, 3, 4):
        assert fujita_check(weighted((1,) * n), Z1.element((0,))) is Verdict.TRUE
    assert fujita_check(hirzebruch(2), Z2.element((1, 1))) is Verdict.TRUE
    assert fujita_check(weighted((2, 3)), Z1.element((0,))) is Verdict.TRUE
