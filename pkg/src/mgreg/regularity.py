"""Multigraded regularity of S and the bounds built on it.

A degree m is regular from level k when H^i_B(S) vanishes on m + NC[1-i]
for every i >= k.  When C lies in K the infinite condition reduces to
finitely many support tests at the points m - lambda.C with |lambda| = i-1.
Without that hypothesis the condition is decided exactly by one joint
Diophantine system per (i, lambda, support region).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import exact
from .diophantine import (
    DEFAULT_NODE_CAP,
    DiophantineSystem,
    enumerate_fiber,
    integer_kernel,
    solve_exists,
    solvable,
)
from .errors import HypothesisViolated, InvalidSetup, Overflow, SearchExhausted
from .fan import GradingSetup
from .grading import GroupElement, combination
from .local_cohomology import SupportTable, support_table
from .region import Box, box_points, weak_compositions

PHI_CAP = 10**6


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    INCOMPLETE = "incomplete"

    def __bool__(self) -> bool:
        return self is Verdict.TRUE

    @classmethod
    def of(cls, flag: bool) -> Verdict:
        return cls.TRUE if flag else cls.FALSE


def _lambda_offset(setup: GradingSetup, lam: Sequence[int]) -> GroupElement:
    return combination(lam, setup.C, setup.group)


def _rows_from(table: SupportTable, level: int) -> list[int]:
    return [i for i in table.nonzero_rows if i >= level]


def criterion_violation(setup: GradingSetup, m: GroupElement, level: int = 0):
    """First (i, lambda, p) with p = m - lambda.C in the row-i support, or None."""
    table = support_table(setup)
    for i in _rows_from(table, level):
        for lam in weak_compositions(i - 1, len(setup.C)):
            p = m - _lambda_offset(setup, lam)
            if table.contains(i, p):
                return i, lam, p
    return None


def definition_violation(setup: GradingSetup, m: GroupElement, level: int = 0, node_cap: int = DEFAULT_NODE_CAP):
    """First (i, lambda, sigma, witness) with (m - lambda.C + NC) meeting a row-i region, or None.

    Decides the vanishing condition exactly, without assuming C in K.
    """
    table = support_table(setup)
    C = tuple(setup.C)
    for i in _rows_from(table, level):
        for lam in weak_compositions(i - 1, len(C)):
            start = m - _lambda_offset(setup, lam)
            for e in table.row(i):
                cols = C + tuple(-g for g in e.region.generators)
                w = solve_exists(DiophantineSystem(cols, e.region.shift - start), node_cap)
                if w is not None:
                    p = start + combination(w[: len(C)], C, setup.group)
                    return i, lam, e.sigma, p
    return None


def window_violation(setup: GradingSetup, m: GroupElement, level: int, box: Box):
    """First support point inside ``box`` lying in m + NC[1-i] for a row i >= level, or None."""
    table = support_table(setup)
    for i in _rows_from(table, level):
        for p in _support_points(setup, i, tuple(box)):
            if in_shifted_monoid(setup, p - m, i):
                return i, p
    return None


@lru_cache(maxsize=256)
def _support_points(setup: GradingSetup, i: int, box: tuple) -> tuple[GroupElement, ...]:
    table = support_table(setup)
    return tuple(p for p in box_points(setup.group, box) if table.contains(i, p))


@lru_cache(maxsize=1 << 18)
def in_shifted_monoid(setup: GradingSetup, diff: GroupElement, i: int) -> bool:
    """Whether diff lies in NC[1-i], the union of -lambda.C + NC over |lambda| = i-1."""
    for lam in weak_compositions(max(i - 1, 0), len(setup.C)):
        if solvable(setup.C, diff + _lambda_offset(setup, lam)):
            return True
    return False


@lru_cache(maxsize=1 << 16)
def _is_regular_cached(setup: GradingSetup, m: GroupElement, level: int, method: str, box) -> Verdict:
    if method == "criterion":
        return Verdict.of(criterion_violation(setup, m, level) is None)
    if method == "definition":
        try:
            return Verdict.of(definition_violation(setup, m, level) is None)
        except Overflow:
            return Verdict.INCOMPLETE
    if method == "window":
        if box is None:
            raise ValueError("the window method needs a box")
        return Verdict.FALSE if window_violation(setup, m, level, box) is not None else Verdict.INCOMPLETE
    raise ValueError(f"unknown method {method!r}")


def is_regular_S(
    setup: GradingSetup,
    m: GroupElement,
    level: int = 0,
    method: str = "auto",
    box: Optional[Box] = None,
) -> Verdict:
    """Decide whether m lies in reg^level(S).

    ``method``: "criterion" (finite test, needs C in K), "definition" (exact
    joint Diophantine test of the vanishing condition), "window" (support
    points inside ``box`` only; never certifies TRUE), or "auto" (criterion
    when C lies in K, definition otherwise).
    """
    if m.group != setup.group:
        raise InvalidSetup(f"{m} is not in {setup.group}")
    if not setup.C:
        raise InvalidSetup("C is empty")
    if method == "auto":
        method = "criterion" if setup.C_in_K else "definition"
    elif method == "criterion" and not setup.C_in_K:
        raise HypothesisViolated("the finite criterion needs every element of C in K")
    return _is_regular_cached(setup, m, level, method, tuple(box) if box is not None else None)


def reg_window(
    setup: GradingSetup, box: Box, level: int = 0, method: str = "auto"
) -> dict[GroupElement, Verdict]:
    """Verdicts at every point of ``box`` (all torsion classes), in box order."""
    return {p: is_regular_S(setup, p, level, method, box) for p in box_points(setup.group, box)}


def padded_box(setup: GradingSetup, box: Box, extra: int = 0) -> list[tuple[int, int]]:
    """``box`` grown by (d+1) max|c| in every direction, enough to contain each m - lambda.C."""
    reach = (setup.d + 1) * max((abs(x) for c in setup.C for x in c.free), default=0) + extra
    return [(lo - reach, hi + reach) for lo, hi in box]


# --------------------------------------------------------------------------
# resolutions


@dataclass(frozen=True)
class BettiTable:
    """Degrees q_{i,j} of the free modules E_i = sum_j S(-q_{i,j}) of a resolution."""

    rows: tuple[tuple[GroupElement, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise InvalidSetup("a Betti table needs a nonempty row 0")

    @property
    def length(self) -> int:
        return len(self.rows) - 1

    @classmethod
    def from_json(cls, obj, group) -> BettiTable:
        return cls(tuple(tuple(group.from_json(q) for q in row) for row in obj["rows"]))

    def to_json(self) -> dict:
        return {"rows": [[q.to_json() for q in row] for row in self.rows]}


def resolution_bound(
    setup: GradingSetup, betti: BettiTable, p: GroupElement, cap: int = PHI_CAP
) -> Verdict:
    """Whether some phi: [d+1] -> [l] puts p - q_{i,j} + c_phi(1) + ... + c_phi(i) in reg^i(S) for all i, j.

    Only the multiset of the first i values of phi matters at step i, so the
    search runs over prefix sums with memoization.  Verdict is INCOMPLETE if
    some membership test could not be certified.
    """
    top = min(setup.d + 1, betti.length)
    C = setup.C
    nodes = 0
    incomplete = False

    def level_ok(i: int, prefix: GroupElement) -> Verdict:
        nonlocal incomplete
        worst = Verdict.TRUE
        for q in betti.rows[i]:
            v = is_regular_S(setup, p - q + prefix, i)
            if v is Verdict.FALSE:
                return v
            if v is Verdict.INCOMPLETE:
                worst = v
        return worst

    seen: dict[tuple[int, GroupElement], bool] = {}

    def search(i: int, prefix: GroupElement) -> bool:
        nonlocal nodes, incomplete
        key = (i, prefix)
        if key in seen:
            return seen[key]
        nodes += 1
        if nodes > cap:
            raise Overflow(f"phi search exceeded {cap} nodes")
        v = level_ok(i, prefix)
        if v is Verdict.FALSE:
            ok = False
        else:
            if v is Verdict.INCOMPLETE:
                incomplete = True
            ok = i == top or any(search(i + 1, prefix + c) for c in C)
        seen[key] = ok
        return ok

    found = search(0, setup.group.zero())
    if found:
        return Verdict.INCOMPLETE if incomplete else Verdict.TRUE
    return Verdict.INCOMPLETE if incomplete else Verdict.FALSE


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class PointSet:
    """Reduced points of X given by Cox coordinates (exact rationals)."""

    points: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def parse(cls, rows: Sequence[Sequence]) -> PointSet:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_json(cls, obj) -> PointSet:
        return cls.parse(obj["points"])

    def to_json(self) -> dict:
        return {"points": [[str(x) for x in pt] for pt in self.points]}


def _torus_relations(setup: GradingSetup, support: Sequence[int]) -> list[list[int]]:
    """Generators of {u in Z^support : sum u_i a_i = 0 in G}."""
    group = setup.group
    r, s = group.rank, len(group.torsion)
    k = len(support)
    rows = [[0] * (k + s) for _ in range(r + s)]
    for c, i in enumerate(support):
        vec = setup.degrees[i].vector
        for row in range(r + s):
            rows[row][c] = vec[row]
    for t, m in enumerate(group.torsion):
        rows[r + t][k + t] = m
    return [v[:k] for v in integer_kernel(rows, k + s)]


def _power(x: Fraction, e: int) -> Fraction:
    return x**e


def same_orbit(setup: GradingSetup, P: Sequence[Fraction], Q: Sequence[Fraction]) -> bool:
    """Whether Q = t.P for some t in the torus Hom(G, k*) over an algebraic closure."""
    zp = [x == 0 for x in P]
    if zp != [x == 0 for x in Q]:
        return False
    support = [i for i, z in enumerate(zp) if not z]
    ratios = [Q[i] / P[i] for i in support]
    for u in _torus_relations(setup, support):
        val = Fraction(1)
        for rho, e in zip(ratios, u):
            val *= _power(rho, e)
        if val != 1:
            return False
    return True


def validate_points(setup: GradingSetup, pts: PointSet) -> None:
    if not pts.points:
        raise InvalidSetup("a point set needs at least one point")
    for P in pts.points:
        if len(P) != setup.n:
            raise InvalidSetup(f"point {[str(x) for x in P]} has {len(P)} coordinates, expected {setup.n}")
        if not any(all(P[i] != 0 for i in g) for g in setup.irrelevant_ideal):
            raise InvalidSetup(f"point {[str(x) for x in P]} lies in the vanishing locus of B")
    for a, b in itertools.combinations(range(len(pts.points)), 2):
        if same_orbit(setup, pts.points[a], pts.points[b]):
            raise InvalidSetup(f"points {a + 1} and {b + 1} are the same point of X")


def _monomial_value(P: Sequence[Fraction], u: Sequence[int]) -> Fraction:
    val = Fraction(1)
    for x, e in zip(P, u):
        if e:
            val *= x**e
    return val


def evaluation_rank(setup: GradingSetup, pts: PointSet, m: GroupElement) -> int:
    fiber = enumerate_fiber(setup.degrees, m)
    if not fiber:
        return 0
    rows = []
    for P in pts.points:
        vals = [_monomial_value(P, u) for u in fiber]
        den = 1
        for v in vals:
            den = den * v.denominator // _gcd(den, v.denominator)
        rows.append([int(v * den) for v in vals])
    return exact.rank(rows)


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


def points_regularity(setup: GradingSetup, pts: PointSet, m: GroupElement, validate: bool = True) -> bool:
    """Whether the degree-m forms separate the points: the evaluation matrix has rank t."""
    if validate:
        validate_points(setup, pts)
    return evaluation_rank(setup, pts, m) == len(pts.points)


# --------------------------------------------------------------------------
# multiplication maps


def multiplication_surjective(setup: GradingSetup, p: GroupElement, q: GroupElement) -> bool:
    """Whether S_p x S_q -> S_{p+q} is onto: every monomial of degree p+q has a factor of degree p."""
    big = enumerate_fiber(setup.degrees, p + q)
    small = enumerate_fiber(setup.degrees, p)
    for u in big:
        if not any(all(a <= b for a, b in zip(v, u)) for v in small):
            return False
    return True


# --------------------------------------------------------------------------
# a vanishing witness for S


@dataclass(frozen=True)
class FujitaResult:
    m: GroupElement
    status: str  # "Certified" or "WindowOnly"


def fujita_check(setup: GradingSetup, m: GroupElement, table: Optional[SupportTable] = None) -> Verdict:
    """Certify that m + K^sat misses every support region, by one Diophantine system per region."""
    table = table or support_table(setup)
    gens = tuple(setup.generators_Ksat())
    incomplete = False
    for i in table.nonzero_rows:
        for e in table.row(i):
            cols = gens + tuple(-g for g in e.region.generators)
            try:
                if solve_exists(DiophantineSystem(cols, e.region.shift - m)) is not None:
                    return Verdict.FALSE
            except Overflow:
                incomplete = True
    return Verdict.INCOMPLETE if incomplete else Verdict.TRUE


def fujita_window_check(setup: GradingSetup, m: GroupElement, box: Box, table: Optional[SupportTable] = None) -> bool:
    """No point of m + K^sat inside ``box`` carries local cohomology."""
    table = table or support_table(setup)
    for p in box_points(setup.group, box):
        if setup.in_Ksat(p - m) and any(table.contains(i, p) for i in table.nonzero_rows):
            return False
    return True


def fujita_witness(
    setup: GradingSetup, table: Optional[SupportTable] = None, max_height: int = 6, box: Optional[Box] = None
) -> FujitaResult:
    """Smallest-height m in K (N-combinations of its generators) with m + K^sat free of local cohomology."""
    table = table or support_table(setup)
    gens = setup.generators_K()
    seen = set()
    for h in range(max_height + 1):
        for lam in weak_compositions(h, len(gens)):
            m = combination(lam, gens, setup.group)
            if m in seen:
                continue
            seen.add(m)
            v = fujita_check(setup, m, table)
            if v is Verdict.TRUE:
                return FujitaResult(m, "Certified")
            if v is Verdict.INCOMPLETE:
                window = box or [(x - 4, x + 4) for x in m.free]
                if fujita_window_check(setup, m, window, table):
                    return FujitaResult(m, "WindowOnly")
    raise SearchExhausted(f"no witness of height <= {max_height}")
