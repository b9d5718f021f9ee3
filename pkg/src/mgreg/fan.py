"""Combinatorial frame of a graded polynomial ring: triangulation, irrelevant ideal, nef semigroups.

Variable indices are 0-based everywhere inside the library; the config
reader and the CLI translate to and from the 1-based names x1, ..., xn.
"""

from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import exact
from .diophantine import (
    DEFAULT_NODE_CAP,
    cokernel,
    enumerate_fiber,
    hilbert_basis,
    integer_kernel,
    lattice_contains,
    minimal_elements,
    smith_normal_form,
    solvable,
)
from .errors import DegenerateChamberPoint, InvalidSetup, NotPointed
from .grading import AbelianGroup, GroupElement, combination

log = logging.getLogger(__name__)

Face = tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[Face, ...]

    def __post_init__(self):
        facets = tuple(sorted({tuple(sorted(f)) for f in self.facets}, key=lambda f: (len(f), f)))
        for f in facets:
            if any(not 0 <= v < self.n for v in f):
                raise InvalidSetup(f"facet {f} has a vertex outside 0..{self.n - 1}")
        for f, g in itertools.permutations(facets, 2):
            if set(f) < set(g):
                raise InvalidSetup(f"facet {f} is contained in facet {g}")
        object.__setattr__(self, "facets", facets)

    @cached_property
    def faces(self) -> frozenset[Face]:
        """All nonempty faces."""
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(itertools.combinations(f, k))
        return frozenset(out)

    def __contains__(self, face: Iterable[int]) -> bool:
        face = tuple(sorted(face))
        return not face or face in self.faces

    def induced(self, sigma: Iterable[int]) -> list[Face]:
        """Nonempty faces of the induced subcomplex on the vertex set sigma."""
        s = set(sigma)
        return sorted((f for f in self.faces if s.issuperset(f)), key=lambda f: (len(f), f))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    @classmethod
    def simplex_boundary(cls, n: int) -> SimplicialComplex:
        return cls(n, tuple(itertools.combinations(range(n), n - 1)))

    def to_json(self) -> list[list[int]]:
        return [[v + 1 for v in f] for f in self.facets]


# --------------------------------------------------------------------------
# configurations


def dual_configuration(A: Sequence[GroupElement]) -> list[list[int]]:
    """Integer d x n matrix whose rows span the rational kernel of the free parts of A."""
    if not A:
        raise InvalidSetup("no degrees given")
    r = len(A[0].free)
    n = len(A)
    rows = [[a.free[i] for a in A] for i in range(r)]
    rk = exact.rank(rows) if r else 0
    if n - rk <= 0:
        raise InvalidSetup(f"dual configuration is empty: n = {n}, rank = {rk}")
    return exact.kernel_basis(rows, n) if r else [[int(i == j) for j in range(n)] for i in range(n)]


def degrees_from_rays(rays: Sequence[Sequence[int]]) -> tuple[AbelianGroup, list[GroupElement]]:
    """Class group G = Z^n / im(B^T) and the images a_i of the unit vectors."""
    d = len(rays)
    n = len(rays[0])
    BT = [[rays[k][i] for k in range(d)] for i in range(n)]
    group, images = cokernel(BT)
    r = group.rank
    return group, [group.element(v[:r], v[r:]) for v in images]


def _solve_square(M: Sequence[Sequence[int]], w: Sequence) -> Optional[list[Fraction]]:
    inv = exact.inverse(M)
    if inv is None:
        return None
    return [sum(Fraction(a) * b for a, b in zip(row, w)) for row in inv]


def triangulation_from_chamber(A: Sequence[GroupElement], w: Sequence) -> SimplicialComplex:
    """Facets sigma (|sigma| = d) whose complement's degrees contain w in the interior of their cone."""
    n = len(A)
    r = len(A[0].free)
    w = [Fraction(x) for x in w]
    if len(w) != r:
        raise InvalidSetup(f"chamber point has {len(w)} coordinates, expected {r}")
    facets = []
    for comp in itertools.combinations(range(n), r):
        M = [[A[i].free[k] for i in comp] for k in range(r)]
        lam = _solve_square(M, w)
        if lam is None:
            continue
        if all(x > 0 for x in lam):
            facets.append(tuple(i for i in range(n) if i not in comp))
        elif all(x >= 0 for x in lam):
            raise DegenerateChamberPoint(
                f"chamber point {[str(x) for x in w]} lies on a wall "
                f"(boundary of pos(a_i : i in {[i + 1 for i in comp]}))"
            )
    if not facets:
        raise DegenerateChamberPoint("chamber point is outside pos(A)")
    return SimplicialComplex(n, tuple(facets))


def _facet_normals(A: Sequence[GroupElement], facets: Sequence[Face], n: int) -> list[tuple[int, ...]]:
    r = len(A[0].free)
    normals = set()
    for f in facets:
        comp = [i for i in range(n) if i not in f]
        M = [[A[i].free[k] for i in comp] for k in range(r)]
        inv = exact.inverse(M)
        if inv is None:
            raise InvalidSetup(f"degrees of the complement of facet {[i + 1 for i in f]} are dependent")
        for row in inv:
            normals.add(tuple(exact.primitive(row)))
    return sorted(normals)


def _prune_redundant(normals: list[tuple[int, ...]], r: int) -> list[tuple[int, ...]]:
    """Drop normals lying in the cone of the remaining ones (they define no facet)."""
    keep = list(normals)
    for h in list(keep):
        others = [g for g in keep if g != h]
        if exact.cone_contains(h, others):
            keep = others
    return keep


def _interior_point(normals: Sequence[Sequence[int]], r: int) -> Optional[list[Fraction]]:
    rows = [(tuple(h) + (-1,), 0) for h in normals] + [((0,) * r + (-1,), -1)]
    status, value, x = exact.lp_max((0,) * r + (1,), rows, r + 1)
    if status != "optimal" or value <= 0:
        return None
    return [Fraction(v) for v in exact.primitive(x[:r])]


# --------------------------------------------------------------------------
# the setup


@dataclass(eq=False)
class GradingSetup:
    """The pair (S, B): degrees of the variables, a triangulation, and the set C.

    Construct with :func:`build_setup`.
    """

    group: AbelianGroup
    degrees: tuple[GroupElement, ...]
    complex: SimplicialComplex
    C: tuple[GroupElement, ...]
    rays: tuple[tuple[int, ...], ...]
    chamber: tuple[tuple[int, ...], ...]
    interior_point: tuple[Fraction, ...]
    chamber_point: Optional[tuple[Fraction, ...]] = None
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def r(self) -> int:
        return self.group.rank

    @property
    def d(self) -> int:
        return self.n - self.r

    @cached_property
    def zero_variables(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.degrees) if not any(a.free))

    @cached_property
    def positive_functional(self) -> Optional[list[int]]:
        vecs = [a.free for i, a in enumerate(self.degrees) if i not in self.zero_variables]
        return exact.positive_functional(vecs, self.r)

    @property
    def pointed(self) -> bool:
        """pos of the free degrees is pointed (zero degrees ignored)."""
        return self.positive_functional is not None

    @property
    def acyclic(self) -> bool:
        return self.pointed and not self.zero_variables

    @property
    def toric(self) -> bool:
        return all((i,) in self.complex for i in range(self.n))

    @cached_property
    def irrelevant_ideal(self) -> tuple[Face, ...]:
        """Supports of the generators of B (complements of facets), sorted."""
        gens = {tuple(i for i in range(self.n) if i not in f) for f in self.complex.facets}
        return tuple(sorted(gens))

    def degree(self, u: Sequence[int]) -> GroupElement:
        return combination(u, self.degrees, self.group)

    # -- semigroups ---------------------------------------------------------

    def in_K(self, p: GroupElement) -> bool:
        for f in self.complex.facets:
            cols = [self.degrees[i] for i in range(self.n) if i not in f]
            if not solvable(cols, p):
                return False
        return True

    def in_ZA(self, p: GroupElement) -> bool:
        return lattice_contains(self.degrees, p) is not None

    def _chamber_values(self, p: GroupElement) -> list[int]:
        return [exact.dot(h, p.free) for h in self.chamber]

    def in_Ksat(self, p: GroupElement) -> bool:
        return all(v >= 0 for v in self._chamber_values(p)) and self.in_ZA(p)

    def in_interior_Ksat(self, p: GroupElement) -> bool:
        return all(v > 0 for v in self._chamber_values(p)) and self.in_ZA(p)

    @cached_property
    def C_in_K(self) -> bool:
        return all(self.in_K(c) for c in self.C)

    def generators_Ksat(self, node_cap: int = DEFAULT_NODE_CAP) -> list[GroupElement]:
        return generators_Ksat(self, node_cap)

    def generators_K(self, node_cap: int = DEFAULT_NODE_CAP) -> list[GroupElement]:
        return generators_K(self, node_cap)


def build_setup(
    group: AbelianGroup,
    degrees: Sequence[GroupElement],
    *,
    chamber_point: Optional[Sequence] = None,
    triangulation: Optional[Sequence[Sequence[int]]] = None,
    C: Optional[Sequence[GroupElement]] = None,
    rays: Optional[Sequence[Sequence[int]]] = None,
    require_pointed: bool = True,
) -> GradingSetup:
    """Validate grading data and build a :class:`GradingSetup`.

    ``triangulation`` facets are 0-based vertex lists.  If both a chamber
    point and a triangulation are given they must agree.
    """
    degrees = tuple(degrees)
    n = len(degrees)
    if n == 0:
        raise InvalidSetup("at least one variable is required")
    for a in degrees:
        if a.group != group:
            raise InvalidSetup(f"degree {a} is not in {group}")
    r = group.rank
    if r == 0:
        raise InvalidSetup("the grading group must have positive rank")
    rows = [[a.free[i] for a in degrees] for i in range(r)]
    if exact.rank(rows) != r:
        raise InvalidSetup("the free parts of the degrees do not span R^r")
    if rays is None:
        rays = dual_configuration(degrees)
    rays = tuple(tuple(int(x) for x in row) for row in rays)
    d = n - r
    if len(rays) != d:
        raise InvalidSetup(f"dual configuration has {len(rays)} rows, expected d = {d}")
    for row in rays:
        if any(sum(b * a.free[k] for b, a in zip(row, degrees)) for k in range(r)):
            raise InvalidSetup("rays are not orthogonal to the degrees")

    notes: list[str] = []
    from_point = None
    if chamber_point is not None:
        chamber_point = tuple(Fraction(x) for x in chamber_point)
        from_point = triangulation_from_chamber(degrees, chamber_point)
    if triangulation is not None:
        cx = SimplicialComplex(n, tuple(tuple(f) for f in triangulation))
        if from_point is not None and from_point.facets != cx.facets:
            raise InvalidSetup("the triangulation does not match the chamber point")
    elif from_point is not None:
        cx = from_point
    else:
        raise InvalidSetup("give a chamber point or a triangulation")

    for f in cx.facets:
        if len(f) != d:
            raise InvalidSetup(f"facet {[i + 1 for i in f]} has {len(f)} vertices, expected d = {d}")
    normals = _facet_normals(degrees, cx.facets, n)
    normals = _prune_redundant(normals, r)
    interior = _interior_point(normals, r)
    if interior is None:
        raise InvalidSetup("the chamber cut out by the triangulation is not full-dimensional")
    if chamber_point is None:
        # Gale check: the chamber of an interior point must give back the same triangulation
        try:
            back = triangulation_from_chamber(degrees, interior)
        except DegenerateChamberPoint:
            back = None
        if back is None or back.facets != cx.facets:
            msg = "triangulation is not recovered from an interior point of its chamber; it may not be regular"
            warnings.warn(msg)
            notes.append(msg)

    setup = GradingSetup(
        group=group,
        degrees=degrees,
        complex=cx,
        C=(),
        rays=rays,
        chamber=tuple(normals),
        interior_point=tuple(interior),
        chamber_point=chamber_point,
        notes=notes,
    )
    if require_pointed and not setup.pointed:
        raise InvalidSetup(
            "pos of the degree images is not a pointed cone; local cohomology needs an acyclic configuration"
        )
    if C is None:
        C = setup.generators_K()
    setup.C = tuple(C)
    for c in setup.C:
        if c.group != group:
            raise InvalidSetup(f"element {c} of C is not in {group}")
    return setup


def setup_from_rays(rays: Sequence[Sequence[int]], **kwargs) -> GradingSetup:
    group, degrees = degrees_from_rays(rays)
    return build_setup(group, degrees, rays=rays, **kwargs)


# --------------------------------------------------------------------------
# generators of K and K^sat


def _lattice_basis(vectors: Sequence[Sequence[int]], r: int) -> list[list[int]]:
    """Columns of an r x r matrix whose integer span is the span of ``vectors`` (full rank)."""
    M = [[v[k] for v in vectors] for k in range(r)]
    U, D, _ = smith_normal_form(M)
    Uinv = exact.inverse(U)
    cols = []
    for i in range(r):
        cols.append([int(Uinv[k][i]) * D[i][i] for k in range(r)])
    return [[cols[j][k] for j in range(r)] for k in range(r)]


def _cone_lattice_hilbert_basis(
    normals: Sequence[Sequence[int]], basis: Sequence[Sequence[int]], r: int, node_cap: int
) -> list[tuple[int, ...]]:
    """Hilbert basis of {x in L : h.x >= 0 for all normals}, L spanned by the columns of ``basis``.

    Works in slack coordinates s = (h.x)_h, which identify the monoid with
    N^m intersected with a sublattice; that sublattice is cut out by linear
    equations and congruences from a Smith form, congruences are lifted with
    auxiliary unknowns, and the Contejean-Devie basis is projected and minimized.
    """
    Mz = exact.matmul(normals, basis)  # slack = Mz z
    m = len(Mz)
    U, D, V = smith_normal_form(Mz)
    rows = []
    aux = []
    for i in range(m):
        d = D[i][i] if i < r else 0
        if d == 1:
            continue
        rows.append(list(U[i]))
        aux.append(d)
    # columns: one per slack, then +d/-d per congruence row
    cols = []
    for k in range(m):
        cols.append(tuple(row[k] for row in rows))
    for idx, d in enumerate(aux):
        if d == 0:
            continue
        for sign in (1, -1):
            cols.append(tuple(sign * d if j == idx else 0 for j in range(len(rows))))
    if rows:
        hb = hilbert_basis(cols, node_cap)
        slacks = [s[:m] for s in hb if any(s[:m])]
    else:
        slacks = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    slacks = minimal_elements(slacks)
    out = []
    for s in slacks:
        z = _solve_exact(Mz, s)
        out.append(tuple(exact.matmul(basis, [[x] for x in z])[k][0] for k in range(r)))
    return sorted(out)


def _solve_exact(M, b) -> list[int]:
    from .diophantine import solve_integer

    z = solve_integer(M, b)
    if z is None:
        raise AssertionError("slack vector outside the lattice")
    return z


def _torsion_subgroup_generators(setup: GradingSetup) -> list[GroupElement]:
    group = setup.group
    members = [
        group.element((0,) * group.rank, t)
        for t in group.torsion_classes()
        if any(t) and setup.in_ZA(group.element((0,) * group.rank, t))
    ]
    members.sort(key=lambda e: (sum(1 for x in e.torsion if x), e.torsion))
    chosen: list[GroupElement] = []
    span = {group.zero()}
    for e in members:
        if e in span:
            continue
        chosen.append(e)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in chosen:
                    y = x + g
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
    return chosen


def _lift(setup: GradingSetup, free: Sequence[int]) -> GroupElement:
    group = setup.group
    for t in group.torsion_classes():
        p = group.element(free, t)
        if setup.in_ZA(p):
            return p
    raise AssertionError("free vector has no lift to ZA")


def generators_Ksat(setup: GradingSetup, node_cap: int = DEFAULT_NODE_CAP) -> list[GroupElement]:
    """Minimal generators of K^sat: lifts of the Hilbert basis of the chamber, then torsion."""
    r = setup.r
    basis = _lattice_basis([a.free for a in setup.degrees], r)
    free_gens = _cone_lattice_hilbert_basis(setup.chamber, basis, r, node_cap)
    return [_lift(setup, f) for f in free_gens] + _torsion_subgroup_generators(setup)


def generators_K(setup: GradingSetup, node_cap: int = DEFAULT_NODE_CAP) -> list[GroupElement]:
    """Minimal generators of K, the intersection of the facet monoids N{a_i : i not in sigma}.

    Each facet cone is simplicial, so a degree has at most one representation
    per facet.  The joint system A_0 lambda^0 = A_k lambda^k (in G) therefore
    identifies K with the points of the chamber lying in the lattice L'
    spanned by the projections A_0 lambda^0 of its integer kernel.
    """
    group = setup.group
    n, r = setup.n, setup.r
    comps = [[i for i in range(n) if i not in f] for f in setup.complex.facets]
    s = len(group.torsion)
    blocks = len(comps) - 1
    dim_eq = blocks * (r + s)
    nlam = r * len(comps)
    naux = blocks * s
    rows = [[0] * (nlam + naux) for _ in range(dim_eq)]
    for k, comp in enumerate(comps):
        for j, i in enumerate(comp):
            vec = setup.degrees[i].vector
            targets = range(blocks) if k == 0 else [k - 1]
            sign = 1 if k == 0 else -1
            for b in targets:
                for c in range(r + s):
                    rows[b * (r + s) + c][k * r + j] = sign * vec[c]
    for b in range(blocks):
        for t, m in enumerate(group.torsion):
            rows[b * (r + s) + r + t][nlam + b * s + t] = m
    kernel = integer_kernel(rows, nlam + naux)
    A0 = [setup.degrees[i] for i in comps[0]]
    spans = [combination(v[:r], A0, group).free for v in kernel]
    basis = _lattice_basis(spans, r)
    free_gens = _cone_lattice_hilbert_basis(setup.chamber, basis, r, node_cap)
    M0 = [[a.free[k] for a in A0] for k in range(r)]
    inv0 = exact.inverse(M0)
    out = []
    for x in free_gens:
        lam = [sum(Fraction(a) * b for a, b in zip(row, x)) for row in inv0]
        if any(v.denominator != 1 or v < 0 for v in lam):
            raise AssertionError("chamber lattice point has no facet representation")
        out.append(combination([int(v) for v in lam], A0, group))
    return out


# --------------------------------------------------------------------------
# Lemma: B versus degree-p monomials


@dataclass
class BandCReport:
    p: GroupElement
    part1: Optional[bool] = None
    part2: Optional[bool] = None
    counterexample: Optional[tuple] = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.part1 is not False and self.part2 is not False


def lemma_BandC_check(setup: GradingSetup, p: GroupElement) -> BandCReport:
    """Check that degree-p monomials lie in B (p interior) and that B is in rad <S_p> (p in K)."""
    rep = BandCReport(p)
    try:
        fiber = enumerate_fiber(setup.degrees, p)
    except NotPointed as e:
        rep.notes.append(f"fiber not finite: {e}")
        return rep
    gens = setup.irrelevant_ideal
    if setup.in_interior_Ksat(p):
        rep.part1 = True
        for u in fiber:
            supp = {i for i, x in enumerate(u) if x}
            if not any(supp.issuperset(g) for g in gens):
                rep.part1 = False
                rep.counterexample = ("monomial outside B", u)
                break
    else:
        rep.notes.append("part 1 skipped: p is not in the interior of K^sat")
    if setup.in_K(p):
        rep.part2 = True
        for g in gens:
            if not any(set(i for i, x in enumerate(u) if x) <= set(g) for u in fiber):
                rep.part2 = False
                rep.counterexample = ("generator of B not in the radical", g)
                break
    else:
        rep.notes.append("part 2 skipped: p is not in K")
    return rep
