"""Local cohomology of S with support in B: support regions, Hilbert function, Cech oracle.

The support of H^i_B(S) is a union of regions, one per nonempty subset sigma
whose induced subcomplex has reduced cohomology in degree i-2.  The Cech oracle
computes the same dimensions straight from a Cech complex in a single
Z^n-degree and never consults the subcomplex formula.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

from . import exact
from .cohomology import nonzero_witnesses
from .diophantine import DiophantineSystem, enumerate_fiber, solve_exists
from .errors import HypothesisViolated
from .fan import Face, GradingSetup
from .grading import GroupElement, total
from .region import Component, Region


class Infinite:
    """Marker for an infinite-dimensional graded piece."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__


INFINITE = Infinite()
Dim = Union[int, Infinite]


@dataclass(frozen=True)
class SupportEntry:
    sigma: tuple[int, ...]
    mult: int
    region: Component

    def to_json(self, i: int) -> dict:
        return {
            "i": i,
            "sigma": [j + 1 for j in self.sigma],
            "mult": self.mult,
            "shift": self.region.shift.to_json(),
            "generators": [g.to_json() for g in self.region.generators],
        }


@dataclass
class SupportTable:
    d: int
    rows: dict[int, list[SupportEntry]] = field(default_factory=dict)

    def row(self, i: int) -> list[SupportEntry]:
        return self.rows.get(i, [])

    def region(self, i: int) -> Region:
        return Region(tuple(e.region for e in self.row(i)))

    def contains(self, i: int, p: GroupElement) -> bool:
        return any(e.region.contains(p) for e in self.row(i))

    @property
    def nonzero_rows(self) -> list[int]:
        return sorted(i for i, entries in self.rows.items() if entries)

    def to_json(self) -> list[dict]:
        return [e.to_json(i) for i in sorted(self.rows) for e in self.rows[i]]


def region_for(setup: GradingSetup, sigma: Sequence[int]) -> Component:
    """-sum_{j in sigma} a_j + N{a_j : j not in sigma} + N{-a_j : j in sigma}."""
    s = set(sigma)
    shift = -total([setup.degrees[j] for j in sorted(s)], setup.group)
    gens = tuple(-a if j in s else a for j, a in enumerate(setup.degrees))
    return Component(shift, gens)


@lru_cache(maxsize=64)
def support_table(setup: GradingSetup, field: Optional[int] = None) -> SupportTable:
    if not setup.pointed:
        raise HypothesisViolated(
            "pos of the degree images is not pointed; the subcomplex formula does not determine vanishing"
        )
    table = SupportTable(setup.d)
    # degree -1 survives only for nonempty sigma avoiding every vertex (non-toric case)
    for sigma, k, mult in nonzero_witnesses(setup.complex, field, min_degree=-1):
        i = k + 2
        if sigma and 0 <= i <= setup.d + 1:
            table.rows.setdefault(i, []).append(SupportEntry(sigma, mult, region_for(setup, sigma)))
    return table


def _mixed_columns(setup: GradingSetup, sigma: Sequence[int]) -> list[GroupElement]:
    s = set(sigma)
    return [-a if j in s else a for j, a in enumerate(setup.degrees)]


def fiber_count(setup: GradingSetup, sigma: Sequence[int], p: GroupElement) -> Dim:
    """#{u in Z^n : neg(u) = sigma, deg(u) = p}, or INFINITE."""
    cols = _mixed_columns(setup, sigma)
    target = p + total([setup.degrees[j] for j in sigma], setup.group)
    if exact.positive_functional([c.free for c in cols], setup.r) is None:
        return INFINITE if solve_exists(DiophantineSystem(tuple(cols), target)) is not None else 0
    return len(enumerate_fiber(cols, target))


def hilbert_dim(setup: GradingSetup, table: Optional[SupportTable], i: int, p: GroupElement) -> Dim:
    """dim H^i_B(S)_p as a sum of multiplicity times fiber count over the entries of row i."""
    if table is None:
        table = support_table(setup)
    out = 0
    for e in table.row(i):
        c = fiber_count(setup, e.sigma, p)
        if c is INFINITE:
            return INFINITE
        out += e.mult * c
    return out


# --------------------------------------------------------------------------
# Cech oracle


def _facet_orientation(setup: GradingSetup) -> Optional[dict[Face, int]]:
    """Signs o(sigma) on facets making the canonical complex square to zero, if they exist.

    Requires every ridge to lie in exactly two facets; propagates across
    ridges by breadth-first search and rejects inconsistent cycles.
    """
    facets = setup.complex.facets
    ridges: dict[Face, list[tuple[Face, int]]] = {}
    for f in facets:
        for pos in range(len(f)):
            ridges.setdefault(f[:pos] + f[pos + 1 :], []).append((f, -1 if pos % 2 else 1))
    if any(len(v) != 2 for v in ridges.values()):
        return None
    by_facet: dict[Face, list[tuple[Face, int, int]]] = {f: [] for f in facets}
    for (f1, s1), (f2, s2) in ridges.values():
        by_facet[f1].append((f2, s1, s2))
        by_facet[f2].append((f1, s2, s1))
    orient: dict[Face, int] = {}
    for start in facets:
        if start in orient:
            continue
        orient[start] = 1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for g, sf, sg in by_facet[f]:
                # need o(f) sf + o(g) sg = 0
                want = -orient[f] * sf * sg
                if g not in orient:
                    orient[g] = want
                    queue.append(g)
                elif orient[g] != want:
                    return None
    return orient


@lru_cache(maxsize=64)
def _orientation_cached(setup: GradingSetup):
    return _facet_orientation(setup)


def _canonical_dims(setup: GradingSetup, neg: frozenset, field: Optional[int], orient) -> dict[int, int]:
    d = setup.d
    faces = [()] + sorted(setup.complex.faces)
    levels: list[list[Face]] = [[] for _ in range(d + 2)]
    levels[0] = [None] if not neg else []
    for f in faces:
        if neg.isdisjoint(f):
            levels[d + 1 - len(f)].append(f)
    ranks = []
    for k in range(d + 1):
        src, dst = levels[k], levels[k + 1]
        if not src or not dst:
            ranks.append(0)
            continue
        index = {f: j for j, f in enumerate(dst)}
        M = [[0] * len(src) for _ in dst]
        for c, f in enumerate(src):
            if k == 0:
                for g in dst:
                    M[index[g]][c] = orient[g]
            else:
                for pos in range(len(f)):
                    g = f[:pos] + f[pos + 1 :]
                    if g in index:
                        M[index[g]][c] = -1 if pos % 2 else 1
        ranks.append(exact.rank(M, field))
    out = {}
    for k in range(d + 2):
        dim = len(levels[k]) - (ranks[k] if k <= d else 0) - (ranks[k - 1] if k else 0)
        if dim:
            out[k] = dim
    return out


def _generator_dims(setup: GradingSetup, neg: frozenset, field: Optional[int]) -> dict[int, int]:
    """Cech complex on the monomial generators of B: level k has one term per k-subset J."""
    gens = [frozenset(g) for g in setup.irrelevant_ideal]
    m = len(gens)
    levels = []
    for k in range(m + 1):
        levels.append([J for J in itertools.combinations(range(m), k) if neg <= frozenset().union(*(gens[j] for j in J))])
    ranks = []
    for k in range(m):
        src, dst = levels[k], levels[k + 1]
        if not src or not dst:
            ranks.append(0)
            continue
        index = {J: j for j, J in enumerate(dst)}
        M = [[0] * len(src) for _ in dst]
        for c, J in enumerate(src):
            for j in range(m):
                if j in J:
                    continue
                K = tuple(sorted(J + (j,)))
                if K in index:
                    M[index[K]][c] = -1 if sum(1 for x in J if x < j) % 2 else 1
        ranks.append(exact.rank(M, field))
    out = {}
    for k in range(m + 1):
        dim = len(levels[k]) - (ranks[k] if k < m else 0) - (ranks[k - 1] if k else 0)
        if dim:
            out[k] = dim
    return out


@lru_cache(maxsize=1 << 14)
def _cech_cached(setup: GradingSetup, neg: frozenset, field: Optional[int], method: str) -> tuple:
    if method == "auto":
        method = "canonical" if _orientation_cached(setup) is not None else "generators"
    if method == "canonical":
        orient = _orientation_cached(setup)
        if orient is None:
            raise HypothesisViolated("facets admit no coherent orientation; use the generator complex")
        dims = _canonical_dims(setup, neg, field, orient)
    elif method == "generators":
        dims = _generator_dims(setup, neg, field)
    else:
        raise ValueError(f"unknown Cech method {method!r}")
    return tuple(sorted(dims.items()))


def cech_dimensions(
    setup: GradingSetup, u: Sequence[int], field: Optional[int] = None, method: str = "auto"
) -> dict[int, int]:
    """Nonzero dims of H^i of the Cech complex in Z^n-degree u, keyed by i.

    Only neg(u) matters, so results are memoized on it.  ``method`` picks the
    complex indexed by faces of the triangulation ("canonical"), the complex
    on the generators of B ("generators"), or the former when available ("auto").
    """
    if len(u) != setup.n:
        raise ValueError(f"u has {len(u)} entries, expected {setup.n}")
    neg = frozenset(j for j, x in enumerate(u) if x < 0)
    return dict(_cech_cached(setup, neg, field, method))


def cech_dimension(
    setup: GradingSetup, u: Sequence[int], i: int, field: Optional[int] = None, method: str = "auto"
) -> int:
    return cech_dimensions(setup, u, field, method).get(i, 0)


def formula_dimensions(setup: GradingSetup, u: Sequence[int], field: Optional[int] = None) -> dict[int, int]:
    """Dims predicted by the subcomplex formula: H^i in degree u is H~^{i-2} of the complex on neg(u).

    Everything vanishes when neg(u) is empty.  For toric triangulations this
    makes H^1 identically zero; otherwise a nonempty neg(u) with no vertex of
    the triangulation gives H^1 of dimension one.
    """
    from .cohomology import reduced_cohomology_dims

    neg = [j for j, x in enumerate(u) if x < 0]
    if not neg:
        return {}
    return {k + 2: v for k, v in reduced_cohomology_dims(setup.complex, neg, field).items()}
