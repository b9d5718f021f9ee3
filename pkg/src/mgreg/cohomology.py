"""Reduced cohomology of induced subcomplexes over Q or GF(p)."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Optional

from . import exact
from .errors import SubsetCapExceeded
from .fan import Face, SimplicialComplex

DEFAULT_SUBSET_CAP = 22


def _faces_by_size(complex_: SimplicialComplex, sigma: Iterable[int]) -> dict[int, list[Face]]:
    out: dict[int, list[Face]] = {0: [()]}
    for f in complex_.induced(sigma):
        out.setdefault(len(f), []).append(f)
    return out


def boundary_matrix(rows_faces: list[Face], cols_faces: list[Face]) -> list[list[int]]:
    """Matrix of the simplicial boundary from faces of size k+1 (columns) to size k (rows)."""
    index = {f: i for i, f in enumerate(rows_faces)}
    M = [[0] * len(cols_faces) for _ in rows_faces]
    for j, f in enumerate(cols_faces):
        for pos in range(len(f)):
            g = f[:pos] + f[pos + 1 :]
            M[index[g]][j] = -1 if pos % 2 else 1
    return M


def reduced_cohomology_dims(
    complex_: SimplicialComplex, sigma: Iterable[int], field: Optional[int] = None
) -> dict[int, int]:
    """Nonzero dims of the reduced cohomology of the induced subcomplex, keyed by degree i >= -1.

    ``field`` is None for Q or a prime p for GF(p).  The augmented cochain
    complex includes the empty face in degree -1.
    """
    return dict(_cached_dims(complex_, tuple(sorted(set(sigma))), field))


@lru_cache(maxsize=1 << 16)
def _cached_dims(complex_: SimplicialComplex, sigma: tuple[int, ...], field: Optional[int]):
    faces = _faces_by_size(complex_, sigma)
    top = max(faces)
    # rank of the coboundary from size k to size k+1 equals the rank of the boundary matrix
    ranks = {}
    for k in range(top):
        lo, hi = faces.get(k, []), faces.get(k + 1, [])
        ranks[k] = exact.rank(boundary_matrix(lo, hi), field) if lo and hi else 0
    out = []
    for k in range(top + 1):
        dim = len(faces.get(k, [])) - ranks.get(k, 0) - ranks.get(k - 1, 0)
        if dim:
            out.append((k - 1, dim))
    return tuple(out)


def euler_characteristic(complex_: SimplicialComplex, sigma: Iterable[int]) -> int:
    """-1 plus the alternating face count of the induced subcomplex."""
    return -1 + sum((-1) ** (len(f) - 1) for f in complex_.induced(sigma))


def subsets_by_popcount(n: int) -> Iterable[tuple[int, ...]]:
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def nonzero_witnesses(
    complex_: SimplicialComplex,
    field: Optional[int] = None,
    cap: int = DEFAULT_SUBSET_CAP,
    min_degree: int = 0,
) -> list[tuple[tuple[int, ...], int, int]]:
    """All (sigma, i, dim) with i >= min_degree and nonzero reduced cohomology of the induced subcomplex."""
    if complex_.n > cap:
        raise SubsetCapExceeded(f"{complex_.n} vertices exceeds the subset cap {cap}")
    out = []
    for sigma in subsets_by_popcount(complex_.n):
        for i, dim in sorted(reduced_cohomology_dims(complex_, sigma, field).items()):
            if i >= min_degree:
                out.append((sigma, i, dim))
    return out
