"""Exact linear algebra over Z, Q and GF(p).

Everything here works on plain lists of ints or Fractions; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list[list]


def rank_bareiss(M: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(row) for row in M]
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    r, prev = 0, 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            aic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, n):
                row_i[j] = (p * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    A = [[x % p for x in row] for row in M]
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [(x * inv) % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def rank(M: Sequence[Sequence[int]], field: Optional[int] = None) -> int:
    """Rank over Q (``field=None``) or over GF(field)."""
    if field is None:
        return rank_bareiss(M)
    return rank_mod_p(M, field)


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def kernel_basis(M: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[int]]:
    """Integer basis (primitive vectors) of the rational right kernel of M."""
    if not M:
        n = ncols or 0
        return [[int(i == j) for j in range(n)] for i in range(n)]
    A, pivots = rref(M)
    n = len(A[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(A, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def inverse(M: Sequence[Sequence]) -> Optional[Matrix]:
    """Inverse over Q, or None when singular."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    A, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in A]


def determinant(M: Sequence[Sequence]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*A)]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


# --------------------------------------------------------------------------
# Fourier-Motzkin elimination


def _normalize(coeffs: tuple, rhs) -> tuple[tuple, Fraction]:
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return coeffs, Fraction(rhs)
    return tuple(Fraction(c) / scale for c in coeffs), Fraction(rhs) / scale


def fourier_motzkin(
    rows: Sequence[tuple[Sequence, object]], nvars: int, max_rows: int = 200_000
) -> Optional[list[Fraction]]:
    """Find x with ``a . x >= b`` for every ``(a, b)`` in rows, or None if infeasible.

    Variables are eliminated last-to-first; the witness is rebuilt by
    back-substitution, preferring integer values inside each interval.
    """
    system = {_normalize(tuple(Fraction(c) for c in a), b) for a, b in rows}
    stages = []
    for k in range(nvars - 1, -1, -1):
        stages.append(system)
        lower, upper, keep = [], [], set()
        for a, b in system:
            c = a[k]
            if c > 0:
                lower.append((a, b))
            elif c < 0:
                upper.append((a, b))
            else:
                keep.add((a[:k], b))
        for al, bl in lower:
            for au, bu in upper:
                cl, cu = al[k], -au[k]
                a = tuple(cu * x + cl * y for x, y in zip(al[:k], au[:k]))
                keep.add(_normalize(a, cu * bl + cl * bu))
        if len(keep) > max_rows:
            from .errors import Overflow

            raise Overflow("Fourier-Motzkin elimination grew too large")
        system = keep
    if any(b > 0 for _, b in system):
        return None
    x: list[Fraction] = []
    for k, stage in zip(range(nvars), reversed(stages)):
        lo, hi = None, None
        for a, b in stage:
            c = a[k]
            if c == 0:
                continue
            bound = (b - sum(ai * xi for ai, xi in zip(a[:k], x))) / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        x.append(_pick(lo, hi))
    return x


def _pick(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    import math

    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(min(0, math.floor(hi)))
    if hi is None:
        return Fraction(max(0, math.ceil(lo)))
    if lo <= 0 <= hi:
        return Fraction(0)
    c = Fraction(math.ceil(lo))
    return c if c <= hi else (lo + hi) / 2


def positive_functional(vectors: Sequence[Sequence[int]], dim: int) -> Optional[list[int]]:
    """Integer h with ``h . v >= 1`` for all v, or None if pos(vectors) is not pointed."""
    if any(not any(v) for v in vectors):
        return None
    if not vectors:
        return [0] * dim
    status, _, x = lp_max([0] * dim, [(tuple(v), 1) for v in vectors], dim)
    if status != "optimal":
        return None
    # primitive() rescales by a positive factor and h . v is a positive integer for integral v
    return primitive(x)


# --------------------------------------------------------------------------
# exact simplex


def _simplex(T: list[list[Fraction]], basis: list[int], cost: list[Fraction], allowed: int) -> str:
    """Maximize ``cost . y`` on tableau T (rows [A | b]) with Bland's rule; mutates T and basis.

    Only columns ``< allowed`` may enter.  Returns "optimal" or "unbounded".
    """
    m = len(T)
    while True:
        # reduced cost of column j: cost_j - sum_i cost_{basis_i} T[i][j]
        enter = None
        for j in range(allowed):
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(m) if T[i][j])
            if rc > 0:
                enter = j
                break
        if enter is None:
            return "optimal"
        leave, best = None, None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            return "unbounded"
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        basis[leave] = enter


def lp_max(
    c: Sequence, rows: Sequence[tuple[Sequence, object]], nvars: int
) -> tuple[str, Optional[Fraction], Optional[list[Fraction]]]:
    """Maximize ``c . x`` over free x with ``a . x >= b`` for each ``(a, b)``.

    Returns (status, value, x) with status "optimal", "unbounded" or "infeasible".
    """
    m = len(rows)
    # columns: x+ (nvars), x- (nvars), surplus (m), artificial (m)
    width = 2 * nvars + 2 * m
    T = []
    for i, (a, b) in enumerate(rows):
        row = [Fraction(0)] * (width + 1)
        for k in range(nvars):
            row[k] = Fraction(a[k])
            row[nvars + k] = -Fraction(a[k])
        row[2 * nvars + i] = Fraction(-1)
        row[-1] = Fraction(b)
        if row[-1] < 0:
            row = [-x for x in row]
        row[2 * nvars + m + i] = Fraction(1)
        T.append(row)
    basis = [2 * nvars + m + i for i in range(m)]
    phase1 = [Fraction(0)] * (2 * nvars + m) + [Fraction(-1)] * m
    _simplex(T, basis, phase1, width)
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= 2 * nvars + m):
        return "infeasible", None, None
    # drive remaining (zero-valued) artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= 2 * nvars + m:
            j = next((j for j in range(2 * nvars + m) if T[i][j] != 0 and j not in basis), None)
            if j is not None:
                piv = T[i][j]
                T[i] = [x / piv for x in T[i]]
                for k in range(m):
                    if k != i and T[k][j]:
                        f = T[k][j]
                        T[k] = [x - f * y for x, y in zip(T[k], T[i])]
                basis[i] = j
    cost = [Fraction(x) for x in c] + [-Fraction(x) for x in c] + [Fraction(0)] * (2 * m)
    status = _simplex(T, basis, cost, 2 * nvars + m)
    if status == "unbounded":
        return status, None, None
    y = [Fraction(0)] * width
    for i, j in enumerate(basis):
        y[j] = T[i][-1]
    x = [y[k] - y[nvars + k] for k in range(nvars)]
    return "optimal", sum(Fraction(ci) * xi for ci, xi in zip(c, x)), x


def cone_contains(v: Sequence, generators: Sequence[Sequence]) -> bool:
    """Whether v is a nonnegative rational combination of the generators."""
    dim = len(v)
    g = len(generators)
    if g == 0:
        return not any(v)
    T = []
    for k in range(dim):
        row = [Fraction(gen[k]) for gen in generators] + [Fraction(0)] * dim + [Fraction(v[k])]
        if row[-1] < 0:
            row = [-x for x in row]
        row[g + k] = Fraction(1)
        T.append(row)
    basis = [g + k for k in range(dim)]
    cost = [Fraction(0)] * g + [Fraction(-1)] * dim
    _simplex(T, basis, cost, g + dim)
    return all(T[i][-1] == 0 for i in range(dim) if basis[i] >= g)
