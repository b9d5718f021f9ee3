"""Exact integer solvers: Smith normal form, nonnegative solvability, fibers, Hilbert bases.

Nonnegative solvability and Hilbert bases both run the Contejean-Devie
completion procedure.  Torsion congruences ``a = b (mod m)`` are lifted to
equations ``a - b = m (z+ - z-)`` with two fresh nonnegative unknowns, so one
solver covers every group ``Z^r + Z/m_1 + ... + Z/m_s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import NotPointed, Overflow, TorsionUnsupported
from .exact import inverse, positive_functional, rank
from .grading import AbelianGroup, GroupElement

IntMatrix = list[list[int]]

DEFAULT_NODE_CAP = 2_000_000


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with ``U M V = D``, U and V unimodular, D diagonal with d1 | d2 | ...

    Entries of D are nonnegative.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(map(int, row)) for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, D, V
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                D[t] = [-a for a in D[t]]
                U[t] = [-a for a in U[t]]
            break
    return U, D, V


def solve_integer(M: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """Some integer x with ``M x = b``, or None."""
    if not M:
        return []
    n = len(M[0])
    U, D, V = smith_normal_form(M)
    c = [sum(u * x for u, x in zip(row, b)) for row in U]
    y = [0] * n
    for i, ci in enumerate(c):
        d = D[i][i] if i < n else 0
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    return [sum(v * yi for v, yi in zip(row, y)) for row in V]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer right kernel of M, read off the column transform of a Smith form."""
    if not M:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    _, D, V = smith_normal_form(M)
    rk = sum(1 for i in range(min(len(D), ncols)) if D[i][i])
    return [[V[k][j] for k in range(ncols)] for j in range(rk, ncols)]


def cokernel(M: Sequence[Sequence[int]]) -> tuple[AbelianGroup, IntMatrix]:
    """Cokernel of ``M : Z^n -> Z^m``.

    Returns (G, images) where ``images[k]`` holds the coordinates (free part,
    then torsion residues) of the class of the k-th unit vector of Z^m.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    U, D, _ = smith_normal_form(M)
    diag = [D[i][i] if i < n else 0 for i in range(m)]
    torsion_rows = [i for i, d in enumerate(diag) if d > 1]
    free_rows = [i for i, d in enumerate(diag) if d == 0]
    group = AbelianGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    images = []
    for k in range(m):
        col = [U[i][k] for i in range(m)]
        images.append([col[i] for i in free_rows] + [col[i] % diag[i] for i in torsion_rows])
    return group, images


# --------------------------------------------------------------------------
# systems over a group


@dataclass(frozen=True)
class DiophantineSystem:
    """Does some lambda in N^k satisfy ``sum_j lambda_j * columns[j] = target`` in G?"""

    columns: tuple[GroupElement, ...]
    target: GroupElement

    def lifted(self) -> tuple[list[tuple[int, ...]], tuple[int, ...], int]:
        """Integer columns with torsion congruences turned into equations.

        Returns (columns, target vector, number of original unknowns).
        """
        return _lift(tuple(c.vector for c in self.columns), self.target.vector, self.target.moduli)


def _lift(cols: tuple[tuple[int, ...], ...], target: tuple[int, ...], moduli: tuple[int, ...]):
    dim = len(target)
    r = dim - len(moduli)
    out = [tuple(c) for c in cols]
    for t, m in enumerate(moduli):
        for sign in (1, -1):
            v = [0] * dim
            v[r + t] = sign * m
            out.append(tuple(v))
    return out, tuple(target), len(cols)


def lattice_contains(columns: Sequence[GroupElement], target: GroupElement) -> Optional[list[int]]:
    """Integer (not necessarily nonnegative) coefficients writing target in Z<columns>."""
    dim = len(target.vector)
    r = len(target.free)
    cols = [c.vector for c in columns]
    for t, m in enumerate(target.moduli):
        v = [0] * dim
        v[r + t] = m
        cols.append(tuple(v))
    if not cols:
        return [] if target.is_zero() else None
    M = [[c[i] for c in cols] for i in range(dim)]
    x = solve_integer(M, target.vector)
    return None if x is None else x[: len(columns)]


def _contejean_devie(
    cols: Sequence[tuple[int, ...]],
    x0col: Optional[tuple[int, ...]] = None,
    node_cap: int = DEFAULT_NODE_CAP,
) -> tuple[list[tuple[int, ...]], Optional[tuple[int, ...]]]:
    """Breadth-first Contejean-Devie completion on ``A x = 0``, x in N^K.

    With ``x0col`` an extra unknown x0 (last coordinate, capped at 1) is
    appended, and the search stops at the first solution having x0 = 1.
    Returns (minimal homogeneous solutions found, witness or None).
    """
    allc = list(cols) + ([x0col] if x0col is not None else [])
    K = len(allc)
    if K == 0:
        return [], None
    dim = len(allc[0])
    idx0 = K - 1 if x0col is not None else -1
    gram = [[sum(a * b for a, b in zip(allc[i], allc[j])) for j in range(K)] for i in range(K)]
    zero = (0,) * dim

    frontier: dict[tuple[int, ...], tuple[int, ...]] = {}
    for j in range(K):
        e = [0] * K
        e[j] = 1
        frontier[tuple(e)] = tuple(allc[j])
    sols: list[tuple[int, ...]] = []
    nodes = 0
    while frontier:
        level_sols = [x for x, s in frontier.items() if s == zero]
        for x in level_sols:
            if idx0 >= 0 and x[idx0] == 1:
                return sols, x
            sols.append(x)
        nxt: dict[tuple[int, ...], tuple[int, ...]] = {}
        for x, s in frontier.items():
            if s == zero:
                continue
            # <A x, A e_j> computed from residual s
            for j in range(K):
                if j == idx0 and x[idx0] >= 1:
                    continue
                col = allc[j]
                ip = 0
                for a, b in zip(s, col):
                    ip += a * b
                if ip >= 0:
                    continue
                y = list(x)
                y[j] += 1
                y = tuple(y)
                if y in nxt:
                    continue
                if any(all(yi >= mi for yi, mi in zip(y, m)) for m in sols):
                    continue
                nxt[y] = tuple(a + b for a, b in zip(s, col))
                nodes += 1
                if nodes > node_cap:
                    raise Overflow(f"Contejean-Devie search exceeded {node_cap} nodes")
        frontier = nxt
    return sols, None


BOUNDED_SEARCH_LIMIT = 200_000


@lru_cache(maxsize=1024)
def _functional(free_cols: tuple) -> Optional[tuple[int, ...]]:
    if not free_cols or not free_cols[0]:
        return None
    h = positive_functional([list(c) for c in free_cols], len(free_cols[0]))
    return None if h is None else tuple(h)


def _bounded_search(cols: tuple, target: tuple, moduli: tuple):
    """Bounded search for lambda when the free parts are pointed.

    A positive functional bounds every coordinate.  Coordinates outside an
    invertible r x r block are enumerated; the block is then solved exactly.
    Returns a witness, None if there is no solution, or NotImplemented when
    no positive functional exists or the search box is too large.
    """
    r = len(target) - len(moduli)
    h = _functional(tuple(c[:r] for c in cols))
    if h is None:
        return NotImplemented
    weights = [sum(a * b for a, b in zip(h, c[:r])) for c in cols]
    budget = sum(a * b for a, b in zip(h, target[:r]))
    if budget < 0:
        return None
    # solve directly for the cheapest independent columns, which have the widest ranges
    block: list[int] = []
    for i in sorted(range(len(cols)), key=lambda i: weights[i]):
        if rank([list(cols[j][:r]) for j in block + [i]]) == len(block) + 1:
            block.append(i)
        if len(block) == r:
            break
    if len(block) < r:
        return NotImplemented
    inv = inverse([[cols[j][row] for j in block] for row in range(r)])
    free_idx = [i for i in range(len(cols)) if i not in block]
    size = 1
    for i in free_idx:
        size *= budget // weights[i] + 1
        if size > BOUNDED_SEARCH_LIMIT:
            return NotImplemented
    lam = [0] * len(cols)

    def finish(rest: list) -> bool:
        sol = []
        for row in inv:
            x = sum(a * b for a, b in zip(row, rest[:r]))
            if x < 0 or x.denominator != 1:
                return False
            sol.append(int(x))
        left = list(rest)
        for j, q in zip(block, sol):
            left = [x - q * y for x, y in zip(left, cols[j])]
        if any(x % m for x, m in zip(left[r:], moduli)):
            return False
        for j, q in zip(block, sol):
            lam[j] = q
        return True

    def rec(k: int, rest: list, rem: int) -> bool:
        if k == len(free_idx):
            return finish(rest)
        i = free_idx[k]
        c, w = cols[i], weights[i]
        for q in range(rem // w + 1):
            lam[i] = q
            if rec(k + 1, [x - q * y for x, y in zip(rest, c)], rem - q * w):
                return True
        lam[i] = 0
        return False

    return tuple(lam) if rec(0, list(target), budget) else None


@lru_cache(maxsize=200_000)
def _solve_cached(cols: tuple, target: tuple, moduli: tuple, node_cap: int):
    if not any(target):
        return (0,) * len(cols)
    if cols:
        found = _bounded_search(cols, target, moduli)
        if found is not NotImplemented:
            return found
    return _solve_homogenized(cols, target, moduli, node_cap)


def _solve_homogenized(cols: tuple, target: tuple, moduli: tuple, node_cap: int):
    """Contejean-Devie on the x0-homogenized system with lifted torsion congruences."""
    if not any(target):
        return (0,) * len(cols)
    lifted, tvec, k = _lift(cols, target, moduli)
    # cheap necessary condition: target in the integer span
    dim = len(tvec)
    M = [[c[i] for c in lifted] for i in range(dim)] if lifted else []
    if not lifted or solve_integer(M, tvec) is None:
        return None
    _, witness = _contejean_devie(lifted, tuple(-t for t in tvec), node_cap)
    if witness is None:
        return None
    return witness[:k]


def solve_exists(
    system: DiophantineSystem, node_cap: int = DEFAULT_NODE_CAP
) -> Optional[tuple[int, ...]]:
    """A witness lambda in N^k solving the system, or None if there is none.

    The target is homogenized with an auxiliary unknown x0 multiplying
    ``-target``; a minimal solution with x0 = 1 is searched for and the
    search exits at the first one.
    """
    t = system.target
    return _solve_cached(
        tuple(c.vector for c in system.columns), t.vector, t.moduli, node_cap
    )


def solvable(columns: Sequence[GroupElement], target: GroupElement) -> bool:
    return solve_exists(DiophantineSystem(tuple(columns), target)) is not None


# --------------------------------------------------------------------------
# fibers


def enumerate_fiber(A: Sequence[GroupElement], p: GroupElement) -> list[tuple[int, ...]]:
    """All u in N^n with ``sum u_i a_i = p``, in lexicographic order.

    Raises NotPointed when no strictly positive functional exists on the
    free parts (the fiber could then be infinite).
    """
    n = len(A)
    r = len(p.free)
    h = positive_functional([a.free for a in A], r)
    if h is None:
        raise NotPointed("the degrees do not span a pointed cone")
    weights = [sum(x * y for x, y in zip(h, a.free)) for a in A]
    budget = sum(x * y for x, y in zip(h, p.free))
    if budget < 0:
        return []
    out: list[tuple[int, ...]] = []
    u = [0] * n

    def rec(i: int, rem: int):
        if i == n:
            if rem == 0:
                deg = p.group.zero()
                for k, a in zip(u, A):
                    if k:
                        deg = deg + a * k
                if deg == p:
                    out.append(tuple(u))
            return
        for k in range(rem // weights[i] + 1):
            u[i] = k
            rec(i + 1, rem - k * weights[i])
        u[i] = 0

    rec(0, budget)
    out.sort()
    return out


# --------------------------------------------------------------------------
# Hilbert bases


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def hilbert_basis(
    columns: Sequence[GroupElement] | Sequence[Sequence[int]],
    node_cap: int = DEFAULT_NODE_CAP,
) -> HilbertBasis:
    """Minimal nonzero solutions in N^k of ``sum_j lambda_j col_j = 0``.

    ``columns`` are GroupElements over a torsion-free group, or plain
    integer vectors.  Output is sorted lexicographically.
    """
    cols = []
    for c in columns:
        if isinstance(c, GroupElement):
            if c.moduli:
                raise TorsionUnsupported(
                    "Hilbert bases are computed over torsion-free groups; lift congruences first"
                )
            cols.append(c.free)
        else:
            cols.append(tuple(int(x) for x in c))
    if not cols:
        return HilbertBasis(())
    sols, _ = _contejean_devie(cols, None, node_cap)
    return HilbertBasis(tuple(sorted(sols)))


def minimal_elements(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Elements not dominating (coordinatewise >=) any other element; duplicates dropped."""
    uniq = sorted(set(tuple(v) for v in vectors), key=lambda v: (sum(v), v))
    out: list[tuple[int, ...]] = []
    for v in uniq:
        if not any(all(a >= b for a, b in zip(v, w)) for w in out):
            out.append(v)
    return sorted(out)
