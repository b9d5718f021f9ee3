"""Setups and brute-force oracles shared by the test modules."""

import itertools
from functools import lru_cache
from pathlib import Path

from mgreg import AbelianGroup, build_setup
from mgreg.config import load_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

Z1 = AbelianGroup(1)
Z2 = AbelianGroup(2)
Z3 = AbelianGroup(3)


def cfg(name):
    return load_config(CONFIGS / f"{name}.json").setup


@lru_cache(maxsize=None)
def hirzebruch(t, chamber=(1, 1)):
    A = [Z2.element(v) for v in [(1, 0), (-t, 1), (1, 0), (0, 1)]]
    C = [Z2.element((1, 0)), Z2.element((0, 1))] if chamber == (1, 1) else None
    return build_setup(Z2, A, chamber_point=chamber, C=C)


@lru_cache(maxsize=None)
def weighted(weights, C=(1,)):
    return build_setup(Z1, [Z1.element((w,)) for w in weights], chamber_point=(1,), C=[Z1.element((c,)) for c in C])


@lru_cache(maxsize=None)
def product_of_projective(dims):
    """P^{k_1} x ... x P^{k_r} with C the unit vectors."""
    r = len(dims)
    G = AbelianGroup(r)
    A = []
    for i, k in enumerate(dims):
        A += [G.element(tuple(int(j == i) for j in range(r)))] * (k + 1)
    return build_setup(G, A, chamber_point=(1,) * r, C=G.basis())


def brute_solutions(columns, target, bound):
    """All lambda with entries <= bound and sum(lambda) <= bound solving the system."""
    group = target.group
    out = []
    for lam in itertools.product(range(bound + 1), repeat=len(columns)):
        if sum(lam) > bound:
            continue
        acc = group.zero()
        for k, c in zip(lam, columns):
            acc = acc + c * k
        if acc == target:
            out.append(lam)
    return out


def brute_fiber(degrees, p, bound):
    group = p.group
    out = []
    for u in itertools.product(range(bound + 1), repeat=len(degrees)):
        acc = group.zero()
        for k, a in zip(u, degrees):
            acc = acc + a * k
        if acc == p:
            out.append(u)
    return sorted(out)


def minimal_points_2d(points):
    return sorted(p for p in points if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in points))
