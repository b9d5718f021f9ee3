"""Finite unions of shifted monoids ``s + N{g_1, ..., g_k}`` inside a group G."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .diophantine import DiophantineSystem, solve_exists
from .grading import AbelianGroup, GroupElement

Box = Sequence[tuple[int, int]]


@dataclass(frozen=True)
class Component:
    shift: GroupElement
    generators: tuple[GroupElement, ...]

    def contains(self, p: GroupElement) -> bool:
        return solve_exists(DiophantineSystem(self.generators, p - self.shift)) is not None

    def to_json(self) -> dict:
        return {
            "shift": self.shift.to_json(),
            "generators": [g.to_json() for g in self.generators],
        }


@dataclass(frozen=True)
class Region:
    """Union of components; the empty tuple is the empty region.

    Regions are never canonicalized, so equality is representational.
    Compare regions through membership (``contains`` or ``window``).
    """

    components: tuple[Component, ...] = ()

    @classmethod
    def monoid(cls, shift: GroupElement, generators: Iterable[GroupElement]) -> Region:
        return cls((Component(shift, tuple(generators)),))

    @classmethod
    def empty(cls) -> Region:
        return cls(())

    def __bool__(self) -> bool:
        return bool(self.components)

    def __or__(self, other: Region) -> Region:
        return Region(self.components + other.components)

    def shifted(self, p: GroupElement) -> Region:
        return Region(tuple(Component(c.shift + p, c.generators) for c in self.components))

    def __add__(self, p: GroupElement) -> Region:
        return self.shifted(p)

    def contains(self, p: GroupElement) -> bool:
        return any(c.contains(p) for c in self.components)

    __contains__ = contains

    def window(self, box: Box, group: AbelianGroup | None = None) -> set[GroupElement]:
        """Members of the region inside ``box`` (free part), over every torsion class."""
        if group is None:
            if not self.components:
                return set()
            group = self.components[0].shift.group
        return {p for p in box_points(group, box) if self.contains(p)}

    def to_json(self) -> list:
        return [c.to_json() for c in self.components]


def weak_compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All lambda in N^parts with sum ``total``, in lexicographic order (descending first part)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def shift_index(D: Region, i: int, C: Sequence[GroupElement]) -> Region:
    """The region ``D[i]``: union over lambda with |lambda| = |i| of ``sign(i) lambda.C + D``."""
    if i == 0 or not D:
        return D
    if not C:
        raise ValueError("shift_index needs a nonempty generator list")
    group = C[0].group
    sign = 1 if i > 0 else -1
    comps = []
    for lam in weak_compositions(abs(i), len(C)):
        offset = group.zero()
        for k, c in zip(lam, C):
            if k:
                offset = offset + c * (sign * k)
        comps.extend(Component(c.shift + offset, c.generators) for c in D.components)
    return Region(tuple(comps))


def box_points(group: AbelianGroup, box: Box) -> Iterator[GroupElement]:
    if len(box) != group.rank:
        raise ValueError(f"box has {len(box)} ranges, group has rank {group.rank}")
    for lo, hi in box:
        if hi < lo:
            raise ValueError(f"box range {lo}:{hi} has negative extent")
    ranges = [range(lo, hi + 1) for lo, hi in box]
    for free in itertools.product(*ranges):
        for tors in group.torsion_classes():
            yield group.element(free, tors)
