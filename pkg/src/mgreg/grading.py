"""Finitely generated abelian groups ``Z^r + Z/m_1 + ... + Z/m_s`` and their elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import GroupMismatch


@dataclass(frozen=True)
class AbelianGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        for m in self.torsion:
            if m < 2:
                raise ValueError(f"torsion modulus {m} must be at least 2")

    def element(self, free: Iterable[int], torsion: Iterable[int] = ()) -> GroupElement:
        free = tuple(int(x) for x in free)
        torsion = tuple(int(x) for x in torsion)
        if not torsion and self.torsion:
            torsion = (0,) * len(self.torsion)
        if len(free) != self.rank or len(torsion) != len(self.torsion):
            raise GroupMismatch(
                f"element ({free}; {torsion}) does not fit Z^{self.rank} + {self.torsion}"
            )
        return GroupElement(free, torsion, self.torsion)

    def zero(self) -> GroupElement:
        return self.element((0,) * self.rank)

    def basis(self) -> list[GroupElement]:
        """Unit vectors of the free part."""
        out = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            out.append(self.element(v))
        return out

    def torsion_classes(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.torsion))

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for m in self.torsion:
            out *= m
        return out

    def parse(self, text: str) -> GroupElement:
        """Parse ``"1,0"`` or ``"1,0;1,1"`` (free part, then torsion after ``;``)."""
        free_txt, _, tors_txt = text.partition(";")
        free = [int(x) for x in free_txt.split(",") if x.strip()]
        tors = [int(x) for x in tors_txt.split(",") if x.strip()]
        return self.element(free, tors)

    def from_json(self, obj) -> GroupElement:
        if isinstance(obj, dict):
            return self.element(obj.get("free", ()), obj.get("torsion", ()))
        # bare list: free part only
        return self.element(obj)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True, order=True)
class GroupElement:
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    moduli: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if len(self.torsion) != len(self.moduli):
            raise GroupMismatch("torsion residues and moduli differ in length")
        if any(not 0 <= t < m for t, m in zip(self.torsion, self.moduli)):
            object.__setattr__(
                self, "torsion", tuple(t % m for t, m in zip(self.torsion, self.moduli))
            )

    @property
    def group(self) -> AbelianGroup:
        return AbelianGroup(len(self.free), self.moduli)

    def _check(self, other: GroupElement):
        if len(self.free) != len(other.free) or self.moduli != other.moduli:
            raise GroupMismatch(f"{self} and {other} live in different groups")

    def __add__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        self._check(other)
        return GroupElement(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple((a + b) % m for a, b, m in zip(self.torsion, other.torsion, self.moduli)),
            self.moduli,
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            tuple(-a for a in self.free),
            tuple((-a) % m for a, m in zip(self.torsion, self.moduli)),
            self.moduli,
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(
            tuple(k * a for a in self.free),
            tuple((k * a) % m for a, m in zip(self.torsion, self.moduli)),
            self.moduli,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    @property
    def vector(self) -> tuple[int, ...]:
        """Free coordinates followed by torsion residues."""
        return self.free + self.torsion

    def to_json(self) -> dict:
        return {"free": list(self.free), "torsion": list(self.torsion)}

    def __str__(self) -> str:
        s = ",".join(map(str, self.free))
        if self.torsion:
            s += ";" + ",".join(map(str, self.torsion))
        return s


def total(elements: Sequence[GroupElement], group: AbelianGroup) -> GroupElement:
    out = group.zero()
    for e in elements:
        out = out + e
    return out


def combination(coeffs: Sequence[int], elements: Sequence[GroupElement], group: AbelianGroup) -> GroupElement:
    out = group.zero()
    for k, e in zip(coeffs, elements):
        if k:
            out = out + e * k
    return out
