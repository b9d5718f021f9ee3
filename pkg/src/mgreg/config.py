"""JSON configuration files describing a grading setup.

Keys: ``group`` ({rank, torsion}), exactly one of ``degrees`` or ``rays``,
``chamber_point`` and/or ``triangulation`` (1-based facets), optional ``C``
and ``flags`` ({pointed_required, field}).  Rationals may be written as
integers or "p/q" strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .errors import InvalidSetup
from .fan import GradingSetup, build_setup, degrees_from_rays
from .grading import AbelianGroup

KNOWN_KEYS = {"group", "degrees", "rays", "chamber_point", "triangulation", "C", "flags", "name"}


@dataclass
class Config:
    setup: GradingSetup
    field: Optional[int] = None
    name: str = ""


def parse_field(text: str) -> Optional[int]:
    if text in ("Q", "QQ"):
        return None
    m = re.fullmatch(r"GF\((\d+)\)", text.replace(" ", ""))
    if not m:
        raise InvalidSetup(f"field must be 'Q' or 'GF(p)', got {text!r}")
    p = int(m.group(1))
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise InvalidSetup(f"GF({p}) is not a prime field")
    return p


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvalidSetup(f"expected an integer or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidSetup(f"bad rational {x!r}") from e


def _group(obj) -> AbelianGroup:
    if not isinstance(obj, dict) or "rank" not in obj:
        raise InvalidSetup("group must be an object with 'rank' (and optional 'torsion')")
    return AbelianGroup(int(obj["rank"]), tuple(int(m) for m in obj.get("torsion", [])))


def config_from_dict(obj: dict) -> Config:
    unknown = set(obj) - KNOWN_KEYS
    if unknown:
        raise InvalidSetup(f"unknown config keys: {sorted(unknown)}")
    if ("degrees" in obj) == ("rays" in obj):
        raise InvalidSetup("give exactly one of 'degrees' or 'rays'")
    if "chamber_point" not in obj and "triangulation" not in obj:
        raise InvalidSetup("give 'chamber_point' or 'triangulation'")
    flags = obj.get("flags", {})
    field = parse_field(flags.get("field", "Q"))
    pointed = bool(flags.get("pointed_required", True))

    rays = None
    if "rays" in obj:
        rays = [[int(x) for x in row] for row in obj["rays"]]
        if not rays or len({len(row) for row in rays}) != 1:
            raise InvalidSetup("rays must be a nonempty rectangular integer matrix")
        group, degrees = degrees_from_rays(rays)
        if "group" in obj and _group(obj["group"]) != group:
            raise InvalidSetup(f"declared group does not match the class group {group} of the rays")
    else:
        group = _group(obj.get("group", {}))
        degrees = [group.from_json(a) for a in obj["degrees"]]

    chamber = None
    if "chamber_point" in obj:
        chamber = [parse_rational(x) for x in obj["chamber_point"]]
    tri = None
    if "triangulation" in obj:
        tri = []
        for f in obj["triangulation"]:
            if any(int(v) < 1 for v in f):
                raise InvalidSetup("triangulation vertices are 1-based")
            tri.append([int(v) - 1 for v in f])
    C = [group.from_json(c) for c in obj["C"]] if "C" in obj else None
    setup = build_setup(
        group, degrees, chamber_point=chamber, triangulation=tri, C=C, rays=rays, require_pointed=pointed
    )
    return Config(setup, field, str(obj.get("name", "")))


def load_config(source: Union[str, Path, dict]) -> Config:
    if isinstance(source, dict):
        return config_from_dict(source)
    with open(source) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise InvalidSetup(f"{source}: not valid JSON ({e})") from e
    if not isinstance(obj, dict):
        raise InvalidSetup(f"{source}: top level must be an object")
    return config_from_dict(obj)


def load_json(path: Union[str, Path]):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise InvalidSetup(f"{path}: not valid JSON ({e})") from e
