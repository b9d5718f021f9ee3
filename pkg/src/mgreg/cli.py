"""Command-line front end.

Exit codes: 0 true / success, 1 false, 2 incomplete, 3 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional, Sequence

from .config import Config, load_config, load_json
from .errors import MgregError
from .grading import GroupElement
from .local_cohomology import cech_dimensions, formula_dimensions, support_table
from .region import box_points
from .regularity import (
    BettiTable,
    PointSet,
    Verdict,
    fujita_witness,
    is_regular_S,
    multiplication_surjective,
    points_regularity,
    resolution_bound,
    validate_points,
)

EXIT_TRUE, EXIT_FALSE, EXIT_INCOMPLETE, EXIT_ERROR = 0, 1, 2, 3

# flags whose values may start with '-' (negative degrees, boxes)
VALUE_FLAGS = {"--m", "--p", "--q", "--u", "--box", "--window", "--i", "--level"}


def parse_box(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise ValueError(f"box range {part!r} must look like lo:hi")
        out.append((int(lo), int(hi)))
    return out


def monomial(support: Sequence[int]) -> str:
    return "".join(f"x{i + 1}" for i in support) or "1"


def verdict_code(v: Verdict) -> int:
    return {Verdict.TRUE: EXIT_TRUE, Verdict.FALSE: EXIT_FALSE, Verdict.INCOMPLETE: EXIT_INCOMPLETE}[v]


def _elements(elems) -> str:
    return "  ".join(f"[{e}]" for e in elems) if elems else "(none)"


# --------------------------------------------------------------------------
# commands


def cmd_analyze(cfg: Config, args) -> int:
    s = cfg.setup
    tors = "".join(f" + Z/{m}" for m in s.group.torsion)
    print(f"n = {s.n}, r = {s.r}, d = {s.d}")
    print(f"group: Z^{s.r}{tors}")
    print("degrees: " + _elements(s.degrees))
    print("facets: " + " ".join("{" + ",".join(str(v + 1) for v in f) + "}" for f in s.complex.facets))
    print("B: " + ", ".join(monomial(g) for g in s.irrelevant_ideal))
    for label, fn in (("K", s.generators_K), ("Ksat", s.generators_Ksat)):
        try:
            print(f"{label} generators: " + _elements(fn()))
        except MgregError as e:
            print(f"{label} generators: Unsupported ({e})")
    print("C: " + _elements(s.C))
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    print(
        f"flags: pointed={yn(s.pointed)} acyclic={yn(s.acyclic)} toric={yn(s.toric)} "
        f"C_in_K={yn(s.C_in_K)}"
    )
    if s.zero_variables:
        print("zero-degree variables: " + ", ".join(f"x{i + 1}" for i in s.zero_variables))
    for note in s.notes:
        print(f"note: {note}")
    return EXIT_TRUE


def cmd_lc_support(cfg: Config, args) -> int:
    table = support_table(cfg.setup, cfg.field)
    if args.json:
        print(json.dumps(table.to_json(), indent=2))
        return EXIT_TRUE
    for i in table.nonzero_rows:
        for e in table.row(i):
            sigma = "{" + ",".join(str(j + 1) for j in e.sigma) + "}"
            gens = _elements(e.region.generators)
            print(f"H^{i}: sigma={sigma} mult={e.mult} region=[{e.region.shift}] + N{{{gens}}}")
    if not table.nonzero_rows:
        print("all local cohomology of S vanishes")
    return EXIT_TRUE


def cmd_cech(cfg: Config, args) -> int:
    u = [int(x) for x in args.u.split(",")]
    dims = cech_dimensions(cfg.setup, u, cfg.field)
    formula = formula_dimensions(cfg.setup, u, cfg.field)
    print(f"dim H^{args.i} = {dims.get(args.i, 0)} (subcomplex formula: {formula.get(args.i, 0)})")
    return EXIT_TRUE


def cmd_reg_test(cfg: Config, args) -> int:
    m = cfg.setup.group.parse(args.m)
    v = is_regular_S(cfg.setup, m, args.level, args.method)
    print(f"m = {m}, level {args.level}: {v.value}")
    return verdict_code(v)


def _write_svg(path: str, box, verdicts: dict[GroupElement, Verdict], cell: int = 20) -> None:
    (x0, x1), (y0, y1) = box
    width, height = (x1 - x0 + 1) * cell, (y1 - y0 + 1) * cell
    colors = {Verdict.TRUE: "#1f77b4", Verdict.FALSE: "#ffffff", Verdict.INCOMPLETE: "#bbbbbb"}
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for p, v in verdicts.items():
        x, y = p.free
        px, py = (x - x0) * cell, (y1 - y) * cell
        lines.append(
            f'<rect x="{px}" y="{py}" width="{cell}" height="{cell}" fill="{colors[v]}" '
            f'stroke="#000000" stroke-width="1"><title>{p} {v.value}</title></rect>'
        )
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _write_csv(path: str, verdicts: dict) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["degree", "verdict"])
        for p, v in verdicts.items():
            w.writerow([str(p), v.value if isinstance(v, Verdict) else str(v).lower()])


def _print_raster(group, box, verdicts: dict) -> None:
    """2D pictures with y increasing upward; other ranks as one line per point."""
    sym = {Verdict.TRUE: "#", Verdict.FALSE: ".", Verdict.INCOMPLETE: "?", True: "#", False: "."}
    if group.rank == 2 and not group.torsion:
        (x0, x1), (y0, y1) = box
        print(f"x = {x0}..{x1} left to right, y = {y1}..{y0} top to bottom")
        for y in range(y1, y0 - 1, -1):
            print("".join(sym[verdicts[group.element((x, y))]] for x in range(x0, x1 + 1)))
    else:
        for p, v in verdicts.items():
            print(f"{p}\t{v.value if isinstance(v, Verdict) else str(v).lower()}")


def _window_verdicts(cfg: Config, box, fn) -> dict:
    return {p: fn(p) for p in box_points(cfg.setup.group, box)}


def _finish_window(cfg: Config, args, box, verdicts: dict) -> int:
    _print_raster(cfg.setup.group, box, verdicts)
    if getattr(args, "csv", None):
        _write_csv(args.csv, verdicts)
    if getattr(args, "svg", None):
        if cfg.setup.group.rank != 2 or cfg.setup.group.torsion:
            raise MgregError("SVG output needs a torsion-free group of rank 2")
        _write_svg(args.svg, box, {p: v if isinstance(v, Verdict) else Verdict.of(v) for p, v in verdicts.items()})
    return EXIT_INCOMPLETE if any(v is Verdict.INCOMPLETE for v in verdicts.values()) else EXIT_TRUE


def cmd_reg_window(cfg: Config, args) -> int:
    box = parse_box(args.box)
    verdicts = _window_verdicts(cfg, box, lambda p: is_regular_S(cfg.setup, p, args.level, args.method))
    return _finish_window(cfg, args, box, verdicts)


def cmd_res_bound(cfg: Config, args) -> int:
    betti = BettiTable.from_json(load_json(args.betti), cfg.setup.group)
    if args.m is not None:
        m = cfg.setup.group.parse(args.m)
        v = resolution_bound(cfg.setup, betti, m)
        print(f"p = {m}: {v.value}")
        return verdict_code(v)
    box = parse_box(args.window)
    verdicts = _window_verdicts(cfg, box, lambda p: resolution_bound(cfg.setup, betti, p))
    return _finish_window(cfg, args, box, verdicts)


def cmd_points_reg(cfg: Config, args) -> int:
    pts = PointSet.from_json(load_json(args.points))
    validate_points(cfg.setup, pts)
    if args.m is not None:
        m = cfg.setup.group.parse(args.m)
        ok = points_regularity(cfg.setup, pts, m, validate=False)
        print(f"m = {m}: {'true' if ok else 'false'}")
        return EXIT_TRUE if ok else EXIT_FALSE
    box = parse_box(args.window)
    verdicts = _window_verdicts(cfg, box, lambda p: Verdict.of(points_regularity(cfg.setup, pts, p, validate=False)))
    return _finish_window(cfg, args, box, verdicts)


def cmd_mult_surjective(cfg: Config, args) -> int:
    p, q = cfg.setup.group.parse(args.p), cfg.setup.group.parse(args.q)
    ok = multiplication_surjective(cfg.setup, p, q)
    print(f"S_{p} x S_{q} -> S_{p + q}: {'surjective' if ok else 'not surjective'}")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_hilbert_basis(cfg: Config, args) -> int:
    gens = cfg.setup.generators_K() if args.semigroup == "K" else cfg.setup.generators_Ksat()
    print(f"{args.semigroup}: {len(gens)} generators")
    for g in gens:
        print(str(g))
    return EXIT_TRUE


def cmd_fujita(cfg: Config, args) -> int:
    res = fujita_witness(cfg.setup)
    print(f"m = {res.m} ({res.status})")
    return EXIT_TRUE if res.status == "Certified" else EXIT_INCOMPLETE


# --------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the error code rather than argparse's 2, which means incomplete here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mgreg", description="Multigraded regularity of toric coordinate rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config", help="JSON configuration file")
        p.set_defaults(fn=fn)
        return p

    add("analyze", cmd_analyze, "print the triangulation, B, semigroup generators and flags")
    p = add("lc-support", cmd_lc_support, "support regions of the local cohomology of S")
    p.add_argument("--json", action="store_true")
    p = add("cech", cmd_cech, "Cech oracle for dim H^i_B(S)_u")
    p.add_argument("--u", required=True, help="exponent vector, e.g. 1,-1,0,2")
    p.add_argument("--i", required=True, type=int)
    for name, fn, help_ in (
        ("reg-test", cmd_reg_test, "is m in reg(S)?"),
        ("reg-window", cmd_reg_window, "regularity raster over a box"),
    ):
        p = add(name, fn, help_)
        if name == "reg-test":
            p.add_argument("--m", required=True, help="degree: free part, torsion after ';'")
        else:
            p.add_argument("--box", required=True, help="lo:hi per coordinate, e.g. -1:3,-1:3")
            p.add_argument("--svg")
            p.add_argument("--csv")
        p.add_argument("--level", type=int, default=0)
        p.add_argument("--method", choices=["auto", "criterion", "definition", "window"], default="auto")
    p = add("res-bound", cmd_res_bound, "inner bound on reg(M) from a Betti table")
    p.add_argument("--betti", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m")
    g.add_argument("--window")
    p.add_argument("--svg")
    p.add_argument("--csv")
    p = add("points-reg", cmd_points_reg, "regularity of a reduced set of points")
    p.add_argument("--points", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m")
    g.add_argument("--window")
    p.add_argument("--svg")
    p.add_argument("--csv")
    p = add("mult-surjective", cmd_mult_surjective, "is S_p x S_q -> S_(p+q) onto?")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p = add("hilbert-basis", cmd_hilbert_basis, "minimal generators of K or K^sat")
    p.add_argument("--semigroup", choices=["K", "Ksat"], required=True)
    add("fujita", cmd_fujita, "a degree m with m + K^sat free of local cohomology")
    return parser


def _join_values(argv: Sequence[str]) -> list[str]:
    """Glue ``--flag value`` into ``--flag=value`` so values like -1,0 are not read as options."""
    out = []
    it = iter(range(len(argv)))
    skip = False
    for k in it:
        if skip:
            skip = False
            continue
        tok = argv[k]
        if tok in VALUE_FLAGS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_join_values(argv))
    try:
        cfg = load_config(args.config)
        return args.fn(cfg, args)
    except (MgregError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
