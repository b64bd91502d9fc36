"""Command-line front end and report serialization.

Subcommands map one-to-one onto the library oracles. Machine output is jsonl
(one record per line, big integers as decimal strings so downstream JSON
parsers cannot truncate them) or csv with the same field names; the human
format prints aligned tables. Exit codes: 0 success, 1 scan completed but
violations found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

from . import plots, search
from .arith import SieveBudgetError
from .family import family_instance, family_margin_holds
from .model import (
    CaseDecomposition,
    FactorizationTriple,
    OffsetQuad,
    classify,
    cube_bound,
    gap,
    gap_lower_holds,
    sharp_bound,
    solve_quad,
    triple_from_points,
)

_FORMATS = ("jsonl", "csv", "human")
_WORKERS_ENV = "CLOSEFACT_WORKERS"


@dataclass(frozen=True)
class RunConfig:
    """Resolved common options of one CLI invocation."""

    subcommand: str
    output_format: str
    worker_count: int
    output_path: str | None
    plot_path: str | None


class _Writer:
    """Streams records in one of the three output formats.

    Human output buffers an initial window of rows to compute column widths,
    then streams; jsonl and csv stream immediately and byte-identically for
    identical record sequences.
    """

    _HUMAN_BUFFER = 1000

    def __init__(self, fmt: str, path: str | None):
        self.fmt = fmt
        self._own = path is not None and path != "-"
        self.stream: IO[str] = (
            open(path, "w", encoding="utf-8", newline="") if self._own else sys.stdout
        )
        self._csv = csv.writer(self.stream, lineterminator="\n") if fmt == "csv" else None
        self._csv_header: list[str] | None = None
        self._rows: list[dict] = []
        self._widths: list[int] | None = None
        self._keys: list[str] | None = None

    def write(self, rec: dict) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
        elif self.fmt == "csv":
            if self._csv_header is None:
                self._csv_header = list(rec.keys())
                self._csv.writerow(self._csv_header)
            self._csv.writerow([_cell(rec.get(k, "")) for k in self._csv_header])
        else:
            if self._widths is None:
                self._rows.append(rec)
                if len(self._rows) > self._HUMAN_BUFFER:
                    self._flush_human()
            else:
                self._write_human_row(rec)

    def _flush_human(self) -> None:
        if not self._rows:
            self._widths = []
            self._keys = []
            return
        self._keys = list(self._rows[0].keys())
        self._widths = [
            max(len(k), *(len(_cell(r.get(k, ""))) for r in self._rows))
            for k in self._keys
        ]
        header = "  ".join(k.rjust(w) for k, w in zip(self._keys, self._widths))
        self.stream.write(header + "\n")
        self.stream.write("  ".join("-" * w for w in self._widths) + "\n")
        rows, self._rows = self._rows, []
        for r in rows:
            self._write_human_row(r)

    def _write_human_row(self, rec: dict) -> None:
        cells = [
            _cell(rec.get(k, "")).rjust(w) for k, w in zip(self._keys, self._widths)
        ]
        self.stream.write("  ".join(cells) + "\n")

    def close(self) -> None:
        if self.fmt == "human" and self._widths is None:
            self._flush_human()
        self.stream.flush()
        if self._own:
            self.stream.close()


def _cell(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def _s(v: int) -> str:
    return str(v)


def _frac(fr: Fraction) -> str:
    if fr.denominator == 1:
        return str(fr.numerator)
    return f"{fr.numerator}/{fr.denominator}"


def _point(text: str) -> tuple[int, int]:
    try:
        x_raw, y_raw = text.split(",")
        return int(x_raw), int(y_raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a point as 'x,y' with integer parts, got {text!r}"
        ) from None


def _triple_fields(t: FactorizationTriple, c: CaseDecomposition) -> dict:
    q = t.quad
    return {
        "n": _s(t.n),
        "A": _s(t.A),
        "B": _s(t.B),
        "a1": _s(q.a1),
        "b1": _s(q.b1),
        "a2": _s(q.a2),
        "b2": _s(q.b2),
        "case": c.tag.value,
        "C": _s(q.C),
    }


def _no_solution_reason(q: OffsetQuad) -> str:
    d = q.d
    if d <= 0:
        return "d <= 0"
    b_num = q.b1 * q.b2 * (q.a2 - q.a1)
    if b_num % d:
        return "B not integral"
    B = b_num // d
    if B - q.b2 < 1:
        return "B - b2 < 1"
    a_num = q.a1 * (B - q.b1)
    if a_num <= 0 or a_num % q.b1:
        return "A not a positive integer"
    return "product identities failed"


def _gap_record(gr: search.GapRecord) -> dict:
    return {
        "kind": "gap",
        "n": _s(gr.n),
        "x1": _s(gr.x1),
        "x2": _s(gr.x2),
        "x3": _s(gr.x3),
        "y1": _s(gr.y1),
        "y2": _s(gr.y2),
        "y3": _s(gr.y3),
        "gap": _s(gr.gap),
        "margin": _s(gr.margin),
        "gap_ok": gr.gap_ok,
        "spread_ok": gr.spread_ok,
        "windows": _s(gr.windows),
    }


def _max_ab_record(entry: search.MaxEntry, violations: int) -> dict:
    def quad_cols(prefix: str, quad: OffsetQuad | None) -> dict:
        if quad is None:
            return {f"{prefix}_{k}": "" for k in ("a1", "b1", "a2", "b2")}
        return {
            f"{prefix}_a1": _s(quad.a1),
            f"{prefix}_b1": _s(quad.b1),
            f"{prefix}_a2": _s(quad.a2),
            f"{prefix}_b2": _s(quad.b2),
        }

    c = entry.C
    rec = {
        "kind": "max_ab",
        "C": _s(c),
        "solvable": _s(entry.solvable),
        "max_a": "" if entry.max_a is None else _s(entry.max_a),
        "max_a_n": "" if entry.max_a_n is None else _s(entry.max_a_n),
        **quad_cols("max_a", entry.max_a_quad),
        "max_b": "" if entry.max_b is None else _s(entry.max_b),
        "max_b_n": "" if entry.max_b_n is None else _s(entry.max_b_n),
        **quad_cols("max_b", entry.max_b_quad),
        "max_ab": "" if entry.max_ab is None else _s(entry.max_ab),
        "cube_bound": _s(cube_bound(c)),
        "sharp_bound": _frac(sharp_bound(c)),
        "sharp_applies": c >= 10,
        "case1_no_midpoint": _s(entry.case1_no_midpoint),
        "violations": _s(violations),
    }
    return rec


def _emit_violations(writer: _Writer, violations: list[dict[str, str]]) -> None:
    """Violations are first-class jsonl records; in csv/human they go to the
    diagnostic stream so the table schema stays homogeneous."""
    for v in violations:
        if writer.fmt == "jsonl":
            writer.write({"kind": "violation", **v})
        else:
            print("violation: " + " ".join(f"{k}={val}" for k, val in v.items()),
                  file=sys.stderr)


def _resolve_workers(args: argparse.Namespace) -> int:
    w = getattr(args, "workers", None)
    if w is None:
        raw = os.environ.get(_WORKERS_ENV)
        if raw is None:
            return 1
        try:
            w = int(raw)
        except ValueError:
            raise ValueError(f"{_WORKERS_ENV} must be an integer, got {raw!r}") from None
    if w < 1:
        raise ValueError("worker count must be >= 1")
    return w


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.command,
        output_format=args.format,
        worker_count=_resolve_workers(args),
        output_path=args.output,
        plot_path=getattr(args, "plot", None),
    )


# ---------------------------------------------------------------- handlers


def _cmd_solve(args: argparse.Namespace) -> int:
    cfg = _config(args)
    quad = OffsetQuad(args.a1, args.b1, args.a2, args.b2)
    triple = solve_quad(quad)
    writer = _Writer(cfg.output_format, cfg.output_path)
    try:
        if triple is None:
            writer.write(
                {
                    "kind": "solve",
                    "solvable": False,
                    "a1": _s(quad.a1),
                    "b1": _s(quad.b1),
                    "a2": _s(quad.a2),
                    "b2": _s(quad.b2),
                    "d": _s(quad.d),
                    "C": _s(quad.C),
                    "reason": _no_solution_reason(quad),
                }
            )
        else:
            c = classify(triple)
            writer.write(
                {
                    "kind": "solve",
                    "solvable": True,
                    **_triple_fields(triple, c),
                    "d": _s(quad.d),
                }
            )
    finally:
        writer.close()
    return 0


def _cmd_quad_from_points(args: argparse.Namespace) -> int:
    cfg = _config(args)
    triple = triple_from_points(args.p1, args.p2, args.p3)
    c = classify(triple)
    roundtrip = solve_quad(triple.quad) == triple
    writer = _Writer(cfg.output_format, cfg.output_path)
    try:
        writer.write(
            {
                "kind": "quad",
                **_triple_fields(triple, c),
                "d": _s(triple.quad.d),
                "roundtrip": roundtrip,
            }
        )
    finally:
        writer.close()
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    quad = OffsetQuad(args.a1, args.b1, args.a2, args.b2)
    triple = solve_quad(quad)
    if triple is None:
        print(
            f"error: quad ({quad.a1},{quad.b1},{quad.a2},{quad.b2}) has no solution: "
            + _no_solution_reason(quad),
            file=sys.stderr,
        )
        return 2
    c = classify(triple)
    rec = {
        "kind": "classify",
        **_triple_fields(triple, c),
        "d": _s(quad.d),
    }
    if c.tag.value == "Case1":
        rec["midpoint_absent"] = c.midpoint_absent
    for key in ("M", "A_prime", "A_dprime", "B_prime", "h", "k", "l"):
        if key in c.witnesses:
            rec[key] = _s(c.witnesses[key])
    writer = _Writer(cfg.output_format, cfg.output_path)
    try:
        writer.write(rec)
    finally:
        writer.close()
    return 0


def _cmd_family(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.n is not None:
        if args.lo is not None or args.hi is not None:
            raise ValueError("give either --n or --from/--to, not both")
        lo = hi = args.n
    else:
        if args.lo is None or args.hi is None:
            raise ValueError("need --n, or both --from and --to")
        lo, hi = args.lo, args.hi
    if lo < 1 or lo > hi:
        raise ValueError("need 1 <= from <= to")
    writer = _Writer(cfg.output_format, cfg.output_path)
    rows: list[dict] = []
    try:
        for N in range(lo, hi + 1):
            inst = family_instance(N)
            c = classify(inst.triple)
            margin_ok, cert = family_margin_holds(N)
            lower_ok, _ = gap_lower_holds(inst.lattice)
            rec = {
                "kind": "family",
                "N": _s(N),
                **_triple_fields(inst.triple, c),
                "x1": _s(inst.lattice.xs[0]),
                "x2": _s(inst.lattice.xs[1]),
                "x3": _s(inst.lattice.xs[2]),
                "y1": _s(inst.lattice.ys[0]),
                "y2": _s(inst.lattice.ys[1]),
                "y3": _s(inst.lattice.ys[2]),
                "gap": _s(gap(inst.lattice)),
                "attains_bound": 4 * max(inst.triple.A, inst.triple.B)
                == inst.C * (inst.C - 1) ** 2,
                "gap_lower_ok": lower_ok,
                "upper_margin_ok": margin_ok,
                "upper_margin_lhs": _s(cert.lhs),
                "upper_margin_rhs": _s(cert.rhs),
            }
            writer.write(rec)
            rows.append(rec)
    finally:
        writer.close()
    if cfg.plot_path:
        plots.save_family_figure(rows, cfg.plot_path)
    return 0


def _cmd_scan_c(args: argparse.Namespace) -> int:
    cfg = _config(args)
    lo, hi = args.lo, args.hi
    if lo < 2 or lo > hi:
        raise ValueError("need 2 <= from <= to")
    writer = _Writer(cfg.output_format, cfg.output_path)
    rows: list[dict] = []
    total_violations = 0
    try:
        for c_val in range(lo, hi + 1):
            report = search.max_ab(c_val)
            rec = _max_ab_record(report.maxima[0], len(report.violations))
            writer.write(rec)
            rows.append(rec)
            _emit_violations(writer, report.violations)
            total_violations += len(report.violations)
    finally:
        writer.close()
    print(
        f"scan-c [{lo}, {hi}]: {len(rows)} ceilings, "
        f"violations={total_violations}",
        file=sys.stderr,
    )
    if cfg.plot_path:
        plots.save_max_ab_figure(rows, cfg.plot_path)
    return 1 if total_violations else 0


def _cmd_scan_gaps(args: argparse.Namespace) -> int:
    cfg = _config(args)
    lo, hi = args.lo, args.hi
    if lo < 2 or lo > hi:
        raise ValueError("need 2 <= from <= to")
    writer = _Writer(cfg.output_format, cfg.output_path)
    stride = plots.thin_stride(hi - lo + 1)
    points: list[tuple[int, int]] = []

    def sink(gr: search.GapRecord) -> None:
        writer.write(_gap_record(gr))
        if cfg.plot_path and (gr.n - lo) % stride == 0:
            points.append((gr.n, gr.gap))

    try:
        report = search.scan_gaps(lo, hi, workers=cfg.worker_count, record_sink=sink)
        _emit_violations(writer, report.violations)
    finally:
        writer.close()
    mm = report.min_margin
    mm_text = f"min margin {mm['margin']} at n={mm['n']}" if mm else "no triples"
    print(
        f"scan-gaps [{lo}, {hi}]: {report.stats['with_triples']}/"
        f"{report.stats['numbers']} n with triples, "
        f"{report.stats['windows']} windows, {mm_text}, "
        f"violations={report.stats['violations']}, "
        f"{report.elapsed:.1f}s, workers={cfg.worker_count}",
        file=sys.stderr,
    )
    if cfg.plot_path:
        plots.save_gap_figure(points, cfg.plot_path)
    return 1 if report.violations else 0


def _cmd_triples(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.n < 2:
        raise ValueError("need n >= 2")
    found = search.triples_for_n(args.n, cap=args.cap, consecutive_only=args.consecutive)
    writer = _Writer(cfg.output_format, cfg.output_path)
    try:
        for t in found:
            writer.write({"kind": "triple", **_triple_fields(t, classify(t))})
    finally:
        writer.close()
    print(f"triples n={args.n}: {len(found)} found", file=sys.stderr)
    return 0


def _cmd_cross_check(args: argparse.Namespace) -> int:
    cfg = _config(args)
    report = search.cross_check(args.n_max, args.cap)
    writer = _Writer(cfg.output_format, cfg.output_path)
    try:
        writer.write(
            {
                "kind": "cross_check",
                "n_max": _s(args.n_max),
                "cap": _s(args.cap),
                "quad_route": _s(report.stats["quad_route"]),
                "divisor_route": _s(report.stats["divisor_route"]),
                "common": _s(report.stats["common"]),
                "agree": not report.violations,
            }
        )
        _emit_violations(writer, report.violations)
    finally:
        writer.close()
    return 1 if report.violations else 0


# ----------------------------------------------------------------- parser


def _add_quad_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--a1", type=int, required=True, help="first x-offset (a1 >= 1)")
    sp.add_argument("--b1", type=int, required=True, help="first y-offset (b1 >= 1)")
    sp.add_argument("--a2", type=int, required=True, help="second x-offset (a2 > a1)")
    sp.add_argument("--b2", type=int, required=True, help="second y-offset (b2 > b1)")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=_FORMATS, default="human", help="output format"
    )
    common.add_argument(
        "--output", default="-", metavar="PATH", help="output file ('-' = stdout)"
    )

    parser = argparse.ArgumentParser(
        prog="closefact",
        description=(
            "Construct, classify and exhaustively verify integers with three "
            "close factorizations n = A*B = (A+a1)(B-b1) = (A+a2)(B-b2)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sp = sub.add_parser("solve", parents=[common], help="solve an offset quad for (A, B, n)")
    _add_quad_args(sp)
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser(
        "quad-from-points",
        parents=[common],
        help="recover the offset quad from three factorizations",
    )
    for name in ("--p1", "--p2", "--p3"):
        sp.add_argument(name, type=_point, required=True, metavar="X,Y")
    sp.set_defaults(func=_cmd_quad_from_points)

    sp = sub.add_parser(
        "classify", parents=[common], help="classify a solvable quad and show witnesses"
    )
    _add_quad_args(sp)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser(
        "family", parents=[common], help="extremal family instances (single N or range)"
    )
    sp.add_argument("--n", type=int, default=None, help="single family index N >= 1")
    sp.add_argument("--from", dest="lo", type=int, default=None, help="range start")
    sp.add_argument("--to", dest="hi", type=int, default=None, help="range end")
    sp.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")
    sp.set_defaults(func=_cmd_family)

    sp = sub.add_parser(
        "scan-c", parents=[common], help="maxima of A and B per ceiling C over a range"
    )
    sp.add_argument("--from", dest="lo", type=int, required=True, help="first ceiling")
    sp.add_argument("--to", dest="hi", type=int, required=True, help="last ceiling")
    sp.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")
    sp.set_defaults(func=_cmd_scan_c)

    sp = sub.add_parser(
        "scan-gaps",
        parents=[common],
        help="verify the exact gap lower bounds for every n in a range",
    )
    sp.add_argument("--from", dest="lo", type=int, required=True, help="first n")
    sp.add_argument("--to", dest="hi", type=int, required=True, help="last n")
    sp.add_argument(
        "--workers",
        type=int,
        default=None,
        help=f"worker processes (default 1; env {_WORKERS_ENV})",
    )
    sp.add_argument("--plot", metavar="PATH", help="also render a figure to PATH")
    sp.set_defaults(func=_cmd_scan_gaps)

    sp = sub.add_parser(
        "triples", parents=[common], help="all close-factorization triples of one n"
    )
    sp.add_argument("--n", type=int, required=True, help="the integer to inspect")
    sp.add_argument("--cap", type=int, default=None, help="keep only a2, b2 <= CAP")
    sp.add_argument(
        "--consecutive",
        action="store_true",
        help="restrict to consecutive divisor triples",
    )
    sp.set_defaults(func=_cmd_triples)

    sp = sub.add_parser(
        "cross-check",
        parents=[common],
        help="compare quad enumeration against per-n divisor enumeration",
    )
    sp.add_argument("--n-max", type=int, required=True, help="largest n to compare")
    sp.add_argument("--c", dest="cap", type=int, required=True, help="offset ceiling")
    sp.set_defaults(func=_cmd_cross_check)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    try:
        return args.func(args)
    except SieveBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
