"""Command-line front end.

Subcommands: coh (cohomology of a class, optionally along a twist range),
check (natural / unconditional vanishing of a model w.r.t. a twisting
class), construct (rank-2 extension with certificates and stability),
classify / enumerate (region sweeps), audit (desk-scale claim checks),
oracle (closed form vs brute force).

Output formats: table (default), csv, json; the HIRZEBRUCH_FORMAT
environment variable changes the default.  JSON output is one object with
fields command, inputs, results, findings, in that order, deterministic
for fixed inputs.  Exit codes: 0 success, 1 oracle mismatch, 2 usage
error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from typing import Any, Optional, Sequence

from .audit import CLAIMS, run_audit
from .bundles import (
    ExtensionDatum,
    audit_extension_natural,
    classify_region,
    construct_extension,
    section_count_bounds,
    stability_certificate,
)
from .cohomology import chi, h0, h1, h2, h1_vanishes, oracle_h0, triple
from .natural import (
    DirectSum,
    Line,
    SheafModel,
    direct_sum_natural_wrt_m,
    line_natural_wrt_m,
    line_natural_wrt_r,
    line_unconditional_wrt_m,
    scan_verdict,
    unconditional_scan,
)
from .picard import DivisorClass, DomainError, Surface
from .sheaves import IdealSheafModel, Locus, PointConfig

FORMATS = ("table", "csv", "json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's default error handling prints usage plus the message;
    # the contract here is a single diagnostic line and exit code 2
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)

    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        # ranges and pairs may open with a negative integer ("-5..6",
        # "-1,2"); stock argparse would read those as option strings
        self._negative_number_matcher = re.compile(r"^-\d")


# ---------------------------------------------------------------------------
# token parsing; every failure names the offending token


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise UsageError(f"{what}: not an integer: '{token}'") from None


def _parse_pair(token: str) -> DivisorClass:
    parts = token.split(",")
    if len(parts) != 2:
        raise UsageError(f"class must be 'A,B': '{token}'")
    return DivisorClass(_parse_int(parts[0], "class"), _parse_int(parts[1], "class"))


def _parse_range(token: str) -> tuple[int, int]:
    try:
        if ".." in token:
            lo_s, _, hi_s = token.partition("..")
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(token)
    except ValueError:
        raise UsageError(f"range must be 'FROM..TO' with integers: '{token}'") from None
    if lo > hi:
        raise UsageError(f"range is empty: '{token}'")
    return lo, hi


def _parse_sum(token: str) -> list[DivisorClass]:
    items = [part for part in token.split(";") if part != ""]
    if not items:
        raise UsageError(f"sum must be 'U1,V1;U2,V2;...': '{token}'")
    return [_parse_pair(part) for part in items]


def _parse_ideal(token: str) -> tuple[Locus, int, DivisorClass]:
    parts = token.split(":")
    if len(parts) != 3:
        raise UsageError(f"ideal must be 'LOCUS:Z:U,V': '{token}'")
    locus_s, z_s, cls_s = parts
    try:
        locus = Locus(locus_s)
    except ValueError:
        raise UsageError(
            f"locus must be one of general, section, fiber: '{locus_s}'"
        ) from None
    return locus, _parse_int(z_s, "ideal point count"), _parse_pair(cls_s)


def _parse_extension(token: str) -> tuple[int, int, int, int]:
    parts = token.split(",")
    if len(parts) != 4:
        raise UsageError(f"extension must be 'U,V,M,S': '{token}'")
    u, v, m, s = (_parse_int(p, "extension") for p in parts)
    return u, v, m, s


def _parse_wrt(token: str, surface: Surface) -> DivisorClass:
    if token == "M":
        return surface.m_class()
    if token == "R":
        return surface.r_class()
    return _parse_pair(token)


# ---------------------------------------------------------------------------
# output plumbing


class Report:
    """One invocation's worth of output, renderable in all three formats."""

    def __init__(self, command: str, inputs: dict[str, Any]) -> None:
        self.command = command
        self.inputs = inputs
        self.results: dict[str, Any] = {}
        self.findings: list[dict[str, Any]] = []
        self.csv_header: list[str] = []
        self.csv_rows: list[list[Any]] = []
        self.table_lines: list[str] = []
        self.exit_code = 0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            record = {
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "findings": self.findings,
            }
            return json.dumps(record, indent=2)
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(self.csv_header)
            writer.writerows(self.csv_rows)
            return buf.getvalue().rstrip("\n")
        return "\n".join(self.table_lines)


def _verdict_dict(verdict) -> dict[str, Any]:
    out: dict[str, Any] = {"outcome": verdict.outcome.value, "holds": verdict.holds()}
    if verdict.witness_t is not None:
        out["witness_t"] = verdict.witness_t
        out["witness_h0"] = verdict.witness_h0
        out["witness_h1"] = verdict.witness_h1
    return out


def _witness_str(verdict) -> str:
    if verdict.witness_t is None:
        return ""
    return f"t={verdict.witness_t} h0={verdict.witness_h0} h1={verdict.witness_h1}"


def _intervals_str(witness: tuple[tuple[int, int], ...]) -> str:
    return ";".join(f"{lo}..{hi}" for lo, hi in witness)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_coh(args: argparse.Namespace) -> Report:
    surface = Surface(args.e)
    cls = _parse_pair(args.cls)
    if (args.twist_by is None) != (args.t is None):
        raise UsageError("--twist-by and --t must be given together")
    if args.twist_by is None:
        report = Report("coh", {"e": args.e, "class": args.cls})
        values = triple(surface, cls)
        report.results = {
            "h0": values.h0,
            "h1": values.h1,
            "h2": values.h2,
            "chi": values.chi(),
        }
        report.csv_header = ["h0", "h1", "h2", "chi"]
        report.csv_rows = [[values.h0, values.h1, values.h2, values.chi()]]
        report.table_lines = [f"h0={values.h0} h1={values.h1} h2={values.h2}"]
        return report

    by = _parse_pair(args.twist_by)
    t_lo, t_hi = _parse_range(args.t)
    report = Report(
        "coh",
        {"e": args.e, "class": args.cls, "twist_by": args.twist_by, "t": args.t},
    )
    rows = []
    for t in range(t_lo, t_hi + 1):
        shifted = DivisorClass(cls.a + t * by.a, cls.b + t * by.b)
        values = triple(surface, shifted)
        rows.append(
            {"t": t, "h0": values.h0, "h1": values.h1, "h2": values.h2, "chi": values.chi()}
        )
    report.results = {"rows": rows}
    report.csv_header = ["t", "h0", "h1", "h2", "chi"]
    report.csv_rows = [[r["t"], r["h0"], r["h1"], r["h2"], r["chi"]] for r in rows]
    report.table_lines = [
        f"t={r['t']:>3}  h0={r['h0']} h1={r['h1']} h2={r['h2']} chi={r['chi']}" for r in rows
    ]
    return report


def _check_model(args: argparse.Namespace) -> tuple[SheafModel, dict[str, Any]]:
    given = [name for name in ("line", "sum", "ideal", "extension") if getattr(args, name)]
    if len(given) != 1:
        raise UsageError("exactly one of --line, --sum, --ideal, --extension is required")
    kind = given[0]
    if kind == "line":
        return Line(_parse_pair(args.line)), {"line": args.line}
    if kind == "sum":
        return DirectSum(tuple(_parse_sum(args.sum))), {"sum": args.sum}
    locus, z, cls = _parse_ideal(args.ideal)
    return (
        IdealSheafModel(PointConfig(z=z, locus=locus), cls),
        {"ideal": args.ideal},
    )


def _cmd_check(args: argparse.Namespace) -> Report:
    surface = Surface(args.e)
    if args.extension:
        if args.wrt != "M":
            raise UsageError("--extension checks are defined w.r.t. M only")
        u, v, m, s = _parse_extension(args.extension)
        if args.pp:
            raise UsageError("--pp applies to line, sum, and ideal models only")
        inputs = {"e": args.e, "extension": args.extension, "wrt": "M"}
        datum = construct_extension(surface, u, v, m, s)
        audit = audit_extension_natural(datum)
        report = Report("check", inputs)
        report.results = _verdict_dict(audit.verdict)
        report.results["scanned_t"] = [audit.scan_start, audit.scan_stop]
    else:
        model, model_inputs = _check_model(args)
        by = _parse_wrt(args.wrt, surface)
        inputs: dict[str, Any] = {"e": args.e}
        inputs.update(model_inputs)
        inputs["wrt"] = args.wrt
        inputs["pp"] = bool(args.pp)
        if args.pp:
            evidence = unconditional_scan(surface, model, by)
        else:
            evidence = scan_verdict(surface, model, by)
        report = Report("check", inputs)
        report.results = _verdict_dict(evidence.verdict)
        report.results["scanned_t"] = [evidence.rows[0][0], evidence.rows[-1][0]]
        closed = _closed_form(surface, model, by, args.wrt, bool(args.pp))
        if closed is not None:
            report.results["closed_form"] = closed

    outcome = report.results["outcome"]
    report.csv_header = ["outcome", "holds", "witness_t", "witness_h0", "witness_h1"]
    report.csv_rows = [
        [
            outcome,
            report.results["holds"],
            report.results.get("witness_t", ""),
            report.results.get("witness_h0", ""),
            report.results.get("witness_h1", ""),
        ]
    ]
    witness = _witness_str_from(report.results)
    line = f"{str(report.results['holds']).lower()} ({outcome})"
    if witness:
        line += f" witness {witness}"
    report.table_lines = [line]
    return report


def _witness_str_from(results: dict[str, Any]) -> str:
    if "witness_t" not in results:
        return ""
    return (
        f"t={results['witness_t']} "
        f"(h0,h1)=({results['witness_h0']},{results['witness_h1']})"
    )


def _closed_form(
    surface: Surface, model: SheafModel, by: DivisorClass, wrt: str, two_sided: bool
) -> Optional[bool]:
    if isinstance(model, Line):
        if wrt == "M":
            if two_sided:
                return line_unconditional_wrt_m(surface, model.cls)
            return line_natural_wrt_m(surface, model.cls)
        if wrt == "R" and not two_sided:
            return line_natural_wrt_r(surface, model.cls)
    if isinstance(model, DirectSum) and wrt == "M" and not two_sided:
        return direct_sum_natural_wrt_m(surface, list(model.classes))
    return None


def _stability_summary(datum: ExtensionDatum) -> dict[str, Any]:
    out = {}
    for pol in ("R", "M"):
        report = stability_certificate(datum, pol)
        out[pol] = {
            "certified": report.certified,
            "candidates": [
                {
                    "class": str(c.cls),
                    "reason": c.reason,
                    "tail": c.tail,
                }
                for c in report.candidates
            ],
            "warnings": list(report.warnings),
        }
    return out


def _cmd_construct(args: argparse.Namespace) -> Report:
    surface = Surface(args.e)
    inputs = {"e": args.e, "u": args.u, "v": args.v, "m": args.m, "s": args.s}
    datum = construct_extension(surface, args.u, args.v, args.m, args.s)
    a_lo, b_hi = section_count_bounds(surface, args.u, args.v, args.m)
    chern = datum.chern()
    report = Report("construct", inputs)
    report.results = {
        "sub": str(datum.sub),
        "quotient_class": str(datum.quotient.cls),
        "points": datum.s,
        "s_range": [a_lo, b_hi],
        "c1": str(chern.c1),
        "c2": chern.c2,
        "section_min": datum.section_min,
        "cayley_bacharach": datum.cayley_bacharach,
        "ext_forced_split": datum.ext_forced_split,
    }
    if args.m == 0:
        report.results["stability"] = _stability_summary(datum)
    else:
        report.results["stability"] = "only computed for m = 0"
    report.csv_header = [
        "e", "u", "v", "m", "s", "sub", "quotient_class", "c2",
        "section_min", "cayley_bacharach", "ext_forced_split",
        "s_lo", "s_hi", "stable_R", "stable_M",
    ]
    if args.m == 0:
        stable_r = report.results["stability"]["R"]["certified"]
        stable_m = report.results["stability"]["M"]["certified"]
    else:
        stable_r = stable_m = ""
    report.csv_rows = [
        [
            args.e, args.u, args.v, args.m, args.s,
            str(datum.sub), str(datum.quotient.cls), chern.c2,
            datum.section_min, datum.cayley_bacharach, datum.ext_forced_split,
            a_lo, b_hi, stable_r, stable_m,
        ]
    ]
    lines = [
        f"extension 0 -> O{datum.sub} -> E -> I_Z{datum.quotient.cls} -> 0, |Z| = {datum.s}",
        f"c1 = {chern.c1}, c2 = {chern.c2}, admissible s in [{a_lo}, {b_hi}]",
        f"section_min={datum.section_min} cayley_bacharach={datum.cayley_bacharach} "
        f"ext_forced_split={datum.ext_forced_split}",
    ]
    if args.m == 0:
        for pol in ("R", "M"):
            info = report.results["stability"][pol]
            status = "certified" if info["certified"] else "NOT certified"
            lines.append(
                f"stability w.r.t. {pol}: {status} "
                f"({len(info['candidates'])} candidates)"
                + (f" warnings: {'; '.join(info['warnings'])}" if info["warnings"] else "")
            )
    else:
        lines.append("stability: only computed for m = 0")
    report.table_lines = lines
    return report


def _cmd_classify(args: argparse.Namespace, command: str) -> Report:
    surface = Surface(args.e)
    u_range = _parse_range(args.u)
    v_range = _parse_range(args.v)
    inputs = {
        "e": args.e,
        "r": args.r,
        "u": args.u,
        "v": args.v,
        "m_max": args.m_max,
    }
    cells = classify_region(surface, args.r, u_range, v_range, args.m_max)
    report = Report(command, inputs)
    report.results = {
        "cells": [
            {
                "u": cell.u,
                "v": cell.v,
                "label": cell.label.value,
                "witness": [list(pair) for pair in cell.witness],
            }
            for cell in cells
        ]
    }
    report.csv_header = ["u", "v", "label", "witness"]
    report.csv_rows = [
        [cell.u, cell.v, cell.label.value, _intervals_str(cell.witness)] for cell in cells
    ]
    report.table_lines = [
        f"u={cell.u:>3} v={cell.v:>3}  {cell.label.value:<12} {_intervals_str(cell.witness)}"
        for cell in cells
    ]
    return report


def _cmd_audit(args: argparse.Namespace) -> Report:
    e_lo, e_hi = _parse_range(args.e)
    if args.claims is None:
        claims = None
    else:
        claims = [token for token in args.claims.split(",") if token]
        unknown = [c for c in claims if c not in CLAIMS]
        if unknown:
            raise UsageError(
                f"unknown claim '{unknown[0]}'; valid: {', '.join(CLAIMS)}"
            )
    findings = run_audit(range(e_lo, e_hi + 1), claims)
    inputs = {"claims": args.claims or "all", "e": args.e}
    report = Report("audit", inputs)
    by_status: dict[str, int] = {}
    for finding in findings:
        by_status[finding.status] = by_status.get(finding.status, 0) + 1
    report.results = {"checked": len(findings), "by_status": dict(sorted(by_status.items()))}
    report.findings = [
        {
            "claim": f.claim,
            "e": f.e,
            "status": f.status,
            "subject": f.subject,
            "detail": f.detail,
        }
        for f in findings
    ]
    report.csv_header = ["claim", "e", "status", "subject", "detail"]
    report.csv_rows = [[f.claim, f.e, f.status, f.subject, f.detail] for f in findings]
    report.table_lines = [
        f"[{f.status:^13}] {f.claim} (e={f.e}): {f.subject} -- {f.detail}" for f in findings
    ]
    return report


def _cmd_oracle(args: argparse.Namespace) -> Report:
    e_lo, e_hi = _parse_range(args.e)
    a_lo, a_hi = _parse_range(args.a)
    b_lo, b_hi = _parse_range(args.b)
    inputs = {"e": args.e, "a": args.a, "b": args.b}
    report = Report("oracle", inputs)
    checked = 0
    mismatches = []
    for e in range(e_lo, e_hi + 1):
        surface = Surface(e)
        k = surface.canonical_class()
        for a in range(a_lo, a_hi + 1):
            for b in range(b_lo, b_hi + 1):
                cls = DivisorClass(a, b)
                checked += 1
                closed0 = h0(surface, cls)
                brute0 = oracle_h0(surface, cls)
                closed2 = h2(surface, cls)
                brute2 = oracle_h0(surface, k - cls)
                val1 = h1(surface, cls)
                problems = []
                if closed0 != brute0:
                    problems.append(f"h0 {closed0} != oracle {brute0}")
                if closed2 != brute2:
                    problems.append(f"h2 {closed2} != oracle {brute2}")
                if closed0 - val1 + closed2 != chi(surface, cls):
                    problems.append("chi identity failed")
                if h1_vanishes(surface, cls) != (val1 == 0):
                    problems.append("vanishing criterion disagrees with h1")
                if problems:
                    mismatches.append(
                        {"e": e, "a": a, "b": b, "problems": "; ".join(problems)}
                    )
    report.results = {"classes_checked": checked, "mismatches": len(mismatches)}
    report.findings = mismatches
    report.csv_header = ["classes_checked", "mismatches"]
    report.csv_rows = [[checked, len(mismatches)]]
    report.table_lines = [f"checked {checked} classes, {len(mismatches)} mismatches"]
    for item in mismatches[:20]:
        report.table_lines.append(
            f"  e={item['e']} ({item['a']},{item['b']}): {item['problems']}"
        )
    if mismatches:
        report.exit_code = 1
    return report


# ---------------------------------------------------------------------------
# parser assembly and entry point


def _build_parser() -> _Parser:
    parser = _Parser(prog="hirzebruch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: _Parser) -> None:
        p.add_argument("--format", choices=FORMATS, default=None)

    p_coh = sub.add_parser("coh", help="cohomology of a divisor class")
    p_coh.add_argument("--e", type=int, required=True)
    p_coh.add_argument("--class", dest="cls", required=True, metavar="A,B")
    p_coh.add_argument("--twist-by", default=None, metavar="A,B")
    p_coh.add_argument("--t", default=None, metavar="FROM..TO")
    add_format(p_coh)

    p_check = sub.add_parser("check", help="natural / unconditional vanishing checks")
    p_check.add_argument("--e", type=int, required=True)
    p_check.add_argument("--line", default=None, metavar="U,V")
    p_check.add_argument("--sum", default=None, metavar="U1,V1;U2,V2;...")
    p_check.add_argument("--ideal", default=None, metavar="LOCUS:Z:U,V")
    p_check.add_argument("--extension", default=None, metavar="U,V,M,S")
    p_check.add_argument("--wrt", required=True, metavar="M|R|A,B")
    p_check.add_argument(
        "--pp",
        action="store_true",
        help="require vanishing at every twist, not only where sections exist",
    )
    add_format(p_check)

    p_con = sub.add_parser("construct", help="rank-2 extension with certificates")
    p_con.add_argument("--e", type=int, required=True)
    p_con.add_argument("--u", type=int, required=True)
    p_con.add_argument("--v", type=int, required=True)
    p_con.add_argument("--m", type=int, required=True)
    p_con.add_argument("--s", type=int, required=True)
    add_format(p_con)

    for name, help_text in (
        ("classify", "label a (u, v) region"),
        ("enumerate", "classify with CSV output by default"),
    ):
        p_cls = sub.add_parser(name, help=help_text)
        p_cls.add_argument("--e", type=int, required=True)
        p_cls.add_argument("--r", type=int, required=True)
        p_cls.add_argument("--u", required=True, metavar="FROM..TO")
        p_cls.add_argument("--v", required=True, metavar="FROM..TO")
        p_cls.add_argument("--m-max", type=int, default=0)
        add_format(p_cls)

    p_audit = sub.add_parser("audit", help="desk-scale claim verification")
    p_audit.add_argument("--claims", default=None, metavar="NAME,NAME,...")
    p_audit.add_argument("--e", default="1..4", metavar="FROM..TO")
    add_format(p_audit)

    p_oracle = sub.add_parser("oracle", help="closed form vs brute force")
    p_oracle.add_argument("--e", required=True, metavar="FROM..TO")
    p_oracle.add_argument("--a", required=True, metavar="FROM..TO")
    p_oracle.add_argument("--b", required=True, metavar="FROM..TO")
    add_format(p_oracle)

    return parser


def _default_format(command: str) -> str:
    env = os.environ.get("HIRZEBRUCH_FORMAT", "")
    if env in FORMATS:
        base = env
    else:
        base = "table"
    if command == "enumerate" and env not in FORMATS:
        return "csv"
    return base


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "coh":
            report = _cmd_coh(args)
        elif args.command == "check":
            report = _cmd_check(args)
        elif args.command == "construct":
            report = _cmd_construct(args)
        elif args.command in ("classify", "enumerate"):
            report = _cmd_classify(args, args.command)
        elif args.command == "audit":
            report = _cmd_audit(args)
        else:
            report = _cmd_oracle(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except DomainError as err:
        print(f"domain error: {err}", file=sys.stderr)
        return 3
    fmt = args.format or _default_format(args.command)
    print(report.render(fmt))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
