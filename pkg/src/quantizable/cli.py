"""Command-line interface.

Exit statuses: 0 success, 1 input error, 2 insufficient data,
3 internal cross-check failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path
from typing import Sequence

from .exactmath import QQ, QQq, Field, ParseError, field_by_name
from .frobenius import Verdict, algebra_from_document, check_monoidality
from .quantize import InvariantSequence, QuantizationReport, quantization_report
from .repvar import (
    BRUTE_FORCE_LIMIT,
    ClosureBoundError,
    FiniteGroup,
    NotAGroupError,
    brute_force_genus_count,
    builtin_group,
    genus_count,
    load_group_file,
    pointed_count,
    repvar_sequence,
    twist_trace,
)
from .sl2data import sl2_pipeline

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INSUFFICIENT = 2
EXIT_CROSSCHECK = 3

# brute force from the command line is allowed well past the internal oracle bound
CLI_BRUTE_FORCE_CAP = 100 * BRUTE_FORCE_LIMIT


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- file formats -------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def parse_sequence_text(text: str, field: Field | None = None) -> InvariantSequence:
    """Sequence files are either JSON (a sequence or report document) or
    plain text with one value per line or comma-separated, ``#`` comments."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
        if "report" in doc:
            doc = doc["report"]
        if "sequence" in doc:
            doc = doc["sequence"]
        if "values" not in doc:
            raise InputError("sequence document has no 'values'")
        return InvariantSequence.from_document(doc, field)
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(t.strip() for t in line.split(",") if t.strip())
    if not tokens:
        raise InputError("sequence file has no values")
    if field is None:
        field = QQq if any("q" in t for t in tokens) else QQ
    return InvariantSequence(tuple(field.parse(t) for t in tokens), field)


def _provenance(command: str) -> dict:
    try:
        version = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        version = "unknown"
    return {
        "tool": "quantizable",
        "version": version,
        "command": command,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def write_report(path: str, command: str, body: dict) -> None:
    doc = {"provenance": _provenance(command), "report": body}
    try:
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def read_report(path: str) -> QuantizationReport:
    doc = json.loads(Path(path).read_text())
    return QuantizationReport.from_document(doc.get("report", doc))


def _parse_genera(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if any(g < 0 for g in out):
        raise ValueError("genera must be nonnegative")
    return out


def _load_group(spec: str) -> FiniteGroup:
    if spec.startswith("builtin:"):
        return builtin_group(spec[len("builtin:"):])
    return load_group_file(spec)


def _print_report(report: QuantizationReport) -> None:
    print(report.summary())
    fmt = report.sequence.field.format
    for g, v in sorted(report.predictions.items()):
        print(f"  genus {g}: {fmt(v)}")


# -- subcommands --------------------------------------------------------------------


def cmd_quantize(args) -> int:
    field = field_by_name(args.field) if args.field else None
    seq = parse_sequence_text(_read(args.input), field)
    genera = _parse_genera(args.predict) if args.predict else []
    report = quantization_report(seq, genera)
    _print_report(report)
    if args.out:
        write_report(args.out, "quantize", report.to_document())
    return EXIT_OK if report.recurrence is not None else EXIT_INSUFFICIENT


def cmd_check_monoidal(args) -> int:
    try:
        doc = json.loads(_read(args.algebra))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    alg = algebra_from_document(doc)
    v = check_monoidality(alg)
    yn = {True: "yes", False: "no"}
    print(f"wide: {yn[v.wide]}")
    if v.verdict is Verdict.INCONCLUSIVE_NOT_WIDE:
        print("condition 1: not evaluated")
        print("condition 2: not evaluated")
    else:
        print(f"condition 1 (nondegenerate pairing): {yn[v.gram_nondegenerate]}")
        c2 = yn[v.condition_two] if v.gram_nondegenerate else "not evaluated"
        print(f"condition 2 (handle element): {c2}")
    print(f"euler_check: {yn[v.euler_check]}")
    print(f"verdict: {v.verdict.value}")
    return EXIT_OK


def cmd_repvar(args) -> int:
    G = _load_group(args.group)
    print(f"order: {G.order}, classes: {G.class_data.count}")
    status = EXIT_OK
    body: dict = {"group": args.group, "order": G.order, "classes": G.class_data.count}
    if args.genus is not None:
        g = args.genus
        n = genus_count(G, g)
        print(f"genus_count(g={g}): {n}")
        body["genus_count"] = {"genus": g, "value": n}
        if args.points is not None:
            p = pointed_count(G, g, args.points)
            print(f"pointed_count(g={g}, points={args.points}): {p}")
            body["pointed_count"] = {"genus": g, "points": args.points, "value": p}
        if args.brute_force:
            if G.order ** (2 * g) > CLI_BRUTE_FORCE_CAP:
                raise InputError(f"brute force over {G.order}^{2 * g} tuples is too large")
            b = brute_force_genus_count(G, g)
            print(f"brute_force(g={g}): {b}")
            body["brute_force"] = b
            if b != n:
                print("cross-check FAILED: convolution and enumeration disagree", file=sys.stderr)
                status = EXIT_CROSSCHECK
    tt = twist_trace(G)
    print(f"twist_trace: {tt.trace} ({tt.provenance})")
    body["twist_trace"] = {"trace": tt.trace, "provenance": tt.provenance}
    if args.quantize_upto is not None:
        report = quantization_report(repvar_sequence(G, args.quantize_upto))
        _print_report(report)
        body["quantization"] = report.to_document()
    if args.out:
        write_report(args.out, "repvar", body)
    return status


def cmd_sl2(args) -> int:
    res = sl2_pipeline(args.max_genus)
    for i, p in enumerate(res.coefficients):
        print(f"P_{i} = {p}")
    print(res.report.summary())
    for g, v in sorted(res.predictions.items()):
        print(f"genus {g}: {QQq.format(v)}")
    print(f"closed formula agrees on genus {min(res.formula_checked)}..{max(res.formula_checked)}")
    if args.out:
        body = res.report.to_document()
        body["published_coefficients"] = res.coefficients
        write_report(args.out, "sl2", body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quantizable", description="Quantize surface invariants into 2d TQFTs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("quantize", help="extract a recurrence and test monoidality")
    p.add_argument("--input", required=True, help="sequence file (JSON or plain text)")
    p.add_argument("--predict", help="genera to predict, e.g. 12 or 12-20 or 5,7")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--field", choices=["Q", "Qq"], help="override the field of a plain-text file")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("check-monoidal", help="check an almost-Frobenius algebra")
    p.add_argument("--algebra", required=True, help="algebra JSON file")
    p.set_defaults(func=cmd_check_monoidal)

    p = sub.add_parser("repvar", help="count representations into a finite group")
    p.add_argument("--group", required=True, help="group file or builtin:NAME")
    p.add_argument("--genus", type=int)
    p.add_argument("--points", type=int)
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--quantize-upto", type=int, metavar="M")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_repvar)

    p = sub.add_parser("sl2", help="reproduce the SL2(C) recurrence")
    p.add_argument("--max-genus", type=int, default=12)
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_sl2)
    return parser


def _parse(parser: argparse.ArgumentParser, argv: Sequence[str] | None) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "genus", None) is not None and args.genus < 0:
        parser.error("--genus must be nonnegative")
    if getattr(args, "points", None) is not None and args.points < 1:
        parser.error("--points must be at least 1")
    if getattr(args, "quantize_upto", None) is not None and args.quantize_upto < 1:
        parser.error("--quantize-upto must be at least 1")
    if args.command == "sl2" and args.max_genus < 12:
        parser.error("--max-genus must be at least 12")
    return args


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, argv)
    except SystemExit as exc:
        # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except (InputError, ParseError, NotAGroupError, ClosureBoundError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
