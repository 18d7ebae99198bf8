"""Command-line entry point.

Exit codes: 0 when every requested check passes, 1 on a failed check, 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks, qde
from .agsum import load_agspec
from .algebra import proportional
from .errors import SchurLPIError
from .lpi import IDEAL_PRESETS, enumerate_ideal, get_ideal, load_ideal, reduce_classes
from .partitions import EVEN_STAT, MOD3_STAT, PARTS_ONLY, enumerate_schur, gf_of
from .series import first_nonzero

STATS = {"parts": PARTS_ONLY, "even": EVEN_STAT, "mod3": MOD3_STAT}

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(loader, path: str):
    """Read a JSON config, turning every way it can be unreadable or invalid into a usage error."""
    try:
        return loader(path)
    except (OSError, json.JSONDecodeError, SchurLPIError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad config {path}: {exc}") from None


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {value}")
    return value


def _csv_ints(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("excluded parts must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schurlpi", description="Exact verification of partition identities for Schur's class.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_nonnegative, default=30, help="truncation order N (default 30)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    verify = sub.add_parser("verify", parents=[common], help="run a named identity or suite")
    verify.add_argument("target", nargs="?", choices=checks.TARGET_NAMES, help="preset or suite name")
    verify.add_argument("--m-max", type=_nonnegative, default=8, help="largest coefficient index checked (default 8)")
    verify.add_argument("--config", help="multi-sum JSON config compared against an enumeration")
    verify.add_argument("--exclude-smallest", type=_csv_ints, default=(), help="CSV of forbidden smallest parts")
    verify.add_argument("--stat", choices=sorted(STATS), default="parts", help="statistic carried by y")

    enum = sub.add_parser("enumerate", help="list Schur partitions and their generating function")
    enum.add_argument("--max", type=_nonnegative, required=True, help="largest weight")
    enum.add_argument("--exclude-smallest", type=_csv_ints, default=(), help="CSV of forbidden smallest parts")
    enum.add_argument("--stat", choices=sorted(STATS), default="parts")
    enum.add_argument("--json", action="store_true")

    derive = sub.add_parser("derive", parents=[common], help="derive a q-difference equation from an ideal")
    source = derive.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(IDEAL_PRESETS))
    source.add_argument("--config", help="ideal JSON config")
    return parser


def _emit(payload: dict, text_lines: Sequence[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_verify(args) -> int:
    if args.config:
        spec = _load(load_agspec, args.config)
        results = [checks.check_custom_multisum(spec, args.exclude_smallest, STATS[args.stat], args.order)]
    elif args.target:
        results = checks.run_target(args.target, args.order, args.m_max)
    else:
        raise UsageError("verify needs a target or --config")
    passed = all(results)
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
        if r.discrepancy:
            lines.append(f"       discrepancy: {json.dumps(r.discrepancy, sort_keys=True)}")
    lines.append(f"{sum(map(bool, results))}/{len(results)} checks passed")
    _emit({"order": args.order, "passed": passed, "checks": [r.to_json() for r in results]}, lines, args.json)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_enumerate(args) -> int:
    found = list(enumerate_schur(args.max, args.exclude_smallest))
    series = gf_of(found, args.max, STATS[args.stat])
    lines = [f"{sum(p):>3}  {p}" for p in found]
    lines.append(f"{len(found)} partition{'' if len(found) == 1 else 's'}")
    lines.append("generating function: " + str(series.to_poly()))
    _emit({"partitions": [list(p) for p in found], "generating_function": series.to_json()}, lines, args.json)
    return EXIT_OK


def cmd_derive(args) -> int:
    spec = get_ideal(args.preset) if args.preset else _load(load_ideal, args.config)
    try:
        derived = qde.derive_qde(reduce_classes(spec).M, spec.modulus)
    except SchurLPIError as exc:
        print(f"derivation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    a1 = gf_of(enumerate_ideal(spec, args.order), args.order, spec.stats)
    residual = qde.qde_check(derived, a1)
    monomial = first_nonzero(residual)
    payload = {"equation": derived.to_json(), "order": args.order, "residual_zero": monomial is None}
    lines = [str(derived), f"residual against the enumerated generating function (N={args.order}): " + ("0" if monomial is None else f"nonzero at {tuple(monomial)}")]
    ok = monomial is None
    if args.preset == "schur-mod6":
        match = proportional(derived.coefficients, qde.SCHUR_EVEN_QDE.coefficients)
        payload["proportional_to_reference"] = match
        lines.append(f"proportional to the reference equation: {match}")
        ok = ok and match
    payload["passed"] = ok
    _emit(payload, lines, args.json)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "enumerate": cmd_enumerate, "derive": cmd_derive}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
