"""Command-line entry point: ``supercong verify | identities | seq``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

from . import REPORT_SCHEMA_VERSION, __version__
from .claims import CLAIM_IDS
from .identities import DEFAULT_BUDGET, DEFAULT_N_MAX, IDENTITY_IDS, InvalidRange, UnknownIdentity, check_all_identities
from .sequences import apery, franel
from .sweep import (
    FORMATS,
    ConfigError,
    SweepConfig,
    default_config_path,
    emit_report,
    read_config_file,
    run_sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

VERIFY_DEFAULTS = {
    "claims": "all",
    "primes": "5:10000",
    "perk-cap": "500",
    "oracle-cap": "100",
    "jobs": "1",
    "format": "json",
    "out": None,
    "no-timing": "false",
}


class UsageError(Exception):
    pass


def _parse_claims(text: str) -> tuple:
    if text.strip().lower() == "all":
        return CLAIM_IDS
    wanted = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in wanted if c not in CLAIM_IDS]
    if unknown:
        raise UsageError(f"unknown claims: {', '.join(unknown)}")
    return tuple(c for c in CLAIM_IDS if c in wanted)


def _parse_primes(text: str) -> tuple:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--primes expects LO:HI, got {text!r}") from None
    return lo, hi


def _parse_bool(text: str) -> bool:
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except (TypeError, ValueError):
        raise UsageError(f"{key} expects an integer, got {text!r}") from None


def build_config(args: argparse.Namespace) -> SweepConfig:
    """Merge CLI flags over the config file over built-in defaults."""
    merged: Dict[str, Optional[str]] = dict(VERIFY_DEFAULTS)
    path = args.config or default_config_path()
    if path:
        try:
            from_file = read_config_file(path)
        except OSError as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        unknown = set(from_file) - set(VERIFY_DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged.update(from_file)
    for key in VERIFY_DEFAULTS:
        value = getattr(args, key.replace("-", "_"))
        if value is not None:
            merged[key] = value if not isinstance(value, bool) else str(value)
    lo, hi = _parse_primes(merged["primes"])
    return SweepConfig(
        lo=lo,
        hi=hi,
        claims=_parse_claims(merged["claims"]),
        perk_cap=_parse_int("perk-cap", merged["perk-cap"]),
        oracle_cap=_parse_int("oracle-cap", merged["oracle-cap"]),
        jobs=_parse_int("jobs", merged["jobs"]),
        format=merged["format"],
        out=merged["out"],
        no_timing=_parse_bool(merged["no-timing"]),
    )


def _write(data: bytes, out: Optional[str]) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_verify(args) -> int:
    config = build_config(args)
    report = run_sweep(config)
    _write(emit_report(report, config.format), config.out)
    return report.exit_code


def cmd_identities(args) -> int:
    only = [s.strip() for s in args.only.split(",")] if args.only else None
    try:
        reports = check_all_identities(n_max=args.n_max, budget=args.budget, only=only)
    except UnknownIdentity as exc:
        raise UsageError(f"unknown identity {exc.args[0]!r}; known: {', '.join(IDENTITY_IDS)}") from None
    except InvalidRange as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        body = json.dumps({"schema_version": REPORT_SCHEMA_VERSION,
                           "identities": [r.to_dict() for r in reports]}, indent=2) + "\n"
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.id:<4} {r.range:<14} checked={r.checked}"
            if r.first_failure:
                f = r.first_failure
                line += f"  first failure at {f['params']}: lhs={f['lhs']} rhs={f['rhs']}"
            lines.append(line)
        body = "\n".join(lines) + "\n"
    _write(body.encode(), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_seq(args) -> int:
    if args.upto < 0:
        raise UsageError("--upto must be >= 0")
    gen = apery if args.name == "apery" else franel
    lines = [f"{n} {gen(n)}" for n in range(args.upto + 1)]
    _write(("\n".join(lines) + "\n").encode(), None)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="supercong", description="Verify Apery/Franel supercongruences and supporting identities.")
    parser.add_argument("--version", action="version",
                        version=f"supercong {__version__} (report schema {REPORT_SCHEMA_VERSION})")
    parser.add_argument("-v", "--verbose", action="store_true", help="log notices to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check claims over a range of primes")
    v.add_argument("--claims", help="all, or a comma list such as C1,C2,C10f")
    v.add_argument("--primes", help="LO:HI (default 5:10000)")
    v.add_argument("--perk-cap", help="largest prime for per-index claims (default 500)")
    v.add_argument("--oracle-cap", help="largest prime cross-checked by the exact oracle (default 100)")
    v.add_argument("--jobs", help="worker processes (default 1)")
    v.add_argument("--format", choices=FORMATS)
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--no-timing", action="store_const", const="true", default=None,
                   help="omit timing fields so reports are byte-reproducible")
    v.add_argument("--config", help="key = value config file (default: $SUPERCONG_CONFIG)")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("identities", help="check the finite sum identities exactly")
    i.add_argument("--only", help="comma list of identity ids or names")
    i.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    i.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    i.add_argument("--format", choices=("json", "text"), default="text")
    i.add_argument("--out")
    i.set_defaults(func=cmd_identities)

    s = sub.add_parser("seq", help="print Apery or Franel numbers")
    s.add_argument("--name", choices=("apery", "franel"), required=True)
    s.add_argument("--upto", type=int, required=True)
    s.set_defaults(func=cmd_seq)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"supercong: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
