"""Sweep orchestration over primes and claims, and report serialization."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import REPORT_SCHEMA_VERSION, __version__
from .claims import (
    CLAIM_IDS, PERK_IDS, ClaimResult, consistency_violations, get_claim, oracle_verify_spec, verify_spec,
)
from .fast import PrimeContext
from .oracle import OracleContext

log = logging.getLogger(__name__)

CONFIG_ENV = "SUPERCONG_CONFIG"
CSV_HEADER = ("claim", "p", "modulus", "pass", "lhs", "rhs", "failing_k", "ms")
FORMATS = ("json", "csv", "text")


class InvalidRange(ValueError):
    pass


class ConfigError(ValueError):
    pass


def sieve_primes(lo: int, hi: int) -> List[int]:
    """All primes in [lo, hi], ascending (sieve of Eratosthenes)."""
    if lo < 2 or lo > hi:
        raise InvalidRange(f"need 2 <= lo <= hi, got [{lo}, {hi}]")
    is_p = bytearray([1]) * (hi + 1)
    is_p[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(hi) + 1):
        if is_p[q]:
            is_p[q * q :: q] = bytearray(len(range(q * q, hi + 1, q)))
    return [n for n in range(lo, hi + 1) if is_p[n]]


@dataclass
class SweepConfig:
    lo: int = 5
    hi: int = 10_000
    claims: Tuple[str, ...] = CLAIM_IDS
    perk_cap: int = 500
    oracle_cap: int = 100
    jobs: int = 1
    format: str = "json"
    out: Optional[str] = None
    no_timing: bool = False

    def __post_init__(self):
        self.claims = tuple(self.claims)
        if not 2 <= self.lo <= self.hi:
            raise ConfigError(f"prime range must satisfy 2 <= lo <= hi, got {self.lo}:{self.hi}")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if self.perk_cap < 0 or self.oracle_cap < 0:
            raise ConfigError("caps must be >= 0")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        for cid in self.claims:
            if cid not in CLAIM_IDS:
                raise ConfigError(f"unknown claim {cid!r}")

    def echo(self) -> Dict[str, Any]:
        """Result-affecting settings only (jobs, format and out are omitted)."""
        return {
            "primes": f"{self.lo}:{self.hi}",
            "claims": list(self.claims),
            "perk_cap": self.perk_cap,
            "oracle_cap": self.oracle_cap,
            "timing": not self.no_timing,
        }


@dataclass
class Report:
    config: Dict[str, Any]
    results: List[ClaimResult] = field(default_factory=list)
    consistency: List[str] = field(default_factory=list)
    notices: List[str] = field(default_factory=list)
    wall_ms: Dict[str, Optional[float]] = field(default_factory=dict)
    schema_version: int = REPORT_SCHEMA_VERSION
    tool_version: str = __version__

    @property
    def failures(self) -> List[ClaimResult]:
        return [r for r in self.results if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures and not self.consistency

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def summary(self) -> Dict[str, Dict[str, Any]]:
        out: Dict[str, Dict[str, Any]] = {}
        for cid in self.config["claims"]:
            rs = [r for r in self.results if r.claim == cid]
            passes = sum(r.passed for r in rs)
            out[cid] = {
                "primes_checked": len(rs),
                "passes": passes,
                "failures": len(rs) - passes,
                "max_p": max((r.p for r in rs), default=None),
                "wall_ms": self.wall_ms.get(cid),
            }
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "config": self.config,
            "summary": self.summary(),
            "consistency": list(self.consistency),
            "notices": list(self.notices),
            "failures": [r.to_dict() for r in self.failures],
            "results": [r.to_dict() for r in self.results],
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "Report":
        return cls(
            config=d["config"],
            results=[ClaimResult.from_dict(r) for r in d["results"]],
            consistency=list(d["consistency"]),
            notices=list(d["notices"]),
            wall_ms={cid: s["wall_ms"] for cid, s in d["summary"].items()},
            schema_version=d["schema_version"],
            tool_version=d["tool_version"],
        )


def _claims_at(p: int, claims: Sequence[str], perk_cap: int) -> List[str]:
    return [c for c in claims if c not in PERK_IDS or p <= perk_cap]


def _verify_prime(p: int, claims: Sequence[str], perk_cap: int, oracle_cap: int) -> Tuple[List[ClaimResult], List[str]]:
    """All requested claims at one prime, sharing one per-prime context."""
    ctx = PrimeContext(p)
    octx = OracleContext(p) if p <= oracle_cap else None
    results = []
    for cid in _claims_at(p, claims, perk_cap):
        spec = get_claim(cid)
        r = verify_spec(spec, p, ctx)
        if octx is not None:
            ref = oracle_verify_spec(spec, p, ceiling=oracle_cap, o=octx)
            if not r.same_outcome(ref):
                r.passed = False
                r.diagnostic = (f"oracle disagreement: oracle pass={ref.passed} lhs={ref.lhs} "
                                f"rhs={ref.rhs} failing_k={ref.failing_k}")
        results.append(r)
    return results, consistency_violations(results)


def _verify_prime_args(args):
    return _verify_prime(*args)


def run_sweep(config: SweepConfig) -> Report:
    report = Report(config=config.echo())
    primes = sieve_primes(config.lo, config.hi)
    small = [p for p in primes if p <= 3]
    if small:
        msg = f"dropped primes {small}: claims require p > 3"
        log.info(msg)
        report.notices.append(msg)
    primes = [p for p in primes if p > 3]
    if not primes:
        msg = "no primes > 3 in range; nothing to check"
        log.info(msg)
        report.notices.append(msg)

    tasks = [(p, config.claims, config.perk_cap, config.oracle_cap) for p in primes]
    if config.jobs == 1 or len(tasks) <= 1:
        outcomes = [_verify_prime(*t) for t in tasks]
    else:
        # Largest primes cost the most; chunk small so workers stay busy.
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_verify_prime_args, tasks, chunksize=4))

    by_claim: Dict[str, List[ClaimResult]] = {cid: [] for cid in config.claims}
    for results, violations in outcomes:
        for r in results:
            by_claim[r.claim].append(r)
        report.consistency.extend(violations)
    order = [cid for cid in CLAIM_IDS if cid in by_claim]
    for cid in order:
        rs = sorted(by_claim[cid], key=lambda r: r.p)
        if config.no_timing:
            for r in rs:
                r.elapsed_ms = None
            report.wall_ms[cid] = None
        else:
            report.wall_ms[cid] = round(sum(r.elapsed_ms or 0.0 for r in rs), 3)
        report.results.extend(rs)
    return report


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in report.results:
            w.writerow([
                r.claim, r.p, r.modulus, "true" if r.passed else "false",
                "" if r.lhs is None else r.lhs, "" if r.rhs is None else r.rhs,
                r.failing_k or "", "" if r.elapsed_ms is None else r.elapsed_ms,
            ])
        return buf.getvalue().encode()
    if fmt == "text":
        return _text_report(report).encode()
    raise ConfigError(f"unknown format {fmt!r}")


def _text_report(report: Report) -> str:
    lines = [f"supercong {report.tool_version} (report schema {report.schema_version})",
             f"primes {report.config['primes']}, per-k cap {report.config['perk_cap']}, "
             f"oracle cap {report.config['oracle_cap']}", ""]
    lines.append(f"{'claim':<6} {'primes':>7} {'pass':>7} {'fail':>5} {'max p':>7} {'ms':>10}")
    for cid, s in report.summary().items():
        ms = "" if s["wall_ms"] is None else f"{s['wall_ms']:.1f}"
        max_p = "" if s["max_p"] is None else s["max_p"]
        lines.append(f"{cid:<6} {s['primes_checked']:>7} {s['passes']:>7} {s['failures']:>5} {max_p:>7} {ms:>10}")
    for r in report.failures:
        at = f" at index {r.failing_k}" if r.failing_k else ""
        lines.append(f"FAIL {r.claim} p={r.p}{at}: lhs={r.lhs} rhs={r.rhs} mod {r.modulus}"
                     + (f" ({r.diagnostic})" if r.diagnostic else ""))
    lines.extend(f"INCONSISTENT {v}" for v in report.consistency)
    lines.extend(f"note: {n}" for n in report.notices)
    lines.append("ALL PASS" if report.ok else "FAILURES PRESENT")
    return "\n".join(lines) + "\n"


def read_config_file(path: str) -> Dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment; keys use dashes or underscores."""
    out: Dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("_", "-")] = value
    return out


def default_config_path() -> Optional[str]:
    return os.environ.get(CONFIG_ENV) or None
