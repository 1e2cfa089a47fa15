"""Claims catalog and the machinery that checks a claim at one prime.

A claim compares two sides in Z/p^e. Scalar claims yield one residue per side;
quantified claims yield one residue per index and pass only if every index
agrees. Each claim carries two independent implementations of both sides: a
modular fast path (:mod:`supercong.fast`) and an exact oracle
(:mod:`supercong.oracle`).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from . import fast, oracle
from .fast import PrimeContext
from .modring import ModringError, PrimePowerModulus, Residue, reduce_rat
from .oracle import ORACLE_CEILING, OracleContext

__all__ = [
    "ClaimSpec",
    "ClaimResult",
    "CLAIMS",
    "CLAIM_IDS",
    "QUANTIFIED_IDS",
    "PERK_IDS",
    "UnknownClaim",
    "get_claim",
    "eval_side",
    "verify_claim",
    "verify_spec",
    "verify_all",
    "oracle_verify_claim",
    "consistency_violations",
]


class UnknownClaim(KeyError):
    pass


@dataclass(frozen=True)
class ClaimSpec:
    id: str
    description: str
    exponent: int
    lhs: Callable[[PrimeContext], Any]
    rhs: Callable[[PrimeContext], Any]
    oracle_lhs: Callable[[OracleContext], Any]
    oracle_rhs: Callable[[OracleContext], Any]
    formula: str
    # None for scalar claims; otherwise yields the index labels of the quantifier.
    indices: Optional[Callable[[PrimeContext], list]] = None
    # Quantified claims fall under the sweep's per-k prime cap.
    perk: bool = False

    @property
    def quantified(self) -> bool:
        return self.indices is not None


@dataclass
class ClaimResult:
    claim: str
    p: int
    passed: bool
    modulus: int
    lhs: Optional[int]
    rhs: Optional[int]
    failing_k: Optional[str] = None
    elapsed_ms: Optional[float] = None
    diagnostic: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim,
            "p": self.p,
            "modulus": str(self.modulus),
            "pass": self.passed,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "failing_k": self.failing_k,
            "ms": self.elapsed_ms,
            "diagnostic": self.diagnostic,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "ClaimResult":
        as_int = lambda v: None if v is None else int(v)  # noqa: E731
        return cls(
            claim=d["claim"],
            p=d["p"],
            passed=d["pass"],
            modulus=int(d["modulus"]),
            lhs=as_int(d["lhs"]),
            rhs=as_int(d["rhs"]),
            failing_k=d["failing_k"],
            elapsed_ms=d["ms"],
            diagnostic=d["diagnostic"],
        )

    def same_outcome(self, other: "ClaimResult") -> bool:
        return (self.passed, self.lhs, self.rhs, self.failing_k) == (
            other.passed, other.lhs, other.rhs, other.failing_k)


def _claim(id, description, exponent, lhs, rhs, formula, **kw) -> ClaimSpec:
    # Fast and oracle recipes share names, so look both up by the fast one.
    o_lhs = getattr(oracle, lhs.__name__, None) or kw.pop("oracle_lhs")
    o_rhs = getattr(oracle, rhs.__name__, None) or kw.pop("oracle_rhs")
    kw.pop("oracle_lhs", None)
    kw.pop("oracle_rhs", None)
    return ClaimSpec(id, description, exponent, lhs, rhs, o_lhs, o_rhs, formula, **kw)


_CATALOG = [
    _claim("C1", "Apery alternating sum, mod p^3", 3, fast.c1_lhs, fast.c1_rhs,
           "(1/p) sum_{k<p} (-1)^k (2k+1) A_k = (p/3) + (p^2/6) B_{p-2}(1/3)"),
    _claim("C2", "Franel alternating sum, mod p^3", 3, fast.c2_lhs, fast.c2_rhs,
           "sum_{k<p} (-1)^k f_k = (p/3) + (2p^2/3) B_{p-2}(1/3)"),
    _claim("C3", "Apery alternating sum, mod p^2", 2, fast.c3_lhs, fast.legendre_mod_p2,
           "(1/p) sum_{k<p} (-1)^k (2k+1) A_k = (p/3)",
           oracle_lhs=oracle.c1_lhs, oracle_rhs=oracle.legendre_value),
    _claim("C4", "Franel alternating sum, mod p^2", 2, fast.c4_lhs, fast.legendre_mod_p2,
           "sum_{k<p} (-1)^k f_k = (p/3)",
           oracle_lhs=oracle.c2_lhs, oracle_rhs=oracle.legendre_value),
    _claim("C5", "(-3)^k double sum, mod p", 1, fast.c5_lhs, fast.c5_rhs,
           "sum_{k=1}^{(p-1)/2} ((-3)^k/k) sum_{j=1}^k 1/((2j-1)(-3)^j) = B_{p-2}(1/3)/6"),
    _claim("C6", "central binomial double sum, mod p", 1, fast.c6_lhs, fast.c6_rhs,
           "sum_{k=1}^{(p-1)/2} 1/(k C(2k,k)) sum_{j=1}^k C(2j,j)/j = B_{p-2}(1/3)/3"),
    _claim("C7", "rising binomial tail for each k, mod p", 1, fast.c7_lhs, fast.c7_rhs,
           "sum_{j=2}^{p-2k} C(k+j-1,k)/(k+j) = (-1)^k((3/2) S_k - C(2k,k)/k) - 1/(k+1),"
           " S_k = sum_{j=1}^k C(2j,j)/j",
           indices=fast.perk_indices, perk=True),
    _claim("C8", "negative-index binomial ratio sum for each k, mod p", 1, fast.c8_lhs, fast.c8_rhs,
           "sum_{j=0}^{p-2k} C(-k,k+j)(-1)^(k+j)/C(k+j,k) = (3k/2) S_k - (3/2) C(2k,k)",
           indices=fast.perk_indices, perk=True),
    _claim("C9", "upper-half Legendre-type double sum, mod p^3", 3, fast.c9_lhs, fast.c9_rhs,
           "sum_{k=(p+1)/2}^{p-1} C(2k,k) sum_{j=p-k}^k C(k,j)C(k+j,j)(-1)^(k+j) = -p^2 B_{p-2}(1/3)"),
    _claim("C10a", "sum of C(2j,j)/j vanishes, mod p", 1, fast.c10a_lhs, fast.zero,
           "sum_{j=1}^{(p-1)/2} C(2j,j)/j = 0"),
    _claim("C10b", "central binomial reflection product for each k, mod p^2", 2,
           fast.c10b_lhs, fast.c10b_rhs, "k C(2k,k) C(2(p-k),p-k) = -2p",
           indices=fast.perk_indices, perk=True),
    _claim("C10c", "second-order harmonic number at (p-1)/2, mod p", 1, fast.c10c_lhs, fast.zero,
           "H_{(p-1)/2}^{(2)} = 0"),
    _claim("C10d", "C(2j,j) versus C((p-1)/2,j)(-4)^j for each j, mod p", 1,
           fast.c10d_lhs, fast.c10d_rhs, "C(2j,j) = C((p-1)/2,j) (-4)^j",
           indices=fast.c10d_indices, perk=True),
    _claim("C10e", "C(p-1,k)C(p+k,k) for each k, mod p^3", 3, fast.c10e_lhs, fast.c10e_rhs,
           "C(p-1,k) C(p+k,k) = (-1)^k (1 - p^2 H_k^{(2)})",
           indices=fast.c10e_indices, perk=True),
    _claim("C10f", "C(p-k+j,j) for each k <= j <= p-k, mod p^2", 2, fast.c10f_lhs, fast.c10f_rhs,
           "C(p-k+j,j) = p (-1)^(k-1) / (k C(j,k))",
           indices=fast.c10f_indices, perk=True),
    _claim("C10g", "harmonic reflections for each j, mod p", 1, fast.c10g_lhs, fast.c10g_rhs,
           "[1] H_{p-1-2j} = H_{2j};  [2] H_{(p-1)/2-j} - H_{(p-1)/2} = 2H_{2j} - H_j",
           indices=fast.c10g_indices, perk=True),
    _claim("C10h", "Euler criterion for -3, mod p", 1, fast.c10h_lhs, fast.legendre_mod_p,
           "(-3)^{(p-1)/2} = (p/3)", oracle_rhs=oracle.legendre_value),
    _claim("C11", "Apery sum against central binomial sums, mod p^3", 3, fast.c1_lhs, fast.c11_rhs,
           "(1/p) sum (-1)^k (2k+1) A_k = sum_{k<p} C(2k,k) + p^2 B_{p-2}(1/3)"
           " - 3p^2 sum_{k=1}^{(p-1)/2} C(2k,k) sum_{j=1}^k 1/(j^2 C(2j,j))"),
    _claim("C12a", "harmonic (-3)^j sum, mod p", 1, fast.c12a_lhs, fast.c5_rhs,
           "(p/3) sum_{j=1}^{(p-1)/2} (H_j - 2H_{2j})/(j (-3)^j) = B_{p-2}(1/3)/6"),
    _claim("C12b", "H^{(2)}-weighted Franel sum, mod p", 1, fast.c12b_lhs, fast.c12b_rhs,
           "sum_{k<p} (-1)^k H_k^{(2)} f_k = B_{p-2}(1/3)/2"),
    _claim("C12c", "central binomial sums against B_{p-2}(1/3), mod p^3", 3, fast.c12c_lhs, fast.c12c_rhs,
           "sum_{k<p} C(2k,k) - 3p^2 sum_{k=1}^{(p-1)/2} C(2k,k) sum_{j=1}^k 1/(j^2 C(2j,j))"
           " = (p/3) - (5p^2/6) B_{p-2}(1/3)"),
]

CLAIMS: Dict[str, ClaimSpec] = {c.id: c for c in _CATALOG}
CLAIM_IDS = tuple(CLAIMS)
QUANTIFIED_IDS = tuple(c.id for c in _CATALOG if c.quantified)
PERK_IDS = tuple(c.id for c in _CATALOG if c.perk)


def get_claim(claim_id: str) -> ClaimSpec:
    try:
        return CLAIMS[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


def _label(index) -> str:
    if isinstance(index, tuple):
        return ":".join(str(i) for i in index)
    return str(index)


def eval_side(claim: ClaimSpec | str, side: str, p: int, ctx: PrimeContext | None = None):
    """One side of a claim at p by the fast path: a Residue, or a list of them."""
    claim = get_claim(claim) if isinstance(claim, str) else claim
    ctx = ctx or PrimeContext(p)
    recipe = {"lhs": claim.lhs, "rhs": claim.rhs}[side]
    M = PrimePowerModulus(p, claim.exponent)
    value = recipe(ctx)
    if claim.quantified:
        return [M(v) for v in value]
    return M(value)


def _oracle_side(claim: ClaimSpec, side: str, o: OracleContext):
    recipe = {"lhs": claim.oracle_lhs, "rhs": claim.oracle_rhs}[side]
    M = PrimePowerModulus(o.p, claim.exponent)
    value = recipe(o)
    if claim.quantified:
        return [reduce_rat(Fraction(v), M) for v in value]
    return reduce_rat(Fraction(value), M)


def _compare(claim: ClaimSpec, p: int, lhs, rhs, indices) -> ClaimResult:
    modulus = p**claim.exponent
    if not claim.quantified:
        return ClaimResult(claim.id, p, lhs == rhs, modulus, lhs.value, rhs.value)
    if not (len(lhs) == len(rhs) == len(indices)):
        raise AssertionError(f"{claim.id}: side lengths disagree with the index range")
    for idx, a, b in zip(indices, lhs, rhs):
        if a != b:
            return ClaimResult(claim.id, p, False, modulus, a.value, b.value, failing_k=_label(idx))
    if not indices:
        return ClaimResult(claim.id, p, True, modulus, 0, 0)
    return ClaimResult(claim.id, p, True, modulus, lhs[-1].value, rhs[-1].value)


def _run(claim: ClaimSpec, p: int, evaluate) -> ClaimResult:
    start = time.perf_counter()
    try:
        result = evaluate()
    except ModringError as exc:
        result = ClaimResult(claim.id, p, False, p**claim.exponent, None, None,
                             diagnostic=f"{type(exc).__name__}: {exc}")
    result.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return result


def verify_spec(claim: ClaimSpec, p: int, ctx: PrimeContext | None = None) -> ClaimResult:
    """Check ``claim`` at p by the fast path (works for catalog and ad-hoc specs)."""
    ctx = ctx or PrimeContext(p)

    def evaluate():
        lhs = eval_side(claim, "lhs", p, ctx)
        rhs = eval_side(claim, "rhs", p, ctx)
        indices = claim.indices(ctx) if claim.quantified else None
        return _compare(claim, p, lhs, rhs, indices)

    return _run(claim, p, evaluate)


def verify_claim(claim_id: str, p: int, ctx: PrimeContext | None = None) -> ClaimResult:
    return verify_spec(get_claim(claim_id), p, ctx)


def oracle_verify_spec(claim: ClaimSpec, p: int, ceiling: int = ORACLE_CEILING,
                       o: OracleContext | None = None) -> ClaimResult:
    if p > ceiling:
        raise ValueError(f"oracle path is limited to p <= {ceiling}")
    PrimePowerModulus(p, 1)
    o = o or OracleContext(p)

    def evaluate():
        lhs = _oracle_side(claim, "lhs", o)
        rhs = _oracle_side(claim, "rhs", o)
        indices = claim.indices(PrimeContext(p)) if claim.quantified else None
        return _compare(claim, p, lhs, rhs, indices)

    return _run(claim, p, evaluate)


def oracle_verify_claim(claim_id: str, p: int, ceiling: int = ORACLE_CEILING) -> ClaimResult:
    """Same contract as :func:`verify_claim`, computed in exact arithmetic."""
    return oracle_verify_spec(get_claim(claim_id), p, ceiling)


def verify_all(p: int, subset: Sequence[str] | None = None) -> List[ClaimResult]:
    """Fast-path results for ``subset`` (default: every claim), in catalog order."""
    wanted = set(CLAIM_IDS if subset is None else subset)
    for cid in wanted:
        get_claim(cid)
    ctx = PrimeContext(p)
    return [verify_claim(cid, p, ctx) for cid in CLAIM_IDS if cid in wanted]


def consistency_violations(results: Iterable[ClaimResult]) -> List[str]:
    """Cross-claim algebra that must hold among results at one prime.

    * C1 passing implies C3 passing, and C2 implies C4;
    * C11 and C1 share a left side, and with C12c they satisfy
      rhs(C11) - lhs(C12c) = p^2 B = rhs(C1) - rhs(C12c) mod p^3, so
      pass(C11) and pass(C12c) force pass(C1).
    """
    by_id = {r.claim: r for r in results}
    out: List[str] = []
    for strong, weak in (("C1", "C3"), ("C2", "C4")):
        s, w = by_id.get(strong), by_id.get(weak)
        if s and w and s.passed and not w.passed:
            out.append(f"p={s.p}: {strong} passes but {weak} fails")
    c1, c11, c12c = by_id.get("C1"), by_id.get("C11"), by_id.get("C12c")
    if c1 and c11 and c12c and None not in (c1.lhs, c11.lhs, c11.rhs, c12c.lhs, c12c.rhs, c1.rhs):
        p, m3 = c1.p, c1.p**3
        if c11.lhs != c1.lhs:
            out.append(f"p={p}: C11 and C1 left sides differ")
        if (c11.rhs - c12c.lhs) % m3 != (c1.rhs - c12c.rhs) % m3:
            out.append(f"p={p}: C11/C12c/C1 right sides are algebraically inconsistent")
        if c11.passed and c12c.passed and not c1.passed:
            out.append(f"p={p}: C11 and C12c pass but C1 fails")
    return out
