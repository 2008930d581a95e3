"""Verdict layer: unit congruences, torsion ledger, and certified verdicts.

The central computable fact about a family field is whether the fundamental
unit eps satisfies eps**(p-1) = 1 mod p**2.  Within the exact coefficient
bound this is guaranteed, so computing False there raises DefectError
instead of producing data.  The congruence feeds a valuation ledger for the
p-part of the torsion group; a positive lower bound certifies that the
field is not p-rational.  On top of that sit the two residue orders n1 and
n2 that drive the mu = lambda = 0 verdict and its |A_n| prediction.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import classno, intkit, padic
from .errors import DefectError, DiscriminantTooLarge, PrecisionExhausted
from .quadfield import (FamilyField, QuadInt, QuadraticField, construct_family,
                        element, fundamental_unit, m_bound_satisfied, qi_norm,
                        unit_index)

N1_CERTIFIED = "certified"
N1_REFUTED = "refuted"
N1_UNKNOWN = "unknown"

NON_P_RATIONAL = "non-p-rational"
INCONCLUSIVE = "inconclusive"
MU_LAMBDA_ZERO = "mu-lambda-zero"


def epsilon_congruence_check(fam: FamilyField, eps: QuadInt | None = None) -> bool:
    """eps**(p-1) = 1 mod p**2 in the ring of integers (quotient-ring route).

    Within the coefficient bound the congruence is a theorem, so a False
    result there signals an implementation defect and raises.
    """
    if eps is None:
        eps = fundamental_unit(fam.field)
    ok = padic.power_is_one_mod(eps, fam.p - 1, fam.p**2)
    if not ok and m_bound_satisfied(fam.p, fam.r, fam.m):
        raise DefectError(
            f"unit congruence failed inside the bound at (p={fam.p}, r={fam.r}, m={fam.m})")
    return ok


def _capped_embedding(fam: FamilyField, cap: int) -> padic.SplitPrimeEmbedding:
    # start at the usual working precision, but never above the cap: the
    # cap promises no computation at higher precision, period
    k = min(max(8, 2 * fam.r + 2), cap)
    return padic.family_embedding(fam, k=k)


def n2_of(fam: FamilyField, cap: int = padic.DEFAULT_PRECISION_CAP) -> int:
    """Residue order of the fundamental unit: v(eps**(p-1) - 1) at the
    family prime.  For m = 1 and d != 2 this must equal r."""
    eps = fundamental_unit(fam.field)
    emb = _capped_embedding(fam, cap)
    n2 = padic.unit_congruence_order(eps, emb, cap)
    if fam.m == 1 and fam.d != 2 and n2 != fam.r:
        raise DefectError(f"n2 = {n2} != r = {fam.r} at (p={fam.p}, r={fam.r}, m=1)")
    return n2


def lemma_n1_congruence(fam: FamilyField) -> bool:
    """(b*sqrt(d) + 1)**(p-1) = 2**(p-1) mod the square of the family prime.

    Holds for every m = 1 family field; False is a defect signal for the
    caller (the test suite asserts it).
    """
    if fam.m != 1:
        raise ValueError("the congruence route needs m = 1")
    p = fam.p
    emb = padic.family_embedding(fam, k=2)
    gen = element(fam.field, 1, fam.b)
    lhs = pow(padic.embed(gen, emb), p - 1, p * p)
    rhs = pow(2, p - 1, p * p)
    return lhs == rhs


def n1_certificate(fam: FamilyField, h: int,
                   cap: int = padic.DEFAULT_PRECISION_CAP) -> str:
    """Tri-state certificate that the generator residue order n1 equals 1.

    certified: p does not divide h, the unit congruence holds, and
    (b*sqrt(d) + 1)**(p-1) is not 1 mod the prime squared; the proof route
    then forces n1 = 1.  refuted: same setting but the generator power is
    1 mod the prime squared (exactly the Wieferich situation for 2), so
    n1 >= 2.  Anything else is unknown.
    """
    if fam.m != 1:
        raise ValueError("the certificate route needs m = 1")
    if h < 1:
        raise ValueError("class number must be >= 1")
    if h % fam.p == 0:
        return N1_UNKNOWN
    emb = _capped_embedding(fam, cap)
    eps = fundamental_unit(fam.field)
    eps_order = padic.unit_congruence_order(eps, emb, cap)
    gen = element(fam.field, 1, fam.b)
    gen_order = padic.congruence_order(gen, emb, cap)
    if eps_order >= 2 and gen_order == 1:
        return N1_CERTIFIED
    if eps_order >= 2 and gen_order >= 2:
        return N1_REFUTED
    return N1_UNKNOWN


def gen_fib(a: int, n: int) -> int:
    """F_n with F_0 = 0, F_1 = 1, F_{n+2} = 2a F_{n+1} + F_n.

    >>> gen_fib(9, 3)
    325
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x, y = 0, 1
    for _ in range(n):
        x, y = y, 2 * a * y + x
    return x


def fib_unit_equivalence(t: QuadInt, p: int) -> bool:
    """Both sides of: t**(p-1) = 1 mod p**2  iff  p**2 divides a (t = a + b*sqrt(d)).

    Requires norm(t) = -1 and p | a.  The left side runs in the quotient
    ring, the right side is a plain integer valuation; True means the two
    independent routes agree (False would be a defect signal).
    """
    if p < 3 or p % 2 == 0 or not intkit.is_prime(p):
        raise ValueError("p must be an odd prime")
    if qi_norm(t) != -1:
        raise ValueError("t must have norm -1")
    if t.u == 0 or intkit.valuation(t.u, p) < 1:
        raise ValueError("p must divide the rational part of t")
    left = padic.power_is_one_mod(t, p - 1, p * p)
    right = intkit.valuation(t.u, p) >= 2
    return left == right


# ---------------------------------------------------------------------------
# torsion ledger and verdicts


@dataclass(frozen=True)
class LedgerEntry:
    label: str
    value: int


@dataclass(frozen=True)
class CoatesLedger:
    """Valuation bookkeeping for the p-part of the torsion group.

    Entries are certified lower bounds on individual valuations; their sum
    is a lower bound for v_p of the torsion order.
    """

    p: int
    entries: tuple[LedgerEntry, ...]

    @property
    def torsion_lower_bound(self) -> int:
        return sum(e.value for e in self.entries)

    def values(self) -> list[int]:
        return [e.value for e in self.entries]


def coates_ledger(field: QuadraticField, p: int, h: int | None = None,
                  eps: QuadInt | None = None) -> CoatesLedger:
    """Ledger for a real quadratic field in which p splits.

    Contributions: roots of unity (+1), the two split Euler factors (-2),
    the p-adic regulator (+2 when eps**(p-1) = 1 mod p**2, else +1), the
    class number (v_p(h), or 0 when h is unknown), and the discriminant
    (0, certified by p not dividing it).
    """
    if p < 3 or p % 2 == 0 or not intkit.is_prime(p):
        raise ValueError("p must be an odd prime")
    if intkit.jacobi(field.d, p) != 1:
        raise ValueError(f"{p} does not split in Q(sqrt({field.d}))")
    if field.disc % p == 0:
        raise DefectError("split prime divides the discriminant")
    if eps is None:
        eps = fundamental_unit(field)
    regulator = 2 if padic.power_is_one_mod(eps, p - 1, p * p) else 1
    h_val = intkit.valuation(h, p) if h else 0
    entries = (
        LedgerEntry("roots of unity", 1),
        LedgerEntry("split Euler factors", -2),
        LedgerEntry("p-adic regulator lower bound", regulator),
        LedgerEntry("class number" if h else "class number (unknown, conservative)", h_val),
        LedgerEntry("discriminant", 0),
    )
    return CoatesLedger(p=p, entries=entries)


def p_rationality_verdict(p: int, r: int, m: int, h: int | None = None,
                          effort: int = intkit.DEFAULT_FACTOR_EFFORT) -> str:
    """non-p-rational iff the torsion lower bound is >= 1.

    Inside the coefficient bound the verdict is guaranteed, so computing
    inconclusive there raises DefectError.
    """
    fam = construct_family(p, r, m, effort)
    ledger = coates_ledger(fam.field, p, h)
    verdict = NON_P_RATIONAL if ledger.torsion_lower_bound >= 1 else INCONCLUSIVE
    if verdict != NON_P_RATIONAL and m_bound_satisfied(p, r, m):
        raise DefectError(
            f"verdict inconclusive inside the bound at (p={p}, r={r}, m={m})")
    return verdict


@dataclass(frozen=True)
class GreenbergResult:
    verdict: str
    an_prediction: int | None
    reason: str | None


def greenberg_verdict(p: int, r: int, h: int | None = None,
                      effort: int = intkit.DEFAULT_FACTOR_EFFORT,
                      classno_ceiling: int = classno.DEFAULT_DISC_CEILING,
                      cap: int = padic.DEFAULT_PRECISION_CAP) -> GreenbergResult:
    """mu-lambda-zero for the m = 1 field when the whole certificate chain
    holds: p not Wieferich, class number computed with p not dividing it,
    and the n1 certificate route succeeding.  The prediction is the
    stabilized |A_n| value p**(n2 - 1).

    ``h`` injects a class number (used to exercise branches); by default it
    is computed, and a ceiling overflow yields an inconclusive verdict.
    """
    if intkit.is_wieferich(p):
        return GreenbergResult(INCONCLUSIVE, None, "Wieferich prime")
    fam = construct_family(p, r, 1, effort)
    if h is None:
        try:
            h = classno.class_number(fam.field, classno_ceiling)
        except DiscriminantTooLarge:
            return GreenbergResult(INCONCLUSIVE, None, "class number uncomputed")
    if h % p == 0:
        return GreenbergResult(INCONCLUSIVE, None, "p divides class number")
    cert = n1_certificate(fam, h, cap)
    if cert != N1_CERTIFIED:
        return GreenbergResult(INCONCLUSIVE, None, f"n1 certificate {cert}")
    n2 = n2_of(fam, cap)
    return GreenbergResult(MU_LAMBDA_ZERO, p ** (n2 - 1), None)


# ---------------------------------------------------------------------------
# field-distinctness scan


@dataclass(frozen=True)
class DistinctFieldsReport:
    p: int
    rows: tuple[tuple[int, int | None], ...]  # (r, d)
    collisions: tuple[tuple[int, tuple[int, ...]], ...]  # (d, rs)
    d2_rows: tuple[int, ...]
    failures: tuple[tuple[int, str], ...]


def distinct_fields_scan(p: int, r_max: int,
                         effort: int = intkit.DEFAULT_FACTOR_EFFORT) -> DistinctFieldsReport:
    """Radicands of the m = 1 family for r = 2 .. r_max.

    Flags any repeated field and any occurrence of d = 2; factorization
    failures are recorded per row and do not stop the scan.
    """
    if r_max < 2:
        raise ValueError("r_max must be >= 2")
    rows: list[tuple[int, int | None]] = []
    failures: list[tuple[int, str]] = []
    by_d: dict[int, list[int]] = {}
    d2: list[int] = []
    for r in range(2, r_max + 1):
        try:
            fam = construct_family(p, r, 1, effort)
        except Exception as exc:  # per-row failure, scan continues
            rows.append((r, None))
            failures.append((r, f"{type(exc).__name__}: {exc}"))
            continue
        rows.append((r, fam.d))
        by_d.setdefault(fam.d, []).append(r)
        if fam.d == 2:
            d2.append(r)
    collisions = tuple((d, tuple(rs)) for d, rs in sorted(by_d.items()) if len(rs) > 1)
    return DistinctFieldsReport(p=p, rows=tuple(rows), collisions=collisions,
                                d2_rows=tuple(d2), failures=tuple(failures))


# ---------------------------------------------------------------------------
# assembled report for one family field


@dataclass(frozen=True)
class InvariantReport:
    family: FamilyField
    n2: int | None
    n1_is_one: str
    wieferich: bool
    class_number: int | None
    h_val_p: int | None
    coates: CoatesLedger
    p_rational_verdict: str
    greenberg_verdict: str
    greenberg_reason: str | None
    an_prediction: int | None

    @property
    def torsion_lower_bound(self) -> int:
        return self.coates.torsion_lower_bound

    def __post_init__(self):
        if self.p_rational_verdict == NON_P_RATIONAL and self.torsion_lower_bound < 1:
            raise DefectError("non-p-rational verdict without a positive bound")
        if self.greenberg_verdict == MU_LAMBDA_ZERO:
            if self.n1_is_one != N1_CERTIFIED or self.h_val_p != 0:
                raise DefectError("mu-lambda-zero without the certificate chain")
            if self.n2 is None or self.an_prediction != self.family.p ** (self.n2 - 1):
                raise DefectError("prediction must be p**(n2 - 1)")
        elif self.an_prediction is not None:
            raise DefectError("prediction present without a verdict")


def build_report(fam: FamilyField,
                 classno_ceiling: int = classno.DEFAULT_DISC_CEILING,
                 cap: int = padic.DEFAULT_PRECISION_CAP,
                 strict: bool = False) -> tuple[InvariantReport, list[str]]:
    """Full invariant report plus notes explaining every missing value.

    With ``strict`` set, precision exhaustion propagates instead of being
    recorded as a note (single-cell callers want the exit code).
    """
    notes: list[str] = []
    p = fam.p
    wief = intkit.is_wieferich(p)
    eps = fundamental_unit(fam.field)

    n2: int | None
    try:
        n2 = n2_of(fam, cap)
    except PrecisionExhausted:
        if strict:
            raise
        n2 = None
        notes.append("precision exhausted")

    h: int | None
    try:
        h = classno.class_number(fam.field, classno_ceiling)
    except DiscriminantTooLarge:
        h = None
        notes.append("class number ceiling")
    h_val = intkit.valuation(h, p) if h is not None else None

    ledger = coates_ledger(fam.field, p, h, eps)
    epsilon_congruence_check(fam, eps)  # defect gate inside the bound
    p_rational = NON_P_RATIONAL if ledger.torsion_lower_bound >= 1 else INCONCLUSIVE
    if p_rational != NON_P_RATIONAL and m_bound_satisfied(p, fam.r, fam.m):
        raise DefectError(
            f"verdict inconclusive inside the bound at (p={p}, r={fam.r}, m={fam.m})")

    n1 = N1_UNKNOWN
    greenberg = INCONCLUSIVE
    reason: str | None
    prediction: int | None = None
    if fam.m != 1:
        reason = "certificate route needs m = 1"
    elif wief:
        reason = "Wieferich prime"
    elif h is None:
        reason = "class number uncomputed"
    elif h % p == 0:
        reason = "p divides class number"
    else:
        try:
            n1 = n1_certificate(fam, h, cap)
        except PrecisionExhausted:
            if strict:
                raise
        if n1 == N1_CERTIFIED and n2 is not None:
            greenberg = MU_LAMBDA_ZERO
            prediction = p ** (n2 - 1)
            reason = None
        elif n2 is None:
            reason = "precision exhausted"
        else:
            reason = f"n1 certificate {n1}"
    if greenberg == INCONCLUSIVE and reason is not None:
        notes.append(f"greenberg inconclusive: {reason}")

    report = InvariantReport(
        family=fam, n2=n2, n1_is_one=n1, wieferich=wief, class_number=h,
        h_val_p=h_val, coates=ledger, p_rational_verdict=p_rational,
        greenberg_verdict=greenberg, greenberg_reason=reason,
        an_prediction=prediction)
    return report, notes
