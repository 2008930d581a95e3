"""Split-prime residue embeddings and p-adic valuations of ring elements.

For an odd prime p with (d/p) = 1, a Hensel-lifted square root s of d mod
p**k turns ring elements into residues: (u + v*sqrt(d))/den maps to
(u + v*s) * den^{-1} mod p**k.  The two roots +-s are the two primes above
p; the embedding records which branch it follows, and precision raises are
Newton lifts of the same root, so the branch never silently flips.

Congruences that only need modulus p**2 are also computed in the quotient
ring (Z/p**2)[omega] without any lifting; the two routes are independent
and cross-validate each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intkit
from .errors import NoEmbedding, PrecisionExhausted
from .quadfield import FamilyField, QuadInt, QuadraticField

DEFAULT_PRECISION_CAP = 64  # digits base p

PRIMARY = "primary"
CONJUGATE = "conjugate"


def _sqrt_mod_p(a: int, p: int) -> int:
    # Tonelli-Shanks; a is a quadratic residue mod the odd prime p
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while intkit.jacobi(z, p) != -1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    root = pow(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        root = root * b % p
    return root


def _lift_sqrt(s: int, d: int, p: int, k_from: int, k_to: int) -> int:
    # Newton doubling for x**2 = d, staying on the root fixed mod p**k_from
    k = k_from
    while k < k_to:
        k = min(2 * k, k_to)
        mod = p**k
        s = (s + d * pow(s, -1, mod)) * pow(2, -1, mod) % mod
    return s


def hensel_sqrt(d: int, p: int, k: int) -> int:
    """Smallest s with s**2 = d mod p**k, for odd prime p with (d/p) = 1.

    >>> hensel_sqrt(82, 3, 4)
    1
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    if k < 1:
        raise ValueError("precision k must be >= 1")
    if d % p == 0 or intkit.jacobi(d % p, p) != 1:
        raise NoEmbedding(f"{d} is not an invertible square mod {p}")
    s = _sqrt_mod_p(d, p)
    s = _lift_sqrt(s, d, p, 1, k)
    return min(s, p**k - s)


@dataclass(frozen=True)
class SplitPrimeEmbedding:
    """Residue embedding O_K -> Z/p**k along one prime above split p."""

    p: int
    k: int
    s: int  # s**2 = d mod p**k
    branch: str
    field: QuadraticField

    @property
    def modulus(self) -> int:
        return self.p**self.k


def split_embedding(field: QuadraticField, p: int, k: int,
                    branch: str = PRIMARY) -> SplitPrimeEmbedding:
    """Embedding along the branch fixed by the smaller lifted root."""
    if branch not in (PRIMARY, CONJUGATE):
        raise ValueError("branch must be 'primary' or 'conjugate'")
    s = hensel_sqrt(field.d, p, k)
    if branch == CONJUGATE:
        s = p**k - s
    return SplitPrimeEmbedding(p=p, k=k, s=s, branch=branch, field=field)


def family_embedding(fam: FamilyField, k: int | None = None,
                     branch: str = PRIMARY) -> SplitPrimeEmbedding:
    """Embedding normalized for the field family.

    The primary branch is the root with b*s = 1 mod p**min(k, 2r); along it
    b*sqrt(d) - 1 generates the full p**2r part, which pins the prime the
    invariants are measured against.  The two roots satisfy b*s = +-1, so
    the normalization picks the same branch at every precision.
    """
    if branch not in (PRIMARY, CONJUGATE):
        raise ValueError("branch must be 'primary' or 'conjugate'")
    if k is None:
        k = max(8, 2 * fam.r + 2)
    s = hensel_sqrt(fam.d, fam.p, k)
    mod = fam.p ** min(k, 2 * fam.r)
    if fam.b * s % mod != 1 % mod:
        s = fam.p**k - s
    if fam.b * s % mod != 1 % mod:
        raise NoEmbedding("no branch satisfies the family normalization")
    if branch == CONJUGATE:
        s = fam.p**k - s
    return SplitPrimeEmbedding(p=fam.p, k=k, s=s, branch=branch, field=fam.field)


def raise_precision(emb: SplitPrimeEmbedding, k: int) -> SplitPrimeEmbedding:
    """Same branch, higher precision."""
    if k <= emb.k:
        return emb
    s = _lift_sqrt(emb.s, emb.field.d, emb.p, emb.k, k)
    return SplitPrimeEmbedding(p=emb.p, k=k, s=s, branch=emb.branch, field=emb.field)


def embed(x: QuadInt, emb: SplitPrimeEmbedding) -> int:
    """Residue of x in Z/p**k along the embedding's branch."""
    if x.field != emb.field:
        raise ValueError("element of a different field")
    mod = emb.modulus
    val = (x.u + x.v * emb.s) % mod
    if x.den != 1:
        val = val * pow(x.den, -1, mod) % mod
    return val


def pvaluation(x: QuadInt, emb: SplitPrimeEmbedding,
               cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Valuation of x != 0 at the embedding's prime.

    Precision doubles until the valuation is resolved; hitting the cap
    raises PrecisionExhausted rather than returning a truncated answer.
    """
    if x.u == 0 and x.v == 0:
        raise ValueError("valuation of zero is undefined")
    while True:
        c = embed(x, emb)
        if c != 0:
            return intkit.valuation(c, emb.p)
        if emb.k >= cap:
            raise PrecisionExhausted(
                f"valuation at {emb.p} unresolved at precision {emb.k}")
        emb = raise_precision(emb, min(2 * emb.k, cap))


def congruence_order(x: QuadInt, emb: SplitPrimeEmbedding,
                     cap: int = DEFAULT_PRECISION_CAP) -> int:
    """Valuation of x**(p-1) - 1 at the embedding's prime.

    Defined for any x invertible at the prime (valuation zero there); the
    power is taken on residues, never on exact ring elements.
    """
    p = emb.p
    while True:
        c = embed(x, emb)
        if c % p == 0:
            raise ValueError("x is not invertible at the prime")
        delta = (pow(c, p - 1, emb.modulus) - 1) % emb.modulus
        if delta != 0:
            return intkit.valuation(delta, p)
        if emb.k >= cap:
            raise PrecisionExhausted(
                f"congruence order at {p} unresolved at precision {emb.k}")
        emb = raise_precision(emb, min(2 * emb.k, cap))


def unit_congruence_order(t: QuadInt, emb: SplitPrimeEmbedding,
                          cap: int = DEFAULT_PRECISION_CAP) -> int:
    """congruence_order restricted to units (|norm| = 1)."""
    from .quadfield import qi_norm

    if abs(qi_norm(t)) != 1:
        raise ValueError("unit_congruence_order requires a unit")
    return congruence_order(t, emb, cap)


# ---------------------------------------------------------------------------
# quotient-ring route: congruences mod p**j without any root lifting


def omega_coords(x: QuadInt) -> tuple[int, int]:
    """Coordinates of x in the integral basis {1, omega}.

    omega is sqrt(d), or (1 + sqrt(d))/2 when d = 1 mod 4.
    """
    if x.field.d % 4 != 1:
        if x.den != 1:
            raise ValueError("non-integral element")
        return x.u, x.v
    # sqrt(d) = 2*omega - 1
    if x.den == 1:
        return x.u - x.v, 2 * x.v
    return (x.u - x.v) // 2, x.v


def _omega_square_rule(field: QuadraticField) -> tuple[int, int]:
    # omega**2 = q0 + q1 * omega
    if field.d % 4 == 1:
        return (field.d - 1) // 4, 1
    return field.d, 0


def residue_pow(field: QuadraticField, coords: tuple[int, int], e: int,
                modulus: int) -> tuple[int, int]:
    """(a0 + a1*omega)**e in O_K / modulus, on coordinate pairs."""
    q0, q1 = _omega_square_rule(field)

    def mul(x, y):
        a0, a1 = x
        b0, b1 = y
        cross = a1 * b1
        return ((a0 * b0 + cross * q0) % modulus,
                (a0 * b1 + a1 * b0 + cross * q1) % modulus)

    result = (1 % modulus, 0)
    base = (coords[0] % modulus, coords[1] % modulus)
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def power_is_one_mod(x: QuadInt, e: int, modulus: int) -> bool:
    """x**e = 1 in O_K / modulus, via the quotient ring.

    Works for any odd modulus coprime to the denominator; no splitting
    assumption is needed, which makes this the independent cross-check for
    the embedding route.
    """
    if modulus % 2 == 0:
        raise ValueError("modulus must be odd")
    a0, a1 = omega_coords(x)
    r0, r1 = residue_pow(x.field, (a0, a1), e, modulus)
    return r0 == 1 % modulus and r1 == 0
