"""Exact integer primitives: primality, factorization, symbols, valuations.

Everything here is pure and deterministic.  The factoring budget is an
explicit argument so callers can trade effort for completeness; an
unfinished factorization is representable (``complete=False``), not fatal.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import IncompleteFactorization

isqrt = math.isqrt

# Strong-pseudoprime bases making the test deterministic below 3.317e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

# Trial division inside factor() scans this far before handing the cofactor
# to rho; on a rho miss it resumes scanning up to the caller's bound.
_FAST_TRIAL_BOUND = 10_000

DEFAULT_FACTOR_EFFORT = 10**6


def is_prime(n: int) -> bool:
    """Deterministic strong-pseudoprime test.

    Exact for n < 3.317e24, which covers every input this toolkit produces
    at desk scale; far larger inputs fall back to the same fixed base set.

    >>> is_prime(41)
    True
    >>> is_prime(1)
    False
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1.

    >>> jacobi(82, 3)
    1
    >>> jacobi(2, 3)
    -1
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol requires positive odd n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def modpow(base: int, exp: int, modulus: int) -> int:
    """pow() with the canonical representative in [0, modulus)."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("negative exponent; invert explicitly instead")
    return pow(base, exp, modulus)


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    if p < 2:
        raise ValueError("valuation base must be >= 2")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def binom_valuation(p: int, l: int, i: int) -> int:
    """p-adic valuation of binomial(p**l, i) for 1 <= i <= p**l.

    Equals l - valuation(i, p); no binomial coefficient is ever expanded.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if not 1 <= i <= p**l:
        raise ValueError("need 1 <= i <= p**l")
    return l - valuation(i, p)


def _iroot(n: int, k: int) -> int:
    # floor of the k-th root, Newton from an overestimate
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    return x


def perfect_power(n: int):
    """(x, d) with n == x**d and d maximal (so x is not itself a power),
    or None when n is not a perfect power.

    >>> perfect_power(59049)
    (3, 10)
    >>> perfect_power(10) is None
    True
    """
    if n < 2:
        raise ValueError("perfect_power requires n >= 2")
    x, d = n, 1
    q = 2
    while q <= x.bit_length():
        if is_prime(q):
            r = _iroot(x, q)
            if r**q == x:
                x, d = r, d * q
                continue  # the same prime can divide d again
        q += 1
    return (x, d) if d >= 2 else None


@dataclass(frozen=True)
class Factorization:
    """Outcome of a budgeted factorization.

    ``factors`` lists (prime, exponent) pairs sorted by prime; each listed
    prime passed the primality test.  ``complete`` is True iff the product
    of the listed powers equals ``value``; otherwise ``cofactor`` carries
    the unresolved composite part.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    complete: bool

    @property
    def cofactor(self) -> int:
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        return self.value // prod

    def format_line(self) -> str:
        body = " ".join(f"{p}^{e}" for p, e in self.factors)
        return f"{self.value} {body}"


def _brent_rho(n: int, budget: int):
    # Brent's cycle variant; seeding from n keeps every run reproducible.
    rng = random.Random(0x5EED ^ n)
    spent = 0
    while spent < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(m, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                spent += steps
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _trial_scan(n: int, lo: int, hi: int):
    # resume classic trial division over the 6k+-1 wheel in (lo, hi]
    hi = min(hi, isqrt(n))
    q = lo - lo % 6 + 5
    while q <= hi:
        if n % q == 0:
            return q
        if n % (q + 2) == 0 and q + 2 <= hi:
            return q + 2
        q += 6
    return None


def factor(n: int, effort: int = DEFAULT_FACTOR_EFFORT) -> Factorization:
    """Factor n by trial division up to ``effort`` plus seeded Brent rho.

    ``effort`` bounds both the trial-division limit and the rho iteration
    count per cofactor.  Composite cofactors that survive the budget leave
    ``complete=False``; primality of everything listed is always certified.

    >>> factor(730).factors
    ((2, 1), (5, 1), (73, 1))
    """
    if n < 2:
        raise ValueError("factor requires n >= 2")
    if effort < 0:
        raise ValueError("effort must be >= 0")
    counts: dict[int, int] = {}
    rem = n
    for p in (2, 3, 5):
        if p > effort:
            break
        while rem % p == 0:
            counts[p] = counts.get(p, 0) + 1
            rem //= p
    q = 7
    fast_bound = min(effort, _FAST_TRIAL_BOUND)
    while q * q <= rem and q <= fast_bound:
        while rem % q == 0:
            counts[q] = counts.get(q, 0) + 1
            rem //= q
        q += 2 if q % 6 == 5 else 4

    leftovers: list[int] = []
    stack = [rem] if rem > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m <= fast_bound * fast_bound:
            # no factor up to fast_bound survived the scan above, so m is prime
            counts[m] = counts.get(m, 0) + 1
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        pp = perfect_power(m)
        if pp is not None:
            base, d = pp
            stack.extend([base] * d)
            continue
        g = _brent_rho(m, effort) if effort > 0 else None
        if g is None:
            g = _trial_scan(m, fast_bound, effort)
        if g is None:
            leftovers.append(m)
            continue
        stack.append(g)
        stack.append(m // g)

    ordered = tuple(sorted(counts.items()))
    return Factorization(value=n, factors=ordered, complete=not leftovers)


def divisors_of(f: Factorization) -> list[int]:
    """All positive divisors from a complete factorization, sorted."""
    if not f.complete:
        raise IncompleteFactorization(f"cannot enumerate divisors of {f.value}")
    divs = [1]
    for p, e in f.factors:
        pk = 1
        block = []
        for _ in range(e):
            pk *= p
            block.extend(d * pk for d in divs)
        divs.extend(block)
    return sorted(divs)


def squarefree_decompose(n: int, effort: int = DEFAULT_FACTOR_EFFORT,
                         factorization: Factorization | None = None) -> tuple[int, int]:
    """Write n = b**2 * d with d squarefree; returns (b, d).

    Requires a complete factorization and raises IncompleteFactorization
    otherwise, because squarefreeness of the cofactor cannot be certified.

    >>> squarefree_decompose(325)
    (5, 13)
    """
    if n < 1:
        raise ValueError("squarefree_decompose requires n >= 1")
    if n == 1:
        return 1, 1
    f = factorization if factorization is not None else factor(n, effort)
    if f.value != n:
        raise ValueError("factorization is for a different value")
    if not f.complete:
        raise IncompleteFactorization(
            f"factorization of {n} incomplete within budget")
    b = 1
    d = 1
    for p, e in f.factors:
        b *= p ** (e // 2)
        if e % 2:
            d *= p
    return b, d


def is_wieferich(p: int) -> bool:
    """True iff 2**(p-1) == 1 mod p**2 (p an odd prime).

    >>> is_wieferich(1093)
    True
    """
    if p < 2 or not is_prime(p):
        raise ValueError("is_wieferich requires a prime")
    return pow(2, p - 1, p * p) == 1
