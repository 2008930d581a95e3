"""Companion Pell pairs (1 + sqrt(2))**n = G_n + F_n * sqrt(2).

Both sequences satisfy x_{n+2} = 2 x_{n+1} + x_n; G carries the constant
terms (1, 1, 3, 7, 17, ...), F the sqrt(2) coefficients (0, 1, 2, 5, ...).
Negative indices are the exact ring powers of (1 + sqrt(2))**-1 = sqrt(2) - 1,
so G_{-n} = (-1)**n G_n and F_{-n} = (-1)**(n+1) F_n.

The gcd structure of G and the emptiness of prime-power searches in it are
the observable content of the appendix-style divisibility results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import intkit
from .errors import DefectError


@dataclass(frozen=True)
class PellPair:
    n: int
    g: int
    f: int


def _pair_mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    # (g1 + f1*sqrt(2)) * (g2 + f2*sqrt(2))
    return x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def pell_pair(n: int) -> PellPair:
    """Exact (G_n, F_n) by binary exponentiation in Z[sqrt(2)].

    >>> pell_pair(5)
    PellPair(n=5, g=41, f=29)
    """
    base = (1, 1) if n >= 0 else (-1, 1)
    e = abs(n)
    acc = (1, 0)
    while e:
        if e & 1:
            acc = _pair_mul(acc, base)
        base = _pair_mul(base, base)
        e >>= 1
    return PellPair(n=n, g=acc[0], f=acc[1])


def g_sequence(n_max: int) -> list[int]:
    """G_0 .. G_{n_max} by the two-term recurrence (one addition per step)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    seq = [1, 1]
    while len(seq) <= n_max:
        seq.append(2 * seq[-1] + seq[-2])
    return seq[:n_max + 1]


def addition_identity_check(l: int, m: int) -> bool:
    """G_{l+m} == 2*G_m*G_l - (-1)**m * G_{l-m}, checked exactly."""
    lhs = pell_pair(l + m).g
    rhs = 2 * pell_pair(m).g * pell_pair(l).g - (-1) ** (m & 1) * pell_pair(l - m).g
    return lhs == rhs


def pair_reduce(l: int, r: int) -> tuple[int, int]:
    """One step of the index-pair reduction used by the gcd argument.

    Maps (l, r) to (max(|l - 2r|, r), min(|l - 2r|, r)); the gcd of the
    G-values at the two indices is preserved.  Arguments are put in
    l >= r >= 0 order first.
    """
    if l < 0 or r < 0:
        raise ValueError("indices must be >= 0")
    if l < r:
        l, r = r, l
    a = abs(l - 2 * r)
    return (max(a, r), min(a, r))


def g_gcd(l: int, m: int) -> int:
    """gcd(G_l, G_m) in closed form.

    Equals G_{gcd(l, m)} when l and m have the same 2-adic valuation and 1
    otherwise.
    """
    if l < 1 or m < 1:
        raise ValueError("indices must be >= 1")
    if intkit.valuation(l, 2) == intkit.valuation(m, 2):
        return pell_pair(math.gcd(l, m)).g
    return 1


def g_gcd_oracle(l: int, m: int) -> int:
    """gcd(G_l, G_m) computed directly on the values."""
    if l < 1 or m < 1:
        raise ValueError("indices must be >= 1")
    return math.gcd(pell_pair(l).g, pell_pair(m).g)


def prime_power_search(p: int, n_max: int) -> list[tuple[int, int]]:
    """All (n, e) with 0 <= n <= n_max, G_n == p**e and e >= 2.

    G is generated incrementally; a hit must be a pure power of p, so the
    scan filters on divisibility by p first and then certifies the full
    power exactly.  More than one hit contradicts the uniqueness result
    for p-power values, so that raises DefectError.
    """
    if p < 3 or not intkit.is_prime(p):
        raise ValueError("p must be an odd prime")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    hits: list[tuple[int, int]] = []
    for n, g in enumerate(g_sequence(n_max)):
        if g % p:
            continue
        e = intkit.valuation(g, p)
        if e >= 2 and p**e == g:
            hits.append((n, e))
    if len(hits) >= 2:
        raise DefectError(f"multiple pure {p}-power values in G: {hits}")
    return hits
