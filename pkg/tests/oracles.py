"""Slow, independently coded reference implementations.

Everything here favors directness over speed: plain trial division, a
brute-force unit search that walks v upward, and a quadratic-form counter
that scans the whole (a, b) box instead of enumerating divisors.  The
production code must agree with these on every overlapping input.
"""

import math


def trial_factor(n: int) -> dict[int, int]:
    """Complete factorization by unbounded trial division."""
    assert n >= 1
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_split(n: int) -> tuple[int, int]:
    """(b, d) with n = b*b*d and d squarefree, by trial factorization."""
    b = d = 1
    for q, e in trial_factor(n).items():
        b *= q ** (e // 2)
        if e % 2:
            d *= q
    return b, d


def brute_fundamental_unit(d: int) -> tuple[int, int, int]:
    """Smallest unit > 1 of the ring of integers of Q(sqrt(d)), as
    (u, v, den), found by brute force.

    The sqrt(d) coefficient of a unit > 1 is w/2 for some w >= 1 (w even
    on the integer lattice, w odd only when half-integers exist), and it
    strictly increases with the unit, so scanning w upward and returning
    the first hit is exhaustive.  Practical for d up to a few hundred.
    """
    half = d % 4 == 1
    w = 0
    while True:
        w += 1
        candidates = []
        if w % 2 == 0:
            v = w // 2
            target = d * v * v
            for delta in (-1, 1):
                u = math.isqrt(target + delta)
                if u * u == target + delta:
                    candidates.append((u, v, 1))
        elif half:
            # (u + w sqrt d)/2 with u odd and u^2 - d w^2 = +-4
            target = d * w * w
            for delta in (-4, 4):
                u = math.isqrt(target + delta)
                if u * u == target + delta and u % 2:
                    candidates.append((u, w, 2))
        if candidates:
            return min(candidates)


def brute_unit_norm(d: int) -> int:
    u, v, den = brute_fundamental_unit(d)
    return (u * u - d * v * v) // (den * den)


# ---------------------------------------------------------------------------
# indefinite binary quadratic forms, the slow way


def _is_reduced(a: int, b: int, c: int, disc: int) -> bool:
    # |sqrt(disc) - 2|a|| < b < sqrt(disc), all comparisons exact
    if b <= 0:
        return False
    if b * b >= disc:
        return False
    t = 2 * abs(a) - b
    lo_ok = t < 0 or t * t < disc  # sqrt(disc) > 2|a| - b
    t = 2 * abs(a) + b
    hi_ok = t * t > disc  # sqrt(disc) < 2|a| + b
    return lo_ok and hi_ok


def slow_reduced_forms(disc: int) -> set[tuple[int, int, int]]:
    """Every reduced form of the given discriminant, by scanning the
    whole coefficient box |a| < sqrt(disc), 0 < b < sqrt(disc)."""
    assert disc > 0 and disc % 4 in (0, 1) and math.isqrt(disc) ** 2 != disc
    s = math.isqrt(disc)
    forms = set()
    for a in range(-s - 1, s + 2):
        if a == 0:
            continue
        for b in range(1, s + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c != 0 and _is_reduced(a, b, c, disc):
                forms.add((a, b, c))
    return forms


def slow_rho(form: tuple[int, int, int], disc: int) -> tuple[int, int, int]:
    """One reduction step: (a, b, c) -> (c, b', (b'^2 - disc)/(4c))."""
    _, b, c = form
    s = math.isqrt(disc)
    ac = abs(c)
    assert ac <= s, "rho applied to a form outside the reduced range"
    # largest b' = -b mod 2|c| with b' <= floor(sqrt(disc))
    bp = -b + 2 * ac * ((b + s) // (2 * ac))
    return c, bp, (bp * bp - disc) // (4 * c)


def slow_narrow_class_number(disc: int) -> int:
    """Count rho-cycles among the reduced forms."""
    pending = slow_reduced_forms(disc)
    cycles = 0
    while pending:
        start = pending.pop()
        cycles += 1
        cur = slow_rho(start, disc)
        while cur != start:
            pending.discard(cur)
            cur = slow_rho(cur, disc)
    return cycles


def slow_minus_one_norm(disc: int) -> bool:
    """True when a unit of norm -1 exists: the principal cycle then
    contains a reduced form with leading coefficient -1."""
    s = math.isqrt(disc)
    b0 = s if (s - disc) % 2 == 0 else s - 1
    start = (1, b0, (b0 * b0 - disc) // 4)
    assert _is_reduced(*start, disc)
    cur = slow_rho(start, disc)
    seen = {start}
    while cur not in seen:
        seen.add(cur)
        cur = slow_rho(cur, disc)
    return any(a == -1 for a, _, _ in seen)


def slow_class_number(d: int) -> int:
    """Class number of Q(sqrt(d)) for squarefree d >= 2."""
    disc = d if d % 4 == 1 else 4 * d
    h_plus = slow_narrow_class_number(disc)
    if slow_minus_one_norm(disc):
        return h_plus
    assert h_plus % 2 == 0
    return h_plus // 2


# ---------------------------------------------------------------------------
# Pell numbers, directly from the recurrence


def slow_pell(n: int) -> tuple[int, int]:
    """(G_n, F_n) for any integer n via the linear recurrence x' = 2x + x''."""
    if n >= 0:
        g0, f0 = 1, 0  # n = 0
        g1, f1 = 1, 1  # n = 1
        if n == 0:
            return g0, f0
        for _ in range(n - 1):
            g0, g1 = g1, 2 * g1 + g0
            f0, f1 = f1, 2 * f1 + f0
        return g1, f1
    # run the recurrence backwards: x_{n-1} = x_{n+1} - 2 x_n
    g0, f0 = 1, 0
    g1, f1 = 1, 1
    for _ in range(-n):
        g0, g1 = g1 - 2 * g0, g0
        f0, f1 = f1 - 2 * f0, f0
    return g0, f0
