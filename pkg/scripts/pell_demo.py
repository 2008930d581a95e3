"""Walk through the G-sequence results at the terminal.

Three stages: a factored table of (1 + sqrt(2))**n = G_n + F_n*sqrt(2),
a gcd(G_l, G_m) demonstration showing both 2-valuation branches of the
closed form, and a search for perfect prime powers G_n = p**e with
e >= 2 across a range of primes (expected to come back empty).
"""

import argparse
import sys
from dataclasses import dataclass

from pellrat import intkit, pellseq


@dataclass
class DemoConfig:
    table_rows: int = 16
    search_n_max: int = 2000
    search_prime_max: int = 97


def show_table(rows: int):
    print(f"{'n':>4} {'G_n':>16} {'F_n':>16}  factorization of G_n")
    for n in range(rows):
        pair = pellseq.pell_pair(n)
        fac = intkit.factor(pair.g) if pair.g > 1 else None
        shown = fac.format_line().split(None, 1)[1] if fac else "-"
        print(f"{n:>4} {pair.g:>16} {pair.f:>16}  {shown}")
    print()


def show_gcd(pairs):
    print("gcd(G_l, G_m) against the closed form:")
    for l, m in pairs:
        g = pellseq.g_gcd(l, m)
        branch = ("same 2-valuation -> G_gcd(l,m)"
                  if intkit.valuation(l, 2) == intkit.valuation(m, 2)
                  else "split 2-valuation -> 1")
        print(f"  gcd(G_{l}, G_{m}) = {g:<12} [{branch}]")
    print()


def sweep_prime_powers(n_max: int, prime_max: int):
    print(f"searching G_n = p^e (e >= 2) for n <= {n_max}, p <= {prime_max}:")
    total = 0
    for p in range(3, prime_max + 1):
        if not intkit.is_prime(p):
            continue
        for n, e in pellseq.prime_power_search(p, n_max):
            print(f"  HIT: G_{n} = {p}^{e}")
            total += 1
    if total == 0:
        print("  none found")


def main(argv=None) -> int:
    cfg = DemoConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=cfg.table_rows)
    ap.add_argument("--n-max", type=int, default=cfg.search_n_max)
    ap.add_argument("--prime-max", type=int, default=cfg.search_prime_max)
    args = ap.parse_args(argv)

    show_table(args.rows)
    show_gcd([(6, 2), (9, 3), (4, 2), (12, 8), (5, 3), (300, 200)])
    sweep_prime_powers(args.n_max, args.prime_max)
    return 0


if __name__ == "__main__":
    sys.exit(main())
