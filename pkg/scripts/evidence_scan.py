"""Produce evidence tables over a (p, r, m) grid.

Runs the same pipeline as `pellrat scan` but sweeps several p values in
one invocation, writes one CSV per p into an output directory, and
prints a verdict tally at the end.  A shared factor cache keeps repeat
runs cheap.

Example:

    python3 scripts/evidence_scan.py --p 3,5,7 --r 2..4 --out-dir evidence \
        --cache evidence/factors.txt
"""

import argparse
import math
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from pellrat import cli
from pellrat import quadfield as qf


@dataclass
class ScanConfig:
    p_values: list[int] = field(default_factory=lambda: [3, 5, 7])
    r_lo: int = 2
    r_hi: int = 4
    m_policy: str = "one"  # "one", "bound", or an explicit integer
    m_cap: int = 500  # safety cap when m_policy == "bound"
    out_dir: Path = Path("evidence")
    cache: Path | None = None
    factor_effort: int = 10**6
    precision_cap: int = 64
    classno_ceiling: int = 10**10
    jobs: int = 1


def parse_config(argv=None) -> ScanConfig:
    cfg = ScanConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", default="3,5,7", help="comma-separated odd primes")
    ap.add_argument("--r", default="2..4", help="exponent range a..b")
    ap.add_argument("--m", default=cfg.m_policy,
                    help="'one', 'bound', or a single coefficient")
    ap.add_argument("--m-cap", type=int, default=cfg.m_cap,
                    help="largest m swept when --m bound exceeds it")
    ap.add_argument("--out-dir", type=Path, default=cfg.out_dir)
    ap.add_argument("--cache", type=Path, default=None,
                    help="factorization cache file, created if missing")
    ap.add_argument("--factor-effort", type=int, default=cfg.factor_effort)
    ap.add_argument("--jobs", type=int, default=cfg.jobs)
    args = ap.parse_args(argv)

    cfg.p_values = [int(tok) for tok in args.p.split(",")]
    lo, _, hi = args.r.partition("..")
    cfg.r_lo, cfg.r_hi = int(lo), int(hi or lo)
    cfg.m_policy = args.m
    cfg.m_cap = args.m_cap
    cfg.out_dir = args.out_dir
    cfg.cache = args.cache
    cfg.factor_effort = args.factor_effort
    cfg.jobs = args.jobs
    return cfg


def m_values(cfg: ScanConfig, p: int, r: int) -> list[int]:
    if cfg.m_policy == "one":
        return [1]
    if cfg.m_policy == "bound":
        top = min(math.floor(qf.m_bound(p, r)), cfg.m_cap)
        return [m for m in range(1, top + 1) if m % p]
    m = int(cfg.m_policy)
    return [m] if m % p else []


def run(cfg: ScanConfig) -> int:
    opts = cli.PipelineOptions(factor_effort=cfg.factor_effort,
                               precision_cap=cfg.precision_cap,
                               classno_ceiling=cfg.classno_ceiling)
    cache = cli.FactorCache(cfg.cache)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    tally = Counter()
    t0 = time.time()
    for p in cfg.p_values:
        records = []
        for r in range(cfg.r_lo, cfg.r_hi + 1):
            for m in m_values(cfg, p, r):
                rec = cli.compute_record(p, r, m, opts, cache)
                records.append(rec)
                tally[rec.greenberg or rec.p_rational or "failed"] += 1
        meta = f"evidence_scan p={p} r={cfg.r_lo}..{cfg.r_hi} m={cfg.m_policy}"
        path = cfg.out_dir / f"evidence_p{p}.csv"
        path.write_text(cli.render_csv(records, meta))
        print(f"wrote {path} ({len(records)} rows)")
    elapsed = time.time() - t0
    for verdict, count in sorted(tally.items()):
        print(f"  {verdict}: {count}")
    print(f"done in {elapsed:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(run(parse_config()))
