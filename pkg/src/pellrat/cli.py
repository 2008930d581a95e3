"""Command-line surface: single-cell reports, grid scans, Pell helpers.

Scan output is a deterministic function of the grid: rows are sorted by
(p, r, m) whatever the worker count, data rows carry no timestamps, and
run metadata lives on a single '#' comment line (CSV only).  The factor
cache is the one piece of shared state and serializes its appends.

Exit codes: 0 success, 1 usage or validation, 2 factorization incomplete
in single-cell mode, 3 precision exhausted in single-cell mode, 4 output
I/O failure.  Scans exit 0 on per-row failures; the rows carry notes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

from . import classno, intkit, invariants, padic, pellseq
from .errors import (DefectError, IncompleteFactorization, PrecisionExhausted,
                     ToolkitError)
from .quadfield import (construct_family, fundamental_unit, m_bound,
                        m_bound_satisfied, unit_index, unit_norm_sign)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FACTOR = 2
EXIT_PRECISION = 3
EXIT_IO = 4


@dataclass(frozen=True)
class PipelineOptions:
    factor_effort: int = intkit.DEFAULT_FACTOR_EFFORT
    precision_cap: int = padic.DEFAULT_PRECISION_CAP
    classno_ceiling: int = classno.DEFAULT_DISC_CEILING


class FactorCache:
    """Plain-text factorization cache: one line per entry, `N p1^e1 p2^e2`.

    Loaded whole at construction; appends are serialized and flushed line
    by line so a crashed scan leaves a valid file.  Only complete
    factorizations are stored.  Invalid lines fail loudly: a cache that
    lies is worse than no cache.
    """

    def __init__(self, path: str | None):
        self.path = path
        self._lock = threading.Lock()
        self._table: dict[int, intkit.Factorization] = {}
        if path is not None:
            try:
                with open(path, encoding="utf-8") as fh:
                    for line in fh:
                        line = line.strip()
                        if line:
                            self._load_line(line)
            except FileNotFoundError:
                pass

    def _load_line(self, line: str):
        parts = line.split()
        value = int(parts[0])
        pairs = []
        prod = 1
        for tok in parts[1:]:
            base, _, exp = tok.partition("^")
            q, e = int(base), int(exp) if exp else 1
            if not intkit.is_prime(q) or e < 1:
                raise ValueError(f"bad cache entry for {value}: {tok}")
            pairs.append((q, e))
            prod *= q**e
        if prod != value:
            raise ValueError(f"cache line for {value} does not multiply out")
        self._table[value] = intkit.Factorization(
            value=value, factors=tuple(pairs), complete=True)

    def get(self, n: int) -> intkit.Factorization | None:
        with self._lock:
            return self._table.get(n)

    def put(self, f: intkit.Factorization):
        if not f.complete:
            return
        with self._lock:
            if f.value in self._table:
                return
            self._table[f.value] = f
            if self.path is not None:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(f.format_line() + "\n")

    def factor(self, n: int, effort: int) -> intkit.Factorization:
        hit = self.get(n)
        if hit is not None:
            return hit
        f = intkit.factor(n, effort)
        self.put(f)
        return f


# ---------------------------------------------------------------------------
# scan records


@dataclass(frozen=True)
class ScanRecord:
    p: int
    r: int
    m: int
    N: int
    b: int | None
    D: int | None
    disc: int | None
    unit: tuple[int, int, int] | None  # (u, v, den)
    unit_norm: int | None
    t_is_fundamental: bool | None
    splits: bool | None
    n2: int | None
    n1_is_one: str
    class_number: int | None
    h_val_p: int | None
    wieferich: bool
    m_bound_ok: bool
    p_rational: str
    greenberg: str
    an_prediction: int | None
    notes: tuple[str, ...]


FIELD_NAMES = tuple(f.name for f in fields(ScanRecord))

# columns rendered as arbitrary-precision decimal strings in JSON
_BIG_FIELDS = {"N", "b", "D", "disc", "class_number", "an_prediction"}


def compute_record(p: int, r: int, m: int, opts: PipelineOptions,
                   cache: FactorCache, strict: bool = False) -> ScanRecord:
    """Run the whole pipeline on one grid cell.

    With ``strict`` (single-cell mode) factorization and precision
    failures propagate for the exit-code contract; otherwise they become
    null fields plus an explanatory note.
    """
    n = m * m * p ** (2 * r) + 1
    base = dict(p=p, r=r, m=m, N=n, b=None, D=None, disc=None, unit=None,
                unit_norm=None, t_is_fundamental=None, splits=None, n2=None,
                n1_is_one=invariants.N1_UNKNOWN, class_number=None,
                h_val_p=None, wieferich=intkit.is_wieferich(p),
                m_bound_ok=m_bound_satisfied(p, r, m),
                p_rational=invariants.INCONCLUSIVE,
                greenberg=invariants.INCONCLUSIVE, an_prediction=None)
    try:
        fam = construct_family(
            p, r, m, opts.factor_effort,
            factor_fn=lambda v: cache.factor(v, opts.factor_effort))
    except IncompleteFactorization:
        if strict:
            raise
        return ScanRecord(**base, notes=("factorization incomplete",))
    report, notes = invariants.build_report(
        fam, opts.classno_ceiling, opts.precision_cap, strict=strict)
    eps = fundamental_unit(fam.field)
    sign, k = unit_index(fam.t, eps)
    base.update(
        b=fam.b, D=fam.d, disc=fam.field.disc, unit=(eps.u, eps.v, eps.den),
        unit_norm=unit_norm_sign(fam.field),
        t_is_fundamental=(sign == 1 and k == 1),
        splits=intkit.jacobi(fam.d, p) == 1, n2=report.n2,
        n1_is_one=report.n1_is_one, class_number=report.class_number,
        h_val_p=report.h_val_p, p_rational=report.p_rational_verdict,
        greenberg=report.greenberg_verdict, an_prediction=report.an_prediction)
    return ScanRecord(**base, notes=tuple(notes))


def _csv_cell(name: str, value) -> str:
    if value is None:
        return ""
    if name == "unit":
        return ":".join(str(c) for c in value)
    if name == "notes":
        return ";".join(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def record_to_csv_row(rec: ScanRecord) -> str:
    return ",".join(_csv_cell(name, getattr(rec, name)) for name in FIELD_NAMES)


def record_to_json_obj(rec: ScanRecord) -> dict:
    obj = {}
    for name in FIELD_NAMES:
        value = getattr(rec, name)
        if name == "unit":
            obj[name] = None if value is None else {
                "u": str(value[0]), "v": str(value[1]), "den": str(value[2])}
        elif name == "notes":
            obj[name] = list(value)
        elif name in _BIG_FIELDS:
            obj[name] = None if value is None else str(value)
        else:
            obj[name] = value
    return obj


def render_csv(records: list[ScanRecord], meta: str) -> str:
    lines = [f"# {meta}", ",".join(FIELD_NAMES)]
    lines.extend(record_to_csv_row(rec) for rec in records)
    return "\n".join(lines) + "\n"


def render_json(records: list[ScanRecord]) -> str:
    return json.dumps([record_to_json_obj(rec) for rec in records], indent=2) + "\n"


def render_human(rec: ScanRecord) -> str:
    lines = []
    for name in FIELD_NAMES:
        value = getattr(rec, name)
        if name == "notes":
            shown = ";".join(value) if value else "(none)"
        else:
            shown = _csv_cell(name, value) if value is not None else "null"
        lines.append(f"{name} = {shown}")
    return "\n".join(lines) + "\n"


def _write_output(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    # spec'd contract reserves exit 1 for usage errors; argparse's default is 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _parse_p_list(text: str) -> list[int]:
    try:
        ps = [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise SystemExit(_usage(f"bad --p list: {text!r}"))
    if not ps:
        raise SystemExit(_usage("--p list is empty"))
    for p in ps:
        if p < 3 or p % 2 == 0 or not intkit.is_prime(p):
            raise SystemExit(_usage(f"p must be an odd prime, got {p}"))
    return sorted(set(ps))


def _parse_r_range(text: str) -> list[int]:
    if ".." in text:
        lo_s, _, hi_s = text.partition("..")
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError:
            raise SystemExit(_usage(f"bad --r range: {text!r}"))
    else:
        try:
            lo = hi = int(text)
        except ValueError:
            raise SystemExit(_usage(f"bad --r value: {text!r}"))
    if lo < 2 or hi < lo:
        raise SystemExit(_usage(f"--r range must satisfy 2 <= a <= b, got {text!r}"))
    return list(range(lo, hi + 1))


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _m_values(policy: str, p: int, r: int) -> list[int]:
    if policy == "one":
        return [1]
    if policy == "bound":
        top = math.floor(m_bound(p, r))
        return [m for m in range(1, top + 1) if m % p != 0]
    m = int(policy)
    return [m] if m % p != 0 else []


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pellrat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def pipeline_flags(sp):
        sp.add_argument("--factor-effort", type=int, default=intkit.DEFAULT_FACTOR_EFFORT,
                        help="trial-division / rho budget (default 1000000)")
        sp.add_argument("--precision-cap", type=int, default=padic.DEFAULT_PRECISION_CAP,
                        help="max base-p digits for valuations (default 64)")
        sp.add_argument("--classno-ceiling", type=int, default=classno.DEFAULT_DISC_CEILING,
                        help="skip class numbers above this discriminant (default 10^10)")
        sp.add_argument("--cache", default=None, help="factorization cache file")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    fp = sub.add_parser("field", help="full pipeline on a single (p, r, m) cell")
    fp.add_argument("--p", required=True, type=int)
    fp.add_argument("--r", required=True, type=int)
    fp.add_argument("--m", type=int, default=1)
    pipeline_flags(fp)

    sp = sub.add_parser("scan", help="evidence table over a (p, r, m) grid")
    sp.add_argument("--p", required=True, help="comma-separated odd primes")
    sp.add_argument("--r", required=True, help="single value or a..b inclusive")
    sp.add_argument("--m", default="one", help="'one', 'bound', or an explicit integer")
    sp.add_argument("--jobs", type=int, default=1)
    pipeline_flags(sp)

    gp = sub.add_parser("gseq", help="Pell sequence helpers")
    gsub = gp.add_subparsers(dest="gseq_command", required=True)
    pairp = gsub.add_parser("pair", help="print G_n and F_n")
    pairp.add_argument("n", type=int)
    gcdp = gsub.add_parser("gcd", help="gcd(G_l, G_m) by the closed form")
    gcdp.add_argument("l", type=int)
    gcdp.add_argument("m", type=int)
    searchp = gsub.add_parser("search", help="scan G_n for perfect prime powers p^e, e >= 2")
    searchp.add_argument("--p", required=True, type=int)
    searchp.add_argument("--max", required=True, type=int, dest="n_max")
    return parser


# ---------------------------------------------------------------------------
# subcommands


def _options_from(args) -> PipelineOptions:
    if args.factor_effort < 0:
        raise SystemExit(_usage("--factor-effort must be >= 0"))
    if args.precision_cap < 1:
        raise SystemExit(_usage("--precision-cap must be >= 1"))
    if args.classno_ceiling < 1:
        raise SystemExit(_usage("--classno-ceiling must be >= 1"))
    return PipelineOptions(factor_effort=args.factor_effort,
                           precision_cap=args.precision_cap,
                           classno_ceiling=args.classno_ceiling)


def cmd_field(args) -> int:
    p, r, m = args.p, args.r, args.m
    if p < 3 or p % 2 == 0 or not intkit.is_prime(p):
        return _usage(f"p must be an odd prime, got {p}")
    if r < 2:
        return _usage(f"r must be >= 2, got {r}")
    if m < 1:
        return _usage(f"m must be >= 1, got {m}")
    if m % p == 0:
        return _usage(f"m must be coprime to p, got m={m}, p={p}")
    opts = _options_from(args)
    cache = FactorCache(args.cache)
    try:
        rec = compute_record(p, r, m, opts, cache, strict=True)
    except IncompleteFactorization as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FACTOR
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    if args.format == "json":
        text = json.dumps(record_to_json_obj(rec), indent=2) + "\n"
    elif args.format == "csv":
        text = ",".join(FIELD_NAMES) + "\n" + record_to_csv_row(rec) + "\n"
    else:
        text = render_human(rec)
    return _write_output(text, args.out)


def cmd_scan(args) -> int:
    ps = _parse_p_list(args.p)
    rs = _parse_r_range(args.r)
    policy = args.m
    if policy not in ("one", "bound"):
        try:
            m_fixed = int(policy)
        except ValueError:
            return _usage(f"--m must be 'one', 'bound', or an integer, got {policy!r}")
        if m_fixed < 1:
            return _usage(f"--m must be >= 1, got {m_fixed}")
    if args.jobs < 1:
        return _usage(f"--jobs must be >= 1, got {args.jobs}")
    opts = _options_from(args)
    cache = FactorCache(args.cache)

    cells = [(p, r, m) for p in ps for r in rs for m in _m_values(policy, p, r)]

    def run_cell(cell):
        p, r, m = cell
        try:
            return compute_record(p, r, m, opts, cache, strict=False)
        except ToolkitError as exc:
            if isinstance(exc, DefectError):
                raise
            n = m * m * p ** (2 * r) + 1
            return ScanRecord(
                p=p, r=r, m=m, N=n, b=None, D=None, disc=None, unit=None,
                unit_norm=None, t_is_fundamental=None, splits=None, n2=None,
                n1_is_one=invariants.N1_UNKNOWN, class_number=None,
                h_val_p=None, wieferich=intkit.is_wieferich(p),
                m_bound_ok=m_bound_satisfied(p, r, m),
                p_rational=invariants.INCONCLUSIVE,
                greenberg=invariants.INCONCLUSIVE, an_prediction=None,
                notes=(f"{type(exc).__name__}: {exc}".replace(",", ";"),))

    if args.jobs == 1:
        records = [run_cell(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(run_cell, cells))
    records.sort(key=lambda rec: (rec.p, rec.r, rec.m))

    fmt = args.format or "csv"
    if fmt == "csv":
        meta = f"pellrat scan p={args.p} r={args.r} m={policy}"
        text = render_csv(records, meta)
    else:
        text = render_json(records)
    code = _write_output(text, args.out)
    if code != EXIT_OK:
        return code

    verdicts: dict[str, int] = {}
    for rec in records:
        verdicts[rec.p_rational] = verdicts.get(rec.p_rational, 0) + 1
        verdicts[rec.greenberg] = verdicts.get(rec.greenberg, 0) + 1
    failed = sum(1 for rec in records if rec.D is None)
    summary = " ".join(f"{k}={v}" for k, v in sorted(verdicts.items()))
    print(f"scanned {len(records)} cells: {summary} row-failures={failed}",
          file=sys.stderr)
    return EXIT_OK


def cmd_gseq(args) -> int:
    if args.gseq_command == "pair":
        pair = pellseq.pell_pair(args.n)
        print(f"G={pair.g} F={pair.f}")
        return EXIT_OK
    if args.gseq_command == "gcd":
        if args.l < 1 or args.m < 1:
            return _usage("gcd arguments must be >= 1")
        print(pellseq.g_gcd(args.l, args.m))
        return EXIT_OK
    p, n_max = args.p, args.n_max
    if p < 3 or p % 2 == 0 or not intkit.is_prime(p):
        return _usage(f"p must be an odd prime, got {p}")
    if n_max < 1:
        return _usage(f"--max must be >= 1, got {n_max}")
    hits = pellseq.prime_power_search(p, n_max)
    if not hits:
        print("no solutions")
    else:
        for n, e in hits:
            print(f"HIT: G_{n} = {p}^{e}")
    return EXIT_OK


def entrypoint(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "field":
        return cmd_field(args)
    if args.command == "scan":
        return cmd_scan(args)
    return cmd_gseq(args)


if __name__ == "__main__":
    sys.exit(entrypoint())
