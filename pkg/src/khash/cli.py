"""Command-line front end.

    khash table1 [--qmax N] [--csv FILE]
    khash sweep --kmin A --kmax B --qcap N [--bounds LIST] --out FILE
    khash conjecture [--kmin 3 --kmax 100 --qcap N]
    khash verify --code FILE --k K [--budget N]
    khash mindist --code FILE
    khash search --q Q --n N --k K (--exhaustive | --random T --seed S)
    khash bruen-check --q Q --m M --trials T --seed S

Exit codes: 0 when a check holds or a computation completes, 1 when a
property fails (a witness or violation is printed), 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import bounds as B
from . import codes, covering
from .gf import FieldError, field_of_order, prime_powers

# rows printed in the published table; the rest of [3, 64] is elided there
REFERENCE_TABLE1_ROWS = (3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 64)

CSV_HEADER = ["q", "k", "bound_id", "value_exact", "value_float"]
DEFAULT_SWEEP_BOUNDS = ("PlotkinCor", "AaltonenCor", "KornerMarton", "BlackburnWild", "LinearLower")
UPPER_BOUNDS = {B.BoundId.PlotkinCor, B.BoundId.AaltonenCor, B.BoundId.KornerMarton, B.BoundId.BlackburnWild}
CONJECTURE_QCAP = 4096


class UsageError(Exception):
    pass


@dataclass
class SweepConfig:
    k_min: int = 3
    k_max: int = 5
    q_cap: int = 256
    prime_powers_only: bool = True
    bounds: tuple = DEFAULT_SWEEP_BOUNDS
    out: str = "-"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if not 3 <= self.k_min <= self.k_max:
            raise UsageError("need 3 <= kmin <= kmax")
        if self.q_cap < 2 * self.k_min - 3:
            raise UsageError("qcap must be at least 2*kmin - 3")
        self.bounds = tuple(B.BoundId(b) for b in self.bounds)

    def q_values(self, k: int) -> list[int]:
        lo = max(k, 2 * k - 3)
        if self.prime_powers_only:
            return prime_powers(lo, self.q_cap)
        return list(range(lo, self.q_cap + 1))


def _csv_row(rep: B.BoundReport) -> list:
    ex = rep.rate.exact
    return [rep.q, rep.k, str(rep.bound_id), "" if ex is None else f"{ex.numerator}/{ex.denominator}", repr(rep.rate.approx)]


# -- table1 ---------------------------------------------------------------------

def table1_rows(q_max: int = 64) -> list[dict]:
    rows = []
    for q in prime_powers(3, q_max):
        rows.append({
            "q": q,
            "cor4": B.evaluate("PlotkinCor", q, 3),
            "cor5": B.rate_aaltonen_corollary(q, 3),
            "km": B.rate_korner_marton(q, 3),
            "printed": q in REFERENCE_TABLE1_ROWS,
        })
    return rows


def render_table1(rows) -> str:
    out = io.StringIO()
    out.write("Upper bounds on the rate of linear 3-hash codes over F_q (rounded upwards)\n")
    out.write(f"{'q':>3}  {'Plotkin corollary':<20}  {'LP corollary':<12}  Korner-Marton\n")
    for r in rows:
        c4, c5, km = r["cor4"].rate, r["cor5"].rate, r["km"].rate
        col4 = f"{c4.display()} = {c4.ceil4()}"
        colkm = f"{km.display()} = {km.ceil4()}" if km.exact is not None else km.ceil4()
        note = "" if r["printed"] else "  (supplementary row)"
        out.write(f"{r['q']:>3}  {col4:<20}  {c5.ceil4():<12}  {colkm:<15}{note}".rstrip() + "\n")
    return out.getvalue()


def cmd_table1(args) -> int:
    if args.qmax < 3:
        raise UsageError("--qmax must be >= 3")
    rows = table1_rows(args.qmax)
    sys.stdout.write(render_table1(rows))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for r in rows:
                for key in ("cor4", "cor5", "km"):
                    w.writerow(_csv_row(r[key]))
    return 0


# -- sweep ------------------------------------------------------------------------

def _sweep_point(task):
    q, k, bound_ids = task
    reps = []
    for bid in bound_ids:
        if bid is B.BoundId.LinearLower and q < math.comb(k, 2):
            continue
        reps.append(B.evaluate(bid, q, k))
    return reps


def sweep_reports(cfg: SweepConfig) -> list[list[B.BoundReport]]:
    tasks = [(q, k, cfg.bounds) for k in range(cfg.k_min, cfg.k_max + 1) for q in cfg.q_values(k)]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            return list(ex.map(_sweep_point, tasks, chunksize=64))
    return [_sweep_point(t) for t in tasks]


def check_sweep_consistency(groups) -> list[str]:
    """Lower bound <= every upper bound on each (q, k) where both are present."""
    problems = []
    for reps in groups:
        lower = [r for r in reps if r.bound_id is B.BoundId.LinearLower]
        uppers = [r for r in reps if r.bound_id in UPPER_BOUNDS]
        for lo in lower:
            for up in uppers:
                if lo.rate.approx > up.rate.approx:
                    problems.append(f"q={lo.q} k={lo.k}: LinearLower {lo.rate.approx} > {up.bound_id} {up.rate.approx}")
    return problems


def write_sweep_csv(groups, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for reps in groups:
        for rep in reps:
            w.writerow(_csv_row(rep))


def cmd_sweep(args) -> int:
    cfg = SweepConfig(args.kmin, args.kmax, args.qcap, not args.all_q,
                      tuple(args.bounds.split(",")) if args.bounds else DEFAULT_SWEEP_BOUNDS,
                      args.out, args.seed, args.jobs)
    groups = sweep_reports(cfg)
    if cfg.out == "-":
        write_sweep_csv(groups, sys.stdout)
    else:
        with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
            write_sweep_csv(groups, fh)
    problems = check_sweep_consistency(groups)
    for p in problems:
        print("inconsistent:", p, file=sys.stderr)
    return 1 if problems else 0


# -- conjecture ---------------------------------------------------------------------

@dataclass
class ConjectureRow:
    k: int
    q_lo: int
    q_hi: int
    count: int = 0
    violations: list = field(default_factory=list)
    min_margin: float = math.inf
    min_margin_q: int = 0
    chain: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and all(self.chain.values())


def conjecture_for_k(k: int, q_cap: int = CONJECTURE_QCAP) -> ConjectureRow:
    hi = max(q_cap, k * k)
    row = ConjectureRow(k, 2 * k - 3, hi)
    for q in prime_powers(2 * k - 3, hi):
        margin = B.conjecture_margin(q, k)
        row.count += 1
        if margin <= 0:
            row.violations.append(q)
        if margin < row.min_margin:
            row.min_margin, row.min_margin_q = margin, q
        if k == 3 and (q in (3, 64) or q & (q - 1) == 0 or q == row.q_hi):
            row.margins[q] = margin
    if k >= 4:
        for mult in (1, 2, 10, 100):
            row.chain[mult * k * k] = B.theorem7_chain_check(mult * k * k, k)
    return row


def run_conjecture(k_min: int, k_max: int, q_cap: int, jobs: int = 1) -> list[ConjectureRow]:
    ks = list(range(k_min, k_max + 1))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(conjecture_for_k, ks, [q_cap] * len(ks)))
    return [conjecture_for_k(k, q_cap) for k in ks]


def render_conjecture(rows, q_cap) -> str:
    out = io.StringIO()
    out.write("Plotkin corollary < Korner-Marton for prime powers 2k-3 <= q <= max(k^2, qcap)\n")
    out.write(f"qcap = {q_cap}; Bernoulli chain checked at q in {{k^2, 2k^2, 10k^2, 100k^2}} for k >= 4\n")
    for r in rows:
        chain = "-" if not r.chain else ("PASS" if all(r.chain.values()) else "FAIL")
        first = f"first violation q={r.violations[0]}" if r.violations else "no violations"
        out.write(f"k={r.k:>3}  q in [{r.q_lo}, {r.q_hi}]  {r.count:>5} prime powers  "
                  f"min margin {r.min_margin:.6e} at q={r.min_margin_q}  chain {chain}  {first}\n")
        if r.margins:
            out.write("       margin KM - Cor4 by q: " + ", ".join(f"{q}: {m:.6f}" for q, m in sorted(r.margins.items())) + "\n")
    out.write("PASS\n" if all(r.ok for r in rows) else "FAIL\n")
    return out.getvalue()


def cmd_conjecture(args) -> int:
    if not 3 <= args.kmin <= args.kmax:
        raise UsageError("need 3 <= kmin <= kmax")
    rows = run_conjecture(args.kmin, args.kmax, args.qcap, args.jobs)
    sys.stdout.write(render_conjecture(rows, args.qcap))
    return 0 if all(r.ok for r in rows) else 1


# -- code tools --------------------------------------------------------------------

def _load(path):
    try:
        return codes.read_code(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (codes.CodeError, FieldError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_verify(args) -> int:
    G = _load(args.code)
    try:
        w = codes.is_k_hash(G, args.k, args.budget)
    except codes.BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(codes.format_witness(w, args.k))
    return 0 if w is None else 1


def cmd_mindist(args) -> int:
    G = _load(args.code)
    d = codes.min_distance(G)
    print(f"n={G.n} m={G.m} d={d} delta={d / G.n:.6f}")
    return 0


def cmd_search(args) -> int:
    try:
        F = field_of_order(args.q)
        mode = "exhaustive" if args.exhaustive else "random"
        m, G = codes.max_linear_khash_dimension(F, args.n, args.k, mode, trials=args.random or 1, seed=args.seed)
    except (FieldError, codes.CodeError) as exc:
        raise UsageError(str(exc)) from exc
    label = "m*" if args.exhaustive else "best m found"
    print(f"# {label} = {m} for q={args.q} n={args.n} k={args.k} ({mode})")
    sys.stdout.write(codes.format_code(G))
    return 0


def cmd_bruen_check(args) -> int:
    try:
        F = field_of_order(args.q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    if args.m < 1 or args.trials < 1:
        raise UsageError("need m >= 1 and trials >= 1")
    bad = 0
    res = covering.bruen_suite(F, args.m, args.trials, args.seed)
    print(f"bruen q={args.q} m={args.m}: {res.trials} trials, {len(res.violations)} violations, {res.tight} tight")
    for H in res.violations:
        print("  violation:", H.planes)
    bad += len(res.violations)
    if args.q >= 3:
        lem = covering.lemma3_suite(F, args.trials, args.seed)
        print(f"multicover q={args.q}: {lem.trials} trials, {len(lem.violations)} violations, {lem.tight} tight")
        for inst in lem.violations:
            print("  violation:", inst)
        bad += len(lem.violations)
    t = covering.find_tight_cover(F, args.m, 1) if F.q ** args.m <= 64 else None
    if t is not None:
        print(f"tight cover of size {len(t)}: {list(t.planes)}")
    return 1 if bad else 0


# -- argument parsing -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khash", description="Rate bounds and checks for linear (q,k)-hash codes")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("table1", help="upper bounds for k=3 and prime powers q <= qmax")
    s.add_argument("--qmax", type=int, default=64)
    s.add_argument("--csv", help="also write the rows as CSV")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("sweep", help="CSV of bounds over a (q, k) grid")
    s.add_argument("--kmin", type=int, required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--qcap", type=int, required=True)
    s.add_argument("--bounds", help="comma-separated bound ids (default: %s)" % ",".join(DEFAULT_SWEEP_BOUNDS))
    s.add_argument("--out", default="-", help="output CSV path, '-' for stdout")
    s.add_argument("--all-q", action="store_true", help="every integer q, not only prime powers")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("conjecture", help="check Plotkin corollary < Korner-Marton")
    s.add_argument("--kmin", type=int, default=3)
    s.add_argument("--kmax", type=int, default=100)
    s.add_argument("--qcap", type=int, default=CONJECTURE_QCAP)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("verify", help="test the k-hash property of a code file")
    s.add_argument("--code", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=int, default=codes.DEFAULT_BUDGET)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("mindist", help="minimum distance of a code file")
    s.add_argument("--code", required=True)
    s.set_defaults(func=cmd_mindist)

    s = sub.add_parser("search", help="largest dimension of a linear k-hash code")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--random", type=int, metavar="T", help="random codes per dimension")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("bruen-check", help="randomized covering-bound property checks")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bruen_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, B.BoundDomainError) as exc:
        print(f"khash {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
