"""``horomean`` command-line interface.

Standard output carries data only (CSV or JSON); progress and diagnostics
go to standard error. Exit status: 0 success, 1 invalid input, 2 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import zlib
from pathlib import Path
from typing import Any, Callable, Sequence, TextIO

from . import analytic, bound, census, mean
from .chi import KINDS, ChiFunction, make_chi
from .exceptions import ConsistencyError, DomainError, HoromeanError
from .primes import PrimeTable, build_prime_table, is_prime, load_table, save_table, smallest_prime_factors
from .rotation import parse_rotation

log = logging.getLogger("horomean")

Row = dict[str, Any]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2; usage errors are status 1 here
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _int_list(text: str) -> list[int]:
    """``"2..20,100,1000"`` -> explicit ascending-as-written integer list."""
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number list {text!r}") from None


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def write_rows(rows: Sequence[Row], columns: Sequence[str], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps([{c: row[c] for c in columns} for row in rows], indent=1))
        out.write("\n")
        return
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_fmt(row[c]) for c in columns) + "\n")


# --- table handling -------------------------------------------------------


def _cache_dir(args) -> Path | None:
    path = args.cache_dir or os.environ.get("HOROMEAN_CACHE")
    return Path(path) if path else None


def table_path(cache_dir: Path, q: int, x: int) -> Path:
    return cache_dir / f"ptable-q{q}-x{x}.txt"


def get_table(q: int, x: int, cache_dir: Path | None) -> PrimeTable:
    if cache_dir is not None:
        path = table_path(cache_dir, q, x)
        if path.exists():
            log.info("loading %s", path)
            return load_table(path)
    log.info("building prime table q=%d x=%d", q, x)
    table = build_prime_table(q, x)
    if cache_dir is not None:
        cache_dir.mkdir(parents=True, exist_ok=True)
        save_table(table, table_path(cache_dir, q, x))
    return table


def _chi(args, table: PrimeTable) -> ChiFunction:
    const = parse_rotation(args.value) if args.chi == "const" else None
    return make_chi(args.chi, table, t=args.t, k=args.k, const=const)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def _validate_common(args) -> None:
    _require(args.q is not None and is_prime(args.q), f"--q must be a prime, got {args.q}")
    chi = getattr(args, "chi", None)
    if chi == "psit":
        _require(args.t is not None and args.t >= 1, "--chi psit needs --t >= 1")
    if chi == "psipow":
        _require(args.k is not None and args.k >= 0, "--chi psipow needs --k >= 0")
    if chi == "const":
        _require(args.value is not None, "--chi const needs --value (e.g. 0/1 or 1/2)")


# --- subcommands ------------------------------------------------------------


def cmd_table(args) -> tuple[list[Row], list[str]]:
    _require(args.x is not None and args.x >= 2, "--x must be >= 2")
    table = get_table(args.q, args.x, _cache_dir(args))
    block = "".join(f"{r.p},{r.f},{r.t}\n" for r in table.records)
    row = {"q": table.q, "x": table.limit, "count": len(table), "crc32": f"{zlib.crc32(block.encode()):08x}"}
    return [row], ["q", "x", "count", "crc32"]


def _checkpoints(args):
    spec = args.checkpoints
    if spec is None or spec in ("geometric", "all"):
        return spec
    try:
        return _int_list(spec)
    except argparse.ArgumentTypeError as exc:
        raise DomainError(str(exc)) from None


def cmd_mean(args):
    _require(args.n is not None and len(args.n) == 1 and args.n[0] >= 1, "--n must be a single positive integer")
    n = args.n[0]
    table = get_table(args.q, max(n, 2), _cache_dir(args))
    series = mean.mean_series(_chi(args, table), n, _checkpoints(args))
    rows = [{"n": cp.n, "re": cp.mean.real, "im": cp.mean.imag, "abs": cp.magnitude} for cp in series.checkpoints]
    return rows, ["n", "re", "im", "abs"]


def cmd_bound(args):
    _require(args.n is not None and min(args.n) >= 1, "--n must list positive integers")
    table = get_table(args.q, max(max(args.n), 2), _cache_dir(args))
    chi = _chi(args, table)
    exclude_q = True if args.exclude_q else None
    log.info("bound variant for %s: %s", chi.name, bound.bound_variant(chi, exclude_q)[2])
    reports = bound.verify_bound(chi, args.n, exclude_q)
    rows = [{"n": r.n, "N": r.N, "bound": r.bound, "actual": r.actual, "holds": r.holds} for r in reports]
    return rows, ["n", "N", "bound", "actual", "holds"]


def _cutoff(args) -> int:
    _require(args.cutoff is not None and args.cutoff >= 1, "--cutoff must be a positive integer")
    return args.cutoff


def _s_values(args) -> list[float]:
    _require(args.s is not None and all(s > 1 for s in args.s), "--s values must all exceed 1")
    return args.s


def cmd_series(args):
    cutoff, s_values = _cutoff(args), _s_values(args)
    table = get_table(args.q, max(cutoff, 2), _cache_dir(args))
    chi = _chi(args, table)
    rows = []
    for s in s_values:
        ev = analytic.series_eval(chi, s, cutoff)
        rows.append(
            {
                "s": s,
                "cutoff": cutoff,
                "euler_re": ev.euler_value.real,
                "euler_im": ev.euler_value.imag,
                "dir_re": ev.dirichlet_value.real,
                "dir_im": ev.dirichlet_value.imag,
            }
        )
    return rows, ["s", "cutoff", "euler_re", "euler_im", "dir_re", "dir_im"]


def cmd_delange(args):
    if args.checkpoints is not None:
        points = _int_list(args.checkpoints)
    elif args.x is not None:
        points = [args.x]
    else:
        points = None
    _require(bool(points) and min(points) >= 2, "delange needs --checkpoints (or --x) with values >= 2")
    table = get_table(args.q, max(points), _cache_dir(args))
    diag = analytic.delange_diag(_chi(args, table), points)
    pp = diag.product_prediction
    log.info("product prediction at x=%d: %s", max(points), f"{_fmt(pp.real)}{pp.imag:+.17g}j")
    rows = [{"x": x, "re": z.real, "im": z.imag} for x, z in diag.partial_sums]
    return rows, ["x", "re", "im"]


def cmd_residue(args):
    cutoff, s_values = _cutoff(args), _s_values(args)
    table = get_table(args.q, max(cutoff, 2), _cache_dir(args))
    probe = analytic.residue_probe(_chi(args, table), [s - 1.0 for s in s_values], cutoff)
    rows = [{"s": s, "cutoff": cutoff, "re": z.real, "im": z.imag} for s, z in probe]
    return rows, ["s", "cutoff", "re", "im"]


def cmd_eq2(args):
    cutoff, s_values = _cutoff(args), _s_values(args)
    _require(args.t is not None and args.t >= 1, "--t must be a positive integer")
    table = get_table(args.q, max(cutoff, 2), _cache_dir(args))
    rows = []
    for s in s_values:
        res = analytic.eq2_identity_check(table, args.t, s, cutoff)
        rows.append(
            {"q": args.q, "t": args.t, "s": s, "cutoff": cutoff, "lhs": res.lhs, "rhs": res.rhs,
             "k2_tail": res.k2_tail, "residual": res.residual}
        )
    return rows, ["q", "t", "s", "cutoff", "lhs", "rhs", "k2_tail", "residual"]


def cmd_density(args):
    _require(args.x is not None and args.x >= 2, "--x must be >= 2")
    _require(args.t is not None and args.t >= 1, "--t must be a positive integer")
    table = get_table(args.q, args.x, _cache_dir(args))
    res = analytic.artin_density(table, args.t, args.x)
    const = analytic.artin_constant(args.x, table.primes(args.x))
    row = {"q": args.q, "t": args.t, "x": args.x, "count": res.count, "pi": res.pi_x,
           "density": res.density, "artin_constant_ref": const}
    return [row], ["q", "t", "x", "count", "pi", "density", "artin_constant_ref"]


def cmd_census(args):
    _require(args.x is not None and args.x >= 2, "--x must be >= 2")
    table = get_table(args.q, args.x, _cache_dir(args))
    if args.k is not None:
        _require(args.k >= 1, "--k must be a positive integer")
        count, rows = census.sk_census(table, args.k, args.x)
        log.info("S_k census q=%d k=%d x=%d: %d primes", args.q, args.k, args.x, count)
    else:
        count, rows = census.large_order_census(table, args.x)
        log.info("large-order census q=%d x=%d: %d primes", args.q, args.x, count)
    return [row._asdict() for row in rows], ["p", "f", "t", "flag"]


def cmd_iq(args):
    _require(args.m is not None and min(args.m) >= 1, "--m must list positive integers")
    for m in args.m:
        _require(math.gcd(m, args.q) == 1, f"--m {m} is not coprime to q={args.q}")
    spf = smallest_prime_factors(max(max(args.m), 2))
    rows = []
    for m in args.m:
        iq = census.iq_count(args.q, m, spf)
        cc = census.cyclotomic_coset_count(args.q, m)
        rows.append({"m": m, "iq": iq, "coset_count": cc, "match": iq == cc})
    return rows, ["m", "iq", "coset_count", "match"]


COMMANDS: dict[str, tuple[Callable, str]] = {
    "table": (cmd_table, "build and cache the (p, f_q(p), t_q(p)) table"),
    "mean": (cmd_mean, "running mean values M_n(chi) = (1/n) sum chi(m)"),
    "bound": (cmd_bound, "compare |M_n(chi)| with the explicit mean-value bound"),
    "series": (cmd_series, "truncated Euler product and Dirichlet sum of C(s, chi)"),
    "delange": (cmd_delange, "prime sums sum (1 - chi(p))/p (Delange criterion)"),
    "residue": (cmd_residue, "(s - 1) C(s, chi) as s -> 1+ (residue at s = 1)"),
    "eq2": (cmd_eq2, "2 sum_{t_p = t} p^-s = log zeta(s) - log C(s, psi_t) + O(1)"),
    "density": (cmd_density, "share of primes with t_q(p) = t vs Artin's constant"),
    "census": (cmd_census, "primes with t_q(p) not dividing k (--k), else f_q(p) > (p-1)/log p"),
    "iq": (cmd_iq, "i_q(m) = sum_{d | m} phi(d)/f_q(d) vs cyclotomic coset count"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="horomean", description="Horizontal cyclotomic Dirichlet series toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--q", type=int, default=2, help="prime base q (default 2)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--cache-dir", default=None, help="prime table cache (fallback: $HOROMEAN_CACHE)")
        p.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
        if name in ("mean", "bound", "series", "delange", "residue"):
            p.add_argument("--chi", choices=KINDS, required=True)
            p.add_argument("--value", default=None, help="rotation a/d for --chi const")
        if name in ("mean", "bound", "series", "delange", "residue", "eq2", "density"):
            p.add_argument("--t", type=int, default=None)
        if name in ("mean", "bound", "series", "delange", "residue", "census"):
            p.add_argument("--k", type=int, default=None)
        if name in ("table", "delange", "density", "census"):
            p.add_argument("--x", type=int, default=None)
        if name in ("mean", "bound"):
            p.add_argument("--n", type=_int_list, default=None, help="n, or a list such as 2..2000,10000")
        if name in ("series", "residue", "eq2"):
            p.add_argument("--s", type=_float_list, default=None, help="comma-separated real s > 1")
            p.add_argument("--cutoff", type=int, default=None)
        if name in ("mean", "delange"):
            p.add_argument("--checkpoints", default=None, help="geometric | all | explicit list")
        if name == "bound":
            p.add_argument("--exclude-q", action="store_true", help="drop q from the prime list and the mean")
        if name == "iq":
            p.add_argument("--m", type=_int_list, required=True)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("horomean: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    func = COMMANDS[args.command][0]
    try:
        _validate_common(args)
        rows, columns = func(args)
    except ConsistencyError as exc:
        stderr.write(f"horomean: internal consistency failure: {exc}\n")
        return 2
    except (HoromeanError, ValueError) as exc:
        stderr.write(f"horomean: error: {exc}\n")
        return 1
    write_rows(rows, columns, args.format, stdout)
    if args.command == "iq" and not all(row["match"] for row in rows):
        stderr.write("horomean: internal consistency failure: i_q formula and coset count disagree\n")
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
