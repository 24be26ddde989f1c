"""Command-line entry point: ``primesum <command> [options]``.

Data goes to stdout, diagnostics to stderr.  Exit status: 0 ok, 1 usage
error, 2 computation or input-data error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from . import cipolla, coeff_engine, evaluator, expansion, harness, sieve
from .exact_arith import LogLogPoly, format_poly

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    order: int = 2
    cipolla_file: Path | None = None
    grid: list[int] | None = None
    out: Path | None = None
    format: str = "csv"
    n: int | None = None
    upto_count: int | None = None
    orders: list[int] | None = None
    emit_coeffs: bool = False
    bounds: tuple[int, int, int] = (2, 2, 2)
    segment_size: int = sieve.SieveConfig().segment_size


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int(text: str) -> int:
    try:
        return int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t.replace("_", "")) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primesum",
                     description="Asymptotic expansion of the sum of the first n primes.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def with_order(p, default=2):
        p.add_argument("--order", "-m", type=_int, default=default,
                       help=f"truncation order m (default {default})")
        p.add_argument("--cipolla-file", type=Path, default=None,
                       help="coefficient file with 'i s value' lines, needed for order > 2")

    p = sub.add_parser("coeffs", help="print the integer coefficients b(s,i,j,r) as CSV")
    p.add_argument("--s-max", type=_int, default=2)
    p.add_argument("--i-max", type=_int, default=2)
    p.add_argument("--j-max", type=_int, default=2)

    p = sub.add_parser("expand", help="print the expansion and the polynomials T_s")
    with_order(p)
    p.add_argument("--emit-coeffs", action="store_true",
                   help="print the term polynomials as CSV instead")

    p = sub.add_parser("eval", help="evaluate the approximation at n with a breakdown")
    with_order(p)
    p.add_argument("--n", type=_int, required=True)

    p = sub.add_parser("sieve", help="exact sums of the first n primes as CSV")
    p.add_argument("--upto-count", type=_int, required=True)
    p.add_argument("--grid", type=_int_list, default=None,
                   help="comma-separated checkpoint counts, all <= --upto-count")
    p.add_argument("--segment-size", type=_int, default=sieve.SieveConfig().segment_size)

    p = sub.add_parser("sweep", help="error sweep of the expansion against exact sums")
    p.add_argument("--orders", type=_int_list, default=[1, 2])
    p.add_argument("--cipolla-file", type=Path, default=None)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--grid", type=_int_list, default=None)
    grid.add_argument("--grid-default", action="store_true",
                      help="use " + ",".join(str(n) for n in harness.DEFAULT_GRID))
    p.add_argument("--out", type=Path, default=None, help="write the report here")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--segment-size", type=_int, default=sieve.SieveConfig().segment_size)

    p = sub.add_parser("check", help="run the built-in self-checks")
    with_order(p)
    return parser


def _check_grid(grid: list[int] | None) -> None:
    if grid is None:
        return
    if not grid:
        raise UsageError("grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError(f"grid not increasing: {','.join(map(str, grid))}")


def parse_args(argv: list[str] | None = None) -> CliConfig:
    ns = _build_parser().parse_args(argv)
    cfg = CliConfig(command=ns.command)
    for name in ("order", "cipolla_file", "grid", "out", "format", "n", "upto_count",
                 "orders", "emit_coeffs", "segment_size"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    if ns.command == "coeffs":
        cfg.bounds = (ns.s_max, ns.i_max, ns.j_max)
        if min(cfg.bounds) < 0:
            raise UsageError("coefficient bounds must be >= 0")
    if cfg.order < 1:
        raise UsageError(f"order must be >= 1, got {cfg.order}")
    needed = max(cfg.orders) if ns.command == "sweep" and cfg.orders else cfg.order
    if ns.command == "sweep":
        if not cfg.orders or min(cfg.orders) < 1:
            raise UsageError("orders must be a non-empty list of integers >= 1")
        if ns.grid is None:
            cfg.grid = list(harness.DEFAULT_GRID)
        if min(cfg.grid, default=3) < 3:
            raise UsageError("sweep grid entries must be >= 3")
    if ns.command in ("expand", "eval", "sweep", "check") and cfg.cipolla_file is None \
            and needed not in cipolla.BUILTIN_ORDERS:
        raise UsageError(f"no built-in Cipolla coefficients for order {needed} "
                         "(built-in orders: 1, 2); pass --cipolla-file PATH")
    if ns.command == "eval" and cfg.n < 3:
        raise UsageError(f"--n must be >= 3, got {cfg.n}")
    if ns.command == "sieve":
        if cfg.upto_count < 1:
            raise UsageError(f"--upto-count must be >= 1, got {cfg.upto_count}")
        if cfg.grid is not None and cfg.grid and max(cfg.grid) > cfg.upto_count:
            raise UsageError("grid entries must not exceed --upto-count")
        if cfg.grid is not None and cfg.grid and min(cfg.grid) < 1:
            raise UsageError("grid entries must be >= 1")
    if cfg.segment_size < 1 << 10:
        raise UsageError("--segment-size must be >= 1024")
    _check_grid(cfg.grid)
    return cfg


def _coeffs(cfg: CliConfig, m: int) -> cipolla.CipollaCoeffs:
    if cfg.cipolla_file is not None:
        return cipolla.load_coeffs_file(cfg.cipolla_file, m)
    return cipolla.builtin_coeffs(m)


def _fmt(x) -> str:
    return mpmath.nstr(x, 15)


def _cmd_coeffs(cfg: CliConfig, out) -> int:
    rows = coeff_engine.coeff_table_dump(coeff_engine.CoeffTable(), *cfg.bounds)
    out.write(coeff_engine.dump_csv(rows))
    return EXIT_OK


def _cmd_expand(cfg: CliConfig, out) -> int:
    e = expansion.assemble_expansion(_coeffs(cfg, cfg.order), cfg.order)
    if cfg.emit_coeffs:
        out.write(expansion.terms_csv(e))
        return EXIT_OK
    ts = expansion.extract_ts(e)
    out.write(expansion.render_expansion(e) + "\n")
    for s, t in enumerate(ts.polys, start=1):
        out.write(f"T_{s}(x) = {format_poly(t)}\n")
    return EXIT_OK


def _cmd_eval(cfg: CliConfig, out) -> int:
    e = expansion.assemble_expansion(_coeffs(cfg, cfg.order), cfg.order)
    parts = evaluator.eval_components(e, cfg.n)
    out.write(f"n = {cfg.n}\norder = {cfg.order}\n")
    out.write(f"g(n) = {_fmt(parts['g'])}\n")
    out.write(f"h_{cfg.order}(n) = {_fmt(parts['h'])}\n")
    for k in range(e.m + 1):
        out.write(f"term k={k}: {_fmt(parts[f'term_{k}'])}\n")
    out.write(f"S_{cfg.order}(n) = {_fmt(parts['approx'])}\n")
    return EXIT_OK


def _cmd_sieve(cfg: CliConfig, out) -> int:
    grid = sorted(set((cfg.grid or []) + [cfg.upto_count]))
    rows = sieve.checkpoint_stream(grid, sieve.SieveConfig(cfg.segment_size))
    out.write(sieve.checkpoints_csv(rows))
    return EXIT_OK


def _cmd_sweep(cfg: CliConfig, out) -> int:
    coeffs = _coeffs(cfg, max(cfg.orders))
    records = harness.run_error_sweep(cfg.grid, cfg.orders, coeffs,
                                      sieve.SieveConfig(cfg.segment_size))
    report = harness.emit_report(records, cfg.format)
    if cfg.out is not None:
        cfg.out.write_text(report)
        print(f"wrote {len(records)} grid points to {cfg.out}", file=sys.stderr)
    else:
        out.write(report)
    return EXIT_OK


def run_check(cfg: CliConfig | None = None, out=None) -> int:
    """Self-test; one line per check, exit 0 iff all pass."""
    cfg = cfg or CliConfig(command="check")
    out = out or sys.stdout
    results: list[tuple[str, bool]] = []

    raw = coeff_engine.CoeffTable(shortcut=False)
    results.append(("b(s,i,j,r) = 0 for r > i on the 0..12 grid", all(
        raw.b(*k) == 0 for k in coeff_engine.iter_keys(12, 12, 12) if k.r > k.i)))

    try:
        coeffs = _coeffs(cfg, 2)
        ts = expansion.extract_ts(expansion.assemble_expansion(coeffs, 2))
        golden = (LogLogPoly((Fraction(-5, 2), 1)), LogLogPoly((Fraction(29, 2), -7, 1)))
        ok = ts.polys[:2] == golden
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        ok = False
    results.append(("T1, T2 match x - 5/2 and x^2 - 7x + 29/2", ok))

    gaps = [evaluator.check_li_identity(a, x) for a, x in ((2, 100), (10, 10_000))]
    results.append(("integral t/log t = li(x^2) - li(a^2) to 1e-9", max(gaps) < 1e-9))

    cps = sieve.checkpoint_stream(range(1, 10_001), sieve.SieveConfig(1 << 10))
    results.append(("sieve matches trial division for n <= 10000",
                    [c.sum for c in cps] == _naive_prefix_sums(10_000)))

    for label, ok in results:
        out.write(f"{'ok' if ok else 'FAIL'}: {label}\n")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_COMPUTE


def _naive_prefix_sums(count: int) -> list[int]:
    primes: list[int] = []
    k = 2
    while len(primes) < count:
        for p in primes:
            if p * p > k:
                primes.append(k)
                break
            if k % p == 0:
                break
        else:
            primes.append(k)
        k += 1
    sums, total = [], 0
    for p in primes:
        total += p
        sums.append(total)
    return sums


_HANDLERS = {
    "coeffs": _cmd_coeffs,
    "expand": _cmd_expand,
    "eval": _cmd_eval,
    "sieve": _cmd_sieve,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if cfg.command == "check":
            return run_check(cfg)
        return _HANDLERS[cfg.command](cfg, sys.stdout)
    except (ValueError, ArithmeticError, OSError, sieve.SieveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
