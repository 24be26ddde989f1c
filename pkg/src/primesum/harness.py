"""Empirical error sweep: exact prime sums against the truncated expansions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import mpmath

from .cipolla import CipollaCoeffs
from .evaluator import DEFAULT_CONTEXT, EvalContext, eval_c_m, eval_sum_approx
from .expansion import Expansion, assemble_expansion
from .sieve import SieveConfig, checkpoint_stream

DEFAULT_GRID = (10_000, 30_000, 100_000, 300_000, 1_000_000, 3_000_000, 10_000_000)
CSV_HEADER = "n,exact_sum,m,approx,abs_error,rel_error,normalized_error"


@dataclass(frozen=True)
class ErrorRecord:
    n: int
    exact_sum: int
    approx: Mapping[int, mpmath.mpf] = field(default_factory=dict)
    abs_error: Mapping[int, mpmath.mpf] = field(default_factory=dict)
    relative_error: Mapping[int, mpmath.mpf] = field(default_factory=dict)
    normalized_error: Mapping[int, mpmath.mpf] = field(default_factory=dict)

    @property
    def orders(self) -> list[int]:
        return sorted(self.approx)


def make_record(n: int, exact_sum: int, approx: Mapping[int, mpmath.mpf],
                ctx: EvalContext = DEFAULT_CONTEXT) -> ErrorRecord:
    """Derive the error fields from the exact sum and the approximations."""
    abs_err, rel_err, norm_err = {}, {}, {}
    for m, s in approx.items():
        with mpmath.workprec(ctx.prec):
            abs_err[m] = abs(mpmath.mpf(exact_sum) - s)
            rel_err[m] = abs_err[m] / exact_sum
            norm_err[m] = abs_err[m] / (n * eval_c_m(n, m, ctx))
    return ErrorRecord(n, exact_sum, dict(approx), abs_err, rel_err, norm_err)


def run_error_sweep(n_grid: Sequence[int], orders: Iterable[int], coeffs: CipollaCoeffs,
                    cfg: SieveConfig = SieveConfig(),
                    ctx: EvalContext = DEFAULT_CONTEXT,
                    expansions: Mapping[int, Expansion] | None = None) -> list[ErrorRecord]:
    """One record per grid point; ``expansions`` overrides the assembled ones per order."""
    grid = [int(n) for n in n_grid]
    if any(n < 3 for n in grid):
        raise ValueError("grid entries must be >= 3")
    orders = sorted(set(orders))
    if not orders:
        raise ValueError("at least one order is required")
    if orders[-1] > coeffs.m or orders[0] < 1:
        raise ValueError(f"orders {orders} not covered by coefficients of order {coeffs.m}")
    exps = dict(expansions or {})
    for m in orders:
        if m not in exps:
            exps[m] = assemble_expansion(coeffs, m)

    records = []
    for cp in checkpoint_stream(grid, cfg):
        approx = {m: eval_sum_approx(exps[m], cp.count, ctx) for m in orders}
        records.append(make_record(cp.count, cp.sum, approx, ctx))
    return records


def _num(x) -> str:
    return mpmath.nstr(x, 15)


def emit_report(records: Sequence[ErrorRecord], format: str = "csv") -> str:
    rows = [(str(r.n), str(r.exact_sum), str(m), _num(r.approx[m]), _num(r.abs_error[m]),
             _num(r.relative_error[m]), _num(r.normalized_error[m]))
            for r in records for m in r.orders]
    if format == "csv":
        return "\n".join([CSV_HEADER] + [",".join(row) for row in rows]) + "\n"
    if format == "table":
        header = CSV_HEADER.split(",")
        widths = [max([len(h)] + [len(row[k]) for row in rows]) for k, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {format!r}")
