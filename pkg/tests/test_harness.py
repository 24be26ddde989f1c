import json
from pathlib import Path

import mpmath
import pytest

from primesum.cipolla import builtin_coeffs
from primesum.evaluator import EvalContext, eval_c_m, eval_sum_approx, ulp
from primesum.expansion import assemble_expansion
from primesum.harness import (
    CSV_HEADER, DEFAULT_GRID, ErrorRecord, emit_report, make_record, run_error_sweep,
)

GOLDEN = json.loads((Path(__file__).parent / "fixtures" / "golden_sweep.json").read_text())
CTX = EvalContext()


@pytest.fixture(scope="module")
def small_sweep():
    return run_error_sweep([3, 10, 1000, 10**4, 10**5], [1, 2], builtin_coeffs(2))


def test_trivial_grid():
    (rec,) = run_error_sweep([3], [1], builtin_coeffs(1))
    assert rec.n == 3 and rec.exact_sum == 10


def test_fields_recompute(small_sweep):
    for rec in small_sweep:
        for m in rec.orders:
            with mpmath.workprec(CTX.prec):
                abs_err = abs(mpmath.mpf(rec.exact_sum) - rec.approx[m])
                rel = abs_err / rec.exact_sum
                norm = abs_err / (rec.n * eval_c_m(rec.n, m))
            assert rec.abs_error[m] >= 0 and rec.normalized_error[m] >= 0
            assert abs(rec.abs_error[m] - abs_err) <= ulp(abs_err, CTX.prec)
            assert abs(rec.relative_error[m] - rel) <= ulp(rel, CTX.prec)
            assert abs(rec.normalized_error[m] - norm) <= ulp(norm, CTX.prec)


def test_approx_comes_from_evaluator(small_sweep):
    e2 = assemble_expansion(builtin_coeffs(2), 2)
    assert small_sweep[-1].approx[2] == eval_sum_approx(e2, 10**5)


def test_order_one_normalization_is_massias_robin_scale(small_sweep):
    rec = small_sweep[-1]
    n = mpmath.mpf(rec.n)
    with mpmath.workprec(CTX.prec):
        scale = n**2 * mpmath.log(mpmath.log(n)) ** 2 / mpmath.log(n) ** 2
        assert abs(rec.abs_error[1] / scale - rec.normalized_error[1]) \
            <= 4 * ulp(rec.normalized_error[1], CTX.prec)


def test_sweep_validation():
    with pytest.raises(ValueError):
        run_error_sweep([2], [1], builtin_coeffs(1))
    with pytest.raises(ValueError):
        run_error_sweep([10], [3], builtin_coeffs(2))
    with pytest.raises(ValueError):
        run_error_sweep([10, 5], [1], builtin_coeffs(1))


def test_expansion_override():
    e1 = assemble_expansion(builtin_coeffs(1), 1)
    (rec,) = run_error_sweep([1000], [1], builtin_coeffs(1), expansions={1: e1})
    assert rec.approx[1] == eval_sum_approx(e1, 1000)


def test_empty_report_is_header_only():
    assert emit_report([]) == CSV_HEADER + "\n"


def test_report_rows(small_sweep):
    text = emit_report(small_sweep[-1:])
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    assert lines[1].startswith("100000,62260698721,1,")
    assert lines[2].startswith("100000,62260698721,2,")
    assert all(len(line.split(",")) == 7 for line in lines)


def test_report_deterministic(small_sweep):
    again = run_error_sweep([3, 10, 1000, 10**4, 10**5], [1, 2], builtin_coeffs(2))
    for fmt in ("csv", "table"):
        assert emit_report(small_sweep, fmt) == emit_report(again, fmt)


def test_table_format(small_sweep):
    lines = emit_report(small_sweep, "table").splitlines()
    assert lines[0].split() == CSV_HEADER.split(",")
    assert len({len(line) for line in lines}) == 1
    with pytest.raises(ValueError):
        emit_report(small_sweep, "xml")


def test_record_from_parts():
    rec = make_record(10, 129, {1: mpmath.mpf(100)})
    assert isinstance(rec, ErrorRecord)
    assert rec.abs_error[1] == 29


def test_default_grid_log_spaced():
    assert DEFAULT_GRID[0] == 10**4 and DEFAULT_GRID[-1] == 10**7
    assert all(b > a for a, b in zip(DEFAULT_GRID, DEFAULT_GRID[1:]))


def test_golden_regression():
    records = run_error_sweep(DEFAULT_GRID, GOLDEN["orders"], builtin_coeffs(2))
    assert len(records) == len(GOLDEN["records"])
    for rec, want in zip(records, GOLDEN["records"]):
        assert rec.n == want["n"]
        assert rec.exact_sum == int(want["exact_sum"])
        for m in rec.orders:
            assert mpmath.nstr(rec.normalized_error[m], 15) == want["normalized_error"][str(m)]
            assert mpmath.nstr(rec.abs_error[m], 15) == want["abs_error"][str(m)]
