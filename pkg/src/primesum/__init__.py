"""Asymptotic expansion of the sum of the first n primes.

Exact coefficient recurrence, symbolic assembly of the expansion in powers
of 1/log n, numerical evaluation and an error harness against exact sums.
"""

from .cipolla import CipollaCoeffs, builtin_coeffs, load_coeffs_file
from .coeff_engine import CoeffKey, CoeffTable, b_coeff, coeff_table_dump
from .evaluator import EvalContext, eval_sum_approx, li_quadrature, li_series
from .exact_arith import LogLogPoly, parse_rational, poly_eval
from .expansion import Expansion, TsFamily, assemble_expansion, extract_ts, render_expansion
from .harness import ErrorRecord, emit_report, run_error_sweep
from .sieve import PrimeSumCheckpoint, SieveConfig, checkpoint_stream, sum_first_n_primes

__version__ = "0.1.0"
