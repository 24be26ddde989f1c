"""Numerical evaluation: the approximation S_m(n) and its helper functions.

Every function takes an :class:`EvalContext` and returns an ``mpmath.mpf``
rounded to ``ctx.prec`` bits.  Internally the work runs ``ctx.guard_bits``
wider, so two algebraically identical code paths agree to within one unit in
the last place of the working precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .exact_arith import poly_eval
from .expansion import Expansion

# li(2) = principal value of integral_0^2 dt / log t
LI2 = "1.0451637801174927848445888891946131365226155781512"


class DomainError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EvalContext:
    prec: int = 113
    guard_bits: int = 32
    quad_tol: float = 1e-12

    def __post_init__(self):
        if self.prec < 80:
            raise ValueError(f"working precision must be >= 80 bits, got {self.prec}")

    def work(self):
        return mpmath.workprec(self.prec + self.guard_bits)

    def round(self, x):
        with mpmath.workprec(self.prec):
            return +x


DEFAULT_CONTEXT = EvalContext()


def ulp(x, prec: int):
    """Unit in the last place of ``x`` at ``prec`` bits."""
    x = mpmath.mpf(x)
    if x == 0:
        return mpmath.ldexp(1, -prec - 1000)
    _, e = mpmath.frexp(x)
    return mpmath.ldexp(1, e - prec)


def _check_n(n) -> None:
    if n < 3:
        raise DomainError(f"n must be >= 3, got {n}")


def _logs(n):
    L = mpmath.log(mpmath.mpf(n))
    return L, mpmath.log(L)


def eval_sum_approx(e: Expansion, n, ctx: EvalContext = DEFAULT_CONTEXT):
    """S(n) = n^2/2 * (log n + loglog n + sum_k P_k(loglog n) / log^k n)."""
    _check_n(n)
    with ctx.work():
        n = mpmath.mpf(n)
        L, lam = _logs(n)
        bracket = L + lam if e.leading else mpmath.mpf(0)
        inv = mpmath.mpf(1)
        for k in range(e.m + 1):
            if k:
                inv /= L
            p = e.term(k)
            if not p.is_zero():
                bracket += poly_eval(p, lam) * inv
        value = n * n / 2 * bracket
    return ctx.round(value)


def eval_components(e: Expansion, n, ctx: EvalContext = DEFAULT_CONTEXT) -> dict:
    """Breakdown of S(n): g, h_m, each graded term and the total."""
    _check_n(n)
    out = {"n": n, "g": eval_g(n, ctx), "h": eval_h(n, e.m, ctx)}
    with ctx.work():
        L, lam = _logs(n)
        for k in range(e.m + 1):
            p = e.term(k)
            out[f"term_{k}"] = ctx.round(poly_eval(p, lam) / L ** k)
    out["approx"] = eval_sum_approx(e, n, ctx)
    return out


def massias_robin(n, ctx: EvalContext = DEFAULT_CONTEXT):
    """n^2/2 (log n + loglog n - 3/2 + (loglog n - 5/2)/log n), coded directly."""
    _check_n(n)
    with ctx.work():
        n = mpmath.mpf(n)
        L, lam = _logs(n)
        value = n ** 2 / 2 * (L + lam - mpmath.mpf(3) / 2 + (lam - mpmath.mpf(5) / 2) / L)
    return ctx.round(value)


def eval_g(n, ctx: EvalContext = DEFAULT_CONTEXT):
    _check_n(n)
    with ctx.work():
        L, lam = _logs(n)
        value = L + lam - mpmath.mpf(3) / 2
    return ctx.round(value)


def eval_h(n, m: int, ctx: EvalContext = DEFAULT_CONTEXT):
    """h_m(n) = sum_{j=1}^{m} (j-1)! / (2^j log^j n)."""
    _check_n(n)
    with ctx.work():
        L = mpmath.log(mpmath.mpf(n))
        value = mpmath.fsum(mpmath.mpf(math.factorial(j - 1)) / (2 ** j * L ** j)
                            for j in range(1, m + 1))
    return ctx.round(value)


def eval_c_m(n, m: int, ctx: EvalContext = DEFAULT_CONTEXT):
    """c_m(n) = n (loglog n)^(m+1) / log^(m+1) n."""
    _check_n(n)
    with ctx.work():
        n = mpmath.mpf(n)
        L, lam = _logs(n)
        value = n * (lam / L) ** (m + 1)
    return ctx.round(value)


def _breakpoints(a, b):
    """Geometric subdivision of [a, b] (ratio <= 4) for the quadrature."""
    pts = [mpmath.mpf(a)]
    while pts[-1] * 4 < b:
        pts.append(pts[-1] * 4)
    pts.append(mpmath.mpf(b))
    return pts


def _quad(f, a, b, ctx: EvalContext):
    if a == b:
        return mpmath.mpf(0)
    value, err = mpmath.quad(f, _breakpoints(a, b), error=True, maxdegree=10)
    if err > ctx.quad_tol * abs(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] missed tolerance: err={err}")
    return value


def li_quadrature(x, ctx: EvalContext = DEFAULT_CONTEXT):
    """li(x) = li(2) + integral_2^x dt / log t, for x >= 2."""
    if x < 2:
        raise DomainError(f"li_quadrature needs x >= 2, got {x}")
    with ctx.work():
        value = mpmath.mpf(LI2) + _quad(lambda t: 1 / mpmath.log(t), 2, mpmath.mpf(x), ctx)
    return ctx.round(value)


def li_optimal_terms(x) -> int:
    """Truncation point where the omitted-term estimate n! x / log^(n+1) x is smallest."""
    return max(1, int(mpmath.floor(mpmath.log(x))))


def li_series(x, terms: int, ctx: EvalContext = DEFAULT_CONTEXT):
    """Asymptotic series x * sum_{j=1}^{terms} (j-1)! / log^j x, with an error estimate.

    The estimate is the first omitted term, n! x / log^(n+1) x, when ``terms``
    sits at the optimal truncation point n*.  Away from n* the partial sums
    between ``terms`` and n* are added to it, since the series terms are
    positive and the error at n* is at most that first omitted term.
    """
    if x <= 1:
        raise DomainError(f"li_series needs x > 1, got {x}")
    if terms < 1:
        raise DomainError(f"li_series needs at least one term, got {terms}")
    best = li_optimal_terms(x)
    with ctx.work():
        x = mpmath.mpf(x)
        L = mpmath.log(x)
        top = max(terms, best) + 1
        t = [None] + [x * mpmath.factorial(j - 1) / L ** j for j in range(1, top + 1)]
        value = mpmath.fsum(t[1:terms + 1])
        if terms <= best:
            bound = mpmath.fsum(t[terms + 1:best + 2])
        else:
            bound = t[best + 1] + mpmath.fsum(t[best + 1:terms + 1])
    return ctx.round(value), ctx.round(bound)


def check_li_identity(a, x, ctx: EvalContext = DEFAULT_CONTEXT):
    """Relative gap between integral_a^x t/log t dt and li(x^2) - li(a^2)."""
    if not 2 <= a <= x:
        raise DomainError(f"check_li_identity needs 2 <= a <= x, got a={a}, x={x}")
    if a == x:
        return mpmath.mpf(0)
    with ctx.work():
        a, x = mpmath.mpf(a), mpmath.mpf(x)
        lhs = _quad(lambda t: t / mpmath.log(t), a, x, ctx)
        rhs = li_quadrature(x * x, ctx) - li_quadrature(a * a, ctx)
        gap = abs(lhs - rhs) / abs(rhs)
    return ctx.round(gap)

