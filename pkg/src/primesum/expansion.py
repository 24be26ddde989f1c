"""Symbolic assembly of the expansion of the sum of the first n primes.

The result has the shape

    n^2/2 * ( log n + loglog n + sum_{k=0}^{m} P_k(loglog n) / log^k n )

where the leading ``log n + loglog n`` is implicit and each P_k is an exact
:class:`LogLogPoly`.  Terms are graded by k = s + j, the combined power of
1/log n; contributions with s + j > m are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from .cipolla import CipollaCoeffs
from .coeff_engine import CoeffTable
from .exact_arith import LogLogPoly, format_rational, format_poly

G_CONSTANT = Fraction(-3, 2)


class ExpansionError(ValueError):
    pass


@dataclass(frozen=True)
class Expansion:
    m: int
    terms: Mapping[int, LogLogPoly] = field(default_factory=dict)
    leading: bool = True

    def __post_init__(self):
        for k, poly in self.terms.items():
            if not 0 <= k <= self.m:
                raise ExpansionError(f"term k={k} outside 0..{self.m}")
            if poly.degree > self.m:
                raise ExpansionError(f"term k={k} has degree {poly.degree} > {self.m}")

    def term(self, k: int) -> LogLogPoly:
        return self.terms.get(k, LogLogPoly())

    def replace_term(self, k: int, poly: LogLogPoly) -> "Expansion":
        terms = dict(self.terms)
        terms[k] = poly
        return Expansion(self.m, terms, self.leading)

    def __sub__(self, other: "Expansion") -> "Expansion":
        """Term-wise difference; the implicit leading part cancels."""
        if self.leading != other.leading:
            raise ExpansionError("both expansions must carry the leading log n + loglog n")
        m = max(self.m, other.m)
        terms = {k: self.term(k) - other.term(k) for k in range(m + 1)}
        return Expansion(m, {k: p for k, p in terms.items() if not p.is_zero()}, leading=False)


@dataclass(frozen=True)
class TsFamily:
    m: int
    polys: tuple

    def __getitem__(self, s: int) -> LogLogPoly:
        """T_s, 1-based."""
        return self.polys[s - 1]


def assemble_expansion(coeffs: CipollaCoeffs, m: int,
                       table: CoeffTable | None = None) -> Expansion:
    if m < 1:
        raise ExpansionError(f"order must be >= 1, got {m}")
    if coeffs.m < m:
        raise ExpansionError(f"coefficients cover order {coeffs.m}, need {m}")
    table = table if table is not None else CoeffTable()

    acc = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]  # acc[k][power of lambda]
    acc[0][0] += G_CONSTANT
    for j in range(1, m + 1):
        acc[j][0] -= Fraction(factorial(j - 1), 2 ** j)

    for s in range(1, m + 1):
        prefactor = Fraction((-1) ** (s + 1), s)
        for i in range(s + 1):
            a_is = coeffs[(i, s)]
            if a_is == 0:
                continue
            for j in range(m - s + 1):
                weight = prefactor * a_is / 2 ** j
                for r in range(min(i, j) + 1):
                    acc[s + j][i - r] += weight * table.b(s, i, j, r)

    terms = {k: LogLogPoly(tuple(row)) for k, row in enumerate(acc)}
    return Expansion(m, {k: p for k, p in terms.items() if not p.is_zero()})


def extract_ts(e: Expansion) -> TsFamily:
    polys = []
    for s in range(1, e.m + 1):
        t_s = e.term(s).scale(s * (-1) ** (s + 1))
        if t_s.degree != s or not t_s.is_monic():
            raise ExpansionError(
                f"T_{s} = {format_poly(t_s)} is not monic of degree {s}; "
                "the Cipolla coefficients are inconsistent")
        polys.append(t_s)
    return TsFamily(e.m, tuple(polys))


def _render_poly(p: LogLogPoly) -> str:
    out = format_poly(p, var="loglog n")
    return out.replace("loglog n^", "(loglog n)^")


def _log_power(k: int) -> str:
    return "log n" if k == 1 else f"log^{k} n"


def render_expansion(e: Expansion) -> str:
    pieces = ["log n + loglog n"] if e.leading else []
    for k in range(e.m + 1):
        p = e.term(k)
        if p.is_zero():
            continue
        if p.degree == 0:
            c = p[0]
            body = format_rational(abs(c))
            body = body if k == 0 else f"{body}/{_log_power(k)}"
            sign = "-" if c < 0 else "+"
        else:
            lead = p.leading
            monic = p.scale(1 / lead)
            sign = "-" if lead < 0 else "+"
            num, den = abs(lead).numerator, abs(lead).denominator
            numer = f"({_render_poly(monic)})"
            if num != 1:
                numer = f"{num}*{numer}"
            if k == 0:
                body = numer if den == 1 else f"{numer}/{den}"
            elif den == 1:
                body = f"{numer}/{_log_power(k)}"
            else:
                body = f"{numer}/({den} {_log_power(k)})"
        if pieces:
            pieces.append(f"{sign} {body}")
        else:
            pieces.append(body if sign == "+" else f"-{body}")
    inner = " ".join(pieces) if pieces else "0"
    return f"n^2/2 * ( {inner} )"


def terms_csv(e: Expansion) -> str:
    """One line per power k of 1/log n: ``k,"c0,c1,..."``."""
    lines = ["k,coefficients"]
    for k in range(e.m + 1):
        lines.append(f'{k},"{e.term(k).serialize()}"')
    return "\n".join(lines) + "\n"
