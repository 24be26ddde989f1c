"""Cipolla coefficients a(i, s) of the n-th prime expansion.

    p_n = n (log n + log log n - 1
             + sum_{s=1}^{m} (-1)^(s+1) / (s log^s n) sum_{i=0}^{s} a(i, s) (log log n)^i)
          + O(n (log log n)^(m+1) / log^(m+1) n)

with a(s, s) = 1.  Orders 1 and 2 are built in; higher orders come from a
coefficient file with one ``i s value`` triple per line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .exact_arith import format_rational, parse_rational

BUILTIN_ORDERS = (1, 2)

_BUILTIN = {
    (1, 1): Fraction(1),
    (0, 1): Fraction(-2),
    (2, 2): Fraction(1),
    (1, 2): Fraction(-6),
    (0, 2): Fraction(11),
}


class UnsupportedOrderError(ValueError):
    pass


class CoeffFileError(ValueError):
    """A coefficient file failed to parse or validate.

    ``index`` is the offending (i, s) pair when one can be named, and
    ``line`` the 1-based line number for syntax errors.
    """

    def __init__(self, message: str, index: tuple[int, int] | None = None,
                 line: int | None = None):
        super().__init__(message)
        self.index = index
        self.line = line


@dataclass(frozen=True)
class CipollaCoeffs:
    m: int
    a: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"order must be >= 1, got {self.m}")
        a = {(int(i), int(s)): Fraction(v) for (i, s), v in self.a.items()}
        for s in range(1, self.m + 1):
            for i in range(s + 1):
                if (i, s) not in a:
                    raise CoeffFileError(f"missing coefficient a({i},{s})", index=(i, s))
            if a[(s, s)] != 1:
                raise CoeffFileError(
                    f"a({s},{s}) must be 1, got {format_rational(a[(s, s)])}", index=(s, s))
        object.__setattr__(self, "a", a)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.a[key]

    def restrict(self, m: int) -> "CipollaCoeffs":
        if not 1 <= m <= self.m:
            raise UnsupportedOrderError(f"cannot restrict order {self.m} coefficients to {m}")
        return CipollaCoeffs(m, {k: v for k, v in self.a.items() if k[1] <= m})


def builtin_coeffs(m: int) -> CipollaCoeffs:
    if m not in BUILTIN_ORDERS:
        raise UnsupportedOrderError(
            f"no built-in Cipolla coefficients for order {m} (built-in: 1, 2); "
            "supply them with a coefficient file (--cipolla-file)")
    return CipollaCoeffs(m, {k: v for k, v in _BUILTIN.items() if k[1] <= m})


def parse_coeffs(text: str, m: int) -> CipollaCoeffs:
    if m < 1:
        raise UnsupportedOrderError(f"order must be >= 1, got {m}")
    a: dict[tuple[int, int], Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise CoeffFileError(f"line {lineno}: expected 'i s value', got {raw.strip()!r}",
                                 line=lineno)
        try:
            i, s = int(parts[0]), int(parts[1])
        except ValueError:
            raise CoeffFileError(f"line {lineno}: bad index in {raw.strip()!r}",
                                 line=lineno) from None
        if not 0 <= i <= s or s < 1:
            raise CoeffFileError(f"line {lineno}: index ({i},{s}) needs 0 <= i <= s, s >= 1",
                                 index=(i, s), line=lineno)
        try:
            value = parse_rational(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise CoeffFileError(f"line {lineno}: a({i},{s}): {exc}",
                                 index=(i, s), line=lineno) from None
        if (i, s) in a and a[(i, s)] != value:
            raise CoeffFileError(f"line {lineno}: conflicting values for a({i},{s})",
                                 index=(i, s), line=lineno)
        a[(i, s)] = value
    return CipollaCoeffs(m, {k: v for k, v in a.items() if k[1] <= m})


def load_coeffs_file(path: str | Path, m: int) -> CipollaCoeffs:
    return parse_coeffs(Path(path).read_text(), m)


def dump_coeffs(coeffs: CipollaCoeffs) -> str:
    lines = [f"# Cipolla coefficients, order {coeffs.m}: i s a(i,s)"]
    for s in range(1, coeffs.m + 1):
        for i in range(s, -1, -1):
            lines.append(f"{i} {s} {format_rational(coeffs[(i, s)])}")
    return "\n".join(lines) + "\n"
