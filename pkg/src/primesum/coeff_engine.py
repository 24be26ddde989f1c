"""The integers b(s, i, j, r) from repeated integration by parts.

They are the coefficients that appear when

    integral x (log log x)^i / log^s x dx

is integrated by parts j times: b(s, i, j, r) multiplies
(log log n)^(i - r) / (2^j log^(s+j) n).  Recurrence:

    b(s, i, 0, 0) = 1
    b(s, i, j, j) = b(s, i, j-1, j-1) * (-(i - (j-1)))              j >= 1
    b(s, i, j, 0) = b(s, i, j-1, 0) * (s + j - 1)                    j >= 1
    b(s, i, j, r) = b(s, i, j-1, r) * (s + j - 1)
                  + b(s, i, j-1, r-1) * (-(i - (r-1)))               j > r >= 1

and b(s, i, j, r) = 0 whenever r > i.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple


class CoeffKey(NamedTuple):
    s: int
    i: int
    j: int
    r: int


class CoeffDomainError(ValueError):
    """Raised for keys outside the recurrence domain (negative index or r > j)."""


class CoeffTable:
    """Memo table for b(s, i, j, r).

    One table per computation; the caller owns it.  ``shortcut=False``
    disables the r > i zero short-circuit so the raw recurrence is exercised.
    """

    def __init__(self, shortcut: bool = True):
        self.shortcut = shortcut
        self.memo: dict[CoeffKey, int] = {}

    def __len__(self) -> int:
        return len(self.memo)

    def __contains__(self, key) -> bool:
        return CoeffKey(*key) in self.memo

    def b(self, s: int, i: int, j: int, r: int) -> int:
        key = CoeffKey(s, i, j, r)
        if min(key) < 0:
            raise CoeffDomainError(f"negative index in {tuple(key)}")
        if r > j:
            raise CoeffDomainError(f"r > j in {tuple(key)}: b is defined only for j >= r")
        return self._lookup(key)

    def _lookup(self, key: CoeffKey) -> int:
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        s, i, j, r = key
        if self.shortcut and r > i:
            value = 0
        else:
            value = self._fill(s, i, j, r)
        self.memo[key] = value
        return value

    def _fill(self, s: int, i: int, j: int, r: int) -> int:
        if j == 0:
            return 1
        if r == j:
            return self._lookup(CoeffKey(s, i, j - 1, j - 1)) * -(i - (j - 1))
        if r == 0:
            return self._lookup(CoeffKey(s, i, j - 1, 0)) * (s + j - 1)
        return (self._lookup(CoeffKey(s, i, j - 1, r)) * (s + j - 1)
                + self._lookup(CoeffKey(s, i, j - 1, r - 1)) * -(i - (r - 1)))


def b_coeff(table: CoeffTable, key) -> int:
    return table.b(*key)


def iter_keys(s_max: int, i_max: int, j_max: int) -> Iterator[CoeffKey]:
    """All valid keys within the bounds, lexicographic in (s, i, j, r)."""
    for s in range(s_max + 1):
        for i in range(i_max + 1):
            for j in range(j_max + 1):
                for r in range(j + 1):
                    yield CoeffKey(s, i, j, r)


def coeff_table_dump(table: CoeffTable, s_max: int, i_max: int, j_max: int
                     ) -> list[tuple[CoeffKey, int]]:
    if min(s_max, i_max, j_max) < 0:
        raise CoeffDomainError("dump bounds must be non-negative")
    return [(key, table.b(*key)) for key in iter_keys(s_max, i_max, j_max)]


def dump_csv(rows: list[tuple[CoeffKey, int]]) -> str:
    lines = ["s,i,j,r,b"]
    lines += [f"{k.s},{k.i},{k.j},{k.r},{v}" for k, v in rows]
    return "\n".join(lines) + "\n"
