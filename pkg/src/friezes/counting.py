"""Closed-form frieze counts and the truncated power series behind them.

Series are dense lists of Python ints, truncated after degree ``N``.  The
Catalan series is built from its convolution recurrence, so nothing here
ever leaves the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, isqrt, prod

from .dynkin import DynkinType


@dataclass(frozen=True)
class FriezeCount:
    count: int
    proven: bool

    @property
    def status(self) -> str:
        return "proven" if self.proven else "conjectural"

    def __str__(self):
        return f"{self.count} ({self.status})"


@lru_cache(maxsize=None)
def catalan(k: int) -> int:
    if k < 0:
        raise ValueError("catalan index must be >= 0")
    return comb(2 * k, k) // (k + 1)


def ballot(n: int, k: int) -> int:
    """Coefficient of x^n in c(x)^k."""
    if n < 0 or k < 1:
        raise ValueError("ballot(n, k) needs n >= 0, k >= 1")
    return k * comb(2 * n + k, n) // (2 * n + k)


def divisors(m: int) -> list[int]:
    if m < 1:
        raise ValueError("divisors of non-positive integer")
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def divisor_count(m: int) -> int:
    return len(divisors(m))


def t_count(n: int, m: int) -> int:
    """Triangulations of the punctured n-gon with exactly m plain spokes."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    return comb(2 * n - m - 1, n - 1)


def t_count_convolution(n: int, m: int) -> int:
    """(n/m) * sum over compositions i_1+...+i_m = n-m of prod C_{i_j}."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got n={n}, m={m}")
    total = sum(prod(catalan(i) for i in parts) for parts in _compositions(n - m, m))
    q, r = divmod(n * total, m)
    assert r == 0
    return q


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_CONJECTURED = {("E", 6): 868, ("E", 7): 4400, ("E", 8): 26592, ("F", 4): 112}


def frieze_count(t: DynkinType) -> FriezeCount:
    n = t.rank
    f = t.family
    if f == "A":
        return FriezeCount(catalan(n + 1), True)
    if f == "D":
        return FriezeCount(sum(divisor_count(m) * comb(2 * n - m - 1, n - m) for m in range(1, n + 1)), True)
    if f == "B":
        return FriezeCount(sum(comb(2 * n - m * m + 1, n) for m in range(1, isqrt(n + 1) + 1)), True)
    if f == "C":
        return FriezeCount(comb(2 * n, n), True)
    if f == "G":
        return FriezeCount(9, True)
    return FriezeCount(_CONJECTURED[(f, n)], False)


# -- truncated series --------------------------------------------------------


def series_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out


def series_inv(a: list[int], order: int) -> list[int]:
    """Inverse of a series with constant term +-1, staying in the integers."""
    if a[0] not in (1, -1):
        raise ValueError("series must have a unit constant term")
    out = [0] * (order + 1)
    out[0] = a[0]
    for k in range(1, order + 1):
        s = sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * a[0]
    return out


def catalan_series(order: int) -> list[int]:
    """c(x) from c = 1 + x c^2."""
    c = [1] + [0] * order
    for k in range(1, order + 1):
        c[k] = sum(c[i] * c[k - 1 - i] for i in range(k))
    return c


def gf_identity_check(order: int) -> bool:
    """1 + x c'(x)/c(x) == 1/(2 - c(x)) through degree ``order``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    c = catalan_series(order + 1)
    x_dc = [k * c[k] for k in range(order + 1)]
    lhs = series_mul(x_dc, series_inv(c, order), order)
    lhs[0] += 1
    two_minus_c = [2 - c[0]] + [-v for v in c[1 : order + 1]]
    return lhs == series_inv(two_minus_c, order)


def series_t_table(order: int) -> list[list[int]]:
    """``table[n][m]`` = coefficient of x^n y^m in 1/((2 - c(x))(1 - x y c(x))).

    The y^m part is x^m c(x)^m / (2 - c(x)).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    c = catalan_series(order)
    base = series_inv([2 - c[0]] + [-v for v in c[1:]], order)
    table = [[0] * (order + 1) for _ in range(order + 1)]
    term = base
    for m in range(order + 1):
        for n in range(m, order + 1):
            table[n][m] = term[n - m]
        term = series_mul(term, c, order)
    return table


def b_count_by_squares(n: int) -> int:
    """B_n count via perfect-square spoke counts on the punctured (n+1)-gon."""
    return sum(t_count(n + 1, m * m) for m in range(1, isqrt(n + 1) + 1))


def count_table(family: str, max_rank: int) -> list[tuple[str, int, int, str]]:
    rows = []
    for n in range(1, max_rank + 1):
        try:
            t = DynkinType(family, n)
        except ValueError:
            continue
        fc = frieze_count(t)
        rows.append((family, n, fc.count, fc.status))
    return rows


def ballot_by_series(n: int, k: int) -> int:
    c = catalan_series(n)
    p = [1] + [0] * n
    for _ in range(k):
        p = series_mul(p, c, n)
    return p[n]


__all__ = [
    "FriezeCount",
    "catalan",
    "ballot",
    "ballot_by_series",
    "divisors",
    "divisor_count",
    "t_count",
    "t_count_convolution",
    "frieze_count",
    "gf_identity_check",
    "series_t_table",
    "catalan_series",
    "b_count_by_squares",
    "count_table",
]
