"""Exact integer, base-p and p-adic helpers.

Everything here works on Python ints, so there is no overflow anywhere.
Binomials outside ``0 <= k <= n`` are zero, which lets the grid formulas
drop boundary terms without special cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

__all__ = [
    "BasePDigits",
    "binomial",
    "binomial_mod_p",
    "binomial_valuation",
    "carry_count",
    "digits",
    "factorial_valuation",
    "is_prime",
    "valuation",
]


@dataclass(frozen=True)
class BasePDigits:
    """Base-p expansion, least significant digit first."""

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digit out of range for base {self.p}: {self.digits}")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError("leading digit must be nonzero")

    @property
    def value(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __iter__(self):
        return iter(self.digits)


def is_prime(p: int) -> bool:
    """Trial division; only meant for validating small moduli."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def valuation(w: int, p: int) -> int:
    """Exponent of the exact power of ``p`` dividing ``w``."""
    if w == 0:
        raise ValueError("valuation of zero")
    if p < 2:
        raise ValueError(f"bad prime {p}")
    w = abs(w)
    v = 0
    while w % p == 0:
        w //= p
        v += 1
    return v


def digits(n: int, p: int) -> BasePDigits:
    if n < 0:
        raise ValueError(f"digits needs n >= 0, got {n}")
    if n == 0:
        return BasePDigits(p, (0,))
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return BasePDigits(p, tuple(out))


def carry_count(a: int, b: int, p: int) -> int:
    """Number of carries when adding ``a`` and ``b`` in base ``p``."""
    if a < 0 or b < 0:
        raise ValueError("carry_count needs non-negative arguments")
    carries = 0
    carry = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def factorial_valuation(n: int, p: int) -> int:
    """Legendre's formula for the p-adic valuation of n!."""
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def binomial_valuation(n: int, k: int, p: int) -> int:
    """p-adic valuation of C(n, k), counted as carries (Kummer)."""
    if not 0 <= k <= n:
        raise ValueError(f"binomial_valuation needs 0 <= k <= n, got n={n}, k={k}")
    return carry_count(k, n - k, p)


@lru_cache(maxsize=64)
def _small_binomials_mod(p: int) -> tuple[tuple[int, ...], ...]:
    # Pascal rows 0..p-1 reduced mod p; enough for every Lucas digit pair.
    rows = [(1,)]
    for a in range(1, p):
        prev = rows[-1]
        rows.append(tuple((prev[b - 1] if b else 0) + (prev[b] if b < a else 0) for b in range(a + 1)))
    return tuple(tuple(c % p for c in row) for row in rows)


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via Lucas' theorem, without forming C(n, k)."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    table = _small_binomials_mod(p)
    res = 1
    while k:
        n, a = divmod(n, p)
        k, b = divmod(k, p)
        if b > a:
            return 0
        res = res * table[a][b] % p
    return res
