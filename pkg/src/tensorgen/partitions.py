"""Jordan partitions of V_m (x) V_n and the classification of standard pairs.

Two independent routes are kept apart on purpose.  :func:`jordan_partition`
is ground truth: it reads the Jordan type of the grid operator N off GF(p)
ranks and knows nothing about the classification.  :func:`classify_standard`
and :func:`enumerate_standard` are purely arithmetic and scale far beyond
what the rank oracle can reach.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, ValidationError
from .tensor_space import ModuleShape, n_matrix

__all__ = [
    "BUDGET_ENV",
    "DEFAULT_BUDGET",
    "JordanPartition",
    "StandardPairWitness",
    "classify_standard",
    "dense_rank_sequence",
    "enumerate_standard",
    "is_standard",
    "jordan_partition",
    "oracle_budget",
    "partition_from_ranks",
    "rank_sequence",
    "standard_parts",
]

BUDGET_ENV = "TENSORGEN_ORACLE_BUDGET"
DEFAULT_BUDGET = 2500

# stratum labels
S0 = "S0"
S0_SHIFT = "S0+rp"
T1_MINUS_T2 = "T1-T2"
T3 = "T3"
ST_SHIFT = "St+rp^(t+1)"
CHAR2_TWO_ODD = "char2(2,odd)"
CHAR2_THREE = "char2(3,6+4r)"


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 4:
        raise ValidationError(f"{BUDGET_ENV} must be at least 4, got {value}")
    return value


@dataclass(frozen=True)
class JordanPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def conjugate(self) -> tuple[int, ...]:
        if not self.parts:
            return ()
        return tuple(sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1))


def standard_parts(m: int, n: int) -> tuple[int, ...]:
    return tuple(m + n + 1 - 2 * i for i in range(1, m + 1))


def is_standard(partition: JordanPartition | Sequence[int], m: int, n: int) -> bool:
    return tuple(partition) == standard_parts(m, n)


def partition_from_ranks(ranks: Sequence[int]) -> JordanPartition:
    """Jordan type from ``ranks[j] = rank N^j`` (``ranks[0]`` is the dimension).

    The number of blocks of size >= j is ``ranks[j-1] - ranks[j]``.
    """
    ranks = list(ranks)
    if not ranks or ranks[-1] != 0:
        ranks.append(0)
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j, count in enumerate(at_least, start=1):
        nxt = at_least[j] if j < len(at_least) else 0
        parts.extend([j] * (count - nxt))
    return JordanPartition(tuple(sorted(parts, reverse=True)))


def dense_rank_sequence(shape: ModuleShape) -> list[int]:
    """rank N^j on the full mn-dimensional GF(p) space, j = 0, 1, ... until 0.

    Builds the dense matrix of N and pushes the basis images through N one
    power at a time.  Cubic in mn; only for cross-checking small grids.
    """
    p = shape.p
    N = np.array(n_matrix(shape, p).data, dtype=np.int64)
    power = np.eye(shape.dim, dtype=np.int64)
    ranks = [shape.dim]
    while ranks[-1]:
        power = (N @ power) % p
        ranks.append(int(_kernels.rank_mod_p(power, p)))
    return ranks


def _check_pair(m: int, n: int, p: int, budget: int | None) -> ModuleShape:
    shape = ModuleShape(m, n, p)
    limit = oracle_budget() if budget is None else budget
    if shape.dim > limit:
        raise BudgetExceeded(f"m*n = {shape.dim} exceeds the oracle budget {limit}")
    return shape


def _graded_heights(shape: ModuleShape) -> list[int]:
    m, n, p = shape.m, shape.n, shape.p
    if p > _kernels.MAX_KERNEL_PRIME:
        raise ValidationError(f"p = {p} too large for the GF(p) kernels")
    # x_1..x_m must span ker N for the heights to give the whole Jordan type.
    if _kernels.grid_N_rank(m, n, p) != shape.dim - m:
        raise RuntimeError(f"dim ker N != m for {shape}")
    return [int(h) for h in _kernels.graded_kernel_heights(m, n, p)]


def rank_sequence(m: int, n: int, p: int, *, budget: int | None = None) -> list[int]:
    """rank N^j for j = 0 .. (largest block), from the graded kernel heights."""
    part = jordan_partition(m, n, p, budget=budget)
    return [sum(max(x - j, 0) for x in part) for j in range(part[0] + 1)]


def jordan_partition(m: int, n: int, p: int, *, budget: int | None = None,
                     method: str = "graded") -> JordanPartition:
    """Jordan type of N = g - 1 on V_m (x) V_n over GF(p).

    ``method="graded"`` (default) works diagonal by diagonal: N maps D_k to
    D_{k-1}, ker N is spanned by x_1..x_m, and the number of blocks longer
    than r equals ``rank N^r - rank N^(r+1) = #{i : x_i in im N^r}``.
    ``method="dense"`` takes ranks of powers of the full mn x mn matrix.
    """
    shape = _check_pair(m, n, p, budget)
    if method == "graded":
        part = JordanPartition(tuple(sorted((h + 1 for h in _graded_heights(shape)), reverse=True)))
    elif method == "dense":
        part = partition_from_ranks(dense_rank_sequence(shape))
    else:
        raise ValueError(f"unknown method {method!r}")
    if part.size != shape.dim or len(part) != m:
        raise RuntimeError(f"inconsistent Jordan type {part.parts} for {shape}")
    if part[0] > shape.q:
        raise RuntimeError(f"block of size {part[0]} exceeds q = {shape.q}")
    return part


@dataclass(frozen=True)
class StandardPairWitness:
    """Where a standard pair sits in the classification.

    ``reconstruct()`` rebuilds (m, n) from the stored parameters.  For odd p
    and t = 0, ``i`` is m and ``j`` the untranslated second entry; for t >= 1,
    ``i``, ``j`` are the multipliers of p**t and ``sign_m``, ``sign_n`` the
    choices in (p**t +/- 1)/2.  ``base`` records the untranslated stratum.
    """

    m: int
    n: int
    p: int
    stratum: str
    t: int | None = None
    i: int | None = None
    j: int | None = None
    r: int = 0
    sign_m: int | None = None
    sign_n: int | None = None
    base: str | None = None

    def reconstruct(self) -> tuple[int, int]:
        p = self.p
        if self.stratum == CHAR2_TWO_ODD:
            return 2, 3 + 2 * self.r
        if self.stratum == CHAR2_THREE:
            return 3, 6 + 4 * self.r
        if self.t == 0:
            return self.i, self.j + self.r * p
        q = p**self.t
        if self.base == T3:
            return self.i * q + (q + 1) // 2, self.i * q + (q - 1) // 2 + p * q + self.r * p * q
        return (self.i * q + (q + self.sign_m) // 2,
                self.j * q + (q + self.sign_n) // 2 + self.r * p * q)

    def as_row(self) -> dict:
        return {"m": self.m, "n": self.n, "stratum": self.stratum, "t": self.t,
                "i": self.i, "j": self.j, "r": self.r}


def _s0_bases(p: int, m: int) -> list[int]:
    """Second entries d with (m, d) in S'_0."""
    if not 2 <= m <= (p + 1) // 2:
        return []
    return list(range(m, p + 2 - m)) + [p + m - 1]


def _st_bases(p: int, t: int, m: int) -> list[tuple[str, int, int, int, int, int]]:
    """(base stratum, sign_m, i, j, sign_n, b) for every b with (m, b) in S'_t."""
    q = p**t
    out = []
    for sign_m in (1, -1):
        offset = (q + sign_m) // 2
        if (m - offset) % q:
            continue
        i = (m - offset) // q
        if not 1 <= i <= (p - 1) // 2:
            continue
        for j in range(i, p - i):
            for sign_n in (1, -1):
                if i == j and sign_m == 1 and sign_n == -1:
                    continue  # T_2
                out.append((T1_MINUS_T2, sign_m, i, j, sign_n, j * q + (q + sign_n) // 2))
        if sign_m == 1:
            out.append((T3, sign_m, i, i, -1, i * q + (q - 1) // 2 + p * q))
    return out


def _classify_odd(m: int, n: int, p: int) -> StandardPairWitness | None:
    found = []
    for d in _s0_bases(p, m):
        if n >= d and (n - d) % p == 0:
            r = (n - d) // p
            found.append(StandardPairWitness(m, n, p, S0_SHIFT if r else S0, t=0, i=m, j=d, r=r, base=S0))
    t = 1
    while p**t <= 2 * n:
        q = p**t
        for base, sign_m, i, j, sign_n, b in _st_bases(p, t, m):
            if n >= b and (n - b) % (p * q) == 0:
                r = (n - b) // (p * q)
                found.append(StandardPairWitness(m, n, p, ST_SHIFT if r else base, t=t, i=i, j=j, r=r,
                                                 sign_m=sign_m, sign_n=sign_n, base=base))
        t += 1
    if not found:
        return None
    return min(found, key=lambda w: w.r)


def classify_standard(m: int, n: int, p: int) -> StandardPairWitness | None:
    """Witness that lambda(m, n, p) is standard, or None.

    p = 2: the families (2, n) with n >= 3 odd and (3, 6 + 4r).
    Odd p: membership in S = union of the S_t, tested arithmetically.
    """
    if m < 2 or n < m:
        raise ValidationError(f"need 2 <= m <= n, got m={m}, n={n}")
    if p == 2:
        if m == 2 and n >= 3 and n % 2 == 1:
            return StandardPairWitness(m, n, p, CHAR2_TWO_ODD, r=(n - 3) // 2)
        if m == 3 and n >= 6 and (n - 6) % 4 == 0:
            return StandardPairWitness(m, n, p, CHAR2_THREE, r=(n - 6) // 4)
        return None
    return _classify_odd(m, n, p)


def enumerate_standard(p: int, max_sum: int) -> list[StandardPairWitness]:
    """All standard pairs with m + n <= max_sum, generated stratum by stratum.

    Built directly from the families and their translates rather than by
    calling :func:`classify_standard` on every pair.
    """
    found: dict[tuple[int, int], StandardPairWitness] = {}

    def add(w: StandardPairWitness):
        key = (w.m, w.n)
        if key not in found or w.r < found[key].r:
            found[key] = w

    if p == 2:
        for n in range(3, max_sum - 1, 2):
            add(StandardPairWitness(2, n, 2, CHAR2_TWO_ODD, r=(n - 3) // 2))
        for r in range(0, max_sum):
            if 9 + 4 * r > max_sum:
                break
            add(StandardPairWitness(3, 6 + 4 * r, 2, CHAR2_THREE, r=r))
        return [found[k] for k in sorted(found)]

    for k in range(2, (p + 1) // 2 + 1):
        for d in _s0_bases(p, k):
            r = 0
            while k + d + r * p <= max_sum:
                add(StandardPairWitness(k, d + r * p, p, S0_SHIFT if r else S0, t=0, i=k, j=d, r=r, base=S0))
                r += 1
    t = 1
    while 3 * p**t - 1 <= max_sum:
        q = p**t
        for i in range(1, (p - 1) // 2 + 1):
            for sign_m in (1, -1):
                m = i * q + (q + sign_m) // 2
                for base, sm, i2, j, sign_n, b in _st_bases(p, t, m):
                    r = 0
                    while m + b + r * p * q <= max_sum:
                        add(StandardPairWitness(m, b + r * p * q, p, ST_SHIFT if r else base, t=t, i=i2, j=j,
                                                r=r, sign_m=sm, sign_n=sign_n, base=base))
                        r += 1
        t += 1
    return [found[k] for k in sorted(found)]
