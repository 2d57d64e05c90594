"""V_m (x) V_n in the f-basis.

Basis vectors are ``f[i, j] = u_i (x) g^(n-i) w_j`` with 1-based indices
``1 <= i <= m`` and ``1 <= j <= n``.  In this basis ``N = g - 1`` acts by the
grid rule ``N f[i, j] = f[i-1, j] + f[i, j-1]`` (terms with an index below 1
vanish), so ``N`` lowers the diagonal index ``i + j - 1`` by one.

Vectors carry a mode: integer coefficients (``modulus is None``) or
coefficients in GF(p).  Arithmetic between modes is refused; use
:meth:`GridVector.reduce` to go from the integers to GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .arith import binomial, binomial_mod_p, is_prime
from .errors import ValidationError
from .exact_linalg import FpMatrix, IntMatrix

__all__ = [
    "GridVector",
    "ModuleShape",
    "apply_N",
    "apply_N_power",
    "build_A",
    "coordinates",
    "diagonal_basis",
    "diagonal_dim",
    "filtration_basis",
    "from_coordinates",
    "grid_index",
    "high_basis",
    "low_basis",
    "matrix_of_N_power",
    "minimal_alpha",
    "n_matrix",
    "to_v_basis",
    "x_vector",
]


def minimal_alpha(p: int, top: int) -> int:
    """Smallest alpha >= 1 with p**alpha >= top."""
    alpha = 1
    while p**alpha < top:
        alpha += 1
    return alpha


@dataclass(frozen=True)
class ModuleShape:
    """Dimensions m <= n, the characteristic p, and the exponent alpha of |G| = p**alpha.

    ``alpha`` defaults to the least value with ``p**alpha >= m + n - 1`` so that
    every standard part fits.
    """

    m: int
    n: int
    p: int
    alpha: int | None = field(default=None)

    def __post_init__(self):
        m, n, p = self.m, self.n, self.p
        if not is_prime(p):
            raise ValidationError(f"p must be prime, got {p}")
        if m < 2:
            raise ValidationError(f"m must be at least 2, got {m}")
        if n < m:
            raise ValidationError(f"need m <= n, got m={m}, n={n}")
        top = m + n - 1
        if self.alpha is None:
            object.__setattr__(self, "alpha", minimal_alpha(p, top))
        elif self.alpha < 1 or p**self.alpha < top:
            raise ValidationError(f"p**alpha = {p}**{self.alpha} is below m + n - 1 = {top}")

    @property
    def q(self) -> int:
        return self.p**self.alpha

    @property
    def dim(self) -> int:
        return self.m * self.n

    @property
    def top(self) -> int:
        """Largest diagonal index, m + n - 1."""
        return self.m + self.n - 1

    def contains(self, i: int, j: int) -> bool:
        return 1 <= i <= self.m and 1 <= j <= self.n


class GridVector:
    """Sparse vector over the f-basis; zero coefficients are never stored."""

    __slots__ = ("shape", "modulus", "_coeffs")

    def __init__(self, shape: ModuleShape, coeffs: Mapping[tuple[int, int], int] | None = None,
                 modulus: int | None = None):
        cleaned = {}
        for (i, j), c in (coeffs or {}).items():
            if not shape.contains(i, j):
                raise IndexError(f"f[{i},{j}] outside the {shape.m}x{shape.n} grid")
            c = int(c)
            if modulus is not None:
                c %= modulus
            if c:
                cleaned[(i, j)] = c
        self.shape = shape
        self.modulus = modulus
        self._coeffs = cleaned

    @classmethod
    def _trusted(cls, shape: ModuleShape, coeffs: dict, modulus: int | None) -> GridVector:
        # caller guarantees in-range indices
        v = object.__new__(cls)
        v.shape = shape
        v.modulus = modulus
        if modulus is None:
            v._coeffs = {k: c for k, c in coeffs.items() if c}
        else:
            v._coeffs = {k: c % modulus for k, c in coeffs.items() if c % modulus}
        return v

    @classmethod
    def basis(cls, shape: ModuleShape, i: int, j: int, modulus: int | None = None) -> GridVector:
        return cls(shape, {(i, j): 1}, modulus)

    @classmethod
    def zero(cls, shape: ModuleShape, modulus: int | None = None) -> GridVector:
        return cls(shape, {}, modulus)

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._coeffs)

    @property
    def is_integral(self) -> bool:
        return self.modulus is None

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self._coeffs.get(ij, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._coeffs))

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def terms(self) -> list[tuple[int, int, int]]:
        """(i, j, coefficient) triples sorted by (i, j)."""
        return [(i, j, self._coeffs[(i, j)]) for i, j in sorted(self._coeffs)]

    def diagonals(self) -> set[int]:
        return {i + j - 1 for i, j in self._coeffs}

    def reduce(self, p: int | None = None) -> GridVector:
        """Explicit reduction from integer mode to GF(p) mode."""
        p = self.shape.p if p is None else p
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"cannot reduce a GF({self.modulus}) vector mod {p}")
        return GridVector(self.shape, self._coeffs, p)

    def _check(self, other: GridVector) -> None:
        if not isinstance(other, GridVector):
            raise TypeError(f"expected GridVector, got {type(other).__name__}")
        if other.shape != self.shape:
            raise ValueError("grid vectors live on different shapes")
        if other.modulus != self.modulus:
            raise ValueError(f"mode mismatch: {self._mode()} vs {other._mode()}")

    def _mode(self) -> str:
        return "Z" if self.modulus is None else f"GF({self.modulus})"

    def __add__(self, other: GridVector) -> GridVector:
        self._check(other)
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            out[key] = out.get(key, 0) + c
        return GridVector(self.shape, out, self.modulus)

    def __neg__(self) -> GridVector:
        return GridVector(self.shape, {k: -c for k, c in self._coeffs.items()}, self.modulus)

    def __sub__(self, other: GridVector) -> GridVector:
        return self + (-other)

    def __rmul__(self, c: int) -> GridVector:
        if not isinstance(c, int):
            return NotImplemented
        return GridVector(self.shape, {k: c * v for k, v in self._coeffs.items()}, self.modulus)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, GridVector):
            return NotImplemented
        return self.shape == other.shape and self.modulus == other.modulus and self._coeffs == other._coeffs

    def __repr__(self):
        if not self._coeffs:
            body = "0"
        else:
            body = " + ".join(f"{c}*f[{i},{j}]" for i, j, c in self.terms())
        return f"GridVector({body}; {self._mode()})"


def apply_N(v: GridVector) -> GridVector:
    out: dict[tuple[int, int], int] = {}
    for (i, j), c in v._coeffs.items():
        if i > 1:
            out[(i - 1, j)] = out.get((i - 1, j), 0) + c
        if j > 1:
            out[(i, j - 1)] = out.get((i, j - 1), 0) + c
    return GridVector._trusted(v.shape, out, v.modulus)


def apply_N_power(v: GridVector, r: int) -> GridVector:
    """N**r by the closed form ``N^r f[i,j] = sum_l C(r,l) f[i-r+l, j-l]``."""
    if r < 0:
        raise ValueError(f"power must be non-negative, got {r}")
    if r == 0:
        return v
    p = v.modulus
    out: dict[tuple[int, int], int] = {}
    for (i, j), c in v._coeffs.items():
        # need i - r + l >= 1 and j - l >= 1
        for l in range(max(0, r + 1 - i), min(r, j - 1) + 1):
            b = binomial(r, l) if p is None else binomial_mod_p(r, l, p)
            if b:
                key = (i - r + l, j - l)
                out[key] = out.get(key, 0) + c * b
    return GridVector._trusted(v.shape, out, p)


def diagonal_dim(shape: ModuleShape, k: int) -> int:
    """dim D_k, where D_k is spanned by the f[i, j] with i + j = k + 1."""
    if not 1 <= k <= shape.top:
        return 0
    return min(k, shape.m, shape.n, shape.m + shape.n - k)


def diagonal_basis(shape: ModuleShape, k: int) -> list[tuple[int, int]]:
    """Index pairs of D_k ordered by increasing first index."""
    lo = max(1, k + 1 - shape.n)
    hi = min(shape.m, k)
    return [(i, k + 1 - i) for i in range(lo, hi + 1)]


def filtration_basis(shape: ModuleShape, k: int) -> list[tuple[int, int]]:
    """Index pairs spanning F_k = D_1 + ... + D_k."""
    return [ij for d in range(1, min(k, shape.top) + 1) for ij in diagonal_basis(shape, d)]


def _check_k(shape: ModuleShape, k: int) -> None:
    if not 1 <= k <= shape.m:
        raise ValidationError(f"k must lie in [1, {shape.m}], got {k}")


def low_basis(shape: ModuleShape, k: int) -> list[tuple[int, int]]:
    """Ordered basis (f[1,k], f[2,k-1], ..., f[k,1]) of D_k."""
    _check_k(shape, k)
    return [(s, k + 1 - s) for s in range(1, k + 1)]


def high_basis(shape: ModuleShape, k: int) -> list[tuple[int, int]]:
    """Ordered basis (f[m-k+1,n], ..., f[m,n-k+1]) of D_{m+n-k}."""
    _check_k(shape, k)
    m, n = shape.m, shape.n
    return [(m - k + t, n + 1 - t) for t in range(1, k + 1)]


def coordinates(v: GridVector, basis: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Coordinates of ``v`` in an ordered list of basis pairs; ``v`` must lie in their span."""
    coeffs = v._coeffs
    out = tuple(coeffs.get(ij, 0) for ij in basis)
    if sum(1 for c in out if c) != len(coeffs):
        stray = sorted(set(coeffs) - set(basis))
        raise ValueError(f"vector has support outside the basis: {stray}")
    return out


def from_coordinates(shape: ModuleShape, basis: Sequence[tuple[int, int]], coords: Sequence[int],
                     modulus: int | None = None) -> GridVector:
    if len(basis) != len(coords):
        raise ValueError("basis and coordinate lengths differ")
    return GridVector(shape, dict(zip(basis, coords)), modulus)


def x_vector(shape: ModuleShape, i: int) -> GridVector:
    """Kernel vector x_i = sum_j (-1)^(j-1) f[j, i+1-j] on D_i."""
    _check_k(shape, i)
    return GridVector(shape, {(j, i + 1 - j): (-1) ** (j - 1) for j in range(1, i + 1)})


def build_A(shape: ModuleShape, k: int) -> IntMatrix:
    """Matrix of N^(m+n-2k): D_{m+n-k} -> D_k in the high/low ordered bases.

    Entry (s, t) is C(m+n-2k, n-k+s-t).
    """
    _check_k(shape, k)
    m, n = shape.m, shape.n
    r = m + n - 2 * k
    return IntMatrix(k, k, [binomial(r, n - k + s - t) for s in range(1, k + 1) for t in range(1, k + 1)])


def matrix_of_N_power(shape: ModuleShape, k: int, modulus: int | None = None) -> IntMatrix | FpMatrix:
    """Same matrix as :func:`build_A`, read off by pushing each high-basis vector through N^(m+n-2k)."""
    _check_k(shape, k)
    r = shape.m + shape.n - 2 * k
    low = low_basis(shape, k)
    columns = []
    for ij in high_basis(shape, k):
        image = apply_N_power(GridVector.basis(shape, *ij, modulus=modulus), r)
        columns.append(coordinates(image, low))
    rows = [[col[s] for col in columns] for s in range(k)]
    if modulus is None:
        return IntMatrix.from_rows(rows)
    return FpMatrix(modulus, rows)


def to_v_basis(v: GridVector) -> dict[tuple[int, int], int]:
    """Rewrite ``v`` in the tensor basis v[i, j] = u_i (x) w_j.

    Uses ``g^s w_j = sum_l C(s, j - l) w_l``, so f[i, j] = sum_l C(n-i, j-l) v[i, l].
    """
    n = v.shape.n
    p = v.modulus
    out: dict[tuple[int, int], int] = {}
    for (i, j), c in v.coeffs.items():
        s = n - i
        for l in range(max(1, j - s), j + 1):
            b = binomial(s, j - l)
            out[(i, l)] = out.get((i, l), 0) + c * b
    if p is not None:
        out = {key: c % p for key, c in out.items()}
    return {key: c for key, c in sorted(out.items()) if c}


def grid_index(shape: ModuleShape, i: int, j: int) -> int:
    """Row-major position of f[i, j] in dense coordinates."""
    return (i - 1) * shape.n + (j - 1)


def n_matrix(shape: ModuleShape, modulus: int | None = None) -> IntMatrix | FpMatrix:
    """Dense mn x mn matrix of N acting on column vectors in row-major f-order."""
    dim = shape.dim
    rows = [[0] * dim for _ in range(dim)]
    for i in range(1, shape.m + 1):
        for j in range(1, shape.n + 1):
            col = grid_index(shape, i, j)
            if i > 1:
                rows[grid_index(shape, i - 1, j)][col] += 1
            if j > 1:
                rows[grid_index(shape, i, j - 1)][col] += 1
    if modulus is None:
        return IntMatrix.from_rows(rows)
    return FpMatrix(modulus, rows)
