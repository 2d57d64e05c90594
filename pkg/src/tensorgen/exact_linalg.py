"""Dense exact matrices over the integers and over GF(p).

Integer routines are fraction-free (Bareiss) and never leave ``int``.
GF(p) routines run on int64 numpy arrays through compiled kernels.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernels

__all__ = [
    "FpMatrix",
    "IntMatrix",
    "adjugate_int",
    "det_fp",
    "det_int",
    "rank_fp",
    "reduce_mod_p",
    "stack_rank_fp",
]

_COFACTOR_MAX = 8


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, k: int) -> IntMatrix:
        return cls(k, k, [int(i == j) for i in range(k) for j in range(k)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        a = self.tolist()
        bt = other.transpose().tolist()
        return IntMatrix(self.rows, other.cols, [sum(x * y for x, y in zip(row, col)) for row in a for col in bt])

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(x * y for x, y in zip(row, vec)) for row in self.tolist())

    def scale(self, c: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [c * e for e in self.entries])

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.tolist()})"


class FpMatrix:
    """Dense matrix over GF(p) with canonical representatives in [0, p)."""

    __slots__ = ("p", "data")

    def __init__(self, p: int, data):
        if p > _kernels.MAX_KERNEL_PRIME:
            raise ValueError(f"prime {p} too large for the GF(p) kernels")
        arr = np.array(data, dtype=np.int64, ndmin=2)
        if arr.ndim != 2:
            raise ValueError("FpMatrix needs a 2-d array")
        arr %= p
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FpMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(int(e) for e in self.data.ravel())

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def transpose(self) -> FpMatrix:
        return FpMatrix(self.p, self.data.T)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.tolist()})"


def _require_square(M: IntMatrix) -> None:
    if not M.is_square:
        raise ValueError(f"square matrix required, got {M.rows}x{M.cols}")


def _bareiss_det(a: list[list[int]]) -> int:
    # destroys `a`
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_int(M: IntMatrix) -> int:
    """Exact determinant by Bareiss elimination."""
    _require_square(M)
    return _bareiss_det(M.tolist())


def _adjugate_cofactors(M: IntMatrix) -> IntMatrix:
    n = M.rows
    a = M.tolist()
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for r, row in enumerate(a) if r != i]
            # adj[j][i] is the (i, j) cofactor
            out[j][i] = (-1) ** (i + j) * _bareiss_det(minor)
    return IntMatrix.from_rows(out)


def _adjugate_gauss_jordan(M: IntMatrix) -> IntMatrix | None:
    """Fraction-free Gauss-Jordan on [M | I]; None when M is singular."""
    n = M.rows
    a = [row + [int(i == j) for j in range(n)] for i, row in enumerate(M.tolist())]
    width = 2 * n
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return None
        akk = a[k][k]
        rowk = a[k]
        for i in range(n):
            if i == k:
                continue
            rowi = a[i]
            aik = rowi[k]
            for j in range(width):
                if j != k:
                    rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    # left block is now sign*det(M) * I and the right block sign*adj(M)
    return IntMatrix(n, n, [sign * e for row in a for e in row[n:]])


def adjugate_int(M: IntMatrix) -> IntMatrix:
    """Classical adjoint, so that ``M @ adj(M) == det(M) * I``.

    The 1x1 adjugate is ``[[1]]``.
    """
    _require_square(M)
    if M.rows == 1:
        return IntMatrix(1, 1, [1])
    if M.rows <= _COFACTOR_MAX:
        return _adjugate_cofactors(M)
    adj = _adjugate_gauss_jordan(M)
    if adj is None:
        return _adjugate_cofactors(M)
    return adj


def reduce_mod_p(M: IntMatrix, p: int) -> FpMatrix:
    return FpMatrix(p, [[e % p for e in row] for row in M.tolist()])


def rank_fp(M: FpMatrix) -> int:
    return int(_kernels.rank_mod_p(np.ascontiguousarray(M.data), M.p))


def det_fp(M: FpMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError(f"square matrix required, got {M.rows}x{M.cols}")
    return int(_kernels.det_mod_p(np.ascontiguousarray(M.data), M.p))


def stack_rank_fp(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Rank over GF(p) of the matrix whose rows are ``vectors``."""
    if len(vectors) == 0:
        return 0
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise ValueError("vectors must all have the same length")
    if width == 0:
        return 0
    return rank_fp(FpMatrix(p, [[int(x) % p for x in v] for v in vectors]))
