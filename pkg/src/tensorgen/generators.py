"""Generators y_1, ..., y_m of the summands of V_m (x) V_n.

For each k the construction is

    A_k  = matrix of N^(m+n-2k) : D_{m+n-k} -> D_k   (high/low ordered bases)
    C_k  = (1, -1, 1, ...)                          (coordinates of x_k)
    B_k  = adj(A_k) C_k
    y_k  = sum_i B_k[i] f[m-k+i, n+1-i]             (B_k read in the high basis)

and then ``N^(m+n-2k) y_k = det(A_k) x_k`` holds over the integers for every
pair.  When the Jordan partition is standard each det(A_k) is a unit mod p
and the cyclic submodules generated by the y_k give the direct sum
decomposition, which :func:`decompose` certifies by explicit GF(p) ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import binomial, carry_count, valuation
from .errors import NonStandardError
from .exact_linalg import IntMatrix, adjugate_int, det_int, stack_rank_fp
from .partitions import classify_standard
from .tensor_space import (
    GridVector,
    ModuleShape,
    apply_N,
    apply_N_power,
    build_A,
    coordinates,
    diagonal_basis,
    from_coordinates,
    high_basis,
    x_vector,
)

__all__ = [
    "DecompositionCertificate",
    "GeneratorCertificate",
    "b_vector",
    "c_vector",
    "check_d_recurrence",
    "check_valuation_identity",
    "d_formula",
    "d_valuation",
    "decompose",
    "verify_theorem1",
    "y_generator",
]


def c_vector(k: int) -> tuple[int, ...]:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return tuple((-1) ** s for s in range(k))


def b_vector(shape: ModuleShape, k: int) -> tuple[int, ...]:
    return adjugate_int(build_A(shape, k)).apply(c_vector(k))


def y_generator(shape: ModuleShape, k: int, b: tuple[int, ...] | None = None) -> GridVector:
    """y_k on D_{m+n-k}, with no rescaling of the coefficients."""
    if b is None:
        b = b_vector(shape, k)
    return from_coordinates(shape, high_basis(shape, k), b)


@dataclass(frozen=True)
class GeneratorCertificate:
    k: int
    A: IntMatrix
    detA: int
    C: tuple[int, ...]
    B: tuple[int, ...]
    y: GridVector
    theorem_holds: bool
    det_unit_mod_p: bool
    summand_dim: int


def verify_theorem1(shape: ModuleShape, k: int) -> GeneratorCertificate:
    """Build y_k and check ``N^(m+n-2k) y_k == det(A_k) x_k`` exactly over the integers."""
    A = build_A(shape, k)
    det = det_int(A)
    C = c_vector(k)
    B = adjugate_int(A).apply(C)
    y = y_generator(shape, k, B)
    lhs = apply_N_power(y, shape.m + shape.n - 2 * k)
    rhs = det * x_vector(shape, k)
    return GeneratorCertificate(
        k=k, A=A, detA=det, C=C, B=B, y=y,
        theorem_holds=lhs == rhs,
        det_unit_mod_p=det % shape.p != 0,
        summand_dim=shape.m + shape.n + 1 - 2 * k,
    )


def d_formula(shape: ModuleShape, k: int) -> int:
    """Closed-form det A_k as a product of binomial ratios; d_0 = 1."""
    m, n = shape.m, shape.n
    if not 0 <= k <= m:
        raise ValueError(f"k must lie in [0, {m}], got {k}")
    acc = Fraction(1)
    for l in range(k):
        acc *= Fraction(binomial(m + n - 2 * k + l, n - k), binomial(n - k + l, n - k))
    if acc.denominator != 1:
        raise ArithmeticError(f"d_{k}({m},{n}) came out non-integral: {acc}")
    return acc.numerator


def d_valuation(shape: ModuleShape, k: int) -> int:
    return valuation(d_formula(shape, k), shape.p)


def _d_by_det(shape: ModuleShape, k: int) -> int:
    return 1 if k == 0 else det_int(build_A(shape, k))


def check_d_recurrence(shape: ModuleShape, k: int) -> bool:
    """C(m+n-k-1, k) d_{k+1} == C(m+n-2k-2, n-k-1) d_k, with d from determinants."""
    m, n = shape.m, shape.n
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in [0, {m - 1}], got {k}")
    left = binomial(m + n - k - 1, k) * _d_by_det(shape, k + 1)
    right = binomial(m + n - 2 * k - 2, n - k - 1) * _d_by_det(shape, k)
    return left == right


def check_valuation_identity(shape: ModuleShape, k: int) -> bool:
    """nu_p C(m+n-k-1, k) == nu_p C(m+n-2k-2, m-k-1), both counted as carries."""
    m, n, p = shape.m, shape.n, shape.p
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must lie in [0, {m - 1}], got {k}")
    left = carry_count(k, m + n - 2 * k - 1, p)
    right = carry_count(m - k - 1, n - k - 1, p)
    return left == right


@dataclass
class DecompositionCertificate:
    shape: ModuleShape
    generators: list[GeneratorCertificate]
    spanning_rank: int
    orbit_dims: list[int] = field(default_factory=list)
    certified: bool = False

    @property
    def summand_dims(self) -> list[int]:
        return [g.summand_dim for g in self.generators]


def _orbit(y: GridVector, length: int) -> tuple[list[GridVector], bool]:
    """[y, Ny, ..., N^(length-1) y] and whether N^length y vanishes."""
    out = []
    v = y
    for _ in range(length):
        out.append(v)
        v = apply_N(v)
    return out, not v


def decompose(shape: ModuleShape) -> DecompositionCertificate:
    """Certify V_m (x) V_n = KG y_1 (+) ... (+) KG y_m over GF(p).

    Each orbit vector N^r y_k is homogeneous (it lives on D_{m+n-k-r}), so the
    rank of all mn orbit vectors is the sum of ranks diagonal by diagonal.
    """
    witness = classify_standard(shape.m, shape.n, shape.p)
    if witness is None:
        raise NonStandardError("decomposition certificate requires standard partition")
    p = shape.p
    gens = []
    by_diag: dict[int, list[GridVector]] = {}
    orbit_dims = []
    ok = True
    for k in range(1, shape.m + 1):
        cert = verify_theorem1(shape, k)
        gens.append(cert)
        length = cert.summand_dim
        orbit, dies = _orbit(cert.y.reduce(p), length)
        # KG y_k has dimension exactly `length`
        dim_ok = dies and bool(orbit[-1])
        orbit_dims.append(length if dim_ok else sum(1 for v in orbit if v))
        ok = ok and dim_ok and cert.theorem_holds and cert.det_unit_mod_p
        for v in orbit:
            if v:
                (d,) = v.diagonals()
                by_diag.setdefault(d, []).append(v)
    rank = 0
    for d, vecs in by_diag.items():
        if len(vecs) == 1:
            rank += 1  # a single nonzero vector
            continue
        basis = diagonal_basis(shape, d)
        rank += stack_rank_fp([coordinates(v, basis) for v in vecs], p)
    ok = ok and rank == shape.dim
    return DecompositionCertificate(shape=shape, generators=gens, spanning_rank=rank,
                                    orbit_dims=orbit_dims, certified=ok)
