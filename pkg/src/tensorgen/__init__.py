"""Exact generators for the indecomposable summands of V_m (x) V_n over a cyclic p-group."""

from .arith import binomial, binomial_mod_p, binomial_valuation, carry_count, digits, valuation
from .errors import BudgetExceeded, NonStandardError, ValidationError
from .exact_linalg import FpMatrix, IntMatrix, adjugate_int, det_int, rank_fp, reduce_mod_p, stack_rank_fp
from .generators import (
    DecompositionCertificate,
    GeneratorCertificate,
    b_vector,
    c_vector,
    check_d_recurrence,
    check_valuation_identity,
    d_formula,
    decompose,
    verify_theorem1,
    y_generator,
)
from .partitions import (
    JordanPartition,
    StandardPairWitness,
    classify_standard,
    enumerate_standard,
    is_standard,
    jordan_partition,
)
from .tensor_space import (
    GridVector,
    ModuleShape,
    apply_N,
    apply_N_power,
    build_A,
    matrix_of_N_power,
    to_v_basis,
    x_vector,
)

__version__ = "0.1.0"
