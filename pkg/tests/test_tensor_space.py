import pytest
from hypothesis import given
from hypothesis import strategies as st

from tensorgen.arith import binomial
from tensorgen.errors import ValidationError
from tensorgen.exact_linalg import IntMatrix
from tensorgen.tensor_space import (
    GridVector,
    ModuleShape,
    apply_N,
    apply_N_power,
    build_A,
    coordinates,
    diagonal_basis,
    diagonal_dim,
    filtration_basis,
    high_basis,
    low_basis,
    matrix_of_N_power,
    n_matrix,
    to_v_basis,
    x_vector,
)

S45 = ModuleShape(4, 5, 7)


def f(shape, i, j, c=1, modulus=None):
    return GridVector(shape, {(i, j): c}, modulus)


def shapes(max_n):
    return [ModuleShape(m, n, 7) for m in range(2, max_n + 1) for n in range(m, max_n + 1)]


def iterate_N(v, r):
    for _ in range(r):
        v = apply_N(v)
    return v


def test_shape_validation_and_alpha():
    assert ModuleShape(4, 5, 3).alpha == 2  # 3^2 >= 8
    assert ModuleShape(2, 2, 3).alpha == 1
    assert ModuleShape(4, 5, 3, alpha=3).q == 27
    for bad in [(1, 5, 3), (5, 4, 3), (2, 3, 4)]:
        with pytest.raises(ValidationError):
            ModuleShape(*bad)
    with pytest.raises(ValidationError):
        ModuleShape(4, 5, 3, alpha=1)


def test_grid_vector_invariants():
    v = GridVector(S45, {(1, 1): 0, (2, 3): 5})
    assert v.coeffs == {(2, 3): 5}
    with pytest.raises(IndexError):
        GridVector(S45, {(5, 1): 1})
    assert GridVector(S45, {(1, 1): 7}, modulus=7) == GridVector.zero(S45, 7)


def test_mode_mixing_is_refused():
    a = f(S45, 1, 1)
    with pytest.raises(ValueError, match="mode mismatch"):
        a + a.reduce()
    assert (3 * a).reduce(2) == f(S45, 1, 1, modulus=2)
    with pytest.raises(ValueError):
        a.reduce(3).reduce(5)


def test_apply_N_examples():
    assert not apply_N(f(S45, 1, 1))
    assert apply_N(f(S45, 2, 2)) == f(S45, 1, 2) + f(S45, 2, 1)
    x3 = f(S45, 1, 3) - f(S45, 2, 2) + f(S45, 3, 1)
    assert not apply_N(x3)


def test_apply_N_power_examples():
    v = f(S45, 3, 4) + 2 * f(S45, 1, 5)
    assert apply_N_power(v, 0) == v
    assert apply_N_power(f(S45, 2, 5), 3) == 3 * f(S45, 1, 3) + f(S45, 2, 2)
    with pytest.raises(ValueError):
        apply_N_power(v, -1)


def test_closed_form_power_matches_iteration():
    for shape in shapes(8):
        for i in range(1, shape.m + 1):
            for j in range(1, shape.n + 1):
                v = f(shape, i, j)
                w = v
                for r in range(shape.m + shape.n + 1):
                    assert apply_N_power(v, r) == w
                    w = apply_N(w)


def test_closed_form_power_mod_p():
    shape = ModuleShape(5, 7, 3)
    for i in range(1, 6):
        for j in range(1, 8):
            for r in range(12):
                v = f(shape, i, j)
                assert apply_N_power(v.reduce(), r) == apply_N_power(v, r).reduce()


def test_nilpotency_index():
    for shape in shapes(7):
        for i in range(1, shape.m + 1):
            for j in range(1, shape.n + 1):
                assert not iterate_N(f(shape, i, j), shape.top)
        assert iterate_N(f(shape, shape.m, shape.n), shape.top - 1)


def test_grading():
    for shape in shapes(7):
        for k in range(1, shape.top + 1):
            for ij in diagonal_basis(shape, k):
                image = apply_N(f(shape, *ij))
                assert image.diagonals() <= {k - 1}


def test_diagonal_dimensions():
    for shape in shapes(9):
        assert sum(diagonal_dim(shape, k) for k in range(1, shape.top + 1)) == shape.dim
        for k in range(1, shape.top + 1):
            assert diagonal_dim(shape, k) == len(diagonal_basis(shape, k))
        assert len(filtration_basis(shape, shape.m)) == sum(range(1, shape.m + 1))


def test_x_vector_examples():
    assert x_vector(S45, 1) == f(S45, 1, 1)
    assert x_vector(S45, 3) == f(S45, 1, 3) - f(S45, 2, 2) + f(S45, 3, 1)
    with pytest.raises(ValidationError):
        x_vector(S45, 5)


def test_x_vectors_are_killed():
    for shape in shapes(9):
        for i in range(1, shape.m + 1):
            x = x_vector(shape, i)
            assert x.diagonals() == {i}
            assert not apply_N(x)


def test_ordered_bases():
    assert low_basis(S45, 3) == [(1, 3), (2, 2), (3, 1)]
    assert high_basis(S45, 3) == [(2, 5), (3, 4), (4, 3)]
    sq = ModuleShape(4, 4, 7)
    assert high_basis(sq, 4) == low_basis(sq, 4)


def test_build_A_examples():
    assert build_A(S45, 3).tolist() == [[3, 3, 1], [1, 3, 3], [0, 1, 3]]
    for n in range(2, 12):
        assert build_A(ModuleShape(2, n, 7), 2).tolist() == [[1, n - 2], [0, 1]]
    for m in range(2, 8):
        for n in range(m, 12):
            A = build_A(ModuleShape(m, n, 7), m)
            for s in range(m):
                assert A[s, s] == 1
                assert all(A[s, t] == 0 for t in range(s))
    with pytest.raises(ValidationError):
        build_A(S45, 0)


def test_matrix_of_N_power_matches_build_A():
    for shape in shapes(10):
        for k in range(1, shape.m + 1):
            assert matrix_of_N_power(shape, k) == build_A(shape, k)
    assert matrix_of_N_power(ModuleShape(2, 3, 5), 1).tolist() == [[3]]
    assert matrix_of_N_power(S45, 3, modulus=3).tolist() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]


def test_coordinates():
    x = x_vector(S45, 3)
    assert coordinates(x, low_basis(S45, 3)) == (1, -1, 1)
    with pytest.raises(ValueError):
        coordinates(x, high_basis(S45, 3))


def test_to_v_basis_examples():
    s33 = ModuleShape(3, 3, 5)
    for j in range(1, 4):
        assert to_v_basis(f(s33, 3, j)) == {(3, j): 1}  # g^0 w_j = w_j
    s23 = ModuleShape(2, 3, 5)
    # f[2, j] = u_2 (x) g w_j = v[2, j] + v[2, j-1] when m < n
    assert to_v_basis(f(s23, 2, 1)) == {(2, 1): 1}
    assert to_v_basis(f(s23, 2, 3)) == {(2, 2): 1, (2, 3): 1}
    assert to_v_basis(f(s23, 1, 1)) == {(1, 1): 1}
    assert to_v_basis(f(s23, 1, 2)) == {(1, 1): 2, (1, 2): 1}


def test_to_v_basis_unitriangular():
    for shape in shapes(7):
        for i in range(1, shape.m + 1):
            for j in range(1, shape.n + 1):
                image = to_v_basis(f(shape, i, j))
                assert image[(i, j)] == 1
                assert all(a + b < i + j for (a, b) in image if (a, b) != (i, j))


def _g_minus_one_on_v(shape, coeffs):
    # g u_i = u_i + u_{i-1}, g w_j = w_j + w_{j-1}, extended to the tensor product
    out = {}
    for (i, j), c in coeffs.items():
        for a, b in [(i - 1, j), (i, j - 1), (i - 1, j - 1)]:
            if a >= 1 and b >= 1:
                out[(a, b)] = out.get((a, b), 0) + c
    return {k: c for k, c in sorted(out.items()) if c}


def test_grid_rule_from_the_tensor_action():
    # N f[i,j] computed from u, w and the diagonal action of g agrees with the grid rule
    for shape in shapes(6):
        for i in range(1, shape.m + 1):
            for j in range(1, shape.n + 1):
                v = f(shape, i, j)
                assert _g_minus_one_on_v(shape, to_v_basis(v)) == to_v_basis(apply_N(v))


def test_n_matrix_matches_apply_N():
    shape = ModuleShape(3, 4, 5)
    N = n_matrix(shape)
    for i in range(1, 4):
        for j in range(1, 5):
            col = [N[r, (i - 1) * 4 + (j - 1)] for r in range(12)]
            image = apply_N(f(shape, i, j))
            dense = [image[(a, b)] for a in range(1, 4) for b in range(1, 5)]
            assert col == dense
    assert isinstance(N, IntMatrix)


@given(st.integers(2, 9), st.integers(0, 9), st.integers(0, 20), st.data())
def test_power_is_linear(m, extra, r, data):
    shape = ModuleShape(m, m + extra, 3)
    coeffs = data.draw(st.dictionaries(
        st.tuples(st.integers(1, shape.m), st.integers(1, shape.n)), st.integers(-50, 50), max_size=6))
    v = GridVector(shape, coeffs)
    total = GridVector.zero(shape)
    for (i, j), c in coeffs.items():
        total = total + c * apply_N_power(f(shape, i, j), r)
    assert apply_N_power(v, r) == total
    assert apply_N_power(v, r) == iterate_N(v, r)


def test_a_entries_are_binomials():
    shape = ModuleShape(5, 8, 3)
    for k in range(1, 6):
        A = build_A(shape, k)
        for s in range(1, k + 1):
            for t in range(1, k + 1):
                assert A[s - 1, t - 1] == binomial(shape.m + shape.n - 2 * k, shape.n - k + s - t)
