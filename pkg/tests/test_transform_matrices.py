import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmlattice import (
    InvalidGenerator,
    Mat2,
    Mat4,
    Rfm1,
    Rfm2,
    Shift,
    Twist,
    all_types,
    apply,
    generator_matrix,
    gram,
    is_in_gamma,
    kron,
    kron_factor,
    lookup_type,
    normalized_rfm_matrix,
    pairing,
    preserves_pairing,
    rfm_matrix,
    shift_matrix,
    tensor_group_member,
    twist_matrix,
)
from fmlattice.transform_matrices import isometry_inverse

small = st.integers(-30, 30)
mat2s = st.builds(Mat2, small, small, small, small)
vecs = st.tuples(small, small, small, small)
I2 = Mat2.identity()
I4 = Mat4.identity()


def np4(M: Mat4) -> np.ndarray:
    return np.array(M.rows(), dtype=object)


def test_gram_matrix():
    assert gram().rows() == [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]]
    v, w = (0, 0, 0, 1), (1, 0, 0, 0)
    assert int(np.array(v) @ np4(gram()) @ np.array(w)) == -1


@given(vecs, vecs)
def test_gram_reproduces_pairing(v, w):
    assert int(np.array(v, dtype=object) @ np4(gram()) @ np.array(w, dtype=object)) == pairing(v, w)


@given(mat2s, mat2s)
def test_kron_matches_numpy(A, B):
    ref = np.kron(np.array(A.rows(), dtype=object), np.array(B.rows(), dtype=object))
    assert kron(A, B).rows() == ref.tolist()


@given(mat2s, mat2s, mat2s, mat2s)
def test_mixed_product(A, B, C, D):
    assert kron(A, C) @ kron(B, D) == kron(A @ B, C @ D)


@given(small, small)
def test_twist_layout(u1, u2):
    expect = [[1, 0, 0, 0], [u1, 1, 0, 0], [u2, 0, 1, 0], [u1 * u2, u2, u1, 1]]
    assert twist_matrix(u1, u2).rows() == expect
    assert kron(Mat2(1, 0, u2, 1), Mat2(1, 0, u1, 1)).rows() == expect


def test_twist_examples():
    assert twist_matrix(0, 0) == I4
    assert twist_matrix(1, 1).rows() == [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]
    assert kron(I2, I2) == I4


@given(small, small, small, small)
def test_twist_additive(a, b, c, d):
    assert twist_matrix(a, b) @ twist_matrix(c, d) == twist_matrix(a + c, b + d)


def test_shift():
    assert shift_matrix(0) == I4
    assert shift_matrix(2) == I4
    assert shift_matrix(1) @ (0, 0, 0, 1) == (0, 0, 0, -1)
    assert shift_matrix(-3) == -I4


def test_rfm_point_images():
    t61 = lookup_type("6,1", 0)
    t21 = lookup_type("2,1", 0)
    assert rfm_matrix(Rfm1(1, 1, 0, 1), t61) @ (0, 0, 0, 1) == (0, 1, 0, 1)
    assert rfm_matrix(Rfm2(1, 1, 0, 1), t21) @ (0, 0, 0, 1) == (0, 0, 2, 1)
    with pytest.raises(InvalidGenerator):
        rfm_matrix(Rfm1(1, 1, 1, 2), lookup_type("2,2", 0))


@pytest.mark.parametrize(
    "spec",
    [Rfm1(1, 1, 0, 2), Rfm1(1, 0, 0, 1), Rfm1(-1, -1, 0, -1), Rfm2(2, 1, 1, 1)],
)
def test_rfm_validation(spec):
    with pytest.raises(InvalidGenerator):
        rfm_matrix(spec, lookup_type("2,2", 0))


def test_normalized_rfm():
    t21 = lookup_type("2,1", 0)
    assert normalized_rfm_matrix(1, 1, 0, 1, t21, 1) == kron(Mat2(1, 1, 0, 1), I2)
    assert normalized_rfm_matrix(1, 1, 0, 1, t21, 2) == kron(I2, Mat2(1, 2, 0, 1))
    assert normalized_rfm_matrix(1, 1, 0, 1, t21, 1) != I4
    with pytest.raises(ValueError):
        normalized_rfm_matrix(1, 1, 0, 1, t21, 3)


@pytest.mark.parametrize("spec", [Rfm1(3, 2, 4, 3, 5), Rfm2(1, 3, 0, 1, -2), Rfm1(1, 1, 0, 1, 1)])
def test_rfm_point_image_with_shear(spec):
    st = lookup_type("2,2", 0)
    lam = st.lam(spec.fibration)
    img = rfm_matrix(spec, st) @ (0, 0, 0, 1)
    if spec.fibration == 1:
        assert img == (0, spec.a * lam, 0, spec.b)
    else:
        assert img == (0, 0, spec.a * lam, spec.b)


def test_is_in_gamma():
    assert is_in_gamma(Mat2(1, 2, 0, 1), 2)
    assert not is_in_gamma(Mat2(1, 1, 0, 1), 2)
    assert not is_in_gamma(Mat2(2, 2, 1, 1), 2)


@given(small, small)
def test_preserves_pairing(u1, u2):
    assert preserves_pairing(twist_matrix(u1, u2))


def test_preserves_pairing_examples():
    assert preserves_pairing(shift_matrix(1))
    assert not preserves_pairing(Mat4.from_rows([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    for st in all_types():
        assert preserves_pairing(rfm_matrix(Rfm1(1, 1, 0, 1, 2), st))
        assert preserves_pairing(rfm_matrix(Rfm2(1, 1, 0, 1, -1), st))


def test_kron_factor_examples():
    assert kron_factor(I4) == (I2, I2)
    A, B = Mat2(1, 2, 0, 1), Mat2(1, 0, 3, 1)
    assert kron_factor(kron(A, B)) == (A, B)
    perm = Mat4.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert kron_factor(perm) is None
    assert kron_factor(Mat4.from_flat([0] * 16)) is None


def test_kron_factor_rejects_non_unimodular():
    assert kron_factor(kron(Mat2(2, 0, 0, 1), I2)) is None


@given(mat2s, mat2s)
def test_kron_factor_round_trip_up_to_sign(A, B):
    if A.det() not in (1, -1) or B.det() not in (1, -1):
        return
    A2, B2 = kron_factor(kron(A, B))
    assert (A2, B2) in ((A, B), (-A, -B))
    first = next(x for x in B2.flat() if x)
    assert first > 0


def test_tensor_group_member():
    for st in all_types():
        assert tensor_group_member(twist_matrix(3, -5), st)
        for f in (1, 2):
            assert tensor_group_member(normalized_rfm_matrix(1, 1, 0, 1, st, f), st)
    t22 = lookup_type("2,2", 0)
    assert not tensor_group_member(kron(Mat2(1, 1, 0, 1), I2), t22)
    # B normalised positive, but only (-A, -B) lies in the group
    assert tensor_group_member(kron(Mat2(-1, -2, 0, -1), Mat2(-1, 0, 0, -1)), t22)
    assert tensor_group_member(shift_matrix(1), t22)


def test_apply_examples():
    v = (3, -1, 4, 1)
    assert apply(I4, v) == v
    assert apply(twist_matrix(2, 5), (1, 0, 0, 0)) == (1, 2, 5, 10)
    st = lookup_type("3,3", 0)
    assert apply(rfm_matrix(Rfm1(2, 1, 3, 2), st), (0, 0, 0, 1)) == (0, 3, 0, 2)


@given(small, small, vecs)
def test_isometry_inverse(u1, u2, v):
    M = twist_matrix(u1, u2)
    assert isometry_inverse(M) @ (M @ v) == v


def test_generator_matrix_dispatch():
    st = lookup_type("2,1", 0)
    assert generator_matrix(Twist(1, 2), st) == twist_matrix(1, 2)
    assert generator_matrix(Shift(1), st) == -I4
    with pytest.raises(TypeError):
        generator_matrix("twist", st)


def test_mat2_inverse():
    A = Mat2(3, 2, 4, 3)
    assert A @ A.inverse() == I2
    with pytest.raises(ValueError):
        Mat2(2, 0, 0, 2).inverse()
