import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symsep import numerics as nx
from symsep.exceptions import NonFinite, NonHermitian, NonSquare, ShapeMismatch

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


def _random_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


@pytest.mark.parametrize(
    "h, expected",
    [
        (np.eye(2), [1, 1]),
        (np.diag([-1.0, 3.0]), [-1, 3]),
        # lambda^2 - 1 = 0
        (SX, [-1, 1]),
    ],
)
def test_hermitian_eig_examples(h, expected):
    res = nx.hermitian_eig(h)
    np.testing.assert_allclose(res.eigenvalues, expected, atol=1e-14)


def test_hermitian_eig_rejects_bad_input():
    with pytest.raises(NonSquare):
        nx.hermitian_eig(np.ones((2, 3)))
    with pytest.raises(NonHermitian):
        nx.hermitian_eig(np.array([[0, 1], [0, 0]]))
    with pytest.raises(NonFinite):
        nx.hermitian_eig(np.array([[np.nan, 0], [0, 1]]))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_eig_reconstruction_and_residuals(n, seed):
    h = _random_hermitian(n, np.random.default_rng(seed))
    w, v = nx.hermitian_eig(h)
    scale = np.linalg.norm(h)
    assert np.all(np.diff(w) >= 0)
    assert np.linalg.norm(v @ np.diag(w) @ v.conj().T - h) <= 1e-9 * scale
    for i in range(n):
        assert np.linalg.norm(h @ v[:, i] - w[i] * v[:, i]) <= 1e-10 * scale


@pytest.mark.parametrize("d", [1, 2, 5])
def test_singular_values_identity(d):
    np.testing.assert_allclose(nx.singular_values(np.eye(d)), np.ones(d))


def test_singular_values_diag():
    np.testing.assert_allclose(nx.singular_values(np.diag([2.0, -3.0])), [3, 2])


def test_singular_values_realigned_maximally_mixed_qutrits():
    # Realigned 1/9 identity is (1/9)|vec 1><vec 1|, one singular value 3/9.
    d = 3
    r = np.zeros((9, 9))
    for k in range(d):
        for m in range(d):
            r[k * d + k, m * d + m] = 1 / 9
    sv = nx.singular_values(r)
    assert sv[0] == pytest.approx(1 / 3, abs=1e-14)
    assert np.sum(sv) == pytest.approx(1 / 3, abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(rows=st.integers(1, 8), cols=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_singular_values_frobenius_and_triangle(rows, cols, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    sv = nx.singular_values(m)
    assert np.all(sv >= 0) and np.all(np.diff(sv) <= 0)
    assert np.sum(sv**2) == pytest.approx(np.linalg.norm(m) ** 2, rel=1e-9)
    if rows == cols:
        assert nx.trace_norm(m) >= abs(np.trace(m)) - 1e-9


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
def test_singular_values_unitary_invariance(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    u, v = nx.random_unitary(n, rng), nx.random_unitary(n, rng)
    np.testing.assert_allclose(nx.singular_values(u @ m @ v), nx.singular_values(m), atol=1e-9)


def test_trace_norm_examples(rho33):
    assert nx.trace_norm(np.zeros((3, 3))) == 0
    assert nx.trace_norm(rho33.rho) == pytest.approx(1, abs=1e-12)


def test_trace_norm_realigned_triplet():
    from oracles import realign_loops

    psi = np.array([0, 1, 1, 0]) / np.sqrt(2)
    r = realign_loops(np.outer(psi, psi).astype(complex), 2)
    assert nx.trace_norm(r) == pytest.approx(2, abs=1e-12)


def test_kron_examples():
    np.testing.assert_array_equal(nx.kron(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(nx.kron(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))
    # sigma_x (x) sigma_x is the anti-diagonal on 4 dims.
    np.testing.assert_array_equal(nx.kron(SX, SX), np.fliplr(np.eye(4)))


def test_kron_index_formula(rng):
    a = rng.standard_normal((2, 3))
    b = rng.standard_normal((4, 2))
    k = nx.kron(a, b)
    for i in range(2):
        for j in range(3):
            for m in range(4):
                for n in range(2):
                    assert k[i * 4 + m, j * 2 + n] == a[i, j] * b[m, n]


def test_hs_inner_examples():
    assert nx.hs_inner(np.eye(2) / np.sqrt(2), np.eye(2) / np.sqrt(2)) == pytest.approx(1)
    assert nx.hs_inner(SX, SZ) == 0
    q01 = np.array([[0, 1], [0, 0]])
    assert nx.hs_inner(q01, q01) == 1
    with pytest.raises(ShapeMismatch):
        nx.hs_inner(np.eye(2), np.eye(3))


def test_hs_inner_conjugates_first_argument():
    a = np.array([[1j, 0], [0, 0]])
    assert nx.hs_inner(a, a) == pytest.approx(1)
    assert nx.hs_inner(a, np.eye(2)) == pytest.approx(-1j)
