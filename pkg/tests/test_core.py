"""Core primitives: SVD, Schatten norms, embedding norms, hulls, interpolation."""
import math
from fractions import Fraction

import numpy as np
import pytest

from schatten_widths.core import (
    EmbeddingSpec,
    embedding_norm,
    hull_decompose,
    jacobi_svd,
    k_functional_upper,
    littlewood_check,
    pi2_embedding,
    schatten_norm,
    singular_values,
)
from schatten_widths.exponents import as_exponent

EXPONENTS = ("1/2", "3/4", "1", "4/3", "2", "4", "inf")


def _reference_norm(a: np.ndarray, p) -> float:
    """Schatten norm straight from LAPACK singular values."""
    sig = np.linalg.svd(a, compute_uv=False)
    pe = as_exponent(p)
    if pe == math.inf:
        return float(sig[0])
    pf = float(pe)
    return float((sig**pf).sum() ** (1.0 / pf))


# ---------------------------------------------------------------------------
# jacobi_svd and singular values
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_jacobi_svd_reconstructs_and_is_orthogonal(N):
    rng = np.random.default_rng(7 * N)
    for _ in range(20):
        a = rng.standard_normal((N, N))
        u, sigma, v = jacobi_svd(a)
        assert np.allclose(u @ np.diag(sigma) @ v.T, a, atol=1e-10)
        assert np.allclose(u.T @ u, np.eye(N), atol=1e-10)
        assert np.allclose(v.T @ v, np.eye(N), atol=1e-10)
        assert np.all(np.diff(sigma) <= 1e-12)
        assert np.all(sigma >= 0)


def test_jacobi_svd_handles_rank_deficiency():
    rng = np.random.default_rng(11)
    a = np.outer(rng.standard_normal(4), rng.standard_normal(4))
    _, sigma, _ = jacobi_svd(a)
    assert sigma[0] > 0
    assert np.all(sigma[1:] <= 1e-10 * sigma[0])


def test_singular_values_match_lapack():
    rng = np.random.default_rng(3)
    for N in (2, 3, 4):
        a = rng.standard_normal((N, N))
        assert np.allclose(singular_values(a), np.linalg.svd(a, compute_uv=False), atol=1e-10)


# ---------------------------------------------------------------------------
# schatten_norm
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", EXPONENTS)
@pytest.mark.parametrize("N", [2, 3, 4])
def test_schatten_norm_matches_reference(p, N):
    rng = np.random.default_rng(19 + N)
    for _ in range(25):
        a = rng.standard_normal((N, N))
        assert schatten_norm(a, p) == pytest.approx(_reference_norm(a, p), rel=1e-10)


@pytest.mark.parametrize("p", EXPONENTS)
def test_schatten_norm_homogeneous_and_zero(p):
    rng = np.random.default_rng(5)
    a = rng.standard_normal((3, 3))
    assert schatten_norm(3.5 * a, p) == pytest.approx(3.5 * schatten_norm(a, p), rel=1e-12)
    assert schatten_norm(np.zeros((3, 3)), p) == 0.0


def test_schatten_norm_2x2_fast_path_agrees_with_lapack():
    rng = np.random.default_rng(23)
    for _ in range(200):
        a = rng.standard_normal((2, 2))
        for p in EXPONENTS:
            assert schatten_norm(a, p) == pytest.approx(_reference_norm(a, p), rel=1e-11)


def test_schatten_norm_orthogonal_invariance():
    rng = np.random.default_rng(29)
    a = rng.standard_normal((4, 4))
    q1, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    q2, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    for p in ("1/2", "1", "3", "inf"):
        assert schatten_norm(q1 @ a @ q2, p) == pytest.approx(schatten_norm(a, p), rel=1e-10)


# ---------------------------------------------------------------------------
# embedding norm and 2-summing norm
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "p,q,N,expected",
    [
        ("1", "inf", 4, 1.0),  # decreasing exponent: norm 1 at rank-one
        ("inf", "1", 4, 4.0),  # increasing: N^(1/q-1/p) = 4
        ("1/2", "2", 2, 1.0),
        ("2", "1/2", 2, 2.0 ** (2.0 - 0.5)),
        ("4/3", "4", 3, 1.0),
        ("4", "4/3", 3, 3.0 ** (3.0 / 4.0 - 1.0 / 4.0)),
        ("2", "2", 7, 1.0),
    ],
)
def test_embedding_norm_closed_form(p, q, N, expected):
    assert embedding_norm(p, q, N) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("p", EXPONENTS)
@pytest.mark.parametrize("q", EXPONENTS)
def test_embedding_norm_dominates_sampled_ratios(p, q):
    N = 3
    bound = embedding_norm(p, q, N)
    rng = np.random.default_rng(41)
    for _ in range(50):
        a = rng.standard_normal((N, N))
        ratio = schatten_norm(a, q) / schatten_norm(a, p)
        assert ratio <= bound * (1 + 1e-10)


@pytest.mark.parametrize(
    "p,q,N,expected",
    [
        ("1", "inf", 4, 2.0),  # sqrt(N)
        ("2", "2", 5, 5.0),  # identity on a Hilbert space of dimension N^2
        ("inf", "2", 3, 3.0),
        ("inf", "1", 2, 2.0**1.5),
    ],
)
def test_pi2_embedding_pinned_values(p, q, N, expected):
    assert pi2_embedding(p, q, N) == pytest.approx(expected, rel=1e-12)


def test_pi2_dominates_operator_norm():
    for p, q in (("1", "2"), ("2", "inf"), ("inf", "4/3")):
        for N in (2, 3):
            assert pi2_embedding(p, q, N) >= embedding_norm(p, q, N) * (1 - 1e-12)


# ---------------------------------------------------------------------------
# K-functional upper bound
# ---------------------------------------------------------------------------


def test_k_functional_upper_basic_properties():
    rng = np.random.default_rng(43)
    a = rng.standard_normal((3, 3))
    for p, q in (("1", "2"), ("1/2", "inf"), ("2", "4/3")):
        np_a = schatten_norm(a, p)
        nq_a = schatten_norm(a, q)
        last = 0.0
        for t in (0.0, 0.25, 1.0, 3.0):
            val = k_functional_upper(a, p, q, t)
            assert val <= min(np_a, t * nq_a) * (1 + 1e-10)
            assert val >= last - 1e-12  # non-decreasing in t
            last = val
    assert k_functional_upper(a, "1", "2", 0.0) == 0.0


def test_k_functional_upper_rejects_bad_t():
    a = np.eye(2)
    with pytest.raises(ValueError):
        k_functional_upper(a, "1", "2", -0.5)
    with pytest.raises(ValueError):
        k_functional_upper(a, "1", "2", math.inf)


# ---------------------------------------------------------------------------
# multiplicative interpolation
# ---------------------------------------------------------------------------


def test_littlewood_endpoints_are_equalities():
    rng = np.random.default_rng(47)
    a = rng.standard_normal((3, 3))
    r0 = littlewood_check(a, "4", "1", 0.0)
    assert r0.ok and r0.interpolated_norm == pytest.approx(r0.endpoint_q_norm, rel=1e-12)
    r1 = littlewood_check(a, "4", "1", 1.0)
    assert r1.ok and r1.interpolated_norm == pytest.approx(r1.endpoint_p_norm, rel=1e-12)


def test_littlewood_holds_on_random_matrices():
    rng = np.random.default_rng(53)
    for _ in range(300):
        N = int(rng.integers(2, 5))
        a = rng.standard_normal((N, N))
        ps, qs = rng.choice(EXPONENTS, size=2)
        assert littlewood_check(a, str(ps), str(qs), float(rng.uniform())).ok


def test_littlewood_rejects_bad_theta():
    with pytest.raises(ValueError):
        littlewood_check(np.eye(2), "1", "2", 1.5)


# ---------------------------------------------------------------------------
# hull decomposition
# ---------------------------------------------------------------------------


def test_hull_decompose_reconstructs_with_unit_summands():
    rng = np.random.default_rng(59)
    for _ in range(50):
        N = int(rng.integers(2, 6))
        a = rng.standard_normal((N, N))
        decomp = hull_decompose(a)
        assert np.allclose(decomp.reconstruct(), a, atol=1e-10 * np.linalg.norm(a))
        weights = decomp.weights
        assert np.all(weights > 0)
        assert np.all(np.diff(weights) <= 1e-12 * weights[0])
        for term in decomp.terms:
            assert np.linalg.norm(term.summand) == pytest.approx(1.0, abs=1e-12)
        # weights are exactly the singular values, so their sum is the trace norm
        assert weights.sum() == pytest.approx(schatten_norm(a, 1), rel=1e-10)


def test_hull_decompose_drops_zero_directions():
    rng = np.random.default_rng(61)
    a = np.outer(rng.standard_normal(4), rng.standard_normal(4))
    decomp = hull_decompose(a)
    assert len(decomp.terms) == 1
    assert hull_decompose(np.zeros((3, 3))).terms == ()


# ---------------------------------------------------------------------------
# EmbeddingSpec
# ---------------------------------------------------------------------------


def test_embedding_spec_validates_and_describes():
    spec = EmbeddingSpec("4/3", "inf", 3, n=2)
    assert spec.dimension == 9
    assert spec.require_index() == 2
    assert spec.p == Fraction(4, 3)
    assert "S_4/3 -> S_inf" in spec.describe()
    with pytest.raises(ValueError):
        EmbeddingSpec("1", "2", 0)
    with pytest.raises(ValueError):
        EmbeddingSpec("1", "2", 2, n=5)
    with pytest.raises(ValueError):
        EmbeddingSpec("1", "2", 2, n=0)
    with pytest.raises(ValueError):
        EmbeddingSpec("0", "2", 2)
    assert EmbeddingSpec("1", "2", 2).n is None
    with pytest.raises(ValueError):
        EmbeddingSpec("1", "2", 2).require_index()
