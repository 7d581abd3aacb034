"""Numerical s-number estimators: pins, reductions, determinism."""
import numpy as np
import pytest

from schatten_widths.core import EmbeddingSpec, embedding_norm
from schatten_widths.estimators import (
    estimate_approx,
    estimate_gelfand,
    estimate_kolmogorov,
    hilbert_exact,
    operator_norm_estimate,
)
from schatten_widths.operators import OperatorOnMatrices


# ---------------------------------------------------------------------------
# operator norm
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p", ["1/2", "1", "2", "inf"])
@pytest.mark.parametrize("q", ["1", "2", "inf"])
def test_norm_estimate_matches_the_closed_form(p, q):
    spec = EmbeddingSpec(p, q, 3)
    est = operator_norm_estimate(spec)
    assert est.value == pytest.approx(embedding_norm(p, q, 3), rel=1e-8)
    assert est.snumber_kind == "operator-norm"
    assert est.method == "pg-search"


def test_norm_estimate_accepts_a_custom_operator():
    # T X = X[0,0] * E00 has norm 1 from the Frobenius class to any target
    N = 2
    m = np.zeros((4, 4))
    m[0, 0] = 1.0
    op = OperatorOnMatrices(m, N)
    est = operator_norm_estimate(EmbeddingSpec("2", "2", N), op)
    assert est.value == pytest.approx(1.0, rel=1e-9)
    zero = operator_norm_estimate(EmbeddingSpec("2", "2", N), OperatorOnMatrices(np.zeros((4, 4)), N))
    assert zero.value == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# pinned width values
# ---------------------------------------------------------------------------


def test_kolmogorov_pinned_value_trace_to_frobenius():
    # third width of S_1 -> S_2 at N = 2 equals 1/sqrt(2)
    est = estimate_kolmogorov(EmbeddingSpec("1", "2", 2, n=3), seed=0)
    assert est.value == pytest.approx(2.0**-0.5, rel=1e-6)
    assert est.method == "pg-search"
    assert est.converged
    assert "winner" in est.detail


def test_approx_pinned_value_frobenius_to_operator():
    # last approximation number of S_2 -> S_inf at N = 2 equals 1/sqrt(2)
    est = estimate_approx(EmbeddingSpec("2", "inf", 2, n=4), seed=0)
    assert est.value == pytest.approx(2.0**-0.5, rel=1e-6)


def test_identity_widths_are_one_for_small_indices():
    # on the diagonal p = q every width with n <= N is exactly 1
    est = estimate_kolmogorov(EmbeddingSpec("1", "1", 2, n=2), seed=1)
    assert est.value == pytest.approx(1.0, rel=2e-2)


# ---------------------------------------------------------------------------
# exact reductions
# ---------------------------------------------------------------------------


def test_hilbert_case_is_exact():
    est = estimate_approx(EmbeddingSpec("2", "2", 3, n=4), seed=0)
    assert est.value == 1.0
    assert est.method == "hilbert-exact"
    assert est.converged
    values = hilbert_exact(EmbeddingSpec("2", "2", 3, n=1))
    assert np.array_equal(values, np.ones(9))


def test_gelfand_quasi_diagonal_is_exactly_one():
    est = estimate_gelfand(EmbeddingSpec("1/2", "1/2", 2, n=2), seed=0)
    assert est.value == 1.0
    assert est.method == "identity-exact"
    assert est.converged


def test_gelfand_banach_goes_through_the_dual():
    est = estimate_gelfand(EmbeddingSpec("1", "inf", 2, n=2), seed=0)
    assert est.method == "dual-reduction"
    assert est.detail["dual"] == ("1", "inf")  # self-dual pair, swapped
    est = estimate_gelfand(EmbeddingSpec("4/3", "4", 2, n=2), seed=0)
    assert est.detail["dual"] == ("4/3", "4")


def test_approx_index_one_is_the_norm():
    est = estimate_approx(EmbeddingSpec("1", "inf", 2, n=1), seed=0)
    assert est.detail["reduction"] == "index-1-is-norm"
    assert est.value == pytest.approx(1.0, rel=1e-8)


def test_approx_frobenius_reductions_are_labelled():
    est = estimate_approx(EmbeddingSpec("2", "inf", 2, n=3), seed=0)
    assert est.detail["reduction"] == "hilbert-domain"
    est = estimate_approx(EmbeddingSpec("1", "2", 2, n=3), seed=0)
    assert est.detail["reduction"] == "hilbert-codomain"


# ---------------------------------------------------------------------------
# contract details
# ---------------------------------------------------------------------------


def test_estimators_require_an_index():
    with pytest.raises(ValueError):
        estimate_kolmogorov(EmbeddingSpec("1", "2", 2), seed=0)
    with pytest.raises(ValueError):
        estimate_approx(EmbeddingSpec("1", "2", 2), seed=0)
    with pytest.raises(ValueError):
        estimate_gelfand(EmbeddingSpec("1", "2", 2), seed=0)


def test_quasi_codomain_off_diagonal_is_rejected():
    with pytest.raises(NotImplementedError):
        estimate_kolmogorov(EmbeddingSpec("1", "1/2", 2, n=2), seed=0)
    with pytest.raises(NotImplementedError):
        estimate_approx(EmbeddingSpec("2", "3/4", 2, n=2), seed=0)


def test_same_seed_reproduces_the_estimate():
    spec = EmbeddingSpec("1", "inf", 2, n=2)
    a = estimate_kolmogorov(spec, seed=5)
    b = estimate_kolmogorov(spec, seed=5)
    assert a.value == b.value
    assert a.detail == b.detail
    assert a.seed == 5


def test_estimate_carries_its_provenance():
    spec = EmbeddingSpec("1", "2", 2, n=2)
    est = estimate_kolmogorov(spec, restarts=4, seed=9)
    assert est.spec == spec
    assert est.snumber_kind == "kolmogorov"
    assert est.restarts == 4
    assert est.seed == 9
    assert isinstance(est.detail, dict)
