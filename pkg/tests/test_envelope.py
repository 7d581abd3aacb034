"""Envelope profiles: regimes, constants, critical exponents, recovery scaling."""
import math
from fractions import Fraction

import pytest

from schatten_widths.core import EmbeddingSpec
from schatten_widths.envelope import (
    DEFAULT_CONSTANTS,
    ConstantsRegistry,
    EnvelopeValue,
    approx_envelope,
    conjectured_envelope,
    crit_exponents,
    envelope_profile,
    gelfand_envelope,
    kolmogorov_envelope,
    recovery_envelope,
)
from schatten_widths.exponents import dual_exponent

EXPONENTS = ("1/2", "3/4", "1", "4/3", "2", "4", "inf")
KINDS = ("approximation", "gelfand", "kolmogorov")


# ---------------------------------------------------------------------------
# a fully pinned profile: trace-class into operator-norm, N = 16
# ---------------------------------------------------------------------------


def test_trace_to_operator_profile_boundaries():
    prof = envelope_profile("gelfand", "1", "inf", 16)
    assert prof.boundaries() == [128.0, 249.0, 256.0]


@pytest.mark.parametrize(
    "n,expected,regime",
    [
        (1, 1.0, "square/small-index"),
        (16, 1.0, "square/small-index"),
        (128, 0.35355339059327373, "square/small-index"),
        (129, 0.1767766952966369, "square/intermediate"),
        (249, 0.0625, "square/intermediate"),
        (250, 0.0625, "square/large-index"),
        (256, 0.0625, "square/large-index"),
    ],
)
def test_trace_to_operator_profile_pinned_values(n, expected, regime):
    val = envelope_profile("gelfand", "1", "inf", 16).value(n)
    assert val.value_lower == pytest.approx(expected, rel=1e-12)
    assert val.value_upper == pytest.approx(expected, rel=1e-12)
    assert val.regime.startswith(regime)
    assert val.sharpness == "exact-asymptotic"


def test_smaller_constant_widens_the_small_index_regime():
    consts = ConstantsRegistry(c_universal=Fraction(1, 4))
    prof = envelope_profile("gelfand", "1", "inf", 16, consts)
    assert prof.boundaries() == [192.0, 253.0, 256.0]


def test_monotone_lift_is_recorded_in_notes():
    # the raw intermediate formula dips below the final-index value near the
    # regime boundary; the lift flattens it and leaves a trace in the notes
    val = envelope_profile("gelfand", "1", "inf", 16).value(248)
    assert val.value_lower == pytest.approx(0.0625)
    assert "monotone-lift" in val.notes


# ---------------------------------------------------------------------------
# constants registry
# ---------------------------------------------------------------------------


def test_constants_registry_defaults_and_overrides():
    assert DEFAULT_CONSTANTS.universal() == Fraction(1, 2)
    reg = ConstantsRegistry(
        c_universal=Fraction(1, 3),
        pair_overrides=((("2", "inf"), Fraction(1, 5)),),
        single_overrides=(("inf", Fraction(1, 7)),),
    )
    from schatten_widths.exponents import as_exponent

    assert reg.pair(as_exponent("2"), as_exponent("inf")) == Fraction(1, 5)
    assert reg.pair(as_exponent("1"), as_exponent("2")) == Fraction(1, 3)
    assert reg.single(as_exponent("inf")) == Fraction(1, 7)
    assert reg.single(as_exponent("2")) == Fraction(1, 3)
    assert "c_universal=1/3" in reg.describe()


def test_constants_registry_from_json_dict_round_trip():
    reg = ConstantsRegistry.from_json_dict(
        {"c_universal": "1/4", "pair": [["2", "inf", "1/8"]], "single": [["inf", "1/16"]]}
    )
    from schatten_widths.exponents import as_exponent

    assert reg.universal() == Fraction(1, 4)
    assert reg.pair(as_exponent("2"), as_exponent("inf")) == Fraction(1, 8)
    assert reg.single(as_exponent("inf")) == Fraction(1, 16)


@pytest.mark.parametrize("bad", [0, 1, "3/2", -1])
def test_constants_must_lie_strictly_inside_unit_interval(bad):
    with pytest.raises(ValueError):
        ConstantsRegistry(c_universal=bad)


# ---------------------------------------------------------------------------
# critical exponents
# ---------------------------------------------------------------------------


def test_crit_exponents_on_a_dual_pair_coincide():
    ce = crit_exponents("4/3", "4")
    assert ce.alpha == Fraction(3, 2)
    assert ce.beta == Fraction(3, 2)
    assert ce.coincide


def test_crit_exponents_extremes_and_ordering():
    ce = crit_exponents("1", "inf")
    assert (ce.alpha, ce.beta) == (Fraction(1), Fraction(1))
    ce = crit_exponents("2", "2")
    assert (ce.alpha, ce.beta) == (Fraction(2), Fraction(2))
    ce = crit_exponents("1", "2")
    assert ce.alpha == Fraction(2) and ce.beta == Fraction(1)
    assert not ce.coincide


@pytest.mark.parametrize("p,q", [("1/2", "2"), ("4", "inf"), ("1", "3/2")])
def test_crit_exponents_reject_out_of_domain(p, q):
    with pytest.raises(ValueError):
        crit_exponents(p, q)


# ---------------------------------------------------------------------------
# EnvelopeValue invariants
# ---------------------------------------------------------------------------


def test_envelope_value_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        EnvelopeValue("gelfand", 1.0, 0.5, "r", "two-sided-gap")


def test_envelope_value_exact_requires_collapse():
    with pytest.raises(ValueError):
        EnvelopeValue("gelfand", 0.5, 1.0, "r", "exact-asymptotic")
    with pytest.raises(ValueError):
        EnvelopeValue("not-a-kind", 1.0, 1.0, "r", "exact-asymptotic")


# ---------------------------------------------------------------------------
# structural invariants on a light grid
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p,q", [("1/2", "1"), ("1", "inf"), ("4/3", "4"), ("2", "2"), ("4", "4/3")])
def test_profiles_are_monotone_and_ordered(kind, p, q):
    N = 8
    prof = envelope_profile(kind, p, q, N)
    values = prof.values()
    assert len(values) == N * N
    prev_lo = math.inf
    prev_up = math.inf
    for val in values:
        assert val.value_lower <= val.value_upper * (1 + 1e-12)
        assert val.value_lower <= prev_lo + 1e-12
        assert val.value_upper <= prev_up + 1e-12
        prev_lo, prev_up = val.value_lower, val.value_upper


@pytest.mark.parametrize("p,q", [("1", "inf"), ("4/3", "4"), ("2", "2"), ("4", "2")])
def test_gelfand_kolmogorov_duality_on_banach_pairs(p, q):
    N = 8
    gel = envelope_profile("gelfand", p, q, N)
    kol = envelope_profile("kolmogorov", dual_exponent(q), dual_exponent(p), N)
    for n in range(1, N * N + 1):
        g, k = gel.value(n), kol.value(n)
        assert g.value_lower == pytest.approx(k.value_lower, abs=1e-15)
        assert g.value_upper == pytest.approx(k.value_upper, abs=1e-15)


def test_scalar_case_is_trivial():
    prof = envelope_profile("approximation", "1", "2", 1)
    val = prof.value(1)
    assert (val.value_lower, val.value_upper) == (1.0, 1.0)


def test_envelope_profile_validates_inputs():
    with pytest.raises(ValueError):
        envelope_profile("bernstein", "1", "2", 4)
    with pytest.raises(ValueError):
        envelope_profile("gelfand", "1", "2", 0)
    with pytest.raises(ValueError):
        envelope_profile("gelfand", "1", "2", True)
    prof = envelope_profile("gelfand", "1", "2", 4)
    with pytest.raises(ValueError):
        prof.value(0)
    with pytest.raises(ValueError):
        prof.value(17)


def test_spec_level_wrappers_agree_with_profiles():
    spec = EmbeddingSpec("1", "inf", 4, n=5)
    prof = envelope_profile("gelfand", "1", "inf", 4)
    assert gelfand_envelope(spec) == prof.value(5)
    assert approx_envelope(spec).snumber_kind == "approximation"
    assert kolmogorov_envelope(spec).snumber_kind == "kolmogorov"
    with pytest.raises(ValueError):
        gelfand_envelope(EmbeddingSpec("1", "inf", 4))


# ---------------------------------------------------------------------------
# recovery envelope
# ---------------------------------------------------------------------------


def test_recovery_envelope_values():
    assert recovery_envelope("1", "2", 8, 0).value_lower == 1.0
    assert recovery_envelope("1", "2", 8, 4).value_lower == 1.0  # m <= N: flat
    assert recovery_envelope("1", "2", 8, 32).value_lower == pytest.approx(0.5)
    assert recovery_envelope("1", "2", 8, 64).value_lower == pytest.approx(2.0**-1.5)
    val = recovery_envelope("1", "2", 8, 32)
    assert val.value_lower == val.value_upper
    assert val.sharpness == "exact-asymptotic"
    assert "decay" in val.regime


def test_recovery_envelope_validates_domain():
    with pytest.raises(ValueError):
        recovery_envelope("2", "2", 8, 4)  # p must be <= 1
    with pytest.raises(ValueError):
        recovery_envelope("1", "4", 8, 4)  # q must be <= 2
    with pytest.raises(ValueError):
        recovery_envelope("1", "1", 8, 4)  # q must exceed p
    with pytest.raises(ValueError):
        recovery_envelope("1", "2", 8, -1)
    with pytest.raises(ValueError):
        recovery_envelope("1", "2", 8, 65)
    with pytest.raises(ValueError):
        recovery_envelope("1", "2", 0, 0)


# ---------------------------------------------------------------------------
# conjectured extensions
# ---------------------------------------------------------------------------


def test_conjectured_pieces_are_labelled_and_pinned():
    v1 = conjectured_envelope(EmbeddingSpec("2", "2", 4, n=9), 1)
    assert v1.sharpness == "conjectured"
    assert v1.value_lower == 0.0
    assert v1.value_upper == pytest.approx(2.0**-0.5)

    v2 = conjectured_envelope(EmbeddingSpec("2", "4", 4, n=10), 2)
    assert v2.snumber_kind == "gelfand"
    assert v2.value_upper == pytest.approx(0.6614378277661477)

    v3 = conjectured_envelope(EmbeddingSpec("1", "inf", 4, n=4), 3)
    assert (v3.value_lower, v3.value_upper) == (1.0, 1.0)

    v4 = conjectured_envelope(EmbeddingSpec("1", "1/2", 4, n=7), 4)
    assert v4.snumber_kind == "kolmogorov"
    assert v4.value_lower == pytest.approx(2.5)
    assert v4.value_upper == pytest.approx(4.0)


@pytest.mark.parametrize(
    "which,spec",
    [
        (1, EmbeddingSpec("1", "2", 4, n=8)),  # needs p > 1
        (1, EmbeddingSpec("2", "2", 4, n=3)),  # outside the window
        (2, EmbeddingSpec("1", "4", 4, n=10)),
        (3, EmbeddingSpec("2", "inf", 4, n=4)),
        (4, EmbeddingSpec("1", "2", 4, n=7)),
        (5, EmbeddingSpec("1", "1/2", 4, n=7)),
    ],
)
def test_conjectured_envelope_rejects_out_of_domain(which, spec):
    with pytest.raises(ValueError):
        conjectured_envelope(spec, which)
