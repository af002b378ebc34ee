import math

import numpy as np
import pytest

from besovlab.grid import SpaceParams, sample
from besovlab.maps import LineMap, affine_map, identity_map, inverse_map, sin_drift_map, quadratic_map
from besovlab.theorems import (
    CheckReport,
    RangeGateError,
    check_infinity_witness,
    check_nec_U,
    check_nec_lipschitz,
    check_sufficiency_chain,
    classify,
    gate_space,
    opnorm_lower,
    opnorm_lower_detailed,
)

SP = SpaceParams(2.1, 2.0, 2.0, 3)
SP_INF = SpaceParams(1.5, math.inf, 2.0, 2)


def flat_right_tail():
    return LineMap(
        np.array([-16.0, 16.0]), np.array([[-16.0, 1.0, 0, 0]]), 1.0, 0.0, name="flat_tail"
    )


# ---------------------------------------------------------------------------
# gates
# ---------------------------------------------------------------------------

def test_gate_open_case_named():
    with pytest.raises(RangeGateError, match="open case"):
        gate_space(SpaceParams(1.2, 2.0, 2.0, 2))


def test_gate_low_order_and_small_p():
    with pytest.raises(RangeGateError, match="low-order"):
        gate_space(SpaceParams(0.9, 2.0, 2.0, 2))
    with pytest.raises(RangeGateError, match="open"):
        gate_space(SpaceParams(3.0, 1.0, 2.0, 4))


def test_gate_p_inf_and_sobolev():
    gate_space(SpaceParams(1.5, math.inf, 2.0, 2))
    with pytest.raises(RangeGateError):
        gate_space(SpaceParams(0.9, math.inf, 2.0, 1))
    gate_space(SP, kind="sobolev", homeomorphism=True)
    with pytest.raises(RangeGateError, match="homeomorphism"):
        gate_space(SP, kind="sobolev", homeomorphism=False)
    with pytest.raises(RangeGateError):
        gate_space(SpaceParams(2.1, math.inf, 2.0, 3), kind="sobolev", homeomorphism=True)


# ---------------------------------------------------------------------------
# operator-norm lower bound
# ---------------------------------------------------------------------------

def test_opnorm_identity_exact():
    assert opnorm_lower(identity_map(), SP) == 1.0


def test_opnorm_translation_invariance():
    assert opnorm_lower(affine_map(1.0, 1.0), SP) == pytest.approx(1.0, abs=1e-9)


def test_opnorm_dilation_monotone():
    vals = [opnorm_lower(affine_map(lam, 0.0), SP) for lam in (1.0, 1.5, 2.0, 3.0)]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_opnorm_detail_records_argmax():
    val, arg, ratios = opnorm_lower_detailed(affine_map(2.0, 0.0), SP)
    assert val == max(r for r, _ in ratios)
    assert any(arg == n for _, n in ratios)


# ---------------------------------------------------------------------------
# fragments
# ---------------------------------------------------------------------------

def test_nec_U_identity():
    frag = check_nec_U(identity_map(), SP, opnorm=1.0)
    assert frag.passed
    assert frag.values["U"] == pytest.approx(1.0, abs=1e-9)
    assert frag.values["kappa_required"] <= 3.0


def test_nec_U_halving_map():
    frag = check_nec_U(affine_map(0.5, 0.0), SP)
    assert frag.passed
    assert frag.values["U"] == pytest.approx(2.0, abs=1e-9)
    assert frag.values["witness_worst_margin"] >= -1e-9


def test_nec_U_requires_finite_p():
    with pytest.raises(ValueError):
        check_nec_U(identity_map(), SP_INF)


def test_nec_U_flat_tail_fails():
    frag = check_nec_U(flat_right_tail(), SP)
    assert not frag.passed
    assert math.isinf(frag.values["U"])


def test_nec_lipschitz_identity():
    frag = check_nec_lipschitz(identity_map(), SP)
    assert frag.passed and not frag.vacuous
    assert frag.values["implied_lip"] == pytest.approx(1.0, rel=0.5)


def test_nec_lipschitz_dilation_factor_two():
    frag = check_nec_lipschitz(affine_map(3.0, 0.0), SP)
    assert frag.passed
    assert 1.5 <= frag.values["implied_lip"] <= 6.0  # within factor 2 of 3


def test_nec_lipschitz_flat_vacuous():
    flat = LineMap(np.array([-16.0, 16.0]), np.array([[0.0, 0.0, 0, 0]]), 0.0, 0.0)
    frag = check_nec_lipschitz(flat, SP)
    assert frag.passed and frag.vacuous


def test_chain_identity_exact():
    f = sample("gaussian")
    frag = check_sufficiency_chain(identity_map(), f, SP)
    assert frag.passed
    assert frag.values["residual"] == 0.0


def test_chain_zero_function():
    frag = check_sufficiency_chain(identity_map(), sample("zero"), SP)
    assert frag.passed
    assert frag.values["lhs"] == 0.0 and frag.values["rhs"] == 0.0


def test_chain_sin_drift_residual():
    frag = check_sufficiency_chain(sin_drift_map(0.5), sample("gaussian"), SP)
    assert frag.passed
    assert frag.values["residual"] < 1e-4


def test_chain_requires_c1():
    bp = np.array([-16.0, 0.0, 16.0])
    cf = np.array([[-16.0, 1.0, 0, 0], [0.0, 2.0, 0, 0]])
    kinked = LineMap(bp, cf, 1.0, 2.0, c1=False)
    with pytest.raises(ValueError):
        check_sufficiency_chain(kinked, sample("gaussian"), SP)


def test_infinity_witness_identity_degenerate():
    frag = check_infinity_witness(identity_map(), SP_INF)
    assert frag.passed
    assert frag.values["phiprime_seminorm_direct"] == pytest.approx(0.0, abs=1e-9)
    assert frag.values["lip_reconstructed"] == pytest.approx(1.0, rel=1e-6)


def test_infinity_witness_affine():
    frag = check_infinity_witness(affine_map(2.0, 1.0), SP_INF)
    assert frag.passed
    assert frag.values["lip_reconstructed"] == pytest.approx(2.0, rel=0.02)


def test_infinity_witness_requires_p_inf():
    with pytest.raises(ValueError):
        check_infinity_witness(identity_map(), SP)


# ---------------------------------------------------------------------------
# classifier
# ---------------------------------------------------------------------------

def test_classify_identity():
    rep = classify(identity_map(), SP)
    assert rep.verdict == "ConsistentBounded"
    assert rep.computed["opnorm_lower"] == pytest.approx(1.0, abs=1e-9)
    assert all(fr.passed for fr in rep.fragments)


def test_classify_sin_drift_bounded():
    rep = classify(sin_drift_map(0.5), SP)
    assert rep.verdict == "ConsistentBounded"
    assert rep.computed["U"] < math.inf
    assert rep.computed["phiprime_unif"] < math.inf


def test_classify_quadratic_window_limited():
    rep = classify(quadratic_map(), SP)
    assert rep.verdict == "Inconclusive"
    assert rep.computed["window_limited"]
    assert "window-limited" in rep.computed["note"]


def test_classify_flat_tail_unbounded():
    rep = classify(flat_right_tail(), SP)
    assert rep.verdict == "ConsistentUnbounded"
    assert math.isinf(rep.computed["U"])


def test_classify_p_inf_route():
    rep = classify(affine_map(2.0, 0.0), SP_INF)
    assert rep.verdict == "ConsistentBounded"
    assert any(fr.name == "infinity_witness" for fr in rep.fragments)


def test_classify_sobolev_route():
    rep = classify(sin_drift_map(0.5), SP, kind="sobolev", homeomorphism=True)
    assert rep.verdict == "ConsistentBounded"
    with pytest.raises(RangeGateError):
        classify(quadratic_map(), SP, kind="sobolev", homeomorphism=True)


def test_classify_open_range_refused():
    with pytest.raises(RangeGateError, match="open case"):
        classify(identity_map(), SpaceParams(1.2, 2.0, 2.0, 2))


def test_corollary_inverse_symmetry():
    phi = sin_drift_map(0.5)
    r1 = classify(phi, SP)
    r2 = classify(inverse_map(phi), SP)
    assert r1.verdict == r2.verdict == "ConsistentBounded"


def test_report_serialization():
    rep = classify(identity_map(), SP)
    blob = rep.to_json()
    assert blob["verdict"] == "ConsistentBounded"
    assert blob["schema_version"] == 1
    row = rep.to_csv_row()
    assert len(row.split(",")) == len(CheckReport.CSV_HEADER.split(","))
