import math

import numpy as np
import pytest

from besovlab.grid import Extension, GridFunction, SpaceParams, lp_norm, sample
from besovlab.multipliers import (
    CoefSequence,
    PsiProfileError,
    make_psi,
    msq_norm_lower,
    msq_norm_lower_detailed,
    multiplier_norm_lower,
    multiplier_norm_lower_detailed,
    translate_range,
    unif_norm,
    unif_profile,
)

SP = SpaceParams(0.5, 2.0, 2.0, 1)


def psi_grid_function(psi):
    base = sample("zero")
    return GridFunction(
        psi.func(base.x), base.spacing, base.origin, Extension.ZERO, psi.func
    )


def test_make_psi_mollifier_residual():
    psi = make_psi("mollifier")
    assert psi.residual < 1e-12


def test_make_psi_tent_exact():
    psi = make_psi("triangle")
    assert psi.residual == 0.0
    assert psi.func(np.array([0.0]))[0] == 1.0


def test_make_psi_gap_error():
    with pytest.raises(PsiProfileError):
        make_psi(lambda x: np.maximum(0.0, 0.4 - np.abs(np.asarray(x))))


def test_psi_support():
    psi = make_psi("mollifier")
    xs = np.array([-1.0, 1.0, 1.5, -3.0])
    assert np.all(psi.func(xs) == 0.0)


def test_unif_zero():
    psi = make_psi("mollifier")
    assert unif_norm(sample("zero"), SP, psi) == 0.0


def test_unif_constant_translation_invariant():
    psi = make_psi("mollifier")
    zs, vals = unif_profile(sample("const"), SP, psi)
    assert vals.max() - vals.min() <= 1e-10 * vals.max()


def test_unif_linear_grows_to_window_edge():
    psi = make_psi("mollifier")
    zs, vals = unif_profile(sample("linear"), SP, psi)
    assert abs(zs[np.argmax(vals)]) == zs.max()
    # exhaustive per-z sweep is the oracle for the sup
    assert unif_norm(sample("linear"), SP, psi) == vals.max()


def test_translate_range_margin():
    f = sample("zero")
    assert translate_range(f, 0)[0] == -15 and translate_range(f, 0)[-1] == 15
    assert translate_range(f, 2)[0] == -13 and translate_range(f, 2)[-1] == 13


def test_msq_dominates_unif_exactly():
    psi = make_psi("mollifier")
    for f in (sample("const"), sample("sine"), psi_grid_function(psi)):
        assert msq_norm_lower(f, SP, psi) >= unif_norm(f, SP, psi)


def test_msq_zero_and_p_inf():
    psi = make_psi("mollifier")
    assert msq_norm_lower(sample("zero"), SP, psi) == 0.0
    with pytest.raises(ValueError):
        msq_norm_lower(sample("const"), SpaceParams(0.5, math.inf, 2.0, 1), psi)


def test_msq_detail_records_seed():
    psi = make_psi("mollifier")
    r = msq_norm_lower_detailed(sample("const"), SP, psi, n_random=8, seed=99)
    assert r.seed == 99
    assert r.argmax


def test_disjoint_translate_lp_identity():
    # translates with support gap >= 3m carry the l^p sum exactly
    psi = make_psi("mollifier")
    base = sample("zero")
    zs = [-10.0, -5.0, 0.0, 5.0, 10.0]
    c = np.array([0.3, -1.2, 0.77, 2.0, -0.41])
    total = np.zeros_like(base.x)
    for ci, zi in zip(c, zs):
        total += ci * psi.func(base.x - zi)
    g = GridFunction(total, base.spacing, base.origin, Extension.ZERO)
    p = 2.0
    lhs = lp_norm(g, p) ** p
    rhs = float(np.sum(np.abs(c) ** p)) * lp_norm(psi_grid_function(psi), p) ** p
    assert abs(lhs - rhs) <= 1e-10 * rhs


def test_multiplier_lower_unit_and_scalar():
    psi = make_psi("mollifier")
    testers = [("g", sample("gaussian")), ("psi", psi_grid_function(psi))]
    one = sample("const")
    assert multiplier_norm_lower(one, SP, testers) == 1.0
    c = sample("const", value=-2.5)
    assert multiplier_norm_lower(c, SP, testers) == pytest.approx(2.5, rel=1e-12)


def test_multiplier_lower_zero_tester_warns():
    testers = [("zero", sample("zero")), ("g", sample("gaussian"))]
    with pytest.warns(UserWarning):
        v = multiplier_norm_lower(sample("const"), SP, testers)
    assert v == 1.0
    with pytest.raises(ValueError):
        multiplier_norm_lower(sample("const"), SP, [("zero", sample("zero"))])


def test_multiplier_lower_detail():
    testers = [("g", sample("gaussian"))]
    r = multiplier_norm_lower_detailed(sample("sine"), SP, testers)
    assert r.argmax == "g" and r.value > 0.0


def test_coef_sequence_normalization():
    c = CoefSequence.normalized([3.0, 4.0], 2.0, "x")
    assert np.isclose(np.sum(c.entries**2), 1.0)
    with pytest.raises(ValueError):
        CoefSequence.normalized([0.0, 0.0], 2.0, "zero")


def test_window_growth_dichotomy():
    # p < inf: the norm of a widening plateau grows like width^(1/p) while
    # its multiplier lower bound stays near 1 (the p = inf contrast)
    from besovlab.gadgets import linear_cutoff, unit_bump
    from besovlab.norms import besov_norm_diff

    psi = make_psi("mollifier")
    testers = [("psi0", psi_grid_function(psi))]
    from besovlab.grid import smoothstep

    def plateau(width):
        def fn(x):
            x = np.asarray(x, dtype=np.float64)
            return smoothstep((x + width + 1.0)) * smoothstep((width + 1.0 - x))

        base = sample("zero")
        return GridFunction(fn(base.x), base.spacing, base.origin, Extension.ZERO, fn)

    norms = [besov_norm_diff(plateau(w), SP) for w in (2.0, 14.0)]
    mults = [multiplier_norm_lower(plateau(w), SP, testers) for w in (2.0, 14.0)]
    assert norms[1] / norms[0] > 1.5
    assert abs(mults[1] - mults[0]) < 0.05 * mults[0]
