"""Fundamental interpolants, the interpolation operator, and fallbacks."""

import math

import numpy as np
import pytest

from anisointerp import (
    FourierSeries,
    NonExistent,
    NotInSpace,
    SampleVector,
    alias_fold,
    cardinal_residual,
    check_existence,
    dirichlet_kernel,
    evaluate,
    evaluate_at_nodes,
    fourier_partial_sum,
    fundamental_interpolant,
    gset_freqs,
    interpolation_operator,
    membership_coeffs,
    pattern_generators,
    translate,
    validate_matrix,
)
from anisointerp.intlat import pattern_point

E2 = validate_matrix([[2, 0], [0, 2]])
M21 = validate_matrix([[2, 1], [0, 2]])
FIG1 = validate_matrix([[8, 3], [0, 8]])


def test_evaluate_single_mode():
    f = FourierSeries(np.array([[2, -1]]), np.array([1.5 + 0j]))
    x = np.array([0.3, 1.1])
    assert evaluate(f, x) == pytest.approx(1.5 * np.exp(1j * (2 * 0.3 - 1.1)))


def test_evaluate_at_nodes_matches_direct_evaluation():
    rng = np.random.default_rng(2)
    f = FourierSeries(rng.integers(-12, 13, size=(30, 2)),
                      rng.standard_normal(30) + 1j * rng.standard_normal(30),
                      dedup=True)
    for pm in (E2, M21):
        vals = evaluate_at_nodes(f, pm)
        for j, g in enumerate(pattern_generators(pm)):
            y = np.array([float(c) for c in
                          pattern_point(tuple(int(x) for x in g), pm)])
            direct = evaluate(f, 2.0 * np.pi * y)
            assert abs(vals[j] - direct) < 1e-12


def test_translate_is_exact_character_shift():
    f = FourierSeries(np.array([[1, 0], [0, 3]]),
                      np.array([1.0 + 0j, 2.0 + 0j]))
    g = (1, 0)  # node y = M^{-1} g = (1/2, 0)
    t = translate(f, g, E2)
    # mode (1,0): phase e^{-2 pi i * 1/2} = -1; mode (0,3): phase 1
    assert t.get((1, 0)) == pytest.approx(-1.0)
    assert t.get((0, 3)) == pytest.approx(2.0)


def test_translate_shifts_node_values():
    rng = np.random.default_rng(4)
    f = FourierSeries(rng.integers(-8, 9, size=(20, 2)),
                      rng.standard_normal(20) + 0j, dedup=True)
    g = (1, 1)
    t = translate(f, g, M21)
    y = np.array([float(c) for c in pattern_point(g, M21)])
    x = np.array([0.7, -0.2])
    assert evaluate(t, x) == pytest.approx(
        evaluate(f, x - 2.0 * np.pi * y), abs=1e-12
    )


def test_dirichlet_interpolant_exact_coefficients():
    for pm in (E2, M21, FIG1):
        ifun = fundamental_interpolant(dirichlet_kernel(pm), pm)
        hs = gset_freqs(pm)
        assert len(ifun.series) == pm.m
        for h in hs:
            c = ifun.series.get(tuple(int(x) for x in h))
            assert abs(c - 1.0 / pm.m) <= 1e-12
        assert ifun.series.get((10**6, 10**6)) == 0.0
        assert cardinal_residual(ifun) < 1e-12
        assert not ifun.incorrect_modes


def test_interpolant_folded_coefficients_are_uniform():
    ifun = fundamental_interpolant(dirichlet_kernel(M21), M21)
    folded = alias_fold(ifun.series, M21).values
    assert np.abs(folded - 1.0 / M21.m).max() < 1e-14


def test_interpolation_operator_reproduces_samples():
    rng = np.random.default_rng(8)
    for pm in (E2, FIG1):
        ifun = fundamental_interpolant(dirichlet_kernel(pm), pm)
        vals = rng.standard_normal(pm.m) + 1j * rng.standard_normal(pm.m)
        series = interpolation_operator(SampleVector(vals, pm), ifun)
        assert np.abs(evaluate_at_nodes(series, pm) - vals).max() < 1e-12


def test_interpolation_of_trig_polynomial_is_identity():
    pm = M21
    ifun = fundamental_interpolant(dirichlet_kernel(pm), pm)
    hs = gset_freqs(pm)
    rng = np.random.default_rng(13)
    c = rng.standard_normal(pm.m) + 1j * rng.standard_normal(pm.m)
    f = FourierSeries(hs.copy(), c, window=math.inf)
    samples = SampleVector(evaluate_at_nodes(f, pm), pm)
    lf = interpolation_operator(samples, ifun)
    for h, ch in zip(hs, c):
        assert lf.get(tuple(int(x) for x in h)) == pytest.approx(ch, abs=1e-12)


def test_fourier_partial_sum_restricts_support():
    f = FourierSeries(np.array([[0, 0], [1, 0], [5, -4], [-1, -1]]),
                      np.array([1.0, 2.0, 3.0, 4.0], dtype=complex))
    s = fourier_partial_sum(f, E2)
    kept = {tuple(int(x) for x in k) for k in s.freqs}
    assert kept == {(0, 0), (-1, -1)}  # (1,0) and (5,-4) are non-canonical
    assert s.get((-1, -1)) == pytest.approx(4.0)


def degenerate_kernel(pm):
    """Kernel whose folded coefficient vanishes on exactly one class."""
    hs = gset_freqs(pm)
    freqs = [tuple(int(x) for x in h) for h in hs]
    coeffs = [1.0 + 0j] * len(freqs)
    # cancel class (-1,-1): add the alias (-1,-1) + M^T (1,1) with weight -1
    alias = tuple((np.array([-1, -1]) + pm.mat_np.T @ np.array([1, 1])).tolist())
    freqs.append(alias)
    coeffs.append(-1.0 + 0j)
    return FourierSeries(np.array(freqs), np.array(coeffs), window=math.inf)


def test_check_existence_flags_degenerate_class():
    phi = degenerate_kernel(E2)
    rep = check_existence(phi, E2)
    assert not rep.ok
    assert rep.flagged == [(-1, -1)]


def test_incorrect_interpolation_fallback():
    phi = degenerate_kernel(E2)
    with pytest.raises(NonExistent):
        fundamental_interpolant(phi, E2)
    ifun = fundamental_interpolant(phi, E2, allow_incorrect=True)
    assert ifun.incorrect_modes == [(-1, -1)]
    assert ifun.series.get((-1, -1)) == pytest.approx(1.0 / E2.m)
    # the fallback still yields a cardinal function at the nodes
    assert cardinal_residual(ifun) < 1e-12
    folded = alias_fold(ifun.series, E2).values
    assert np.abs(folded - 1.0 / E2.m).max() < 1e-14
    # a_hat is zeroed on the degenerate class
    hs = [tuple(int(x) for x in h) for h in gset_freqs(E2)]
    assert ifun.a_hat.values[hs.index((-1, -1))] == 0.0


def test_membership_coeffs_accepts_translates():
    phi = dirichlet_kernel(M21)
    t = translate(phi, (1, 0), M21)
    a = membership_coeffs(t, phi, M21)
    # a translate has |a_hat| = 1 on every class
    assert np.allclose(np.abs(a.values), 1.0)


def test_membership_coeffs_rejects_outsiders():
    pm = E2
    phi = dirichlet_kernel(pm)
    # inconsistent ratios within one congruence class
    xi = FourierSeries(np.array([[0, 0], [2, 0]]),
                       np.array([1.0 + 0j, 5.0 + 0j]))
    phi2 = phi + FourierSeries(np.array([[2, 0]]), np.array([1.0 + 0j]))
    with pytest.raises(NotInSpace):
        membership_coeffs(xi, phi2, pm)
