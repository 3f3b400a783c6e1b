"""Fundamental interpolants and the interpolation operator on a pattern.

Given a kernel with known Fourier coefficients, the unique element of its
translate space taking value 1 at the origin node and 0 at all other
pattern nodes has coefficients ``c_k(kernel) / (m * folded_class(kernel))``
whenever no folded class coefficient vanishes.  This module constructs
that cardinal function, applies the induced interpolation operator to node
samples, and provides the supporting translate / evaluate / partial-sum
machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NonExistent, NotInSpace
from .intlat import IntVec, PatternMatrix, freq_phase_residues, reduce_freq_many
from .ptransform import (
    CoeffVector,
    FourierSeries,
    SampleVector,
    alias_fold,
    discrete_coeffs,
    freq_class_indices,
    gset_freqs,
    pattern_generators,
    phase_matrix,
)

EXISTENCE_EPS_REL = 1e-12


def translate(f: FourierSeries, g: IntVec, pm: PatternMatrix) -> FourierSeries:
    """Coefficients of ``f`` shifted by the pattern point ``y = M^{-1} g``.

    Each coefficient picks up the phase ``e^{-2 pi i k^T y}``, computed from
    the exact rational ``k^T adj(M) g / det`` reduced mod 1.
    """
    if len(f) == 0:
        return f
    res = freq_phase_residues(f.freqs, np.array([g], dtype=np.int64), pm)[:, 0]
    phases = np.exp(-2j * np.pi * res / pm.m)
    return FourierSeries(f.freqs, f.coeffs * phases, window=f.window)


def evaluate(f: FourierSeries, x) -> complex:
    """Fourier synthesis ``sum_k c_k e^{i k^T x}`` at a torus point ``x``."""
    if len(f) == 0:
        return 0.0 + 0.0j
    x = np.asarray(x, dtype=float)
    return complex(np.sum(f.coeffs * np.exp(1j * (f.freqs @ x))))


def evaluate_at_nodes(f: FourierSeries, pm: PatternMatrix) -> np.ndarray:
    """Values ``f(2 pi y)`` over the canonical pattern order, exactly.

    On pattern nodes the character ``e^{2 pi i k^T y}`` depends only on the
    congruence class of ``k``, so the finite synthesis collapses to the
    folded coefficients; this is exact for any finite series and avoids
    per-mode phase evaluation.
    """
    folded = alias_fold(f, pm)
    return phase_matrix(pm).conj().T @ folded.values


@dataclass
class ExistenceReport:
    """Folded kernel coefficients and the classes flagged as (near) zero."""

    folded: CoeffVector
    flagged: list[IntVec]
    eps: float

    @property
    def ok(self) -> bool:
        return not self.flagged


def check_existence(phi: FourierSeries, pm: PatternMatrix,
                    eps_rel: float = EXISTENCE_EPS_REL) -> ExistenceReport:
    """Flag every congruence class whose folded coefficient (nearly) vanishes.

    The threshold is relative: ``eps_rel`` times the largest folded
    magnitude, since an exact "nonzero" test is meaningless in floats.
    """
    folded = alias_fold(phi, pm)
    mags = np.abs(folded.values)
    eps = eps_rel * float(mags.max(initial=0.0))
    flagged = [
        tuple(int(x) for x in h)
        for h, mag in zip(gset_freqs(pm), mags)
        if mag <= eps
    ]
    return ExistenceReport(folded=folded, flagged=flagged, eps=eps)


@dataclass
class FundamentalInterpolant:
    """The cardinal function of a translate space, in coefficient form.

    Attributes
    ----------
    series : FourierSeries
        Fourier coefficients of the interpolant.
    pm : PatternMatrix
        The pattern matrix.
    a_hat : CoeffVector
        Translate coefficients in the frequency domain,
        ``1 / (m * folded_h)``; zero on degenerate classes.
    incorrect_modes : list of tuple
        Canonical classes where the folded kernel coefficient vanished and
        the fallback ``c_h = 1/m`` was applied.
    """

    series: FourierSeries
    pm: PatternMatrix
    a_hat: CoeffVector
    incorrect_modes: list[IntVec] = field(default_factory=list)


def fundamental_interpolant(
    phi: FourierSeries,
    pm: PatternMatrix,
    allow_incorrect: bool = False,
    eps_rel: float = EXISTENCE_EPS_REL,
) -> FundamentalInterpolant:
    """Build the fundamental interpolant of the translate space of ``phi``.

    Coefficients are ``c_k(phi) / (m * folded)`` classwise.  On classes
    where the folded coefficient vanishes the interpolant does not exist;
    with ``allow_incorrect`` those classes fall back to the single
    canonical coefficient ``1/m`` (all non-canonical modes of the class are
    dropped) and are recorded in ``incorrect_modes``.

    Raises
    ------
    NonExistent
        If a folded class vanishes and ``allow_incorrect`` is not set.
    """
    report = check_existence(phi, pm, eps_rel=eps_rel)
    folded = report.folded.values
    if report.flagged and not allow_incorrect:
        raise NonExistent(
            f"folded kernel coefficient vanishes on classes {report.flagged}"
        )
    labels = freq_class_indices(phi.freqs, pm) if len(phi) else np.zeros(0, np.int64)
    degenerate = np.zeros(pm.m, dtype=bool)
    from .ptransform import gset_index

    gidx = gset_index(pm)
    for h in report.flagged:
        degenerate[gidx[h]] = True

    a_hat = np.zeros(pm.m, dtype=np.complex128)
    good = ~degenerate
    a_hat[good] = 1.0 / (pm.m * folded[good])

    keep = good[labels] if len(phi) else np.zeros(0, dtype=bool)
    freqs = phi.freqs[keep]
    coeffs = phi.coeffs[keep] * a_hat[labels[keep]]
    if report.flagged:
        extra = np.array(report.flagged, dtype=np.int64)
        freqs = np.vstack([freqs, extra]) if len(freqs) else extra
        coeffs = np.concatenate([coeffs, np.full(len(extra), 1.0 / pm.m)])
    series = FourierSeries(freqs, coeffs, window=phi.window)
    return FundamentalInterpolant(
        series=series,
        pm=pm,
        a_hat=CoeffVector(a_hat, pm),
        incorrect_modes=list(report.flagged),
    )


def membership_coeffs(xi: FourierSeries, phi: FourierSeries, pm: PatternMatrix,
                      tol: float = 1e-10) -> CoeffVector:
    """Translate coefficients ``a_hat`` with ``c_k(xi) = a_hat_h c_k(phi)``.

    Scans every stored mode of either series, grouped by congruence class,
    and demands a consistent ratio per class.

    Raises
    ------
    NotInSpace
        With the first inconsistent index pair, if no consistent coefficient
        vector exists.
    """
    union = {tuple(int(x) for x in k) for k in xi.freqs}
    union.update(tuple(int(x) for x in k) for k in phi.freqs)
    keys = sorted(union)
    if not keys:
        return CoeffVector(np.zeros(pm.m), pm)
    karr = np.array(keys, dtype=np.int64)
    labels = freq_class_indices(karr, pm)
    mags = [float(np.abs(s.coeffs).max(initial=0.0)) for s in (xi, phi)]
    scale = max(mags) or 1.0
    a_hat: np.ndarray = np.zeros(pm.m, dtype=np.complex128)
    seen = np.zeros(pm.m, dtype=bool)
    witness: dict[int, IntVec] = {}
    for k, lab in zip(keys, labels):
        cx = xi.get(k)
        cp = phi.get(k)
        if abs(cp) <= tol * scale:
            if abs(cx) > tol * scale:
                raise NotInSpace(f"mode {k} not proportional to the kernel")
            continue
        ratio = cx / cp
        if not seen[lab]:
            a_hat[lab] = ratio
            seen[lab] = True
            witness[int(lab)] = k
        elif abs(ratio - a_hat[lab]) > tol * (1.0 + abs(a_hat[lab])):
            raise NotInSpace(
                f"inconsistent ratio within class: modes {witness[int(lab)]} and {k}"
            )
    return CoeffVector(a_hat, pm)


def interpolation_operator(samples: SampleVector,
                           ifun: FundamentalInterpolant) -> FourierSeries:
    """Series matching the node samples within the interpolant's space.

    ``c_k = m * folded_sample_coeff(class of k) * c_k(interpolant)`` over
    the stored support of the interpolant.
    """
    pm = ifun.pm
    ch = discrete_coeffs(samples).values
    f = ifun.series
    if len(f) == 0:
        return f
    labels = freq_class_indices(f.freqs, pm)
    coeffs = pm.m * ch[labels] * f.coeffs
    return FourierSeries(f.freqs, coeffs, window=f.window)


def fourier_partial_sum(f: FourierSeries, pm: PatternMatrix) -> FourierSeries:
    """Restriction of the support to the canonical generating set of ``M^T``."""
    if len(f) == 0:
        return f
    reduced = reduce_freq_many(f.freqs, pm)
    keep = np.all(reduced == f.freqs, axis=1)
    return FourierSeries(f.freqs[keep], f.coeffs[keep], window=math.inf)


def dirichlet_kernel(pm: PatternMatrix) -> FourierSeries:
    """Kernel with coefficient 1 on every canonical frequency, 0 elsewhere."""
    h = gset_freqs(pm)
    return FourierSeries(h.copy(), np.ones(pm.m, dtype=np.complex128),
                         window=math.inf)


def cardinal_residual(ifun: FundamentalInterpolant) -> float:
    """Max deviation of the interpolant from the cardinal values at nodes."""
    pm = ifun.pm
    vals = evaluate_at_nodes(ifun.series, pm)
    target = np.zeros(pm.m, dtype=np.complex128)
    origin = next(
        i for i, g in enumerate(pattern_generators(pm)) if not g.any()
    )
    target[origin] = 1.0
    return float(np.abs(vals - target).max())
