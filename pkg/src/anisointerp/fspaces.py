"""Ellipsoidal smoothness weights and the associated coefficient norms.

The weight ``(1 + ||M||_2^2 ||M^{-T} k||_2^2)^(beta/2)`` grades frequency
indices by the anisotropic ellipsoid of the pattern matrix; weighted
``l_q`` norms of Fourier coefficients over finite supports give the
smoothness norms used throughout the error bounds.  Norms here are always
finite sums; truncation tails of infinite series are the caller's concern.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotExpanding
from .intlat import IntVec, PatternMatrix
from .ptransform import FourierSeries
from .spectral import inv_t_apply, is_expanding, spectral_data


@dataclass(frozen=True)
class WeightSpec:
    """Weight exponent, pattern matrix, and norm index ``q`` (may be inf)."""

    beta: float
    pm: PatternMatrix
    q: float

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        if not (self.q >= 1):
            raise ValueError("q must be >= 1 or inf")


def weights_many(ks: np.ndarray, beta: float, pm: PatternMatrix) -> np.ndarray:
    """Vectorized ellipsoidal weight for an ``(n, d)`` integer index array."""
    sd = spectral_data(pm)
    y = inv_t_apply(np.asarray(ks, dtype=np.int64), pm)
    r2 = np.einsum("ij,ij->i", y, y)
    return (1.0 + sd.norm2**2 * r2) ** (beta / 2.0)


def weight(k: IntVec, ws: WeightSpec) -> float:
    """The ellipsoidal weight ``sigma_beta`` at a single frequency index."""
    return float(weights_many(np.array([k], dtype=np.int64), ws.beta, ws.pm)[0])


def lq_norm(values: np.ndarray, q: float) -> float:
    """``l_q`` norm of a nonnegative array, with the sup convention for inf."""
    values = np.asarray(values, dtype=float)
    if len(values) == 0:
        return 0.0
    if math.isinf(q):
        return float(values.max())
    return float((values**q).sum() ** (1.0 / q))


def a_norm(f: FourierSeries, alpha: float, ws: WeightSpec) -> float:
    """Weighted coefficient norm ``||{sigma_alpha(k) c_k(f)}||_{l_q}``.

    ``alpha`` is the exponent actually applied; ``ws`` supplies the matrix
    and the norm index.
    """
    if len(f) == 0:
        return 0.0
    w = weights_many(f.freqs, alpha, ws.pm)
    return lq_norm(w * np.abs(f.coeffs), ws.q)


@dataclass(frozen=True)
class SubmultReport:
    """Outcome of the random submultiplicativity audit."""

    trials: int
    violations: int
    max_ratio: float
    relaxed: bool

    @property
    def ok(self) -> bool:
        return self.violations == 0


def check_submultiplicativity(
    trials: int,
    beta: float,
    pm: PatternMatrix,
    relaxed: bool = False,
    rng: np.random.Generator | None = None,
    index_range: int = 50,
) -> SubmultReport:
    """Randomized audit of the weight splitting inequality.

    Checks ``sigma_beta(k + M^T z) <= C sigma_beta(k) sigma_beta(z)`` on
    random index pairs, with ``C = ||M||_2^beta`` in strict mode (requires
    an expanding matrix) and ``C = 2^beta ||M||_2^beta`` in relaxed mode
    (any regular matrix with ``||M||_2 >= 1``).

    Raises
    ------
    NotExpanding
        In strict mode when ``|lambda_max(M)| < 2``.
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    sd = spectral_data(pm)
    if not relaxed and not is_expanding(sd):
        raise NotExpanding("strict mode needs |lambda_max(M)| >= 2; "
                           "use relaxed=True for the 2^beta variant")
    if rng is None:
        rng = np.random.default_rng(0)
    factor = sd.norm2**beta * (2.0**beta if relaxed else 1.0)
    ks = rng.integers(-index_range, index_range + 1, size=(trials, pm.d))
    zs = rng.integers(-index_range, index_range + 1, size=(trials, pm.d))
    lhs = weights_many(ks + zs @ pm.mat_np, beta, pm)
    rhs = factor * weights_many(ks, beta, pm) * weights_many(zs, beta, pm)
    ratio = lhs / rhs
    max_ratio = float(ratio.max())
    violations = int((ratio > 1.0 + 1e-12).sum())
    return SubmultReport(trials=trials, violations=violations,
                         max_ratio=max_ratio, relaxed=relaxed)
