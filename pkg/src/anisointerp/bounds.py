"""Interpolation-error measurement and empirical validation of the bounds.

The error of interpolating ``f`` on the pattern splits by the triangle
inequality into three measurable pieces,

    f - L_M f = (S_M f - L_M S_M f) + (f - S_M f) - L_M (f - S_M f),

each with its own proven bound: the trigonometric-polynomial estimate
``gamma_SF ||M||^{-s}``, the partial-sum estimate ``(2/||M||)^{mu-alpha}``
and the aliasing estimate ``gamma_IP gamma_Sm ||M||^{alpha-mu}``.  This
module measures the actual weighted-norm errors, evaluates the right-hand
sides with the constants computed in :mod:`anisointerp.strangfix`, and runs
dilation studies ``M_j = 2^j M_0`` checking both the one-sided inequalities
and the observed log-log decay rate.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .boxspline import BoxSplineSpec, PeriodizationWindow, periodize, sf_order
from .fspaces import WeightSpec, a_norm
from .interp import (
    FundamentalInterpolant,
    dirichlet_kernel,
    evaluate_at_nodes,
    fourier_partial_sum,
    fundamental_interpolant,
    interpolation_operator,
)
from .intlat import PatternMatrix, validate_matrix
from .ptransform import FourierSeries, SampleVector
from .spectral import is_expanding, spectral_data
from .strangfix import SFParams, SFReport, gamma_ip, gamma_sm, verify_sfc

RATIO_TOL = 1e-9
NODE_TOL = 1e-6
_TINY = 1e-13


def _worker_count() -> int:
    env = os.environ.get("ANISO_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


@dataclass
class ErrorBreakdown:
    """Measured interpolation error and its triangle-inequality components.

    ``total`` is ``||f - L_M f | A^alpha_q||``; the components are the
    trig-polynomial part ``||S_M f - L_M S_M f||``, the partial-sum part
    ``||f - S_M f||`` and the aliasing part ``||L_M (f - S_M f)||``.
    """

    total: float
    trig: float
    partial: float
    aliasing: float
    node_residual: float
    scale: float


def _interpolate(f: FourierSeries, ifun: FundamentalInterpolant) -> FourierSeries:
    values = evaluate_at_nodes(f, ifun.pm)
    return interpolation_operator(SampleVector(values, ifun.pm), ifun)


def interp_error(f: FourierSeries, ifun: FundamentalInterpolant,
                 alpha: float, q: float) -> ErrorBreakdown:
    """Measure ``||f - L_M f | A^alpha_q||`` with the component breakdown.

    All four norms are exact finite sums over the stored supports; the
    interpolant must cover the congruence classes of ``f``'s support
    (guaranteed when it stores every class, as the built-in kernels do).
    """
    pm = ifun.pm
    ws = WeightSpec(alpha, pm, q)
    smf = fourier_partial_sum(f, pm)
    hi = f + smf.scaled(-1.0)
    lmf = _interpolate(f, ifun)
    lm_smf = _interpolate(smf, ifun)
    total = a_norm(f + lmf.scaled(-1.0), alpha, ws)
    trig = a_norm(smf + lm_smf.scaled(-1.0), alpha, ws)
    partial = a_norm(hi, alpha, ws)
    aliasing = a_norm(lmf + lm_smf.scaled(-1.0), alpha, ws)
    node_residual = float(
        np.abs(evaluate_at_nodes(lmf, pm) - evaluate_at_nodes(f, pm)).max(initial=0.0)
    )
    scale = float(np.abs(f.coeffs).max(initial=0.0))
    return ErrorBreakdown(total=total, trig=trig, partial=partial,
                          aliasing=aliasing, node_residual=node_residual,
                          scale=scale)


def _safe_ratio(num: float, den: float, scale: float) -> float:
    if den <= _TINY * scale:
        return 0.0 if num <= _TINY * scale else math.inf
    return num / den


def check_trig_theorem(f: FourierSeries, ifun: FundamentalInterpolant,
                       report: SFReport) -> float:
    """Ratio of the measured error of a trig polynomial ``f`` in ``T_M``
    to the bound ``||M||^{-s} gamma_SF ||f | A^{alpha+s}_q||``.

    ``f`` must be supported on the canonical generating set; ``report`` is
    a passing Strang-Fix verification of the interpolant.
    """
    pm = ifun.pm
    smf = fourier_partial_sum(f, pm)
    if len(smf) != len(f):
        raise ValueError("f is not a trigonometric polynomial in T_M")
    p = report.params
    err = interp_error(f, ifun, p.alpha, p.q)
    sd = spectral_data(pm)
    rhs = sd.norm2 ** (-p.s) * report.gamma_sf * a_norm(
        f, p.alpha + p.s, WeightSpec(p.alpha, pm, p.q)
    )
    return _safe_ratio(err.total, rhs, err.scale)


def check_partial_sum_theorem(f: FourierSeries, pm: PatternMatrix,
                              alpha: float, mu: float, q: float) -> float:
    """Ratio of ``||f - S_M f | A^alpha_q||`` to
    ``(2/||M||)^{mu-alpha} ||f | A^mu_q||``; holds for any regular matrix."""
    if mu < alpha:
        raise ValueError("mu must be >= alpha")
    ws = WeightSpec(alpha, pm, q)
    smf = fourier_partial_sum(f, pm)
    num = a_norm(f + smf.scaled(-1.0), alpha, ws)
    sd = spectral_data(pm)
    rhs = (2.0 / sd.norm2) ** (mu - alpha) * a_norm(f, mu, ws)
    return _safe_ratio(num, rhs, float(np.abs(f.coeffs).max(initial=0.0)))


def check_aliasing_theorem(f: FourierSeries, ifun: FundamentalInterpolant,
                           alpha: float, mu: float, q: float,
                           zmax: int) -> float:
    """Ratio of ``||L_M (f - S_M f) | A^alpha_q||`` to the product bound
    ``gamma_IP gamma_Sm ||M||^{alpha-mu} ||f | A^mu_q||``."""
    pm = ifun.pm
    err = interp_error(f, ifun, alpha, q)
    sd = spectral_data(pm)
    gip = gamma_ip(ifun, alpha, q, zmax)
    gsm = gamma_sm(mu, alpha, q, pm.d)
    rhs = gip * gsm * sd.norm2 ** (alpha - mu) * a_norm(
        f, mu, WeightSpec(alpha, pm, q)
    )
    return _safe_ratio(err.aliasing, rhs, err.scale)


@dataclass(frozen=True)
class ExperimentSpec:
    """Configuration of a dilation convergence study.

    ``kernel`` is a :class:`BoxSplineSpec` or the string ``"dirichlet"``;
    ``test_function`` maps the per-scale pattern matrix to a finite
    series (a fixed series is wrapped by :func:`fixed_function`).
    ``s`` defaults to the box-spline reproduction order.
    """

    base_matrix: PatternMatrix
    scales: tuple[int, ...]
    test_function: Callable[[PatternMatrix], FourierSeries]
    alpha: float
    mu: float
    q: float
    kernel: BoxSplineSpec | str = "dirichlet"
    s: float | None = None
    radius: int = 16
    tail_eps: float | None = 1e-5

    def __post_init__(self):
        if not (self.mu >= self.alpha >= 0):
            raise ValueError("need mu >= alpha >= 0")
        qinv = 0.0 if math.isinf(self.q) else 1.0 / self.q
        if self.mu <= self.base_matrix.d * (1.0 - qinv):
            raise ValueError("need mu > d(1 - 1/q)")

    def order(self) -> float:
        if self.s is not None:
            return self.s
        if isinstance(self.kernel, BoxSplineSpec):
            return float(sf_order(self.kernel))
        raise ValueError("order s must be given for the Dirichlet kernel")


@dataclass
class ScaleRow:
    """One dilation level of a convergence study."""

    j: int
    m: int
    norm2: float
    error: float
    bound: float
    ratio: float
    node_residual: float
    gamma_sf: float
    sf_passed: bool


@dataclass
class BoundReport:
    """Per-scale records, the all-ratios verdict, and the fitted decay."""

    spec: ExperimentSpec
    rho: float
    rows: list[ScaleRow] = field(default_factory=list)
    fitted_rate: float | None = None
    fit_residual: float | None = None

    @property
    def verdict(self) -> bool:
        return all(
            r.ratio <= 1.0 + RATIO_TOL and r.node_residual <= NODE_TOL
            for r in self.rows
        )


def fixed_function(f: FourierSeries) -> Callable[[PatternMatrix], FourierSeries]:
    """Wrap a fixed series as a scale-independent test-function generator."""
    return lambda pm: f


def decay_profile(d: int, decay: float, kmax: int) -> FourierSeries:
    """Truncated series with real coefficients ``(1 + ||k||_2)^(-decay)``
    on the box ``||k||_inf <= kmax``."""
    from .boxspline import _int_box

    ks = _int_box(d, kmax)
    coeffs = (1.0 + np.linalg.norm(ks, axis=1)) ** (-decay)
    return FourierSeries(ks, coeffs.astype(np.complex128), window=math.inf)


def _study_kernel(spec: ExperimentSpec, pm: PatternMatrix) -> FundamentalInterpolant:
    if isinstance(spec.kernel, BoxSplineSpec):
        win = PeriodizationWindow(radius=spec.radius, tail_eps=spec.tail_eps)
        return fundamental_interpolant(periodize(spec.kernel, pm, win), pm)
    return fundamental_interpolant(dirichlet_kernel(pm), pm)


def _study_row(spec: ExperimentSpec, rho: float, j: int) -> ScaleRow:
    mat = [[(2**j) * e for e in row] for row in spec.base_matrix.mat]
    pm = validate_matrix(mat)
    sd = spectral_data(pm)
    if not is_expanding(sd):
        raise ValueError(f"scale matrix at j={j} is not expanding")
    s = spec.order()
    ifun = _study_kernel(spec, pm)
    f = spec.test_function(pm)
    err = interp_error(f, ifun, spec.alpha, spec.q)

    zmax = ifun.series.window
    zmax = spec.radius if zmax is None or math.isinf(zmax) else int(zmax)
    rep = verify_sfc(ifun, SFParams(s=s, alpha=spec.alpha, q=spec.q), zmax=zmax)
    gip = gamma_ip(ifun, spec.alpha, spec.q, zmax)
    gsm = gamma_sm(spec.mu, spec.alpha, spec.q, pm.d)
    if rho == s:
        c_rho_val = rep.gamma_sf + 2.0 ** (spec.mu - spec.alpha) + gip * gsm
    else:
        c_rho_val = ((1.0 + pm.d) ** (s + spec.alpha - spec.mu) * rep.gamma_sf
                     + 2.0 ** (spec.mu - spec.alpha) + gip * gsm)
    fmu = a_norm(f, spec.mu, WeightSpec(spec.alpha, pm, spec.q))
    bound = c_rho_val * sd.norm2 ** (-rho) * fmu
    return ScaleRow(
        j=j,
        m=pm.m,
        norm2=sd.norm2,
        error=err.total,
        bound=bound,
        ratio=_safe_ratio(err.total, bound, err.scale),
        node_residual=err.node_residual,
        gamma_sf=rep.gamma_sf,
        sf_passed=rep.passed,
    )


def convergence_study(spec: ExperimentSpec) -> BoundReport:
    """Run the dilation family ``M_j = 2^j M_0`` and validate the combined
    bound ``C_rho ||M_j||^{-rho} ||f | A^mu_q||`` at every scale.

    Scales run concurrently (capped by ``ANISO_THREADS``); rows are
    assembled in increasing ``j``.  The decay rate is a least-squares
    log-log fit over ``j >= 1``, reported but not part of the verdict
    (the bound is one-sided).
    """
    s = spec.order()
    rho = min(s, spec.mu - spec.alpha)
    report = BoundReport(spec=spec, rho=rho)
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        rows = list(pool.map(lambda j: _study_row(spec, rho, j), spec.scales))
    report.rows = sorted(rows, key=lambda r: r.j)

    pts = [(math.log(r.norm2), math.log(r.error))
           for r in report.rows if r.j >= 1 and r.error > _TINY]
    if len(pts) >= 2:
        x, y = np.array([p[0] for p in pts]), np.array([p[1] for p in pts])
        slope, icpt = np.polyfit(x, y, 1)
        report.fitted_rate = float(slope)
        report.fit_residual = float(np.abs(y - (slope * x + icpt)).max())
    return report


def report_to_csv(report: BoundReport, path) -> None:
    """Write the per-scale records with the fixed ``j,m,norm2,error,bound,
    ratio`` header and 17-significant-digit floats (byte deterministic)."""
    lines = ["j,m,norm2,error,bound,ratio"]
    for r in report.rows:
        lines.append(
            f"{r.j},{r.m},{r.norm2:.17g},{r.error:.17g},"
            f"{r.bound:.17g},{r.ratio:.17g}"
        )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def report_to_svg(report: BoundReport, path) -> None:
    """Hand-emitted SVG log-log plot: error and bound vs ``||M||_2`` with
    the fitted slope annotated.  No plotting dependency."""
    rows = [r for r in report.rows if r.error > 0 and r.bound > 0]
    w, h, pad = 640, 480, 60
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
    ]
    if rows:
        xs = [math.log10(r.norm2) for r in rows]
        ys = [math.log10(r.error) for r in rows] + [math.log10(r.bound) for r in rows]
        x0, x1 = min(xs), max(xs)
        y0, y1 = min(ys), max(ys)
        x1 = x1 if x1 > x0 else x0 + 1.0
        y1 = y1 if y1 > y0 else y0 + 1.0

        def px(x):
            return pad + (x - x0) / (x1 - x0) * (w - 2 * pad)

        def py(y):
            return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad)

        parts.append(
            f'<rect x="{pad}" y="{pad}" width="{w - 2 * pad}" '
            f'height="{h - 2 * pad}" fill="none" stroke="black"/>'
        )
        for xv in sorted({round(v) for v in xs} | {math.floor(x0), math.ceil(x1)}):
            if x0 <= xv <= x1:
                parts.append(
                    f'<line x1="{px(xv):.1f}" y1="{h - pad}" x2="{px(xv):.1f}" '
                    f'y2="{h - pad + 6}" stroke="black"/>'
                    f'<text x="{px(xv):.1f}" y="{h - pad + 20}" font-size="11" '
                    f'text-anchor="middle">1e{xv:g}</text>'
                )
        for yv in range(math.floor(y0), math.ceil(y1) + 1):
            if y0 <= yv <= y1:
                parts.append(
                    f'<line x1="{pad - 6}" y1="{py(yv):.1f}" x2="{pad}" '
                    f'y2="{py(yv):.1f}" stroke="black"/>'
                    f'<text x="{pad - 10}" y="{py(yv):.1f}" font-size="11" '
                    f'text-anchor="end">1e{yv}</text>'
                )
        for key, color in (("error", "crimson"), ("bound", "steelblue")):
            pts = " ".join(
                f"{px(math.log10(r.norm2)):.1f},{py(math.log10(getattr(r, key))):.1f}"
                for r in rows
            )
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="2"/>'
            )
        parts.append(
            f'<text x="{w - pad}" y="{pad - 10}" font-size="12" text-anchor="end">'
            f'error (red) / bound (blue) vs ||M||_2; rho={report.rho:g}'
            + (f", fitted slope={report.fitted_rate:.2f}"
               if report.fitted_rate is not None else "")
            + "</text>"
        )
        parts.append(
            f'<text x="{w / 2:.0f}" y="{h - 15}" font-size="12" '
            f'text-anchor="middle">||M||_2 (log)</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
