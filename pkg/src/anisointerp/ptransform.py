"""Pattern discrete Fourier transform and the aliasing (folding) operator.

The transform is the dense unitary map built from the characters
``e^{-2 pi i h^T y}`` over the canonical generating set and pattern.  No
fast (sub-quadratic) variant is provided; desk-scale cardinalities keep
the dense ``O(m^2)`` evaluation comfortable.  Phases are computed from the
exact rational ``h^T M^{-1} g`` reduced mod 1 before any trigonometric
call, so large frequency indices suffer no phase drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .intlat import (
    IntVec,
    PatternMatrix,
    enumerate_generating_set,
    enumerate_pattern,
    freq_phase_residues,
    reduce_freq,
    reduce_freq_many,
)

_CACHE_MAX_M = 512


class FourierSeries:
    """A finite map from frequency indices to complex Fourier coefficients.

    Stored as parallel arrays ``freqs`` (``(n, d)`` int64, unique rows) and
    ``coeffs`` (``(n,)`` complex128).  Indices not stored are implicit
    zeros.  ``window`` optionally records up to which aliasing shell
    ``||z||_inf`` the stored support is complete (``math.inf`` when every
    unstored index is exactly zero); consumers needing coverage guarantees
    inspect it.
    """

    __slots__ = ("freqs", "coeffs", "window", "_index")

    def __init__(self, freqs, coeffs, window=None, dedup: bool = False):
        freqs = np.atleast_2d(np.asarray(freqs, dtype=np.int64))
        coeffs = np.asarray(coeffs, dtype=np.complex128).ravel()
        if len(freqs) != len(coeffs):
            raise ValueError("freqs and coeffs length mismatch")
        if dedup and len(freqs):
            freqs, inv = np.unique(freqs, axis=0, return_inverse=True)
            summed = np.zeros(len(freqs), dtype=np.complex128)
            np.add.at(summed, inv.ravel(), coeffs)
            coeffs = summed
        self.freqs = freqs
        self.coeffs = coeffs
        self.window = window
        self._index = None

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_dict(cls, d: dict[IntVec, complex], window=None) -> "FourierSeries":
        if not d:
            return cls(np.zeros((0, 1), dtype=np.int64), np.zeros(0), window=window)
        keys = sorted(d)
        return cls(np.array(keys, dtype=np.int64),
                   np.array([d[k] for k in keys], dtype=np.complex128),
                   window=window)

    @classmethod
    def zero(cls, dim: int) -> "FourierSeries":
        return cls(np.zeros((0, dim), dtype=np.int64), np.zeros(0), window=math.inf)

    @classmethod
    def single(cls, k: IntVec, c: complex = 1.0) -> "FourierSeries":
        return cls(np.array([k], dtype=np.int64), np.array([c]), window=math.inf)

    # -- basic protocol -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def dim(self) -> int:
        return self.freqs.shape[1]

    def as_dict(self) -> dict[IntVec, complex]:
        if self._index is None:
            self._index = {
                tuple(int(x) for x in k): complex(c)
                for k, c in zip(self.freqs, self.coeffs)
            }
        return self._index

    def get(self, k: IntVec) -> complex:
        return self.as_dict().get(tuple(int(x) for x in k), 0.0 + 0.0j)

    def prune(self, tol: float = 0.0) -> "FourierSeries":
        """Drop coefficients with magnitude <= ``tol`` (normalization pass)."""
        keep = np.abs(self.coeffs) > tol
        return FourierSeries(self.freqs[keep], self.coeffs[keep], window=None)

    def scaled(self, c: complex) -> "FourierSeries":
        return FourierSeries(self.freqs, self.coeffs * c, window=self.window)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if len(self) == 0:
            return FourierSeries(other.freqs, other.coeffs)
        if len(other) == 0:
            return FourierSeries(self.freqs, self.coeffs)
        return FourierSeries(
            np.vstack([self.freqs, other.freqs]),
            np.concatenate([self.coeffs, other.coeffs]),
            dedup=True,
        )

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + other.scaled(-1.0)


@dataclass
class SampleVector:
    """Complex values on the canonical pattern order of ``pm``."""

    values: np.ndarray
    pm: PatternMatrix

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128).ravel()
        if len(self.values) != self.pm.m:
            raise ValueError("sample vector length must equal pattern cardinality")


@dataclass
class CoeffVector:
    """Complex values on the canonical generating-set order of ``M^T``."""

    values: np.ndarray
    pm: PatternMatrix

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128).ravel()
        if len(self.values) != self.pm.m:
            raise ValueError("coefficient vector length must equal pattern cardinality")


@lru_cache(maxsize=None)
def pattern_generators(pm: PatternMatrix) -> np.ndarray:
    """Canonically ordered generators of the pattern, as an ``(m, d)`` array."""
    return np.array(enumerate_pattern(pm), dtype=np.int64)


@lru_cache(maxsize=None)
def gset_freqs(pm: PatternMatrix) -> np.ndarray:
    """Canonically ordered generating set of ``M^T``, as an ``(m, d)`` array."""
    return np.array(enumerate_generating_set(pm, transposed=True), dtype=np.int64)


@lru_cache(maxsize=None)
def gset_index(pm: PatternMatrix) -> dict[IntVec, int]:
    """Position of each canonical frequency in the canonical order."""
    return {tuple(int(x) for x in h): i for i, h in enumerate(gset_freqs(pm))}


def _phase_matrix(pm: PatternMatrix) -> np.ndarray:
    """``(m, m)`` matrix of ``e^{-2 pi i h^T y}`` in canonical order."""
    res = freq_phase_residues(gset_freqs(pm), pattern_generators(pm), pm)
    return np.exp(-2j * np.pi * res / pm.m)


_phase_matrix_cached = lru_cache(maxsize=8)(_phase_matrix)


def phase_matrix(pm: PatternMatrix) -> np.ndarray:
    if pm.m <= _CACHE_MAX_M:
        return _phase_matrix_cached(pm)
    return _phase_matrix(pm)


def fourier_matrix(pm: PatternMatrix) -> np.ndarray:
    """The unitary Fourier matrix ``F(M)`` in canonical row/column order."""
    return phase_matrix(pm) / np.sqrt(pm.m)


def character_sum(k: IntVec, pm: PatternMatrix) -> int:
    """Sum of ``e^{-2 pi i k^T y}`` over the pattern: ``m`` if
    ``k = 0 mod M^T``, else ``0`` (decided exactly)."""
    h = reduce_freq(k, pm)
    return pm.m if all(x == 0 for x in h) else 0


def dft_forward(s: SampleVector) -> CoeffVector:
    """``a_hat_h = sum_y a_y e^{-2 pi i h^T y}`` (``sqrt(m) F(M) a``)."""
    return CoeffVector(phase_matrix(s.pm) @ s.values, s.pm)


def dft_inverse(c: CoeffVector) -> SampleVector:
    """Exact inverse of :func:`dft_forward`."""
    return SampleVector(phase_matrix(c.pm).conj().T @ c.values / c.pm.m, c.pm)


def discrete_coeffs(s: SampleVector) -> CoeffVector:
    """Discrete Fourier coefficients ``(1/m) sum_y phi(2 pi y) e^{-2 pi i h^T y}``."""
    out = dft_forward(s)
    return CoeffVector(out.values / s.pm.m, s.pm)


def freq_class_indices(freqs: np.ndarray, pm: PatternMatrix) -> np.ndarray:
    """For each stored frequency, the canonical-order index of its class."""
    reduced = reduce_freq_many(freqs, pm)
    idx = gset_index(pm)
    return np.fromiter(
        (idx[tuple(int(x) for x in h)] for h in reduced),
        dtype=np.int64,
        count=len(reduced),
    )


def alias_fold(f: FourierSeries, pm: PatternMatrix) -> CoeffVector:
    """Fold the coefficients of ``f`` over congruence classes mod ``M^T``.

    For each canonical ``h`` the result is the exact finite sum of all
    stored coefficients whose index reduces to ``h``.
    """
    out = np.zeros(pm.m, dtype=np.complex128)
    if len(f):
        labels = freq_class_indices(f.freqs, pm)
        np.add.at(out, labels, f.coeffs)
    return CoeffVector(out, pm)


# -- coefficient CSV format ---------------------------------------------------


def series_to_csv(f: FourierSeries) -> str:
    """Serialize a series to ``k1,...,kd,re,im`` rows, 17 significant digits."""
    d = f.dim
    lines = [",".join(f"k{i + 1}" for i in range(d)) + ",re,im"]
    order = np.lexsort(f.freqs.T[::-1]) if len(f) else []
    for i in order:
        k = f.freqs[i]
        c = f.coeffs[i]
        lines.append(
            ",".join(str(int(x)) for x in k) + f",{c.real:.17g},{c.imag:.17g}"
        )
    return "\n".join(lines) + "\n"


def series_from_csv(text: str) -> FourierSeries:
    """Parse the ``k1,...,kd,re,im`` format produced by :func:`series_to_csv`."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    header = lines[0].split(",")
    d = len(header) - 2
    coeffs: dict[IntVec, complex] = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        k = tuple(int(x) for x in parts[:d])
        coeffs[k] = coeffs.get(k, 0.0) + float(parts[d]) + 1j * float(parts[d + 1])
    if not coeffs:
        return FourierSeries.zero(d)
    return FourierSeries.from_dict(coeffs)
