"""Exact integer arithmetic for patterns of regular integer matrices.

A regular integer matrix ``M`` partitions ``Z^d`` into ``m = |det M|``
congruence classes mod ``M``, and likewise the rational lattice
``M^{-1} Z^d`` into ``m`` classes mod ``Z^d``.  This module enumerates the
canonical representatives inside the half-open cube ``[-1/2, 1/2)^d``,
reduces arbitrary integers to their representative, and implements the
induced group addition.  Everything here is exact: membership in the
half-open parallelotope is decided by integer comparisons on the adjugate,
never by floating point.

Frequency indices and generating-set elements are plain ``tuple[int, ...]``;
pattern points are stored through their integer generator ``g`` with
``y = M^{-1} g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import NotAMember, SingularMatrix

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]

# int64 fast paths stay exact below this magnitude; larger inputs take the
# arbitrary-precision route.
_INT64_SAFE = 2**62


def _det_bareiss(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = [row[:] for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _minor(rows: IntMat, i: int, j: int) -> list[list[int]]:
    return [
        [rows[r][c] for c in range(len(rows)) if c != j]
        for r in range(len(rows))
        if r != i
    ]


@dataclass(frozen=True)
class PatternMatrix:
    """A validated regular integer matrix with exact cached companions.

    Attributes
    ----------
    d : int
        Dimension.
    mat : tuple of tuple of int
        The matrix rows.
    det : int
        Exact determinant, nonzero.
    adj : tuple of tuple of int
        Adjugate, satisfying ``mat @ adj == det * I`` exactly.
    m : int
        Pattern cardinality ``|det|``.
    """

    d: int
    mat: IntMat
    det: int
    adj: IntMat
    m: int = field(init=False)
    sign: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "m", abs(self.det))
        object.__setattr__(self, "sign", 1 if self.det > 0 else -1)

    @property
    def mat_np(self) -> np.ndarray:
        return np.array(self.mat, dtype=np.int64)

    @property
    def adj_np(self) -> np.ndarray:
        return np.array(self.adj, dtype=np.int64)

    def transposed(self) -> "PatternMatrix":
        """Pattern matrix of ``M^T`` (same determinant, transposed adjugate)."""
        mt = tuple(zip(*self.mat))
        adjt = tuple(zip(*self.adj))
        return PatternMatrix(self.d, tuple(map(tuple, mt)), self.det,
                             tuple(map(tuple, adjt)))

    def inv_apply(self, k: IntVec) -> tuple[Fraction, ...]:
        """``M^{-1} k`` as exact fractions."""
        t = _mat_vec(self.adj, k)
        return tuple(Fraction(ti, self.det) for ti in t)


def _mat_vec(rows: IntMat, v: IntVec) -> list[int]:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in rows]


def validate_matrix(raw) -> PatternMatrix:
    """Validate a square integer matrix and compute det/adjugate exactly.

    Raises
    ------
    SingularMatrix
        If the determinant is zero.
    """
    rows = [[int(x) for x in row] for row in raw]
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise ValueError("matrix must be square")
    for row, raw_row in zip(rows, raw):
        for x, rx in zip(row, raw_row):
            if x != rx:
                raise ValueError("matrix entries must be integers")
    det = _det_bareiss(rows)
    if det == 0:
        raise SingularMatrix(f"matrix {rows} is singular")
    if d == 1:
        adj = ((1,),)
    else:
        # adj = cofactor matrix transposed: adj[j][i] = (-1)^{i+j} minor(i,j)
        adj_rows = [[0] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                cof = (-1) ** (i + j) * _det_bareiss(_minor(tuple(map(tuple, rows)), i, j))
                adj_rows[j][i] = cof
        adj = tuple(tuple(r) for r in adj_rows)
    pm = PatternMatrix(d, tuple(tuple(r) for r in rows), det, adj)
    # integer identity M * adj = det * I
    for i in range(d):
        col = _mat_vec(pm.mat, tuple(adj[j][i] for j in range(d)))
        for j in range(d):
            assert col[j] == (det if i == j else 0)
    return pm


def _is_canonical(t: list[int], det: int) -> bool:
    """Whether adj*k = t corresponds to M^{-1}k in [-1/2, 1/2)^d, exactly."""
    s = 1 if det > 0 else -1
    m = abs(det)
    return all(-m <= 2 * s * ti < m for ti in t)


def is_canonical_freq(k: IntVec, pm: PatternMatrix) -> bool:
    """Exact test for ``k`` being in the canonical generating set
    ``G_S(M^T)``, i.e. the fixed points of :func:`reduce_freq`."""
    p = pm.transposed()
    return _is_canonical(_mat_vec(p.adj, k), p.det)


def enumerate_generating_set(pm: PatternMatrix, transposed: bool = False) -> list[IntVec]:
    """All ``m`` integer vectors ``k`` with ``M^{-1}k`` in ``[-1/2,1/2)^d``.

    With ``transposed`` the test uses ``M^T`` instead.  Output is sorted
    lexicographically; this ordering is the contract every other module
    relies on.
    """
    p = pm.transposed() if transposed else pm
    # integer bounding box of the parallelotope M [-1/2, 1/2)^d
    bounds = [sum(abs(x) for x in row) for row in p.mat]
    ranges = [range(-(b // 2) - 1, b // 2 + 2) for b in bounds]
    out = [
        k for k in product(*ranges)
        if _is_canonical(_mat_vec(p.adj, k), p.det)
    ]
    out.sort()
    assert len(out) == pm.m
    return out


def enumerate_pattern(pm: PatternMatrix) -> list[IntVec]:
    """Generators ``g`` of the canonical pattern points ``y = M^{-1} g``.

    The points themselves are the exact rationals ``adj(M) g / det``; the
    order is the lexicographic order of the generators.
    """
    return enumerate_generating_set(pm, transposed=False)


def pattern_point(g: IntVec, pm: PatternMatrix) -> tuple[Fraction, ...]:
    """The pattern point ``M^{-1} g`` as exact fractions."""
    return pm.inv_apply(g)


def _round_half_open(num: int, den: int) -> int:
    """The integer z with num/den - z in [-1/2, 1/2); den > 0."""
    return (2 * num + den) // (2 * den)


def _reduce(k: IntVec, p: PatternMatrix) -> IntVec:
    """Reduce k mod p.mat into the canonical set of p."""
    t = _mat_vec(p.adj, k)
    s, m = p.sign, p.m
    z = [_round_half_open(s * ti, m) for ti in t]
    mz = [sum(p.mat[i][j] * z[j] for j in range(p.d)) for i in range(p.d)]
    h = tuple(k[i] - mz[i] for i in range(p.d))
    assert _is_canonical(_mat_vec(p.adj, h), p.det)
    return h


def reduce_freq(k: IntVec, pm: PatternMatrix) -> IntVec:
    """Unique ``h`` in the canonical generating set of ``M^T`` with
    ``k = h + M^T z``."""
    return _reduce(tuple(int(x) for x in k), pm.transposed())


def reduce_freq_many(ks: np.ndarray, pm: PatternMatrix) -> np.ndarray:
    """Vectorized :func:`reduce_freq` for an ``(n, d)`` integer array.

    Uses int64 arithmetic; falls back to exact big-integer reduction when
    intermediate products could overflow.
    """
    ks = np.asarray(ks, dtype=np.int64)
    adj_t = pm.adj_np.T  # adj(M^T)
    max_adj = int(np.abs(adj_t).max(initial=1))
    max_k = int(np.abs(ks).max(initial=0))
    if (max_adj * max_k + 1) * pm.d >= _INT64_SAFE // 4:
        return np.array([reduce_freq(tuple(int(x) for x in row), pm) for row in ks],
                        dtype=np.int64)
    t = ks @ adj_t.T  # row i: adj(M^T) @ k_i
    n = pm.sign * t
    z = (2 * n + pm.m) // (2 * pm.m)
    return ks - z @ pm.mat_np  # (M^T z)_i = sum_j M_ji z_j = (z @ M)_i


def pattern_add(a: IntVec, b: IntVec, pm: PatternMatrix) -> IntVec:
    """Group addition on pattern points, via their generators.

    ``a`` and ``b`` are generators of canonical pattern points; the result
    is the generator of the representative of ``[M^{-1}(a+b)] mod Z^d``.

    Raises
    ------
    NotAMember
        If ``a`` or ``b`` is not a canonical generator.
    """
    for g in (a, b):
        if not _is_canonical(_mat_vec(pm.adj, g), pm.det):
            raise NotAMember(f"{g} is not a canonical generator of the pattern")
    return _reduce(tuple(a[i] + b[i] for i in range(pm.d)), pm)


def freq_phase_residues(ks: np.ndarray, gs: np.ndarray, pm: PatternMatrix) -> np.ndarray:
    """Residues ``r`` with ``k^T M^{-1} g = r / m (mod 1)``, ``0 <= r < m``.

    ``ks`` is ``(n, d)``, ``gs`` is ``(p, d)``; the result is ``(n, p)``.
    The phase ``e^{-2 pi i k^T y}`` is then ``exp(-2 pi i r / m)``, computed
    from an exact rational reduced mod 1 so large indices lose no accuracy.
    """
    ks = np.asarray(ks, dtype=np.int64)
    gs = np.asarray(gs, dtype=np.int64)
    adjg = gs @ pm.adj_np.T  # row j: adj(M) @ g_j
    max_t = int(np.abs(adjg).max(initial=0))
    max_k = int(np.abs(ks).max(initial=0))
    if (max_t + 1) * (max_k + 1) * pm.d >= _INT64_SAFE:
        res = np.empty((len(ks), len(gs)), dtype=np.int64)
        for i, k in enumerate(ks):
            for j in range(len(gs)):
                num = int(pm.sign) * int(sum(int(k[c]) * int(adjg[j][c]) for c in range(pm.d)))
                res[i, j] = num % pm.m
        return res
    num = pm.sign * (ks @ adjg.T)
    return num % pm.m
