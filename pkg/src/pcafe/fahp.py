"""Complementary fuzzy judgment matrices on the 0.1-0.9 scale.

Covers the fuzzy reciprocal matrix, its row-sum transform into an
additively consistent matrix, two weight derivations (row geometric mean
and the theta-linear formula), and consistency diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ahp import CR_THRESHOLD, ConsistencyReport, ri_lookup
from .errors import (
    DimensionMismatch,
    DuplicatePair,
    EmptyPanel,
    MissingPair,
    OutOfScale,
    ThetaTooSmall,
    TooSmall,
    ZeroEntry,
    ZeroWeight,
)

FUZZY_SCALE_MIN = 0.1
FUZZY_SCALE_MAX = 0.9
COMPLEMENT_TOL = 1e-9


@dataclass(frozen=True)
class FuzzyJudgmentMatrix:
    """Complementary matrix: a_ii = 0.5, a_ij + a_ji = 1, entries in [0, 1]."""

    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected square matrix, got {a.shape}")
        if a.shape[0] < 2:
            raise DimensionMismatch("fuzzy judgment matrix needs n >= 2")
        if np.any(a < 0) or np.any(a > 1):
            raise OutOfScale("matrix", float(a.min()), 0, 1)
        if not np.allclose(np.diag(a), 0.5, atol=COMPLEMENT_TOL, rtol=0):
            raise OutOfScale("diagonal", float(np.diag(a).max()), 0.5, 0.5)
        if not np.allclose(a + a.T, 1.0, atol=COMPLEMENT_TOL, rtol=0):
            raise OutOfScale("complementarity", float((a + a.T).max()), 1, 1)
        a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class FuzzyConsistencyMatrix:
    """Additively consistent complementary matrix plus source row sums."""

    values: np.ndarray
    row_sums: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", r)
        object.__setattr__(self, "row_sums", np.asarray(self.row_sums, dtype=float))
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise DimensionMismatch(f"expected square matrix, got {r.shape}")
        if not np.allclose(np.diag(r), 0.5, atol=1e-12, rtol=0):
            raise OutOfScale("diagonal", float(np.diag(r).max()), 0.5, 0.5)
        if not np.allclose(r + r.T, 1.0, atol=1e-12, rtol=0):
            raise OutOfScale("complementarity", float((r + r.T).max()), 1, 1)
        if _additive_residual(r) > 1e-12:
            raise OutOfScale("additive consistency", _additive_residual(r), 0, 0)
        r.setflags(write=False)
        self.row_sums.setflags(write=False)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class FuzzyConsistencyDiagnostics:
    """CR-style report plus the additive-consistency residual of the source."""

    report: ConsistencyReport
    additive_residual: float

    def to_dict(self) -> dict:
        d = self.report.to_dict()
        d["additive_residual"] = self.additive_residual
        return d


def build_fuzzy_matrix(
    n: int, upper_entries: list[tuple[int, int, float]]
) -> FuzzyJudgmentMatrix:
    """Build from 1-based upper-triangle entries; lower filled as 1 - a_ij."""
    a = np.full((n, n), 0.5)
    seen = set()
    for i, j, value in upper_entries:
        if not (1 <= i < j <= n):
            raise DimensionMismatch(f"bad pair ({i}, {j}) for n={n}; need 1 <= i < j <= n")
        if (i, j) in seen:
            raise DuplicatePair((i, j))
        seen.add((i, j))
        if not (
            FUZZY_SCALE_MIN - COMPLEMENT_TOL
            <= value
            <= FUZZY_SCALE_MAX + COMPLEMENT_TOL
        ):
            raise OutOfScale((i, j), value, FUZZY_SCALE_MIN, FUZZY_SCALE_MAX)
        a[i - 1, j - 1] = value
        a[j - 1, i - 1] = 1.0 - value
    missing = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (i, j) not in seen
    ]
    if missing:
        raise MissingPair(missing)
    return FuzzyJudgmentMatrix(a)


def to_consistency_matrix(a: FuzzyJudgmentMatrix) -> FuzzyConsistencyMatrix:
    """Row-sum transform r_ij = (r_i - r_j) / (2(n-1)) + 0.5."""
    n = a.n
    r = a.values.sum(axis=1)
    out = (r[:, None] - r[None, :]) / (2.0 * (n - 1)) + 0.5
    return FuzzyConsistencyMatrix(out, r)


def _additive_residual(values: np.ndarray) -> float:
    m = values
    t = m[:, :, None] - 0.5 - m[:, None, :] + m[None, :, :]
    return float(np.abs(t).max())


def additive_consistency_residual(m: FuzzyJudgmentMatrix) -> float:
    """max over (i,j,k) of |m_ij - (0.5 + m_ik - m_jk)|; 0 iff consistent."""
    return _additive_residual(m.values)


def weights_geometric_mean_fuzzy(r: FuzzyConsistencyMatrix) -> np.ndarray:
    """Normalized row geometric means of the consistency matrix."""
    if np.any(r.values <= 0):
        raise ZeroEntry()
    g = np.exp(np.mean(np.log(r.values), axis=1))
    return g / g.sum()


def min_theta(n: int) -> float:
    """Smallest theta keeping every linear weight nonnegative."""
    return (n - 1) / 2.0


def weights_linear(r: FuzzyConsistencyMatrix, theta: float) -> np.ndarray:
    """w_i = 1/n - 1/(2 theta) + (1/(n theta)) * sum_k r_ik.

    Requires theta >= (n-1)/2; smaller values produce negative weights
    (and theta = 0 divides by zero).
    """
    n = r.n
    lo = min_theta(n)
    if theta < lo - 1e-12:
        raise ThetaTooSmall(theta, lo)
    w = 1.0 / n - 1.0 / (2.0 * theta) + r.values.sum(axis=1) / (n * theta)
    # at theta == (n-1)/2 an extreme row can land at 0 minus float noise
    w[(w < 0) & (w > -1e-12)] = 0.0
    return w


def fuzzy_consistency_check(
    a: FuzzyJudgmentMatrix,
    w: np.ndarray,
    ri_table: dict[int, float] | None = None,
) -> FuzzyConsistencyDiagnostics:
    """CR computed from the raw fuzzy matrix and the given weights.

    The eigenvalue estimate on a [0,1]-valued matrix routinely lands below
    n, giving a negative CI/CR; the additive residual is the diagnostic
    that remains meaningful in that regime, so both are reported.
    """
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise ZeroWeight()
    n = a.n
    lam = float(np.mean((a.values @ w) / w))
    ri = ri_lookup(n, ri_table)
    if n <= 2:
        ci, cr = 0.0, 0.0
    else:
        ci = (lam - n) / (n - 1)
        cr = ci / ri
    report = ConsistencyReport(lam, ci, ri, cr, cr < CR_THRESHOLD)
    return FuzzyConsistencyDiagnostics(report, additive_consistency_residual(a))


def aggregate_expert_fuzzy(
    matrices: list[FuzzyJudgmentMatrix],
) -> FuzzyJudgmentMatrix:
    """Element-wise arithmetic mean; preserves complementarity exactly."""
    if not matrices:
        raise EmptyPanel()
    n = matrices[0].n
    if any(m.n != n for m in matrices):
        raise DimensionMismatch("panel matrices differ in dimension")
    mean = np.mean([m.values for m in matrices], axis=0)
    out = np.full((n, n), 0.5)
    iu = np.triu_indices(n, k=1)
    out[iu] = mean[iu]
    out[(iu[1], iu[0])] = 1.0 - mean[iu]
    return FuzzyJudgmentMatrix(out)


def most_inconsistent_triad_fuzzy(
    a: FuzzyJudgmentMatrix,
) -> tuple[int, int, int, float]:
    """Triad (i, j, k), 1-based, maximizing |a_ij - (0.5 + a_ik - a_jk)|."""
    n = a.n
    if n < 3:
        raise TooSmall(n)
    v = a.values
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k in (i, j):
                    continue
                dev = abs(v[i, j] - (0.5 + v[i, k] - v[j, k]))
                if best is None or dev > best[3] + 1e-15:
                    best = (i + 1, j + 1, k + 1, dev)
    return best
