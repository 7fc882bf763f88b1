"""Crisp pairwise-comparison matrices: priority weights and consistency."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicatePair,
    EmptyPanel,
    MissingPair,
    NoRIAvailable,
    OutOfScale,
    TooSmall,
    ZeroWeight,
)

SCALE_MIN = 1.0 / 9.0
SCALE_MAX = 9.0
RECIPROCITY_TOL = 1e-9
CR_THRESHOLD = 0.1

# Random consistency index by matrix order, n = 1..11.
RI_TABLE = {
    1: 0.0,
    2: 0.0,
    3: 0.58,
    4: 0.9,
    5: 1.12,
    6: 1.24,
    7: 1.32,
    8: 1.41,
    9: 1.45,
    10: 1.49,
    11: 1.51,
}


@dataclass(frozen=True)
class JudgmentMatrix:
    """Positive reciprocal matrix: a_ii = 1, a_ij * a_ji = 1."""

    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"expected square matrix, got {a.shape}")
        if a.shape[0] < 2:
            raise DimensionMismatch("judgment matrix needs n >= 2")
        if not np.all(a > 0):
            raise OutOfScale("matrix", float(a.min()), 0, math.inf)
        if not np.allclose(np.diag(a), 1.0, atol=RECIPROCITY_TOL, rtol=0):
            raise OutOfScale("diagonal", float(np.diag(a).max()), 1, 1)
        if not np.allclose(a * a.T, 1.0, atol=RECIPROCITY_TOL, rtol=0):
            raise OutOfScale("reciprocity", float((a * a.T).max()), 1, 1)
        a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "ri": self.ri,
            "cr": self.cr,
            "consistent": self.consistent,
        }


def build_judgment_matrix(
    n: int, upper_entries: list[tuple[int, int, float]]
) -> JudgmentMatrix:
    """Build a reciprocal matrix from 1-based upper-triangle entries (i < j)."""
    a = np.eye(n)
    seen = set()
    for i, j, value in upper_entries:
        if not (1 <= i < j <= n):
            raise DimensionMismatch(f"bad pair ({i}, {j}) for n={n}; need 1 <= i < j <= n")
        if (i, j) in seen:
            raise DuplicatePair((i, j))
        seen.add((i, j))
        if not (SCALE_MIN - RECIPROCITY_TOL <= value <= SCALE_MAX + RECIPROCITY_TOL):
            raise OutOfScale((i, j), value, SCALE_MIN, SCALE_MAX)
        a[i - 1, j - 1] = value
        a[j - 1, i - 1] = 1.0 / value
    missing = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (i, j) not in seen
    ]
    if missing:
        raise MissingPair(missing)
    return JudgmentMatrix(a)


def weights_geometric_mean(a: JudgmentMatrix) -> np.ndarray:
    """Normalized row geometric means."""
    g = np.exp(np.mean(np.log(a.values), axis=1))
    return g / g.sum()


def lambda_max(a: JudgmentMatrix, w: np.ndarray) -> float:
    """Averaged Rayleigh estimate (1/n) * sum_i (Aw)_i / w_i."""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise ZeroWeight()
    return float(np.mean((a.values @ w) / w))


def ri_lookup(n: int, custom: dict[int, float] | None = None) -> float:
    """Random consistency index for order n; custom entries extend/override."""
    if custom and n in custom:
        return float(custom[n])
    if n in RI_TABLE:
        return RI_TABLE[n]
    raise NoRIAvailable(n)


def consistency(
    a: JudgmentMatrix, ri_table: dict[int, float] | None = None
) -> ConsistencyReport:
    """Full CR diagnostic. CR is defined as 0 for n <= 2."""
    n = a.n
    w = weights_geometric_mean(a)
    lam = lambda_max(a, w)
    ri = ri_lookup(n, ri_table)
    if n <= 2:
        ci, cr = 0.0, 0.0
    else:
        ci = (lam - n) / (n - 1)
        cr = ci / ri
    return ConsistencyReport(lam, ci, ri, cr, cr < CR_THRESHOLD)


def aggregate_expert_matrices(matrices: list[JudgmentMatrix]) -> JudgmentMatrix:
    """Element-wise geometric mean of a panel; preserves reciprocity."""
    if not matrices:
        raise EmptyPanel()
    n = matrices[0].n
    if any(m.n != n for m in matrices):
        raise DimensionMismatch("panel matrices differ in dimension")
    g = np.exp(np.mean(np.log([m.values for m in matrices]), axis=0))
    # rebuild lower triangle from upper to kill float drift in reciprocity
    out = np.eye(n)
    iu = np.triu_indices(n, k=1)
    out[iu] = g[iu]
    out[(iu[1], iu[0])] = 1.0 / g[iu]
    return JudgmentMatrix(out)


def most_inconsistent_triad(a: JudgmentMatrix) -> tuple[int, int, int, float]:
    """Triad (i, j, k), 1-based, maximizing |log a_ij - log(a_ik a_kj)|."""
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
                dev = abs(math.log(v[i, j]) - math.log(v[i, k] * v[k, j]))
                key = (i + 1, j + 1, k + 1)
                if best is None or dev > best[3] + 1e-15:
                    best = (*key, dev)
    return best
