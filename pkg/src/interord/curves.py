"""Empirical curve container plus the resampling machinery behind its bands.

An :class:`EmpiricalCurve` carries a sampled function (CDF, CCDF, or Laplace
transform) together with simultaneous confidence half-widths and the replicate
count that produced it. CDF-type curves get distribution-free
Dvoretzky-Kiefer-Wolfowitz bands; Laplace-transform curves get nonparametric
bootstrap percentile bands with Bonferroni correction across the grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ioutil import write_csv

__all__ = ["EmpiricalCurve", "dkw_halfwidth", "empirical_cdf", "empirical_ccdf"]


def dkw_halfwidth(n: int, confidence: float = 0.95) -> float:
    """Simultaneous DKW band half-width for an empirical CDF of ``n`` samples."""
    if n < 1:
        raise ValueError("need at least one sample for a DKW band")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0,1), got {confidence}")
    alpha = 1.0 - confidence
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


def empirical_cdf(samples: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """P(X <= x) evaluated on ``grid`` from a sample array."""
    s = np.sort(np.asarray(samples, dtype=float))
    return np.searchsorted(s, grid, side="right") / s.size


def empirical_ccdf(samples: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """P(X > x) evaluated on ``grid``."""
    return 1.0 - empirical_cdf(samples, grid)


@dataclass
class EmpiricalCurve:
    """A sampled function with simultaneous confidence half-widths.

    ``kind`` selects the shape checks: "cdf" curves must be non-decreasing with
    values in [0, 1]; "laplace" curves must be non-increasing and positive;
    "ccdf" non-increasing in [0, 1]. Use kind "curve" to skip shape checks.
    """

    abscissae: np.ndarray
    values: np.ndarray
    half_widths: np.ndarray
    n_replicates: int
    kind: str = "curve"

    def __post_init__(self):
        self.abscissae = np.asarray(self.abscissae, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        self.half_widths = np.asarray(self.half_widths, dtype=float)
        if not (
            self.abscissae.shape == self.values.shape == self.half_widths.shape
        ) or self.abscissae.ndim != 1:
            raise ValueError("abscissae, values, half_widths must be equal-length 1-d arrays")
        if self.abscissae.size == 0:
            raise ValueError("empty curve")
        if np.any(np.diff(self.abscissae) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        if np.any(self.half_widths < 0):
            raise ValueError("half_widths must be nonnegative")
        if self.n_replicates < 1:
            raise ValueError("n_replicates must be >= 1")
        if self.kind in ("cdf", "ccdf"):
            if np.any(self.values < -1e-12) or np.any(self.values > 1 + 1e-12):
                raise ValueError("probability curve values must lie in [0,1]")
        if self.kind == "cdf" and np.any(np.diff(self.values) < -1e-12):
            raise ValueError("CDF curve must be non-decreasing")
        if self.kind in ("ccdf", "laplace") and np.any(np.diff(self.values) > 1e-12):
            raise ValueError(f"{self.kind} curve must be non-increasing")
        if self.kind == "laplace" and np.any(self.values < 0):
            raise ValueError("Laplace-transform curve must be nonnegative")

    def to_csv(self, path, x_name: str = "x") -> None:
        """Write the curve in the artifact CSV dialect: x|s, value, half_width, n."""
        write_csv(
            path,
            (x_name, "value", "half_width", "n"),
            (
                (float(x), float(v), float(h), self.n_replicates)
                for x, v, h in zip(self.abscissae, self.values, self.half_widths)
            ),
        )


# ---------------------------------------------------------------------------
# Bootstrap machinery for empirical Laplace transforms
# ---------------------------------------------------------------------------

def laplace_point_estimate(samples: np.ndarray, s_grid: np.ndarray) -> np.ndarray:
    """Mean of exp(-s*x) over the sample for every s on the grid."""
    return _laplace_matrix(samples, s_grid).mean(axis=0)


def _laplace_matrix(samples: np.ndarray, s_grid: np.ndarray) -> np.ndarray:
    samples = np.asarray(samples, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    if samples.ndim != 1 or samples.size == 0:
        raise ValueError("samples must be a nonempty 1-d array")
    if np.any(samples < 0):
        raise ValueError("Laplace-transform samples must be nonnegative")
    if s_grid.ndim != 1 or np.any(s_grid <= 0):
        raise ValueError("s_grid must be strictly positive")
    return np.exp(-np.outer(samples, s_grid))


def _bootstrap_curves(matrix, n_bootstrap, rng, block=64):
    """Row-resampled mean curves: (n_bootstrap, n_grid) array.

    Resampling uses multinomial weights (counts of a uniform index resample)
    so each bootstrap mean is a BLAS matrix product instead of a gather.
    """
    n = matrix.shape[0]
    out = np.empty((n_bootstrap, matrix.shape[1]))
    weights = np.empty((min(block, n_bootstrap), n))
    done = 0
    while done < n_bootstrap:
        nb = min(block, n_bootstrap - done)
        for j in range(nb):
            idx = rng.integers(0, n, size=n)
            weights[j] = np.bincount(idx, minlength=n)
        np.matmul(weights[:nb], matrix, out=out[done : done + nb])
        done += nb
    out /= n
    return out


def bonferroni_tail(confidence: float, n_grid: int) -> float:
    """Per-tail quantile level giving simultaneous coverage across the grid."""
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0,1), got {confidence}")
    return (1.0 - confidence) / (2.0 * n_grid)


def bootstrap_laplace_band(
    samples: np.ndarray,
    s_grid: np.ndarray,
    n_bootstrap: int,
    confidence: float,
    rng: np.random.Generator,
):
    """Point estimate plus simultaneous percentile band for an empirical LT.

    Returns ``(values, lower, upper)`` where the band is the per-point
    bootstrap percentile interval at Bonferroni-corrected levels.
    """
    matrix = _laplace_matrix(samples, s_grid)
    values = matrix.mean(axis=0)
    boots = _bootstrap_curves(matrix, n_bootstrap, rng)
    tail = bonferroni_tail(confidence, len(s_grid))
    lower = np.quantile(boots, tail, axis=0)
    upper = np.quantile(boots, 1.0 - tail, axis=0)
    return values, lower, upper


def bootstrap_paired_gap_band(
    samples_x: np.ndarray,
    samples_y: np.ndarray,
    s_grid: np.ndarray,
    n_bootstrap: int,
    confidence: float,
    rng: np.random.Generator,
):
    """Simultaneous percentile band for L_X - L_Y under paired replicates.

    Requires equal-length samples that were produced under common random
    numbers; replicate indices are resampled jointly so the band reflects the
    coupled gap's variance.
    """
    x = np.asarray(samples_x, dtype=float)
    y = np.asarray(samples_y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("paired comparison requires equal-length sample sets")
    gaps = _laplace_matrix(x, s_grid) - _laplace_matrix(y, s_grid)
    values = gaps.mean(axis=0)
    boots = _bootstrap_curves(gaps, n_bootstrap, rng)
    tail = bonferroni_tail(confidence, len(s_grid))
    lower = np.quantile(boots, tail, axis=0)
    upper = np.quantile(boots, 1.0 - tail, axis=0)
    return values, lower, upper
