"""Distance attenuation family g(r) = 1/(a + b*r^delta) and its mean integrals.

The family covers the singular (a=0) and bounded (a=1) attenuation laws. The
module also provides the scale factor that equalizes mean received power
between two exponents, and the analytic mean of shot-noise aggregates over a
homogeneous Poisson field (closed form on all of R^d for a=1, adaptive
quadrature on annular windows).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gamma as _gamma

from .pointprocess import Window

__all__ = [
    "PathLoss",
    "gain",
    "compensation_b",
    "campbell_mean",
    "campbell_mean_closed_form",
    "unit_ball_volume",
]

# Quadrature tolerances: these integrals serve as oracles for Monte Carlo
# estimates, so they must be far tighter than any statistical band.
QUAD_EPSABS = 1e-10
QUAD_EPSREL = 1e-8


def unit_ball_volume(d: int) -> float:
    """Volume of the unit ball in d dimensions (pi for d=2, 4*pi/3 for d=3)."""
    if d not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {d}")
    return math.pi ** (d / 2.0) / _gamma(d / 2.0 + 1.0)


@dataclass(frozen=True)
class PathLoss:
    """Attenuation parameters: power gain at distance r is 1/(a + b*r^delta).

    ``a`` is 0 (singular at the origin) or 1 (bounded); ``b`` > 0 scales the
    distance term; ``delta`` is the decay exponent and must exceed the spatial
    dimension ``d`` for aggregate power over a homogeneous field to be finite.
    """

    a: int
    b: float
    delta: float
    d: int

    def __post_init__(self):
        if self.a not in (0, 1):
            raise ValueError(f"a must be 0 or 1, got {self.a}")
        if not self.b > 0:
            raise ValueError(f"b must be > 0, got {self.b}")
        if self.d not in (2, 3):
            raise ValueError(f"d must be 2 or 3, got {self.d}")
        if not self.delta > self.d:
            raise ValueError(
                f"decay exponent delta={self.delta} must exceed dimension d={self.d}"
            )


def _rpow(r: np.ndarray, delta: float) -> np.ndarray:
    """r**delta with cheap chained-multiply paths for the common even exponents."""
    if delta == 2.0:
        return r * r
    if delta == 4.0:
        r2 = r * r
        return r2 * r2
    if delta == 6.0:
        r2 = r * r
        return r2 * r2 * r2
    if delta == 8.0:
        r2 = r * r
        r4 = r2 * r2
        return r4 * r4
    return np.power(r, delta)


def gain(pl: PathLoss, r):
    """Power gain 1/(a + b*r^delta); vectorized over ``r``.

    Rejects r=0 under the singular model (a=0), where the gain diverges.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr < 0):
        raise ValueError("distances must be nonnegative")
    if pl.a == 0 and np.any(arr == 0.0):
        raise ValueError("gain is singular at r=0 when a=0")
    out = 1.0 / (pl.a + pl.b * _rpow(arr, pl.delta))
    if np.isscalar(r) or arr.ndim == 0:
        return float(out)
    return out


def compensation_b(delta1: float, delta2: float, d: int) -> float:
    """Scale factor b making exponent delta2 carry the same mean power as delta1.

    b = [(delta2*G(1-d/delta1)*G(d/delta1)) / (delta1*G(1-d/delta2)*G(d/delta2))]^(-delta2/d)

    with G the gamma function; b <= 1 whenever delta1 <= delta2.
    """
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    for delta in (delta1, delta2):
        if not delta > d:
            raise ValueError(
                f"decay exponent {delta} must exceed dimension {d} "
                "(gamma arguments leave their domain otherwise)"
            )
    num = delta2 * _gamma(1.0 - d / delta1) * _gamma(d / delta1)
    den = delta1 * _gamma(1.0 - d / delta2) * _gamma(d / delta2)
    return float((num / den) ** (-delta2 / d))


def campbell_mean_closed_form(intensity: float, mean_power: float, pl: PathLoss) -> float:
    """Mean aggregate power over all of R^d for the bounded (a=1) model.

    intensity * mean_power * (d*c_d/delta) * b^(-d/delta) * G(d/delta) * G(1-d/delta).
    """
    _validate_campbell_args(intensity, mean_power)
    if pl.a != 1:
        raise ValueError("closed form exists only for the bounded model (a=1)")
    if intensity == 0.0:
        return 0.0
    d = pl.d
    alpha = d / pl.delta
    surface = d * unit_ball_volume(d)
    return (
        intensity
        * mean_power
        * (surface / pl.delta)
        * pl.b ** (-alpha)
        * _gamma(alpha)
        * _gamma(1.0 - alpha)
    )


def campbell_mean(
    intensity: float,
    mean_power: float,
    pl: PathLoss,
    window: Window | None = None,
) -> float:
    """Mean aggregate power of a homogeneous Poisson field through ``pl``.

    With ``window=None`` the integral runs over all of R^d (bounded model
    only; the singular model has no finite mean there). With an annular
    window it runs over [guard_radius, R] by adaptive quadrature.
    """
    _validate_campbell_args(intensity, mean_power)
    if intensity == 0.0 or mean_power == 0.0:
        return 0.0
    d = pl.d
    surface = d * unit_ball_volume(d)

    def integrand(r):
        return r ** (d - 1) / (pl.a + pl.b * r**pl.delta)

    if window is None:
        if pl.a == 0:
            raise ValueError(
                "mean aggregate power diverges for the singular model over R^d"
            )
        integral, _ = integrate.quad(
            integrand, 0.0, np.inf, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=200
        )
    else:
        if pl.d != window.dimension:
            raise ValueError(
                f"path-loss dimension {pl.d} != window dimension {window.dimension}"
            )
        if pl.a == 0 and window.guard_radius == 0.0:
            raise ValueError(
                "mean aggregate power diverges at the origin for the singular "
                "model without a guard radius"
            )
        integral, _ = integrate.quad(
            integrand,
            window.guard_radius,
            window.radius,
            epsabs=QUAD_EPSABS,
            epsrel=QUAD_EPSREL,
            limit=200,
        )
    return intensity * mean_power * surface * integral


def _validate_campbell_args(intensity: float, mean_power: float) -> None:
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    if mean_power < 0:
        raise ValueError(f"mean_power must be >= 0, got {mean_power}")
