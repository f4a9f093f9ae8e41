"""Point-process samplers on disc/ball observation windows.

Four generative models are provided: homogeneous Poisson, Neyman-Scott
clusters (Gaussian or uniform-disk dispersion), mixed Poisson (intensity drawn
once per realization), and a binomial process with a fixed point count.
All draw radial coordinates by closed-form CDF inversion with uniform angles
— never rejection — so a fixed generator state always produces the same
pattern at the same cost, bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .ioutil import atomic_write_text, fmt_float

__all__ = [
    "Window",
    "PointPattern",
    "Poisson",
    "GaussianDispersion",
    "UniformDiskDispersion",
    "NeymanScott",
    "DiscreteIntensityLaw",
    "GammaIntensityLaw",
    "MixedPoisson",
    "Binomial",
    "ProcessSpec",
    "sample_ppp",
    "sample_neyman_scott",
    "sample_mixed_poisson",
    "sample_binomial",
    "sample",
    "superpose",
    "pattern_to_csv",
    "mean_intensity",
]


def _unit_ball_volume(d: int) -> float:
    # local copy to avoid an import cycle with the attenuation module
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


@dataclass(frozen=True)
class Window:
    """Annular observation region: guard_radius <= ||x|| <= radius in R^d."""

    dimension: int
    radius: float
    guard_radius: float = 0.0

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.dimension}")
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")
        if self.guard_radius < 0:
            raise ValueError(f"guard_radius must be >= 0, got {self.guard_radius}")
        if self.guard_radius >= self.radius:
            raise ValueError(
                f"guard_radius {self.guard_radius} leaves an empty window "
                f"(radius {self.radius})"
            )

    @property
    def volume(self) -> float:
        d = self.dimension
        return _unit_ball_volume(d) * (self.radius**d - self.guard_radius**d)


@dataclass
class PointPattern:
    """One realization: an (n, d) coordinate array inside a window."""

    points: np.ndarray
    window: Window
    process_label: str
    n_zero_redraws: int = 0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.size == 0:
            pts = pts.reshape(0, self.window.dimension)
        if pts.ndim != 2 or pts.shape[1] != self.window.dimension:
            raise ValueError(
                f"points must be (n, {self.window.dimension}), got {pts.shape}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        norms = np.sqrt((pts * pts).sum(axis=1))
        tol = 1e-9 * max(1.0, self.window.radius)
        if np.any(norms > self.window.radius + tol) or np.any(
            norms < self.window.guard_radius - tol
        ):
            raise ValueError("points fall outside the window annulus")
        self.points = pts

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def radii(self) -> np.ndarray:
        return np.sqrt((self.points * self.points).sum(axis=1))


# ---------------------------------------------------------------------------
# Process specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Poisson:
    """Homogeneous Poisson process with the given intensity (points/volume)."""

    intensity: float

    def __post_init__(self):
        if not self.intensity > 0:
            raise ValueError(f"intensity must be > 0, got {self.intensity}")

    label = "poisson"


@dataclass(frozen=True)
class GaussianDispersion:
    """Isotropic Gaussian daughter displacement with per-axis std sigma."""

    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")

    # parent sampling window extension: 6 sigma keeps the probability of
    # losing a boundary daughter below ~1e-8 per parent
    @property
    def parent_extension(self) -> float:
        return 6.0 * self.sigma


@dataclass(frozen=True)
class UniformDiskDispersion:
    """Daughter displaced uniformly in a ball of radius rho around its parent."""

    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError(f"rho must be > 0, got {self.rho}")

    @property
    def parent_extension(self) -> float:
        return self.rho


@dataclass(frozen=True)
class NeymanScott:
    """Poisson cluster process: unseen Poisson parents, Poisson daughter counts."""

    parent_intensity: float
    mean_daughters: float
    dispersion: Union[GaussianDispersion, UniformDiskDispersion]

    def __post_init__(self):
        if not self.parent_intensity > 0:
            raise ValueError(
                f"parent_intensity must be > 0, got {self.parent_intensity}"
            )
        if not self.mean_daughters > 0:
            raise ValueError(f"mean_daughters must be > 0, got {self.mean_daughters}")
        if not isinstance(self.dispersion, (GaussianDispersion, UniformDiskDispersion)):
            raise ValueError("dispersion must be Gaussian or uniform-disk")

    label = "neyman_scott"

    @property
    def effective_intensity(self) -> float:
        return self.parent_intensity * self.mean_daughters


@dataclass(frozen=True)
class DiscreteIntensityLaw:
    """Finite mixture of intensity values: ((value, probability), ...)."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((float(v), float(p)) for v, p in self.atoms)
        if not atoms:
            raise ValueError("mixture needs at least one atom")
        if any(v < 0 for v, _ in atoms):
            raise ValueError("intensity values must be nonnegative")
        if any(p < 0 for _, p in atoms):
            raise ValueError("mixture weights must be nonnegative")
        total = sum(p for _, p in atoms)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"mixture weights must sum to 1, got {total}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def mean(self) -> float:
        return sum(v * p for v, p in self.atoms)

    def draw(self, rng: np.random.Generator) -> float:
        u = rng.random()
        acc = 0.0
        for value, prob in self.atoms:
            acc += prob
            if u < acc:
                return value
        return self.atoms[-1][0]


@dataclass(frozen=True)
class GammaIntensityLaw:
    """Gamma-distributed intensity with the usual shape/scale parameters."""

    shape: float
    scale: float

    def __post_init__(self):
        if not self.shape > 0 or not self.scale > 0:
            raise ValueError("shape and scale must be > 0")

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    def draw(self, rng: np.random.Generator) -> float:
        return float(rng.gamma(self.shape, self.scale))


@dataclass(frozen=True)
class MixedPoisson:
    """Poisson process whose intensity is redrawn from a law per realization."""

    intensity_law: Union[DiscreteIntensityLaw, GammaIntensityLaw]

    def __post_init__(self):
        if not isinstance(
            self.intensity_law, (DiscreteIntensityLaw, GammaIntensityLaw)
        ):
            raise ValueError("intensity_law must be a discrete mixture or Gamma law")

    label = "mixed_poisson"

    @property
    def mean_intensity(self) -> float:
        return self.intensity_law.mean


@dataclass(frozen=True)
class Binomial:
    """Exactly n_points i.i.d. uniform points on B_0(radius) minus the guard disk."""

    n_points: int
    radius: float

    def __post_init__(self):
        if not (isinstance(self.n_points, (int, np.integer)) and self.n_points >= 1):
            raise ValueError(f"n_points must be a positive integer, got {self.n_points}")
        if not self.radius > 0:
            raise ValueError(f"radius must be > 0, got {self.radius}")

    label = "binomial"

    def density(self, d: int) -> float:
        return self.n_points / (_unit_ball_volume(d) * self.radius**d)


ProcessSpec = Union[Poisson, NeymanScott, MixedPoisson, Binomial]


def mean_intensity(spec: ProcessSpec, d: int) -> float:
    """Mean points per unit volume for any process specification."""
    if isinstance(spec, Poisson):
        return spec.intensity
    if isinstance(spec, NeymanScott):
        return spec.effective_intensity
    if isinstance(spec, MixedPoisson):
        return spec.mean_intensity
    if isinstance(spec, Binomial):
        return spec.density(d)
    raise TypeError(f"not a process spec: {spec!r}")


# ---------------------------------------------------------------------------
# Radial inversion sampling
# ---------------------------------------------------------------------------

def _radii_by_inversion(rng, n, d, inner, outer):
    """n radii with density proportional to r^(d-1) on [inner, outer].

    Inverse-CDF transform of uniform draws; an exact floating-point zero
    (possible only when inner == 0 and the uniform draw is exactly 0) is
    redrawn so downstream singular attenuation never sees r = 0. Returns
    (radii, redraw_count).
    """
    lo = inner**d
    span = outer**d - lo
    u = rng.random(n)
    r = _d_root(lo + u * span, d)
    redraws = 0
    while True:
        zero = r == 0.0
        k = int(zero.sum())
        if k == 0:
            break
        redraws += k
        r[zero] = _d_root(lo + rng.random(k) * span, d)
    return r, redraws


def _d_root(x, d):
    return np.sqrt(x) if d == 2 else np.cbrt(x)


def _directions(rng, n, d):
    """n i.i.d. uniform unit vectors in R^d (inversion, no rejection)."""
    if d == 2:
        theta = rng.random(n) * (2.0 * math.pi)
        return np.column_stack((np.cos(theta), np.sin(theta)))
    cos_pol = 1.0 - 2.0 * rng.random(n)
    sin_pol = np.sqrt(np.maximum(0.0, 1.0 - cos_pol * cos_pol))
    phi = rng.random(n) * (2.0 * math.pi)
    return np.column_stack(
        (sin_pol * np.cos(phi), sin_pol * np.sin(phi), cos_pol)
    )


def _uniform_annulus(rng, n, window_or_bounds, d):
    inner, outer = window_or_bounds
    r, redraws = _radii_by_inversion(rng, n, d, inner, outer)
    return r[:, None] * _directions(rng, n, d), redraws


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------

def sample_ppp(
    intensity: float, window: Window, rng: np.random.Generator, label: str = "poisson"
) -> PointPattern:
    """One homogeneous Poisson realization on the window annulus."""
    if not intensity > 0:
        raise ValueError(f"intensity must be > 0, got {intensity}")
    return _sample_ppp_any(intensity, window, rng, label)


def _sample_ppp_any(intensity, window, rng, label):
    # internal variant that tolerates intensity 0 (a mixed draw can be 0)
    d = window.dimension
    n = int(rng.poisson(intensity * window.volume))
    pts, redraws = _uniform_annulus(
        rng, n, (window.guard_radius, window.radius), d
    )
    return PointPattern(pts, window, label, n_zero_redraws=redraws)


def sample_neyman_scott(
    spec: NeymanScott, window: Window, rng: np.random.Generator
) -> PointPattern:
    """One Poisson-cluster realization; parents are sampled on an extended
    ball so boundary clusters contribute, then discarded."""
    d = window.dimension
    ext_radius = window.radius + spec.dispersion.parent_extension
    n_parents = int(
        rng.poisson(spec.parent_intensity * _unit_ball_volume(d) * ext_radius**d)
    )
    parents, _ = _uniform_annulus(rng, n_parents, (0.0, ext_radius), d)
    counts = rng.poisson(spec.mean_daughters, size=n_parents)
    total = int(counts.sum())
    centers = np.repeat(parents, counts, axis=0)
    if isinstance(spec.dispersion, GaussianDispersion):
        offsets = spec.dispersion.sigma * rng.standard_normal((total, d))
        redraws = 0
    else:
        offsets, redraws = _uniform_annulus(
            rng, total, (0.0, spec.dispersion.rho), d
        )
    daughters = centers + offsets
    norms = np.sqrt((daughters * daughters).sum(axis=1))
    keep = (norms >= window.guard_radius) & (norms <= window.radius)
    return PointPattern(
        daughters[keep], window, "neyman_scott", n_zero_redraws=redraws
    )


def sample_mixed_poisson(
    spec: MixedPoisson, window: Window, rng: np.random.Generator
) -> PointPattern:
    """Draw an intensity from the law, then sample that Poisson process."""
    x = spec.intensity_law.draw(rng)
    if x < 0:
        raise ValueError(f"intensity law produced a negative value: {x}")
    return _sample_ppp_any(x, window, rng, "mixed_poisson")


def sample_binomial(
    n_points: int, radius: float, window: Window, rng: np.random.Generator
) -> PointPattern:
    """Exactly n_points uniform points on B_0(radius) minus the guard disk."""
    spec = Binomial(n_points, radius)
    if spec.radius > window.radius:
        raise ValueError(
            f"binomial radius {radius} exceeds window radius {window.radius}"
        )
    if spec.radius <= window.guard_radius:
        raise ValueError(
            f"binomial radius {radius} lies inside the guard disk "
            f"({window.guard_radius})"
        )
    pts, redraws = _uniform_annulus(
        rng, spec.n_points, (window.guard_radius, spec.radius), window.dimension
    )
    return PointPattern(pts, window, "binomial", n_zero_redraws=redraws)


def sample(spec: ProcessSpec, window: Window, rng: np.random.Generator) -> PointPattern:
    """Dispatch to the sampler matching the specification type."""
    if isinstance(spec, Poisson):
        return sample_ppp(spec.intensity, window, rng)
    if isinstance(spec, NeymanScott):
        return sample_neyman_scott(spec, window, rng)
    if isinstance(spec, MixedPoisson):
        return sample_mixed_poisson(spec, window, rng)
    if isinstance(spec, Binomial):
        return sample_binomial(spec.n_points, spec.radius, window, rng)
    raise TypeError(f"not a process spec: {spec!r}")


def interference_radii(
    spec: ProcessSpec, window: Window, rng: np.random.Generator
):
    """Distances-to-origin of one realization, skipping angle draws when the
    pattern's law is isotropic and only ||x|| matters downstream.

    Cluster processes still need full coordinates (daughter distance depends
    on the parent location), so they fall back to the full sampler. Returns
    (radii, redraw_count). Stream consumption differs from :func:`sample`; the
    two entry points are separately deterministic.
    """
    d = window.dimension
    if isinstance(spec, Poisson):
        n = int(rng.poisson(spec.intensity * window.volume))
        return _radii_by_inversion(rng, n, d, window.guard_radius, window.radius)
    if isinstance(spec, MixedPoisson):
        x = spec.intensity_law.draw(rng)
        n = int(rng.poisson(x * window.volume))
        return _radii_by_inversion(rng, n, d, window.guard_radius, window.radius)
    if isinstance(spec, Binomial):
        if spec.radius > window.radius or spec.radius <= window.guard_radius:
            raise ValueError("binomial radius incompatible with window")
        return _radii_by_inversion(
            rng, spec.n_points, d, window.guard_radius, spec.radius
        )
    if isinstance(spec, NeymanScott):
        pattern = sample_neyman_scott(spec, window, rng)
        return pattern.radii, pattern.n_zero_redraws
    raise TypeError(f"not a process spec: {spec!r}")


def superpose(*patterns: PointPattern) -> PointPattern:
    """Union of realizations over one common window."""
    if not patterns:
        raise ValueError("superpose needs at least one pattern")
    window = patterns[0].window
    for p in patterns[1:]:
        if p.window != window:
            raise ValueError("superpose requires identical windows")
    pts = np.concatenate([p.points for p in patterns], axis=0)
    label = "+".join(p.process_label for p in patterns)
    redraws = sum(p.n_zero_redraws for p in patterns)
    return PointPattern(pts, window, f"superposition({label})", n_zero_redraws=redraws)


def pattern_to_csv(pattern: PointPattern, path, seed=None) -> None:
    """Dump one row per point (columns x1..xd); the header comment carries the
    generating process label and the seed that produced the pattern."""
    d = pattern.window.dimension
    lines = [f"# process_label={pattern.process_label},seed={seed}"]
    lines.append(",".join(f"x{i + 1}" for i in range(d)))
    for row in pattern.points:
        lines.append(",".join(fmt_float(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
