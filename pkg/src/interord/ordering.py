"""Empirical stochastic-order checks with explicit uncertainty bands.

Three comparisons are offered, each returning a verdict object rather than a
bare boolean so that callers can inspect margins and band widths:

* :func:`check_st_order` — usual stochastic order via complementary CDFs on a
  shared grid, banded by the two-sample Dvoretzky–Kiefer–Wolfowitz bound.
* :func:`check_lt_order` — Laplace-transform order via bootstrap percentile
  bands for ``E[exp(-s X)]`` on a grid of transform arguments. Note the
  direction: the pointwise *larger* transform identifies the stochastically
  *smaller* variate.
* :func:`check_lf_order` — Laplace-functional order of two point processes,
  probed through a finite family of nonnegative radial test functions. Only
  finitely many probes are checked, so an ordered verdict is labeled
  probe-limited; it is evidence, not proof.

Verdict relations: ``LeftSmaller`` (first argument smaller in the order),
``RightSmaller``, ``Indistinguishable`` (bands overlap everywhere), and
``Crossing`` (significant exceedances in both directions).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import channel as _channel
from . import pointprocess as _pp
from .curves import (
    bonferroni_tail,
    bootstrap_laplace_band,
    bootstrap_paired_gap_band,
    dkw_halfwidth,
    empirical_ccdf,
)
from .engine import Scenario, simulate_interference
from .ioutil import atomic_write_text
from .pathloss import QUAD_EPSABS, QUAD_EPSREL, PathLoss, gain, unit_ball_volume

__all__ = [
    "LEFT_SMALLER",
    "RIGHT_SMALLER",
    "INDISTINGUISHABLE",
    "CROSSING",
    "OrderVerdict",
    "LfProbeFunction",
    "LfProbe",
    "LfVerdict",
    "default_s_grid",
    "default_x_grid",
    "check_st_order",
    "check_lt_order",
    "check_lf_order",
    "default_lf_probe",
    "ppp_singular_lt",
    "ppp_laplace_functional",
]

LEFT_SMALLER = "LeftSmaller"
RIGHT_SMALLER = "RightSmaller"
INDISTINGUISHABLE = "Indistinguishable"
CROSSING = "Crossing"

_MIN_SAMPLES = 1000
_MIN_BOOTSTRAP = 200


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of one two-sample order check on a fixed grid."""

    relation: str
    statistic: str
    confidence: float
    grid: np.ndarray
    margins: np.ndarray
    band_halfwidths: np.ndarray
    n_left: int
    n_right: int
    seeds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "statistic": self.statistic,
            "confidence": self.confidence,
            "grid": [float(v) for v in self.grid],
            "margins": [float(v) for v in self.margins],
            "band_halfwidths": [float(v) for v in self.band_halfwidths],
            "n_left": self.n_left,
            "n_right": self.n_right,
            "seeds": dict(self.seeds),
        }

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
        if path is not None:
            atomic_write_text(path, text)
        return text


def default_s_grid(n: int = 50) -> np.ndarray:
    """Transform-argument grid: log-spaced over [1e-2, 1e2]."""
    return np.logspace(-2.0, 2.0, n)


def default_x_grid(*sample_sets, n: int = 60) -> np.ndarray:
    """Threshold grid: log-spaced between the pooled 0.5 and 99.5 percentiles.

    Nonpositive pooled quantiles are clipped to the smallest positive sample
    (the grid must stay positive for log spacing); degenerate pools fall back
    to a one-decade bracket around the common value.
    """
    pooled = np.concatenate([np.asarray(s, dtype=float).ravel() for s in sample_sets])
    if pooled.size == 0:
        raise ValueError("need at least one sample to build a grid")
    finite = pooled[np.isfinite(pooled)]
    if finite.size == 0:
        raise ValueError("need at least one finite sample to build a grid")
    lo = float(np.quantile(finite, 0.005))
    hi = float(np.quantile(finite, 0.995))
    if lo <= 0.0:
        positive = finite[finite > 0]
        lo = float(positive.min()) if positive.size else 1e-12
    if hi <= lo:
        hi = lo
        lo, hi = lo / math.sqrt(10.0), hi * math.sqrt(10.0)
    return np.geomspace(lo, hi, n)


def _resolve_relation(evidence_left: bool, evidence_right: bool) -> str:
    if evidence_left and evidence_right:
        return CROSSING
    if evidence_left:
        return LEFT_SMALLER
    if evidence_right:
        return RIGHT_SMALLER
    return INDISTINGUISHABLE


def check_st_order(
    samples_x, samples_y, x_grid=None, confidence: float = 0.95
) -> OrderVerdict:
    """Usual stochastic order: compare complementary CDFs on a shared grid.

    The margin at each threshold is ccdf_x - ccdf_y; the band is the sum of
    the two one-sample DKW half-widths, which is simultaneous over the grid.
    ``LeftSmaller`` means the first sample's exceedance curve sits
    significantly below somewhere and never significantly above.
    """
    samples_x = np.asarray(samples_x, dtype=float).ravel()
    samples_y = np.asarray(samples_y, dtype=float).ravel()
    for name, s in (("first", samples_x), ("second", samples_y)):
        if s.size < _MIN_SAMPLES:
            raise ValueError(
                f"{name} sample set has {s.size} values; need >= {_MIN_SAMPLES} "
                "for the distribution-free band to be informative"
            )
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    if x_grid is None:
        x_grid = default_x_grid(samples_x, samples_y)
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid.ndim != 1 or x_grid.size == 0:
        raise ValueError("x_grid must be a nonempty 1-d array")
    if np.any(np.diff(x_grid) <= 0):
        raise ValueError("x_grid must be strictly increasing")

    ccdf_x = empirical_ccdf(samples_x, x_grid)
    ccdf_y = empirical_ccdf(samples_y, x_grid)
    margins = ccdf_x - ccdf_y
    band = dkw_halfwidth(samples_x.size, confidence) + dkw_halfwidth(
        samples_y.size, confidence
    )
    bands = np.full(x_grid.size, band)
    sig_below = bool(np.any(margins < -bands))
    sig_above = bool(np.any(margins > bands))
    relation = _resolve_relation(sig_below, sig_above)
    return OrderVerdict(
        relation=relation,
        statistic="ccdf",
        confidence=confidence,
        grid=x_grid,
        margins=margins,
        band_halfwidths=bands,
        n_left=samples_x.size,
        n_right=samples_y.size,
    )


def check_lt_order(
    samples_x,
    samples_y,
    s_grid=None,
    confidence: float = 0.95,
    n_bootstrap: int = 500,
    seed: int = 0,
    paired: bool = False,
) -> OrderVerdict:
    """Laplace-transform order via bootstrap percentile bands.

    Unpaired mode resamples each set independently and flags an argument s as
    significant when the two bands separate there. Paired mode (equal-length
    samples driven by common random numbers) bootstraps the per-replicate
    transform gap directly and flags s where the gap band excludes zero; the
    shared randomness cancels, so paired bands are much tighter.

    Direction: margins are L_x - L_y, and a significantly *positive* margin is
    evidence that the first variate is the smaller one.
    """
    samples_x = np.asarray(samples_x, dtype=float).ravel()
    samples_y = np.asarray(samples_y, dtype=float).ravel()
    for name, s in (("first", samples_x), ("second", samples_y)):
        if s.size < _MIN_SAMPLES:
            raise ValueError(
                f"{name} sample set has {s.size} values; need >= {_MIN_SAMPLES} "
                "for stable bootstrap bands"
            )
    if n_bootstrap < _MIN_BOOTSTRAP:
        raise ValueError(
            f"n_bootstrap must be >= {_MIN_BOOTSTRAP}, got {n_bootstrap}"
        )
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    if s_grid is None:
        s_grid = default_s_grid()
    s_grid = np.asarray(s_grid, dtype=float)

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    if paired:
        if samples_x.size != samples_y.size:
            raise ValueError(
                "paired mode needs equal-length sample sets (common random "
                f"numbers); got {samples_x.size} and {samples_y.size}"
            )
        margins, lo, hi = bootstrap_paired_gap_band(
            samples_x, samples_y, s_grid, n_bootstrap, confidence, rng
        )
        sig_pos = bool(np.any(lo > 0.0))
        sig_neg = bool(np.any(hi < 0.0))
        bands = (hi - lo) / 2.0
    else:
        values_x, lo_x, hi_x = bootstrap_laplace_band(
            samples_x, s_grid, n_bootstrap, confidence, rng
        )
        values_y, lo_y, hi_y = bootstrap_laplace_band(
            samples_y, s_grid, n_bootstrap, confidence, rng
        )
        margins = values_x - values_y
        sig_pos = bool(np.any(lo_x > hi_y))
        sig_neg = bool(np.any(hi_x < lo_y))
        bands = ((hi_x - lo_x) + (hi_y - lo_y)) / 2.0
    relation = _resolve_relation(sig_pos, sig_neg)
    return OrderVerdict(
        relation=relation,
        statistic="laplace_paired_gap" if paired else "laplace",
        confidence=confidence,
        grid=s_grid,
        margins=margins,
        band_halfwidths=bands,
        n_left=samples_x.size,
        n_right=samples_y.size,
        seeds={"bootstrap_seed": int(seed), "n_bootstrap": int(n_bootstrap)},
    )


@dataclass(frozen=True)
class LfProbeFunction:
    """One nonnegative radial test function: an attenuation profile with an
    optional independent nonnegative mark multiplying it."""

    label: str
    profile: PathLoss
    mark: object = None  # FadingModel or None for the pure profile

    def __post_init__(self):
        if not self.label:
            raise ValueError("probe label must be nonempty")


@dataclass(frozen=True)
class LfProbe:
    """A finite family of test functions plus the transform-argument grid."""

    functions: tuple
    s_grid: np.ndarray = field(default_factory=default_s_grid)

    def __post_init__(self):
        if not self.functions:
            raise ValueError("need at least one probe function")
        labels = [f.label for f in self.functions]
        if len(set(labels)) != len(labels):
            raise ValueError(f"probe labels must be distinct, got {labels}")


def default_lf_probe(d: int) -> LfProbe:
    """Default probe family: two pure attenuation profiles with different
    tail exponents plus one exponentially marked profile."""
    return LfProbe(
        functions=(
            LfProbeFunction("gain_exp4", PathLoss(a=1.0, b=1.0, delta=4.0, d=d)),
            LfProbeFunction("gain_exp6", PathLoss(a=1.0, b=1.0, delta=6.0, d=d)),
            LfProbeFunction(
                "rayleigh_gain_exp4",
                PathLoss(a=1.0, b=1.0, delta=4.0, d=d),
                _channel.RayleighPower(),
            ),
        )
    )


@dataclass(frozen=True)
class LfVerdict:
    """Aggregate over the probe family; always probe-limited."""

    relation: str
    confidence: float
    probes: tuple  # ((label, OrderVerdict), ...)
    n_replicates: int
    probe_limited: bool = True
    condition: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "confidence": self.confidence,
            "probe_limited": self.probe_limited,
            "n_replicates": self.n_replicates,
            "probes": {label: v.to_dict() for label, v in self.probes},
            "condition": dict(self.condition),
            "seeds": dict(self.seeds),
        }

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
        if path is not None:
            atomic_write_text(path, text)
        return text


def _mark_transform(mark, t: float) -> float:
    if mark is None:
        return math.exp(-t)
    return float(_channel.laplace_exact(mark, t))


def _finite_total_mass_condition(
    intensity: float, probe_fn: LfProbeFunction, window: _pp.Window, s_max: float
) -> float:
    """sup_s intensity * integral of (1 - E[exp(-s * mark * profile)]) over the
    window, the quantity whose finiteness licenses the bounded-support
    comparison. Increasing in s, so evaluated at the largest probe argument."""
    d = window.dimension
    surface = d * unit_ball_volume(d)

    def integrand(r: float) -> float:
        return (r ** (d - 1)) * (
            1.0 - _mark_transform(probe_fn.mark, s_max * gain(probe_fn.profile, r))
        )

    lo = window.guard_radius
    if probe_fn.profile.a == 0.0 and lo == 0.0:
        raise ValueError(
            "a singular probe profile needs a positive guard radius for the "
            "finite-mass condition"
        )
    val, _ = quad(
        integrand, lo, window.radius, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL, limit=200
    )
    return intensity * surface * val


def check_lf_order(
    spec_x: _pp.ProcessSpec,
    spec_y: _pp.ProcessSpec,
    window: _pp.Window,
    probe: LfProbe | None = None,
    n_replicates: int = 20000,
    seed: int = 0,
    confidence: float = 0.95,
    n_bootstrap: int = 500,
) -> LfVerdict:
    """Probe the functional order of two point processes on a shared window.

    For each test function u the engine simulates the shot-noise sum of
    u over realizations of each process and runs the transform-order check;
    the functional order holds between the processes iff every such sum is
    transform-ordered, so finitely many probes give a probe-limited verdict:
    ordered only if *every* probe agrees, ``Crossing`` if any probe crosses
    or two probes disagree on direction, ``Indistinguishable`` otherwise.

    Precondition: the mean intensities must match (the orderings under test
    compare equally dense processes; for the bounded-support pair the fixed
    count over the window volume plays that role). When one side has a fixed
    point count, the finite-total-mass condition value is computed by
    quadrature for each probe and reported in ``condition`` — reported, not
    assumed: with matched densities it cannot exceed the fixed count.
    """
    if n_replicates < _MIN_SAMPLES:
        raise ValueError(
            f"need >= {_MIN_SAMPLES} replicates per probe, got {n_replicates}"
        )
    lam_x = _pp.mean_intensity(spec_x, window.dimension)
    lam_y = _pp.mean_intensity(spec_y, window.dimension)
    scale = max(abs(lam_x), abs(lam_y), 1.0)
    if abs(lam_x - lam_y) > 1e-6 * scale:
        raise ValueError(
            "functional-order probes compare equally dense processes; got mean "
            f"intensities {lam_x!r} and {lam_y!r}"
        )
    if probe is None:
        probe = default_lf_probe(window.dimension)

    probes = []
    for i, fn in enumerate(probe.functions):
        samples = []
        for side, spec in enumerate((spec_x, spec_y)):
            scenario = Scenario(
                process=spec,
                window=window,
                interferer_fading=(
                    fn.mark if fn.mark is not None else _channel.Deterministic(1.0)
                ),
                pathloss=fn.profile,
                desired_fading=_channel.Deterministic(1.0),
            )
            samples.append(
                simulate_interference(
                    scenario, n_replicates, seed, salt=2 * i + side
                )
            )
        verdict = check_lt_order(
            samples[0],
            samples[1],
            probe.s_grid,
            confidence=confidence,
            n_bootstrap=n_bootstrap,
            seed=seed + 7919 * (i + 1),
        )
        probes.append((fn.label, verdict))

    relations = [v.relation for _, v in probes]
    has_left = LEFT_SMALLER in relations
    has_right = RIGHT_SMALLER in relations
    if CROSSING in relations or (has_left and has_right):
        relation = CROSSING
    elif all(r == LEFT_SMALLER for r in relations):
        relation = LEFT_SMALLER
    elif all(r == RIGHT_SMALLER for r in relations):
        relation = RIGHT_SMALLER
    else:
        relation = INDISTINGUISHABLE

    condition: dict = {}
    fixed_counts = [
        (name, spec)
        for name, spec in (("first", spec_x), ("second", spec_y))
        if isinstance(spec, _pp.Binomial)
    ]
    if len(fixed_counts) == 1:
        name, bpp = fixed_counts[0]
        s_max = float(np.max(probe.s_grid))
        per_probe = {
            fn.label: _finite_total_mass_condition(
                lam_x, fn, window, s_max
            )
            for fn in probe.functions
        }
        condition = {
            "fixed_count_side": name,
            "fixed_count": bpp.n_points,
            "evaluated_at_s": s_max,
            "finite_total_mass": per_probe,
            "bounded_by_fixed_count": bool(
                max(per_probe.values()) <= bpp.n_points
            ),
        }

    return LfVerdict(
        relation=relation,
        confidence=confidence,
        probes=tuple(probes),
        n_replicates=n_replicates,
        probe_limited=True,
        condition=condition,
        seeds={"seed": int(seed), "n_bootstrap": int(n_bootstrap)},
    )


def ppp_singular_lt(intensity: float, delta: float, d: int, frac_moment: float):
    """Closed-form interference transform for a stationary Poisson field under
    the unbounded power-law gain r**(-delta) observed from the origin.

    ``frac_moment`` is E[h**(d/delta)] for the per-point fading law. Returns a
    vectorized callable L(s) = exp(-intensity * v_d * frac_moment *
    Gamma(1 - d/delta) * s**(d/delta)), valid when 0 < d/delta < 1.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    if d not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {d}")
    alpha = d / delta
    if not 0.0 < alpha < 1.0:
        raise ValueError(
            f"tail index d/delta must lie in (0, 1); got {alpha} "
            f"(delta={delta}, d={d})"
        )
    if frac_moment <= 0 or not math.isfinite(frac_moment):
        raise ValueError(f"fractional moment must be positive finite, got {frac_moment}")
    coeff = intensity * unit_ball_volume(d) * frac_moment * math.gamma(1.0 - alpha)

    def transform(s):
        s_arr = np.asarray(s, dtype=float)
        if np.any(s_arr < 0):
            raise ValueError("transform argument must be >= 0")
        out = np.exp(-coeff * np.power(s_arr, alpha))
        return float(out) if np.isscalar(s) else out

    return transform


def ppp_laplace_functional(
    intensity: float,
    u,
    window: _pp.Window,
    u_breakpoints=None,
) -> float:
    """Laplace functional of a Poisson process on the window at a radial test
    function: exp(-intensity * integral of (1 - exp(-u(r))) over the window).

    ``u`` maps radius to a nonnegative value; pass ``u_breakpoints`` for
    discontinuous test functions so the quadrature splits there.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    d = window.dimension
    lo, hi = window.guard_radius, window.radius
    probe_r = np.linspace(lo if lo > 0 else hi * 1e-9, hi, 33)
    probe_u = np.asarray([float(u(r)) for r in probe_r])
    if np.any(~np.isfinite(probe_u)) or np.any(probe_u < 0):
        raise ValueError("test function must be finite and nonnegative on the window")
    surface = d * unit_ball_volume(d)

    def integrand(r: float) -> float:
        return (r ** (d - 1)) * (-math.expm1(-float(u(r))))

    points = None
    if u_breakpoints is not None:
        points = [float(p) for p in u_breakpoints if lo < p < hi]
        points = points or None
    val, _ = quad(
        integrand,
        lo,
        hi,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
        limit=200,
        points=points,
    )
    exponent = intensity * surface * val
    return math.exp(-exponent)
