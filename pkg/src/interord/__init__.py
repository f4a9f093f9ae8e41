"""interord: interference simulation and empirical stochastic-order checks.

The library simulates aggregate interference observed at the origin of a
spatial point process of transmitters, under parametric per-point fading and
distance attenuation, and checks distributional orderings (usual stochastic
order, Laplace-transform order, and the Laplace-functional order of point
processes) empirically against closed-form oracles where those exist.

Layers, bottom up:

* :mod:`interord.pointprocess` — windows, point-pattern containers, samplers
  for Poisson, clustered (Neyman-Scott), mixed-Poisson, and fixed-count
  processes, plus superposition.
* :mod:`interord.channel` — fading power laws, their exact transforms, and
  empirical transforms with bootstrap bands.
* :mod:`interord.pathloss` — the two-parameter attenuation family, the
  tail-compensation map between exponents, and mean interference by
  quadrature and closed form.
* :mod:`interord.engine` — seeded replicate simulation (serial == parallel),
  SIR/SINR/capacity tables, outage curves.
* :mod:`interord.ordering` — order checks returning verdict objects with
  margins and simultaneous bands.
* :mod:`interord.config` / :mod:`interord.experiments` — declarative
  experiment configs, builtins, and the artifact-writing runner.
* :mod:`interord.cli` — the ``interord`` command.
"""

from ._version import __version__
from .channel import (
    Composite,
    Deterministic,
    FadingModel,
    LognormalShadow,
    NakagamiPower,
    RayleighPower,
    RiceanPower,
    fractional_moment,
    fractional_moment_nakagami,
    laplace_empirical,
    laplace_exact,
    laplace_nakagami,
    laplace_ricean,
    mean_power,
    ricean_pdf,
    sample_power,
)
from .config import ConfigError, ExperimentConfig, load_config, parse_config
from .curves import EmpiricalCurve, dkw_halfwidth, empirical_ccdf, empirical_cdf
from .engine import (
    ReplicateResult,
    ReplicateTable,
    Scenario,
    ergodic_capacity,
    laplace_with_noise,
    outage_curve,
    replicate_stream,
    simulate_interference,
    simulate_replicates,
)
from .experiments import (
    BUILTINS,
    RunResult,
    builtin_names,
    get_builtin,
    resolve_output_root,
    run_experiment,
)
from .ordering import (
    CROSSING,
    INDISTINGUISHABLE,
    LEFT_SMALLER,
    RIGHT_SMALLER,
    LfProbe,
    LfProbeFunction,
    LfVerdict,
    OrderVerdict,
    check_lf_order,
    check_lt_order,
    check_st_order,
    default_lf_probe,
    default_s_grid,
    default_x_grid,
    ppp_laplace_functional,
    ppp_singular_lt,
)
from .pathloss import (
    PathLoss,
    campbell_mean,
    campbell_mean_closed_form,
    compensation_b,
    gain,
    unit_ball_volume,
)
from .pointprocess import (
    Binomial,
    DiscreteIntensityLaw,
    GammaIntensityLaw,
    GaussianDispersion,
    MixedPoisson,
    NeymanScott,
    PointPattern,
    Poisson,
    ProcessSpec,
    UniformDiskDispersion,
    Window,
    interference_radii,
    mean_intensity,
    pattern_to_csv,
    sample,
    sample_binomial,
    sample_mixed_poisson,
    sample_neyman_scott,
    sample_ppp,
    superpose,
)

__all__ = [
    "__version__",
    # point processes
    "Window",
    "PointPattern",
    "Poisson",
    "NeymanScott",
    "GaussianDispersion",
    "UniformDiskDispersion",
    "MixedPoisson",
    "DiscreteIntensityLaw",
    "GammaIntensityLaw",
    "Binomial",
    "ProcessSpec",
    "sample",
    "sample_ppp",
    "sample_neyman_scott",
    "sample_mixed_poisson",
    "sample_binomial",
    "superpose",
    "mean_intensity",
    "interference_radii",
    "pattern_to_csv",
    # channel
    "Deterministic",
    "RayleighPower",
    "NakagamiPower",
    "RiceanPower",
    "LognormalShadow",
    "Composite",
    "FadingModel",
    "sample_power",
    "mean_power",
    "laplace_exact",
    "laplace_nakagami",
    "laplace_ricean",
    "laplace_empirical",
    "fractional_moment",
    "fractional_moment_nakagami",
    "ricean_pdf",
    # path loss
    "PathLoss",
    "gain",
    "compensation_b",
    "campbell_mean",
    "campbell_mean_closed_form",
    "unit_ball_volume",
    # engine
    "Scenario",
    "ReplicateTable",
    "ReplicateResult",
    "simulate_interference",
    "simulate_replicates",
    "outage_curve",
    "ergodic_capacity",
    "laplace_with_noise",
    "replicate_stream",
    # ordering
    "LEFT_SMALLER",
    "RIGHT_SMALLER",
    "INDISTINGUISHABLE",
    "CROSSING",
    "OrderVerdict",
    "LfVerdict",
    "LfProbe",
    "LfProbeFunction",
    "check_st_order",
    "check_lt_order",
    "check_lf_order",
    "default_lf_probe",
    "default_s_grid",
    "default_x_grid",
    "ppp_singular_lt",
    "ppp_laplace_functional",
    # curves
    "EmpiricalCurve",
    "dkw_halfwidth",
    "empirical_cdf",
    "empirical_ccdf",
    # config & experiments
    "ConfigError",
    "ExperimentConfig",
    "parse_config",
    "load_config",
    "BUILTINS",
    "builtin_names",
    "get_builtin",
    "run_experiment",
    "RunResult",
    "resolve_output_root",
]
