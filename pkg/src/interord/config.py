"""Declarative experiment configuration.

An experiment is described by a JSON-compatible dict (typically a file):

.. code-block:: json

    {
      "name": "demo_pair",
      "seed": 7,
      "n_replicates": 20000,
      "comparison": "sir_cdf",
      "coupling": "common_random_numbers",
      "scenarios": {
        "a": {
          "process": {"kind": "poisson", "intensity": 1.0},
          "window": {"dimension": 2, "radius": 40.0},
          "interferer_fading": {"kind": "nakagami", "m": 1.0},
          "desired_fading": {"kind": "rayleigh"},
          "pathloss": {"a": 1, "b": 1.0, "delta": 4.0}
        },
        "b": { "...": "..." }
      },
      "expected": [
        {"check": "sir_st", "pair": ["a", "b"], "relation": "RightSmaller"}
      ]
    }

Validation is strict: unknown keys anywhere raise :class:`ConfigError` with the
dotted path of the offending entry, so typos fail loudly instead of silently
falling back to defaults. The raw dict is retained verbatim on the parsed
object; exports and the configuration hash are computed from it, so
load -> export round-trips byte-identically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from . import channel as _channel
from . import pointprocess as _pp
from .engine import Scenario
from .ioutil import canonical_json, sha256_text
from .pathloss import PathLoss, compensation_b

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "parse_config",
    "COMPARISONS",
    "COUPLINGS",
    "CHECKS",
]

COMPARISONS = ("interference_cdf", "sir_cdf", "lt_curve", "capacity", "lf_probe")
COUPLINGS = ("independent", "common_random_numbers")

# check name -> (allowed relations, comparisons that can evaluate it)
CHECKS = {
    "interference_st": (
        ("LeftSmaller", "RightSmaller", "Indistinguishable", "Crossing"),
        ("interference_cdf", "sir_cdf"),
    ),
    "interference_lt": (
        ("LeftSmaller", "RightSmaller", "Indistinguishable", "Crossing"),
        ("lt_curve", "sir_cdf"),
    ),
    "sir_st": (
        ("LeftSmaller", "RightSmaller", "Indistinguishable", "Crossing"),
        ("sir_cdf",),
    ),
    "interference_mean": (
        ("Equal",),
        ("interference_cdf", "sir_cdf", "lt_curve"),
    ),
    "capacity": (("AGreater", "BGreater"), ("capacity",)),
    "oracle": (("WithinBands",), ("lt_curve",)),
    "campbell": (("Within3Sigma",), ("interference_cdf",)),
    "lf": (
        ("LeftSmaller", "RightSmaller", "Indistinguishable", "Crossing"),
        ("lf_probe",),
    ),
}

_NAME_RE = re.compile(r"^[a-z][a-z0-9_]*$")
_AUTO_B_RE = re.compile(r"^auto\(([^)]+)\)$")

_PAIRED_COMPARISONS = ("sir_cdf", "capacity", "lf_probe")
_CURVE_COMPARISONS = ("interference_cdf", "sir_cdf", "lt_curve", "lf_probe")


class ConfigError(ValueError):
    """A configuration entry is missing, unknown, or ill-typed."""


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _expect_mapping(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        _fail(path, f"expected a mapping, got {type(obj).__name__}")
    return obj


def _reject_unknown(d: dict, path: str, allowed):
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        _fail(
            path,
            f"unknown key {unknown[0]!r} (allowed: {', '.join(sorted(allowed))})",
        )


def _get(d: dict, path: str, key: str, types, required=True, default=None):
    if key not in d:
        if required:
            _fail(path, f"missing required key {key!r}")
        return default
    value = d[key]
    if types is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, types) or isinstance(value, bool) and types is not bool:
        names = (
            types.__name__
            if isinstance(types, type)
            else "/".join(t.__name__ for t in types)
        )
        _fail(path, f"key {key!r} must be {names}, got {type(value).__name__}")
    return value


def _get_number(d, path, key, required=True, default=None, minimum=None, positive=False):
    value = _get(d, path, key, (int, float), required, default)
    if value is None:
        return None
    value = float(value)
    if positive and value <= 0:
        _fail(path, f"key {key!r} must be > 0, got {value}")
    if minimum is not None and value < minimum:
        _fail(path, f"key {key!r} must be >= {minimum}, got {value}")
    return value


def _build_dispersion(raw, path: str):
    raw = _expect_mapping(raw, path)
    kind = _get(raw, path, "kind", str)
    if kind == "gaussian":
        _reject_unknown(raw, path, ("kind", "sigma"))
        return _pp.GaussianDispersion(sigma=_get_number(raw, path, "sigma", positive=True))
    if kind == "disk":
        _reject_unknown(raw, path, ("kind", "rho"))
        return _pp.UniformDiskDispersion(rho=_get_number(raw, path, "rho", positive=True))
    _fail(path, f"unknown dispersion kind {kind!r} (allowed: disk, gaussian)")


def _build_intensity_law(raw, path: str):
    raw = _expect_mapping(raw, path)
    kind = _get(raw, path, "kind", str)
    if kind == "discrete":
        _reject_unknown(raw, path, ("kind", "atoms"))
        atoms = _get(raw, path, "atoms", list)
        pairs = []
        for i, atom in enumerate(atoms):
            apath = f"{path}.atoms[{i}]"
            if not isinstance(atom, (list, tuple)) or len(atom) != 2:
                _fail(apath, "each atom must be a [value, probability] pair")
            pairs.append((float(atom[0]), float(atom[1])))
        return _pp.DiscreteIntensityLaw(atoms=tuple(pairs))
    if kind == "gamma":
        _reject_unknown(raw, path, ("kind", "shape", "scale"))
        return _pp.GammaIntensityLaw(
            shape=_get_number(raw, path, "shape", positive=True),
            scale=_get_number(raw, path, "scale", positive=True),
        )
    _fail(path, f"unknown intensity-law kind {kind!r} (allowed: discrete, gamma)")


def _build_process(raw, path: str):
    raw = _expect_mapping(raw, path)
    kind = _get(raw, path, "kind", str)
    if kind == "poisson":
        _reject_unknown(raw, path, ("kind", "intensity"))
        return _pp.Poisson(intensity=_get_number(raw, path, "intensity", positive=True))
    if kind == "neyman_scott":
        _reject_unknown(
            raw, path, ("kind", "parent_intensity", "mean_daughters", "dispersion")
        )
        return _pp.NeymanScott(
            parent_intensity=_get_number(raw, path, "parent_intensity", positive=True),
            mean_daughters=_get_number(raw, path, "mean_daughters", positive=True),
            dispersion=_build_dispersion(raw["dispersion"], f"{path}.dispersion")
            if "dispersion" in raw
            else _fail(path, "missing required key 'dispersion'"),
        )
    if kind == "mixed_poisson":
        _reject_unknown(raw, path, ("kind", "law"))
        if "law" not in raw:
            _fail(path, "missing required key 'law'")
        return _pp.MixedPoisson(intensity_law=_build_intensity_law(raw["law"], f"{path}.law"))
    if kind == "binomial":
        _reject_unknown(raw, path, ("kind", "n_points", "radius"))
        n_points = _get(raw, path, "n_points", int)
        return _pp.Binomial(
            n_points=n_points, radius=_get_number(raw, path, "radius", positive=True)
        )
    _fail(
        path,
        f"unknown process kind {kind!r} "
        "(allowed: binomial, mixed_poisson, neyman_scott, poisson)",
    )


def _build_fading(raw, path: str, allow_composite=True):
    raw = _expect_mapping(raw, path)
    kind = _get(raw, path, "kind", str)
    if kind == "deterministic":
        _reject_unknown(raw, path, ("kind", "power"))
        return _channel.Deterministic(power=_get_number(raw, path, "power", minimum=0.0))
    if kind == "rayleigh":
        _reject_unknown(raw, path, ("kind",))
        return _channel.RayleighPower()
    if kind == "nakagami":
        _reject_unknown(raw, path, ("kind", "m"))
        return _channel.NakagamiPower(m=_get_number(raw, path, "m", minimum=0.5))
    if kind == "ricean":
        _reject_unknown(raw, path, ("kind", "k"))
        return _channel.RiceanPower(k=_get_number(raw, path, "k", minimum=0.0))
    if kind == "composite":
        if not allow_composite:
            _fail(path, "composite fading cannot nest inside composite fading")
        _reject_unknown(raw, path, ("kind", "multipath", "shadow"))
        if "multipath" not in raw:
            _fail(path, "missing required key 'multipath'")
        if "shadow" not in raw:
            _fail(path, "missing required key 'shadow'")
        spath = f"{path}.shadow"
        shadow_raw = _expect_mapping(raw["shadow"], spath)
        _reject_unknown(shadow_raw, spath, ("sigma_db", "normalized"))
        shadow = _channel.LognormalShadow(
            sigma_db=_get_number(shadow_raw, spath, "sigma_db", minimum=0.0),
            normalized=_get(shadow_raw, spath, "normalized", bool, False, False),
        )
        return _channel.Composite(
            multipath=_build_fading(
                raw["multipath"], f"{path}.multipath", allow_composite=False
            ),
            shadow=shadow,
        )
    _fail(
        path,
        f"unknown fading kind {kind!r} "
        "(allowed: composite, deterministic, nakagami, rayleigh, ricean)",
    )


def _build_window(raw, path: str):
    raw = _expect_mapping(raw, path)
    _reject_unknown(raw, path, ("dimension", "radius", "guard_radius"))
    dimension = _get(raw, path, "dimension", int)
    if dimension not in (2, 3):
        _fail(path, f"key 'dimension' must be 2 or 3, got {dimension}")
    return _pp.Window(
        dimension=dimension,
        radius=_get_number(raw, path, "radius", positive=True),
        guard_radius=_get_number(raw, path, "guard_radius", False, 0.0, minimum=0.0),
    )


def _build_pathloss(raw, path: str, dimension: int):
    raw = _expect_mapping(raw, path)
    _reject_unknown(raw, path, ("a", "b", "delta"))
    a = _get_number(raw, path, "a", minimum=0.0)
    if a not in (0.0, 1.0):
        _fail(path, f"key 'a' must be 0 or 1, got {a}")
    delta = _get_number(raw, path, "delta", positive=True)
    b_raw = raw.get("b", 1.0)
    if isinstance(b_raw, str):
        match = _AUTO_B_RE.match(b_raw)
        if not match:
            _fail(path, f"key 'b' must be a number or 'auto(REF_EXPONENT)', got {b_raw!r}")
        try:
            reference = float(match.group(1))
        except ValueError:
            _fail(path, f"key 'b': cannot parse reference exponent in {b_raw!r}")
        try:
            b = compensation_b(reference, delta, dimension)
        except ValueError as exc:
            _fail(path, f"key 'b': {exc}")
    elif isinstance(b_raw, (int, float)) and not isinstance(b_raw, bool):
        b = float(b_raw)
        if b <= 0:
            _fail(path, f"key 'b' must be > 0, got {b}")
    else:
        _fail(path, f"key 'b' must be a number or 'auto(REF_EXPONENT)', got {type(b_raw).__name__}")
    try:
        return PathLoss(a=a, b=b, delta=delta, d=dimension)
    except ValueError as exc:
        _fail(path, str(exc))


def _build_scenario(raw, path: str, key: str):
    raw = _expect_mapping(raw, path)
    _reject_unknown(
        raw,
        path,
        (
            "label",
            "process",
            "window",
            "interferer_fading",
            "desired_fading",
            "pathloss",
            "noise_w",
        ),
    )
    for required in ("process", "window", "interferer_fading", "desired_fading", "pathloss"):
        if required not in raw:
            _fail(path, f"missing required key {required!r}")
    window = _build_window(raw["window"], f"{path}.window")
    try:
        return Scenario(
            process=_build_process(raw["process"], f"{path}.process"),
            window=window,
            interferer_fading=_build_fading(
                raw["interferer_fading"], f"{path}.interferer_fading"
            ),
            pathloss=_build_pathloss(raw["pathloss"], f"{path}.pathloss", window.dimension),
            desired_fading=_build_fading(raw["desired_fading"], f"{path}.desired_fading"),
            noise_w=_get_number(raw, path, "noise_w", False, 0.0, minimum=0.0),
            label=_get(raw, path, "label", str, False, key),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        _fail(path, str(exc))


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed, validated experiment; ``raw`` is the verbatim source dict."""

    raw: dict
    name: str
    seed: int
    n_replicates: int
    comparison: str
    coupling: str
    confidence: float
    n_bootstrap: int
    scenarios: dict  # key ('a'/'b'/'c') -> engine Scenario
    expected: tuple  # of {"check","pair","relation"} dicts
    noise_rows: tuple
    s_grid: np.ndarray | None
    x_grid: np.ndarray | None
    description: str = ""
    output_dir: str | None = None

    @property
    def scenario_keys(self) -> tuple:
        return tuple(k for k in ("a", "b", "c") if k in self.scenarios)

    def config_hash(self) -> str:
        return sha256_text(canonical_json(self.raw))

    def export_json(self) -> str:
        return json.dumps(self.raw, indent=2, sort_keys=True) + "\n"


def _parse_grid(raw, path: str, positive=True):
    if raw is None:
        return None
    if not isinstance(raw, list) or not raw:
        _fail(path, "grid must be a nonempty list of numbers")
    values = []
    for i, v in enumerate(raw):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            _fail(f"{path}[{i}]", f"grid entries must be numbers, got {type(v).__name__}")
        values.append(float(v))
    arr = np.asarray(values)
    if positive and np.any(arr <= 0):
        _fail(path, "grid entries must be > 0")
    if np.any(np.diff(arr) <= 0):
        _fail(path, "grid must be strictly increasing")
    return arr


_TOP_KEYS = (
    "name",
    "description",
    "seed",
    "n_replicates",
    "comparison",
    "coupling",
    "confidence",
    "n_bootstrap",
    "scenarios",
    "expected",
    "noise_rows",
    "s_grid",
    "x_grid",
    "output_dir",
)


def parse_config(raw: dict) -> ExperimentConfig:
    """Validate a config dict and build the runnable experiment."""
    raw = _expect_mapping(raw, "config")
    _reject_unknown(raw, "config", _TOP_KEYS)

    name = _get(raw, "config", "name", str)
    if not _NAME_RE.match(name):
        _fail("config", f"key 'name' must match [a-z][a-z0-9_]*, got {name!r}")
    seed = _get(raw, "config", "seed", int)
    if seed < 0:
        _fail("config", f"key 'seed' must be >= 0, got {seed}")
    n_replicates = _get(raw, "config", "n_replicates", int)
    comparison = _get(raw, "config", "comparison", str)
    if comparison not in COMPARISONS:
        _fail(
            "config",
            f"unknown comparison {comparison!r} (allowed: {', '.join(COMPARISONS)})",
        )
    coupling = _get(raw, "config", "coupling", str, False, "independent")
    if coupling not in COUPLINGS:
        _fail(
            "config",
            f"unknown coupling {coupling!r} (allowed: {', '.join(COUPLINGS)})",
        )
    confidence = _get_number(raw, "config", "confidence", False, 0.95)
    if not 0.0 < confidence < 1.0:
        _fail("config", f"key 'confidence' must be in (0, 1), got {confidence}")
    n_bootstrap = _get(raw, "config", "n_bootstrap", int, False, 500)
    if n_bootstrap < 200:
        _fail("config", f"key 'n_bootstrap' must be >= 200, got {n_bootstrap}")

    min_n = 100 if comparison == "capacity" else 1000
    if n_replicates < min_n:
        _fail(
            "config",
            f"comparison {comparison!r} needs n_replicates >= {min_n}, "
            f"got {n_replicates}",
        )

    scenarios_raw = _expect_mapping(
        _get(raw, "config", "scenarios", dict), "config.scenarios"
    )
    _reject_unknown(scenarios_raw, "config.scenarios", ("a", "b", "c"))
    if "a" not in scenarios_raw:
        _fail("config.scenarios", "missing required scenario 'a'")
    if "c" in scenarios_raw and "b" not in scenarios_raw:
        _fail("config.scenarios", "scenario 'c' requires scenario 'b'")
    scenarios = {
        key: _build_scenario(scenarios_raw[key], f"config.scenarios.{key}", key)
        for key in ("a", "b", "c")
        if key in scenarios_raw
    }
    if comparison in _PAIRED_COMPARISONS and "b" not in scenarios:
        _fail(
            "config.scenarios",
            f"comparison {comparison!r} compares two scenarios; scenario 'b' is required",
        )
    if comparison == "lf_probe":
        if "c" in scenarios:
            _fail("config.scenarios", "comparison 'lf_probe' takes exactly two scenarios")
        wa, wb = scenarios["a"].window, scenarios["b"].window
        if wa != wb:
            _fail(
                "config.scenarios",
                "comparison 'lf_probe' needs identical windows on both scenarios",
            )

    noise_rows = raw.get("noise_rows")
    if noise_rows is not None:
        if comparison != "capacity":
            _fail("config", "key 'noise_rows' only applies to the capacity comparison")
        if not isinstance(noise_rows, list) or not noise_rows:
            _fail("config.noise_rows", "must be a nonempty list of numbers >= 0")
        rows = []
        for i, w in enumerate(noise_rows):
            if not isinstance(w, (int, float)) or isinstance(w, bool) or w < 0:
                _fail(f"config.noise_rows[{i}]", f"must be a number >= 0, got {w!r}")
            rows.append(float(w))
        noise_rows = tuple(rows)
    elif comparison == "capacity":
        noise_rows = (0.0, 0.5, 1.0)
    else:
        noise_rows = ()

    expected_raw = _get(raw, "config", "expected", list, False, [])
    expected = []
    present = set(scenarios)
    for i, item in enumerate(expected_raw):
        path = f"config.expected[{i}]"
        item = _expect_mapping(item, path)
        _reject_unknown(item, path, ("check", "pair", "relation"))
        check = _get(item, path, "check", str)
        if check not in CHECKS:
            _fail(path, f"unknown check {check!r} (allowed: {', '.join(sorted(CHECKS))})")
        relations, comparisons = CHECKS[check]
        relation = _get(item, path, "relation", str)
        if relation not in relations:
            _fail(
                path,
                f"check {check!r} cannot expect {relation!r} "
                f"(allowed: {', '.join(relations)})",
            )
        if comparison not in comparisons:
            _fail(
                path,
                f"check {check!r} is not evaluated under comparison {comparison!r} "
                f"(needs one of: {', '.join(comparisons)})",
            )
        pair_raw = item.get("pair")
        if check in ("oracle", "campbell"):
            pair = ("a",) if pair_raw is None else tuple(pair_raw)
            if pair != ("a",):
                _fail(path, f"check {check!r} applies to scenario 'a' only")
        else:
            if pair_raw is None:
                pair_raw = ["a", "b"]
            if (
                not isinstance(pair_raw, list)
                or len(pair_raw) != 2
                or pair_raw[0] == pair_raw[1]
            ):
                _fail(path, "key 'pair' must name two distinct scenarios")
            pair = tuple(pair_raw)
            for member in pair:
                if member not in present:
                    _fail(path, f"pair member {member!r} is not a configured scenario")
        expected.append({"check": check, "pair": pair, "relation": relation})

    def _finite_mean(key: str) -> bool:
        sc = scenarios[key]
        return sc.pathloss.a == 1.0 or sc.window.guard_radius > 0.0

    for i, e in enumerate(expected):
        path = f"config.expected[{i}]"
        if e["check"] in ("interference_mean", "campbell"):
            for member in e["pair"]:
                if not _finite_mean(member):
                    _fail(
                        path,
                        f"check {e['check']!r} needs a finite mean, but scenario "
                        f"{member!r} has the unbounded gain with no guard radius",
                    )
        if e["check"] == "oracle":
            if "b" in scenarios:
                _fail(
                    path,
                    "the closed-form transform check applies to a single-scenario run",
                )
            sc = scenarios["a"]
            if not (
                isinstance(sc.process, _pp.Poisson)
                and sc.pathloss.a == 0.0
                and sc.window.guard_radius == 0.0
            ):
                _fail(
                    path,
                    "the closed-form transform check needs a Poisson scenario with "
                    "the unbounded power-law gain and no guard radius",
                )
            fading_kind = scenarios_raw["a"]["interferer_fading"].get("kind")
            if fading_kind not in ("deterministic", "rayleigh", "nakagami"):
                _fail(
                    path,
                    "the closed-form transform check needs interferer fading with "
                    "a closed-form fractional moment "
                    "(deterministic, rayleigh, or nakagami)",
                )

    return ExperimentConfig(
        raw=raw,
        name=name,
        seed=seed,
        n_replicates=n_replicates,
        comparison=comparison,
        coupling=coupling,
        confidence=confidence,
        n_bootstrap=n_bootstrap,
        scenarios=scenarios,
        expected=tuple(expected),
        noise_rows=noise_rows,
        s_grid=_parse_grid(raw.get("s_grid"), "config.s_grid"),
        x_grid=_parse_grid(raw.get("x_grid"), "config.x_grid"),
        description=_get(raw, "config", "description", str, False, ""),
        output_dir=_get(raw, "config", "output_dir", str, False, None),
    )


def load_config(path) -> ExperimentConfig:
    """Parse and validate a JSON config file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: not valid JSON ({exc})") from None
    return parse_config(raw)
