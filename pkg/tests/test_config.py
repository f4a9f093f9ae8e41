"""Config schema: strict validation with dotted error paths, canonical
hashing, and the bundled experiment definitions."""

import copy
import json

import pytest

from interord import (
    ConfigError,
    ExperimentConfig,
    builtin_names,
    get_builtin,
    load_config,
    parse_config,
)

EXPECTED_BUILTINS = {
    "fig2_nakagami_pcp",
    "fig3_nakagami_ppp_singular",
    "fig4_pathloss_ppp",
    "fig6_ppp_vs_pcp",
    "table1_capacity_pcp",
    "table2_capacity_ppp",
    "thm6_mixed_poisson",
    "thm7_bpp_vs_ppp",
    "oracle_eq15",
    "oracle_campbell",
}


def _minimal_config():
    scenario = {
        "process": {"kind": "poisson", "intensity": 1.0},
        "window": {"dimension": 2, "radius": 10.0},
        "interferer_fading": {"kind": "rayleigh"},
        "desired_fading": {"kind": "rayleigh"},
        "pathloss": {"a": 1, "b": 1.0, "delta": 4.0},
    }
    return {
        "name": "unit_test_run",
        "seed": 1,
        "n_replicates": 1000,
        "comparison": "sir_cdf",
        "scenarios": {"a": copy.deepcopy(scenario), "b": copy.deepcopy(scenario)},
    }


def test_builtins_enumerate_and_parse():
    names = builtin_names()
    assert set(names) == EXPECTED_BUILTINS
    assert list(names) == sorted(names)
    for name in names:
        cfg = get_builtin(name)
        assert isinstance(cfg, ExperimentConfig)
        assert cfg.name == name
        assert cfg.scenario_keys[0] == "a"
        assert cfg.expected  # every bundled experiment states its outcome
    with pytest.raises(ConfigError):
        get_builtin("no_such_experiment")


def test_export_parse_roundtrip_preserves_hash():
    for name in builtin_names():
        cfg = get_builtin(name)
        again = parse_config(json.loads(cfg.export_json()))
        assert again.config_hash() == cfg.config_hash()


def test_unknown_keys_rejected_with_dotted_path():
    raw = _minimal_config()
    raw["scenarios"]["a"]["typo_key"] = 1
    with pytest.raises(ConfigError) as err:
        parse_config(raw)
    assert "config.scenarios.a" in str(err.value)
    assert "typo_key" in str(err.value)

    raw2 = _minimal_config()
    raw2["unexpected"] = True
    with pytest.raises(ConfigError) as err2:
        parse_config(raw2)
    assert "unexpected" in str(err2.value)


def test_exponent_compensation_in_configs():
    cfg = get_builtin("fig4_pathloss_ppp")
    # scenario b trades a steeper decay against a scale factor chosen so the
    # mean aggregate power is unchanged; for these exponents the factor is 1/4
    assert abs(cfg.scenarios["b"].pathloss.b - 0.25) < 1e-10
    raw = _minimal_config()
    raw["scenarios"]["a"]["pathloss"] = {"a": 1, "b": "auto(4.0)", "delta": 8.0}
    parsed = parse_config(raw)
    assert abs(parsed.scenarios["a"].pathloss.b - 0.25) < 1e-10
    raw["scenarios"]["a"]["pathloss"] = {"a": 1, "b": "auto(nope)", "delta": 8.0}
    with pytest.raises(ConfigError):
        parse_config(raw)


def test_structural_validation_errors():
    cases = []

    c = _minimal_config()
    del c["scenarios"]
    cases.append((c, "scenarios"))

    c = _minimal_config()
    c["seed"] = -1
    cases.append((c, "seed"))

    c = _minimal_config()
    c["comparison"] = "sideways"
    cases.append((c, "comparison"))

    c = _minimal_config()
    c["n_replicates"] = 500  # curve comparisons need more
    cases.append((c, "n_replicates"))

    c = _minimal_config()
    c["noise_rows"] = [0.5]  # only meaningful for the capacity comparison
    cases.append((c, "noise_rows"))

    c = _minimal_config()
    del c["scenarios"]["b"]  # paired comparison with a single scenario
    cases.append((c, "scenario 'b'"))

    c = _minimal_config()
    c["comparison"] = "lf_probe"
    c["scenarios"]["b"]["window"] = {"dimension": 2, "radius": 12.0}
    cases.append((c, "identical windows"))

    c = _minimal_config()
    c["expected"] = [{"check": "sir_st", "pair": ["a", "b"], "relation": "Sideways"}]
    cases.append((c, "Sideways"))

    c = _minimal_config()
    c["expected"] = [{"check": "capacity", "pair": ["a", "b"], "relation": "AGreater"}]
    cases.append((c, "not evaluated under"))

    c = _minimal_config()
    c["s_grid"] = [1.0, 1.0, 2.0]
    cases.append((c, "strictly increasing"))

    for raw, needle in cases:
        with pytest.raises(ConfigError) as err:
            parse_config(raw)
        assert needle in str(err.value), (needle, str(err.value))


def test_load_config_rejects_malformed_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "not valid JSON" in str(err.value)
    good = tmp_path / "good.json"
    good.write_text(json.dumps(_minimal_config()))
    cfg = load_config(good)
    assert cfg.name == "unit_test_run"


def test_config_hash_canonicalization():
    raw = _minimal_config()
    reordered = json.loads(json.dumps(raw, sort_keys=True))
    items = list(reordered.items())[::-1]
    shuffled = dict(items)
    assert parse_config(raw).config_hash() == parse_config(shuffled).config_hash()
    changed = copy.deepcopy(raw)
    changed["seed"] = 2
    assert parse_config(changed).config_hash() != parse_config(raw).config_hash()
