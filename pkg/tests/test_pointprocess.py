"""Point-process samplers: intensity laws, dispersion behavior, fixed-count
processes, superposition, and bit-for-bit deterministic replay."""

import math

import numpy as np
import pytest

from interord import (
    Binomial,
    DiscreteIntensityLaw,
    GammaIntensityLaw,
    GaussianDispersion,
    MixedPoisson,
    NeymanScott,
    PointPattern,
    Poisson,
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

W10 = Window(2, 10.0)
W20 = Window(2, 20.0)


def _rng(seed):
    return np.random.default_rng(seed)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(2, 10.0, guard_radius=10.0)  # degenerate annulus
    with pytest.raises(ValueError):
        Window(2, 10.0, guard_radius=11.0)
    with pytest.raises(ValueError):
        Window(2, 0.0)
    with pytest.raises(ValueError):
        Window(2, 10.0, guard_radius=-1.0)
    with pytest.raises(ValueError):
        Window(4, 10.0)
    assert abs(Window(2, 10.0).volume - 100.0 * math.pi) < 1e-10
    annulus = Window(2, 10.0, guard_radius=5.0)
    assert abs(annulus.volume - 75.0 * math.pi) < 1e-10


def test_ppp_mean_count_matches_intensity():
    rng = _rng(101)
    counts = np.array([len(sample_ppp(1.0, W10, rng)) for _ in range(10_000)])
    expected = 100.0 * math.pi
    assert abs(counts.mean() - expected) / expected < 0.01


def test_ppp_equidispersion_3d():
    rng = _rng(103)
    spec = Poisson(2.0)
    w = Window(3, 5.0)
    counts = np.array(
        [interference_radii(spec, w, rng)[0].size for _ in range(10_000)]
    )
    ratio = counts.var(ddof=1) / counts.mean()
    assert abs(ratio - 1.0) < 0.03


def test_neyman_scott_intensity_identity():
    spec = NeymanScott(0.05, 20.0, GaussianDispersion(1.0))
    assert abs(spec.effective_intensity - 1.0) < 1e-12
    rng = _rng(107)
    counts = np.array([len(sample_neyman_scott(spec, W20, rng)) for _ in range(1000)])
    empirical_intensity = counts.mean() / W20.volume
    assert abs(empirical_intensity - 1.0) < 0.02


def test_neyman_scott_vanishing_daughters():
    spec = NeymanScott(0.05, 1e-9, GaussianDispersion(1.0))
    rng = _rng(109)
    assert all(len(sample_neyman_scott(spec, W20, rng)) == 0 for _ in range(50))


def test_neyman_scott_overdispersed_vs_poisson():
    rng = _rng(113)
    spec = NeymanScott(0.05, 20.0, GaussianDispersion(1.0))
    ns_counts = []
    ppp_counts = []
    for _ in range(1000):
        pat = sample_neyman_scott(spec, W20, rng)
        ns_counts.append(int((pat.radii <= 5.0).sum()))
        ppp_counts.append(int((sample_ppp(1.0, W20, rng).radii <= 5.0).sum()))
    ns_counts = np.array(ns_counts)
    ppp_counts = np.array(ppp_counts)
    assert abs(ns_counts.mean() - ppp_counts.mean()) / ppp_counts.mean() < 0.15
    assert ns_counts.var(ddof=1) > ppp_counts.var(ddof=1)


def test_neyman_scott_uniform_disk_dispersion():
    spec = NeymanScott(0.05, 10.0, UniformDiskDispersion(2.0))
    rng = _rng(127)
    counts = np.array([len(sample_neyman_scott(spec, W20, rng)) for _ in range(500)])
    expected = 0.5 * W20.volume
    assert abs(counts.mean() - expected) / expected < 0.05


def test_mixed_poisson_two_point_mixture():
    law = DiscreteIntensityLaw(((0.5, 0.5), (1.5, 0.5)))
    assert abs(law.mean - 1.0) < 1e-12
    spec = MixedPoisson(law)
    rng = _rng(131)
    counts = np.array([len(sample_mixed_poisson(spec, W10, rng)) for _ in range(10_000)])
    expected = 100.0 * math.pi
    assert abs(counts.mean() - expected) / expected < 0.01
    # law of total variance: mixing pushes the count variance above Poisson's
    assert counts.var(ddof=1) > 2.0 * counts.mean()


def test_mixed_poisson_degenerate_mixture_matches_ppp():
    spec = MixedPoisson(DiscreteIntensityLaw(((1.0, 1.0),)))
    rng = _rng(137)
    mixed = np.array([len(sample_mixed_poisson(spec, W10, rng)) for _ in range(2000)])
    plain = np.array([len(sample_ppp(1.0, W10, rng)) for _ in range(2000)])
    se = math.hypot(mixed.std(ddof=1), plain.std(ddof=1)) / math.sqrt(2000)
    assert abs(mixed.mean() - plain.mean()) < 3.0 * se
    # equidispersion is preserved by a degenerate mixture
    assert abs(mixed.var(ddof=1) / mixed.mean() - 1.0) < 0.1


def test_mixed_poisson_gamma_law():
    spec = MixedPoisson(GammaIntensityLaw(shape=2.0, scale=0.5))
    assert abs(spec.mean_intensity - 1.0) < 1e-12
    rng = _rng(139)
    counts = np.array([len(sample_mixed_poisson(spec, W10, rng)) for _ in range(10_000)])
    expected = 100.0 * math.pi
    se = counts.std(ddof=1) / math.sqrt(counts.size)
    assert abs(counts.mean() - expected) < 3.0 * se
    # law of total variance: Var N = E[L]V + Var(L)V^2, dominated by the mixing term
    predicted_var = expected + 0.5 * (100.0 * math.pi) ** 2
    assert abs(counts.var(ddof=1) - predicted_var) / predicted_var < 0.1


def test_binomial_exact_count_and_mean_radius():
    rng = _rng(149)
    radii = []
    for _ in range(1000):
        pat = sample_binomial(100, 10.0, W10, rng)
        assert len(pat) == 100
        radii.append(pat.radii)
    pooled = np.concatenate(radii)
    assert pooled.size == 100_000
    assert np.all(pooled <= 10.0 + 1e-9)
    assert abs(pooled.mean() - 20.0 / 3.0) / (20.0 / 3.0) < 0.01


def test_binomial_single_point():
    rng = _rng(151)
    pat = sample_binomial(1, 5.0, W10, rng)
    assert len(pat) == 1
    assert pat.radii[0] <= 5.0


def test_binomial_validation():
    rng = _rng(157)
    with pytest.raises(ValueError):
        sample_binomial(10, 11.0, W10, rng)  # radius beyond the window
    with pytest.raises(ValueError):
        sample_binomial(10, 1.0, Window(2, 10.0, guard_radius=2.0), rng)
    with pytest.raises(ValueError):
        Binomial(0, 5.0)
    with pytest.raises(ValueError):
        Binomial(10, -1.0)


def test_superposition_of_poissons():
    rng = _rng(163)
    counts = np.array(
        [
            len(superpose(sample_ppp(0.5, W10, rng), sample_ppp(1.5, W10, rng)))
            for _ in range(10_000)
        ]
    )
    expected = 2.0 * 100.0 * math.pi
    assert abs(counts.mean() - expected) / expected < 0.01


def test_superposition_identity_and_counts():
    rng = _rng(167)
    base = sample_ppp(1.0, W10, rng)
    empty = PointPattern(np.empty((0, 2)), W10, "empty")
    merged = superpose(base, empty)
    assert np.array_equal(merged.points, base.points)
    three = superpose(
        sample_binomial(10, 10.0, W10, rng),
        sample_binomial(20, 10.0, W10, rng),
        sample_binomial(30, 10.0, W10, rng),
    )
    assert len(three) == 60
    with pytest.raises(ValueError):
        superpose(base, sample_ppp(1.0, W20, rng))
    with pytest.raises(ValueError):
        superpose()


def test_annulus_respected_by_all_samplers():
    w = Window(2, 10.0, guard_radius=2.0)
    rng = _rng(173)
    specs = (
        Poisson(1.0),
        NeymanScott(0.05, 10.0, GaussianDispersion(1.0)),
        MixedPoisson(DiscreteIntensityLaw(((0.5, 0.5), (1.5, 0.5)))),
        Binomial(50, 10.0),
    )
    for spec in specs:
        for _ in range(20):
            pat = sample(spec, w, rng)
            if len(pat):
                assert np.all(pat.radii >= 2.0 - 1e-9)
                assert np.all(pat.radii <= 10.0 + 1e-9)


def test_intensity_consistency_all_processes():
    rng = _rng(179)
    specs = (
        Poisson(1.0),
        NeymanScott(0.05, 20.0, GaussianDispersion(1.0)),
        MixedPoisson(DiscreteIntensityLaw(((0.5, 0.5), (1.5, 0.5)))),
        Binomial(314, 10.0),
    )
    for spec in specs:
        counts = np.array([len(sample(spec, W10, rng)) for _ in range(1000)])
        expected = mean_intensity(spec, 2) * W10.volume
        se = counts.std(ddof=1) / math.sqrt(counts.size)
        assert abs(counts.mean() - expected) <= max(3.0 * se, 1e-9), spec


def test_deterministic_replay_bitwise():
    specs = (
        Poisson(1.0),
        NeymanScott(0.05, 10.0, GaussianDispersion(1.0)),
        MixedPoisson(GammaIntensityLaw(2.0, 0.5)),
        Binomial(40, 10.0),
    )
    for spec in specs:
        a = sample(spec, W10, _rng(191))
        b = sample(spec, W10, _rng(191))
        assert np.array_equal(a.points, b.points)
        ra, _ = interference_radii(spec, W10, _rng(193))
        rb, _ = interference_radii(spec, W10, _rng(193))
        assert np.array_equal(ra, rb)


def test_counts_uncorrelated_across_replicates():
    rng = _rng(197)
    counts = np.array([len(sample_ppp(1.0, W10, rng)) for _ in range(10_000)], dtype=float)
    x = counts[:-1] - counts[:-1].mean()
    y = counts[1:] - counts[1:].mean()
    rho = float((x * y).mean() / (x.std() * y.std()))
    assert abs(rho) < 0.05


def test_interference_radii_distribution():
    rng = _rng(199)
    radii = np.concatenate(
        [interference_radii(Poisson(1.0), W10, rng)[0] for _ in range(400)]
    )
    assert radii.size > 100_000
    assert np.all((radii > 0.0) & (radii <= 10.0 + 1e-9))
    # uniform on the disk: mean distance to the center is 2R/3
    assert abs(radii.mean() - 20.0 / 3.0) / (20.0 / 3.0) < 0.01


def test_process_spec_validation():
    with pytest.raises(ValueError):
        Poisson(0.0)
    with pytest.raises(ValueError):
        NeymanScott(0.0, 10.0, GaussianDispersion(1.0))
    with pytest.raises(ValueError):
        NeymanScott(0.1, 0.0, GaussianDispersion(1.0))
    with pytest.raises(ValueError):
        GaussianDispersion(0.0)
    with pytest.raises(ValueError):
        UniformDiskDispersion(-1.0)
    with pytest.raises(ValueError):
        DiscreteIntensityLaw(())
    with pytest.raises(ValueError):
        DiscreteIntensityLaw(((0.5, 0.5), (1.5, 0.6)))  # weights must sum to 1
    with pytest.raises(ValueError):
        DiscreteIntensityLaw(((-0.5, 1.0),))
    with pytest.raises(ValueError):
        GammaIntensityLaw(0.0, 1.0)
    assert mean_intensity(Binomial(100, 10.0), 2) == pytest.approx(
        100.0 / (100.0 * math.pi), rel=1e-12
    )


def test_pattern_csv_roundtrip(tmp_path):
    rng = _rng(211)
    pat = sample_ppp(0.5, W10, rng)
    path = tmp_path / "pattern.csv"
    pattern_to_csv(pat, path, seed=211)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("#")
    assert "seed=211" in lines[0]
    assert lines[1] == "x1,x2"
    assert len(lines) == len(pat) + 2
    parsed = np.array([[float(v) for v in line.split(",")] for line in lines[2:]])
    assert np.allclose(parsed, pat.points, rtol=0, atol=0)
