import numpy as np
import pytest

import zelab as z
from zelab.verifier import close_pairs


@pytest.fixture(scope="module")
def identity_map():
    return z.MapSpec("piecewise-linear", (0.0, 0.0, 1.0, 1.0), (0.0, 1.0))


@pytest.fixture(scope="module")
def feig_deep_sample(feig_tower):
    return feig_tower.level_sample(8, per_cell=4)


class TestProbeConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            z.ProbeConfig(epsilon=0.0)
        with pytest.raises(ValueError):
            z.ProbeConfig(delta=-1.0)
        with pytest.raises(ValueError):
            z.ProbeConfig(horizon=0)
        with pytest.raises(ValueError):
            z.ProbeConfig(pair_count=0)

    def test_roundtrip(self):
        cfg = z.ProbeConfig(epsilon=0.2, delta=1e-4, horizon=500, pair_count=7, seed=3)
        assert z.ProbeConfig.from_json_dict(cfg.to_json_dict()) == cfg


class TestPairSampling:
    def test_close_pairs_excludes_duplicates(self):
        pairs = close_pairs([0.1, 0.1, 0.100001, 0.5], 1e-3)
        assert all(u < v for u, v in pairs)
        assert (0.1, 0.100001) in pairs

    def test_no_pairs_raises_sampling_error(self, identity_map):
        cfg = z.ProbeConfig(delta=1e-9, horizon=10)
        with pytest.raises(z.SamplingError):
            z.mls_probe(identity_map, [0.1, 0.5, 0.9], cfg)

    def test_sampling_is_seeded(self, chaotic_map, chaotic_sample):
        cfg = z.ProbeConfig(delta=1e-6, horizon=100, pair_count=10, seed=5)
        v1 = z.mls_probe(chaotic_map, chaotic_sample, cfg)
        v2 = z.mls_probe(chaotic_map, chaotic_sample, cfg)
        assert v1.pairs == v2.pairs


class TestMlsProbe:
    def test_identity_map_trivially_passes(self, identity_map):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-2, horizon=1000, pair_count=20)
        verdict = z.mls_probe(identity_map, np.linspace(0.1, 0.9, 200), cfg)
        assert verdict.passed
        assert verdict.worst_density == 0.0
        assert all(d == 0.0 for _, _, d in verdict.pairs)

    def test_feigenbaum_sample_passes(self, feig_map, feig_deep_sample):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-3, horizon=10**4, pair_count=50)
        verdict = z.mls_probe(feig_map, feig_deep_sample, cfg)
        assert verdict.passed
        assert verdict.worst_density < 0.1

    def test_chaotic_control_fails(self, chaotic_map, chaotic_sample):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-6, horizon=10**4, pair_count=50)
        verdict = z.mls_probe(chaotic_map, chaotic_sample, cfg)
        assert not verdict.passed
        assert verdict.worst_density > 0.5

    def test_monotone_in_epsilon(self, chaotic_map, chaotic_sample):
        # same pairs, larger epsilon: bad sets shrink, a pass cannot flip
        base = dict(delta=1e-6, horizon=2000, pair_count=25, seed=2)
        small = z.mls_probe(chaotic_map, chaotic_sample,
                            z.ProbeConfig(epsilon=0.05, **base))
        large = z.mls_probe(chaotic_map, chaotic_sample,
                            z.ProbeConfig(epsilon=0.6, **base))
        assert [p[:2] for p in small.pairs] == [p[:2] for p in large.pairs]
        for (u1, v1, d1), (u2, v2, d2) in zip(small.pairs, large.pairs):
            assert d2 <= d1 + 1e-12
        if small.passed:
            assert large.passed

    def test_sample_outside_domain_rejected(self, feig_map):
        cfg = z.ProbeConfig()
        with pytest.raises(ValueError):
            z.mls_probe(feig_map, [0.2, 1.7], cfg)

    def test_verdict_roundtrip(self, identity_map):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-2, horizon=50, pair_count=5)
        verdict = z.mls_probe(identity_map, np.linspace(0.2, 0.8, 200), cfg)
        assert z.MlsVerdict.from_json_dict(verdict.to_json_dict()) == verdict


class TestEquicontinuityProbe:
    def test_identity_keeps_initial_separation(self, identity_map):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-2, horizon=100, pair_count=10)
        sample = np.linspace(0.1, 0.9, 100)
        rep = z.equicontinuity_probe(identity_map, sample, cfg)
        u, v = rep.witness
        assert rep.worst_separation == pytest.approx(abs(u - v), abs=1e-15)

    def test_feigenbaum_bounded_by_shared_level_width(self, feig_map, feig_tower,
                                                      feig_deep_sample):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-3, horizon=10**4, pair_count=50)
        rep = z.equicontinuity_probe(feig_map, feig_deep_sample, cfg)
        # delta = 1e-3 close pairs share at least a level-3 interval
        assert rep.worst_separation <= z.tau(feig_tower, 3) + 1e-9

    def test_chaotic_control_separates(self, chaotic_map, chaotic_sample):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-6, horizon=10**4, pair_count=50)
        rep = z.equicontinuity_probe(chaotic_map, chaotic_sample, cfg)
        assert rep.worst_separation > 0.5

    def test_equicontinuity_implies_empty_bad_sets(self, feig_map, feig_deep_sample):
        # same config, both probes: separation below epsilon forces densities 0
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-3, horizon=2000, pair_count=30)
        rep = z.equicontinuity_probe(feig_map, feig_deep_sample, cfg)
        verdict = z.mls_probe(feig_map, feig_deep_sample, cfg)
        assert rep.worst_separation < cfg.epsilon
        assert all(d == 0.0 for _, _, d in verdict.pairs)

    def test_roundtrip(self, identity_map):
        cfg = z.ProbeConfig(epsilon=0.1, delta=1e-2, horizon=20, pair_count=5)
        rep = z.equicontinuity_probe(identity_map, np.linspace(0.2, 0.8, 200), cfg)
        assert z.EquicontinuityReport.from_json_dict(rep.to_json_dict()) == rep


class TestMeanAttraction:
    def test_self_tracking_is_zero(self, feig_map, feig_tower):
        cfg = z.ProbeConfig(epsilon=0.05, horizon=1000)
        res = z.mean_attraction_search(feig_map, 0.5, feig_tower, cfg, z=0.5)
        assert res.z == 0.5
        assert all(d == 0.0 for _, d in res.cesaro_distance)
        assert res.attained

    def test_feigenbaum_critical_point(self, feig_map, feig_tower):
        cfg = z.ProbeConfig(epsilon=0.05, horizon=10**4)
        res = z.mean_attraction_search(feig_map, 0.5, feig_tower, cfg)
        assert res.attained
        assert res.cesaro_distance[-1][1] < 0.05

    def test_case_one_two_cycle(self, two_cycle_map, two_cycle_tower):
        cfg = z.ProbeConfig(epsilon=1e-3, horizon=10**4)
        res = z.mean_attraction_search(two_cycle_map, 0.1, two_cycle_tower, cfg)
        assert res.attained
        assert res.cesaro_distance[-1][1] < 1e-3
        assert res.entry_time > 0

    def test_phase_matching_picks_tracking_z(self, two_cycle_map, two_cycle_tower):
        cfg = z.ProbeConfig(epsilon=1e-3, horizon=2000)
        res = z.mean_attraction_search(two_cycle_map, 0.1, two_cycle_tower, cfg)
        x_orb = two_cycle_map.orbit(0.1, 200)
        z_orb = two_cycle_map.orbit(res.z, 200)
        assert abs(x_orb[-1] - z_orb[-1]) < 1e-6
        assert abs(x_orb[-2] - z_orb[-2]) < 1e-6

    def test_not_attracted(self, two_cycle_map, two_cycle_tower):
        cfg = z.ProbeConfig(epsilon=1e-3, horizon=5)
        with pytest.raises(z.NotAttractedError):
            z.mean_attraction_search(two_cycle_map, 0.1, two_cycle_tower, cfg)

    def test_roundtrip(self, feig_map, feig_tower):
        cfg = z.ProbeConfig(epsilon=0.05, horizon=100)
        res = z.mean_attraction_search(feig_map, 0.5, feig_tower, cfg)
        assert z.AttractionResult.from_json_dict(res.to_json_dict()) == res


class TestObservables:
    def test_builtins(self, feig_map):
        dom = feig_map.domain
        xs = np.linspace(0, 1, 11)
        assert np.allclose(z.make_observable("x", dom)(xs), xs)
        assert np.allclose(z.make_observable("one", dom)(xs), 1.0)
        assert np.allclose(z.make_observable("cos:0", dom)(xs), 1.0)
        c1 = z.make_observable("cos:1", dom)(xs)
        assert c1[0] == pytest.approx(1.0)
        assert c1[5] == pytest.approx(-1.0)

    def test_table_interpolation(self, tmp_path):
        path = tmp_path / "phi.csv"
        path.write_text("0,0\n1,2\n")
        obs = z.make_observable(f"table:{path}", (0.0, 1.0))
        assert obs(np.array([0.25]))[0] == pytest.approx(0.5)

    def test_table_must_cover_domain(self):
        with pytest.raises(ValueError):
            z.table_observable([0.2, 0.8], [0.0, 1.0], (0.0, 1.0))

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            z.make_observable("poly:3", (0.0, 1.0))


class TestDisjointness:
    def test_constant_control_is_one(self, two_cycle_map):
        ones = z.ArithmeticSequence(np.ones(1000), label="ones")
        series = z.disjointness_run(ones, "one", two_cycle_map, 0.1, [100, 1000])
        assert series.values == (1.0, 1.0)

    def test_constant_phi_reduces_to_cesaro_exactly(self, two_cycle_map,
                                                    mobius_million):
        sched = [10**3, 10**5]
        series = z.disjointness_run(mobius_million, "one", two_cycle_map, 0.1, sched)
        plain = z.cesaro_average(mobius_million, sched)
        assert series.values == plain.values

    def test_mobius_coordinate_decays(self, feig_map, mobius_million):
        series = z.disjointness_run(mobius_million, "x", feig_map, 0.5,
                                    [10**4, 10**6])
        assert abs(series.values[-1]) < 0.01
        assert abs(series.values[-1]) < abs(series.values[0])

    def test_linear_in_phi(self, two_cycle_map, mobius_million):
        # alpha*x + beta is exactly representable by a two-knot table
        alpha, beta = 0.7, -0.2
        sched = [10**3, 10**4]
        sx = z.disjointness_run(mobius_million, "x", two_cycle_map, 0.1, sched)
        s1 = z.disjointness_run(mobius_million, "one", two_cycle_map, 0.1, sched)
        table = z.table_observable([0.0, 1.0], [beta, alpha + beta], (0.0, 1.0))
        smix = z.disjointness_run(mobius_million, table, two_cycle_map, 0.1, sched)
        for m, a, b in zip(smix.values, sx.values, s1.values):
            assert m == pytest.approx(alpha * a + beta * b, abs=1e-12)

    def test_orbit_reuse(self, feig_map, mobius_million):
        orbit = feig_map.orbit(0.5, 10**4)
        s1 = z.disjointness_run(mobius_million, "x", feig_map, 0.5, [10**4])
        s2 = z.disjointness_run(mobius_million, "x", feig_map, 0.5, [10**4],
                                orbit=orbit)
        assert s1.values == s2.values

    def test_schedule_beyond_sequence_rejected(self, feig_map):
        c = z.ArithmeticSequence(np.ones(100))
        with pytest.raises(ValueError):
            z.disjointness_run(c, "x", feig_map, 0.5, [200])

    def test_non_oscillating_sequence_does_not_decay(self, two_cycle_map):
        # contrapositive control: c = 1 fails the oscillation test at t = 0
        # and its weighted averages against a nontrivial attractor stay away
        # from zero
        N = 10**4
        ones = z.ArithmeticSequence(np.ones(N), label="ones")
        rep = z.oscillation_test(ones, schedule=[N // 100, N // 10, N])
        assert rep.verdict == "violation-witness"
        series = z.disjointness_run(ones, "x", two_cycle_map, 0.1,
                                    [N // 100, N // 10, N])
        assert all(abs(v) > 0.1 for v in series.values)
        assert abs(series.values[-1]) > 0.5
