import math

import numpy as np
import pytest

import zelab as z


class TestMapSpec:
    def test_parse_print_roundtrip(self):
        for text in ("logistic r=3.5 domain=[0,1]",
                     "tent s=1.8 domain=[0,1]",
                     "quadratic c=-1.25 domain=[-1.5,1.5]",
                     "piecewise-linear knots=0:0.2,0.5:0.9,1:0.1 domain=[0,1]"):
            f = z.parse_map(text)
            again = z.parse_map(str(f))
            assert again.family == f.family
            assert again.params == f.params
            assert again.domain == f.domain

    def test_default_domains(self):
        assert z.parse_map("logistic r=3.5").domain == (0.0, 1.0)
        f = z.parse_map("quadratic c=-1")
        beta = (1 + math.sqrt(5)) / 2
        assert f.domain == pytest.approx((-beta, beta))

    def test_self_map_violation_is_construction_error(self):
        with pytest.raises(ValueError, match="into itself"):
            z.MapSpec("logistic", (4.2,), (0.0, 1.0))
        with pytest.raises(ValueError, match="into itself"):
            z.MapSpec("tent", (2.2,), (0.0, 1.0))

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            z.MapSpec("cubic", (1.0,), (0.0, 1.0))
        with pytest.raises(ValueError):
            z.parse_map("cubic a=1")

    def test_malformed_text(self):
        with pytest.raises(ValueError):
            z.parse_map("logistic 3.5")
        with pytest.raises(ValueError):
            z.parse_map("logistic r=3.5 bogus=1")


class TestIterate:
    def test_logistic_critical_collapse(self):
        f = z.parse_map("logistic r=4")
        assert z.iterate(f, 0.5, 4).tolist() == [0.5, 1.0, 0.0, 0.0, 0.0]

    def test_fixed_point_constant_orbit(self):
        f = z.parse_map("logistic r=3.2")
        x = 1 - 1 / 3.2
        orbit = z.iterate(f, x, 50)
        assert np.all(orbit == x)

    def test_tent_fixed_point(self):
        f = z.parse_map("tent s=2")
        orbit = z.iterate(f, 2 / 3, 10)
        assert np.all(np.abs(orbit - 2 / 3) < 1e-12)

    def test_zeroth_iterate_is_identity(self):
        f = z.parse_map("logistic r=3.5")
        assert z.iterate(f, 0.3, 0).tolist() == [0.3]

    def test_domain_enforced(self):
        f = z.parse_map("logistic r=3.5")
        with pytest.raises(ValueError):
            z.iterate(f, 1.5, 3)

    def test_orbit_confinement(self):
        for text in ("logistic r=3.9", "tent s=1.99", "quadratic c=-1.9"):
            f = z.parse_map(text)
            a, b = f.domain
            x0 = 0.3 * a + 0.7 * b
            orbit = f.orbit(x0, 5000)
            assert orbit.min() >= a - 1e-9 * (b - a)
            assert orbit.max() <= b + 1e-9 * (b - a)


class TestPeriodicPoints:
    def test_low_r_fixed_points(self):
        f = z.parse_map("logistic r=1.5")
        res = z.periodic_points(f, 1, grid=4096)
        pts = res.points()
        assert len(pts) == 2
        assert pts[0] == pytest.approx(0.0, abs=1e-9)
        assert pts[1] == pytest.approx(1 / 3, abs=1e-9)

    def test_two_cycle_at_r32(self):
        f = z.parse_map("logistic r=3.2")
        res = z.periodic_points(f, 2, grid=4096)
        cycles = [pts for pts, q in res.orbits if q == 2]
        assert len(cycles) == 1
        # the 2-cycle solves x = ((r+1) +- sqrt((r-3)(r+1))) / (2r)
        r = 3.2
        want = sorted(((r + 1 + s * math.sqrt((r - 3) * (r + 1))) / (2 * r)
                       for s in (-1, 1)))
        assert cycles[0] == pytest.approx(want, abs=1e-9)

    def test_period_three_window(self):
        f = z.parse_map("logistic r=3.83")
        res = z.periodic_points(f, 3, grid=2**14)
        assert 3 in res.primitive_periods()

    def test_primitive_period_divides_search_period(self):
        f = z.parse_map("logistic r=3.9")
        for p in (4, 6):
            res = z.periodic_points(f, p, grid=2**13)
            assert all(p % q == 0 for _, q in res.orbits)

    def test_rerun_at_primitive_period_recovers_orbit(self):
        f = z.parse_map("logistic r=3.2")
        res = z.periodic_points(f, 4, grid=2**13)
        for pts, q in res.orbits:
            again = z.periodic_points(f, q, grid=2**13)
            match = [p2 for p2, q2 in again.orbits if q2 == q
                     and np.allclose(p2, pts, atol=1e-8)]
            assert match, (pts, q)

    def test_caveat_flag_present(self):
        f = z.parse_map("logistic r=3.2")
        assert z.periodic_points(f, 1, grid=64).tangency_caveat is True

    def test_residual_below_reported_tolerance(self):
        for text, p in (("logistic r=3.9", 6), ("tent s=1.9", 4)):
            f = z.parse_map(text)
            res = z.periodic_points(f, p, grid=2**13)
            for pts, q in res.orbits:
                for x in pts:
                    y = x
                    for _ in range(q):
                        y = f.apply(y)
                    assert abs(y - x) < res.tolerance

    def test_validation(self):
        f = z.parse_map("logistic r=3.2")
        with pytest.raises(ValueError):
            z.periodic_points(f, 0)
        with pytest.raises(ValueError):
            z.periodic_points(f, 1, grid=1)


class TestEntropyScreen:
    def test_r35_zero_candidate(self):
        res = z.entropy_screen(z.parse_map("logistic r=3.5"), p_max=12)
        assert res.verdict == "zero-candidate"
        assert set(res.periods_found) <= {1, 2, 4}

    def test_r383_witness_period_three(self):
        res = z.entropy_screen(z.parse_map("logistic r=3.83"), p_max=12)
        assert res.verdict == "positive-witness"
        assert res.witness_period == 3

    def test_r2_only_fixed_points(self):
        res = z.entropy_screen(z.parse_map("logistic r=2"), p_max=12)
        assert res.verdict == "zero-candidate"
        assert set(res.periods_found) == {1}

    def test_sharkovskii_consistency_at_r39(self):
        res = z.entropy_screen(z.parse_map("logistic r=3.9"), p_max=6, grid=2**13)
        assert res.witness_period == 3
        assert {3, 5, 6} <= set(res.periods_found)

    def test_p_max_minimum(self):
        with pytest.raises(ValueError):
            z.entropy_screen(z.parse_map("logistic r=3.5"), p_max=2)

    def test_roundtrip(self):
        res = z.entropy_screen(z.parse_map("logistic r=2"), p_max=3, grid=512)
        assert z.ScreenResult.from_json_dict(res.to_json_dict()) == res


class TestPerron:
    def test_golden_mean_matrix(self):
        A = z.TransitionMatrix(np.array([[0, 1], [1, 1]]))
        res = z.perron_eigenvalue(A)
        assert res.irreducible
        assert res.value == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)

    def test_identity_reducible(self):
        res = z.perron_eigenvalue(z.TransitionMatrix(np.eye(2, dtype=int)))
        assert not res.irreducible
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_all_ones(self):
        res = z.perron_eigenvalue(z.TransitionMatrix(np.ones((2, 2), dtype=int)))
        assert res.value == pytest.approx(2.0, abs=1e-12)

    def test_zero_matrix_degenerate(self):
        res = z.perron_eigenvalue(z.TransitionMatrix(np.zeros((3, 3), dtype=int)))
        assert res.degenerate
        assert res.value == 0.0

    def test_permutation_matrices_exactly_one(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            perm = rng.permutation(5)
            P = np.zeros((5, 5), dtype=int)
            P[np.arange(5), perm] = 1
            res = z.perron_eigenvalue(z.TransitionMatrix(P))
            assert res.value == 1.0

    def test_monotone_in_entries(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            A = (rng.random((4, 4)) < 0.4).astype(int)
            zeros = np.argwhere(A == 0)
            if not len(zeros):
                continue
            i, j = zeros[rng.integers(len(zeros))]
            B = A.copy()
            B[i, j] = 1
            ea = z.perron_eigenvalue(z.TransitionMatrix(A)).value
            eb = z.perron_eigenvalue(z.TransitionMatrix(B)).value
            assert eb >= ea - 1e-9

    def test_agrees_with_dense_eigensolver(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            A = (rng.random((5, 5)) < 0.5).astype(int)
            ea = z.perron_eigenvalue(z.TransitionMatrix(A)).value
            want = max(abs(v) for v in np.linalg.eigvals(A))
            assert ea == pytest.approx(want, abs=1e-8)

    def test_text_roundtrip(self):
        A = z.TransitionMatrix.from_text("01,11")
        assert A.entries.tolist() == [[0, 1], [1, 1]]
        assert A.to_text() == "01,11"

    def test_binary_enforced(self):
        with pytest.raises(ValueError):
            z.TransitionMatrix(np.array([[0, 2], [1, 1]]))
        with pytest.raises(ValueError):
            z.TransitionMatrix(np.array([[0, 1, 1], [1, 1, 0]]))


class TestCascade:
    def test_k0_exact(self):
        assert z.locate_cascade_parameter(0) == pytest.approx(2.0, abs=1e-12)

    def test_k1_is_root_of_known_cubic(self):
        # r^3 - 4 r^2 + 8 = 0 has 1 + sqrt(5) as a root
        s1 = z.locate_cascade_parameter(1)
        assert s1 == pytest.approx(1 + math.sqrt(5), abs=1e-10)
        assert s1**3 - 4 * s1**2 + 8 == pytest.approx(0.0, abs=1e-8)

    def test_sequence_increasing_with_shrinking_gaps(self):
        s = [z.locate_cascade_parameter(k) for k in range(6)]
        gaps = np.diff(s)
        assert np.all(gaps > 0)
        assert np.all(np.diff(gaps) < 0)

    def test_accumulation_extrapolation(self):
        fit = z.cascade_accumulation(8)
        assert fit.accumulation == pytest.approx(3.5699, abs=1e-3)
        assert fit.delta == pytest.approx(4.669, abs=0.05)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            z.locate_cascade_parameter(-1)
