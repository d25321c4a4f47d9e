#!/usr/bin/env python
#
#  test_experiments.py
#  PartialTransposeMoments
#
import os
import math
import unittest
from fractions import Fraction

from ptmoments.utils import PtmUsageError, InfeasibleSizeError
from ptmoments.moments import SubspaceSpec, exact_moment
from ptmoments.operators import RngStream
from ptmoments.experiments import (EstimatorReport,
                                   Experiment,
                                   mc_moment,
                                   mc_norm,
                                   mc_product_state,
                                   wishart_limit,
                                   wishart_pt_experiment,
                                   certificate)

SKIP = False
SKIP_SLOW = not os.environ.get('PTMOMENTS_SLOW_TESTS')

@unittest.skipIf(SKIP, "skipping tests")
class EstimatorTests(unittest.TestCase):
    def test_from_samples(self):
        rep = EstimatorReport.from_samples([1, 2, 3], keep = True, k = 2)
        assert rep.n == 3
        assert rep.mean == 2
        assert rep.q50 == 2
        assert rep.min == 1 and rep.max == 3
        self.assertAlmostEqual(rep.se, 1 / math.sqrt(3))
        assert rep.samples == [1.0, 2.0, 3.0]
        assert rep.extra == {'k': 2}
        assert rep.within(2.5, nse = 1)
        assert not rep.within(5)
        assert EstimatorReport.from_samples([4]).se == 0
        with self.assertRaises(PtmUsageError):
            EstimatorReport.from_samples([])

    def test_within_constant_sample(self):
        rep = EstimatorReport.from_samples([2 - 4e-16] * 5)
        assert rep.se == 0
        assert rep.within(2)
        assert rep.within(Fraction(2))
        assert not rep.within(2.001)
        assert not EstimatorReport.from_samples([0.0] * 3).within(1e-6)

    def test_experiment_settings(self):
        exp = Experiment(seed = 3, threads = 2)
        assert exp.streams(2, 5) == [RngStream(3, 5), RngStream(3, 6)]
        with self.assertRaises(PtmUsageError):
            Experiment(seed = -1)
        with self.assertRaises(PtmUsageError):
            Experiment(threads = 0)
        with self.assertRaises(PtmUsageError):
            exp.tol = 0
        with self.assertRaises(PtmUsageError):
            exp.sample(lambda g: 1, 0)

@unittest.skipIf(SKIP, "skipping tests")
class MonteCarloTests(unittest.TestCase):
    def test_thread_independence(self):
        spec = SubspaceSpec(2, 2, 2)
        a = mc_moment(spec, 3, 12, experiment = Experiment(seed = 5, threads = 1, per_sample = True))
        b = mc_moment(spec, 3, 12, experiment = Experiment(seed = 5, threads = 3, per_sample = True))
        assert a.samples == b.samples
        assert a.mean == b.mean
        c = mc_moment(spec, 3, 12, rng = RngStream(5, 0))
        assert c.mean == a.mean
        d = mc_moment(spec, 3, 12, rng = RngStream(5, 1))
        assert d.mean != a.mean

    def test_deterministic_orders(self):
        spec = SubspaceSpec(2, 3, 2)
        for k in (1, 2):
            rep = mc_moment(spec, k, 10, rng = RngStream(1))
            self.assertAlmostEqual(rep.mean, spec.r)
            self.assertAlmostEqual(rep.max, spec.r)

    def test_constant_moment_within_exact(self):
        # for d_A = d_B = r = 2, tr[(M^Γ)^3] = 2 on every sample
        spec = SubspaceSpec(2, 2, 2)
        exact = exact_moment(spec, 3)
        assert exact == 2
        rep = mc_moment(spec, 3, 50, rng = RngStream(31))
        assert rep.se < 1e-9
        assert rep.within(exact)

    def test_against_exact(self):
        spec = SubspaceSpec(2, 2, 1)
        rep = mc_moment(spec, 3, 2000, rng = RngStream(2024))
        assert rep.within(exact_moment(spec, 3), nse = 4)

    @unittest.skipIf(SKIP_SLOW, "skipping slow tests")
    def test_against_exact_large(self):
        exp = Experiment(seed = 7, threads = os.cpu_count() or 1)
        grid = [(2, 2, 1), (2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 3, 2), (3, 3, 3), (3, 3, 4)]
        for dims in grid:
            spec = SubspaceSpec(*dims)
            for k in (3, 4, 5):
                if k > spec.d:
                    continue
                rep = mc_moment(spec, k, 10 ** 4, experiment = exp)
                assert rep.within(exact_moment(spec, k)), (dims, k)
        rep = mc_moment(SubspaceSpec(2, 2, 1), 3, 10 ** 5, experiment = exp)
        assert rep.within(Fraction(7, 10))

    def test_norm(self):
        rep = mc_norm(SubspaceSpec(2, 2, 4), 5, rng = RngStream(0))
        self.assertAlmostEqual(rep.mean, 1.0)
        self.assertAlmostEqual(rep.extra['ratio'], 1.0)
        rep = mc_norm(SubspaceSpec(2, 16, 1), 5, rng = RngStream(0))
        self.assertAlmostEqual(rep.extra['scale'], 0.5)

    def test_product_state(self):
        spec = SubspaceSpec(2, 3, 3)
        rep = mc_product_state(spec, 1000, rng = RngStream(8))
        assert rep.extra['expected'] == 0.5
        assert rep.within(0.5, nse = 4)

    def test_product_state_mean(self):
        spec = SubspaceSpec(4, 4, 5)
        rep = mc_product_state(spec, 10 ** 4, experiment = Experiment(seed = 44, threads = 4))
        assert rep.extra['expected'] == 5 / 16
        assert rep.within(Fraction(5, 16), nse = 4)

    def test_dense_cap(self):
        with self.assertRaises(InfeasibleSizeError):
            mc_norm(SubspaceSpec(64, 65, 1), 1)

@unittest.skipIf(SKIP, "skipping tests")
class WishartTests(unittest.TestCase):
    def test_limit(self):
        assert wishart_limit(1) == 3
        self.assertAlmostEqual(wishart_limit(0.25), 1.25)

    def test_experiment(self):
        rep = wishart_pt_experiment(4, Fraction(1, 4), 20, rng = RngStream(3))
        assert rep.n == 20
        assert rep.extra['rank'] == 4
        self.assertAlmostEqual(rep.extra['limit'], 1.25)
        self.assertAlmostEqual(rep.extra['deviation'], rep.mean - 1.25)
        assert rep.min > 0
        with self.assertRaises(PtmUsageError):
            wishart_pt_experiment(4, 0, 5)
        with self.assertRaises(PtmUsageError):
            wishart_pt_experiment(4, 2, 5)

    def test_limit_anchors(self):
        rep = wishart_pt_experiment(16, Fraction(1, 4), 200, rng = RngStream(16))
        assert abs(rep.extra['relative_deviation']) < 0.15
        rep = wishart_pt_experiment(12, 1, 200, rng = RngStream(12))
        assert abs(rep.mean - 3) < 0.15 * 3

    def test_monotone_in_alpha(self):
        means = [wishart_pt_experiment(16, Fraction(1, q), 50, rng = RngStream(q)).mean
                 for q in (16, 8, 4)]
        assert means == sorted(means)

@unittest.skipIf(SKIP, "skipping tests")
class CertificateTests(unittest.TestCase):
    def test_vacuous(self):
        spec = SubspaceSpec(8, 8, 2)
        with self.assertRaises(PtmUsageError):
            certificate(spec, 3, rng = RngStream(0))
        rep = certificate(spec, 3, rng = RngStream(0), allow_vacuous = True)
        assert rep.vacuous
        assert not rep.degenerate
        assert rep.threshold > 1
        assert len(rep.norms) == 3
        assert all(rep.passed)
        assert rep.failure_fraction == 0
        bounds = rep.copy_bounds(2)
        assert all(abs(b - x * x) < 1e-12 for b, x in zip(bounds, rep.norms))

    def test_refused(self):
        with self.assertRaises(PtmUsageError):
            certificate(SubspaceSpec(16, 16, 4), 2)

    def test_degenerate(self):
        rep = certificate(SubspaceSpec(2, 2, 4), 4, rng = RngStream(1))
        assert rep.degenerate
        assert rep.branch == 'degenerate'
        assert rep.passed == [False] * 4
        assert rep.failure_fraction == 1
        for x in rep.norms:
            self.assertAlmostEqual(x, 1.0)

if __name__ == '__main__':
    unittest.main()
