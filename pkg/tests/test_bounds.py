#!/usr/bin/env python
#
#  test_bounds.py
#  PartialTransposeMoments
#
import os
import math
import unittest
from fractions import Fraction

from ptmoments.utils import PtmUsageError
from ptmoments.moments import SubspaceSpec, LPTriple, exact_moment
from ptmoments.bounds import (BRANCH_WIDE,
                              BRANCH_NARROW,
                              UNSPECIFIED,
                              branch,
                              lp_argmax,
                              lp_brute,
                              lp_dual_bound,
                              explicit_moment_bound,
                              alpha_bound_check,
                              kbound_shape,
                              reference_scale,
                              select_order,
                              weak_mult_exponent,
                              holder_exponent,
                              entropy_floor,
                              thm_main_bounds)

SKIP = False
SKIP_SLOW = not os.environ.get('PTMOMENTS_SLOW_TESTS')

@unittest.skipIf(SKIP, "skipping tests")
class LinearProgramTests(unittest.TestCase):
    def test_wide(self):
        spec = SubspaceSpec(2, 4, 2)
        assert branch(spec) == BRANCH_WIDE
        value, triple = lp_argmax(spec, 2)
        assert value == 128
        assert triple == LPTriple(2, 2, 1)
        assert lp_dual_bound(spec, 2) == 128

    def test_equality_anchor(self):
        spec = SubspaceSpec(2, 2, 2)
        assert lp_brute(spec, 2) == 32
        assert lp_dual_bound(spec, 2) == 32

    def test_narrow(self):
        spec = SubspaceSpec(2, 16, 1)
        assert branch(spec) == BRANCH_NARROW
        assert lp_argmax(spec, 2) == (1024, LPTriple(2, 2, 1))
        assert lp_dual_bound(spec, 2) == 8192

    def test_narrow_cubic(self):
        spec = SubspaceSpec(2, 8, 2)
        assert branch(spec) == BRANCH_NARROW
        assert lp_argmax(spec, 3) == (4096, LPTriple(2, 3, 1))
        assert lp_dual_bound(spec, 3) == 8192

    def test_argmax_is_valid(self):
        for spec in (SubspaceSpec(2, 3, 5), SubspaceSpec(3, 3, 1), SubspaceSpec(4, 16, 64)):
            for k in range(1, 9):
                value, t = lp_argmax(spec, k)
                assert t.is_valid(k)
                assert value == spec.d_A ** t.a * spec.d_B ** t.b * spec.r ** t.c

    def test_weak_duality(self):
        for dA in (1, 2, 3):
            for dB in (dA, dA + 1, 4 * dA):
                for r in sorted({1, min(2, dA * dB), dA * dB}):
                    spec = SubspaceSpec(dA, dB, r)
                    for k in range(1, 7):
                        assert lp_brute(spec, k) <= lp_dual_bound(spec, k)
        for dims in ((1, 16, 16), (5, 8, 7), (16, 16, 64), (3, 16, 2), (8, 8, 1)):
            spec = SubspaceSpec(*dims)
            for k in (10, 15, 20):
                assert lp_brute(spec, k) <= lp_dual_bound(spec, k), (dims, k)

    @unittest.skipIf(SKIP_SLOW, "skipping slow tests")
    def test_weak_duality_grid(self):
        for dA in range(1, 17):
            for dB in range(dA, 17):
                for r in range(1, min(64, dA * dB) + 1):
                    spec = SubspaceSpec(dA, dB, r)
                    for k in range(1, 21):
                        assert lp_brute(spec, k) <= lp_dual_bound(spec, k), (dA, dB, r, k)

@unittest.skipIf(SKIP, "skipping tests")
class MomentBoundTests(unittest.TestCase):
    def test_explicit_bound(self):
        assert explicit_moment_bound(SubspaceSpec(1, 1, 1), 1, strict = False) == 3
        with self.assertRaises(PtmUsageError):
            explicit_moment_bound(SubspaceSpec(1, 1, 1), 1)
        with self.assertRaises(PtmUsageError):
            explicit_moment_bound(SubspaceSpec(2, 2, 4), 2)

    def test_bound_dominates_exact(self):
        for spec in (SubspaceSpec(3, 3, 6), SubspaceSpec(3, 4, 8), SubspaceSpec(4, 4, 12)):
            assert exact_moment(spec, 2) <= explicit_moment_bound(spec, 2)
        spec = SubspaceSpec(4, 4, 12)
        assert exact_moment(spec, 3) <= explicit_moment_bound(spec, 3)

    def test_bound_dominates_exact_grid(self):
        # every (d_A <= d_B <= 6, r <= 12, k <= 6) with k <= (r/2)^(2/3)
        points = 0
        for dA in range(1, 7):
            for dB in range(dA, 7):
                for r in range(1, min(12, dA * dB) + 1):
                    spec = SubspaceSpec(dA, dB, r)
                    for k in range(1, 7):
                        if 4 * k ** 3 > r * r or k > spec.d:
                            continue
                        assert exact_moment(spec, k) <= explicit_moment_bound(spec, k), \
                                (dA, dB, r, k)
                        points += 1
        assert points > 200

    def test_alpha_bound(self):
        rep = alpha_bound_check(SubspaceSpec(3, 3, 6), 2)
        assert rep.passed
        assert 0 < rep.max_ratio <= 1
        with self.assertRaises(PtmUsageError):
            alpha_bound_check(SubspaceSpec(2, 2, 4), 2)

    def test_shapes(self):
        assert kbound_shape(SubspaceSpec(4, 4, 4), 2) / 2 ** 22 == 1
        assert kbound_shape(SubspaceSpec(2, 16, 1), 2) / 2 ** 23 == 1
        assert math.isinf(kbound_shape(SubspaceSpec(2, 2, 1), 10 ** 3))
        assert reference_scale(SubspaceSpec(4, 4, 4)) == 128
        assert reference_scale(SubspaceSpec(2, 16, 1)) == 128
        assert reference_scale(SubspaceSpec(16, 16, 16)) == 64

    def test_select_order(self):
        assert select_order(6) == 2
        assert select_order(16) == 2
        assert select_order(17) == 4
        assert select_order(4) is None
        assert select_order(1) is None

@unittest.skipIf(SKIP, "skipping tests")
class ExponentTests(unittest.TestCase):
    def test_weak_multiplicativity(self):
        rep = weak_mult_exponent(SubspaceSpec(2 ** 15, 2 ** 15, 2 ** 3))
        assert rep.branch == BRANCH_WIDE
        self.assertAlmostEqual(rep.epsilon, 1 / 3)
        self.assertAlmostEqual(rep.exponent, 1 / 6)
        self.assertAlmostEqual(rep.threshold, 2 ** (-27 / 6))
        assert not rep.vacuous

        rep = weak_mult_exponent(SubspaceSpec(2 ** 10, 2 ** 10, 2 ** 2))
        assert rep.vacuous
        self.assertAlmostEqual(rep.exponent, 0)

        rep = weak_mult_exponent(SubspaceSpec(2 ** 9, 2 ** 20, 1))
        assert rep.branch == BRANCH_NARROW
        self.assertAlmostEqual(rep.epsilon, 1)
        assert rep.vacuous

        with self.assertRaises(PtmUsageError):
            weak_mult_exponent(SubspaceSpec(2, 2, 4))
        with self.assertRaises(PtmUsageError):
            weak_mult_exponent(SubspaceSpec(1, 8, 1))

    def test_holder(self):
        assert holder_exponent(Fraction(1, 2), 2) == Fraction(1, 4)
        assert holder_exponent(Fraction(1, 2), math.inf) == Fraction(1, 2)
        assert holder_exponent(1, 4) == Fraction(3, 4)
        with self.assertRaises(PtmUsageError):
            holder_exponent(Fraction(1, 2), 1)
        with self.assertRaises(PtmUsageError):
            holder_exponent(0, 2)

    def test_entropy_floor(self):
        rep = entropy_floor(SubspaceSpec(2 ** 10, 2 ** 10, 2 ** 10))
        assert rep.leading == 5
        assert rep.floor == -3
        assert rep.vacuous
        rep = entropy_floor(SubspaceSpec(2 ** 12, 2 ** 20, 1))
        assert rep.branch == BRANCH_NARROW
        assert rep.leading == 12
        assert rep.floor == 4
        assert not rep.vacuous
        assert entropy_floor(SubspaceSpec(2 ** 12, 2 ** 20, 1), constant = 0).floor == 12

@unittest.skipIf(SKIP, "skipping tests")
class MainBoundTests(unittest.TestCase):
    def test_small_system(self):
        rep = thm_main_bounds(SubspaceSpec(4, 4, 4))
        assert rep.k == 2
        assert not rep.k_rule_satisfied
        assert rep.exact_moment == 4
        self.assertAlmostEqual(rep.moment_root, 2.0)
        assert rep.explicit_bound is None
        assert rep.lp_brute <= rep.lp_dual
        assert rep.weak_mult.vacuous
        assert rep.constants == {'C': UNSPECIFIED, "C'": UNSPECIFIED}
        rep = thm_main_bounds(SubspaceSpec(5, 6, 5))
        assert rep.k == 2 and not rep.k_rule_satisfied
        rep = thm_main_bounds(SubspaceSpec(6, 6, 6))
        assert rep.k == 2 and rep.k_rule_satisfied

    def test_too_small(self):
        for dims in ((1, 1, 1), (2, 2, 1), (2, 3, 1), (3, 3, 3), (4, 4, 3), (3, 8, 8)):
            with self.assertRaises(PtmUsageError):
                thm_main_bounds(SubspaceSpec(*dims))

    def test_selected_order(self):
        spec = SubspaceSpec(17, 17, 17)
        rep = thm_main_bounds(spec)
        assert rep.k == 4
        assert rep.k_rule_satisfied
        assert rep.lp_dual_squared is not None
        assert rep.exact_moment <= rep.explicit_bound
        self.assertAlmostEqual(rep.moment_root, float(rep.exact_moment) ** 0.25)

    def test_tails(self):
        rep = thm_main_bounds(SubspaceSpec(4, 4, 4))
        assert rep.k == 2
        assert rep.markov_tail(1) == 256
        self.assertAlmostEqual(rep.tail_shape(1), 4 ** (16 / 3))
        assert rep.tail_shape(2) < rep.tail_shape(1)

    def test_full_rank(self):
        rep = thm_main_bounds(SubspaceSpec(4, 4, 16))
        assert rep.weak_mult is None
        assert rep.exact_moment == 16

if __name__ == '__main__':
    unittest.main()
