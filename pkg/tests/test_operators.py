#!/usr/bin/env python
#
#  test_operators.py
#  PartialTransposeMoments
#
import unittest
import numpy as np

from ptmoments.utils import PtmUsageError
from ptmoments.moments import SubspaceSpec
from ptmoments.experiments import EstimatorReport
from ptmoments.operators import (RngStream,
                                 HermitianOperator,
                                 haar_unitary,
                                 haar_state,
                                 random_projector,
                                 partial_transpose,
                                 operator_norm,
                                 swap_operator,
                                 antisym_projector,
                                 antisym_square_witness,
                                 product_state_value,
                                 check_effect,
                                 seesaw_hsep,
                                 wishart_sample,
                                 random_hermitian,
                                 ppt_test_state,
                                 relaxation_check,
                                 DENSE_EIGEN_SIDE,
                                 tensor_operators,
                                 multiplicativity_check)

SKIP = False

@unittest.skipIf(SKIP, "skipping tests")
class StreamTests(unittest.TestCase):
    def test_reproducible(self):
        a = RngStream(7, 3).generator().standard_normal(5)
        b = RngStream(7, 3).generator().standard_normal(5)
        c = RngStream(7, 4).generator().standard_normal(5)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)
        assert RngStream(7, 3).substream(4) == RngStream(7, 4)

    def test_invalid(self):
        with self.assertRaises(PtmUsageError):
            RngStream(-1)
        with self.assertRaises(PtmUsageError):
            RngStream(0, 2 ** 64)

@unittest.skipIf(SKIP, "skipping tests")
class OperatorTests(unittest.TestCase):
    def test_hermitian(self):
        op = HermitianOperator(np.diag([1.0, -3.0]))
        assert op.dims == (2, 1)
        assert op.trace() == -2
        assert operator_norm(op) == 3
        with self.assertRaises(PtmUsageError):
            HermitianOperator([[0, 1], [0, 0]])
        with self.assertRaises(PtmUsageError):
            HermitianOperator(np.eye(4), (3, 2))
        with self.assertRaises(PtmUsageError):
            HermitianOperator(np.ones(3))

    def test_hermitian_tolerance(self):
        skew = np.array([[0.0, 1.0], [-1.0, 0.0]])
        with self.assertRaises(PtmUsageError):
            HermitianOperator(np.eye(2) + 1e-10 * skew)
        op = HermitianOperator(np.eye(2) + 1e-14 * skew)
        assert np.array_equal(op.matrix, op.matrix.conj().T)
        # effects keep a looser spectral slack
        check_effect(np.diag([1 + 1e-10, 0.5]))
        check_effect(np.diag([-1e-10, 0.5]))
        with self.assertRaises(PtmUsageError):
            check_effect(np.diag([1 + 1e-8, 0.5]))

    def test_haar_statistics(self):
        d, n = 4, 2000
        us = [haar_unitary(d, RngStream(21, i)) for i in range(n)]
        # E|U_11|^2 = 1/d and E U_11 = 0
        assert EstimatorReport.from_samples([abs(u[0, 0]) ** 2 for u in us]).within(1 / d)
        assert EstimatorReport.from_samples([u[0, 0].real for u in us]).within(0)
        assert EstimatorReport.from_samples([u[0, 0].imag for u in us]).within(0)
        assert EstimatorReport.from_samples([abs(u[2, 1]) ** 2 for u in us]).within(1 / d)

    def test_pure_state_ceiling(self):
        spec = SubspaceSpec(3, 4, 1)
        for i in range(20):
            p = random_projector(spec, RngStream(13, i)).operator
            assert operator_norm(partial_transpose(p)) <= 1 + 1e-9
        # with d_A = 1 the partial transpose is a full transpose
        for dB in (1, 2, 5):
            p = random_projector(SubspaceSpec(1, dB, 1), RngStream(14, dB)).operator
            self.assertAlmostEqual(operator_norm(partial_transpose(p)), 1.0)

    def test_large_operator_norm(self):
        side = DENSE_EIGEN_SIDE + 76
        g = RngStream(17).generator()
        q, _ = np.linalg.qr(g.standard_normal((side, side)))
        lam = np.linspace(-1, 1, side)
        lam[0] = -3
        x = (q * lam) @ q.T
        x = HermitianOperator((x + x.T) / 2)
        assert x.side > DENSE_EIGEN_SIDE
        self.assertAlmostEqual(operator_norm(x), 3.0, places = 8)

    def test_haar_unitary(self):
        u = haar_unitary(5, RngStream(1))
        assert np.allclose(u @ u.conj().T, np.eye(5))
        v = haar_state(6, RngStream(2))
        self.assertAlmostEqual(np.linalg.norm(v), 1.0)

    def test_random_projector(self):
        spec = SubspaceSpec(2, 3, 2)
        p = random_projector(spec, RngStream(0, 1)).operator
        assert p.dims == (2, 3)
        assert np.allclose(p.matrix @ p.matrix, p.matrix)
        self.assertAlmostEqual(p.trace(), 2.0)
        q = random_projector(spec, RngStream(0, 1)).operator
        assert np.array_equal(p.matrix, q.matrix)

    def test_partial_transpose(self):
        x = random_hermitian(6, RngStream(3), (2, 3))
        y = partial_transpose(partial_transpose(x))
        assert np.allclose(x.matrix, y.matrix)
        self.assertAlmostEqual(partial_transpose(x).trace(), x.trace())
        # F^Γ = d |Φ><Φ| with |Φ> maximally entangled
        for d in (2, 3):
            vals = partial_transpose(swap_operator(d), (d, d)).eigenvalues()
            self.assertAlmostEqual(vals[-1], d)
            self.assertAlmostEqual(operator_norm(partial_transpose(swap_operator(d), (d, d))), d)

    def test_antisymmetric(self):
        for d in (2, 3, 4, 20):
            p = antisym_projector(d)
            self.assertAlmostEqual(p.trace(), d * (d - 1) / 2)
            self.assertAlmostEqual(operator_norm(partial_transpose(p)), (d - 1) / 2)
            self.assertAlmostEqual(antisym_square_witness(d), (1 - 1 / d) / 2)
        with self.assertRaises(PtmUsageError):
            antisym_projector(1)

    def test_product_state_value(self):
        p = antisym_projector(2)
        e0, e1 = np.array([1, 0]), np.array([0, 1])
        self.assertAlmostEqual(product_state_value(p, e0, e1), 0.5)
        self.assertAlmostEqual(product_state_value(p, e0, e0), 0.0)
        with self.assertRaises(PtmUsageError):
            product_state_value(p, e0, np.ones(3))

    def test_check_effect(self):
        check_effect(np.eye(3) / 2)
        with self.assertRaises(PtmUsageError):
            check_effect(2 * np.eye(3))
        with self.assertRaises(PtmUsageError):
            seesaw_hsep(HermitianOperator(-np.eye(4), (2, 2)))

@unittest.skipIf(SKIP, "skipping tests")
class SeparableTests(unittest.TestCase):
    def test_seesaw_antisymmetric(self):
        for d in (2, 3):
            val = seesaw_hsep(antisym_projector(d), restarts = 4, rng = RngStream(0))
            self.assertAlmostEqual(val, 0.5, places = 6)

    def test_seesaw_antisymmetric_range(self):
        for d in range(2, 7):
            val = seesaw_hsep(antisym_projector(d), restarts = 2, rng = RngStream(d))
            self.assertAlmostEqual(val, 0.5, places = 8)

    def test_seesaw_below_ppt_norm(self):
        spec = SubspaceSpec(3, 3, 3)
        for i in range(100):
            m = random_projector(spec, RngStream(23, i)).operator
            val = seesaw_hsep(m, restarts = 4, rng = RngStream(24, i))
            assert val <= operator_norm(partial_transpose(m)) + 1e-6, i

    def test_seesaw_lower_bounds(self):
        spec = SubspaceSpec(2, 3, 3)
        m = random_projector(spec, RngStream(11)).operator
        val = seesaw_hsep(m, restarts = 8, rng = RngStream(12))
        first = seesaw_hsep(m, restarts = 1, rng = RngStream(12))
        assert first <= val <= 1 + 1e-9
        # product states are PPT
        assert val <= operator_norm(partial_transpose(m)) + 1e-9

    def test_seesaw_floor(self):
        spec = SubspaceSpec(4, 4, 5)
        for i in range(3):
            m = random_projector(spec, RngStream(9, i)).operator
            val = seesaw_hsep(m, rng = RngStream(10, i))
            assert val >= 1 / spec.d_A - 1e-6
            assert val <= operator_norm(partial_transpose(m)) + 1e-6

    def test_relaxation(self):
        spec = SubspaceSpec(2, 2, 2)
        m = random_projector(spec, RngStream(5)).operator
        rho = ppt_test_state(2, 2, RngStream(6))
        assert rho.eigenvalues()[0] >= 0
        assert partial_transpose(rho).eigenvalues()[0] >= -1e-12
        self.assertAlmostEqual(rho.trace(), 1.0)
        assert relaxation_check(m, rho).passed

    def test_multiplicativity(self):
        m = random_projector(SubspaceSpec(2, 2, 2), RngStream(1)).operator
        n = random_projector(SubspaceSpec(2, 3, 3), RngStream(2)).operator
        joint = tensor_operators(m, n)
        assert joint.dims == (4, 6)
        rep = multiplicativity_check(m, n)
        assert rep.passed
        self.assertAlmostEqual(rep.joint, rep.product)

    def test_wishart(self):
        w = wishart_sample(6, 3, RngStream(4), (2, 3))
        vals = w.eigenvalues()
        assert vals[0] >= -1e-12
        assert np.sum(vals > 1e-9) == 3

    def test_wishart_trace(self):
        traces = [wishart_sample(8, 3, RngStream(30, i)).trace() for i in range(2000)]
        rep = EstimatorReport.from_samples(traces)
        assert rep.within(3)
        assert rep.min > 0

if __name__ == '__main__':
    unittest.main()
