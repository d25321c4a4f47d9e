#
#  ptmoments/experiments.py
#  PartialTransposeMoments
#
#  Seeded Monte-Carlo estimators. Sample i always draws from its own stream
#  (seed, offset + i), so results do not depend on the thread count.
#
import logging
log = logging.getLogger(__name__)

import math
import numpy as np
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

from .utils import PtmUsageError, InfeasibleSizeError, check_cap, check_positive
from .bounds import weak_mult_exponent, reference_scale
from .operators import (RngStream,
                        SEESAW_RESTARTS,
                        SEESAW_TOL,
                        SEESAW_MAX_ITER,
                        random_projector,
                        partial_transpose,
                        operator_norm,
                        haar_state,
                        product_state_value,
                        wishart_sample)

MAX_DENSE_DIMENSION = 4096
ROUNDOFF_TOL = 1e-9

@dataclass
class EstimatorReport:
    """ Summary statistics of a sample; `se` is the sample stdev / √n. """
    n: int
    mean: float
    se: float
    min: float
    max: float
    q05: float
    q50: float
    q95: float
    samples: list = None
    extra: dict = field(default_factory = dict)

    @classmethod
    def from_samples(cls, values, keep = False, **extra):
        x = np.asarray(values, dtype = float)
        if x.size == 0:
            raise PtmUsageError('Cannot summarize an empty sample.')
        se = float(np.std(x, ddof = 1) / math.sqrt(x.size)) if x.size > 1 else 0.0
        q05, q50, q95 = (float(q) for q in np.quantile(x, [0.05, 0.5, 0.95]))
        return cls(int(x.size), float(np.mean(x)), se, float(x.min()), float(x.max()),
                   q05, q50, q95, [float(v) for v in x] if keep else None, dict(extra))

    def within(self, value, nse = 4):
        """ True if `value` lies within `nse` standard errors of the mean.

        A relative floor of ROUNDOFF_TOL absorbs floating-point noise when
        every sample carries the same value and the standard error vanishes.
        """
        value = float(value)
        return abs(self.mean - value) <= nse * self.se + ROUNDOFF_TOL * max(1.0, abs(value))

    def summary(self):
        return {'n': self.n, 'mean': self.mean, 'se': self.se, 'min': self.min,
                'max': self.max, 'q05': self.q05, 'q50': self.q50, 'q95': self.q95}

class Experiment:
    """ Runtime settings shared by all stochastic commands.

    Args:
        seed (int, optional): The base seed. Defaults to 0.
        threads (int, optional): Worker threads for sampling. Defaults to 1.
        per_sample (bool, optional): Keep every sample in the reports.
            Defaults to False.
    """
    def __init__(self, seed = 0, threads = 1, per_sample = False):
        self.seed = seed
        self.threads = threads
        self.per_sample = per_sample
        self.restarts = SEESAW_RESTARTS
        self.tol = SEESAW_TOL
        self.max_iter = SEESAW_MAX_ITER

    @property
    def seed(self):
        return self._seed

    @seed.setter
    def seed(self, value):
        if not isinstance(value, int) or not 0 <= value < 2 ** 64:
            raise PtmUsageError(f'The seed must be a 64-bit unsigned integer, got {value!r}.')
        self._seed = value

    @property
    def threads(self):
        return self._threads

    @threads.setter
    def threads(self, value):
        check_positive('threads', value)
        self._threads = value

    @property
    def restarts(self):
        return self._restarts

    @restarts.setter
    def restarts(self, value):
        check_positive('restarts', value)
        self._restarts = value

    @property
    def tol(self):
        return self._tol

    @tol.setter
    def tol(self, value):
        if not value > 0:
            raise PtmUsageError(f'Tolerance must be positive, got {value}.')
        self._tol = float(value)

    @property
    def max_iter(self):
        return self._max_iter

    @max_iter.setter
    def max_iter(self, value):
        check_positive('max_iter', value)
        self._max_iter = value

    def streams(self, n, offset = 0):
        return [RngStream(self.seed, offset + i) for i in range(n)]

    def sample(self, fn, n, offset = 0):
        """ [fn(generator of stream offset + i) for i < n], in stream order. """
        check_positive('samples', n)
        gens = (s.generator() for s in self.streams(n, offset))
        if self.threads == 1:
            return [fn(g) for g in gens]
        with ThreadPoolExecutor(max_workers = self.threads) as executor:
            return list(executor.map(fn, gens))

def _setup(rng, experiment):
    """ Resolve (experiment, stream offset) from the optional arguments. """
    if experiment is None:
        experiment = Experiment()
    if rng is None:
        return experiment, 0
    if isinstance(rng, RngStream):
        exp = Experiment(int(rng.seed), experiment.threads, experiment.per_sample)
        exp.restarts, exp.tol, exp.max_iter = \
                experiment.restarts, experiment.tol, experiment.max_iter
        return exp, int(rng.stream_index)
    raise PtmUsageError(f'Expected an RngStream, got {rng!r}.')

def _check_dense(side):
    if side > MAX_DENSE_DIMENSION:
        raise InfeasibleSizeError(
                f'Dimension {side} exceeds the dense cap {MAX_DENSE_DIMENSION}.')

def mc_moment(spec, k, n, rng = None, experiment = None):
    """ Estimate E tr[(M^Γ)^k] from n sampled projectors. """
    check_positive('k', k)
    _check_dense(spec.d)
    exp, offset = _setup(rng, experiment)

    def one(g):
        vals = partial_transpose(random_projector(spec, g).operator).eigenvalues()
        return float(np.sum(vals ** k))

    values = exp.sample(one, n, offset)
    rep = EstimatorReport.from_samples(values, exp.per_sample, k = k)
    log.info(f'E tr[(M^Γ)^{k}] ≈ {rep.mean:.6g} ± {rep.se:.2g} ({n} samples).')
    return rep

def mc_norm(spec, n, rng = None, experiment = None):
    """ Estimate E‖M^Γ‖∞ and its ratio to √(r/(d_A d_B)) or 1/d_A. """
    _check_dense(spec.d)
    exp, offset = _setup(rng, experiment)

    def one(g):
        return operator_norm(partial_transpose(random_projector(spec, g).operator))

    values = exp.sample(one, n, offset)
    scale = reference_scale(spec) / 2 ** 8
    rep = EstimatorReport.from_samples(values, exp.per_sample, scale = scale)
    rep.extra['ratio'] = rep.mean / scale
    log.info(f'E‖M^Γ‖∞ ≈ {rep.mean:.6g}, {rep.extra["ratio"]:.4g} times the scale.')
    return rep

def mc_product_state(spec, n, rng = None, experiment = None):
    """ Average <ψ_A ⊗ ψ_B|M|ψ_A ⊗ ψ_B> over Haar product states for one
    projector M (drawn from the first stream); the mean should be r/(d_A d_B). """
    _check_dense(spec.d)
    exp, offset = _setup(rng, experiment)
    m = random_projector(spec, RngStream(exp.seed, offset)).operator

    def one(g):
        return product_state_value(m, haar_state(spec.d_A, g), haar_state(spec.d_B, g))

    values = exp.sample(one, n, offset + 1)
    return EstimatorReport.from_samples(values, exp.per_sample, expected = spec.r / spec.d)

def wishart_limit(alpha_w):
    """ √α (2 + √α). """
    s = math.sqrt(alpha_w)
    return s * (2 + s)

def wishart_pt_experiment(d, alpha_w, n, rng = None, experiment = None):
    """ λ_max of the partial transpose of a (d², ⌊α d²⌋)-Wishart matrix on
    C^d ⊗ C^d, compared with the limit √α (2 + √α). """
    check_positive('d', d)
    _check_dense(d * d)
    if not 0 < alpha_w <= 1:
        raise PtmUsageError(f'alpha must lie in (0, 1], got {alpha_w}.')
    rw = max(1, math.floor(alpha_w * d * d))
    exp, offset = _setup(rng, experiment)

    def one(g):
        return float(partial_transpose(wishart_sample(d * d, rw, g, (d, d))).eigenvalues()[-1])

    values = exp.sample(one, n, offset)
    limit = wishart_limit(float(alpha_w))
    rep = EstimatorReport.from_samples(values, exp.per_sample, limit = limit, rank = rw)
    rep.extra['deviation'] = rep.mean - limit
    rep.extra['relative_deviation'] = (rep.mean - limit) / limit
    return rep

@dataclass
class CertificateReport:
    """ Per-sample ‖M^Γ‖∞ against the weak-multiplicativity threshold.

    A sample passes when its norm stays below the threshold. By
    multiplicativity of ‖·^Γ‖∞ under tensor products, each norm x also
    bounds the n-copy separable value by x^n.
    """
    branch: str
    epsilon: float
    exponent: float
    threshold: float
    degenerate: bool
    vacuous: bool
    norms: list
    passed: list

    @property
    def failure_fraction(self):
        return sum(not p for p in self.passed) / len(self.passed)

    def copy_bounds(self, copies):
        """ ‖M^Γ‖∞^n for each sample: upper bounds on h_SEP(M^{⊗n}). """
        return [x ** copies for x in self.norms]

def certificate(spec, n, rng = None, experiment = None, allow_vacuous = False):
    """ Sample projectors and test ‖M^Γ‖∞ < (r/(d_A d_B))^{1/2-ε}
    (or (1/d_A)^{1-ε'}).

    For r = d_A·d_B the projector is the identity; every sample is reported
    as a failure.

    Args:
        spec (SubspaceSpec): The subspace dimensions.
        n (int): Number of sampled projectors.
        rng (RngStream, optional): Seed and first stream index.
        experiment (Experiment, optional): Threads and sample retention.
        allow_vacuous (bool, optional): Report against a vacuous threshold
            instead of refusing. Defaults to False.

    Raises:
        PtmUsageError: when the exponent is vacuous and allow_vacuous is False.
    """
    _check_dense(spec.d)
    degenerate = spec.r == spec.d
    if degenerate:
        log.warning('r = d_A·d_B: M is the identity and no certificate can pass.')
        wm, threshold = None, 1.0
    else:
        wm = weak_mult_exponent(spec)
        if wm.vacuous and not allow_vacuous:
            raise PtmUsageError(
                f'The exponent {wm.exponent:g} (ε = {wm.epsilon:g}) is vacuous for '
                f'd_A={spec.d_A}, d_B={spec.d_B}, r={spec.r}: the dimensions are too '
                f'small for a weak-multiplicativity certificate.')
        threshold = wm.threshold
    exp, offset = _setup(rng, experiment)

    def one(g):
        return operator_norm(partial_transpose(random_projector(spec, g).operator))

    norms = exp.sample(one, n, offset)
    passed = [False] * n if degenerate else [x < threshold for x in norms]
    rep = CertificateReport(wm.branch if wm else 'degenerate',
                            wm.epsilon if wm else None,
                            wm.exponent if wm else None,
                            threshold, degenerate,
                            wm.vacuous if wm else True,
                            norms, passed)
    log.info(f'Certificate failure fraction: {rep.failure_fraction:.3g} ({n} samples).')
    return rep
