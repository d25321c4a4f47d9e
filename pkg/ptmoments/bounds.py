#
#  ptmoments/bounds.py
#  PartialTransposeMoments
#
#  Upper bounds on the moments and on E‖M^Γ‖∞, the valid-triple linear
#  program and the exponent calculators built on top of them.
#
import logging
log = logging.getLogger(__name__)

import math
from math import factorial
from fractions import Fraction
from dataclasses import dataclass, field

from .utils import PtmUsageError, ceil_sqrt, check_positive
from .permutations import catalan, lemma2_count_bound
from .moments import (LPTriple,
                      MAX_MOMENT_DEGREE,
                      alpha_coefficients,
                      exact_moment)

BRANCH_WIDE = 'r >= d_B/d_A'
BRANCH_NARROW = 'r <= d_B/d_A'
SCALE_CONSTANT = 2 ** 8
ENTROPY_CONSTANT = 8
UNSPECIFIED = 'unspecified'
MIN_BOUND_SIZE = 4

def branch(spec):
    return BRANCH_WIDE if spec.wide else BRANCH_NARROW

def _valid_triples(k):
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            for c in range(1, k + 1):
                t = LPTriple(a, b, c)
                if t.is_valid(k):
                    yield t

def lp_argmax(spec, k):
    """ (value, triple) maximizing d_A^a d_B^b r^c over valid triples; the
    lexicographically first triple wins ties. """
    check_positive('k', k)
    pa = [spec.d_A ** i for i in range(k + 1)]
    pb = [spec.d_B ** i for i in range(k + 1)]
    pr = [spec.r ** i for i in range(k + 1)]
    best, arg = 0, None
    # every valid triple, lexicographically: a + b <= k + 2, c <= k + 1 - max(a, b)
    for a in range(1, k + 1):
        for b in range(1, min(k, k + 2 - a) + 1):
            ab = pa[a] * pb[b]
            for c in range(1, k + 2 - max(a, b)):
                val = ab * pr[c]
                if val > best:
                    best, arg = val, (a, b, c)
    return best, LPTriple(*arg)

def lp_brute(spec, k):
    return lp_argmax(spec, k)[0]

def lp_dual_squared(spec, k):
    """ The square of the first dual value, d_A^{k+2} d_B^{k+2} r^k. """
    return (spec.d_A * spec.d_B) ** (k + 2) * spec.r ** k

def lp_dual_bound(spec, k):
    """ Integer ceiling of the dual feasible value for the branch of `spec`:
    d_A^{(k+2)/2} d_B^{(k+2)/2} r^{k/2} when r >= d_B/d_A, otherwise
    d_A d_B^{k+1}. """
    check_positive('k', k)
    if spec.wide:
        return ceil_sqrt(lp_dual_squared(spec, k))
    return spec.d_A * spec.d_B ** (k + 1)

def _check_lemma1(spec, k):
    # k <= (r/2)^{2/3}  <=>  4k³ <= r²
    if 4 * k ** 3 > spec.r ** 2:
        raise PtmUsageError(f'Needs k <= (r/2)^(2/3): k={k}, r={spec.r}.')
    if spec.d < k:
        raise PtmUsageError(f'Needs d_A·d_B >= k: k={k}, d={spec.d}.')

def alpha_prefactor(spec, k):
    """ 3 C_{k-1} k² 4^{k-1} / d^k. """
    return Fraction(3 * catalan(k - 1) * k * k * 4 ** (k - 1), spec.d ** k)

def explicit_moment_bound(spec, k, strict = True):
    """ A certified upper bound on exact_moment(spec, k).

    Sums, over valid triples (a, b, c), the smaller of k! and the defect count
    bound at δ = k + 2 - max{a+b, a+c, b+c}, weighted by d_A^a d_B^b r^c, and
    scales by the α-coefficient prefactor 3 C_{k-1} k² 4^{k-1} / d^k.

    Args:
        spec (SubspaceSpec): The subspace dimensions.
        k (int): The moment order.
        strict (bool, optional): Enforce k <= (r/2)^{2/3}, the regime where
            the α bound is proven. Defaults to True.

    Returns:
        Fraction
    """
    check_positive('k', k)
    if strict:
        _check_lemma1(spec, k)
    kfac = factorial(k)
    total = 0
    for t in _valid_triples(k):
        delta = k + 2 - max(t.a + t.b, t.a + t.c, t.b + t.c)
        count = min(kfac, lemma2_count_bound(k, delta))
        total += count * spec.d_A ** t.a * spec.d_B ** t.b * spec.r ** t.c
    return alpha_prefactor(spec, k) * total

@dataclass
class AlphaBoundReport:
    k: int
    passed: bool
    max_ratio: Fraction
    ratios: dict

def alpha_bound_check(spec, k):
    """ Check |α_μ| <= 3 C_{k-1} k² 4^{k-1} r^{c(μ)} / d^k for every class. """
    _check_lemma1(spec, k)
    pre = alpha_prefactor(spec, k)
    ratios = {}
    for mu, a in alpha_coefficients(spec, k).coefficients.items():
        ratios[mu] = abs(a) / (pre * spec.r ** len(mu))
    worst = max(ratios.values())
    return AlphaBoundReport(k, worst <= 1, worst, ratios)

def _pow2(x):
    try:
        return 2.0 ** x
    except OverflowError:
        return math.inf

def kbound_shape(spec, k):
    """ Constant-free shape of the k-th moment bound:
    k^8 2^{6k} r^{k/2} (d_A d_B)^{1-k/2} or k^8 2^{6k} d_A^{1-k} d_B. """
    check_positive('k', k)
    lg = 8 * math.log2(k) + 6 * k
    if spec.wide:
        lg += k / 2 * math.log2(spec.r) + (1 - k / 2) * math.log2(spec.d)
    else:
        lg += (1 - k) * math.log2(spec.d_A) + math.log2(spec.d_B)
    return _pow2(lg)

def reference_scale(spec):
    """ 2^8 √r / √(d_A d_B) when r >= d_B/d_A, else 2^8 / d_A. """
    if spec.wide:
        return SCALE_CONSTANT * math.sqrt(spec.r / spec.d)
    return SCALE_CONSTANT / spec.d_A

def select_order(m):
    """ The largest even k with k < (m/2)^{2/3}, i.e. 4k³ < m²; None if there is none. """
    k = None
    j = 2
    while 4 * j ** 3 < m * m:
        k = j
        j += 2
    return k

def _root(x, k):
    x = Fraction(x)
    if x <= 0:
        return 0.0
    return math.exp((math.log(x.numerator) - math.log(x.denominator)) / k)

@dataclass
class WeakMultReport:
    branch: str
    epsilon: float
    exponent: float
    threshold: float
    vacuous: bool

def weak_mult_exponent(spec):
    """ ε = 9/log₂(d_A d_B / r) with exponent 1/2 - ε and threshold
    (r/(d_A d_B))^{1/2-ε}; in the narrow regime ε' = 9/log₂ d_A with exponent
    1 - ε' and threshold (1/d_A)^{1-ε'}. Non-positive exponents are reported
    as vacuous, never clamped.
    """
    if spec.wide:
        if spec.d <= spec.r:
            raise PtmUsageError('ε is undefined for r = d_A·d_B.')
        eps = 9 / math.log2(spec.d / spec.r)
        exponent = 0.5 - eps
        threshold = (spec.r / spec.d) ** exponent
    else:
        if spec.d_A <= 1:
            raise PtmUsageError("ε' is undefined for d_A = 1.")
        eps = 9 / math.log2(spec.d_A)
        exponent = 1 - eps
        threshold = (1 / spec.d_A) ** exponent
    vacuous = exponent <= 0
    if vacuous:
        log.warning(f'Weak-multiplicativity exponent {exponent:g} is vacuous '
                    f'for d_A={spec.d_A}, d_B={spec.d_B}, r={spec.r}.')
    return WeakMultReport(branch(spec), eps, exponent, threshold, vacuous)

def holder_exponent(alpha, p):
    """ α(1 - 1/p): the 1→p exponent implied by a 1→∞ exponent α. """
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise PtmUsageError(f'alpha must lie in (0, 1], got {alpha}.')
    if p == math.inf:
        return alpha
    p = Fraction(p)
    if p <= 1:
        raise PtmUsageError(f'p must exceed 1, got {p}.')
    return alpha * (1 - 1 / p)

@dataclass
class EntropyFloor:
    branch: str
    leading: float
    constant: int
    floor: float
    vacuous: bool

def entropy_floor(spec, constant = ENTROPY_CONSTANT):
    """ Lower bound on the minimum output ∞-entropy (base-2 logs):
    ½(log d_A + log d_B - log r) - C, or log d_A - C. """
    if spec.wide:
        leading = (math.log2(spec.d_A) + math.log2(spec.d_B) - math.log2(spec.r)) / 2
    else:
        leading = math.log2(spec.d_A)
    floor = leading - constant
    return EntropyFloor(branch(spec), leading, constant, floor, floor <= 0)

@dataclass
class BoundReport:
    """ Everything derived for one subspace at the selected moment order. """
    spec: object
    k: int
    branch: str
    scale: float
    k_rule_satisfied: bool
    exact_moment: Fraction = None
    explicit_bound: Fraction = None
    moment_root: float = None
    lp_brute: int = None
    lp_triple: LPTriple = None
    lp_dual: int = None
    lp_dual_squared: int = None
    kbound_shape: float = None
    weak_mult: WeakMultReport = None
    entropy: EntropyFloor = None
    constants: dict = field(default_factory = lambda: {'C': UNSPECIFIED, "C'": UNSPECIFIED})

    def tail_shape(self, delta):
        """ m^{16/3} δ^{-(m/2)^{2/3}}, up to the unspecified constant C'. """
        m = self.spec.m
        return m ** (16 / 3) * delta ** (-(m / 2) ** (2 / 3))

    def markov_tail(self, delta):
        """ k^8 d_A d_B / (4δ)^k: Markov's inequality at the selected k
        against δ times the reference scale. """
        return self.k ** 8 * self.spec.d / (4 * delta) ** self.k

def thm_main_bounds(spec):
    """ Assemble the norm bound report for `spec`.

    Needs m = min(r, d_A, d_B) >= 4. The moment order is the largest even
    k below (m/2)^{2/3}; for m in {4, 5} there is none and k = 2 is used,
    flagged via k_rule_satisfied. The moment root uses the exact moment
    when k <= 10 and the explicit bound chain otherwise.
    """
    if spec.m < MIN_BOUND_SIZE:
        raise PtmUsageError(f'Norm bounds need m = min(r, d_A, d_B) >= {MIN_BOUND_SIZE}, '
                            f'got m={spec.m}.')
    k = select_order(spec.m)
    satisfied = k is not None
    if not satisfied:
        log.warning(f'No even k < (m/2)^(2/3) for m={spec.m}; using k=2.')
        k = 2
    rep = BoundReport(spec, k, branch(spec), reference_scale(spec), satisfied)
    rep.lp_brute, rep.lp_triple = lp_argmax(spec, k)
    rep.lp_dual = lp_dual_bound(spec, k)
    if spec.wide:
        rep.lp_dual_squared = lp_dual_squared(spec, k)
    rep.kbound_shape = kbound_shape(spec, k)
    if 4 * k ** 3 <= spec.r ** 2:
        rep.explicit_bound = explicit_moment_bound(spec, k)
    if k <= MAX_MOMENT_DEGREE:
        rep.exact_moment = exact_moment(spec, k)
        rep.moment_root = _root(rep.exact_moment, k)
    elif rep.explicit_bound is not None:
        rep.moment_root = _root(rep.explicit_bound, k)
    try:
        rep.weak_mult = weak_mult_exponent(spec)
    except PtmUsageError as err:
        log.info(f'No weak-multiplicativity exponent: {err}')
    rep.entropy = entropy_floor(spec)
    return rep

