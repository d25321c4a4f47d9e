#
#  ptmoments/weingarten.py
#  PartialTransposeMoments
#
#  The unitary Weingarten function and the Gram matrix of permutation
#  operators it inverts.
#
import logging
log = logging.getLogger(__name__)

import numpy as np
from math import factorial, lcm
from fractions import Fraction
from functools import lru_cache
from dataclasses import dataclass, field

from .utils import PtmUsageError, check_cap
from .permutations import (CycleType,
                           Permutation,
                           catalan,
                           cycle_type,
                           enumerate_sk,
                           _compose,
                           _inverse,
                           _count_cycles,
                           _factorization_table)
from .symmetric import partitions_of, syt_count, mn_character, schur_dim

MAX_GRAM_DEGREE = 6
MAX_GRAM_CHECK_DEGREE = 5
MAX_SERIES_DEGREE = 6
MAX_SERIES_LENGTH = 8
MAX_BOUND_CHECK_DEGREE = 6

def _check_dimension(k, d):
    if d < k:
        raise PtmUsageError(f'Weingarten calculus needs d >= k (got d={d}, k={k}).')

@lru_cache(maxsize = None)
def _wg(mu, d):
    k = sum(mu)
    total = Fraction(0)
    for lam in partitions_of(k):
        f = syt_count(lam)
        total += Fraction(f * f * mn_character(lam, mu), schur_dim(lam, d))
    log.debug(f'Wg{mu} at d={d} computed.')
    return total / factorial(k) ** 2

def wg_exact(mu, d):
    """ The Weingarten function on the class μ:

        Wg(μ, d) = 1/k!² Σ_λ (f^λ)² χ^λ(μ) / s_λ(1^d).

    Args:
        mu (CycleType): A conjugacy class of S_k.
        d (int): The dimension, d >= k.

    Returns:
        Fraction
    """
    mu = CycleType(mu)
    _check_dimension(mu.weight, d)
    return _wg(tuple(mu), d)

def wg_cycle_formula(k, d):
    """ Closed form on the full cycle: (-1)^{k+1} C_{k-1} / (d ∏_{j<k} (d² - j²)). """
    if k < 1:
        raise PtmUsageError(f'Degree must be positive, got {k}.')
    _check_dimension(k, d)
    den = d
    for j in range(1, k):
        den *= d * d - j * j
    return Fraction((-1) ** (k + 1) * catalan(k - 1), den)

def wg_table(k, d):
    """ Dict CycleType -> Wg for every class of S_k. """
    _check_dimension(k, d)
    return {CycleType(mu): wg_exact(mu, d) for mu in partitions_of(k)}

@dataclass
class GramMatrix:
    """ A_{πσ} = d^{c(π⁻¹σ) - k}, rows and columns indexed by `perms`. """
    k: int
    d: int
    perms: list
    entries: np.ndarray = field(repr = False)
    index: dict = field(init = False, repr = False)

    def __post_init__(self):
        self.index = {pi: i for i, pi in enumerate(self.perms)}

    def __getitem__(self, pair):
        p, q = pair
        return self.entries[self.index[p], self.index[q]]

def _cycle_exponents(perms):
    """ The integer matrix c(π⁻¹σ). """
    maps = [p._map for p in perms]
    invs = [_inverse(m) for m in maps]
    return [[_count_cycles(_compose(pinv, s)) for s in maps] for pinv in invs]

def gram_matrix(k, d):
    check_cap('k', k, MAX_GRAM_DEGREE)
    perms = list(enumerate_sk(k))
    exps = _cycle_exponents(perms)
    entries = np.array([[Fraction(d) ** (c - k) for c in row] for row in exps],
                       dtype = object)
    return GramMatrix(k, d, perms, entries)

def weingarten_matrix(k, d):
    """ The claimed inverse [d^k Wg(π⁻¹σ)] of the Gram matrix, same indexing. """
    check_cap('k', k, MAX_GRAM_DEGREE)
    _check_dimension(k, d)
    perms = list(enumerate_sk(k))
    scale = d ** k
    rows = []
    for p in perms:
        pinv = _inverse(p._map)
        rows.append([scale * _wg(tuple(cycle_type(Permutation._from_map(
                        _compose(pinv, s._map)))), d) for s in perms])
    return GramMatrix(k, d, perms, np.array(rows, dtype = object))

@dataclass
class GramInverseReport:
    k: int
    d: int
    passed: bool
    failure: tuple = None   # (π, σ, product entry) of the first mismatch

def verify_gram_inverse(k, d):
    """ Multiply A by [d^k Wg(π⁻¹σ)] exactly and compare with the identity.

    Denominators are cleared first: d^k A has integer entries d^{c(π⁻¹σ)},
    and L·[d^k Wg] is integral for L the lcm of the Wg denominators, so the
    product must equal d^k L times the identity in plain integer arithmetic.
    """
    check_cap('k', k, MAX_GRAM_CHECK_DEGREE)
    _check_dimension(k, d)
    wgm = weingarten_matrix(k, d)
    perms = wgm.perms
    n = len(perms)
    L = 1
    for x in wgm.entries.flat:
        L = lcm(L, x.denominator)
    a_int = np.array([[d ** c for c in row] for row in _cycle_exponents(perms)],
                     dtype = object)
    b_int = np.array([[x.numerator * (L // x.denominator) for x in row]
                      for row in wgm.entries], dtype = object)
    prod = a_int.dot(b_int)
    target = d ** k * L
    for i in range(n):
        for j in range(n):
            expected = target if i == j else 0
            if prod[i, j] != expected:
                value = Fraction(prod[i, j], target)
                log.warning(f'Gram inverse fails at ({perms[i]}, {perms[j]}): {value}.')
                return GramInverseReport(k, d, False, (perms[i], perms[j], value))
    log.debug(f'Gram inverse confirmed for k={k}, d={d} ({n}x{n}).')
    return GramInverseReport(k, d, True)

def wg_series_truncated(mu, d, max_len):
    """ Partial sum d^{-k} Σ_{ℓ <= max_len} w_ℓ(μ) (-1/d)^ℓ of the
    primitive-factorization expansion of Wg. """
    mu = CycleType(mu)
    k = mu.weight
    check_cap('k', k, MAX_SERIES_DEGREE)
    check_cap('max_len', max_len, MAX_SERIES_LENGTH)
    _check_dimension(k, d)
    if max_len < 0:
        raise PtmUsageError('Series length must be non-negative.')
    rep = Permutation.from_cycle_type(mu)._map
    total = Fraction(0)
    for length in range(max_len + 1):
        w = _factorization_table(k, length).get(rep, 0)
        if w:
            total += Fraction(w * (-1) ** length, d ** length)
    return total / d ** k

@dataclass
class WgBoundReport:
    k: int
    d: int
    passed: bool
    max_ratio: Fraction
    ratios: dict

def wg_bound_check(k, d):
    """ Check |Wg(μ)| <= (3 C_{k-1} / 2) d^{c(μ) - 2k} on every class of S_k.

    Requires k <= d^{2/3}, i.e. k³ <= d².
    """
    check_cap('k', k, MAX_BOUND_CHECK_DEGREE)
    if k ** 3 > d * d:
        raise PtmUsageError(f'The bound needs k <= d^(2/3) (got k={k}, d={d}).')
    _check_dimension(k, d)
    ratios = {}
    for mu in partitions_of(k):
        bound = Fraction(3 * catalan(k - 1), 2) * Fraction(d) ** (len(mu) - 2 * k)
        ratios[CycleType(mu)] = abs(wg_exact(mu, d)) / bound
    worst = max(ratios.values())
    return WgBoundReport(k, d, worst <= 1, worst, ratios)

