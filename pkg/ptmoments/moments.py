#
#  ptmoments/moments.py
#  PartialTransposeMoments
#
#  Exact expected moments E tr[(M^Γ)^k] of a projector onto a Haar-random
#  r-dimensional subspace of C^{d_A} ⊗ C^{d_B}.
#
import logging
log = logging.getLogger(__name__)

import os
import json
from math import factorial
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from collections import Counter, namedtuple
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor

from .utils import PtmUsageError, check_cap, check_positive
from .permutations import (CycleType,
                           Permutation,
                           cycle_type,
                           enumerate_sk,
                           standard_cycle,
                           _compose,
                           _inverse,
                           _count_cycles,
                           _cycle_lengths)
from .symmetric import partitions_of, syt_count, mn_character, schur_dim
from .weingarten import wg_exact

MAX_MOMENT_DEGREE = 10
MAX_BRUTEFORCE_DEGREE = 6
MAX_NABC_DEGREE = 8
CACHED_DEGREES = (8, 9, 10)
PARALLEL_DEGREE = 8

BINNING_FORMAT = 'ptmoments-bins'
BINNING_VERSION = 1

@dataclass(frozen = True)
class SubspaceSpec:
    """ An r-dimensional subspace of C^{d_A} ⊗ C^{d_B}, with d_A <= d_B. """
    d_A: int
    d_B: int
    r: int

    def __post_init__(self):
        for name in ('d_A', 'd_B', 'r'):
            check_positive(name, getattr(self, name))
        if self.d_A > self.d_B:
            raise PtmUsageError(f'Expected d_A <= d_B, got d_A={self.d_A}, d_B={self.d_B}.')
        if self.r > self.d_A * self.d_B:
            raise PtmUsageError(f'r = {self.r} exceeds d_A·d_B = {self.d_A * self.d_B}.')

    @property
    def d(self):
        return self.d_A * self.d_B

    @property
    def m(self):
        return min(self.r, self.d_A, self.d_B)

    @property
    def wide(self):
        """ True in the regime r >= d_B/d_A. """
        return self.r * self.d_A >= self.d_B

    def asdict(self):
        return {'d_A': self.d_A, 'd_B': self.d_B, 'r': self.r}

@dataclass
class PermExpansion:
    """ E M^{⊗k} = Σ_π α_π D(π) with α stored per cycle type. """
    k: int
    d: int
    r: int
    coefficients: dict

    def __getitem__(self, mu):
        return self.coefficients[CycleType(mu)]

class LPTriple(namedtuple('LPTriple', 'a b c')):
    """ (c(κπ), c(κ⁻¹π), c(π)) for some π ∈ S_k. """
    __slots__ = ()

    def is_valid(self, k):
        a, b, c = self
        return (all(1 <= x <= k for x in self) and
                a + b <= k + 2 and a + c <= k + 1 and b + c <= k + 1)

def _check_moment_args(d, k, cap = MAX_MOMENT_DEGREE):
    check_positive('k', k)
    check_cap('k', k, cap)
    if d < k:
        raise PtmUsageError(f'The expansion needs d = d_A·d_B >= k (got d={d}, k={k}).')

@lru_cache(maxsize = None)
def _alpha(k, r, d):
    # α_μ = 1/k! Σ_λ f^λ s_λ(1^r) / s_λ(1^d) χ^λ(μ)
    parts = list(partitions_of(k))
    weights = {lam: Fraction(syt_count(lam) * schur_dim(lam, r), schur_dim(lam, d))
                    for lam in parts}
    out = {}
    for mu in parts:
        val = sum((w * mn_character(lam, mu) for lam, w in weights.items()), Fraction(0))
        out[CycleType(mu)] = val / factorial(k)
    return out

def alpha_coefficients(spec, k):
    """ The coefficients α_π of E M^{⊗k} in the permutation basis.

    Obtained by inverting the Gram system tr[M^(k) D(π⁻¹)] = r^{c(π)} with the
    Weingarten function and collapsing the sum over S_k by characters.

    Args:
        spec (SubspaceSpec): The subspace dimensions.
        k (int): The tensor power, 1 <= k <= 10 and k <= d_A·d_B.

    Returns:
        PermExpansion
    """
    _check_moment_args(spec.d, k)
    return PermExpansion(k, spec.d, spec.r, dict(_alpha(k, spec.r, spec.d)))

def alpha_bruteforce(spec, k):
    """ α_π = Σ_σ Wg(π⁻¹σ, d) r^{c(σ)}, summed literally over S_k. """
    _check_moment_args(spec.d, k, MAX_BRUTEFORCE_DEGREE)
    d, r = spec.d, spec.r
    sigmas = [s._map for s in enumerate_sk(k)]
    out = {}
    for mu in partitions_of(k):
        pinv = _inverse(Permutation.from_cycle_type(mu)._map)
        total = Fraction(0)
        for s in sigmas:
            total += wg_exact(_cycle_lengths(_compose(pinv, s)), d) * r ** _count_cycles(s)
        out[CycleType(mu)] = total
    return PermExpansion(k, d, r, out)

def expansion_trace(expansion, d = None):
    """ tr Σ_π α_π D_d(π) = Σ_μ |μ| α_μ d^{c(μ)}; equals r^k for the true expansion. """
    d = expansion.d if d is None else d
    return sum((mu.class_size * a * d ** len(mu)
                for mu, a in expansion.coefficients.items()), Fraction(0))

#
# The (cycle type, c(κπ), c(κ⁻¹π)) histogram of S_k.
#
def cache_dir():
    return os.environ.get('PTMOMENTS_CACHE',
                          os.path.join(os.path.expanduser('~'), '.cache', 'ptmoments'))

def _cache_file(k, path = None):
    return os.path.join(path or cache_dir(), f'bins-k{k}.json')

def _bin_chunk(k, first):
    """ Bin all π with π(1) = first + 1 (0-based maps). """
    kappa = standard_cycle(k)._map
    kinv = _inverse(kappa)
    rest = [i for i in range(k) if i != first]
    bins = Counter()
    for tail in permutations(rest):
        pi = (first,) + tail
        a = _count_cycles(_compose(kappa, pi))
        b = _count_cycles(_compose(kinv, pi))
        bins[(_cycle_lengths(pi), a, b)] += 1
    return bins

def _bin_serial(k):
    bins = Counter()
    for first in range(k):
        bins.update(_bin_chunk(k, first))
    return bins

def _bin_parallel(k, workers):
    bins = Counter()
    with ProcessPoolExecutor(max_workers = workers) as executor:
        for first, chunk in enumerate(executor.map(_bin_chunk, [k] * k, range(k))):
            log.debug(f'Binned chunk π(1)={first + 1} of S_{k}.')
            bins.update(chunk)
    return bins

def save_binning(k, bins, path = None):
    """ Write the histogram as versioned JSON:

        {"format": "ptmoments-bins", "version": 1, "k": k,
         "bins": [[cycle_type, a, b, count], ...]}
    """
    fname = _cache_file(k, path)
    os.makedirs(os.path.dirname(fname), exist_ok = True)
    rows = sorted([list(ct), a, b, n] for (ct, a, b), n in bins.items())
    data = {'format': BINNING_FORMAT, 'version': BINNING_VERSION, 'k': k, 'bins': rows}
    tmp = fname + '.tmp'
    with open(tmp, 'w') as fh:
        json.dump(data, fh)
    os.replace(tmp, fname)
    log.debug(f'Saved S_{k} binning to {fname}.')
    return fname

def load_binning(k, path = None):
    """ Read a cached histogram; returns None when absent or unusable. """
    fname = _cache_file(k, path)
    if not os.path.exists(fname):
        return None
    try:
        with open(fname) as fh:
            data = json.load(fh)
        if data['format'] != BINNING_FORMAT or data['version'] != BINNING_VERSION \
                or data['k'] != k:
            raise ValueError('header mismatch')
        bins = {(CycleType(ct), a, b): n for ct, a, b, n in data['bins']}
    except (ValueError, KeyError, TypeError) as err:
        log.warning(f'Ignoring unusable binning cache {fname}: {err}.')
        return None
    if sum(bins.values()) != factorial(k):
        log.warning(f'Ignoring binning cache {fname}: counts do not sum to {k}!.')
        return None
    log.debug(f'Loaded S_{k} binning from {fname}.')
    return bins

_BINS = {}

def binning(k, cache = True, workers = None):
    """ Count π ∈ S_k by (cycle_type(π), c(κπ), c(κ⁻¹π)).

    Args:
        k (int): The degree, k <= 10.
        cache (bool, optional): Read and write the on-disk cache for
            k in {8, 9, 10}. Defaults to True.
        workers (int, optional): Process count for k >= 8. Defaults to None
            (the executor's default).

    Returns:
        dict: (CycleType, a, b) -> count.
    """
    check_positive('k', k)
    check_cap('k', k, MAX_MOMENT_DEGREE)
    if k in _BINS:
        return _BINS[k]
    bins = load_binning(k) if cache and k in CACHED_DEGREES else None
    if bins is None:
        if k >= PARALLEL_DEGREE and workers != 1:
            raw = _bin_parallel(k, workers)
        else:
            raw = _bin_serial(k)
        bins = {(CycleType(ct), a, b): n for (ct, a, b), n in raw.items()}
        if cache and k in CACHED_DEGREES:
            try:
                save_binning(k, bins)
            except OSError as err:
                log.warning(f'Could not write binning cache: {err}.')
    _BINS[k] = bins
    return bins

def count_Nabc(k):
    """ N(a, b, c) = |{π ∈ S_k : c(κπ) = a, c(κ⁻¹π) = b, c(π) = c}|. """
    check_cap('k', k, MAX_NABC_DEGREE)
    out = Counter()
    for (ct, a, b), n in binning(k).items():
        out[LPTriple(a, b, len(ct))] += n
    return dict(out)

def exact_moment_dims(d_A, d_B, r, k):
    """ E tr[(M^Γ)^k] = Σ_π d_A^{c(κπ)} d_B^{c(κ⁻¹π)} α_π, with no ordering
    requirement on (d_A, d_B). """
    for name, val in (('d_A', d_A), ('d_B', d_B), ('r', r)):
        check_positive(name, val)
    d = d_A * d_B
    if r > d:
        raise PtmUsageError(f'r = {r} exceeds d_A·d_B = {d}.')
    _check_moment_args(d, k)
    alpha = _alpha(k, r, d)
    total = Fraction(0)
    for (ct, a, b), n in binning(k).items():
        total += n * d_A ** a * d_B ** b * alpha[ct]
    return total

def exact_moment(spec, k):
    """ The exact expectation of tr[(M^Γ)^k] over Haar-random subspaces.

    Args:
        spec (SubspaceSpec): The subspace dimensions.
        k (int): The moment order, k <= 10 and k <= d_A·d_B.

    Returns:
        Fraction
    """
    return exact_moment_dims(spec.d_A, spec.d_B, spec.r, k)

