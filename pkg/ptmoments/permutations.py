#
#  ptmoments/permutations.py
#  PartialTransposeMoments
#
import logging
log = logging.getLogger(__name__)

from math import comb, factorial
from functools import lru_cache
from itertools import permutations
from collections import Counter, namedtuple

from .utils import (PtmUsageError,
                    InexactDivisionError,
                    exact_div,
                    ceil_sqrt,
                    check_cap)

MAX_ENUMERATION_DEGREE = 10
MAX_DEFECT_DEGREE = 9
MAX_FACTORIZATION_DEGREE = 6
MAX_FACTORIZATION_LENGTH = 8

DefectCount = namedtuple('DefectCount', 'g count')

class CycleType(tuple):
    """ A weakly decreasing tuple of positive integers.

    Used both as the label of a conjugacy class of S_k and (subclassed in
    ptmoments.symmetric) as a partition / Young diagram. Being a tuple, it
    hashes like one and serves directly as a cache key.
    """
    def __new__(cls, parts):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise PtmUsageError(f'Parts must be positive: {parts}.')
        if any(parts[i] < parts[i+1] for i in range(len(parts) - 1)):
            raise PtmUsageError(f'Parts must be non-increasing: {parts}.')
        return super().__new__(cls, parts)

    @classmethod
    def from_lengths(cls, lengths):
        return cls(sorted(lengths, reverse = True))

    @property
    def weight(self):
        """ int: the sum of all parts (k). """
        return sum(self)

    @property
    def length(self):
        """ int: the number of parts (c(π) for a cycle type). """
        return len(self)

    @property
    def centralizer_size(self):
        """ int: z_μ = ∏ i^{m_i} m_i!, so that |class| = k!/z_μ. """
        z = 1
        for part, mult in Counter(self).items():
            z *= part ** mult * factorial(mult)
        return z

    @property
    def class_size(self):
        return exact_div(factorial(self.weight), self.centralizer_size)

    def __repr__(self):
        return f'{type(self).__name__}{tuple(self)}'

class Permutation:
    """ An element of S_k.

    Constructed from one-line notation over {1..k}: Permutation([2, 3, 1])
    maps 1 -> 2, 2 -> 3, 3 -> 1. Composition is right-to-left,
    (p * q)(i) = p(q(i)).
    """
    __slots__ = ('_map',)

    def __init__(self, images):
        m = tuple(int(i) - 1 for i in images)
        if len(m) < 1:
            raise PtmUsageError('A permutation needs degree k >= 1.')
        if sorted(m) != list(range(len(m))):
            raise PtmUsageError(f'Not a bijection on {{1..{len(m)}}}: {tuple(images)}.')
        self._map = m

    @classmethod
    def _from_map(cls, m):
        # m is a 0-based image tuple, trusted.
        p = cls.__new__(cls)
        p._map = tuple(m)
        return p

    @classmethod
    def identity(cls, k):
        return cls._from_map(range(k))

    @classmethod
    def from_cycles(cls, k, cycles):
        """ Build from disjoint cycles over {1..k}, e.g. from_cycles(4, [(1, 2), (3, 4)]). """
        m = list(range(k))
        seen = set()
        for cyc in cycles:
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                if a in seen or not 1 <= a <= k:
                    raise PtmUsageError(f'Invalid cycle {cyc} in S_{k}.')
                seen.add(a)
                m[a-1] = b-1
        return cls._from_map(m)

    @classmethod
    def from_cycle_type(cls, mu):
        """ Canonical class representative: consecutive runs (1..μ_1)(μ_1+1..) ... """
        mu = CycleType(mu)
        m, start = [], 0
        for part in mu:
            m += [start + (i + 1) % part for i in range(part)]
            start += part
        return cls._from_map(m)

    @property
    def k(self):
        return len(self._map)

    @property
    def images(self):
        """ tuple: one-line notation over {1..k}. """
        return tuple(i + 1 for i in self._map)

    def __call__(self, i):
        return self._map[i-1] + 1

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._map == other._map

    def __lt__(self, other):
        return self._map < other._map

    def __hash__(self):
        return hash(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return f'Permutation({list(self.images)})'

    def cycles(self):
        """ list[tuple]: the cycles over {1..k}, including fixed points. """
        return [tuple(i + 1 for i in c) for c in _cycles(self._map)]

def standard_cycle(k):
    """ The k-cycle κ: i -> i+1 for i < k and k -> 1. """
    return Permutation._from_map([(i + 1) % k for i in range(k)])

#
# Raw helpers on 0-based image tuples (hot loops).
#
def _cycles(m):
    seen = [False] * len(m)
    out = []
    for start in range(len(m)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = m[i]
        out.append(cyc)
    return out

def _count_cycles(m):
    seen = [False] * len(m)
    c = 0
    for start in range(len(m)):
        if seen[start]:
            continue
        c += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = m[i]
    return c

def _cycle_lengths(m):
    return tuple(sorted((len(c) for c in _cycles(m)), reverse = True))

def _compose(p, q):
    return tuple(p[i] for i in q)

def _inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)

def _check_degrees(p, q):
    if p.k != q.k:
        raise PtmUsageError(f'Degree mismatch: S_{p.k} vs S_{q.k}.')

#
# Public operations
#
def compose(p, q):
    """ (p∘q)(i) = p(q(i)). """
    _check_degrees(p, q)
    return Permutation._from_map(_compose(p._map, q._map))

def inverse(p):
    return Permutation._from_map(_inverse(p._map))

def cycle_count(p):
    """ c(π): the number of cycles, fixed points included. """
    return _count_cycles(p._map)

def cycle_type(p):
    return CycleType(_cycle_lengths(p._map))

def geodesic_distance(p, q):
    """ Transposition distance d(p, q) = k - c(p^{-1} q) on the Cayley graph of S_k. """
    _check_degrees(p, q)
    return p.k - _count_cycles(_compose(_inverse(p._map), q._map))

def enumerate_sk(k):
    """ Yield every element of S_k once, lexicographic in one-line notation. """
    if k < 1:
        raise PtmUsageError(f'Degree must be positive, got {k}.')
    check_cap('k', k, MAX_ENUMERATION_DEGREE)
    return (Permutation._from_map(m) for m in permutations(range(k)))

@lru_cache(maxsize = None)
def _defect_histogram(mu):
    k = mu.weight
    pi = Permutation.from_cycle_type(mu)._map
    pinv = _inverse(pi)
    top = k + len(mu)
    hist = Counter()
    for sigma in permutations(range(k)):
        hist[top - _count_cycles(_compose(pinv, sigma)) - _count_cycles(sigma)] += 1
    log.debug(f'Defect histogram for class {tuple(mu)}: {dict(hist)}')
    return dict(hist)

def defect_histogram(p):
    """ Map δ -> |{σ : c(π^{-1}σ) + c(σ) = k + c(π) - δ}| over all of S_k.

    The result depends only on the cycle type of p and is cached per class.
    """
    check_cap('k', p.k, MAX_DEFECT_DEGREE)
    return dict(_defect_histogram(cycle_type(p)))

def count_defect(p, g):
    """ N_g(π): permutations σ at geodesic defect 2g from π. """
    if g < 0:
        return DefectCount(g, 0)
    return DefectCount(g, defect_histogram(p).get(2 * g, 0))

def catalan(n):
    return comb(2 * n, n) // (n + 1)

def geodesic_catalan_product(mu):
    """ ∏ C_{μ_i}: the number of σ on a geodesic between a permutation of
    cycle type μ and the identity (non-crossing partitions of each cycle). """
    out = 1
    for part in CycleType(mu):
        out *= catalan(part)
    return out

@lru_cache(maxsize = None)
def adrianov_B(g, k):
    """ B_g(k) by the recurrence
        (k+1) B_g(k) = 2(2k-1) B_g(k-1) + (k-2)(k-1)^2 B_{g-1}(k-2),
    with B_0(1) = 1, B_0(2) = 2 and B_g(k) = 0 for g < 0.
    """
    if g < 0 or k < 1:
        return 0
    if k <= 2:
        return (1 if k == 1 else 2) if g == 0 else 0
    num = 2 * (2 * k - 1) * adrianov_B(g, k - 1) + \
            (k - 2) * (k - 1) ** 2 * adrianov_B(g - 1, k - 2)
    try:
        return exact_div(num, k + 1)
    except InexactDivisionError as err:
        raise InexactDivisionError(f'B_{g}({k}): {err}')

def lemma2_count_bound(k, delta):
    """ ⌈4^{k-1} k^{3δ/2 + 1}⌉ as an exact integer. """
    if delta < 0:
        raise PtmUsageError('The defect must be non-negative.')
    a = 4 ** (k - 1) * k
    if delta % 2 == 0:
        return a * k ** (3 * delta // 2)
    return ceil_sqrt(a * a * k ** (3 * delta))

@lru_cache(maxsize = None)
def _factorization_table(k, length):
    # state: (partial product, largest t used so far)
    states = Counter({(tuple(range(k)), 1): 1})
    for _ in range(length):
        nstates = Counter()
        for (prod, last), n in states.items():
            for t in range(last, k):
                for s in range(t):
                    new = list(prod)
                    new[s], new[t] = new[t], new[s]
                    nstates[(tuple(new), t)] += n
        states = nstates
    table = Counter()
    for (prod, _), n in states.items():
        table[prod] += n
    return dict(table)

def primitive_factorization_table(k, length):
    """ Map each π ∈ S_k to w_length(π): the number of sequences of
    transpositions (s_1 t_1)...(s_ℓ t_ℓ) = π with s_i < t_i, t_1 <= ... <= t_ℓ.
    """
    check_cap('k', k, MAX_FACTORIZATION_DEGREE)
    check_cap('length', length, MAX_FACTORIZATION_LENGTH)
    if k < 1 or length < 0:
        raise PtmUsageError(f'Invalid factorization request (k={k}, length={length}).')
    return {Permutation._from_map(m): n for m, n in _factorization_table(k, length).items()}

def primitive_factorization_count(p, length):
    check_cap('k', p.k, MAX_FACTORIZATION_DEGREE)
    check_cap('length', length, MAX_FACTORIZATION_LENGTH)
    if length < 0:
        raise PtmUsageError('Factorization length must be non-negative.')
    return _factorization_table(p.k, length).get(p._map, 0)

