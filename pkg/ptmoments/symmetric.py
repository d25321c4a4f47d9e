#
#  ptmoments/symmetric.py
#  PartialTransposeMoments
#
import logging
log = logging.getLogger(__name__)

from math import factorial
from functools import lru_cache

from .utils import PtmUsageError, InexactDivisionError, exact_div, check_cap
from .permutations import CycleType

MAX_PARTITION_WEIGHT = 20

class Partition(CycleType):
    """ A Young diagram λ ⊢ k, rows listed longest first. """

    @property
    def cells(self):
        """ Iterate (row, column) pairs, both 0-based. """
        return ((i, j) for i, row in enumerate(self) for j in range(row))

    @property
    def conjugate(self):
        if not self:
            return Partition(())
        return Partition(sum(1 for row in self if row > j) for j in range(self[0]))

    def hook_length(self, i, j):
        return self[i] - j + self.conjugate[j] - i - 1

    def hook_lengths(self):
        conj = self.conjugate
        return [self[i] - j + conj[j] - i - 1 for i, j in self.cells]

def _partitions(n, largest):
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest

@lru_cache(maxsize = None)
def _partitions_of(k):
    return tuple(Partition(p) for p in _partitions(k, k))

def partitions_of(k):
    """ All λ ⊢ k in reverse lexicographic order: (k), (k-1, 1), ..., (1^k). """
    if k < 1:
        raise PtmUsageError(f'Weight must be positive, got {k}.')
    check_cap('k', k, MAX_PARTITION_WEIGHT)
    return iter(_partitions_of(k))

def syt_count(lam):
    """ f^λ by the hook-length formula k!/∏ hooks. """
    lam = Partition(lam)
    hooks = 1
    for h in lam.hook_lengths():
        hooks *= h
    return exact_div(factorial(lam.weight), hooks)

def _beta_to_partition(beta):
    n = len(beta)
    parts = [b - (n - 1 - i) for i, b in enumerate(sorted(beta, reverse = True))]
    return tuple(p for p in parts if p > 0)

@lru_cache(maxsize = None)
def _mn(lam, mu):
    # lam: remaining shape; mu: remaining cycle lengths (largest first).
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        # Removing a rim hook of length r moves bead b to b - r; the leg
        # length is the number of beads jumped over.
        height = sum(1 for x in beta if target < x < b)
        newbeta = [target if x == b else x for x in beta]
        total += (-1) ** height * _mn(_beta_to_partition(newbeta), rest)
    return total

def mn_character(lam, mu):
    """ χ^λ evaluated on the class of cycle type μ (Murnaghan–Nakayama rule). """
    lam, mu = Partition(lam), CycleType(mu)
    if lam.weight != mu.weight:
        raise PtmUsageError(f'Weight mismatch: |λ| = {lam.weight}, |μ| = {mu.weight}.')
    return _mn(tuple(lam), tuple(mu))

def character_table(k):
    """ Dict (λ, μ) -> χ^λ(μ) over all partitions of k. """
    parts = list(partitions_of(k))
    return {(lam, CycleType(mu)): mn_character(lam, mu) for lam in parts for mu in parts}

def schur_dim(lam, d):
    """ s_λ(1^d) = ∏_{cells} (d + j - i) / ∏ hooks: the dimension of the GL_d
    irrep λ; zero exactly when λ has more than d rows. """
    lam = Partition(lam)
    if d < 1:
        raise PtmUsageError(f'Dimension must be positive, got {d}.')
    num, den = 1, 1
    for (i, j), h in zip(lam.cells, lam.hook_lengths()):
        num *= d + j - i
        den *= h
    try:
        return exact_div(num, den)
    except InexactDivisionError as err:
        raise InexactDivisionError(f's_{tuple(lam)}(1^{d}): {err}')

