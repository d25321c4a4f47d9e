#
#  ptmoments/utils.py
#  PartialTransposeMoments
#
import logging
log = logging.getLogger(__name__)

from math import isqrt
from fractions import Fraction

class PtmUsageError(Exception):
    pass

class InfeasibleSizeError(PtmUsageError):
    pass

class InexactDivisionError(ArithmeticError):
    pass

def exact_div(num, den):
    """ Integer division that must not leave a remainder. """
    q, rem = divmod(num, den)
    if rem:
        raise InexactDivisionError(f'{num} is not divisible by {den}.')
    return q

def ceil_sqrt(n):
    """ Smallest integer s with s*s >= n, for integers n >= 0. """
    if n < 0:
        raise ValueError('ceil_sqrt of a negative number')
    s = isqrt(n)
    return s if s * s == n else s + 1

def check_cap(name, value, cap):
    if value > cap:
        raise InfeasibleSizeError(f'{name} = {value} exceeds the enumeration cap {cap}.')

def check_positive(name, value):
    if not isinstance(value, int) or value < 1:
        raise PtmUsageError(f'{name} must be a positive integer, got {value!r}.')

def as_fraction(x):
    """ Accept ints, Fractions and 'p/q' strings. """
    if isinstance(x, Fraction):
        return x
    return Fraction(x)

def fraction_to_dict(x):
    """ Lossless wire format for exact rationals. """
    x = Fraction(x)
    return {'num': str(x.numerator), 'den': str(x.denominator)}

def fraction_from_dict(d):
    return Fraction(int(d['num']), int(d['den']))

