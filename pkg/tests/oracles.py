"""Independent reference implementations used only by the tests.

Nothing here shares code with the package: field arithmetic is bitwise
shift-and-reduce, probabilities are exact rationals with mpmath logs.
"""

from fractions import Fraction
from math import comb

import mpmath

mpmath.mp.dps = 60


def gf_mul_bitwise(a, b, m, poly):
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return out


def gf2_poly_mod(a, b):
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(poly):
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    for d in range(1, deg // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if gf2_poly_mod(poly, q) == 0:
                return False
    return True


def eval_word(bits, x, m, poly):
    """Horner evaluation of sum bits[i] x^i in GF(2^m)."""
    acc = 0
    for b in reversed(list(bits)):
        acc = gf_mul_bitwise(acc, x, m, poly) ^ int(b)
    return acc


def exact_tail(n, h0, eps):
    eps = Fraction(eps)
    return sum((comb(n, h) * eps ** h * (1 - eps) ** (n - h) for h in range(h0, n + 1)), Fraction(0))


def exact_pud(n, m, t, eps):
    return Fraction(1, 2 ** (m * t)) * sum(comb(n, s) for s in range(t + 1)) * exact_tail(n, t + 1, eps)


def exact_pmf_binomial(n, m, t, kappa, eps):
    early = sum(comb(n, s) * exact_tail(n, -(-(s + kappa + 1) // 2), eps) for s in range(t + 1))
    full = sum(comb(n, s) for s in range(t + 1)) * exact_tail(n, t + 1, eps)
    return Fraction(1, 2 ** (m * t)) * (early - full)


def log2_fraction(x: Fraction) -> float:
    return float(mpmath.log(x.numerator, 2) - mpmath.log(x.denominator, 2))
