"""Arithmetic over GF(2^m), 2 <= m <= 16, backed by log/antilog tables.

Elements are plain ints in ``[0, 2^m)``; bit ``i`` is the coefficient of
``x^i`` in the polynomial-basis representation.
"""

from __future__ import annotations

import numpy as np

# Primitive polynomials as bitmasks (bit i = coefficient of x^i).
# Table from Lin & Costello, "Error Control Coding", Table 2.7.
PRIMITIVE_POLYS = {
    2: 0b111,                    # x^2 + x + 1
    3: 0b1011,                   # x^3 + x + 1
    4: 0b10011,                  # x^4 + x + 1
    5: 0b100101,                 # x^5 + x^2 + 1
    6: 0b1000011,                # x^6 + x + 1
    7: 0b10001001,               # x^7 + x^3 + 1
    8: 0b100011101,              # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,             # x^9 + x^4 + 1
    10: 0b10000001001,           # x^10 + x^3 + 1
    11: 0b100000000101,          # x^11 + x^2 + 1
    12: 0b1000001010011,         # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,        # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,       # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,      # x^15 + x + 1
    16: 0b10001000000001011,     # x^16 + x^12 + x^3 + x + 1
}


class GaloisError(ValueError):
    pass


class DegreeMismatch(GaloisError):
    pass


class NonPrimitivePolynomial(GaloisError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def poly_degree(p: int) -> int:
    """Degree of a GF(2) polynomial bitmask (-1 for the zero polynomial)."""
    return p.bit_length() - 1


class GaloisField:
    """GF(2^m) with exp/log tables.

    ``exp_table`` is stored doubled (length ``2*order``) so a product of two
    logs can be looked up without a modulo.  ``log_table[0]`` is unused and
    set to -1.
    """

    def __init__(self, m: int, primitive_poly: int | None = None):
        if not 2 <= m <= 16:
            raise GaloisError(f"extension degree must be in [2, 16], got {m}")
        if primitive_poly is None:
            primitive_poly = PRIMITIVE_POLYS[m]
        if poly_degree(primitive_poly) != m:
            raise DegreeMismatch(
                f"polynomial {primitive_poly:#x} has degree "
                f"{poly_degree(primitive_poly)}, expected {m}"
            )
        self.m = m
        self.primitive_poly = primitive_poly
        self.size = 1 << m
        self.order = self.size - 1

        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for i in range(self.order):
            if log[x] != -1:
                raise NonPrimitivePolynomial(
                    f"{primitive_poly:#x}: alpha has order {i} < {self.order}"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= primitive_poly
        if x != 1:
            raise NonPrimitivePolynomial(f"{primitive_poly:#x} is not primitive")
        exp[self.order:] = exp[: self.order]
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table = exp
        self.log_table = log
        # python lists are much faster than numpy scalars for element-wise work
        self._exp = exp.tolist()
        self._log = log.tolist()

    def __repr__(self) -> str:
        return f"GaloisField(m={self.m}, primitive_poly={self.primitive_poly:#x})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaloisField)
            and self.m == other.m
            and self.primitive_poly == other.primitive_poly
        )

    def __hash__(self) -> int:
        return hash((self.m, self.primitive_poly))

    def alpha(self, i: int) -> int:
        """alpha^i for any integer i."""
        return self._exp[i % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log(0) is undefined")
        return self._log[a]

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        return self._exp[(self.order - self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        return self._exp[self._log[a] - self._log[b] + self.order]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivisionByZero("0 has no negative powers")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % self.order]

    def minimal_polynomial(self, i: int) -> int:
        """Minimal polynomial over GF(2) of alpha^i, as a bitmask."""
        coset = []
        e = i % self.order
        while e not in coset:
            coset.append(e)
            e = (2 * e) % self.order
        # prod (x - alpha^e) with GF(2^m) coefficients, low order first
        poly = [1]
        for e in coset:
            root = self._exp[e]
            shifted = [0] + poly
            for j, c in enumerate(poly):
                shifted[j] ^= self.mul(c, root)
            poly = shifted
        out = 0
        for j, c in enumerate(poly):
            if c not in (0, 1):
                raise GaloisError("minimal polynomial has non-binary coefficient")
            out |= c << j
        return out
