"""Binary primitive BCH codes and systematic encoding.

Bit vectors are 1-D ``uint8`` numpy arrays where ``bits[i]`` is the
coefficient of ``x^i``.  Polynomials over GF(2) are handled internally as
Python ints (bit i = coefficient of x^i), which keeps long division over
~16k-bit words cheap.

A systematic codeword holds the parity in positions ``[0, n-k)`` and the
message in positions ``[n-k, n)``, i.e. ``c(x) = x^(n-k) m(x) + r(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field

import numpy as np

from .galois import GaloisField, poly_degree


class CapacityExceeded(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, g: int) -> int:
    """Remainder of a(x) / g(x) over GF(2), bit by bit."""
    dg = poly_degree(g)
    da = poly_degree(a)
    while da >= dg:
        a ^= g << (da - dg)
        da = poly_degree(a)
    return a


def bits_to_int(bits) -> int:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def int_to_bits(value: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


class _ByteReducer:
    """Table-driven reduction modulo g(x), eight bits per step (CRC style)."""

    def __init__(self, g: int):
        self.g = g
        self.deg = poly_degree(g)
        self.table = [((top << self.deg) ^ poly_mod(top << self.deg, g)) for top in range(256)]

    def mod(self, a: int) -> int:
        if a.bit_length() <= self.deg:
            return a
        data = a.to_bytes((a.bit_length() + 7) // 8, "big")
        deg, table = self.deg, self.table
        r = 0
        for byte in data:
            r = (r << 8) | byte
            r ^= table[r >> deg]
        return r


@dataclass(frozen=True, eq=False)
class BchCode:
    """A binary primitive narrow-sense BCH code of length 2^m - 1.

    Use :func:`build_code` rather than constructing this directly.
    """

    field: GaloisField
    t: int
    generator_poly: int
    minimal_polys: tuple[int, ...]
    _reducer: _ByteReducer | None = dc_field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.field.order

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def parity_bits(self) -> int:
        return poly_degree(self.generator_poly)

    @property
    def k(self) -> int:
        return self.n - self.parity_bits

    def __repr__(self) -> str:
        return f"BchCode(n={self.n}, k={self.k}, t={self.t}, m={self.m})"

    def encode(self, message) -> np.ndarray:
        return encode(self, message)

    def is_codeword(self, word) -> bool:
        return is_codeword(self, word)


def build_code(gf: GaloisField, t: int) -> BchCode:
    """Narrow-sense BCH code with roots alpha^1 .. alpha^(2t)."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    minimal = []
    for i in range(1, 2 * t + 1):
        mp = gf.minimal_polynomial(i)
        if mp not in minimal:
            minimal.append(mp)
    g = 1
    for mp in minimal:
        g = clmul(g, mp)
    if poly_degree(g) >= gf.order:
        raise CapacityExceeded(
            f"t={t} needs {poly_degree(g)} parity bits, code length is {gf.order}"
        )
    code = BchCode(gf, t, g, tuple(minimal))
    object.__setattr__(code, "_reducer", _ByteReducer(g))
    return code


def _check_length(bits: np.ndarray, expected: int, what: str) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim != 1 or bits.shape[0] != expected:
        raise LengthMismatch(f"{what} must have length {expected}, got {bits.shape}")
    return bits


def parity(code: BchCode, message) -> int:
    """x^(n-k) m(x) mod g(x) as an int."""
    msg = bits_to_int(_check_length(message, code.k, "message"))
    return code._reducer.mod(msg << code.parity_bits)


def encode(code: BchCode, message) -> np.ndarray:
    msg = bits_to_int(_check_length(message, code.k, "message"))
    shifted = msg << code.parity_bits
    return int_to_bits(shifted | code._reducer.mod(shifted), code.n)


def is_codeword(code: BchCode, word) -> bool:
    """True iff g(x) divides the word polynomial.

    Equivalent to all 2t syndromes vanishing, since g is the lcm of the
    minimal polynomials of alpha .. alpha^(2t).
    """
    w = bits_to_int(_check_length(word, code.n, "word"))
    return code._reducer.mod(w) == 0


def message_of(code: BchCode, word) -> np.ndarray:
    """Message bits of a systematic codeword."""
    word = _check_length(word, code.n, "word")
    return word[code.parity_bits:].copy()
