"""Syndrome computation, Berlekamp-Massey with early-stop criteria, Chien search.

The BM loop is the conventional 2t-iteration form: iteration ``j`` (1-based)
consumes syndrome ``S_j`` and produces discrepancy ``d_j``.  After every
iteration the configured :class:`StopCriterion` is consulted; ``Full2T``
only fires at ``j = 2t``, the ES variants may fire earlier on runs of zero
discrepancies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .bch import BchCode, LengthMismatch, bits_to_int, int_to_bits


class StopKind(enum.Enum):
    FULL = "full"
    ES1 = "es1"
    ES2 = "es2"
    ES3 = "es3"


@dataclass(frozen=True)
class StopCriterion:
    kind: StopKind
    kappa: int | None = None

    def __post_init__(self):
        if self.kind is StopKind.ES3:
            if self.kappa is None or self.kappa < 1:
                raise ValueError(f"ES3 needs kappa >= 1, got {self.kappa}")
        elif self.kappa is not None:
            raise ValueError(f"{self.kind.value} takes no kappa")

    @classmethod
    def full(cls) -> "StopCriterion":
        return cls(StopKind.FULL)

    @classmethod
    def es1(cls) -> "StopCriterion":
        return cls(StopKind.ES1)

    @classmethod
    def es2(cls) -> "StopCriterion":
        return cls(StopKind.ES2)

    @classmethod
    def es3(cls, kappa: int) -> "StopCriterion":
        return cls(StopKind.ES3, kappa)

    @classmethod
    def parse(cls, name: str, kappa: int | None = None) -> "StopCriterion":
        kind = StopKind(name.lower())
        return cls(kind, kappa if kind is StopKind.ES3 else None)

    @property
    def min_iteration(self) -> int:
        """Earliest iteration at which the rule can fire before 2t."""
        return {StopKind.FULL: 0, StopKind.ES1: 4, StopKind.ES2: 6}.get(self.kind, self.kappa)

    def __str__(self) -> str:
        if self.kind is StopKind.ES3:
            return f"es3(kappa={self.kappa})"
        return self.kind.value


class DecodeStatus(enum.Enum):
    NO_ERRORS = "no_errors"
    CORRECTED = "corrected"
    FAILURE = "decode_failure"


@dataclass
class BmState:
    """Mutable Berlekamp-Massey register state.

    ``sigma`` and ``aux`` are coefficient lists, lowest degree first.
    ``shift`` is the power of x applied to ``aux`` in the next update and
    ``b`` the discrepancy at the last length change.
    """

    j: int = 0
    sigma: list[int] = field(default_factory=lambda: [1])
    aux: list[int] = field(default_factory=lambda: [1])
    l_u: int = 0
    shift: int = 1
    b: int = 1
    d_history: list[int] = field(default_factory=list)
    mul_count: int = 0

    @property
    def degree(self) -> int:
        deg = len(self.sigma) - 1
        while deg > 0 and self.sigma[deg] == 0:
            deg -= 1
        return deg


@dataclass
class DecodeOutcome:
    status: DecodeStatus
    corrected: np.ndarray | None
    error_locations: list[int]
    v_hat: int
    iterations_used: int
    mul_count: int
    stopped_early: bool
    sigma: tuple[int, ...] = ()
    d_history: tuple[int, ...] = ()

    @property
    def stop_reason(self) -> str:
        if self.stopped_early:
            return f"early_stopped@{self.iterations_used}"
        return "ran_full"


def compute_syndromes(code: BchCode, received) -> list[int]:
    """``S_i = r(alpha^i)`` for i = 1 .. 2t.

    The word is first reduced modulo g(x); since every alpha^i is a root
    of g the remainder has the same syndromes and at most n-k terms.  Only
    odd-index syndromes are evaluated directly, using ``S_2i = S_i^2``.
    """
    received = np.asarray(received, dtype=np.uint8)
    if received.ndim != 1 or received.shape[0] != code.n:
        raise LengthMismatch(f"received word must have length {code.n}, got {received.shape}")
    gf = code.field
    two_t = 2 * code.t
    s = [0] * (two_t + 1)
    rem = code._reducer.mod(bits_to_int(received))
    positions = np.flatnonzero(int_to_bits(rem, code.parity_bits))
    if positions.size:
        odd = np.arange(1, two_t + 1, 2, dtype=np.int64)
        exps = np.outer(odd, positions) % gf.order
        vals = np.bitwise_xor.reduce(gf.exp_table[exps], axis=1)
        for i, v in zip(odd.tolist(), vals.tolist()):
            s[i] = v
        for i in range(2, two_t + 1, 2):
            s[i] = gf.mul(s[i // 2], s[i // 2])
    return s[1:]


def bm_iterate(code: BchCode, state: BmState, syndromes: list[int]) -> BmState:
    """Run one BM iteration in place and return the state.

    Multiplications counted: one per ``sigma_i * S`` term in the
    discrepancy, one for ``d / b`` and one per ``aux`` coefficient in the
    locator update.  Inversions are table lookups and not counted.
    """
    gf = code.field
    exp, log, order = gf._exp, gf._log, gf.order
    j = state.j
    if j >= len(syndromes):
        raise IndexError(f"all {len(syndromes)} syndromes consumed")
    sigma = state.sigma
    L = state.l_u

    d = syndromes[j]
    for i in range(1, min(L, len(sigma) - 1) + 1):
        a, s = sigma[i], syndromes[j - i]
        if a and s:
            d ^= exp[log[a] + log[s]]
    muls = L

    if d == 0:
        state.shift += 1
    else:
        coef_log = (log[d] - log[state.b]) % order
        muls += 1
        aux = state.aux
        shift = state.shift
        new = sigma + [0] * max(0, len(aux) + shift - len(sigma))
        for i, a in enumerate(aux):
            if a:
                new[i + shift] ^= exp[log[a] + coef_log]
        muls += len(aux)
        if 2 * L <= j:
            state.l_u = j + 1 - L
            state.aux = sigma
            state.b = d
            state.shift = 1
        else:
            state.shift += 1
        state.sigma = new

    state.j = j + 1
    state.d_history.append(d)
    state.mul_count += muls
    return state


def check_stop(criterion: StopCriterion, state: BmState, t: int) -> bool:
    j = state.j
    if j < 1:
        return False
    if j >= 2 * t:
        return True
    kind = criterion.kind
    if kind is StopKind.FULL:
        return False
    hist = state.d_history
    if kind is StopKind.ES3:
        kappa = criterion.kappa
        return j >= kappa and not any(hist[j - kappa:])
    zeros = 4 if kind is StopKind.ES1 else 6
    if j < zeros:
        return False
    # case A, t + delta_max/2 == j, kept in integers
    if 2 * j != 2 * t + state.l_u:
        return False
    return not any(hist[j - zeros:])


def run_bm(code: BchCode, syndromes: list[int], criterion: StopCriterion) -> BmState:
    state = BmState()
    t = code.t
    while True:
        bm_iterate(code, state, syndromes)
        if check_stop(criterion, state, t):
            return state


def chien_search(code: BchCode, sigma) -> list[int]:
    """Positions p in [0, n) with sigma(alpha^-p) == 0, ascending."""
    gf = code.field
    n = code.n
    coeffs = list(sigma)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    p = np.arange(n, dtype=np.int64)
    acc = np.full(n, coeffs[0], dtype=np.int64)
    for j in range(1, len(coeffs)):
        c = coeffs[j]
        if c:
            acc ^= gf.exp_table[(gf.log(c) - j * p) % gf.order]
    return np.flatnonzero(acc == 0).tolist()


def finish_decode(code: BchCode, received: np.ndarray, state: BmState, roots=None) -> DecodeOutcome:
    """Chien search and bit flipping for a completed (or stopped) BM run.

    ``roots`` may be supplied when the caller already searched this locator.
    """
    sigma = state.sigma[: state.degree + 1]
    deg = len(sigma) - 1
    stopped_early = state.j < 2 * code.t
    common = dict(
        iterations_used=state.j,
        mul_count=state.mul_count,
        stopped_early=stopped_early,
        sigma=tuple(sigma),
        d_history=tuple(state.d_history),
    )
    if deg > code.t:
        return DecodeOutcome(DecodeStatus.FAILURE, None, [], 0, **common)
    if roots is None:
        roots = chien_search(code, sigma)
    if len(roots) != deg:
        return DecodeOutcome(DecodeStatus.FAILURE, None, list(roots), len(roots), **common)
    corrected = received.copy()
    if roots:
        corrected[roots] ^= 1
    return DecodeOutcome(DecodeStatus.CORRECTED, corrected, list(roots), deg, **common)


def _no_errors(received: np.ndarray) -> DecodeOutcome:
    return DecodeOutcome(DecodeStatus.NO_ERRORS, received.copy(), [], 0, 0, 0, False)


def decode_with_syndromes(
    code: BchCode, received, syndromes: list[int], criterion: StopCriterion
) -> DecodeOutcome:
    received = np.asarray(received, dtype=np.uint8)
    if not any(syndromes):
        return _no_errors(received)
    state = run_bm(code, syndromes, criterion)
    return finish_decode(code, received, state)


def decode(code: BchCode, received, criterion: StopCriterion | None = None) -> DecodeOutcome:
    """Decode a hard-decision word.

    A locator whose degree exceeds t, or whose Chien root count differs
    from its degree, yields ``DecodeStatus.FAILURE``.
    """
    if criterion is None:
        criterion = StopCriterion.full()
    received = np.asarray(received, dtype=np.uint8)
    syndromes = compute_syndromes(code, received)
    return decode_with_syndromes(code, received, syndromes, criterion)
