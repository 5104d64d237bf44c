"""Malfunction-probability estimates for early-stopped BM decoding, and
multiplicative-complexity bounds.

Every probability is carried as a base-2 logarithm (:class:`LogProb`); the
values of interest reach 1e-119 and below, far under double precision's
normal range once multiplied out.

Binomial-tail sums follow the binomial-like weight-distribution
approximation for long primitive BCH codes: the probability that a BSC with
crossover ``eps`` puts at least ``h0`` errors on ``n`` bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

LN2 = math.log(2.0)
LOG10_2 = math.log10(2.0)


class DomainError(ValueError):
    pass


class NegativeProbability(ArithmeticError):
    """The estimate's difference of two sums came out significantly negative."""


class BoundInvalid(ValueError):
    """eps lies outside the region where the exponential tail bound holds."""


@dataclass(frozen=True, order=True)
class LogProb:
    """A probability stored as log2; ``-inf`` is an exact zero."""

    log2: float

    @classmethod
    def zero(cls) -> "LogProb":
        return cls(-math.inf)

    @property
    def is_zero(self) -> bool:
        return self.log2 == -math.inf

    @property
    def value(self) -> float:
        """Linear value; underflows to 0.0 below ~1e-308."""
        return 2.0 ** self.log2 if not self.is_zero else 0.0

    @property
    def log10(self) -> float:
        return self.log2 * LOG10_2

    def sci(self, digits: int = 6) -> str:
        """Scientific notation rendered from the log, e.g. ``6.49437e-119``."""
        if self.is_zero:
            return "0"
        l10 = self.log10
        exponent = math.floor(l10)
        mantissa = 10.0 ** (l10 - exponent)
        if round(mantissa, digits - 1) >= 10.0:
            mantissa /= 10.0
            exponent += 1
        return f"{mantissa:.{digits - 1}f}e{exponent:+03d}"

    def __str__(self) -> str:
        return self.sci()


@dataclass(frozen=True)
class AnalysisPoint:
    n: int
    m: int
    t: int
    kappa: int
    eps: float

    def __post_init__(self):
        if not 0.0 < self.eps < 0.5:
            raise DomainError(f"eps must lie in (0, 0.5), got {self.eps}")
        if self.kappa < 1:
            raise DomainError(f"kappa must be >= 1, got {self.kappa}")
        if self.t < 0:
            raise DomainError(f"t must be >= 0, got {self.t}")
        if self.n != 2 ** self.m - 1:
            raise DomainError(f"n={self.n} is not 2^m - 1 for m={self.m}")

    @classmethod
    def for_code(cls, m: int, t: int, kappa: int, eps: float) -> "AnalysisPoint":
        return cls(2 ** m - 1, m, t, kappa, eps)

    def with_eps(self, eps: float) -> "AnalysisPoint":
        return AnalysisPoint(self.n, self.m, self.t, self.kappa, eps)


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def relative_entropy(lam: float, eps: float) -> float:
    """Binary KL divergence D(lam || eps) in bits."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam}")
    out = 0.0
    if lam > 0.0:
        out += lam * math.log2(lam / eps)
    if lam < 1.0:
        out += (1.0 - lam) * math.log2((1.0 - lam) / (1.0 - eps))
    return max(out, 0.0)


def log_binomial(n: int, k: int) -> float:
    """log2 C(n, k) via log-gamma."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return 0.0
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)) / LN2


def _log2_binom_pmf(n: int, h: np.ndarray, eps: float) -> np.ndarray:
    """log2 of C(n,h) eps^h (1-eps)^(n-h), in nats then converted."""
    ln = (
        gammaln(n + 1) - gammaln(h + 1) - gammaln(n - h + 1)
        + h * math.log(eps) + (n - h) * math.log1p(-eps)
    )
    return ln / LN2


def _log2_sum(log2_terms) -> float:
    terms = np.asarray(log2_terms, dtype=float)
    if terms.size == 0 or np.all(terms == -np.inf):
        return -math.inf
    return float(logsumexp(terms * LN2)) / LN2


def binomial_tail(n: int, h0: int, eps: float) -> LogProb:
    """P[Binomial(n, eps) >= h0] in log2.

    Starts below the mean are evaluated as ``log2(1 - lower_sum)`` with
    ``log1p`` so the result keeps relative precision when it is close to 0.
    """
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"eps must lie in [0, 1], got {eps}")
    if not 0 <= h0 <= n + 1:
        raise DomainError(f"need 0 <= h0 <= n+1, got h0={h0}, n={n}")
    if h0 == 0:
        return LogProb(0.0)
    if h0 == n + 1:
        return LogProb.zero()
    if eps == 0.0:
        return LogProb.zero()
    if eps == 1.0:
        return LogProb(0.0)
    if h0 > n * eps:
        h = np.arange(h0, n + 1, dtype=float)
        return LogProb(_log2_sum(_log2_binom_pmf(n, h, eps)))
    h = np.arange(0, h0, dtype=float)
    lower = _log2_sum(_log2_binom_pmf(n, h, eps))
    return LogProb(math.log1p(-(2.0 ** lower)) / LN2)


def _log2_binomials(n: int, t: int) -> np.ndarray:
    """log2 C(n, s) for s = 0..t."""
    return np.array([log_binomial(n, s) for s in range(t + 1)])


def _log2_diff(a: float, b: float, rel_tol: float = 1e-12) -> float:
    """log2(2^a - 2^b), -inf when the two agree to rounding."""
    if b == -math.inf:
        return a
    if a == -math.inf:
        raise NegativeProbability(f"difference is negative: 0 - 2^{b:.6g}")
    if b > a:
        gap = b - a
        if gap <= rel_tol * max(1.0, abs(a), abs(b)):
            return -math.inf
        raise NegativeProbability(f"difference is negative: log2 terms {a:.6g} < {b:.6g}")
    if a - b <= rel_tol * max(1.0, abs(a), abs(b)):
        return -math.inf
    return a + math.log1p(-(2.0 ** (b - a))) / LN2


def p_ud(point: AnalysisPoint) -> LogProb:
    """Undetected-error estimate 2^(-mt) sum_s C(n,s) P[wt >= t+1]."""
    n, m, t = point.n, point.m, point.t
    tail = binomial_tail(n, t + 1, point.eps)
    if tail.is_zero:
        return tail
    return LogProb(-m * t + _log2_sum(_log2_binomials(n, t)) + tail.log2)


def p_cond(n: int, d_prime: int, eps: float) -> LogProb:
    """Probability an error pattern reaches half the distance d'.

    The sum starts at ``ceil((d'+1)/2)``.
    """
    if d_prime < 1:
        raise DomainError(f"d' must be >= 1, got {d_prime}")
    h0 = min(-(-(d_prime + 1) // 2), n + 1)
    return binomial_tail(n, h0, eps)


def p_mf_binomial(point: AnalysisPoint) -> LogProb:
    """Malfunction estimate from binomial tails.

    2^(-mt) [ sum_s C(n,s) tail(ceil((s+kappa+1)/2)) - sum_s C(n,s) tail(t+1) ]
    """
    n, m, t, kappa, eps = point.n, point.m, point.t, point.kappa, point.eps
    log_c = _log2_binomials(n, t)
    early = [
        log_c[s] + p_cond(n, s + kappa, eps).log2 for s in range(t + 1)
    ]
    full = log_c + binomial_tail(n, t + 1, eps).log2
    diff = _log2_diff(_log2_sum(early), _log2_sum(full))
    if diff == -math.inf:
        return LogProb.zero()
    return LogProb(-m * t + diff)


def lambda_thresholds(point: AnalysisPoint) -> tuple[np.ndarray, float]:
    """Per-s early threshold (s+kappa+1)/(2n) and the full threshold (t+1)/n."""
    s = np.arange(point.t + 1)
    return (s + point.kappa + 1) / (2 * point.n), (point.t + 1) / point.n


def exponent_bound_valid(point: AnalysisPoint) -> bool:
    """True when eps is below every threshold, where 2^(-nE) bounds the tail."""
    lam1, lam2 = lambda_thresholds(point)
    return point.eps < min(float(lam1.min()), lam2)


def p_mf_exponent(point: AnalysisPoint, strict: bool = False) -> LogProb:
    """Malfunction estimate with each tail replaced by 2^(-n E(lambda, eps)).

    With ``strict=True`` points outside :func:`exponent_bound_valid` raise
    :class:`BoundInvalid`; otherwise the expression is evaluated as written.
    """
    if strict and not exponent_bound_valid(point):
        raise BoundInvalid(
            f"eps={point.eps} >= min threshold; exponential tail bound does not apply"
        )
    n, m, t, eps = point.n, point.m, point.t, point.eps
    lam1, lam2 = lambda_thresholds(point)
    log_c = _log2_binomials(n, t)
    early = [log_c[s] - n * relative_entropy(float(lam1[s]), eps) for s in range(t + 1)]
    full = log_c - n * relative_entropy(lam2, eps)
    diff = _log2_diff(_log2_sum(early), _log2_sum(full))
    if diff == -math.inf:
        return LogProb.zero()
    return LogProb(-m * t + diff)


@dataclass(frozen=True)
class ComplexityBounds:
    c_esbm: int
    c_hv: int
    c_bm: int
    c_es3: int


def complexity_bounds(t: int, e: int, kappa: int) -> ComplexityBounds:
    """Upper bounds on finite-field multiplications, clamped at 0.

    esbm = te + e^2 - 1, hv = 2te + (e^2 - e)/2, bm = 2et - 1,
    es3 = 2e(e + kappa) - 1.
    """
    if t < 1 or e < 0 or kappa < 1:
        raise DomainError(f"need t >= 1, e >= 0, kappa >= 1; got {t}, {e}, {kappa}")
    return ComplexityBounds(
        c_esbm=max(t * e + e * e - 1, 0),
        c_hv=max(2 * t * e + (e * e - e) // 2, 0),
        c_bm=max(2 * e * t - 1, 0),
        c_es3=max(2 * e * (e + kappa) - 1, 0),
    )


def reduction_ratio(t: int, e: int, kappa: int) -> float:
    """1 - C_ES3 / C_ESBM."""
    b = complexity_bounds(t, e, kappa)
    if b.c_esbm == 0:
        raise ZeroDivisionError("C_ESBM is zero (e = 0)")
    return 1.0 - b.c_es3 / b.c_esbm


def log_eps_grid(start: float = 1e-4, stop: float = 1e-1, points: int = 200) -> np.ndarray:
    return np.logspace(math.log10(start), math.log10(stop), points)


def sweep(func, point: AnalysisPoint, eps_grid) -> list[tuple[float, LogProb | None]]:
    """Evaluate ``func(point.with_eps(eps))`` over a grid.

    Points where the estimate is undefined (negative difference, invalid
    bound) come back as ``None``.
    """
    out = []
    for eps in eps_grid:
        try:
            out.append((float(eps), func(point.with_eps(float(eps)))))
        except (NegativeProbability, BoundInvalid):
            out.append((float(eps), None))
    return out


def peak(results) -> tuple[float, LogProb]:
    """Largest defined value of a sweep, with its eps."""
    defined = [(lp, eps) for eps, lp in results if lp is not None and not lp.is_zero]
    if not defined:
        raise ValueError("sweep has no positive values")
    lp, eps = max(defined)
    return eps, lp
