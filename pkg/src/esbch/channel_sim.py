"""BSC Monte Carlo harness and exhaustive small-code oracle.

Each trial encodes a random message, passes it through a binary symmetric
channel and decodes the result twice: once with the full 2t-iteration BM
and once with an early-stop criterion.  A *malfunction* is an early stop
that returns a wrong word without flagging failure; an early stop that ends
in ``DecodeStatus.FAILURE`` is a *detected failure*.

Randomness: trials are split into fixed-size chunks and chunk ``c`` draws
from ``PCG64(SeedSequence(seed, spawn_key=(c,)))``, so the aggregate does
not depend on how chunks are spread over workers.
"""

from __future__ import annotations

import copy
import itertools
import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from .bch import BchCode, build_code, encode
from .decoder import (
    BmState,
    DecodeOutcome,
    DecodeStatus,
    StopCriterion,
    StopKind,
    bm_iterate,
    check_stop,
    compute_syndromes,
    decode,
    finish_decode,
)
from .galois import GaloisField

RNG_NAME = f"numpy.random.PCG64/SeedSequence(numpy {np.__version__})"
CHUNK_TRIALS = 1000


class InstanceTooLarge(ValueError):
    pass


def bsc_corrupt(codeword, eps: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Flip each bit independently with probability eps; return (received, error_pattern)."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    codeword = np.asarray(codeword, dtype=np.uint8)
    error = (rng.random(codeword.shape[0]) < eps).astype(np.uint8)
    return codeword ^ error, error


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


@dataclass(frozen=True)
class SimConfig:
    m: int
    t: int
    criterion: StopCriterion
    eps: float
    trials: int
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 0.0 <= self.eps < 0.5:
            raise ValueError(f"eps must lie in [0, 0.5), got {self.eps}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass
class TrialRecord:
    e: int
    outcome_full: DecodeOutcome
    outcome_es: DecodeOutcome
    agree: bool
    malfunction: bool
    detected_failure: bool
    iterations_saved: int
    muls_saved: int


def _same_result(a: DecodeOutcome, b: DecodeOutcome) -> bool:
    if a.status is not b.status:
        return False
    if a.corrected is None or b.corrected is None:
        return a.corrected is None and b.corrected is None
    return bool(np.array_equal(a.corrected, b.corrected))


def make_record(transmitted: np.ndarray, e: int, full: DecodeOutcome, es: DecodeOutcome) -> TrialRecord:
    wrong = es.status is DecodeStatus.FAILURE or not np.array_equal(es.corrected, transmitted)
    return TrialRecord(
        e=e,
        outcome_full=full,
        outcome_es=es,
        agree=_same_result(full, es),
        malfunction=es.stopped_early and wrong and es.status is not DecodeStatus.FAILURE,
        detected_failure=es.stopped_early and es.status is DecodeStatus.FAILURE,
        iterations_saved=full.iterations_used - es.iterations_used,
        muls_saved=full.mul_count - es.mul_count,
    )


def decode_pair(
    code: BchCode, received: np.ndarray, criterion: StopCriterion
) -> tuple[DecodeOutcome, DecodeOutcome]:
    """Decode under Full2T and ``criterion`` sharing one BM run.

    The early-stopped register is a prefix of the full run, so it is
    snapshotted at the first iteration where ``criterion`` fires.  Chien
    results are reused when both locators coincide.
    """
    syndromes = compute_syndromes(code, received)
    if not any(syndromes):
        nothing = DecodeOutcome(DecodeStatus.NO_ERRORS, received.copy(), [], 0, 0, 0, False)
        return nothing, copy.copy(nothing)
    t = code.t
    state = BmState()
    snapshot = None
    track = criterion.kind is not StopKind.FULL
    while True:
        bm_iterate(code, state, syndromes)
        if state.j >= 2 * t:
            break
        if track and snapshot is None and check_stop(criterion, state, t):
            snapshot = copy.deepcopy(state)
    full = finish_decode(code, received, state)
    if snapshot is None:
        es_state = state
    else:
        es_state = snapshot
    same_locator = es_state.sigma[: es_state.degree + 1] == list(full.sigma)
    es = finish_decode(code, received, es_state, roots=full.error_locations if same_locator else None)
    return full, es


@dataclass
class Bucket:
    count: int = 0
    agree: int = 0
    malfunction: int = 0
    detected_failure: int = 0
    iter_full: int = 0
    iter_es: int = 0
    muls_full: int = 0
    muls_es: int = 0

    def add(self, rec: TrialRecord) -> None:
        self.count += 1
        self.agree += rec.agree
        self.malfunction += rec.malfunction
        self.detected_failure += rec.detected_failure
        self.iter_full += rec.outcome_full.iterations_used
        self.iter_es += rec.outcome_es.iterations_used
        self.muls_full += rec.outcome_full.mul_count
        self.muls_es += rec.outcome_es.mul_count

    def merge(self, other: "Bucket") -> None:
        for name in self.__dataclass_fields__:
            setattr(self, name, getattr(self, name) + getattr(other, name))


@dataclass
class SimSummary:
    trials: int = 0
    early_stops: int = 0
    full_failures: int = 0
    full_miscorrections: int = 0
    max_iter_full: int = 0
    max_iter_es: int = 0
    max_muls_full: int = 0
    max_muls_es: int = 0
    buckets: dict[int, Bucket] = field(default_factory=dict)

    def add(self, rec: TrialRecord, transmitted: np.ndarray) -> None:
        self.trials += 1
        self.early_stops += rec.outcome_es.stopped_early
        full = rec.outcome_full
        if full.status is DecodeStatus.FAILURE:
            self.full_failures += 1
        elif not np.array_equal(full.corrected, transmitted):
            self.full_miscorrections += 1
        self.max_iter_full = max(self.max_iter_full, full.iterations_used)
        self.max_iter_es = max(self.max_iter_es, rec.outcome_es.iterations_used)
        self.max_muls_full = max(self.max_muls_full, full.mul_count)
        self.max_muls_es = max(self.max_muls_es, rec.outcome_es.mul_count)
        self.buckets.setdefault(rec.e, Bucket()).add(rec)

    def merge(self, other: "SimSummary") -> None:
        self.trials += other.trials
        self.early_stops += other.early_stops
        self.full_failures += other.full_failures
        self.full_miscorrections += other.full_miscorrections
        for name in ("max_iter_full", "max_iter_es", "max_muls_full", "max_muls_es"):
            setattr(self, name, max(getattr(self, name), getattr(other, name)))
        for e, b in other.buckets.items():
            self.buckets.setdefault(e, Bucket()).merge(b)
        self.buckets = dict(sorted(self.buckets.items()))

    def _total(self, name: str) -> int:
        return sum(getattr(b, name) for b in self.buckets.values())

    @property
    def malfunctions(self) -> int:
        return self._total("malfunction")

    @property
    def detected_failures(self) -> int:
        return self._total("detected_failure")

    @property
    def agreement_rate(self) -> float:
        return self._total("agree") / self.trials

    @property
    def mean_iter_full(self) -> float:
        return self._total("iter_full") / self.trials

    @property
    def mean_iter_es(self) -> float:
        return self._total("iter_es") / self.trials

    @property
    def mean_muls_full(self) -> float:
        return self._total("muls_full") / self.trials

    @property
    def mean_muls_es(self) -> float:
        return self._total("muls_es") / self.trials

    @property
    def error_histogram(self) -> dict[int, int]:
        return {e: b.count for e, b in self.buckets.items()}

    def rows(self) -> list[dict]:
        out = []
        for e, b in sorted(self.buckets.items()):
            out.append(
                dict(
                    e=e,
                    count=b.count,
                    agree=b.agree,
                    malfunction=b.malfunction,
                    detected_failure=b.detected_failure,
                    mean_iter_full=b.iter_full / b.count,
                    mean_iter_es=b.iter_es / b.count,
                    mean_muls_full=b.muls_full / b.count,
                    mean_muls_es=b.muls_es / b.count,
                )
            )
        return out


def run_trial(code: BchCode, criterion: StopCriterion, eps: float, rng: np.random.Generator):
    message = rng.integers(0, 2, code.k, dtype=np.uint8)
    codeword = encode(code, message)
    received, error = bsc_corrupt(codeword, eps, rng)
    full, es = decode_pair(code, received, criterion)
    return make_record(codeword, int(error.sum()), full, es), codeword


def _run_chunk(args) -> SimSummary:
    config, chunk, n_trials = args
    code = build_code(GaloisField(config.m), config.t)
    rng = chunk_rng(config.seed, chunk)
    summary = SimSummary()
    for _ in range(n_trials):
        rec, codeword = run_trial(code, config.criterion, config.eps, rng)
        summary.add(rec, codeword)
    return summary


def _chunks(trials: int):
    full, rest = divmod(trials, CHUNK_TRIALS)
    sizes = [CHUNK_TRIALS] * full + ([rest] if rest else [])
    return list(enumerate(sizes))


def run_trials(config: SimConfig, progress=None) -> SimSummary:
    """Run ``config.trials`` BSC trials and aggregate them.

    ``progress``, if given, is called with the number of finished trials
    after every chunk.
    """
    jobs = [(config, c, size) for c, size in _chunks(config.trials)]
    total = SimSummary()
    done = 0
    if config.workers == 1:
        results = map(_run_chunk, jobs)
    else:
        pool = multiprocessing.Pool(config.workers)
        results = pool.imap(_run_chunk, jobs)
    try:
        for part in results:
            total.merge(part)
            done += part.trials
            if progress is not None:
                progress(done)
    finally:
        if config.workers != 1:
            pool.close()
            pool.join()
    return total


@dataclass
class Counterexample:
    positions: tuple[int, ...]
    weight: int
    stop_iteration: int
    d_history: tuple[int, ...]
    full_status: DecodeStatus
    es_status: DecodeStatus


@dataclass
class WeightStats:
    patterns: int = 0
    disagree: int = 0
    full_failure: int = 0
    full_miscorrect: int = 0
    es_malfunction: int = 0
    es_detected_failure: int = 0
    iter_es: int = 0
    max_iter_es: int = 0


@dataclass
class OracleReport:
    m: int
    t: int
    criterion: StopCriterion
    max_weight: int
    by_weight: dict[int, WeightStats] = field(default_factory=dict)
    disagreements: list[Counterexample] = field(default_factory=list)
    # patterns of weight <= t that the full decoder did not fix
    full_uncorrected: list[tuple[int, ...]] = field(default_factory=list)
    # weight <= t patterns with a nonzero d_j for some j > 2e
    late_discrepancies: list[tuple[int, ...]] = field(default_factory=list)
    # ES3 stops later than 2e + kappa (weight <= t)
    late_stops: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def patterns(self) -> int:
        return sum(w.patterns for w in self.by_weight.values())

    def disagreements_within(self, weight: int) -> int:
        return sum(s.disagree for w, s in self.by_weight.items() if w <= weight)

    def rows(self) -> list[dict]:
        return [
            dict(
                weight=w,
                patterns=s.patterns,
                disagree=s.disagree,
                full_failure=s.full_failure,
                full_miscorrect=s.full_miscorrect,
                es_malfunction=s.es_malfunction,
                es_detected_failure=s.es_detected_failure,
                mean_iter_es=s.iter_es / s.patterns if s.patterns else 0.0,
                max_iter_es=s.max_iter_es,
            )
            for w, s in sorted(self.by_weight.items())
        ]


def exhaustive_oracle(
    m: int, t: int, criterion: StopCriterion, max_weight: int, max_n: int = 31
) -> OracleReport:
    """Decode every error pattern of weight <= max_weight on the zero codeword.

    Linearity makes the all-zero codeword representative.  Full2T and
    ``criterion`` are run as two independent decodes.
    """
    gf = GaloisField(m)
    if gf.order > max_n:
        raise InstanceTooLarge(f"n={gf.order} exceeds {max_n}")
    if not 0 <= max_weight <= gf.order:
        raise ValueError(f"max_weight must lie in [0, {gf.order}]")
    code = build_code(gf, t)
    n = code.n
    zero = np.zeros(n, dtype=np.uint8)
    full_rule = StopCriterion.full()
    report = OracleReport(m, t, criterion, max_weight)
    for w in range(max_weight + 1):
        stats = report.by_weight.setdefault(w, WeightStats())
        for pos in itertools.combinations(range(n), w):
            received = zero.copy()
            received[list(pos)] = 1
            full = decode(code, received, full_rule)
            es = decode(code, received, criterion)
            stats.patterns += 1
            rec = make_record(zero, w, full, es)
            if not rec.agree:
                stats.disagree += 1
                report.disagreements.append(
                    Counterexample(pos, w, es.iterations_used, es.d_history, full.status, es.status)
                )
            if full.status is DecodeStatus.FAILURE:
                stats.full_failure += 1
            elif full.corrected.any():
                stats.full_miscorrect += 1
            stats.es_malfunction += rec.malfunction
            stats.es_detected_failure += rec.detected_failure
            stats.iter_es += es.iterations_used
            stats.max_iter_es = max(stats.max_iter_es, es.iterations_used)
            if w <= t:
                if full.status is DecodeStatus.FAILURE or full.corrected.any():
                    report.full_uncorrected.append(pos)
                if any(full.d_history[2 * w:]):
                    report.late_discrepancies.append(pos)
                if criterion.kind is StopKind.ES3 and w > 0 and es.iterations_used > 2 * w + criterion.kappa:
                    report.late_stops.append(pos)
    return report

