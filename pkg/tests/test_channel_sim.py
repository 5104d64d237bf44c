import numpy as np
import pytest

from esbch.bch import build_code, encode
from esbch.channel_sim import (
    InstanceTooLarge,
    SimConfig,
    bsc_corrupt,
    chunk_rng,
    decode_pair,
    exhaustive_oracle,
    run_trials,
)
from esbch.decoder import DecodeStatus, StopCriterion, decode
from esbch.galois import GaloisField


def test_bsc_extremes():
    cw = np.array([0, 1, 1, 0, 1], dtype=np.uint8)
    rx, e = bsc_corrupt(cw, 0.0, np.random.default_rng(0))
    assert np.array_equal(rx, cw) and not e.any()
    rx, e = bsc_corrupt(cw, 1.0, np.random.default_rng(0))
    assert np.array_equal(rx, 1 - cw) and e.all()


def test_bsc_flip_rate():
    rx, e = bsc_corrupt(np.zeros(200_000, dtype=np.uint8), 0.05, np.random.default_rng(2))
    assert abs(e.mean() - 0.05) < 5 * np.sqrt(0.05 * 0.95 / 200_000)
    assert np.array_equal(rx, e)


def test_chunk_streams_are_deterministic_and_distinct():
    a = chunk_rng(7, 3).integers(0, 2 ** 32, 8)
    b = chunk_rng(7, 3).integers(0, 2 ** 32, 8)
    c = chunk_rng(7, 4).integers(0, 2 ** 32, 8)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(5, 3, StopCriterion.full(), 0.5, 10)
    with pytest.raises(ValueError):
        SimConfig(5, 3, StopCriterion.full(), 0.01, 10, workers=0)


@pytest.mark.parametrize("crit", [StopCriterion.es1(), StopCriterion.es3(1), StopCriterion.es3(4)], ids=str)
def test_decode_pair_matches_independent_decodes(code_63_45, crit):
    rng = np.random.default_rng(11)
    for _ in range(300):
        rx = (rng.random(63) < 0.06).astype(np.uint8)
        full, es = decode_pair(code_63_45, rx, crit)
        ref_full, ref_es = decode(code_63_45, rx), decode(code_63_45, rx, crit)
        for got, ref in ((full, ref_full), (es, ref_es)):
            assert got.status == ref.status
            assert got.error_locations == ref.error_locations
            assert got.iterations_used == ref.iterations_used
            assert got.mul_count == ref.mul_count
            assert got.sigma == ref.sigma


def test_simulation_reproducible_and_partition_invariant():
    cfg = SimConfig(5, 3, StopCriterion.es3(2), 0.08, 2500, seed=4)
    a = run_trials(cfg)
    b = run_trials(cfg)
    c = run_trials(SimConfig(5, 3, StopCriterion.es3(2), 0.08, 2500, seed=4, workers=2))
    assert a.rows() == b.rows() == c.rows()
    assert a.trials == c.trials == 2500
    assert (a.malfunctions, a.full_failures) == (c.malfunctions, c.full_failures)
    assert run_trials(SimConfig(5, 3, StopCriterion.es3(2), 0.08, 2500, seed=5)).rows() != a.rows()


def test_noiseless_channel_never_decodes():
    s = run_trials(SimConfig(6, 3, StopCriterion.es3(4), 0.0, 300))
    assert s.error_histogram == {0: 300}
    assert s.agreement_rate == 1.0 and s.mean_iter_full == 0.0


def test_es3_runs_fewer_iterations():
    s = run_trials(SimConfig(5, 3, StopCriterion.es3(1), 0.03, 2000, seed=1))
    assert s.mean_iter_es < s.mean_iter_full
    assert s.mean_muls_es <= s.mean_muls_full
    assert s.max_iter_full <= 6


def test_within_capability_patterns_agree():
    s = run_trials(SimConfig(6, 3, StopCriterion.es3(4), 0.02, 2000, seed=3))
    for row in s.rows():
        if row["e"] <= 3:
            assert row["agree"] == row["count"]
            assert row["malfunction"] == 0


def test_progress_callback():
    seen = []
    run_trials(SimConfig(4, 2, StopCriterion.full(), 0.1, 2100), progress=seen.append)
    assert seen == [1000, 2000, 2100]


def test_oracle_m4():
    rep = exhaustive_oracle(4, 2, StopCriterion.es3(2), 3)
    assert rep.patterns == 1 + 15 + 105 + 455
    assert not rep.full_uncorrected
    assert not rep.late_discrepancies
    assert not rep.late_stops
    assert rep.disagreements_within(2) == 0


def test_oracle_size_guard():
    with pytest.raises(InstanceTooLarge):
        exhaustive_oracle(6, 3, StopCriterion.full(), 1)


def test_mul_count_envelope(code_31_16):
    """Reported counts stay inside the textbook bounds for weight <= t."""
    rng = np.random.default_rng(8)
    for _ in range(200):
        w = int(rng.integers(1, 4))
        pos = rng.choice(31, w, replace=False)
        rx = np.zeros(31, dtype=np.uint8)
        rx[pos] = 1
        full = decode(code_31_16, rx)
        es = decode(code_31_16, rx, StopCriterion.es3(1))
        assert full.status is DecodeStatus.CORRECTED
        assert es.mul_count <= full.mul_count
        assert full.mul_count <= 2 * 3 * 3 + 3 * (3 + 1) * 2
