"""Binary BCH codes with early-stopped Berlekamp-Massey decoding."""

__version__ = "0.1.0"

from .analysis import (
    AnalysisPoint,
    LogProb,
    binomial_tail,
    complexity_bounds,
    p_mf_binomial,
    p_mf_exponent,
    p_ud,
    reduction_ratio,
)
from .bch import BchCode, build_code, encode, is_codeword
from .channel_sim import SimConfig, exhaustive_oracle, run_trials
from .decoder import DecodeOutcome, DecodeStatus, StopCriterion, compute_syndromes, decode
from .galois import GaloisField

__all__ = [
    "AnalysisPoint",
    "BchCode",
    "DecodeOutcome",
    "DecodeStatus",
    "GaloisField",
    "LogProb",
    "SimConfig",
    "StopCriterion",
    "binomial_tail",
    "build_code",
    "complexity_bounds",
    "compute_syndromes",
    "decode",
    "encode",
    "exhaustive_oracle",
    "is_codeword",
    "p_mf_binomial",
    "p_mf_exponent",
    "p_ud",
    "reduction_ratio",
    "run_trials",
]
