"""Sub-Nyquist speech degradation and evaluation toolkit."""

from ._lowfreq import (
    LowfreqError,
    auc_score,
    bootstrap_ci_mean,
    degrade,
    log_mel,
    mann_whitney_u,
    mcc_score,
    rasterize_segments,
    read_wav,
    resample,
    roc_curve,
    stft_magnitude,
    subsample,
    upsample,
    wer,
    wer_corpus,
    write_wav,
    yin,
)

__all__ = [
    "LowfreqError",
    "auc_score",
    "bootstrap_ci_mean",
    "degrade",
    "log_mel",
    "mann_whitney_u",
    "mcc_score",
    "rasterize_segments",
    "read_wav",
    "resample",
    "roc_curve",
    "stft_magnitude",
    "subsample",
    "upsample",
    "wer",
    "wer_corpus",
    "write_wav",
    "yin",
]
