"""Exact distribution of the change in the number of 11-blocks under addition."""

__version__ = "0.1.0"

from .bitcore import block_count, carries, drift, drift_s, r, s, to_bits
from .drift import ab_dist, c_dist, cusick_sum, dist_vector, moment_vector, v_seq
from .dyadic import Dyadic, TailedPMF

__all__ = [
    "Dyadic",
    "TailedPMF",
    "ab_dist",
    "block_count",
    "c_dist",
    "carries",
    "cusick_sum",
    "dist_vector",
    "drift",
    "drift_s",
    "moment_vector",
    "r",
    "s",
    "to_bits",
    "v_seq",
]
