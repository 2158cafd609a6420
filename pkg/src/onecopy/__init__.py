"""Permutations with exactly one copy of a pattern: constructive injections
into avoider classes, and exhaustive enumeration to check them."""
from .core import (
    Occurrence, Permutation, avoids, complement, corank_profile, count_occurrences,
    direct_sum, dominates, exactly_one, monotone, occurrences, parse, reverse,
    right_to_left_minima, skew_blocks, skew_sum, standardize,
)
from .maps import (
    F_general, F_k, blue_red_partition_general, blue_red_partition_monotone, build_h,
    decompose_unique_321, f, g, g_inverse, predict_rl_minima,
)
from .enumeration import (
    catalan, count_avoiders, count_by_skew_blocks, count_exactly_one,
    enumerate_avoiders, enumerate_exactly_one, noonan,
)

__version__ = "0.1.0"
