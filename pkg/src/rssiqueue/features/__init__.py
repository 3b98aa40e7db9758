from .backtrack import BacktrackContext, build_backtrack_context
from .cross_device import f8_mobility_similarity, sorted_peers, stability_table
from .cross_sniffer import f9_mobility_correlation
from .extract import FEATURE_GROUPS, extract_all, mask_feature_groups, mask_features, restrict_to_counter
from .single_device import (
    AccumulatedSlope,
    f1_accumulated_slope,
    f2_approaching_counter,
    f3_near_counter,
    f4_f5_f6_stability,
    f7_stay_duration,
)
from .statistics import pearson, population_variance, window_representative

__all__ = [
    "FEATURE_GROUPS",
    "AccumulatedSlope",
    "BacktrackContext",
    "build_backtrack_context",
    "extract_all",
    "f1_accumulated_slope",
    "f2_approaching_counter",
    "f3_near_counter",
    "f4_f5_f6_stability",
    "f7_stay_duration",
    "f8_mobility_similarity",
    "f9_mobility_correlation",
    "mask_feature_groups",
    "mask_features",
    "pearson",
    "population_variance",
    "restrict_to_counter",
    "sorted_peers",
    "stability_table",
    "window_representative",
]
