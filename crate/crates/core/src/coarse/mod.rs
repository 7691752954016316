//! Geodesics, midpoints and the bottleneck property.

mod bp;
mod geodesic;

pub use bp::{
    bp_scan, check_bp_pair, check_bp_pair_with_cap, check_margin, eligible_vertices, least_clean_delta,
    sample_pairs, verify_violation, BpReport, PairCheck, PairOutcome, PairSource, SkippedPair, DEFAULT_MIDPOINT_CAP,
};
pub use geodesic::{all_midpoints, midpoint_ball, GeodesicWithMidpoint, HalfInt, Midpoint};
