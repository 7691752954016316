//! Bottleneck-property checks for single pairs and scans over many pairs.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{graph_distances, is_separating_within, Separation, SeparationCertificate, VertexSet};
use crate::patch::PlanarPatch;

use super::geodesic::{all_midpoints, midpoint_ball, GeodesicWithMidpoint, HalfInt, Midpoint};

/// How many midpoints are tried when checking whether a violation holds for
/// every geodesic, before giving up.
pub const DEFAULT_MIDPOINT_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    /// Every `p`–`q` path in the search region meets the ball.
    Satisfied(Option<SeparationCertificate>),
    /// `path` joins `p` to `q` and misses the ball.
    Violated { path: Vec<VertexId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub geodesic: GeodesicWithMidpoint,
    pub delta: HalfInt,
    pub outcome: PairOutcome,
    /// For violations: whether every midpoint of every geodesic is also
    /// violated; `None` when there were too many midpoints to try.
    pub all_midpoints_violated: Option<bool>,
}

impl PairCheck {
    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, PairOutcome::Violated { .. })
    }

    pub fn avoiding_path(&self) -> Option<&[VertexId]> {
        match &self.outcome {
            PairOutcome::Violated { path } => Some(path),
            PairOutcome::Satisfied(_) => None,
        }
    }
}

/// Checks that the margin rule holds for this pair: `p`, `q`, the midpoint
/// ball and hence `m` lie within `cert_radius - 1` of a center.
pub fn check_margin(patch: &PlanarPatch, geo: &GeodesicWithMidpoint, delta: HalfInt) -> Result<()> {
    let limit = patch.cert_radius().saturating_sub(1);
    let reach = match geo.midpoint {
        Midpoint::Vertex(v) => patch.depth(v).saturating_add(delta.floor()),
        Midpoint::Edge(u, v) => patch
            .depth(u)
            .max(patch.depth(v))
            .saturating_add(delta.doubled().saturating_sub(1) / 2),
    };
    for (what, d) in [("p", patch.depth(geo.p)), ("q", patch.depth(geo.q)), ("midpoint ball", reach)] {
        if patch.cert_radius() == 0 || d > limit {
            return Err(Error::certification(format!(
                "{what} of pair ({}, {}) reaches depth {d}, beyond {limit}",
                geo.p, geo.q
            )));
        }
    }
    Ok(())
}

fn avoid(g: &Graph, region: &dyn Fn(VertexId) -> bool, geo: &GeodesicWithMidpoint, m: Midpoint, delta: HalfInt) -> Result<PairOutcome> {
    let ball = midpoint_ball(g, m, delta);
    if ball.contains(geo.p) || ball.contains(geo.q) {
        return Ok(PairOutcome::Satisfied(None));
    }
    Ok(match is_separating_within(g, &ball, geo.p, geo.q, region)? {
        Separation::Avoiding(path) => PairOutcome::Violated { path },
        Separation::Separated(cert) => PairOutcome::Satisfied(Some(cert)),
    })
}

/// Tests the pair at scale `delta` against the midpoint of its canonical
/// geodesic. Paths are searched within `cert_radius - 1` of the centers.
pub fn check_bp_pair(patch: &PlanarPatch, p: VertexId, q: VertexId, delta: HalfInt) -> Result<PairCheck> {
    check_bp_pair_with_cap(patch, p, q, delta, DEFAULT_MIDPOINT_CAP)
}

pub fn check_bp_pair_with_cap(
    patch: &PlanarPatch,
    p: VertexId,
    q: VertexId,
    delta: HalfInt,
    midpoint_cap: usize,
) -> Result<PairCheck> {
    let g = patch.graph();
    let geo = GeodesicWithMidpoint::canonical(g, p, q)?;
    check_margin(patch, &geo, delta)?;
    let limit = patch.cert_radius() - 1;
    let region = |v: VertexId| patch.depth(v) <= limit;
    let outcome = avoid(g, &region, &geo, geo.midpoint, delta)?;
    let all_midpoints_violated = if matches!(outcome, PairOutcome::Violated { .. }) {
        match all_midpoints(g, p, q, midpoint_cap) {
            None => None,
            Some(ms) => {
                let mut all = true;
                for m in ms {
                    if m == geo.midpoint {
                        continue;
                    }
                    let alt = GeodesicWithMidpoint { midpoint: m, ..geo.clone() };
                    if check_margin(patch, &alt, delta).is_err() {
                        return Ok(PairCheck {
                            geodesic: geo,
                            delta,
                            outcome,
                            all_midpoints_violated: None,
                        });
                    }
                    if !matches!(avoid(g, &region, &alt, m, delta)?, PairOutcome::Violated { .. }) {
                        all = false;
                        break;
                    }
                }
                Some(all)
            }
        }
    } else {
        None
    };
    Ok(PairCheck {
        geodesic: geo,
        delta,
        outcome,
        all_midpoints_violated,
    })
}

/// Re-checks a reported violation from scratch.
pub fn verify_violation(g: &Graph, check: &PairCheck) -> bool {
    let Some(path) = check.avoiding_path() else {
        return false;
    };
    let ball = midpoint_ball(g, check.geodesic.midpoint, check.delta);
    g.is_path(path)
        && path.first() == Some(&check.geodesic.p)
        && path.last() == Some(&check.geodesic.q)
        && path.iter().all(|&v| !ball.contains(v))
}

/// Pairs whose every vertex lies inside `cert_radius - 1`.
pub fn eligible_vertices(patch: &PlanarPatch) -> Vec<VertexId> {
    (0..patch.num_vertices()).filter(|&v| patch.in_certified_interior(v)).collect()
}

/// Samples `count` pairs, stratified by distance: bucket `j` holds distances
/// in `[2^j, 2^(j+1))`, and buckets are visited round robin. Only distances
/// at least `min_dist` are drawn. Both endpoints are eligible vertices.
pub fn sample_pairs<R: Rng>(patch: &PlanarPatch, count: usize, min_dist: u32, rng: &mut R) -> Vec<(VertexId, VertexId)> {
    let pool = eligible_vertices(patch);
    if pool.len() < 2 {
        return Vec::new();
    }
    let in_pool = VertexSet::new(patch.num_vertices(), pool.iter().copied());
    let max_dist = 2 * patch.cert_radius();
    let lo = min_dist.max(1);
    let first_bucket = 31 - lo.leading_zeros();
    let last_bucket = 31 - max_dist.max(1).leading_zeros();
    let buckets: Vec<u32> = (first_bucket..=last_bucket).collect();
    let mut pairs = Vec::with_capacity(count);
    let mut next_bucket = 0usize;
    let mut misses = 0usize;
    while pairs.len() < count && misses < 50 * count.max(1) {
        let p = *pool.choose(rng).unwrap();
        let d = graph_distances(patch.graph(), p, max_dist);
        let mut placed = false;
        for k in 0..buckets.len() {
            let j = buckets[(next_bucket + k) % buckets.len()];
            let (a, b) = ((1u32 << j).max(lo), 1u32 << (j + 1));
            let cands: Vec<VertexId> = d
                .reached()
                .iter()
                .copied()
                .filter(|&w| in_pool.contains(w) && (a..b).contains(&d.get(w).unwrap()))
                .collect();
            if let Some(&q) = cands.choose(rng) {
                pairs.push((p, q));
                next_bucket = (next_bucket + k + 1) % buckets.len();
                placed = true;
                break;
            }
        }
        if !placed {
            misses += 1;
        }
    }
    pairs
}

#[derive(Clone, Debug)]
pub enum PairSource {
    /// Every unordered pair of eligible vertices.
    Exhaustive,
    Explicit(Vec<(VertexId, VertexId)>),
}

#[derive(Clone, Debug)]
pub struct SkippedPair {
    pub p: VertexId,
    pub q: VertexId,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct BpReport {
    pub delta: HalfInt,
    /// Checked pairs, in pair-id order.
    pub checks: Vec<PairCheck>,
    pub skipped: Vec<SkippedPair>,
}

impl BpReport {
    pub fn violations(&self) -> impl Iterator<Item = &PairCheck> {
        self.checks.iter().filter(|c| c.is_violation())
    }

    pub fn num_violations(&self) -> usize {
        self.violations().count()
    }

    pub fn write_csv(&self, out: &mut String, header: bool) {
        if header {
            out.push_str("pair_p,pair_q,dist,delta_doubled,outcome,midpoint_kind,path_len\n");
        }
        for c in &self.checks {
            let (outcome, len) = match &c.outcome {
                PairOutcome::Satisfied(_) => ("satisfied".to_string(), String::new()),
                PairOutcome::Violated { path } => {
                    let tag = match c.all_midpoints_violated {
                        Some(true) => "violated_all",
                        _ => "violated_canonical",
                    };
                    (tag.to_string(), (path.len() - 1).to_string())
                }
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                c.geodesic.p,
                c.geodesic.q,
                c.geodesic.dist(),
                c.delta.doubled(),
                outcome,
                c.geodesic.midpoint.kind(),
                len
            );
        }
        for s in &self.skipped {
            let _ = writeln!(out, "{},{},,{},skipped,,", s.p, s.q, self.delta.doubled());
        }
    }
}

/// Checks every pair of the source at scale `delta`, in parallel. Pairs that
/// fail the margin rule are reported as skipped.
pub fn bp_scan(patch: &PlanarPatch, delta: HalfInt, source: &PairSource) -> Result<BpReport> {
    let pairs: Vec<(VertexId, VertexId)> = match source {
        PairSource::Explicit(p) => p.clone(),
        PairSource::Exhaustive => {
            let pool = eligible_vertices(patch);
            let mut out = Vec::new();
            for (i, &p) in pool.iter().enumerate() {
                for &q in &pool[i + 1..] {
                    out.push((p, q));
                }
            }
            out
        }
    };
    for &(p, q) in &pairs {
        patch.graph().check_vertex(p)?;
        patch.graph().check_vertex(q)?;
    }
    let results: Vec<std::result::Result<PairCheck, SkippedPair>> = pairs
        .par_iter()
        .map(|&(p, q)| match check_bp_pair(patch, p, q, delta) {
            Ok(c) => Ok(c),
            Err(e) => Err(SkippedPair {
                p,
                q,
                reason: e.to_string(),
            }),
        })
        .collect();
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(c) => checks.push(c),
            Err(s) => skipped.push(s),
        }
    }
    Ok(BpReport { delta, checks, skipped })
}

/// Least tested scale with no violation, if any.
pub fn least_clean_delta(reports: &[BpReport]) -> Option<HalfInt> {
    reports
        .iter()
        .filter(|r| r.num_violations() == 0)
        .map(|r| r.delta)
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{alpha_tree, triangular_lattice};
    use crate::patch::Dart;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cycle_patch(n: usize) -> PlanarPatch {
        let nbrs: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        let g = Graph::from_rotation(nbrs).unwrap();
        PlanarPatch::new(g, Dart::new(0, 1), vec![0], 100, false).unwrap()
    }

    #[test]
    fn cycle_antipodes_violate() {
        let p = cycle_patch(20);
        let c = check_bp_pair(&p, 0, 10, HalfInt::from_int(1)).unwrap();
        assert!(c.is_violation());
        assert!(verify_violation(p.graph(), &c));
        // the antipodal pair of an even cycle has two midpoints, both violated
        assert_eq!(c.all_midpoints_violated, Some(true));
    }

    #[test]
    fn tree_pairs_satisfy() {
        let t = alpha_tree(1.5, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pairs = sample_pairs(&t, 100, 2, &mut rng);
        assert_eq!(pairs.len(), 100);
        let rep = bp_scan(&t, HalfInt::from_int(1), &PairSource::Explicit(pairs)).unwrap();
        assert_eq!(rep.num_violations(), 0);
        assert!(rep.skipped.is_empty());
    }

    #[test]
    fn lattice_detour_at_distance_twenty() {
        let p = triangular_lattice(30).unwrap();
        // (10, 0) and (-10, 0) in axial coordinates pass through the center
        let coords = crate::generators::hex_coordinates(30);
        let a = coords.iter().position(|&c| c == (10, 0)).unwrap();
        let b = coords.iter().position(|&c| c == (-10, 0)).unwrap();
        let c = check_bp_pair(&p, a, b, HalfInt::from_int(5)).unwrap();
        assert_eq!(c.geodesic.midpoint, Midpoint::Vertex(0));
        assert!(c.is_violation() && verify_violation(p.graph(), &c));
    }

    #[test]
    fn margin_violation_is_a_certification_error() {
        let p = triangular_lattice(5).unwrap();
        let far = p.num_vertices() - 1;
        assert!(matches!(
            check_bp_pair(&p, 0, far, HalfInt::from_int(1)),
            Err(Error::Certification(_))
        ));
    }

    #[test]
    fn csv_shape() {
        let p = cycle_patch(8);
        let rep = bp_scan(&p, HalfInt::from_int(1), &PairSource::Explicit(vec![(0, 4), (0, 1)])).unwrap();
        let mut s = String::new();
        rep.write_csv(&mut s, true);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "pair_p,pair_q,dist,delta_doubled,outcome,midpoint_kind,path_len");
        assert_eq!(lines[1], "0,4,4,2,violated_all,vertex,4");
        assert_eq!(lines[2], "0,1,1,2,satisfied,edge,");
    }
}
