//! Volume-growth witnesses built from a bottleneck violation, and an
//! independent auditor for them.

use std::fmt::Write as _;

use crate::coarse::{midpoint_ball, GeodesicWithMidpoint, HalfInt, Midpoint, PairCheck};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{canonical_geodesic, graph_distances, multi_source_distances, SubgraphHandle, VertexSet};
use crate::patch::PlanarPatch;

use super::boundary::{boundary_path_bfs, loop_erase, timar_path};

/// A geodesic `p`–`q` with midpoint `m` and a `p`–`q` path avoiding a ball
/// around `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub geodesic: GeodesicWithMidpoint,
    pub avoiding: Vec<VertexId>,
}

impl Violation {
    pub fn from_check(check: &PairCheck) -> Option<Self> {
        check.avoiding_path().map(|path| Violation {
            geodesic: check.geodesic.clone(),
            avoiding: path.to_vec(),
        })
    }

    pub fn midpoint(&self) -> Midpoint {
        self.geodesic.midpoint
    }

    /// 0 for a vertex midpoint, 1 for an edge midpoint.
    fn offset(&self) -> u32 {
        match self.geodesic.midpoint {
            Midpoint::Vertex(_) => 0,
            Midpoint::Edge(..) => 1,
        }
    }

    /// True when the avoiding path is a `p`–`q` path missing `B_m(radius)`.
    pub fn avoids(&self, g: &Graph, radius: HalfInt) -> bool {
        let ball = midpoint_ball(g, self.geodesic.midpoint, radius);
        g.is_path(&self.avoiding)
            && self.avoiding.first() == Some(&self.geodesic.p)
            && self.avoiding.last() == Some(&self.geodesic.q)
            && self.avoiding.iter().all(|&v| !ball.contains(v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// Layers are exact sphere boundaries, one per radius.
    Triangulation,
    /// Layers stay within `floor(k/2)` of the sphere boundary and only every
    /// `(k+1)`-th radius is used.
    KSc { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerRecord {
    pub i: u32,
    pub p_i: VertexId,
    pub q_i: VertexId,
    pub path: Vec<VertexId>,
}

impl LayerRecord {
    /// Number of vertices of the layer path.
    pub fn size(&self) -> usize {
        self.path.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub kind: WitnessKind,
    pub r: u32,
    pub violation: Violation,
    pub layers: Vec<LayerRecord>,
    /// The claimed lower bound on `|B_m(r)|`.
    pub bound: u64,
    /// `|B_m(r)|` measured by BFS.
    pub measured: usize,
}

impl WitnessCertificate {
    pub fn layer_sum(&self) -> u64 {
        self.layers.iter().map(|l| l.size() as u64).sum()
    }

    pub fn summary_line(&self, ok: bool) -> String {
        format!(
            "WITNESS r={} bound={} measured={} ok={}",
            self.r,
            self.bound,
            self.measured,
            u8::from(ok)
        )
    }

    /// One record per layer followed by the summary line.
    pub fn to_text(&self, ok: bool) -> String {
        let mut out = String::new();
        let v = &self.violation;
        let kind = match self.kind {
            WitnessKind::Triangulation => "triangulation".to_string(),
            WitnessKind::KSc { k } => format!("ksc k={k}"),
        };
        let _ = writeln!(out, "kind {kind}");
        let _ = writeln!(out, "midpoint {} {:?}", v.geodesic.midpoint.kind(), v.geodesic.midpoint.vertices());
        let _ = writeln!(out, "pair {} {} dist {}", v.geodesic.p, v.geodesic.q, v.geodesic.dist());
        let _ = writeln!(out, "geodesic {}", join(&v.geodesic.path));
        let _ = writeln!(out, "avoiding {}", join(&v.avoiding));
        for l in &self.layers {
            let _ = writeln!(out, "layer i={} p={} q={} size={} path={}", l.i, l.p_i, l.q_i, l.size(), join(&l.path));
        }
        let _ = writeln!(out, "layer_sum {}", self.layer_sum());
        out.push_str(&self.summary_line(ok));
        out.push('\n');
        out
    }
}

fn join(v: &[VertexId]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Doubled radius of layer `i`: vertices of the layer set sit at doubled
/// distance at most this from the midpoint.
fn layer_radius(e: u32, i: u32) -> HalfInt {
    HalfInt::from_doubled(2 * i - e)
}

/// Path positions of `p_i` and `q_i` on the geodesic.
fn layer_points(geo: &GeodesicWithMidpoint, e: u32, i: u32) -> Option<(usize, usize)> {
    let half = (geo.dist() / 2) as usize;
    let i = i as usize;
    let (ip, iq) = if e == 0 {
        (half.checked_sub(i)?, half + i)
    } else {
        ((half + 1).checked_sub(i)?, half + i)
    };
    (iq < geo.path.len()).then_some((ip, iq))
}

/// The walk `p_i ... p` then the avoiding path then `q ... q_i`, loop-erased.
fn external_path(v: &Violation, ip: usize, iq: usize) -> Vec<VertexId> {
    let path = &v.geodesic.path;
    let mut walk: Vec<VertexId> = path[..=ip].iter().rev().copied().collect();
    walk.extend(&v.avoiding[1..]);
    walk.extend(path[iq..path.len() - 1].iter().rev());
    loop_erase(&walk)
}

fn check_preconditions(patch: &PlanarPatch, v: &Violation, r: u32, extra: u32) -> Result<()> {
    let g = patch.graph();
    let geo = &v.geodesic;
    let expected = canonical_geodesic(g, geo.p, geo.q).map(|p| p.len());
    if expected != Some(geo.path.len()) || !g.is_path(&geo.path) {
        return Err(Error::invalid("violation geodesic is not a shortest path"));
    }
    if r == 0 {
        return Err(Error::invalid("radius must be positive"));
    }
    if !v.avoids(g, HalfInt::from_int(r)) {
        return Err(Error::invalid(format!("avoiding path meets the ball of radius {r}")));
    }
    for m in geo.midpoint.vertices() {
        patch.require_certified(m, r + 1 + extra)?;
    }
    Ok(())
}

fn layer_set(g: &Graph, v: &Violation, i: u32) -> Result<SubgraphHandle> {
    let ball = midpoint_ball(g, v.midpoint(), layer_radius(v.offset(), i));
    SubgraphHandle::new(g, ball.members().iter().copied())
}

/// Growth witness in a triangulation: for every `i` in `[1, r]` a path
/// in the boundary of the `i`-th ball around `m` joining the two points of the
/// geodesic on that boundary. The layers are disjoint, so
/// `|B_m(r)| >= sum of layer sizes >= r(r+1) > r^2`.
pub fn quadratic_growth_witness(patch: &PlanarPatch, violation: &Violation, r: u32) -> Result<WitnessCertificate> {
    if !patch.is_triangulation() {
        return Err(Error::invalid("quadratic growth witness needs a triangulation patch"));
    }
    check_preconditions(patch, violation, r, 0)?;
    let g = patch.graph();
    let e = violation.offset();
    let mut layers = Vec::with_capacity(r as usize);
    for i in 1..=r {
        let (ip, iq) = layer_points(&violation.geodesic, e, i)
            .ok_or_else(|| Error::consistency(format!("geodesic too short for layer {i}")))?;
        let (p_i, q_i) = (violation.geodesic.path[ip], violation.geodesic.path[iq]);
        let h = layer_set(g, violation, i)?;
        let ext = external_path(violation, ip, iq);
        if !super::boundary::is_external_path(g, &h, p_i, q_i, &ext) {
            return Err(Error::consistency(format!("layer {i}: assembled external path enters H")));
        }
        let path = boundary_path_bfs(g, &h, p_i, q_i)?.ok_or_else(|| {
            Error::consistency(format!(
                "layer {i}: no path in the boundary between {p_i} and {q_i} despite an external path"
            ))
        })?;
        layers.push(LayerRecord { i, p_i, q_i, path });
    }
    let measured = midpoint_ball(g, violation.midpoint(), HalfInt::from_int(r)).len();
    Ok(WitnessCertificate {
        kind: WitnessKind::Triangulation,
        r,
        violation: violation.clone(),
        layers,
        bound: r as u64 * (r as u64 + 1),
        measured,
    })
}

/// Number of layers `floor(r / (k+2))` used by the `k`-SC witness.
pub fn ksc_layer_count(k: usize, r: u32) -> u32 {
    r / (k as u32 + 2)
}

/// Witness in a `k`-SC graph: layers at radii `(k+1)j` for
/// `j in [1, floor(r/(k+2))]`, each a path within `floor(k/2)` of the sphere
/// boundary. Bound: `sum 2(k+1)j = (k+1)J(J+1)`.
pub fn ksc_growth_witness(patch: &PlanarPatch, k: usize, violation: &Violation, r: u32) -> Result<WitnessCertificate> {
    if k < 3 {
        return Err(Error::invalid("k must be at least 3"));
    }
    check_preconditions(patch, violation, r, (k / 2) as u32)?;
    let g = patch.graph();
    let e = violation.offset();
    let jmax = ksc_layer_count(k, r);
    let mut layers = Vec::new();
    for j in 1..=jmax {
        let i = (k as u32 + 1) * j;
        let (ip, iq) = layer_points(&violation.geodesic, e, i)
            .ok_or_else(|| Error::consistency(format!("geodesic too short for layer {i}")))?;
        let (p_i, q_i) = (violation.geodesic.path[ip], violation.geodesic.path[iq]);
        let h = layer_set(g, violation, i)?;
        let path = timar_path(g, k, &h, p_i, q_i)?;
        layers.push(LayerRecord { i, p_i, q_i, path });
    }
    let measured = midpoint_ball(g, violation.midpoint(), HalfInt::from_int(r)).len();
    let jm = jmax as u64;
    Ok(WitnessCertificate {
        kind: WitnessKind::KSc { k },
        r,
        violation: violation.clone(),
        layers,
        bound: (k as u64 + 1) * jm * (jm + 1),
        measured,
    })
}

/// Outcome of re-checking a certificate from the raw graph.
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub checks: Vec<(String, bool)>,
    /// Whether the closed-form `(k+1) r^2 / (k+2)^2` (or `r^2`) lies strictly
    /// below the layer sum.
    pub closed_form_holds: bool,
}

impl AuditReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }

    fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push((name.into(), pass));
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect()
    }
}

/// Re-verifies a certificate using only the graph: nothing the producer
/// computed is trusted beyond the listed vertices and paths.
pub fn audit_certificate(g: &Graph, cert: &WitnessCertificate) -> AuditReport {
    let mut rep = AuditReport::default();
    let v = &cert.violation;
    let geo = &v.geodesic;
    let r = cert.r;

    let dpq = graph_distances(g, geo.p, u32::MAX).get(geo.q);
    rep.push("geodesic is shortest", g.is_path(&geo.path) && dpq == Some(geo.dist()));
    let mids = GeodesicWithMidpoint::from_path(geo.path.clone()).midpoint;
    rep.push("midpoint is the middle of the geodesic", mids == geo.midpoint);

    // doubled distance from the midpoint, computed here from scratch
    let sources = geo.midpoint.vertices();
    let base = multi_source_distances(g, &sources, u32::MAX);
    let e = u32::from(sources.len() == 2);
    let dm = |w: VertexId| base.get(w).map(|d| 2 * d + e);
    rep.push(
        "avoiding path misses B_m(r)",
        g.is_path(&v.avoiding)
            && v.avoiding.first() == Some(&geo.p)
            && v.avoiding.last() == Some(&geo.q)
            && v.avoiding.iter().all(|&w| dm(w).is_none_or(|d| d > 2 * r)),
    );

    let reach = match cert.kind {
        WitnessKind::Triangulation => 0,
        WitnessKind::KSc { k } => (k / 2) as u32,
    };
    let expected_layers: Vec<u32> = match cert.kind {
        WitnessKind::Triangulation => (1..=r).collect(),
        WitnessKind::KSc { k } => (1..=ksc_layer_count(k, r)).map(|j| (k as u32 + 1) * j).collect(),
    };
    rep.push(
        "layer indices",
        cert.layers.iter().map(|l| l.i).collect::<Vec<_>>() == expected_layers,
    );

    let mut seen = VertexSet::new(g.num_vertices(), std::iter::empty());
    let mut disjoint = true;
    for l in &cert.layers {
        let rad = 2 * l.i - e;
        let on_sphere = |w: VertexId| dm(w) == Some(rad);
        let in_boundary =
            |w: VertexId| on_sphere(w) && g.neighbors(w).iter().any(|&x| dm(x).is_none_or(|d| d > rad));
        let pos = layer_points(geo, e, l.i);
        rep.push(
            format!("layer {} endpoints on the geodesic", l.i),
            pos.map(|(a, b)| (geo.path[a], geo.path[b])) == Some((l.p_i, l.q_i)),
        );
        rep.push(
            format!("layer {} path joins its endpoints", l.i),
            g.is_simple_path(&l.path) && l.path.first() == Some(&l.p_i) && l.path.last() == Some(&l.q_i),
        );
        let member = if reach == 0 {
            l.path.iter().all(|&w| in_boundary(w))
        } else {
            let bnd: Vec<VertexId> = (0..g.num_vertices()).filter(|&w| in_boundary(w)).collect();
            let near = multi_source_distances(g, &bnd, reach);
            l.path.iter().all(|&w| near.get(w).is_some())
        };
        rep.push(format!("layer {} lies near its sphere boundary", l.i), member);
        let dist_pq = graph_distances(g, l.p_i, u32::MAX).get(l.q_i);
        rep.push(
            format!("layer {} length at least d(p_i, q_i)", l.i),
            dist_pq.is_some_and(|d| l.size() as u64 > d as u64) && dist_pq == Some(rad),
        );
        for &w in &l.path {
            if seen.contains(w) {
                disjoint = false;
            }
        }
        seen = VertexSet::new(g.num_vertices(), seen.members().iter().copied().chain(l.path.iter().copied()));
    }
    rep.push("layers pairwise disjoint", disjoint);

    let in_ball = seen.members().iter().all(|&w| dm(w).is_some_and(|d| d <= 2 * r));
    rep.push("layers inside B_m(r)", in_ball);

    let sum = cert.layer_sum();
    let (formula, closed) = match cert.kind {
        WitnessKind::Triangulation => {
            let rr = r as u64;
            let f = (1..=rr).map(|i| 2 * i).sum::<u64>();
            (f, f > rr * rr)
        }
        WitnessKind::KSc { k } => {
            let k = k as u64;
            let jm = ksc_layer_count(k as usize, r) as u64;
            let f = (1..=jm).map(|j| 2 * (k + 1) * j).sum::<u64>();
            (f, f * (k + 2) * (k + 2) > (k + 1) * (r as u64) * (r as u64))
        }
    };
    rep.push("claimed bound matches the layer formula", cert.bound == formula);
    rep.push("layer sum reaches the bound", sum >= cert.bound);
    rep.closed_form_holds = closed;

    let measured = (0..g.num_vertices()).filter(|&w| dm(w).is_some_and(|d| d <= 2 * r)).count();
    rep.push("measured ball size", measured == cert.measured);
    rep.push("measured ball holds the layers", measured as u64 >= sum);
    rep
}
