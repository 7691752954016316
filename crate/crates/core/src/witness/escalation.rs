//! The component-chasing argument against bounded two-colorings: starting at
//! the midpoint of a bottleneck violation, walk outward through alternating
//! monochromatic components until one of them is too large.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::coarse::{check_bp_pair, HalfInt};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{graph_distances, multi_source_distances, restricted_bfs, BfsScratch, SubgraphHandle, VertexSet, UNREACHED};
use crate::patch::PlanarPatch;

use super::boundary::{boundary_path_bfs, is_external_path, loop_erase};
use super::certificate::Violation;
use super::coloring::{diameter_at_least, Coloring, DiameterWitness};

/// One component of the chase and the data used to reach the next one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscalationStep {
    /// Sorted members of the monochromatic component `C_k`.
    pub component: Vec<VertexId>,
    pub color: u8,
    pub diameter: Option<DiameterWitness>,
    /// Meets both sides of the geodesic.
    pub meets_both_parts: bool,
    /// Separates the previous component from the avoiding path inside the
    /// subgraph spanned by the geodesic and the avoiding path. `None` for the
    /// first step.
    pub separates_previous: Option<bool>,
    /// Lies within `9r` of the midpoint.
    pub within_9r: bool,
    /// Its intersection with the geodesic lies within `r` of the midpoint.
    pub geodesic_within_r: bool,
    /// `x`, `y`, the external path and the boundary path leading to the next
    /// component; empty for a final step.
    pub link: Option<StepLink>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepLink {
    pub x: VertexId,
    pub y: VertexId,
    pub external: Vec<VertexId>,
    pub boundary_path: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EscalationOutcome {
    /// The last component has diameter at least `r`.
    LargeComponent(DiameterWitness),
    /// The last component breaks the `9r` containment (property 3) or the
    /// `r` bound along the geodesic (property 4).
    PropertyViolation { property: u8 },
    /// The chase left the certified region before deciding.
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscalationTrace {
    pub r: u32,
    pub violation: Violation,
    pub steps: Vec<EscalationStep>,
    pub outcome: EscalationOutcome,
}

impl EscalationTrace {
    pub fn decided(&self) -> bool {
        !matches!(self.outcome, EscalationOutcome::Inconclusive(_))
    }

    pub fn to_text(&self, verified: bool) -> String {
        let mut out = String::new();
        let geo = &self.violation.geodesic;
        let _ = writeln!(out, "pair {} {} dist {} r {}", geo.p, geo.q, geo.dist(), self.r);
        for (k, s) in self.steps.iter().enumerate() {
            let diam = s.diameter.map_or("<r".to_string(), |w| format!("{} ({} {})", w.dist, w.u, w.v));
            let _ = write!(
                out,
                "step {k} color={} size={} diam={diam} both_parts={} separates={} within_9r={} geodesic_within_r={}",
                s.color,
                s.component.len(),
                u8::from(s.meets_both_parts),
                s.separates_previous.map_or("-".into(), |b| u8::from(b).to_string()),
                u8::from(s.within_9r),
                u8::from(s.geodesic_within_r),
            );
            if let Some(l) = &s.link {
                let _ = write!(out, " x={} y={} boundary_len={}", l.x, l.y, l.boundary_path.len());
            }
            out.push('\n');
        }
        let outcome = match &self.outcome {
            EscalationOutcome::LargeComponent(w) => format!("large_component u={} v={} dist={}", w.u, w.v, w.dist),
            EscalationOutcome::PropertyViolation { property } => format!("property_violation {property}"),
            EscalationOutcome::Inconclusive(why) => format!("inconclusive {why}"),
        };
        let _ = writeln!(out, "outcome {outcome}");
        let _ = writeln!(out, "ESCALATION steps={} verified={}", self.steps.len(), u8::from(verified));
        out
    }
}

/// Monochromatic component of `v`, sorted.
fn component_of(g: &Graph, c: &Coloring, v: VertexId) -> Vec<VertexId> {
    let col = c.color(v);
    let d = restricted_bfs(g, &[v], UNREACHED, |w| c.color(w) == col);
    let mut m = d.reached().to_vec();
    m.sort_unstable();
    m
}

struct Context<'a> {
    g: &'a Graph,
    v: &'a Violation,
    r: u32,
    /// Doubled distances from the midpoint.
    dm: Vec<u32>,
    p_part: VertexSet,
    q_part: VertexSet,
    frame: VertexSet,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, v: &'a Violation, r: u32) -> Self {
        let n = g.num_vertices();
        let mids = v.midpoint().vertices();
        let e = (mids.len() - 1) as u32;
        let base = multi_source_distances(g, &mids, UNREACHED);
        let dm = (0..n).map(|w| base.get(w).map_or(UNREACHED, |d| 2 * d + e)).collect();
        let geo = &v.geodesic;
        Context {
            g,
            v,
            r,
            dm,
            p_part: VertexSet::new(n, geo.p_part().iter().copied()),
            q_part: VertexSet::new(n, geo.q_part().iter().copied()),
            frame: VertexSet::new(n, geo.path.iter().chain(&v.avoiding).copied()),
        }
    }

    fn step(&self, comp: Vec<VertexId>, color: u8, prev: Option<&[VertexId]>, scratch: &mut BfsScratch) -> EscalationStep {
        let r = self.r;
        let diameter = diameter_at_least(self.g, &comp, r, scratch);
        let meets_both_parts =
            comp.iter().any(|&w| self.p_part.contains(w)) && comp.iter().any(|&w| self.q_part.contains(w));
        let within_9r = comp.iter().all(|&w| self.dm[w] <= 18 * r);
        let geodesic_within_r = self
            .v
            .geodesic
            .path
            .iter()
            .filter(|w| comp.binary_search(w).is_ok())
            .all(|&w| self.dm[w] <= 2 * r);
        let separates_previous = prev.map(|prev| self.separates(&comp, prev));
        EscalationStep {
            component: comp,
            color,
            diameter,
            meets_both_parts,
            separates_previous,
            within_9r,
            geodesic_within_r,
            link: None,
        }
    }

    /// Inside the frame (geodesic plus avoiding path), is every route from
    /// `prev` to the avoiding path blocked by `comp`?
    fn separates(&self, comp: &[VertexId], prev: &[VertexId]) -> bool {
        let n = self.g.num_vertices();
        let blocked = VertexSet::new(n, comp.iter().copied());
        let sources: Vec<VertexId> = prev
            .iter()
            .copied()
            .filter(|&w| self.frame.contains(w) && !blocked.contains(w))
            .collect();
        let reach = restricted_bfs(self.g, &sources, UNREACHED, |w| self.frame.contains(w) && !blocked.contains(w));
        !self.v.avoiding.iter().any(|&w| reach.get(w).is_some())
    }

    /// First vertices of `h` met walking the geodesic from `p` and from `q`,
    /// with the external path joining them around the far side.
    fn link_ends(&self, h: &SubgraphHandle) -> Option<(VertexId, VertexId, Vec<VertexId>)> {
        let path = &self.v.geodesic.path;
        let ix = path.iter().position(|&w| h.contains(w))?;
        let iy = path.iter().rposition(|&w| h.contains(w))?;
        if ix >= iy {
            return None;
        }
        let mut walk: Vec<VertexId> = path[..=ix].iter().rev().copied().collect();
        walk.extend(&self.v.avoiding[1..]);
        walk.extend(path[iy..path.len() - 1].iter().rev());
        Some((path[ix], path[iy], loop_erase(&walk)))
    }
}

fn final_outcome(s: &EscalationStep) -> Option<EscalationOutcome> {
    if let Some(w) = s.diameter {
        Some(EscalationOutcome::LargeComponent(w))
    } else if !s.within_9r {
        Some(EscalationOutcome::PropertyViolation { property: 3 })
    } else if !s.geodesic_within_r {
        Some(EscalationOutcome::PropertyViolation { property: 4 })
    } else {
        None
    }
}

/// Runs the chase for a violation at scale `R = 10r`.
///
/// Each round takes the current component `C`, its outer neighborhood `C'`
/// (which must be monochromatic), and a path in the boundary of `C ∪ C'`
/// between the outermost points of the geodesic it meets. That path lies in
/// one component of the other color, which becomes the next `C`. The chase
/// stops at the first component of diameter at least `r` or breaking the
/// containment properties.
pub fn asdim_escalation(patch: &PlanarPatch, c: &Coloring, r: u32, violation: &Violation) -> Result<EscalationTrace> {
    let g = patch.graph();
    if c.len() != g.num_vertices() {
        return Err(Error::invalid("coloring does not match the patch"));
    }
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    if !violation.avoids(g, HalfInt::from_int(10 * r)) {
        return Err(Error::invalid(format!("the violation does not avoid the ball of radius {}", 10 * r)));
    }
    let n = g.num_vertices();
    let ctx = Context::new(g, violation, r);
    let mut scratch = BfsScratch::new(n);
    let start = violation.midpoint().vertices()[0];
    let first = component_of(g, c, start);
    let mut steps = vec![ctx.step(first, c.color(start), None, &mut scratch)];
    let mut seen: HashSet<VertexId> = HashSet::new();
    let limit = violation.geodesic.path.len() + 2;
    loop {
        let cur = steps.last().unwrap();
        if let Some(outcome) = final_outcome(cur) {
            return Ok(EscalationTrace {
                r,
                violation: violation.clone(),
                steps,
                outcome,
            });
        }
        if !seen.insert(cur.component[0]) || steps.len() > limit {
            return Err(Error::consistency(format!(
                "escalation does not progress after {} steps",
                steps.len()
            )));
        }
        let comp = VertexSet::new(n, cur.component.iter().copied());
        let mut outer: Vec<VertexId> = cur
            .component
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|&w| !comp.contains(w))
            .collect();
        outer.sort_unstable();
        outer.dedup();
        if let Some(&bad) = outer.iter().find(|&&w| c.color(w) == cur.color) {
            return Err(Error::consistency(format!("neighbor {bad} of a component shares its color")));
        }
        if outer.is_empty() {
            return Err(Error::consistency("component has no neighbors"));
        }
        let h_vertices: Vec<VertexId> = cur.component.iter().chain(&outer).copied().collect();
        if let Some(&deep) = h_vertices.iter().find(|&&w| !patch.in_certified_interior(w)) {
            return Ok(EscalationTrace {
                r,
                violation: violation.clone(),
                steps,
                outcome: EscalationOutcome::Inconclusive(format!("vertex {deep} lies outside the certified region")),
            });
        }
        let h = SubgraphHandle::new(g, h_vertices)?;
        let (x, y, external) = ctx
            .link_ends(&h)
            .ok_or_else(|| Error::consistency("component neighborhood meets the geodesic at one point only"))?;
        if !is_external_path(g, &h, x, y, &external) {
            return Err(Error::consistency(format!("external path from {x} to {y} enters the neighborhood")));
        }
        let m = boundary_path_bfs(g, &h, x, y)?.ok_or_else(|| {
            Error::consistency(format!("no boundary path from {x} to {y} around a component"))
        })?;
        let next_color = c.color(m[0]);
        let next = component_of(g, c, m[0]);
        let prev = cur.component.clone();
        steps.last_mut().unwrap().link = Some(StepLink {
            x,
            y,
            external,
            boundary_path: m,
        });
        steps.push(ctx.step(next, next_color, Some(&prev), &mut scratch));
    }
}

/// Re-derives every step of a trace from the graph and the coloring.
pub fn verify_trace(g: &Graph, c: &Coloring, trace: &EscalationTrace) -> std::result::Result<(), String> {
    let v = &trace.violation;
    let r = trace.r;
    if !v.avoids(g, HalfInt::from_int(10 * r)) {
        return Err("violation path meets B_m(10r)".into());
    }
    let geo = &v.geodesic;
    if graph_distances(g, geo.p, UNREACHED).get(geo.q) != Some(geo.dist()) || !g.is_path(&geo.path) {
        return Err("geodesic is not shortest".into());
    }
    let ctx = Context::new(g, v, r);
    let mut scratch = BfsScratch::new(g.num_vertices());
    let start = v.midpoint().vertices()[0];
    let mut expected = component_of(g, c, start);
    let mut prev: Option<Vec<VertexId>> = None;
    for (k, s) in trace.steps.iter().enumerate() {
        if s.component != expected {
            return Err(format!("step {k}: component differs from the recomputed one"));
        }
        let again = ctx.step(s.component.clone(), c.color(s.component[0]), prev.as_deref(), &mut scratch);
        if (again.diameter.is_some(), again.within_9r, again.geodesic_within_r, again.meets_both_parts, again.separates_previous)
            != (s.diameter.is_some(), s.within_9r, s.geodesic_within_r, s.meets_both_parts, s.separates_previous)
        {
            return Err(format!("step {k}: recorded properties disagree"));
        }
        if let Some(w) = s.diameter {
            let members = VertexSet::new(g.num_vertices(), s.component.iter().copied());
            let d = graph_distances(g, w.u, UNREACHED).get(w.v);
            if !members.contains(w.u) || !members.contains(w.v) || d != Some(w.dist) || w.dist < r {
                return Err(format!("step {k}: diameter witness is wrong"));
            }
        }
        let last = k + 1 == trace.steps.len();
        match (&s.link, last) {
            (None, true) => {}
            (Some(l), false) => {
                let comp = VertexSet::new(g.num_vertices(), s.component.iter().copied());
                let outer = s
                    .component
                    .iter()
                    .flat_map(|&u| g.neighbors(u).iter().copied())
                    .filter(|&w| !comp.contains(w));
                let h = SubgraphHandle::new(g, s.component.iter().copied().chain(outer)).map_err(|e| e.to_string())?;
                let path = &geo.path;
                let ix = path.iter().position(|&w| h.contains(w));
                let iy = path.iter().rposition(|&w| h.contains(w));
                if ix.map(|i| path[i]) != Some(l.x) || iy.map(|i| path[i]) != Some(l.y) {
                    return Err(format!("step {k}: x or y is not the outermost geodesic point"));
                }
                if !is_external_path(g, &h, l.x, l.y, &l.external) {
                    return Err(format!("step {k}: external path is invalid"));
                }
                let m = &l.boundary_path;
                if !g.is_simple_path(m)
                    || m.first() != Some(&l.x)
                    || m.last() != Some(&l.y)
                    || !m.iter().all(|&w| h.is_boundary(w))
                {
                    return Err(format!("step {k}: boundary path is invalid"));
                }
                expected = component_of(g, c, m[0]);
            }
            _ => return Err(format!("step {k}: link presence does not match position")),
        }
        prev = Some(s.component.clone());
    }
    let last = trace.steps.last().ok_or("empty trace")?;
    match (&trace.outcome, final_outcome(last)) {
        (EscalationOutcome::Inconclusive(_), None) => Ok(()),
        (o, Some(f)) if *o == f => Ok(()),
        _ => Err("outcome does not match the last step".into()),
    }
}

/// Tests candidate pairs at scale `delta` and returns the first violation.
/// Pairs outside the certified margin are skipped.
pub fn find_bp_violation(
    patch: &PlanarPatch,
    delta: HalfInt,
    pairs: &[(VertexId, VertexId)],
) -> Result<Option<Violation>> {
    for &(p, q) in pairs {
        match check_bp_pair(patch, p, q, delta) {
            Ok(check) => {
                if let Some(v) = Violation::from_check(&check) {
                    return Ok(Some(v));
                }
            }
            Err(Error::Certification(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Result of looking for a violation and then chasing components.
#[derive(Clone, Debug)]
pub enum EscalationRun {
    /// No bottleneck violation at scale `10r` among the tested pairs.
    PreconditionUnavailable { pairs_tested: usize },
    Trace(EscalationTrace),
}

pub fn escalate(
    patch: &PlanarPatch,
    c: &Coloring,
    r: u32,
    pairs: &[(VertexId, VertexId)],
) -> Result<EscalationRun> {
    match find_bp_violation(patch, HalfInt::from_int(10 * r), pairs)? {
        None => Ok(EscalationRun::PreconditionUnavailable { pairs_tested: pairs.len() }),
        Some(v) => asdim_escalation(patch, c, r, &v).map(EscalationRun::Trace),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{alpha_tree, hex_coordinates, triangular_lattice};

    fn lattice_violation(radius: u32, t: i32, delta: u32) -> (PlanarPatch, Violation) {
        let p = triangular_lattice(radius).unwrap();
        let coords = hex_coordinates(radius);
        let a = coords.iter().position(|&c| c == (t, 0)).unwrap();
        let b = coords.iter().position(|&c| c == (-t, 0)).unwrap();
        let v = find_bp_violation(&p, HalfInt::from_int(delta), &[(a, b)]).unwrap().unwrap();
        (p, v)
    }

    #[test]
    fn stripes_stop_immediately() {
        let (p, v) = lattice_violation(36, 24, 20);
        let c = Coloring::lattice_stripes(36, 1).unwrap();
        let t = asdim_escalation(&p, &c, 2, &v).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert!(matches!(t.outcome, EscalationOutcome::LargeComponent(_)));
        verify_trace(p.graph(), &c, &t).unwrap();
    }

    #[test]
    fn balls_coloring_escalates() {
        // the midpoint is the first ball center; the chase leaves the ball
        // through its ring and lands in the unbounded color-0 sea
        let (p, v) = lattice_violation(50, 36, 30);
        let c = Coloring::balls(p.graph(), 1).unwrap();
        let t = asdim_escalation(&p, &c, 3, &v).unwrap();
        assert_eq!(t.steps.len(), 2, "{}", t.to_text(false));
        assert_eq!(t.steps[0].component.len(), 7);
        assert!(matches!(t.outcome, EscalationOutcome::LargeComponent(_)));
        verify_trace(p.graph(), &c, &t).unwrap();
    }

    #[test]
    fn tree_has_no_violation() {
        let p = alpha_tree(1.5, 64).unwrap();
        let c = Coloring::depth_parity(&p).unwrap();
        let pairs: Vec<_> = (1..p.num_vertices()).step_by(7).map(|v| (v, (v * 13) % p.num_vertices())).collect();
        assert!(matches!(
            escalate(&p, &c, 2, &pairs).unwrap(),
            EscalationRun::PreconditionUnavailable { .. }
        ));
    }
}
