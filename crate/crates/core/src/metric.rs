//! Exact graph metric: breadth-first search, balls, spheres, boundaries and
//! separation tests. BFS is the only distance engine in the crate.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::patch::PlanarPatch;

pub const UNREACHED: u32 = u32::MAX;

/// Dense BFS distances together with the visit order.
#[derive(Clone, Debug)]
pub struct Distances {
    dist: Vec<u32>,
    order: Vec<VertexId>,
}

impl Distances {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        match self.dist.get(v) {
            Some(&d) if d != UNREACHED => Some(d),
            _ => None,
        }
    }

    /// Reached vertices in nondecreasing distance order.
    pub fn reached(&self) -> &[VertexId] {
        &self.order
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.dist
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.dist
    }

    pub fn count_within(&self, r: u32) -> usize {
        self.order.partition_point(|&v| self.dist[v] <= r)
    }

    pub fn max_distance(&self) -> u32 {
        self.order.last().map_or(0, |&v| self.dist[v])
    }

    /// Number of vertices at each distance `0..=max`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.max_distance() as usize + 1];
        for &v in &self.order {
            sizes[self.dist[v] as usize] += 1;
        }
        sizes
    }

    pub fn to_map(&self) -> BTreeMap<VertexId, u32> {
        self.order.iter().map(|&v| (v, self.dist[v])).collect()
    }
}

/// BFS from several sources at once, restricted to vertices accepted by
/// `allowed`. Sources are always admitted.
pub fn restricted_bfs<F>(g: &Graph, sources: &[VertexId], cutoff: u32, allowed: F) -> Distances
where
    F: Fn(VertexId) -> bool,
{
    let mut dist = vec![UNREACHED; g.num_vertices()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == UNREACHED {
            dist[s] = 0;
            order.push(s);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        if du >= cutoff {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED && allowed(w) {
                dist[w] = du + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    Distances { dist, order }
}

pub fn multi_source_distances(g: &Graph, sources: &[VertexId], cutoff: u32) -> Distances {
    restricted_bfs(g, sources, cutoff, |_| true)
}

pub fn graph_distances(g: &Graph, source: VertexId, cutoff: u32) -> Distances {
    restricted_bfs(g, &[source], cutoff, |_| true)
}

/// Exact distances from `source` up to `cutoff` in the patch.
///
/// Certification is the caller's concern here; use [`PlanarPatch::require_certified`]
/// when the answer must match the infinite graph.
pub fn bfs_distances(patch: &PlanarPatch, source: VertexId, cutoff: u32) -> Result<Distances> {
    patch.graph().check_vertex(source)?;
    Ok(graph_distances(patch.graph(), source, cutoff))
}

/// Shortest `from`–`to` path through vertices accepted by `allowed`
/// (endpoints are always admitted).
///
/// Among shortest paths the lexicographically smallest one is returned: each
/// step moves to the smallest-id neighbor that is one step closer to `to`.
pub fn shortest_path_within<F>(g: &Graph, from: VertexId, to: VertexId, allowed: F) -> Option<Vec<VertexId>>
where
    F: Fn(VertexId) -> bool,
{
    if from == to {
        return Some(vec![from]);
    }
    let admit = |v: VertexId| v == from || allowed(v);
    let dist = restricted_bfs(g, &[to], UNREACHED, admit);
    let total = dist.get(from)?;
    let mut path = Vec::with_capacity(total as usize + 1);
    let mut cur = from;
    path.push(cur);
    for step in (0..total).rev() {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&w| dist.get(w) == Some(step))
            .min()
            .expect("BFS layers are contiguous");
        path.push(cur);
    }
    Some(path)
}

/// Lexicographically canonical geodesic from `p` to `q`.
pub fn canonical_geodesic(g: &Graph, p: VertexId, q: VertexId) -> Option<Vec<VertexId>> {
    shortest_path_within(g, p, q, |_| true)
}

/// Reusable BFS buffers for many small searches on one large graph.
///
/// Visited marks are epoch-stamped, so a run costs time proportional to the
/// explored region rather than to the whole graph.
#[derive(Debug)]
pub struct BfsScratch {
    dist: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
    visited: Vec<VertexId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![0; n],
            stamp: vec![0; n],
            epoch: 0,
            visited: Vec::new(),
        }
    }

    pub fn run<F>(&mut self, g: &Graph, sources: &[VertexId], cutoff: u32, allowed: F)
    where
        F: Fn(VertexId) -> bool,
    {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.visited.clear();
        for &s in sources {
            if self.stamp[s] != self.epoch {
                self.stamp[s] = self.epoch;
                self.dist[s] = 0;
                self.visited.push(s);
            }
        }
        let mut head = 0;
        while head < self.visited.len() {
            let u = self.visited[head];
            head += 1;
            let du = self.dist[u];
            if du >= cutoff {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.stamp[w] != self.epoch && allowed(w) {
                    self.stamp[w] = self.epoch;
                    self.dist[w] = du + 1;
                    self.visited.push(w);
                }
            }
        }
    }

    pub fn dist(&self, v: VertexId) -> Option<u32> {
        (self.stamp[v] == self.epoch).then(|| self.dist[v])
    }

    /// Vertices reached by the last run, in BFS order.
    pub fn visited(&self) -> &[VertexId] {
        &self.visited
    }
}

/// A vertex subset with O(1) membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    mask: Vec<bool>,
    members: Vec<VertexId>,
}

impl VertexSet {
    pub fn new(n: usize, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut mask = vec![false; n];
        let mut members = Vec::new();
        for v in vertices {
            if !mask[v] {
                mask[v] = true;
                members.push(v);
            }
        }
        members.sort_unstable();
        VertexSet { mask, members }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| !other.contains(v))
    }
}

/// A vertex subset `H` of a host graph with cached connectivity and boundary
/// `∂H = { v ∈ H : v has a neighbor outside H }`.
#[derive(Clone, Debug)]
pub struct SubgraphHandle {
    set: VertexSet,
    boundary: VertexSet,
    connected: bool,
}

impl SubgraphHandle {
    pub fn new(g: &Graph, vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let n = g.num_vertices();
        let vertices: Vec<VertexId> = vertices.into_iter().collect();
        if let Some(&v) = vertices.iter().find(|&&v| v >= n) {
            return Err(Error::UnknownVertex(v));
        }
        let set = VertexSet::new(n, vertices);
        let boundary = VertexSet::new(
            n,
            set.members()
                .iter()
                .copied()
                .filter(|&v| g.neighbors(v).iter().any(|&w| !set.contains(w))),
        );
        let connected = match set.members().first() {
            None => true,
            Some(&s) => restricted_bfs(g, &[s], UNREACHED, |v| set.contains(v)).reached().len() == set.len(),
        };
        Ok(SubgraphHandle {
            set,
            boundary,
            connected,
        })
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.set.contains(v)
    }

    pub fn vertices(&self) -> &[VertexId] {
        self.set.members()
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn boundary(&self) -> &[VertexId] {
        self.boundary.members()
    }

    pub fn boundary_set(&self) -> &VertexSet {
        &self.boundary
    }

    pub fn is_boundary(&self, v: VertexId) -> bool {
        self.boundary.contains(v)
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }
}

fn check_center_radius(patch: &PlanarPatch, center: VertexId, r: u32) -> Result<()> {
    patch.graph().check_vertex(center)?;
    if patch.centers().contains(&center) && r > patch.cert_radius() {
        return Err(Error::certification(format!(
            "radius {r} exceeds certified radius {} at center {center}",
            patch.cert_radius()
        )));
    }
    Ok(())
}

/// `B_center(r)` as a subgraph handle.
pub fn ball(patch: &PlanarPatch, center: VertexId, r: u32) -> Result<SubgraphHandle> {
    check_center_radius(patch, center, r)?;
    let d = graph_distances(patch.graph(), center, r);
    SubgraphHandle::new(patch.graph(), d.reached().iter().copied())
}

/// `{v : d(center, v) = r}` in increasing id order.
pub fn sphere(patch: &PlanarPatch, center: VertexId, r: u32) -> Result<Vec<VertexId>> {
    check_center_radius(patch, center, r)?;
    let d = graph_distances(patch.graph(), center, r);
    let mut s: Vec<VertexId> = d.reached().iter().copied().filter(|&v| d.get(v) == Some(r)).collect();
    s.sort_unstable();
    Ok(s)
}

/// The `p`-side component of `G ∖ removed`, re-checkable against the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub p_side: Vec<VertexId>,
}

impl SeparationCertificate {
    /// True when `p_side` contains `p`, misses `q` and `removed`, and is closed
    /// under adjacency inside the admitted region.
    pub fn verify<F>(&self, g: &Graph, removed: &VertexSet, p: VertexId, q: VertexId, region: F) -> bool
    where
        F: Fn(VertexId) -> bool,
    {
        let side = VertexSet::new(g.num_vertices(), self.p_side.iter().copied());
        side.contains(p)
            && !side.contains(q)
            && self.p_side.iter().all(|&v| !removed.contains(v))
            && self.p_side.iter().all(|&v| {
                g.neighbors(v)
                    .iter()
                    .all(|&w| side.contains(w) || removed.contains(w) || !region(w))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separated(SeparationCertificate),
    /// A `p`–`q` path avoiding the removed set.
    Avoiding(Vec<VertexId>),
}

/// Decides whether `removed` separates `p` from `q`.
pub fn is_separating(g: &Graph, removed: &VertexSet, p: VertexId, q: VertexId) -> Result<Separation> {
    is_separating_within(g, removed, p, q, |_| true)
}

/// Like [`is_separating`], searching only through vertices accepted by `region`.
pub fn is_separating_within<F>(
    g: &Graph,
    removed: &VertexSet,
    p: VertexId,
    q: VertexId,
    region: F,
) -> Result<Separation>
where
    F: Fn(VertexId) -> bool,
{
    g.check_vertex(p)?;
    g.check_vertex(q)?;
    if removed.contains(p) || removed.contains(q) {
        return Err(Error::invalid(format!("endpoint {p} or {q} lies in the removed set")));
    }
    let admit = |v: VertexId| !removed.contains(v) && region(v);
    match shortest_path_within(g, p, q, admit) {
        Some(path) => Ok(Separation::Avoiding(path)),
        None => {
            let side = restricted_bfs(g, &[p], UNREACHED, admit);
            let mut p_side = side.reached().to_vec();
            p_side.sort_unstable();
            Ok(Separation::Separated(SeparationCertificate { p_side }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn bfs_on_path() {
        let g = path_graph(4);
        let d = graph_distances(&g, 0, 3);
        let expected: BTreeMap<_, _> = [(0, 0), (1, 1), (2, 2), (3, 3)].into_iter().collect();
        assert_eq!(d.to_map(), expected);
        let d0 = graph_distances(&g, 2, 0);
        assert_eq!(d0.to_map(), [(2, 0)].into_iter().collect());
    }

    #[test]
    fn cutoff_drops_far_vertices() {
        let g = path_graph(6);
        let d = graph_distances(&g, 0, 2);
        assert_eq!(d.reached().len(), 3);
        assert_eq!(d.get(5), None);
    }

    #[test]
    fn cut_vertex_separates() {
        let g = path_graph(3);
        let removed = VertexSet::new(3, [1]);
        match is_separating(&g, &removed, 0, 2).unwrap() {
            Separation::Separated(cert) => {
                assert_eq!(cert.p_side, vec![0]);
                assert!(cert.verify(&g, &removed, 0, 2, |_| true));
            }
            other => panic!("expected separation, got {other:?}"),
        }
    }

    #[test]
    fn cycle_detour_avoids_removed_vertex() {
        let g = cycle_graph(6);
        let removed = VertexSet::new(6, [1]);
        match is_separating(&g, &removed, 0, 3).unwrap() {
            Separation::Avoiding(p) => {
                assert_eq!(p, vec![0, 5, 4, 3]);
            }
            other => panic!("expected a detour, got {other:?}"),
        }
    }

    #[test]
    fn endpoint_in_removed_set_is_an_error() {
        let g = path_graph(3);
        let removed = VertexSet::new(3, [0]);
        assert!(is_separating(&g, &removed, 0, 2).is_err());
    }

    #[test]
    fn canonical_geodesic_prefers_small_ids() {
        // 4-cycle 0-1-3-2-0: two geodesics from 0 to 3.
        let g = Graph::from_edges(4, &[(0, 1), (1, 3), (3, 2), (2, 0)]).unwrap();
        assert_eq!(canonical_geodesic(&g, 0, 3).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn boundary_of_subpath() {
        let g = path_graph(5);
        let h = SubgraphHandle::new(&g, [1, 2, 3]).unwrap();
        assert_eq!(h.boundary(), &[1, 3]);
        assert!(h.is_connected());
        let split = SubgraphHandle::new(&g, [0, 2]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn scratch_matches_plain_bfs() {
        let g = cycle_graph(9);
        let mut scratch = BfsScratch::new(9);
        for src in 0..9 {
            scratch.run(&g, &[src], 3, |_| true);
            let plain = graph_distances(&g, src, 3);
            for v in 0..9 {
                assert_eq!(scratch.dist(v), plain.get(v));
            }
        }
    }
}
