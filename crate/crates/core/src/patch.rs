//! Finite certified patches of plane graphs.
//!
//! A patch carries its combinatorial embedding (the clockwise rotation at each
//! vertex), a designated outer face, a set of centers and a certified radius.
//! Balls `B_c(r)` around a center `c` with `r <= cert_radius` agree with the
//! balls of the infinite graph the patch was cut from; generators guarantee
//! this by construction and the patch only records it.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::multi_source_distances;

/// A directed edge `from -> to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub from: VertexId,
    pub to: VertexId,
}

impl Dart {
    pub fn new(from: VertexId, to: VertexId) -> Self {
        Dart { from, to }
    }

    pub fn reversed(self) -> Self {
        Dart::new(self.to, self.from)
    }
}

/// Result of face tracing: every dart belongs to exactly one face.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Offset of vertex `v`'s darts in the dart numbering.
    offsets: Vec<usize>,
    /// Face id per dart.
    dart_face: Vec<usize>,
    /// Vertex cycle of each face, in tracing order.
    cycles: Vec<Vec<VertexId>>,
    /// Dart id of the reverse dart.
    reverse: Vec<usize>,
}

impl Faces {
    /// Traces faces with the rule "reverse, then rotate": the successor of
    /// `u -> v` is `v -> w` where `w` follows `u` in the rotation at `v`.
    pub fn trace(g: &Graph) -> Result<Self> {
        let n = g.num_vertices();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for v in 0..n {
            offsets.push(total);
            total += g.degree(v);
        }
        offsets.push(total);

        let mut reverse = vec![0usize; total];
        for u in 0..n {
            for (i, &v) in g.neighbors(u).iter().enumerate() {
                let j = g
                    .slot_of(v, u)
                    .ok_or_else(|| Error::Embedding(format!("dart {u}->{v} has no reverse")))?;
                reverse[offsets[u] + i] = offsets[v] + j;
            }
        }

        let mut dart_face = vec![usize::MAX; total];
        let mut cycles = Vec::new();
        // dart id -> vertex it leaves
        let mut tail_of = vec![0usize; total];
        for v in 0..n {
            for i in 0..g.degree(v) {
                tail_of[offsets[v] + i] = v;
            }
        }
        for start in 0..total {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let face = cycles.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                if dart_face[d] != usize::MAX {
                    if d == start {
                        break;
                    }
                    return Err(Error::Embedding(format!(
                        "face tracing from dart {start} does not close"
                    )));
                }
                dart_face[d] = face;
                cycle.push(tail_of[d]);
                let r = reverse[d];
                let v = tail_of[r];
                let slot = r - offsets[v];
                let deg = g.degree(v);
                d = offsets[v] + (slot + 1) % deg;
            }
            cycles.push(cycle);
        }
        Ok(Faces {
            offsets,
            dart_face,
            cycles,
            reverse,
        })
    }

    pub fn num_faces(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle(&self, face: usize) -> &[VertexId] {
        &self.cycles[face]
    }

    pub fn cycles(&self) -> &[Vec<VertexId>] {
        &self.cycles
    }

    pub fn dart_id(&self, g: &Graph, d: Dart) -> Option<usize> {
        g.slot_of(d.from, d.to).map(|i| self.offsets[d.from] + i)
    }

    pub fn face_of(&self, g: &Graph, d: Dart) -> Option<usize> {
        self.dart_id(g, d).map(|id| self.dart_face[id])
    }

    /// Face on the other side of the edge carrying dart `id`.
    pub(crate) fn opposite_face(&self, id: usize) -> usize {
        self.dart_face[self.reverse[id]]
    }

    pub(crate) fn dart_face(&self, id: usize) -> usize {
        self.dart_face[id]
    }

    pub(crate) fn dart_range(&self, v: VertexId) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }
}

/// A finite patch of a plane graph with certification metadata.
#[derive(Debug)]
pub struct PlanarPatch {
    graph: Graph,
    faces: Faces,
    outer: Dart,
    outer_face: usize,
    centers: Vec<VertexId>,
    cert_radius: u32,
    triangulation: bool,
    provenance: Vec<String>,
    depth: OnceLock<Vec<u32>>,
}

impl Clone for PlanarPatch {
    fn clone(&self) -> Self {
        PlanarPatch {
            graph: self.graph.clone(),
            faces: self.faces.clone(),
            outer: self.outer,
            outer_face: self.outer_face,
            centers: self.centers.clone(),
            cert_radius: self.cert_radius,
            triangulation: self.triangulation,
            provenance: self.provenance.clone(),
            depth: OnceLock::new(),
        }
    }
}

impl PlanarPatch {
    /// Assembles a patch and validates the embedding.
    ///
    /// Fails when the outer dart or a center is not in the graph, when the
    /// rotation system does not satisfy Euler's formula, or when the
    /// triangulation flag is set but some bounded face is not a triangle.
    pub fn new(
        graph: Graph,
        outer: Dart,
        centers: Vec<VertexId>,
        cert_radius: u32,
        triangulation: bool,
    ) -> Result<Self> {
        for &c in &centers {
            graph.check_vertex(c)?;
        }
        let faces = Faces::trace(&graph)?;
        let outer_face = faces
            .face_of(&graph, outer)
            .ok_or_else(|| Error::invalid(format!("outer dart {}->{} is not an edge", outer.from, outer.to)))?;
        let patch = PlanarPatch {
            graph,
            faces,
            outer,
            outer_face,
            centers,
            cert_radius,
            triangulation,
            provenance: Vec::new(),
            depth: OnceLock::new(),
        };
        patch.check_euler()?;
        if triangulation {
            patch.check_triangulated()?;
        }
        Ok(patch)
    }

    pub fn with_provenance(mut self, lines: Vec<String>) -> Self {
        self.provenance = lines;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn faces(&self) -> &Faces {
        &self.faces
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn centers(&self) -> &[VertexId] {
        &self.centers
    }

    pub fn cert_radius(&self) -> u32 {
        self.cert_radius
    }

    pub fn is_triangulation(&self) -> bool {
        self.triangulation
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    /// Looks up `key` in `key=value` provenance lines.
    pub fn provenance_value(&self, key: &str) -> Option<&str> {
        self.provenance.iter().find_map(|line| {
            line.split_whitespace().find_map(|kv| {
                let (k, v) = kv.split_once('=')?;
                (k == key).then_some(v)
            })
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_vertices()
    }

    fn check_euler(&self) -> Result<()> {
        let v = self.graph.num_vertices() as i64;
        let e = self.graph.num_edges() as i64;
        let f = self.faces.num_faces() as i64;
        let (_, c) = self.graph.components();
        // Each component with edges traces its own unbounded face and
        // satisfies V - E + F = 2; isolated vertices trace no face at all.
        let isolated = (0..self.graph.num_vertices()).filter(|&x| self.graph.degree(x) == 0).count() as i64;
        if v - e + f + isolated != 2 * c as i64 {
            return Err(Error::Embedding(format!(
                "Euler check failed: V - E + F = {} with {} component(s)",
                v - e + f,
                c
            )));
        }
        Ok(())
    }

    fn check_triangulated(&self) -> Result<()> {
        for (id, cycle) in self.faces.cycles().iter().enumerate() {
            if id == self.outer_face {
                continue;
            }
            if !is_triangle(cycle) {
                return Err(Error::Embedding(format!(
                    "triangulation flag set but bounded face {id} has boundary {:?}",
                    cycle
                )));
            }
        }
        Ok(())
    }

    /// Face cycles as traced.
    pub fn face_cycles(&self) -> &[Vec<VertexId>] {
        self.faces.cycles()
    }

    /// Bounded faces bounded by three distinct vertices.
    ///
    /// The designated outer face is always excluded, whatever its length.
    pub fn facial_triangles(&self) -> Vec<[VertexId; 3]> {
        self.faces
            .cycles()
            .iter()
            .enumerate()
            .filter(|&(id, c)| id != self.outer_face && is_triangle(c))
            .map(|(_, c)| [c[0], c[1], c[2]])
            .collect()
    }

    /// Distance from the nearest center, `u32::MAX` when unreachable.
    pub fn depth(&self, v: VertexId) -> u32 {
        self.depths()[v]
    }

    pub fn depths(&self) -> &[u32] {
        self.depth
            .get_or_init(|| multi_source_distances(&self.graph, &self.centers, u32::MAX).into_vec())
    }

    /// Largest radius `s` such that `B_v(s)` is certified: `B_v(s)` sits inside
    /// `B_c(cert_radius)` for some center `c`.
    pub fn certified_radius_at(&self, v: VertexId) -> Option<u32> {
        let d = self.depth(v);
        (d <= self.cert_radius).then(|| self.cert_radius - d)
    }

    /// Fails with a certification error unless `B_v(r)` is certified.
    pub fn require_certified(&self, v: VertexId, r: u32) -> Result<()> {
        self.graph.check_vertex(v)?;
        match self.certified_radius_at(v) {
            Some(s) if r <= s => Ok(()),
            _ => Err(Error::certification(format!(
                "ball of radius {r} at vertex {v} (depth {}) exceeds certified radius {}",
                self.depth(v),
                self.cert_radius
            ))),
        }
    }

    /// True when `v` lies within `cert_radius - 1` of a center.
    pub fn in_certified_interior(&self, v: VertexId) -> bool {
        self.cert_radius >= 1 && self.depth(v) < self.cert_radius
    }
}

fn is_triangle(cycle: &[VertexId]) -> bool {
    cycle.len() == 3 && cycle[0] != cycle[1] && cycle[1] != cycle[2] && cycle[0] != cycle[2]
}
