use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::{canonical_geodesic, graph_distances, multi_source_distances, VertexSet};

/// A non-negative half-integer, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(u32);

impl HalfInt {
    pub fn from_int(x: u32) -> Self {
        HalfInt(2 * x)
    }

    pub fn from_doubled(x: u32) -> Self {
        HalfInt(x)
    }

    pub fn doubled(self) -> u32 {
        self.0
    }

    /// Largest integer not above the value.
    pub fn floor(self) -> u32 {
        self.0 / 2
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("`{s}` is not a non-negative half-integer"));
        match s.split_once('.') {
            None => s.parse::<u32>().map(HalfInt::from_int).map_err(|_| bad()),
            Some((int, frac)) => {
                let i: u32 = int.parse().map_err(|_| bad())?;
                match frac.trim_end_matches('0') {
                    "" => Ok(HalfInt::from_int(i)),
                    "5" => Ok(HalfInt(2 * i + 1)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// Midpoint of a geodesic: a vertex, or the center of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Midpoint {
    Vertex(VertexId),
    /// Edge `(u, v)` with `u` on the `p` side.
    Edge(VertexId, VertexId),
}

impl Midpoint {
    pub fn kind(&self) -> &'static str {
        match self {
            Midpoint::Vertex(_) => "vertex",
            Midpoint::Edge(..) => "edge",
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        match *self {
            Midpoint::Vertex(v) => vec![v],
            Midpoint::Edge(u, v) => vec![u, v],
        }
    }

    /// Doubled distance from the midpoint to every vertex within
    /// `doubled_cutoff`, as `(vertex, doubled distance)` pairs.
    pub fn doubled_distances(&self, g: &Graph, doubled_cutoff: u32) -> Vec<(VertexId, u32)> {
        match *self {
            Midpoint::Vertex(v) => {
                let d = graph_distances(g, v, doubled_cutoff / 2);
                d.reached().iter().map(|&w| (w, 2 * d.get(w).unwrap())).collect()
            }
            Midpoint::Edge(u, v) => {
                if doubled_cutoff == 0 {
                    return Vec::new();
                }
                let d = multi_source_distances(g, &[u, v], (doubled_cutoff - 1) / 2);
                d.reached().iter().map(|&w| (w, 2 * d.get(w).unwrap() + 1)).collect()
            }
        }
    }
}

/// `B_m(delta)`: vertices at distance at most `delta` from the midpoint.
pub fn midpoint_ball(g: &Graph, m: Midpoint, delta: HalfInt) -> VertexSet {
    let members = m.doubled_distances(g, delta.doubled()).into_iter().map(|(w, _)| w);
    VertexSet::new(g.num_vertices(), members)
}

/// A shortest `p`–`q` path `path` with its midpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicWithMidpoint {
    pub p: VertexId,
    pub q: VertexId,
    pub path: Vec<VertexId>,
    pub midpoint: Midpoint,
}

impl GeodesicWithMidpoint {
    /// The canonical geodesic (smallest-id step toward `q` at each vertex).
    pub fn canonical(g: &Graph, p: VertexId, q: VertexId) -> Result<Self> {
        g.check_vertex(p)?;
        g.check_vertex(q)?;
        let path = canonical_geodesic(g, p, q)
            .ok_or_else(|| Error::invalid(format!("{p} and {q} are not connected")))?;
        Ok(Self::from_path(path))
    }

    /// Wraps a path assumed to be a geodesic.
    pub fn from_path(path: Vec<VertexId>) -> Self {
        let d = path.len() - 1;
        let midpoint = if d.is_multiple_of(2) {
            Midpoint::Vertex(path[d / 2])
        } else {
            Midpoint::Edge(path[d / 2], path[d / 2 + 1])
        };
        GeodesicWithMidpoint {
            p: path[0],
            q: path[d],
            path,
            midpoint,
        }
    }

    pub fn dist(&self) -> u32 {
        (self.path.len() - 1) as u32
    }

    /// `d(p, q)` doubled, which is also the doubled distance from each endpoint
    /// to the midpoint times two.
    pub fn doubled_dist(&self) -> u32 {
        2 * self.dist()
    }

    /// Vertices of the component of `path - m` containing `p`.
    pub fn p_part(&self) -> &[VertexId] {
        let d = self.path.len() - 1;
        &self.path[..d.div_ceil(2)]
    }

    /// Vertices of the component of `path - m` containing `q`.
    pub fn q_part(&self) -> &[VertexId] {
        let d = self.path.len() - 1;
        &self.path[d / 2 + 1..]
    }
}

/// Every midpoint of every `p`–`q` geodesic, up to `cap` of them; `None`
/// when there are more.
pub fn all_midpoints(g: &Graph, p: VertexId, q: VertexId, cap: usize) -> Option<Vec<Midpoint>> {
    let dp = graph_distances(g, p, u32::MAX);
    let dq = graph_distances(g, q, u32::MAX);
    let d = dp.get(q)?;
    let mut out = Vec::new();
    for &w in dp.reached() {
        let (a, b) = (dp.get(w).unwrap(), dq.get(w));
        if d.is_multiple_of(2) {
            if 2 * a == d && b == Some(a) {
                out.push(Midpoint::Vertex(w));
            }
        } else if 2 * a + 1 == d && b == Some(a + 1) {
            for &x in g.neighbors(w) {
                if dp.get(x) == Some(a + 1) && dq.get(x) == Some(a) {
                    out.push(Midpoint::Edge(w, x));
                }
            }
        }
        if out.len() > cap {
            return None;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn even_and_odd_midpoints() {
        let g = path(5);
        let geo = GeodesicWithMidpoint::canonical(&g, 0, 4).unwrap();
        assert_eq!(geo.midpoint, Midpoint::Vertex(2));
        assert_eq!(geo.p_part(), &[0, 1]);
        assert_eq!(geo.q_part(), &[3, 4]);
        let g = path(4);
        let geo = GeodesicWithMidpoint::canonical(&g, 0, 3).unwrap();
        assert_eq!(geo.midpoint, Midpoint::Edge(1, 2));
        assert_eq!(geo.p_part(), &[0, 1]);
        assert_eq!(geo.q_part(), &[2, 3]);
    }

    #[test]
    fn ball_radius_semantics() {
        let g = path(7);
        assert_eq!(midpoint_ball(&g, Midpoint::Vertex(3), HalfInt::from_int(0)).members(), &[3]);
        assert_eq!(midpoint_ball(&g, Midpoint::Edge(2, 3), HalfInt::from_doubled(1)).members(), &[2, 3]);
        assert!(midpoint_ball(&g, Midpoint::Edge(2, 3), HalfInt::from_doubled(0)).is_empty());
        assert_eq!(
            midpoint_ball(&g, Midpoint::Edge(2, 3), HalfInt::from_doubled(3)).members(),
            &[1, 2, 3, 4]
        );
    }

    #[test]
    fn half_int_text() {
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::from_doubled(5));
        assert_eq!("3".parse::<HalfInt>().unwrap().to_string(), "3");
        assert_eq!(HalfInt::from_doubled(7).to_string(), "3.5");
        assert!("1.25".parse::<HalfInt>().is_err());
    }

    #[test]
    fn midpoints_of_a_square() {
        // 4-cycle 0-1-2-3: two geodesics from 0 to 2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mut m = all_midpoints(&g, 0, 2, 10).unwrap();
        m.sort_by_key(|m| m.vertices());
        assert_eq!(m, vec![Midpoint::Vertex(1), Midpoint::Vertex(3)]);
        assert!(all_midpoints(&g, 0, 2, 1).is_none());
    }
}
