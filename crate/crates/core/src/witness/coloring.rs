//! Two-colorings, their monochromatic components, and the explicit coloring
//! of the grid chain.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{hex_coordinates, GridChain, VertexRole};
use crate::graph::{Graph, VertexId};
use crate::metric::{graph_distances, BfsScratch, UNREACHED};
use crate::patch::PlanarPatch;

/// A map from vertices to colors `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c > 1) {
            return Err(Error::invalid(format!("vertex {v} has color {}", colors[v])));
        }
        Ok(Coloring { colors })
    }

    pub fn from_fn(n: usize, f: impl Fn(VertexId) -> u8) -> Result<Self> {
        Self::new((0..n).map(f).collect())
    }

    pub fn constant(n: usize, c: u8) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn color(&self, v: VertexId) -> u8 {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    fn require_host(&self, g: &Graph) -> Result<()> {
        if self.len() != g.num_vertices() {
            return Err(Error::invalid(format!(
                "coloring has {} entries, graph has {} vertices",
                self.len(),
                g.num_vertices()
            )));
        }
        Ok(())
    }

    /// Color 1 on balls of radius `radius` around greedily chosen centers
    /// (BFS order from vertex 0, pairwise at distance at least
    /// `2 * radius + 2`), color 0 elsewhere.
    pub fn balls(g: &Graph, radius: u32) -> Result<Self> {
        let n = g.num_vertices();
        let mut colors = vec![0u8; n];
        let mut blocked = vec![false; n];
        let mut scratch = BfsScratch::new(n);
        let (labels, count) = g.components();
        let mut roots = vec![None; count];
        for v in 0..n {
            roots[labels[v]].get_or_insert(v);
        }
        for root in roots.into_iter().flatten() {
            let order = graph_distances(g, root, UNREACHED).reached().to_vec();
            for c in order {
                if blocked[c] {
                    continue;
                }
                scratch.run(g, &[c], 2 * radius + 1, |_| true);
                for &w in scratch.visited() {
                    blocked[w] = true;
                    if scratch.dist(w).unwrap() <= radius {
                        colors[w] = 1;
                    }
                }
            }
        }
        Self::new(colors)
    }

    /// Concentric rings of width `width` around `center`.
    pub fn rings(g: &Graph, center: VertexId, width: u32) -> Result<Self> {
        g.check_vertex(center)?;
        if width == 0 {
            return Err(Error::invalid("ring width must be positive"));
        }
        let d = graph_distances(g, center, UNREACHED);
        Self::from_fn(g.num_vertices(), |v| d.get(v).map_or(0, |x| ((x / width) % 2) as u8))
    }

    /// Stripes of width `width` on the triangular lattice patch of the given
    /// radius, cut along the first axial coordinate.
    pub fn lattice_stripes(radius: u32, width: u32) -> Result<Self> {
        if width == 0 {
            return Err(Error::invalid("stripe width must be positive"));
        }
        let coords = hex_coordinates(radius);
        Self::from_fn(coords.len(), |v| coords[v].0.div_euclid(width as i32).rem_euclid(2) as u8)
    }

    /// Depth below the nearest center, mod 2.
    pub fn depth_parity(patch: &PlanarPatch) -> Result<Self> {
        Self::from_fn(patch.num_vertices(), |v| (patch.depth(v) % 2) as u8)
    }

    /// Whitespace-separated `0`/`1` tokens, one per vertex; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut colors = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("");
            for tok in body.split_whitespace() {
                match tok {
                    "0" => colors.push(0),
                    "1" => colors.push(1),
                    _ => {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: format!("expected 0 or 1, got `{tok}`"),
                        })
                    }
                }
            }
        }
        Self::new(colors)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(2 * self.len());
        for chunk in self.colors.chunks(64) {
            let line: Vec<&str> = chunk.iter().map(|&c| if c == 0 { "0" } else { "1" }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Maximal connected monochromatic vertex sets, numbered by smallest member.
#[derive(Clone, Debug)]
pub struct MonoComponents {
    pub labels: Vec<usize>,
    pub members: Vec<Vec<VertexId>>,
}

impl MonoComponents {
    pub fn compute(g: &Graph, c: &Coloring) -> Result<Self> {
        c.require_host(g)?;
        let n = g.num_vertices();
        let mut labels = vec![usize::MAX; n];
        let mut members = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if labels[s] != usize::MAX {
                continue;
            }
            let id = members.len();
            let col = c.color(s);
            let mut comp = vec![s];
            labels[s] = id;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if labels[w] == usize::MAX && c.color(w) == col {
                        labels[w] = id;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            members.push(comp);
        }
        Ok(MonoComponents { labels, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.labels[v]
    }
}

/// A pair of vertices of one component at host distance `dist`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiameterWitness {
    pub u: VertexId,
    pub v: VertexId,
    pub dist: u32,
}

/// Finds two members at host distance at least `r`, if there are any.
pub fn diameter_at_least(g: &Graph, members: &[VertexId], r: u32, scratch: &mut BfsScratch) -> Option<DiameterWitness> {
    if r == 0 {
        return members.first().map(|&u| DiameterWitness { u, v: u, dist: 0 });
    }
    // a set of at most r vertices spans an induced path of length < r
    if members.len() <= r as usize {
        return None;
    }
    for &u in members {
        scratch.run(g, &[u], r - 1, |_| true);
        if let Some(&v) = members.iter().find(|&&w| scratch.dist(w).is_none()) {
            let dist = graph_distances(g, u, UNREACHED).get(v).unwrap_or(UNREACHED);
            return Some(DiameterWitness { u, v, dist });
        }
    }
    None
}

/// Exact host-metric diameter if it is at most `cutoff`.
pub fn component_diameter(g: &Graph, members: &[VertexId], cutoff: u32, scratch: &mut BfsScratch) -> Option<u32> {
    let mut best = 0;
    for &u in members {
        scratch.run(g, &[u], cutoff, |_| true);
        for &w in members {
            best = best.max(scratch.dist(w)?);
        }
    }
    Some(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringCheck {
    /// Every monochromatic component has diameter below `r`.
    Ok,
    Offending {
        component: Vec<VertexId>,
        color: u8,
        witness: DiameterWitness,
    },
}

/// Returns the first component (by smallest vertex) of host diameter at
/// least `r`.
pub fn coloring_check(g: &Graph, c: &Coloring, r: u32) -> Result<ColoringCheck> {
    let comps = MonoComponents::compute(g, c)?;
    let n = g.num_vertices();
    let hit = comps
        .members
        .par_iter()
        .enumerate()
        .map_init(
            || BfsScratch::new(n),
            |scratch, (i, m)| diameter_at_least(g, m, r, scratch).map(|w| (i, w)),
        )
        .find_first(|x| x.is_some())
        .flatten();
    Ok(match hit {
        None => ColoringCheck::Ok,
        Some((i, witness)) => {
            let component = comps.members[i].clone();
            ColoringCheck::Offending {
                color: c.color(component[0]),
                component,
                witness,
            }
        }
    })
}

/// Two distinct same-colored components that come closer than allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Proximity {
    pub a: usize,
    pub b: usize,
    pub dist: u32,
}

/// Checks that distinct components of the same color are at host distance at
/// least `s`. Returns the closest offending pair found, if any.
///
/// One BFS per color from all vertices of that color, each carrying the label
/// of its component; two labels meeting across an edge at total distance
/// below `s` is a violation.
pub fn check_disjointness(g: &Graph, c: &Coloring, comps: &MonoComponents, s: u32) -> Result<Option<Proximity>> {
    c.require_host(g)?;
    let n = g.num_vertices();
    let mut worst: Option<Proximity> = None;
    for col in 0..2u8 {
        let mut dist = vec![UNREACHED; n];
        let mut label = vec![usize::MAX; n];
        let mut queue: Vec<VertexId> = Vec::new();
        for v in 0..n {
            if c.color(v) == col {
                dist[v] = 0;
                label[v] = comps.labels[v];
                queue.push(v);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if dist[u] >= s {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    label[w] = label[u];
                    queue.push(w);
                }
            }
        }
        for &(u, w) in g.edges() {
            if dist[u] == UNREACHED || dist[w] == UNREACHED || label[u] == label[w] {
                continue;
            }
            let d = dist[u] + dist[w] + 1;
            if d < s && worst.is_none_or(|p| d < p.dist) {
                let (a, b) = (label[u].min(label[w]), label[u].max(label[w]));
                worst = Some(Proximity { a, b, dist: d });
            }
        }
    }
    Ok(worst)
}

/// The coloring of the grid chain at scale `s`, with the lump of small pieces
/// recorded.
#[derive(Clone, Debug)]
pub struct GridChainColoring {
    pub coloring: Coloring,
    pub s: usize,
    /// Pieces `G_n` with `n <= lump_max` (and the paths between them) form the
    /// lump, colored 0.
    pub lump_max: usize,
}

impl GridChainColoring {
    pub fn in_lump(&self, role: &VertexRole) -> bool {
        match *role {
            VertexRole::Connector { n, .. } => n < self.lump_max,
            other => other.piece() <= self.lump_max,
        }
    }
}

const LUMP_COLOR: u8 = 0;

/// Color of grid vertex `(x, y)` of `G_n` for `n > 4s`: proper, with the
/// parity of `n` chosen so that consecutive pieces meet with opposite colors.
fn grid_color(n: usize, s: usize, x: usize, y: usize) -> u8 {
    let flip = (n - 4 * s) % 2;
    ((x + y + flip) % 2) as u8
}

/// Color of the `i`-th (1-based) of `len` internal vertices of a path whose
/// ends are colored `ca` and `cb`: vertices within `s` of an end copy it, the
/// rest is cut into an even number of nearly equal runs of alternating
/// colors, starting opposite to `ca`.
fn path_color(i: usize, len: usize, s: usize, ca: u8, cb: u8) -> Result<u8> {
    if ca == cb {
        return Err(Error::consistency(format!("path ends share color {ca}")));
    }
    if i <= s {
        return Ok(ca);
    }
    if len + 1 - i <= s {
        return Ok(cb);
    }
    let mid = len - 2 * s;
    let parts = 2 * mid.div_ceil(4 * s).max(1);
    if mid < parts {
        return Err(Error::consistency(format!("middle run of {mid} vertices cannot be cut into {parts} parts")));
    }
    let j = i - s - 1;
    let part = j * parts / mid;
    Ok((1 - ca) ^ (part % 2) as u8)
}

/// The explicit two-coloring of the grid chain at scale `s >= 1`.
pub fn grid_chain_coloring(chain: &GridChain, s: usize) -> Result<GridChainColoring> {
    if s == 0 {
        return Err(Error::invalid("scale must be positive"));
    }
    let lump_max = 4 * s;
    let mut colors = Vec::with_capacity(chain.roles.len());
    for role in &chain.roles {
        let col = match *role {
            VertexRole::Grid { n, x, y } => {
                if n <= lump_max {
                    LUMP_COLOR
                } else {
                    grid_color(n, s, x, y)
                }
            }
            VertexRole::Subdivision { n, a, b, index } => {
                if n <= lump_max {
                    LUMP_COLOR
                } else {
                    path_color(index, n, s, grid_color(n, s, a.0, a.1), grid_color(n, s, b.0, b.1))?
                }
            }
            VertexRole::Connector { n, index } => {
                if n < lump_max {
                    LUMP_COLOR
                } else {
                    let start = if n == lump_max { LUMP_COLOR } else { grid_color(n, s, n, n) };
                    path_color(index, n - 1, s, start, grid_color(n + 1, s, 0, 0))?
                }
            }
        };
        colors.push(col);
    }
    Ok(GridChainColoring {
        coloring: Coloring::new(colors)?,
        s,
        lump_max,
    })
}

/// Measurements of a grid-chain coloring at its scale.
#[derive(Clone, Debug)]
pub struct GridChainReport {
    pub components: usize,
    /// Largest host diameter among components that miss the lump, or `None`
    /// if one exceeded the cutoff.
    pub max_diameter: Option<u32>,
    pub diameter_cutoff: u32,
    pub proximity: Option<Proximity>,
}

impl GridChainReport {
    pub fn ok(&self) -> bool {
        self.proximity.is_none() && self.max_diameter.is_some()
    }
}

/// Checks `(2, s)`-disjointness and bounds the non-lump component diameters
/// by `cutoff`.
pub fn grid_chain_report(chain: &GridChain, col: &GridChainColoring, cutoff: u32) -> Result<GridChainReport> {
    let g = chain.patch.graph();
    let comps = MonoComponents::compute(g, &col.coloring)?;
    let proximity = check_disjointness(g, &col.coloring, &comps, col.s as u32)?;
    let n = g.num_vertices();
    let outside: Vec<&Vec<VertexId>> = comps
        .members
        .iter()
        .filter(|m| m.iter().all(|&v| !col.in_lump(&chain.roles[v])))
        .collect();
    let diams: Vec<Option<u32>> = outside
        .par_iter()
        .map_init(|| BfsScratch::new(n), |scratch, m| component_diameter(g, m, cutoff, scratch))
        .collect();
    let max_diameter = diams.iter().try_fold(0u32, |acc, d| d.map(|d| acc.max(d)));
    Ok(GridChainReport {
        components: comps.len(),
        max_diameter,
        diameter_cutoff: cutoff,
        proximity,
    })
}
