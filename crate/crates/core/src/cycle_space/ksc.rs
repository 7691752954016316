use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

use super::basis::CycleBasis;
use super::f2::{BitRow, F2Basis};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Calls `f` once per simple cycle of length `3..=k`, given as edge ids.
/// Stops early when `f` returns false. Returns the number of cycles visited,
/// or a capacity error once more than `cap` cycles have been seen.
pub fn for_each_short_cycle<F>(g: &Graph, k: usize, cap: usize, mut f: F) -> Result<usize>
where
    F: FnMut(&[EdgeId]) -> bool,
{
    let n = g.num_vertices();
    let mut on_path = vec![false; n];
    let mut verts: Vec<VertexId> = Vec::with_capacity(k);
    let mut edges: Vec<EdgeId> = Vec::with_capacity(k);
    let mut count = 0usize;
    // Each cycle is found from its smallest vertex s, through vertices > s,
    // in the direction whose second vertex is smaller than its last.
    for s in 0..n {
        let mut stack: Vec<usize> = vec![0];
        verts.clear();
        edges.clear();
        verts.push(s);
        on_path[s] = true;
        while let Some(slot) = stack.last_mut() {
            let u = *verts.last().unwrap();
            if *slot >= g.degree(u) {
                stack.pop();
                on_path[u] = false;
                verts.pop();
                edges.pop();
                continue;
            }
            let i = *slot;
            *slot += 1;
            let w = g.neighbors(u)[i];
            let e = g.incident_edges(u)[i];
            if w == s {
                if verts.len() >= 3 && verts[1] < u {
                    edges.push(e);
                    count += 1;
                    if count > cap {
                        return Err(Error::Capacity(format!("more than {cap} cycles of length <= {k}")));
                    }
                    let go_on = f(&edges);
                    edges.pop();
                    if !go_on {
                        for &v in &verts {
                            on_path[v] = false;
                        }
                        return Ok(count);
                    }
                }
            } else if w > s && !on_path[w] && verts.len() < k {
                on_path[w] = true;
                verts.push(w);
                edges.push(e);
                stack.push(0);
            }
        }
    }
    Ok(count)
}

/// True iff the cycle space of `g` is spanned by cycles of length at most `k`.
pub fn is_k_sc(g: &Graph, k: usize) -> Result<bool> {
    is_k_sc_with_cap(g, k, DEFAULT_CYCLE_CAP)
}

pub fn is_k_sc_with_cap(g: &Graph, k: usize, cap: usize) -> Result<bool> {
    let basis = CycleBasis::new(g)?;
    let dim = basis.dim();
    let m = g.num_edges();
    let mut span = F2Basis::new(m);
    if dim > 0 {
        for_each_short_cycle(g, k, cap, |edges| {
            span.insert(BitRow::from_indices(m, edges.iter().copied()));
            span.rank() < dim
        })?;
    }
    Ok(basis.cycles.iter().all(|c| span.contains(&c.to_row())))
}
