//! Ball-size profiles and log-log growth exponents.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::graph_distances;
use crate::patch::PlanarPatch;

/// `sizes[r] = |B_center(r)|` for `r = 0..=max_radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallProfile {
    pub center: VertexId,
    pub sizes: Vec<usize>,
}

impl BallProfile {
    pub fn measure(g: &Graph, center: VertexId, max_radius: u32) -> Result<Self> {
        g.check_vertex(center)?;
        let d = graph_distances(g, center, max_radius);
        let mut sizes = vec![0usize; max_radius as usize + 1];
        for (r, s) in d.sphere_sizes().into_iter().enumerate() {
            sizes[r] = s;
        }
        for r in 1..sizes.len() {
            sizes[r] += sizes[r - 1];
        }
        Ok(BallProfile { center, sizes })
    }

    pub fn max_radius(&self) -> u32 {
        self.sizes.len() as u32 - 1
    }

    pub fn size(&self, r: u32) -> usize {
        self.sizes[r as usize]
    }

    /// Least-squares slope of `log |B(r)|` against `log r` for integer `r` in
    /// `[lo, hi]`.
    pub fn slope(&self, lo: u32, hi: u32) -> Result<f64> {
        if lo == 0 || hi <= lo || hi > self.max_radius() {
            return Err(Error::invalid(format!(
                "fit window [{lo}, {hi}] not inside [1, {}]",
                self.max_radius()
            )));
        }
        let pts: Vec<(f64, f64)> = (lo..=hi)
            .map(|r| ((r as f64).ln(), (self.size(r) as f64).ln()))
            .collect();
        Ok(least_squares_slope(&pts))
    }
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[derive(Clone, Debug)]
pub struct GrowthProfile {
    pub profiles: Vec<BallProfile>,
    pub fit_range: (u32, u32),
    pub slopes: Vec<f64>,
}

impl GrowthProfile {
    /// Profiles every center in parallel; the output order follows `centers`.
    ///
    /// Each center must have its whole fit window certified.
    pub fn measure(patch: &PlanarPatch, centers: &[VertexId], fit_range: (u32, u32)) -> Result<Self> {
        let (lo, hi) = fit_range;
        for &c in centers {
            patch.require_certified(c, hi)?;
        }
        let profiles = centers
            .par_iter()
            .map(|&c| BallProfile::measure(patch.graph(), c, hi))
            .collect::<Result<Vec<_>>>()?;
        let slopes = profiles.iter().map(|p| p.slope(lo, hi)).collect::<Result<Vec<_>>>()?;
        Ok(GrowthProfile {
            profiles,
            fit_range,
            slopes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_profile_is_linear() {
        let edges: Vec<_> = (1..30).map(|i| (i - 1, i)).collect();
        let g = Graph::from_edges(30, &edges).unwrap();
        let p = BallProfile::measure(&g, 0, 20).unwrap();
        assert_eq!(p.size(0), 1);
        for r in 0..=20 {
            assert_eq!(p.size(r), r as usize + 1);
        }
        let s = p.slope(5, 20).unwrap();
        assert!((s - 1.0).abs() < 0.1, "{s}");
    }

    #[test]
    fn exact_power_law_slope() {
        let pts: Vec<_> = (1..10).map(|x| ((x as f64).ln(), 3.0 * (x as f64).ln() + 1.0)).collect();
        assert!((least_squares_slope(&pts) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn bad_window_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let p = BallProfile::measure(&g, 0, 3).unwrap();
        assert!(p.slope(0, 3).is_err());
        assert!(p.slope(2, 4).is_err());
    }
}
