//! Constructions of every graph family used by the witnesses and scans.
//!
//! Every generator is deterministic. Finite graphs that stand for
//! themselves (glued trees, chains) are certified on their whole extent.

mod chains;
mod cone;
mod lattice;
mod trees;

use std::collections::BTreeMap;
use std::fmt;

pub use chains::{grid_chain, long_cycle_chain, GridChain, VertexRole};
pub use cone::{cone_from_sizes, cone_triangulation, parabolic_cone, parabolic_ring_sizes};
pub use lattice::{hex_coordinates, hex_norm, square_grid, square_lattice, triangular_lattice};
pub use trees::{alpha_sphere_sizes, alpha_tree, glued_trees, spaced_leaves, GluedTrees, LayeredTree};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metric::multi_source_distances;
use crate::patch::{Dart, Faces, PlanarPatch};

/// First dart of the longest traced face (ties go to the lowest face id).
pub(crate) fn longest_face_dart(g: &Graph) -> Result<Dart> {
    let faces = Faces::trace(g)?;
    let mut best: Option<&Vec<VertexId>> = None;
    for c in faces.cycles() {
        if best.is_none_or(|b| c.len() > b.len()) {
            best = Some(c);
        }
    }
    match best {
        Some(c) if c.len() >= 2 => Ok(Dart::new(c[0], c[1])),
        _ => Err(Error::invalid("graph has no edges")),
    }
}

/// A radius that certifies every ball of the finite graph: depth plus
/// diameter never exceeds `3 * max depth`, plus a margin.
pub(crate) fn whole_graph_radius(g: &Graph, centers: &[VertexId]) -> u32 {
    let d = multi_source_distances(g, centers, u32::MAX);
    3 * d.max_distance() + 2
}

/// A family with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Lattice { radius: u32 },
    SquareLattice { radius: u32 },
    AlphaTree { alpha: f64, radius: u32 },
    Cone { alpha: f64, radius: u32 },
    GluedTrees { alpha: f64, radius: u32, leaves: usize },
    ParabolicCone { radius: u32 },
    GridChain { n_max: usize },
    LongCycleChain { n_max: usize },
}

/// A family plus the run seed. Serializes to a flat `key=value` line that is
/// stored in the patch header.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        GeneratorSpec { family, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tag(&self) -> &'static str {
        match self.family {
            Family::Lattice { .. } => "lattice",
            Family::SquareLattice { .. } => "square-lattice",
            Family::AlphaTree { .. } => "alpha-tree",
            Family::Cone { .. } => "cone",
            Family::GluedTrees { .. } => "glued-trees",
            Family::ParabolicCone { .. } => "parabolic-cone",
            Family::GridChain { .. } => "grid-chain",
            Family::LongCycleChain { .. } => "long-cycle-chain",
        }
    }

    pub fn parse(line: &str) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for tok in line.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, got `{tok}`")))?;
            kv.insert(k, v);
        }
        fn get<T: std::str::FromStr>(kv: &BTreeMap<&str, &str>, key: &str) -> Result<T> {
            let raw = kv
                .get(key)
                .ok_or_else(|| Error::invalid(format!("missing `{key}`")))?;
            raw.parse()
                .map_err(|_| Error::invalid(format!("bad value `{raw}` for `{key}`")))
        }
        let family = match kv.get("family").copied() {
            Some("lattice") => Family::Lattice {
                radius: get(&kv, "radius")?,
            },
            Some("square-lattice") => Family::SquareLattice {
                radius: get(&kv, "radius")?,
            },
            Some("alpha-tree") => Family::AlphaTree {
                alpha: get(&kv, "alpha")?,
                radius: get(&kv, "radius")?,
            },
            Some("cone") => Family::Cone {
                alpha: get(&kv, "alpha")?,
                radius: get(&kv, "radius")?,
            },
            Some("glued-trees") => Family::GluedTrees {
                alpha: get(&kv, "alpha")?,
                radius: get(&kv, "radius")?,
                leaves: get(&kv, "leaves")?,
            },
            Some("parabolic-cone") => Family::ParabolicCone {
                radius: get(&kv, "radius")?,
            },
            Some("grid-chain") => Family::GridChain {
                n_max: get(&kv, "nmax")?,
            },
            Some("long-cycle-chain") => Family::LongCycleChain {
                n_max: get(&kv, "nmax")?,
            },
            Some(other) => return Err(Error::invalid(format!("unknown family `{other}`"))),
            None => return Err(Error::invalid("missing `family`")),
        };
        let seed = if kv.contains_key("seed") { get(&kv, "seed")? } else { 0 };
        Ok(GeneratorSpec { family, seed })
    }

    /// Builds the patch and records this spec as its provenance.
    pub fn build(&self) -> Result<PlanarPatch> {
        let patch = match self.family {
            Family::Lattice { radius } => triangular_lattice(radius)?,
            Family::SquareLattice { radius } => square_lattice(radius)?,
            Family::AlphaTree { alpha, radius } => alpha_tree(alpha, radius)?,
            Family::Cone { alpha, radius } => cone_triangulation(alpha, radius)?,
            Family::GluedTrees { alpha, radius, leaves } => glued_trees(alpha, radius, leaves)?.patch,
            Family::ParabolicCone { radius } => parabolic_cone(radius)?,
            Family::GridChain { n_max } => grid_chain(n_max)?.patch,
            Family::LongCycleChain { n_max } => long_cycle_chain(n_max)?,
        };
        Ok(patch.with_provenance(vec![self.to_string()]))
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={}", self.tag())?;
        match self.family {
            Family::Lattice { radius } | Family::SquareLattice { radius } | Family::ParabolicCone { radius } => {
                write!(f, " radius={radius}")?
            }
            Family::AlphaTree { alpha, radius } | Family::Cone { alpha, radius } => {
                write!(f, " alpha={alpha} radius={radius}")?
            }
            Family::GluedTrees { alpha, radius, leaves } => write!(f, " alpha={alpha} radius={radius} leaves={leaves}")?,
            Family::GridChain { n_max } | Family::LongCycleChain { n_max } => write!(f, " nmax={n_max}")?,
        }
        write!(f, " seed={}", self.seed)
    }
}

/// Reads the generator spec back out of a patch's provenance.
pub fn spec_of(patch: &PlanarPatch) -> Result<GeneratorSpec> {
    let line = patch
        .provenance()
        .iter()
        .find(|l| l.starts_with("family="))
        .ok_or_else(|| Error::invalid("patch carries no generator spec"))?;
    GeneratorSpec::parse(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips() {
        let specs = [
            Family::Lattice { radius: 5 },
            Family::AlphaTree { alpha: 1.5, radius: 9 },
            Family::GluedTrees {
                alpha: 1.5,
                radius: 12,
                leaves: 3,
            },
            Family::GridChain { n_max: 4 },
        ];
        for fam in specs {
            let s = GeneratorSpec::new(fam).with_seed(7);
            assert_eq!(GeneratorSpec::parse(&s.to_string()).unwrap(), s);
            let p = s.build().unwrap();
            assert_eq!(spec_of(&p).unwrap(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(GeneratorSpec::parse("family=moon radius=3").is_err());
        assert!(GeneratorSpec::parse("family=lattice").is_err());
        assert!(GeneratorSpec::parse("family=lattice radius=x").is_err());
    }
}
