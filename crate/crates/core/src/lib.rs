//! Certified planar patches and the algorithms that run on them: exact BFS
//! metrics, F2 cycle-space algebra, bottleneck scans, boundary paths and
//! volume-growth witnesses.

pub mod audit;
pub mod coarse;
pub mod cycle_space;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod growth;
pub mod metric;
pub mod patch;
pub mod witness;

pub use audit::{audit_patch, PatchAudit};
pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
pub use metric::{Distances, SubgraphHandle, VertexSet};
pub use patch::{Dart, Faces, PlanarPatch};
