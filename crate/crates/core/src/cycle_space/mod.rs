//! The edge space of a graph over F2 and the cycle space inside it.

mod basis;
mod decompose;
mod edge_set;
mod f2;
mod ksc;

pub use basis::CycleBasis;
pub use decompose::{canonical_cycle, decompose_into_cycles, extract_cycle_containing_path};
pub use edge_set::{is_cycle_space_element, xor, EdgeSetF2};
pub use f2::{BitRow, F2Basis};
pub use ksc::{for_each_short_cycle, is_k_sc, is_k_sc_with_cap, DEFAULT_CYCLE_CAP};
