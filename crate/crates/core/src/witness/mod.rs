//! Executable forms of the growth and coloring arguments: boundary paths,
//! volume-growth certificates, two-colorings and the component chase.

mod boundary;
mod certificate;
mod coloring;
mod escalation;

pub use boundary::{boundary_path_bfs, boundary_path_cyclespace, is_external_path, loop_erase, timar_path, CycleSpaceTrace};
pub use certificate::{
    audit_certificate, ksc_growth_witness, ksc_layer_count, quadratic_growth_witness, AuditReport, LayerRecord,
    Violation, WitnessCertificate, WitnessKind,
};
pub use coloring::{
    check_disjointness, coloring_check, component_diameter, diameter_at_least, grid_chain_coloring,
    grid_chain_report, Coloring, ColoringCheck, DiameterWitness, GridChainColoring, GridChainReport, MonoComponents,
    Proximity,
};
pub use escalation::{
    asdim_escalation, escalate, find_bp_violation, verify_trace, EscalationOutcome, EscalationRun, EscalationStep,
    EscalationTrace, StepLink,
};
