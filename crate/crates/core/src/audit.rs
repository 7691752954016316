//! Consistency audit of a patch as loaded from disk.

use crate::format::{read_patch, write_patch};
use crate::generators::spec_of;
use crate::patch::PlanarPatch;

/// Problems found in a patch; empty means clean.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatchAudit {
    pub findings: Vec<String>,
    /// Whether a generator spec was found and the patch was rebuilt from it.
    pub regenerated: bool,
}

impl PatchAudit {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Checks what construction does not: every vertex is reachable from a
/// center, the serialized form is stable, and a recorded generator spec
/// rebuilds exactly this patch.
pub fn audit_patch(patch: &PlanarPatch) -> PatchAudit {
    let mut a = PatchAudit::default();
    if patch.centers().is_empty() {
        a.findings.push("no centers".into());
    }
    if patch.cert_radius() == 0 {
        a.findings.push("certified radius is zero".into());
    }
    let unreached = patch.depths().iter().filter(|&&d| d == u32::MAX).count();
    if unreached > 0 {
        a.findings.push(format!("{unreached} vertices unreachable from the centers"));
    }
    let text = write_patch(patch);
    match read_patch(&text) {
        Ok(back) if write_patch(&back) == text => {}
        Ok(_) => a.findings.push("serialization is not stable".into()),
        Err(e) => a.findings.push(format!("serialized patch does not read back: {e}")),
    }
    if let Ok(spec) = spec_of(patch) {
        a.regenerated = true;
        match spec.build() {
            Ok(fresh) if write_patch(&fresh) == text => {}
            Ok(_) => a.findings.push(format!("patch differs from a fresh build of `{spec}`")),
            Err(e) => a.findings.push(format!("recorded spec `{spec}` does not build: {e}")),
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{Family, GeneratorSpec};

    #[test]
    fn generated_patch_is_clean() {
        let p = GeneratorSpec::new(Family::Lattice { radius: 4 }).build().unwrap();
        let a = audit_patch(&p);
        assert!(a.is_clean() && a.regenerated, "{:?}", a.findings);
    }

    #[test]
    fn tampered_provenance_is_caught() {
        let p = GeneratorSpec::new(Family::Lattice { radius: 4 }).build().unwrap();
        let q = PlanarPatch::new(p.graph().clone(), p.outer_dart(), vec![0], 4, true)
            .unwrap()
            .with_provenance(vec!["family=lattice radius=5 seed=0".into()]);
        assert!(!audit_patch(&q).is_clean());
    }
}
