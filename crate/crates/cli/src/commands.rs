use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasitree_core::coarse::{bp_scan, check_bp_pair, least_clean_delta, sample_pairs, verify_violation, HalfInt, Midpoint, PairSource};
use quasitree_core::cycle_space::is_k_sc;
use quasitree_core::format::write_patch;
use quasitree_core::generators::{grid_chain, spec_of, Family, GeneratorSpec};
use quasitree_core::growth::GrowthProfile;
use quasitree_core::witness::{
    audit_certificate, coloring_check, escalate as run_escalation, grid_chain_coloring, grid_chain_report,
    ksc_growth_witness, quadratic_growth_witness, verify_trace, Coloring, ColoringCheck, EscalationRun,
    MonoComponents, Violation,
};
use quasitree_core::{audit_patch, Error, PlanarPatch, VertexId};

use crate::config::{emit, load, sha256_hex, CmdResult, Failure, RunConfig};
use crate::{
    CheckBpArgs, ColoringArgs, ColoringChoice, EscalateArgs, FamilyName, GenerateArgs, PairSelection, ProfileArgs,
    ValidateArgs, WitnessArgs,
};

fn need<T>(v: Option<T>, flag: &str, family: FamilyName) -> CmdResult<T> {
    v.ok_or_else(|| Failure::Input(format!("--{flag} is required for {family:?}")))
}

fn family_of(a: &GenerateArgs) -> CmdResult<Family> {
    let f = a.family;
    Ok(match f {
        FamilyName::Lattice => Family::Lattice { radius: need(a.radius, "radius", f)? },
        FamilyName::SquareLattice => Family::SquareLattice { radius: need(a.radius, "radius", f)? },
        FamilyName::AlphaTree => Family::AlphaTree {
            alpha: need(a.alpha, "alpha", f)?,
            radius: need(a.radius, "radius", f)?,
        },
        FamilyName::Cone => Family::Cone {
            alpha: need(a.alpha, "alpha", f)?,
            radius: need(a.radius, "radius", f)?,
        },
        FamilyName::GluedTrees => Family::GluedTrees {
            alpha: need(a.alpha, "alpha", f)?,
            radius: need(a.radius, "radius", f)?,
            leaves: need(a.leaves, "leaves", f)?,
        },
        FamilyName::ParabolicCone => Family::ParabolicCone { radius: need(a.radius, "radius", f)? },
        FamilyName::GridChain => Family::GridChain { n_max: need(a.nmax, "nmax", f)? },
        FamilyName::LongCycleChain => Family::LongCycleChain { n_max: need(a.nmax, "nmax", f)? },
    })
}

pub fn generate(a: GenerateArgs) -> CmdResult {
    let spec = GeneratorSpec::new(family_of(&a)?).with_seed(a.seed);
    let patch = spec.build()?;
    let text = write_patch(&patch);
    let g = patch.graph();
    let mut summary = String::new();
    let _ = writeln!(summary, "# run subcommand=generate {spec}");
    let _ = writeln!(summary, "# output sha256={}", sha256_hex(text.as_bytes()));
    let _ = writeln!(
        summary,
        "vertices={} edges={} faces={} components={} triangulation={} centers={} cert_radius={}",
        g.num_vertices(),
        g.num_edges(),
        patch.faces().num_faces(),
        g.components().1,
        u8::from(patch.is_triangulation()),
        patch.centers().len(),
        patch.cert_radius()
    );
    match &a.out {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            print!("{text}");
        }
    }
    Ok(())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn profile(a: ProfileArgs) -> CmdResult {
    let mut cfg = RunConfig::new("profile");
    let patch = load(&a.input.patch, &mut cfg)?;
    let certified = |v: VertexId| patch.certified_radius_at(v).unwrap_or(0);
    let (centers, rmax) = match a.centers.as_str() {
        "roots" => {
            let c = patch.centers().to_vec();
            let rmax = a.rmax.unwrap_or_else(|| c.iter().map(|&v| certified(v)).min().unwrap_or(0));
            (c, rmax)
        }
        other => {
            let rmax = a.rmax.unwrap_or(patch.cert_radius() / 2);
            let mut pool: Vec<VertexId> = (0..patch.num_vertices()).filter(|&v| certified(v) >= rmax).collect();
            if other != "all" {
                let n: usize = other
                    .parse()
                    .map_err(|_| Failure::Input(format!("--centers expects roots, all or a number, got `{other}`")))?;
                pool.shuffle(&mut rng(a.input.seed));
                pool.truncate(n);
                pool.sort_unstable();
            }
            (pool, rmax)
        }
    };
    if centers.is_empty() {
        return Err(Failure::Certification(format!("no center has radius {rmax} certified")));
    }
    let rmin = a.rmin.unwrap_or((rmax / 8).max(1));
    if rmin >= rmax {
        return Err(Failure::Input(format!("fit window [{rmin}, {rmax}] is empty")));
    }
    cfg.set("centers", &a.centers).set("rmin", rmin).set("rmax", rmax).set("seed", a.input.seed);
    let prof = GrowthProfile::measure(&patch, &centers, (rmin, rmax))?;
    let mut out = cfg.header();
    out.push_str("center,r,ball_size\n");
    for (c, p) in centers.iter().zip(&prof.profiles) {
        for r in 0..=rmax {
            let _ = writeln!(out, "{c},{r},{}", p.size(r));
        }
    }
    for (c, s) in centers.iter().zip(&prof.slopes) {
        let _ = writeln!(out, "# slope center={c} value={s:.4}");
    }
    emit(&a.input.out, &out)
}

fn pairs_for(patch: &PlanarPatch, sel: &PairSelection, min_dist: u32, seed: u64, cfg: &mut RunConfig) -> Vec<(VertexId, VertexId)> {
    match &sel.pair {
        Some(pq) => {
            cfg.set("pair", format!("{},{}", pq[0], pq[1]));
            vec![(pq[0], pq[1])]
        }
        None => {
            cfg.set("budget", sel.budget).set("min_dist", min_dist).set("seed", seed);
            sample_pairs(patch, sel.budget, min_dist, &mut rng(seed))
        }
    }
}

pub fn check_bp(a: CheckBpArgs) -> CmdResult {
    let mut cfg = RunConfig::new("check-bp");
    let patch = load(&a.input.patch, &mut cfg)?;
    let deltas: Vec<String> = a.delta.iter().map(|d| d.to_string()).collect();
    cfg.set("delta", deltas.join(","));
    let source = if a.exhaustive {
        cfg.set("pairs", "exhaustive");
        PairSource::Exhaustive
    } else {
        PairSource::Explicit(pairs_for(&patch, &a.pairs, a.min_dist, a.input.seed, &mut cfg))
    };
    let mut out = cfg.header();
    let mut reports = Vec::new();
    let mut unverified = 0;
    for (i, &d) in a.delta.iter().enumerate() {
        let rep = bp_scan(&patch, d, &source)?;
        unverified += rep.violations().filter(|c| !verify_violation(patch.graph(), c)).count();
        rep.write_csv(&mut out, i == 0);
        reports.push(rep);
    }
    for rep in &reports {
        let _ = writeln!(
            out,
            "# delta={} checked={} violations={} skipped={}",
            rep.delta,
            rep.checks.len(),
            rep.num_violations(),
            rep.skipped.len()
        );
    }
    let star = least_clean_delta(&reports).map_or("none".to_string(), |d| d.to_string());
    let _ = writeln!(out, "# least_clean_delta={star}");
    emit(&a.input.out, &out)?;
    if unverified > 0 {
        return Err(Failure::Consistency(format!("{unverified} reported violations failed re-verification")));
    }
    Ok(())
}

/// First violation at scale `r` whose midpoint has `room` certified around
/// it, preferring a vertex midpoint.
fn pick_violation(patch: &PlanarPatch, r: u32, room: u32, pairs: &[(VertexId, VertexId)]) -> CmdResult<Option<Violation>> {
    let explicit = pairs.len() == 1;
    let mut fallback = None;
    for &(p, q) in pairs {
        let check = match check_bp_pair(patch, p, q, HalfInt::from_int(r)) {
            Ok(c) => c,
            Err(Error::Certification(_)) if !explicit => continue,
            Err(e) => return Err(e.into()),
        };
        let Some(v) = Violation::from_check(&check) else { continue };
        let mids = v.midpoint().vertices();
        if !explicit && !mids.iter().all(|&m| patch.certified_radius_at(m).is_some_and(|c| c >= room)) {
            continue;
        }
        if matches!(v.midpoint(), Midpoint::Vertex(_)) {
            return Ok(Some(v));
        }
        fallback.get_or_insert(v);
    }
    Ok(fallback)
}

pub fn witness(a: WitnessArgs, ksc: Option<(usize, bool)>) -> CmdResult {
    let name = if ksc.is_some() { "ksc-witness" } else { "witness" };
    let mut cfg = RunConfig::new(name);
    let patch = load(&a.input.patch, &mut cfg)?;
    cfg.set("r", a.r);
    let room = match ksc {
        Some((k, check)) => {
            cfg.set("k", k).set("check_ksc", u8::from(check));
            if check && !is_k_sc(patch.graph(), k)? {
                return Err(Failure::Input(format!("cycle space is not generated by cycles of length at most {k}")));
            }
            a.r + 1 + (k / 2) as u32
        }
        None => a.r + 1,
    };
    let pairs = pairs_for(&patch, &a.pairs, 2 * a.r + 2, a.input.seed, &mut cfg);
    let mut out = cfg.header();
    let Some(v) = pick_violation(&patch, a.r, room, &pairs)? else {
        let _ = writeln!(out, "NO-VIOLATION r={} pairs={}", a.r, pairs.len());
        return emit(&a.input.out, &out);
    };
    let cert = match ksc {
        Some((k, _)) => ksc_growth_witness(&patch, k, &v, a.r)?,
        None => quadratic_growth_witness(&patch, &v, a.r)?,
    };
    let audit = audit_certificate(patch.graph(), &cert);
    out.push_str(&cert.to_text(audit.ok()));
    let _ = writeln!(out, "# closed_form_holds={}", u8::from(audit.closed_form_holds));
    for f in audit.failures() {
        let _ = writeln!(out, "# audit failed: {f}");
    }
    emit(&a.input.out, &out)?;
    if !audit.ok() {
        return Err(Failure::Consistency(format!("certificate audit failed: {}", audit.failures().join("; "))));
    }
    Ok(())
}

/// Builds the chosen coloring. For the grid chain the chain is rebuilt from
/// the patch's generator and must match the loaded graph exactly.
fn build_coloring(patch: &PlanarPatch, c: &ColoringChoice, cfg: &mut RunConfig) -> CmdResult<(Coloring, Option<usize>)> {
    let g = patch.graph();
    if let Some(s) = c.grid_chain_scale {
        cfg.set("coloring", format!("grid-chain:{s}"));
        return Ok((grid_chain_coloring(&rebuild_chain(patch)?, s)?.coloring, Some(s)));
    }
    let col = if let Some(path) = &c.coloring {
        let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        cfg.set("coloring", format!("file:{}", sha256_hex(&bytes)));
        let text = String::from_utf8(bytes).map_err(|_| Failure::Input("coloring file is not UTF-8".into()))?;
        let col = Coloring::parse(&text)?;
        if col.len() != g.num_vertices() {
            return Err(Failure::Input(format!(
                "coloring has {} entries, patch has {} vertices",
                col.len(),
                g.num_vertices()
            )));
        }
        col
    } else if let Some(rad) = c.balls {
        cfg.set("coloring", format!("balls:{rad}"));
        Coloring::balls(g, rad)?
    } else if let Some(w) = c.stripes {
        cfg.set("coloring", format!("stripes:{w}"));
        let spec = spec_of(patch)?;
        let Family::Lattice { radius } = spec.family else {
            return Err(Failure::Input("stripes need a triangular lattice patch".into()));
        };
        Coloring::lattice_stripes(radius, w)?
    } else if let Some(w) = c.rings {
        cfg.set("coloring", format!("rings:{w}"));
        Coloring::rings(g, patch.centers()[0], w)?
    } else {
        cfg.set("coloring", "depth-parity");
        Coloring::depth_parity(patch)?
    };
    Ok((col, None))
}

fn rebuild_chain(patch: &PlanarPatch) -> CmdResult<quasitree_core::generators::GridChain> {
    let spec = spec_of(patch)?;
    let Family::GridChain { n_max } = spec.family else {
        return Err(Failure::Input(format!("patch is a {}, not a grid chain", spec.tag())));
    };
    let chain = grid_chain(n_max)?;
    if chain.patch.graph().fingerprint() != patch.graph().fingerprint() {
        return Err(Failure::Input("patch does not match a fresh grid chain of its recorded size".into()));
    }
    Ok(chain)
}

pub fn coloring(a: ColoringArgs) -> CmdResult {
    let mut cfg = RunConfig::new("coloring");
    let patch = load(&a.input.patch, &mut cfg)?;
    let g = patch.graph();
    let (col, scale) = build_coloring(&patch, &a.choice, &mut cfg)?;
    let r = match (a.r, scale) {
        (Some(r), _) => r,
        (None, Some(s)) => 2 * s as u32 + 1,
        (None, None) => return Err(Failure::Input("--r is required for this coloring".into())),
    };
    cfg.set("r", r);
    if let Some(p) = &a.write_coloring {
        std::fs::write(p, col.to_text()).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    let mut out = cfg.header();
    let comps = MonoComponents::compute(g, &col)?;
    // The grid-chain lump is allowed to be large, so the whole-coloring check
    // runs there only on request.
    if scale.is_none() || a.r.is_some() {
        let check = coloring_check(g, &col, r)?;
        if let ColoringCheck::Offending { component, color, witness } = &check {
            let _ = writeln!(
                out,
                "offending color={color} size={} u={} v={} dist={}",
                component.len(),
                witness.u,
                witness.v,
                witness.dist
            );
        }
        let ok = check == ColoringCheck::Ok;
        let _ = writeln!(out, "COLORING r={r} components={} ok={}", comps.len(), u8::from(ok));
    }
    if let Some(s) = scale {
        let chain = rebuild_chain(&patch)?;
        let gc = grid_chain_coloring(&chain, s)?;
        let rep = grid_chain_report(&chain, &gc, 4 * s as u32)?;
        let diam = rep.max_diameter.map_or(format!(">{}", rep.diameter_cutoff), |d| d.to_string());
        let prox = rep
            .proximity
            .map_or("none".to_string(), |p| format!("{}-{}@{}", p.a, p.b, p.dist));
        let _ = writeln!(
            out,
            "GRIDCHAIN s={s} lump_max={} components={} max_diameter={diam} proximity={prox} ok={}",
            gc.lump_max,
            rep.components,
            u8::from(rep.ok())
        );
        emit(&a.input.out, &out)?;
        if !rep.ok() {
            return Err(Failure::Consistency("grid-chain coloring failed its check".into()));
        }
        return Ok(());
    }
    emit(&a.input.out, &out)
}

pub fn escalate(a: EscalateArgs) -> CmdResult {
    let mut cfg = RunConfig::new("escalate");
    let patch = load(&a.input.patch, &mut cfg)?;
    let (col, _) = build_coloring(&patch, &a.choice, &mut cfg)?;
    cfg.set("r", a.r);
    let pairs = pairs_for(&patch, &a.pairs, 20 * a.r + 2, a.input.seed, &mut cfg);
    let mut out = cfg.header();
    match run_escalation(&patch, &col, a.r, &pairs)? {
        EscalationRun::PreconditionUnavailable { pairs_tested } => {
            let _ = writeln!(out, "PRECONDITION-UNAVAILABLE r={} scale={} pairs={pairs_tested}", a.r, 10 * a.r);
            emit(&a.input.out, &out)
        }
        EscalationRun::Trace(t) => {
            let verified = verify_trace(patch.graph(), &col, &t);
            out.push_str(&t.to_text(verified.is_ok()));
            emit(&a.input.out, &out)?;
            verified.map_err(|e| Failure::Consistency(format!("trace failed verification: {e}")))
        }
    }
}

pub fn validate(a: ValidateArgs) -> CmdResult {
    let mut cfg = RunConfig::new("validate");
    let patch = load(&a.patch, &mut cfg)?;
    let audit = audit_patch(&patch);
    let mut out = cfg.header();
    for f in &audit.findings {
        let _ = writeln!(out, "finding {f}");
    }
    let _ = writeln!(
        out,
        "VALID vertices={} findings={} regenerated={} ok={}",
        patch.num_vertices(),
        audit.findings.len(),
        u8::from(audit.regenerated),
        u8::from(audit.is_clean())
    );
    print!("{out}");
    if !audit.is_clean() {
        return Err(Failure::Input(format!("{} audit findings", audit.findings.len())));
    }
    Ok(())
}
