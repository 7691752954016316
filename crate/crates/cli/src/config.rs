//! Run configuration and output plumbing shared by every subcommand.

use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use quasitree_core::format::read_patch;
use quasitree_core::PlanarPatch;

/// How a run ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable or malformed input.
    Input(String),
    /// A requested ball exceeds what the patch certifies.
    Certification(String),
    /// A construction that must succeed did not, or an audit failed.
    Consistency(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Certification(_) => 3,
            Failure::Consistency(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "invalid input: {m}"),
            Failure::Certification(m) => write!(f, "certification: {m}"),
            Failure::Consistency(m) => write!(f, "consistency failure: {m}"),
        }
    }
}

impl From<quasitree_core::Error> for Failure {
    fn from(e: quasitree_core::Error) -> Self {
        use quasitree_core::Error as E;
        match e {
            E::Certification(_) => Failure::Certification(e.to_string()),
            E::Consistency(_) => Failure::Consistency(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

/// Everything that determines a run, written at the top of every output.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub subcommand: &'static str,
    entries: Vec<(String, String)>,
    input_sha256: Option<String>,
}

impl RunConfig {
    pub fn new(subcommand: &'static str) -> Self {
        RunConfig {
            subcommand,
            entries: Vec::new(),
            input_sha256: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn set_input_hash(&mut self, hash: String) {
        self.input_sha256 = Some(hash);
    }

    /// `# run ...` and `# input sha256=...` comment lines.
    pub fn header(&self) -> String {
        let mut out = format!("# run subcommand={}", self.subcommand);
        let mut entries = self.entries.clone();
        entries.sort();
        for (k, v) in &entries {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        if let Some(h) = &self.input_sha256 {
            out.push_str(&format!("# input sha256={h}\n"));
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a patch file, recording its hash and generator line in the config.
pub fn load(path: &Path, cfg: &mut RunConfig) -> CmdResult<PlanarPatch> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    cfg.set_input_hash(sha256_hex(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{} is not UTF-8", path.display())))?;
    let patch = read_patch(&text)?;
    if let Some(spec) = patch.provenance().iter().find(|l| l.starts_with("family=")) {
        cfg.set("patch", spec.replace(' ', ","));
    }
    Ok(patch)
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: &Option<PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
