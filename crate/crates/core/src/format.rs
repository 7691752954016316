//! The `planar-patch v1` text format.
//!
//! ```text
//! planar-patch v1
//! # family=lattice radius=3 seed=0
//! vertices 37 edges 90
//! outer 19 20
//! centers 0
//! cert_radius 3
//! triangulation 1
//! 0: 1 2 3 4 5 6
//! ...
//! ```
//!
//! Comment lines between the header and the `vertices` line carry
//! provenance. Writing then reading a patch reproduces it exactly.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::patch::{Dart, PlanarPatch};

pub const HEADER: &str = "planar-patch v1";

pub fn write_patch(patch: &PlanarPatch) -> String {
    let g = patch.graph();
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for line in patch.provenance() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "vertices {} edges {}", g.num_vertices(), g.num_edges());
    let outer = patch.outer_dart();
    let _ = writeln!(out, "outer {} {}", outer.from, outer.to);
    out.push_str("centers");
    for c in patch.centers() {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
    let _ = writeln!(out, "cert_radius {}", patch.cert_radius());
    let _ = writeln!(out, "triangulation {}", u8::from(patch.is_triangulation()));
    for v in 0..g.num_vertices() {
        let _ = write!(out, "{v}:");
        for w in g.neighbors(v) {
            let _ = write!(out, " {w}");
        }
        out.push('\n');
    }
    out
}

pub fn save_patch(patch: &PlanarPatch, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_patch(patch))?;
    Ok(())
}

pub fn load_patch(path: impl AsRef<Path>) -> Result<PlanarPatch> {
    read_patch(&std::fs::read_to_string(path)?)
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.inner.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l)
            }
            None => Err(Error::Parse {
                line: self.line + 1,
                msg: format!("unexpected end of file, expected {what}"),
            }),
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn keyed(&mut self, key: &str) -> Result<Vec<usize>> {
        let l = self.next(key)?;
        let rest = l
            .strip_prefix(key)
            .filter(|r| r.is_empty() || r.starts_with(' '))
            .ok_or_else(|| self.err(format!("expected `{key}`")))?;
        self.numbers(rest)
    }

    fn numbers(&self, s: &str) -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| t.parse().map_err(|_| self.err(format!("bad integer `{t}`"))))
            .collect()
    }
}

pub fn read_patch(text: &str) -> Result<PlanarPatch> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    if lines.next("header")? != HEADER {
        return Err(lines.err(format!("expected header `{HEADER}`")));
    }
    let mut provenance = Vec::new();
    let counts_line = loop {
        let l = lines.next("vertices line")?;
        match l.strip_prefix("# ") {
            Some(p) => provenance.push(p.to_string()),
            None => break l,
        }
    };
    let toks: Vec<&str> = counts_line.split_whitespace().collect();
    let (n, m) = match toks.as_slice() {
        ["vertices", n, "edges", m] => (
            n.parse::<usize>().map_err(|_| lines.err("bad vertex count"))?,
            m.parse::<usize>().map_err(|_| lines.err("bad edge count"))?,
        ),
        _ => return Err(lines.err("expected `vertices N edges M`")),
    };
    let outer = lines.keyed("outer")?;
    if outer.len() != 2 {
        return Err(lines.err("outer needs two vertices"));
    }
    let centers = lines.keyed("centers")?;
    let cert = lines.keyed("cert_radius")?;
    let cert_radius = match cert.as_slice() {
        [r] => u32::try_from(*r).map_err(|_| lines.err("cert_radius out of range"))?,
        _ => return Err(lines.err("cert_radius needs one value")),
    };
    let triangulation = match lines.keyed("triangulation")?.as_slice() {
        [0] => false,
        [1] => true,
        _ => return Err(lines.err("triangulation must be 0 or 1")),
    };
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let l = lines.next("rotation line")?;
        let (label, rest) = l.split_once(':').ok_or_else(|| lines.err("expected `v: neighbors`"))?;
        if label.parse::<usize>().ok() != Some(v) {
            return Err(lines.err(format!("expected rotation of vertex {v}")));
        }
        rotation.push(lines.numbers(rest)?);
    }
    if let Some((i, l)) = lines.inner.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::Parse {
            line: i + 1,
            msg: format!("trailing content `{l}`"),
        });
    }
    let graph = Graph::from_rotation(rotation)?;
    if graph.num_edges() != m {
        return Err(Error::Parse {
            line: 2 + provenance.len(),
            msg: format!("declared {m} edges, rotation has {}", graph.num_edges()),
        });
    }
    let patch = PlanarPatch::new(graph, Dart::new(outer[0], outer[1]), centers, cert_radius, triangulation)?;
    Ok(patch.with_provenance(provenance))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "planar-patch v1\n# family=test\nvertices 4 edges 4\nouter 0 3\ncenters 0\ncert_radius 1\ntriangulation 0\n0: 1 3\n1: 2 0\n2: 3 1\n3: 0 2\n";

    #[test]
    fn round_trip_is_exact() {
        let p = read_patch(SQUARE).unwrap();
        assert_eq!(p.provenance_value("family"), Some("test"));
        assert_eq!(write_patch(&p), SQUARE);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = SQUARE.replace("cert_radius 1", "cert_radius x");
        match read_patch(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
        assert!(read_patch("planar-patch v2\n").is_err());
        let wrong_count = SQUARE.replace("edges 4", "edges 5");
        assert!(read_patch(&wrong_count).is_err());
        let truncated: String = SQUARE.lines().take(9).map(|l| format!("{l}\n")).collect();
        assert!(read_patch(&truncated).is_err());
    }
}
