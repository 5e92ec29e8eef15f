//! Monomial presentations `kQ/I`: the text format, hypothesis checks and
//! the path basis of the quotient.
//!
//! The text format is line oriented, `#` starts a comment:
//!
//! ```text
//! vertex 0 1 2
//! arrow a1 0 1
//! arrow a2 1 2
//! relation a1 a2
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{ArrowId, Path, Quiver, QuiverError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive `{0}`")]
    UnknownDirective(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("`{directive}` expects {expected}")]
    Arity { directive: &'static str, expected: &'static str },
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation must have length at least 2")]
    RelationTooShort,
    #[error("arrows `{left}` and `{right}` do not compose")]
    NotComposable { left: String, right: String },
}

/// A quiver with a set of monomial relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Path>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Path>) -> Self {
        Presentation { quiver, relations }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    /// Monomial ideal membership: some relation is a factor of `w`.
    pub fn in_ideal(&self, w: &Path) -> bool {
        self.relations.iter().any(|r| w.contains(r))
    }

    /// The paths not in the ideal, by length then arrow ids.
    pub fn basis(&self) -> Result<PathBasis, QuiverError> {
        let paths = self.quiver.enumerate_paths_where(|p| !self.in_ideal(p))?;
        Ok(PathBasis::from_sorted(paths))
    }

    pub fn validate(&self) -> ValidationReport {
        let q = &self.quiver;
        let mut checks = Vec::new();

        let acyclic = q.topological_order();
        checks.push(Check::new(
            "acyclic",
            acyclic.is_ok(),
            match &acyclic {
                Ok(_) => "no oriented cycles".to_string(),
                Err(e) => e.to_string(),
            },
        ));

        checks.push(Check::new(
            "connected",
            q.is_connected(),
            if q.is_connected() {
                "underlying graph is connected".to_string()
            } else {
                "underlying graph is not connected".to_string()
            },
        ));

        let short: Vec<String> = self
            .relations
            .iter()
            .filter(|r| r.len() < 2)
            .map(|r| q.display_path(r))
            .collect();
        checks.push(Check::new(
            "relation-length",
            short.is_empty(),
            if short.is_empty() {
                "all relations have length >= 2".to_string()
            } else {
                format!("relations of length < 2: {}", short.join(", "))
            },
        ));

        let mut redundant = Vec::new();
        for (i, r) in self.relations.iter().enumerate() {
            for (j, s) in self.relations.iter().enumerate() {
                if i != j && (s.contains(r) && (r.len() < s.len() || i < j)) {
                    redundant.push(format!("`{}` divides `{}`", q.display_path(r), q.display_path(s)));
                }
            }
        }
        checks.push(Check::new(
            "minimal-relations",
            redundant.is_empty(),
            if redundant.is_empty() {
                "no relation divides another".to_string()
            } else {
                redundant.join("; ")
            },
        ));

        let mut s1 = Vec::new();
        for v in q.vertices() {
            let out = q.outgoing(v).count();
            let inc = q.incoming(v).count();
            if out > 2 || inc > 2 {
                s1.push(format!("vertex `{}` ({out} out, {inc} in)", q.vertex_name(v)));
            }
        }
        checks.push(Check::new(
            "S1",
            s1.is_empty(),
            if s1.is_empty() {
                "every vertex has at most two arrows in and two out".to_string()
            } else {
                s1.join("; ")
            },
        ));

        let mut s2 = Vec::new();
        for a in q.arrow_ids() {
            let alpha = q.arrow_path(a);
            let right: Vec<ArrowId> = q
                .outgoing(q.arrow(a).target)
                .filter(|&b| !self.in_ideal(&alpha.compose(&q.arrow_path(b)).unwrap()))
                .collect();
            let left: Vec<ArrowId> = q
                .incoming(q.arrow(a).source)
                .filter(|&b| !self.in_ideal(&q.arrow_path(b).compose(&alpha).unwrap()))
                .collect();
            let name = &q.arrow(a).name;
            if right.len() > 1 {
                s2.push(format!("arrow `{name}` has {} nonzero right continuations", right.len()));
            }
            if left.len() > 1 {
                s2.push(format!("arrow `{name}` has {} nonzero left continuations", left.len()));
            }
        }
        checks.push(Check::new(
            "S2",
            s2.is_empty(),
            if s2.is_empty() {
                "every arrow has at most one nonzero continuation on each side".to_string()
            } else {
                s2.join("; ")
            },
        ));

        ValidationReport::new(checks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl ValidationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        ValidationReport { checks, overall }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "[{mark}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// The ordered set of paths outside the ideal; their classes form a basis of `kQ/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathBasis {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl PathBasis {
    fn from_sorted(mut paths: Vec<Path>) -> Self {
        paths.sort();
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PathBasis { paths, index }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn get(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    pub fn from(&self, v: VertexId) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(move |p| p.source() == v)
    }

    pub fn to(&self, v: VertexId) -> impl Iterator<Item = &Path> {
        self.paths.iter().filter(move |p| p.target() == v)
    }

    pub fn parallel_to<'a>(&'a self, p: &'a Path) -> impl Iterator<Item = &'a Path> + 'a {
        self.paths.iter().filter(move |g| g.is_parallel(p))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("presentation failed validation:\n{0}")]
pub struct InvalidPresentation(pub ValidationReport);

/// A presentation that passed every check, together with its path basis.
#[derive(Debug, Clone)]
pub struct StringAlgebra {
    presentation: Presentation,
    basis: PathBasis,
}

impl StringAlgebra {
    pub fn new(presentation: Presentation) -> Result<Self, InvalidPresentation> {
        let report = presentation.validate();
        if !report.overall {
            return Err(InvalidPresentation(report));
        }
        let basis = presentation.basis().expect("validated presentations are acyclic");
        Ok(StringAlgebra { presentation, basis })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn relations(&self) -> &[Path] {
        self.presentation.relations()
    }

    pub fn basis(&self) -> &PathBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The product of two basis paths in the algebra; `None` means zero.
    pub fn multiply(&self, left: &Path, right: &Path) -> Option<Path> {
        let p = left.compose(right).ok()?;
        self.basis.contains(&p).then_some(p)
    }

    /// Whether `w` survives in the algebra.
    pub fn is_nonzero(&self, w: &Path) -> bool {
        self.basis.contains(w)
    }

    /// `Q1 · γ ⊆ I`: every arrow ending at `s(γ)` kills `γ` from the left.
    pub fn left_killed(&self, gamma: &Path) -> bool {
        let q = self.quiver();
        q.incoming(gamma.source())
            .all(|a| self.multiply(&q.arrow_path(a), gamma).is_none())
    }

    /// `γ · Q1 ⊆ I`.
    pub fn right_killed(&self, gamma: &Path) -> bool {
        let q = self.quiver();
        q.outgoing(gamma.target())
            .all(|a| self.multiply(gamma, &q.arrow_path(a)).is_none())
    }

    /// The longest path length of the quiver; an upper bound for nonempty degrees.
    pub fn longest_path(&self) -> usize {
        self.quiver()
            .maximal_paths()
            .expect("acyclic")
            .iter()
            .map(Path::len)
            .max()
            .unwrap_or(0)
    }
}

fn valid_name(tok: &str) -> bool {
    !tok.is_empty() && tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the presentation format. Structural hypotheses are left to
/// [`Presentation::validate`].
pub fn parse(text: &str) -> Result<Presentation, ParseError> {
    let mut quiver = Quiver::new();
    let mut relations = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokenize(line);
        let Some(&(dcol, directive)) = tokens.first() else {
            continue;
        };
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: lineno + 1,
            column,
            kind,
        };
        let args = &tokens[1..];
        for &(col, tok) in args {
            if !valid_name(tok) {
                return Err(err(col, ParseErrorKind::InvalidName(tok.to_string())));
            }
        }
        match directive {
            "vertex" => {
                if args.is_empty() {
                    return Err(err(dcol, ParseErrorKind::Arity {
                        directive: "vertex",
                        expected: "at least one name",
                    }));
                }
                for &(col, name) in args {
                    quiver
                        .add_vertex(name)
                        .map_err(|_| err(col, ParseErrorKind::Duplicate(name.to_string())))?;
                }
            }
            "arrow" => {
                let [(ncol, name), (scol, src), (tcol, tgt)] = args else {
                    return Err(err(dcol, ParseErrorKind::Arity {
                        directive: "arrow",
                        expected: "a name, a source and a target",
                    }));
                };
                let s = quiver
                    .vertex_by_name(src)
                    .ok_or_else(|| err(*scol, ParseErrorKind::UnknownVertex(src.to_string())))?;
                let t = quiver
                    .vertex_by_name(tgt)
                    .ok_or_else(|| err(*tcol, ParseErrorKind::UnknownVertex(tgt.to_string())))?;
                quiver
                    .add_arrow(*name, s, t)
                    .map_err(|_| err(*ncol, ParseErrorKind::Duplicate(name.to_string())))?;
            }
            "relation" => {
                if args.len() < 2 {
                    return Err(err(dcol, ParseErrorKind::RelationTooShort));
                }
                let mut ids = Vec::with_capacity(args.len());
                for &(col, name) in args {
                    let id = quiver
                        .arrow_by_name(name)
                        .ok_or_else(|| err(col, ParseErrorKind::UnknownArrow(name.to_string())))?;
                    ids.push((col, id));
                }
                for pair in ids.windows(2) {
                    let (a, b) = (pair[0].1, pair[1].1);
                    if quiver.arrow(a).target != quiver.arrow(b).source {
                        return Err(err(pair[1].0, ParseErrorKind::NotComposable {
                            left: quiver.arrow(a).name.clone(),
                            right: quiver.arrow(b).name.clone(),
                        }));
                    }
                }
                let arrows: Vec<ArrowId> = ids.iter().map(|&(_, id)| id).collect();
                relations.push(quiver.path(&arrows).expect("checked composable"));
            }
            other => {
                return Err(err(dcol, ParseErrorKind::UnknownDirective(other.to_string())));
            }
        }
    }
    Ok(Presentation::new(quiver, relations))
}

/// Whitespace tokens with their 1-based character columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

/// Renders a presentation back into the text format.
pub fn render(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    let names: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
    out.push_str(&format!("vertex {}\n", names.join(" ")));
    for a in q.arrow_ids() {
        let arrow = q.arrow(a);
        out.push_str(&format!(
            "arrow {} {} {}\n",
            arrow.name,
            q.vertex_name(arrow.source),
            q.vertex_name(arrow.target)
        ));
    }
    for r in p.relations() {
        out.push_str(&format!("relation {}\n", q.display_path(r)));
    }
    out
}

/// The double-arrow line `A_n`: `0 ⇉ 1 ⇉ ... ⇉ n` with relations
/// `a_i a_{i+1}` and `b_i b_{i+1}`.
pub fn double_line(n: usize) -> Presentation {
    let mut text = String::from("vertex");
    for i in 0..=n {
        text.push_str(&format!(" {i}"));
    }
    text.push('\n');
    for i in 1..=n {
        text.push_str(&format!("arrow a{i} {} {i}\narrow b{i} {} {i}\n", i - 1, i - 1));
    }
    for i in 1..n {
        text.push_str(&format!("relation a{i} a{}\nrelation b{i} b{}\n", i + 1, i + 1));
    }
    parse(&text).expect("generated text parses")
}
