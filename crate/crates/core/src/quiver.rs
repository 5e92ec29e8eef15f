//! Finite quivers and their paths.
//!
//! Paths compose left to right: `a1 a2 ... al` with `t(a_i) = s(a_{i+1})`.
//! A path stores its full vertex sequence, so slicing and division do not
//! need the ambient quiver.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("cannot compose: path ends at vertex {left_target} but next path starts at {right_source}")]
    NotComposable { left_target: usize, right_source: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown arrow {0}")]
    UnknownArrow(usize),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("quiver has an oriented cycle through vertex {0}")]
    Cyclic(usize),
    #[error("a nontrivial path needs at least one arrow")]
    EmptyPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed multigraph. Ids are dense and follow declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, QuiverError> {
        let name = name.into();
        if self.vertex_by_name(&name).is_some() {
            return Err(QuiverError::DuplicateName(name));
        }
        self.vertices.push(name);
        Ok(VertexId(self.vertices.len() - 1))
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        source: VertexId,
        target: VertexId,
    ) -> Result<ArrowId, QuiverError> {
        let name = name.into();
        for v in [source, target] {
            if v.0 >= self.vertices.len() {
                return Err(QuiverError::UnknownVertex(v.0));
            }
        }
        if self.arrow_by_name(&name).is_some() {
            return Err(QuiverError::DuplicateName(name));
        }
        self.arrows.push(Arrow { name, source, target });
        Ok(ArrowId(self.arrows.len() - 1))
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.arrow(a).source == v)
    }

    pub fn incoming(&self, v: VertexId) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(move |&a| self.arrow(a).target == v)
    }

    pub fn trivial_path(&self, v: VertexId) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        let arrow = self.arrow(a);
        Path {
            vertices: vec![arrow.source, arrow.target],
            arrows: vec![a],
        }
    }

    /// Builds the path through the given arrows, checking composability.
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        let (first, rest) = match arrows.split_first() {
            Some(split) => split,
            None => return Err(QuiverError::EmptyPath),
        };
        if first.0 >= self.arrows.len() {
            return Err(QuiverError::UnknownArrow(first.0));
        }
        let mut path = self.arrow_path(*first);
        for &a in rest {
            if a.0 >= self.arrows.len() {
                return Err(QuiverError::UnknownArrow(a.0));
            }
            path = path.compose(&self.arrow_path(a))?;
        }
        Ok(path)
    }

    /// True iff there is no oriented cycle; a loop counts as a cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    /// Kahn's algorithm. On failure reports some vertex lying on a cycle.
    pub fn topological_order(&self) -> Result<Vec<VertexId>, QuiverError> {
        let n = self.vertices.len();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.target.0] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(VertexId(v));
            for a in &self.arrows {
                if a.source.0 == v {
                    indegree[a.target.0] -= 1;
                    if indegree[a.target.0] == 0 {
                        queue.push_back(a.target.0);
                    }
                }
            }
        }
        if order.len() == n {
            Ok(order)
        } else {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            Err(QuiverError::Cyclic(stuck))
        }
    }

    /// True iff the underlying undirected graph is connected (and nonempty).
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let next = if a.source.0 == v {
                    a.target.0
                } else if a.target.0 == v {
                    a.source.0
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Every path of an acyclic quiver, ordered by length then arrow ids.
    pub fn enumerate_paths(&self) -> Result<Vec<Path>, QuiverError> {
        self.topological_order()?;
        self.enumerate_paths_where(|_| true)
    }

    /// Paths all of whose factors satisfy `keep`. `keep` must be
    /// factor-closed for the result to be complete.
    pub(crate) fn enumerate_paths_where(
        &self,
        keep: impl Fn(&Path) -> bool,
    ) -> Result<Vec<Path>, QuiverError> {
        self.topological_order()?;
        let mut all: Vec<Path> = self.vertices().map(Path::trivial).filter(|p| keep(p)).collect();
        let mut frontier: Vec<Path> = self
            .arrow_ids()
            .map(|a| self.arrow_path(a))
            .filter(|p| keep(p))
            .collect();
        while !frontier.is_empty() {
            frontier.sort();
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.outgoing(p.target()) {
                    let longer = p.compose(&self.arrow_path(a)).expect("outgoing arrow composes");
                    if keep(&longer) {
                        next.push(longer);
                    }
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        Ok(all)
    }

    /// Paths from a vertex without incoming arrows to one without outgoing
    /// arrows. Every path of an acyclic quiver is a factor of one of these.
    pub fn maximal_paths(&self) -> Result<Vec<Path>, QuiverError> {
        self.topological_order()?;
        let mut out = Vec::new();
        for v in self.vertices() {
            if self.incoming(v).next().is_some() {
                continue;
            }
            let mut stack = vec![Path::trivial(v)];
            while let Some(p) = stack.pop() {
                let mut extended = false;
                for a in self.outgoing(p.target()) {
                    extended = true;
                    stack.push(p.compose(&self.arrow_path(a)).expect("composes"));
                }
                if !extended {
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e_{}", self.vertex_name(p.source()))
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrow(a).name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// A path in a quiver. `vertices` has exactly one more entry than `arrows`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<VertexId>,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Path {
            vertices: vec![v],
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn target(&self) -> VertexId {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn vertices_along(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn first_arrow(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source() == other.source() && self.target() == other.target()
    }

    pub fn compose(&self, other: &Path) -> Result<Path, QuiverError> {
        if self.target() != other.source() {
            return Err(QuiverError::NotComposable {
                left_target: self.target().0,
                right_source: other.source().0,
            });
        }
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices[1..]);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Ok(Path { vertices, arrows })
    }

    /// The factor between vertex positions `from` and `to` (inclusive).
    pub fn subpath(&self, from: usize, to: usize) -> Path {
        assert!(from <= to && to <= self.len(), "subpath {from}..{to} of length {}", self.len());
        Path {
            vertices: self.vertices[from..=to].to_vec(),
            arrows: self.arrows[from..to].to_vec(),
        }
    }

    pub fn prefix(&self, len: usize) -> Path {
        self.subpath(0, len)
    }

    pub fn suffix(&self, len: usize) -> Path {
        self.subpath(self.len() - len, self.len())
    }

    /// Start positions at which `needle` occurs as a factor of `self`.
    pub fn occurrence_positions(&self, needle: &Path) -> Vec<usize> {
        if needle.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - needle.len())
            .filter(|&i| {
                self.vertices[i] == needle.source()
                    && self.arrows[i..i + needle.len()] == needle.arrows[..]
            })
            .collect()
    }

    /// All factorizations `self = L · needle · R`, by occurrence start.
    pub fn occurrences(&self, needle: &Path) -> Vec<(Path, Path)> {
        self.occurrence_positions(needle)
            .into_iter()
            .map(|i| (self.subpath(0, i), self.subpath(i + needle.len(), self.len())))
            .collect()
    }

    /// Whether `needle` is a factor of `self` (trivial cofactors allowed).
    pub fn contains(&self, needle: &Path) -> bool {
        !self.occurrence_positions(needle).is_empty()
    }

    /// Division in the strict sense: a factor with at least one nontrivial cofactor.
    pub fn strictly_divides(&self, w: &Path) -> bool {
        self.len() < w.len() && w.contains(self)
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "e{}", self.source().0)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| format!("#{}", a.0)).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}
