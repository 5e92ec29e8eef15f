//! Seeded corpora and verdict bookkeeping for the acceptance target.
//!
//! This package sorts after the others in the workspace, so a failing
//! acceptance criterion does not stop the remaining test targets.

use hhstring::generate::{random_presentation, GenOptions};
use hhstring::{CochainComplex, Presentation, StringAlgebra};

pub const CORPUS: u64 = 120;
pub const TREES: u64 = 20;
pub const QUADRATIC: u64 = 40;

pub struct Verdict {
    pub id: usize,
    pub title: &'static str,
    pub failures: Vec<String>,
    pub checked: usize,
}

impl Verdict {
    pub fn new(id: usize, title: &'static str) -> Self {
        Verdict {
            id,
            title,
            failures: Vec::new(),
            checked: 0,
        }
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn line(&self) -> String {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("[{mark}] {}. {} ({} checks", self.id, self.title, self.checked);
        if !self.passed() {
            s.push_str(&format!(", {} failed; first: {}", self.failures.len(), self.failures[0]));
        }
        s.push(')');
        s
    }
}

pub fn complex(p: Presentation) -> CochainComplex {
    CochainComplex::new(&StringAlgebra::new(p).expect("generator output is valid")).expect("complex builds")
}

fn vertices(seed: u64) -> usize {
    2 + (seed % 7) as usize
}

/// Presentations on 2..=8 vertices with varying relation lengths.
pub fn corpus() -> Vec<(u64, CochainComplex)> {
    (0..CORPUS)
        .map(|seed| {
            let opts = GenOptions {
                long_relations: (seed % 4) as usize,
                ..Default::default()
            };
            (seed, complex(random_presentation(seed, vertices(seed), opts)))
        })
        .collect()
}

pub fn tree_corpus() -> Vec<(u64, CochainComplex)> {
    (0..TREES)
        .map(|seed| {
            let opts = GenOptions {
                tree: true,
                ..Default::default()
            };
            (seed, complex(random_presentation(seed, vertices(seed), opts)))
        })
        .collect()
}

/// Quadratic-only presentations, plus the quadratic members of `base`.
pub fn quadratic_corpus(base: &[(u64, CochainComplex)]) -> Vec<(u64, CochainComplex)> {
    let opts = GenOptions {
        quadratic_only: true,
        ..Default::default()
    };
    let mut out: Vec<(u64, CochainComplex)> = (0..QUADRATIC)
        .map(|i| (1000 + i, complex(random_presentation(1000 + i, vertices(i), opts))))
        .collect();
    for (seed, cx) in base {
        if cx.algebra().relations().iter().all(|r| r.len() == 2) {
            out.push((*seed, complex(cx.algebra().presentation().clone())));
        }
    }
    out
}
