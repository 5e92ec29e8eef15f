//! Seeded random triangular string presentations.
//!
//! A connected acyclic quiver obeying the degree bound is drawn first. At
//! every vertex a random partial matching between incoming and outgoing
//! arrows decides which length-two paths survive; every other length-two
//! path becomes a relation, which makes the continuation condition hold.
//! Longer relations are then cut out of surviving paths.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::presentation::Presentation;
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    pub max_arrows: usize,
    /// Exactly `vertices - 1` arrows.
    pub tree: bool,
    /// Only length-two relations.
    pub quadratic_only: bool,
    /// Upper bound on attempts to add a longer relation.
    pub long_relations: usize,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            max_arrows: 10,
            tree: false,
            quadratic_only: false,
            long_relations: 3,
        }
    }
}

struct Draft {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
}

impl Draft {
    fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.0 == v).count()
    }

    fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.1 == v).count()
    }
}

fn draw_quiver(rng: &mut ChaCha8Rng, vertices: usize, opts: &GenOptions) -> Option<Draft> {
    // a random order of the vertices serves as the topological order
    let mut order: Vec<usize> = (0..vertices).collect();
    order.shuffle(rng);
    let rank = |v: usize| order.iter().position(|&x| x == v).unwrap();
    let mut d = Draft {
        vertices,
        arrows: Vec::new(),
    };
    // spanning tree: join each vertex to an earlier one, oriented by rank
    for v in 1..vertices {
        let mut candidates: Vec<usize> = (0..v).collect();
        candidates.shuffle(rng);
        let joined = candidates.into_iter().find_map(|u| {
            let (s, t) = if rank(u) < rank(v) { (u, v) } else { (v, u) };
            (d.out_degree(s) < 2 && d.in_degree(t) < 2).then_some((s, t))
        })?;
        d.arrows.push(joined);
    }
    if !opts.tree && vertices > 1 {
        let cap = opts.max_arrows.max(vertices - 1);
        let target = rng.gen_range(vertices - 1..=cap);
        for _ in 0..50 {
            if d.arrows.len() >= target {
                break;
            }
            let x = rng.gen_range(0..vertices);
            let y = rng.gen_range(0..vertices);
            if x == y {
                continue;
            }
            let (s, t) = if rank(x) < rank(y) { (x, y) } else { (y, x) };
            if d.out_degree(s) < 2 && d.in_degree(t) < 2 {
                d.arrows.push((s, t));
            }
        }
    }
    Some(d)
}

fn build_quiver(d: &Draft) -> Quiver {
    let mut q = Quiver::new();
    for v in 0..d.vertices {
        q.add_vertex(format!("v{v}")).expect("fresh name");
    }
    for (i, &(s, t)) in d.arrows.iter().enumerate() {
        q.add_arrow(format!("x{i}"), VertexId(s), VertexId(t)).expect("declared endpoints");
    }
    q
}

fn quadratic_relations(rng: &mut ChaCha8Rng, q: &Quiver) -> Vec<Path> {
    let mut relations = Vec::new();
    for v in q.vertices() {
        let mut ins: Vec<ArrowId> = q.incoming(v).collect();
        let mut outs: Vec<ArrowId> = q.outgoing(v).collect();
        ins.shuffle(rng);
        outs.shuffle(rng);
        let mut kept: Vec<(ArrowId, ArrowId)> = Vec::new();
        for (&a, &b) in ins.iter().zip(&outs) {
            if rng.gen_bool(0.7) {
                kept.push((a, b));
            }
        }
        for &a in &ins {
            for &b in &outs {
                if !kept.contains(&(a, b)) {
                    relations.push(q.path(&[a, b]).expect("meet at v"));
                }
            }
        }
    }
    relations
}

/// A random valid presentation on `vertices` vertices, determined by `seed`.
pub fn random_presentation(seed: u64, vertices: usize, opts: GenOptions) -> Presentation {
    assert!(vertices >= 1, "at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let Some(draft) = draw_quiver(&mut rng, vertices, &opts) else {
            continue;
        };
        let q = build_quiver(&draft);
        let mut relations = quadratic_relations(&mut rng, &q);
        if !opts.quadratic_only {
            for _ in 0..opts.long_relations {
                let current = Presentation::new(q.clone(), relations.clone());
                let Ok(basis) = current.basis() else { break };
                let long: Vec<&Path> = basis
                    .paths()
                    .iter()
                    .filter(|p| p.len() >= 3 && !relations.iter().any(|r| r.contains(p)))
                    .collect();
                if let Some(&w) = long.choose(&mut rng) {
                    if rng.gen_bool(0.6) {
                        relations.push(w.clone());
                    }
                }
            }
        }
        relations.sort();
        let p = Presentation::new(q, relations);
        if p.validate().overall {
            return p;
        }
    }
}
