//! Bardzell's minimal bimodule resolution of a monomial algebra.
//!
//! `AP_n` is built from greedy chains of overlapping relations along the
//! maximal paths of the quiver. Positions along a path are vertex indices,
//! so a relation occurring in `T` is a [`Span`] `start..end` of `T`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{Rational, RationalMatrix};
use crate::presentation::{Presentation, StringAlgebra};
use crate::quiver::{Path, Quiver};
use crate::ComputeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// An element of `AP_n` together with both of its defining chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApElement {
    degree: usize,
    support: Path,
    chain: Vec<Span>,
    op_chain: Vec<Span>,
}

impl ApElement {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &Path {
        &self.support
    }

    /// Positions of `p_1, ..., p_{n-1}` inside the support.
    pub fn chain_spans(&self) -> &[Span] {
        &self.chain
    }

    /// Positions of `q^1, ..., q^{n-1}` inside the support, left to right.
    pub fn op_chain_spans(&self) -> &[Span] {
        &self.op_chain
    }

    pub fn chain(&self) -> Vec<Path> {
        self.chain.iter().map(|s| self.support.subpath(s.start, s.end)).collect()
    }

    pub fn op_chain(&self) -> Vec<Path> {
        self.op_chain.iter().map(|s| self.support.subpath(s.start, s.end)).collect()
    }

    /// Whether some relation of the chain has length two.
    pub fn has_quadratic_relation(&self) -> bool {
        self.chain.iter().any(|s| s.end - s.start == 2)
    }
}

/// Occurrences of the relations along `t`, sorted by start. Minimality of
/// the relation set makes starts and ends strictly increasing together;
/// a repeated start or end means the greedy choices are not determined.
fn relation_spans(t: &Path, relations: &[Path], q: &Quiver) -> Result<Vec<Span>, ComputeError> {
    let mut spans: Vec<Span> = relations
        .iter()
        .flat_map(|r| {
            t.occurrence_positions(r).into_iter().map(move |i| Span {
                start: i,
                end: i + r.len(),
            })
        })
        .collect();
    spans.sort();
    for w in spans.windows(2) {
        if w[0].start == w[1].start || w[0].end >= w[1].end {
            return Err(ComputeError::AmbiguousChoice {
                degree: 2,
                path: q.display_path(t),
            });
        }
    }
    Ok(spans)
}

/// The forward greedy chain starting at `spans[first]`.
fn forward_chain(spans: &[Span], first: usize) -> Vec<Span> {
    let mut chain = vec![spans[first]];
    loop {
        let j = chain.len();
        let cur = chain[j - 1];
        let lower = if j == 1 { cur.start + 1 } else { chain[j - 2].end };
        // spans are sorted by start, so the first hit is the s-minimal one
        match spans.iter().find(|p| p.start >= lower && p.start < cur.end) {
            Some(&p) => chain.push(p),
            None => return chain,
        }
    }
}

/// The dual greedy chain `q_1, q_2, ...` ending at `spans[first]`.
fn op_chain(spans: &[Span], first: usize) -> Vec<Span> {
    let mut chain = vec![spans[first]];
    loop {
        let j = chain.len();
        let cur = chain[j - 1];
        let hit = |p: &&Span| {
            if j == 1 {
                p.end > cur.start && p.end < cur.end
            } else {
                p.end > cur.start && p.end <= chain[j - 2].start
            }
        };
        // ends increase with starts, so the last hit is the t-maximal one
        match spans.iter().rev().find(hit) {
            Some(&p) => chain.push(p),
            None => return chain,
        }
    }
}

fn shift(spans: &[Span], by: usize) -> Vec<Span> {
    spans
        .iter()
        .map(|s| Span {
            start: s.start - by,
            end: s.end - by,
        })
        .collect()
}

type ChainsByDegree = BTreeMap<usize, BTreeMap<Path, Vec<Span>>>;

fn insert_chain(
    table: &mut ChainsByDegree,
    degree: usize,
    support: Path,
    chain: Vec<Span>,
    q: &Quiver,
) -> Result<(), ComputeError> {
    let slot = table.entry(degree).or_default();
    match slot.get(&support) {
        Some(existing) if *existing != chain => Err(ComputeError::ConflictingChains {
            support: q.display_path(&support),
        }),
        Some(_) => Ok(()),
        None => {
            slot.insert(support, chain);
            Ok(())
        }
    }
}

/// Supports of `n`-concatenations for `n >= 2`, with relative chains.
fn forward_supports(p: &Presentation, n_max: usize) -> Result<ChainsByDegree, ComputeError> {
    let q = p.quiver();
    let mut table = ChainsByDegree::new();
    for t in q.maximal_paths().map_err(|_| ComputeError::DegreeOutOfRange { degree: 0 })? {
        let spans = relation_spans(&t, p.relations(), q)?;
        for first in 0..spans.len() {
            let chain = forward_chain(&spans, first);
            for k in 1..=chain.len() {
                let degree = k + 1;
                if degree > n_max {
                    break;
                }
                let (s, e) = (chain[0].start, chain[k - 1].end);
                insert_chain(&mut table, degree, t.subpath(s, e), shift(&chain[..k], s), q)?;
            }
        }
    }
    Ok(table)
}

/// Supports of `n`-op-concatenations for `n >= 2`; chains stored as `q^1, ..., q^{n-1}`.
fn op_supports(p: &Presentation, n_max: usize) -> Result<ChainsByDegree, ComputeError> {
    let q = p.quiver();
    let mut table = ChainsByDegree::new();
    for t in q.maximal_paths().map_err(|_| ComputeError::DegreeOutOfRange { degree: 0 })? {
        let spans = relation_spans(&t, p.relations(), q)?;
        for first in 0..spans.len() {
            let chain = op_chain(&spans, first);
            for k in 1..=chain.len() {
                let degree = k + 1;
                if degree > n_max {
                    break;
                }
                let (s, e) = (chain[k - 1].start, chain[0].end);
                let mut left_to_right: Vec<Span> = chain[..k].to_vec();
                left_to_right.reverse();
                insert_chain(&mut table, degree, t.subpath(s, e), shift(&left_to_right, s), q)?;
            }
        }
    }
    Ok(table)
}

fn low_degrees(q: &Quiver) -> Vec<Vec<Path>> {
    let mut ap0: Vec<Path> = q.vertices().map(Path::trivial).collect();
    ap0.sort();
    let mut ap1: Vec<Path> = q.arrow_ids().map(|a| q.arrow_path(a)).collect();
    ap1.sort();
    vec![ap0, ap1]
}

fn collect_supports(q: &Quiver, table: &ChainsByDegree, n_max: usize) -> Vec<Vec<Path>> {
    let mut out = low_degrees(q);
    out.truncate(n_max + 1);
    for n in 2..=n_max {
        if out.last().is_some_and(Vec::is_empty) {
            break;
        }
        out.push(table.get(&n).map(|m| m.keys().cloned().collect()).unwrap_or_default());
    }
    out
}

/// Supports of `AP_0, ..., AP_{n_max}` by the forward construction, each degree
/// in canonical path order. Stops after the first empty degree.
pub fn ap_sets(p: &Presentation, n_max: usize) -> Result<Vec<Vec<Path>>, ComputeError> {
    Ok(collect_supports(p.quiver(), &forward_supports(p, n_max)?, n_max))
}

/// The same sets by the dual construction.
pub fn ap_op_sets(p: &Presentation, n_max: usize) -> Result<Vec<Vec<Path>>, ComputeError> {
    Ok(collect_supports(p.quiver(), &op_supports(p, n_max)?, n_max))
}

/// The dual chain of a support, computed on the support alone.
fn op_chain_of(support: &Path, degree: usize, p: &Presentation) -> Result<Vec<Span>, ComputeError> {
    let q = p.quiver();
    let spans = relation_spans(support, p.relations(), q)?;
    let missing = || ComputeError::MissingElement {
        degree,
        support: q.display_path(support),
    };
    let last = spans.iter().position(|s| s.end == support.len()).ok_or_else(missing)?;
    let chain = op_chain(&spans, last);
    let reach = chain.iter().position(|s| s.start == 0).ok_or_else(missing)?;
    if reach + 2 != degree {
        return Err(missing());
    }
    let mut out = chain[..=reach].to_vec();
    out.reverse();
    Ok(out)
}

/// `AP_n` for every degree up to the first empty one.
#[derive(Debug, Clone)]
pub struct ApTable {
    degrees: Vec<Vec<ApElement>>,
    index: Vec<HashMap<Path, usize>>,
}

impl ApTable {
    pub fn new(p: &Presentation) -> Result<Self, ComputeError> {
        let q = p.quiver();
        let longest = q
            .maximal_paths()
            .map_err(|_| ComputeError::DegreeOutOfRange { degree: 0 })?
            .iter()
            .map(Path::len)
            .max()
            .unwrap_or(0);
        let n_max = longest + 1;
        let table = forward_supports(p, n_max)?;
        let supports = collect_supports(q, &table, n_max);
        let mut degrees = Vec::with_capacity(supports.len());
        for (n, level) in supports.into_iter().enumerate() {
            let mut elems = Vec::with_capacity(level.len());
            for support in level {
                let (chain, op) = if n < 2 {
                    (Vec::new(), Vec::new())
                } else {
                    (table[&n][&support].clone(), op_chain_of(&support, n, p)?)
                };
                elems.push(ApElement {
                    degree: n,
                    support,
                    chain,
                    op_chain: op,
                });
            }
            degrees.push(elems);
        }
        if !degrees.last().is_some_and(Vec::is_empty) {
            degrees.push(Vec::new());
        }
        let index = degrees
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, e)| (e.support.clone(), i)).collect())
            .collect();
        Ok(ApTable { degrees, index })
    }

    /// The first degree `n >= 1` with `AP_n` empty.
    pub fn cutoff(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &[ApElement] {
        self.degrees.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self, n: usize) -> usize {
        self.degree(n).len()
    }

    pub fn get(&self, n: usize, i: usize) -> &ApElement {
        &self.degrees[n][i]
    }

    pub fn index_of(&self, n: usize, support: &Path) -> Option<usize> {
        self.index.get(n)?.get(support).copied()
    }

    pub fn supports(&self, n: usize) -> Vec<Path> {
        self.degree(n).iter().map(|e| e.support.clone()).collect()
    }
}

/// An element of `Sub(w)` with its position: `w = left · ψ · right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisor {
    pub index: usize,
    pub left: Path,
    pub right: Path,
}

/// One summand `coefficient · left ⊗ middle ⊗ right` of a bimodule map on a
/// generator; `middle` indexes the target degree of [`ApTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleMapTerm {
    pub coefficient: i64,
    pub left: Path,
    pub middle: usize,
    pub right: Path,
}

/// `w = head · u · tail` with `head ∈ AP_n`, `tail ∈ AP_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub head: usize,
    pub u: Path,
    pub tail: usize,
}

/// A vector of `A ⊗ kAP_n ⊗ A` in the basis of triples `(l, w, r)` with
/// `l, r` indices into the path basis and `w` into `AP_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    pub terms: BTreeMap<(usize, usize, usize), Rational>,
}

impl TensorVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: (usize, usize, usize), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_vector(&mut self, other: &TensorVector, c: &Rational) {
        for (k, v) in &other.terms {
            self.add(*k, &(v * c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Homology of the augmented complex `... → C_1 → C_0 → A → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCheck {
    /// `dim A, dim C_0, dim C_1, ...`
    pub chain_dims: Vec<usize>,
    /// Homology at the same spots.
    pub homology: Vec<usize>,
    pub squares_vanish: bool,
    pub euler_characteristic: i64,
}

impl ResolutionCheck {
    pub fn exact(&self) -> bool {
        self.squares_vanish && self.homology.iter().all(|&h| h == 0) && self.euler_characteristic == 0
    }
}

/// The resolution of one algebra: `AP` sets, divisor sets and differentials.
#[derive(Debug, Clone)]
pub struct Resolution {
    algebra: StringAlgebra,
    ap: ApTable,
    subs: Vec<Vec<Vec<Divisor>>>,
    diffs: Vec<Vec<Vec<BimoduleMapTerm>>>,
    products: Vec<Vec<Option<usize>>>,
}

impl Resolution {
    pub fn new(algebra: &StringAlgebra) -> Result<Self, ComputeError> {
        let ap = ApTable::new(algebra.presentation())?;
        let mut subs = vec![Vec::new()];
        let mut diffs = vec![Vec::new()];
        for n in 1..=ap.cutoff() {
            let level: Vec<Vec<Divisor>> = ap
                .degree(n)
                .iter()
                .map(|w| divisors(&ap, n, w.support()))
                .collect();
            let mut d = Vec::with_capacity(level.len());
            for (i, sub) in level.iter().enumerate() {
                d.push(differential_terms(algebra, &ap, n, i, sub)?);
            }
            subs.push(level);
            diffs.push(d);
        }
        let basis = algebra.basis();
        let products = basis
            .paths()
            .iter()
            .map(|a| {
                basis
                    .paths()
                    .iter()
                    .map(|b| algebra.multiply(a, b).and_then(|p| basis.index_of(&p)))
                    .collect()
            })
            .collect();
        Ok(Resolution {
            algebra: algebra.clone(),
            ap,
            subs,
            diffs,
            products,
        })
    }

    pub fn algebra(&self) -> &StringAlgebra {
        &self.algebra
    }

    pub fn ap(&self) -> &ApTable {
        &self.ap
    }

    pub fn cutoff(&self) -> usize {
        self.ap.cutoff()
    }

    /// `Sub(w)` for the `i`-th element of `AP_n`, `n >= 1`.
    pub fn sub(&self, n: usize, i: usize) -> &[Divisor] {
        &self.subs[n][i]
    }

    /// `d_n(1 ⊗ w ⊗ 1)` for every `w ∈ AP_n`, `n >= 1`.
    pub fn differential(&self, n: usize) -> &[Vec<BimoduleMapTerm>] {
        self.diffs.get(n).map_or(&[], Vec::as_slice)
    }

    /// Product of basis paths by index; `None` is zero.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.products[a][b]
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.algebra.basis().index_of(p)
    }

    pub fn display(&self, p: &Path) -> String {
        self.algebra.quiver().display_path(p)
    }

    /// Splits the `i`-th element of `AP_{n+m}` as `⁽ⁿ⁾w · u · w⁽ᵐ⁾`.
    pub fn decompose(&self, i: usize, n: usize, m: usize) -> Result<Decomposition, ComputeError> {
        let w = self.ap.get(n + m, i);
        let support = w.support();
        let len = support.len();
        let err = |reason: &str| ComputeError::Decompose {
            support: self.display(support),
            n,
            m,
            reason: reason.to_string(),
        };
        if n + m < 2 {
            return Err(err("total degree below 2"));
        }
        let head_end = match n {
            0 => 0,
            1 => 1,
            _ => w.chain[n - 2].end,
        };
        let tail_start = match m {
            0 => len,
            1 => len - 1,
            _ => w.op_chain[n].start,
        };
        if head_end > tail_start {
            return Err(err("head and tail overlap"));
        }
        let u = support.subpath(head_end, tail_start);
        if !self.algebra.is_nonzero(&u) {
            return Err(err("middle factor lies in the ideal"));
        }
        let lookup = |deg: usize, p: Path| {
            self.ap.index_of(deg, &p).ok_or_else(|| ComputeError::MissingElement {
                degree: deg,
                support: self.display(&p),
            })
        };
        Ok(Decomposition {
            head: lookup(n, support.subpath(0, head_end))?,
            u,
            tail: lookup(m, support.subpath(tail_start, len))?,
        })
    }

    /// The generator `1 ⊗ w ⊗ 1` of `A ⊗ kAP_n ⊗ A`.
    pub fn generator(&self, n: usize, i: usize) -> TensorVector {
        let w = self.ap.get(n, i).support();
        let l = self.basis_index(&Path::trivial(w.source())).expect("trivial paths are basis");
        let r = self.basis_index(&Path::trivial(w.target())).expect("trivial paths are basis");
        let mut t = TensorVector::new();
        t.add((l, i, r), &Rational::one());
        t
    }

    /// `d_n` applied to a vector of `A ⊗ kAP_n ⊗ A`, evaluated in `A`.
    pub fn apply_differential(&self, n: usize, v: &TensorVector) -> TensorVector {
        let mut out = TensorVector::new();
        for (&(l, i, r), c) in &v.terms {
            for term in &self.diffs[n][i] {
                let (Some(tl), Some(tr)) = (self.basis_index(&term.left), self.basis_index(&term.right))
                else {
                    continue;
                };
                let (Some(nl), Some(nr)) = (self.mul(l, tl), self.mul(tr, r)) else {
                    continue;
                };
                out.add((nl, term.middle, nr), &(c * Rational::from_integer(term.coefficient.into())));
            }
        }
        out
    }

    /// The augmentation `A ⊗ kAP_0 ⊗ A → A`, as coefficients on the path basis.
    pub fn augment(&self, v: &TensorVector) -> BTreeMap<usize, Rational> {
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (&(l, _, r), c) in &v.terms {
            if let Some(p) = self.mul(l, r) {
                *out.entry(p).or_insert_with(Rational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Basis triples of `A ⊗ kAP_n ⊗ A`.
    pub fn chain_basis(&self, n: usize) -> Vec<(usize, usize, usize)> {
        let basis = self.algebra.basis();
        let mut out = Vec::new();
        for (i, w) in self.ap.degree(n).iter().enumerate() {
            let s = w.support();
            for (li, l) in basis.paths().iter().enumerate() {
                if l.target() != s.source() {
                    continue;
                }
                for (ri, r) in basis.paths().iter().enumerate() {
                    if r.source() == s.target() {
                        out.push((li, i, ri));
                    }
                }
            }
        }
        out
    }

    fn differential_matrix(&self, n: usize, rows: &[(usize, usize, usize)], cols: &[(usize, usize, usize)]) -> RationalMatrix {
        let row_index: HashMap<(usize, usize, usize), usize> =
            rows.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        for (j, key) in cols.iter().enumerate() {
            let mut v = TensorVector::new();
            v.add(*key, &Rational::one());
            for (k, c) in self.apply_differential(n, &v).terms {
                m.set(row_index[&k], j, c);
            }
        }
        m
    }

    fn augmentation_matrix(&self, cols: &[(usize, usize, usize)]) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.algebra.dim(), cols.len());
        for (j, &(l, _, r)) in cols.iter().enumerate() {
            if let Some(p) = self.mul(l, r) {
                m.set(p, j, Rational::one());
            }
        }
        m
    }

    /// Realizes the augmented complex as matrices and measures its homology.
    pub fn resolution_check(&self) -> ResolutionCheck {
        let top = self.cutoff();
        let bases: Vec<Vec<(usize, usize, usize)>> = (0..=top).map(|n| self.chain_basis(n)).collect();
        // maps[0] = μ, maps[n] = d_n
        let mut maps = vec![self.augmentation_matrix(&bases[0])];
        for n in 1..=top {
            maps.push(self.differential_matrix(n, &bases[n - 1], &bases[n]));
        }
        let mut squares_vanish = true;
        for n in 1..=top {
            if !maps[n - 1].mul(&maps[n]).expect("dimensions chain").is_zero() {
                squares_vanish = false;
            }
        }
        let ranks: Vec<usize> = maps.iter().map(RationalMatrix::rank).collect();
        let mut chain_dims = vec![self.algebra.dim()];
        chain_dims.extend(bases.iter().map(Vec::len));
        let mut homology = vec![self.algebra.dim() - ranks[0]];
        for n in 0..top {
            let nullity = bases[n].len() - ranks[n];
            homology.push(nullity - ranks[n + 1]);
        }
        homology.push(bases[top].len() - ranks[top]);
        let euler_characteristic = chain_dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        ResolutionCheck {
            chain_dims,
            homology,
            squares_vanish,
            euler_characteristic,
        }
    }
}

fn divisors(ap: &ApTable, n: usize, w: &Path) -> Vec<Divisor> {
    let mut out = Vec::new();
    for (index, psi) in ap.degree(n - 1).iter().enumerate() {
        if !psi.support().strictly_divides(w) {
            continue;
        }
        for (left, right) in w.occurrences(psi.support()) {
            out.push(Divisor { index, left, right });
        }
    }
    out.sort_by_key(|d| d.left.len());
    out
}

fn differential_terms(
    algebra: &StringAlgebra,
    ap: &ApTable,
    n: usize,
    i: usize,
    sub: &[Divisor],
) -> Result<Vec<BimoduleMapTerm>, ComputeError> {
    let term = |c: i64, d: &Divisor| BimoduleMapTerm {
        coefficient: c,
        left: d.left.clone(),
        middle: d.index,
        right: d.right.clone(),
    };
    if n % 2 == 0 {
        return Ok(sub.iter().map(|d| term(1, d)).collect());
    }
    let suffix = sub.iter().find(|d| d.right.is_trivial());
    let prefix = sub.iter().find(|d| d.left.is_trivial());
    match (sub.len(), suffix, prefix) {
        (2, Some(psi1), Some(psi2)) => Ok(vec![term(1, psi1), term(-1, psi2)]),
        _ => Err(ComputeError::OddDivisors {
            degree: n,
            support: algebra.quiver().display_path(ap.get(n, i).support()),
            count: sub.len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{double_line, parse};

    fn a(n: usize) -> StringAlgebra {
        StringAlgebra::new(double_line(n)).unwrap()
    }

    fn path(alg: &StringAlgebra, names: &str) -> Path {
        let q = alg.quiver();
        let ids: Vec<_> = names.split_whitespace().map(|s| q.arrow_by_name(s).unwrap()).collect();
        q.path(&ids).unwrap()
    }

    fn shown(alg: &StringAlgebra, ps: &[Path]) -> Vec<String> {
        ps.iter().map(|p| alg.quiver().display_path(p)).collect()
    }

    #[test]
    fn ap_sets_of_a3() {
        let alg = a(3);
        let sets = ap_sets(alg.presentation(), 10).unwrap();
        assert_eq!(sets.len(), 5);
        assert_eq!(sets[0].len(), 4);
        assert_eq!(sets[1].len(), 6);
        let mut two = shown(&alg, &sets[2]);
        two.sort();
        assert_eq!(two, ["a1 a2", "a2 a3", "b1 b2", "b2 b3"]);
        let mut three = shown(&alg, &sets[3]);
        three.sort();
        assert_eq!(three, ["a1 a2 a3", "b1 b2 b3"]);
        assert!(sets[4].is_empty());
        assert_eq!(ap_op_sets(alg.presentation(), 10).unwrap(), sets);
    }

    #[test]
    fn degree_two_is_the_relation_set() {
        let alg = a(4);
        let table = ApTable::new(alg.presentation()).unwrap();
        let mut rels = alg.relations().to_vec();
        rels.sort();
        assert_eq!(table.supports(2), rels);
    }

    #[test]
    fn hereditary_has_no_higher_degrees() {
        let alg = a(1);
        let table = ApTable::new(alg.presentation()).unwrap();
        assert_eq!(table.cutoff(), 2);
        assert!(table.degree(2).is_empty());
        assert!(ap_op_sets(alg.presentation(), 5).unwrap().len() <= 3);
    }

    #[test]
    fn chains_of_a3_top_element() {
        let alg = a(3);
        let table = ApTable::new(alg.presentation()).unwrap();
        let i = table.index_of(3, &path(&alg, "a1 a2 a3")).unwrap();
        let w = table.get(3, i);
        assert_eq!(shown(&alg, &w.chain()), ["a1 a2", "a2 a3"]);
        assert_eq!(shown(&alg, &w.op_chain()), ["a1 a2", "a2 a3"]);
    }

    #[test]
    fn longer_relations_chain() {
        // a b c d along a line with relations "a b c" and "b c d"
        let text = "vertex 0 1 2 3 4\narrow a 0 1\narrow b 1 2\narrow c 2 3\narrow d 3 4\nrelation a b c\nrelation b c d\n";
        let alg = StringAlgebra::new(parse(text).unwrap()).unwrap();
        let table = ApTable::new(alg.presentation()).unwrap();
        assert_eq!(shown(&alg, &table.supports(3)), ["a b c d"]);
        let res = Resolution::new(&alg).unwrap();
        let sub = res.sub(3, 0);
        assert_eq!(sub.len(), 2);
        assert!(res.resolution_check().exact());
    }

    #[test]
    fn sub_examples() {
        let alg = a(3);
        let res = Resolution::new(&alg).unwrap();
        let ap = res.ap();
        let i = ap.index_of(3, &path(&alg, "a1 a2 a3")).unwrap();
        let sub: Vec<(String, String, String)> = res
            .sub(3, i)
            .iter()
            .map(|d| {
                (
                    alg.quiver().display_path(&d.left),
                    alg.quiver().display_path(ap.get(2, d.index).support()),
                    alg.quiver().display_path(&d.right),
                )
            })
            .collect();
        assert_eq!(
            sub,
            [
                ("e_0".to_string(), "a1 a2".to_string(), "a3".to_string()),
                ("a1".to_string(), "a2 a3".to_string(), "e_3".to_string()),
            ]
        );
        let j = ap.index_of(2, &path(&alg, "a1 a2")).unwrap();
        let names: Vec<String> = res
            .sub(2, j)
            .iter()
            .map(|d| alg.quiver().display_path(ap.get(1, d.index).support()))
            .collect();
        assert_eq!(names, ["a1", "a2"]);
    }

    fn decompose_names(res: &Resolution, w: &str, n: usize, m: usize) -> (String, String, String) {
        let alg = res.algebra();
        let ap = res.ap();
        let i = ap.index_of(n + m, &path(alg, w)).unwrap();
        let d = res.decompose(i, n, m).unwrap();
        (
            alg.quiver().display_path(ap.get(n, d.head).support()),
            alg.quiver().display_path(&d.u),
            alg.quiver().display_path(ap.get(m, d.tail).support()),
        )
    }

    #[test]
    fn decompose_examples() {
        let res = Resolution::new(&a(3)).unwrap();
        let s = |x: &str| x.to_string();
        assert_eq!(decompose_names(&res, "a1 a2 a3", 2, 1), (s("a1 a2"), s("e_2"), s("a3")));
        assert_eq!(decompose_names(&res, "a1 a2", 1, 1), (s("a1"), s("e_1"), s("a2")));
        assert_eq!(decompose_names(&res, "a1 a2 a3", 1, 2), (s("a1"), s("e_1"), s("a2 a3")));
        assert_eq!(decompose_names(&res, "a1 a2 a3", 0, 3), (s("e_0"), s("e_0"), s("a1 a2 a3")));
        assert_eq!(decompose_names(&res, "a1 a2 a3", 3, 0), (s("a1 a2 a3"), s("e_3"), s("e_3")));
    }

    #[test]
    fn differential_examples() {
        let alg = a(3);
        let res = Resolution::new(&alg).unwrap();
        let ap = res.ap();
        let show = |n: usize, terms: &[BimoduleMapTerm]| -> Vec<(i64, String, String, String)> {
            terms
                .iter()
                .map(|t| {
                    (
                        t.coefficient,
                        alg.quiver().display_path(&t.left),
                        alg.quiver().display_path(ap.get(n - 1, t.middle).support()),
                        alg.quiver().display_path(&t.right),
                    )
                })
                .collect()
        };
        let s = |x: &str| x.to_string();
        let i = ap.index_of(1, &path(&alg, "a1")).unwrap();
        assert_eq!(
            show(1, &res.differential(1)[i]),
            [(1, s("a1"), s("e_1"), s("e_1")), (-1, s("e_0"), s("e_0"), s("a1"))]
        );
        let i = ap.index_of(2, &path(&alg, "a1 a2")).unwrap();
        assert_eq!(
            show(2, &res.differential(2)[i]),
            [(1, s("e_0"), s("a1"), s("a2")), (1, s("a1"), s("a2"), s("e_2"))]
        );
        let i = ap.index_of(3, &path(&alg, "a1 a2 a3")).unwrap();
        assert_eq!(
            show(3, &res.differential(3)[i]),
            [(1, s("a1"), s("a2 a3"), s("e_3")), (-1, s("e_0"), s("a1 a2"), s("a3"))]
        );
    }

    #[test]
    fn small_resolutions_are_exact() {
        for n in 1..=4 {
            let check = Resolution::new(&a(n)).unwrap().resolution_check();
            assert!(check.exact(), "A{n}: {check:?}");
        }
        let point = StringAlgebra::new(parse("vertex 0").unwrap()).unwrap();
        let check = Resolution::new(&point).unwrap().resolution_check();
        assert_eq!(check.chain_dims, [1, 1, 0]);
        assert!(check.exact());
    }

    #[test]
    fn hereditary_complex_dims() {
        let res = Resolution::new(&a(1)).unwrap();
        let check = res.resolution_check();
        // A = 4; C_0 = e0⊗e0⊗{e0,a,b} + {e1,a,b}⊗e1⊗e1 = 6; C_1 = 2
        assert_eq!(check.chain_dims, [4, 6, 2, 0]);
        assert!(check.exact());
    }
}
