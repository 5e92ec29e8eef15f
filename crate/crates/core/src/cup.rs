//! Comparison maps, cup products and the normalized representatives.
//!
//! A degree `m` cocycle `f` is lifted to maps `f_n : P_{n+m} → P_n` of the
//! resolution. The cup product `g ∪ f` of a degree `n` cochain `g` is then
//! `g ∘ f_n`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bardzell::TensorVector;
use crate::hochschild::{CochainComplex, PairClass, Refined};
use crate::hochschild::Decoration::{Minus, Plus};
use crate::linalg::{Echelon, Membership, Rational, RationalMatrix, Vector};
use crate::quiver::{Path, VertexId};
use crate::ComputeError;

/// A cochain of one degree, as a sparse combination of parallel pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    /// Pair index → coefficient; zero entries are absent.
    #[serde(with = "crate::linalg::rational_map")]
    pub coefficients: BTreeMap<usize, Rational>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain {
            degree,
            coefficients: BTreeMap::new(),
        }
    }

    /// The basis cochain `f_{(ρ,γ)}` of the `index`-th pair.
    pub fn basis(degree: usize, index: usize) -> Self {
        let mut c = Self::zero(degree);
        c.coefficients.insert(index, Rational::one());
        c
    }

    pub fn from_vector(degree: usize, v: &[Rational]) -> Self {
        Cochain {
            degree,
            coefficients: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_vector(&self, len: usize) -> Vector {
        let mut v = vec![Rational::zero(); len];
        for (&i, x) in &self.coefficients {
            v[i] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Rational) {
        assert_eq!(self.degree, other.degree);
        for (&i, x) in &other.coefficients {
            let entry = self.coefficients.entry(i).or_insert_with(Rational::zero);
            *entry += x * c;
            if entry.is_zero() {
                self.coefficients.remove(&i);
            }
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }
}

/// A cohomology class, represented by a cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub representative: Cochain,
}

impl CohomologyClass {
    pub fn new(cx: &CochainComplex, f: Cochain) -> Result<Self, ComputeError> {
        if !is_cocycle(cx, &f) {
            return Err(ComputeError::NotCocycle { degree: f.degree });
        }
        Ok(CohomologyClass { representative: f })
    }

    pub fn degree(&self) -> usize {
        self.representative.degree
    }

    pub fn is_zero(&self, cx: &CochainComplex) -> bool {
        is_coboundary(cx, &self.representative)
    }

    pub fn same_as(&self, cx: &CochainComplex, other: &CohomologyClass) -> bool {
        self.degree() == other.degree() && is_coboundary(cx, &self.representative.sub(&other.representative))
    }
}

pub fn apply_coboundary(cx: &CochainComplex, f: &Cochain) -> Cochain {
    let n = f.degree;
    let v = cx.cochain_matrix(n + 1).mul_vec(&f.to_vector(cx.pairs(n).len())).expect("dims");
    Cochain::from_vector(n + 1, &v)
}

pub fn is_cocycle(cx: &CochainComplex, f: &Cochain) -> bool {
    apply_coboundary(cx, f).is_zero()
}

/// Whether `f ∈ Im F_{deg f}`, by exact solve.
pub fn is_coboundary(cx: &CochainComplex, f: &Cochain) -> bool {
    if f.degree == 0 || f.degree > cx.cutoff() {
        return f.is_zero();
    }
    let m = cx.cochain_matrix(f.degree);
    m.in_column_space(&f.to_vector(m.rows())).expect("dims").is_inside()
}

/// `f̂(w)` for every `w ∈ AP_m`, as coefficients on the path basis.
fn values(cx: &CochainComplex, f: &Cochain) -> Vec<BTreeMap<usize, Rational>> {
    let mut out = vec![BTreeMap::new(); cx.resolution().ap().len(f.degree)];
    for (&i, c) in &f.coefficients {
        let pair = cx.pair(f.degree, i);
        out[pair.rho].insert(pair.gamma, c.clone());
    }
    out
}

/// The lift `f_n : A ⊗ kAP_{n+m} ⊗ A → A ⊗ kAP_n ⊗ A` of a degree `m` cochain.
#[derive(Debug, Clone)]
pub struct ComparisonMap {
    degree: usize,
    /// `images[n][i] = f_n(1 ⊗ w_i ⊗ 1)` for `w_i ∈ AP_{n+m}`.
    images: Vec<Vec<TensorVector>>,
    max_odd_multiplicity: usize,
}

impl ComparisonMap {
    /// Lifts a cocycle; rejects anything else.
    pub fn new(cx: &CochainComplex, f: &Cochain) -> Result<Self, ComputeError> {
        if f.degree == 0 || !is_cocycle(cx, f) {
            return Err(ComputeError::NotCocycle { degree: f.degree });
        }
        Self::unchecked(cx, f)
    }

    /// Evaluates the lifting formulas without checking the cocycle condition.
    pub fn unchecked(cx: &CochainComplex, f: &Cochain) -> Result<Self, ComputeError> {
        let m = f.degree;
        let top = cx.cutoff().saturating_sub(m);
        let fv = values(cx, f);
        let mut images = Vec::with_capacity(top + 1);
        let mut max_odd_multiplicity = 0;
        for n in 0..=top {
            let count = cx.resolution().ap().len(n + m);
            let mut level = Vec::with_capacity(count);
            for i in 0..count {
                let (terms, mult) = comparison_terms(cx, &fv, m, n, i)?;
                if n % 2 == 1 {
                    max_odd_multiplicity = max_odd_multiplicity.max(mult);
                }
                level.push(terms);
            }
            images.push(level);
        }
        Ok(ComparisonMap {
            degree: m,
            images,
            max_odd_multiplicity,
        })
    }

    /// A lift satisfying the chain-map identity for every cocycle: the
    /// displayed formula wherever its image already works, otherwise an
    /// exact solution of `d_n x = f_{n-1} d_{n+m}(1 ⊗ w ⊗ 1)`.
    pub fn solved(cx: &CochainComplex, f: &Cochain) -> Result<Self, ComputeError> {
        let mut lift = Self::new(cx, f)?;
        let res = cx.resolution();
        let m = f.degree;
        for n in 1..lift.images.len() {
            for i in 0..lift.images[n].len() {
                let target = lift.apply(cx, n - 1, &res.apply_differential(n + m, &res.generator(n + m, i)));
                if res.apply_differential(n, &lift.images[n][i]) == target {
                    continue;
                }
                let w = res.ap().get(n + m, i).support();
                let fixed = solve_boundary(cx, n, w.source(), w.target(), &target)
                    .ok_or(ComputeError::NotCocycle { degree: m })?;
                lift.images[n][i] = fixed;
            }
        }
        Ok(lift)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Largest number of `ψ` occurrences summed for one odd-degree generator.
    pub fn max_odd_multiplicity(&self) -> usize {
        self.max_odd_multiplicity
    }

    /// `f_n(1 ⊗ w_i ⊗ 1)`.
    pub fn image(&self, n: usize, i: usize) -> &TensorVector {
        &self.images[n][i]
    }

    /// `f_n` on a general element, extended as a bimodule map.
    pub fn apply(&self, cx: &CochainComplex, n: usize, v: &TensorVector) -> TensorVector {
        let res = cx.resolution();
        let mut out = TensorVector::new();
        for (&(l, i, r), c) in &v.terms {
            for (&(l2, psi, r2), c2) in &self.images[n][i].terms {
                if let (Some(nl), Some(nr)) = (res.mul(l, l2), res.mul(r2, r)) {
                    out.add((nl, psi, nr), &(c * c2));
                }
            }
        }
        out
    }

    /// Checks `μ f_0 = f` and `f_{n-1} d_{n+m} = d_n f_n` on every generator.
    pub fn audit(&self, cx: &CochainComplex, f: &Cochain) -> ChainMapAudit {
        let res = cx.resolution();
        let m = self.degree;
        let fv = values(cx, f);
        let mut failures = Vec::new();
        let mut generators = 0;
        for (i, expected) in fv.iter().enumerate() {
            generators += 1;
            let got = res.augment(self.image(0, i));
            let want: BTreeMap<usize, Rational> =
                expected.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
            if got != want {
                failures.push(format!("augmentation at {}", res.display(res.ap().get(m, i).support())));
            }
        }
        for n in 1..self.images.len() {
            for i in 0..self.images[n].len() {
                generators += 1;
                let g = res.generator(n + m, i);
                let lhs = self.apply(cx, n - 1, &res.apply_differential(n + m, &g));
                let rhs = res.apply_differential(n, self.image(n, i));
                if lhs != rhs {
                    failures.push(format!(
                        "degree {n} at {}",
                        res.display(res.ap().get(n + m, i).support())
                    ));
                }
            }
        }
        ChainMapAudit {
            degree: m,
            generators,
            failures,
            max_odd_multiplicity: self.max_odd_multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMapAudit {
    pub degree: usize,
    pub generators: usize,
    pub failures: Vec<String>,
    pub max_odd_multiplicity: usize,
}

impl ChainMapAudit {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Some `x ∈ e_s (A ⊗ kAP_n ⊗ A) e_t` with `d_n x = target`.
fn solve_boundary(
    cx: &CochainComplex,
    n: usize,
    s: VertexId,
    t: VertexId,
    target: &TensorVector,
) -> Option<TensorVector> {
    let res = cx.resolution();
    let basis = res.algebra().basis();
    let cols: Vec<(usize, usize, usize)> = res
        .chain_basis(n)
        .into_iter()
        .filter(|&(l, _, r)| basis.get(l).source() == s && basis.get(r).target() == t)
        .collect();
    let images: Vec<TensorVector> = cols
        .iter()
        .map(|&key| {
            let mut v = TensorVector::new();
            v.add(key, &Rational::one());
            res.apply_differential(n, &v)
        })
        .collect();
    let mut rows: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for key in images.iter().flat_map(|v| v.terms.keys()).chain(target.terms.keys()) {
        let next = rows.len();
        rows.entry(*key).or_insert(next);
    }
    let mut d = RationalMatrix::zeros(rows.len(), cols.len());
    for (j, v) in images.iter().enumerate() {
        for (k, c) in &v.terms {
            d.set(rows[k], j, c.clone());
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (k, c) in &target.terms {
        rhs[rows[k]] = c.clone();
    }
    match d.in_column_space(&rhs).expect("dims") {
        Membership::Inside { preimage } => {
            let mut x = TensorVector::new();
            for (key, c) in cols.iter().zip(&preimage) {
                x.add(*key, c);
            }
            Some(x)
        }
        Membership::Outside { .. } => None,
    }
}

fn comparison_terms(
    cx: &CochainComplex,
    fv: &[BTreeMap<usize, Rational>],
    m: usize,
    n: usize,
    i: usize,
) -> Result<(TensorVector, usize), ComputeError> {
    let res = cx.resolution();
    let ap = res.ap();
    let mut out = TensorVector::new();
    let w = ap.get(n + m, i).support();
    if n == 0 {
        let e = Path::trivial(w.source());
        let l = res.basis_index(&e).expect("trivial paths are basis");
        let mid = ap.index_of(0, &e).expect("vertices are AP_0");
        for (&g, c) in &fv[i] {
            out.add((l, mid, g), c);
        }
        return Ok((out, 1));
    }
    let d = res.decompose(i, n, m)?;
    let x = ap.get(n, d.head).support().compose(&d.u).expect("consecutive factors");
    let tail = &fv[d.tail];
    let mut multiplicity = 0;
    for (psi, elem) in ap.degree(n).iter().enumerate() {
        for (l, r) in x.occurrences(elem.support()) {
            let Some(li) = res.basis_index(&l) else { continue };
            multiplicity += 1;
            let Some(ri) = res.basis_index(&r) else { continue };
            for (&g, c) in tail {
                if let Some(rg) = res.mul(ri, g) {
                    out.add((li, psi, rg), c);
                }
            }
        }
    }
    Ok((out, multiplicity))
}

/// The single-term form `1 ⊗ ⁽ⁿ⁾w ⊗ u·f̂(w⁽ᵐ⁾)` valid in even degree `n`.
pub fn collapsed_image(cx: &CochainComplex, f: &Cochain, n: usize, i: usize) -> Result<TensorVector, ComputeError> {
    let res = cx.resolution();
    let m = f.degree;
    let d = res.decompose(i, n, m)?;
    let fv = values(cx, f);
    let head = res.ap().get(n, d.head).support();
    let l = res.basis_index(&Path::trivial(head.source())).expect("trivial");
    let u = res.basis_index(&d.u).expect("middle factor is nonzero");
    let mut out = TensorVector::new();
    for (&g, c) in &fv[d.tail] {
        if let Some(ug) = res.mul(u, g) {
            out.add((l, d.head, ug), c);
        }
    }
    Ok(out)
}

/// `g ∪ f` for a cochain `g` of degree `n` and a lifted cocycle `f`.
pub fn cup_with(cx: &CochainComplex, g: &Cochain, f: &ComparisonMap) -> Cochain {
    let res = cx.resolution();
    let n = g.degree;
    let total = n + f.degree();
    let mut out = Cochain::zero(total);
    if n >= f.images.len() {
        return out;
    }
    let gv = values(cx, g);
    let mut dense = vec![Rational::zero(); cx.pairs(total).len()];
    for (i, image) in f.images[n].iter().enumerate() {
        for (&(l, psi, r), c) in &image.terms {
            for (&gamma, cg) in &gv[psi] {
                let Some(p) = res.mul(l, gamma).and_then(|lg| res.mul(lg, r)) else {
                    continue;
                };
                let k = cx.pair_index(total, i, p).expect("products stay parallel");
                dense[k] += c * cg;
            }
        }
    }
    out.coefficients = Cochain::from_vector(total, &dense).coefficients;
    out
}

/// `g ∪ f` for cocycles `g` and `f` of positive degree.
pub fn cup(cx: &CochainComplex, g: &Cochain, f: &Cochain) -> Result<Cochain, ComputeError> {
    if g.degree == 0 || !is_cocycle(cx, g) {
        return Err(ComputeError::NotCocycle { degree: g.degree });
    }
    Ok(cup_with(cx, g, &ComparisonMap::new(cx, f)?))
}

fn sign(m: usize) -> Rational {
    // (-1)^{m-1}
    if m % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `f^≤`, supported on `(0,0) ∪ (0,1)`; the identity in degree 1.
pub fn normalize_leq(cx: &CochainComplex, f: &Cochain) -> Result<Cochain, ComputeError> {
    let m = f.degree;
    if m < 2 {
        return Ok(f.clone());
    }
    let mut out = Cochain::zero(m);
    for (&i, c) in &f.coefficients {
        let p = cx.pair(m, i);
        let image = match (p.class, p.right, p.refined) {
            (Some(PairClass::ZeroZero | PairClass::ZeroOne), _, _) => Some((i, Rational::one())),
            (Some(PairClass::OneZero), Plus, _) => Some((cx.phi(m, i)?, sign(m))),
            (Some(PairClass::OneZero), Minus, Some(Refined::OneZeroMinusPlus)) => Some((cx.psi(m, i)?, sign(m))),
            _ => None,
        };
        if let Some((k, s)) = image {
            out.add_scaled(&Cochain::basis(m, k), &(c * s));
        }
    }
    Ok(out)
}

/// `f^≥`, supported on `(0,0) ∪ (1,0)`; the identity in degree 1.
pub fn normalize_geq(cx: &CochainComplex, f: &Cochain) -> Result<Cochain, ComputeError> {
    let m = f.degree;
    if m < 2 {
        return Ok(f.clone());
    }
    let mut phi_inv = BTreeMap::new();
    let mut psi_inv = BTreeMap::new();
    for (i, p) in cx.pairs(m).iter().enumerate() {
        if p.is(PairClass::OneZero) && p.right == Plus {
            phi_inv.insert(cx.phi(m, i)?, i);
        } else if p.refined == Some(Refined::OneZeroMinusPlus) {
            psi_inv.insert(cx.psi(m, i)?, i);
        }
    }
    let missing = |i: usize| {
        let p = cx.pair(m, i);
        ComputeError::NoExtension {
            degree: m,
            rho: cx.resolution().display(cx.rho_path(p)),
            gamma: cx.resolution().display(cx.gamma_path(p)),
        }
    };
    let mut out = Cochain::zero(m);
    for (&i, c) in &f.coefficients {
        let p = cx.pair(m, i);
        let image = match (p.class, p.left, p.refined) {
            (Some(PairClass::ZeroZero | PairClass::OneZero), _, _) => Some((i, Rational::one())),
            (Some(PairClass::ZeroOne), Plus, _) => Some((*phi_inv.get(&i).ok_or_else(|| missing(i))?, sign(m))),
            (Some(PairClass::ZeroOne), Minus, Some(Refined::PlusMinusZeroOne)) => {
                Some((*psi_inv.get(&i).ok_or_else(|| missing(i))?, sign(m)))
            }
            _ => None,
        };
        if let Some((k, s)) = image {
            out.add_scaled(&Cochain::basis(m, k), &(c * s));
        }
    }
    Ok(out)
}

/// Cocycles of degree `m` whose classes form a basis of `HH^m`: the
/// canonical nullspace basis of `F_{m+1}`, skipping vectors that are
/// dependent modulo `Im F_m`.
pub fn cocycle_basis(cx: &CochainComplex, m: usize) -> Vec<Cochain> {
    let dim = cx.pairs(m).len();
    let mut span = Echelon::new(dim);
    if m >= 1 {
        let fm = cx.cochain_matrix(m);
        for j in 0..fm.cols() {
            span.insert(&fm.column(j));
        }
    }
    cx.cochain_matrix(m + 1)
        .nullspace()
        .into_iter()
        .filter(|z| span.insert(z))
        .map(|z| Cochain::from_vector(m, &z))
        .collect()
}

/// A product that failed to be a coboundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupWitness {
    pub left_degree: usize,
    pub right_degree: usize,
    pub left: Cochain,
    pub right: Cochain,
    pub product: Cochain,
    pub normalized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupCell {
    pub left_degree: usize,
    pub right_degree: usize,
    pub pairs: usize,
    /// Products of normalized representatives that vanish as cochains.
    pub normalized_identically_zero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupReport {
    /// Positive-degree representatives per degree, index = degree.
    pub class_counts: Vec<usize>,
    pub cells: Vec<CupCell>,
    pub pairs_checked: usize,
    pub counterexamples: Vec<CupWitness>,
    /// Representatives `f` with `[f] ≠ [f^≤]` or `[f] ≠ [f^≥]`.
    pub normalization_failures: Vec<Cochain>,
    /// Audit of the displayed lifting formula, one per basis cocycle.
    pub chain_maps: Vec<ChainMapAudit>,
    /// Basis cocycles whose displayed lift failed and was replaced by a solved one.
    pub repaired_lifts: Vec<Cochain>,
    pub max_odd_multiplicity: usize,
}

impl CupReport {
    /// Every product is a coboundary, computed through valid chain maps,
    /// and the normalized representatives are cohomologous to the originals.
    pub fn products_vanish(&self) -> bool {
        self.counterexamples.is_empty() && self.normalization_failures.is_empty()
    }

    /// Whether the displayed lifting formula was a chain map for every basis cocycle.
    pub fn formula_lifts_valid(&self) -> bool {
        self.chain_maps.iter().all(ChainMapAudit::passed)
    }

    pub fn passed(&self) -> bool {
        self.products_vanish() && self.formula_lifts_valid()
    }
}

/// The displayed lift if it is a chain map, otherwise the solved one.
fn valid_lift(cx: &CochainComplex, f: &Cochain) -> Result<(ComparisonMap, ChainMapAudit), ComputeError> {
    let plain = ComparisonMap::new(cx, f)?;
    let audit = plain.audit(cx, f);
    if audit.passed() {
        return Ok((plain, audit));
    }
    let solved = ComparisonMap::solved(cx, f)?;
    if !solved.audit(cx, f).passed() {
        return Err(ComputeError::NotCocycle { degree: f.degree });
    }
    Ok((solved, audit))
}

/// Certifies that every product of positive-degree basis classes is zero.
pub fn cup_table(cx: &CochainComplex, max_degree: Option<usize>) -> Result<CupReport, ComputeError> {
    let top = max_degree.map_or(cx.cutoff(), |d| d.min(cx.cutoff()));
    let mut reps: Vec<Vec<Cochain>> = vec![Vec::new()];
    let mut leq = vec![Vec::new()];
    let mut lifts: Vec<Vec<(ComparisonMap, ComparisonMap)>> = vec![Vec::new()];
    let mut chain_maps = Vec::new();
    let mut repaired_lifts = Vec::new();
    let mut normalization_failures = Vec::new();
    let mut max_odd_multiplicity = 0;
    for m in 1..=top {
        let basis = cocycle_basis(cx, m);
        let mut lo = Vec::new();
        let mut lift = Vec::new();
        for f in &basis {
            let f_leq = normalize_leq(cx, f)?;
            let f_geq = normalize_geq(cx, f)?;
            if !is_coboundary(cx, &f.sub(&f_leq)) || !is_coboundary(cx, &f.sub(&f_geq)) {
                normalization_failures.push(f.clone());
            }
            let (plain, audit) = valid_lift(cx, f)?;
            max_odd_multiplicity = max_odd_multiplicity.max(audit.max_odd_multiplicity);
            if !audit.passed() {
                repaired_lifts.push(f.clone());
            }
            chain_maps.push(audit);
            let (normal, _) = valid_lift(cx, &f_geq)?;
            lo.push(f_leq);
            lift.push((plain, normal));
        }
        reps.push(basis);
        leq.push(lo);
        lifts.push(lift);
    }
    let mut cells = Vec::new();
    let mut counterexamples = Vec::new();
    let mut pairs_checked = 0;
    for n in 1..=top {
        for m in 1..=top {
            if n + m >= cx.cutoff() || reps[n].is_empty() || reps[m].is_empty() {
                continue;
            }
            let mut cell = CupCell {
                left_degree: n,
                right_degree: m,
                pairs: 0,
                normalized_identically_zero: 0,
            };
            for (gi, g) in reps[n].iter().enumerate() {
                for (f, (plain, normal)) in reps[m].iter().zip(&lifts[m]) {
                    cell.pairs += 1;
                    let normalized = cup_with(cx, &leq[n][gi], normal);
                    if normalized.is_zero() {
                        cell.normalized_identically_zero += 1;
                    }
                    for (product, is_normalized) in [(normalized, true), (cup_with(cx, g, plain), false)] {
                        if !is_coboundary(cx, &product) {
                            counterexamples.push(CupWitness {
                                left_degree: n,
                                right_degree: m,
                                left: g.clone(),
                                right: f.clone(),
                                product,
                                normalized: is_normalized,
                            });
                        }
                    }
                }
            }
            pairs_checked += cell.pairs;
            cells.push(cell);
        }
    }
    Ok(CupReport {
        class_counts: reps.iter().map(Vec::len).collect(),
        cells,
        pairs_checked,
        counterexamples,
        normalization_failures,
        chain_maps,
        repaired_lifts,
        max_odd_multiplicity,
    })
}
