//! The Hochschild cochain complex on parallel pairs and its cohomology.
//!
//! Degree `n` cochains are spanned by pairs `(ρ, γ)` with `ρ ∈ AP_n`,
//! `γ` a basis path parallel to `ρ`. `F_n` maps degree `n-1` to degree `n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bardzell::Resolution;
use crate::linalg::{Rational, RationalMatrix};
use crate::presentation::{Check, StringAlgebra};
use crate::quiver::{ArrowId, Path};
use crate::ComputeError;

/// Which of `ρ`'s first and last arrows `γ` shares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairClass {
    ZeroZero,
    OneZero,
    ZeroOne,
    OneOne,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::ZeroZero => "(0,0)",
            PairClass::OneZero => "(1,0)",
            PairClass::ZeroOne => "(0,1)",
            PairClass::OneOne => "(1,1)",
        })
    }
}

/// `Minus` on the left means every arrow ending at `s(γ)` kills `γ`;
/// on the right, every arrow starting at `t(γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    Plus,
    Minus,
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decoration::Plus => "+",
            Decoration::Minus => "-",
        })
    }
}

/// Finer tags inside `(1,0)⁻` and `⁻(0,1)`, by what happens to `γ` with
/// the shared arrow removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Refined {
    /// `(1,0)⁻⁻`
    OneZeroMinusMinus,
    /// `(1,0)⁻⁺`
    OneZeroMinusPlus,
    /// `⁻⁻(0,1)`
    MinusMinusZeroOne,
    /// `⁺⁻(0,1)`
    PlusMinusZeroOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelPair {
    pub degree: usize,
    /// Index into `AP_degree`.
    pub rho: usize,
    /// Index into the path basis.
    pub gamma: usize,
    /// `None` in degree 0.
    pub class: Option<PairClass>,
    pub left: Decoration,
    pub right: Decoration,
    pub refined: Option<Refined>,
}

impl ParallelPair {
    pub fn is(&self, class: PairClass) -> bool {
        self.class == Some(class)
    }

    pub fn decorated(&self, left: Decoration, class: PairClass, right: Decoration) -> bool {
        self.is(class) && self.left == left && self.right == right
    }
}

/// Sizes of the partition pieces of one degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCounts {
    pub pairs: usize,
    pub zero_zero: usize,
    pub one_zero: usize,
    pub zero_one: usize,
    pub one_one: usize,
    /// `⁻(0,0)⁻`
    pub zero_zero_minus_minus: usize,
    /// `⁻(0,0)⁺`
    pub zero_zero_minus_plus: usize,
    /// `⁺(0,0)⁻`
    pub zero_zero_plus_minus: usize,
    /// `⁺(0,0)⁺`
    pub zero_zero_plus_plus: usize,
    /// `(1,0)⁺`
    pub one_zero_plus: usize,
    /// `(1,0)⁻⁻`
    pub one_zero_minus_minus: usize,
    /// `(1,0)⁻⁺`
    pub one_zero_minus_plus: usize,
    /// `⁺(0,1)`
    pub plus_zero_one: usize,
    /// `⁻⁻(0,1)`
    pub minus_minus_zero_one: usize,
    /// `⁺⁻(0,1)`
    pub plus_minus_zero_one: usize,
}

impl PartitionCounts {
    fn of(pairs: &[ParallelPair]) -> Self {
        use Decoration::*;
        use PairClass::*;
        let count = |f: &dyn Fn(&ParallelPair) -> bool| pairs.iter().filter(|p| f(p)).count();
        PartitionCounts {
            pairs: pairs.len(),
            zero_zero: count(&|p| p.is(ZeroZero)),
            one_zero: count(&|p| p.is(OneZero)),
            zero_one: count(&|p| p.is(ZeroOne)),
            one_one: count(&|p| p.is(OneOne)),
            zero_zero_minus_minus: count(&|p| p.decorated(Minus, ZeroZero, Minus)),
            zero_zero_minus_plus: count(&|p| p.decorated(Minus, ZeroZero, Plus)),
            zero_zero_plus_minus: count(&|p| p.decorated(Plus, ZeroZero, Minus)),
            zero_zero_plus_plus: count(&|p| p.decorated(Plus, ZeroZero, Plus)),
            one_zero_plus: count(&|p| p.is(OneZero) && p.right == Plus),
            one_zero_minus_minus: count(&|p| p.refined == Some(Refined::OneZeroMinusMinus)),
            one_zero_minus_plus: count(&|p| p.refined == Some(Refined::OneZeroMinusPlus)),
            plus_zero_one: count(&|p| p.is(ZeroOne) && p.left == Plus),
            minus_minus_zero_one: count(&|p| p.refined == Some(Refined::MinusMinusZeroOne)),
            plus_minus_zero_one: count(&|p| p.refined == Some(Refined::PlusMinusZeroOne)),
        }
    }
}

/// One row of the cohomology table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhDegree {
    pub degree: usize,
    pub dim_formula: Option<usize>,
    pub dim_matrix: Option<usize>,
    /// Present when both dimensions were computed.
    pub agree: Option<bool>,
    /// `dim Ker F_{n+1}`
    pub kernel: Option<usize>,
    /// `dim Im F_n`
    pub image: Option<usize>,
    /// `rank F_n` over `F_2` and `F_3`, for comparison with `image`.
    pub image_mod_2: Option<usize>,
    pub image_mod_3: Option<usize>,
    pub counts: PartitionCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhTable {
    /// First degree `n >= 1` with `AP_n` empty; cohomology vanishes beyond it.
    pub cutoff: usize,
    /// Dimensions indexed by degree, ranks preferred over the formula.
    pub dims: Vec<usize>,
    pub degrees: Vec<HhDegree>,
}

impl HhTable {
    pub fn agree(&self) -> bool {
        self.degrees.iter().all(|d| d.agree != Some(false))
    }

}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Formula,
    Matrix,
    Both,
}

/// Comparison of `F_n` with the counting lemma and its bijections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerImAudit {
    pub degree: usize,
    pub kernel_matrix: usize,
    pub kernel_count: usize,
    pub image_matrix: usize,
    pub image_count: usize,
    pub checks: Vec<Check>,
}

impl KerImAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
struct PairBasis {
    pairs: Vec<ParallelPair>,
    index: HashMap<(usize, usize), usize>,
}

/// The cochain complex `Hom(kAP_n, A)` with the maps `F_n`.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    res: Resolution,
    bases: Vec<PairBasis>,
    /// `maps[n]` is `F_n` for `1 <= n <= cutoff + 1`; `maps[0]` is unused.
    maps: Vec<RationalMatrix>,
}

impl CochainComplex {
    pub fn new(algebra: &StringAlgebra) -> Result<Self, ComputeError> {
        Self::from_resolution(Resolution::new(algebra)?)
    }

    pub fn from_resolution(res: Resolution) -> Result<Self, ComputeError> {
        let top = res.cutoff();
        let bases: Vec<PairBasis> = (0..=top + 1).map(|n| pair_basis(&res, n)).collect();
        let mut cx = CochainComplex {
            res,
            bases,
            maps: vec![RationalMatrix::zeros(0, 0)],
        };
        for n in 1..=top + 1 {
            let m = cx.formula_matrix(n);
            cx.maps.push(m);
        }
        Ok(cx)
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn algebra(&self) -> &StringAlgebra {
        self.res.algebra()
    }

    pub fn cutoff(&self) -> usize {
        self.res.cutoff()
    }

    /// `(AP_n // 𝒫)` in canonical order.
    pub fn pairs(&self, n: usize) -> &[ParallelPair] {
        self.bases.get(n).map_or(&[], |b| b.pairs.as_slice())
    }

    pub fn pair(&self, n: usize, i: usize) -> &ParallelPair {
        &self.bases[n].pairs[i]
    }

    pub fn pair_index(&self, n: usize, rho: usize, gamma: usize) -> Option<usize> {
        self.bases.get(n)?.index.get(&(rho, gamma)).copied()
    }

    pub fn rho_path(&self, pair: &ParallelPair) -> &Path {
        self.res.ap().get(pair.degree, pair.rho).support()
    }

    pub fn gamma_path(&self, pair: &ParallelPair) -> &Path {
        self.algebra().basis().get(pair.gamma)
    }

    pub fn display_pair(&self, pair: &ParallelPair) -> String {
        format!(
            "({}, {})",
            self.res.display(self.rho_path(pair)),
            self.res.display(self.gamma_path(pair))
        )
    }

    /// `F_n : Hom(kAP_{n-1}, A) → Hom(kAP_n, A)`.
    pub fn cochain_matrix(&self, n: usize) -> &RationalMatrix {
        &self.maps[n]
    }

    pub fn counts(&self, n: usize) -> PartitionCounts {
        PartitionCounts::of(self.pairs(n))
    }

    fn basis_of(&self, p: &Path) -> Option<usize> {
        self.algebra().basis().index_of(p)
    }

    /// Entries of `F_n` read off the defining formulas directly.
    fn formula_matrix(&self, n: usize) -> RationalMatrix {
        let rows = self.pairs(n);
        let cols = self.pairs(n - 1);
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        let ap = self.res.ap();
        let q = self.algebra().quiver();
        let put = |w: usize, p: &Path, c: i64, col: usize, m: &mut RationalMatrix| {
            if let Some(g) = self.basis_of(p) {
                let row = self.pair_index(n, w, g).expect("a parallel basis path gives a pair");
                m.add_to(row, col, &Rational::from_integer(c.into()));
            }
        };
        for (col, pair) in cols.iter().enumerate() {
            let rho = self.rho_path(pair);
            let gamma = self.gamma_path(pair);
            if n == 1 {
                let x = rho.source();
                for a in q.arrow_ids() {
                    let w = ap.index_of(1, &q.arrow_path(a)).expect("arrows are AP_1");
                    let arrow = q.arrow_path(a);
                    if q.arrow(a).target == x {
                        put(w, &arrow, 1, col, &mut m);
                    }
                    if q.arrow(a).source == x {
                        put(w, &arrow, -1, col, &mut m);
                    }
                }
                continue;
            }
            for (w, elem) in ap.degree(n).iter().enumerate() {
                let support = elem.support();
                if !rho.strictly_divides(support) {
                    continue;
                }
                for (l, r) in support.occurrences(rho) {
                    if n % 2 == 0 {
                        let p = l.compose(gamma).and_then(|x| x.compose(&r)).expect("parallel");
                        put(w, &p, 1, col, &mut m);
                    } else if r.is_trivial() {
                        put(w, &l.compose(gamma).expect("parallel"), 1, col, &mut m);
                    } else if l.is_trivial() {
                        put(w, &gamma.compose(&r).expect("parallel"), -1, col, &mut m);
                    }
                }
            }
        }
        m
    }

    /// `F_n` obtained by composing basis cochains with `d_n`.
    pub fn dualized_matrix(&self, n: usize) -> RationalMatrix {
        let rows = self.pairs(n);
        let cols = self.pairs(n - 1);
        let mut m = RationalMatrix::zeros(rows.len(), cols.len());
        let diff = self.res.differential(n);
        for (col, pair) in cols.iter().enumerate() {
            let gamma = self.gamma_path(pair);
            for (w, terms) in diff.iter().enumerate() {
                for t in terms.iter().filter(|t| t.middle == pair.rho) {
                    let p = t.left.compose(gamma).and_then(|x| x.compose(&t.right)).expect("parallel");
                    if let Some(g) = self.basis_of(&p) {
                        let row = self.pair_index(n, w, g).expect("parallel");
                        m.add_to(row, col, &Rational::from_integer(t.coefficient.into()));
                    }
                }
            }
        }
        m
    }

    fn kernel_dim(&self, n: usize) -> usize {
        self.pairs(n).len() - self.maps[n + 1].rank()
    }

    /// `dim HH^n` from ranks, for `n = 0..=cutoff`.
    pub fn hh_dims_matrix(&self) -> Vec<usize> {
        (0..=self.cutoff())
            .map(|n| {
                let image = if n == 0 { 0 } else { self.maps[n].rank() };
                self.kernel_dim(n) - image
            })
            .collect()
    }

    /// `dim HH^n` by counting partition pieces, for `n = 0..=cutoff`.
    pub fn hh_dims_formula(&self) -> Vec<usize> {
        let q = self.algebra().quiver();
        (0..=self.cutoff())
            .map(|n| match n {
                0 => 1,
                1 => {
                    let c = self.counts(1);
                    (q.num_arrows() + c.zero_zero_minus_minus + 1).saturating_sub(q.num_vertices())
                }
                _ => {
                    let c = self.counts(n);
                    c.plus_minus_zero_one + c.zero_zero_minus_minus
                }
            })
            .collect()
    }

    pub fn hh_table(&self, method: Method, max_degree: Option<usize>) -> HhTable {
        let top = max_degree.map_or(self.cutoff(), |d| d.min(self.cutoff()));
        let want_matrix = method != Method::Formula;
        let want_formula = method != Method::Matrix;
        let formula = want_formula.then(|| self.hh_dims_formula());
        let matrix = want_matrix.then(|| self.hh_dims_matrix());
        let degrees: Vec<HhDegree> = (0..=top)
            .map(|n| {
                let dim_formula = formula.as_ref().map(|f| f[n]);
                let dim_matrix = matrix.as_ref().map(|m| m[n]);
                let image_map = (n > 0).then(|| &self.maps[n]);
                HhDegree {
                    degree: n,
                    dim_formula,
                    dim_matrix,
                    agree: dim_formula.zip(dim_matrix).map(|(a, b)| a == b),
                    kernel: want_matrix.then(|| self.kernel_dim(n)),
                    image: want_matrix.then(|| image_map.map_or(0, RationalMatrix::rank)),
                    image_mod_2: want_matrix.then(|| image_map.map_or(0, |m| m.rank_mod_p(2))),
                    image_mod_3: want_matrix.then(|| image_map.map_or(0, |m| m.rank_mod_p(3))),
                    counts: self.counts(n),
                }
            })
            .collect();
        HhTable {
            cutoff: self.cutoff(),
            dims: degrees
                .iter()
                .map(|d| d.dim_matrix.or(d.dim_formula).unwrap_or(0))
                .collect(),
            degrees,
        }
    }

    /// The unique arrow `β` with `γβ` nonzero, if any.
    fn right_extension(&self, gamma: &Path) -> Option<ArrowId> {
        let q = self.algebra().quiver();
        q.outgoing(gamma.target())
            .find(|&b| self.algebra().multiply(gamma, &q.arrow_path(b)).is_some())
    }

    fn extend_pair(&self, m: usize, i: usize, through: &Path) -> Result<usize, ComputeError> {
        let pair = self.pair(m, i);
        let no_ext = || ComputeError::NoExtension {
            degree: m,
            rho: self.res.display(self.rho_path(pair)),
            gamma: self.res.display(self.gamma_path(pair)),
        };
        let beta = self.right_extension(through).ok_or_else(no_ext)?;
        let q = self.algebra().quiver();
        let rho = self.rho_path(pair);
        let gamma = self.gamma_path(pair);
        let rho_hat = rho.suffix(rho.len() - 1).compose(&q.arrow_path(beta)).expect("composable");
        let gamma_hat = gamma.suffix(gamma.len() - 1).compose(&q.arrow_path(beta)).expect("composable");
        let r = self.res.ap().index_of(m, &rho_hat).ok_or_else(no_ext)?;
        let g = self.basis_of(&gamma_hat).ok_or_else(no_ext)?;
        self.pair_index(m, r, g).ok_or_else(no_ext)
    }

    /// `φ_m : (1,0)⁺_m → ⁺(0,1)_m`, `(αρ̂, αγ̂) ↦ (ρ̂β, γ̂β)` with `αγ̂β` nonzero.
    pub fn phi(&self, m: usize, i: usize) -> Result<usize, ComputeError> {
        let gamma = self.gamma_path(self.pair(m, i)).clone();
        self.extend_pair(m, i, &gamma)
    }

    /// `ψ_m : (1,0)⁻⁺_m → ⁺⁻(0,1)_m`, `(αρ̂, αγ̂) ↦ (ρ̂β, γ̂β)` with `γ̂β` nonzero.
    pub fn psi(&self, m: usize, i: usize) -> Result<usize, ComputeError> {
        let gamma = self.gamma_path(self.pair(m, i));
        let hat = gamma.suffix(gamma.len() - 1);
        self.extend_pair(m, i, &hat)
    }

    /// Counting lemma and bijections for `F_n`, `n >= 2`.
    pub fn ker_im_audit(&self, n: usize) -> Result<KerImAudit, ComputeError> {
        use Decoration::*;
        use PairClass::*;
        if n < 2 || n > self.cutoff() + 1 {
            return Err(ComputeError::DegreeOutOfRange { degree: n });
        }
        let f = &self.maps[n];
        let src = self.pairs(n - 1);
        let dst = self.pairs(n);
        let cs = self.counts(n - 1);
        let cd = self.counts(n);
        let kernel_matrix = src.len() - f.rank();
        let kernel_count = cs.zero_zero_minus_minus + cs.one_zero + (cs.zero_one - cs.plus_zero_one) + cs.one_one;
        let image_matrix = f.rank();
        let image_count = cd.minus_minus_zero_one + cd.one_zero + cd.one_one;
        let mut checks = vec![
            Check::new(
                "kernel dimension",
                kernel_matrix == kernel_count,
                format!("nullity {kernel_matrix}, count {kernel_count}"),
            ),
            Check::new(
                "image dimension",
                image_matrix == image_count,
                format!("rank {image_matrix}, count {image_count}"),
            ),
        ];
        let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
        let column = |j: usize| -> Vec<(usize, Rational)> {
            (0..f.rows())
                .filter_map(|r| {
                    let v = f.get(r, j);
                    (!v.is_zero()).then_some((r, v))
                })
                .collect()
        };
        let single = |j: usize, c: i64| -> Option<usize> {
            match column(j).as_slice() {
                [(r, v)] if *v == Rational::from_integer(c.into()) => Some(*r),
                _ => None,
            }
        };
        let bijection = |name: &str,
                         from: &dyn Fn(&ParallelPair) -> bool,
                         to: &dyn Fn(&ParallelPair) -> bool,
                         c: i64|
         -> Check {
            let sources: Vec<usize> = (0..src.len()).filter(|&j| from(&src[j])).collect();
            let targets: BTreeSet<usize> = (0..dst.len()).filter(|&r| to(&dst[r])).collect();
            let mut hit = BTreeSet::new();
            let mut bad = Vec::new();
            for &j in &sources {
                match single(j, c) {
                    Some(r) if targets.contains(&r) && hit.insert(r) => {}
                    _ => bad.push(self.display_pair(&src[j])),
                }
            }
            let ok = bad.is_empty() && hit == targets;
            Check::new(
                name,
                ok,
                format!(
                    "{} sources, {} targets{}",
                    sources.len(),
                    targets.len(),
                    if bad.is_empty() { String::new() } else { format!(", bad at {}", bad.join(" ")) }
                ),
            )
        };
        checks.push(bijection(
            "-(0,0)+ onto --(0,1)",
            &|p| p.decorated(Minus, ZeroZero, Plus),
            &|p| p.refined == Some(Refined::MinusMinusZeroOne),
            sign,
        ));
        checks.push(bijection(
            "+(0,0)- onto (1,0)--",
            &|p| p.decorated(Plus, ZeroZero, Minus),
            &|p| p.refined == Some(Refined::OneZeroMinusMinus),
            1,
        ));
        checks.push(bijection(
            "(1,0)+ onto (1,1)",
            &|p| p.is(OneZero) && p.right == Plus,
            &|p| p.is(OneOne),
            sign,
        ));

        // (id + (-1)^{n-1} φ_{n-1}) lands in the kernel
        if n > 2 {
            let mut bad = Vec::new();
            let mut total = 0;
            for j in (0..src.len()).filter(|&j| src[j].is(OneZero) && src[j].right == Plus) {
                total += 1;
                let ok = match self.phi(n - 1, j) {
                    Ok(k) => {
                        let mut v = vec![Rational::zero(); src.len()];
                        v[j] = Rational::one();
                        v[k] += Rational::from_integer((-sign).into());
                        f.mul_vec(&v).expect("dims").iter().all(Zero::is_zero)
                    }
                    Err(_) => false,
                };
                if !ok {
                    bad.push(self.display_pair(&src[j]));
                }
            }
            checks.push(Check::new(
                "(1,0)+ plus its phi-image is a cocycle",
                bad.is_empty(),
                format!("{total} pairs{}", if bad.is_empty() { String::new() } else { format!(", bad at {}", bad.join(" ")) }),
            ));
        }

        // F_n on +(0,0)+ is e_a + (-1)^n e_b with b = φ_n(a) or ψ_n(a)
        let mut bad = Vec::new();
        let mut heads = BTreeSet::new();
        let sources: Vec<usize> = (0..src.len()).filter(|&j| src[j].decorated(Plus, ZeroZero, Plus)).collect();
        for &j in &sources {
            let col = column(j);
            let one = Rational::one();
            let signed = Rational::from_integer(sign.into());
            let ok = col.len() == 2
                && col.iter().any(|(a, v)| {
                    *v == one
                        && col.iter().any(|(b, u)| {
                            b != a
                                && *u == signed
                                && match dst[*a].refined {
                                    Some(Refined::OneZeroMinusPlus) => self.psi(n, *a).ok() == Some(*b),
                                    _ if dst[*a].is(OneZero) && dst[*a].right == Plus => {
                                        self.phi(n, *a).ok() == Some(*b)
                                    }
                                    _ => false,
                                }
                                && heads.insert(*a)
                        })
                });
            if !ok {
                bad.push(self.display_pair(&src[j]));
            }
        }
        let expected = cd.one_zero_plus + cd.one_zero_minus_plus;
        checks.push(Check::new(
            "+(0,0)+ onto (1,0)+ and (1,0)-+",
            bad.is_empty() && sources.len() == expected,
            format!(
                "{} sources, {expected} targets{}",
                sources.len(),
                if bad.is_empty() { String::new() } else { format!(", bad at {}", bad.join(" ")) }
            ),
        ));

        Ok(KerImAudit {
            degree: n,
            kernel_matrix,
            kernel_count,
            image_matrix,
            image_count,
            checks,
        })
    }
}

fn classify(res: &Resolution, n: usize, rho: &Path, gamma: &Path) -> (Option<PairClass>, Decoration, Decoration, Option<Refined>) {
    let alg = res.algebra();
    let dec = |killed: bool| if killed { Decoration::Minus } else { Decoration::Plus };
    let left = dec(alg.left_killed(gamma));
    let right = dec(alg.right_killed(gamma));
    let class = match n {
        0 => None,
        1 => Some(if rho == gamma { PairClass::OneOne } else { PairClass::ZeroZero }),
        _ => {
            let first = gamma.first_arrow().is_some() && gamma.first_arrow() == rho.first_arrow();
            let last = gamma.last_arrow().is_some() && gamma.last_arrow() == rho.last_arrow();
            Some(match (first, last) {
                (false, false) => PairClass::ZeroZero,
                (true, false) => PairClass::OneZero,
                (false, true) => PairClass::ZeroOne,
                (true, true) => PairClass::OneOne,
            })
        }
    };
    let refined = match (class, left, right) {
        (Some(PairClass::OneZero), _, Decoration::Minus) => {
            let hat = gamma.suffix(gamma.len() - 1);
            Some(if alg.right_killed(&hat) { Refined::OneZeroMinusMinus } else { Refined::OneZeroMinusPlus })
        }
        (Some(PairClass::ZeroOne), Decoration::Minus, _) => {
            let hat = gamma.prefix(gamma.len() - 1);
            Some(if alg.left_killed(&hat) { Refined::MinusMinusZeroOne } else { Refined::PlusMinusZeroOne })
        }
        _ => None,
    };
    (class, left, right, refined)
}

fn pair_basis(res: &Resolution, n: usize) -> PairBasis {
    let basis = res.algebra().basis();
    let mut pairs = Vec::new();
    for (rho_i, elem) in res.ap().degree(n).iter().enumerate() {
        let rho = elem.support();
        for (gamma_i, gamma) in basis.paths().iter().enumerate() {
            if !gamma.is_parallel(rho) {
                continue;
            }
            let (class, left, right, refined) = classify(res, n, rho, gamma);
            pairs.push(ParallelPair {
                degree: n,
                rho: rho_i,
                gamma: gamma_i,
                class,
                left,
                right,
                refined,
            });
        }
    }
    let index = pairs.iter().enumerate().map(|(i, p)| ((p.rho, p.gamma), i)).collect();
    PairBasis { pairs, index }
}
