//! Exact linear algebra over the rationals.
//!
//! Matrices are stored as sparse rows of [`BigRational`]. Elimination is
//! fraction free: every row is scaled to a primitive integer vector and rows
//! are combined as `a·r − b·s`, then divided by their content. Rational
//! numbers only appear when reading off a reduced echelon form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A dense vector of rationals.
pub type Vector = Vec<Rational>;

/// A sparse row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, rational(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        if value.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, value);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &Rational) {
        let cur = self.get(r, c);
        self.set(r, c, cur + value);
    }

    pub fn row(&self, r: usize) -> &BTreeMap<usize, Rational> {
        &self.data[r]
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(&j, x)| (i, j, x)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, x) in self.nonzeros() {
            t.data[j].insert(i, x.clone());
        }
        t
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (&k, x) in row {
                for (&j, y) in &other.data[k] {
                    *acc.entry(j).or_insert_with(Rational::zero) += x * y;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().map(|(&j, x)| x * &v[j]).sum())
            .collect())
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, y: &[Rational]) -> Result<Vector, LinalgError> {
        self.transpose().mul_vec(y)
    }

    fn integer_rows(&self) -> impl Iterator<Item = IntRow> + '_ {
        self.data.iter().map(|row| IntRow::from_rational(row.iter().map(|(&j, x)| (j, x))))
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in self.integer_rows() {
            ech.insert_int(row);
        }
        ech.rank()
    }

    /// Basis of `{x : Mx = 0}`: one vector per non-pivot column `j` of the
    /// reduced row echelon form, with `x_j = 1` and the other free entries 0.
    pub fn nullspace(&self) -> Vec<Vector> {
        let mut ech = Echelon::new(self.cols);
        for row in self.integer_rows() {
            ech.insert_int(row);
        }
        let rref = ech.reduced();
        let pivot_cols: Vec<usize> = rref.iter().map(|(c, _)| *c).collect();
        (0..self.cols)
            .filter(|j| !pivot_cols.contains(j))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (pc, row) in &rref {
                    if let Some(v) = row.get(&free) {
                        x[*pc] = -v.clone();
                    }
                }
                x
            })
            .collect()
    }

    /// Decides `v ∈ col(M)`, returning a checkable certificate either way.
    pub fn in_column_space(&self, v: &[Rational]) -> Result<Membership, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::Dimension {
                expected: self.rows,
                got: v.len(),
            });
        }
        let rhs = self.cols;
        let mut ech = Echelon::new(self.cols + 1);
        for (i, row) in self.data.iter().enumerate() {
            let entries = row
                .iter()
                .map(|(&j, x)| (j, x.clone()))
                .chain((!v[i].is_zero()).then(|| (rhs, v[i].clone())));
            let owned: Vec<(usize, Rational)> = entries.collect();
            ech.insert_int(IntRow::from_rational(owned.iter().map(|(j, x)| (*j, x))));
        }
        if ech.has_pivot(rhs) {
            let functional = self
                .transpose()
                .nullspace()
                .into_iter()
                .find(|y| !dot(y, v).is_zero())
                .expect("an inconsistent system has a separating functional");
            return Ok(Membership::Outside { functional });
        }
        let mut preimage = vec![Rational::zero(); self.cols];
        for (pc, row) in ech.reduced() {
            if let Some(b) = row.get(&rhs) {
                preimage[pc] = b.clone();
            }
        }
        Ok(Membership::Inside { preimage })
    }

    /// Rank over `F_p`, for cross-checking the rational rank.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let to_mod = |x: &Rational| -> Option<u64> {
            let den = x.denom().mod_floor(&pb);
            if den.is_zero() {
                return None;
            }
            let num = x.numer().mod_floor(&pb);
            let inv = mod_pow(to_u64(&den), p - 2, p);
            Some(to_u64(&num) * inv % p)
        };
        let mut rows: Vec<BTreeMap<usize, u64>> = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(&j, x)| to_mod(x).filter(|&v| v != 0).map(|v| (j, v)))
                    .collect()
            })
            .collect();
        let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
        for mut row in rows.drain(..) {
            while let Some((&lead, &lv)) = row.iter().next() {
                match pivots.get(&lead) {
                    Some(prow) => {
                        // prow has leading 1; row -= lv * prow
                        for (&j, &pv) in prow {
                            let e = row.entry(j).or_insert(0);
                            *e = (*e + p - lv * pv % p) % p;
                            if *e == 0 {
                                row.remove(&j);
                            }
                        }
                    }
                    None => {
                        let inv = mod_pow(lv, p - 2, p);
                        for v in row.values_mut() {
                            *v = *v * inv % p;
                        }
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("reduced residue fits")
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a column-space membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `M · preimage = v`.
    Inside { preimage: Vector },
    /// `functional · M = 0` and `functional · v ≠ 0`.
    Outside { functional: Vector },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// A primitive integer row, sorted by column, with positive leading entry.
#[derive(Debug, Clone, PartialEq, Eq)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn from_rational<'a>(entries: impl Iterator<Item = (usize, &'a Rational)>) -> Self {
        let entries: Vec<(usize, &Rational)> = entries.filter(|(_, x)| !x.is_zero()).collect();
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let mut row: Vec<(usize, BigInt)> = entries
            .into_iter()
            .map(|(j, x)| (j, x.numer() * (&lcm / x.denom())))
            .collect();
        row.sort_by_key(|(j, _)| *j);
        let mut r = IntRow(row);
        r.normalize();
        r
    }

    fn lead(&self) -> Option<(usize, &BigInt)> {
        self.0.first().map(|(j, x)| (*j, x))
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(j, _)| *j)
            .ok()
            .map(|i| &self.0[i].1)
    }

    fn normalize(&mut self) {
        let g = self.0.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
        if g.is_zero() {
            return;
        }
        let flip = self.0[0].1.is_negative();
        for (_, x) in &mut self.0 {
            *x /= &g;
            if flip {
                *x = -&*x;
            }
        }
    }

    /// `a·self − b·other`, normalized.
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0);
            let cj = other.0.get(j).map(|e| e.0);
            let (col, val) = match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.0[i].1 - b * &other.0[j].1;
                    i += 1;
                    j += 1;
                    (x, v)
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    (x, a * &self.0[i - 1].1)
                }
                (Some(x), None) => {
                    i += 1;
                    (x, a * &self.0[i - 1].1)
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, -(b * &other.0[j - 1].1))
                }
                (None, None) => unreachable!(),
            };
            if !val.is_zero() {
                out.push((col, val));
            }
        }
        let mut r = IntRow(out);
        r.normalize();
        r
    }
}

/// An incrementally built row echelon basis, keyed by pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    dim: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn has_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, lv)) = row.lead() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let (_, pv) = p.lead().expect("pivot rows are nonzero");
            let (pv, lv) = (pv.clone(), lv.clone());
            let g = pv.gcd(&lv);
            row = row.combine(&(&pv / &g), p, &(&lv / &g));
        }
        row
    }

    fn insert_int(&mut self, row: IntRow) -> bool {
        let row = self.reduce(row);
        match row.lead() {
            Some((lead, _)) => {
                self.pivots.insert(lead, row);
                true
            }
            None => false,
        }
    }

    /// Adds a vector to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.insert_int(IntRow::from_rational(v.iter().enumerate()))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(IntRow::from_rational(v.iter().enumerate())).lead().is_none()
    }

    /// Reduced row echelon form: pivot column → row with leading entry 1.
    fn reduced(&self) -> Vec<(usize, BTreeMap<usize, Rational>)> {
        let mut rows: BTreeMap<usize, IntRow> = self.pivots.clone();
        let cols: Vec<usize> = rows.keys().copied().collect();
        for &pc in cols.iter().rev() {
            let prow = rows[&pc].clone();
            let pv = prow.lead().unwrap().1.clone();
            for &other in cols.iter().filter(|&&c| c < pc) {
                let row = &rows[&other];
                if let Some(x) = row.get(pc) {
                    let g = pv.gcd(x);
                    let updated = row.combine(&(&pv / &g), &prow, &(x / &g));
                    rows.insert(other, updated);
                }
            }
        }
        rows.into_iter()
            .map(|(pc, row)| {
                let lead = row.lead().unwrap().1.clone();
                let entries = row
                    .0
                    .iter()
                    .map(|(j, x)| (*j, Rational::new(x.clone(), lead.clone())))
                    .collect();
                (pc, entries)
            })
            .collect()
    }
}

/// Serde adapter writing rational coefficient maps as `"p/q"` strings.
pub mod rational_map {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let text: BTreeMap<usize, String> = map.iter().map(|(k, v)| (*k, v.to_string())).collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, Rational>, D::Error> {
        let text = BTreeMap::<usize, String>::deserialize(d)?;
        text.into_iter()
            .map(|(k, v)| v.parse::<Rational>().map(|x| (k, x)).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(2).rank(), 2);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(RationalMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(RationalMatrix::zeros(5, 0).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RationalMatrix::identity(3).nullspace().is_empty());
        let ns = RationalMatrix::zeros(3, 3).nullspace();
        assert_eq!(ns, vec![vec_of(&[1, 0, 0]), vec_of(&[0, 1, 0]), vec_of(&[0, 0, 1])]);
        let ns = RationalMatrix::from_rows(&[vec![1, 1]]).nullspace();
        assert_eq!(ns, vec![vec_of(&[-1, 1])]);
    }

    #[test]
    fn nullspace_is_rref_canonical() {
        let m = RationalMatrix::from_rows(&[vec![2, 4, 1, 3], vec![1, 2, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        // rref: [1 2 0 2; 0 0 1 -1], free columns 1 and 3
        assert_eq!(ns[0], vec_of(&[-2, 1, 0, 0]));
        assert_eq!(ns[1], vec_of(&[-2, 0, 1, 1]));
        for x in &ns {
            assert!(m.mul_vec(x).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn column_space_examples() {
        let id = RationalMatrix::identity(3);
        let v = vec_of(&[3, -1, 7]);
        assert_eq!(id.in_column_space(&v).unwrap(), Membership::Inside { preimage: v.clone() });

        let z = RationalMatrix::zeros(2, 2);
        match z.in_column_space(&vec_of(&[0, 5])).unwrap() {
            Membership::Outside { functional } => {
                assert!(!dot(&functional, &vec_of(&[0, 5])).is_zero());
            }
            other => panic!("{other:?}"),
        }

        let col = RationalMatrix::from_rows(&[vec![1], vec![2]]);
        assert_eq!(
            col.in_column_space(&vec_of(&[2, 4])).unwrap(),
            Membership::Inside { preimage: vec_of(&[2]) }
        );
        assert!(col.in_column_space(&vec_of(&[1])).is_err());
    }

    #[test]
    fn rational_solutions() {
        let m = RationalMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let Membership::Inside { preimage } = m.in_column_space(&vec_of(&[1, 1])).unwrap() else {
            panic!()
        };
        assert_eq!(preimage, vec![Rational::new(1.into(), 2.into()), Rational::new(1.into(), 3.into())]);
    }

    #[test]
    fn mod_p_rank() {
        let m = RationalMatrix::from_rows(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_mod_p(2), 1);
        assert_eq!(m.rank_mod_p(3), 2);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&vec_of(&[1, 1, 0])));
        assert!(e.insert(&vec_of(&[0, 1, 1])));
        assert!(!e.insert(&vec_of(&[1, 2, 1])));
        assert!(e.contains(&vec_of(&[2, 0, -2])));
        assert!(!e.contains(&vec_of(&[0, 0, 1])));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn product_and_transpose() {
        let a = RationalMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, -1]]);
        let b = RationalMatrix::from_rows(&[vec![1], vec![1], vec![1]]);
        assert_eq!(a.mul(&b).unwrap(), RationalMatrix::from_rows(&[vec![3], vec![0]]));
        assert_eq!(a.transpose().transpose(), a);
        assert!(b.mul(&b).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
            (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
                    .prop_map(move |rows| {
                        if rows.is_empty() {
                            RationalMatrix::zeros(0, c)
                        } else {
                            RationalMatrix::from_rows(&rows)
                        }
                    })
            })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in small_matrix()) {
                let ns = m.nullspace();
                prop_assert_eq!(m.rank() + ns.len(), m.cols());
                prop_assert_eq!(m.rank(), m.transpose().rank());
                for x in &ns {
                    prop_assert!(m.mul_vec(x).unwrap().iter().all(Zero::is_zero));
                }
            }

            #[test]
            fn membership_certificates_check(m in small_matrix(), v in proptest::collection::vec(-3i64..=3, 6)) {
                let v: Vector = v.into_iter().take(m.rows()).map(rational).collect();
                prop_assume!(v.len() == m.rows());
                match m.in_column_space(&v).unwrap() {
                    Membership::Inside { preimage } => prop_assert_eq!(m.mul_vec(&preimage).unwrap(), v),
                    Membership::Outside { functional } => {
                        prop_assert!(m.left_mul_vec(&functional).unwrap().iter().all(Zero::is_zero));
                        prop_assert!(!dot(&functional, &v).is_zero());
                    }
                }
            }

            #[test]
            fn images_are_members(m in small_matrix(), x in proptest::collection::vec(-3i64..=3, 6)) {
                let x: Vector = x.into_iter().take(m.cols()).map(rational).collect();
                prop_assume!(x.len() == m.cols());
                let v = m.mul_vec(&x).unwrap();
                prop_assert!(m.in_column_space(&v).unwrap().is_inside());
            }
        }
    }
}
