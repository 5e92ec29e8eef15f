//! The full self-audit: every structural property the computation relies
//! on, checked on one presentation.

use crate::bardzell::{ap_op_sets, ap_sets};
use crate::cup::{cocycle_basis, collapsed_image, cup_table, ComparisonMap};
use crate::hochschild::{CochainComplex, Method, PairClass};
use crate::presentation::Check;
use crate::ComputeError;

fn failures_detail(total: usize, bad: &[String]) -> String {
    if bad.is_empty() {
        format!("{total} checked")
    } else {
        let shown: Vec<&str> = bad.iter().take(5).map(String::as_str).collect();
        format!("{} of {total} failed: {}", bad.len(), shown.join("; "))
    }
}

/// `d² = 0` and exactness of the augmented resolution.
pub fn resolution_checks(cx: &CochainComplex) -> Vec<Check> {
    let rc = cx.resolution().resolution_check();
    vec![
        Check::new("d^2 = 0", rc.squares_vanish, format!("chain dims {:?}", rc.chain_dims)),
        Check::new(
            "resolution exact",
            rc.homology.iter().all(|&h| h == 0),
            format!("homology {:?}, euler {}", rc.homology, rc.euler_characteristic),
        ),
    ]
}

/// Forward and dual constructions agree, and divisor counts are as predicted.
pub fn ap_checks(cx: &CochainComplex) -> Result<Vec<Check>, ComputeError> {
    let res = cx.resolution();
    let p = res.algebra().presentation();
    let top = res.cutoff();
    let forward = ap_sets(p, top)?;
    let dual = ap_op_sets(p, top)?;
    let mut bad = Vec::new();
    for n in 2..forward.len().max(dual.len()) {
        if forward.get(n) != dual.get(n) {
            bad.push(format!("degree {n}"));
        }
    }
    let equal = Check::new("AP = AP^op", bad.is_empty(), failures_detail(forward.len().saturating_sub(2), &bad));

    let mut odd_bad = Vec::new();
    let mut quad_bad = Vec::new();
    let (mut odd_total, mut quad_total) = (0, 0);
    for n in 1..top {
        for (i, w) in res.ap().degree(n).iter().enumerate() {
            let count = res.sub(n, i).len();
            let name = || format!("{} has {count}", res.display(w.support()));
            if n % 2 == 1 {
                odd_total += 1;
                if count != 2 {
                    odd_bad.push(name());
                }
            }
            if n >= 2 && w.has_quadratic_relation() {
                quad_total += 1;
                if count != 2 {
                    quad_bad.push(name());
                }
            }
        }
    }
    Ok(vec![
        equal,
        Check::new("|Sub(w)| = 2 in odd degree", odd_bad.is_empty(), failures_detail(odd_total, &odd_bad)),
        Check::new(
            "|Sub(w)| = 2 with a quadratic relation",
            quad_bad.is_empty(),
            failures_detail(quad_total, &quad_bad),
        ),
    ])
}

/// Exhaustive classification, `(1,1)_2 = ∅`, the shared-arrow bound and stripping.
pub fn partition_checks(cx: &CochainComplex) -> Vec<Check> {
    let ap = cx.resolution().ap();
    let basis = cx.algebra().basis();
    let (mut total, mut unclassified, mut sum_bad) = (0, Vec::new(), Vec::new());
    let mut shared_bad = Vec::new();
    let mut strip_bad = Vec::new();
    let mut strip_total = 0;
    for n in 1..=cx.cutoff() {
        let c = cx.counts(n);
        if c.zero_zero + c.one_zero + c.zero_one + c.one_one != c.pairs
            || c.zero_zero_minus_minus + c.zero_zero_minus_plus + c.zero_zero_plus_minus + c.zero_zero_plus_plus
                != c.zero_zero
            || c.one_zero_plus + c.one_zero_minus_minus + c.one_zero_minus_plus != c.one_zero
            || c.plus_zero_one + c.minus_minus_zero_one + c.plus_minus_zero_one != c.zero_one
        {
            sum_bad.push(format!("degree {n}"));
        }
        for pair in cx.pairs(n) {
            total += 1;
            let shown = || cx.display_pair(pair);
            if pair.class.is_none() {
                unclassified.push(shown());
                continue;
            }
            let rho = cx.rho_path(pair);
            let gamma = cx.gamma_path(pair);
            let common_prefix = rho.arrows().iter().zip(gamma.arrows()).take_while(|(a, b)| a == b).count();
            let common_suffix =
                rho.arrows().iter().rev().zip(gamma.arrows().iter().rev()).take_while(|(a, b)| a == b).count();
            if rho != gamma && (common_prefix > 1 || common_suffix > 1) {
                shared_bad.push(shown());
            }
            if n < 2 {
                continue;
            }
            let stripped = match pair.class {
                Some(PairClass::OneZero) => Some((n - 1, rho.suffix(rho.len() - 1), gamma.suffix(gamma.len() - 1))),
                Some(PairClass::ZeroOne) => Some((n - 1, rho.prefix(rho.len() - 1), gamma.prefix(gamma.len() - 1))),
                Some(PairClass::OneOne) => Some((n - 2, rho.subpath(1, rho.len() - 1), gamma.subpath(1, gamma.len() - 1))),
                _ => None,
            };
            if let Some((d, r, g)) = stripped {
                strip_total += 1;
                let lower = ap
                    .index_of(d, &r)
                    .zip(basis.index_of(&g))
                    .and_then(|(ri, gi)| cx.pair_index(d, ri, gi))
                    .map(|k| cx.pair(d, k));
                let ok = match lower {
                    Some(low) if d == 0 => low.class.is_none(),
                    Some(low) => low.is(PairClass::ZeroZero),
                    None => false,
                };
                if !ok {
                    strip_bad.push(shown());
                }
            }
        }
    }
    let one_one_two = if cx.cutoff() >= 2 { cx.counts(2).one_one } else { 0 };
    let mut exhaustive = unclassified;
    exhaustive.extend(sum_bad);
    vec![
        Check::new("partition exhaustive and disjoint", exhaustive.is_empty(), failures_detail(total, &exhaustive)),
        Check::new("(1,1)_2 empty", one_one_two == 0, format!("|(1,1)_2| = {one_one_two}")),
        Check::new("shared-arrow bound", shared_bad.is_empty(), failures_detail(total, &shared_bad)),
        Check::new("stripping to (0,0)", strip_bad.is_empty(), failures_detail(strip_total, &strip_bad)),
    ]
}

/// Cochain maps: two constructions, `F_{n+1} F_n = 0`, the counting lemma.
pub fn cochain_checks(cx: &CochainComplex) -> Result<Vec<Check>, ComputeError> {
    let top = cx.cutoff();
    let mut dual_bad = Vec::new();
    let mut square_bad = Vec::new();
    for n in 1..=top + 1 {
        if &cx.dualized_matrix(n) != cx.cochain_matrix(n) {
            dual_bad.push(format!("F_{n}"));
        }
        if n <= top && !cx.cochain_matrix(n + 1).mul(cx.cochain_matrix(n)).expect("dims").is_zero() {
            square_bad.push(format!("F_{}F_{n}", n + 1));
        }
    }
    let mut lemma_bad = Vec::new();
    for n in 2..=top + 1 {
        let audit = cx.ker_im_audit(n)?;
        for c in audit.checks.iter().filter(|c| !c.passed) {
            lemma_bad.push(format!("n = {n}, {}: {}", c.name, c.detail));
        }
    }
    Ok(vec![
        Check::new("formula matrices = dualized differentials", dual_bad.is_empty(), failures_detail(top + 1, &dual_bad)),
        Check::new("F_{n+1} F_n = 0", square_bad.is_empty(), failures_detail(top, &square_bad)),
        Check::new("kernel/image lemma", lemma_bad.is_empty(), failures_detail(top, &lemma_bad)),
    ])
}

/// Formula against ranks, plus the tree and quadratic corollaries.
pub fn dimension_checks(cx: &CochainComplex) -> Vec<Check> {
    let table = cx.hh_table(Method::Both, None);
    let formula = cx.hh_dims_formula();
    let matrix = cx.hh_dims_matrix();
    let q = cx.algebra().quiver();
    let tree = q.num_arrows() + 1 == q.num_vertices();
    let quadratic = cx.algebra().relations().iter().all(|r| r.len() == 2);
    let extra: usize = (2..=cx.cutoff()).map(|n| cx.counts(n).plus_minus_zero_one).sum();
    vec![
        Check::new(
            "formula = matrix",
            table.agree() && formula == matrix,
            format!("formula {formula:?}, matrix {matrix:?}"),
        ),
        Check::new(
            "HH^1 = 0 iff tree",
            (matrix.get(1).copied().unwrap_or(0) == 0) == tree,
            format!("tree {tree}, HH^1 = {}", matrix.get(1).copied().unwrap_or(0)),
        ),
        Check::new(
            "quadratic: no +-(0,1) pairs",
            !quadratic || extra == 0,
            if quadratic { format!("{extra} pairs") } else { "not quadratic, vacuous".to_string() },
        ),
    ]
}

/// Chain-map property of the lifts, normalizations and cup vanishing.
pub fn cup_checks(cx: &CochainComplex) -> Result<Vec<Check>, ComputeError> {
    let report = cup_table(cx, None)?;
    let lift_bad: Vec<String> = report
        .chain_maps
        .iter()
        .filter(|a| !a.passed())
        .map(|a| format!("degree {} cocycle: {}", a.degree, a.failures.join(", ")))
        .collect();
    let mut collapse_bad = Vec::new();
    let mut collapse_total = 0;
    for m in 1..cx.cutoff() {
        for f in cocycle_basis(cx, m) {
            let lift = ComparisonMap::new(cx, &f)?;
            for n in (2..=cx.cutoff() - m).step_by(2) {
                for i in 0..cx.resolution().ap().len(n + m) {
                    collapse_total += 1;
                    if lift.image(n, i) != &collapsed_image(cx, &f, n, i)? {
                        collapse_bad.push(format!("m = {m}, n = {n}"));
                    }
                }
            }
        }
    }
    Ok(vec![
        Check::new(
            "comparison maps are chain maps",
            lift_bad.is_empty(),
            format!(
                "{}; max odd multiplicity {}",
                failures_detail(report.chain_maps.len(), &lift_bad),
                report.max_odd_multiplicity
            ),
        ),
        Check::new(
            "even comparison collapses",
            collapse_bad.is_empty(),
            failures_detail(collapse_total, &collapse_bad),
        ),
        Check::new(
            "[f] = [f^<=] = [f^>=]",
            report.normalization_failures.is_empty(),
            failures_detail(report.chain_maps.len(), &vec![String::new(); report.normalization_failures.len()]),
        ),
        Check::new(
            "cup products vanish",
            report.counterexamples.is_empty(),
            if report.pairs_checked == 0 {
                "no positive-degree classes".to_string()
            } else {
                failures_detail(report.pairs_checked, &vec![String::new(); report.counterexamples.len()])
            },
        ),
    ])
}

/// Every check, in a fixed order.
pub fn self_audit(cx: &CochainComplex) -> Result<Vec<Check>, ComputeError> {
    let mut checks = resolution_checks(cx);
    checks.extend(ap_checks(cx)?);
    checks.extend(partition_checks(cx));
    checks.extend(cochain_checks(cx)?);
    checks.extend(dimension_checks(cx));
    checks.extend(cup_checks(cx)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{double_line, StringAlgebra};

    #[test]
    fn double_lines_pass_everything() {
        for n in 1..=4 {
            let cx = CochainComplex::new(&StringAlgebra::new(double_line(n)).unwrap()).unwrap();
            for c in self_audit(&cx).unwrap() {
                assert!(c.passed, "A{n}: {} {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn long_relation_lifts_are_flagged() {
        // a degree-1 basis cocycle sits on an arrow strictly inside a long relation
        let p = crate::generate::random_presentation(31, 5, Default::default());
        let cx = CochainComplex::new(&StringAlgebra::new(p).unwrap()).unwrap();
        for c in self_audit(&cx).unwrap() {
            let expected = c.name != "comparison maps are chain maps";
            assert_eq!(c.passed, expected, "{} {}", c.name, c.detail);
        }
    }
}
