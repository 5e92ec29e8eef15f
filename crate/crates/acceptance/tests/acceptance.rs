//! One pass/fail line per acceptance criterion, over a fixed seeded corpus.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;

use clap::Parser;

use hhstring::audit::{ap_checks, partition_checks};
use hhstring::cup::cup_table;
use hhstring::presentation::Check;
use hhstring::CochainComplex;
use hhstring_cli::{run, Cli, EXIT_OK};
use hhstring_suite::{corpus, quadratic_corpus, tree_corpus, Verdict, TREES};

fn named<'a>(checks: &'a [Check], name: &str) -> &'a Check {
    checks.iter().find(|c| c.name == name).expect("check exists")
}

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../cli/tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn golden() -> Verdict {
    let mut v = Verdict::new(1, "double-line tables reproduced by the hh command");
    for n in 1..=5usize {
        let out = run(Cli::try_parse_from(["hhstring", "hh", &fixture(&format!("a{n}.txt"))]).unwrap());
        let mut expected = vec![0; n + 2];
        expected[0] = 1;
        expected[1] = if n == 1 { 3 } else { n };
        if n % 2 == 1 && n > 1 {
            expected[n] = 2;
        }
        let line = format!(
            "HH: {}",
            expected.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
        );
        let got = out.stdout.lines().next().unwrap_or("").to_string();
        v.expect(out.code == EXIT_OK && got == line, || format!("A{n}: got `{got}`, want `{line}`"));
    }
    v
}

fn trees() -> Verdict {
    let mut v = Verdict::new(2, "trees have HH^0 = 1 and HH^n = 0 for n >= 1");
    for (seed, cx) in tree_corpus() {
        let q = cx.algebra().quiver();
        let dims = cx.hh_dims_matrix();
        let ok = q.num_arrows() + 1 == q.num_vertices() && dims[0] == 1 && dims[1..].iter().all(|&d| d == 0);
        v.expect(ok, || format!("tree seed {seed}: {dims:?}"));
    }
    v
}

fn agreement(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(3, "formula dimensions equal exact-rank dimensions");
    for (seed, cx) in corpus {
        let (f, m) = (cx.hh_dims_formula(), cx.hh_dims_matrix());
        let q = cx.algebra().quiver();
        v.expect(q.num_vertices() <= 8 && q.num_arrows() <= 10, || format!("seed {seed}: corpus bounds"));
        v.expect(f == m, || format!("seed {seed}: formula {f:?}, matrix {m:?}"));
    }
    v
}

fn exactness(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(4, "resolution squares to zero and is exact");
    for (seed, cx) in corpus {
        let rc = cx.resolution().resolution_check();
        v.expect(rc.squares_vanish, || format!("seed {seed}: d^2 != 0"));
        v.expect(rc.homology.iter().all(|&h| h == 0), || {
            format!("seed {seed}: homology {:?}", rc.homology)
        });
    }
    v
}

fn duality(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(5, "AP = AP^op and |Sub(w)| = 2 where required");
    for (seed, cx) in corpus {
        let checks = ap_checks(cx).expect("AP construction succeeds");
        for name in ["AP = AP^op", "|Sub(w)| = 2 in odd degree", "|Sub(w)| = 2 with a quadratic relation"] {
            let c = named(&checks, name);
            v.expect(c.passed, || format!("seed {seed}: {name}: {}", c.detail));
        }
    }
    v
}

fn kernel_image(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(6, "kernel/image counting audit in every degree");
    for (seed, cx) in corpus {
        for n in 2..=cx.cutoff() + 1 {
            let audit = cx.ker_im_audit(n).expect("degree in range");
            v.expect(audit.passed(), || {
                let bad: Vec<&str> = audit.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                format!("seed {seed}, degree {n}: {bad:?}")
            });
        }
    }
    v
}

fn cup_triviality(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(7, "cup products vanish, lifts are chain maps, normalizations keep the class");
    for (seed, cx) in corpus {
        let report = cup_table(cx, None).expect("cup table computes");
        v.expect(report.counterexamples.is_empty(), || {
            format!("seed {seed}: {} non-vanishing products", report.counterexamples.len())
        });
        for audit in &report.chain_maps {
            v.expect(audit.passed(), || {
                format!(
                    "seed {seed}: displayed lift of a degree {} cocycle fails the chain-map identity at {} generators",
                    audit.degree,
                    audit.failures.len()
                )
            });
        }
        v.expect(report.normalization_failures.is_empty(), || {
            format!("seed {seed}: {} normalizations change the class", report.normalization_failures.len())
        });
    }
    v
}

fn quadratic(quadratic: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(8, "quadratic algebras: no +-(0,1) pairs and HH^n = |-(0,0)-_n|");
    for (seed, cx) in quadratic {
        let dims = cx.hh_dims_matrix();
        for n in 2..=cx.cutoff() {
            let c = cx.counts(n);
            v.expect(c.plus_minus_zero_one == 0 && dims[n] == c.zero_zero_minus_minus, || {
                format!(
                    "quadratic seed {seed}, degree {n}: +-(0,1) = {}, HH = {}, -(0,0)- = {}",
                    c.plus_minus_zero_one, dims[n], c.zero_zero_minus_minus
                )
            });
        }
    }
    v
}

fn partition(corpus: &[(u64, CochainComplex)]) -> Verdict {
    let mut v = Verdict::new(9, "partition of parallel pairs, empty (1,1)_2, shared-arrow bound");
    for (seed, cx) in corpus {
        let checks = partition_checks(cx);
        for name in ["partition exhaustive and disjoint", "(1,1)_2 empty", "shared-arrow bound"] {
            let c = named(&checks, name);
            v.expect(c.passed, || format!("seed {seed}: {name}: {}", c.detail));
        }
    }
    v
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus();
    let quad = quadratic_corpus(&corpus);
    let verdicts = [
        golden(),
        trees(),
        agreement(&corpus),
        exactness(&corpus),
        duality(&corpus),
        kernel_image(&corpus),
        cup_triviality(&corpus),
        quadratic(&quad),
        partition(&corpus),
    ];
    println!(
        "corpus: {} presentations, {} trees, {} quadratic",
        corpus.len(),
        TREES,
        quad.len()
    );
    for v in &verdicts {
        println!("{}", v.line());
    }
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.passed()).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
