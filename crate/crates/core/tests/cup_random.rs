use hhstring::cup::{cocycle_basis, collapsed_image, cup_table, is_coboundary, normalize_geq, normalize_leq, ComparisonMap};
use hhstring::generate::{random_presentation, GenOptions};
use hhstring::{CochainComplex, StringAlgebra};

fn complex(seed: u64, vertices: usize, opts: GenOptions) -> CochainComplex {
    let p = random_presentation(seed, vertices, opts);
    CochainComplex::new(&StringAlgebra::new(p).unwrap()).unwrap()
}

#[test]
fn cup_products_vanish_on_random_presentations() {
    let mut checked = 0;
    for seed in 0..60 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        let report = cup_table(&cx, None).unwrap();
        assert!(report.products_vanish(), "seed {seed}: {report:#?}");
        checked += report.pairs_checked;
    }
    assert!(checked > 0);
}

#[test]
fn displayed_lift_is_a_chain_map_for_quadratic_relations() {
    for seed in 0..40 {
        let opts = GenOptions { quadratic_only: true, ..Default::default() };
        let cx = complex(seed, 2 + seed as usize % 7, opts);
        let report = cup_table(&cx, None).unwrap();
        assert!(report.passed(), "seed {seed}: {report:#?}");
    }
}

#[test]
fn displayed_lift_is_a_chain_map_above_degree_one() {
    for seed in 0..60 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        for m in 2..cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                let lift = ComparisonMap::new(&cx, &f).unwrap();
                assert!(lift.audit(&cx, &f).passed(), "seed {seed} m {m}");
            }
        }
    }
}

#[test]
fn solved_lifts_are_chain_maps() {
    for seed in 0..60 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        for m in 1..cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                let lift = ComparisonMap::solved(&cx, &f).unwrap();
                assert!(lift.audit(&cx, &f).passed(), "seed {seed} m {m}");
            }
        }
    }
}

#[test]
fn normalized_representatives_are_cohomologous() {
    for seed in 0..40 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        for m in 1..=cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                assert!(is_coboundary(&cx, &f.sub(&normalize_leq(&cx, &f).unwrap())), "seed {seed}");
                assert!(is_coboundary(&cx, &f.sub(&normalize_geq(&cx, &f).unwrap())), "seed {seed}");
            }
        }
    }
}

#[test]
fn even_comparison_collapses_on_random_presentations() {
    for seed in 0..30 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        for m in 1..cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                let lift = ComparisonMap::new(&cx, &f).unwrap();
                for n in (2..=cx.cutoff() - m).step_by(2) {
                    for i in 0..cx.resolution().ap().len(n + m) {
                        assert_eq!(lift.image(n, i), &collapsed_image(&cx, &f, n, i).unwrap());
                    }
                }
            }
        }
    }
}
