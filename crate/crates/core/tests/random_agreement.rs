use hhstring::generate::{random_presentation, GenOptions};
use hhstring::hochschild::Method;
use hhstring::{CochainComplex, StringAlgebra};

fn complex(seed: u64, vertices: usize, opts: GenOptions) -> CochainComplex {
    let p = random_presentation(seed, vertices, opts);
    CochainComplex::new(&StringAlgebra::new(p).unwrap()).unwrap()
}

#[test]
fn formula_matches_ranks_on_random_presentations() {
    for seed in 0..40 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        let t = cx.hh_table(Method::Both, None);
        assert!(t.agree(), "seed {seed}: {:?} vs {:?}", cx.hh_dims_formula(), cx.hh_dims_matrix());
    }
}

#[test]
fn dualized_route_matches_formula_route() {
    for seed in 0..20 {
        let cx = complex(seed, 2 + seed as usize % 6, GenOptions::default());
        for n in 1..=cx.cutoff() + 1 {
            assert_eq!(&cx.dualized_matrix(n), cx.cochain_matrix(n), "seed {seed} F_{n}");
        }
    }
}

#[test]
fn consecutive_maps_compose_to_zero() {
    for seed in 0..20 {
        let cx = complex(seed, 2 + seed as usize % 6, GenOptions::default());
        for n in 1..=cx.cutoff() {
            let prod = cx.cochain_matrix(n + 1).mul(cx.cochain_matrix(n)).unwrap();
            assert!(prod.is_zero(), "seed {seed} F_{}F_{n}", n + 1);
        }
    }
}

#[test]
fn ker_im_lemma_on_random_presentations() {
    for seed in 0..30 {
        let cx = complex(seed, 2 + seed as usize % 7, GenOptions::default());
        for n in 2..=cx.cutoff() + 1 {
            let audit = cx.ker_im_audit(n).unwrap();
            assert!(audit.passed(), "seed {seed} n {n}: {:#?}", audit.checks);
        }
    }
}

#[test]
fn trees_have_trivial_cohomology() {
    for seed in 0..20 {
        let cx = complex(seed, 1 + seed as usize % 8, GenOptions { tree: true, ..Default::default() });
        let dims = cx.hh_dims_matrix();
        assert_eq!(dims[0], 1);
        assert!(dims[1..].iter().all(|&d| d == 0), "seed {seed}: {dims:?}");
    }
}

