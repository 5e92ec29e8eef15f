use proptest::prelude::*;

use hhstring::bardzell::{ap_op_sets, ap_sets};
use hhstring::cup::{cocycle_basis, cup, is_coboundary, normalize_geq, normalize_leq, Cochain, ComparisonMap};
use hhstring::generate::{random_presentation, GenOptions};
use hhstring::linalg::Rational;
use hhstring::presentation::{parse, render};
use hhstring::{CochainComplex, StringAlgebra};

fn complex(seed: u64, vertices: usize, opts: GenOptions) -> CochainComplex {
    CochainComplex::new(&StringAlgebra::new(random_presentation(seed, vertices, opts)).unwrap()).unwrap()
}

fn options() -> impl Strategy<Value = GenOptions> {
    (any::<bool>(), 0usize..4).prop_map(|(quadratic_only, long_relations)| GenOptions {
        quadratic_only,
        long_relations,
        ..Default::default()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rendered_presentations_parse_back(seed in any::<u64>(), v in 1usize..=8) {
        let p = random_presentation(seed, v, GenOptions::default());
        let again = parse(&render(&p)).unwrap();
        prop_assert_eq!(render(&again), render(&p));
    }

    #[test]
    fn resolution_is_exact(seed in any::<u64>(), v in 1usize..=7, opts in options()) {
        let cx = complex(seed, v, opts);
        let rc = cx.resolution().resolution_check();
        prop_assert!(rc.squares_vanish);
        prop_assert!(rc.homology.iter().all(|&h| h == 0), "{:?}", rc.homology);
        prop_assert_eq!(rc.euler_characteristic, 0);
    }

    #[test]
    fn forward_and_dual_ap_sets_agree(seed in any::<u64>(), v in 1usize..=8, opts in options()) {
        let p = random_presentation(seed, v, opts);
        let top = p.quiver().num_vertices() + 1;
        prop_assert_eq!(ap_sets(&p, top).unwrap(), ap_op_sets(&p, top).unwrap());
    }

    #[test]
    fn divisor_counts(seed in any::<u64>(), v in 1usize..=8, opts in options()) {
        let cx = complex(seed, v, opts);
        let res = cx.resolution();
        for n in 1..cx.cutoff() {
            for (i, w) in res.ap().degree(n).iter().enumerate() {
                if n % 2 == 1 || (n >= 2 && w.has_quadratic_relation()) {
                    prop_assert_eq!(res.sub(n, i).len(), 2);
                }
            }
        }
    }

    #[test]
    fn formula_matches_ranks(seed in any::<u64>(), v in 1usize..=8, opts in options()) {
        let cx = complex(seed, v, opts);
        prop_assert_eq!(cx.hh_dims_formula(), cx.hh_dims_matrix());
    }

    #[test]
    fn two_constructions_of_the_cochain_maps(seed in any::<u64>(), v in 1usize..=7, opts in options()) {
        let cx = complex(seed, v, opts);
        for n in 1..=cx.cutoff() + 1 {
            prop_assert_eq!(&cx.dualized_matrix(n), cx.cochain_matrix(n));
        }
        for n in 1..=cx.cutoff() {
            prop_assert!(cx.cochain_matrix(n + 1).mul(cx.cochain_matrix(n)).unwrap().is_zero());
        }
    }

    #[test]
    fn counting_lemma(seed in any::<u64>(), v in 1usize..=7, opts in options()) {
        let cx = complex(seed, v, opts);
        for n in 2..=cx.cutoff() + 1 {
            let audit = cx.ker_im_audit(n).unwrap();
            prop_assert!(audit.passed(), "{:#?}", audit.checks);
        }
    }

    #[test]
    fn first_cohomology_detects_trees(seed in any::<u64>(), v in 1usize..=8, tree in any::<bool>()) {
        let cx = complex(seed, v, GenOptions { tree, ..Default::default() });
        let q = cx.algebra().quiver();
        let is_tree = q.num_arrows() + 1 == q.num_vertices();
        let dims = cx.hh_dims_matrix();
        prop_assert_eq!(dims[1] == 0, is_tree);
        prop_assert!(dims[1] + q.num_vertices() >= q.num_arrows() + 1);
        if is_tree {
            prop_assert!(dims[1..].iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn quadratic_algebras_have_no_plus_minus_pairs(seed in any::<u64>(), v in 1usize..=8) {
        let cx = complex(seed, v, GenOptions { quadratic_only: true, ..Default::default() });
        let dims = cx.hh_dims_matrix();
        for n in 2..=cx.cutoff() {
            let c = cx.counts(n);
            prop_assert_eq!(c.plus_minus_zero_one, 0);
            prop_assert_eq!(dims[n], c.zero_zero_minus_minus);
        }
    }

    #[test]
    fn normalizations_keep_the_class(seed in any::<u64>(), v in 2usize..=7, opts in options()) {
        let cx = complex(seed, v, opts);
        for m in 1..=cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                let low = normalize_leq(&cx, &f).unwrap();
                let high = normalize_geq(&cx, &f).unwrap();
                prop_assert!(is_coboundary(&cx, &f.sub(&low)));
                prop_assert!(is_coboundary(&cx, &f.sub(&high)));
            }
        }
    }

    #[test]
    fn solved_lifts_are_chain_maps(seed in any::<u64>(), v in 2usize..=7, opts in options()) {
        let cx = complex(seed, v, opts);
        for m in 1..cx.cutoff() {
            for f in cocycle_basis(&cx, m) {
                let lift = ComparisonMap::solved(&cx, &f).unwrap();
                prop_assert!(lift.audit(&cx, &f).passed());
            }
        }
    }

    #[test]
    fn cup_is_bilinear_and_vanishes(seed in any::<u64>(), v in 2usize..=7, a in -3i64..=3, b in -3i64..=3) {
        let cx = complex(seed, v, GenOptions::default());
        let c = |x: i64| Rational::from_integer(x.into());
        for n in 1..cx.cutoff() {
            for m in 1..cx.cutoff() - n {
                let gs = cocycle_basis(&cx, n);
                let fs = cocycle_basis(&cx, m);
                if gs.is_empty() || fs.is_empty() {
                    continue;
                }
                let g = &gs[0];
                let g2 = &gs[gs.len() - 1];
                let f = &fs[0];
                let mut mix = Cochain::zero(n);
                mix.add_scaled(g, &c(a));
                mix.add_scaled(g2, &c(b));
                let mut expected = Cochain::zero(n + m);
                expected.add_scaled(&cup(&cx, g, f).unwrap(), &c(a));
                expected.add_scaled(&cup(&cx, g2, f).unwrap(), &c(b));
                prop_assert_eq!(cup(&cx, &mix, f).unwrap(), expected);
                prop_assert!(is_coboundary(&cx, &cup(&cx, g, f).unwrap()));
            }
        }
    }
}
