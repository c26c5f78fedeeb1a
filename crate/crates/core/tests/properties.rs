use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triwidth_core::apps::morse::{critical_count, morse_optimal, morse_validate};
use triwidth_core::apps::taut::{taut_bruteforce, taut_dp};
use triwidth_core::apps::tv::{tv_count_bruteforce, tv_count_dp};
use triwidth_core::generate::{random_closed_triangulation, random_coloured_graph, random_triangulation};
use triwidth_core::hasse::build_hasse;
use triwidth_core::tdecomp::{min_fill_decomposition, TreeDecomposition};
use triwidth_core::{compute_skeleton, dual_graph, subdivide_simplex, Perm, Triangulation};

fn triangulation(seed: u64, dim: usize, size: usize) -> Triangulation {
    random_triangulation(&mut ChaCha8Rng::seed_from_u64(seed), dim, size, 0.7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_inverse_composes_to_identity(images in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let p = Perm::from_images(&images).unwrap();
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn text_format_round_trips(seed: u64, dim in 1usize..=4, size in 0usize..6) {
        let t = triangulation(seed, dim, size);
        let again: Triangulation = t.to_text().parse().unwrap();
        prop_assert_eq!(again, t);
    }

    #[test]
    fn hasse_has_a_node_per_face_plus_empty(seed: u64, dim in 1usize..=3, size in 1usize..6) {
        let t = triangulation(seed, dim, size);
        let sk = compute_skeleton(&t);
        let h = build_hasse(&sk);
        prop_assert_eq!(h.node_count(), sk.total_faces() + 1);
    }

    #[test]
    fn min_fill_decompositions_are_valid(seed: u64, nodes in 1usize..14, colours in 1usize..=3) {
        let g = random_coloured_graph(&mut ChaCha8Rng::seed_from_u64(seed), nodes, colours, 0.25);
        prop_assert!(min_fill_decomposition(&g).is_valid(&g));
        let t = triangulation(seed, 3, nodes.min(8));
        let dual = dual_graph(&t);
        prop_assert!(min_fill_decomposition(&dual).is_valid(&dual));
    }

    #[test]
    fn subdivision_keeps_euler_characteristic(seed: u64, size in 1usize..5) {
        let t = random_closed_triangulation(&mut ChaCha8Rng::seed_from_u64(seed), 3, size);
        let sub = subdivide_simplex(&t, 0).unwrap();
        let (a, b) = (compute_skeleton(&t), compute_skeleton(&sub));
        prop_assert_eq!(sub.size(), t.size() + 3);
        prop_assert!(sub.is_closed());
        prop_assert_eq!(a.euler_characteristic(), b.euler_characteristic());
        let (fa, fb) = (a.f_vector(), b.f_vector());
        prop_assert_eq!(fb[0], fa[0] + 1);
        prop_assert_eq!(fb[1], fa[1] + 4);
        prop_assert_eq!(fb[2], fa[2] + 6);
    }

    #[test]
    fn taut_dp_is_independent_of_decomposition(seed: u64, size in 1usize..6) {
        let t = triangulation(seed, 3, size);
        let sk = compute_skeleton(&t);
        let brute = taut_bruteforce(&t, &sk).unwrap().is_some();
        let coarse = taut_dp(&t, &sk, &TreeDecomposition::single_bag(size)).unwrap().is_some();
        let fine = taut_dp(&t, &sk, &min_fill_decomposition(&dual_graph(&t))).unwrap().is_some();
        prop_assert_eq!(brute, coarse);
        prop_assert_eq!(brute, fine);
    }

    #[test]
    fn tv_counts_are_independent_of_decomposition(seed: u64, size in 1usize..4, r in 3usize..=4) {
        let t = random_closed_triangulation(&mut ChaCha8Rng::seed_from_u64(seed), 3, size);
        let sk = compute_skeleton(&t);
        let brute = tv_count_bruteforce(&t, &sk, r).unwrap();
        prop_assert!(brute >= 1, "the zero colouring is always admissible");
        prop_assert_eq!(brute, tv_count_dp(&t, &sk, r, &TreeDecomposition::single_bag(size)).unwrap());
        prop_assert_eq!(brute, tv_count_dp(&t, &sk, r, &min_fill_decomposition(&dual_graph(&t))).unwrap());
    }

    #[test]
    fn optimal_morse_matchings_are_valid(seed: u64, size in 1usize..3) {
        let t = triangulation(seed, 2, size);
        let h = build_hasse(&compute_skeleton(&t));
        let (c, m) = morse_optimal(&h, 10_000_000).unwrap();
        prop_assert!(morse_validate(&h, &m.arcs).is_ok());
        prop_assert_eq!(c, critical_count(&h, m.arcs.len()));
        prop_assert!(c >= 1);
    }
}
