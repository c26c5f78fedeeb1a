use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triwidth_core::apps::taut::{is_taut, taut_bruteforce, taut_dp, taut_sentence};
use triwidth_core::generate::{random_closed_triangulation, random_triangulation};
use triwidth_core::mso::{holds, Model};
use triwidth_core::tdecomp::{min_fill_decomposition, TreeDecomposition};
use triwidth_core::{compute_skeleton, dual_graph, fixtures, Triangulation};

fn random_small(rng: &mut ChaCha8Rng) -> Triangulation {
    let n = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        random_closed_triangulation(rng, 3, n)
    } else {
        let p = rng.gen_range(0.3..1.0);
        random_triangulation(rng, 3, n, p)
    }
}

#[test]
fn three_way_agreement_on_random_triangulations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sentence = taut_sentence();
    let mut found = 0;
    for _ in 0..200 {
        let t = random_small(&mut rng);
        let sk = compute_skeleton(&t);
        let td = min_fill_decomposition(&dual_graph(&t));
        let brute = taut_bruteforce(&t, &sk).unwrap();
        let dp = taut_dp(&t, &sk, &td).unwrap();
        let logic = holds(&Model::triangulation(&sk), &sentence).unwrap();
        assert_eq!(brute.is_some(), dp.is_some(), "{t}");
        assert_eq!(brute.is_some(), logic, "{t}");
        for w in [&brute, &dp].into_iter().flatten() {
            assert!(is_taut(&sk, &w.types));
        }
        found += usize::from(brute.is_some());
    }
    assert!(found > 0, "suite never exercises the positive case");
}

#[test]
fn sentence_agrees_on_fixtures() {
    let sentence = taut_sentence();
    for t in [
        fixtures::s3_two_tet(),
        fixtures::one_tet_closed(),
        fixtures::solid_torus(),
        Triangulation::new(3, 1).unwrap(),
    ] {
        let sk = compute_skeleton(&t);
        let logic = holds(&Model::triangulation(&sk), &sentence).unwrap();
        assert_eq!(taut_bruteforce(&t, &sk).unwrap().is_some(), logic);
    }
}

#[test]
fn invalid_decomposition_is_rejected() {
    let t = fixtures::s3_two_tet();
    let sk = compute_skeleton(&t);
    let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
    assert!(taut_dp(&t, &sk, &td).is_err());
}
