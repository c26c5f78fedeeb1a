use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triwidth_core::apps::tv::{
    shipped_table_r3, tv_bruteforce, tv_count_bruteforce, tv_count_dp, tv_dp, tv_problem, TvTable,
};
use triwidth_core::apps::AppError;
use triwidth_core::generate::random_closed_triangulation;
use triwidth_core::mso::{solve_evaluation, Model, DEFAULT_BUDGET};
use triwidth_core::tdecomp::min_fill_decomposition;
use triwidth_core::{compute_skeleton, dual_graph, fixtures, subdivide_simplex, Triangulation};

const TOL: f64 = 1e-9;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL * a.norm().max(b.norm()).max(1.0)
}

fn tv(t: &Triangulation, table: &TvTable) -> Complex64 {
    tv_bruteforce(t, &compute_skeleton(t), table).unwrap()
}

/// Independent count: every map from edges to colours, checked face by face.
fn count_oracle(t: &Triangulation, r: usize) -> u128 {
    let sk = compute_skeleton(t);
    let edges = sk.faces(1).len();
    let tris: Vec<[usize; 3]> = (0..t.size())
        .flat_map(|s| {
            let sk = &sk;
            [[0usize, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
                .into_iter()
                .map(move |[a, b, c]| {
                    let e = |x: usize, y: usize| sk.face_at(s, &[x, y]).id;
                    [e(a, b), e(a, c), e(b, c)]
                })
        })
        .collect();
    let n = r - 1;
    let mut count = 0;
    for code in 0..n.pow(edges as u32) {
        let colour: Vec<usize> = (0..edges).map(|e| code / n.pow(e as u32) % n).collect();
        let ok = tris.iter().all(|&[x, y, z]| {
            let (a, b, c) = (colour[x], colour[y], colour[z]);
            (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (r - 2)
        });
        count += u128::from(ok);
    }
    count
}

#[test]
fn dp_matches_bruteforce_on_random_closed() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let t = random_closed_triangulation(&mut rng, 3, n);
        let sk = compute_skeleton(&t);
        let td = min_fill_decomposition(&dual_graph(&t));
        let r = 3 + i % 2;
        let table = TvTable::unit(r);
        let brute = tv_bruteforce(&t, &sk, &table).unwrap();
        let dp = tv_dp(&t, &sk, &table, &td).unwrap();
        assert!(close(brute, dp), "{brute} vs {dp}");
        let count = tv_count_bruteforce(&t, &sk, r).unwrap();
        assert_eq!(count, tv_count_dp(&t, &sk, r, &td).unwrap());
        assert!(close(brute, Complex64::new(count as f64, 0.0)));
        if i < 20 {
            assert_eq!(count, count_oracle(&t, r));
        }
        let shipped = shipped_table_r3();
        assert!(close(
            tv_bruteforce(&t, &sk, &shipped).unwrap(),
            tv_dp(&t, &sk, &shipped, &td).unwrap()
        ));
    }
}

#[test]
fn shipped_table_is_invariant_under_subdivision() {
    let table = shipped_table_r3();
    for t in [fixtures::s3_two_tet(), fixtures::one_tet_closed()] {
        let base = tv(&t, &table);
        let once = subdivide_simplex(&t, 0).unwrap();
        let twice = subdivide_simplex(&once, once.size() - 1).unwrap();
        for s in [&once, &twice] {
            let v = tv(s, &table);
            assert!(close(base, v), "{base} vs {v}");
            let td = min_fill_decomposition(&dual_graph(s));
            assert!(close(base, tv_dp(s, &compute_skeleton(s), &table, &td).unwrap()));
        }
    }
}

#[test]
fn encoding_agrees_with_bruteforce() {
    let t = fixtures::s3_two_tet();
    let sk = compute_skeleton(&t);
    for table in [shipped_table_r3(), TvTable::unit(3)] {
        let problem = tv_problem(&t, &sk, &table).unwrap();
        let value = solve_evaluation(&Model::triangulation(&sk), &problem, DEFAULT_BUDGET).unwrap();
        let brute = tv_bruteforce(&t, &sk, &table).unwrap();
        assert!(close(value, brute), "{value} vs {brute}");
    }
}

#[test]
fn rejects_boundary_and_wrong_dimension() {
    let table = TvTable::unit(3);
    let open = Triangulation::new(3, 1).unwrap();
    assert!(matches!(
        tv_bruteforce(&open, &compute_skeleton(&open), &table),
        Err(AppError::NotClosed(_))
    ));
    let klein = fixtures::klein_bottle();
    assert!(matches!(
        tv_bruteforce(&klein, &compute_skeleton(&klein), &table),
        Err(AppError::WrongDimension { .. })
    ));
}

#[test]
fn table_missing_beta_is_rejected() {
    let text = shipped_table_r3().to_json();
    let mut raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    raw["beta"].as_object_mut().unwrap().remove("1/2");
    assert!(matches!(TvTable::from_json(&raw.to_string()), Err(AppError::Table(_))));
}
