//! One line per acceptance criterion, then a single assertion that all passed.
//! Run with `cargo test -p triwidth-core --test acceptance -- --nocapture`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triwidth_core::apps::morse::{morse_optimal, morse_problem, morse_validate};
use triwidth_core::apps::taut::{is_taut, taut_bruteforce, taut_dp, taut_sentence};
use triwidth_core::apps::tv::{
    shipped_table_r3, tv_bruteforce, tv_count_bruteforce, tv_count_dp, tv_dp, tv_problem, TvTable,
};
use triwidth_core::fixtures;
use triwidth_core::generate::{
    layered_taut_triangulation, random_closed_triangulation, random_coloured_graph, random_triangulation,
};
use triwidth_core::graphs::{encode_simple, encoded_size_formula, EdgeColouredGraph, SimpleGraph};
use triwidth_core::hasse::{build_hasse, hasse_size_bound};
use triwidth_core::mso::{
    count_solutions, holds, library, parse_formula, solve_evaluation, solve_extremum, translate_coloured,
    translate_triangulation, Declarations, ExtremumProblem, Model, Signature, Sort, DEFAULT_BUDGET,
};
use triwidth_core::tdecomp::{lift_to_encoded, lift_to_hasse, min_fill_decomposition};
use triwidth_core::{compute_skeleton, dual_graph, subdivide_simplex, Triangulation};

/// Relative tolerance for complex comparisons.
const TOL: f64 = 1e-9;
/// Minimum coefficient of determination for the affine timing fit.
const MIN_R2: f64 = 0.95;

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= TOL * a.norm().max(b.norm()).max(1.0)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1_klein_counts() -> Outcome {
    let t = fixtures::klein_bottle();
    let sk = compute_skeleton(&t);
    let dual = dual_graph(&t);
    let h = build_hasse(&sk);
    let loops = dual.loop_count();
    let links = dual.arcs.len() - loops;
    let got = (sk.f_vector(), links, loops, h.node_count(), h.graph.arcs().len());
    ensure(got == (vec![1, 3, 2], 1, 2, 7, 13), || format!("got {got:?}"))?;
    Ok("f=(1,3,2), dual 1 link + 2 loops, Hasse 7 nodes / 13 arcs".into())
}

fn c2_solid_torus() -> Outcome {
    let f = compute_skeleton(&fixtures::solid_torus()).f_vector();
    ensure(f == vec![1, 3, 3, 1], || format!("got {f:?}"))?;
    Ok("f=(1,3,3,1)".into())
}

fn c3_encoding_size() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let k = rng.gen_range(1..=3);
        let p = rng.gen_range(0.0..0.5);
        let g = random_coloured_graph(&mut rng, n, k, p);
        let enc = encode_simple(&g);
        // direct count: cliques on 3..k+2 nodes, plus one node and three arcs per original arc
        let clique_nodes: usize = (1..=k).map(|i| i + 2).sum();
        let clique_arcs: usize = (1..=k).map(|i| binomial(i + 2, 2)).sum();
        let direct = clique_nodes + clique_arcs + n + 4 * g.arcs().len();
        let formula = encoded_size_formula(n, g.arcs().len(), k);
        ensure(enc.graph.size() == formula && formula == direct, || {
            format!(
                "n={n} k={k}: size {} formula {formula} direct {direct}",
                enc.graph.size()
            )
        })?;
    }
    Ok("100 graphs, size identity exact".into())
}

fn c4_lifted_widths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let k = rng.gen_range(1..=3);
        let g = random_coloured_graph(&mut rng, n, k, 0.2);
        let td = min_fill_decomposition(&g);
        let enc = encode_simple(&g);
        let lifted = lift_to_encoded(&td, &g, &enc).map_err(|e| e.to_string())?;
        lifted.validate(&enc.graph).map_err(|e| e.to_string())?;
        let bound = td.width() + binomial(k + 3, 2) - 1;
        ensure(lifted.width() <= bound, || {
            format!("encoded width {} > {bound}", lifted.width())
        })?;
    }
    for i in 0..100 {
        let d = 2 + i % 2;
        let n = rng.gen_range(1..=8);
        let t = random_triangulation(&mut rng, d, n, 0.7);
        let sk = compute_skeleton(&t);
        let h = build_hasse(&sk);
        let td = min_fill_decomposition(&dual_graph(&t));
        let lifted = lift_to_hasse(&td, &t, &sk, &h).map_err(|e| e.to_string())?;
        lifted.validate(&h.graph).map_err(|e| e.to_string())?;
        let bound = ((1 << (d + 1)) - 1) * (td.width() + 1);
        ensure(lifted.width() <= bound, || {
            format!("Hasse width {} > {bound}", lifted.width())
        })?;
    }
    Ok("100 encoded + 100 Hasse lifts valid within bounds".into())
}

fn c5_hasse_size() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let d = 2 + checked % 2;
        let n = rng.gen_range(1..=10);
        let t = random_triangulation(&mut rng, d, n, 0.6);
        let sk = compute_skeleton(&t);
        if sk.self_identified() {
            continue;
        }
        let h = build_hasse(&sk);
        let bound = hasse_size_bound(d, n);
        ensure(h.size() <= bound, || {
            format!("|H| = {} > {bound} for d={d}, n={n}", h.size())
        })?;
        checked += 1;
    }
    Ok("100 triangulations within 2^d(d+3)n".into())
}

fn c6_translations() -> Outcome {
    let sig = Signature::Graph { colours: 2 };
    let mut checks = 0usize;
    let sentences = common::GRAPH_SENTENCES
        .iter()
        .map(|s| parse_formula(s, sig, &vec![]).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let translated = sentences
        .iter()
        .map(|f| {
            translate_coloured(f, 2, &vec![])
                .map(|x| x.0)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let graphs = common::coloured_graphs(4, 2);
    for g in &graphs {
        let plain = EdgeColouredGraph::uncoloured(&encode_simple(g).graph);
        for (f, t) in sentences.iter().zip(&translated) {
            let a = holds(&Model::graph(g), f).map_err(|e| e.to_string())?;
            let b = holds(&Model::graph(&plain), t).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{f} disagrees on {g:?}"))?;
            checks += 1;
        }
    }
    let free: Declarations = vec![("D".into(), Sort::NodeSet)];
    let dom = parse_formula(
        "(forall node v (or (in v D) (exists node w (and (in w D) (adj v w)))))",
        sig,
        &free,
    )
    .map_err(|e| e.to_string())?;
    let (tdom, tfree) = translate_coloured(&dom, 2, &free).map_err(|e| e.to_string())?;
    for g in &graphs {
        let plain = EdgeColouredGraph::uncoloured(&encode_simple(g).graph);
        let a = count_solutions(&Model::graph(g), &dom, &free, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let b = count_solutions(&Model::graph(&plain), &tdom, &tfree, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("solution counts {a} vs {b} on {g:?}"))?;
    }

    let mut suite = common::all_triangulations(2, 1);
    suite.extend(common::all_triangulations(2, 2));
    suite.extend(common::all_triangulations(3, 1));
    let tri_free: Declarations = vec![("X".into(), Sort::FaceSet(1)), ("v".into(), Sort::Face(0))];
    for t in &suite {
        let d = t.dim();
        let sk = compute_skeleton(t);
        let h = build_hasse(&sk);
        for text in common::tri_sentences(d) {
            let f = parse_formula(&text, Signature::Tri { dim: d }, &vec![]).map_err(|e| e.to_string())?;
            let (g, _) = translate_triangulation(&f, d, &vec![]).map_err(|e| e.to_string())?;
            let a = holds(&Model::triangulation(&sk), &f).map_err(|e| e.to_string())?;
            let b = holds(&Model::graph(&h.graph), &g).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{text} disagrees on\n{t}"))?;
            checks += 1;
        }
        let f = parse_formula(
            "(forall face 1 e (implies (in e X) (sub 0 v e)))",
            Signature::Tri { dim: d },
            &tri_free,
        )
        .map_err(|e| e.to_string())?;
        let (g, gfree) = translate_triangulation(&f, d, &tri_free).map_err(|e| e.to_string())?;
        let a =
            count_solutions(&Model::triangulation(&sk), &f, &tri_free, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let b = count_solutions(&Model::graph(&h.graph), &g, &gfree, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("solution counts {a} vs {b} on\n{t}"))?;
    }
    Ok(format!(
        "{} graphs, {} triangulations, {checks} sentence checks, counts match",
        graphs.len(),
        suite.len()
    ))
}

fn c7_worked_examples() -> Outcome {
    let three = library::three_colourable();
    for (name, g, expected) in [
        ("C3", SimpleGraph::cycle(3), true),
        ("K4", SimpleGraph::complete(4), false),
    ] {
        let value = holds(&Model::graph(&EdgeColouredGraph::uncoloured(&g)), &three).map_err(|e| e.to_string())?;
        let oracle = common::three_colourable_oracle(&g);
        ensure(value == expected && oracle == expected, || {
            format!("3-colourability on {name}: {value}, oracle {oracle}")
        })?;
    }
    let orientable = library::orientable_surface();
    for (name, t, expected) in [
        ("Klein", fixtures::klein_bottle(), false),
        ("sphere", fixtures::sphere_2(), true),
    ] {
        let sk = compute_skeleton(&t);
        let value = holds(&Model::triangulation(&sk), &orientable).map_err(|e| e.to_string())?;
        let oracle = common::orientable_oracle(&t);
        ensure(value == expected && oracle == expected, || {
            format!("orientability on {name}: {value}, oracle {oracle}")
        })?;
    }
    let (free, formula) = library::dominating_set();
    let problem = ExtremumProblem {
        formula,
        free,
        coefficients: vec![1.into()],
        constant: 0.into(),
    };
    let p3 = EdgeColouredGraph::uncoloured(&SimpleGraph::path(3));
    let best = solve_extremum(&Model::graph(&p3), &problem, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let value = best.map(|b| b.value);
    ensure(value == Some(Rational64::from_integer(1)), || {
        format!("dominating set on P3: {value:?}")
    })?;
    Ok("C3 yes, K4 no, Klein non-orientable, sphere orientable, domination(P3)=1".into())
}

fn c8_taut() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let sentence = taut_sentence();
    let mut positive = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let t = if rng.gen_bool(0.5) {
            random_closed_triangulation(&mut rng, 3, n)
        } else {
            let p = rng.gen_range(0.3..1.0);
            random_triangulation(&mut rng, 3, n, p)
        };
        let sk = compute_skeleton(&t);
        let td = min_fill_decomposition(&dual_graph(&t));
        let brute = taut_bruteforce(&t, &sk).map_err(|e| e.to_string())?;
        let dp = taut_dp(&t, &sk, &td).map_err(|e| e.to_string())?;
        let logic = holds(&Model::triangulation(&sk), &sentence).map_err(|e| e.to_string())?;
        ensure(brute.is_some() == dp.is_some() && brute.is_some() == logic, || {
            format!("brute {} dp {} logic {logic} on\n{t}", brute.is_some(), dp.is_some())
        })?;
        if let Some(w) = &dp {
            ensure(is_taut(&sk, &w.types), || format!("dp witness invalid on\n{t}"))?;
        }
        positive += usize::from(logic);
    }
    let single = Triangulation::new(3, 1).unwrap();
    let sk = compute_skeleton(&single);
    ensure(
        taut_bruteforce(&single, &sk).map_err(|e| e.to_string())?.is_none(),
        || "single tetrahedron is taut".into(),
    )?;
    Ok(format!("200 agree ({positive} taut), single tetrahedron none"))
}

fn c9_morse() -> Outcome {
    let sk = compute_skeleton(&fixtures::klein_bottle());
    let h = build_hasse(&sk);
    let (c, m) = morse_optimal(&h, 10_000_000).map_err(|e| e.to_string())?;
    morse_validate(&h, &m.arcs).map_err(|e| format!("{e:?}"))?;
    ensure((c, m.arcs.len()) == (4, 1), || {
        format!("branch and bound gave c={c}, |M|={}", m.arcs.len())
    })?;
    let problem = morse_problem(2);
    let best = solve_extremum(&Model::triangulation(&sk), &problem, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let value = best.map(|b| b.value);
    ensure(value == Some(Rational64::from_integer(4)), || {
        format!("extremum encoding gave {value:?}")
    })?;
    Ok("c=4, |M|=1 by search and by the extremum encoding".into())
}

fn c10_turaev_viro() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for r in [3, 4] {
        let unit = TvTable::unit(r);
        for _ in 0..100 {
            let n = rng.gen_range(1..=4);
            let t = random_closed_triangulation(&mut rng, 3, n);
            let sk = compute_skeleton(&t);
            let td = min_fill_decomposition(&dual_graph(&t));
            let brute = tv_bruteforce(&t, &sk, &unit).map_err(|e| e.to_string())?;
            let dp = tv_dp(&t, &sk, &unit, &td).map_err(|e| e.to_string())?;
            ensure(close(brute, dp), || format!("r={r}: brute {brute} dp {dp}"))?;
            let count = tv_count_bruteforce(&t, &sk, r).map_err(|e| e.to_string())?;
            let count_dp = tv_count_dp(&t, &sk, r, &td).map_err(|e| e.to_string())?;
            ensure(count == count_dp, || format!("r={r}: counts {count} vs {count_dp}"))?;
        }
    }
    let table = shipped_table_r3();
    let mut values = Vec::new();
    for t in [fixtures::s3_two_tet(), fixtures::one_tet_closed()] {
        let base = tv_bruteforce(&t, &compute_skeleton(&t), &table).map_err(|e| e.to_string())?;
        let once = subdivide_simplex(&t, 0).map_err(|e| e.to_string())?;
        let twice = subdivide_simplex(&once, once.size() - 1).map_err(|e| e.to_string())?;
        for s in [&once, &twice] {
            let sk = compute_skeleton(s);
            let td = min_fill_decomposition(&dual_graph(s));
            let v = tv_dp(s, &sk, &table, &td).map_err(|e| e.to_string())?;
            ensure(close(base, v), || format!("subdivision changed {base} to {v}"))?;
        }
        values.push(base);
    }
    let t = fixtures::s3_two_tet();
    let sk = compute_skeleton(&t);
    let problem = tv_problem(&t, &sk, &table).map_err(|e| e.to_string())?;
    let encoded = solve_evaluation(&Model::triangulation(&sk), &problem, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let brute = tv_bruteforce(&t, &sk, &table).map_err(|e| e.to_string())?;
    ensure(close(encoded, brute), || {
        format!("encoding {encoded} vs brute force {brute}")
    })?;
    Ok(format!(
        "200 unit-table agreements, invariant values {values:?}, encoding {encoded}"
    ))
}

/// Mean time per call over a batch long enough to swamp timer resolution.
fn batch_time(reps: u32, f: &mut dyn FnMut()) -> Duration {
    let start = Instant::now();
    for _ in 0..reps {
        f();
    }
    start.elapsed() / reps
}

/// Per-workload time: batches are interleaved across workloads over several
/// rounds and the minimum kept, so background load hits all sizes alike.
fn interleaved_times(work: &mut [Box<dyn FnMut() + '_>]) -> Vec<Duration> {
    let reps: Vec<u32> = work
        .iter_mut()
        .map(|f| {
            let mut reps = 1u32;
            while batch_time(reps, f.as_mut()) * reps < Duration::from_millis(20) {
                reps *= 2;
            }
            reps
        })
        .collect();
    let mut best = vec![Duration::MAX; work.len()];
    for _ in 0..9 {
        for (i, f) in work.iter_mut().enumerate() {
            best[i] = best[i].min(batch_time(reps[i], f.as_mut()));
        }
    }
    best
}

fn r_squared(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    sxy * sxy / (sxx * syy)
}

fn c11_scaling() -> Outcome {
    let limit = Duration::from_secs(60);
    let sizes = [50usize, 100, 150, 200];
    let mut inputs = Vec::new();
    for &n in &sizes {
        let t = layered_taut_triangulation(n);
        let sk = compute_skeleton(&t);
        let td = min_fill_decomposition(&dual_graph(&t));
        let start = Instant::now();
        let w = taut_dp(&t, &sk, &td).map_err(|e| e.to_string())?;
        ensure(start.elapsed() < limit, || {
            format!("taut_dp at n={n} took {:?}", start.elapsed())
        })?;
        ensure(w.is_some_and(|w| is_taut(&sk, &w.types)), || {
            format!("layered n={n} lost its taut structure")
        })?;
        inputs.push((t, sk, td));
    }
    let mut work: Vec<Box<dyn FnMut() + '_>> = inputs
        .iter()
        .map(|(t, sk, td)| {
            Box::new(move || {
                taut_dp(t, sk, td).unwrap();
            }) as Box<dyn FnMut()>
        })
        .collect();
    let times = interleaved_times(&mut work);
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let ys: Vec<f64> = times.iter().map(|d| d.as_secs_f64()).collect();
    let r2 = r_squared(&xs, &ys);

    let t = layered_taut_triangulation(60);
    let sk = compute_skeleton(&t);
    let td = min_fill_decomposition(&dual_graph(&t));
    let start = Instant::now();
    tv_dp(&t, &sk, &shipped_table_r3(), &td).map_err(|e| e.to_string())?;
    let tv_time = start.elapsed();
    ensure(tv_time < limit, || format!("tv_dp at n=60 took {tv_time:?}"))?;
    ensure(r2 >= MIN_R2, || format!("R^2 = {r2:.4} < {MIN_R2} for times {times:?}"))?;
    Ok(format!(
        "taut_dp times {times:?} (R^2 = {r2:.4}), tv_dp n=60 in {tv_time:?}"
    ))
}

/// Name, time limit in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("Klein bottle counts", 1, c1_klein_counts),
        ("solid torus f-vector", 1, c2_solid_torus),
        ("encoding size identity", 5, c3_encoding_size),
        ("lifted decomposition widths", 30, c4_lifted_widths),
        ("Hasse diagram size bound", 10, c5_hasse_size),
        ("translation equivalence", 120, c6_translations),
        ("worked logic examples", 10, c7_worked_examples),
        ("taut three-way agreement", 120, c8_taut),
        ("Morse optimum on the Klein bottle", 30, c9_morse),
        ("Turaev-Viro agreement and invariance", 300, c10_turaev_viro),
        ("bounded-pathwidth scaling", 300, c11_scaling),
    ];
    let mut failures = 0;
    for (i, (name, seconds, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= Duration::from_secs(seconds) {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:?}, limit {seconds} s"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
