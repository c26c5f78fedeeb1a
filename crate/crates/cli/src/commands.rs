use std::fs;
use std::path::Path;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};
use triwidth_core::apps::morse::{
    matching_from_witness, morse_bruteforce, morse_optimal, morse_problem, morse_validate,
};
use triwidth_core::apps::taut::{taut_bruteforce, taut_dp};
use triwidth_core::apps::tv::{shipped_table_r3, tv_bruteforce, tv_count_bruteforce, tv_count_dp, tv_dp, TvTable};
use triwidth_core::graphs::{encode_simple, encoded_size_formula, parse_graph, ParsedGraph};
use triwidth_core::hasse::hasse_size_bound;
use triwidth_core::mso::{
    count_solutions, holds, parse_with_declarations, solutions, solve_evaluation, solve_extremum, EvaluationMode,
    EvaluationProblem, ExtremumProblem, Model, Value, DEFAULT_BUDGET,
};
use triwidth_core::tdecomp::{
    decompose, lift_to_encoded, lift_to_hasse, parse_decomposition, parse_decomposition_with, DecomposeMode,
};
use triwidth_core::{
    build_hasse, compute_skeleton, dual_graph, subdivide_simplex, AppError, Skeleton, TreeDecomposition, Triangulation,
};

use crate::error::CliError;
use crate::{Command, Global, Mode, MsoAction, TwAction};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    Triangulation::parse(&read(path)?).map_err(|source| CliError::Triangulation {
        path: path.display().to_string(),
        source,
    })
}

enum Structure {
    Tri(Triangulation),
    Graph(ParsedGraph),
}

/// Triangulation if the first record is `dim`, graph otherwise.
fn load_structure(path: &Path) -> Result<Structure, CliError> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next());
    let name = path.display().to_string();
    if first == Some("dim") {
        Triangulation::parse(&text)
            .map(Structure::Tri)
            .map_err(|source| CliError::Triangulation { path: name, source })
    } else {
        parse_graph(&text)
            .map(Structure::Graph)
            .map_err(|source| CliError::Graph { path: name, source })
    }
}

fn load_graph(path: &Path) -> Result<ParsedGraph, CliError> {
    match load_structure(path)? {
        Structure::Graph(g) => Ok(g),
        Structure::Tri(_) => Err(CliError::Usage(format!(
            "{}: expected a graph, found a triangulation",
            path.display()
        ))),
    }
}

fn required_td(global: &Global) -> Result<&Path, CliError> {
    global
        .td
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --td <file>".into()))
}

/// `--td` over simplex ids, or min-fill on the dual graph.
fn dual_decomposition(global: &Global, t: &Triangulation) -> Result<TreeDecomposition, CliError> {
    match &global.td {
        Some(path) => Ok(parse_decomposition(&read(path)?)?),
        None => Ok(decompose(&dual_graph(t), DecomposeMode::Heuristic)?),
    }
}

fn graph_decomposition(path: &Path, g: &ParsedGraph) -> Result<TreeDecomposition, CliError> {
    let text = read(path)?;
    Ok(parse_decomposition_with(&text, |tok| {
        g.names.iter().position(|n| n == tok)
    })?)
}

fn td_json(td: &TreeDecomposition) -> Json {
    json!({ "width": td.width(), "bags": td.bags(), "links": td.links(), "text": td.to_string() })
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Element(x) => json!(x),
        Value::Set(xs) => json!(xs),
    }
}

fn complex_json(z: Complex64) -> Json {
    json!([z.re, z.im])
}

fn budget(global: &Global) -> u64 {
    global.budget.unwrap_or(DEFAULT_BUDGET)
}

pub fn dispatch(global: &Global, command: Command) -> Result<Json, CliError> {
    match command {
        Command::Info { input } => info(&input),
        Command::Faces { input, dim } => faces(&input, dim),
        Command::Dual { input } => {
            let t = load_triangulation(&input)?;
            let d = dual_graph(&t);
            Ok(json!({ "nodes": d.nodes, "arcs": d.arcs, "degrees": d.degrees(), "loops": d.loop_count() }))
        }
        Command::Hasse { input } => hasse(&input),
        Command::Tw { action } => tw(global, action),
        Command::Encode { input } => encode(&input),
        Command::Mso { action } => mso(global, action),
        Command::Taut { input } => taut(global, &input),
        Command::Morse { input, encoding } => morse(global, &input, encoding),
        Command::Tv {
            input,
            r,
            table,
            unit,
            verify,
        } => tv(global, &input, r, table.as_deref(), unit, verify),
        Command::Subdivide { input, simplex } => subdivide(global, &input, simplex),
    }
}

fn info(input: &Path) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    let dual = dual_graph(&t);
    Ok(json!({
        "dim": t.dim(),
        "simplices": t.size(),
        "gluings": t.gluing_count(),
        "closed": t.is_closed(),
        "boundary_facets": t.boundary_facets().len(),
        "f_vector": sk.f_vector(),
        "euler_characteristic": sk.euler_characteristic(),
        "self_identified": sk.self_identified(),
        "dual_degrees": dual.degrees(),
        "dual_loops": dual.loop_count(),
    }))
}

fn faces(input: &Path, dim: Option<usize>) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    if let Some(d) = dim.filter(|&d| d > t.dim()) {
        return Err(AppError::WrongDimension {
            expected: d,
            found: t.dim(),
        }
        .into());
    }
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (0..=t.dim()).collect(),
    };
    let out: Vec<Json> = dims
        .into_iter()
        .flat_map(|i| sk.faces(i).iter())
        .map(|f| {
            let instances: Vec<Json> = f
                .instances
                .iter()
                .map(|(s, e)| json!({ "simplex": s, "vertices": e }))
                .collect();
            json!({ "dim": f.dim, "id": f.id, "instances": instances, "canonical": f.canonical })
        })
        .collect();
    Ok(json!({ "faces": out }))
}

fn hasse(input: &Path) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    let h = build_hasse(&sk);
    let nodes: Vec<Json> = (0..h.node_count()).map(|i| json!(h.node(i))).collect();
    let arcs: Vec<Json> = h
        .graph
        .arcs()
        .iter()
        .enumerate()
        .map(|(i, a)| json!({ "u": a.u, "v": a.v, "colour": h.arc_colour(i).to_string() }))
        .collect();
    Ok(json!({
        "nodes": nodes,
        "arcs": arcs,
        "size": h.size(),
        "size_bound": (!sk.self_identified()).then(|| hasse_size_bound(t.dim(), t.size())),
    }))
}

fn tw(global: &Global, action: TwAction) -> Result<Json, CliError> {
    match action {
        TwAction::Make { input, exact } => {
            let mode = if exact {
                DecomposeMode::Exact
            } else {
                DecomposeMode::Heuristic
            };
            let td = match load_structure(&input)? {
                Structure::Tri(t) => decompose(&dual_graph(&t), mode)?,
                Structure::Graph(g) => decompose(&g.graph, mode)?,
            };
            Ok(td_json(&td))
        }
        TwAction::Check { input } => {
            let path = required_td(global)?;
            let (td, result) = match load_structure(&input)? {
                Structure::Tri(t) => {
                    let td = parse_decomposition(&read(path)?)?;
                    let r = td.validate(&dual_graph(&t));
                    (td, r)
                }
                Structure::Graph(g) => {
                    let td = graph_decomposition(path, &g)?;
                    let r = td.validate(&g.graph);
                    (td, r)
                }
            };
            Ok(json!({ "valid": result.is_ok(), "width": td.width(), "violation": result.err() }))
        }
        TwAction::LiftEncoded { input } => {
            let g = load_graph(&input)?;
            let td = match &global.td {
                Some(path) => graph_decomposition(path, &g)?,
                None => decompose(&g.graph, DecomposeMode::Heuristic)?,
            };
            let enc = encode_simple(&g.graph);
            let lifted = lift_to_encoded(&td, &g.graph, &enc)?;
            let k = g.graph.colour_count();
            let bound = td.width() + (k + 3) * (k + 2) / 2 - 1;
            Ok(json!({ "source_width": td.width(), "width_bound": bound, "decomposition": td_json(&lifted) }))
        }
        TwAction::LiftHasse { input } => {
            let t = load_triangulation(&input)?;
            let td = dual_decomposition(global, &t)?;
            let sk = compute_skeleton(&t);
            let h = build_hasse(&sk);
            let lifted = lift_to_hasse(&td, &t, &sk, &h)?;
            let bound = ((1usize << (t.dim() + 1)) - 1) * (td.width() + 1);
            Ok(json!({ "source_width": td.width(), "width_bound": bound, "decomposition": td_json(&lifted) }))
        }
    }
}

fn encode(input: &Path) -> Result<Json, CliError> {
    let g = load_graph(input)?;
    let enc = encode_simple(&g.graph);
    Ok(json!({
        "nodes": enc.graph.nodes(),
        "arcs": enc.graph.arcs(),
        "origin": enc.origin,
        "size": enc.graph.size(),
        "size_formula": encoded_size_formula(g.graph.nodes(), g.graph.arcs().len(), g.graph.colour_count()),
    }))
}

/// Loads the structure, builds its model and parses the formula against it.
fn with_model<T>(
    structure: &Path,
    formula: &Path,
    run: impl FnOnce(&Model, &triwidth_core::mso::Declarations, &triwidth_core::mso::Formula) -> Result<T, CliError>,
) -> Result<T, CliError> {
    let text = read(formula)?;
    match load_structure(structure)? {
        Structure::Tri(t) => {
            let sk = compute_skeleton(&t);
            let model = Model::triangulation(&sk);
            let (free, f) = parse_with_declarations(&text, model.signature())?;
            run(&model, &free, &f)
        }
        Structure::Graph(g) => {
            let model = Model::graph(&g.graph);
            let (free, f) = parse_with_declarations(&text, model.signature())?;
            run(&model, &free, &f)
        }
    }
}

fn parse_rational(text: &str) -> Result<Rational64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("`{text}` is not a rational number")))
}

fn mso(global: &Global, action: MsoAction) -> Result<Json, CliError> {
    let budget = budget(global);
    match action {
        MsoAction::Check { structure, formula } => with_model(&structure, &formula, |model, free, f| {
            if free.is_empty() {
                return Ok(json!({ "holds": holds(model, f)? }));
            }
            let count = count_solutions(model, f, free, budget)?;
            let first = solutions(model, f, free, budget)?.into_iter().next();
            let first = first.map(|sol| {
                free.iter()
                    .zip(&sol)
                    .map(|((name, _), v)| (name.clone(), value_json(v)))
                    .collect::<serde_json::Map<_, _>>()
            });
            Ok(json!({ "solutions": count, "first": first }))
        }),
        MsoAction::Opt {
            structure,
            formula,
            coefficients,
            constant,
            maximize,
        } => with_model(&structure, &formula, |model, free, f| {
            let mut coeffs = if coefficients.is_empty() {
                vec![Rational64::from_integer(1); free.len()]
            } else {
                coefficients
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if coeffs.len() != free.len() {
                return Err(CliError::Usage(format!(
                    "{} coefficients for {} free sets",
                    coeffs.len(),
                    free.len()
                )));
            }
            let mut constant = parse_rational(&constant)?;
            if maximize {
                coeffs.iter_mut().for_each(|c| *c = -*c);
                constant = -constant;
            }
            let problem = ExtremumProblem {
                formula: f.clone(),
                free: free.clone(),
                coefficients: coeffs,
                constant,
            };
            let best = solve_extremum(model, &problem, budget)?;
            Ok(match best {
                None => json!({ "feasible": false }),
                Some(b) => {
                    let value = if maximize { -b.value } else { b.value };
                    let witness: serde_json::Map<_, _> = free
                        .iter()
                        .zip(&b.witness)
                        .map(|((name, _), w)| (name.clone(), json!(w)))
                        .collect();
                    json!({ "feasible": true, "value": value.to_string(), "witness": witness })
                }
            })
        }),
        MsoAction::Eval {
            structure,
            formula,
            mode,
            weights,
        } => {
            let weights: Option<Vec<Vec<f64>>> = match weights {
                Some(path) => Some(
                    serde_json::from_str(&read(&path)?)
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
                ),
                None => None,
            };
            with_model(&structure, &formula, |model, free, f| {
                let weights = match weights {
                    Some(w) => w,
                    None => free
                        .iter()
                        .map(|(_, sort)| vec![1.0; model.carrier(sort.element())])
                        .collect(),
                };
                let mode = match mode {
                    Mode::Additive => EvaluationMode::Additive,
                    Mode::Multiplicative => EvaluationMode::Multiplicative,
                };
                let problem = EvaluationProblem {
                    formula: f.clone(),
                    free: free.clone(),
                    mode,
                    weights,
                };
                Ok(json!({ "value": solve_evaluation(model, &problem, budget)? }))
            })
        }
    }
}

fn taut(global: &Global, input: &Path) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    let (witness, backend) = if global.oracle {
        (taut_bruteforce(&t, &sk)?, "bruteforce")
    } else {
        let td = dual_decomposition(global, &t)?;
        (taut_dp(&t, &sk, &td)?, "dp")
    };
    Ok(json!({
        "taut": witness.is_some(),
        "witness": witness.map(|w| w.types),
        "backend": backend,
    }))
}

fn morse(global: &Global, input: &Path, encoding: bool) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    let h = build_hasse(&sk);
    let budget = budget(global);
    let (c, matching, backend) = if global.oracle {
        let (c, m) = morse_bruteforce(&h, budget)?;
        (c, m, "bruteforce")
    } else if encoding {
        let problem = morse_problem(t.dim());
        let best = solve_extremum(&Model::triangulation(&sk), &problem, budget)?
            .ok_or_else(|| CliError::Mismatch("the empty matching is always feasible".into()))?;
        let matching = matching_from_witness(&h, &problem, &best.witness);
        let c = best.value.to_integer() as usize;
        (c, matching, "mso")
    } else {
        let (c, m) = morse_optimal(&h, budget)?;
        (c, m, "branch_and_bound")
    };
    morse_validate(&h, &matching.arcs)?;
    let arcs: Vec<Json> = matching
        .arcs
        .iter()
        .map(|&a| {
            let arc = &h.graph.arcs()[a];
            json!({ "arc": a, "u": h.node(arc.u), "v": h.node(arc.v), "colour": h.arc_colour(a).to_string() })
        })
        .collect();
    Ok(json!({ "c_min": c, "matching_size": matching.arcs.len(), "matching": arcs, "backend": backend }))
}

fn load_table(path: Option<&Path>, r: usize) -> Result<TvTable, CliError> {
    let table = match path {
        Some(p) => TvTable::from_json(&read(p)?)?,
        None if r == 3 => shipped_table_r3(),
        None => return Err(AppError::Table(format!("no built-in table for r = {r}; pass --table or --unit")).into()),
    };
    if table.r != r {
        return Err(AppError::Table(format!("table is for r = {}, requested r = {r}", table.r)).into());
    }
    Ok(table)
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

fn tv(
    global: &Global,
    input: &Path,
    r: usize,
    table: Option<&Path>,
    unit: bool,
    verify: bool,
) -> Result<Json, CliError> {
    if r < 3 {
        return Err(CliError::Usage("--r must be at least 3".into()));
    }
    let t = load_triangulation(input)?;
    let sk = compute_skeleton(&t);
    let backend = if global.oracle { "bruteforce" } else { "dp" };
    let td = || -> Result<TreeDecomposition, CliError> { dual_decomposition(global, &t) };
    if unit {
        let brute = |sk: &Skeleton| tv_count_bruteforce(&t, sk, r);
        let count = if global.oracle {
            brute(&sk)?
        } else {
            tv_count_dp(&t, &sk, r, &td()?)?
        };
        if verify {
            let other = if global.oracle {
                tv_count_dp(&t, &sk, r, &td()?)?
            } else {
                brute(&sk)?
            };
            if other != count {
                return Err(CliError::Mismatch(format!("colouring counts {count} and {other}")));
            }
        }
        return Ok(json!({ "count": count.to_string(), "r": r, "backend": backend }));
    }
    let table = load_table(table, r)?;
    let value = if global.oracle {
        tv_bruteforce(&t, &sk, &table)?
    } else {
        tv_dp(&t, &sk, &table, &td()?)?
    };
    if verify {
        let other = if global.oracle {
            tv_dp(&t, &sk, &table, &td()?)?
        } else {
            tv_bruteforce(&t, &sk, &table)?
        };
        if !close(value, other, global.tol) {
            return Err(CliError::Mismatch(format!("state sums {value} and {other}")));
        }
    }
    Ok(json!({ "value": complex_json(value), "r": r, "backend": backend }))
}

fn subdivide(global: &Global, input: &Path, simplex: Option<usize>) -> Result<Json, CliError> {
    let t = load_triangulation(input)?;
    if t.size() == 0 {
        return Err(CliError::Usage("nothing to subdivide in an empty triangulation".into()));
    }
    let s = simplex.unwrap_or_else(|| ChaCha8Rng::seed_from_u64(global.seed).gen_range(0..t.size()));
    let out = subdivide_simplex(&t, s).map_err(|source| CliError::Triangulation {
        path: input.display().to_string(),
        source,
    })?;
    Ok(json!({ "simplex": s, "simplices": out.size(), "triangulation": out.to_text() }))
}
