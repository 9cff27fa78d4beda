use std::path::Path;

use anyhow::Result;
use serde_json::{json, Map, Value};

use hyperwalk_core::hypergraph::build_hypergraph;
use hyperwalk_core::io::{parse_any, EdgeSpec, HypergraphSpec};
use hyperwalk_core::rankagg::{experiment, rank, ExperimentParams, MatchData, Method};
use hyperwalk_core::reduction::{
    edge_independent_to_graph, graph_random_walk, kolmogorov_check, nonlazy_trivial_equivalence, reversibility,
    sandwich_check, sandwich_weights, MAX_KOLMOGOROV_VERTICES,
};
use hyperwalk_core::spectral::{check_cheeger, cheeger_constant, laplacian, spectral_report};
use hyperwalk_core::stationary::{stationary_auto, stationary_direct, stationary_rho, StationaryResult, EDGE_INDEPENDENCE_TOL};
use hyperwalk_core::walk::{transition_matrix, walk_matrix, RestartTarget, TransitionMatrix, WalkKind};
use hyperwalk_core::{fixtures, Exec, Hypergraph, WeightedGraph};

use crate::cli::{
    InputArgs, RankaggArgs, ReduceArgs, ReduceMode, SpectralArgs, StationaryArg, StationaryArgs, TransitionArgs,
    WalkArg,
};
use crate::fmt::{pretty, table};
use crate::manifest::RunManifest;

pub struct Ctx {
    pub json: bool,
    pub manifest: RunManifest,
}

impl Ctx {
    fn load(&mut self, input: &InputArgs) -> Result<Hypergraph> {
        let text = self.manifest.read_input(&input.input)?;
        Ok(build_hypergraph(&parse_any(&text)?)?)
    }

    fn write(&mut self, out: Option<&Path>, contents: &str) -> Result<()> {
        if let Some(path) = out {
            self.manifest.write_output(path, contents)?;
        }
        Ok(())
    }

    fn print_json(&self, value: &Value) {
        println!("{}", serde_json::to_string_pretty(value).expect("JSON value serializes"));
    }
}

fn pretty_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value serializes") + "\n"
}

fn named(names: &[String], values: &[f64]) -> Value {
    Value::Object(names.iter().cloned().zip(values.iter().map(|&x| json!(x))).collect())
}

fn matrix_rows(p: &TransitionMatrix) -> Vec<Vec<String>> {
    (0..p.n())
        .map(|i| {
            std::iter::once(p.vertices()[i].clone())
                .chain(p.row(i).iter().map(|&x| pretty(x)))
                .collect()
        })
        .collect()
}

fn matrix_table(p: &TransitionMatrix) -> String {
    let header: Vec<String> = std::iter::once(String::new()).chain(p.vertices().iter().cloned()).collect();
    table(&header, &matrix_rows(p))
}

pub fn transition(ctx: &mut Ctx, args: &TransitionArgs) -> Result<()> {
    let h = ctx.load(&args.input)?;
    let kind = match args.kind {
        WalkArg::Lazy => WalkKind::Lazy,
        WalkArg::Nonlazy => WalkKind::NonLazy,
        WalkArg::Restart => WalkKind::Restart {
            beta: args.beta,
            target: match &args.restart_to {
                Some(name) => RestartTarget::Vertex(h.index_of(name)?),
                None => RestartTarget::Uniform,
            },
        },
    };
    let p = walk_matrix(&h, &kind)?;
    let csv = p.to_csv();
    ctx.write(args.out.as_deref(), &csv)?;
    if ctx.json {
        ctx.print_json(&json!({ "vertices": p.vertices(), "matrix": p.matrix().to_rows() }));
    } else {
        print!("{csv}");
    }
    Ok(())
}

fn stationary_json(h: &Hypergraph, r: &StationaryResult) -> Value {
    let rho = r.rho.as_ref().map(|rho| {
        Value::Object(
            rho.iter()
                .enumerate()
                .map(|(e, &x)| (format!("e{}", e + 1), json!(x)))
                .collect(),
        )
    });
    json!({
        "method": r.method,
        "pi": named(h.vertices(), &r.pi),
        "rho": rho,
        "residual": r.residual,
    })
}

pub fn stationary(ctx: &mut Ctx, args: &StationaryArgs) -> Result<()> {
    let h = ctx.load(&args.input)?;
    let r = match args.method {
        StationaryArg::Rho => stationary_rho(&h)?,
        StationaryArg::Direct => stationary_direct(&transition_matrix(&h)?)?,
        StationaryArg::Auto => stationary_auto(&h)?,
    };
    let value = stationary_json(&h, &r);
    ctx.write(args.out.as_deref(), &pretty_json(&value))?;
    if ctx.json {
        ctx.print_json(&value);
    } else {
        let rows: Vec<Vec<String>> = h
            .vertices()
            .iter()
            .zip(&r.pi)
            .map(|(v, &x)| vec![v.clone(), format!("{x:.10}"), pretty(x)])
            .collect();
        print!("{}", table(&["vertex".into(), "pi".into(), "".into()], &rows));
        if let Some(rho) = &r.rho {
            let rho: Vec<String> = rho.iter().map(|x| format!("{x:.6}")).collect();
            println!("rho: {}", rho.join(" "));
        }
        println!("method: {:?}, residual: {:.3e}", r.method, r.residual);
    }
    Ok(())
}

pub fn spectral(ctx: &mut Ctx, args: &SpectralArgs) -> Result<()> {
    let h = ctx.load(&args.input)?;
    let report = spectral_report(&h, args.eps)?;
    let mut value = serde_json::to_value(&report)?;
    let check = if args.check_cheeger {
        let c = check_cheeger(&h)?;
        value["cheeger_check"] = serde_json::to_value(&c)?;
        Some(c)
    } else {
        None
    };
    ctx.write(args.out.as_deref(), &pretty_json(&value))?;
    if ctx.json {
        ctx.print_json(&value);
        return Ok(());
    }
    let fmt_list = |xs: &[f64]| xs.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ");
    println!("Laplacian eigenvalues:            {}", fmt_list(&report.eigenvalues));
    println!("normalized Laplacian eigenvalues: {}", fmt_list(&report.normalized_eigenvalues));
    println!("spectral gap: {:.6} (normalized {:.6})", report.lambda, report.lambda_normalized);
    println!(
        "Cheeger constant: {:.6} at {{{}}}",
        report.cheeger,
        report.cheeger_subset.join(", ")
    );
    if report.mixing_bound_vacuous {
        println!("mixing-time bound (eps = {}): vacuous (log term <= 0)", report.epsilon);
    } else {
        println!("mixing-time bound (eps = {}): {}", report.epsilon, report.mixing_bound);
    }
    if let Some(c) = check {
        println!(
            "Phi^2/2 <= lambda <= 2 Phi: {:.6} <= {:.6} <= {:.6}: {}",
            c.phi * c.phi / 2.0,
            c.lambda,
            2.0 * c.phi,
            if c.holds { "holds" } else { "VIOLATED" }
        );
    }
    Ok(())
}

/// Graph edges in the hypergraph file layout: one two-member edge per
/// vertex pair (one member for a self-loop), all `γ = 1`.
fn graph_spec(g: &WeightedGraph) -> HypergraphSpec {
    let names = g.vertices();
    HypergraphSpec {
        vertices: names.to_vec(),
        edges: g
            .edges()
            .into_iter()
            .map(|(u, v, w)| EdgeSpec {
                weight: w,
                members: if u == v {
                    vec![(names[u].clone(), 1.0)]
                } else {
                    vec![(names[u].clone(), 1.0), (names[v].clone(), 1.0)]
                },
            })
            .collect(),
    }
}

pub fn reduce(ctx: &mut Ctx, args: &ReduceArgs) -> Result<()> {
    let h = ctx.load(&args.input)?;
    let (graph, verdict) = match args.mode {
        ReduceMode::Eqind => {
            let g = edge_independent_to_graph(&h)?;
            let dev = transition_matrix(&h)?.matrix().max_abs_diff(graph_random_walk(&g)?.matrix());
            (Some(g), json!({ "mode": "eqind", "max_dev": dev }))
        }
        ReduceMode::Sandwich => {
            let g = sandwich_weights(&h)?;
            let mut v = serde_json::to_value(sandwich_check(&h)?)?;
            v["mode"] = json!("sandwich");
            (Some(g), v)
        }
        ReduceMode::Nonlazy => {
            let eq = nonlazy_trivial_equivalence(&h)?;
            (Some(eq.graph), json!({ "mode": "nonlazy", "max_dev": eq.max_dev }))
        }
        ReduceMode::Reversibility => {
            let p = transition_matrix(&h)?;
            let pi = stationary_auto(&h)?.pi;
            let r = reversibility(&p, &pi)?;
            let name = |i: usize| h.vertex_name(i).to_string();
            let mut v = json!({
                "mode": "reversibility",
                "reversible": r.reversible,
                "worst_pair": [name(r.worst_pair.0), name(r.worst_pair.1)],
                "violation": r.violation,
                "violating_pairs": r.violating_pairs.iter().map(|&(a, b, g)| json!([name(a), name(b), g])).collect::<Vec<_>>(),
                "edge_independent": h.edge_independent_weights(EDGE_INDEPENDENCE_TOL).is_some(),
            });
            if h.n_vertices() <= MAX_KOLMOGOROV_VERTICES {
                let k = kolmogorov_check(&p, args.max_cycle)?;
                v["kolmogorov"] = json!({
                    "max_cycle": args.max_cycle,
                    "holds": k.holds,
                    "witness_cycle": k.witness_cycle.map(|c| c.into_iter().map(name).collect::<Vec<_>>()),
                    "cycles_checked": k.cycles_checked,
                });
            }
            (None, v)
        }
    };
    let mut value = Map::new();
    if let Some(g) = &graph {
        value.insert("graph".into(), serde_json::to_value(graph_spec(g))?);
    }
    value.insert("verdict".into(), verdict);
    let value = Value::Object(value);
    ctx.write(args.out.as_deref(), &pretty_json(&value))?;
    if ctx.json {
        ctx.print_json(&value);
        return Ok(());
    }
    if let Some(g) = &graph {
        let rows: Vec<Vec<String>> = g
            .edges()
            .into_iter()
            .map(|(u, v, w)| vec![g.vertices()[u].clone(), g.vertices()[v].clone(), format!("{w:.6}")])
            .collect();
        print!("{}", table(&["u".into(), "v".into(), "weight".into()], &rows));
    }
    for (k, v) in value["verdict"].as_object().expect("verdict is an object") {
        println!("{k}: {v}");
    }
    Ok(())
}

pub fn rankagg(ctx: &mut Ctx, args: &RankaggArgs) -> Result<()> {
    if let Some(path) = &args.matches {
        let text = ctx.manifest.read_input(path)?;
        let data = MatchData::from_json(&text)?;
        let rankings = Method::ALL
            .iter()
            .map(|&m| rank(m, &data, args.beta))
            .collect::<hyperwalk_core::Result<Vec<_>>>()?;
        let value = json!({ "n": data.n, "matches": data.k(), "beta": args.beta, "rankings": rankings });
        ctx.write(args.out.as_deref(), &pretty_json(&value))?;
        if ctx.json {
            ctx.print_json(&value);
        } else {
            let header: Vec<String> = std::iter::once("rank".to_string())
                .chain(Method::ALL.iter().map(|m| m.tag().to_string()))
                .collect();
            let rows: Vec<Vec<String>> = (0..data.n)
                .map(|i| {
                    std::iter::once((i + 1).to_string())
                        .chain(rankings.iter().map(|r| r.order[i].to_string()))
                        .collect()
                })
                .collect();
            print!("{}", table(&header, &rows));
        }
        return Ok(());
    }
    let params = ExperimentParams {
        n: args.n,
        sigma: args.sigma,
        ps: args.p.clone(),
        trials: args.trials,
        seed: args.seed,
        beta: args.beta,
    };
    ctx.manifest.seed = Some(args.seed);
    let exec = if args.sequential { Exec::Sequential } else { Exec::default() };
    let result = experiment(&params, exec)?;
    ctx.write(args.out.as_deref(), &result.to_csv())?;
    if ctx.json {
        ctx.print_json(&json!({ "params": result.params, "summary": result.summary }));
    } else {
        let rows: Vec<Vec<String>> = result
            .summary
            .iter()
            .map(|s| {
                vec![
                    s.method.tag().to_string(),
                    s.p.to_string(),
                    s.trials.to_string(),
                    format!("{:.4}", s.mean_tau_weighted),
                    format!("{:.4}", s.std_tau_weighted),
                    format!("{:.4}", s.mean_tau_unweighted),
                ]
            })
            .collect();
        let header = ["method", "p", "trials", "tau_w mean", "tau_w std", "tau mean"].map(String::from);
        print!("{}", table(&header, &rows));
    }
    Ok(())
}

pub fn validate(ctx: &mut Ctx, args: &InputArgs) -> Result<()> {
    let h = ctx.load(args)?;
    let value = json!({
        "valid": true,
        "vertices": h.n_vertices(),
        "edges": h.n_edges(),
        "connected": h.is_connected(),
        "edge_independent": h.edge_independent_weights(EDGE_INDEPENDENCE_TOL).is_some(),
        "trivial_weights": h.has_trivial_weights(),
    });
    if ctx.json {
        ctx.print_json(&value);
    } else {
        println!(
            "valid: {} vertices, {} edges, edge-independent: {}, trivial weights: {}",
            h.n_vertices(),
            h.n_edges(),
            value["edge_independent"],
            value["trivial_weights"]
        );
    }
    Ok(())
}

pub fn demo(ctx: &mut Ctx) -> Result<()> {
    let h = fixtures::h3();
    let p = transition_matrix(&h)?;
    let stat = stationary_rho(&h)?;
    let verdict = reversibility(&p, &stat.pi)?;
    let lap = laplacian(&h)?;
    let eigenvalues = lap.eigenvalues()?;
    let cheeger = cheeger_constant(&h)?;
    let check = check_cheeger(&h)?;
    let names = h.vertices();
    if ctx.json {
        ctx.print_json(&json!({
            "hypergraph": h.to_spec(),
            "transition": p.matrix().to_rows(),
            "pi": named(names, &stat.pi),
            "pi_fractions": stat.pi.iter().map(|&x| pretty(x)).collect::<Vec<_>>(),
            "reversible": verdict.reversible,
            "worst_pair": [names[verdict.worst_pair.0].clone(), names[verdict.worst_pair.1].clone()],
            "violation": verdict.violation,
            "laplacian_eigenvalues": eigenvalues,
            "cheeger": cheeger.phi,
            "cheeger_subset": cheeger.subset.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
            "cheeger_check": check,
        }));
        return Ok(());
    }
    println!("H3: e1 = {{v1:2, v2:1, v3:1}}, e2 = {{v1:1, v3:1, v4:1}}, unit edge weights\n");
    println!("transition matrix P:");
    print!("{}", matrix_table(&p));
    let pi: Vec<String> = stat.pi.iter().map(|&x| pretty(x)).collect();
    println!("\npi = ({})", pi.join(", "));
    println!(
        "reversible: {} (largest detailed-balance gap {} at ({}, {}))",
        verdict.reversible,
        pretty(verdict.violation),
        names[verdict.worst_pair.0],
        names[verdict.worst_pair.1]
    );
    let ev: Vec<String> = eigenvalues.iter().map(|x| format!("{x:.6}")).collect();
    println!("Laplacian eigenvalues: {}", ev.join(" "));
    let subset: Vec<&str> = cheeger.subset.iter().map(|&v| names[v].as_str()).collect();
    println!(
        "Cheeger constant: {} at {{{}}}; normalized gap {:.6}; Phi^2/2 <= lambda <= 2 Phi {}",
        pretty(cheeger.phi),
        subset.join(", "),
        check.lambda,
        if check.holds { "holds" } else { "VIOLATED" }
    );
    Ok(())
}
