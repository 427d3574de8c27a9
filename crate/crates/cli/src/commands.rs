use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use tf2m::bench::{self, BenchConfig};
use tf2m::io::{read_instance, read_solution, write_instance};
use tf2m::witness::check_witness;
use tf2m::{
    baseline_two_thirds, exact_opt, find_witness, generate, solve_ptas, verify_solution, EdgeSet, ForbiddenMode,
    Instance, SolveReport, SolverConfig, TriangleSet, Verdict, WitnessInput,
};

use crate::args::{BenchArgs, Cli, Command, Common, ExactArgs, Format, GenArgs, SolveArgs, VerifyArgs, WitnessArgs};
use crate::failure::Failure;

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve(a) => solve(a, false),
        Command::Baseline(a) => solve(a, true),
        Command::Exact(a) => exact(a),
        Command::Verify(a) => verify(a),
        Command::Witness(a) => witness(a),
        Command::Gen(a) => gen(a),
        Command::Bench(a) => run_bench(a),
    }
}

fn emit(common: &Common, text: String) -> Result<(), Failure> {
    match &common.out {
        Some(path) => bench::write_atomic(path, &text).map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("json values serialize") + "\n"
}

fn load(path: &Path, mode: ForbiddenMode) -> Result<(Instance, TriangleSet), Failure> {
    let instance = read_instance(path)?;
    let t = instance.forbidden(mode);
    Ok((instance, t))
}

fn mode_name(mode: ForbiddenMode) -> &'static str {
    match mode {
        ForbiddenMode::All => "all",
        ForbiddenMode::Listed => "listed",
    }
}

fn edge_list(f: &EdgeSet) -> String {
    f.iter()
        .map(|e| format!("{}-{}", e.u(), e.v()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn solve(a: SolveArgs, baseline: bool) -> Result<(), Failure> {
    let mode = ForbiddenMode::from(a.forbidden);
    let (instance, t) = load(&a.instance, mode)?;
    let g = &instance.graph;
    let report: SolveReport = if baseline {
        baseline_two_thirds(g, &t, &a.eps)?
    } else {
        let config = SolverConfig::new(a.eps.clone())?
            .with_strategy(a.strategy.into())
            .with_search_class(a.search_class.into());
        solve_ptas(g, &t, &config)?
    };
    if !verify_solution(g, &t, &report.solution).is_feasible() {
        return Err(Failure::Internal("solver returned an infeasible solution".into()));
    }
    let command = if baseline { "baseline" } else { "solve" };
    let text = match a.common.format {
        Format::Json => {
            let mut map = Map::new();
            map.insert("command".into(), json!(command));
            map.insert("forbidden".into(), json!(mode_name(mode)));
            map.insert("triangles".into(), json!(t.len()));
            if let Value::Object(fields) = serde_json::to_value(&report).expect("report serializes") {
                map.extend(fields);
            }
            if a.timing {
                map.insert("elapsed_ms".into(), json!(report.elapsed.as_secs_f64() * 1000.0));
            }
            to_json(&Value::Object(map))
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "weight     {}", report.weight).unwrap();
            writeln!(s, "edges      {}", report.solution.len()).unwrap();
            writeln!(s, "iterations {}", report.iterations).unwrap();
            if let Some(bound) = &report.iteration_bound {
                writeln!(s, "bound      {bound}").unwrap();
            }
            writeln!(s, "solution   {}", edge_list(&report.solution)).unwrap();
            if a.timing {
                writeln!(s, "elapsed    {:?}", report.elapsed).unwrap();
            }
            s
        }
    };
    emit(&a.common, text)
}

fn exact(a: ExactArgs) -> Result<(), Failure> {
    let mode = ForbiddenMode::from(a.forbidden);
    let (instance, t) = load(&a.instance, mode)?;
    let result = exact_opt(&instance.graph, &t, a.oracle_limit).map_err(|e| Failure::OracleLimit(e.to_string()))?;
    let text = match a.common.format {
        Format::Json => to_json(&json!({
            "command": "exact",
            "forbidden": mode_name(mode),
            "triangles": t.len(),
            "solution": result.solution,
            "weight": result.weight,
            "nodes_explored": result.nodes_explored,
        })),
        Format::Text => format!(
            "weight     {}\nedges      {}\nnodes      {}\nsolution   {}\n",
            result.weight,
            result.solution.len(),
            result.nodes_explored,
            edge_list(&result.solution)
        ),
    };
    emit(&a.common, text)
}

fn verify(a: VerifyArgs) -> Result<(), Failure> {
    let mode = ForbiddenMode::from(a.forbidden);
    let (instance, t) = load(&a.instance, mode)?;
    let solution = read_solution(&a.solution)?;
    let verdict = verify_solution(&instance.graph, &t, &solution);
    let text = match a.common.format {
        Format::Json => {
            let mut map = Map::new();
            map.insert("command".into(), json!("verify"));
            map.insert("forbidden".into(), json!(mode_name(mode)));
            if let Value::Object(fields) = serde_json::to_value(&verdict).expect("verdict serializes") {
                map.extend(fields);
            }
            to_json(&Value::Object(map))
        }
        Format::Text => match &verdict {
            Verdict::Feasible { weight } => format!("feasible, weight {weight}\n"),
            Verdict::Violation { violation } => format!("infeasible: {violation}\n"),
        },
    };
    emit(&a.common, text)?;
    match verdict {
        Verdict::Feasible { .. } => Ok(()),
        Verdict::Violation { violation } => Err(Failure::Infeasible(violation.to_string())),
    }
}

fn witness(a: WitnessArgs) -> Result<(), Failure> {
    let mode = ForbiddenMode::from(a.forbidden);
    let (instance, t) = load(&a.instance, mode)?;
    let input = WitnessInput {
        graph: instance.graph,
        triangles: t,
        a1: read_solution(&a.a1)?,
        a2: read_solution(&a.a2)?,
        epsilon: a.eps,
    };
    let w = find_witness(&input)?;
    let check = check_witness(
        &input.graph,
        &input.triangles,
        &input.a1,
        &input.a2,
        &input.epsilon,
        &w.trail,
    );
    if !check.passed() {
        return Err(Failure::Internal(format!(
            "witness failed independent verification: {check:?}"
        )));
    }
    let text = match a.common.format {
        Format::Json => to_json(&json!({
            "command": "witness",
            "forbidden": mode_name(mode),
            "trail": w.trail,
            "gain": w.gain,
            "cost": w.cost,
            "trace": w.trace,
            "reached_base": w.reached_base,
            "check": check,
        })),
        Format::Text => {
            let nodes: Vec<String> = w.trail.nodes().iter().map(ToString::to_string).collect();
            let trace: Vec<String> = w.trace.iter().map(ToString::to_string).collect();
            format!(
                "trail      {}\ngain       {}\ncost       {} (budget {})\ncases      {}\n",
                nodes.join(" "),
                w.gain,
                w.cost,
                check.budget,
                if trace.is_empty() {
                    "-".to_string()
                } else {
                    trace.join(" ")
                }
            )
        }
    };
    emit(&a.common, text)
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let spec = a.model.spec(a.n);
    let g = generate(&spec)?;
    let comment = format!("generated: {} n={} seed={}", spec.model, spec.n, spec.seed);
    let file = write_instance(&g, &[], Some(&comment));
    match (a.common.format, &a.common.out) {
        (Format::Text, None) => {
            print!("{file}");
            Ok(())
        }
        (format, out) => {
            if let Some(path) = out {
                bench::write_atomic(path, &file)?;
            }
            let t = TriangleSet::enumerate(&g);
            let text = match format {
                Format::Json => to_json(&json!({
                    "command": "gen",
                    "spec": spec,
                    "n": g.vertex_count(),
                    "m": g.edge_count(),
                    "triangles": t.len(),
                    "instance": file,
                })),
                Format::Text => format!(
                    "wrote {} vertices, {} edges, {} triangles\n",
                    g.vertex_count(),
                    g.edge_count(),
                    t.len()
                ),
            };
            print!("{text}");
            Ok(())
        }
    }
}

fn run_bench(a: BenchArgs) -> Result<(), Failure> {
    if a.n_min > a.n_max {
        return Err(Failure::Usage(format!(
            "--n-min {} exceeds --n-max {}",
            a.n_min, a.n_max
        )));
    }
    for eps in &a.eps {
        tf2m::solver::check_epsilon(eps)?;
    }
    let template = a.model.spec(a.n_min);
    template.validate()?;
    let prefix = template.model.to_string();
    let prefix = prefix.split('(').next().unwrap_or("instance");
    let config = BenchConfig {
        instances: bench::corpus(prefix, &template, a.count, a.n_min, a.n_max),
        eps: a.eps.clone(),
        oracle: !a.no_oracle,
        oracle_limit: a.oracle_limit,
        timing: a.timing,
    };
    let report = bench::run_bench(&config)?;
    let written = match &a.out {
        Some(dir) => Some(bench::write_reports(&report, dir, "bench")?),
        None => None,
    };
    let s = &report.summary;
    let text = match a.format {
        Format::Json if written.is_none() => bench::to_json(&report)?,
        Format::Json => {
            let (csv, json) = written.as_ref().expect("checked above");
            to_json(&json!({
                "command": "bench",
                "csv": csv.display().to_string(),
                "json": json.display().to_string(),
                "summary": s,
            }))
        }
        Format::Text => {
            let ratio = |r: &Option<tf2m::Rational>| {
                r.as_ref()
                    .map(|x| x.to_decimal(bench::RATIO_PLACES))
                    .unwrap_or_else(|| "-".into())
            };
            let mut t = String::new();
            writeln!(t, "records           {}", s.records).unwrap();
            writeln!(t, "oracle rows       {}", s.oracle_rows).unwrap();
            writeln!(
                t,
                "ptas ratio        min {} mean {}",
                ratio(&s.ptas_ratio_min),
                ratio(&s.ptas_ratio_mean)
            )
            .unwrap();
            writeln!(
                t,
                "baseline ratio    min {} mean {}",
                ratio(&s.baseline_ratio_min),
                ratio(&s.baseline_ratio_mean)
            )
            .unwrap();
            writeln!(t, "bound violations  {}", s.bound_violations).unwrap();
            writeln!(t, "infeasible        {}", s.infeasible).unwrap();
            if let Some((csv, json)) = &written {
                writeln!(t, "wrote {} and {}", csv.display(), json.display()).unwrap();
            }
            t
        }
    };
    print!("{text}");
    if s.bound_violations > 0 || s.infeasible > 0 {
        return Err(Failure::Internal(format!(
            "{} bound violations, {} infeasible outputs",
            s.bound_violations, s.infeasible
        )));
    }
    Ok(())
}
