use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use mcop::config::{parse_elements, OSpec};
use mcop::pipedream::{perm_from_set, render_pipe_dream, twisted_perm, RenderFormat, SignedPermutation};
use mcop::polytope::{mcop as build_mcop, newton_okounkov_body, x_lambda, ExponentVector, Weight};
use mcop::poset::{Element, Kind, Poset};
use mcop::verify::{memory_guard, run_suite, Check, Options, VerificationReport};
use mcop::{Error, Result};

/// Marked chain-order polytopes, pipe dreams and degeneration checks for
/// Gelfand–Tsetlin posets of type A and C.
#[derive(Parser)]
#[command(name = "mcop", version)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List poset elements and order ideals.
    Poset(PosetArgs),
    /// Compute the permutation of a pipe dream.
    Pipedream(PipedreamArgs),
    /// Lattice points and vertices of a marked chain-order polytope.
    Polytope(PolytopeArgs),
    /// Run verification checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Target {
    #[arg(long = "type", default_value = "A")]
    kind: Kind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

impl Target {
    fn poset(&self) -> Result<Poset> {
        Poset::new(self.kind, self.n)
    }
}

#[derive(Args)]
struct PosetArgs {
    #[command(flatten)]
    target: Target,
    /// Also list the order ideals by stratum.
    #[arg(long)]
    ideals: bool,
}

#[derive(Args)]
struct PipedreamArgs {
    #[command(flatten)]
    target: Target,
    /// Elements of M, e.g. "(1,1),(1,2),(2,2)".
    #[arg(long)]
    set: String,
    /// Marking O; prints w_O^{-1} w_M instead of w_M.
    #[arg(long)]
    twist: Option<OSpec>,
    /// Print a drawing instead of the permutation.
    #[arg(long)]
    render: Option<RenderFormat>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct PolytopeArgs {
    #[command(flatten)]
    target: Target,
    #[arg(long = "O", default_value = "P")]
    o: OSpec,
    #[arg(long)]
    lambda: Weight,
    #[arg(long)]
    points: bool,
    #[arg(long)]
    vertices: bool,
    #[arg(long)]
    count: bool,
    /// The Newton–Okounkov body 𝒬_O(λ) - x_λ (type C).
    #[arg(long)]
    no_body: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// intpoints, bijection, kernel-eq, weight-order, sagbi, intermediate,
    /// basis, nu-image, no-body or all.
    check: String,
    #[command(flatten)]
    target: Target,
    #[arg(long = "O", default_value = "P")]
    o: OSpec,
    #[arg(long)]
    lambda: Option<Weight>,
    /// Largest degree of toric relations compared by kernel-eq.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Seed for a bare `--O random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock times in the report.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Poset(args) => poset(args),
        Command::Pipedream(args) => pipedream(args),
        Command::Polytope(args) => polytope(args),
        Command::Verify(args) => verify(args),
    };
    if let Err(e) = &outcome {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_status(&outcome))
}

/// 0 when everything passed, 1 on a failed check or internal error, 2 on
/// bad input.
fn exit_status(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => e.exit_code() as u8,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn pairs(elements: &[Element]) -> Vec<[i32; 2]> {
    elements.iter().map(|e| [e.i, e.j]).collect()
}

fn list(elements: &[Element]) -> String {
    elements.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn poset(args: PosetArgs) -> Result<bool> {
    let p = args.target.poset()?;
    let strata = args.ideals.then(|| p.enumerate_ideals());
    if args.target.json {
        let ideals = strata.as_ref().map(|strata| {
            strata
                .iter()
                .flatten()
                .map(|j| json!({ "stratum": j.stratum(), "members": pairs(&p.elements_of(j.members())) }))
                .collect::<Vec<_>>()
        });
        let mut out = json!({ "kind": p.kind().to_string(), "n": p.n(), "elements": pairs(p.elements()) });
        if let Some(ideals) = ideals {
            out["ideals"] = ideals.into();
        }
        return print_json(&out).map(|_| true);
    }
    println!("type {} n={}: {} elements", p.kind(), p.n(), p.len());
    println!("{}", list(p.elements()));
    if let Some(strata) = strata {
        for (k, stratum) in strata.iter().enumerate() {
            println!("stratum {k}: {} ideals", stratum.len());
            for j in stratum {
                println!("  {{{}}}", list(&p.elements_of(j.members())));
            }
        }
    }
    Ok(true)
}

fn one_line(w: &SignedPermutation) -> String {
    w.one_line().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn pipedream(args: PipedreamArgs) -> Result<bool> {
    let p = args.target.poset()?;
    let m = p.set_from_elements(parse_elements(&args.set)?)?;
    if let Some(format) = args.render {
        print!("{}", render_pipe_dream(&p, m, format)?);
        return Ok(true);
    }
    let w = perm_from_set(&p, m);
    let twisted = match &args.twist {
        Some(spec) => Some(twisted_perm(&p, spec.resolve(&p, args.seed)?.members(), m)),
        None => None,
    };
    if args.target.json {
        let mut out = json!({
            "kind": p.kind().to_string(),
            "n": p.n(),
            "set": pairs(&p.elements_of(m)),
            "permutation": w.one_line(),
        });
        if let Some(t) = &twisted {
            out["twisted"] = t.one_line().into();
        }
        return print_json(&out).map(|_| true);
    }
    println!("{}", one_line(twisted.as_ref().unwrap_or(&w)));
    Ok(true)
}

fn polytope(args: PolytopeArgs) -> Result<bool> {
    let p = args.target.poset()?;
    let o = args.o.resolve(&p, args.seed)?;
    args.lambda.check(&p)?;
    memory_guard(&p, &args.lambda)?;
    let poly = if args.no_body {
        newton_okounkov_body(&p, &o, &args.lambda)?
    } else {
        build_mcop(&p, &o, &args.lambda)?
    };
    let points: Vec<ExponentVector> = poly.lattice_points().into_iter().collect();
    let vertices = if args.vertices || args.no_body { Some(poly.vertices()?) } else { None };
    let shown_points = args.points.then_some(&points);
    let shift = if args.no_body { Some(x_lambda(&p, &o, &args.lambda)?) } else { None };
    if args.target.json {
        let mut out = json!({ "count": points.len() });
        if let Some(v) = &vertices {
            out["vertices"] = serde_json::to_value(v).map_err(|e| Error::InvariantViolation(e.to_string()))?;
        }
        if let Some(pts) = shown_points {
            out["points"] = serde_json::to_value(pts).map_err(|e| Error::InvariantViolation(e.to_string()))?;
        }
        if let Some(x) = &shift {
            out["x_lambda"] = serde_json::to_value(x).map_err(|e| Error::InvariantViolation(e.to_string()))?;
        }
        return print_json(&out).map(|_| true);
    }
    println!("coordinates: {}", list(p.elements()));
    if let Some(x) = &shift {
        println!("x_lambda: {x}");
    }
    println!("count: {}", points.len());
    if let Some(v) = &vertices {
        println!("vertices: {}", v.len());
        for x in v {
            println!("  {x}");
        }
    }
    if let Some(pts) = shown_points {
        println!("points:");
        for x in pts {
            println!("  {x}");
        }
    }
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let p = args.target.poset()?;
    let checks = if args.check == "all" { Check::suite(p.kind()) } else { vec![args.check.parse::<Check>()?] };
    let needs_lambda = checks
        .iter()
        .any(|c| !matches!(c, Check::Bijection | Check::KernelEq | Check::WeightOrder));
    let lambda = match args.lambda {
        Some(l) => l,
        None if needs_lambda => return Err(Error::Parse(format!("`{}` needs --lambda", args.check))),
        None => Weight::zero(p.weight_len()),
    };
    let o = args.o.resolve(&p, args.seed)?;
    let opts = Options { max_degree: args.max_degree, timing: args.timing };
    let report = run_suite(&checks, &p, &o, &lambda, &opts)?;
    if args.target.json {
        print_json(&report)?;
    } else {
        print_summary(&report);
    }
    Ok(report.passed)
}

fn print_summary(report: &VerificationReport) {
    let marking: Vec<String> = report.marking.iter().map(|[i, j]| format!("({i},{j})")).collect();
    println!("type {} n={} lambda={} O={{{}}}", report.kind, report.n, report.lambda, marking.join(","));
    for c in &report.checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        let time = c.elapsed_ms.map(|t| format!(" [{t} ms]")).unwrap_or_default();
        let line = format!("{:<13} {status}{time}  {}", c.check, summary_fields(&c.details));
        println!("{}", line.trim_end());
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        println!("all {} checks passed", report.checks.len());
    } else {
        println!("{failed} of {} checks failed", report.checks.len());
    }
}

/// Scalar fields of a details object as `key=value` pairs.
fn summary_fields(details: &serde_json::Value) -> String {
    let Some(map) = details.as_object() else { return String::new() };
    map.iter()
        .filter(|(k, v)| *k != "passed" && (v.is_number() || v.is_boolean() || v.is_string()))
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_statuses() {
        assert_eq!(exit_status(&Ok(true)), 0);
        assert_eq!(exit_status(&Ok(false)), 1);
        assert_eq!(exit_status(&Err(Error::InvariantViolation("x".into()))), 1);
        assert_eq!(exit_status(&Err(Error::Parse("x".into()))), 2);
        assert_eq!(exit_status(&Err(Error::MissingDiagonal(1))), 2);
        assert_eq!(exit_status(&Err(Error::ResourceGuard("x".into()))), 2);
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
