use std::fmt::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use serde_json::{json, Value};
use unidesign::benchfns::{Bound, TestFunction};
use unidesign::sampling::Sampler;
use unidesign::surrogate::{average_mse_over_samples, evaluate_mse, EvalOptions, KrigingOptions, TrendBasis};

use crate::csvio::{read_design, read_lattice_levels};
use crate::error::{CliError, CliResult};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionName {
    Wood,
    Camelback,
    /// Constant response; a self-test whose MSE must be 0.
    Const,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerName {
    Lhs,
    Mlhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Poly0,
    Poly1,
    Poly2,
}

impl From<Basis> for TrendBasis {
    fn from(b: Basis) -> Self {
        match b {
            Basis::Poly0 => TrendBasis::Poly0,
            Basis::Poly1 => TrendBasis::Poly1,
            Basis::Poly2 => TrendBasis::Poly2,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["design", "sampler"])))]
pub struct BenchArgs {
    #[arg(long = "fn", value_enum)]
    pub function: FunctionName,
    /// Design over [0, 1]^s, scaled to the function's bounds.
    #[arg(long)]
    pub design: Option<PathBuf>,
    /// Treat --design as integer levels 1..=Q mapped so levels 1 and Q hit the bounds.
    #[arg(long, value_name = "Q", requires = "design")]
    pub lattice_levels: Option<usize>,
    /// Average over --reps sampled designs instead of a fixed design.
    #[arg(long, value_enum, requires = "n")]
    pub sampler: Option<SamplerName>,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Runs per sampled design.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "poly0,poly1,poly2")]
    pub basis: Vec<Basis>,
    #[arg(long, default_value_t = 1000)]
    pub test_points: usize,
    /// Base seed of the sampled designs; rep r uses seed + r.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Seed of the uniform test set.
    #[arg(long, default_value_t = 0)]
    pub test_seed: u64,
    /// Override bounds, e.g. --bounds=-2:2,-1:1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub bounds: Option<Vec<String>>,
    /// Value of the constant response (--fn const).
    #[arg(long, default_value_t = 1.0)]
    pub value: f64,
    /// Dimension of the constant response when no design fixes it.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Report file (JSON run manifest whose result holds the table).
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_bound(text: &str) -> CliResult<Bound> {
    let parsed = text.split_once(':').and_then(|(a, b)| Some(Bound::new(a.trim().parse().ok()?, b.trim().parse().ok()?)));
    parsed.ok_or_else(|| CliError::Usage(format!("bound {text:?} is not of the form lower:upper")))
}

fn function(args: &BenchArgs, design_dim: Option<usize>) -> CliResult<TestFunction> {
    let f = match args.function {
        FunctionName::Wood => TestFunction::wood(),
        FunctionName::Camelback => TestFunction::camelback(),
        FunctionName::Const => TestFunction::constant(design_dim.unwrap_or(args.dim), args.value),
    };
    match &args.bounds {
        None => Ok(f),
        Some(texts) => {
            let bounds = texts.iter().map(|t| parse_bound(t)).collect::<CliResult<Vec<_>>>()?;
            Ok(f.with_bounds(bounds)?)
        }
    }
}

fn cell_error(basis: TrendBasis, e: unidesign::Error) -> Value {
    json!({ "basis": basis.name(), "status": "error", "error": e.to_string() })
}

pub fn run(args: &BenchArgs) -> CliResult<Outcome> {
    let design = match (&args.design, args.lattice_levels) {
        (Some(path), Some(q)) => Some(read_lattice_levels(path, q)?),
        (Some(path), None) => Some(read_design(path)?),
        (None, _) => None,
    };
    let function = function(args, design.as_ref().map(|d| d.s()))?;
    if let Some(d) = &design {
        if d.s() != function.dim() {
            return Err(CliError::Input(format!("design has {} columns but {} takes {}", d.s(), function.name(), function.dim())));
        }
    }
    if args.test_points == 0 {
        return Err(CliError::Usage("--test-points must be at least 1".into()));
    }
    if design.is_none() && args.reps == 0 {
        return Err(CliError::Usage("--reps must be at least 1".into()));
    }
    let options = EvalOptions { test_points: args.test_points, test_seed: args.test_seed, kriging: KrigingOptions::default() };

    let mut cells = Vec::new();
    let mut table = String::from("basis\tmse\trmse\n");
    for &b in &args.basis {
        let basis = TrendBasis::from(b);
        let cell = match (&design, args.sampler) {
            (Some(d), _) => match evaluate_mse(d, &function, basis, &options) {
                Ok(r) => {
                    writeln!(table, "{}\t{}\t{}", basis.name(), r.mse, r.rmse).unwrap();
                    json!({ "basis": basis.name(), "status": "ok", "mse": r.mse, "rmse": r.rmse, "test_std": r.test_std, "theta": r.theta })
                }
                Err(e) => cell_error(basis, e),
            },
            (None, Some(sampler)) => {
                let sampler = match sampler {
                    SamplerName::Lhs => Sampler::Lhs,
                    SamplerName::Mlhs => Sampler::Mlhs,
                };
                let n = args.n.expect("clap requires --n with --sampler");
                match average_mse_over_samples(sampler, args.reps, n, &function, basis, args.seed, &options) {
                    Ok(avg) => {
                        writeln!(table, "{}\t{}\t{}", basis.name(), avg.mean_mse, avg.mean_rmse).unwrap();
                        let reps: Vec<Value> = avg.reports.iter().map(|r| json!({ "mse": r.mse, "rmse": r.rmse })).collect();
                        json!({
                            "basis": basis.name(),
                            "status": "ok",
                            "mse": avg.mean_mse,
                            "rmse": avg.mean_rmse,
                            "test_std": avg.reports[0].test_std,
                            "reps": reps,
                        })
                    }
                    Err(e) => cell_error(basis, e),
                }
            }
            (None, None) => unreachable!("clap requires --design or --sampler"),
        };
        if cell["status"] == "error" {
            writeln!(table, "{}\tfailed: {}", basis.name(), cell["error"].as_str().unwrap_or_default()).unwrap();
        }
        cells.push(cell);
    }

    let source = match (&args.design, args.sampler) {
        (Some(path), _) => json!({ "design": path, "lattice_levels": args.lattice_levels }),
        (None, Some(s)) => json!({
            "sampler": if s == SamplerName::Lhs { "lhs" } else { "mlhs" },
            "reps": args.reps,
            "n": args.n,
            "seed": args.seed,
        }),
        (None, None) => Value::Null,
    };
    let config = json!({
        "function": function.name(),
        "bounds": function.bounds,
        "source": source,
        "options": options,
    });
    if cells.iter().all(|c| c["status"] == "error") {
        let reasons: Vec<&str> = cells.iter().filter_map(|c| c["error"].as_str()).collect();
        return Err(CliError::Numerical(format!("every fit failed: {}", reasons.join("; "))));
    }

    Ok(Outcome {
        command: "bench",
        config,
        result: json!({ "cells": cells }),
        stdout: table,
        files: Vec::new(),
        manifest: Some(args.out.clone()),
    })
}
