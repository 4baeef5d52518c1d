use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use unidesign::lattice::{ta_optimize, TaResult};
use unidesign::optimize::{pipeline_best_of, refine, TracePoint};
use unidesign::{cd2, embed, Algorithm, DesignMatrix, RefinerConfig, TaConfig};

use crate::csvio::{design_csv, digest, projections_csv, read_design, trace_csv};
use crate::error::{CliError, CliResult};
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Ta,
    #[value(name = "ta+cgd")]
    TaCgd,
    #[value(name = "ta+czg")]
    TaCzg,
    #[value(name = "ta+cdfss")]
    TaCdfss,
    Cgd,
    Czg,
    Cdfss,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Ta => "ta",
            Algo::TaCgd => "ta+cgd",
            Algo::TaCzg => "ta+czg",
            Algo::TaCdfss => "ta+cdfss",
            Algo::Cgd => "cgd",
            Algo::Czg => "czg",
            Algo::Cdfss => "cdfss",
        }
    }

    /// Refiner run after (or instead of) TA.
    fn refiner(self) -> Option<Algorithm> {
        match self {
            Algo::Ta => None,
            Algo::TaCgd | Algo::Cgd => Some(Algorithm::Cgd),
            Algo::TaCzg | Algo::Czg => Some(Algorithm::Czg),
            Algo::TaCdfss | Algo::Cdfss => Some(Algorithm::Cdfss),
        }
    }

    fn uses_ta(self) -> bool {
        matches!(self, Algo::Ta | Algo::TaCgd | Algo::TaCzg | Algo::TaCdfss)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    /// Number of runs (TA algorithms).
    #[arg(long)]
    pub n: Option<usize>,
    /// Levels per factor; must divide n. Defaults to n.
    #[arg(long)]
    pub q: Option<usize>,
    /// Number of factors (TA algorithms).
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run seeds seed, seed+1, ... and keep the lowest CD².
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Starting design for the standalone refiners.
    #[arg(long)]
    pub init: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
    /// Trace CSV (epoch,cd2,seconds).
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Defaults to the --out path with extension .manifest.json.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// CSV of every two-factor projection of the final design.
    #[arg(long)]
    pub projections: Option<PathBuf>,

    /// TA threshold scale α.
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// TA stages I.
    #[arg(long, default_value_t = 20)]
    pub stages: usize,
    /// TA probe neighbors J used to seed the thresholds.
    #[arg(long, default_value_t = 100)]
    pub probes: usize,
    /// TA iterations per stage.
    #[arg(long, default_value_t = 2000)]
    pub iterations: usize,

    /// Gradient step δ (cgd).
    #[arg(long, default_value_t = 0.01)]
    pub step_size: f64,
    /// Stop when successive epoch CD² values differ by less than this.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_epochs: usize,
    /// Recursion depth of the zero-gradient solve (czg).
    #[arg(long, default_value_t = 1)]
    pub t_max: usize,
    /// Comma-separated per-column steps (cdfss); default 1/(2q).
    #[arg(long, value_delimiter = ',')]
    pub column_steps: Option<Vec<f64>>,
    /// czg: skip coordinate updates that raise CD².
    #[arg(long)]
    pub guarded: bool,
}

impl ConstructArgs {
    fn refiner_config(&self) -> RefinerConfig {
        RefinerConfig {
            step_size: self.step_size,
            epsilon: self.epsilon,
            max_epochs: self.max_epochs,
            t_max: self.t_max,
            column_steps: self.column_steps.clone(),
            guarded: self.guarded,
        }
    }

    fn ta_config(&self) -> CliResult<TaConfig> {
        let (Some(n), Some(s)) = (self.n, self.s) else {
            return Err(CliError::Usage(format!("--algo {} needs --n and --s", self.algo.name())));
        };
        Ok(TaConfig {
            alpha: self.alpha,
            stages: self.stages,
            probes: self.probes,
            iterations_per_stage: self.iterations,
            ..TaConfig::new(n, self.q.unwrap_or(n), s, self.seed)
        })
    }

    fn seed_range(&self) -> CliResult<std::ops::Range<u64>> {
        if self.seeds == 0 {
            return Err(CliError::Usage("--seeds must be at least 1".into()));
        }
        let end = self.seed.checked_add(self.seeds).ok_or_else(|| CliError::Usage("--seed + --seeds overflows".into()))?;
        Ok(self.seed..end)
    }

    fn manifest_path(&self) -> PathBuf {
        self.manifest.clone().unwrap_or_else(|| self.out.with_extension("manifest.json"))
    }
}

struct Built {
    design: DesignMatrix,
    trace: Vec<TracePoint>,
    summary: serde_json::Value,
}

fn ta_trace(ta: &TaResult) -> Vec<TracePoint> {
    ta.trace.iter().map(|p| TracePoint { epoch: p.iteration, cd2: p.cd2, seconds: p.seconds }).collect()
}

fn build_with_ta(args: &ConstructArgs) -> CliResult<Built> {
    if args.init.is_some() {
        return Err(CliError::Usage(format!("--algo {} starts from a random lattice design; --init is not used", args.algo.name())));
    }
    let ta_config = args.ta_config()?;
    ta_config.validate()?;
    let seeds = args.seed_range()?;
    match args.algo.refiner() {
        None => {
            let runs = seeds
                .clone()
                .into_par_iter()
                .map(|seed| ta_optimize(&TaConfig { seed, ..ta_config.clone() }).map(|r| (seed, r)))
                .collect::<Result<Vec<_>, _>>()?;
            let (seed, ta) = runs
                .into_iter()
                .reduce(|best, next| if next.1.best_cd2 < best.1.best_cd2 { next } else { best })
                .expect("at least one seed");
            Ok(Built {
                design: embed(&ta.best),
                trace: ta_trace(&ta),
                summary: json!({ "seed": seed, "ta_cd2": ta.best_cd2, "initial_cd2": ta.initial_cd2, "accepted": ta.accepted }),
            })
        }
        Some(algorithm) => {
            let config = args.refiner_config();
            config.validate()?;
            let (seed, run) = pipeline_best_of(&ta_config, seeds, algorithm, &config)?;
            Ok(Built {
                summary: json!({
                    "seed": seed,
                    "ta_cd2": run.ta.best_cd2,
                    "initial_cd2": run.ta.initial_cd2,
                    "epochs": run.refined.trace.points.len().saturating_sub(1),
                    "termination": run.refined.termination,
                }),
                trace: run.refined.trace.points,
                design: run.refined.design,
            })
        }
    }
}

fn build_standalone(args: &ConstructArgs, algorithm: Algorithm) -> CliResult<Built> {
    let Some(path) = &args.init else {
        return Err(CliError::Usage(format!("--algo {} refines an existing design and needs --init", args.algo.name())));
    };
    if args.seeds != 1 {
        return Err(CliError::Usage("--seeds applies to TA algorithms only".into()));
    }
    let config = args.refiner_config();
    config.validate()?;
    let init = read_design(path)?;
    for (flag, given, actual) in [("--n", args.n, init.n()), ("--s", args.s, init.s())] {
        if given.is_some_and(|g| g != actual) {
            return Err(CliError::Usage(format!("{flag} {} does not match --init ({actual})", given.unwrap())));
        }
    }
    let initial_cd2 = cd2(&init);
    let run = refine(algorithm, &init, &config)?;
    Ok(Built {
        summary: json!({
            "initial_cd2": initial_cd2,
            "epochs": run.trace.points.len().saturating_sub(1),
            "termination": run.termination,
        }),
        trace: run.trace.points,
        design: run.design,
    })
}

pub fn run(args: &ConstructArgs) -> CliResult<Outcome> {
    let built = match args.algo.refiner() {
        _ if args.algo.uses_ta() => build_with_ta(args)?,
        Some(algorithm) => build_standalone(args, algorithm)?,
        None => unreachable!("every non-TA algorithm has a refiner"),
    };
    let value = cd2(&built.design);
    if !value.is_finite() {
        return Err(CliError::Numerical("final CD² is not finite".into()));
    }

    let design_bytes = design_csv(&built.design);
    let mut result = json!({
        "cd2": value,
        "n": built.design.n(),
        "s": built.design.s(),
        "design_digest": digest(&design_bytes),
    });
    if let (Some(r), Some(extra)) = (result.as_object_mut(), built.summary.as_object()) {
        r.extend(extra.clone());
    }

    let mut files = vec![(args.out.clone(), design_bytes)];
    if let Some(path) = &args.trace {
        files.push((path.clone(), trace_csv(&built.trace)));
    }
    if let Some(path) = &args.projections {
        files.push((path.clone(), projections_csv(&built.design)));
    }

    let mut config = json!({
        "algo": args.algo.name(),
        "seed": args.seed,
        "seeds": args.seeds,
        "refiner": args.refiner_config(),
    });
    if args.algo.uses_ta() {
        config["ta"] = serde_json::to_value(args.ta_config()?).expect("config serializes");
    } else if let Some(init) = &args.init {
        config["init"] = json!(init);
    }

    Ok(Outcome {
        command: "construct",
        config,
        result,
        stdout: format!("cd2 {value}\n"),
        files,
        manifest: Some(args.manifest_path()),
    })
}
