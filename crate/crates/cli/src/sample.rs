use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::json;
use unidesign::sampling::{lhd, lhs, mlhs};
use unidesign::{cd2, embed, random_utype, DesignMatrix};

use crate::csvio::{design_csv, digest, integer_csv};
use crate::error::CliResult;
use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Latin hypercube design, integer levels 1..=n.
    Lhd,
    /// Latin hypercube sample, uniform within strata.
    Lhs,
    /// Mid-point Latin hypercube sample.
    Mlhs,
    /// Random balanced U-type design, integer levels 1..=q.
    Utype,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Lhd => "lhd",
            Kind::Lhs => "lhs",
            Kind::Mlhs => "mlhs",
            Kind::Utype => "utype",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub s: usize,
    /// Levels per factor for utype; must divide n. Defaults to n.
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Defaults to the --out path with extension .manifest.json.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

pub fn run(args: &SampleArgs) -> CliResult<Outcome> {
    let (n, s, seed) = (args.n, args.s, args.seed);
    // `unit` is the sample as a point set in the unit cube, used for the
    // printed CD²; integer kinds use their mid-point embedding.
    let (bytes, unit): (Vec<u8>, DesignMatrix) = match args.kind {
        Kind::Lhd => {
            let d = lhd(n, s, seed)?;
            let rows = (0..n).map(|k| (0..s).map(|j| d.get(k, j)).collect());
            let unit = DesignMatrix::new(n, s, (0..n * s).map(|x| (d.get(x / s, x % s) as f64 - 0.5) / n as f64).collect())?;
            (integer_csv(rows), unit)
        }
        Kind::Lhs | Kind::Mlhs => {
            let d = if args.kind == Kind::Lhs { lhs(n, s, seed)? } else { mlhs(n, s, seed)? };
            (design_csv(&d), d)
        }
        Kind::Utype => {
            let d = random_utype(n, args.q.unwrap_or(n), s, seed)?;
            let rows = (0..n).map(|i| (0..s).map(|j| d.level(i, j)).collect());
            (integer_csv(rows), embed(&d))
        }
    };
    let value = cd2(&unit);
    let manifest = args.manifest.clone().unwrap_or_else(|| args.out.with_extension("manifest.json"));
    Ok(Outcome {
        command: "sample",
        config: json!({ "kind": args.kind.name(), "n": n, "s": s, "q": args.q, "seed": seed }),
        result: json!({ "cd2": value, "design_digest": digest(&bytes) }),
        stdout: format!("cd2 {value}\n"),
        files: vec![(args.out.clone(), bytes)],
        manifest: Some(manifest),
    })
}
