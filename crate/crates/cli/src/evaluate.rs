use std::fmt::Write;
use std::path::PathBuf;

use clap::Args;
use serde_json::json;
use unidesign::{cd2, cd2_gradient};

use crate::csvio::read_design;
use crate::error::{CliError, CliResult};
use crate::Outcome;

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    /// Headerless CSV design over [0, 1]^s.
    #[arg(long)]
    pub design: PathBuf,
    /// Also print the n×s gradient matrix.
    #[arg(long)]
    pub gradient: bool,
}

pub fn run(args: &EvaluateArgs) -> CliResult<Outcome> {
    let design = read_design(&args.design)?;
    let value = cd2(&design);
    if !value.is_finite() {
        return Err(CliError::Numerical("CD² is not finite".into()));
    }
    let mut stdout = format!("cd2 {value}\n");
    if args.gradient {
        let g = cd2_gradient(&design);
        stdout.push_str("gradient\n");
        for i in 0..g.n {
            let row: Vec<String> = g.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(stdout, "{}", row.join(",")).unwrap();
        }
    }
    Ok(Outcome {
        command: "evaluate",
        config: json!({ "design": args.design, "gradient": args.gradient }),
        result: json!({ "cd2": value, "n": design.n(), "s": design.s() }),
        stdout,
        files: Vec::new(),
        manifest: None,
    })
}
