use fusion_core::fusion::fusion_table_with_residuals;
use log::info;
use serde_json::json;

use super::{algebra_json, CliError, Outcome};
use crate::args::{parse_algebra, TableArgs};
use crate::output::{ints, sci, Output};

pub fn run(args: &TableArgs) -> Result<Outcome, CliError> {
    let d = parse_algebra(&args.algebra)?;
    let tol = args.common.tolerances();
    let (table, summary) = fusion_table_with_residuals(&d, args.level, tol.rounding)?;
    let entries = table.entries();
    info!("{} level {}: {} nonzero entries", d.simple_type(), args.level, entries.len());
    let rows = entries
        .iter()
        .map(|e| vec![ints(&e.lambda), ints(&e.mu), ints(&e.nu), e.n.to_string()])
        .collect();
    let notes = vec![format!(
        "{} nonzero coefficients over {} weights, max rounding residual {}",
        entries.len(),
        table.size(),
        sci(summary.max_residual.max(summary.max_imaginary))
    )];
    let output = Output {
        json: json!({
            "algebra": algebra_json(&d),
            "level": args.level,
            "entries": entries,
        }),
        headers: vec!["lambda", "mu", "nu", "n"],
        rows,
        notes,
    };
    Ok(Outcome { output, code: 0 })
}
