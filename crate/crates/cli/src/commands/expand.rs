use clap::{Args, ValueEnum};
use foldy_core::golden;
use foldy_core::kutzelnigg::{dirac_series, pauli_series, SeriesTable};
use serde_json::json;

use super::Context;
use crate::config::check_order;
use crate::error::CliError;
use crate::output::Outcome;
use crate::Theory;

#[derive(Args)]
pub struct ExpandArgs {
    #[arg(long, value_enum)]
    theory: Option<Theory>,
    /// Highest order n of X_n (or X'_n) to compute.
    #[arg(long)]
    order: Option<usize>,
    /// Compare against the embedded reference tables.
    #[arg(long)]
    golden: bool,
}

pub fn run(args: &ExpandArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let f = &ctx.file.expand;
    let theory = match (args.theory, &f.theory) {
        (Some(t), _) => t,
        (None, Some(s)) => Theory::from_str(s, true).map_err(|_| CliError::Config(format!("unknown theory `{s}`")))?,
        (None, None) => Theory::Dirac,
    };
    let default_order = match theory {
        Theory::Dirac => 13,
        Theory::DiracPauli => 12,
    };
    let order = args.order.or(f.order).unwrap_or(default_order);
    execute(theory, order, args.golden || f.golden.unwrap_or(false))
}

pub fn execute(theory: Theory, order: usize, use_golden: bool) -> Result<Outcome, CliError> {
    let (name, prefix, table) = match theory {
        Theory::Dirac => {
            check_order(order, 1)?;
            ("dirac", "X", dirac_series(order)?)
        }
        Theory::DiracPauli => {
            check_order(order, 3)?;
            let x = dirac_series(order)?;
            ("dirac-pauli", "X'", pauli_series(&x, order)?)
        }
    };
    let mut text = String::new();
    let mut orders = Vec::new();
    for (n, p) in table.nonzero() {
        text.push_str(&format!("{prefix}_{n} = {p}\n"));
        let terms: Vec<String> = p.terms().iter().map(|t| t.to_string()).collect();
        orders.push(json!({ "n": n, "terms": terms }));
    }
    let mut body = json!({ "theory": name, "order": order, "orders": orders });
    let mut pass = true;
    if use_golden {
        let (through, mismatches) = compare(theory, &table, order);
        pass = mismatches.is_empty();
        if pass {
            text.push_str(&format!("golden: {prefix}_n match through n = {through}\n"));
        } else {
            text.push_str(&format!("golden: mismatch at orders {mismatches:?}\n"));
        }
        body["golden"] = json!({ "checked_through": through, "mismatches": mismatches });
    }
    Ok(Outcome {
        command: "expand",
        pass,
        body,
        text,
        csv: None,
    })
}

fn compare(theory: Theory, table: &SeriesTable, order: usize) -> (usize, Vec<usize>) {
    let g = golden::tables();
    let reference = match theory {
        Theory::Dirac => g.dirac,
        Theory::DiracPauli => g.pauli,
    };
    let through = order.min(reference.max_order);
    let mismatches = reference.mismatches(table).into_iter().filter(|&n| n <= through).collect();
    (through, mismatches)
}
