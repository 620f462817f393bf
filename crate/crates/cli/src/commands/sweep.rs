use std::fmt::Write;

use clap::Args;
use foldy_core::closedform::classical_comparison;
use foldy_core::kutzelnigg::{assemble_cal_hfw, assemble_hfw};
use foldy_core::matrixlab::{series_vs_closed_sweep, SweepLine};
use serde_json::json;

use super::Context;
use crate::config::check_order;
use crate::error::CliError;
use crate::output::Outcome;

#[derive(Args)]
pub struct SweepArgs {
    /// First |π|/mc value of the grid.
    #[arg(long)]
    from: Option<f64>,
    /// Last |π|/mc value of the grid.
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
    /// Explicit comma-separated |π|/mc values; overrides from/to/step.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Series orders whose partial sums are compared, comma separated.
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<usize>>,
    /// Fail unless quantum and classical energies agree inside the series radius.
    #[arg(long)]
    classical_compare: bool,
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    direction: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    e: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', num_args = 3, allow_hyphen_values = true)]
    b: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<f64>,
}

pub struct SweepSettings {
    pub grid: Vec<f64>,
    pub orders: Vec<usize>,
    pub classical_compare: bool,
    pub line: SweepLine,
}

fn triple(v: Option<&Vec<f64>>, file: Option<[f64; 3]>, default: [f64; 3]) -> Result<[f64; 3], CliError> {
    match v {
        Some(v) => <[f64; 3]>::try_from(v.as_slice()).map_err(|_| CliError::Config("vectors need 3 components".into())),
        None => Ok(file.unwrap_or(default)),
    }
}

pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !(to >= from) || !from.is_finite() || !to.is_finite() {
        return Err(CliError::Config(format!("empty grid {from}..{to} step {step}")));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| from + step * i as f64).collect())
}

pub fn default_settings() -> SweepSettings {
    SweepSettings {
        grid: grid(0.0, 1.2, 0.05).expect("valid default grid"),
        orders: vec![10, 20, 30],
        classical_compare: true,
        line: SweepLine::new([1.0, 0.0, 0.0], [0.0, 1e-3, 0.0], [0.0, 0.0, 1e-3], 0.0),
    }
}

pub fn run(args: &SweepArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let f = &ctx.file.sweep;
    let d = default_settings();
    let values = match args.grid.clone().or(f.grid.clone()) {
        Some(g) => g,
        None => grid(
            args.from.or(f.from).unwrap_or(0.0),
            args.to.or(f.to).unwrap_or(1.2),
            args.step.or(f.step).unwrap_or(0.05),
        )?,
    };
    let line = SweepLine::new(
        triple(args.direction.as_ref(), f.direction, [1.0, 0.0, 0.0])?,
        triple(args.e.as_ref(), f.e, [0.0, 1e-3, 0.0])?,
        triple(args.b.as_ref(), f.b, [0.0, 0.0, 1e-3])?,
        args.phi.or(f.phi).unwrap_or(0.0),
    );
    execute(
        &SweepSettings {
            grid: values,
            orders: args.orders.clone().or(f.orders.clone()).unwrap_or(d.orders),
            classical_compare: args.classical_compare || f.classical_compare.unwrap_or(false),
            line,
        },
        ctx,
    )
}

pub fn execute(s: &SweepSettings, ctx: &Context) -> Result<Outcome, CliError> {
    if s.grid.is_empty() {
        return Err(CliError::Config("empty grid".into()));
    }
    if s.grid.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
        return Err(CliError::Config("grid values must be finite and >= 0".into()));
    }
    if s.orders.is_empty() {
        return Err(CliError::Config("no series orders given".into()));
    }
    let p = &ctx.params;
    let top = *s.orders.iter().max().expect("nonempty");
    let h = if p.mu_prime == 0.0 {
        assemble_hfw(check_order(top.max(2), 2)?)?
    } else {
        assemble_cal_hfw(check_order(top.max(3), 3)?)?
    };
    let rows = series_vs_closed_sweep(p, &h, &s.line, &s.grid, &s.orders)?;
    let mut csv = String::from(
        "pi_over_mc,v_over_c,e_x,e_y,e_z,b_x,b_y,b_z,eigenvalue_plus,eigenvalue_minus,classical_plus,classical_minus,abs_diff",
    );
    for n in &s.orders {
        write!(csv, ",rel_err_order_{n}").expect("string write");
    }
    csv.push('\n');
    let mut json_rows = Vec::new();
    let mut worst_inside = 0.0f64;
    for r in &rows {
        let pt = s.line.point(p, r.pi_over_mc);
        let cmp = classical_comparison(p, &pt)?;
        if r.pi_over_mc < 1.0 {
            worst_inside = worst_inside.max(cmp.abs_diff);
        }
        let (e, b) = (s.line.e, s.line.b);
        write!(
            csv,
            "{:.6},{:.6},{:e},{:e},{:e},{:e},{:e},{:e},{:.15e},{:.15e},{:.15e},{:.15e},{:.3e}",
            r.pi_over_mc,
            r.v_over_c,
            e.x,
            e.y,
            e.z,
            b.x,
            b.y,
            b.z,
            cmp.eigenvalue_plus,
            cmp.eigenvalue_minus,
            cmp.classical_plus,
            cmp.classical_minus,
            cmp.abs_diff
        )
        .expect("string write");
        for (_, err) in &r.errors {
            write!(csv, ",{err:.3e}").expect("string write");
        }
        csv.push('\n');
        json_rows.push(json!({ "series": r, "classical": cmp }));
    }
    let pass = !s.classical_compare || worst_inside <= ctx.tol.classical;
    let body = json!({
        "params": p,
        "orders": s.orders,
        "rows": json_rows,
        "max_classical_abs_diff_inside_radius": worst_inside,
        "classical_tolerance": ctx.tol.classical,
    });
    Ok(Outcome {
        command: "sweep",
        pass,
        body,
        text: csv.clone(),
        csv: Some(csv),
    })
}
