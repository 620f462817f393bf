use clap::{Args, ValueEnum};
use foldy_core::closedform::cal_hfw_closed;
use foldy_core::kutzelnigg::{assemble_cal_hfw, lower_block_direct};
use foldy_core::linalg::{frobenius2, hermitian_from_parts};
use foldy_core::matrixlab::{
    case1_trials, case2_trials, charge_conjugate_block, massless_case, singular_omega_point, solve_case2,
    TrialSummary,
};
use foldy_core::{CMat4, FieldPoint, FoldyError, PhysicalParams};
use serde_json::{json, Value};

use super::{check_lines, Check, Context};
use crate::config::Tolerances;
use crate::error::CliError;
use crate::output::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CaseName {
    /// Magnetostatic Dirac matrix with a random Hermitian off-diagonal block.
    #[value(name = "1")]
    One,
    /// Uncharged Dirac-Pauli particle in an electric field (q is set to 0).
    #[value(name = "2")]
    Two,
    /// m = 0 with a positive definite off-diagonal block.
    Massless,
    /// Lower block against the charge-conjugated upper block.
    Conjugation,
}

impl CaseName {
    fn label(self) -> &'static str {
        match self {
            CaseName::One => "1",
            CaseName::Two => "2",
            CaseName::Massless => "massless",
            CaseName::Conjugation => "conjugation",
        }
    }
}

#[derive(Args)]
pub struct SpecialArgs {
    #[arg(value_enum)]
    case: CaseName,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Case 2 only: use p ⊥ E with c|p| = μ'|E|, where Ω has no inverse.
    #[arg(long)]
    singular_omega: bool,
}

pub fn run(args: &SpecialArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let f = &ctx.file.special_case;
    let trials = args.trials.or(f.trials).unwrap_or(100);
    let seed = args.seed.or(f.seed).unwrap_or(7);
    if args.singular_omega && args.case != CaseName::Two {
        return Err(CliError::Config("--singular-omega applies to case 2 only".into()));
    }
    execute(args.case, trials, seed, args.singular_omega, &ctx.params, &ctx.tol)
}

pub fn execute(
    case: CaseName,
    trials: usize,
    seed: u64,
    singular: bool,
    params: &PhysicalParams,
    tol: &Tolerances,
) -> Result<Outcome, CliError> {
    if trials == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    let uncharged = PhysicalParams { q: 0.0, ..*params };
    let (checks, extra) = match case {
        CaseName::One => trial_checks(&case1_trials(params, trials, seed)?, tol),
        CaseName::Two if singular => return Ok(singular_outcome(&uncharged)),
        CaseName::Two => trial_checks(&case2_trials(&uncharged, trials, seed)?, tol),
        CaseName::Massless => massless(params, tol)?,
        CaseName::Conjugation => conjugation(params, trials, seed, tol)?,
    };
    let pass = checks.iter().all(|c| c.pass);
    let mut body = json!({ "case": case.label(), "params": params, "tolerances": tol, "checks": checks });
    let mut text = check_lines(&checks);
    if let Some((key, value, extra_text)) = extra {
        body[key] = value;
        text.push_str(&extra_text);
    }
    Ok(Outcome {
        command: "special-case",
        pass,
        body,
        text,
        csv: None,
    })
}

type Extra = Option<(&'static str, Value, String)>;

fn trial_checks(s: &TrialSummary, tol: &Tolerances) -> (Vec<Check>, Extra) {
    let le = |name: &str, v: f64, t: f64| Check::new(name, v <= t, format!("max {v:.3e} (tol {t:.0e})"));
    let checks = vec![
        le("offdiag / |H|", s.max_offdiag, tol.block),
        le("upper block vs closed form", s.max_upper, tol.block),
        le("|U U^dag - I|", s.max_unitarity, 2.0 * tol.unitarity),
        le("spectrum preserved", s.max_spectrum, tol.block),
        le("block eigenvalues", s.max_block_eigen, tol.block),
        le("charge conjugation", s.max_conjugation, tol.block),
        Check::new(
            "branch gap / mc^2",
            s.min_branch_gap > foldy_core::tolerances::BRANCH_GAP,
            format!("min {:.3e}", s.min_branch_gap),
        ),
    ];
    let text = format!("{} trials, seed {}\n", s.trials, s.seed);
    (checks, Some(("summary", serde_json::to_value(s).expect("serializable"), text)))
}

fn singular_outcome(params: &PhysicalParams) -> Outcome {
    let (p, e) = singular_omega_point(params);
    let (pass, message) = match solve_case2(params, &p, &e) {
        Err(err @ FoldyError::SingularOmega { .. }) => (false, err.to_string()),
        Err(err) => (false, err.to_string()),
        Ok(_) => (true, "Omega was invertible".to_string()),
    };
    eprintln!("special-case 2: {message}");
    Outcome {
        command: "special-case",
        pass,
        body: json!({
            "case": "2",
            "p": [p.x, p.y, p.z],
            "e": [e.x, e.y, e.z],
            "error": message,
        }),
        text: format!("FAIL case 2 at p = {:?}, E = {:?}: {message}\n", [p.x, p.y, p.z], [e.x, e.y, e.z]),
        csv: None,
    }
}

fn matrix_rows(u: &CMat4) -> (Value, String) {
    let mut rows = Vec::new();
    let mut text = String::new();
    for i in 0..4 {
        let row: Vec<[f64; 2]> = (0..4).map(|j| [u[(i, j)].re, u[(i, j)].im]).collect();
        text.push_str(&row.iter().map(|z| format!("{:>10.6}", z[0] + 0.0)).collect::<Vec<_>>().join(" "));
        text.push('\n');
        rows.push(row);
    }
    (json!(rows), text)
}

fn massless(params: &PhysicalParams, tol: &Tolerances) -> Result<(Vec<Check>, Extra), CliError> {
    let scale = params.c;
    let m = hermitian_from_parts(1.5 * scale, [0.2 * scale, 0.3 * scale, -0.4 * scale]);
    let (r, dev) = massless_case(params, &m)?;
    let (rows, text) = matrix_rows(&r.u);
    let checks = vec![
        Check::new(
            "U = (1/sqrt 2)[[1, 1], [-1, 1]]",
            dev <= 1e-14,
            format!("max entry deviation {dev:.3e} (tol 1e-14)"),
        ),
        Check::new(
            "offdiag / |H|",
            r.relative_offdiag() <= tol.block,
            format!("{:.3e} (tol {:.0e})", r.relative_offdiag(), tol.block),
        ),
    ];
    let text = format!("U =\n{text}");
    Ok((checks, Some(("u", rows, text))))
}

fn conjugation(params: &PhysicalParams, trials: usize, seed: u64, tol: &Tolerances) -> Result<(Vec<Check>, Extra), CliError> {
    let uncharged = PhysicalParams { q: 0.0, ..*params };
    let exact = case2_trials(&uncharged, trials, seed)?.max_conjugation;
    let n = 30;
    let cal = assemble_cal_hfw(n)?;
    let lower = lower_block_direct(n)?;
    let flipped = PhysicalParams {
        q: -params.q,
        mu_prime: -params.mu_prime,
        ..*params
    };
    let mut worst = 0.0f64;
    let mut worst_closed = 0.0f64;
    for k in 0..trials {
        // deterministic points with |π|/mc below 0.4 and weak fields
        let t = (k as f64 + 0.5) / trials as f64;
        let (s, co) = (2.0 * std::f64::consts::PI * t).sin_cos();
        let x = 0.4 * t;
        let mc = params.m * params.c;
        let pt = FieldPoint::new(
            [x * mc * co, x * mc * s, x * mc * (t - 0.5)],
            [1e-3 * s, -2e-3 * co, 1e-3],
            [2e-3 * co, 1e-3, -1e-3 * s],
            0.3,
        );
        let low = lower.evaluate(params, &pt, n);
        let mirror = cal.evaluate(&flipped, &pt.with_pi_reversed(), n);
        worst = worst.max(frobenius2(&(low - charge_conjugate_block(&mirror))) / frobenius2(&low));
        let closed = cal_hfw_closed(&flipped, &pt.with_pi_reversed())?;
        worst_closed = worst_closed.max(frobenius2(&(low - charge_conjugate_block(&closed))) / frobenius2(&low));
    }
    let checks = vec![
        Check::new(
            "exact case 2 blocks",
            exact <= tol.block,
            format!("max rel {exact:.3e} (tol {:.0e})", tol.block),
        ),
        Check::new(
            "series blocks at order 30",
            worst <= tol.block,
            format!("max rel {worst:.3e} (tol {:.0e})", tol.block),
        ),
        Check::new(
            "series lower block vs conjugated closed form",
            worst_closed <= tol.block,
            format!("max rel {worst_closed:.3e} (tol {:.0e})", tol.block),
        ),
    ];
    Ok((checks, None))
}
