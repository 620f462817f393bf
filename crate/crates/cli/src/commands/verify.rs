use clap::Args;
use foldy_core::coeffs::{verify_identity_with, Coefficients, IdentityReport};
use foldy_core::kutzelnigg::{
    assemble_cal_hfw, assemble_hfw, cal_hfw_taylor, conjugate_cal_hfw, conjugate_hfw, dirac_series,
    hfw_taylor, lemma_commutator, lower_block, lower_block_direct, pauli_series, theorem_closed_form,
    Theorem,
};
use foldy_core::{CoeffKind, Identity};
use serde_json::json;

use super::{check_lines, Check, Context};
use crate::config::check_order;
use crate::error::CliError;
use crate::output::Outcome;

#[derive(Args)]
pub struct VerifyArgs {
    /// Closed forms of X_n and X'_n.
    #[arg(long)]
    theorems: bool,
    /// Coefficient identities A-F.
    #[arg(long)]
    identities: bool,
    /// Hermiticity, lemma and route agreement of the transformed Hamiltonians.
    #[arg(long)]
    hamiltonian: bool,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    jmax: Option<usize>,
    /// Add one to a coefficient before checking the identities, e.g. `A:5`.
    #[arg(long, hide = true)]
    corrupt_coeff: Option<String>,
}

pub struct VerifySettings {
    pub theorems: bool,
    pub identities: bool,
    pub hamiltonian: bool,
    pub order: usize,
    pub jmax: usize,
    pub corrupt: Option<(CoeffKind, usize)>,
}

pub fn run(args: &VerifyArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let f = &ctx.file.verify;
    let mut theorems = args.theorems || f.theorems.unwrap_or(false);
    let mut identities = args.identities || f.identities.unwrap_or(false);
    let mut hamiltonian = args.hamiltonian || f.hamiltonian.unwrap_or(false);
    if !(theorems || identities || hamiltonian) {
        (theorems, identities, hamiltonian) = (true, true, true);
    }
    let corrupt = args.corrupt_coeff.as_deref().map(parse_corruption).transpose()?;
    execute(&VerifySettings {
        theorems,
        identities: identities || corrupt.is_some(),
        hamiltonian,
        order: args.order.or(f.order).unwrap_or(31),
        jmax: args.jmax.or(f.jmax).unwrap_or(200),
        corrupt,
    })
}

fn parse_corruption(s: &str) -> Result<(CoeffKind, usize), CliError> {
    let bad = || CliError::Config(format!("expected KIND:J with KIND in A-E, got `{s}`"));
    let (k, j) = s.split_once(':').ok_or_else(bad)?;
    let kind = match k.trim() {
        "A" | "a" => CoeffKind::A,
        "B" | "b" => CoeffKind::B,
        "C" | "c" => CoeffKind::C,
        "D" | "d" => CoeffKind::D,
        "E" | "e" => CoeffKind::EBinom,
        _ => return Err(bad()),
    };
    Ok((kind, j.trim().parse().map_err(|_| bad())?))
}

pub fn execute(s: &VerifySettings) -> Result<Outcome, CliError> {
    check_order(s.order, 3)?;
    let mut checks = Vec::new();
    let mut first_failure = None;
    if s.theorems {
        checks.extend(theorem_checks(s.order)?);
    }
    if s.identities {
        if s.jmax == 0 {
            return Err(CliError::Config("jmax must be at least 1".into()));
        }
        let mut table = Coefficients::build(s.jmax + 1);
        if let Some((kind, j)) = s.corrupt {
            let v = table.values_mut(kind);
            if j >= v.len() {
                return Err(CliError::Config(format!("coefficient index {j} beyond jmax")));
            }
            v[j] += num_one();
        }
        for id in Identity::ALL {
            let r = verify_identity_with(&table, id, s.jmax);
            if first_failure.is_none() {
                first_failure = r.first_failure().map(|f| json!({ "identity": f.identity, "j": f.j }));
            }
            checks.push(identity_check(&r, s.jmax));
        }
    }
    if s.hamiltonian {
        checks.extend(hamiltonian_checks(s.order)?);
    }
    let pass = checks.iter().all(|c| c.pass);
    let mut text = check_lines(&checks);
    if let Some(f) = &first_failure {
        text.push_str(&format!("first failure: identity {} at j = {}\n", f["identity"].as_str().unwrap_or("?"), f["j"]));
    }
    let mut body = json!({ "order": s.order, "jmax": s.jmax, "checks": checks });
    if let Some((kind, j)) = s.corrupt {
        body["corrupted"] = json!({ "kind": kind, "j": j });
    }
    if let Some(f) = first_failure {
        body["first_failure"] = f;
    }
    Ok(Outcome {
        command: "verify",
        pass,
        body,
        text,
        csv: None,
    })
}

fn num_one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(1.into())
}

fn identity_check(r: &IdentityReport, jmax: usize) -> Check {
    let detail = match r.first_failure() {
        None => format!("exact for {} <= j <= {jmax}", r.identity.j_min()),
        Some(f) => format!("fails at j = {}: {} != {}", f.j, f.lhs, f.rhs),
    };
    Check::new(format!("identity {}", r.identity), r.pass, detail)
}

fn failing(orders: Vec<usize>) -> (bool, String) {
    if orders.is_empty() {
        (true, "all orders agree".into())
    } else {
        (false, format!("orders {orders:?} differ"))
    }
}

fn theorem_checks(order: usize) -> Result<Vec<Check>, CliError> {
    let x = dirac_series(order)?;
    let xp = pauli_series(&x, order)?;
    let mut bad1 = Vec::new();
    for n in 0..=order {
        if x.entry(n) != &theorem_closed_form(Theorem::T1, n)? {
            bad1.push(n);
        }
    }
    let mut bad2 = Vec::new();
    for n in 2..=order {
        if xp.entry(n) != &theorem_closed_form(Theorem::T2, n)? {
            bad2.push(n);
        }
    }
    let (p1, d1) = failing(bad1);
    let (p2, d2) = failing(bad2);
    Ok(vec![
        Check::new("theorem X_n", p1, format!("{d1} for n <= {order}")),
        Check::new("theorem X'_n", p2, format!("{d2} for 2 <= n <= {order}")),
    ])
}

fn hamiltonian_checks(order: usize) -> Result<Vec<Check>, CliError> {
    let h = assemble_hfw(order)?;
    let cal = assemble_cal_hfw(order)?;
    let anti = h.antihermitian_orders();
    let cal_anti = cal.antihermitian_orders();
    let lemma: Vec<usize> = lemma_commutator(order)?.nonzero().map(|(n, _)| n).collect();
    let diff = |a: &[foldy_core::OperatorPoly], b: &[foldy_core::OperatorPoly]| -> Vec<usize> {
        (0..a.len().max(b.len())).filter(|&n| a.get(n) != b.get(n)).collect()
    };
    let routes = diff(h.orders.entries(), conjugate_hfw(order)?.orders.entries());
    let cal_routes = diff(cal.orders.entries(), conjugate_cal_hfw(order)?.orders.entries());
    let taylor = diff(h.orders.entries(), hfw_taylor(order).entries());
    let cal_taylor = diff(cal.orders.entries(), cal_hfw_taylor(order).entries());
    let direct = lower_block_direct(order)?;
    let lower = lower_block(&cal);
    let mut lower_bad = diff(lower.orders.entries(), direct.orders.entries());
    if lower.rest_sign != direct.rest_sign {
        lower_bad.insert(0, 0);
    }
    let mk = |name: &str, bad: Vec<usize>| {
        let (p, d) = failing(bad);
        Check::new(name, p, format!("{d} up to order {order}"))
    };
    Ok(vec![
        Check::new(
            "H_FW hermitian",
            anti.is_empty(),
            format!("antihermitian orders {anti:?}"),
        ),
        Check::new(
            "Dirac-Pauli H_FW hermitian",
            cal_anti.is_empty(),
            format!("antihermitian orders {cal_anti:?}"),
        ),
        Check::new(
            "lemma [c s.pi X, X^dag X] = 0",
            lemma.is_empty(),
            format!("nonzero orders {lemma:?}"),
        ),
        mk("H_FW assembly routes", routes),
        mk("Dirac-Pauli assembly routes", cal_routes),
        mk("H_FW Taylor table", taylor),
        mk("Dirac-Pauli Taylor table", cal_taylor),
        mk("lower block by charge conjugation", lower_bad),
    ])
}
