use clap::Args;
use serde_json::{json, Map, Value};

use super::special::CaseName;
use super::verify::VerifySettings;
use super::{expand, special, sweep, verify, Context};
use crate::error::CliError;
use crate::output::Outcome;
use crate::Theory;

#[derive(Args)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 31)]
    order: usize,
    #[arg(long, default_value_t = 200)]
    jmax: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

pub fn run(args: &ReportArgs, ctx: &Context) -> Result<Outcome, CliError> {
    let mut parts: Vec<(String, Outcome)> = vec![
        ("expand_dirac".into(), expand::execute(Theory::Dirac, 13, true)?),
        ("expand_dirac_pauli".into(), expand::execute(Theory::DiracPauli, 12, true)?),
        (
            "verify".into(),
            verify::execute(&VerifySettings {
                theorems: true,
                identities: true,
                hamiltonian: true,
                order: args.order,
                jmax: args.jmax,
                corrupt: None,
            })?,
        ),
    ];
    for case in [CaseName::One, CaseName::Two, CaseName::Massless, CaseName::Conjugation] {
        let o = special::execute(case, args.trials, args.seed, false, &ctx.params, &ctx.tol)?;
        parts.push((format!("special_case_{}", o.body["case"].as_str().unwrap_or("?")), o));
    }
    if ctx.params.m > 0.0 {
        parts.push(("sweep".into(), sweep::execute(&sweep::default_settings(), ctx)?));
    }
    let mut sections = Map::new();
    let mut text = String::new();
    for (name, o) in &parts {
        text.push_str(&format!("{} {name}\n", if o.pass { "PASS" } else { "FAIL" }));
        let mut v = o.json();
        if let Value::Object(m) = &mut v {
            m.remove("schema");
        }
        sections.insert(name.clone(), v);
    }
    Ok(Outcome {
        command: "report",
        pass: parts.iter().all(|(_, o)| o.pass),
        body: json!({ "sections": sections }),
        text,
        csv: None,
    })
}
