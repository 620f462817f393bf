//! TOML run configuration. Every field is optional; command-line flags win over file
//! values, which win over built-in defaults.

use std::path::{Path, PathBuf};

use foldy_core::PhysicalParams;
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

/// Upper bound on series orders accepted from users.
pub const MAX_ORDER: usize = 61;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub tolerances: ToleranceSection,
    #[serde(default)]
    pub expand: ExpandSection,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub special_case: SpecialSection,
    #[serde(default)]
    pub sweep: SweepSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub m: Option<f64>,
    pub c: Option<f64>,
    pub q: Option<f64>,
    pub hbar: Option<f64>,
    pub mu_prime: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    pub block: Option<f64>,
    pub unitarity: Option<f64>,
    pub series: Option<f64>,
    pub classical: Option<f64>,
    pub quadrature: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpandSection {
    pub theory: Option<String>,
    pub order: Option<usize>,
    pub golden: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub order: Option<usize>,
    pub jmax: Option<usize>,
    pub theorems: Option<bool>,
    pub identities: Option<bool>,
    pub hamiltonian: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecialSection {
    pub trials: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub step: Option<f64>,
    pub grid: Option<Vec<f64>>,
    pub orders: Option<Vec<usize>>,
    pub classical_compare: Option<bool>,
    pub direction: Option<[f64; 3]>,
    pub e: Option<[f64; 3]>,
    pub b: Option<[f64; 3]>,
    pub phi: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Tolerances after overrides; all strictly positive.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct Tolerances {
    pub block: f64,
    pub unitarity: f64,
    pub series: f64,
    pub classical: f64,
    pub quadrature: f64,
}

impl Tolerances {
    pub fn resolve(file: &ToleranceSection) -> Result<Self, CliError> {
        use foldy_core::tolerances as t;
        let tol = Tolerances {
            block: file.block.unwrap_or(t::BLOCK),
            unitarity: file.unitarity.unwrap_or(t::UNITARITY),
            series: file.series.unwrap_or(t::SERIES),
            classical: file.classical.unwrap_or(t::SERIES),
            quadrature: file.quadrature.unwrap_or(t::QUADRATURE),
        };
        let all = [tol.block, tol.unitarity, tol.series, tol.classical, tol.quadrature];
        if all.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        Ok(tol)
    }
}

/// Flag values for the physical constants.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParamFlags {
    pub m: Option<f64>,
    pub c: Option<f64>,
    pub q: Option<f64>,
    pub hbar: Option<f64>,
    pub mu_prime: Option<f64>,
}

pub fn resolve_params(flags: &ParamFlags, file: &ParamsSection) -> Result<PhysicalParams, CliError> {
    let d = PhysicalParams::default();
    let p = PhysicalParams {
        m: flags.m.or(file.m).unwrap_or(d.m),
        c: flags.c.or(file.c).unwrap_or(d.c),
        q: flags.q.or(file.q).unwrap_or(d.q),
        hbar: flags.hbar.or(file.hbar).unwrap_or(d.hbar),
        mu_prime: flags.mu_prime.or(file.mu_prime).unwrap_or(d.mu_prime),
    };
    p.validate()?;
    Ok(p)
}

pub fn check_order(order: usize, min: usize) -> Result<usize, CliError> {
    if order < min {
        return Err(CliError::Config(format!("order {order} is below the minimum {min}")));
    }
    if order > MAX_ORDER {
        return Err(CliError::Config(format!("order {order} exceeds the maximum {MAX_ORDER}")));
    }
    Ok(order)
}
