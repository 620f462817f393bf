pub mod expand;
pub mod report;
pub mod special;
pub mod sweep;
pub mod verify;

use foldy_core::PhysicalParams;
use serde::Serialize;

use crate::config::{resolve_params, FileConfig, ParamFlags, Tolerances};
use crate::error::CliError;

/// Settings shared by all subcommands.
pub struct Context<'a> {
    pub file: &'a FileConfig,
    pub params: PhysicalParams,
    pub tol: Tolerances,
}

impl<'a> Context<'a> {
    pub fn new(file: &'a FileConfig, flags: &ParamFlags) -> Result<Self, CliError> {
        Ok(Context {
            file,
            params: resolve_params(flags, &file.params)?,
            tol: Tolerances::resolve(&file.tolerances)?,
        })
    }
}

/// One named pass/fail line of a report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

pub fn check_lines(checks: &[Check]) -> String {
    checks
        .iter()
        .map(|c| format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail))
        .collect()
}
