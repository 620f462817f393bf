use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Exponents of the dimensional constants multiplying an operator monomial.
///
/// `mu` counts powers of `μ'' = c μ'`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitGrade {
    pub m: i32,
    pub c: i32,
    pub hbar: u32,
    pub q: u32,
    pub mu: u32,
}

impl UnitGrade {
    pub const ONE: UnitGrade = UnitGrade {
        m: 0,
        c: 0,
        hbar: 0,
        q: 0,
        mu: 0,
    };

    /// `qħ/c`, the strength attached to `[π_i, π_j] = i(qħ/c) ε_ijk B_k`.
    pub const EPS: UnitGrade = UnitGrade {
        m: 0,
        c: -1,
        hbar: 1,
        q: 1,
        mu: 0,
    };

    pub const HBAR: UnitGrade = UnitGrade {
        m: 0,
        c: 0,
        hbar: 1,
        q: 0,
        mu: 0,
    };

    pub const Q: UnitGrade = UnitGrade {
        m: 0,
        c: 0,
        hbar: 0,
        q: 1,
        mu: 0,
    };

    pub const MU: UnitGrade = UnitGrade {
        m: 0,
        c: 0,
        hbar: 0,
        q: 0,
        mu: 1,
    };

    pub fn mass(p: i32) -> UnitGrade {
        UnitGrade {
            m: p,
            ..UnitGrade::ONE
        }
    }

    pub fn speed(p: i32) -> UnitGrade {
        UnitGrade {
            c: p,
            ..UnitGrade::ONE
        }
    }

    /// Numeric value with `μ'' = c μ'`.
    pub fn value(&self, m: f64, c: f64, hbar: f64, q: f64, mu_prime: f64) -> f64 {
        let mu2 = c * mu_prime;
        m.powi(self.m)
            * c.powi(self.c)
            * hbar.powi(self.hbar as i32)
            * q.powi(self.q as i32)
            * mu2.powi(self.mu as i32)
    }
}

impl Mul for UnitGrade {
    type Output = UnitGrade;
    fn mul(self, o: UnitGrade) -> UnitGrade {
        UnitGrade {
            m: self.m + o.m,
            c: self.c + o.c,
            hbar: self.hbar + o.hbar,
            q: self.q + o.q,
            mu: self.mu + o.mu,
        }
    }
}

fn factor(f: &mut fmt::Formatter<'_>, first: &mut bool, name: &str, p: i64) -> fmt::Result {
    if p == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if p == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{p}")
    }
}

impl fmt::Display for UnitGrade {
    /// Space-separated factors in the order `q mu hbar m c`, e.g. `q hbar m^-2`;
    /// the empty grade renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == UnitGrade::ONE {
            return f.write_str("1");
        }
        let mut first = true;
        factor(f, &mut first, "q", self.q as i64)?;
        factor(f, &mut first, "mu", self.mu as i64)?;
        factor(f, &mut first, "hbar", self.hbar as i64)?;
        factor(f, &mut first, "m", self.m as i64)?;
        factor(f, &mut first, "c", self.c as i64)
    }
}

impl FromStr for UnitGrade {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut g = UnitGrade::ONE;
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(g);
        }
        for tok in s.split_whitespace() {
            let bad = || ParseError::Units(tok.to_string());
            let (name, p) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<i32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let nonneg = |p: i32| u32::try_from(p).map_err(|_| bad());
            match name {
                "m" => g.m += p,
                "c" => g.c += p,
                "hbar" => g.hbar += nonneg(p)?,
                "q" => g.q += nonneg(p)?,
                "mu" => g.mu += nonneg(p)?,
                _ => return Err(bad()),
            }
        }
        Ok(g)
    }
}
