use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianRational, OperatorPoly, UnitGrade};
use crate::linalg::CMat2;
use crate::physics::{FieldPoint, PhysicalParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesLabel {
    X,
    Xprime,
    HfwOrders,
    HprimeFwOrders,
    CalHfwOrders,
    LowerOrders,
    XdagXOrders,
}

/// Series in `1/c`; `entries[n]` is the coefficient of `c^{-n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTable {
    pub label: SeriesLabel,
    entries: Vec<OperatorPoly>,
}

impl SeriesTable {
    pub fn new(label: SeriesLabel, entries: Vec<OperatorPoly>) -> Self {
        SeriesTable { label, entries }
    }

    pub fn zeros(label: SeriesLabel, max_order: usize) -> Self {
        SeriesTable {
            label,
            entries: vec![OperatorPoly::zero(); max_order + 1],
        }
    }

    /// Highest stored order.
    pub fn max_order(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    /// Entry `n`; panics beyond `max_order`.
    pub fn entry(&self, n: usize) -> &OperatorPoly {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[OperatorPoly] {
        &self.entries
    }

    pub fn set(&mut self, n: usize, p: OperatorPoly) {
        self.entries[n] = p;
    }

    /// `(order, entry)` for nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &OperatorPoly)> {
        self.entries.iter().enumerate().filter(|(_, p)| !p.is_zero())
    }

    pub fn truncated(&self, max_order: usize) -> SeriesTable {
        SeriesTable {
            label: self.label,
            entries: self.entries[..=max_order.min(self.max_order())].to_vec(),
        }
    }

    pub fn map(&self, label: SeriesLabel, f: impl Fn(&OperatorPoly) -> OperatorPoly) -> SeriesTable {
        SeriesTable {
            label,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `Σ_{n ≤ max_order} entry(n) c^{-n}` evaluated at `point`.
    pub fn evaluate(&self, params: &PhysicalParams, point: &FieldPoint, max_order: usize) -> CMat2 {
        let mut acc = CMat2::zeros();
        for (n, p) in self.entries.iter().enumerate().take(max_order + 1) {
            if !p.is_zero() {
                acc += p.evaluate(params, point) * num_complex::Complex64::new(params.c.powi(-(n as i32)), 0.0);
            }
        }
        acc
    }
}

/// Entries `0..=len-1` of the product of two series.
pub fn series_mul(a: &[OperatorPoly], b: &[OperatorPoly], len: usize) -> Vec<OperatorPoly> {
    let mut out = vec![OperatorPoly::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = &out[i + j] + &ai.mul(bj);
        }
    }
    out
}

pub fn series_add(a: &[OperatorPoly], b: &[OperatorPoly], len: usize) -> Vec<OperatorPoly> {
    (0..len)
        .map(|n| {
            let x = a.get(n).cloned().unwrap_or_default();
            let y = b.get(n).cloned().unwrap_or_default();
            &x + &y
        })
        .collect()
}

/// `binom(alpha, n)` for `n = 0..len`.
pub fn binomial_coefficients(alpha: &BigRational, len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    let mut cur = BigRational::one();
    for n in 0..len {
        out.push(cur.clone());
        let k = BigRational::from_integer(BigInt::from(n));
        cur = cur * (alpha - &k) / (k + BigRational::one());
    }
    out
}

/// `Σ_k coeffs[k] Y^k` truncated to `len` entries; `Y` must have no entry of order 0.
pub fn series_power_sum(y: &[OperatorPoly], coeffs: &[BigRational], len: usize) -> Vec<OperatorPoly> {
    assert!(y.first().is_none_or(|p| p.is_zero()), "series must vanish at order 0");
    let lowest = y.iter().position(|p| !p.is_zero()).unwrap_or(len);
    let mut out = vec![OperatorPoly::zero(); len];
    out[0] = OperatorPoly::one().scale_rational(&coeffs[0]);
    let mut power: Vec<OperatorPoly> = {
        let mut v = vec![OperatorPoly::zero(); len];
        v[0] = OperatorPoly::one();
        v
    };
    for (k, ck) in coeffs.iter().enumerate().skip(1) {
        if k * lowest >= len {
            break;
        }
        power = series_mul(&power, y, len);
        if ck.is_zero() {
            continue;
        }
        let g = GaussianRational::real(ck.clone());
        for n in 0..len {
            if !power[n].is_zero() {
                out[n] = &out[n] + &power[n].scale(&g, UnitGrade::ONE);
            }
        }
    }
    out
}
