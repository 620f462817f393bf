//! Closed forms for the series coefficients and the expected Taylor coefficients of the
//! transformed Hamiltonians, built directly from the coefficient sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::series::{SeriesLabel, SeriesTable};
use crate::algebra::{Field, GaussianRational, OperatorPoly, Tail, UnitGrade};
use crate::coeffs::shared;
use crate::error::FoldyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Closed form of `X_n`.
    T1,
    /// Closed form of `X'_n`.
    T2,
}

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `value · (-1)^j / 2^p`, optionally times `i`.
fn coefficient(value: &BigRational, j: usize, p: usize, imaginary: bool) -> GaussianRational {
    let r = value * BigRational::from_integer(BigInt::from(sign(j)))
        / BigRational::from_integer(BigInt::from(1u8) << p);
    if imaginary {
        GaussianRational::imag(r)
    } else {
        GaussianRational::real(r)
    }
}

fn term(c: GaussianRational, grade: UnitGrade, tail: Tail, k: u32) -> OperatorPoly {
    OperatorPoly::monomial(c, grade, tail, k)
}

/// The claimed closed form of `X_n` (`T1`, `n ≥ 0`) or `X'_n` (`T2`, `n ≥ 2`).
pub fn theorem_closed_form(which: Theorem, n: usize) -> Result<OperatorPoly, FoldyError> {
    let t = shared(n / 2 + 2);
    let (a, b, c, d) = (&t.a, &t.b, &t.c, &t.d);
    let e = Field::E;
    let mut out = OperatorPoly::zero();
    match which {
        Theorem::T1 => {
            if n.is_multiple_of(2) {
                return Ok(out);
            }
            let j = (n - 1) / 2;
            let qh_m = UnitGrade::Q * UnitGrade::HBAR * UnitGrade::mass(-(2 * j as i32));
            out = out
                + OperatorPoly::sigma_pi_power(n as u32).scale(
                    &coefficient(&a[j], j, n, false),
                    UnitGrade::mass(-(n as i32)),
                );
            if j >= 1 {
                out = out + term(coefficient(&b[j], j, 2 * j, true), qh_m, Tail::SigmaField(e), j as u32 - 1);
            }
            if j >= 2 {
                out = out
                    + term(
                        coefficient(&c[j], j, 2 * j, true),
                        qh_m,
                        Tail::SigmaPiFieldDot(e),
                        j as u32 - 2,
                    );
            }
        }
        Theorem::T2 => {
            if n < 2 {
                return Err(FoldyError::OrderTooLow { got: n, min: 2 });
            }
            if n.is_multiple_of(2) {
                let j = n / 2;
                // 2 b_{j-1} μ'' (-1)^j / (2m)^{2j-2} π^{2j-4} (B·π)
                if j >= 2 {
                    let two_b = &b[j - 1] * BigRational::from_integer(BigInt::from(2));
                    out = out
                        + term(
                            coefficient(&two_b, j, 2 * j - 2, false),
                            UnitGrade::MU * UnitGrade::mass(-(2 * j as i32 - 2)),
                            Tail::FieldDot(Field::B),
                            j as u32 - 2,
                        );
                }
            } else {
                let j = (n - 1) / 2;
                let g = UnitGrade::MU * UnitGrade::mass(-(2 * j as i32 - 1));
                out = out + term(coefficient(&b[j], j, 2 * j - 1, true), g, Tail::SigmaField(e), j as u32 - 1);
                if j >= 2 {
                    out = out
                        + term(
                            coefficient(&d[j], j + 1, 2 * j - 1, true),
                            g,
                            Tail::SigmaPiFieldDot(e),
                            j as u32 - 2,
                        );
                }
            }
        }
    }
    Ok(out)
}

/// Expected entries of `H_FW - mc² - qφ`:
/// `h_{2j} = a_j(-1)^j (σ·π)^{2j+2}/(2m)^{2j+1} + qħ b_j(-1)^j/(2m)^{2j} π^{2j-2}((E×π)·σ)`,
/// odd entries zero.
pub fn hfw_taylor(max_order: usize) -> SeriesTable {
    let t = shared(max_order / 2 + 2);
    let mut table = SeriesTable::zeros(SeriesLabel::HfwOrders, max_order);
    for j in 0..=max_order / 2 {
        let n = 2 * j;
        let mut h = OperatorPoly::sigma_pi_power(2 * j as u32 + 2).scale(
            &coefficient(&t.a[j], j, 2 * j + 1, false),
            UnitGrade::mass(-(2 * j as i32 + 1)),
        );
        if j >= 1 {
            h = h + term(
                coefficient(&t.b[j], j, 2 * j, false),
                UnitGrade::Q * UnitGrade::HBAR * UnitGrade::mass(-(2 * j as i32)),
                Tail::CrossSigma(Field::E),
                j as u32 - 1,
            );
        }
        table.set(n, h);
    }
    table
}

/// Expected entries of `H'_FW`, the `μ''`-linear part of `𝓗_FW`:
///
/// * entry 1: `-μ''(σ·B)`
/// * entry `2j+1` (`j ≥ 1`): `-2μ'' b_j(-1)^j/(2m)^{2j} π^{2j-2}(σ·π)(B·π)`
/// * entry `2j` (`j ≥ 1`): `μ'' b_j(-1)^j/(2m)^{2j-1} π^{2j-2}((E×π)·σ)`
/// * entry `2j+2` (`j ≥ 0`): `-μ'' a_j(-1)^j/(2m)^{2j+1} π^{2j}((E×π)·σ)`
pub fn hprime_fw_taylor(max_order: usize) -> SeriesTable {
    let t = shared(max_order / 2 + 2);
    let mut table = SeriesTable::zeros(SeriesLabel::HprimeFwOrders, max_order);
    let add = |table: &mut SeriesTable, n: usize, p: OperatorPoly| {
        if n <= table.max_order() {
            let cur = table.entry(n).clone();
            table.set(n, cur + p);
        }
    };
    let cross = Tail::CrossSigma(Field::E);
    let minus = |g: GaussianRational| -g;
    add(
        &mut table,
        1,
        term(GaussianRational::from_int(-1), UnitGrade::MU, Tail::SigmaField(Field::B), 0),
    );
    for j in 0..=max_order / 2 {
        if j >= 1 {
            let two_b = &t.b[j] * BigRational::from_integer(BigInt::from(2));
            add(
                &mut table,
                2 * j + 1,
                term(
                    minus(coefficient(&two_b, j, 2 * j, false)),
                    UnitGrade::MU * UnitGrade::mass(-(2 * j as i32)),
                    Tail::SigmaPiFieldDot(Field::B),
                    j as u32 - 1,
                ),
            );
            add(
                &mut table,
                2 * j,
                term(
                    coefficient(&t.b[j], j, 2 * j - 1, false),
                    UnitGrade::MU * UnitGrade::mass(-(2 * j as i32 - 1)),
                    cross,
                    j as u32 - 1,
                ),
            );
        }
        add(
            &mut table,
            2 * j + 2,
            term(
                minus(coefficient(&t.a[j], j, 2 * j + 1, false)),
                UnitGrade::MU * UnitGrade::mass(-(2 * j as i32 + 1)),
                cross,
                j as u32,
            ),
        );
    }
    table
}

/// Expected entries of `𝓗_FW - mc² - qφ`.
pub fn cal_hfw_taylor(max_order: usize) -> SeriesTable {
    let h = hfw_taylor(max_order);
    let hp = hprime_fw_taylor(max_order);
    let entries = (0..=max_order).map(|n| h.entry(n) + hp.entry(n)).collect();
    SeriesTable::new(SeriesLabel::CalHfwOrders, entries)
}
