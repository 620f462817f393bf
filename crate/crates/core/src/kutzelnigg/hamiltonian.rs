//! Assembly of the transformed Hamiltonians as series in `1/c`.
//!
//! With `Y = 𝒳†𝒳`, the upper block is `mc² + √(1+Y) A (1+Y)^{-1/2}` where
//! `A = qφ + c(σ·π)𝒳 - μ'(σ·B) + iμ'(σ·E)𝒳`. The potential only enters through
//! `√(1+Y) qφ (1+Y)^{-1/2} = qφ - q[φ, √(1+Y)](1+Y)^{-1/2}`, so `qφ` is carried as an
//! additive marker and never appears inside a polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::series::{
    binomial_coefficients, series_add, series_mul, series_power_sum, SeriesLabel, SeriesTable,
};
use super::recursion::{dirac_series, pauli_series};
use crate::algebra::{Field, GaussianRational, OperatorPoly, UnitGrade};
use crate::coeffs::shared;
use crate::error::FoldyError;
use crate::linalg::{scalar2, CMat2};
use crate::physics::{FieldPoint, PhysicalParams};

/// `rest_sign·mc² + qφ + Σ_n orders[n] c^{-n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FwHamiltonian {
    pub rest_sign: i8,
    pub orders: SeriesTable,
}

/// Marker for the `qφ` term shared by both blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Markers {
    pub rest_sign: i8,
    pub qphi_sign: i8,
}

impl FwHamiltonian {
    pub fn markers(&self) -> Markers {
        Markers {
            rest_sign: self.rest_sign,
            qphi_sign: 1,
        }
    }

    pub fn max_order(&self) -> usize {
        self.orders.max_order()
    }

    pub fn hermitian_part(&self) -> SeriesTable {
        self.orders.map(self.orders.label, |p| p.hermitian_part())
    }

    pub fn antihermitian_part(&self) -> SeriesTable {
        self.orders.map(self.orders.label, |p| p.antihermitian_part())
    }

    /// Orders whose antihermitian part is nonzero.
    pub fn antihermitian_orders(&self) -> Vec<usize> {
        self.orders
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.antihermitian_part().is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// Charge conjugate with the overall sign: `-𝓗(-π, -σ; -q, -μ')`.
    /// The constant `mc²` flips sign and `qφ` is unchanged.
    pub fn charge_conjugate(&self) -> FwHamiltonian {
        FwHamiltonian {
            rest_sign: -self.rest_sign,
            orders: self
                .orders
                .map(SeriesLabel::LowerOrders, |p| -p.charge_conjugate()),
        }
    }

    /// Partial sum up to `max_order` as a 2×2 matrix.
    pub fn evaluate(&self, params: &PhysicalParams, point: &FieldPoint, max_order: usize) -> CMat2 {
        let constant = f64::from(self.rest_sign) * params.rest_energy() + params.q * point.phi;
        scalar2(constant) + self.orders.evaluate(params, point, max_order)
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn q_commutator(series: &[OperatorPoly]) -> Vec<OperatorPoly> {
    series
        .iter()
        .map(|p| p.commutator_phi().scale(&GaussianRational::one(), UnitGrade::Q))
        .collect()
}

fn daggered(series: &[OperatorPoly]) -> Vec<OperatorPoly> {
    series.iter().map(|p| p.dagger()).collect()
}

/// `Y = Z†Z` entries `0..=max_order`.
fn gram(z: &[OperatorPoly], max_order: usize) -> Vec<OperatorPoly> {
    series_mul(&daggered(z), z, max_order + 1)
}

/// `√(1+Y) A (1+Y)^{-1/2} - q[φ, √(1+Y)](1+Y)^{-1/2}` entries `0..=max_order`.
fn conjugate(y: &[OperatorPoly], a: &[OperatorPoly], max_order: usize) -> Vec<OperatorPoly> {
    let len = max_order + 1;
    let e = shared(len);
    let sqrt = series_power_sum(y, &e.e[..len], len);
    let minus_half = -half();
    let inv_sqrt = series_power_sum(y, &binomial_coefficients(&minus_half, len), len);
    let main = series_mul(&series_mul(&sqrt, a, len), &inv_sqrt, len);
    let phi_part = series_mul(&q_commutator(&sqrt), &inv_sqrt, len);
    (0..len).map(|n| &main[n] - &phi_part[n]).collect()
}

/// `X†X` entries `0..=max_order`.
pub fn xdag_x(x: &SeriesTable, max_order: usize) -> SeriesTable {
    SeriesTable::new(SeriesLabel::XdagXOrders, gram(x.entries(), max_order))
}

fn checked_dirac(max_order: usize, min: usize) -> Result<SeriesTable, FoldyError> {
    if max_order < min {
        return Err(FoldyError::OrderTooLow { got: max_order, min });
    }
    dirac_series(max_order + 1)
}

/// `(σ·π) X_{n+1}`: the entries of `c(σ·π)X`.
fn sigma_pi_times_shifted(x: &[OperatorPoly], max_order: usize) -> Vec<OperatorPoly> {
    let s = OperatorPoly::sigma_pi();
    (0..=max_order).map(|n| s.mul(&x[n + 1])).collect()
}

/// `H_FW` through the commutator route:
/// `mc² + qφ + c(σ·π)X - ½ q[φ, X†X](1+X†X)^{-1}`.
pub fn assemble_hfw(max_order: usize) -> Result<FwHamiltonian, FoldyError> {
    let x = checked_dirac(max_order, 2)?;
    Ok(hfw_from(&x, max_order))
}

fn hfw_from(x: &SeriesTable, max_order: usize) -> FwHamiltonian {
    let len = max_order + 1;
    let y = gram(x.entries(), max_order);
    let inverse = series_power_sum(&y, &binomial_coefficients(&BigRational::from_integer((-1).into()), len), len);
    let correction = series_mul(&q_commutator(&y), &inverse, len);
    let kinetic = sigma_pi_times_shifted(x.entries(), max_order);
    let h = half();
    let entries = (0..len)
        .map(|n| &kinetic[n] - &correction[n].scale_rational(&h))
        .collect();
    FwHamiltonian {
        rest_sign: 1,
        orders: SeriesTable::new(SeriesLabel::HfwOrders, entries),
    }
}

/// `H_FW` by direct conjugation `mc² + √(1+X†X)(qφ + c(σ·π)X)(1+X†X)^{-1/2}`.
pub fn conjugate_hfw(max_order: usize) -> Result<FwHamiltonian, FoldyError> {
    let x = checked_dirac(max_order, 2)?;
    let y = gram(x.entries(), max_order);
    let a = sigma_pi_times_shifted(x.entries(), max_order);
    Ok(FwHamiltonian {
        rest_sign: 1,
        orders: SeriesTable::new(SeriesLabel::HfwOrders, conjugate(&y, &a, max_order)),
    })
}

/// `[c(σ·π)X, X†X]` entries, which vanish at field-linear order.
pub fn lemma_commutator(max_order: usize) -> Result<SeriesTable, FoldyError> {
    let x = checked_dirac(max_order, 2)?;
    let y = gram(x.entries(), max_order);
    let a = sigma_pi_times_shifted(x.entries(), max_order);
    let len = max_order + 1;
    let ay = series_mul(&a, &y, len);
    let ya = series_mul(&y, &a, len);
    let entries = (0..len).map(|n| &ay[n] - &ya[n]).collect();
    Ok(SeriesTable::new(SeriesLabel::HfwOrders, entries))
}

struct PauliSeries {
    x: SeriesTable,
    cal_x: Vec<OperatorPoly>,
}

fn pauli_inputs(max_order: usize) -> Result<PauliSeries, FoldyError> {
    if max_order < 3 {
        return Err(FoldyError::OrderTooLow { got: max_order, min: 3 });
    }
    let x = dirac_series(max_order + 1)?;
    let xp = pauli_series(&x, max_order + 1)?;
    let cal_x = series_add(x.entries(), xp.entries(), max_order + 2);
    Ok(PauliSeries { x, cal_x })
}

/// Entries of `c(σ·π)Z - μ'(σ·B)·sign_b + iμ'(σ·E)Z` for the series `Z`.
fn pauli_operator(z: &[OperatorPoly], sign_kinetic: i64, sign_b: i64, max_order: usize) -> Vec<OperatorPoly> {
    let s = OperatorPoly::sigma_pi().scale_int(sign_kinetic);
    let ise = OperatorPoly::sigma_field(Field::E).scale(&GaussianRational::i(), UnitGrade::MU);
    let mut out: Vec<OperatorPoly> = (0..=max_order).map(|n| s.mul(&z[n + 1])).collect();
    if max_order >= 1 {
        let sb = OperatorPoly::sigma_field(Field::B).scale(&GaussianRational::from_int(-sign_b), UnitGrade::MU);
        out[1] = &out[1] + &sb;
    }
    for n in 2..=max_order {
        out[n] = &out[n] + &ise.mul(&z[n - 1]);
    }
    out
}

/// `𝓗_FW = H_FW + H'_FW` with `H'_FW = c(σ·π)X' - μ'(σ·B) + iμ'(σ·E)X`, where `H_FW`
/// is taken from the commutator route.
pub fn assemble_cal_hfw(max_order: usize) -> Result<FwHamiltonian, FoldyError> {
    let inputs = pauli_inputs(max_order)?;
    let h = hfw_from(&inputs.x, max_order);
    let xp: Vec<OperatorPoly> = (0..inputs.cal_x.len())
        .map(|n| &inputs.cal_x[n] - inputs.x.entries().get(n).unwrap_or(&OperatorPoly::zero()))
        .collect();
    let s = OperatorPoly::sigma_pi();
    let ise = OperatorPoly::sigma_field(Field::E).scale(&GaussianRational::i(), UnitGrade::MU);
    let mut hp: Vec<OperatorPoly> = (0..=max_order).map(|n| s.mul(&xp[n + 1])).collect();
    hp[1] = &hp[1] - &OperatorPoly::sigma_field(Field::B).scale(&GaussianRational::one(), UnitGrade::MU);
    for n in 2..=max_order {
        hp[n] = &hp[n] + &ise.mul(inputs.x.entry(n - 1));
    }
    let entries = (0..=max_order).map(|n| h.orders.entry(n) + &hp[n]).collect();
    Ok(FwHamiltonian {
        rest_sign: 1,
        orders: SeriesTable::new(SeriesLabel::CalHfwOrders, entries),
    })
}

/// `𝓗_FW` by direct conjugation with `𝒳 = X + X'`.
pub fn conjugate_cal_hfw(max_order: usize) -> Result<FwHamiltonian, FoldyError> {
    let inputs = pauli_inputs(max_order)?;
    let y = gram(&inputs.cal_x, max_order);
    let a = pauli_operator(&inputs.cal_x, 1, 1, max_order);
    Ok(FwHamiltonian {
        rest_sign: 1,
        orders: SeriesTable::new(SeriesLabel::CalHfwOrders, conjugate(&y, &a, max_order)),
    })
}

/// Lower block from charge conjugation of `𝓗_FW`.
pub fn lower_block(cal_hfw: &FwHamiltonian) -> FwHamiltonian {
    cal_hfw.charge_conjugate()
}

/// Lower block assembled directly:
/// `-mc² + √(1+𝒳𝒳†)(qφ + μ'(σ·B) - (c(σ·π) - iμ'(σ·E))𝒳†)(1+𝒳𝒳†)^{-1/2}`.
pub fn lower_block_direct(max_order: usize) -> Result<FwHamiltonian, FoldyError> {
    let inputs = pauli_inputs(max_order)?;
    let xd = daggered(&inputs.cal_x);
    let w = gram(&xd, max_order);
    let a = pauli_operator(&xd, -1, -1, max_order);
    Ok(FwHamiltonian {
        rest_sign: -1,
        orders: SeriesTable::new(SeriesLabel::LowerOrders, conjugate(&w, &a, max_order)),
    })
}
