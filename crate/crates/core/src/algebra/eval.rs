//! Numeric evaluation of normal-form operators in the symbol model: `π`, `E`, `B`
//! become commuting real vectors and `σ` the Pauli matrices. The single noncommuting
//! correction of the field-linear sector is already explicit in the normal form.

use nalgebra::Vector3;

use super::poly::OperatorPoly;
use super::tail::{Field, Monomial, Tail};
use crate::linalg::{c, scalar2, sigma_dot, CMat2};
use crate::physics::{FieldPoint, PhysicalParams};

fn field(point: &FieldPoint, f: Field) -> Vector3<f64> {
    match f {
        Field::E => point.e,
        Field::B => point.b,
    }
}

/// Matrix of a single basis monomial.
pub fn monomial_matrix(mono: &Monomial, point: &FieldPoint) -> CMat2 {
    let pi = point.pi;
    let p2k = pi.norm_squared().powi(mono.k as i32);
    let m = match mono.tail {
        Tail::One => scalar2(1.0),
        Tail::SigmaPi => sigma_dot(&pi),
        Tail::FieldDot(f) => scalar2(field(point, f).dot(&pi)),
        Tail::SigmaField(f) => sigma_dot(&field(point, f)),
        Tail::SigmaPiFieldDot(f) => sigma_dot(&pi) * c(field(point, f).dot(&pi), 0.0),
        Tail::CrossSigma(f) => sigma_dot(&field(point, f).cross(&pi)),
    };
    m * c(p2k, 0.0)
}

impl OperatorPoly {
    /// Evaluates the operator as a 2×2 matrix at `point`.
    pub fn evaluate(&self, params: &PhysicalParams, point: &FieldPoint) -> CMat2 {
        let mut acc = CMat2::zeros();
        for (g, m, coeff) in self.iter() {
            let scale = g.value(params.m, params.c, params.hbar, params.q, params.mu_prime);
            acc += monomial_matrix(m, point) * (coeff.to_complex() * scale);
        }
        acc
    }
}
