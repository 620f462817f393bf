//! Closed-form classical and quantum Hamiltonians at a single phase-space point.
//!
//! Quantum results are returned as 2×2 Hermitian matrices `a0·I + v·σ` in the basis
//! with `σ_z` diagonal.

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::FoldyError;
use crate::linalg::{eigenvalues2, pauli_components, scalar2, sigma_dot, CMat2};
pub use crate::physics::{FieldPoint, PhysicalParams, SpinVector};

/// `γ_π = √(1 + (π/mc)²)`.
pub fn gamma_pi(params: &PhysicalParams, pi: &Vector3<f64>) -> Result<f64, FoldyError> {
    if params.m <= 0.0 {
        return Err(FoldyError::MasslessUndefined);
    }
    let x = pi.norm() / (params.m * params.c);
    Ok((1.0 + x * x).sqrt())
}

/// `√(m²c⁴ + c²π²)`.
pub fn kinetic_energy(params: &PhysicalParams, pi: &Vector3<f64>) -> f64 {
    let mc2 = params.rest_energy();
    (mc2 * mc2 + params.c * params.c * pi.norm_squared()).sqrt()
}

/// Orbital part `√(m²c⁴ + c²π²) + qφ`.
pub fn orbital_h(params: &PhysicalParams, point: &FieldPoint) -> f64 {
    kinetic_energy(params, &point.pi) + params.q * point.phi
}

/// The bracket `K` of the spin Hamiltonian `H_spin = -s·K`, for moment ratio `g1`
/// (coefficient of the anomalous part) and `g0` (coefficient of the normal part).
fn spin_bracket(params: &PhysicalParams, point: &FieldPoint, g1: f64, g0: f64) -> Result<Vector3<f64>, FoldyError> {
    let gamma = gamma_pi(params, &point.pi)?;
    let u = point.pi / (params.m * params.c);
    let b = point.b;
    let e = point.e;
    let k = b * (g1 + g0 / gamma) - u * (g1 / (gamma * (1.0 + gamma)) * u.dot(&b))
        - u.cross(&e) * (g1 / gamma + g0 / (gamma * (1.0 + gamma)));
    Ok(k)
}

/// Classical orbital plus T-BMT spin Hamiltonian.
pub fn classical_h(params: &PhysicalParams, point: &FieldPoint, spin: &SpinVector) -> Result<f64, FoldyError> {
    let len = spin.s.norm();
    let want = 0.5 * params.hbar;
    if (len - want).abs() > 1e-9 * want {
        return Err(FoldyError::SpinLength(len));
    }
    let k = spin_bracket(
        params,
        point,
        params.gamma_m_prime(),
        params.q / (params.m * params.c),
    )?;
    Ok(orbital_h(params, point) - spin.s.dot(&k))
}

/// Resummed FW Hamiltonian of the Dirac equation.
pub fn hfw_closed(params: &PhysicalParams, point: &FieldPoint) -> Result<CMat2, FoldyError> {
    let dirac = PhysicalParams {
        mu_prime: 0.0,
        ..*params
    };
    cal_hfw_closed(&dirac, point)
}

/// Resummed FW Hamiltonian of the Dirac-Pauli equation.
pub fn cal_hfw_closed(params: &PhysicalParams, point: &FieldPoint) -> Result<CMat2, FoldyError> {
    // -σ·[...] with s = (ħ/2)σ: the bracket is (2/ħ) times the classical one
    let k = spin_bracket(
        params,
        point,
        params.mu_prime,
        params.q * params.hbar / (2.0 * params.m * params.c),
    )?;
    Ok(scalar2(orbital_h(params, point)) - sigma_dot(&k))
}

/// The two eigenvalues of `cal_hfw_closed` paired with the classical Hamiltonian at
/// `s = ±(ħ/2)n̂`, where `n̂` is the direction of the matrix's spin part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalComparison {
    pub eigenvalue_plus: f64,
    pub eigenvalue_minus: f64,
    pub classical_plus: f64,
    pub classical_minus: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

pub fn classical_comparison(params: &PhysicalParams, point: &FieldPoint) -> Result<ClassicalComparison, FoldyError> {
    let h = cal_hfw_closed(params, point)?;
    let [lo, hi] = eigenvalues2(&h);
    let (_, v) = pauli_components(&h);
    let dir = if v.norm() > 0.0 { v / v.norm() } else { Vector3::z() };
    let plus = classical_h(params, point, &SpinVector::along(params.hbar, dir))?;
    let minus = classical_h(params, point, &SpinVector::along(params.hbar, -dir))?;
    let abs_diff = (hi - plus).abs().max((lo - minus).abs());
    let scale = hi.abs().max(lo.abs());
    Ok(ClassicalComparison {
        eigenvalue_plus: hi,
        eigenvalue_minus: lo,
        classical_plus: plus,
        classical_minus: minus,
        abs_diff,
        rel_diff: abs_diff / scale,
    })
}

/// Darwin-type term of the conjectured inhomogeneous-field Hamiltonian. Reported only;
/// nothing in the crate checks it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub label: &'static str,
    pub darwin_term: f64,
}

/// `(ħ²/4mc)(q/2mc - γ'_m)(∇·E)/γ_π`.
pub fn conjectured_inhomogeneous_form(
    params: &PhysicalParams,
    point: &FieldPoint,
    div_e: f64,
) -> Result<ConjectureReport, FoldyError> {
    let gamma = gamma_pi(params, &point.pi)?;
    let (m, c, hbar) = (params.m, params.c, params.hbar);
    let coeff = params.q / (2.0 * m * c) - params.gamma_m_prime();
    Ok(ConjectureReport {
        label: "conjecture, not verified",
        darwin_term: hbar * hbar / (4.0 * m * c) * coeff * div_e / gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius2, hermiticity_residual2};
    use nalgebra::Rotation3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params() -> PhysicalParams {
        PhysicalParams {
            m: 1.3,
            c: 2.1,
            q: 0.9,
            hbar: 0.7,
            mu_prime: 0.15,
        }
    }

    fn random_vec(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
        Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale
    }

    #[test]
    fn gamma_examples() {
        let p = params();
        let mc = p.m * p.c;
        assert_eq!(gamma_pi(&p, &Vector3::zeros()).unwrap(), 1.0);
        assert!((gamma_pi(&p, &Vector3::new(mc, 0.0, 0.0)).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let g = gamma_pi(&p, &Vector3::new(0.0, mc / 2f64.sqrt(), 0.0)).unwrap();
        assert!((g - 1.5f64.sqrt()).abs() < 1e-15);
        let massless = PhysicalParams { m: 0.0, ..p };
        assert_eq!(gamma_pi(&massless, &Vector3::zeros()), Err(FoldyError::MasslessUndefined));
    }

    #[test]
    fn free_particle() {
        let p = params();
        let pt = FieldPoint::new([0.4, -1.0, 0.3], [0.0; 3], [0.0; 3], 0.0);
        let h = hfw_closed(&p, &pt).unwrap();
        let e = kinetic_energy(&p, &pt.pi);
        assert!(frobenius2(&(h - scalar2(e))) < 1e-13);
        let s = SpinVector::along(p.hbar, Vector3::x());
        assert!((classical_h(&p, &pt, &s).unwrap() - e).abs() < 1e-13);
    }

    #[test]
    fn rest_frame_zeeman() {
        let p = PhysicalParams { mu_prime: 0.0, ..params() };
        let bz = 0.01;
        let pt = FieldPoint::new([0.0; 3], [0.0; 3], [0.0, 0.0, bz], 0.0);
        let h = hfw_closed(&p, &pt).unwrap();
        let split = p.q * p.hbar * bz / (2.0 * p.m * p.c);
        assert!((h[(0, 0)].re - (p.rest_energy() - split)).abs() < 1e-13);
        assert!((h[(1, 1)].re - (p.rest_energy() + split)).abs() < 1e-13);
    }

    #[test]
    fn rest_frame_classical_moment() {
        let p = params();
        let pt = FieldPoint::new([0.0; 3], [0.0; 3], [0.0, 0.02, 0.0], 0.3);
        let s = SpinVector::along(p.hbar, Vector3::y());
        let want = p.rest_energy() + p.q * 0.3 - s.s.dot(&(pt.b * p.gamma_m()));
        assert!((classical_h(&p, &pt, &s).unwrap() - want).abs() < 1e-13);
    }

    #[test]
    fn spin_length_enforced() {
        let p = params();
        let pt = FieldPoint::default();
        let s = SpinVector { s: Vector3::new(1.0, 0.0, 0.0) };
        assert!(matches!(classical_h(&p, &pt, &s), Err(FoldyError::SpinLength(_))));
    }

    #[test]
    fn dirac_limit_and_hermiticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = PhysicalParams { mu_prime: 0.0, ..params() };
            let pt = FieldPoint {
                pi: random_vec(&mut rng, 3.0),
                e: random_vec(&mut rng, 0.01),
                b: random_vec(&mut rng, 0.01),
                phi: rng.gen_range(-1.0..1.0),
            };
            let a = hfw_closed(&p, &pt).unwrap();
            let b = cal_hfw_closed(&p, &pt).unwrap();
            assert!(frobenius2(&(a - b)) <= 1e-15 * frobenius2(&a));
            assert!(hermiticity_residual2(&a) == 0.0);
        }
    }

    #[test]
    fn collinear_magnetic_field() {
        // B ∥ π, E = 0: spin part is -σ·B (μ' + qħ/(2mcγ) - μ' x²/(γ(1+γ))) = -σ·B (qħ/(2mc) + μ')/γ
        let p = params();
        let pt = FieldPoint::new([0.0, 0.0, 2.0], [0.0; 3], [0.0, 0.0, 0.03], 0.0);
        let g = gamma_pi(&p, &pt.pi).unwrap();
        let h = cal_hfw_closed(&p, &pt).unwrap();
        let (_, v) = pauli_components(&h);
        let want = -0.03 * (p.q * p.hbar / (2.0 * p.m * p.c) + p.mu_prime) / g;
        assert!((v.z - want).abs() < 1e-15);
    }

    #[test]
    fn rotational_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = params();
        for _ in 0..50 {
            let pt = FieldPoint {
                pi: random_vec(&mut rng, 3.0),
                e: random_vec(&mut rng, 0.01),
                b: random_vec(&mut rng, 0.01),
                phi: 0.2,
            };
            let axis = nalgebra::Unit::new_normalize(random_vec(&mut rng, 1.0));
            let r = Rotation3::from_axis_angle(&axis, rng.gen_range(0.0..std::f64::consts::TAU));
            let rotated = FieldPoint {
                pi: r * pt.pi,
                e: r * pt.e,
                b: r * pt.b,
                phi: pt.phi,
            };
            let a = eigenvalues2(&cal_hfw_closed(&p, &pt).unwrap());
            let b = eigenvalues2(&cal_hfw_closed(&p, &rotated).unwrap());
            for i in 0..2 {
                assert!((a[i] - b[i]).abs() <= 1e-12 * a[i].abs());
            }
        }
    }

    #[test]
    fn classical_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = params();
        for _ in 0..200 {
            let pt = FieldPoint {
                pi: random_vec(&mut rng, 4.0),
                e: random_vec(&mut rng, 0.02),
                b: random_vec(&mut rng, 0.02),
                phi: rng.gen_range(-1.0..1.0),
            };
            let cmp = classical_comparison(&p, &pt).unwrap();
            assert!(cmp.rel_diff <= 1e-9, "{cmp:?}");
        }
    }

    #[test]
    fn conjecture_is_report_only() {
        let p = params();
        let pt = FieldPoint::default();
        assert_eq!(conjectured_inhomogeneous_form(&p, &pt, 0.0).unwrap().darwin_term, 0.0);
        let tuned = PhysicalParams {
            mu_prime: p.q * p.hbar / (4.0 * p.m * p.c),
            ..p
        };
        let r = conjectured_inhomogeneous_form(&tuned, &pt, 3.0).unwrap();
        assert!(r.darwin_term.abs() < 1e-15);
        assert_eq!(r.label, "conjecture, not verified");
    }
}
