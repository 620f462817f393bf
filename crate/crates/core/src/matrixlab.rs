//! Exact block diagonalization of small Dirac matrices.
//!
//! `σ·π` is realized as a Hermitian 2×2 matrix `M`, so the 4×4 Hamiltonian is an
//! ordinary matrix and the transformation `U = [[𝒴, 𝒴𝒳†], [-𝒵𝒳, 𝒵]]` with
//! `𝒴 = (1+𝒳†𝒳)^{-1/2}`, `𝒵 = (1+𝒳𝒳†)^{-1/2}` can be built and checked directly.
//! Matrix functions go through Hermitian eigendecompositions.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closedform::{cal_hfw_closed, hfw_closed};
use crate::error::FoldyError;
use crate::kutzelnigg::FwHamiltonian;
use crate::linalg::{
    block, c, eigenvalues2, eigenvalues4, frobenius2, frobenius4, from_blocks, hermitian_fn2,
    hermiticity_residual2, pauli, scalar2, sigma_dot, CMat2, CMat4,
};
use crate::physics::{FieldPoint, PhysicalParams};
use crate::tolerances;

fn check_hermitian(m: &CMat2) -> Result<(), FoldyError> {
    let r = hermiticity_residual2(m);
    if r > 1e-12 * frobenius2(m).max(1.0) {
        return Err(FoldyError::NotHermitian(r));
    }
    Ok(())
}

/// `[[mc²+qφ-μ'σ·B, M+iμ'σ·E], [M-iμ'σ·E, -mc²+qφ+μ'σ·B]]` with `M` standing for `c σ·π`.
pub fn build_dirac_pauli_matrix(params: &PhysicalParams, point: &FieldPoint, m: &CMat2) -> Result<CMat4, FoldyError> {
    params.validate()?;
    check_hermitian(m)?;
    let mc2 = params.rest_energy();
    let qphi = params.q * point.phi;
    let mu = params.mu_prime;
    let sb = sigma_dot(&point.b) * c(mu, 0.0);
    let se = sigma_dot(&point.e) * c(0.0, mu);
    let upper = scalar2(mc2 + qphi) - sb;
    let lower = scalar2(-mc2 + qphi) + sb;
    Ok(from_blocks(&upper, &(m + se), &(m - se), &lower))
}

/// `U` built from `𝒳`.
pub fn kutzelnigg_unitary(x: &CMat2) -> CMat4 {
    let xd = x.adjoint();
    let inv_sqrt = |a: CMat2| hermitian_fn2(&a, |l| 1.0 / l.sqrt());
    let y = inv_sqrt(CMat2::identity() + xd * x);
    let z = inv_sqrt(CMat2::identity() + x * xd);
    from_blocks(&y, &(y * xd), &(-(z * x)), &z)
}

/// Principal square root of a positive semidefinite 2×2 matrix,
/// `√S = (S + √det S) / √(tr S + 2√det S)`.
pub fn sqrt_psd_2x2(s: &CMat2) -> CMat2 {
    let d = s.determinant().re.max(0.0).sqrt();
    let t = (s.trace().re + 2.0 * d).sqrt();
    (s + scalar2(d)) / c(t, 0.0)
}

/// `UHU†` and the residuals describing how well it is block diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockResult {
    pub u: CMat4,
    pub x: CMat2,
    pub h: CMat4,
    pub transformed: CMat4,
    pub offdiag_norm: f64,
    pub h_norm: f64,
    pub upper_block: CMat2,
    pub lower_block: CMat2,
    pub unitarity_residual: f64,
}

impl BlockResult {
    fn new(h: CMat4, x: CMat2) -> Self {
        let u = kutzelnigg_unitary(&x);
        let transformed = u * h * u.adjoint();
        let offdiag_norm =
            (frobenius2(&block(&transformed, 0, 1)).powi(2) + frobenius2(&block(&transformed, 1, 0)).powi(2)).sqrt();
        BlockResult {
            u,
            x,
            h,
            offdiag_norm,
            h_norm: frobenius4(&h),
            upper_block: block(&transformed, 0, 0),
            lower_block: block(&transformed, 1, 1),
            unitarity_residual: frobenius4(&(u * u.adjoint() - CMat4::identity())),
            transformed,
        }
    }

    pub fn relative_offdiag(&self) -> f64 {
        self.offdiag_norm / self.h_norm
    }

    /// Largest relative deviation between the spectra of `H` and `UHU†`.
    pub fn spectrum_residual(&self) -> f64 {
        let a = eigenvalues4(&self.h);
        let b = eigenvalues4(&hermitize4(&self.transformed));
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
    }

    /// Lower two eigenvalues of `H` against the lower block, upper two against the upper block.
    pub fn block_eigen_residual(&self) -> f64 {
        let all = eigenvalues4(&self.h);
        let lo = eigenvalues2(&hermitize2(&self.lower_block));
        let hi = eigenvalues2(&hermitize2(&self.upper_block));
        let scale = all.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let d = [all[0] - lo[0], all[1] - lo[1], all[2] - hi[0], all[3] - hi[1]];
        d.iter().map(|v| v.abs()).fold(0.0, f64::max) / scale
    }

    /// Gap between the branches, `min(upper) - max(lower)`.
    pub fn branch_gap(&self) -> f64 {
        eigenvalues2(&hermitize2(&self.upper_block))[0] - eigenvalues2(&hermitize2(&self.lower_block))[1]
    }
}

fn hermitize2(a: &CMat2) -> CMat2 {
    (a + a.adjoint()) * c(0.5, 0.0)
}

fn hermitize4(a: &CMat4) -> CMat4 {
    (a + a.adjoint()) * c(0.5, 0.0)
}

fn relative(a: &CMat2, b: &CMat2) -> f64 {
    frobenius2(&(a - b)) / frobenius2(b)
}

/// `X = M (mc² + √(m²c⁴ + M²))^{-1}`; at `m = 0` this is `sign(M)`.
pub fn solve_case1(params: &PhysicalParams, m: &CMat2) -> Result<BlockResult, FoldyError> {
    params.validate()?;
    check_hermitian(m)?;
    let m = hermitize2(m);
    let mc2 = params.rest_energy();
    if mc2 == 0.0 {
        let [a, b] = eigenvalues2(&m);
        let smallest = a.abs().min(b.abs());
        if smallest <= 1e-12 * frobenius2(&m) || smallest == 0.0 {
            return Err(FoldyError::SingularMassless(smallest));
        }
    }
    let x = hermitian_fn2(&m, |l| l / (mc2 + (mc2 * mc2 + l * l).sqrt()));
    let free = PhysicalParams {
        mu_prime: 0.0,
        ..*params
    };
    let h = build_dirac_pauli_matrix(&free, &FieldPoint::default(), &m)?;
    Ok(BlockResult::new(h, x))
}

/// `√(m²c⁴ + M²)`, evaluated without eigendecomposition.
pub fn case1_upper_closed(params: &PhysicalParams, m: &CMat2) -> CMat2 {
    let mc2 = params.rest_energy();
    sqrt_psd_2x2(&(scalar2(mc2 * mc2) + m * m))
}

/// `Ω = cσ·p + iμ'σ·E`.
pub fn omega(params: &PhysicalParams, p: &Vector3<f64>, e: &Vector3<f64>) -> CMat2 {
    sigma_dot(p) * c(params.c, 0.0) + sigma_dot(e) * c(0.0, params.mu_prime)
}

/// Uncharged Dirac-Pauli particle in a homogeneous electric field.
pub fn solve_case2(params: &PhysicalParams, p: &Vector3<f64>, e: &Vector3<f64>) -> Result<BlockResult, FoldyError> {
    params.validate()?;
    if params.q != 0.0 {
        return Err(FoldyError::InvalidParams("case II needs q = 0".into()));
    }
    if params.m <= 0.0 {
        return Err(FoldyError::MasslessUndefined);
    }
    let mc2 = params.rest_energy();
    let om = omega(params, p, e);
    let gram = om * om.adjoint();
    let omega_x = hermitian_fn2(&gram, |l| -mc2 + (mc2 * mc2 + l.max(0.0)).sqrt());
    let det = om.determinant().norm();
    let scale = frobenius2(&om).powi(2);
    let inv = match om.try_inverse() {
        Some(inv) if det > 1e-12 * scale => inv,
        _ => return Err(FoldyError::SingularOmega { det, scale }),
    };
    let x = inv * omega_x;
    let sp = sigma_dot(p) * c(params.c, 0.0);
    let point = FieldPoint {
        e: *e,
        ..FieldPoint::default()
    };
    let h = build_dirac_pauli_matrix(params, &point, &sp)?;
    Ok(BlockResult::new(h, x))
}

/// `√(m²c⁴ + c²p² + 2μ'c (p×E)·σ + μ'²E²)`.
pub fn case2_upper_closed(params: &PhysicalParams, p: &Vector3<f64>, e: &Vector3<f64>) -> CMat2 {
    let (mc2, cc, mu) = (params.rest_energy(), params.c, params.mu_prime);
    let scalar = mc2 * mc2 + cc * cc * p.norm_squared() + mu * mu * e.norm_squared();
    let s = scalar2(scalar) + sigma_dot(&(p.cross(e) * (2.0 * mu * cc)));
    sqrt_psd_2x2(&s)
}

/// A `p`, `E` pair with `c|p| = μ'|E|` and `p ⊥ E`, for which `det Ω = 0`.
pub fn singular_omega_point(params: &PhysicalParams) -> (Vector3<f64>, Vector3<f64>) {
    let e = Vector3::new(0.0, 0.0, 1.0);
    let p = Vector3::new(params.mu_prime / params.c, 0.0, 0.0);
    (p, e)
}

/// `-σ_y conj(A) σ_y`: the overall sign together with `σ → -σ` and complex conjugation
/// of the coefficients.
pub fn charge_conjugate_block(a: &CMat2) -> CMat2 {
    let sy = pauli()[1];
    -(sy * a.map(|z| z.conj()) * sy)
}

/// Lower block at `(p, μ')` against the conjugate of the upper block at `(-p, -μ')`.
pub fn case2_conjugation_residual(params: &PhysicalParams, p: &Vector3<f64>, e: &Vector3<f64>) -> Result<f64, FoldyError> {
    let direct = solve_case2(params, p, e)?;
    let flipped = PhysicalParams {
        mu_prime: -params.mu_prime,
        q: -params.q,
        ..*params
    };
    let mirror = solve_case2(&flipped, &-p, e)?;
    Ok(relative(&direct.lower_block, &charge_conjugate_block(&mirror.upper_block)))
}

/// Same relation for the resummed Dirac-Pauli Hamiltonian. The lower block is the
/// `-mc²` branch, obtained from the closed form with `m c² → -m c²` in the rest term.
pub fn closed_conjugation_residual(params: &PhysicalParams, point: &FieldPoint, lower: &CMat2) -> Result<f64, FoldyError> {
    let flipped = PhysicalParams {
        mu_prime: -params.mu_prime,
        q: -params.q,
        ..*params
    };
    let upper = cal_hfw_closed(&flipped, &point.with_pi_reversed())?;
    Ok(relative(lower, &charge_conjugate_block(&upper)))
}

/// `(1+A)^{-1/2} = ∫ dη exp(-πη²(1+A))` by the trapezoid rule on `[-η_max, η_max]`.
///
/// The rule is spectrally accurate for Gaussians; `n_eta = 241`, `η_max = 6` resolve
/// every eigenvalue of `1+A` in roughly `[0.5, 30]` to double precision.
pub fn gaussian_invsqrt(a: &CMat2, n_eta: usize, eta_max: f64) -> Result<CMat2, FoldyError> {
    check_hermitian(a)?;
    if n_eta < 2 || !(eta_max > 0.0) {
        return Err(FoldyError::InvalidParams("quadrature needs n_eta >= 2 and eta_max > 0".into()));
    }
    let s = CMat2::identity() + hermitize2(a);
    if s.trace().re <= 0.0 || s.determinant().re <= 0.0 {
        return Err(FoldyError::NotPositiveDefinite);
    }
    let h = 2.0 * eta_max / (n_eta - 1) as f64;
    let mut acc = CMat2::zeros();
    for k in 0..n_eta {
        let eta = -eta_max + h * k as f64;
        let w = if k == 0 || k + 1 == n_eta { 0.5 } else { 1.0 };
        acc += (s * c(-std::f64::consts::PI * eta * eta, 0.0)).exp() * c(w * h, 0.0);
    }
    Ok(acc)
}

/// `(1+A)^{-1/2}` through the eigendecomposition.
pub fn spectral_invsqrt(a: &CMat2) -> Result<CMat2, FoldyError> {
    let s = CMat2::identity() + hermitize2(a);
    let [lo, _] = eigenvalues2(&s);
    if lo <= 0.0 {
        return Err(FoldyError::NotPositiveDefinite);
    }
    Ok(hermitian_fn2(&s, |l| 1.0 / l.sqrt()))
}

/// Direction and fields held fixed while `|π|/mc` varies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepLine {
    pub direction: Vector3<f64>,
    pub e: Vector3<f64>,
    pub b: Vector3<f64>,
    pub phi: f64,
}

impl SweepLine {
    pub fn new(direction: [f64; 3], e: [f64; 3], b: [f64; 3], phi: f64) -> Self {
        SweepLine {
            direction: Vector3::from(direction),
            e: Vector3::from(e),
            b: Vector3::from(b),
            phi,
        }
    }

    pub fn point(&self, params: &PhysicalParams, pi_over_mc: f64) -> FieldPoint {
        FieldPoint {
            pi: self.direction.normalize() * (pi_over_mc * params.m * params.c),
            e: self.e,
            b: self.b,
            phi: self.phi,
        }
    }
}

/// Relative error of the series partial sums at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub pi_over_mc: f64,
    pub v_over_c: f64,
    pub closed_minus: f64,
    pub closed_plus: f64,
    /// `(order, ‖H_series - H_closed‖_F / ‖H_closed‖_F)`.
    pub errors: Vec<(usize, f64)>,
}

/// Series partial sums of `h` against the matching closed form (`hfw_closed` when
/// `μ' = 0`, otherwise `cal_hfw_closed`) along a grid of `|π|/mc` values.
pub fn series_vs_closed_sweep(
    params: &PhysicalParams,
    h: &FwHamiltonian,
    line: &SweepLine,
    grid: &[f64],
    orders: &[usize],
) -> Result<Vec<SweepRow>, FoldyError> {
    params.validate()?;
    if !(line.direction.norm() > 0.0) {
        return Err(FoldyError::InvalidParams("sweep direction must be nonzero".into()));
    }
    if let Some(&bad) = orders.iter().find(|&&n| n > h.max_order()) {
        return Err(FoldyError::InvalidParams(format!(
            "order {bad} exceeds the series length {}",
            h.max_order()
        )));
    }
    grid.iter()
        .map(|&x| {
            let point = line.point(params, x);
            let closed = if params.mu_prime == 0.0 {
                hfw_closed(params, &point)?
            } else {
                cal_hfw_closed(params, &point)?
            };
            let [lo, hi] = eigenvalues2(&closed);
            let errors = orders
                .iter()
                .map(|&n| (n, relative(&h.evaluate(params, &point, n), &closed)))
                .collect();
            Ok(SweepRow {
                pi_over_mc: x,
                v_over_c: x / (1.0 + x * x).sqrt(),
                closed_minus: lo,
                closed_plus: hi,
                errors,
            })
        })
        .collect()
}

/// Worst residuals over a batch of seeded random trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialSummary {
    pub case: String,
    pub trials: usize,
    pub seed: u64,
    pub max_offdiag: f64,
    pub max_upper: f64,
    pub max_unitarity: f64,
    pub max_spectrum: f64,
    pub max_block_eigen: f64,
    pub max_conjugation: f64,
    pub min_branch_gap: f64,
    pub pass: bool,
}

impl TrialSummary {
    fn empty(case: &str, trials: usize, seed: u64) -> Self {
        TrialSummary {
            case: case.to_string(),
            trials,
            seed,
            max_offdiag: 0.0,
            max_upper: 0.0,
            max_unitarity: 0.0,
            max_spectrum: 0.0,
            max_block_eigen: 0.0,
            max_conjugation: 0.0,
            min_branch_gap: f64::INFINITY,
            pass: false,
        }
    }

    fn absorb(&mut self, r: &BlockResult, upper_closed: &CMat2, mc2: f64) {
        self.max_offdiag = self.max_offdiag.max(r.relative_offdiag());
        self.max_upper = self.max_upper.max(relative(&r.upper_block, upper_closed));
        self.max_unitarity = self.max_unitarity.max(r.unitarity_residual);
        self.max_spectrum = self.max_spectrum.max(r.spectrum_residual());
        self.max_block_eigen = self.max_block_eigen.max(r.block_eigen_residual());
        self.min_branch_gap = self.min_branch_gap.min(r.branch_gap() / mc2);
    }

    fn finish(mut self) -> Self {
        self.pass = self.max_offdiag <= tolerances::BLOCK
            && self.max_upper <= tolerances::BLOCK
            && self.max_unitarity <= tolerances::UNITARITY * 2.0
            && self.max_spectrum <= tolerances::BLOCK
            && self.max_block_eigen <= tolerances::BLOCK
            && self.max_conjugation <= tolerances::BLOCK
            && self.min_branch_gap > tolerances::BRANCH_GAP;
        self
    }
}

fn uniform3(rng: &mut ChaCha8Rng, scale: f64) -> Vector3<f64> {
    Vector3::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ) * scale
}

/// Case I over random Hermitian `M = a0 + v·σ` with entries up to `2mc²`.
pub fn case1_trials(params: &PhysicalParams, trials: usize, seed: u64) -> Result<TrialSummary, FoldyError> {
    if params.m <= 0.0 {
        return Err(FoldyError::MasslessUndefined);
    }
    let mc2 = params.rest_energy();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TrialSummary::empty("1", trials, seed);
    for _ in 0..trials {
        let a0 = rng.gen_range(-2.0..2.0) * mc2;
        let v = uniform3(&mut rng, 2.0 * mc2);
        let m = scalar2(a0) + sigma_dot(&v);
        let r = solve_case1(params, &m)?;
        out.absorb(&r, &case1_upper_closed(params, &m), mc2);
        // a general M is not tied to a momentum, so the C check uses M = cσ·p
        let free = solve_case1(params, &sigma_dot(&v))?;
        let mirror = solve_case1(params, &sigma_dot(&-v))?;
        let conj = relative(&free.lower_block, &charge_conjugate_block(&mirror.upper_block));
        out.max_conjugation = out.max_conjugation.max(conj);
    }
    Ok(out.finish())
}

/// Case II over random `p` with `c|p| ≤ 2mc²` and `μ'|E| ≤ mc²`, skipping draws where
/// `Ω` is nearly singular.
pub fn case2_trials(params: &PhysicalParams, trials: usize, seed: u64) -> Result<TrialSummary, FoldyError> {
    if params.m <= 0.0 {
        return Err(FoldyError::MasslessUndefined);
    }
    let mc2 = params.rest_energy();
    let e_scale = if params.mu_prime == 0.0 { 1.0 } else { mc2 / params.mu_prime.abs() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TrialSummary::empty("2", trials, seed);
    let mut done = 0;
    while done < trials {
        let p = uniform3(&mut rng, 2.0 * mc2 / params.c);
        let e = uniform3(&mut rng, e_scale);
        let om = omega(params, &p, &e);
        if om.determinant().norm() < 1e-6 * frobenius2(&om).powi(2) {
            continue;
        }
        let r = solve_case2(params, &p, &e)?;
        out.absorb(&r, &case2_upper_closed(params, &p, &e), mc2);
        out.max_conjugation = out.max_conjugation.max(case2_conjugation_residual(params, &p, &e)?);
        done += 1;
    }
    Ok(out.finish())
}

/// `(1/√2)[[1, 1], [-1, 1]]` in 2×2 blocks.
pub fn weyl_unitary() -> CMat4 {
    let s = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = CMat2::identity() * s;
    from_blocks(&i, &i, &(-i), &i)
}

/// Massless case with a positive definite `M`; returns the transformation and its
/// largest entrywise deviation from the Weyl-basis matrix.
pub fn massless_case(params: &PhysicalParams, m: &CMat2) -> Result<(BlockResult, f64), FoldyError> {
    let massless = PhysicalParams { m: 0.0, ..*params };
    let r = solve_case1(&massless, m)?;
    let dev = (r.u - weyl_unitary()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok((r, dev))
}

/// Largest `‖(√S)² - S‖ / ‖S‖` over random positive definite `S`.
pub fn sqrt_residual(trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let v = uniform3(&mut rng, 1.0);
            let s = scalar2(v.norm() + rng.gen_range(0.01..3.0)) + sigma_dot(&v);
            let r = sqrt_psd_2x2(&s);
            relative(&(r * r), &s)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysicalParams {
        PhysicalParams {
            m: 1.3,
            c: 2.1,
            q: 0.9,
            hbar: 0.7,
            mu_prime: 0.4,
        }
    }

    #[test]
    fn builder_forms() {
        let p = PhysicalParams {
            mu_prime: 0.0,
            ..params()
        };
        let m = sigma_dot(&Vector3::new(0.3, -0.2, 0.5));
        let h = build_dirac_pauli_matrix(&p, &FieldPoint::default(), &m).unwrap();
        let mc2 = p.rest_energy();
        assert_eq!(block(&h, 0, 0), scalar2(mc2));
        assert_eq!(block(&h, 1, 1), scalar2(-mc2));
        assert_eq!(block(&h, 0, 1), m);
        assert_eq!(block(&h, 1, 0), m);

        let bad = CMat2::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            build_dirac_pauli_matrix(&p, &FieldPoint::default(), &bad),
            Err(FoldyError::NotHermitian(_))
        ));

        let q0 = PhysicalParams { q: 0.0, ..params() };
        let (pv, ev) = (Vector3::new(0.1, 0.2, 0.3), Vector3::new(-0.4, 0.0, 0.2));
        let pt = FieldPoint {
            e: ev,
            ..FieldPoint::default()
        };
        let h = build_dirac_pauli_matrix(&q0, &pt, &sigma_dot(&(pv * q0.c))).unwrap();
        let om = omega(&q0, &pv, &ev);
        assert!(frobenius2(&(block(&h, 0, 1) - om)) < 1e-15);
        assert!(frobenius2(&(block(&h, 1, 0) - om.adjoint())) < 1e-15);
    }

    #[test]
    fn free_particle_upper_block() {
        let p = params();
        let pv = Vector3::new(0.7, -1.1, 0.4);
        let r = solve_case1(&p, &sigma_dot(&(pv * p.c))).unwrap();
        let mc2 = p.rest_energy();
        let want = scalar2((mc2 * mc2 + p.c * p.c * pv.norm_squared()).sqrt());
        assert!(relative(&r.upper_block, &want) < 1e-12);
        assert!(relative(&r.lower_block, &-want) < 1e-12);
    }

    #[test]
    fn massless_gives_weyl_basis() {
        let m = scalar2(1.5) + sigma_dot(&Vector3::new(0.2, 0.3, -0.4));
        let (r, dev) = massless_case(&params(), &m).unwrap();
        assert!(dev < 1e-14, "{dev}");
        assert!(frobenius2(&(r.x - CMat2::identity())) < 1e-14);
        let singular = sigma_dot(&Vector3::z()) + scalar2(1.0);
        assert!(matches!(
            massless_case(&params(), &singular),
            Err(FoldyError::SingularMassless(_))
        ));
        assert!(massless_case(&params(), &CMat2::zeros()).is_err());
    }

    #[test]
    fn case1_random() {
        let s = case1_trials(&params(), 100, 7).unwrap();
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn case2_degenerate_doublet() {
        let p = PhysicalParams { q: 0.0, ..params() };
        let e = Vector3::new(0.0, 0.0, 1.7);
        let r = solve_case2(&p, &Vector3::new(1e-3, 0.0, 0.0), &e).unwrap();
        assert!(r.relative_offdiag() < 1e-12);
        // with p -> 0, ΩΩ† -> μ'²E²
        let mc2 = p.rest_energy();
        let want = scalar2((mc2 * mc2 + (p.mu_prime * 1.7f64).powi(2)).sqrt());
        assert!(relative(&case2_upper_closed(&p, &Vector3::zeros(), &e), &want) < 1e-14);
    }

    #[test]
    fn case2_random() {
        let p = PhysicalParams { q: 0.0, ..params() };
        let s = case2_trials(&p, 100, 11).unwrap();
        assert!(s.pass, "{s:?}");
    }

    #[test]
    fn case2_preconditions() {
        let p = params();
        let v = Vector3::new(0.1, 0.0, 0.0);
        assert!(matches!(solve_case2(&p, &v, &v), Err(FoldyError::InvalidParams(_))));
        let q0 = PhysicalParams { q: 0.0, ..p };
        let (sp, se) = singular_omega_point(&q0);
        assert!(matches!(solve_case2(&q0, &sp, &se), Err(FoldyError::SingularOmega { .. })));
    }

    #[test]
    fn gaussian_matches_spectral() {
        let a = CMat2::zeros();
        let g = gaussian_invsqrt(&a, 241, 6.0).unwrap();
        assert!(frobenius2(&(g - CMat2::identity())) < 1e-12);
        let g = gaussian_invsqrt(&scalar2(3.0), 241, 6.0).unwrap();
        assert!(frobenius2(&(g - scalar2(0.5))) < 1e-12);
        let a = scalar2(1.5) + sigma_dot(&Vector3::new(0.0, 1.5, 0.0));
        let g = gaussian_invsqrt(&a, 241, 6.0).unwrap();
        assert!(frobenius2(&(g - spectral_invsqrt(&a).unwrap())) < 1e-8);
        assert!(matches!(
            gaussian_invsqrt(&scalar2(-2.0), 241, 6.0),
            Err(FoldyError::NotPositiveDefinite)
        ));
    }

    #[test]
    fn square_roots_square_back() {
        assert!(sqrt_residual(200, 3) < 1e-12);
    }
}
