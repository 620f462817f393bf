//! Small complex matrices and Pauli-matrix helpers.

use nalgebra::{Matrix2, Matrix4, Vector3};
use num_complex::Complex64;

pub type CMat2 = Matrix2<Complex64>;
pub type CMat4 = Matrix4<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `σ_x, σ_y, σ_z` in the basis with `σ_z` diagonal.
pub fn pauli() -> [CMat2; 3] {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [
        CMat2::new(z, one, one, z),
        CMat2::new(z, -i, i, z),
        CMat2::new(one, z, z, -one),
    ]
}

pub fn identity2() -> CMat2 {
    CMat2::identity()
}

/// `σ·v` for a real vector.
pub fn sigma_dot(v: &Vector3<f64>) -> CMat2 {
    let s = pauli();
    s[0] * c(v.x, 0.0) + s[1] * c(v.y, 0.0) + s[2] * c(v.z, 0.0)
}

/// `σ·(re + i·im)` for a complex vector given by its parts.
pub fn sigma_dot_complex(re: &Vector3<f64>, im: &Vector3<f64>) -> CMat2 {
    sigma_dot(re) + sigma_dot(im) * c(0.0, 1.0)
}

/// `a0·I + v·σ`.
pub fn hermitian_from_parts(a0: f64, v: [f64; 3]) -> CMat2 {
    scalar2(a0) + sigma_dot(&Vector3::from(v))
}

pub fn scalar2(x: f64) -> CMat2 {
    CMat2::identity() * c(x, 0.0)
}

/// Decomposes `A = a0 + v·σ + i(b0 + w·σ)` and returns `(a0, v)` of the Hermitian part.
pub fn pauli_components(a: &CMat2) -> (f64, Vector3<f64>) {
    let h = (a + a.adjoint()) * c(0.5, 0.0);
    let s = pauli();
    let a0 = (h.trace() * 0.5).re;
    let v = Vector3::new(
        ((h * s[0]).trace() * 0.5).re,
        ((h * s[1]).trace() * 0.5).re,
        ((h * s[2]).trace() * 0.5).re,
    );
    (a0, v)
}

pub fn frobenius2(a: &CMat2) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn frobenius4(a: &CMat4) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermiticity_residual2(a: &CMat2) -> f64 {
    frobenius2(&(a - a.adjoint()))
}

pub fn block(a: &CMat4, row: usize, col: usize) -> CMat2 {
    a.fixed_view::<2, 2>(2 * row, 2 * col).into_owned()
}

pub fn from_blocks(a: &CMat2, b: &CMat2, cc: &CMat2, d: &CMat2) -> CMat4 {
    let mut m = CMat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(cc);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

/// Eigenvalues of a Hermitian 2×2 matrix, ascending.
pub fn eigenvalues2(a: &CMat2) -> [f64; 2] {
    let e = nalgebra::SymmetricEigen::new(*a).eigenvalues;
    let (x, y) = (e[0], e[1]);
    if x <= y {
        [x, y]
    } else {
        [y, x]
    }
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending.
pub fn eigenvalues4(a: &CMat4) -> [f64; 4] {
    let e = nalgebra::SymmetricEigen::new(*a).eigenvalues;
    let mut v = [e[0], e[1], e[2], e[3]];
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

/// `f(A)` for Hermitian `A` through its eigendecomposition.
pub fn hermitian_fn2(a: &CMat2, f: impl Fn(f64) -> f64) -> CMat2 {
    let eig = nalgebra::SymmetricEigen::new(*a);
    let mut d = CMat2::zeros();
    for i in 0..2 {
        d[(i, i)] = c(f(eig.eigenvalues[i]), 0.0);
    }
    eig.eigenvectors * d * eig.eigenvectors.adjoint()
}
