//! Exact coefficient sequences of the FW series and their generating functions.
//!
//! * `a_j` are the Catalan numbers `(2j)!/(j!(j+1)!)`.
//! * `b_j = (2j-1)!/(j!(j-1)!)` with `b_0 = 0`.
//! * `c_j = 2 Σ_{j1+j2=j} b_{j1} b_{j2}`.
//! * `d_j = Σ_{j1+j2+j3=j-2} 2(j1+1) a_{j1} a_{j2} a_{j3}`.
//! * `e_n = binom(1/2, n)`.
//!
//! `c_j` and `d_j` are always computed by their convolutions; no closed-form
//! shortcut is used anywhere in the verification paths.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which coefficient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffKind {
    A,
    B,
    C,
    D,
    /// Binomial coefficients of `(1+x)^{1/2}`.
    EBinom,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 5] = [
        CoeffKind::A,
        CoeffKind::B,
        CoeffKind::C,
        CoeffKind::D,
        CoeffKind::EBinom,
    ];
}

/// One sequence, materialized for `j = 0..len`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub values: Vec<BigRational>,
}

/// All five sequences up to a common bound, built bottom-up.
///
/// Immutable once built. Fields are public so a verification run can be fed
/// a deliberately corrupted table.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients {
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
    pub d: Vec<BigRational>,
    pub e: Vec<BigRational>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Coefficients {
    /// Builds every sequence for `0 <= j <= j_max`.
    pub fn build(j_max: usize) -> Self {
        let len = j_max + 1;
        let mut fact = Vec::with_capacity(2 * len + 1);
        fact.push(BigInt::one());
        for i in 1..=2 * len {
            let next = &fact[i - 1] * BigInt::from(i);
            fact.push(next);
        }
        let a: Vec<BigRational> = (0..len)
            .map(|j| BigRational::new(fact[2 * j].clone(), &fact[j] * &fact[j + 1]))
            .collect();
        let b: Vec<BigRational> = (0..len)
            .map(|j| {
                if j == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(fact[2 * j - 1].clone(), &fact[j] * &fact[j - 1])
                }
            })
            .collect();
        let c: Vec<BigRational> = (0..len).map(|j| conv2(&b, &b, j) * int(2)).collect();
        // aa[n] = Σ_{j2+j3=n} a_{j2} a_{j3}, then d_j = Σ_{j1} 2(j1+1) a_{j1} aa[j-2-j1].
        let aa: Vec<BigRational> = (0..len).map(|n| conv2(&a, &a, n)).collect();
        let wa: Vec<BigRational> = a
            .iter()
            .enumerate()
            .map(|(j1, x)| int(2 * (j1 as i64 + 1)) * x)
            .collect();
        let d: Vec<BigRational> = (0..len)
            .map(|j| if j >= 2 { conv2(&wa, &aa, j - 2) } else { BigRational::zero() })
            .collect();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut e = Vec::with_capacity(len);
        e.push(BigRational::one());
        for n in 1..len {
            let i = int(n as i64 - 1);
            let next = &e[n - 1] * (&half - i) / int(n as i64);
            e.push(next);
        }
        Coefficients { a, b, c, d, e }
    }

    /// Largest index held by every sequence.
    pub fn j_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn values(&self, kind: CoeffKind) -> &[BigRational] {
        match kind {
            CoeffKind::A => &self.a,
            CoeffKind::B => &self.b,
            CoeffKind::C => &self.c,
            CoeffKind::D => &self.d,
            CoeffKind::EBinom => &self.e,
        }
    }

    pub fn values_mut(&mut self, kind: CoeffKind) -> &mut Vec<BigRational> {
        match kind {
            CoeffKind::A => &mut self.a,
            CoeffKind::B => &mut self.b,
            CoeffKind::C => &mut self.c,
            CoeffKind::D => &mut self.d,
            CoeffKind::EBinom => &mut self.e,
        }
    }

    /// Panics if `j` exceeds the built range.
    pub fn get(&self, kind: CoeffKind, j: usize) -> &BigRational {
        &self.values(kind)[j]
    }

    pub fn table(&self, kind: CoeffKind) -> CoeffTable {
        CoeffTable {
            kind,
            values: self.values(kind).to_vec(),
        }
    }
}

static CACHE: RwLock<Option<Arc<Coefficients>>> = RwLock::new(None);

/// Shared table covering at least `0..=j_max`. Grows by doubling.
pub fn shared(j_max: usize) -> Arc<Coefficients> {
    if let Some(t) = CACHE.read().unwrap().as_ref() {
        if t.j_max() >= j_max {
            return Arc::clone(t);
        }
    }
    let mut guard = CACHE.write().unwrap();
    if let Some(t) = guard.as_ref() {
        if t.j_max() >= j_max {
            return Arc::clone(t);
        }
    }
    let target = j_max.max(64).max(guard.as_ref().map_or(0, |t| 2 * t.j_max()));
    let built = Arc::new(Coefficients::build(target));
    *guard = Some(Arc::clone(&built));
    built
}

/// Exact value of the `kind` sequence at `j`.
pub fn coeff(kind: CoeffKind, j: usize) -> BigRational {
    shared(j).get(kind, j).clone()
}

/// The six combinatorial identities relating the sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Identity {
    /// `Σ_{j1+j2=j-1} a_{j1} a_{j2} = a_j`, `j >= 1`.
    A,
    /// `2 Σ_{j1+j2=j-1} a_{j1} b_{j2} = b_j - a_{j-1} = 2(j-1) a_{j-1}`, `j >= 1`.
    B,
    /// `2 Σ_{j1+j2=j-1} a_{j1} c_{j2} = 4 Σ_{j1+j2+j3=j-1} a_{j1} b_{j2} b_{j3}
    /// = c_j - 2(j-1) a_{j-1}`, `j >= 1`.
    C,
    /// `b_{j+1} + c_{j+1} = 4 b_j + 4 c_j + a_j`, `j >= 0`.
    D,
    /// `2 Σ_{j1+j2=j-1} a_{j1} d_{j2} + 2 a_{j-1} = d_j`, `j >= 2`.
    E,
    /// `b_{j+1} - a_j = d_{j+1}`, `j >= 0`.
    F,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::A,
        Identity::B,
        Identity::C,
        Identity::D,
        Identity::E,
        Identity::F,
    ];

    /// Smallest `j` for which the identity is stated.
    pub fn j_min(self) -> usize {
        match self {
            Identity::D | Identity::F => 0,
            Identity::A | Identity::B | Identity::C => 1,
            Identity::E => 2,
        }
    }

    /// Largest coefficient index needed to check the identity at `j`.
    fn needs(self, j: usize) -> usize {
        match self {
            Identity::D | Identity::F => j + 1,
            _ => j,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub identity: Identity,
    pub j: usize,
    #[serde(with = "crate::algebra::scalar::ratio_string")]
    pub lhs: BigRational,
    #[serde(with = "crate::algebra::scalar::ratio_string")]
    pub rhs: BigRational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub records: Vec<IdentityRecord>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn first_failure(&self) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| !r.pass)
    }
}

/// `Σ_{i=0..n} x_i y_{n-i}`. Integer products are summed as integers, which avoids a
/// gcd per addition.
fn conv2(x: &[BigRational], y: &[BigRational], n: usize) -> BigRational {
    let mut whole = BigInt::zero();
    let mut frac = BigRational::zero();
    for i in 0..=n {
        let (p, q) = (&x[i], &y[n - i]);
        if p.is_integer() && q.is_integer() {
            whole += p.numer() * q.numer();
        } else {
            frac += p * q;
        }
    }
    frac + BigRational::from_integer(whole)
}

/// Checks `id` for every `j` from its lower bound to `j_max` against `table`.
///
/// `table` must hold indices up to `j_max + 1`.
pub fn verify_identity_with(table: &Coefficients, id: Identity, j_max: usize) -> IdentityReport {
    assert!(
        table.j_max() >= id.needs(j_max),
        "coefficient table too short for j_max = {j_max}"
    );
    let (a, b, c, d) = (&table.a, &table.b, &table.c, &table.d);
    let two = int(2);
    let four = int(4);
    let mut records = Vec::new();

    // Σ_{j2+j3=n} b_{j2} b_{j3}, computed here rather than read back from c.
    let bb: Vec<BigRational> = if id == Identity::C {
        (0..=j_max).map(|n| conv2(b, b, n)).collect()
    } else {
        Vec::new()
    };

    for j in id.j_min()..=j_max {
        let (lhs, rhs, extra_ok) = match id {
            Identity::A => (conv2(a, a, j - 1), a[j].clone(), true),
            Identity::B => {
                let lhs = &two * conv2(a, b, j - 1);
                let rhs = &b[j] - &a[j - 1];
                let alt = int(2 * (j as i64 - 1)) * &a[j - 1];
                let ok = rhs == alt;
                (lhs, rhs, ok)
            }
            Identity::C => {
                let lhs = &two * conv2(a, c, j - 1);
                let triple = &four * conv2(a, &bb, j - 1);
                let rhs = &c[j] - int(2 * (j as i64 - 1)) * &a[j - 1];
                let ok = triple == lhs;
                (lhs, rhs, ok)
            }
            Identity::D => {
                let lhs = &b[j + 1] + &c[j + 1];
                let rhs = &four * &b[j] + &four * &c[j] + &a[j];
                (lhs, rhs, true)
            }
            Identity::E => {
                let lhs = &two * conv2(a, d, j - 1) + &two * &a[j - 1];
                (lhs, d[j].clone(), true)
            }
            Identity::F => (&b[j + 1] - &a[j], d[j + 1].clone(), true),
        };
        let pass = extra_ok && lhs == rhs;
        records.push(IdentityRecord {
            identity: id,
            j,
            lhs,
            rhs,
            pass,
        });
    }
    let pass = records.iter().all(|r| r.pass);
    IdentityReport {
        identity: id,
        records,
        pass,
    }
}

/// Checks `id` against freshly built sequences.
pub fn verify_identity(id: Identity, j_max: usize) -> IdentityReport {
    let table = shared(j_max + 1);
    verify_identity_with(&table, id, j_max)
}

/// Generating functions whose Taylor coefficients are built from the sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesKind {
    /// `x/(1+√(1+x²)) = Σ_{j≥0} a_j (-1)^j x^{2j+1}/2^{2j+1}`.
    Fa,
    /// `½(1/(1+√(1+x²)) - 1/√(1+x²)) = Σ_{j≥1} b_j (-1)^j x^{2j-2}/2^{2j}`.
    Fb,
    /// `½(1/(1+√(1+x²)) - 1/√(1+x²))² = Σ_{j≥2} c_j (-1)^j x^{2j-4}/2^{2j}`.
    Fc,
    /// `(1/√(1+x²)) (1/(1+√(1+x²)))² = Σ_{j≥2} d_j (-1)^j x^{2j-4}/2^{2j-1}`.
    Fd,
    /// `√(1+x²) = 1 + Σ_{j≥0} a_j (-1)^j x^{2j+2}/2^{2j+1}`.
    Sqrt,
    /// `1/√(1+x²) = Σ_{j≥0} (j+1) a_j (-1)^j x^{2j}/4^j`.
    InvSqrt,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 6] = [
        SeriesKind::Fa,
        SeriesKind::Fb,
        SeriesKind::Fc,
        SeriesKind::Fd,
        SeriesKind::Sqrt,
        SeriesKind::InvSqrt,
    ];
}

/// Closed form of the generating function; defined for every real `x`.
pub fn closed_form(kind: SeriesKind, x: f64) -> f64 {
    let s = (1.0 + x * x).sqrt();
    match kind {
        SeriesKind::Fa => x / (1.0 + s),
        SeriesKind::Fb => 0.5 * (1.0 / (1.0 + s) - 1.0 / s),
        SeriesKind::Fc => {
            let fb = 0.5 * (1.0 / (1.0 + s) - 1.0 / s);
            2.0 * fb * fb
        }
        SeriesKind::Fd => {
            let t = 1.0 / (1.0 + s);
            t * t / s
        }
        SeriesKind::Sqrt => s,
        SeriesKind::InvSqrt => 1.0 / s,
    }
}

fn pow2(e: usize) -> BigRational {
    BigRational::from_integer(BigInt::one() << e)
}

/// Exact coefficient and power of `x` of the `t`-th term (counting from 0).
pub fn series_term(kind: SeriesKind, t: usize) -> (BigRational, usize) {
    let sign = |j: usize| if j.is_multiple_of(2) { int(1) } else { int(-1) };
    match kind {
        SeriesKind::Fa => {
            let j = t;
            (coeff(CoeffKind::A, j) * sign(j) / pow2(2 * j + 1), 2 * j + 1)
        }
        SeriesKind::Fb => {
            let j = t + 1;
            (coeff(CoeffKind::B, j) * sign(j) / pow2(2 * j), 2 * j - 2)
        }
        SeriesKind::Fc => {
            let j = t + 2;
            (coeff(CoeffKind::C, j) * sign(j) / pow2(2 * j), 2 * j - 4)
        }
        SeriesKind::Fd => {
            let j = t + 2;
            (coeff(CoeffKind::D, j) * sign(j) / pow2(2 * j - 1), 2 * j - 4)
        }
        SeriesKind::Sqrt => {
            if t == 0 {
                (int(1), 0)
            } else {
                let j = t - 1;
                (coeff(CoeffKind::A, j) * sign(j) / pow2(2 * j + 1), 2 * j + 2)
            }
        }
        SeriesKind::InvSqrt => {
            let j = t;
            (
                coeff(CoeffKind::A, j) * int(j as i64 + 1) * sign(j) / pow2(2 * j),
                2 * j,
            )
        }
    }
}

/// Sum of the first `terms` terms of the series at `x`.
pub fn partial_sum(kind: SeriesKind, x: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    for t in 0..terms {
        let (c, p) = series_term(kind, t);
        let c = c.to_f64().expect("finite coefficient");
        s += c * x.powi(p as i32);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(coeff(CoeffKind::A, 3), int(5));
        assert_eq!(coeff(CoeffKind::B, 0), int(0));
        assert_eq!(coeff(CoeffKind::B, 2), int(3));
        assert_eq!(coeff(CoeffKind::B, 3), int(10));
        assert_eq!(coeff(CoeffKind::C, 2), int(2));
        assert_eq!(coeff(CoeffKind::D, 2), int(2));
        assert_eq!(coeff(CoeffKind::D, 3), int(8));
        assert_eq!(coeff(CoeffKind::EBinom, 2), r(-1, 8));
    }

    #[test]
    fn base_cases() {
        for kind in [CoeffKind::C, CoeffKind::D] {
            assert!(coeff(kind, 0).is_zero());
            assert!(coeff(kind, 1).is_zero());
        }
    }

    #[test]
    fn catalan_prefix() {
        let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (j, &v) in expected.iter().enumerate() {
            assert_eq!(coeff(CoeffKind::A, j), int(v));
        }
    }

    #[test]
    fn b_is_odd_multiple_of_previous_catalan() {
        let t = Coefficients::build(120);
        for j in 1..=120 {
            assert_eq!(t.b[j], int(2 * j as i64 - 1) * &t.a[j - 1], "j = {j}");
        }
    }

    #[test]
    fn binomial_half_matches_product_formula() {
        // binom(1/2, n) = (-1)^{n+1} a_{n-1} / 2^{2n-1} for n >= 1
        let t = Coefficients::build(40);
        for n in 1..=40usize {
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            assert_eq!(t.e[n], sign * &t.a[n - 1] / pow2(2 * n - 1), "n = {n}");
        }
    }

    #[test]
    fn shared_table_grows_and_keeps_values() {
        let small = shared(3);
        let large = shared(small.j_max() * 2 + 1);
        assert!(large.j_max() > small.j_max());
        assert_eq!(&large.a[..=small.j_max()], &small.a[..]);
    }

    #[test]
    fn identity_examples() {
        let a1 = verify_identity(Identity::A, 3);
        assert_eq!(a1.records[0].j, 1);
        assert_eq!(a1.records[0].lhs, int(1));
        assert_eq!(a1.records[2].lhs, int(5));
        let d = verify_identity(Identity::D, 1);
        assert_eq!(d.records[0].j, 0);
        assert_eq!(d.records[0].lhs, int(1));
        assert_eq!(d.records[0].rhs, int(1));
    }

    #[test]
    fn all_identities_hold_to_200() {
        for id in Identity::ALL {
            let rep = verify_identity(id, 200);
            assert!(rep.pass, "{id} failed at {:?}", rep.first_failure().map(|r| r.j));
        }
    }

    #[test]
    fn additive_variant_of_identity_f_fails() {
        // b_{j+1} + a_j differs from d_{j+1} already at j = 0.
        let t = Coefficients::build(4);
        assert_ne!(&t.b[1] + &t.a[0], t.d[1]);
    }

    #[test]
    fn corrupted_table_is_reported() {
        let mut t = Coefficients::build(30);
        t.a[5] += int(1);
        let rep = verify_identity_with(&t, Identity::A, 20);
        assert!(!rep.pass);
        assert_eq!(rep.first_failure().unwrap().j, 5);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form(SeriesKind::Fa, 0.0), 0.0);
        assert!((closed_form(SeriesKind::Fb, 0.0) + 0.25).abs() < 1e-15);
        assert!((closed_form(SeriesKind::Fc, 0.0) - 0.125).abs() < 1e-15);
        assert!((closed_form(SeriesKind::Fd, 0.0) - 0.25).abs() < 1e-15);
        assert!((closed_form(SeriesKind::Sqrt, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn leading_terms_equal_values_at_zero() {
        for kind in SeriesKind::ALL {
            let at_zero = partial_sum(kind, 0.0, 5);
            assert!(
                (at_zero - closed_form(kind, 0.0)).abs() < 1e-15,
                "{kind:?}: {at_zero}"
            );
        }
    }

    #[test]
    fn partial_sum_fa() {
        assert_eq!(partial_sum(SeriesKind::Fa, 0.0, 17), 0.0);
        let x = 0.6;
        assert!((partial_sum(SeriesKind::Fa, x, 40) - closed_form(SeriesKind::Fa, x)).abs() < 1e-9);
    }

    #[test]
    fn partial_sum_near_radius_converges_slowly() {
        let x = 0.99;
        let target = closed_form(SeriesKind::Fb, x);
        let e100 = (partial_sum(SeriesKind::Fb, x, 100) - target).abs();
        let e400 = (partial_sum(SeriesKind::Fb, x, 400) - target).abs();
        assert!(e400 < e100);
        assert!(e400 < 1e-5);
    }
}
