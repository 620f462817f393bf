use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::grade::UnitGrade;
use super::scalar::{fmt_ratio, parse_ratio, GaussianRational};
use super::tail::{self, parse_tail, Field, MonoTerm, Monomial, Tail};
use crate::error::ParseError;

/// One stored term `coeff · grade · mono`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: GaussianRational,
    pub grade: UnitGrade,
    pub mono: Monomial,
}

/// Operator in normal form: a sum of distinct `(grade, monomial)` keys with nonzero
/// exact coefficients, iterated in a fixed order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorPoly {
    terms: BTreeMap<(UnitGrade, Monomial), GaussianRational>,
}

fn lift(t: &MonoTerm) -> (GaussianRational, UnitGrade) {
    let mut g = UnitGrade::ONE;
    for _ in 0..t.eps {
        g = g * UnitGrade::EPS;
    }
    (GaussianRational::gaussian(t.re, t.im), g)
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GaussianRational::one(), UnitGrade::ONE, Tail::One, 0)
    }

    pub fn monomial(coeff: GaussianRational, grade: UnitGrade, tail: Tail, k: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, grade, Monomial::new(tail, k));
        p
    }

    /// The bare basis element `π^{2k}·tail` with unit coefficient.
    pub fn basis(tail: Tail, k: u32) -> Self {
        Self::monomial(GaussianRational::one(), UnitGrade::ONE, tail, k)
    }

    /// `σ·π`
    pub fn sigma_pi() -> Self {
        Self::basis(Tail::SigmaPi, 0)
    }

    /// `σ·F`
    pub fn sigma_field(f: Field) -> Self {
        Self::basis(Tail::SigmaField(f), 0)
    }

    /// `(σ·π)^n` expanded to field-linear order.
    pub fn sigma_pi_power(n: u32) -> Self {
        Self::from_mono_terms(&tail::sigma_pi_power(n))
    }

    fn from_mono_terms(ts: &[MonoTerm]) -> Self {
        let mut p = Self::zero();
        for t in ts {
            let (c, g) = lift(t);
            p.add_term(c, g, t.mono);
        }
        p
    }

    pub fn add_term(&mut self, coeff: GaussianRational, grade: UnitGrade, mono: Monomial) {
        if coeff.is_zero() {
            return;
        }
        let key = (grade, mono);
        let remove = match self.terms.get_mut(&key) {
            Some(c) => {
                *c += &coeff;
                c.is_zero()
            }
            None => {
                self.terms.insert(key, coeff);
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnitGrade, &Monomial, &GaussianRational)> {
        self.terms.iter().map(|((g, m), c)| (g, m, c))
    }

    pub fn terms(&self) -> Vec<OperatorTerm> {
        self.iter()
            .map(|(g, m, c)| OperatorTerm {
                coeff: c.clone(),
                grade: *g,
                mono: *m,
            })
            .collect()
    }

    pub fn coefficient(&self, grade: UnitGrade, mono: Monomial) -> GaussianRational {
        self.terms.get(&(grade, mono)).cloned().unwrap_or_default()
    }

    /// Rebuilds the term map from its own terms; the result equals `self`.
    pub fn normalize(&self) -> Self {
        let mut p = Self::zero();
        for (g, m, c) in self.iter() {
            p.add_term(c.clone(), *g, *m);
        }
        p
    }

    /// Multiplies every coefficient by `c` and every grade by `g`.
    pub fn scale(&self, c: &GaussianRational, g: UnitGrade) -> Self {
        let mut p = Self::zero();
        for (gr, m, co) in self.iter() {
            p.add_term(co * c, *gr * g, *m);
        }
        p
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::real(r.clone()), UnitGrade::ONE)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&GaussianRational::from_int(n), UnitGrade::ONE)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&UnitGrade, &Monomial) -> bool) -> Self {
        OperatorPoly {
            terms: self
                .terms
                .iter()
                .filter(|((g, m), _)| keep(g, m))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Product in normal form; terms of total field order two or more are dropped.
    pub fn mul(&self, other: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for ((ga, ma), ca) in &self.terms {
            for ((gb, mb), cb) in &other.terms {
                let rules = tail::mul_monomials(*ma, *mb);
                if rules.is_empty() {
                    continue;
                }
                let cab = ca * cb;
                for t in &rules {
                    let (c, g) = lift(t);
                    out.add_term(&cab * &c, *ga * *gb * g, t.mono);
                }
            }
        }
        out
    }

    /// `[φ, self]` for a homogeneous static field, with `E = -∇φ`.
    pub fn commutator_phi(&self) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for ((g, m), c) in &self.terms {
            for t in tail::phi_commutator(*m) {
                let (tc, _) = lift(&t);
                out.add_term(c * &tc, *g * UnitGrade::HBAR, t.mono);
            }
        }
        out
    }

    /// Hermitian conjugate. Every basis element is self-adjoint, so this conjugates
    /// coefficients termwise.
    pub fn dagger(&self) -> OperatorPoly {
        OperatorPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(),
        }
    }

    /// The formal replacement `π, σ, q, μ', i → -π, -σ, -q, -μ', -i`.
    pub fn charge_conjugate(&self) -> OperatorPoly {
        OperatorPoly {
            terms: self
                .terms
                .iter()
                .map(|((g, m), c)| {
                    let flips = m.tail.pi_count() + m.tail.sigma_count() + g.q + g.mu;
                    let c = c.conj();
                    let c = if flips % 2 == 0 { c } else { -c };
                    ((*g, *m), c)
                })
                .collect(),
        }
    }

    /// `(P + P†)/2`: terms with real coefficients.
    pub fn hermitian_part(&self) -> OperatorPoly {
        self.part(true)
    }

    /// `(P - P†)/2`: terms with imaginary coefficients.
    pub fn antihermitian_part(&self) -> OperatorPoly {
        self.part(false)
    }

    fn part(&self, real: bool) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for ((g, m), c) in &self.terms {
            let c = if real {
                GaussianRational::real(c.re.clone())
            } else {
                GaussianRational::imag(c.im.clone())
            };
            out.add_term(c, *g, *m);
        }
        out
    }

    /// Highest field order present (0 or 1).
    pub fn field_order(&self) -> u32 {
        self.terms
            .keys()
            .map(|(_, m)| u32::from(m.tail.field().is_some()))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, o: &OperatorPoly) -> OperatorPoly {
        let mut p = self.clone();
        for ((g, m), c) in &o.terms {
            p.add_term(c.clone(), *g, *m);
        }
        p
    }
}

impl Add for OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, o: OperatorPoly) -> OperatorPoly {
        &self + &o
    }
}

impl Sub for &OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, o: &OperatorPoly) -> OperatorPoly {
        let mut p = self.clone();
        for ((g, m), c) in &o.terms {
            p.add_term(-c, *g, *m);
        }
        p
    }
}

impl Sub for OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, o: OperatorPoly) -> OperatorPoly {
        &self - &o
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        OperatorPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        -&self
    }
}

impl Mul for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, o: &OperatorPoly) -> OperatorPoly {
        OperatorPoly::mul(self, o)
    }
}

fn fmt_coeff(c: &GaussianRational) -> String {
    match (c.re == BigRational::default(), c.im == BigRational::default()) {
        (_, true) => format!("({})", fmt_ratio(&c.re)),
        (true, false) => format!("({}) i", fmt_ratio(&c.im)),
        (false, false) => format!("({c})"),
    }
}

impl fmt::Display for OperatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_coeff(&self.coeff))?;
        if self.grade != UnitGrade::ONE {
            write!(f, " {}", self.grade)?;
        }
        let mono = self.mono.to_string();
        if mono != "1" {
            write!(f, " {mono}")?;
        }
        Ok(())
    }
}

impl fmt::Display for OperatorPoly {
    /// Terms joined by ` + `, e.g. `(-1/4) i q hbar m^-2 (s.E) + (-1/8) m^-3 pi^2 (s.pi)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().iter().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' if depth == 0 && i > 0 && bytes[i - 1] == b' ' && bytes.get(i + 1) == Some(&b' ') => {
                out.push(&s[start..i - 1]);
                start = i + 2;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(&s[start..]);
    out
}

const UNIT_NAMES: [&str; 5] = ["m", "c", "hbar", "q", "mu"];

/// Parses one term: `(coeff)[ i] [units...] [pi^2k] [tail]`.
///
/// A body of the form `(s.pi)^n` denotes the power `(σ·π)^n` and is expanded.
pub fn parse_term(s: &str) -> Result<OperatorPoly, ParseError> {
    let s = s.trim();
    let bad = || ParseError::Term(s.to_string());
    let rest = s.strip_prefix('(').ok_or_else(bad)?;
    let close = rest.find(')').ok_or_else(bad)?;
    let mut coeff = GaussianRational::from_str(&rest[..close])?;
    let mut rest = rest[close + 1..].trim_start();
    if let Some(r) = rest.strip_prefix('i') {
        if r.is_empty() || r.starts_with(' ') {
            coeff = &coeff * &GaussianRational::i();
            rest = r.trim_start();
        }
    }
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    let mut idx = 0;
    let mut units = Vec::new();
    while idx < tokens.len() {
        let name = tokens[idx].split('^').next().unwrap_or("");
        if UNIT_NAMES.contains(&name) {
            units.push(tokens[idx]);
            idx += 1;
        } else {
            break;
        }
    }
    let grade = UnitGrade::from_str(&units.join(" "))?;
    let mut k = 0u32;
    if let Some(tok) = tokens.get(idx) {
        if let Some(p) = tok.strip_prefix("pi^") {
            let p: u32 = p.parse().map_err(|_| bad())?;
            if !p.is_multiple_of(2) {
                return Err(ParseError::Operator(tok.to_string()));
            }
            k = p / 2;
            idx += 1;
        }
    }
    let body = tokens[idx..].join(" ");
    let base = if let Some(n) = body.strip_prefix("(s.pi)^") {
        let n: u32 = n.parse().map_err(|_| ParseError::Operator(body.clone()))?;
        OperatorPoly::basis(Tail::One, k).mul(&OperatorPoly::sigma_pi_power(n))
    } else {
        let tail = parse_tail(&body).ok_or_else(|| ParseError::Operator(body.clone()))?;
        OperatorPoly::basis(tail, k)
    };
    Ok(base.scale(&coeff, grade))
}

impl FromStr for OperatorPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "0" {
            return Ok(OperatorPoly::zero());
        }
        let mut p = OperatorPoly::zero();
        for part in split_top_level(s) {
            p = &p + &parse_term(part)?;
        }
        Ok(p)
    }
}

/// Flat record used for JSON output of a single term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff_re: String,
    pub coeff_im: String,
    pub grade: UnitGrade,
    pub tail: Tail,
    pub k: u32,
}

impl OperatorPoly {
    pub fn records(&self) -> Vec<TermRecord> {
        self.iter()
            .map(|(g, m, c)| TermRecord {
                coeff_re: fmt_ratio(&c.re),
                coeff_im: fmt_ratio(&c.im),
                grade: *g,
                tail: m.tail,
                k: m.k,
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, ParseError> {
        let mut p = OperatorPoly::zero();
        for r in records {
            let c = GaussianRational::new(parse_ratio(&r.coeff_re)?, parse_ratio(&r.coeff_im)?);
            p.add_term(c, r.grade, Monomial::new(r.tail, r.k));
        }
        Ok(p)
    }
}

impl Serialize for OperatorPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        OperatorPoly::from_records(&recs).map_err(serde::de::Error::custom)
    }
}

/// `n/d` as a real coefficient.
pub fn rational(n: i64, d: i64) -> GaussianRational {
    GaussianRational::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OperatorPoly {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_pi_squared() {
        let s = OperatorPoly::sigma_pi();
        assert_eq!(s.mul(&s), p("(1) pi^2 + (-1) q hbar c^-1 (s.B)"));
    }

    #[test]
    fn sandwich_of_sigma_e() {
        let s = OperatorPoly::sigma_pi();
        let e = OperatorPoly::sigma_field(Field::E);
        let got = s.mul(&e).mul(&s);
        assert_eq!(got, p("(2) (s.pi)(E.pi) + (-1) pi^2 (s.E)"));
    }

    #[test]
    fn anticommutator_with_sigma_b() {
        let s = OperatorPoly::sigma_pi();
        let b = OperatorPoly::sigma_field(Field::B);
        assert_eq!(&s.mul(&b) + &b.mul(&s), p("(2) (B.pi)"));
    }

    #[test]
    fn identity_is_neutral() {
        let x = p("(3/4) i q hbar m^-2 pi^2 (s.E) + (1/2) m^-1 pi^4 (s.pi)");
        assert_eq!(OperatorPoly::one().mul(&x), x);
        assert_eq!(x.mul(&OperatorPoly::one()), x);
    }

    #[test]
    fn pi_squared_times_sigma_pi() {
        // π²(σ·π) = ½{π², σ·π} + ½[π², σ·π] with [π², σ·π] = 2iε((B×π)·σ)
        let got = OperatorPoly::basis(Tail::One, 1).mul(&OperatorPoly::sigma_pi());
        assert_eq!(got, p("(1) pi^2 (s.pi) + (1) i q hbar c^-1 ((B x pi).s)"));
        let other = OperatorPoly::sigma_pi().mul(&OperatorPoly::basis(Tail::One, 1));
        assert_eq!(other, p("(1) pi^2 (s.pi) + (-1) i q hbar c^-1 ((B x pi).s)"));
    }

    #[test]
    fn phi_commutators() {
        let s = OperatorPoly::sigma_pi();
        assert_eq!(s.commutator_phi(), p("(-1) i hbar (s.E)"));
        let s3 = OperatorPoly::sigma_pi_power(3);
        assert_eq!(
            s3.commutator_phi(),
            p("(-1) i hbar pi^2 (s.E) + (-2) i hbar (s.pi)(E.pi)")
        );
        assert!(p("(1) pi^2 (s.E)").commutator_phi().is_zero());
        assert_eq!(
            OperatorPoly::basis(Tail::One, 2).commutator_phi(),
            p("(-4) i hbar pi^2 (E.pi)")
        );
    }

    #[test]
    fn dagger_of_x3() {
        let x3 = p("(-1/8) m^-3 (s.pi)^3 + (-1/4) i q hbar m^-2 (s.E)");
        let want = p("(-1/8) m^-3 (s.pi)^3 + (1/4) i q hbar m^-2 (s.E)");
        assert_eq!(x3.dagger(), want);
        assert_eq!(x3.dagger().dagger(), x3);
    }

    #[test]
    fn charge_conjugation_signs() {
        let s = OperatorPoly::sigma_pi();
        assert_eq!(s.charge_conjugate(), s);
        let qb = p("(1) q (s.B)");
        assert_eq!(qb.charge_conjugate(), qb);
        let e_dot = p("(1) i q hbar (E.pi)");
        assert_eq!(e_dot.charge_conjugate(), p("(-1) i q hbar (E.pi)"));
        let mu_e = p("(1) i mu (s.E)");
        assert_eq!(mu_e.charge_conjugate(), -&mu_e);
        let mu_b = p("(1) mu (s.B)");
        assert_eq!(mu_b.charge_conjugate(), mu_b);
        let free = p("(1) pi^2");
        assert_eq!(free.charge_conjugate(), free);
    }

    #[test]
    fn canonical_text() {
        let x = p("(-1/4) i q hbar m^-2 (s.E) + (-1/8) m^-3 (s.pi)^3");
        assert_eq!(
            x.to_string(),
            "(1/8) q hbar m^-3 c^-1 (B.pi) + (-1/8) m^-3 pi^2 (s.pi) + (-1/4) i q hbar m^-2 (s.E)"
        );
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(OperatorPoly::zero().to_string(), "0");
        let mixed = p("(1/2 + 3/4 i) mu pi^2 (s.pi)(B.pi)");
        assert_eq!(p(&mixed.to_string()), mixed);
    }

    #[test]
    fn json_round_trip_is_stable() {
        let x = p("(-1/4) i q hbar m^-2 (s.E) + (-5/128) m^-7 (s.pi)^7");
        let a = serde_json::to_string(&x).unwrap();
        let back: OperatorPoly = serde_json::from_str(&a).unwrap();
        assert_eq!(back, x);
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
    }

    #[test]
    fn parse_errors() {
        assert!("(1) pi^3".parse::<OperatorPoly>().is_err());
        assert!("(1) (s.X)".parse::<OperatorPoly>().is_err());
        assert!("1 pi^2".parse::<OperatorPoly>().is_err());
    }
}
