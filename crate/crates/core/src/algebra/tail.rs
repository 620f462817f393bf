//! Monomial basis of the field-linear sector and the products between basis elements.
//!
//! Notation: `S = σ·π`, `P_k = π^{2k}`, `Q_k = ½{π^{2k}, S}`, `ε = qħ/c`.
//! With `[π_i, π_j] = iε ε_ijk B_k` one has `S² = P_1 - ε(σ·B)` and, at field-linear
//! order, `S^{2k} = P_k - kε P_{k-1}(σ·B)` and `S^{2k+1} = Q_k - kε P_{k-1}(B·π)`.
//! Field-linear tails are products of commuting factors; the ordering of `π` against
//! `π` matters only through terms that already carry a field, so there it is dropped.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A homogeneous static field vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    E,
    B,
}

/// Shape of a basis monomial, to be multiplied by `π^{2k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tail {
    /// `π^{2k}`
    One,
    /// `½{π^{2k}, σ·π}`
    SigmaPi,
    /// `π^{2k}(F·π)`
    FieldDot(Field),
    /// `π^{2k}(σ·F)`
    SigmaField(Field),
    /// `π^{2k}(σ·π)(F·π)`
    SigmaPiFieldDot(Field),
    /// `π^{2k}((F×π)·σ)`
    CrossSigma(Field),
}

impl Tail {
    pub fn field(self) -> Option<Field> {
        match self {
            Tail::One | Tail::SigmaPi => None,
            Tail::FieldDot(f)
            | Tail::SigmaField(f)
            | Tail::SigmaPiFieldDot(f)
            | Tail::CrossSigma(f) => Some(f),
        }
    }

    pub fn is_free(self) -> bool {
        self.field().is_none()
    }

    /// Number of explicit `π` factors besides `π^{2k}`.
    pub fn pi_count(self) -> u32 {
        match self {
            Tail::One | Tail::SigmaField(_) => 0,
            Tail::SigmaPi | Tail::FieldDot(_) | Tail::CrossSigma(_) => 1,
            Tail::SigmaPiFieldDot(_) => 2,
        }
    }

    /// Number of `σ` factors.
    pub fn sigma_count(self) -> u32 {
        match self {
            Tail::One | Tail::FieldDot(_) => 0,
            _ => 1,
        }
    }

    pub fn all() -> Vec<Tail> {
        let mut v = vec![Tail::One, Tail::SigmaPi];
        for f in [Field::E, Field::B] {
            v.extend([
                Tail::FieldDot(f),
                Tail::SigmaField(f),
                Tail::SigmaPiFieldDot(f),
                Tail::CrossSigma(f),
            ]);
        }
        v
    }
}

/// `π^{2k}` times a tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub tail: Tail,
    pub k: u32,
}

impl Monomial {
    pub const fn new(tail: Tail, k: u32) -> Self {
        Monomial { tail, k }
    }
}

/// Small exact term produced by basis-level rules: `(re + im·i) ε^eps · mono`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoTerm {
    pub re: i64,
    pub im: i64,
    pub eps: u32,
    pub mono: Monomial,
}

impl MonoTerm {
    const fn new(re: i64, im: i64, eps: u32, mono: Monomial) -> Self {
        MonoTerm { re, im, eps, mono }
    }
}

/// `S^n` expanded in the basis.
pub fn sigma_pi_power(n: u32) -> Vec<MonoTerm> {
    let k = n / 2;
    let (main, corr) = if n.is_multiple_of(2) {
        (Tail::One, Tail::SigmaField(Field::B))
    } else {
        (Tail::SigmaPi, Tail::FieldDot(Field::B))
    };
    let mut out = vec![MonoTerm::new(1, 0, 0, Monomial::new(main, k))];
    if k >= 1 {
        out.push(MonoTerm::new(-(k as i64), 0, 1, Monomial::new(corr, k - 1)));
    }
    out
}

/// Writes a free basis element as `S^n + correction`.
fn as_sigma_pi_power(m: Monomial) -> (u32, Vec<MonoTerm>) {
    let k = m.k;
    let (n, corr) = match m.tail {
        Tail::One => (2 * k, Tail::SigmaField(Field::B)),
        Tail::SigmaPi => (2 * k + 1, Tail::FieldDot(Field::B)),
        _ => unreachable!("field tail is not a power of σ·π"),
    };
    let mut out = Vec::new();
    if k >= 1 {
        out.push(MonoTerm::new(k as i64, 0, 1, Monomial::new(corr, k - 1)));
    }
    (n, out)
}

/// Image of `S^n` once `π` components are treated as commuting.
fn commuting_image(n: u32) -> Monomial {
    if n.is_multiple_of(2) {
        Monomial::new(Tail::One, n / 2)
    } else {
        Monomial::new(Tail::SigmaPi, n / 2)
    }
}

/// Product of a free and a field tail (either order) with commuting `π`.
fn commuting_product(a: Monomial, b: Monomial) -> Vec<MonoTerm> {
    use Tail::*;
    let k = a.k + b.k;
    let t = |re: i64, im: i64, tail: Tail, k: u32| MonoTerm::new(re, im, 0, Monomial::new(tail, k));
    match (a.tail, b.tail) {
        (One, x) | (x, One) => vec![t(1, 0, x, k)],
        (SigmaPi, FieldDot(f)) | (FieldDot(f), SigmaPi) => vec![t(1, 0, SigmaPiFieldDot(f), k)],
        // (σ·π)(σ·F) = F·π + iσ·(π×F) = (F·π) - i((F×π)·σ)
        (SigmaPi, SigmaField(f)) => vec![t(1, 0, FieldDot(f), k), t(0, -1, CrossSigma(f), k)],
        (SigmaField(f), SigmaPi) => vec![t(1, 0, FieldDot(f), k), t(0, 1, CrossSigma(f), k)],
        (SigmaPi, SigmaPiFieldDot(f)) | (SigmaPiFieldDot(f), SigmaPi) => {
            vec![t(1, 0, FieldDot(f), k + 1)]
        }
        // (σ·π)((F×π)·σ) = i[π²(σ·F) - (σ·π)(F·π)]
        (SigmaPi, CrossSigma(f)) => vec![t(0, 1, SigmaField(f), k + 1), t(0, -1, SigmaPiFieldDot(f), k)],
        (CrossSigma(f), SigmaPi) => vec![t(0, -1, SigmaField(f), k + 1), t(0, 1, SigmaPiFieldDot(f), k)],
        (x, y) => unreachable!("commuting product of {x:?} and {y:?}"),
    }
}

fn push_all(out: &mut Vec<MonoTerm>, scale: MonoTerm, terms: Vec<MonoTerm>) {
    for t in terms {
        out.push(MonoTerm::new(
            scale.re * t.re - scale.im * t.im,
            scale.re * t.im + scale.im * t.re,
            scale.eps + t.eps,
            t.mono,
        ));
    }
}

/// Product of two basis monomials, truncated at field order one.
pub fn mul_monomials(a: Monomial, b: Monomial) -> Vec<MonoTerm> {
    match (a.tail.is_free(), b.tail.is_free()) {
        (false, false) => Vec::new(),
        (true, true) => {
            let (na, corr_a) = as_sigma_pi_power(a);
            let (nb, corr_b) = as_sigma_pi_power(b);
            let mut out = sigma_pi_power(na + nb);
            let image_a = commuting_image(na);
            let image_b = commuting_image(nb);
            for c in corr_b {
                push_all(&mut out, c, commuting_product(image_a, c.mono));
            }
            for c in corr_a {
                push_all(&mut out, c, commuting_product(c.mono, image_b));
            }
            out
        }
        _ => commuting_product(a, b),
    }
}

/// `[φ, m]` for a basis monomial, in units of `ħ`, using `[φ, π_i] = -iħ E_i`.
pub fn phi_commutator(m: Monomial) -> Vec<MonoTerm> {
    let k = m.k;
    let e = Field::E;
    let mut out = Vec::new();
    match m.tail {
        Tail::One => {
            if k >= 1 {
                out.push(MonoTerm::new(0, -2 * k as i64, 0, Monomial::new(Tail::FieldDot(e), k - 1)));
            }
        }
        Tail::SigmaPi => {
            out.push(MonoTerm::new(0, -1, 0, Monomial::new(Tail::SigmaField(e), k)));
            if k >= 1 {
                out.push(MonoTerm::new(
                    0,
                    -2 * k as i64,
                    0,
                    Monomial::new(Tail::SigmaPiFieldDot(e), k - 1),
                ));
            }
        }
        _ => {}
    }
    out
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::E => "E",
        Field::B => "B",
    }
}

impl fmt::Display for Monomial {
    /// `pi^4 (s.E)`, `pi^2 (s.pi)(B.pi)`, `((E x pi).s)`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.tail {
            Tail::One => String::new(),
            Tail::SigmaPi => "(s.pi)".to_string(),
            Tail::FieldDot(x) => format!("({}.pi)", field_name(x)),
            Tail::SigmaField(x) => format!("(s.{})", field_name(x)),
            Tail::SigmaPiFieldDot(x) => format!("(s.pi)({}.pi)", field_name(x)),
            Tail::CrossSigma(x) => format!("(({} x pi).s)", field_name(x)),
        };
        match (self.k, body.is_empty()) {
            (0, true) => f.write_str("1"),
            (0, false) => f.write_str(&body),
            (k, true) => write!(f, "pi^{}", 2 * k),
            (k, false) => write!(f, "pi^{} {}", 2 * k, body),
        }
    }
}

/// Parses a tail body such as `(s.E)` or `((B x pi).s)`; `""` is `One`.
pub fn parse_tail(body: &str) -> Option<Tail> {
    let body: String = body.split_whitespace().collect::<Vec<_>>().join(" ");
    let fields = [Field::E, Field::B];
    if body.is_empty() || body == "1" {
        return Some(Tail::One);
    }
    if body == "(s.pi)" {
        return Some(Tail::SigmaPi);
    }
    for f in fields {
        let n = field_name(f);
        if body == format!("({n}.pi)") {
            return Some(Tail::FieldDot(f));
        }
        if body == format!("(s.{n})") {
            return Some(Tail::SigmaField(f));
        }
        if body == format!("(s.pi)({n}.pi)") {
            return Some(Tail::SigmaPiFieldDot(f));
        }
        if body == format!("(({n} x pi).s)") {
            return Some(Tail::CrossSigma(f));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_pi_square() {
        let sp = Monomial::new(Tail::SigmaPi, 0);
        let got = mul_monomials(sp, sp);
        assert_eq!(
            got,
            vec![
                MonoTerm::new(1, 0, 0, Monomial::new(Tail::One, 1)),
                MonoTerm::new(-1, 0, 1, Monomial::new(Tail::SigmaField(Field::B), 0)),
            ]
        );
    }

    #[test]
    fn two_fields_vanish() {
        let a = Monomial::new(Tail::SigmaField(Field::E), 0);
        let b = Monomial::new(Tail::FieldDot(Field::B), 2);
        assert!(mul_monomials(a, b).is_empty());
    }

    #[test]
    fn render_parse_tails() {
        for tail in Tail::all() {
            for k in 0..3 {
                let m = Monomial::new(tail, k);
                let text = m.to_string();
                let body = match text.split_once(' ') {
                    Some((p, rest)) if p.starts_with("pi^") => rest.to_string(),
                    _ if text.starts_with("pi^") => String::new(),
                    _ => text.clone(),
                };
                assert_eq!(parse_tail(&body), Some(tail), "{text}");
            }
        }
    }
}
