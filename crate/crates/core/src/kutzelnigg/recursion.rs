use super::series::{SeriesLabel, SeriesTable};
use crate::algebra::{rational, Field, GaussianRational, OperatorPoly, UnitGrade};
use crate::error::FoldyError;

/// `p / (2m)`
fn over_two_m(p: &OperatorPoly) -> OperatorPoly {
    p.scale(&rational(1, 2), UnitGrade::mass(-1))
}

/// `X_n` for `n ≤ max_order` from
/// `2m X_n = -Σ_{k1+k2=n-1} X_{k1}(σ·π)X_{k2} + q[φ, X_{n-2}] + δ_{n1}(σ·π)`.
pub fn dirac_series(max_order: usize) -> Result<SeriesTable, FoldyError> {
    if max_order < 1 {
        return Err(FoldyError::OrderTooLow { got: max_order, min: 1 });
    }
    let s = OperatorPoly::sigma_pi();
    let mut x = vec![OperatorPoly::zero(); max_order + 1];
    // s_x[k] = (σ·π) X_k, reused across orders
    let mut s_x = vec![OperatorPoly::zero(); max_order + 1];
    x[1] = over_two_m(&s);
    s_x[1] = s.mul(&x[1]);
    for n in 2..=max_order {
        let mut rhs = OperatorPoly::zero();
        for k1 in 1..n - 1 {
            let k2 = n - 1 - k1;
            if x[k1].is_zero() || s_x[k2].is_zero() {
                continue;
            }
            rhs = &rhs - &x[k1].mul(&s_x[k2]);
        }
        rhs = &rhs + &x[n - 2].commutator_phi().scale(&GaussianRational::one(), UnitGrade::Q);
        x[n] = over_two_m(&rhs);
        s_x[n] = s.mul(&x[n]);
    }
    Ok(SeriesTable::new(SeriesLabel::X, x))
}

/// `X'_n` for `n ≤ max_order`, with `X'_1 = X'_2 = 0`, `X'_3 = -(iμ''/2m)(σ·E)`, and for
/// `n ≥ 4`
///
/// ```text
/// 2m X'_n = -Σ_{k1+k2=n-1} (X(σ·π)X' + X'(σ·π)X + X'(σ·π)X')
///           - iμ'' Σ_{k1+k2=n-3} (X(σ·E)X + X(σ·E)X' + X'(σ·E)X + X'(σ·E)X')
///           + q[φ, X'_{n-2}] + μ''{X_{n-3} + X'_{n-3}, σ·B}
/// ```
pub fn pauli_series(dirac: &SeriesTable, max_order: usize) -> Result<SeriesTable, FoldyError> {
    if max_order < 3 {
        return Err(FoldyError::OrderTooLow { got: max_order, min: 3 });
    }
    assert!(dirac.max_order() >= max_order, "Dirac series too short");
    let s = OperatorPoly::sigma_pi();
    let se = OperatorPoly::sigma_field(Field::E);
    let sb = OperatorPoly::sigma_field(Field::B);
    let x = dirac.entries();
    let mut xp = vec![OperatorPoly::zero(); max_order + 1];
    let minus_i_mu = GaussianRational::gaussian(0, -1);
    xp[3] = over_two_m(&se.scale(&minus_i_mu, UnitGrade::MU));
    let s_x: Vec<OperatorPoly> = x.iter().map(|p| s.mul(p)).collect();
    let se_x: Vec<OperatorPoly> = x.iter().map(|p| se.mul(p)).collect();
    let mut s_xp = vec![OperatorPoly::zero(); max_order + 1];
    let mut se_xp = vec![OperatorPoly::zero(); max_order + 1];
    s_xp[3] = s.mul(&xp[3]);
    se_xp[3] = se.mul(&xp[3]);
    for n in 4..=max_order {
        let mut rhs = OperatorPoly::zero();
        for k1 in 1..n - 1 {
            let k2 = n - 1 - k1;
            let term = &(&x[k1].mul(&s_xp[k2]) + &xp[k1].mul(&s_x[k2])) + &xp[k1].mul(&s_xp[k2]);
            rhs = &rhs - &term;
        }
        let mut field_sum = OperatorPoly::zero();
        for k1 in 1..(n - 3).max(1) {
            let k2 = n - 3 - k1;
            let xk = &x[k1] + &xp[k1];
            field_sum = &field_sum + &xk.mul(&(&se_x[k2] + &se_xp[k2]));
        }
        rhs = &rhs + &field_sum.scale(&minus_i_mu, UnitGrade::MU);
        rhs = &rhs + &xp[n - 2].commutator_phi().scale(&GaussianRational::one(), UnitGrade::Q);
        let lower = &x[n - 3] + &xp[n - 3];
        let anti = &lower.mul(&sb) + &sb.mul(&lower);
        rhs = &rhs + &anti.scale(&GaussianRational::one(), UnitGrade::MU);
        xp[n] = over_two_m(&rhs);
        s_xp[n] = s.mul(&xp[n]);
        se_xp[n] = se.mul(&xp[n]);
    }
    Ok(SeriesTable::new(SeriesLabel::Xprime, xp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> OperatorPoly {
        s.parse().unwrap()
    }

    #[test]
    fn leading_dirac_terms() {
        let x = dirac_series(13).unwrap();
        assert_eq!(x.entry(1), &p("(1/2) m^-1 (s.pi)"));
        assert_eq!(
            x.entry(3),
            &p("(-1/8) m^-3 (s.pi)^3 + (-1/4) i q hbar m^-2 (s.E)")
        );
        for n in [2, 4, 6, 8, 10, 12] {
            assert!(x.entry(n).is_zero(), "X_{n}");
        }
        assert_eq!(
            x.entry(13),
            &p("(33/2048) m^-13 (s.pi)^13 + (231/2048) i q hbar m^-12 pi^10 (s.E) + (281/1024) i q hbar m^-12 pi^8 (s.pi)(E.pi)")
        );
    }

    #[test]
    fn leading_pauli_terms() {
        let x = dirac_series(12).unwrap();
        let xp = pauli_series(&x, 12).unwrap();
        assert!(xp.entry(1).is_zero() && xp.entry(2).is_zero());
        assert_eq!(xp.entry(4), &p("(1/2) mu m^-2 (B.pi)"));
        assert_eq!(
            xp.entry(5),
            &p("(3/8) i mu m^-3 pi^2 (s.E) + (-1/4) i mu m^-3 (s.pi)(E.pi)")
        );
        assert_eq!(xp.entry(12), &p("(63/256) mu m^-10 pi^8 (B.pi)"));
    }

    #[test]
    fn order_bounds() {
        assert!(dirac_series(0).is_err());
        let x = dirac_series(4).unwrap();
        assert!(pauli_series(&x, 2).is_err());
    }
}
