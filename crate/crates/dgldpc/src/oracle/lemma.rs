//! Finite-size gaps of the coefficient-asymptotics limits.
//!
//! For a weight enumerator A the normalized log coefficient
//! (1/l) log Coeff[A(x)^l, x^(xi l)] converges to log(A(z)/z^xi) with z the
//! positive root of z A'(z)/A(z) = xi; the bivariate analogue converges to
//! log(B(x0,y0)/(x0^xi y0^theta)). These oracles compute the finite-l value
//! on the exact big-integer path and return the signed gap to the limit.

use crate::error::{Error, Result};
use crate::eval::{IowefEvaluator, WefEvaluator};
use crate::gf2::{IOWeightEnumerator, WeightEnumerator};
use num_traits::Zero;

use crate::poly::{ln_biguint, pow_coeff, pow_coeff_bivar, BiPoly, UniPoly};

/// Rounds xi * l to the required integer weight, rejecting non-integers.
fn integer_weight(x: f64, ell: u64, name: &str) -> Result<usize> {
    let scaled = x * ell as f64;
    let rounded = scaled.round();
    if (scaled - rounded).abs() > 1e-6 {
        return Err(Error::InvalidParameter(format!(
            "{name} * l = {scaled} is not an integer"
        )));
    }
    if rounded < 0.0 {
        return Err(Error::InvalidParameter(format!("{name} must be nonnegative")));
    }
    Ok(rounded as usize)
}

/// (1/l) log Coeff[A^l, x^(xi l)] minus its l -> infinity limit.
pub fn lemma1_gap(wef: &WeightEnumerator, xi: f64, ell: u64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::InvalidParameter("l must be positive".into()));
    }
    let ev = WefEvaluator::new(wef);
    if !(xi > 0.0 && xi < ev.max_weight()) {
        return Err(Error::Domain(format!(
            "xi = {xi} outside (0, {})",
            ev.max_weight()
        )));
    }
    let w = integer_weight(xi, ell, "xi")?;
    let coeff = pow_coeff(&UniPoly::from(wef), ell, w)?;
    if coeff.is_zero() {
        return Err(Error::StructuralZero(format!(
            "Coeff[A^{ell}, x^{w}] = 0 (weight {w} is unreachable, e.g. by parity)"
        )));
    }
    let ln_z = ev.solve_mean(xi)?;
    let limit = ev.log_value(ln_z) - xi * ln_z;
    Ok(ln_biguint(&coeff) / ell as f64 - limit)
}

/// (1/l) log Coeff[B^l, x^(xi l) y^(theta l)] minus its limit.
pub fn lemma2_gap(io: &IOWeightEnumerator, xi: f64, theta: f64, ell: u64) -> Result<f64> {
    if ell == 0 {
        return Err(Error::InvalidParameter("l must be positive".into()));
    }
    let ev = IowefEvaluator::new(io);
    if !(xi > 0.0 && xi < ev.max_u()) || !(theta > 0.0 && theta < ev.max_v()) {
        return Err(Error::Domain(format!(
            "(xi, theta) = ({xi}, {theta}) outside (0,{}) x (0,{})",
            ev.max_u(),
            ev.max_v()
        )));
    }
    let wx = integer_weight(xi, ell, "xi")?;
    let wy = integer_weight(theta, ell, "theta")?;
    let coeff = pow_coeff_bivar(&BiPoly::from(io), ell, wx, wy)?;
    if coeff.is_zero() {
        return Err(Error::StructuralZero(format!(
            "Coeff[B^{ell}, x^{wx} y^{wy}] = 0 (split weight ({wx}, {wy}) is unreachable)"
        )));
    }
    let limit = match ev.ray_slope() {
        // Collinear support: the pair collapses to one equation in s = x y^c
        // and the limit is split-independent.
        Some(_) => {
            let ln_s = ev.solve_ray_mean(xi)?;
            ev.log_value(ln_s, 0.0) - xi * ln_s
        }
        None => {
            let (lx, ly) = ev.solve_means(xi, theta)?;
            ev.log_value(lx, ly) - xi * lx - theta * ly
        }
    };
    Ok(ln_biguint(&coeff) / ell as f64 - limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BinaryLinearCode, SpcForm};

    fn one_plus_x2() -> WeightEnumerator {
        BinaryLinearCode::repetition(2).unwrap().weight_enumerator()
    }

    #[test]
    fn central_binomial_gap() {
        // Coeff[(1+x^2)^100, x^100] = C(100, 50); the gap to log 2 is close
        // to the Stirling estimate -log(pi * 50)/200.
        let gap = lemma1_gap(&one_plus_x2(), 1.0, 100).unwrap();
        let stirling = -(std::f64::consts::PI * 50.0).ln() / 200.0;
        assert!((gap - stirling).abs() < 5e-4, "gap {gap} vs {stirling}");
    }

    #[test]
    fn odd_total_weight_is_structural_zero() {
        let err = lemma1_gap(&one_plus_x2(), 1.0, 101).unwrap_err();
        assert!(matches!(err, Error::StructuralZero(_)));
    }

    #[test]
    fn gap_magnitude_decreases_with_l() {
        let wef = one_plus_x2();
        let gaps: Vec<f64> = [50u64, 100, 200]
            .iter()
            .map(|&l| lemma1_gap(&wef, 1.0, l).unwrap().abs())
            .collect();
        assert!(gaps[1] < gaps[0] && gaps[2] < gaps[1], "{gaps:?}");
    }

    #[test]
    fn spc7_gap_small_at_moderate_l() {
        let wef = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().weight_enumerator();
        let gap = lemma1_gap(&wef, 2.0, 100).unwrap();
        assert!(gap.abs() < 0.05, "gap = {gap}");
    }

    #[test]
    fn bivariate_ray_case_matches_central_binomial() {
        // B = 1 + x y^2 at xi = 1/2, theta = 1: the coefficient is C(l, l/2)
        // and the limit is log 2 (x0 = y0 = 1 solve the pair by symmetry).
        let io = BinaryLinearCode::repetition(2).unwrap().io_weight_enumerator();
        let gap = lemma2_gap(&io, 0.5, 1.0, 40).unwrap();
        let uni = lemma1_gap(&WeightEnumerator::from_coeffs(vec![1, 1]), 0.5, 40).unwrap();
        assert!((gap - uni).abs() < 1e-12);
    }

    #[test]
    fn repetition_locked_ratio_structural_zero() {
        // Output weight is locked to 3x the input weight for repetition-3.
        let io = BinaryLinearCode::repetition(3).unwrap().io_weight_enumerator();
        let err = lemma2_gap(&io, 1.0 / 3.0, 2.0 / 3.0, 9).unwrap_err();
        assert!(matches!(err, Error::StructuralZero(_)));
        assert!(lemma2_gap(&io, 1.0 / 3.0, 1.0, 9).is_ok());
    }

    #[test]
    fn spc7_bivariate_gap_decreases() {
        let io = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().io_weight_enumerator();
        let g1 = lemma2_gap(&io, 1.0 / 7.0, 2.0 / 7.0, 70).unwrap().abs();
        let g2 = lemma2_gap(&io, 1.0 / 7.0, 2.0 / 7.0, 140).unwrap().abs();
        assert!(g2 < g1, "{g1} -> {g2}");
    }

    #[test]
    fn non_integer_weight_rejected() {
        let err = lemma1_gap(&one_plus_x2(), 0.3, 10).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
    }
}
