//! Exact arbitrary-precision polynomial arithmetic for coefficient extraction.
//!
//! Everything here stays in big integers; no floating point touches the exact
//! path. Powers are extracted through the expansion p^l = sum_j C(l,j) (p-1)^j
//! when the constant term is 1 (true for every enumerator), which keeps both
//! memory and coefficient growth tied to the target degree instead of l.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2::{IOWeightEnumerator, WeightEnumerator};

/// Desk-scale guard on l * deg(p) for power/coefficient extraction.
pub const POW_DEGREE_LIMIT: u64 = 50_000;

/// Dense univariate polynomial with nonnegative big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigUint>,
}

impl UniPoly {
    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn one() -> Self {
        Self { coeffs: vec![BigUint::one()] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> BigUint {
        self.coeffs.get(d).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Product truncated at `max_deg`.
    pub fn mul_trunc(&self, other: &UniPoly, max_deg: usize) -> UniPoly {
        let out_deg = max_deg.min(self.degree() + other.degree());
        let mut out = vec![BigUint::zero(); out_deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > out_deg {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > out_deg {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Polynomial with the constant term removed.
    fn tail(&self) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = BigUint::zero();
        UniPoly::from_coeffs(coeffs)
    }
}

impl From<&WeightEnumerator> for UniPoly {
    fn from(wef: &WeightEnumerator) -> Self {
        UniPoly::from_u64(wef.coeffs())
    }
}

/// Dense bivariate polynomial; `coeffs[i][j]` is the coefficient of x^i y^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<Vec<BigUint>>,
}

impl BiPoly {
    pub fn from_coeffs(coeffs: Vec<Vec<BigUint>>) -> Self {
        Self { coeffs }
    }

    pub fn from_u64(coeffs: &[Vec<u64>]) -> Self {
        Self {
            coeffs: coeffs
                .iter()
                .map(|row| row.iter().map(|&c| BigUint::from(c)).collect())
                .collect(),
        }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![vec![BigUint::one()]] }
    }

    pub fn degree_x(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.iter().map(|row| row.len()).max().unwrap_or(1) - 1
    }

    pub fn coeff(&self, dx: usize, dy: usize) -> BigUint {
        self.coeffs
            .get(dx)
            .and_then(|row| row.get(dy))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    /// Product truncated at bidegree (`max_x`, `max_y`).
    pub fn mul_trunc(&self, other: &BiPoly, max_x: usize, max_y: usize) -> BiPoly {
        let out_x = max_x.min(self.degree_x() + other.degree_x());
        let out_y = max_y.min(self.degree_y() + other.degree_y());
        let mut out = vec![vec![BigUint::zero(); out_y + 1]; out_x + 1];
        for (ix, row_a) in self.coeffs.iter().enumerate() {
            if ix > out_x {
                break;
            }
            for (iy, a) in row_a.iter().enumerate() {
                if iy > out_y {
                    break;
                }
                if a.is_zero() {
                    continue;
                }
                for (jx, row_b) in other.coeffs.iter().enumerate() {
                    if ix + jx > out_x {
                        break;
                    }
                    for (jy, b) in row_b.iter().enumerate() {
                        if iy + jy > out_y {
                            break;
                        }
                        if b.is_zero() {
                            continue;
                        }
                        out[ix + jx][iy + jy] += a * b;
                    }
                }
            }
        }
        BiPoly { coeffs: out }
    }

    fn tail(&self) -> BiPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs[0][0] = BigUint::zero();
        BiPoly { coeffs }
    }
}

impl From<&IOWeightEnumerator> for BiPoly {
    fn from(io: &IOWeightEnumerator) -> Self {
        BiPoly::from_u64(io.rows())
    }
}

fn check_pow_guard(ell: u64, deg: usize, what: &str) -> Result<()> {
    let load = ell.saturating_mul(deg as u64);
    if load > POW_DEGREE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "{what}: l*deg = {ell}*{deg} exceeds the desk-scale bound {POW_DEGREE_LIMIT}"
        )));
    }
    Ok(())
}

/// Exact coefficient of x^w in p(x)^l.
pub fn pow_coeff(p: &UniPoly, ell: u64, w: usize) -> Result<BigUint> {
    check_pow_guard(ell, p.degree(), "pow_coeff")?;
    if w as u64 > ell * p.degree() as u64 {
        return Ok(BigUint::zero());
    }
    if p.coeff(0).is_one() {
        // p^l = sum_j C(l, j) (p - 1)^j; the tail has positive minimum degree,
        // so only finitely many j reach degree w.
        let tail = p.tail();
        let mut acc = if w == 0 { BigUint::one() } else { BigUint::zero() };
        let mut power = UniPoly::one();
        let mut j = 0u64;
        loop {
            j += 1;
            if j > ell || j > w as u64 {
                break;
            }
            power = power.mul_trunc(&tail, w);
            if power.is_zero() {
                break;
            }
            let c = power.coeff(w);
            if !c.is_zero() {
                acc += binomial(BigUint::from(ell), BigUint::from(j)) * c;
            }
        }
        Ok(acc)
    } else {
        Ok(pow_trunc(p, ell, w).coeff(w))
    }
}

/// Exact coefficient of x^wx y^wy in p(x,y)^l.
pub fn pow_coeff_bivar(p: &BiPoly, ell: u64, wx: usize, wy: usize) -> Result<BigUint> {
    check_pow_guard(ell, p.degree_x().max(p.degree_y()), "pow_coeff_bivar")?;
    if wx as u64 > ell * p.degree_x() as u64 || wy as u64 > ell * p.degree_y() as u64 {
        return Ok(BigUint::zero());
    }
    if p.coeff(0, 0).is_one() {
        let tail = p.tail();
        let mut acc = if wx == 0 && wy == 0 { BigUint::one() } else { BigUint::zero() };
        let mut power = BiPoly::one();
        let mut j = 0u64;
        loop {
            j += 1;
            if j > ell || j > (wx + wy) as u64 {
                break;
            }
            power = power.mul_trunc(&tail, wx, wy);
            if power.is_zero() {
                break;
            }
            let c = power.coeff(wx, wy);
            if !c.is_zero() {
                acc += binomial(BigUint::from(ell), BigUint::from(j)) * c;
            }
        }
        Ok(acc)
    } else {
        Ok(pow_trunc_bivar(p, ell, wx, wy).coeff(wx, wy))
    }
}

/// Truncated binary exponentiation; fallback for non-unit constant terms.
fn pow_trunc(p: &UniPoly, mut ell: u64, max_deg: usize) -> UniPoly {
    let mut result = UniPoly::one();
    let mut base = p.mul_trunc(&UniPoly::one(), max_deg);
    while ell > 0 {
        if ell & 1 == 1 {
            result = result.mul_trunc(&base, max_deg);
        }
        ell >>= 1;
        if ell > 0 {
            base = base.mul_trunc(&base, max_deg);
        }
    }
    result
}

fn pow_trunc_bivar(p: &BiPoly, mut ell: u64, max_x: usize, max_y: usize) -> BiPoly {
    let mut result = BiPoly::one();
    let mut base = p.mul_trunc(&BiPoly::one(), max_x, max_y);
    while ell > 0 {
        if ell & 1 == 1 {
            result = result.mul_trunc(&base, max_x, max_y);
        }
        ell >>= 1;
        if ell > 0 {
            base = base.mul_trunc(&base, max_x, max_y);
        }
    }
    result
}

/// Natural log of a big integer (negative infinity for zero).
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        let mut v = 0u64;
        for (i, d) in x.to_u64_digits().iter().enumerate() {
            v |= d << (64 * i);
        }
        return (v as f64).ln();
    }
    // Take the top 53 bits as a mantissa and account for the shift.
    let shift = bits - 53;
    let top = x >> (shift as usize);
    let mut v = 0u64;
    for (i, d) in top.to_u64_digits().iter().enumerate() {
        v |= d << (64 * i);
    }
    (v as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BinaryLinearCode, SpcForm};

    #[test]
    fn binomial_coefficient_from_power() {
        let p = UniPoly::from_u64(&[1, 0, 1]); // 1 + x^2
        assert_eq!(pow_coeff(&p, 10, 10).unwrap(), BigUint::from(252u32));
    }

    #[test]
    fn single_power_reads_off_coefficient() {
        let wef = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().weight_enumerator();
        let p = UniPoly::from(&wef);
        assert_eq!(pow_coeff(&p, 1, 4).unwrap(), BigUint::from(35u32));
    }

    #[test]
    fn one_plus_x_to_fifth() {
        let p = UniPoly::from_u64(&[1, 1]);
        assert_eq!(pow_coeff(&p, 5, 2).unwrap(), BigUint::from(10u32));
    }

    #[test]
    fn bivar_choose_two_of_four() {
        // (1 + x y^2)^4, coefficient of x^2 y^4.
        let p = BiPoly::from_u64(&[vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(pow_coeff_bivar(&p, 4, 2, 4).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn bivar_single_power() {
        let io = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().io_weight_enumerator();
        let p = BiPoly::from(&io);
        assert_eq!(pow_coeff_bivar(&p, 1, 1, 2).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn bivar_constant_coefficient_is_one() {
        let io = BinaryLinearCode::hamming_7_4().io_weight_enumerator();
        let p = BiPoly::from(&io);
        assert_eq!(pow_coeff_bivar(&p, 123, 0, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn zero_coefficient_beyond_reach() {
        let p = UniPoly::from_u64(&[1, 1]);
        assert_eq!(pow_coeff(&p, 3, 4).unwrap(), BigUint::zero());
    }

    #[test]
    fn binomial_path_matches_repeated_squaring() {
        let polys = [
            UniPoly::from_u64(&[1, 0, 2, 1]),
            UniPoly::from_u64(&[1, 3, 0, 0, 5]),
        ];
        for p in &polys {
            for ell in [1u64, 2, 7, 20] {
                for w in 0..=12usize {
                    assert_eq!(
                        pow_coeff(p, ell, w).unwrap(),
                        pow_trunc(p, ell, w).coeff(w),
                        "p={p:?} l={ell} w={w}"
                    );
                }
            }
        }
        let b = BiPoly::from_u64(&[vec![1, 0, 1], vec![0, 2, 0], vec![1, 0, 0]]);
        for ell in [1u64, 3, 9] {
            for wx in 0..=6usize {
                for wy in 0..=6usize {
                    assert_eq!(
                        pow_coeff_bivar(&b, ell, wx, wy).unwrap(),
                        pow_trunc_bivar(&b, ell, wx, wy).coeff(wx, wy)
                    );
                }
            }
        }
    }

    #[test]
    fn guard_rejects_oversized_products() {
        let p = UniPoly::from_u64(&[1, 0, 1]);
        let err = pow_coeff(&p, POW_DEGREE_LIMIT, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn normalized_log_coeff_approaches_limit_from_below() {
        // For 1 + x at xi = 1/2 the limit is log 2; the finite-l value
        // (1/l) log C(l, l/2) increases towards it.
        let p = UniPoly::from_u64(&[1, 1]);
        let limit = std::f64::consts::LN_2;
        let gaps: Vec<f64> = [8u64, 16, 32, 64]
            .iter()
            .map(|&ell| {
                let c = pow_coeff(&p, ell, (ell / 2) as usize).unwrap();
                (ln_biguint(&c) / ell as f64 - limit).abs()
            })
            .collect();
        for pair in gaps.windows(2) {
            assert!(pair[1] < pair[0], "gaps not decreasing: {gaps:?}");
        }
    }

    #[test]
    fn ln_biguint_matches_f64_for_moderate_values() {
        for v in [1u64, 2, 1000, 123_456_789_012_345] {
            let got = ln_biguint(&BigUint::from(v));
            assert!((got - (v as f64).ln()).abs() < 1e-12);
        }
        // 2^200: ln should be 200 ln 2.
        let big = BigUint::one() << 200;
        assert!((ln_biguint(&big) - 200.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }
}
