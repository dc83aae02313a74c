//! Numerically stable evaluation of enumerator functions.
//!
//! Enumerators are evaluated as log-sum-exp over their monomials in
//! (ln x, ln y) coordinates, so solvers can probe arguments far outside the
//! dynamic range of direct summation. Logarithmic derivatives come out as
//! moments of the weights under the induced softmax distribution:
//! z A'(z)/A(z) is the mean weight, and its derivative in ln z is the
//! variance, which also supplies analytic Jacobians.

use crate::error::{Error, Result};
use crate::gf2::{IOWeightEnumerator, WeightEnumerator};

/// Natural-log binary entropy, continuously extended to 0 at the endpoints.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("binary_entropy: p = {p} outside [0, 1]")));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.ln() - (1.0 - p) * (1.0 - p).ln())
}

/// ln(1 + e^t) without overflow.
pub(crate) fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// Logistic function 1 / (1 + e^-t).
pub(crate) fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Binary entropy of sigmoid(t), stable for large |t|.
pub(crate) fn entropy_of_sigmoid(t: f64) -> f64 {
    let s = sigmoid(t);
    s * softplus(-t) + (1.0 - s) * softplus(t)
}

/// Univariate enumerator prepared for log-domain evaluation.
#[derive(Debug, Clone)]
pub struct WefEvaluator {
    /// (weight, ln coefficient) for every nonzero coefficient.
    terms: Vec<(f64, f64)>,
    max_weight: f64,
    min_positive_weight: f64,
}

impl WefEvaluator {
    pub fn new(wef: &WeightEnumerator) -> Self {
        let terms: Vec<(f64, f64)> = wef
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(u, &c)| (u as f64, (c as f64).ln()))
            .collect();
        let max_weight = terms.last().map(|t| t.0).unwrap_or(0.0);
        let min_positive_weight = terms
            .iter()
            .find(|t| t.0 > 0.0)
            .map(|t| t.0)
            .unwrap_or(f64::INFINITY);
        Self { terms, max_weight, min_positive_weight }
    }

    pub fn max_weight(&self) -> f64 {
        self.max_weight
    }

    pub fn min_positive_weight(&self) -> f64 {
        self.min_positive_weight
    }

    /// ln A(z) at ln z.
    pub fn log_value(&self, ln_z: f64) -> f64 {
        let mut m = f64::NEG_INFINITY;
        for &(u, lc) in &self.terms {
            m = m.max(lc + u * ln_z);
        }
        let mut s = 0.0;
        for &(u, lc) in &self.terms {
            s += (lc + u * ln_z - m).exp();
        }
        m + s.ln()
    }

    /// Mean weight under the softmax weights: z A'(z)/A(z).
    pub fn mean(&self, ln_z: f64) -> f64 {
        self.mean_and_var(ln_z).0
    }

    /// Mean and variance of the weight; the variance is the derivative of the
    /// mean with respect to ln z.
    pub fn mean_and_var(&self, ln_z: f64) -> (f64, f64) {
        let mut m = f64::NEG_INFINITY;
        for &(u, lc) in &self.terms {
            m = m.max(lc + u * ln_z);
        }
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &(u, lc) in &self.terms {
            let w = (lc + u * ln_z - m).exp();
            s0 += w;
            s1 += w * u;
            s2 += w * u * u;
        }
        let mean = s1 / s0;
        (mean, (s2 / s0 - mean * mean).max(0.0))
    }

    /// Solves mean(ln z) = target by bisection; the mean is strictly
    /// increasing and spans (0, max_weight).
    pub fn solve_mean(&self, target: f64) -> Result<f64> {
        if !(target > 0.0 && target < self.max_weight) {
            return Err(Error::Domain(format!(
                "solve_mean: target {target} outside (0, {})",
                self.max_weight
            )));
        }
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        while self.mean(lo) > target {
            lo *= 2.0;
            if lo < -1e6 {
                return Err(Error::Domain("solve_mean: no lower bracket".into()));
            }
        }
        while self.mean(hi) < target {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::Domain("solve_mean: no upper bracket".into()));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.mean(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * (1.0 + hi.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Joint moments of (input weight, output weight) under the softmax weights.
#[derive(Debug, Clone, Copy)]
pub struct BivarMoments {
    pub mean_u: f64,
    pub mean_v: f64,
    pub var_u: f64,
    pub var_v: f64,
    pub cov: f64,
}

/// Bivariate enumerator prepared for log-domain evaluation.
#[derive(Debug, Clone)]
pub struct IowefEvaluator {
    /// (input weight, output weight, ln coefficient) for nonzero entries.
    terms: Vec<(f64, f64, f64)>,
    max_u: f64,
    max_v: f64,
    /// Some(c) when every term with u > 0 lies on the ray v = c u; the pair of
    /// moment equations then degenerates to one dimension.
    ray_slope: Option<f64>,
}

impl IowefEvaluator {
    pub fn new(io: &IOWeightEnumerator) -> Self {
        let mut terms = Vec::new();
        for (u, row) in io.rows().iter().enumerate() {
            for (v, &c) in row.iter().enumerate() {
                if c > 0 {
                    terms.push((u as f64, v as f64, (c as f64).ln()));
                }
            }
        }
        let max_u = terms.iter().map(|t| t.0).fold(0.0, f64::max);
        let max_v = terms.iter().map(|t| t.1).fold(0.0, f64::max);
        let positive: Vec<&(f64, f64, f64)> = terms.iter().filter(|t| t.0 > 0.0).collect();
        let ray_slope = if positive.is_empty() {
            None
        } else {
            let c = positive[0].1 / positive[0].0;
            positive
                .iter()
                .all(|t| (t.1 - c * t.0).abs() < 1e-9)
                .then_some(c)
        };
        Self { terms, max_u, max_v, ray_slope }
    }

    pub fn max_u(&self) -> f64 {
        self.max_u
    }

    pub fn max_v(&self) -> f64 {
        self.max_v
    }

    pub fn ray_slope(&self) -> Option<f64> {
        self.ray_slope
    }

    /// ln B(x, y) at (ln x, ln y).
    pub fn log_value(&self, ln_x: f64, ln_y: f64) -> f64 {
        let mut m = f64::NEG_INFINITY;
        for &(u, v, lc) in &self.terms {
            m = m.max(lc + u * ln_x + v * ln_y);
        }
        let mut s = 0.0;
        for &(u, v, lc) in &self.terms {
            s += (lc + u * ln_x + v * ln_y - m).exp();
        }
        m + s.ln()
    }

    /// (x dB/dx / B, y dB/dy / B) as weight means.
    pub fn means(&self, ln_x: f64, ln_y: f64) -> (f64, f64) {
        let m = self.moments(ln_x, ln_y);
        (m.mean_u, m.mean_v)
    }

    pub fn moments(&self, ln_x: f64, ln_y: f64) -> BivarMoments {
        let mut m = f64::NEG_INFINITY;
        for &(u, v, lc) in &self.terms {
            m = m.max(lc + u * ln_x + v * ln_y);
        }
        let (mut s0, mut su, mut sv, mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for &(u, v, lc) in &self.terms {
            let w = (lc + u * ln_x + v * ln_y - m).exp();
            s0 += w;
            su += w * u;
            sv += w * v;
            suu += w * u * u;
            svv += w * v * v;
            suv += w * u * v;
        }
        let mean_u = su / s0;
        let mean_v = sv / s0;
        BivarMoments {
            mean_u,
            mean_v,
            var_u: (suu / s0 - mean_u * mean_u).max(0.0),
            var_v: (svv / s0 - mean_v * mean_v).max(0.0),
            cov: suv / s0 - mean_u * mean_v,
        }
    }

    /// Solves mean_u = xi along the ray support (v = c u) in the combined
    /// variable s = x y^c; returns ln s.
    pub fn solve_ray_mean(&self, xi: f64) -> Result<f64> {
        if self.ray_slope.is_none() {
            return Err(Error::Domain("solve_ray_mean: support is not a ray".into()));
        }
        // Along the ray the enumerator is univariate in s = x y^c with weight u.
        let terms: Vec<(f64, f64)> = self.terms.iter().map(|&(u, _, lc)| (u, lc)).collect();
        let min_positive_weight = terms
            .iter()
            .find(|t| t.0 > 0.0)
            .map(|t| t.0)
            .unwrap_or(f64::INFINITY);
        let uni = WefEvaluator { terms, max_weight: self.max_u, min_positive_weight };
        uni.solve_mean(xi)
    }

    /// Solves the pair mean_u = xi, mean_v = theta by damped Newton, seeded
    /// by two one-dimensional bisections.
    pub fn solve_means(&self, xi: f64, theta: f64) -> Result<(f64, f64)> {
        if self.ray_slope.is_some() {
            return Err(Error::Domain(
                "solve_means: ray support makes the pair degenerate".into(),
            ));
        }
        if !(xi > 0.0 && xi < self.max_u) || !(theta > 0.0 && theta < self.max_v) {
            return Err(Error::Domain(format!(
                "solve_means: target ({xi}, {theta}) outside (0,{}) x (0,{})",
                self.max_u, self.max_v
            )));
        }

        // Seed: fix ln y = 0 and bisect ln x for mean_u = xi (monotone), then
        // bisect ln y for mean_v = theta at that ln x (monotone).
        let mut lx = self.bisect_coord(true, 0.0, xi)?;
        let mut ly = self.bisect_coord(false, lx, theta)?;

        let mut best = f64::INFINITY;
        for _ in 0..200 {
            let m = self.moments(lx, ly);
            let r = [m.mean_u - xi, m.mean_v - theta];
            let norm = r[0].abs().max(r[1].abs());
            if norm < 1e-13 * (1.0 + xi.abs() + theta.abs()) {
                return Ok((lx, ly));
            }
            best = best.min(norm);
            let det = m.var_u * m.var_v - m.cov * m.cov;
            if det.abs() < 1e-300 {
                return Err(Error::Domain(
                    "solve_means: singular moment Jacobian (degenerate support)".into(),
                ));
            }
            let dx = -(m.var_v * r[0] - m.cov * r[1]) / det;
            let dy = -(-m.cov * r[0] + m.var_u * r[1]) / det;
            let mut step = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                let (nx, ny) = (lx + step * dx, ly + step * dy);
                let mm = self.moments(nx, ny);
                let nn = (mm.mean_u - xi).abs().max((mm.mean_v - theta).abs());
                if nn < norm {
                    lx = nx;
                    ly = ny;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                return Err(Error::Domain(format!(
                    "solve_means: stalled at residual {best:.3e} for target ({xi}, {theta})"
                )));
            }
        }
        Err(Error::Domain(format!(
            "solve_means: not converged for target ({xi}, {theta}), best residual {best:.3e}"
        )))
    }

    fn bisect_coord(&self, on_x: bool, other: f64, target: f64) -> Result<f64> {
        let eval = |t: f64| {
            let (lx, ly) = if on_x { (t, other) } else { (other, t) };
            let (mu, mv) = self.means(lx, ly);
            if on_x {
                mu
            } else {
                mv
            }
        };
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        while eval(lo) > target {
            lo *= 2.0;
            if lo < -1e6 {
                return Err(Error::Domain("bisect_coord: no lower bracket".into()));
            }
        }
        while eval(hi) < target {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::Domain("bisect_coord: no upper bracket".into()));
            }
        }
        for _ in 0..120 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// ln A(z) for z > 0.
pub fn log_wef(wef: &WeightEnumerator, z: f64) -> Result<f64> {
    require_positive(z, "z")?;
    Ok(WefEvaluator::new(wef).log_value(z.ln()))
}

/// z A'(z)/A(z) for z > 0.
pub fn dlog_wef(wef: &WeightEnumerator, z: f64) -> Result<f64> {
    require_positive(z, "z")?;
    Ok(WefEvaluator::new(wef).mean(z.ln()))
}

/// ln B(x, y) for x, y > 0.
pub fn log_iowef(io: &IOWeightEnumerator, x: f64, y: f64) -> Result<f64> {
    require_positive(x, "x")?;
    require_positive(y, "y")?;
    Ok(IowefEvaluator::new(io).log_value(x.ln(), y.ln()))
}

/// x dB/dx(x,y) / B(x,y) for x, y > 0.
pub fn dlog_iowef_x(io: &IOWeightEnumerator, x: f64, y: f64) -> Result<f64> {
    require_positive(x, "x")?;
    require_positive(y, "y")?;
    Ok(IowefEvaluator::new(io).means(x.ln(), y.ln()).0)
}

/// y dB/dy(x,y) / B(x,y) for x, y > 0.
pub fn dlog_iowef_y(io: &IOWeightEnumerator, x: f64, y: f64) -> Result<f64> {
    require_positive(x, "x")?;
    require_positive(y, "y")?;
    Ok(IowefEvaluator::new(io).means(x.ln(), y.ln()).1)
}

fn require_positive(v: f64, name: &str) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {v}")))
    }
}
