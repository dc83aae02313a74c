//! Growth-rate evaluation through the 4x4 saddle-point system.
//!
//! For a relative weight alpha the growth rate is read off a stationary point
//! (x0, y0, z0, beta) of four coupled equations built from logarithmic
//! derivatives of the component-code enumerators. The solver works in the
//! transformed variables (ln x0, ln y0, ln z0, logit(beta * int_lambda)):
//! iterates stay in the positive feasible region automatically, the Jacobian
//! is assembled from softmax variances and covariances, and the fourth
//! equation becomes linear (t = ln y0 + ln z0). Sweeps warm-start each grid
//! point from the previous solution; the cold-start fallback is a nested
//! bisection scan over beta.

use std::time::{Duration, Instant};

use crate::ensemble::{AsymptoticClass, Ensemble};
use crate::error::{Error, Result, SolverFailure};
use crate::eval::{entropy_of_sigmoid, sigmoid, softplus};

/// Newton residual targets: iterate to `RESIDUAL_TARGET`, accept a point if
/// every equation residual is below `RESIDUAL_ACCEPT`.
pub const RESIDUAL_TARGET: f64 = 1e-12;
pub const RESIDUAL_ACCEPT: f64 = 1e-10;

const MAX_NEWTON_STEPS: usize = 200;
const MAX_HALVINGS: usize = 60;

/// A converged solution of the saddle system at one relative weight.
#[derive(Debug, Clone)]
pub struct SaddlePoint {
    pub alpha: f64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    /// Edge-weight ratio (edge weight per VN).
    pub beta: f64,
    /// Residuals of the four equations at the solution.
    pub residuals: [f64; 4],
    /// Growth rate from the closed form.
    pub g_value: f64,
    /// Growth rate from the pre-simplification (entropy) form; must agree
    /// with `g_value` to high accuracy at any converged point.
    pub g_entropy_form: f64,
    pub iterations: usize,
}

impl SaddlePoint {
    pub fn residual_max(&self) -> f64 {
        self.residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()))
    }
}

/// One entry of a sweep; failures are isolated per point.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    pub alpha: f64,
    pub result: std::result::Result<SaddlePoint, String>,
}

/// A sampled growth-rate curve plus timing metadata.
#[derive(Debug, Clone)]
pub struct GrowthCurve {
    pub points: Vec<CurvePoint>,
    pub elapsed: Duration,
}

impl GrowthCurve {
    pub fn converged(&self) -> usize {
        self.points.iter().filter(|p| p.result.is_ok()).count()
    }

    pub fn all_converged(&self) -> bool {
        self.converged() == self.points.len()
    }
}

/// Ensemble relative minimum distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaStar {
    /// Classified asymptotically bad by the weight-2 criterion.
    Zero,
    /// Positive crossing of the growth rate located by scan and bisection.
    Crossing(f64),
}

impl AlphaStar {
    pub fn value(&self) -> f64 {
        match self {
            AlphaStar::Zero => 0.0,
            AlphaStar::Crossing(a) => *a,
        }
    }
}

/// Solver state in transformed coordinates.
#[derive(Debug, Clone, Copy)]
struct State {
    lx: f64,
    ly: f64,
    lz: f64,
    t: f64,
}

struct Solver<'a> {
    ens: &'a Ensemble,
    /// int_rho / int_lambda.
    ratio: f64,
    int_lambda: f64,
}

impl<'a> Solver<'a> {
    fn new(ens: &'a Ensemble) -> Self {
        Solver {
            ens,
            ratio: ens.int_rho() / ens.int_lambda(),
            int_lambda: ens.int_lambda(),
        }
    }

    fn beta(&self, t: f64) -> f64 {
        sigmoid(t) / self.int_lambda
    }

    /// Aggregated CN log-slope and its derivative in ln z.
    fn cn_mean_var(&self, lz: f64) -> (f64, f64) {
        let mut mean = 0.0;
        let mut var = 0.0;
        for (g, t) in self.ens.gamma().iter().zip(self.ens.cn_types()) {
            let (m, v) = t.evaluator().mean_and_var(lz);
            mean += g * m;
            var += g * v;
        }
        (mean, var)
    }

    /// Aggregated VN moments weighted by the type fractions.
    fn vn_moments(&self, lx: f64, ly: f64) -> (f64, f64, f64, f64, f64) {
        let (mut eu, mut ev, mut vu, mut vv, mut cuv) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for (d, t) in self.ens.delta().iter().zip(self.ens.vn_types()) {
            let m = t.evaluator().moments(lx, ly);
            eu += d * m.mean_u;
            ev += d * m.mean_v;
            vu += d * m.var_u;
            vv += d * m.var_v;
            cuv += d * m.cov;
        }
        (eu, ev, vu, vv, cuv)
    }

    /// Residuals in solver form; the fourth equation is linear here.
    fn residuals(&self, alpha: f64, s: &State) -> [f64; 4] {
        let beta = self.beta(s.t);
        let (cn_mean, _) = self.cn_mean_var(s.lz);
        let (eu, ev, ..) = self.vn_moments(s.lx, s.ly);
        [
            self.ratio * cn_mean - beta,
            eu - alpha,
            ev - beta,
            s.ly + s.lz - s.t,
        ]
    }

    /// Residuals of the four equations in their original form.
    fn original_residuals(&self, alpha: f64, s: &State) -> [f64; 4] {
        let beta = self.beta(s.t);
        let (cn_mean, _) = self.cn_mean_var(s.lz);
        let (eu, ev, ..) = self.vn_moments(s.lx, s.ly);
        // (beta int_lambda)(1 + y z) - y z, written to stay finite for large
        // y z: sigma(t) - exp(ly + lz - softplus(t)).
        let r4 = sigmoid(s.t) - (s.ly + s.lz - softplus(s.t)).exp();
        [self.ratio * cn_mean - beta, eu - alpha, ev - beta, r4]
    }

    fn jacobian(&self, s: &State) -> [[f64; 4]; 4] {
        let (_, cn_var) = self.cn_mean_var(s.lz);
        let (_, _, vu, vv, cuv) = self.vn_moments(s.lx, s.ly);
        let sig = sigmoid(s.t);
        let dbeta = sig * (1.0 - sig) / self.int_lambda;
        [
            [0.0, 0.0, self.ratio * cn_var, -dbeta],
            [vu, cuv, 0.0, 0.0],
            [cuv, vv, 0.0, -dbeta],
            [0.0, 1.0, 1.0, -1.0],
        ]
    }

    fn norm(r: &[f64; 4]) -> f64 {
        r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    fn clamp(s: &mut State) {
        s.lx = s.lx.clamp(-600.0, 600.0);
        s.ly = s.ly.clamp(-600.0, 600.0);
        s.lz = s.lz.clamp(-600.0, 600.0);
        s.t = s.t.clamp(-600.0, 600.0);
    }

    /// Damped Newton iteration from a given start.
    fn newton(&self, alpha: f64, mut s: State) -> (State, usize, f64) {
        let mut r = self.residuals(alpha, &s);
        let mut norm = Self::norm(&r);
        let mut iters = 0;
        while iters < MAX_NEWTON_STEPS && norm > RESIDUAL_TARGET {
            iters += 1;
            let j = self.jacobian(&s);
            let Some(step) = solve_linear4(j, [-r[0], -r[1], -r[2], -r[3]]) else {
                break;
            };
            let mut scale = 1.0;
            let mut advanced = false;
            for _ in 0..MAX_HALVINGS {
                let mut trial = State {
                    lx: s.lx + scale * step[0],
                    ly: s.ly + scale * step[1],
                    lz: s.lz + scale * step[2],
                    t: s.t + scale * step[3],
                };
                Self::clamp(&mut trial);
                let tr = self.residuals(alpha, &trial);
                let tn = Self::norm(&tr);
                if tn.is_finite() && tn < norm {
                    s = trial;
                    r = tr;
                    norm = tn;
                    advanced = true;
                    break;
                }
                scale *= 0.5;
            }
            if !advanced {
                break;
            }
        }
        (s, iters, norm)
    }

    /// Solves the z-equation for a given beta; the left side is strictly
    /// increasing in ln z and spans (0, 1/int_lambda).
    fn solve_lz(&self, beta: f64) -> Option<f64> {
        let target = beta / self.ratio;
        bisect_increasing(|lz| self.cn_mean_var(lz).0, target)
    }

    /// Nested-bisection scan producing Newton starting points. For each beta
    /// on a logit grid: z from the z-equation, y from the coupling equation,
    /// then every root in x of the y-equation; the x-equation mismatch ranks
    /// the candidates and sign changes across the grid are refined.
    fn cold_candidates(&self, alpha: f64) -> (Vec<State>, String) {
        let mut raw: Vec<(f64, State)> = Vec::new();
        let mut primary: Vec<(f64, Option<f64>)> = Vec::new();
        let nt = 131;
        for i in 0..nt {
            let t = -40.0 + 65.0 * i as f64 / (nt - 1) as f64;
            let mut first_outer = None;
            if let Some(states) = self.states_for_t(alpha, t) {
                for (outer, st) in states {
                    if first_outer.is_none() {
                        first_outer = Some(outer);
                    }
                    raw.push((outer.abs(), st));
                }
            }
            primary.push((t, first_outer));
        }

        let mut refined: Vec<State> = Vec::new();
        for w in primary.windows(2) {
            if let ((t0, Some(o0)), (t1, Some(o1))) = (&w[0], &w[1]) {
                if o0 * o1 < 0.0 {
                    if let Some(st) = self.refine_t_bracket(alpha, *t0, *t1) {
                        refined.push(st);
                    }
                }
            }
        }

        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let detail = format!(
            "scan: {} candidates, best x-equation mismatch {:.3e}",
            raw.len(),
            raw.first().map(|c| c.0).unwrap_or(f64::NAN)
        );
        let mut out = refined;
        out.extend(raw.into_iter().take(8).map(|(_, s)| s));
        (out, detail)
    }

    /// All candidate states at a fixed t: roots in lx of the y-equation.
    fn states_for_t(&self, alpha: f64, t: f64) -> Option<Vec<(f64, State)>> {
        let beta = self.beta(t);
        let lz = self.solve_lz(beta)?;
        let ly = t - lz;
        let f = |lx: f64| self.vn_moments(lx, ly).1 - beta;
        let mut out = Vec::new();
        let lo = -250.0;
        let hi = 50.0;
        let steps = 150;
        let mut prev_x = lo;
        let mut prev_f = f(lo);
        for i in 1..=steps {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            let fx = f(x);
            if prev_f == 0.0 || prev_f * fx < 0.0 {
                let (mut a, mut b) = (prev_x, x);
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    if f(a) * f(m) <= 0.0 {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                let lx = 0.5 * (a + b);
                let outer = self.vn_moments(lx, ly).0 - alpha;
                out.push((outer, State { lx, ly, lz, t }));
            }
            prev_x = x;
            prev_f = fx;
        }
        Some(out)
    }

    /// Bisects t on a sign change of the x-equation mismatch.
    fn refine_t_bracket(&self, alpha: f64, mut t0: f64, mut t1: f64) -> Option<State> {
        let outer_at = |t: f64| -> Option<(f64, State)> {
            self.states_for_t(alpha, t).and_then(|v| v.into_iter().next())
        };
        let (mut o0, _) = outer_at(t0)?;
        for _ in 0..60 {
            let tm = 0.5 * (t0 + t1);
            let (om, _) = outer_at(tm)?;
            if o0 * om <= 0.0 {
                t1 = tm;
            } else {
                t0 = tm;
                o0 = om;
            }
        }
        outer_at(0.5 * (t0 + t1)).map(|(_, s)| s)
    }

    /// Both closed forms of the growth rate at a solution.
    fn g_forms(&self, alpha: f64, s: &State) -> (f64, f64) {
        let beta = self.beta(s.t);
        let log_b: f64 = self
            .ens
            .delta()
            .iter()
            .zip(self.ens.vn_types())
            .map(|(d, t)| d * t.evaluator().log_value(s.lx, s.ly))
            .sum();
        let log_a: f64 = self
            .ens
            .gamma()
            .iter()
            .zip(self.ens.cn_types())
            .map(|(g, t)| g * t.evaluator().log_value(s.lz))
            .sum();
        let common = log_b - alpha * s.lx + self.ratio * log_a;
        let g1 = common - softplus(s.t) / self.int_lambda;
        let g2 = common - beta * s.ly - beta * s.lz
            - entropy_of_sigmoid(s.t) / self.int_lambda;
        (g1, g2)
    }

    fn point_from_state(&self, alpha: f64, s: &State, iterations: usize) -> SaddlePoint {
        let (g_value, g_entropy_form) = self.g_forms(alpha, s);
        SaddlePoint {
            alpha,
            x0: s.lx.exp(),
            y0: s.ly.exp(),
            z0: s.lz.exp(),
            beta: self.beta(s.t),
            residuals: self.original_residuals(alpha, s),
            g_value,
            g_entropy_form,
            iterations,
        }
    }

    fn solve(&self, alpha: f64, warm: Option<State>) -> Result<SaddlePoint> {
        if !(alpha > 0.0 && alpha < self.ens.alpha_max()) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} outside (0, {})",
                self.ens.alpha_max()
            )));
        }
        let mut best_norm = f64::INFINITY;
        let mut best_res = [f64::NAN; 4];
        let mut tried = 0usize;

        let mut attempt = |start: State| -> Option<SaddlePoint> {
            tried += 1;
            let (s, iters, _) = self.newton(alpha, start);
            let orig = self.original_residuals(alpha, &s);
            let on = Self::norm(&orig);
            if on < best_norm {
                best_norm = on;
                best_res = orig;
            }
            (on < RESIDUAL_ACCEPT).then(|| self.point_from_state(alpha, &s, iters))
        };

        if let Some(w) = warm {
            if let Some(p) = attempt(w) {
                return Ok(p);
            }
        }
        let (candidates, detail) = self.cold_candidates(alpha);
        for c in candidates {
            if let Some(p) = attempt(c) {
                return Ok(p);
            }
        }
        Err(Error::Solver(SolverFailure {
            alpha,
            best_residual: best_norm,
            residuals: best_res,
            detail: format!("{tried} starts exhausted; {detail}"),
        }))
    }
}

/// Gaussian elimination with partial pivoting on a 4x4 system.
fn solve_linear4(mut a: [[f64; 4]; 4], mut b: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if a[row][col].abs() > a[pivot][col].abs() {
                pivot = row;
            }
        }
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut s = b[row];
        for k in row + 1..4 {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
        if !x[row].is_finite() {
            return None;
        }
    }
    Some(x)
}

/// Bisection for a strictly increasing function with expanding brackets.
fn bisect_increasing(f: impl Fn(f64) -> f64, target: f64) -> Option<f64> {
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    while f(lo) > target {
        lo *= 2.0;
        if lo < -1e7 {
            return None;
        }
    }
    while f(hi) < target {
        hi *= 2.0;
        if hi > 1e7 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + hi.abs()) {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

fn state_of(p: &SaddlePoint) -> State {
    State {
        lx: p.x0.ln(),
        ly: p.y0.ln(),
        lz: p.z0.ln(),
        t: p.y0.ln() + p.z0.ln(),
    }
}

/// Solves the saddle system at a single relative weight.
pub fn solve_at(ens: &Ensemble, alpha: f64) -> Result<SaddlePoint> {
    Solver::new(ens).solve(alpha, None)
}

/// Default sweep grid: log-spaced over (1e-5, 0.99 * alpha_max).
pub fn default_alpha_grid(ens: &Ensemble, points: usize) -> Vec<f64> {
    log_spaced_grid(1e-5, 0.99 * ens.alpha_max(), points)
}

/// Log-spaced grid between two positive endpoints.
pub fn log_spaced_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points >= 1);
    if points == 1 {
        return vec![lo];
    }
    let (lls, lhs) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (lls + (lhs - lls) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

/// Evaluates the growth rate over a strictly increasing grid with
/// warm-started continuation; per-point failures are isolated.
pub fn sweep(ens: &Ensemble, alphas: &[f64]) -> Result<GrowthCurve> {
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Validation("sweep grid must be strictly increasing".into()));
    }
    let solver = Solver::new(ens);
    let start = Instant::now();
    let mut warm: Option<State> = None;
    let mut points = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        match solver.solve(alpha, warm) {
            Ok(p) => {
                warm = Some(state_of(&p));
                points.push(CurvePoint { alpha, result: Ok(p) });
            }
            Err(e) => points.push(CurvePoint { alpha, result: Err(e.to_string()) }),
        }
    }
    Ok(GrowthCurve { points, elapsed: start.elapsed() })
}

/// Relative minimum distance: zero when the weight-2 criterion classifies the
/// ensemble bad, otherwise the first sign change of the growth rate refined
/// by bisection until |G| < 1e-10.
pub fn alpha_star(ens: &Ensemble) -> Result<AlphaStar> {
    alpha_star_from(ens, 1e-6)
}

/// Same as [`alpha_star`] with an explicit first probe.
pub fn alpha_star_from(ens: &Ensemble, alpha_lo: f64) -> Result<AlphaStar> {
    if ens.classification() == AsymptoticClass::Bad {
        return Ok(AlphaStar::Zero);
    }
    let solver = Solver::new(ens);
    let mut warm: Option<State> = None;
    let solve = |alpha: f64, warm: &mut Option<State>| -> Result<f64> {
        let p = solver.solve(alpha, *warm)?;
        *warm = Some(state_of(&p));
        Ok(p.g_value)
    };

    let mut probes: Vec<(f64, f64)> = Vec::new();
    let mut alpha = alpha_lo;
    let mut prev: Option<(f64, f64)> = None;
    let mut bracket = None;
    while alpha < 0.999 * ens.alpha_max() {
        let g = solve(alpha, &mut warm)?;
        probes.push((alpha, g));
        if g >= 0.0 {
            bracket = Some(match prev {
                Some((pa, _)) => (pa, alpha),
                // Growth rate nonnegative already at the first probe; bracket
                // from far below (G -> 0 from below as alpha -> 0 here).
                None => (alpha * 1e-6, alpha),
            });
            break;
        }
        prev = Some((alpha, g));
        alpha *= 1.25;
    }
    let Some((mut lo, mut hi)) = bracket else {
        let shown = probes
            .iter()
            .map(|(a, g)| format!("G({a:.3e}) = {g:+.3e}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::Solver(SolverFailure {
            alpha: ens.alpha_max(),
            best_residual: f64::NAN,
            residuals: [f64::NAN; 4],
            detail: format!("no sign change of G below alpha_max; probes: {shown}"),
        }));
    };
    let mut warm2: Option<State> = None;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g = solve(mid, &mut warm2)?;
        if g.abs() < 1e-10 {
            return Ok(AlphaStar::Crossing(mid));
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AlphaStar::Crossing(0.5 * (lo + hi)))
}

/// Growth rate per D-GLDPC code bit: H(gamma) = G(gamma * y) / y.
pub fn growth_rate_bits(ens: &Ensemble, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!("gamma = {gamma} outside (0, 1)")));
    }
    let y = ens.bits_per_vn();
    Ok(solve_at(ens, gamma * y)?.g_value / y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Ensemble;
    use crate::fixtures::{ensemble_1, ldpc_3_6};
    use crate::gf2::{BinaryLinearCode, SpcForm};

    #[test]
    fn regular_3_6_sign_change_bracket() {
        let ens = ldpc_3_6();
        let lo = solve_at(&ens, 0.02).unwrap();
        let hi = solve_at(&ens, 0.035).unwrap();
        assert!(lo.g_value < 0.0, "G(0.02) = {}", lo.g_value);
        assert!(hi.g_value > 0.0, "G(0.035) = {}", hi.g_value);
        assert!(lo.residual_max() < RESIDUAL_ACCEPT);
        assert!(hi.residual_max() < RESIDUAL_ACCEPT);
    }

    #[test]
    fn growth_rate_vanishes_at_tiny_alpha() {
        for ens in [ldpc_3_6(), ensemble_1()] {
            let p = solve_at(&ens, 1e-6).unwrap();
            assert!(p.g_value.abs() < 1e-3, "G(1e-6) = {}", p.g_value);
        }
    }

    #[test]
    fn ensemble_1_positive_near_zero() {
        let ens = ensemble_1();
        for alpha in [1e-4, 1e-3] {
            let p = solve_at(&ens, alpha).unwrap();
            assert!(p.g_value > 0.0, "G({alpha}) = {}", p.g_value);
        }
    }

    #[test]
    fn both_g_forms_agree() {
        let ens = ensemble_1();
        for alpha in [1e-4, 0.01, 0.1, 0.5] {
            let p = solve_at(&ens, alpha).unwrap();
            assert!(
                (p.g_value - p.g_entropy_form).abs() < 1e-9,
                "forms differ at alpha={alpha}: {} vs {}",
                p.g_value,
                p.g_entropy_form
            );
        }
    }

    #[test]
    fn alpha_out_of_range() {
        let ens = ldpc_3_6();
        assert!(matches!(solve_at(&ens, 0.0), Err(Error::Domain(_))));
        assert!(matches!(solve_at(&ens, 1.0), Err(Error::Domain(_))));
        assert!(matches!(solve_at(&ens, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn equal_types_collapse() {
        // Splitting one VN type into two identical entries must not move G.
        let merged = ldpc_3_6();
        let split = Ensemble::build(
            vec![
                (BinaryLinearCode::repetition(3).unwrap(), 0.4),
                (BinaryLinearCode::repetition(3).unwrap(), 0.6),
            ],
            vec![(BinaryLinearCode::spc(6, SpcForm::Cyclic).unwrap(), 1.0)],
        )
        .unwrap();
        for alpha in [0.01, 0.1, 0.3] {
            let a = solve_at(&merged, alpha).unwrap().g_value;
            let b = solve_at(&split, alpha).unwrap().g_value;
            assert!((a - b).abs() < 1e-10, "alpha={alpha}: {a} vs {b}");
        }
    }

    #[test]
    fn sweep_isolates_failures() {
        let ens = ldpc_3_6();
        let grid = vec![0.01, 0.05, 0.9999999, 1.5];
        let curve = sweep(&ens, &grid).unwrap();
        assert!(curve.points[0].result.is_ok());
        assert!(curve.points[1].result.is_ok());
        assert!(curve.points[3].result.is_err());
        assert_eq!(curve.points.len(), 4);

        let err = sweep(&ens, &[0.2, 0.1]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn sweep_matches_pointwise() {
        let ens = ldpc_3_6();
        let grid = vec![0.05, 0.1, 0.2, 0.4];
        let curve = sweep(&ens, &grid).unwrap();
        for cp in &curve.points {
            let direct = solve_at(&ens, cp.alpha).unwrap();
            let swept = cp.result.as_ref().unwrap();
            assert!((direct.g_value - swept.g_value).abs() < 1e-10);
            assert!((direct.x0 - swept.x0).abs() < 1e-8 * (1.0 + direct.x0));
        }
    }

    #[test]
    fn alpha_star_zero_for_bad_ensemble() {
        assert_eq!(alpha_star(&ensemble_1()).unwrap(), AlphaStar::Zero);
    }

    #[test]
    fn alpha_star_of_regular_3_6() {
        let ens = ldpc_3_6();
        let star = alpha_star(&ens).unwrap();
        let AlphaStar::Crossing(a) = star else {
            panic!("expected a positive crossing")
        };
        assert!(a > 0.02 && a < 0.035, "alpha* = {a}");
        let g = solve_at(&ens, a).unwrap().g_value;
        assert!(g.abs() < 1e-8, "G(alpha*) = {g}");
    }

    #[test]
    fn no_weight2_checks_is_good() {
        // Repetition-2 VNs with Hamming CNs: no minimum-distance-2 CN type,
        // so the ensemble is asymptotically good and alpha* is positive.
        let ens = Ensemble::build(
            vec![(BinaryLinearCode::repetition(2).unwrap(), 1.0)],
            vec![(BinaryLinearCode::hamming_7_4(), 1.0)],
        )
        .unwrap();
        let star = alpha_star(&ens).unwrap();
        assert!(star.value() > 0.0, "alpha* = {:?}", star);
    }

    #[test]
    fn bits_normalization_identity() {
        let ens = ensemble_1();
        let y = ens.bits_per_vn();
        for gamma in [0.01, 0.1, 0.4] {
            let h = growth_rate_bits(&ens, gamma).unwrap();
            let g = solve_at(&ens, gamma * y).unwrap().g_value;
            assert!((h * y - g).abs() < 1e-12);
        }
        // For the regular LDPC ensemble y = 1, so H and G coincide.
        let ldpc = ldpc_3_6();
        assert!((ldpc.bits_per_vn() - 1.0).abs() < 1e-14);
        let h = growth_rate_bits(&ldpc, 0.25).unwrap();
        let g = solve_at(&ldpc, 0.25).unwrap().g_value;
        assert!((h - g).abs() < 1e-12);
    }

    #[test]
    fn z_equation_spans_expected_range() {
        // The z-equation left side must sweep (0, 1/int_lambda), so a root
        // exists for every admissible beta.
        let ens = ensemble_1();
        let solver = Solver::new(&ens);
        let sup = 1.0 / ens.int_lambda();
        let lo = solver.ratio * solver.cn_mean_var(-30.0).0;
        let hi = solver.ratio * solver.cn_mean_var(30.0).0;
        assert!(lo < 1e-8);
        assert!((hi - sup).abs() < 1e-6 * sup);
        for frac in [1e-6, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
            let beta = frac * sup;
            assert!(solver.solve_lz(beta).is_some(), "no z root at beta = {beta}");
        }
    }
}
