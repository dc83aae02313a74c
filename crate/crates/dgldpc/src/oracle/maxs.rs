//! Direct constrained maximization of the pre-stationarity objective.
//!
//! The growth rate equals the maximum over per-type apportionments of
//!
//!   S(alpha_vec, beta_vec) = sum_t X_t(alpha_t, beta_t) + Y(beta)
//!
//! where X_t comes from a per-type two-variable coefficient limit and Y(beta)
//! from the check-side limit plus the edge-selection entropy. This oracle
//! maximizes S by nested grid refinement with no stationarity conditions in
//! the loop, so agreement with the saddle solver certifies the reduction of
//! the constrained problem to the 4x4 system.
//!
//! VN types whose enumerator support is a ray (repetition-like codes lock the
//! output weight to a multiple of the input weight) have beta_t forced to
//! that multiple of alpha_t instead of gridded.

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::eval::binary_entropy;

/// Per-type shares and recovered per-type saddle coordinates at the maximum.
#[derive(Debug, Clone)]
pub struct TypeApportionment {
    /// Weight share per CN type; sums to the check-side total delta.
    pub eps: Vec<f64>,
    /// Input-weight share per VN type; sums to alpha.
    pub alpha: Vec<f64>,
    /// Edge-weight share per VN type; sums to beta.
    pub beta: Vec<f64>,
    /// Per-VN-type saddle coordinates; None for ray-support types where the
    /// split between x and y is not identifiable.
    pub x0: Vec<Option<f64>>,
    pub y0: Vec<Option<f64>>,
    /// Common check-side saddle coordinate.
    pub z0: f64,
}

/// Hard cap on grid points per refinement round; with more than three VN
/// types only coarse resolutions fit under it.
const MAX_GRID_POINTS: u64 = 200_000;
const DEFAULT_ROUNDS: usize = 40;

/// Maximizes S at the given relative weight with full grid refinement.
pub fn maximize_s(
    ens: &Ensemble,
    alpha: f64,
    grid_resolution: usize,
) -> Result<(f64, TypeApportionment)> {
    maximize_s_rounds(ens, alpha, grid_resolution, DEFAULT_ROUNDS)
}

/// Same with an explicit number of refinement rounds (the incumbent is kept
/// across rounds, so the value is nondecreasing in `rounds`).
pub fn maximize_s_rounds(
    ens: &Ensemble,
    alpha: f64,
    grid_resolution: usize,
    rounds: usize,
) -> Result<(f64, TypeApportionment)> {
    if !(alpha > 0.0 && alpha < ens.alpha_max()) {
        return Err(Error::Domain(format!(
            "alpha = {alpha} outside (0, {})",
            ens.alpha_max()
        )));
    }
    if grid_resolution < 3 {
        return Err(Error::InvalidParameter("grid resolution must be >= 3".into()));
    }
    let problem = Problem::new(ens, alpha);
    let dims = problem.bounds.len();
    let points = (grid_resolution as u64).checked_pow(dims as u32);
    if points.map_or(true, |p| p > MAX_GRID_POINTS) {
        return Err(Error::ResourceLimit(format!(
            "{} free variables at resolution {grid_resolution} exceeds the grid guard",
            dims
        )));
    }

    let mut ranges = problem.bounds.clone();
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut failures = 0usize;
    for _ in 0..rounds {
        let mut point = vec![0.0; dims];
        grid_scan(
            &ranges,
            grid_resolution,
            &mut point,
            0,
            &mut |coords: &[f64]| match problem.evaluate(coords) {
                Some(value) => {
                    if best.as_ref().map_or(true, |(b, _)| value > *b) {
                        best = Some((value, coords.to_vec()));
                    }
                }
                None => failures += 1,
            },
        );
        let Some((_, ref center)) = best else {
            return Err(Error::Domain(format!(
                "no feasible grid point at alpha = {alpha} ({failures} infeasible)"
            )));
        };
        if dims == 0 {
            break;
        }
        // Shrink each range around the incumbent, clipped to the original box.
        let mut done = true;
        for (i, r) in ranges.iter_mut().enumerate() {
            let width = (r.1 - r.0) * 1.5 / grid_resolution as f64;
            let lo = (center[i] - width).max(problem.bounds[i].0);
            let hi = (center[i] + width).min(problem.bounds[i].1);
            *r = (lo, hi);
            if hi - lo > 1e-12 * (1.0 + hi.abs()) {
                done = false;
            }
        }
        if done {
            break;
        }
    }

    let (value, coords) = best.ok_or_else(|| {
        Error::Domain(format!("no feasible apportionment found at alpha = {alpha}"))
    })?;
    let detail = problem
        .describe(&coords)
        .expect("incumbent must stay feasible");
    Ok((value, detail))
}

/// Recursive odometer over the grid.
fn grid_scan(
    ranges: &[(f64, f64)],
    res: usize,
    point: &mut Vec<f64>,
    dim: usize,
    visit: &mut impl FnMut(&[f64]),
) {
    if dim == ranges.len() {
        visit(point);
        return;
    }
    let (lo, hi) = ranges[dim];
    for i in 0..res {
        point[dim] = lo + (hi - lo) * i as f64 / (res - 1) as f64;
        grid_scan(ranges, res, point, dim + 1, visit);
    }
}

/// Which free variable drives what.
#[derive(Debug, Clone, Copy)]
enum FreeVar {
    /// Input-weight share of VN type i (all but the last type).
    Alpha(usize),
    /// Edge-weight share of VN type i (full-support types only).
    Beta(usize),
}

struct Problem<'a> {
    ens: &'a Ensemble,
    alpha: f64,
    vars: Vec<FreeVar>,
    bounds: Vec<(f64, f64)>,
    /// Ray slope per VN type (None for full two-dimensional support).
    rays: Vec<Option<f64>>,
}

struct Evaluation {
    value: f64,
    alpha_t: Vec<f64>,
    beta_t: Vec<f64>,
    x0: Vec<Option<f64>>,
    y0: Vec<Option<f64>>,
    ln_z: f64,
}

impl<'a> Problem<'a> {
    fn new(ens: &'a Ensemble, alpha: f64) -> Self {
        let rays: Vec<Option<f64>> = ens
            .vn_types()
            .iter()
            .map(|t| t.evaluator().ray_slope())
            .collect();
        let mut vars = Vec::new();
        let mut bounds = Vec::new();
        let nv = ens.vn_types().len();
        for i in 0..nv.saturating_sub(1) {
            vars.push(FreeVar::Alpha(i));
            let cap = ens.delta()[i] * ens.vn_types()[i].evaluator().max_u();
            bounds.push((0.0, cap.min(alpha)));
        }
        for (i, ray) in rays.iter().enumerate() {
            if ray.is_none() {
                vars.push(FreeVar::Beta(i));
                let cap = ens.delta()[i] * ens.vn_types()[i].evaluator().max_v();
                bounds.push((0.0, cap));
            }
        }
        Problem { ens, alpha, vars, bounds, rays }
    }

    /// Reassembles full apportionment vectors from the free coordinates.
    fn shares(&self, coords: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
        let nv = self.ens.vn_types().len();
        let mut alpha_t = vec![0.0; nv];
        let mut beta_t = vec![0.0; nv];
        for (var, &c) in self.vars.iter().zip(coords) {
            match var {
                FreeVar::Alpha(i) => alpha_t[*i] = c,
                FreeVar::Beta(i) => beta_t[*i] = c,
            }
        }
        let assigned: f64 = alpha_t[..nv - 1].iter().sum();
        let last = self.alpha - assigned;
        if last < -1e-15 {
            return None;
        }
        alpha_t[nv - 1] = last.max(0.0);
        let cap = self.ens.delta()[nv - 1] * self.ens.vn_types()[nv - 1].evaluator().max_u();
        if alpha_t[nv - 1] >= cap {
            return None;
        }
        for (i, ray) in self.rays.iter().enumerate() {
            if let Some(c) = ray {
                beta_t[i] = c * alpha_t[i];
            }
        }
        Some((alpha_t, beta_t))
    }

    fn evaluate(&self, coords: &[f64]) -> Option<f64> {
        self.run(coords).map(|e| e.value)
    }

    fn describe(&self, coords: &[f64]) -> Option<TypeApportionment> {
        let e = self.run(coords)?;
        let eps: Vec<f64> = self
            .ens
            .gamma()
            .iter()
            .zip(self.ens.cn_types())
            .map(|(g, t)| g * t.evaluator().mean(e.ln_z))
            .collect();
        Some(TypeApportionment {
            eps,
            alpha: e.alpha_t,
            beta: e.beta_t,
            x0: e.x0.iter().map(|o| o.map(f64::exp)).collect(),
            y0: e.y0.iter().map(|o| o.map(f64::exp)).collect(),
            z0: e.ln_z.exp(),
        })
    }

    fn run(&self, coords: &[f64]) -> Option<Evaluation> {
        let (alpha_t, beta_t) = self.shares(coords)?;
        let int_lambda = self.ens.int_lambda();
        let int_rho = self.ens.int_rho();
        let nv = alpha_t.len();

        let mut value = 0.0;
        let mut x0 = vec![None; nv];
        let mut y0 = vec![None; nv];
        for i in 0..nv {
            let delta = self.ens.delta()[i];
            let ev = self.ens.vn_types()[i].evaluator();
            let (a, b) = (alpha_t[i], beta_t[i]);
            if a < 1e-14 {
                // Inactive type: no input weight and hence no edge weight.
                if b > 1e-12 {
                    return None;
                }
                continue;
            }
            let xi = a / delta;
            if xi >= ev.max_u() {
                return None;
            }
            match self.rays[i] {
                Some(_) => {
                    let ln_s = ev.solve_ray_mean(xi).ok()?;
                    value += delta * ev.log_value(ln_s, 0.0) - a * ln_s;
                }
                None => {
                    let theta = b / delta;
                    if !(theta > 0.0 && theta < ev.max_v()) {
                        return None;
                    }
                    let (lx, ly) = ev.solve_means(xi, theta).ok()?;
                    value += delta * ev.log_value(lx, ly) - a * lx - b * ly;
                    x0[i] = Some(lx);
                    y0[i] = Some(ly);
                }
            }
        }

        let beta: f64 = beta_t.iter().sum();
        if !(beta > 0.0 && beta * int_lambda < 1.0 - 1e-12) {
            return None;
        }
        // Common check-side coordinate from the collapsed per-type solves.
        let target = beta * int_lambda / int_rho;
        let ln_z = self.solve_cn(target)?;
        let log_a: f64 = self
            .ens
            .gamma()
            .iter()
            .zip(self.ens.cn_types())
            .map(|(g, t)| g * t.evaluator().log_value(ln_z))
            .sum();
        let y_term = (int_rho / int_lambda) * log_a
            - beta * ln_z
            - binary_entropy(beta * int_lambda).ok()? / int_lambda;
        value += y_term;

        Some(Evaluation { value, alpha_t, beta_t, x0, y0, ln_z })
    }

    /// Bisects sum_t gamma_t * mean_t(ln z) = target.
    fn solve_cn(&self, target: f64) -> Option<f64> {
        let f = |lz: f64| -> f64 {
            self.ens
                .gamma()
                .iter()
                .zip(self.ens.cn_types())
                .map(|(g, t)| g * t.evaluator().mean(lz))
                .sum()
        };
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
}
