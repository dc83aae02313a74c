//! The D-GLDPC ensemble model: node types, edge-perspective distributions,
//! and every derived scalar (integrals, type fractions, design rate, the
//! weight-2 parameters C and V, and the bits-per-VN ratio).
//!
//! Edge fractions are decimal-derived doubles; an exact rational shadow of
//! each fraction is kept so finite instantiations can certify integrality of
//! the node counts instead of trusting float rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::eval::{IowefEvaluator, WefEvaluator};
use crate::gf2::{BinaryLinearCode, IOWeightEnumerator, WeightEnumerator};

/// Tolerance accepted on the sum of edge fractions before normalization.
pub const FRACTION_SUM_TOLERANCE: f64 = 1e-6;

/// A variable-node type: a (q, k) code plus its edge fraction.
#[derive(Debug, Clone)]
pub struct VnType {
    code: BinaryLinearCode,
    lambda: f64,
    lambda_exact: BigRational,
    iowef: IOWeightEnumerator,
    eval: IowefEvaluator,
}

impl VnType {
    pub fn code(&self) -> &BinaryLinearCode {
        &self.code
    }

    /// Normalized fraction of edges attached to this type.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_exact(&self) -> &BigRational {
        &self.lambda_exact
    }

    pub fn iowef(&self) -> &IOWeightEnumerator {
        &self.iowef
    }

    pub fn evaluator(&self) -> &IowefEvaluator {
        &self.eval
    }

    pub fn min_distance(&self) -> usize {
        self.iowef.weight_marginal().min_distance()
    }
}

/// A check-node type: an (s, h) code plus its edge fraction.
#[derive(Debug, Clone)]
pub struct CnType {
    code: BinaryLinearCode,
    rho: f64,
    rho_exact: BigRational,
    wef: WeightEnumerator,
    eval: WefEvaluator,
}

impl CnType {
    pub fn code(&self) -> &BinaryLinearCode {
        &self.code
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn rho_exact(&self) -> &BigRational {
        &self.rho_exact
    }

    pub fn wef(&self) -> &WeightEnumerator {
        &self.wef
    }

    pub fn evaluator(&self) -> &WefEvaluator {
        &self.eval
    }

    pub fn min_distance(&self) -> usize {
        self.wef.min_distance()
    }
}

/// Asymptotic classification by the weight-2 criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticClass {
    /// No minimum-distance-2 types on one side, or C * V < 1.
    Good,
    /// Both sides have minimum-distance-2 types and C * V >= 1.
    Bad,
}

impl std::fmt::Display for AsymptoticClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AsymptoticClass::Good => write!(f, "asymptotically good"),
            AsymptoticClass::Bad => write!(f, "asymptotically bad"),
        }
    }
}

/// A validated D-GLDPC ensemble with all derived scalars precomputed.
#[derive(Debug, Clone)]
pub struct Ensemble {
    vn_types: Vec<VnType>,
    cn_types: Vec<CnType>,
    int_lambda: f64,
    int_rho: f64,
    gamma: Vec<f64>,
    delta: Vec<f64>,
    bits_per_vn: f64,
    rate: f64,
    c_param: Option<f64>,
    v_param: Option<f64>,
}

impl Ensemble {
    /// Builds the ensemble from (code, edge fraction) lists, validating the
    /// simplex sums and computing every derived quantity.
    pub fn build(
        vns: Vec<(BinaryLinearCode, f64)>,
        cns: Vec<(BinaryLinearCode, f64)>,
    ) -> Result<Ensemble> {
        if vns.is_empty() || cns.is_empty() {
            return Err(Error::Validation("need at least one VN type and one CN type".into()));
        }
        for (code, _) in &vns {
            if code.length() < 2 {
                return Err(Error::Validation(format!(
                    "VN code {} has length {} < 2",
                    code.label(),
                    code.length()
                )));
            }
        }
        for (code, _) in &cns {
            if code.length() < 2 {
                return Err(Error::Validation(format!(
                    "CN code {} has length {} < 2",
                    code.label(),
                    code.length()
                )));
            }
        }
        let lambda_sum = check_simplex(vns.iter().map(|(_, f)| *f), "lambda")?;
        let rho_sum = check_simplex(cns.iter().map(|(_, f)| *f), "rho")?;

        let lambda_exact = normalize_exact(vns.iter().map(|(_, f)| *f));
        let rho_exact = normalize_exact(cns.iter().map(|(_, f)| *f));

        let vn_types: Vec<VnType> = vns
            .into_iter()
            .zip(lambda_exact)
            .map(|((code, raw), exact)| {
                let iowef = code.io_weight_enumerator();
                let eval = IowefEvaluator::new(&iowef);
                VnType { code, lambda: raw / lambda_sum, lambda_exact: exact, iowef, eval }
            })
            .collect();
        let cn_types: Vec<CnType> = cns
            .into_iter()
            .zip(rho_exact)
            .map(|((code, raw), exact)| {
                let wef = code.weight_enumerator();
                let eval = WefEvaluator::new(&wef);
                CnType { code, rho: raw / rho_sum, rho_exact: exact, wef, eval }
            })
            .collect();

        let int_lambda: f64 = vn_types.iter().map(|t| t.lambda / t.code.length() as f64).sum();
        let int_rho: f64 = cn_types.iter().map(|t| t.rho / t.code.length() as f64).sum();
        let delta: Vec<f64> = vn_types
            .iter()
            .map(|t| t.lambda / (t.code.length() as f64 * int_lambda))
            .collect();
        let gamma: Vec<f64> = cn_types
            .iter()
            .map(|t| t.rho / (t.code.length() as f64 * int_rho))
            .collect();

        let bits_per_vn = vn_types
            .iter()
            .map(|t| t.lambda * t.code.rate())
            .sum::<f64>()
            / int_lambda;

        let cn_deficit: f64 = cn_types.iter().map(|t| t.rho * (1.0 - t.code.rate())).sum();
        let vn_rate: f64 = vn_types.iter().map(|t| t.lambda * t.code.rate()).sum();
        let rate = 1.0 - cn_deficit / vn_rate;
        if rate <= 0.0 {
            return Err(Error::DegenerateEnsemble(format!(
                "design rate {rate:.6} is not positive"
            )));
        }

        // Weight-2 parameters: present only when the respective side has a
        // minimum-distance-2 type. V counts all weight-2 local codewords of a
        // VN type regardless of input weight.
        let c_param = {
            let c: f64 = cn_types
                .iter()
                .filter(|t| t.wef.min_distance() == 2)
                .map(|t| t.rho * t.wef.coeff(2) as f64 / t.code.length() as f64)
                .sum();
            cn_types.iter().any(|t| t.wef.min_distance() == 2).then_some(2.0 * c)
        };
        let v_param = {
            let v: f64 = vn_types
                .iter()
                .filter(|t| t.min_distance() == 2)
                .map(|t| t.lambda * t.iowef.weight_two_total() as f64 / t.code.length() as f64)
                .sum();
            vn_types.iter().any(|t| t.min_distance() == 2).then_some(2.0 * v)
        };

        Ok(Ensemble {
            vn_types,
            cn_types,
            int_lambda,
            int_rho,
            gamma,
            delta,
            bits_per_vn,
            rate,
            c_param,
            v_param,
        })
    }

    pub fn vn_types(&self) -> &[VnType] {
        &self.vn_types
    }

    pub fn cn_types(&self) -> &[CnType] {
        &self.cn_types
    }

    /// Integral of the VN edge distribution: sum of lambda_t / q_t.
    pub fn int_lambda(&self) -> f64 {
        self.int_lambda
    }

    /// Integral of the CN edge distribution: sum of rho_t / s_t.
    pub fn int_rho(&self) -> f64 {
        self.int_rho
    }

    /// Fractions of CNs per type.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Fractions of VNs per type.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    /// Ratio of codeword length to VN count (y = N/n); also the supremum of
    /// the admissible relative weight.
    pub fn bits_per_vn(&self) -> f64 {
        self.bits_per_vn
    }

    pub fn alpha_max(&self) -> f64 {
        self.bits_per_vn
    }

    /// Design rate.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Weight-2 CN parameter, absent when no CN type has minimum distance 2.
    pub fn c_param(&self) -> Option<f64> {
        self.c_param
    }

    /// Weight-2 VN parameter, absent when no VN type has minimum distance 2.
    pub fn v_param(&self) -> Option<f64> {
        self.v_param
    }

    /// C * V when both sides have minimum-distance-2 types.
    pub fn cv_product(&self) -> Option<f64> {
        match (self.c_param, self.v_param) {
            (Some(c), Some(v)) => Some(c * v),
            _ => None,
        }
    }

    pub fn classification(&self) -> AsymptoticClass {
        match self.cv_product() {
            Some(cv) if cv >= 1.0 => AsymptoticClass::Bad,
            _ => AsymptoticClass::Good,
        }
    }

    /// Smallest VN count for which every node count is an integer.
    pub fn smallest_instance_size(&self) -> BigInt {
        let mut e0 = BigInt::one();
        let mut divisors = Vec::new();
        for t in &self.vn_types {
            divisors.push(edge_divisor(&t.lambda_exact, t.code.length()));
        }
        for t in &self.cn_types {
            divisors.push(edge_divisor(&t.rho_exact, t.code.length()));
        }
        for d in divisors {
            e0 = e0.lcm(&d);
        }
        // n0 = sum over VN types of E0 * lambda_t / q_t (each term integral).
        self.vn_types
            .iter()
            .map(|t| {
                let r = t.lambda_exact.clone() * BigRational::from(e0.clone())
                    / BigRational::from(BigInt::from(t.code.length()));
                r.to_integer()
            })
            .sum()
    }

    /// Concrete node counts for a given number of VNs.
    pub fn instantiate(&self, n: u64) -> Result<FiniteInstance<'_>> {
        if n == 0 {
            return Err(Error::InvalidParameter("instance needs n >= 1".into()));
        }
        let n0 = self.smallest_instance_size();
        let n_big = BigInt::from(n);
        if (&n_big % &n0) != BigInt::zero() {
            return Err(Error::Validation(format!(
                "n = {n} does not give integer node counts; smallest valid n is {n0} (use a multiple)"
            )));
        }
        let factor = &n_big / &n0;
        // E = n / int_lambda, rebuilt exactly from the rational fractions.
        let edges_exact: BigRational = self
            .vn_types
            .iter()
            .map(|t| t.lambda_exact.clone() / BigRational::from(BigInt::from(t.code.length())))
            .sum();
        let e0 = (BigRational::from(n0.clone()) / edges_exact.clone())
            .to_integer();
        let edges = (&e0 * &factor)
            .to_u64()
            .ok_or_else(|| Error::ResourceLimit(format!("edge count overflows u64 for n = {n}")))?;

        let mut vn_counts = Vec::with_capacity(self.vn_types.len());
        for t in &self.vn_types {
            let exact = t.lambda_exact.clone() * BigRational::from(BigInt::from(edges))
                / BigRational::from(BigInt::from(t.code.length()));
            debug_assert!(exact.is_integer());
            let c = exact.to_integer().to_u64().ok_or_else(|| {
                Error::ResourceLimit(format!("VN count overflows u64 for n = {n}"))
            })?;
            vn_counts.push(c);
        }
        let mut cn_counts = Vec::with_capacity(self.cn_types.len());
        for t in &self.cn_types {
            let exact = t.rho_exact.clone() * BigRational::from(BigInt::from(edges))
                / BigRational::from(BigInt::from(t.code.length()));
            debug_assert!(exact.is_integer());
            let c = exact.to_integer().to_u64().ok_or_else(|| {
                Error::ResourceLimit(format!("CN count overflows u64 for n = {n}"))
            })?;
            cn_counts.push(c);
        }

        let num_cn: u64 = cn_counts.iter().sum();
        let code_bits: u64 = vn_counts
            .iter()
            .zip(&self.vn_types)
            .map(|(c, t)| c * t.code.dimension() as u64)
            .sum();
        let check_bits: u64 = cn_counts
            .iter()
            .zip(&self.cn_types)
            .map(|(c, t)| c * (t.code.length() - t.code.dimension()) as u64)
            .sum();
        debug_assert_eq!(vn_counts.iter().sum::<u64>(), n);

        Ok(FiniteInstance {
            ensemble: self,
            n,
            vn_counts,
            cn_counts,
            edges,
            num_cn,
            code_bits,
            check_bits,
        })
    }
}

/// Concrete node counts of one ensemble member size.
#[derive(Debug, Clone)]
pub struct FiniteInstance<'a> {
    ensemble: &'a Ensemble,
    n: u64,
    vn_counts: Vec<u64>,
    cn_counts: Vec<u64>,
    edges: u64,
    num_cn: u64,
    code_bits: u64,
    check_bits: u64,
}

impl<'a> FiniteInstance<'a> {
    pub fn ensemble(&self) -> &'a Ensemble {
        self.ensemble
    }

    /// Number of VNs.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Node counts per VN type.
    pub fn vn_counts(&self) -> &[u64] {
        &self.vn_counts
    }

    /// Node counts per CN type.
    pub fn cn_counts(&self) -> &[u64] {
        &self.cn_counts
    }

    /// Number of Tanner-graph edges E.
    pub fn edges(&self) -> u64 {
        self.edges
    }

    /// Number of CNs m.
    pub fn num_cn(&self) -> u64 {
        self.num_cn
    }

    /// D-GLDPC codeword length N.
    pub fn code_bits(&self) -> u64 {
        self.code_bits
    }

    /// Total number of parity-check equations M.
    pub fn check_bits(&self) -> u64 {
        self.check_bits
    }
}

fn check_simplex(fractions: impl Iterator<Item = f64> + Clone, name: &str) -> Result<f64> {
    for f in fractions.clone() {
        if !(f > 0.0 && f <= 1.0 + FRACTION_SUM_TOLERANCE) {
            return Err(Error::Validation(format!(
                "{name} fraction {f} outside (0, 1]"
            )));
        }
    }
    let sum: f64 = fractions.sum();
    if (sum - 1.0).abs() > FRACTION_SUM_TOLERANCE {
        return Err(Error::Validation(format!(
            "{name} fractions sum to {sum:.9}, off by {:+.3e}",
            sum - 1.0
        )));
    }
    Ok(sum)
}

/// Exact rational reading of a decimal-derived double (6 or 12 places).
fn decimal_rational(x: f64) -> BigRational {
    for scale in [1_000_000i64, 1_000_000_000_000i64] {
        let scaled = x * scale as f64;
        let rounded = scaled.round();
        if (scaled - rounded).abs() < 1e-3 && rounded.abs() < 9e15 {
            return BigRational::new(BigInt::from(rounded as i64), BigInt::from(scale));
        }
    }
    // Fall back to the shortest representation of the double itself.
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn normalize_exact(fractions: impl Iterator<Item = f64>) -> Vec<BigRational> {
    let raw: Vec<BigRational> = fractions.map(decimal_rational).collect();
    let sum: BigRational = raw.iter().cloned().sum();
    raw.into_iter().map(|r| r / sum.clone()).collect()
}

/// Smallest divisor d such that d | E implies E * frac / len is an integer.
fn edge_divisor(frac: &BigRational, len: usize) -> BigInt {
    let num = frac.numer().abs();
    let den = frac.denom() * BigInt::from(len);
    let g = num.gcd(&den);
    den / g
}
