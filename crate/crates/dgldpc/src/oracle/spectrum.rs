//! Exact finite-size expected weight spectra.
//!
//! For a concrete instance the expected number of codewords of weight w over
//! a uniformly random edge permutation is
//!
//!   E[N_w] = sum_v VV(w, v) * Nc(v) / C(E, v)
//!
//! where VV(w, v) counts variable-valid split assignments (the coefficient of
//! x^w y^v in the product of the VN IO-enumerators) and Nc(v) counts
//! check-valid assignments (the coefficient of z^v in the product of the CN
//! enumerators). Both counts and the division are exact rationals. The
//! brute-force twin enumerates all E! permutations and every input vector,
//! and must agree with the generating-function route exactly.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ensemble::FiniteInstance;
use crate::error::{Error, Result};
use crate::poly::{ln_biguint, BiPoly, UniPoly};

/// Guard for the generating-function route: table of (N+1) x (E+1) entries.
const MAX_EDGES_EXACT: u64 = 2000;
const MAX_TABLE_ENTRIES: u64 = 6_000_000;

/// Guards for the permutation brute force.
const MAX_EDGES_BRUTE: u64 = 9;
const MAX_INPUT_BITS_BRUTE: u64 = 20;

/// Exact expected weight spectrum of one instance size.
#[derive(Debug, Clone)]
pub struct FiniteSpectrum {
    n: u64,
    values: Vec<BigRational>,
}

impl FiniteSpectrum {
    /// Number of VNs of the instance.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// E[N_w] for w = 0..=N.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, w: usize) -> &BigRational {
        &self.values[w]
    }

    /// (1/n) ln E[N_w]; negative infinity where the expectation vanishes.
    pub fn log_normalized(&self, w: usize) -> f64 {
        let v = &self.values[w];
        if v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let num = v.numer().magnitude();
        let den = v.denom().magnitude();
        (ln_biguint(num) - ln_biguint(den)) / self.n as f64
    }
}

/// Exact check-valid assignment counts Nc(v) for v = 0..=E.
pub fn check_valid_counts(inst: &FiniteInstance<'_>) -> Result<Vec<BigUint>> {
    let e = inst.edges() as usize;
    let mut acc = UniPoly::one();
    for (count, t) in inst.cn_counts().iter().zip(inst.ensemble().cn_types()) {
        let base = UniPoly::from(t.wef());
        for _ in 0..*count {
            acc = acc.mul_trunc(&base, e);
        }
    }
    Ok((0..=e).map(|v| acc.coeff(v)).collect())
}

/// Exact expected spectrum through the generating-function counting route.
pub fn exact_expected_spectrum(inst: &FiniteInstance<'_>) -> Result<FiniteSpectrum> {
    let e = inst.edges();
    let n_bits = inst.code_bits();
    if e > MAX_EDGES_EXACT || (n_bits + 1) * (e + 1) > MAX_TABLE_ENTRIES {
        return Err(Error::ResourceLimit(format!(
            "instance too large for the exact spectrum: E = {e}, N = {n_bits}"
        )));
    }
    let (e, n_bits) = (e as usize, n_bits as usize);

    // Variable-valid split assignment counts VV(w, v).
    let mut vv = BiPoly::one();
    for (count, t) in inst.vn_counts().iter().zip(inst.ensemble().vn_types()) {
        let base = BiPoly::from(t.iowef());
        for _ in 0..*count {
            vv = vv.mul_trunc(&base, n_bits, e);
        }
    }
    let nc = check_valid_counts(inst)?;

    // Binomials C(E, v) by the multiplicative recurrence.
    let mut binom = Vec::with_capacity(e + 1);
    binom.push(BigUint::one());
    for v in 1..=e {
        let prev: &BigUint = &binom[v - 1];
        binom.push(prev * BigUint::from(e - v + 1) / BigUint::from(v));
    }

    let values = (0..=n_bits)
        .map(|w| {
            let mut acc = BigRational::zero();
            for v in 0..=e {
                let a = vv.coeff(w, v);
                if a.is_zero() || nc[v].is_zero() {
                    continue;
                }
                acc += BigRational::new(
                    BigInt::from(a * &nc[v]),
                    BigInt::from(binom[v].clone()),
                );
            }
            acc
        })
        .collect();
    Ok(FiniteSpectrum { n: inst.n(), values })
}

/// Exact expected spectrum by full enumeration of the E! edge permutations
/// and all input vectors.
pub fn brute_force_spectrum(inst: &FiniteInstance<'_>) -> Result<FiniteSpectrum> {
    let e = inst.edges();
    let k_total: u64 = inst
        .vn_counts()
        .iter()
        .zip(inst.ensemble().vn_types())
        .map(|(c, t)| c * t.code().dimension() as u64)
        .sum();
    if e > MAX_EDGES_BRUTE || k_total > MAX_INPUT_BITS_BRUTE {
        return Err(Error::ResourceLimit(format!(
            "instance too large for brute force: E = {e}, input bits = {k_total}"
        )));
    }
    let e = e as usize;
    let k_total = k_total as usize;

    // Flatten VN instances: (input-bit offset, input dim, edge-slot offset, type index).
    let mut vns = Vec::new();
    let mut bit_off = 0usize;
    let mut slot_off = 0usize;
    for (ti, (count, t)) in inst
        .vn_counts()
        .iter()
        .zip(inst.ensemble().vn_types())
        .enumerate()
    {
        for _ in 0..*count {
            vns.push((bit_off, t.code().dimension(), slot_off, ti));
            bit_off += t.code().dimension();
            slot_off += t.code().length();
        }
    }
    debug_assert_eq!(slot_off, e);

    // Flatten CN instances: (edge-slot offset, length, type index).
    let mut cns = Vec::new();
    let mut cn_slot = 0usize;
    for (ti, (count, t)) in inst
        .cn_counts()
        .iter()
        .zip(inst.ensemble().cn_types())
        .enumerate()
    {
        for _ in 0..*count {
            cns.push((cn_slot, t.code().length(), ti));
            cn_slot += t.code().length();
        }
    }

    // Per-type lookups: encoder tables for VNs, codeword membership for CNs.
    let vn_tables: Vec<Vec<u32>> = inst
        .ensemble()
        .vn_types()
        .iter()
        .map(|t| (0..1u32 << t.code().dimension()).map(|m| t.code().encode(m)).collect())
        .collect();
    let cn_valid: Vec<Vec<bool>> = inst
        .ensemble()
        .cn_types()
        .iter()
        .map(|t| {
            let mut valid = vec![false; 1 << t.code().length()];
            for m in 0..1u32 << t.code().dimension() {
                valid[t.code().encode(m) as usize] = true;
            }
            valid
        })
        .collect();

    // VN-side edge labelings for every input vector.
    let inputs: Vec<(u32, usize)> = (0..1u32 << k_total)
        .map(|g| {
            let mut mask = 0u32;
            for &(bo, k, so, ti) in &vns {
                let msg = (g >> bo) & ((1 << k) - 1);
                mask |= vn_tables[ti][msg as usize] << so;
            }
            (mask, g.count_ones() as usize)
        })
        .collect();

    let mut counts = vec![0u64; k_total + 1];
    for perm in (0..e).permutations(e) {
        'inputs: for &(mask, w) in &inputs {
            let mut routed = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                routed |= 1 << perm[i];
                rest &= rest - 1;
            }
            for &(off, len, ti) in &cns {
                let word = (routed >> off) & ((1 << len) - 1);
                if !cn_valid[ti][word as usize] {
                    continue 'inputs;
                }
            }
            counts[w] += 1;
        }
    }

    let fact: BigUint = (1..=e as u64).map(BigUint::from).product();
    let values = counts
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), BigInt::from(fact.clone())))
        .collect();
    Ok(FiniteSpectrum { n: inst.n(), values })
}

/// Convenience: w = alpha * n rounded to the nearest admissible weight.
pub fn weight_for_alpha(inst: &FiniteInstance<'_>, alpha: f64) -> Result<usize> {
    let w = (alpha * inst.n() as f64).round();
    if w < 0.0 || w > inst.code_bits() as f64 {
        return Err(Error::Domain(format!(
            "alpha = {alpha} gives weight {w} outside 0..={}",
            inst.code_bits()
        )));
    }
    Ok(w as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::Ensemble;
    use crate::fixtures::toy_rep2_spc4;
    use crate::gf2::{BinaryLinearCode, SpcForm};
    use crate::poly::pow_coeff;

    #[test]
    fn expected_zero_weight_is_one() {
        let ens = toy_rep2_spc4();
        let inst = ens.instantiate(4).unwrap();
        let spec = exact_expected_spectrum(&inst).unwrap();
        assert!(spec.value(0).is_one());
        let brute = brute_force_spectrum(&inst).unwrap();
        assert!(brute.value(0).is_one());
    }

    #[test]
    fn cross_oracle_equality_small() {
        // 2 rep-2 VNs against 1 SPC-4 CN: E = 4.
        let ens = toy_rep2_spc4();
        let inst = ens.instantiate(2).unwrap();
        let exact = exact_expected_spectrum(&inst).unwrap();
        let brute = brute_force_spectrum(&inst).unwrap();
        assert_eq!(exact.values(), brute.values());
        // Weight-2 expectation: both weight-2 inputs give an even-weight pair
        // of edges; valid only when the permutation pairs them into the SPC.
        assert!(!exact.value(2).is_zero());
    }

    #[test]
    fn cross_oracle_equality_e8() {
        // 4 rep-2 VNs against 2 SPC-4 CNs: E = 8.
        let ens = toy_rep2_spc4();
        let inst = ens.instantiate(4).unwrap();
        let exact = exact_expected_spectrum(&inst).unwrap();
        let brute = brute_force_spectrum(&inst).unwrap();
        assert_eq!(exact.values(), brute.values());
    }

    #[test]
    fn universe_checks_make_all_assignments_valid() {
        // A (2,2) CN accepts anything, so the spectrum equals the
        // unconstrained VN count: E[N_w] = C(n, w) for rep-2 VNs.
        let ens = Ensemble::build(
            vec![(BinaryLinearCode::repetition(2).unwrap(), 1.0)],
            vec![(BinaryLinearCode::explicit(&["10", "01"]).unwrap(), 1.0)],
        )
        .unwrap();
        let inst = ens.instantiate(3).unwrap();
        let spec = exact_expected_spectrum(&inst).unwrap();
        let expect = [1u64, 3, 3, 1];
        for (w, &c) in expect.iter().enumerate() {
            assert_eq!(spec.value(w), &BigRational::from(BigInt::from(c)));
        }
        let brute = brute_force_spectrum(&inst).unwrap();
        assert_eq!(spec.values(), brute.values());
    }

    #[test]
    fn single_type_check_counts_collapse_to_power() {
        let ens = toy_rep2_spc4();
        let inst = ens.instantiate(8).unwrap();
        let counts = check_valid_counts(&inst).unwrap();
        let wef = UniPoly::from(ens.cn_types()[0].wef());
        for (v, c) in counts.iter().enumerate() {
            assert_eq!(*c, pow_coeff(&wef, inst.num_cn(), v).unwrap());
        }
    }

    #[test]
    fn brute_force_guard() {
        let ens = toy_rep2_spc4();
        let inst = ens.instantiate(6).unwrap(); // E = 12
        assert!(matches!(
            brute_force_spectrum(&inst),
            Err(Error::ResourceLimit(_))
        ));
    }
}
