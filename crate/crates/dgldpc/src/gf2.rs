//! Binary linear block codes over GF(2) with exact codebook enumeration.
//!
//! Generator matrices are stored row-major as bit-packed words (bit `j` of a
//! row is column `j`). Enumeration walks all 2^k messages in Gray-code order,
//! so each step updates the running codeword with a single row XOR.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on code length; everything downstream assumes exhaustive
/// enumeration of the 2^k codebook stays desk-scale.
pub const MAX_CODE_LENGTH: usize = 24;

/// Generator-matrix representation of a single parity-check code.
///
/// All three forms describe the same codebook (for odd length in the
/// antisystematic case) but map inputs to codewords differently, so they
/// have identical weight enumerators and distinct input-output enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpcForm {
    /// Identity block followed by an all-ones parity column.
    Systematic,
    /// Row i has ones exactly in columns i and i+1.
    Cyclic,
    /// Complemented identity block followed by an all-ones parity column.
    Antisystematic,
}

impl SpcForm {
    pub fn name(&self) -> &'static str {
        match self {
            SpcForm::Systematic => "systematic",
            SpcForm::Cyclic => "cyclic",
            SpcForm::Antisystematic => "antisystematic",
        }
    }
}

impl std::str::FromStr for SpcForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "systematic" | "s" => Ok(SpcForm::Systematic),
            "cyclic" | "c" => Ok(SpcForm::Cyclic),
            "antisystematic" | "a" => Ok(SpcForm::Antisystematic),
            other => Err(Error::InvalidParameter(format!(
                "unknown SPC form {other:?} (expected systematic, cyclic or antisystematic)"
            ))),
        }
    }
}

/// A binary linear block code given by a full-row-rank k x q generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    label: String,
    dimension: usize,
    length: usize,
    rows: Vec<u32>,
}

impl BinaryLinearCode {
    /// Builds a code from bit-packed generator rows, validating shape and rank.
    pub fn from_rows(label: impl Into<String>, rows: Vec<u32>, length: usize) -> Result<Self> {
        let k = rows.len();
        if length == 0 || length > MAX_CODE_LENGTH {
            return Err(Error::InvalidParameter(format!(
                "code length {length} outside 1..={MAX_CODE_LENGTH}"
            )));
        }
        if k == 0 || k > length {
            return Err(Error::InvalidParameter(format!(
                "dimension {k} outside 1..=length ({length})"
            )));
        }
        let mask = (1u32 << length) - 1;
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::InvalidParameter(
                "generator row has bits beyond the code length".into(),
            ));
        }
        let rank = gf2_rank(&rows);
        if rank != k {
            return Err(Error::InvalidParameter(format!(
                "generator rows are linearly dependent: rank {rank} < {k} rows"
            )));
        }
        Ok(Self {
            label: label.into(),
            dimension: k,
            length,
            rows,
        })
    }

    /// Parses generator rows given as ASCII bitstrings, e.g. `["110", "011"]`.
    pub fn explicit<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter("no generator rows given".into()));
        }
        let length = rows[0].as_ref().len();
        let mut packed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != length {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has length {} but row 0 has length {length}",
                    row.len()
                )));
            }
            let mut word = 0u32;
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => word |= 1 << j,
                    other => {
                        return Err(Error::InvalidParameter(format!(
                            "row {i} column {j}: expected 0 or 1, found {other:?}"
                        )))
                    }
                }
            }
            packed.push(word);
        }
        Self::from_rows(format!("explicit({}x{})", rows.len(), length), packed, length)
    }

    /// Length-q repetition code: one all-ones generator row.
    pub fn repetition(q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!(
                "repetition code needs length >= 2, got {q}"
            )));
        }
        if q > MAX_CODE_LENGTH {
            return Err(Error::InvalidParameter(format!(
                "code length {q} outside 1..={MAX_CODE_LENGTH}"
            )));
        }
        let row = (1u32 << q) - 1;
        Self::from_rows(format!("repetition-{q}"), vec![row], q)
    }

    /// Length-q single parity-check code in the requested generator form.
    ///
    /// The antisystematic form is only a parity-check code for odd q; for
    /// even q it would contain a weight-1 codeword and is rejected.
    pub fn spc(q: usize, form: SpcForm) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidParameter(format!(
                "SPC code needs length >= 3, got {q}"
            )));
        }
        if q > MAX_CODE_LENGTH {
            return Err(Error::InvalidParameter(format!(
                "code length {q} outside 1..={MAX_CODE_LENGTH}"
            )));
        }
        let k = q - 1;
        if form == SpcForm::Antisystematic && q % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "antisystematic SPC requires odd length, got {q} (even length gives minimum distance 1)"
            )));
        }
        let rows: Vec<u32> = match form {
            SpcForm::Systematic => (0..k).map(|i| (1 << i) | (1 << k)).collect(),
            SpcForm::Cyclic => (0..k).map(|i| (1 << i) | (1 << (i + 1))).collect(),
            SpcForm::Antisystematic => {
                let first_k = (1u32 << k) - 1;
                (0..k).map(|i| (first_k ^ (1 << i)) | (1 << k)).collect()
            }
        };
        Self::from_rows(format!("spc-{q}-{}", form.name()), rows, q)
    }

    /// The (7,4) Hamming code with a systematic generator.
    pub fn hamming_7_4() -> Self {
        // Parity part P per row: 110, 101, 011, 111 (columns 4..6).
        let p = [0b011u32, 0b101, 0b110, 0b111];
        let rows = (0..4).map(|i| (1 << i) | (p[i] << 4)).collect();
        Self::from_rows("hamming(7,4)", rows, 7).expect("fixed generator is full rank")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Code dimension k (number of generator rows).
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Code length q (number of columns).
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Local rate k/q.
    pub fn rate(&self) -> f64 {
        self.dimension as f64 / self.length as f64
    }

    /// Generator rows rendered as ASCII bitstrings.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| (0..self.length).map(|j| if r >> j & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    /// Exact weight enumerator A_u = number of weight-u codewords.
    pub fn weight_enumerator(&self) -> WeightEnumerator {
        let mut coeffs = vec![0u64; self.length + 1];
        self.for_each_codeword(|_, word| coeffs[word.count_ones() as usize] += 1);
        WeightEnumerator { coeffs }
    }

    /// Exact input-output weight enumerator B_{u,v} over all 2^k messages.
    pub fn io_weight_enumerator(&self) -> IOWeightEnumerator {
        let mut coeffs = vec![vec![0u64; self.length + 1]; self.dimension + 1];
        self.for_each_codeword(|msg, word| {
            coeffs[msg.count_ones() as usize][word.count_ones() as usize] += 1;
        });
        IOWeightEnumerator { coeffs }
    }

    /// Codeword for a single message (bit i of `msg` selects generator row i).
    pub fn encode(&self, msg: u32) -> u32 {
        let mut word = 0;
        for (i, row) in self.rows.iter().enumerate() {
            if msg >> i & 1 == 1 {
                word ^= row;
            }
        }
        word
    }

    /// Visits every (message, codeword) pair in Gray-code order.
    fn for_each_codeword(&self, mut visit: impl FnMut(u32, u32)) {
        let mut word = 0u32;
        visit(0, word);
        for i in 1u32..(1 << self.dimension) {
            let gray = i ^ (i >> 1);
            word ^= self.rows[i.trailing_zeros() as usize];
            visit(gray, word);
        }
    }
}

/// Rank of a set of bit-packed rows over GF(2).
fn gf2_rank(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &row in rows {
        let mut v = row;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// Exact weight enumerator: `coeffs[u]` counts weight-u codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator {
    coeffs: Vec<u64>,
}

impl WeightEnumerator {
    /// Builds an enumerator from raw coefficients (index = weight).
    pub fn from_coeffs(coeffs: Vec<u64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, u: usize) -> u64 {
        self.coeffs.get(u).copied().unwrap_or(0)
    }

    /// Code length (largest representable weight).
    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Smallest u >= 1 with a nonzero count.
    pub fn min_distance(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(u, _)| u)
            .expect("code has at least one nonzero codeword")
    }

    /// Largest weight with a nonzero count.
    pub fn max_weight(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &c)| c > 0)
            .map(|(u, _)| u)
            .unwrap_or(0)
    }

    /// Total number of codewords (2^k).
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }
}

/// Exact input-output weight enumerator: `coeff(u, v)` counts codewords of
/// weight v generated by messages of weight u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IOWeightEnumerator {
    coeffs: Vec<Vec<u64>>,
}

impl IOWeightEnumerator {
    pub fn from_coeffs(coeffs: Vec<Vec<u64>>) -> Self {
        Self { coeffs }
    }

    pub fn coeff(&self, u: usize, v: usize) -> u64 {
        self.coeffs
            .get(u)
            .and_then(|row| row.get(v))
            .copied()
            .unwrap_or(0)
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.coeffs
    }

    /// Input dimension k.
    pub fn input_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Output length q.
    pub fn output_len(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    /// Marginal over input weights; equals the plain weight enumerator.
    pub fn weight_marginal(&self) -> WeightEnumerator {
        let q = self.output_len();
        let mut coeffs = vec![0u64; q + 1];
        for row in &self.coeffs {
            for (v, &c) in row.iter().enumerate() {
                coeffs[v] += c;
            }
        }
        WeightEnumerator { coeffs }
    }

    /// Total number of weight-2 codewords, summed over input weights.
    pub fn weight_two_total(&self) -> u64 {
        self.coeffs.iter().map(|row| row.get(2).copied().unwrap_or(0)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repetition_2_iowef_is_one_plus_xy2() {
        let code = BinaryLinearCode::repetition(2).unwrap();
        let io = code.io_weight_enumerator();
        assert_eq!(io.coeff(0, 0), 1);
        assert_eq!(io.coeff(1, 2), 1);
        let total: u64 = io.rows().iter().flatten().sum();
        assert_eq!(total, 2);
        assert_eq!(io.weight_two_total(), 1);
    }

    #[test]
    fn repetition_3_wef() {
        let code = BinaryLinearCode::repetition(3).unwrap();
        assert_eq!(code.weight_enumerator().coeffs(), &[1, 0, 0, 1]);
    }

    #[test]
    fn repetition_rejects_short_lengths() {
        assert!(BinaryLinearCode::repetition(1).is_err());
        assert!(BinaryLinearCode::repetition(0).is_err());
    }

    // Independent oracle for the SPC weight spectrum: codewords are exactly
    // the even-weight words, so A_u = C(q, u) for even u.
    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn spc_7_weight_spectrum_matches_even_binomials() {
        for form in [SpcForm::Systematic, SpcForm::Cyclic, SpcForm::Antisystematic] {
            let wef = BinaryLinearCode::spc(7, form).unwrap().weight_enumerator();
            for u in 0..=7 {
                let expect = if u % 2 == 0 { binomial(7, u as u64) } else { 0 };
                assert_eq!(wef.coeff(u), expect, "form {:?} weight {u}", form);
            }
            assert_eq!(wef.min_distance(), 2);
        }
        // Frozen values: (1, 21, 35, 7) at weights (0, 2, 4, 6).
        let wef = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().weight_enumerator();
        assert_eq!(
            [wef.coeff(0), wef.coeff(2), wef.coeff(4), wef.coeff(6)],
            [1, 21, 35, 7]
        );
    }

    #[test]
    fn spc_7_cyclic_weight2_row() {
        // In cyclic form a weight-2 codeword x^a + x^{a+u} comes from the input
        // run of length u starting at row a, so there are 7 - u such inputs.
        let io = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().io_weight_enumerator();
        let got: Vec<u64> = (1..=6).map(|u| io.coeff(u, 2)).collect();
        assert_eq!(got, vec![6, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn spc_7_antisystematic_row_weights() {
        let code = BinaryLinearCode::spc(7, SpcForm::Antisystematic).unwrap();
        for row in code.rows() {
            assert_eq!(row.count_ones(), 6);
        }
        let io = code.io_weight_enumerator();
        assert_eq!(io.coeff(1, 2), 0);
        assert_eq!(io.coeff(1, 6), 6);
    }

    #[test]
    fn spc_7_systematic_low_weight_inputs() {
        let io = BinaryLinearCode::spc(7, SpcForm::Systematic).unwrap().io_weight_enumerator();
        assert_eq!(io.coeff(1, 2), 6);
        assert_eq!(io.coeff(2, 2), 15);
    }

    #[test]
    fn spc_forms_same_codebook_different_io() {
        let wefs: Vec<_> = [SpcForm::Systematic, SpcForm::Cyclic, SpcForm::Antisystematic]
            .iter()
            .map(|&f| BinaryLinearCode::spc(7, f).unwrap().weight_enumerator())
            .collect();
        assert_eq!(wefs[0], wefs[1]);
        assert_eq!(wefs[1], wefs[2]);

        let cyc = BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap().io_weight_enumerator();
        let anti = BinaryLinearCode::spc(7, SpcForm::Antisystematic)
            .unwrap()
            .io_weight_enumerator();
        let sys = BinaryLinearCode::spc(7, SpcForm::Systematic).unwrap().io_weight_enumerator();
        assert_ne!(cyc.rows()[1], anti.rows()[1]);
        assert_ne!(cyc, sys);
        assert_ne!(sys, anti);
    }

    #[test]
    fn antisystematic_even_length_rejected() {
        let err = BinaryLinearCode::spc(6, SpcForm::Antisystematic).unwrap_err();
        assert!(err.to_string().contains("odd length"));
        assert!(BinaryLinearCode::spc(6, SpcForm::Systematic).is_ok());
    }

    #[test]
    fn hamming_7_4_spectrum() {
        let code = BinaryLinearCode::hamming_7_4();
        let wef = code.weight_enumerator();
        assert_eq!(wef.coeffs(), &[1, 0, 0, 7, 7, 0, 0, 1]);
        assert_eq!(wef.min_distance(), 3);
        assert_eq!(wef.total(), 16);
    }

    #[test]
    fn explicit_codes() {
        let rep2 = BinaryLinearCode::explicit(&["11"]).unwrap();
        assert_eq!(
            rep2.weight_enumerator(),
            BinaryLinearCode::repetition(2).unwrap().weight_enumerator()
        );

        let spc3 = BinaryLinearCode::explicit(&["110", "011"]).unwrap();
        let cyc3 = BinaryLinearCode::spc(3, SpcForm::Cyclic).unwrap();
        assert_eq!(spc3.rows(), cyc3.rows());

        let id2 = BinaryLinearCode::explicit(&["10", "01"]).unwrap();
        assert_eq!(id2.weight_enumerator().coeffs(), &[1, 2, 1]);
    }

    #[test]
    fn explicit_rank_deficient_reports_rank() {
        let err = BinaryLinearCode::explicit(&["110", "011", "101"]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rank 2"), "message was: {msg}");
    }

    #[test]
    fn wef_equals_iowef_marginal() {
        for code in [
            BinaryLinearCode::repetition(4).unwrap(),
            BinaryLinearCode::spc(7, SpcForm::Antisystematic).unwrap(),
            BinaryLinearCode::hamming_7_4(),
        ] {
            assert_eq!(code.weight_enumerator(), code.io_weight_enumerator().weight_marginal());
        }
    }

    #[test]
    fn row_permutation_leaves_iowef_unchanged() {
        let code = BinaryLinearCode::hamming_7_4();
        let mut rows = code.rows().to_vec();
        rows.rotate_left(2);
        rows.swap(0, 1);
        let permuted = BinaryLinearCode::from_rows("permuted", rows, 7).unwrap();
        assert_eq!(code.io_weight_enumerator(), permuted.io_weight_enumerator());
    }

    #[test]
    fn iowef_zero_input_row() {
        let io = BinaryLinearCode::hamming_7_4().io_weight_enumerator();
        assert_eq!(io.coeff(0, 0), 1);
        for v in 1..=7 {
            assert_eq!(io.coeff(0, v), 0);
        }
        // Every input word produces exactly one codeword: row sums are C(k, u).
        let expect = [1u64, 4, 6, 4, 1];
        for u in 0..=4 {
            let row_sum: u64 = io.rows()[u].iter().sum();
            assert_eq!(row_sum, expect[u]);
        }
    }
}
