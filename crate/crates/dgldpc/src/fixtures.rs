//! Shared ensemble constructors for unit tests.

use crate::ensemble::Ensemble;
use crate::gf2::{BinaryLinearCode, SpcForm};

/// Regular (3,6) LDPC ensemble: repetition-3 VNs, SPC-6 CNs.
pub fn ldpc_3_6() -> Ensemble {
    Ensemble::build(
        vec![(BinaryLinearCode::repetition(3).unwrap(), 1.0)],
        vec![(BinaryLinearCode::spc(6, SpcForm::Cyclic).unwrap(), 1.0)],
    )
    .unwrap()
}

/// First example ensemble: {rep-2, SPC-7 cyclic} VNs, {Hamming(7,4), SPC-7} CNs.
pub fn ensemble_1() -> Ensemble {
    Ensemble::build(
        vec![
            (BinaryLinearCode::repetition(2).unwrap(), 0.055646),
            (BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap(), 0.944354),
        ],
        vec![
            (BinaryLinearCode::hamming_7_4(), 0.965221),
            (BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap(), 0.034779),
        ],
    )
    .unwrap()
}

/// Second example ensemble: four SPC/repetition VN types, same CN side.
pub fn ensemble_2() -> Ensemble {
    Ensemble::build(
        vec![
            (BinaryLinearCode::repetition(2).unwrap(), 0.022647),
            (BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap(), 0.100000),
            (BinaryLinearCode::spc(7, SpcForm::Antisystematic).unwrap(), 0.539920),
            (BinaryLinearCode::spc(7, SpcForm::Systematic).unwrap(), 0.337432),
        ],
        vec![
            (BinaryLinearCode::hamming_7_4(), 0.965221),
            (BinaryLinearCode::spc(7, SpcForm::Cyclic).unwrap(), 0.034779),
        ],
    )
    .unwrap()
}

/// Toy instance used by the brute-force oracle: rep-2 VNs against SPC-4 CNs.
pub fn toy_rep2_spc4() -> Ensemble {
    Ensemble::build(
        vec![(BinaryLinearCode::repetition(2).unwrap(), 1.0)],
        vec![(BinaryLinearCode::spc(4, SpcForm::Cyclic).unwrap(), 1.0)],
    )
    .unwrap()
}
