//! Weight-ladder reduction of the embedding problem to block Gram equations,
//! sign-rule elimination with replayable certificates, and the classification
//! driver.

mod certificate;
mod eliminate;
mod lift;
mod system;
mod theorem;
mod weights;

pub use certificate::{check_assignment, diagonal_defect, replay_certificate, witness_matrices};
pub use eliminate::{eliminate, CertificateStep, Rule, Status, TerminalRelation, Verdict, WitnessClass};
pub use lift::{assemble_xyh, lift_to_candidate, WeightLayout};
pub use system::{
    derive_constraints, BlockSystem, BlockUnknown, DiagonalEquation, Factor, GramForm, GramTerm,
    OffDiagonalEquation, ProductTerm, UnknownKind,
};
pub use theorem::{
    analyze_datum, classify, verify_theorem, ClassifyOptions, DatumReport, FeasibleClass, SectorReport,
    TheoremSummary,
};
pub use weights::{
    default_max_weight, enumerate_weight_data, Sector, Side,
    WeightData,
};
