use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported root system {kind}{rank}")]
    UnsupportedSystem { kind: char, rank: usize },
    #[error("weights belong to different root systems")]
    MismatchedSystems,
    #[error("level must be non-negative, got {0}")]
    NegativeLevel(i64),
    #[error("weight is not in the weight lattice")]
    NotInWeightLattice,
    #[error(
        "k + h^vee = {t} is not admissible (need p/q in lowest terms with p >= h^vee = {h_dual})"
    )]
    NotAdmissible { t: Rational, h_dual: i64 },
    #[error("pole: {0}")]
    Pole(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("weight is not dominant integrable at level {0}")]
    NotDominantIntegrable(i64),
    #[error("parameter is not generic in the checked range: {0}")]
    NonGeneric(String),
    #[error("Kac label matching failed: {0}")]
    LabelMatch(String),
    #[error("BRST complex: {0}")]
    Brst(String),
    #[error("cutoff too large: {0}")]
    CutoffTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
