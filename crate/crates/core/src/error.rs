use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("character {character} does not belong to {group}")]
    CharacterMismatch { character: String, group: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("symbol {0} does not generate the character group")]
    Inadmissible(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("computation guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("modular ranks disagree after {attempts} primes: {ranks:?}")]
    RankDisagreement { attempts: usize, ranks: Vec<(u64, usize)> },

    #[error("unknown {kind} {name:?}; available: {available}")]
    Unknown { kind: &'static str, name: String, available: String },

    #[error("missing label on fixed component {0}")]
    MissingLabel(usize),

    #[error("hypersurface: {0}")]
    Hypersurface(String),

    #[error("projection functional does not vanish on relation {row}: {detail}")]
    IllDefinedFunctional { row: usize, detail: String },

    #[error("fixture drift: {0}")]
    FixtureDrift(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
