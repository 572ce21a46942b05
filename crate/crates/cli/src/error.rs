use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("could not parse set element {0:?} as an integer")]
    BadElement(String),
    #[error("invalid set: {0}")]
    BadSet(#[from] spectile::Error),
    #[error("cannot enumerate sets of size {n} inside [0, {m})")]
    BadEnumeration { n: usize, m: u64 },
    #[error("unknown experiment {0:?} (known: {1})")]
    UnknownExperiment(String, String),
    #[error("invalid configuration: {0}")]
    Config(String),
}
