use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kgv_core::error::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed {what}: {detail}")]
    Input { what: &'static str, detail: String },
    #[error("--format {format} is not available for `{command}`")]
    Format { format: &'static str, command: &'static str },
    #[error("unknown override key `{0}`")]
    Override(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn input(what: &'static str, detail: impl ToString) -> CliError {
    CliError::Input {
        what,
        detail: detail.to_string(),
    }
}
