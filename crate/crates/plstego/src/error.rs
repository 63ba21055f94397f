use std::path::PathBuf;

/// Errors raised across the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("failed to decode image: {0}")]
    DecodeError(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("linear index {index} out of range for {total} pixels")]
    IndexOutOfRange { index: u32, total: u64 },
    #[error("capacity exceeded: need {needed} pixels, image has {available}")]
    CapacityExceeded { needed: u64, available: u64 },
    #[error("invalid pixel locator sequence: {0}")]
    InvalidPls(String),
    #[error("malformed PLS data: {0}")]
    MalformedPls(String),
    #[error("decryption failed")]
    BadPadding,
    #[error("malformed sealed payload: {0}")]
    MalformedPayload(String),
    #[error("empty passphrase")]
    EmptyPassphrase,
    #[error("empty plaintext")]
    EmptyPlaintext,
    #[error("invalid hex digit in payload")]
    InvalidHexDigit,
    #[error("hex payload has odd length")]
    OddLength,
    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
}

pub type Result<T> = std::result::Result<T, Error>;
