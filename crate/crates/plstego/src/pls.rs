//! Pixel Locator Sequence: the ordered set of distinct pixel indices that
//! decides where payload characters live. Generated by a partial modern
//! Fisher-Yates shuffle, shipped to the receiver as an encrypted key file.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

pub const PLS_MAGIC: &[u8; 4] = b"PLS1";

/// Ordered sequence of distinct linear pixel indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelLocatorSequence {
    indices: Vec<u32>,
    total_pixels: u64,
}

impl PixelLocatorSequence {
    pub fn new(indices: Vec<u32>, total_pixels: u64) -> Self {
        PixelLocatorSequence {
            indices,
            total_pixels,
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn total_pixels(&self) -> u64 {
        self.total_pixels
    }
}

/// Problems found when validating a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlsIssue {
    DuplicateIndex { position: usize, index: u32 },
    IndexOutOfRange { position: usize, index: u32 },
    BadLength { length: usize },
}

impl std::fmt::Display for PlsIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PlsIssue::DuplicateIndex { position, index } => {
                write!(f, "duplicate index {index} at position {position}")
            }
            PlsIssue::IndexOutOfRange { position, index } => {
                write!(f, "index {index} at position {position} is out of range")
            }
            PlsIssue::BadLength { length } => {
                write!(f, "length {length} is not a positive multiple of 3")
            }
        }
    }
}

/// Number of pixels needed to embed a message of `message_length`
/// characters: three pixels per character.
pub fn required_pixels(message_length: u64) -> u64 {
    3 * message_length
}

/// A source of unbiased uniform draws on `[0, bound)`. The shuffle is
/// written against this trait so tests can drive it with explicit choice
/// streams.
pub trait UniformSource {
    fn next_below(&mut self, bound: u64) -> u64;
}

impl<R: Rng> UniformSource for R {
    fn next_below(&mut self, bound: u64) -> u64 {
        // gen_range rejects rather than taking a modulus, so no bias.
        self.gen_range(0..bound)
    }
}

/// Partial modern Fisher-Yates shuffle over a supplied uniform source.
///
/// Initializes `arr[i] = i`, then for each step `i` in `[0, needed)` swaps
/// `arr[n-1-i]` with `arr[r]`, `r` uniform on `[0, n-i)`, emitting the
/// settled tail entries in the order they are fixed.
pub fn generate_pls_with<S: UniformSource>(
    total_pixels: u64,
    needed: u64,
    source: &mut S,
) -> Result<PixelLocatorSequence> {
    if needed > total_pixels {
        return Err(Error::CapacityExceeded {
            needed,
            available: total_pixels,
        });
    }
    if needed == 0 {
        return Err(Error::InvalidPls("requested an empty sequence".into()));
    }
    let n = total_pixels as usize;
    let mut arr: Vec<u32> = (0..n as u32).collect();
    let mut indices = Vec::with_capacity(needed as usize);
    for i in 0..needed as usize {
        let r = source.next_below(total_pixels - i as u64) as usize;
        arr.swap(n - 1 - i, r);
        indices.push(arr[n - 1 - i]);
    }
    Ok(PixelLocatorSequence::new(indices, total_pixels))
}

/// Seeded convenience wrapper around [`generate_pls_with`]. Deterministic
/// for a fixed seed.
pub fn generate_pls(total_pixels: u64, needed: u64, seed: u64) -> Result<PixelLocatorSequence> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    generate_pls_with(total_pixels, needed, &mut rng)
}

/// Checks distinctness, range, and the triad length rule. Returns every
/// issue found rather than stopping at the first.
pub fn validate_pls(pls: &PixelLocatorSequence, total_pixels: u64) -> Vec<PlsIssue> {
    let mut issues = Vec::new();
    let len = pls.len();
    if len == 0 || !len.is_multiple_of(3) {
        issues.push(PlsIssue::BadLength { length: len });
    }
    let mut seen = std::collections::HashSet::with_capacity(len);
    for (position, &index) in pls.indices().iter().enumerate() {
        if index as u64 >= total_pixels {
            issues.push(PlsIssue::IndexOutOfRange { position, index });
        }
        if !seen.insert(index) {
            issues.push(PlsIssue::DuplicateIndex { position, index });
        }
    }
    issues
}

/// Serializes as magic "PLS1", big-endian u32 count, then each index as a
/// big-endian u32.
pub fn serialize_pls(pls: &PixelLocatorSequence) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + 4 * pls.len());
    out.extend_from_slice(PLS_MAGIC);
    out.extend_from_slice(&(pls.len() as u32).to_be_bytes());
    for &index in pls.indices() {
        out.extend_from_slice(&index.to_be_bytes());
    }
    out
}

/// Inverse of [`serialize_pls`]. `total_pixels` is re-attached from the
/// caller since the wire format does not carry it.
pub fn deserialize_pls(bytes: &[u8], total_pixels: u64) -> Result<PixelLocatorSequence> {
    if bytes.len() < 8 {
        return Err(Error::MalformedPls("shorter than header".into()));
    }
    if &bytes[..4] != PLS_MAGIC {
        return Err(Error::MalformedPls("bad magic".into()));
    }
    let count = u32::from_be_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let expected = 8 + 4 * count;
    if bytes.len() != expected {
        return Err(Error::MalformedPls(format!(
            "expected {expected} bytes for {count} indices, got {}",
            bytes.len()
        )));
    }
    let indices = bytes[8..]
        .chunks_exact(4)
        .map(|c| u32::from_be_bytes(c.try_into().unwrap()))
        .collect();
    Ok(PixelLocatorSequence::new(indices, total_pixels))
}

/// Parses a manually written sequence: one decimal index per line, blank
/// lines ignored.
pub fn parse_manual_pls(text: &str, total_pixels: u64) -> Result<PixelLocatorSequence> {
    let mut indices = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let index: u32 = line.parse().map_err(|_| {
            Error::InvalidPls(format!("line {}: '{line}' is not an index", lineno + 1))
        })?;
        indices.push(index);
    }
    let pls = PixelLocatorSequence::new(indices, total_pixels);
    let issues = validate_pls(&pls, total_pixels);
    if issues.is_empty() {
        Ok(pls)
    } else {
        Err(Error::InvalidPls(
            issues
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ))
    }
}
