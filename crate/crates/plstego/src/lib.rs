//! Hide AES-256-sealed text in the least-significant bits of randomly
//! selected image pixels.
//!
//! Pixel selection is governed by a Pixel Locator Sequence (PLS): distinct
//! pixel indices drawn by a partial Fisher-Yates shuffle. The sequence is
//! itself encrypted and shipped as a separate key file, so recovering the
//! message needs the stego image, the key file, and the passphrase.

pub mod crypto;
mod error;
pub mod image_model;
pub mod metrics;
pub mod pls;
pub mod stego_codec;

pub use error::{Error, Result};
