//! Sealing of message payloads and PLS key files with AES-256-CBC.
//!
//! Keys come from PBKDF2-HMAC-SHA256 over a passphrase, with the random
//! salt stored next to the IV. A sealed message travels inside the image
//! as lowercase hex of salt ‖ iv ‖ ciphertext; the PLS travels in its own
//! encrypted file with the same layout in raw bytes.

use aes::cipher::{BlockEncrypt, KeyInit, KeyIvInit};
use aes::Aes256;
use cbc::cipher::block_padding::Pkcs7;
use cbc::cipher::{BlockDecryptMut, BlockEncryptMut};
use rand::RngCore;

use crate::error::{Error, Result};
use crate::pls::{deserialize_pls, serialize_pls, PixelLocatorSequence};

type Aes256CbcEnc = cbc::Encryptor<Aes256>;
type Aes256CbcDec = cbc::Decryptor<Aes256>;

pub const SALT_LEN: usize = 16;
pub const IV_LEN: usize = 16;
const PBKDF2_ITERATIONS: u32 = 100_000;

/// A 256-bit AES key.
#[derive(Clone)]
pub struct Key256([u8; 32]);

impl Key256 {
    pub fn from_bytes(key: [u8; 32]) -> Self {
        Key256(key)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

/// salt ‖ iv ‖ AES-256-CBC ciphertext of the secret message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SealedPayload {
    pub salt: [u8; SALT_LEN],
    pub iv: [u8; IV_LEN],
    pub ciphertext: Vec<u8>,
}

/// On-disk container for the encrypted PLS: salt ‖ iv ‖ ciphertext of the
/// serialized sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlsKeyFile {
    pub salt: [u8; SALT_LEN],
    pub iv: [u8; IV_LEN],
    pub ciphertext: Vec<u8>,
}

/// PBKDF2-HMAC-SHA256, 100,000 iterations, 32-byte output.
pub fn derive_key(passphrase: &str, salt: &[u8; SALT_LEN]) -> Result<Key256> {
    if passphrase.is_empty() {
        return Err(Error::EmptyPassphrase);
    }
    let mut key = [0u8; 32];
    pbkdf2::pbkdf2_hmac::<sha2::Sha256>(passphrase.as_bytes(), salt, PBKDF2_ITERATIONS, &mut key);
    Ok(Key256(key))
}

/// Encrypts one 16-byte block with the raw AES-256 cipher. Exists so the
/// cipher core can be checked against published known-answer vectors.
pub fn aes256_encrypt_block(key: &Key256, block: &[u8; 16]) -> [u8; 16] {
    let cipher = Aes256::new(key.as_bytes().into());
    let mut out = (*block).into();
    cipher.encrypt_block(&mut out);
    out.into()
}

fn cbc_encrypt(key: &Key256, iv: &[u8; IV_LEN], plaintext: &[u8]) -> Vec<u8> {
    Aes256CbcEnc::new(key.as_bytes().into(), iv.into())
        .encrypt_padded_vec_mut::<Pkcs7>(plaintext)
}

fn cbc_decrypt(key: &Key256, iv: &[u8; IV_LEN], ciphertext: &[u8]) -> Result<Vec<u8>> {
    Aes256CbcDec::new(key.as_bytes().into(), iv.into())
        .decrypt_padded_vec_mut::<Pkcs7>(ciphertext)
        .map_err(|_| Error::BadPadding)
}

fn fresh_salt_iv() -> ([u8; SALT_LEN], [u8; IV_LEN]) {
    let mut salt = [0u8; SALT_LEN];
    let mut iv = [0u8; IV_LEN];
    rand::thread_rng().fill_bytes(&mut salt);
    rand::thread_rng().fill_bytes(&mut iv);
    (salt, iv)
}

/// Seals plaintext under a passphrase with a fresh random salt and IV.
pub fn seal(plaintext: &[u8], passphrase: &str) -> Result<SealedPayload> {
    let (salt, iv) = fresh_salt_iv();
    seal_with_params(plaintext, passphrase, salt, iv)
}

/// Deterministic variant of [`seal`] with caller-chosen salt and IV.
pub fn seal_with_params(
    plaintext: &[u8],
    passphrase: &str,
    salt: [u8; SALT_LEN],
    iv: [u8; IV_LEN],
) -> Result<SealedPayload> {
    if plaintext.is_empty() {
        return Err(Error::EmptyPlaintext);
    }
    let key = derive_key(passphrase, &salt)?;
    let ciphertext = cbc_encrypt(&key, &iv, plaintext);
    Ok(SealedPayload {
        salt,
        iv,
        ciphertext,
    })
}

/// Recovers the plaintext. A wrong passphrase surfaces as [`Error::BadPadding`]
/// with no hint as to which input was wrong.
pub fn unseal(sealed: &SealedPayload, passphrase: &str) -> Result<Vec<u8>> {
    let key = derive_key(passphrase, &sealed.salt)?;
    cbc_decrypt(&key, &sealed.iv, &sealed.ciphertext)
}

impl SealedPayload {
    /// Lowercase hex of salt ‖ iv ‖ ciphertext — the alphabet embedded
    /// into pixel parities.
    pub fn to_hex(&self) -> String {
        let mut bytes = Vec::with_capacity(SALT_LEN + IV_LEN + self.ciphertext.len());
        bytes.extend_from_slice(&self.salt);
        bytes.extend_from_slice(&self.iv);
        bytes.extend_from_slice(&self.ciphertext);
        hex::encode(bytes)
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        let bytes = from_hex(text)?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < SALT_LEN + IV_LEN + 16 {
            return Err(Error::MalformedPayload(
                "shorter than salt + iv + one block".into(),
            ));
        }
        let ciphertext = bytes[SALT_LEN + IV_LEN..].to_vec();
        if !ciphertext.len().is_multiple_of(16) {
            return Err(Error::MalformedPayload(
                "ciphertext is not a whole number of blocks".into(),
            ));
        }
        Ok(SealedPayload {
            salt: bytes[..SALT_LEN].try_into().unwrap(),
            iv: bytes[SALT_LEN..SALT_LEN + IV_LEN].try_into().unwrap(),
            ciphertext,
        })
    }
}

/// Lowercase hex encoding.
pub fn to_hex(bytes: &[u8]) -> String {
    hex::encode(bytes)
}

/// Strict lowercase-friendly hex decoding (accepts upper too, rejects
/// anything outside the hex alphabet or odd-length input).
pub fn from_hex(text: &str) -> Result<Vec<u8>> {
    hex::decode(text).map_err(|e| match e {
        hex::FromHexError::OddLength => Error::OddLength,
        _ => Error::InvalidHexDigit,
    })
}

/// Encrypts the serialized PLS under the passphrase with fresh salt/IV.
pub fn seal_pls(pls: &PixelLocatorSequence, passphrase: &str) -> Result<PlsKeyFile> {
    let (salt, iv) = fresh_salt_iv();
    seal_pls_with_params(pls, passphrase, salt, iv)
}

/// Deterministic variant of [`seal_pls`] with caller-chosen salt and IV.
pub fn seal_pls_with_params(
    pls: &PixelLocatorSequence,
    passphrase: &str,
    salt: [u8; SALT_LEN],
    iv: [u8; IV_LEN],
) -> Result<PlsKeyFile> {
    let key = derive_key(passphrase, &salt)?;
    let ciphertext = cbc_encrypt(&key, &iv, &serialize_pls(pls));
    Ok(PlsKeyFile {
        salt,
        iv,
        ciphertext,
    })
}

/// Decrypts a key file and deserializes the PLS, verifying the magic.
pub fn open_pls(
    file: &PlsKeyFile,
    passphrase: &str,
    total_pixels: u64,
) -> Result<PixelLocatorSequence> {
    let key = derive_key(passphrase, &file.salt)?;
    let bytes = cbc_decrypt(&key, &file.iv, &file.ciphertext)?;
    deserialize_pls(&bytes, total_pixels)
}

impl PlsKeyFile {
    /// Bit-exact on-disk layout: salt(16) ‖ iv(16) ‖ ciphertext.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(SALT_LEN + IV_LEN + self.ciphertext.len());
        out.extend_from_slice(&self.salt);
        out.extend_from_slice(&self.iv);
        out.extend_from_slice(&self.ciphertext);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < SALT_LEN + IV_LEN + 16 {
            return Err(Error::MalformedPls("key file shorter than minimum".into()));
        }
        let ciphertext = bytes[SALT_LEN + IV_LEN..].to_vec();
        if !ciphertext.len().is_multiple_of(16) {
            return Err(Error::MalformedPls(
                "ciphertext is not a whole number of blocks".into(),
            ));
        }
        Ok(PlsKeyFile {
            salt: bytes[..SALT_LEN].try_into().unwrap(),
            iv: bytes[SALT_LEN..SALT_LEN + IV_LEN].try_into().unwrap(),
            ciphertext,
        })
    }
}
