//! Parity embedding and extraction: one payload character per pixel triad.
//!
//! Each character's 8-bit ASCII code is written MSB-first into the
//! parities of the first 8 channel values of its triad (r,g,b, r,g,b,
//! r,g); the ninth channel is never touched. A channel whose parity
//! already matches is left alone, otherwise it is decremented, except
//! value 0 asked to become odd, which increments to 1.

use crate::error::{Error, Result};
use crate::image_model::ImageMatrix;
use crate::pls::{validate_pls, PixelLocatorSequence, PlsIssue};

/// Forces a channel value's parity to `odd`, moving it by at most 1.
pub fn set_parity(value: u8, odd: bool) -> u8 {
    if (value % 2 == 1) == odd {
        value
    } else if value == 0 {
        1
    } else {
        value - 1
    }
}

/// Maximum number of characters an image can carry: one per triad.
pub fn capacity(image: &ImageMatrix) -> u64 {
    image.total_pixels() / 3
}

fn check_plan(cover: &ImageMatrix, pls: &PixelLocatorSequence, payload: &str) -> Result<()> {
    if payload.is_empty() {
        return Err(Error::EmptyPlaintext);
    }
    if !payload
        .chars()
        .all(|c| c.is_ascii_digit() || ('a'..='f').contains(&c))
    {
        return Err(Error::InvalidHexDigit);
    }
    if pls.len() as u64 != 3 * payload.len() as u64 {
        return Err(Error::CapacityExceeded {
            needed: 3 * payload.len() as u64,
            available: pls.len() as u64,
        });
    }
    check_pls(cover, pls)
}

fn check_pls(image: &ImageMatrix, pls: &PixelLocatorSequence) -> Result<()> {
    if pls.len() as u64 > image.total_pixels() {
        return Err(Error::CapacityExceeded {
            needed: pls.len() as u64,
            available: image.total_pixels(),
        });
    }
    let issues = validate_pls(pls, image.total_pixels());
    if let Some(issue) = issues.first() {
        if let PlsIssue::IndexOutOfRange { index, .. } = issue {
            return Err(Error::IndexOutOfRange {
                index: *index,
                total: image.total_pixels(),
            });
        }
        return Err(Error::InvalidPls(
            issues
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    Ok(())
}

/// Writes the payload into the PLS-selected triads of a copy of the cover.
/// Every channel outside the triads, and every triad's ninth channel, is
/// bit-identical to the cover.
pub fn embed(
    cover: &ImageMatrix,
    pls: &PixelLocatorSequence,
    payload: &str,
) -> Result<ImageMatrix> {
    check_plan(cover, pls, payload)?;
    let mut stego = cover.clone();
    for (k, ch) in payload.bytes().enumerate() {
        let triad = &pls.indices()[3 * k..3 * k + 3];
        let mut pixels = [
            stego.pixel_at(triad[0])?,
            stego.pixel_at(triad[1])?,
            stego.pixel_at(triad[2])?,
        ];
        for bit_pos in 0..8 {
            let odd = (ch >> (7 - bit_pos)) & 1 == 1;
            let pixel = &mut pixels[bit_pos / 3];
            let channel = match bit_pos % 3 {
                0 => &mut pixel.r,
                1 => &mut pixel.g,
                _ => &mut pixel.b,
            };
            *channel = set_parity(*channel, odd);
        }
        for (i, &index) in triad.iter().enumerate() {
            stego.set_pixel_at(index, pixels[i])?;
        }
    }
    Ok(stego)
}

/// Reads one character per triad back out of channel parities. Stops when
/// the PLS is exhausted; returns raw characters, hex or not.
pub fn extract(stego: &ImageMatrix, pls: &PixelLocatorSequence) -> Result<String> {
    check_pls(stego, pls)?;
    let mut out = String::with_capacity(pls.len() / 3);
    for triad in pls.indices().chunks_exact(3) {
        let pixels = [
            stego.pixel_at(triad[0])?,
            stego.pixel_at(triad[1])?,
            stego.pixel_at(triad[2])?,
        ];
        let mut code = 0u8;
        for bit_pos in 0..8 {
            let pixel = pixels[bit_pos / 3];
            let value = match bit_pos % 3 {
                0 => pixel.r,
                1 => pixel.g,
                _ => pixel.b,
            };
            code = (code << 1) | (value & 1);
        }
        out.push(code as char);
    }
    Ok(out)
}
