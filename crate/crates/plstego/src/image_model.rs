//! RGB image container and the linear-index addressing used by the codec.
//!
//! Pixels are addressed both by (row, column) and by a single linear index
//! counting left-to-right, top-to-bottom. Only lossless formats (PNG, BMP)
//! are accepted on load and save, since LSB payloads do not survive lossy
//! recompression.

use std::path::Path;

use image::ImageReader;

use crate::error::{Error, Result};

/// One RGB sample, 8 bits per channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

/// A height × width grid of RGB pixels stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageMatrix {
    height: u32,
    width: u32,
    pixels: Vec<Pixel>,
}

impl ImageMatrix {
    pub fn new(height: u32, width: u32, pixels: Vec<Pixel>) -> Self {
        assert!(height >= 1 && width >= 1, "image must be at least 1x1");
        assert_eq!(
            pixels.len() as u64,
            height as u64 * width as u64,
            "pixel count must equal height * width"
        );
        ImageMatrix {
            height,
            width,
            pixels,
        }
    }

    /// Builds an image with every pixel set to the same value.
    pub fn filled(height: u32, width: u32, fill: Pixel) -> Self {
        Self::new(
            height,
            width,
            vec![fill; height as usize * width as usize],
        )
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn total_pixels(&self) -> u64 {
        self.height as u64 * self.width as u64
    }

    pub fn pixel(&self, row: u32, col: u32) -> Pixel {
        self.pixels[(row as u64 * self.width as u64 + col as u64) as usize]
    }

    pub fn pixels(&self) -> &[Pixel] {
        &self.pixels
    }

    /// Pixel at a linear index.
    pub fn pixel_at(&self, index: u32) -> Result<Pixel> {
        if (index as u64) >= self.total_pixels() {
            return Err(Error::IndexOutOfRange {
                index,
                total: self.total_pixels(),
            });
        }
        Ok(self.pixels[index as usize])
    }

    pub fn set_pixel_at(&mut self, index: u32, pixel: Pixel) -> Result<()> {
        if (index as u64) >= self.total_pixels() {
            return Err(Error::IndexOutOfRange {
                index,
                total: self.total_pixels(),
            });
        }
        self.pixels[index as usize] = pixel;
        Ok(())
    }
}

/// Maps a linear pixel index to (row, column) for a given image width.
pub fn locate(linear_index: u32, width: u32) -> (u32, u32) {
    (linear_index / width, linear_index % width)
}

fn check_lossless_extension(path: &Path) -> Result<()> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .unwrap_or_default();
    match ext.as_str() {
        "png" | "bmp" => Ok(()),
        other => Err(Error::UnsupportedFormat(format!(
            "'{other}' is not a supported lossless format (use png or bmp)"
        ))),
    }
}

/// Loads a PNG or BMP image as an [`ImageMatrix`].
///
/// RGBA alpha is stripped; grayscale and palette images are expanded to RGB.
/// Lossy formats are rejected outright.
pub fn load_image(path: &Path) -> Result<ImageMatrix> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    check_lossless_extension(path)?;
    let reader = ImageReader::open(path)
        .map_err(Error::Io)?
        .with_guessed_format()
        .map_err(Error::Io)?;
    match reader.format() {
        Some(image::ImageFormat::Png) | Some(image::ImageFormat::Bmp) => {}
        Some(f) => {
            return Err(Error::UnsupportedFormat(format!(
                "{f:?} content is not a supported lossless format"
            )))
        }
        None => return Err(Error::DecodeError("unrecognized image data".into())),
    }
    let dynamic = reader
        .decode()
        .map_err(|e| Error::DecodeError(e.to_string()))?;
    let rgb = dynamic.to_rgb8();
    let (width, height) = rgb.dimensions();
    let pixels = rgb
        .pixels()
        .map(|p| Pixel {
            r: p.0[0],
            g: p.0[1],
            b: p.0[2],
        })
        .collect();
    Ok(ImageMatrix::new(height, width, pixels))
}

/// Saves an [`ImageMatrix`] as PNG or BMP. The load/save cycle is
/// channel-exact.
pub fn save_image(img: &ImageMatrix, path: &Path) -> Result<()> {
    check_lossless_extension(path)?;
    let mut buf = image::RgbImage::new(img.width(), img.height());
    for row in 0..img.height() {
        for col in 0..img.width() {
            let p = img.pixel(row, col);
            buf.put_pixel(col, row, image::Rgb([p.r, p.g, p.b]));
        }
    }
    buf.save(path).map_err(|e| match e {
        image::ImageError::IoError(io) => Error::Io(io),
        other => Error::UnsupportedFormat(other.to_string()),
    })
}
