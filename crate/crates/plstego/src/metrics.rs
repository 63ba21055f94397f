//! Cover-vs-stego quality metrics: MSE, PSNR, and per-channel histograms.
//!
//! MSE averages squared error over all 3·m·n channel samples. PSNR is
//! 20·log10(255/√MSE), reported as a distinct infinite marker when the
//! images are identical.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::image_model::ImageMatrix;

pub const MAX_PIXEL_VALUE: f64 = 255.0;

/// MSE/PSNR summary of a cover/stego pair.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    pub mse: f64,
    /// `f64::INFINITY` when mse is zero.
    pub psnr_db: f64,
    pub width: u32,
    pub height: u32,
}

impl Serialize for QualityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QualityReport", 4)?;
        s.serialize_field("mse", &self.mse)?;
        if self.psnr_db.is_finite() {
            s.serialize_field("psnr_db", &self.psnr_db)?;
        } else {
            s.serialize_field("psnr_db", "inf")?;
        }
        s.serialize_field("width", &self.width)?;
        s.serialize_field("height", &self.height)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    R,
    G,
    B,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::R, Channel::G, Channel::B];

    pub fn name(&self) -> &'static str {
        match self {
            Channel::R => "r",
            Channel::G => "g",
            Channel::B => "b",
        }
    }
}

/// 256-bin intensity histogram of one channel plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelHistogram {
    pub channel: Channel,
    pub bins: Vec<u64>,
}

fn check_dimensions(a: &ImageMatrix, b: &ImageMatrix) -> Result<()> {
    if a.height() != b.height() || a.width() != b.width() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    Ok(())
}

/// Mean squared error across all channel samples of two equal-sized images.
pub fn mse(reference: &ImageMatrix, distorted: &ImageMatrix) -> Result<f64> {
    check_dimensions(reference, distorted)?;
    let mut sum = 0.0f64;
    for (a, b) in reference.pixels().iter().zip(distorted.pixels()) {
        for (x, y) in [(a.r, b.r), (a.g, b.g), (a.b, b.b)] {
            let d = x as f64 - y as f64;
            sum += d * d;
        }
    }
    Ok(sum / (3.0 * reference.total_pixels() as f64))
}

/// PSNR in decibels for a given MSE; infinite when the error is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse <= 0.0 {
        f64::INFINITY
    } else {
        20.0 * (MAX_PIXEL_VALUE / mse.sqrt()).log10()
    }
}

pub fn psnr(reference: &ImageMatrix, distorted: &ImageMatrix) -> Result<f64> {
    Ok(psnr_from_mse(mse(reference, distorted)?))
}

/// Counts pixels by intensity on the selected channel plane.
pub fn histogram(image: &ImageMatrix, channel: Channel) -> ChannelHistogram {
    let mut bins = vec![0u64; 256];
    for p in image.pixels() {
        let v = match channel {
            Channel::R => p.r,
            Channel::G => p.g,
            Channel::B => p.b,
        };
        bins[v as usize] += 1;
    }
    ChannelHistogram { channel, bins }
}

/// Full comparison bundle: one report plus the six per-channel histograms.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub report: QualityReport,
    pub cover_histograms: [ChannelHistogram; 3],
    pub stego_histograms: [ChannelHistogram; 3],
}

pub fn compare_report(cover: &ImageMatrix, stego: &ImageMatrix) -> Result<Comparison> {
    let mse = mse(cover, stego)?;
    Ok(Comparison {
        report: QualityReport {
            mse,
            psnr_db: psnr_from_mse(mse),
            width: cover.width(),
            height: cover.height(),
        },
        cover_histograms: Channel::ALL.map(|c| histogram(cover, c)),
        stego_histograms: Channel::ALL.map(|c| histogram(stego, c)),
    })
}

/// CSV body for one channel: 256 rows of `value,cover_count,stego_count`.
pub fn histogram_csv(cover: &ChannelHistogram, stego: &ChannelHistogram) -> String {
    let mut out = String::with_capacity(256 * 12);
    for v in 0..256 {
        out.push_str(&format!("{v},{},{}\n", cover.bins[v], stego.bins[v]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image_model::Pixel;
    use crate::pls::{generate_pls, required_pixels};
    use crate::stego_codec::embed;
    use rand::{Rng, SeedableRng};

    fn random_image(height: u32, width: u32, seed: u64) -> ImageMatrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let pixels = (0..height as usize * width as usize)
            .map(|_| Pixel {
                r: rng.gen(),
                g: rng.gen(),
                b: rng.gen(),
            })
            .collect();
        ImageMatrix::new(height, width, pixels)
    }

    fn random_hex(len: usize, seed: u64) -> String {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..len)
            .map(|_| char::from_digit(rng.gen_range(0..16), 16).unwrap())
            .collect()
    }

    #[test]
    fn mse_identical_is_zero() {
        let img = random_image(4, 4, 0);
        assert_eq!(mse(&img, &img).unwrap(), 0.0);
    }

    #[test]
    fn mse_unit_error() {
        let a = ImageMatrix::filled(1, 1, Pixel { r: 0, g: 0, b: 0 });
        let b = ImageMatrix::filled(1, 1, Pixel { r: 1, g: 1, b: 1 });
        assert_eq!(mse(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn mse_symmetric() {
        let a = random_image(7, 5, 1);
        let b = random_image(7, 5, 2);
        assert_eq!(mse(&a, &b).unwrap(), mse(&b, &a).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let a = random_image(2, 2, 0);
        let b = random_image(2, 3, 0);
        assert!(matches!(mse(&a, &b), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn psnr_published_pairs() {
        for (mse_in, expected) in [
            (0.95186, 48.34506),
            (1.68467, 45.86564),
            (2.27218, 44.56635),
            (1.19884, 47.34317),
            (2.24326, 44.62198),
        ] {
            let got = psnr_from_mse(mse_in);
            assert!(
                (got - expected).abs() < 0.01,
                "psnr({mse_in}) = {got}, expected {expected}"
            );
        }
    }

    #[test]
    fn psnr_of_unit_mse() {
        assert!((psnr_from_mse(1.0) - 20.0 * 255f64.log10()).abs() < 1e-9);
    }

    #[test]
    fn psnr_infinite_at_zero() {
        assert!(psnr_from_mse(0.0).is_infinite());
    }

    #[test]
    fn psnr_decreasing_in_mse() {
        let mut prev = f64::INFINITY;
        for m in [0.01, 0.1, 1.0, 4.0, 100.0] {
            let p = psnr_from_mse(m);
            assert!(p < prev);
            prev = p;
        }
    }

    #[test]
    fn histogram_all_black() {
        let img = ImageMatrix::filled(2, 2, Pixel { r: 0, g: 0, b: 0 });
        let h = histogram(&img, Channel::G);
        assert_eq!(h.bins[0], 4);
        assert_eq!(h.bins.iter().sum::<u64>(), 4);
    }

    #[test]
    fn histogram_mass_conserved() {
        let img = random_image(13, 9, 3);
        for c in Channel::ALL {
            assert_eq!(
                histogram(&img, c).bins.iter().sum::<u64>(),
                img.total_pixels()
            );
        }
    }

    #[test]
    fn embed_respects_mse_bound_and_histogram_l1() {
        let cover = random_image(32, 32, 7);
        let payload = random_hex(64, 8);
        let n_enc = payload.len() as u64;
        let pls = generate_pls(cover.total_pixels(), required_pixels(n_enc), 9).unwrap();
        let stego = embed(&cover, &pls, &payload).unwrap();

        let bound = 8.0 * n_enc as f64 / (3.0 * cover.total_pixels() as f64);
        assert!(mse(&cover, &stego).unwrap() <= bound);

        for c in Channel::ALL {
            let hc = histogram(&cover, c);
            let hs = histogram(&stego, c);
            let changed = cover
                .pixels()
                .iter()
                .zip(stego.pixels())
                .filter(|(a, b)| match c {
                    Channel::R => a.r != b.r,
                    Channel::G => a.g != b.g,
                    Channel::B => a.b != b.b,
                })
                .count() as u64;
            let l1: u64 = hc
                .bins
                .iter()
                .zip(&hs.bins)
                .map(|(a, b)| a.abs_diff(*b))
                .sum();
            assert!(l1 <= 2 * changed, "L1 {l1} > 2 x {changed} on {:?}", c);
        }
    }

    #[test]
    fn longer_payloads_trend_to_higher_mse() {
        // mean MSE over 20 trials per payload size must be nondecreasing
        let mut means = Vec::new();
        for (si, size) in [16usize, 64, 256].iter().enumerate() {
            let mut total = 0.0;
            for t in 0..20u64 {
                let cover = random_image(64, 64, 1000 + t);
                let payload = random_hex(*size, 77 * t + si as u64);
                let pls = generate_pls(
                    cover.total_pixels(),
                    required_pixels(*size as u64),
                    t ^ 0xabc,
                )
                .unwrap();
                let stego = embed(&cover, &pls, &payload).unwrap();
                total += mse(&cover, &stego).unwrap();
            }
            means.push(total / 20.0);
        }
        assert!(means[0] <= means[1] && means[1] <= means[2], "{means:?}");
    }

    #[test]
    fn compare_report_identity() {
        let img = random_image(6, 6, 2);
        let cmp = compare_report(&img, &img).unwrap();
        assert_eq!(cmp.report.mse, 0.0);
        assert!(cmp.report.psnr_db.is_infinite());
        assert_eq!(cmp.cover_histograms, cmp.stego_histograms);
    }

    #[test]
    fn report_json_shape() {
        let img = random_image(3, 4, 2);
        let cmp = compare_report(&img, &img).unwrap();
        let json = serde_json::to_value(&cmp.report).unwrap();
        assert_eq!(json["mse"], 0.0);
        assert_eq!(json["psnr_db"], "inf");
        assert_eq!(json["width"], 4);
        assert_eq!(json["height"], 3);

        let finite = QualityReport {
            mse: 2.0,
            psnr_db: psnr_from_mse(2.0),
            width: 1,
            height: 1,
        };
        let json = serde_json::to_value(&finite).unwrap();
        assert!(json["psnr_db"].is_f64());
    }

    #[test]
    fn csv_has_256_rows() {
        let img = random_image(4, 4, 5);
        let h = histogram(&img, Channel::R);
        let csv = histogram_csv(&h, &h);
        assert_eq!(csv.lines().count(), 256);
        assert!(csv.starts_with("0,"));
    }
}
