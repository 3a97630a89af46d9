//! Distortion (MSE, PSNR) and rate (bits per pixel) measurement.

use thiserror::Error;

use crate::codec::{CompressedImage, Mode};
use crate::pnm::Raster;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
}

/// Mean squared error between two rasters of identical dimensions.
///
/// Accumulates squared differences in integers and divides once.
pub fn mse(a: &Raster, b: &Raster) -> Result<f64, MetricsError> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(MetricsError::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.pixels().len() as f64)
}

/// Peak signal-to-noise ratio in dB for 8-bit data.
///
/// A perfect reconstruction (zero MSE) reports infinity rather than a
/// capped value, so averages over mixed corpora stay honest.
pub fn psnr(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (65025.0 / mse).log10()
    }
}

/// Payload bits per original pixel. The 9-byte container header is
/// excluded, so for multiple-of-4 images the rate depends only on the mode.
pub fn bpp(ci: &CompressedImage, original: &Raster) -> f64 {
    ci.payload_bits() as f64 / (f64::from(original.width()) * f64::from(original.height()))
}

/// Quality summary for one (original, reconstructed, compressed) triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    pub mode: Mode,
    pub mse: f64,
    pub psnr: f64,
    pub bpp: f64,
}

impl QualityReport {
    pub fn measure(
        original: &Raster,
        reconstructed: &Raster,
        ci: &CompressedImage,
    ) -> Result<Self, MetricsError> {
        let mse = mse(original, reconstructed)?;
        Ok(Self {
            mode: ci.mode,
            mse,
            psnr: psnr(mse),
            bpp: bpp(ci, original),
        })
    }
}
