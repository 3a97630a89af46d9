//! Shared helpers for the codec benchmarks.

use ibtc::Raster;

/// Deterministic 256x256 test image: band-limited relief plus mild hash
/// noise, roughly matching natural-image block statistics.
pub fn test_image() -> Raster {
    let mut pixels = Vec::with_capacity(256 * 256);
    for y in 0..256u32 {
        for x in 0..256u32 {
            let (xf, yf) = (f64::from(x), f64::from(y));
            let relief = 125.0
                + 48.0 * (xf / 6.5).sin() * (yf / 8.5).cos()
                + 34.0 * ((xf + 2.0 * yf) / 13.0).sin()
                + 22.0 * ((3.0 * xf - yf) / 19.0).cos()
                + 0.1 * xf;
            let mut h = u64::from(x).wrapping_mul(0x9E37_79B1) ^ u64::from(y).wrapping_mul(0x85EB_CA77);
            h ^= h >> 33;
            h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
            h ^= h >> 33;
            let noise = ((h & 0xffff) as f64 / 65536.0 * 2.0 - 1.0) * 4.0;
            pixels.push((relief + noise).round().clamp(0.0, 255.0) as u8);
        }
    }
    Raster::new(256, 256, pixels)
}
