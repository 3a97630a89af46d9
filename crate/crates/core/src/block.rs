//! Per-block statistics and quantizer computation.
//!
//! Everything here stays in the real domain; rounding to storable integers
//! happens in [`crate::codec`] so that no rounding error compounds through
//! the ladder construction.

/// A 4x4 tile of 8-bit grayscale intensities, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub pixels: [u8; 16],
}

/// BTC reconstruction levels for one block.
///
/// `high` is assigned to pixels at or above the block mean, `low` to the
/// rest. The pair preserves the block mean and variance exactly (in the
/// real domain). `high_count` is the size of the high group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtcQuantizers {
    pub high: f64,
    pub low: f64,
    pub high_count: usize,
}

/// AMBTC block moments: the means of the high (`>=` block mean) and low
/// (`<` block mean) pixel groups, plus the group sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbtcMoments {
    pub high_mean: f64,
    pub low_mean: f64,
    pub high_count: usize,
    pub low_count: usize,
}

/// Four evenly spaced reconstruction levels between a low and a high moment.
///
/// The step is a third of the spread, so `levels[0]` is the low moment and
/// `levels[3]` the high one. Only the two endpoints are ever stored; the
/// middle levels are recomputed from them on both sides of the codec.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantizerLadder {
    pub levels: [f64; 4],
    pub step: f64,
}

impl Block {
    pub fn new(pixels: [u8; 16]) -> Self {
        Self { pixels }
    }

    /// Arithmetic mean of the 16 pixels.
    pub fn mean(&self) -> f64 {
        let sum: u32 = self.pixels.iter().map(|&p| u32::from(p)).sum();
        f64::from(sum) / 16.0
    }

    /// Population standard deviation over the 16 pixels.
    pub fn stddev(&self) -> f64 {
        let mean = self.mean();
        let var = self
            .pixels
            .iter()
            .map(|&p| {
                let d = f64::from(p) - mean;
                d * d
            })
            .sum::<f64>()
            / 16.0;
        var.sqrt()
    }

    /// BTC quantizer pair preserving the block mean and variance.
    ///
    /// A block where one group is empty is necessarily constant, and both
    /// levels collapse to the mean.
    pub fn btc_quantizers(&self) -> BtcQuantizers {
        let mean = self.mean();
        let high_count = self
            .pixels
            .iter()
            .filter(|&&x| f64::from(x) >= mean)
            .count();
        if high_count == 0 || high_count == 16 {
            return BtcQuantizers {
                high: mean,
                low: mean,
                high_count,
            };
        }
        let sigma = self.stddev();
        let p = high_count as f64;
        let q = (16 - high_count) as f64;
        BtcQuantizers {
            high: mean + sigma * (q / p).sqrt(),
            low: mean - sigma * (p / q).sqrt(),
            high_count,
        }
    }

    /// Group means of the pixels at or above the block mean and below it.
    ///
    /// All pixels `>=` the mean implies a constant block, in which case both
    /// moments are the mean itself.
    pub fn ambtc_moments(&self) -> AmbtcMoments {
        let mean = self.mean();
        let mut high_sum = 0u32;
        let mut high_count = 0usize;
        let mut low_sum = 0u32;
        for &x in &self.pixels {
            if f64::from(x) >= mean {
                high_sum += u32::from(x);
                high_count += 1;
            } else {
                low_sum += u32::from(x);
            }
        }
        let low_count = 16 - high_count;
        if low_count == 0 {
            return AmbtcMoments {
                high_mean: mean,
                low_mean: mean,
                high_count,
                low_count,
            };
        }
        AmbtcMoments {
            high_mean: f64::from(high_sum) / high_count as f64,
            low_mean: f64::from(low_sum) / low_count as f64,
            high_count,
            low_count,
        }
    }
}

impl AmbtcMoments {
    /// Four-level quantizer ladder spanning `[low_mean, high_mean]`.
    pub fn ladder(&self) -> QuantizerLadder {
        QuantizerLadder::new(self.low_mean, self.high_mean)
    }
}

impl QuantizerLadder {
    pub fn new(low: f64, high: f64) -> Self {
        let step = (high - low) / 3.0;
        let second = low + step;
        let third = second + step;
        Self {
            levels: [low, second, third, high],
            step,
        }
    }
}
