//! Bitplane construction, 2-bit code assignment, drop masks and the
//! interpolation that regenerates dropped elements at decode time.
//!
//! Positions follow the 4x4 row-major numbering 1..16 used throughout the
//! format:
//!
//! ```text
//!  1  2  3  4
//!  5  6  7  8
//!  9 10 11 12
//! 13 14 15 16
//! ```

use crate::block::{Block, QuantizerLadder};

/// Per-pixel threshold plane: bit i is set iff pixel i is at or above the
/// block mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryBitplane {
    pub bits: [bool; 16],
}

/// 2-bit ladder codes for all 16 pixels of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodePlane {
    pub codes: [u8; 16],
}

/// The two fixed drop patterns (D = dropped):
///
/// ```text
/// Level2         Level3
///  .  D  .  .     D  .  .  D
///  .  D  .  .     .  D  D  .
///  .  D  .  .     .  D  D  .
///  .  D  .  .     D  .  .  D
/// ```
///
/// Every position referenced by the matching interpolation formulas is a
/// retained one, so the decoder always has its inputs at hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropMask {
    Level2,
    Level3,
}

const LEVEL2_DROPPED: [usize; 4] = [2, 6, 10, 14];
const LEVEL2_RETAINED: [usize; 12] = [1, 3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16];
const LEVEL3_DROPPED: [usize; 8] = [1, 4, 6, 7, 10, 11, 13, 16];
const LEVEL3_RETAINED: [usize; 8] = [2, 3, 5, 8, 9, 12, 14, 15];

/// Interpolation sources for the Level3 pattern as (target, first, second)
/// positions; the target gets the average of the two sources.
const LEVEL3_INTERP: [(usize, usize, usize); 8] = [
    (1, 2, 5),
    (4, 3, 8),
    (6, 5, 2),
    (7, 8, 3),
    (10, 9, 14),
    (11, 12, 15),
    (13, 14, 9),
    (16, 15, 12),
];

impl DropMask {
    /// 1-based positions whose codes are omitted from the stream.
    pub fn dropped(self) -> &'static [usize] {
        match self {
            DropMask::Level2 => &LEVEL2_DROPPED,
            DropMask::Level3 => &LEVEL3_DROPPED,
        }
    }

    /// 1-based positions whose codes are kept, in ascending order.
    pub fn retained(self) -> &'static [usize] {
        match self {
            DropMask::Level2 => &LEVEL2_RETAINED,
            DropMask::Level3 => &LEVEL3_RETAINED,
        }
    }
}

/// Thresholds a block against its mean.
pub fn binary_bitplane(block: &Block, mean: f64) -> BinaryBitplane {
    let mut bits = [false; 16];
    for (bit, &px) in bits.iter_mut().zip(&block.pixels) {
        *bit = f64::from(px) >= mean;
    }
    BinaryBitplane { bits }
}

/// Index (0..=3) of the ladder level nearest to `pixel`; ties take the
/// smaller index.
pub fn assign_code(pixel: u8, ladder: &QuantizerLadder) -> u8 {
    let x = f64::from(pixel);
    let mut best = 0u8;
    let mut best_dist = (x - ladder.levels[0]).abs();
    for (k, &level) in ladder.levels.iter().enumerate().skip(1) {
        let dist = (x - level).abs();
        if dist < best_dist {
            best = k as u8;
            best_dist = dist;
        }
    }
    best
}

/// Nearest-level code for every pixel of the block.
pub fn encode_codeplane(block: &Block, ladder: &QuantizerLadder) -> CodePlane {
    let mut codes = [0u8; 16];
    for (code, &px) in codes.iter_mut().zip(&block.pixels) {
        *code = assign_code(px, ladder);
    }
    CodePlane { codes }
}

/// Codes at the retained positions of `mask`, in ascending position order.
pub fn drop_codes(plane: &CodePlane, mask: DropMask) -> Vec<u8> {
    mask.retained()
        .iter()
        .map(|&pos| plane.codes[pos - 1])
        .collect()
}

/// Fills the Level2 drop positions with the average of their horizontal
/// neighbours. Retained slots must already hold reconstructed intensities;
/// dropped slots are overwritten.
pub fn interpolate_level2(values: &mut [f64; 16]) {
    for &pos in &LEVEL2_DROPPED {
        values[pos - 1] = (values[pos - 2] + values[pos]) / 2.0;
    }
}

/// Fills the Level3 drop positions from their retained neighbours.
pub fn interpolate_level3(values: &mut [f64; 16]) {
    for &(target, a, b) in &LEVEL3_INTERP {
        values[target - 1] = (values[a - 1] + values[b - 1]) / 2.0;
    }
}
