//! Per-block and whole-image encode/decode for the six coding modes.
//!
//! The four-level modes store only the two outer ladder moments. Both the
//! encoder and the decoder rebuild the ladder from the *stored* integers
//! (dequantized first in Level4), so code assignment and reconstruction
//! always agree on the levels.

use std::fmt;

use thiserror::Error;

use crate::bitplane::{self, DropMask};
use crate::block::{Block, QuantizerLadder};
use crate::pnm::Raster;

/// Coding mode. The payload size per block is fixed by the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Btc,
    Ambtc,
    Level1,
    Level2,
    Level3,
    Level4,
}

impl Mode {
    pub const ALL: [Mode; 6] = [
        Mode::Btc,
        Mode::Ambtc,
        Mode::Level1,
        Mode::Level2,
        Mode::Level3,
        Mode::Level4,
    ];

    /// Payload bits per 4x4 block.
    pub fn payload_bits(self) -> usize {
        match self {
            Mode::Btc | Mode::Ambtc => 32,
            Mode::Level1 => 48,
            Mode::Level2 => 40,
            Mode::Level3 => 32,
            Mode::Level4 => 28,
        }
    }

    /// Bits used to store each of the two moments.
    pub fn moment_bits(self) -> usize {
        match self {
            Mode::Level4 => 6,
            _ => 8,
        }
    }

    /// Bits per bitplane code: 1 for the binary planes, 2 for ladder codes.
    pub fn code_bits(self) -> usize {
        match self {
            Mode::Btc | Mode::Ambtc => 1,
            _ => 2,
        }
    }

    /// Number of codes kept in the stream.
    pub fn code_count(self) -> usize {
        match self {
            Mode::Btc | Mode::Ambtc | Mode::Level1 => 16,
            Mode::Level2 => 12,
            Mode::Level3 | Mode::Level4 => 8,
        }
    }

    /// Drop pattern applied to the code plane, if any.
    pub fn drop_mask(self) -> Option<DropMask> {
        match self {
            Mode::Level2 => Some(DropMask::Level2),
            Mode::Level3 | Mode::Level4 => Some(DropMask::Level3),
            _ => None,
        }
    }

    /// Container tag byte.
    pub fn tag(self) -> u8 {
        match self {
            Mode::Btc => 0,
            Mode::Ambtc => 1,
            Mode::Level1 => 2,
            Mode::Level2 => 3,
            Mode::Level3 => 4,
            Mode::Level4 => 5,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.tag() == tag)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Btc => "btc",
            Mode::Ambtc => "ambtc",
            Mode::Level1 => "l1",
            Mode::Level2 => "l2",
            Mode::Level3 => "l3",
            Mode::Level4 => "l4",
        })
    }
}

/// One coded block: two stored moments plus the retained bitplane codes.
///
/// Moment order is mode-specific: BTC and AMBTC store (high, low) — the
/// level a set bit decodes to comes first — while the four-level modes
/// store (low, high), i.e. the two outer ladder levels in ladder order.
/// Level4 moments are 6-bit values (intensity / 4); every other mode stores
/// 8-bit intensities. Codes are one value per retained position, ascending,
/// each in `0..2^code_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedBlock {
    pub mode: Mode,
    pub moments: [u8; 2],
    pub codes: Vec<u8>,
}

/// A whole image coded in one mode. `width` and `height` are the original,
/// pre-padding dimensions; blocks cover the image padded up to multiples
/// of 4, in row-major block order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedImage {
    pub mode: Mode,
    pub width: u16,
    pub height: u16,
    pub blocks: Vec<EncodedBlock>,
}

impl CompressedImage {
    /// Block grid dimensions after padding to multiples of 4.
    pub fn block_grid(&self) -> (usize, usize) {
        (
            (self.width as usize).div_ceil(4),
            (self.height as usize).div_ceil(4),
        )
    }

    /// Total payload bits across all blocks (header excluded).
    pub fn payload_bits(&self) -> u64 {
        self.blocks.len() as u64 * self.mode.payload_bits() as u64
    }
}

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("cannot encode an empty image")]
    EmptyImage,
    #[error("image dimensions {width}x{height} exceed the 16-bit container limit")]
    DimensionsTooLarge { width: u32, height: u32 },
    #[error("mode {mode} expects {expected} codes per block, got {actual}")]
    PayloadLength {
        mode: Mode,
        expected: usize,
        actual: usize,
    },
    #[error("block {index}: {source}")]
    Block {
        index: usize,
        source: Box<CodecError>,
    },
    #[error("{actual} blocks inconsistent with {width}x{height} (expected {expected})")]
    BlockCount {
        width: u16,
        height: u16,
        expected: usize,
        actual: usize,
    },
}

/// Half-up rounding clamped to the 8-bit intensity range.
fn round_intensity(x: f64) -> u8 {
    (x + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Quantizes an 8-bit moment to the 6-bit representation used by Level4.
pub fn quantize_moment(value: u8) -> u8 {
    value / 4
}

/// Expands a 6-bit Level4 moment back to the intensity domain.
pub fn dequantize_moment(value: u8) -> u8 {
    debug_assert!(value < 64, "Level4 moments are 6-bit values");
    value << 2
}

/// Ladder as the decoder will see it, rebuilt from the stored moments.
fn stored_ladder(mode: Mode, low: u8, high: u8) -> QuantizerLadder {
    if mode == Mode::Level4 {
        QuantizerLadder::new(
            f64::from(dequantize_moment(low)),
            f64::from(dequantize_moment(high)),
        )
    } else {
        QuantizerLadder::new(f64::from(low), f64::from(high))
    }
}

pub fn encode_block(block: &Block, mode: Mode) -> EncodedBlock {
    match mode {
        Mode::Btc => {
            let q = block.btc_quantizers();
            let plane = bitplane::binary_bitplane(block, block.mean());
            EncodedBlock {
                mode,
                moments: [round_intensity(q.high), round_intensity(q.low)],
                codes: plane.bits.iter().map(|&b| u8::from(b)).collect(),
            }
        }
        Mode::Ambtc => {
            let m = block.ambtc_moments();
            let plane = bitplane::binary_bitplane(block, block.mean());
            EncodedBlock {
                mode,
                moments: [round_intensity(m.high_mean), round_intensity(m.low_mean)],
                codes: plane.bits.iter().map(|&b| u8::from(b)).collect(),
            }
        }
        Mode::Level1 | Mode::Level2 | Mode::Level3 | Mode::Level4 => {
            let m = block.ambtc_moments();
            let mut low = round_intensity(m.low_mean);
            let mut high = round_intensity(m.high_mean);
            if mode == Mode::Level4 {
                low = quantize_moment(low);
                high = quantize_moment(high);
            }
            let ladder = stored_ladder(mode, low, high);
            let plane = bitplane::encode_codeplane(block, &ladder);
            let codes = match mode.drop_mask() {
                Some(mask) => bitplane::drop_codes(&plane, mask),
                None => plane.codes.to_vec(),
            };
            EncodedBlock {
                mode,
                moments: [low, high],
                codes,
            }
        }
    }
}

pub fn decode_block(enc: &EncodedBlock) -> Result<Block, CodecError> {
    let expected = enc.mode.code_count();
    if enc.codes.len() != expected {
        return Err(CodecError::PayloadLength {
            mode: enc.mode,
            expected,
            actual: enc.codes.len(),
        });
    }
    match enc.mode {
        Mode::Btc | Mode::Ambtc => {
            let mut pixels = [0u8; 16];
            for (px, &bit) in pixels.iter_mut().zip(&enc.codes) {
                *px = if bit != 0 { enc.moments[0] } else { enc.moments[1] };
            }
            Ok(Block::new(pixels))
        }
        Mode::Level1 | Mode::Level2 | Mode::Level3 | Mode::Level4 => {
            let ladder = stored_ladder(enc.mode, enc.moments[0], enc.moments[1]);
            let mut values = [0f64; 16];
            match enc.mode.drop_mask() {
                None => {
                    for (value, &code) in values.iter_mut().zip(&enc.codes) {
                        *value = ladder.levels[usize::from(code.min(3))];
                    }
                }
                Some(mask) => {
                    for (&pos, &code) in mask.retained().iter().zip(&enc.codes) {
                        values[pos - 1] = ladder.levels[usize::from(code.min(3))];
                    }
                    match mask {
                        DropMask::Level2 => bitplane::interpolate_level2(&mut values),
                        DropMask::Level3 => bitplane::interpolate_level3(&mut values),
                    }
                }
            }
            let mut pixels = [0u8; 16];
            for (px, &value) in pixels.iter_mut().zip(&values) {
                *px = round_intensity(value);
            }
            Ok(Block::new(pixels))
        }
    }
}

/// 4x4 tile at block coordinates (bx, by); coordinates past the image edge
/// replicate the nearest edge pixel.
fn extract_block(image: &Raster, bx: usize, by: usize) -> Block {
    let mut pixels = [0u8; 16];
    for row in 0..4 {
        for col in 0..4 {
            let x = (bx * 4 + col).min(image.width() as usize - 1);
            let y = (by * 4 + row).min(image.height() as usize - 1);
            pixels[row * 4 + col] = image.get(x as u32, y as u32);
        }
    }
    Block::new(pixels)
}

/// Tiles the image row-major and encodes every block independently.
pub fn encode_image(image: &Raster, mode: Mode) -> Result<CompressedImage, CodecError> {
    if image.width() == 0 || image.height() == 0 {
        return Err(CodecError::EmptyImage);
    }
    if image.width() > u32::from(u16::MAX) || image.height() > u32::from(u16::MAX) {
        return Err(CodecError::DimensionsTooLarge {
            width: image.width(),
            height: image.height(),
        });
    }
    let grid_w = (image.width() as usize).div_ceil(4);
    let grid_h = (image.height() as usize).div_ceil(4);
    let mut blocks = Vec::with_capacity(grid_w * grid_h);
    for by in 0..grid_h {
        for bx in 0..grid_w {
            blocks.push(encode_block(&extract_block(image, bx, by), mode));
        }
    }
    Ok(CompressedImage {
        mode,
        width: image.width() as u16,
        height: image.height() as u16,
        blocks,
    })
}

/// Decodes all blocks, assembles them row-major and crops the padding back
/// off to the stored original dimensions.
pub fn decode_image(ci: &CompressedImage) -> Result<Raster, CodecError> {
    let (grid_w, grid_h) = ci.block_grid();
    let expected = grid_w * grid_h;
    if ci.blocks.len() != expected {
        return Err(CodecError::BlockCount {
            width: ci.width,
            height: ci.height,
            expected,
            actual: ci.blocks.len(),
        });
    }
    let padded_w = grid_w * 4;
    let mut padded = vec![0u8; padded_w * grid_h * 4];
    for (index, enc) in ci.blocks.iter().enumerate() {
        let block = decode_block(enc).map_err(|e| CodecError::Block {
            index,
            source: Box::new(e),
        })?;
        let (bx, by) = (index % grid_w, index / grid_w);
        for row in 0..4 {
            for col in 0..4 {
                padded[(by * 4 + row) * padded_w + bx * 4 + col] = block.pixels[row * 4 + col];
            }
        }
    }
    let (w, h) = (ci.width as usize, ci.height as usize);
    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        pixels.extend_from_slice(&padded[y * padded_w..y * padded_w + w]);
    }
    Ok(Raster::new(
        u32::from(ci.width),
        u32::from(ci.height),
        pixels,
    ))
}
