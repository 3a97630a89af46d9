//! The IBTC container: a 9-byte header followed by a continuous MSB-first
//! bitstream of block payloads.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "IBTC"
//! 4       1     version (high nibble, = 1) | mode tag (low nibble, 0..=5)
//! 5       2     original width, big-endian
//! 7       2     original height, big-endian
//! 9       ..    payload: per block, the two moments then the retained
//!               codes in ascending position order, every value MSB first;
//!               the final partial byte is zero-padded
//! ```
//!
//! Mode tags: BTC 0, AMBTC 1, Level1 2, Level2 3, Level3 4, Level4 5.
//! Dimensions are the pre-padding ones; the block count is derived from
//! them rounded up to multiples of 4. Nonzero padding bits are tolerated
//! on read.

use thiserror::Error;

use crate::codec::{CompressedImage, EncodedBlock, Mode};

pub const MAGIC: [u8; 4] = *b"IBTC";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 9;

#[derive(Debug, Error)]
pub enum ContainerError {
    #[error("bad magic: not an IBTC file")]
    Magic,
    #[error("header truncated: {len} bytes")]
    HeaderTruncated { len: usize },
    #[error("unsupported version {0}")]
    Version(u8),
    #[error("invalid mode tag {0}")]
    ModeTag(u8),
    #[error("zero image dimension in header")]
    ZeroDimension,
    #[error("payload length mismatch: expected {expected_bits} bits, got {actual_bits}")]
    PayloadLength { expected_bits: u64, actual_bits: u64 },
}

/// MSB-first bit packer appending to a byte buffer.
struct BitWriter {
    buf: Vec<u8>,
    cur: u8,
    used: u32,
}

impl BitWriter {
    fn new(buf: Vec<u8>) -> Self {
        Self { buf, cur: 0, used: 0 }
    }

    fn write(&mut self, value: u32, count: usize) {
        for shift in (0..count).rev() {
            self.cur = (self.cur << 1) | ((value >> shift) & 1) as u8;
            self.used += 1;
            if self.used == 8 {
                self.buf.push(self.cur);
                self.cur = 0;
                self.used = 0;
            }
        }
    }

    fn finish(mut self) -> Vec<u8> {
        if self.used > 0 {
            self.buf.push(self.cur << (8 - self.used));
        }
        self.buf
    }
}

/// MSB-first bit reader; reads past the end yield zeros (lengths are
/// validated before parsing starts).
struct BitReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn read(&mut self, count: usize) -> u32 {
        let mut value = 0u32;
        for _ in 0..count {
            let byte = self.data.get(self.pos / 8).copied().unwrap_or(0);
            value = (value << 1) | u32::from((byte >> (7 - self.pos % 8)) & 1);
            self.pos += 1;
        }
        value
    }
}

fn block_count(width: u16, height: u16) -> usize {
    (width as usize).div_ceil(4) * (height as usize).div_ceil(4)
}

/// Exact file size for an image of the given original dimensions: the
/// 9-byte header plus the payload rounded up to whole bytes.
pub fn file_size(mode: Mode, width: u16, height: u16) -> usize {
    HEADER_LEN + (block_count(width, height) * mode.payload_bits()).div_ceil(8)
}

pub fn serialize(ci: &CompressedImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(file_size(ci.mode, ci.width, ci.height));
    out.extend_from_slice(&MAGIC);
    out.push((VERSION << 4) | ci.mode.tag());
    out.extend_from_slice(&ci.width.to_be_bytes());
    out.extend_from_slice(&ci.height.to_be_bytes());

    let moment_bits = ci.mode.moment_bits();
    let code_bits = ci.mode.code_bits();
    let mut bits = BitWriter::new(out);
    for block in &ci.blocks {
        debug_assert_eq!(block.mode, ci.mode);
        debug_assert_eq!(block.codes.len(), ci.mode.code_count());
        bits.write(u32::from(block.moments[0]), moment_bits);
        bits.write(u32::from(block.moments[1]), moment_bits);
        for &code in &block.codes {
            bits.write(u32::from(code), code_bits);
        }
    }
    bits.finish()
}

pub fn deserialize(bytes: &[u8]) -> Result<CompressedImage, ContainerError> {
    if bytes.len() < 4 || bytes[..4] != MAGIC {
        return Err(ContainerError::Magic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(ContainerError::HeaderTruncated { len: bytes.len() });
    }
    let tag = bytes[4];
    if tag >> 4 != VERSION {
        return Err(ContainerError::Version(tag >> 4));
    }
    let mode = Mode::from_tag(tag & 0x0f).ok_or(ContainerError::ModeTag(tag & 0x0f))?;
    let width = u16::from_be_bytes([bytes[5], bytes[6]]);
    let height = u16::from_be_bytes([bytes[7], bytes[8]]);
    if width == 0 || height == 0 {
        return Err(ContainerError::ZeroDimension);
    }

    let count = block_count(width, height);
    let expected_bits = count as u64 * mode.payload_bits() as u64;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != expected_bits.div_ceil(8) as usize {
        return Err(ContainerError::PayloadLength {
            expected_bits,
            actual_bits: payload.len() as u64 * 8,
        });
    }

    let mut bits = BitReader::new(payload);
    let mut blocks = Vec::with_capacity(count);
    for _ in 0..count {
        let moments = [
            bits.read(mode.moment_bits()) as u8,
            bits.read(mode.moment_bits()) as u8,
        ];
        let codes = (0..mode.code_count())
            .map(|_| bits.read(mode.code_bits()) as u8)
            .collect();
        blocks.push(EncodedBlock {
            mode,
            moments,
            codes,
        });
    }
    Ok(CompressedImage {
        mode,
        width,
        height,
        blocks,
    })
}
