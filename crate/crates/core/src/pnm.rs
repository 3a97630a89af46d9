//! 8-bit grayscale rasters and PGM (P5 binary / P2 ASCII) reading and
//! writing.

use thiserror::Error;

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
}

impl Raster {
    /// Builds a raster from row-major pixels.
    ///
    /// Panics if the pixel count does not match the dimensions.
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Self {
        assert_eq!(
            pixels.len() as u64,
            u64::from(width) * u64::from(height),
            "pixel count must equal width * height"
        );
        Self {
            width,
            height,
            pixels,
        }
    }

    /// Constant-valued raster.
    pub fn filled(width: u32, height: u32, value: u8) -> Self {
        Self::new(
            width,
            height,
            vec![value; (u64::from(width) * u64::from(height)) as usize],
        )
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

#[derive(Debug, Error)]
pub enum PnmError {
    #[error("not a PGM file (expected P5 or P2 magic)")]
    Magic,
    #[error("invalid {what} at byte {offset}")]
    Invalid { what: &'static str, offset: usize },
    #[error("maxval {maxval} at byte {offset} exceeds 255")]
    MaxvalTooLarge { maxval: u32, offset: usize },
    #[error("raster truncated at byte {offset}: expected {expected} pixels, got {actual}")]
    Truncated {
        offset: usize,
        expected: usize,
        actual: usize,
    },
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments (which run to end of line).
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.data.get(self.pos) {
            if b == b'#' {
                while self.data.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn read_number(&mut self, what: &'static str) -> Result<u32, PnmError> {
        self.skip_space_and_comments();
        let start = self.pos;
        let mut value = 0u64;
        while let Some(&b) = self.data.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(b - b'0');
            if value > u64::from(u32::MAX) {
                return Err(PnmError::Invalid {
                    what,
                    offset: start,
                });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PnmError::Invalid {
                what,
                offset: start,
            });
        }
        Ok(value as u32)
    }
}

/// Parses a P5 or P2 image with maxval up to 255.
pub fn read_pgm(bytes: &[u8]) -> Result<Raster, PnmError> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(PnmError::Magic),
    };
    let mut cur = Cursor {
        data: bytes,
        pos: 2,
    };
    let width = cur.read_number("width")?;
    let height = cur.read_number("height")?;
    cur.skip_space_and_comments();
    let maxval_offset = cur.pos;
    let maxval = cur.read_number("maxval")?;
    if maxval == 0 {
        return Err(PnmError::Invalid {
            what: "maxval",
            offset: maxval_offset,
        });
    }
    if maxval > 255 {
        return Err(PnmError::MaxvalTooLarge {
            maxval,
            offset: maxval_offset,
        });
    }

    let expected = u64::from(width) * u64::from(height);
    let expected = usize::try_from(expected).map_err(|_| PnmError::Invalid {
        what: "dimensions",
        offset: 2,
    })?;

    let pixels = if binary {
        // exactly one whitespace byte separates the header from the raster
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => {
                return Err(PnmError::Invalid {
                    what: "raster separator",
                    offset: cur.pos,
                })
            }
        }
        let data = &bytes[cur.pos..];
        if data.len() < expected {
            return Err(PnmError::Truncated {
                offset: bytes.len(),
                expected,
                actual: data.len(),
            });
        }
        data[..expected].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        for _ in 0..expected {
            cur.skip_space_and_comments();
            if cur.pos >= bytes.len() {
                return Err(PnmError::Truncated {
                    offset: bytes.len(),
                    expected,
                    actual: pixels.len(),
                });
            }
            let offset = cur.pos;
            let value = cur.read_number("pixel")?;
            if value > 255 {
                return Err(PnmError::Invalid {
                    what: "pixel",
                    offset,
                });
            }
            pixels.push(value as u8);
        }
        pixels
    };

    Ok(Raster::new(width, height, pixels))
}

/// Emits a binary P5 file with maxval 255.
pub fn write_pgm(raster: &Raster) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", raster.width(), raster.height()).into_bytes();
    out.extend_from_slice(raster.pixels());
    out
}
