//! Block truncation coding for 8-bit grayscale images.
//!
//! Three coder families over 4x4 pixel blocks:
//!
//! * **BTC** — classic block truncation coding: a binary bitplane plus two
//!   reconstruction levels chosen to preserve the block mean and variance.
//! * **AMBTC** — absolute moment BTC: the two levels are the means of the
//!   above-mean and below-mean pixel groups.
//! * **IAMBTC** — four reconstruction levels spaced evenly between the low
//!   and high means, coded with 2-bit indices. Four rate levels trade
//!   bitplane completeness and moment precision for rate:
//!
//! | mode   | payload bits/block | bpp  |
//! |--------|--------------------|------|
//! | BTC    | 32                 | 2.0  |
//! | AMBTC  | 32                 | 2.0  |
//! | L1     | 48                 | 3.0  |
//! | L2     | 40                 | 2.5  |
//! | L3     | 32                 | 2.0  |
//! | L4     | 28                 | 1.75 |
//!
//! Compressed images serialize to the `IBTC` container format (see
//! [`container`]); corpus I/O is plain PGM (see [`pnm`]).

pub mod bitplane;
pub mod block;
pub mod codec;
pub mod container;
pub mod metrics;
pub mod pnm;

pub use block::{AmbtcMoments, Block, BtcQuantizers, QuantizerLadder};
pub use codec::{decode_image, encode_image, CodecError, CompressedImage, EncodedBlock, Mode};
pub use container::{deserialize, serialize, ContainerError};
pub use metrics::{bpp, mse, psnr, MetricsError, QualityReport};
pub use pnm::{read_pgm, write_pgm, PnmError, Raster};
