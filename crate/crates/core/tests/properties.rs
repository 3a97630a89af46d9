//! Property tests over the block math, bitplane and container invariants.

use ibtc::bitplane::{self, CodePlane, DropMask};
use ibtc::codec::{CompressedImage, EncodedBlock, Mode};
use ibtc::{Block, Raster};
use proptest::prelude::*;

fn arb_mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(Mode::ALL.to_vec())
}

fn arb_encoded_block(mode: Mode) -> impl Strategy<Value = EncodedBlock> {
    let moment_limit = 1u16 << mode.moment_bits();
    let code_limit = 1u8 << mode.code_bits();
    (
        prop::array::uniform2(0u16..moment_limit),
        prop::collection::vec(0u8..code_limit, mode.code_count()),
    )
        .prop_map(move |(moments, codes)| EncodedBlock {
            mode,
            moments: [moments[0] as u8, moments[1] as u8],
            codes,
        })
}

fn arb_compressed_image() -> impl Strategy<Value = CompressedImage> {
    (arb_mode(), 1u16..=64, 1u16..=64).prop_flat_map(|(mode, width, height)| {
        let blocks = (width as usize).div_ceil(4) * (height as usize).div_ceil(4);
        prop::collection::vec(arb_encoded_block(mode), blocks).prop_map(move |blocks| {
            CompressedImage {
                mode,
                width,
                height,
                blocks,
            }
        })
    })
}

proptest! {
    #[test]
    fn ladder_is_monotone(pixels: [u8; 16]) {
        let block = Block::new(pixels);
        let moments = block.ambtc_moments();
        let ladder = moments.ladder();
        let [q1, q2, q3, q4] = ladder.levels;
        prop_assert!(q1 <= q2 && q2 <= q3 && q3 <= q4);
        if moments.high_mean > moments.low_mean {
            prop_assert!(q1 < q2 && q2 < q3 && q3 < q4);
        }
        prop_assert!((q2 - q1 - ladder.step).abs() < 1e-9);
        prop_assert!((q3 - q2 - ladder.step).abs() < 1e-9);
        prop_assert!((q4 - q3 - ladder.step).abs() < 1e-9);
    }

    #[test]
    fn moments_bracket_the_mean(pixels: [u8; 16]) {
        let block = Block::new(pixels);
        let m = block.ambtc_moments();
        let mean = block.mean();
        prop_assert!(m.low_mean <= mean + 1e-12);
        prop_assert!(m.high_mean >= mean - 1e-12);
        prop_assert_eq!(m.high_count + m.low_count, 16);
    }

    #[test]
    fn ambtc_preserves_the_block_mean(pixels: [u8; 16]) {
        let block = Block::new(pixels);
        let m = block.ambtc_moments();
        let recombined = m.high_count as f64 * m.high_mean + m.low_count as f64 * m.low_mean;
        prop_assert!((recombined - 16.0 * block.mean()).abs() < 1e-9);
    }

    #[test]
    fn btc_preserves_mean_and_stddev(pixels: [u8; 16]) {
        let block = Block::new(pixels);
        let q = block.btc_quantizers();
        if q.high_count == 0 || q.high_count == 16 {
            prop_assert_eq!(q.high, block.mean());
            prop_assert_eq!(q.low, block.mean());
        } else {
            let p = q.high_count as f64;
            let n = 16.0 - p;
            let mean = (p * q.high + n * q.low) / 16.0;
            let var = (p * (q.high - mean).powi(2) + n * (q.low - mean).powi(2)) / 16.0;
            prop_assert!((mean - block.mean()).abs() < 1e-9);
            prop_assert!((var.sqrt() - block.stddev()).abs() < 1e-9);
        }
    }

    #[test]
    fn assign_code_matches_nearest_scan(pixels: [u8; 16], px: u8) {
        let ladder = Block::new(pixels).ambtc_moments().ladder();
        let mut best = 0usize;
        for k in 1..4 {
            if (f64::from(px) - ladder.levels[k]).abs()
                < (f64::from(px) - ladder.levels[best]).abs()
            {
                best = k;
            }
        }
        prop_assert_eq!(bitplane::assign_code(px, &ladder), best as u8);
    }

    #[test]
    fn drop_then_interpolate_restores_constant_fields(value in 0u8..=255) {
        for mask in [DropMask::Level2, DropMask::Level3] {
            let mut values = [f64::from(value); 16];
            for &pos in mask.dropped() {
                values[pos - 1] = f64::NAN;
            }
            match mask {
                DropMask::Level2 => bitplane::interpolate_level2(&mut values),
                DropMask::Level3 => bitplane::interpolate_level3(&mut values),
            }
            prop_assert_eq!(values, [f64::from(value); 16]);
        }
    }

    #[test]
    fn level3_interpolation_matches_the_formula_set(field: [u8; 16]) {
        let mut values: [f64; 16] = core::array::from_fn(|i| f64::from(field[i]));
        let v = values;
        bitplane::interpolate_level3(&mut values);
        // the eight reconstruction formulas, written out longhand
        prop_assert_eq!(values[0], (v[1] + v[4]) / 2.0);
        prop_assert_eq!(values[10], (v[11] + v[14]) / 2.0);
        prop_assert_eq!(values[3], (v[2] + v[7]) / 2.0);
        prop_assert_eq!(values[9], (v[8] + v[13]) / 2.0);
        prop_assert_eq!(values[5], (v[4] + v[1]) / 2.0);
        prop_assert_eq!(values[15], (v[14] + v[11]) / 2.0);
        prop_assert_eq!(values[6], (v[7] + v[2]) / 2.0);
        prop_assert_eq!(values[12], (v[13] + v[8]) / 2.0);
        // retained slots untouched
        for &pos in DropMask::Level3.retained() {
            prop_assert_eq!(values[pos - 1], v[pos - 1]);
        }
    }

    #[test]
    fn dropped_plus_retained_is_the_whole_plane(codes in prop::array::uniform16(0u8..4)) {
        let plane = CodePlane { codes };
        for mask in [DropMask::Level2, DropMask::Level3] {
            let kept = bitplane::drop_codes(&plane, mask);
            prop_assert_eq!(kept.len() + mask.dropped().len(), 16);
            for (k, &pos) in mask.retained().iter().enumerate() {
                prop_assert_eq!(kept[k], plane.codes[pos - 1]);
            }
        }
    }

    #[test]
    fn container_round_trips_arbitrary_images(ci in arb_compressed_image()) {
        let bytes = ibtc::serialize(&ci);
        prop_assert_eq!(
            bytes.len(),
            ibtc::container::file_size(ci.mode, ci.width, ci.height)
        );
        let back = ibtc::deserialize(&bytes).unwrap();
        prop_assert_eq!(back, ci);
    }

    #[test]
    fn pgm_round_trips(width in 1u32..=24, height in 1u32..=24, seed: u64) {
        let mut state = seed;
        let pixels: Vec<u8> = (0..width * height)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 56) as u8
            })
            .collect();
        let raster = Raster::new(width, height, pixels);
        let back = ibtc::read_pgm(&ibtc::write_pgm(&raster)).unwrap();
        prop_assert_eq!(back, raster);
    }
}
