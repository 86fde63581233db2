use emd_univariate::{emd, find_extrema, is_residue_like, SiftConfig};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Random band-limited signals: a few tones with random amplitude and phase
/// plus a linear trend, |signal| well under 1e3.
fn arb_signal() -> impl Strategy<Value = Vec<f64>> {
    (
        64usize..=256,
        proptest::collection::vec((4.0f64..80.0, 0.2f64..2.0, 0.0f64..(2.0 * PI)), 1..4),
        -0.05f64..0.05,
    )
        .prop_map(|(n, tones, slope)| {
            (0..n)
                .map(|t| {
                    let t = t as f64;
                    tones
                        .iter()
                        .map(|(period, amp, phase)| amp * (2.0 * PI * t / period + phase).sin())
                        .sum::<f64>()
                        + slope * t
                })
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reconstruction_is_complete(signal in arb_signal()) {
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        let rebuilt = set.reconstruct();
        for (r, s) in rebuilt.iter().zip(&signal) {
            prop_assert!((r - s).abs() < 1e-8, "{r} vs {s}");
        }
    }

    #[test]
    fn residue_is_residue_like(signal in arb_signal()) {
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        prop_assert!(is_residue_like(&set.residue));
    }

    #[test]
    fn extrema_of_extracted_imfs_interleave(signal in arb_signal()) {
        let set = emd(&signal, &SiftConfig::default()).unwrap();
        for imf in &set.imfs {
            let ext = find_extrema(imf).unwrap();
            let mut merged: Vec<(usize, bool)> = ext
                .maxima
                .iter()
                .map(|&i| (i, true))
                .chain(ext.minima.iter().map(|&i| (i, false)))
                .collect();
            merged.sort();
            for w in merged.windows(2) {
                prop_assert_ne!(w[0].1, w[1].1, "two consecutive {} without the other kind",
                    if w[0].1 { "maxima" } else { "minima" });
            }
        }
    }
}
