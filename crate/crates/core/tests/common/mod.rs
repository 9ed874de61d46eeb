#![allow(dead_code)]

use proptest::prelude::*;

/// Strictly decreasing positive squared axes: cumulative gaps on top of a
/// smallest value.
pub fn sq_axes(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(|n| (0.3f64..2.0, prop::collection::vec(0.3f64..3.0, n - 1)))
        .prop_map(|(base, gaps)| {
            let mut a = vec![base];
            for g in gaps {
                a.push(a.last().unwrap() + g);
            }
            a.reverse();
            a
        })
}

/// A coordinate bounded away from zero, with either sign.
pub fn coordinate() -> impl Strategy<Value = f64> {
    (0.05f64..3.0, any::<bool>()).prop_map(|(m, s)| if s { m } else { -m })
}

/// Squared axes together with a point of the same dimension.
pub fn system_and_point(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    sq_axes(n).prop_flat_map(|a| {
        let n = a.len();
        (Just(a), prop::collection::vec(coordinate(), n))
    })
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
