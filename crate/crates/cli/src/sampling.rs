//! Seeded sampling of systems and points.

use confocal_core::staude::FocalConics;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// The generator of one case: the seed selects the key, `(check, case)`
/// selects the stream, so cases never share draws.
pub fn case_rng(seed: u64, check: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(check << 32 | case);
    rng
}

/// Strictly decreasing positive squared axes.
pub fn sq_axes<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut a = vec![rng.gen_range(0.3..2.0)];
    for _ in 1..n {
        let g: f64 = rng.gen_range(0.3..3.0);
        a.push(a.last().unwrap() + g);
    }
    a.reverse();
    a
}

/// A coordinate of magnitude in `[lo, hi)` with random sign.
pub fn coordinate<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..hi);
    if rng.gen::<bool>() {
        m
    } else {
        -m
    }
}

/// A point whose coordinates stay clear of the coordinate hyperplanes.
pub fn point<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| coordinate(rng, 0.05, 3.0)).collect()
}

pub fn gaussian<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// A point of the ellipsoid with semi-axes `a > b > c`, each coordinate at
/// least `margin` times its semi-axis away from zero.
pub fn surface_point<R: Rng>(rng: &mut R, fc: &FocalConics, margin: f64) -> [f64; 3] {
    let axes = fc.semi_axes();
    loop {
        let g = gaussian(rng, 3);
        let r = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        if r == 0.0 {
            continue;
        }
        let p = [axes[0] * g[0] / r, axes[1] * g[1] / r, axes[2] * g[2] / r];
        if (0..3).all(|i| p[i].abs() >= margin * axes[i]) {
            return p;
        }
    }
}

/// The ellipsoids of the string-length sweep.
pub fn sweep_ellipsoids() -> Vec<FocalConics> {
    [(3.0, 2.0, 1.0), (2.0, std::f64::consts::SQRT_2, 1.0), (5.0, 3.0, 2.0)]
        .iter()
        .map(|&(a, b, c)| FocalConics::new(a, b, c).expect("valid sweep ellipsoid"))
        .collect()
}
