/// Default number of grid samples before golden-section refinement.
pub const DEFAULT_GRID: usize = 1024;

/// Search domain of [`minimize_1d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Closed interval `[lo, hi]`.
    Interval { lo: f64, hi: f64 },
    /// `[start, start + period)`, wrapping around.
    Periodic { start: f64, period: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Grid scan with `samples` points followed by golden-section refinement
/// around the best cell.
///
/// The result is a local minimizer to within `tol` that is global at the grid
/// resolution. Periodic arguments are reduced to `[start, start + period)`.
pub fn minimize_1d<F>(f: F, domain: Domain, samples: usize, tol: f64) -> Minimum
where
    F: Fn(f64) -> f64,
{
    let samples = samples.max(3);
    let (lo, step, periodic) = match domain {
        Domain::Interval { lo, hi } => (lo, (hi - lo) / (samples - 1) as f64, None),
        Domain::Periodic { start, period } => (start, period / samples as f64, Some((start, period))),
    };

    let mut best = Minimum {
        arg: lo,
        value: f(lo),
    };
    for i in 1..samples {
        let x = lo + step * i as f64;
        let v = f(x);
        if v < best.value || best.value.is_nan() {
            best = Minimum { arg: x, value: v };
        }
    }

    let (mut a, mut b) = (best.arg - step, best.arg + step);
    if let Domain::Interval { lo, hi } = domain {
        a = a.max(lo);
        b = b.min(hi);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        if b - a <= f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    if fx < best.value {
        best = Minimum { arg: x, value: fx };
    }
    if let Some((start, period)) = periodic {
        best.arg = start + (best.arg - start).rem_euclid(period);
    }
    best
}
