use crate::error::{Error, Result};

/// An interval `[lo, hi]` on which a function changes sign, together with the
/// width at which the search stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidInput(format!("bad bracket [{lo}, {hi}]")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("bracket tolerance {tol} must be positive")));
        }
        Ok(Self { lo, hi, tol })
    }
}

const MAX_ITERATIONS: usize = 400;

/// Finds a root of `f` inside `bracket`.
///
/// Secant steps are tried first and accepted only when they land strictly
/// inside the current bracket and the bracket keeps shrinking fast enough;
/// otherwise the step is a plain bisection. The bracket is updated after
/// every evaluation, so the returned point always lies in `[lo, hi]` and `f`
/// changes sign within `tol` of it.
pub fn bracketed_root<F>(f: F, bracket: &Bracket) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }

    let mut last_width = hi - lo;
    let mut use_secant = true;
    for _ in 0..MAX_ITERATIONS {
        let width = hi - lo;
        if width <= bracket.tol {
            break;
        }
        let mid = lo + 0.5 * width;
        if mid <= lo || mid >= hi {
            // no representable point left between the ends
            break;
        }
        let mut x = mid;
        if use_secant {
            let s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            // keep the secant point away from the ends so the bracket shrinks
            let guard = 0.01 * width;
            if s.is_finite() && s > lo + guard && s < hi - guard {
                x = s;
            }
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        // fall back to bisection when the last two steps did not halve the bracket
        let new_width = hi - lo;
        use_secant = new_width < 0.5 * last_width || !use_secant;
        if use_secant {
            last_width = new_width;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_two() {
        let b = Bracket::new(1.0, 2.0, 1e-12).unwrap();
        let r = bracketed_root(|x| x * x - 2.0, &b).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn worked_two_dimensional_polynomial() {
        // f(λ) = λ(2.5 − λ) from the base (4, 1) ellipse through (√2, √2/2)
        let b = Bracket::new(1.0, 4.0, 1e-13).unwrap();
        let r = bracketed_root(|l| l * (2.5 - l), &b).unwrap();
        assert!((r - 2.5).abs() < 1e-12);
    }

    #[test]
    fn odd_function_root_at_zero() {
        let b = Bracket::new(-1.0, 1.0, 1e-14).unwrap();
        let r = bracketed_root(|x| x, &b).unwrap();
        assert!(r.abs() < 1e-14);
    }

    #[test]
    fn rejects_missing_sign_change() {
        let b = Bracket::new(-1.0, 1.0, 1e-12).unwrap();
        let err = bracketed_root(|x| x * x + 1.0, &b).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
    }

    #[test]
    fn stays_inside_bracket_for_steep_functions() {
        let b = Bracket::new(0.0, 10.0, 1e-12).unwrap();
        let r = bracketed_root(|x| (x - 9.999).powi(21), &b).unwrap();
        assert!((0.0..=10.0).contains(&r));
        assert!((r - 9.999).abs() < 1e-3);
    }

    #[test]
    fn invalid_brackets_are_rejected() {
        assert!(Bracket::new(1.0, 1.0, 1e-3).is_err());
        assert!(Bracket::new(0.0, 1.0, 0.0).is_err());
        assert!(Bracket::new(f64::NEG_INFINITY, 1.0, 1e-3).is_err());
    }
}
