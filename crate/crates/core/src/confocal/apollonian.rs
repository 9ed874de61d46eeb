use crate::error::{check_dim, Error, Result};

/// Relative distance of `d_i τ` from 1 treated as a pole of the curve.
const POLE_TOL: f64 = 1e-12;

/// The curve of feet of normals dropped from a point `u` onto the confocals
/// of an ellipsoid (the Apollonian curve), parametrized rationally by `τ`.
///
/// Parameter `0` gives the center and `1/a_1²` gives `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct ApollonianCurve {
    sq_axes: Vec<f64>,
    u: Vec<f64>,
    // d_i = a_1² − a_i², with d_0 unused
    gaps: Vec<f64>,
}

impl ApollonianCurve {
    pub fn new(sq_axes: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        check_dim(sq_axes.len(), u.len())?;
        if sq_axes.len() < 2 {
            return Err(Error::InvalidInput("the curve needs n >= 2".into()));
        }
        if sq_axes.iter().chain(&u).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite curve data".into()));
        }
        let gaps: Vec<f64> = sq_axes.iter().map(|a| sq_axes[0] - a).collect();
        if gaps[1..].contains(&0.0) {
            return Err(Error::InvalidInput("a_1² must differ from every other a_i²".into()));
        }
        Ok(Self { sq_axes, u, gaps })
    }

    pub fn dim(&self) -> usize {
        self.sq_axes.len()
    }

    /// Parameters `1/(a_1² − a_i²)` where the curve escapes to infinity.
    pub fn pole_parameters(&self) -> Vec<f64> {
        self.gaps[1..].iter().map(|d| 1.0 / d).collect()
    }

    // shift between the internal coordinates and the original ones
    fn shift(&self, m: usize) -> f64 {
        -self.sq_axes[m] * self.u[m] / self.gaps[m]
    }

    /// Curve point at parameter `τ`, in original coordinates.
    pub fn point(&self, tau: f64) -> Result<Vec<f64>> {
        let a = &self.sq_axes;
        let mut x = vec![a[0] * self.u[0] * tau];
        for m in 1..self.dim() {
            let d = self.gaps[m];
            let w = d * tau - 1.0;
            if w.abs() <= POLE_TOL {
                return Err(Error::PoleParameter { tau });
            }
            let y = -a[m] * self.u[m] / (d * w);
            x.push(y + self.shift(m));
        }
        Ok(x)
    }

    /// Residuals `(a_1² − a_i²) x_1 x_i + a_i² u_i x_1 − a_1² u_1 x_i` of the
    /// normal-foot system, `i ≥ 1`.
    pub fn residuals(&self, x: &[f64]) -> Vec<f64> {
        let a = &self.sq_axes;
        (1..self.dim())
            .map(|i| self.gaps[i] * x[0] * x[i] + a[i] * self.u[i] * x[0] - a[0] * self.u[0] * x[i])
            .collect()
    }

    /// Largest residual divided by the magnitude of its terms.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let a = &self.sq_axes;
        (1..self.dim())
            .map(|i| {
                let terms = [
                    self.gaps[i] * x[0] * x[i],
                    a[i] * self.u[i] * x[0],
                    -a[0] * self.u[0] * x[i],
                ];
                let size = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
                let sum: f64 = terms.iter().sum();
                if size == 0.0 {
                    0.0
                } else {
                    sum.abs() / size
                }
            })
            .fold(0.0, f64::max)
    }

    /// A point on the asymptote of the `i`-th branch; the asymptote runs
    /// parallel to the coordinate axis `e_i`. Index `0` is the shifted center.
    pub fn asymptote_anchor(&self, i: usize) -> Result<Vec<f64>> {
        let n = self.dim();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: n - 1 });
        }
        let a = &self.sq_axes;
        let mut x: Vec<f64> = (0..n).map(|m| if m == 0 { 0.0 } else { self.shift(m) }).collect();
        if i == 0 {
            return Ok(x);
        }
        let di = self.gaps[i];
        x[0] = a[0] * self.u[0] / di;
        for m in 1..n {
            if m == i {
                continue;
            }
            if a[i] == a[m] {
                return Err(Error::InvalidInput("asymptote anchors need distinct axes".into()));
            }
            x[m] += -a[m] * self.u[m] * di / (self.gaps[m] * (a[i] - a[m]));
        }
        Ok(x)
    }
}
