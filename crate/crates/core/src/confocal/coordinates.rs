use super::ConfocalSystem;
use crate::error::{check_dim, Error, Result};
use crate::numerics::{bracketed_root, dot, elementary_symmetric_all, Bracket, Matrix};

/// Relative tolerance under which a reconstructed squared coordinate that
/// came out negative is treated as zero.
const SQUARE_CLAMP: f64 = 1e-12;

/// The confocal parameters `λ^1 < … < λ^n` of the members through a point.
///
/// Each root is stored as an offset from the nearest pole `a_k²` of its
/// interval, which keeps the small axes `a_k² − λ` accurate when the point is
/// close to a coordinate hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticCoordinates {
    lambdas: Vec<f64>,
    anchors: Vec<usize>,
    offsets: Vec<f64>,
    point: Vec<f64>,
}

impl EllipticCoordinates {
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// The generating point.
    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }
}

/// Signed squared semi-axes `a_i² − λ^j` of the confocals through a point:
/// row `i` is the axis index, column `j` the confocal.
#[derive(Debug, Clone, PartialEq)]
pub struct AxesTable {
    base_sq_axes: Vec<f64>,
    lambdas: Vec<f64>,
    entries: Matrix,
}

impl AxesTable {
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Squared axes of the confocal through the point with parameter `λ^j`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.entries.column(j)
    }

    /// The `i`-th axis across all confocals.
    pub fn row(&self, i: usize) -> &[f64] {
        self.entries.row(i)
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn base_sq_axes(&self) -> &[f64] {
        &self.base_sq_axes
    }

    /// Largest deviation of `entry(i,j) − entry(k,j)` from `a_i² − a_k²`.
    pub fn confocality_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in 1..n {
                let got = self.entry(0, j) - self.entry(i, j);
                let want = self.base_sq_axes[0] - self.base_sq_axes[i];
                worst = worst.max((got - want).abs());
            }
        }
        worst
    }

    /// Squared point coordinates `x_i² = ∏_j entry(i,j) / ∏_{k≠i}(a_i² − a_k²)`.
    pub fn squared_coordinates(&self) -> Result<Vec<f64>> {
        let a = &self.base_sq_axes;
        let tol = SQUARE_CLAMP * a[0];
        (0..self.dim())
            .map(|i| {
                let num: f64 = self.row(i).iter().product();
                let den: f64 = (0..self.dim()).filter(|&k| k != i).map(|k| a[i] - a[k]).product();
                let sq = num / den;
                if sq >= 0.0 {
                    Ok(sq)
                } else if sq >= -tol {
                    Ok(0.0)
                } else {
                    Err(Error::NegativeSquare { index: i, value: sq })
                }
            })
            .collect()
    }

    /// The point with the given coordinate signs (`signs[i] < 0` selects the
    /// negative root; a `-0.0` sign counts as negative).
    pub fn point(&self, signs: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), signs.len())?;
        Ok(self
            .squared_coordinates()?
            .iter()
            .zip(signs)
            .map(|(sq, s)| sq.sqrt().copysign(*s))
            .collect())
    }
}

/// Secular polynomial `Σ x_i² ∏_{j≠i} t_j − ∏ t_j` for axes `t_i = a_i² − λ`.
fn secular(x_sq: &[f64], t: &[f64]) -> f64 {
    let n = t.len();
    // prefix[i] = t_0 … t_{i-1}, then sweep a suffix product from the right
    let mut prefix = vec![1.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] * t[i];
    }
    let mut suffix = 1.0;
    let mut sum = 0.0;
    for i in (0..n).rev() {
        sum += x_sq[i] * prefix[i] * suffix;
        suffix *= t[i];
    }
    sum - prefix[n]
}

impl ConfocalSystem {
    /// Elliptic coordinates with the default axis guard.
    pub fn elliptic_coordinates(&self, x: &[f64]) -> Result<EllipticCoordinates> {
        self.elliptic_coordinates_guarded(x, self.default_guard())
    }

    /// Elliptic coordinates of `x`, rejecting any `|x_i| < guard`.
    pub fn elliptic_coordinates_guarded(&self, x: &[f64], guard: f64) -> Result<EllipticCoordinates> {
        self.check_point(x)?;
        if let Some(index) = x.iter().position(|c| c.abs() < guard) {
            return Err(Error::DegeneratePoint {
                index,
                value: x[index],
                guard,
            });
        }
        let a = &self.base_sq_axes;
        let n = a.len();
        let x_sq: Vec<f64> = x.iter().map(|c| c * c).collect();

        let mut lambdas = Vec::with_capacity(n);
        let mut anchors = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        for j in 0..n {
            // root j lies in (a[n-j], a[n-j-1]); the first interval is unbounded
            let (anchor, sign, width) = if j == 0 {
                (n - 1, -1.0, 2.0 * dot(x, x))
            } else {
                let (lo, hi) = (a[n - j], a[n - j - 1]);
                let mid = 0.5 * (lo + hi);
                let f_mid = secular(&x_sq, &a.iter().map(|ai| ai - mid).collect::<Vec<_>>());
                let f_lo = secular(&x_sq, &a.iter().map(|ai| ai - lo).collect::<Vec<_>>());
                if f_mid == 0.0 {
                    lambdas.push(mid);
                    anchors.push(n - j);
                    offsets.push(mid - lo);
                    continue;
                }
                if f_mid.signum() == f_lo.signum() {
                    (n - j - 1, -1.0, hi - mid)
                } else {
                    (n - j, 1.0, mid - lo)
                }
            };
            let shifts: Vec<f64> = a.iter().map(|ai| ai - a[anchor]).collect();
            let g = |delta: f64| {
                let t: Vec<f64> = shifts.iter().map(|d| d - sign * delta).collect();
                secular(&x_sq, &t)
            };
            let delta = bracketed_root(g, &Bracket::new(0.0, width, f64::MIN_POSITIVE)?)?;
            let offset = sign * delta;
            lambdas.push(a[anchor] + offset);
            anchors.push(anchor);
            offsets.push(offset);
        }
        Ok(EllipticCoordinates {
            lambdas,
            anchors,
            offsets,
            point: x.to_vec(),
        })
    }

    /// The signed axes table of the confocals through a point.
    pub fn axes_table(&self, ec: &EllipticCoordinates) -> AxesTable {
        let a = &self.base_sq_axes;
        let n = a.len();
        let mut entries = Matrix::zeros(n, n);
        for j in 0..n {
            let anchor = a[ec.anchors[j]];
            for (i, ai) in a.iter().enumerate() {
                entries[(i, j)] = (ai - anchor) - ec.offsets[j];
            }
        }
        AxesTable {
            base_sq_axes: a.clone(),
            lambdas: ec.lambdas.clone(),
            entries,
        }
    }

    /// `|x′|²` and the diagonal sum `Σ_j (a_j² − λ^j)`; the two agree.
    pub fn norm_identity_check(&self, ec: &EllipticCoordinates) -> (f64, f64) {
        let table = self.axes_table(ec);
        let diagonal = (0..ec.dim()).map(|j| table.entry(j, j)).sum();
        (dot(&ec.point, &ec.point), diagonal)
    }

    /// `f(λ)` for the point `x`, evaluated in product form.
    pub fn root_polynomial(&self, x: &[f64], lambda: f64) -> f64 {
        let x_sq: Vec<f64> = x.iter().map(|c| c * c).collect();
        let t: Vec<f64> = self.base_sq_axes.iter().map(|a| a - lambda).collect();
        secular(&x_sq, &t)
    }

    /// Largest coefficient magnitude of `f(λ)` expanded in powers of `λ`;
    /// the scale for root residuals.
    pub fn root_polynomial_scale(&self, x: &[f64]) -> f64 {
        let a = &self.base_sq_axes;
        let n = a.len();
        let full = elementary_symmetric_all(a);
        let mut coeffs: Vec<f64> = (0..=n).map(|k| -full[n - k]).collect();
        for (i, xi) in x.iter().enumerate() {
            let rest: Vec<f64> = a.iter().enumerate().filter(|(m, _)| *m != i).map(|(_, v)| *v).collect();
            let e = elementary_symmetric_all(&rest);
            for k in 0..n {
                coeffs[k] += xi * xi * e[n - 1 - k];
            }
        }
        // alternating signs (−1)^k do not change magnitudes
        coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}
