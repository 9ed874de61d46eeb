//! Second-order cones: canonical cones in an orthonormal frame, tangent and
//! focal cones at a point, and common edges of confocal cone families.

mod edges;
mod tangent;

pub use edges::{
    common_edges, identity_sum, intercept_length, intercept_length_for, sq_cosines_by_null_space,
    sq_cosines_closed_form, Transversal, COINCIDENCE_TOL,
};
pub use tangent::{focal_cone, right_cone_locus_check, tangent_cone_canonical, tangent_cone_form, RIGHT_CONE_TOL};

use crate::error::{check_dim, Error, Result};
use crate::numerics::{dot, sub, Matrix, SymmetricMatrix};

/// Tolerance on the orthonormality of a cone frame.
pub const FRAME_TOL: f64 = 1e-10;

/// The cone `Σ ξ_i² / s_i = 0` with `ξ = frameᵀ(x − apex)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cone {
    apex: Vec<f64>,
    frame: Vec<Vec<f64>>,
    signed_sq_axes: Vec<f64>,
}

impl Cone {
    pub fn new(apex: Vec<f64>, frame: Vec<Vec<f64>>, signed_sq_axes: Vec<f64>) -> Result<Self> {
        let n = apex.len();
        check_dim(n, frame.len())?;
        check_dim(n, signed_sq_axes.len())?;
        for v in &frame {
            check_dim(n, v.len())?;
        }
        if signed_sq_axes.iter().any(|s| *s == 0.0 || !s.is_finite()) {
            return Err(Error::InvalidInput("cone axes must be finite and nonzero".into()));
        }
        for j in 0..n {
            for k in j..n {
                let want = if j == k { 1.0 } else { 0.0 };
                if (dot(&frame[j], &frame[k]) - want).abs() > FRAME_TOL {
                    return Err(Error::InvalidInput("cone frame is not orthonormal".into()));
                }
            }
        }
        Ok(Self {
            apex,
            frame,
            signed_sq_axes,
        })
    }

    /// Cone with apex at the origin and the coordinate axes as frame.
    pub fn canonical(signed_sq_axes: Vec<f64>) -> Result<Self> {
        let n = signed_sq_axes.len();
        let frame = Matrix::identity(n).columns();
        Self::new(vec![0.0; n], frame, signed_sq_axes)
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    pub fn apex(&self) -> &[f64] {
        &self.apex
    }

    pub fn frame(&self) -> &[Vec<f64>] {
        &self.frame
    }

    pub fn signed_sq_axes(&self) -> &[f64] {
        &self.signed_sq_axes
    }

    /// Only the apex is real when all axes share a sign.
    pub fn is_imaginary(&self) -> bool {
        let pos = self.signed_sq_axes.iter().filter(|s| **s > 0.0).count();
        pos == 0 || pos == self.dim()
    }

    pub fn to_local(&self, x: &[f64]) -> Vec<f64> {
        let d = sub(x, &self.apex);
        self.frame.iter().map(|f| dot(f, &d)).collect()
    }

    /// `Σ ξ_i² / s_i`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(self
            .to_local(x)
            .iter()
            .zip(&self.signed_sq_axes)
            .map(|(xi, s)| xi * xi / s)
            .sum())
    }

    /// [`Cone::eval`] divided by `Σ ξ_i² / |s_i|`, so that it is scale free.
    pub fn relative_eval(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        let local = self.to_local(x);
        let (mut signed, mut size) = (0.0, 0.0);
        for (xi, s) in local.iter().zip(&self.signed_sq_axes) {
            signed += xi * xi / s;
            size += xi * xi / s.abs();
        }
        Ok(if size == 0.0 { 0.0 } else { signed / size })
    }
}

/// The set `xᵀMx + 2bᵀx + c = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSurface {
    pub quadratic: SymmetricMatrix,
    pub linear: Vec<f64>,
    pub constant: f64,
}

impl QuadraticSurface {
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.linear.len(), x.len())?;
        Ok(self.quadratic.quadratic_form(x) + 2.0 * dot(&self.linear, x) + self.constant)
    }

    /// `Fᵀ M F` for a frame given as a list of vectors.
    pub fn quadratic_in_frame(&self, frame: &[Vec<f64>]) -> Matrix {
        let n = frame.len();
        let mut out = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                out[(j, k)] = self.quadratic.bilinear(&frame[j], &frame[k]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_eval_examples() {
        let c = Cone::canonical(vec![1.0, -1.0]).unwrap();
        assert_eq!(c.eval(&[1.0, 1.0]).unwrap(), 0.0);
        let c3 = Cone::canonical(vec![1.0, 1.0, -1.0]).unwrap();
        assert_eq!(c3.eval(&[0.0, 1.0, 1.0]).unwrap(), 0.0);
        let shifted = Cone::new(vec![1.0, 0.0], Matrix::identity(2).columns(), vec![1.0, -1.0]).unwrap();
        assert_eq!(shifted.eval(&[2.0, 1.0]).unwrap(), 0.0);
        assert!(matches!(c.eval(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_bad_frames_and_axes() {
        let skew = vec![vec![1.0, 0.0], vec![0.6, 0.8]];
        assert!(Cone::new(vec![0.0, 0.0], skew, vec![1.0, -1.0]).is_err());
        assert!(Cone::canonical(vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn imaginary_cone_is_flagged() {
        assert!(Cone::canonical(vec![1.0, 2.0]).unwrap().is_imaginary());
        assert!(!Cone::canonical(vec![1.0, -2.0]).unwrap().is_imaginary());
    }

    #[test]
    fn relative_eval_is_scale_free() {
        let c = Cone::canonical(vec![1.0, -4.0]).unwrap();
        let a = c.relative_eval(&[1.0, 1.0]).unwrap();
        let b = c.relative_eval(&[1e6, 1e6]).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert_eq!(c.relative_eval(&[0.0, 0.0]).unwrap(), 0.0);
    }
}
