//! The confocal family `C(λ): Σ x_i² / (a_i² − λ) = 1` of an ellipsoid.

mod apollonian;
mod coordinates;
mod frame;
mod polarity;

pub use apollonian::ApollonianCurve;
pub use coordinates::{AxesTable, EllipticCoordinates};
pub use frame::{DualSystem, FrameAtPoint};
pub use polarity::{PoleLine, TangencySample};

use crate::error::{check_dim, Error, Result};
use crate::quadrics::CentralQuadric;

/// Relative distance (in units of `a_1²`) below which a parameter counts as
/// sitting on a focal membrane `λ = a_k²`.
pub const MEMBRANE_TOL: f64 = 1e-12;

/// Default axis guard factor: coordinates with `|x_i| < AXIS_GUARD * a_1`
/// are rejected as degenerate.
pub const AXIS_GUARD: f64 = 1e-8;

/// Base squared semi-axes `a_1² > a_2² > … > a_n² > 0` of a confocal family.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfocalSystem {
    base_sq_axes: Vec<f64>,
}

impl ConfocalSystem {
    pub fn new(base_sq_axes: Vec<f64>) -> Result<Self> {
        if base_sq_axes.len() < 2 {
            return Err(Error::InvalidInput("a confocal system needs n >= 2".into()));
        }
        if base_sq_axes.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(Error::InvalidInput("squared semi-axes must be positive and finite".into()));
        }
        if base_sq_axes.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::InvalidInput("squared semi-axes must be strictly decreasing".into()));
        }
        Ok(Self { base_sq_axes })
    }

    pub fn dim(&self) -> usize {
        self.base_sq_axes.len()
    }

    pub fn base_sq_axes(&self) -> &[f64] {
        &self.base_sq_axes
    }

    /// `a_1²`, the overall length scale squared.
    pub fn scale_sq(&self) -> f64 {
        self.base_sq_axes[0]
    }

    /// The default axis guard `AXIS_GUARD * a_1`.
    pub fn default_guard(&self) -> f64 {
        AXIS_GUARD * self.scale_sq().sqrt()
    }

    pub fn base_ellipsoid(&self) -> CentralQuadric {
        CentralQuadric::new(self.base_sq_axes.clone()).expect("validated axes")
    }

    /// The member `C(λ)` with signed squared axes `a_i² − λ`.
    pub fn confocal_quadric(&self, lambda: f64) -> Result<CentralQuadric> {
        self.check_off_membrane(lambda)?;
        CentralQuadric::new(self.base_sq_axes.iter().map(|a| a - lambda).collect())
    }

    pub(crate) fn check_off_membrane(&self, lambda: f64) -> Result<()> {
        let tol = MEMBRANE_TOL * self.scale_sq();
        match self.base_sq_axes.iter().position(|a| (a - lambda).abs() <= tol) {
            Some(index) => Err(Error::OnFocalMembrane { lambda, index }),
            None => Ok(()),
        }
    }

    /// The focal quadric in the hyperplane `x_k = 0`, with squared axes
    /// `a_i² − a_k²` over `i != k`. Index `0` is excluded: that member has
    /// no real points.
    pub fn focal_quadric(&self, k: usize) -> Result<FocalQuadric> {
        let n = self.dim();
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { index: k, lo: 1, hi: n - 1 });
        }
        let ak = self.base_sq_axes[k];
        let axes = self
            .base_sq_axes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, a)| a - ak)
            .collect();
        Ok(FocalQuadric {
            plane_axis: k,
            quadric: CentralQuadric::new(axes)?,
        })
    }

    /// Moves every coordinate inside the guard outward by `guard`, keeping
    /// its sign (zero moves to `+guard`). Returns the new point and the
    /// applied perturbation.
    pub fn nudge(&self, x: &[f64], guard: f64) -> (Vec<f64>, Vec<f64>) {
        let mut moved = x.to_vec();
        let mut delta = vec![0.0; x.len()];
        for (m, d) in moved.iter_mut().zip(delta.iter_mut()) {
            if m.abs() < guard {
                let step = if *m < 0.0 { -guard } else { guard };
                *d = step;
                *m += step;
            }
        }
        (moved, delta)
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        check_dim(self.dim(), x.len())?;
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("point has non-finite coordinates".into()));
        }
        Ok(())
    }
}

/// An `(n−1)`-dimensional focal quadric lying in the hyperplane
/// `x_plane_axis = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FocalQuadric {
    plane_axis: usize,
    quadric: CentralQuadric,
}

impl FocalQuadric {
    pub fn plane_axis(&self) -> usize {
        self.plane_axis
    }

    /// The quadric in the coordinates of its hyperplane.
    pub fn quadric(&self) -> &CentralQuadric {
        &self.quadric
    }

    /// Inserts a zero coordinate at the plane axis.
    pub fn embed(&self, y: &[f64]) -> Vec<f64> {
        let mut x = y.to_vec();
        x.insert(self.plane_axis, 0.0);
        x
    }

    /// Drops the plane-axis coordinate.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .filter(|(i, _)| *i != self.plane_axis)
            .map(|(_, c)| *c)
            .collect()
    }

    /// In-plane value `Σ y_i² / s_i − 1` together with the off-plane
    /// coordinate.
    pub fn evaluate(&self, x: &[f64]) -> Result<(f64, f64)> {
        check_dim(self.quadric.dim() + 1, x.len())?;
        Ok((self.quadric.evaluate(&self.project(x))?, x[self.plane_axis]))
    }

    /// The embedded surface point along an in-plane direction, when that ray
    /// meets the quadric.
    pub fn point_along(&self, direction: &[f64]) -> Option<Vec<f64>> {
        let r2 = self.quadric.squared_radius_along(direction).ok()?;
        if !(r2 > 0.0) || !r2.is_finite() {
            return None;
        }
        let len = crate::numerics::norm(direction);
        Some(self.embed(&crate::numerics::scale(direction, r2.sqrt() / len)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_validation() {
        assert!(ConfocalSystem::new(vec![4.0]).is_err());
        assert!(ConfocalSystem::new(vec![4.0, 4.0]).is_err());
        assert!(ConfocalSystem::new(vec![1.0, 4.0]).is_err());
        assert!(ConfocalSystem::new(vec![4.0, -1.0]).is_err());
        assert!(ConfocalSystem::new(vec![4.0, 1.0]).is_ok());
    }

    #[test]
    fn confocal_member_examples() {
        let s = ConfocalSystem::new(vec![4.0, 1.0]).unwrap();
        assert_eq!(s.confocal_quadric(0.0).unwrap().signed_sq_axes(), &[4.0, 1.0]);
        assert_eq!(s.confocal_quadric(2.5).unwrap().signed_sq_axes(), &[1.5, -1.5]);
        let s3 = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).unwrap();
        assert_eq!(s3.confocal_quadric(-1.0).unwrap().signed_sq_axes(), &[10.0, 5.0, 2.0]);
        assert!(matches!(
            s3.confocal_quadric(4.0),
            Err(Error::OnFocalMembrane { index: 1, .. })
        ));
    }

    #[test]
    fn focal_quadric_examples() {
        let s = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).unwrap();
        let ellipse = s.focal_quadric(2).unwrap();
        assert_eq!(ellipse.quadric().signed_sq_axes(), &[8.0, 3.0]);
        assert_eq!(ellipse.plane_axis(), 2);
        let hyperbola = s.focal_quadric(1).unwrap();
        assert_eq!(hyperbola.quadric().signed_sq_axes(), &[5.0, -3.0]);
        let s2 = ConfocalSystem::new(vec![4.0, 1.0]).unwrap();
        let foci = s2.focal_quadric(1).unwrap();
        assert_eq!(foci.quadric().signed_sq_axes(), &[3.0]);
        assert!(matches!(s.focal_quadric(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.focal_quadric(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn focal_points_by_direction() {
        let s = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).unwrap();
        let hyperbola = s.focal_quadric(1).unwrap();
        let p = hyperbola.point_along(&[1.0, 0.2]).unwrap();
        assert_eq!(p[1], 0.0);
        assert!(hyperbola.evaluate(&p).unwrap().0.abs() < 1e-14);
        // asymptotic direction misses the hyperbola
        assert!(hyperbola.point_along(&[0.0, 1.0]).is_none());
    }

    #[test]
    fn nudge_moves_only_guarded_coordinates() {
        let s = ConfocalSystem::new(vec![4.0, 1.0]).unwrap();
        let (p, d) = s.nudge(&[4.0, 0.0], 1e-8);
        assert_eq!(p, vec![4.0, 1e-8]);
        assert_eq!(d, vec![0.0, 1e-8]);
    }
}
