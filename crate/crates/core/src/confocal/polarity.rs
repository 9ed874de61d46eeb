use super::ConfocalSystem;
use crate::error::{check_dim, Error, Result};
use crate::numerics::{axpy, dot, norm, scale};
use crate::quadrics::Hyperplane;

/// The line `ξ(λ) = base − λ·direction` of poles of a fixed hyperplane with
/// respect to the confocals `C(λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleLine {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

impl PoleLine {
    /// The pole with respect to `C(λ)`.
    pub fn at(&self, lambda: f64) -> Vec<f64> {
        axpy(&self.base, -lambda, &self.direction)
    }

    /// Distance from `y` to the line.
    pub fn distance_to(&self, y: &[f64]) -> f64 {
        let d: Vec<f64> = y.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let u = scale(&self.direction, 1.0 / norm(&self.direction));
        norm(&axpy(&d, -dot(&d, &u), &u))
    }
}

/// Contact point of a confocal with a hyperplane of fixed normal, and the
/// distances from that point to the hyperplane through the center and to
/// the normal line through the center.
#[derive(Debug, Clone, PartialEq)]
pub struct TangencySample {
    pub touch_point: Vec<f64>,
    pub plane_distance: f64,
    pub line_distance: f64,
    pub product: f64,
}

impl ConfocalSystem {
    /// Poles of `h·x = 1` with respect to the whole confocal family.
    pub fn pole_line(&self, plane: &Hyperplane) -> Result<PoleLine> {
        check_dim(self.dim(), plane.dim())?;
        let h = plane.coefficients();
        Ok(PoleLine {
            base: h.iter().zip(&self.base_sq_axes).map(|(hi, a)| hi * a).collect(),
            direction: h.to_vec(),
        })
    }

    /// Parameter `λ*` of the confocal tangent to `h·x = 1`.
    pub fn tangent_confocal_parameter(&self, plane: &Hyperplane) -> Result<f64> {
        check_dim(self.dim(), plane.dim())?;
        let h = plane.coefficients();
        let h2: f64 = dot(h, h);
        let h2a2: f64 = h.iter().zip(&self.base_sq_axes).map(|(hi, a)| hi * hi * a).sum();
        let lambda = (h2a2 - 1.0) / h2;
        self.check_off_membrane(lambda)?;
        Ok(lambda)
    }

    /// Where the tangent confocal touches `h·x = 1`.
    pub fn tangent_touch_point(&self, plane: &Hyperplane) -> Result<Vec<f64>> {
        let lambda = self.tangent_confocal_parameter(plane)?;
        Ok(self.pole_line(plane)?.at(lambda))
    }

    /// Contact point of `C(λ)` with the tangent hyperplane of normal `h`
    /// (on the side `h·x > 0`) and the product of its two distances.
    pub fn tangency_locus_product(&self, h: &[f64], lambda: f64) -> Result<TangencySample> {
        check_dim(self.dim(), h.len())?;
        let support_sq: f64 = h
            .iter()
            .zip(&self.base_sq_axes)
            .map(|(hi, a)| hi * hi * (a - lambda))
            .sum();
        if !(support_sq > 0.0) {
            return Err(Error::NoRealTangency { support_sq });
        }
        let root = support_sq.sqrt();
        let touch_point: Vec<f64> = h
            .iter()
            .zip(&self.base_sq_axes)
            .map(|(hi, a)| (a - lambda) * hi / root)
            .collect();
        let h_len = norm(h);
        let u = scale(h, 1.0 / h_len);
        let along = dot(&touch_point, &u);
        let plane_distance = along.abs();
        let line_distance = norm(&axpy(&touch_point, -along, &u));
        Ok(TangencySample {
            touch_point,
            plane_distance,
            line_distance,
            product: plane_distance * line_distance,
        })
    }

    /// The λ-independent value of the two-distance product for normal `h`,
    /// `√(Σ_{i<j} h_i² h_j² (a_i² − a_j²)²) / Σ h_i²`.
    pub fn tangency_invariant(&self, h: &[f64]) -> Result<f64> {
        check_dim(self.dim(), h.len())?;
        let a = &self.base_sq_axes;
        let mut s = 0.0;
        for i in 0..h.len() {
            for j in i + 1..h.len() {
                s += (h[i] * h[j] * (a[i] - a[j])).powi(2);
            }
        }
        Ok(s.sqrt() / dot(h, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys2() -> ConfocalSystem {
        ConfocalSystem::new(vec![4.0, 1.0]).unwrap()
    }

    #[test]
    fn pole_line_worked() {
        let h = Hyperplane::new(vec![0.5, 0.5]).unwrap();
        let line = sys2().pole_line(&h).unwrap();
        assert_eq!(line.base, vec![2.0, 0.5]);
        assert_eq!(line.direction, vec![0.5, 0.5]);
        for lambda in [-3.0, 0.0, 0.5, 0.9] {
            let q = sys2().confocal_quadric(lambda).unwrap();
            let pole = q.pole_of_hyperplane(&h).unwrap();
            assert!(line.distance_to(&pole) < 1e-14);
        }
    }

    #[test]
    fn tangent_parameter_worked() {
        let h = Hyperplane::new(vec![0.5, 0.5]).unwrap();
        let lambda = sys2().tangent_confocal_parameter(&h).unwrap();
        assert!((lambda - 0.5).abs() < 1e-15);
        assert!((0.25 * 3.5 + 0.25 * 0.5 - 1.0f64).abs() < 1e-15);
        let touch = sys2().tangent_touch_point(&h).unwrap();
        assert!((h.value_at(&touch) - 1.0).abs() < 1e-14);
        let q = sys2().confocal_quadric(lambda).unwrap();
        assert!(q.evaluate(&touch).unwrap().abs() < 1e-14);
    }

    #[test]
    fn tangent_covector_gives_base() {
        let s = sys2();
        let x = [2f64.sqrt(), 2f64.sqrt() / 2.0];
        let h = s.base_ellipsoid().tangent_hyperplane_at(&x).unwrap();
        assert!(s.tangent_confocal_parameter(&h).unwrap().abs() < 1e-15);
    }

    #[test]
    fn membrane_collision() {
        // 3h_1² = 1 puts λ* on a_2²
        let h = Hyperplane::new(vec![1.0 / 3f64.sqrt(), 1.0]).unwrap();
        assert!(matches!(
            sys2().tangent_confocal_parameter(&h),
            Err(Error::OnFocalMembrane { index: 1, .. })
        ));
    }

    #[test]
    fn tangency_product_is_constant() {
        let s = sys2();
        let h = [0.5, 0.5];
        let a = s.tangency_locus_product(&h, 0.0).unwrap();
        let b = s.tangency_locus_product(&h, 0.25).unwrap();
        assert!((a.product - b.product).abs() < 1e-10);
        assert!((a.product - s.tangency_invariant(&h).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn tangency_along_an_axis() {
        let t = sys2().tangency_locus_product(&[0.0, 1.0], 0.3).unwrap();
        assert_eq!(t.touch_point[0], 0.0);
        assert_eq!(t.line_distance, 0.0);
        assert_eq!(t.product, 0.0);
    }

    #[test]
    fn no_real_tangency() {
        assert!(matches!(
            sys2().tangency_locus_product(&[1.0, 1.0], 10.0),
            Err(Error::NoRealTangency { .. })
        ));
    }
}
