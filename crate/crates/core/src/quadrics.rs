//! Central quadrics in canonical position.
//!
//! A quadric is stored by its signed squared semi-axes `s_i = ε_i a_i²`, so
//! that the surface is `Σ x_i² / s_i = 1`. Ties between `|s_i|` are allowed
//! here; the strict ordering needed for confocal families lives in
//! [`crate::confocal::ConfocalSystem`].

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_dim, Error, Result};
use crate::numerics::{determinant, dot, elementary_symmetric, norm, orthonormalize, Matrix};

/// Points closer than this (in the dimensionless value of
/// [`CentralQuadric::evaluate`]) count as lying on the surface.
pub const SURFACE_TOL: f64 = 1e-9;

/// Relative tolerance of the conjugacy predicate.
pub const CONJUGACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CentralQuadric {
    signed_sq_axes: Vec<f64>,
}

impl CentralQuadric {
    pub fn new(signed_sq_axes: Vec<f64>) -> Result<Self> {
        if signed_sq_axes.is_empty() {
            return Err(Error::InvalidInput("quadric needs at least one axis".into()));
        }
        if let Some(bad) = signed_sq_axes.iter().find(|s| **s == 0.0 || !s.is_finite()) {
            return Err(Error::InvalidInput(format!("signed squared axis {bad} must be finite and nonzero")));
        }
        Ok(Self { signed_sq_axes })
    }

    /// Ellipsoid with the given (positive) squared semi-axes.
    pub fn ellipsoid(sq_axes: Vec<f64>) -> Result<Self> {
        let q = Self::new(sq_axes)?;
        if !q.is_ellipsoid() {
            return Err(Error::NotAnEllipsoid);
        }
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.signed_sq_axes.len()
    }

    pub fn signed_sq_axes(&self) -> &[f64] {
        &self.signed_sq_axes
    }

    pub fn is_ellipsoid(&self) -> bool {
        self.signed_sq_axes.iter().all(|s| *s > 0.0)
    }

    /// A quadric with every sign negative has no real points.
    pub fn has_real_points(&self) -> bool {
        self.signed_sq_axes.iter().any(|s| *s > 0.0)
    }

    fn require_ellipsoid(&self) -> Result<()> {
        if self.is_ellipsoid() {
            Ok(())
        } else {
            Err(Error::NotAnEllipsoid)
        }
    }

    /// `Σ x_i² / s_i − 1`; zero on the surface, positive outside an ellipsoid.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(x.iter()
            .zip(&self.signed_sq_axes)
            .map(|(xi, s)| xi * xi / s)
            .sum::<f64>()
            - 1.0)
    }

    fn require_on_surface(&self, x: &[f64]) -> Result<()> {
        let residual = self.evaluate(x)?;
        if residual.abs() > SURFACE_TOL {
            return Err(Error::OffSurface { residual });
        }
        Ok(())
    }

    /// Unnormalized normal `x_i / s_i` at a surface point.
    pub fn normal_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.require_on_surface(x)?;
        Ok(self.gradient_direction(x))
    }

    fn gradient_direction(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.signed_sq_axes).map(|(xi, s)| xi / s).collect()
    }

    /// Tangent hyperplane `Σ (x_i / s_i) y_i = 1` at a surface point.
    pub fn tangent_hyperplane_at(&self, x: &[f64]) -> Result<Hyperplane> {
        self.require_on_surface(x)?;
        Hyperplane::new(self.gradient_direction(x))
    }

    /// Squared length of the radius vector along `direction`, i.e. `ρ²` with
    /// `ρ d / |d|` on the surface. Negative when the line misses the quadric
    /// (the value then belongs to the conjugate quadric).
    pub fn squared_radius_along(&self, direction: &[f64]) -> Result<f64> {
        check_dim(self.dim(), direction.len())?;
        let len2 = dot(direction, direction);
        let q: f64 = direction
            .iter()
            .zip(&self.signed_sq_axes)
            .map(|(d, s)| d * d / s)
            .sum();
        Ok(len2 / q)
    }

    /// Whether directions `e` and `f` are conjugate with respect to this
    /// ellipsoid: `Σ e_i f_i / a_i² = 0`, tested relative to
    /// `|e| |f| / min a_i²`.
    pub fn is_conjugate_pair(&self, e: &[f64], f: &[f64]) -> Result<bool> {
        self.require_ellipsoid()?;
        check_dim(self.dim(), e.len())?;
        check_dim(self.dim(), f.len())?;
        let value: f64 = e
            .iter()
            .zip(f)
            .zip(&self.signed_sq_axes)
            .map(|((ei, fi), s)| ei * fi / s)
            .sum();
        let min_axis = self.signed_sq_axes.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(value.abs() <= CONJUGACY_TOL * norm(e) * norm(f) / min_axis)
    }

    /// Pole `ξ_i = h_i a_i²` of a hyperplane with respect to this ellipsoid.
    pub fn pole_of_hyperplane(&self, h: &Hyperplane) -> Result<Vec<f64>> {
        self.require_ellipsoid()?;
        check_dim(self.dim(), h.dim())?;
        Ok(h.coefficients()
            .iter()
            .zip(&self.signed_sq_axes)
            .map(|(hi, s)| hi * s)
            .collect())
    }

    /// Whether two points are conjugate: `x^T A^{-2} y = 1`.
    pub fn conjugacy_value(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), y.len())?;
        Ok(x.iter()
            .zip(y)
            .zip(&self.signed_sq_axes)
            .map(|((a, b), s)| a * b / s)
            .sum())
    }

    /// A complete conjugate system `x^j = A q^j` from an orthonormal frame
    /// `{q^j}`.
    pub fn conjugate_system_from_frame(&self, frame: &[Vec<f64>]) -> Result<ConjugateSystem> {
        self.require_ellipsoid()?;
        check_dim(self.dim(), frame.len())?;
        let semi: Vec<f64> = self.signed_sq_axes.iter().map(|s| s.sqrt()).collect();
        let vectors = frame
            .iter()
            .map(|q| {
                check_dim(self.dim(), q.len())?;
                Ok(q.iter().zip(&semi).map(|(qi, a)| qi * a).collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(ConjugateSystem { vectors })
    }

    /// A random complete conjugate system: the image under `A` of a random
    /// orthonormal frame (Gram-Schmidt on Gaussian vectors).
    pub fn random_conjugate_system<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<ConjugateSystem> {
        self.require_ellipsoid()?;
        let frame = random_orthonormal_frame(self.dim(), rng);
        self.conjugate_system_from_frame(&frame)
    }
}

/// Random orthonormal frame of `R^n` (rows of the returned list).
pub fn random_orthonormal_frame<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    loop {
        let raw: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
            .collect();
        if let Some(frame) = orthonormalize(&raw) {
            return frame;
        }
    }
}

/// The hyperplane `⟨h, x⟩ = 1`, which never contains the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    h: Vec<f64>,
}

impl Hyperplane {
    pub fn new(h: Vec<f64>) -> Result<Self> {
        if h.is_empty() || h.iter().all(|c| *c == 0.0) || h.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("hyperplane covector must be finite and nonzero".into()));
        }
        Ok(Self { h })
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.h
    }

    /// `⟨h, x⟩`, which equals one on the hyperplane.
    pub fn value_at(&self, x: &[f64]) -> f64 {
        dot(&self.h, x)
    }

    /// Distance from the origin, `1 / |h|`.
    pub fn distance_from_origin(&self) -> f64 {
        1.0 / norm(&self.h)
    }
}

/// `n` semi-diameters `x^1 … x^n` of an ellipsoid, stored as vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateSystem {
    vectors: Vec<Vec<f64>>,
}

impl ConjugateSystem {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        let n = vectors.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty conjugate system".into()));
        }
        for v in &vectors {
            check_dim(n, v.len())?;
        }
        Ok(Self { vectors })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Matrix whose columns are the semi-diameters.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.vectors)
    }

    /// Gram matrix `G = X^T X`.
    pub fn gram(&self) -> Matrix {
        let x = self.matrix();
        x.transpose().mul(&x)
    }

    /// Apollonius invariant `v_k`: the sum over all `k`-subsets of the Gram
    /// determinants of the chosen semi-diameters.
    ///
    /// For a genuine conjugate system this equals `e_k(a_1², …, a_n²)`.
    pub fn apollonius_invariant(&self, k: usize) -> Result<f64> {
        let n = self.dim();
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, lo: 1, hi: n });
        }
        let g = self.gram();
        let mut total = 0.0;
        for subset in k_subsets(n, k) {
            let mut minor = Matrix::zeros(k, k);
            for (r, &i) in subset.iter().enumerate() {
                for (c, &j) in subset.iter().enumerate() {
                    minor[(r, c)] = g[(i, j)];
                }
            }
            total += determinant(&minor);
        }
        Ok(total)
    }

    /// Largest relative violation of pairwise conjugacy with respect to `q`.
    pub fn conjugacy_defect(&self, q: &CentralQuadric) -> Result<f64> {
        q.require_ellipsoid()?;
        let min_axis = q.signed_sq_axes.iter().copied().fold(f64::INFINITY, f64::min);
        let mut worst = 0.0f64;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let (e, f) = (&self.vectors[i], &self.vectors[j]);
                let v = q.conjugacy_value(e, f)?;
                worst = worst.max(v.abs() * min_axis / (norm(e) * norm(f)));
            }
        }
        Ok(worst)
    }
}

/// Elementary symmetric polynomial of the squared semi-axes, the value every
/// Apollonius invariant must reproduce.
pub fn apollonius_target(q: &CentralQuadric, k: usize) -> f64 {
    elementary_symmetric(q.signed_sq_axes(), k)
}

/// All increasing index tuples of length `k` from `0..n`.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn ellipse41() -> CentralQuadric {
        CentralQuadric::ellipsoid(vec![4.0, 1.0]).unwrap()
    }

    fn rotation_quarter() -> Vec<Vec<f64>> {
        vec![vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2], vec![-FRAC_1_SQRT_2, FRAC_1_SQRT_2]]
    }

    #[test]
    fn evaluate_examples() {
        let sphere = CentralQuadric::ellipsoid(vec![1.0; 3]).unwrap();
        assert_eq!(sphere.evaluate(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(ellipse41().evaluate(&[SQRT_2, SQRT_2 / 2.0]).unwrap().abs() < 1e-15);
        let hyperbola = CentralQuadric::new(vec![4.0, -1.0]).unwrap();
        assert_eq!(hyperbola.evaluate(&[2.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(
            sphere.evaluate(&[1.0, 0.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn normal_examples() {
        let sphere = CentralQuadric::ellipsoid(vec![1.0; 3]).unwrap();
        assert_eq!(sphere.normal_at(&[0.0, 1.0, 0.0]).unwrap(), vec![0.0, 1.0, 0.0]);
        let n = ellipse41().normal_at(&[SQRT_2, SQRT_2 / 2.0]).unwrap();
        assert!(close(&n, &[SQRT_2 / 4.0, SQRT_2 / 2.0], 1e-15));
        let hyperbola = CentralQuadric::new(vec![4.0, -1.0]).unwrap();
        assert_eq!(hyperbola.normal_at(&[2.0, 0.0]).unwrap(), vec![0.5, -0.0]);
        assert!(matches!(ellipse41().normal_at(&[1.0, 1.0]), Err(Error::OffSurface { .. })));
    }

    #[test]
    fn tangent_hyperplane_examples() {
        let sphere = CentralQuadric::ellipsoid(vec![1.0; 3]).unwrap();
        let h = sphere.tangent_hyperplane_at(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(h.coefficients(), &[1.0, 0.0, 0.0]);
        let x = [SQRT_2, SQRT_2 / 2.0];
        let h = ellipse41().tangent_hyperplane_at(&x).unwrap();
        assert!(close(h.coefficients(), &[SQRT_2 / 4.0, SQRT_2 / 2.0], 1e-15));
        assert!((h.value_at(&x) - 1.0).abs() < 1e-12);
        let h = ellipse41().tangent_hyperplane_at(&[0.0, 1.0]).unwrap();
        assert_eq!(h.coefficients(), &[0.0, 1.0]);
    }

    #[test]
    fn conjugate_pair_examples() {
        let q = ellipse41();
        assert!(q.is_conjugate_pair(&[1.0, 0.0], &[0.0, 1.0]).unwrap());
        assert!(q.is_conjugate_pair(&[SQRT_2, SQRT_2 / 2.0], &[-SQRT_2, SQRT_2 / 2.0]).unwrap());
        assert!(!q.is_conjugate_pair(&[1.0, 0.0], &[1.0, 0.0]).unwrap());
        let hyperbola = CentralQuadric::new(vec![4.0, -1.0]).unwrap();
        assert_eq!(hyperbola.is_conjugate_pair(&[1.0, 0.0], &[0.0, 1.0]), Err(Error::NotAnEllipsoid));
    }

    #[test]
    fn conjugacy_is_scale_invariant() {
        let q = ellipse41();
        let e = [SQRT_2 * 1e6, SQRT_2 / 2.0 * 1e6];
        let f = [-SQRT_2 * 1e-6, SQRT_2 / 2.0 * 1e-6];
        assert!(q.is_conjugate_pair(&e, &f).unwrap());
    }

    #[test]
    fn conjugate_system_from_quarter_turn() {
        let s = ellipse41().conjugate_system_from_frame(&rotation_quarter()).unwrap();
        assert!(close(&s.vectors()[0], &[SQRT_2, SQRT_2 / 2.0], 1e-15));
        assert!(close(&s.vectors()[1], &[-SQRT_2, SQRT_2 / 2.0], 1e-15));
        assert!((s.apollonius_invariant(1).unwrap() - 5.0).abs() < 1e-14);
        assert!((s.apollonius_invariant(2).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn identity_frame_gives_scaled_axes() {
        let q = CentralQuadric::ellipsoid(vec![9.0, 4.0, 1.0]).unwrap();
        let id = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let s = q.conjugate_system_from_frame(&id).unwrap();
        assert_eq!(s.vectors()[0], vec![3.0, 0.0, 0.0]);
        assert_eq!(s.vectors()[2], vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn random_system_lies_on_ellipsoid_and_is_conjugate() {
        let q = CentralQuadric::ellipsoid(vec![9.0, 4.0, 2.0, 1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = q.random_conjugate_system(&mut rng).unwrap();
        for x in s.vectors() {
            assert!(q.evaluate(x).unwrap().abs() < 1e-13);
        }
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(q.is_conjugate_pair(&s.vectors()[i], &s.vectors()[j]).unwrap());
            }
        }
    }

    #[test]
    fn unit_sphere_volume_invariant() {
        let q = CentralQuadric::ellipsoid(vec![1.0; 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = q.random_conjugate_system(&mut rng).unwrap();
        assert!((s.apollonius_invariant(3).unwrap() - 1.0).abs() < 1e-13);
        assert!(s.apollonius_invariant(4).is_err());
        assert!(s.apollonius_invariant(0).is_err());
    }

    #[test]
    fn pole_examples() {
        let q = ellipse41();
        let h = Hyperplane::new(vec![0.5, 0.5]).unwrap();
        let xi = q.pole_of_hyperplane(&h).unwrap();
        assert_eq!(xi, vec![2.0, 0.5]);
        // conjugate to sampled points of the hyperplane x1 + x2 = 2
        for x in [[2.0, 0.0], [0.0, 2.0], [-3.0, 5.0]] {
            assert!((q.conjugacy_value(&x, &xi).unwrap() - 1.0).abs() < 1e-14);
        }
        let sphere = CentralQuadric::ellipsoid(vec![1.0; 3]).unwrap();
        let h = Hyperplane::new(vec![0.3, -2.0, 7.0]).unwrap();
        assert_eq!(sphere.pole_of_hyperplane(&h).unwrap(), vec![0.3, -2.0, 7.0]);
        let x = [SQRT_2, SQRT_2 / 2.0];
        let tangent = q.tangent_hyperplane_at(&x).unwrap();
        assert!(close(&q.pole_of_hyperplane(&tangent).unwrap(), &x, 1e-15));
    }

    #[test]
    fn zero_axis_and_zero_covector_are_rejected() {
        assert!(CentralQuadric::new(vec![1.0, 0.0]).is_err());
        assert!(Hyperplane::new(vec![0.0, 0.0]).is_err());
        assert_eq!(CentralQuadric::ellipsoid(vec![1.0, -1.0]), Err(Error::NotAnEllipsoid));
        assert!(!CentralQuadric::new(vec![-1.0, -2.0]).unwrap().has_real_points());
    }

    #[test]
    fn squared_radius_along_tangent_direction() {
        let r2 = ellipse41().squared_radius_along(&[-2.0, 1.0]).unwrap();
        assert!((r2 - 2.5).abs() < 1e-14);
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
