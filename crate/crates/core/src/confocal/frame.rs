use super::{AxesTable, ConfocalSystem};
use crate::error::{check_dim, Result};
use crate::numerics::{dot, norm, sub, Matrix};
use crate::quadrics::CentralQuadric;

/// The unit normals of the `n` confocals through a point together with the
/// support distances `p^j` from the center to their tangent hyperplanes.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameAtPoint {
    origin: Vec<f64>,
    normals: Vec<Vec<f64>>,
    support: Vec<f64>,
}

impl FrameAtPoint {
    /// Builds the frame from the point and its axes table: the gradient of
    /// confocal `j` has components `x_i / entry(i,j)`, and `p^j` is the
    /// reciprocal of its length.
    pub fn from_table(x: &[f64], table: &AxesTable) -> Result<Self> {
        check_dim(table.dim(), x.len())?;
        let n = x.len();
        let mut normals = Vec::with_capacity(n);
        let mut support = Vec::with_capacity(n);
        for j in 0..n {
            let grad: Vec<f64> = (0..n).map(|i| x[i] / table.entry(i, j)).collect();
            let len = norm(&grad);
            normals.push(grad.iter().map(|g| g / len).collect());
            support.push(1.0 / len);
        }
        Ok(Self {
            origin: x.to_vec(),
            normals,
            support,
        })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn normals(&self) -> &[Vec<f64>] {
        &self.normals
    }

    pub fn normal(&self, j: usize) -> &[f64] {
        &self.normals[j]
    }

    /// Positive support distances `p^j`.
    pub fn support(&self) -> &[f64] {
        &self.support
    }

    /// The normals as matrix columns.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(&self.normals)
    }

    /// Coordinates of a world point relative to the origin along the normals.
    pub fn to_local(&self, y: &[f64]) -> Vec<f64> {
        let d = sub(y, &self.origin);
        self.normals.iter().map(|n| dot(n, &d)).collect()
    }

    pub fn to_world(&self, local: &[f64]) -> Vec<f64> {
        let mut y = self.origin.clone();
        for (n, c) in self.normals.iter().zip(local) {
            for (yi, ni) in y.iter_mut().zip(n) {
                *yi += c * ni;
            }
        }
        y
    }

    /// The nearest orthonormal frame (polar factor of the normal matrix), by
    /// Newton–Schulz steps `N ← N (3I − NᵀN) / 2`. Normals of nearly equal
    /// confocal parameters are only orthogonal to about `√ε`; this restores
    /// an exact frame without preferring any normal.
    pub fn orthonormalized(&self) -> Self {
        let n = self.dim();
        let mut cols = self.normals.clone();
        for _ in 0..8 {
            let gram: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|k| dot(&cols[j], &cols[k])).collect()).collect();
            let defect = (0..n)
                .flat_map(|j| (0..n).map(move |k| (j, k)))
                .map(|(j, k)| (gram[j][k] - if j == k { 1.0 } else { 0.0 }).abs())
                .fold(0.0, f64::max);
            if defect < 1e-15 {
                break;
            }
            cols = (0..n)
                .map(|j| {
                    let mut v = vec![0.0; n];
                    for k in 0..n {
                        let c = if j == k { 1.5 } else { 0.0 } - 0.5 * gram[k][j];
                        for (vi, ci) in v.iter_mut().zip(&cols[k]) {
                            *vi += c * ci;
                        }
                    }
                    v
                })
                .collect();
        }
        Self {
            origin: self.origin.clone(),
            normals: cols,
            support: self.support.clone(),
        }
    }

    /// Largest absolute pairwise dot product of distinct normals.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in j + 1..n {
                worst = worst.max(dot(&self.normals[j], &self.normals[k]).abs());
            }
        }
        worst
    }

    /// `(p^j)²` from the closed form `∏_i entry(i,j) / ∏_{k≠j}(λ^k − λ^j)`.
    pub fn closed_form_support_sq(table: &AxesTable) -> Vec<f64> {
        let n = table.dim();
        let l = table.lambdas();
        (0..n)
            .map(|j| {
                let num: f64 = table.column(j).iter().product();
                let den: f64 = (0..n).filter(|&k| k != j).map(|k| l[k] - l[j]).product();
                num / den
            })
            .collect()
    }

    /// `Σ_j (p^j)² / entry(i,j) − 1` for every row `i`.
    pub fn dual_membership_residuals(&self, table: &AxesTable) -> Vec<f64> {
        (0..self.dim())
            .map(|i| {
                self.support
                    .iter()
                    .zip(table.row(i))
                    .map(|(p, t)| p * p / t)
                    .sum::<f64>()
                    - 1.0
            })
            .collect()
    }
}

/// The `n` quadrics centered at a point whose axes run along the confocal
/// normals there, quadric `i` having squared axes `row i` of the axes table.
/// All of them pass through the original center.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSystem {
    frame: FrameAtPoint,
    quadrics: Vec<CentralQuadric>,
}

impl DualSystem {
    pub fn new(frame: FrameAtPoint, table: &AxesTable) -> Result<Self> {
        check_dim(frame.dim(), table.dim())?;
        let quadrics = (0..table.dim())
            .map(|i| CentralQuadric::new(table.row(i).to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { frame, quadrics })
    }

    pub fn frame(&self) -> &FrameAtPoint {
        &self.frame
    }

    pub fn quadrics(&self) -> &[CentralQuadric] {
        &self.quadrics
    }

    pub fn quadric(&self, i: usize) -> &CentralQuadric {
        &self.quadrics[i]
    }

    /// Value of dual quadric `i` at a world point.
    pub fn evaluate(&self, i: usize, y: &[f64]) -> Result<f64> {
        self.quadrics[i].evaluate(&self.frame.to_local(y))
    }

    /// Largest deviation from `a_i² − a_k²` of the row differences.
    pub fn confocality_defect(&self, base_sq_axes: &[f64]) -> f64 {
        let n = self.quadrics.len();
        let mut worst = 0.0f64;
        for i in 1..n {
            let want = base_sq_axes[0] - base_sq_axes[i];
            for j in 0..n {
                let got = self.quadrics[0].signed_sq_axes()[j] - self.quadrics[i].signed_sq_axes()[j];
                worst = worst.max((got - want).abs());
            }
        }
        worst
    }
}

impl ConfocalSystem {
    /// The orthogonal frame of confocal normals at `x`.
    pub fn frame_at_point(&self, x: &[f64]) -> Result<FrameAtPoint> {
        let ec = self.elliptic_coordinates(x)?;
        FrameAtPoint::from_table(x, &self.axes_table(&ec))
    }

    /// Squared semi-axes `λ^j − λ^1`, `j ≥ 1`, of the central section of the
    /// first confocal through `x` by the hyperplane parallel to its tangent
    /// hyperplane at `x`. The axes run along the remaining normals.
    pub fn central_section_sq_axes(&self, x: &[f64]) -> Result<Vec<f64>> {
        let ec = self.elliptic_coordinates(x)?;
        let table = self.axes_table(&ec);
        Ok((1..self.dim()).map(|j| table.entry(0, 0) - table.entry(0, j)).collect())
    }

    /// The dual system seeded at `x`.
    pub fn dual_system(&self, x: &[f64]) -> Result<DualSystem> {
        let ec = self.elliptic_coordinates(x)?;
        let table = self.axes_table(&ec);
        DualSystem::new(FrameAtPoint::from_table(x, &table)?, &table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> (ConfocalSystem, Vec<f64>) {
        (
            ConfocalSystem::new(vec![4.0, 1.0]).unwrap(),
            vec![2f64.sqrt(), 2f64.sqrt() / 2.0],
        )
    }

    #[test]
    fn worked_frame_supports() {
        let (s, x) = worked();
        let f = s.frame_at_point(&x).unwrap();
        assert!((f.support()[0].powi(2) - 1.6).abs() < 1e-14);
        assert!((f.support()[1].powi(2) - 0.9).abs() < 1e-14);
        assert!(f.orthogonality_defect() < 1e-15);
        // (√2/4, √2/2) normalized
        let r = (0.125f64 + 0.5).sqrt();
        assert!((f.normal(0)[0] - 2f64.sqrt() / 4.0 / r).abs() < 1e-15);
        let table = s.axes_table(&s.elliptic_coordinates(&x).unwrap());
        let closed = FrameAtPoint::closed_form_support_sq(&table);
        assert!((closed[0] - 1.6).abs() < 1e-14 && (closed[1] - 0.9).abs() < 1e-14);
        for r in f.dual_membership_residuals(&table) {
            assert!(r.abs() < 1e-14);
        }
    }

    #[test]
    fn worked_central_section() {
        let (s, x) = worked();
        let rho = s.central_section_sq_axes(&x).unwrap();
        assert_eq!(rho.len(), 1);
        assert!((rho[0] - 2.5).abs() < 1e-14);
        let direct = s.base_ellipsoid().squared_radius_along(&[-2.0, 1.0]).unwrap();
        assert!((direct - 2.5).abs() < 1e-14);
    }

    #[test]
    fn worked_dual_system() {
        let (s, x) = worked();
        let d = s.dual_system(&x).unwrap();
        for (got, want) in d.quadric(0).signed_sq_axes().iter().zip([4.0, 1.5]) {
            assert!((got - want).abs() < 1e-14);
        }
        let local = d.frame().to_local(&[0.0, 0.0]);
        assert!((local[0] + 1.6f64.sqrt()).abs() < 1e-14);
        assert!((local[1] + 0.9f64.sqrt()).abs() < 1e-14);
        for i in 0..2 {
            assert!(d.evaluate(i, &[0.0, 0.0]).unwrap().abs() < 1e-14);
        }
        assert!(d.confocality_defect(s.base_sq_axes()) < 1e-15);
    }

    #[test]
    fn orthonormalization_fixes_a_skewed_frame() {
        let f = FrameAtPoint {
            origin: vec![0.0, 0.0],
            normals: vec![vec![1.0, 1e-6], vec![0.0, 1.0]],
            support: vec![1.0, 1.0],
        };
        let g = f.orthonormalized();
        assert!(g.orthogonality_defect() < 1e-15);
        for v in g.normals() {
            assert!((norm(v) - 1.0).abs() < 1e-15);
        }
        // symmetric correction splits the skew between both vectors
        assert!((g.normal(0)[1] - 5e-7).abs() < 1e-12);
        assert!((g.normal(1)[0] + 5e-7).abs() < 1e-12);
    }

    #[test]
    fn local_and_world_round_trip() {
        let s = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).unwrap();
        let f = s.frame_at_point(&[1.0, 1.0, 0.5]).unwrap();
        let y = [0.3, -2.0, 4.0];
        let back = f.to_world(&f.to_local(&y));
        for (a, b) in back.iter().zip(y) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
