use super::{Cone, QuadraticSurface};
use crate::confocal::{ConfocalSystem, FrameAtPoint};
use crate::error::{Error, Result};
use crate::numerics::SymmetricMatrix;
use crate::quadrics::CentralQuadric;

/// Relative tolerance (in units of `a_1²`) for two equal cone axes.
pub const RIGHT_CONE_TOL: f64 = 1e-7;

/// The tangent cone from an exterior point `x′` to an ellipsoid, expanded
/// from `U(x′) U(x) = P(x′, x)²` with `U(x) = xᵀA⁻²x − 1` and
/// `P(x′, x) = x′ᵀA⁻²x − 1`.
pub fn tangent_cone_form(ellipsoid: &CentralQuadric, apex: &[f64]) -> Result<QuadraticSurface> {
    if !ellipsoid.is_ellipsoid() {
        return Err(Error::NotAnEllipsoid);
    }
    let value = ellipsoid.evaluate(apex)?;
    if !(value > 0.0) {
        return Err(Error::NotExterior { value });
    }
    let n = apex.len();
    let d: Vec<f64> = ellipsoid.signed_sq_axes().iter().map(|s| 1.0 / s).collect();
    let w: Vec<f64> = apex.iter().zip(&d).map(|(x, di)| x * di).collect();
    let mut m = SymmetricMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let diag = if i == j { value * d[i] } else { 0.0 };
            m.set(i, j, diag - w[i] * w[j]);
        }
    }
    Ok(QuadraticSurface {
        quadratic: m,
        linear: w,
        constant: -(value + 1.0),
    })
}

/// The tangent cone from `x′` to the base ellipsoid in its own axes: the
/// confocal normals at `x′`, with signed squared axes `−λ^i`.
pub fn tangent_cone_canonical(sys: &ConfocalSystem, apex: &[f64]) -> Result<Cone> {
    let value = sys.base_ellipsoid().evaluate(apex)?;
    if !(value > 0.0) {
        return Err(Error::NotExterior { value });
    }
    let ec = sys.elliptic_coordinates(apex)?;
    let table = sys.axes_table(&ec);
    let frame = FrameAtPoint::from_table(apex, &table)?.orthonormalized();
    let axes = ec.lambdas().iter().map(|l| -l).collect();
    Cone::new(apex.to_vec(), frame.normals().to_vec(), axes)
}

/// The cone from `x′` over the focal quadric in the plane `x_k = 0`
/// (`1 ≤ k < n`), with squared axes `a_k² − λ^i` along the confocal normals.
pub fn focal_cone(sys: &ConfocalSystem, apex: &[f64], k: usize) -> Result<Cone> {
    let n = sys.dim();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, lo: 1, hi: n - 1 });
    }
    let ec = sys.elliptic_coordinates(apex)?;
    let table = sys.axes_table(&ec);
    let frame = FrameAtPoint::from_table(apex, &table)?.orthonormalized();
    Cone::new(apex.to_vec(), frame.normals().to_vec(), table.row(k).to_vec())
}

/// Whether the focal cone over quadric `k` at `x′` has two equal axes
/// (a right cone in three dimensions). Reads the axes straight from the
/// table, without building the cone frame.
pub fn right_cone_locus_check(sys: &ConfocalSystem, apex: &[f64], k: usize) -> Result<bool> {
    let n = sys.dim();
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, lo: 1, hi: n - 1 });
    }
    let table = sys.axes_table(&sys.elliptic_coordinates(apex)?);
    let s = table.row(k);
    let tol = RIGHT_CONE_TOL * sys.scale_sq();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if (s[i] - s[j]).abs() <= tol {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
