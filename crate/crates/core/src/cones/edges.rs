use super::Cone;
use crate::confocal::ConfocalSystem;
use crate::error::{Error, Result};
use crate::numerics::{dot, null_space_1d, Matrix};

/// Relative gap (in units of the largest axis) below which two parameters
/// of a cone family count as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-7;

/// Relative tolerance for the confocality of a cone family.
const CONFOCAL_TOL: f64 = 1e-9;

/// Squared cosines down to this negative value are clamped to zero.
const CLAMP_TOL: f64 = 1e-12;

/// Relative cone residual accepted for a common edge.
const EDGE_TOL: f64 = 1e-8;

/// A common edge of a confocal family of cones sharing apex and frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Transversal {
    /// `±1` per frame axis; the first nonzero component is always positive.
    pub sign_profile: Vec<i8>,
    /// Unit direction in frame coordinates.
    pub direction: Vec<f64>,
    /// Unit direction in world coordinates.
    pub world_direction: Vec<f64>,
    pub sq_cosines: Vec<f64>,
}

/// The left side of the identity `Σ_k ∏_j (c_k + s_j) / ∏_{i≠k}(c_k − c_i) = 1`
/// where `c` are the squared axes of the first cone and `s` the shifts of the
/// remaining `n − 2` cones (the first cone has shift zero).
pub fn identity_sum(first_axes: &[f64], shifts: &[f64]) -> Result<f64> {
    Ok(sq_cosines_closed_form(first_axes, shifts)?.iter().sum())
}

/// Closed-form squared direction cosines of the common edges, before any
/// clamping.
pub fn sq_cosines_closed_form(first_axes: &[f64], shifts: &[f64]) -> Result<Vec<f64>> {
    let n = first_axes.len();
    if n < 2 || shifts.len() + 2 != n {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(2),
            got: shifts.len(),
        });
    }
    check_distinct(first_axes)?;
    Ok((0..n)
        .map(|k| {
            let c = first_axes[k];
            let num: f64 = c * shifts.iter().map(|s| c + s).product::<f64>();
            let den: f64 = (0..n).filter(|&i| i != k).map(|i| c - first_axes[i]).product();
            num / den
        })
        .collect())
}

fn check_distinct(axes: &[f64]) -> Result<()> {
    let scale = axes.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    for i in 0..axes.len() {
        for j in i + 1..axes.len() {
            let gap = (axes[i] - axes[j]).abs();
            if gap < COINCIDENCE_TOL * scale {
                return Err(Error::CoincidentParameters { gap });
            }
        }
    }
    Ok(())
}

/// Checks that the cones share apex and frame and differ by constant shifts;
/// returns those shifts relative to the first cone.
fn family_shifts(cones: &[Cone]) -> Result<Vec<f64>> {
    let first = cones.first().ok_or_else(|| Error::InvalidInput("no cones".into()))?;
    let n = first.dim();
    if cones.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: cones.len(),
        });
    }
    let c = first.signed_sq_axes();
    let scale = c.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut shifts = Vec::with_capacity(n - 2);
    for cone in &cones[1..] {
        if cone.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cone.dim(),
            });
        }
        let apex_gap = cone.apex().iter().zip(first.apex()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let frame_gap = cone
            .frame()
            .iter()
            .zip(first.frame())
            .flat_map(|(u, v)| u.iter().zip(v).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if apex_gap > CONFOCAL_TOL * (1.0 + scale.sqrt()) || frame_gap > super::FRAME_TOL {
            return Err(Error::InvalidInput("cones must share apex and frame".into()));
        }
        let s = cone.signed_sq_axes();
        let shift = s[0] - c[0];
        let defect = s.iter().zip(c).fold(0.0f64, |m, (a, b)| m.max((a - b - shift).abs()));
        if defect > CONFOCAL_TOL * scale {
            return Err(Error::NotConfocal { defect });
        }
        shifts.push(shift);
    }
    Ok(shifts)
}

/// Squared direction cosines from the null space of the matrix whose
/// column `j` holds `1/s^j_k`, normalized to sum to one.
pub fn sq_cosines_by_null_space(cones: &[Cone]) -> Result<Vec<f64>> {
    family_shifts(cones)?;
    let cols: Vec<Vec<f64>> = cones
        .iter()
        .map(|c| c.signed_sq_axes().iter().map(|s| 1.0 / s).collect())
        .collect();
    let v = null_space_1d(&Matrix::from_columns(&cols))?;
    let total: f64 = v.iter().sum();
    Ok(v.iter().map(|x| x / total).collect())
}

/// All real common edges of `n − 1` confocal cones, one per sign profile
/// modulo global negation.
pub fn common_edges(cones: &[Cone]) -> Result<Vec<Transversal>> {
    let shifts = family_shifts(cones)?;
    let first = &cones[0];
    let n = first.dim();
    let raw = sq_cosines_closed_form(first.signed_sq_axes(), &shifts)?;
    if let Some(worst) = raw.iter().copied().filter(|v| *v < -CLAMP_TOL).reduce(f64::min) {
        return Err(Error::NoRealEdge { residual: worst });
    }
    let sq: Vec<f64> = raw.iter().map(|v| v.max(0.0)).collect();
    let magnitude: Vec<f64> = sq.iter().map(|v| v.sqrt()).collect();
    let lead = magnitude
        .iter()
        .position(|m| *m > 0.0)
        .ok_or(Error::NoRealEdge { residual: 0.0 })?;

    let mut edges: Vec<Transversal> = Vec::new();
    for bits in 0..(1usize << (n - 1)) {
        let mut profile = vec![1i8; n];
        let mut b = 0;
        for (k, p) in profile.iter_mut().enumerate() {
            if k == lead {
                continue;
            }
            if bits >> b & 1 == 1 {
                *p = -1;
            }
            b += 1;
        }
        // profiles that only differ on zero components give the same line
        for (k, p) in profile.iter_mut().enumerate() {
            if magnitude[k] == 0.0 {
                *p = 1;
            }
        }
        if edges.iter().any(|e| e.sign_profile == profile) {
            continue;
        }
        let direction: Vec<f64> = magnitude.iter().zip(&profile).map(|(m, p)| m * *p as f64).collect();
        let mut world = vec![0.0; n];
        for (d, f) in direction.iter().zip(first.frame()) {
            for (w, fi) in world.iter_mut().zip(f) {
                *w += d * fi;
            }
        }
        let probe: Vec<f64> = first.apex().iter().zip(&world).map(|(a, w)| a + w).collect();
        let worst = cones
            .iter()
            .map(|c| c.relative_eval(&probe).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        if worst > EDGE_TOL {
            return Err(Error::NoRealEdge { residual: worst });
        }
        edges.push(Transversal {
            sign_profile: profile,
            direction,
            world_direction: world,
            sq_cosines: sq.clone(),
        });
    }
    Ok(edges)
}

/// Distance along an edge from `x′` to the hyperplane through the center
/// parallel to the tangent hyperplane of the first confocal at `x′`.
pub fn intercept_length(sys: &ConfocalSystem, apex: &[f64], edge: &Transversal) -> Result<f64> {
    intercept_length_for(sys, apex, edge, 0)
}

/// As [`intercept_length`] for the confocal with parameter `λ^j`.
pub fn intercept_length_for(sys: &ConfocalSystem, apex: &[f64], edge: &Transversal, j: usize) -> Result<f64> {
    let n = sys.dim();
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, lo: 0, hi: n - 1 });
    }
    let frame = sys.frame_at_point(apex)?;
    let normal = frame.normal(j);
    let along = dot(normal, &edge.world_direction);
    if along.abs() <= 1e-12 {
        return Err(Error::ParallelEdge);
    }
    Ok((dot(normal, apex) / along).abs())
}
