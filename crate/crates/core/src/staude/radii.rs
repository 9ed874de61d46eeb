use super::FocalConics;
use crate::cones::sq_cosines_closed_form;
use crate::confocal::FrameAtPoint;
use crate::error::{Error, Result};

/// Sign profiles `(ε_ξ, ε_η, ε_ζ)` of the four focal radii, in the frame of
/// confocal normals at the point.
pub const SIGN_TABLE: [[i8; 3]; 4] = [[-1, 1, 1], [-1, 1, -1], [-1, -1, -1], [-1, -1, 1]];

/// A common transversal of the two focal conics through a point.
#[derive(Debug, Clone, PartialEq)]
pub struct FocalRadius {
    pub sign_profile: [i8; 3],
    /// Unit direction in world coordinates.
    pub direction: [f64; 3],
    /// Signed parameter of the focal-ellipse hit `E = P + t·direction`.
    pub t: f64,
    /// Signed parameter of the focal-hyperbola hit `H = P + τ·direction`.
    pub tau: f64,
    pub e: [f64; 3],
    pub h: [f64; 3],
}

const PARALLEL_TOL: f64 = 1e-12;

/// The four focal radii of a point off the coordinate planes.
pub fn focal_radii(fc: &FocalConics, p: &[f64; 3]) -> Result<Vec<FocalRadius>> {
    let sys = fc.system();
    let ec = sys.elliptic_coordinates(p)?;
    let table = sys.axes_table(&ec);
    let frame = FrameAtPoint::from_table(p, &table)?;
    let shift = table.entry(2, 0) - table.entry(1, 0);
    let sq = sq_cosines_closed_form(table.row(1), &[shift])?;
    let magnitude: Vec<f64> = sq.iter().map(|v| v.max(0.0).sqrt()).collect();

    SIGN_TABLE
        .iter()
        .map(|profile| {
            let mut d = [0.0; 3];
            for j in 0..3 {
                let c = profile[j] as f64 * magnitude[j];
                for (di, ni) in d.iter_mut().zip(frame.normal(j)) {
                    *di += c * ni;
                }
            }
            let hit = |axis: usize| -> Result<f64> {
                if d[axis].abs() <= PARALLEL_TOL {
                    return Err(Error::NoIntersection { axis });
                }
                Ok(-p[axis] / d[axis])
            };
            let t = hit(2)?;
            let tau = hit(1)?;
            let at = |s: f64| [p[0] + s * d[0], p[1] + s * d[1], p[2] + s * d[2]];
            let mut e = at(t);
            e[2] = 0.0;
            let mut h = at(tau);
            h[1] = 0.0;
            Ok(FocalRadius {
                sign_profile: *profile,
                direction: d,
                t,
                tau,
                e,
                h,
            })
        })
        .collect()
}
