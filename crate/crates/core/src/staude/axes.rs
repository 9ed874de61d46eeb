use crate::cones::{common_edges, focal_cone, intercept_length_for, Transversal};
use crate::confocal::ConfocalSystem;
use crate::error::{Error, Result};
use crate::numerics::{cross3, dot, norm};

/// Relative size below which a pair or triple counts as dependent.
const DEPENDENCE_TOL: f64 = 1e-10;

/// Relative distance `|OM|/|OL|` below which the ellipse is a circle.
const CIRCLE_TOL: f64 = 1e-12;

/// Relative dot product below which two diameters count as perpendicular.
const ORTHOGONAL_TOL: f64 = 1e-12;

/// Relative pivot coordinate below which a pivot lies in a principal plane.
const PIVOT_TOL: f64 = 1e-6;

/// Agreement required between edge diagonals and the dual normals.
const DIAGONAL_TOL: f64 = 1e-6;

/// Principal axes of an ellipse, major first.
#[derive(Debug, Clone, PartialEq)]
pub struct Axes2 {
    pub directions: [[f64; 2]; 2],
    pub lengths: [f64; 2],
    /// Set for a circle, where any orthonormal pair is returned.
    pub tie_break: bool,
}

/// How the axes of an ellipsoid were recovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChaslesRoute {
    /// The diameters were already perpendicular.
    Orthogonal,
    /// Focal cones of the dual system with apex at the center, pivoting on
    /// the diameter with this index.
    FocalCones { pivot: usize },
    /// The diameter with this index is an axis; the other two are reduced in
    /// their plane.
    AxisAndSection { axis: usize },
}

/// Principal axes of an ellipsoid, longest first.
#[derive(Debug, Clone, PartialEq)]
pub struct Axes3 {
    pub directions: [[f64; 3]; 3],
    pub lengths: [f64; 3],
    pub route: ChaslesRoute,
}

fn unit2(v: [f64; 2]) -> [f64; 2] {
    let r = v[0].hypot(v[1]);
    [v[0] / r, v[1] / r]
}

fn perp(v: [f64; 2]) -> [f64; 2] {
    [-v[1], v[0]]
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Where the line `p + s·dir` meets the line through the origin along `u`,
/// as the signed distance along `u`; `None` when they are parallel.
fn meet_on_line(u: [f64; 2], p: [f64; 2], dir: [f64; 2]) -> Option<f64> {
    let den = cross2(u, dir);
    if den.abs() <= 1e-8 {
        return None;
    }
    Some(cross2(p, dir) / den)
}

/// Axes of the ellipse with center `o` and conjugate semi-diameter endpoints
/// `p`, `q`, by Rytz's construction.
pub fn rytz_chasles_2d(o: [f64; 2], p: [f64; 2], q: [f64; 2]) -> Result<Axes2> {
    let p = [p[0] - o[0], p[1] - o[1]];
    let q = [q[0] - o[0], q[1] - o[1]];
    let (np, nq) = (p[0].hypot(p[1]), q[0].hypot(q[1]));
    if !(np.is_finite() && nq.is_finite()) || np == 0.0 || nq == 0.0 {
        return Err(Error::DegeneratePair);
    }
    if cross2(p, q).abs() <= DEPENDENCE_TOL * np * nq {
        return Err(Error::DegeneratePair);
    }
    // turn q by a right angle about the center and offset P by it both ways
    let rq = perp(q);
    let m = [p[0] + rq[0], p[1] + rq[1]];
    let l = [p[0] - rq[0], p[1] - rq[1]];
    let (om, ol) = (m[0].hypot(m[1]), l[0].hypot(l[1]));
    if om <= CIRCLE_TOL * ol {
        let r = ol / 2.0;
        let d = unit2(p);
        return Ok(Axes2 {
            directions: [d, perp(d)],
            lengths: [r, r],
            tie_break: true,
        });
    }
    let (um, ul) = (unit2(m), unit2(l));
    let sum = [um[0] + ul[0], um[1] + ul[1]];
    let diff = [ul[0] - um[0], ul[1] - um[1]];
    // the two bisectors of the angle LOM are the axes, the inner one major
    let (major, minor) = if sum[0].hypot(sum[1]) >= diff[0].hypot(diff[1]) {
        let major = unit2(sum);
        (major, perp(major))
    } else {
        let minor = unit2(diff);
        ([minor[1], -minor[0]], minor)
    };
    // parallels to the axes through P cut the line OM at the axis lengths
    let a = meet_on_line(um, p, minor).map(f64::abs).unwrap_or((ol + om) / 2.0);
    let b = meet_on_line(um, p, major).map(f64::abs).unwrap_or((ol - om) / 2.0);
    Ok(Axes2 {
        directions: [major, minor],
        lengths: [a, b],
        tie_break: false,
    })
}

fn unit3(v: [f64; 3]) -> [f64; 3] {
    let r = norm(&v);
    [v[0] / r, v[1] / r, v[2] / r]
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn combine(basis: &[[f64; 3]; 3], c: &[f64]) -> [f64; 3] {
    let mut w = [0.0; 3];
    for (b, ci) in basis.iter().zip(c) {
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi += ci * bi;
        }
    }
    w
}

fn sorted(mut axes: Vec<([f64; 3], f64)>, route: ChaslesRoute) -> Axes3 {
    axes.sort_by(|x, y| y.1.total_cmp(&x.1));
    Axes3 {
        directions: [axes[0].0, axes[1].0, axes[2].0],
        lengths: [axes[0].1, axes[1].1, axes[2].1],
        route,
    }
}

/// Plane normal, minor and major directions, minor and major lengths.
type Section = ([f64; 3], [f64; 3], [f64; 3], f64, f64);

/// The section of the ellipsoid spanned by the conjugate semi-diameters
/// `q`, `r`: unit plane normal, minor and major directions with lengths.
fn section(q: [f64; 3], r: [f64; 3]) -> Result<Section> {
    let n = unit3(cross3(&q, &r));
    let e1 = unit3(q);
    let e2 = cross3(&n, &e1);
    let ax = rytz_chasles_2d([0.0, 0.0], [norm(&q), 0.0], [dot(&r, &e1), dot(&r, &e2)])?;
    let lift = |d: [f64; 2]| unit3([
        d[0] * e1[0] + d[1] * e2[0],
        d[0] * e1[1] + d[1] * e2[1],
        d[0] * e1[2] + d[1] * e2[2],
    ]);
    Ok((n, lift(ax.directions[1]), lift(ax.directions[0]), ax.lengths[1], ax.lengths[0]))
}

/// Axes through the focal cones of the dual confocal system at the end `p`
/// of one semi-diameter, with the other two spanning the conjugate plane.
fn by_focal_cones(p: [f64; 3], q: [f64; 3], r: [f64; 3], pivot: usize) -> Result<Axes3> {
    let (mut n1, n2, n3, rho2, rho3) = section(q, r)?;
    if dot(&n1, &p) < 0.0 {
        n1 = [-n1[0], -n1[1], -n1[2]];
    }
    let basis = [n1, n2, n3];
    // frame normals at P have parameters 0, ρ₂², ρ₃²; the dual family has
    // squared axes S − λ^j shifted by its own parameter
    let s = rho3 * rho3;
    let top = rho3 * rho3 + s;
    let dual = ConfocalSystem::new(vec![top, top - rho2 * rho2, top - rho3 * rho3])?;
    let center: Vec<f64> = basis.iter().map(|b| -dot(b, &p)).collect();
    let cones = (1..3).map(|k| focal_cone(&dual, &center, k)).collect::<Result<Vec<_>>>()?;
    let edges = common_edges(&cones)?;
    if edges.len() != 4 {
        return Err(Error::UnconstructibleConfiguration(format!("{} common edges", edges.len())));
    }
    let normals = dual.frame_at_point(&center)?.orthonormalized();
    let d: Vec<&[f64]> = edges.iter().map(|e: &Transversal| e.world_direction.as_slice()).collect();
    let mut axes = Vec::with_capacity(3);
    let mut used = [false; 3];
    for [i, j, k, l] in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
        let v = cross3(&cross3(d[i], d[j]), &cross3(d[k], d[l]));
        let len = norm(&v);
        if len <= 1e-12 {
            return Err(Error::UnconstructibleConfiguration("edge planes coincide".into()));
        }
        let v = [v[0] / len, v[1] / len, v[2] / len];
        let (best, fit) = (0..3)
            .map(|m| (m, dot(&v, normals.normal(m)).abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("three normals");
        if used[best] || fit < 1.0 - DIAGONAL_TOL {
            return Err(Error::UnconstructibleConfiguration(format!(
                "edge diagonal misses the dual normals by {}",
                1.0 - fit
            )));
        }
        used[best] = true;
        let lengths: Vec<f64> = edges
            .iter()
            .filter_map(|e| intercept_length_for(&dual, &center, e, best).ok())
            .collect();
        if lengths.is_empty() {
            return Err(Error::ParallelEdge);
        }
        let length = lengths.iter().sum::<f64>() / lengths.len() as f64;
        axes.push((unit3(combine(&basis, &v)), length));
    }
    Ok(sorted(axes, ChaslesRoute::FocalCones { pivot }))
}

/// Principal axes of the ellipsoid with center `o` and conjugate
/// semi-diameter endpoints `p`, `q`, `r`.
pub fn chasles_3d(o: [f64; 3], p: [f64; 3], q: [f64; 3], r: [f64; 3]) -> Result<Axes3> {
    let v = [sub3(p, o), sub3(q, o), sub3(r, o)];
    let lens = v.map(|x| norm(&x));
    if lens.iter().any(|l| !l.is_finite() || *l == 0.0) {
        return Err(Error::DegenerateTriple);
    }
    let volume = dot(&v[0], &cross3(&v[1], &v[2]));
    if volume.abs() <= DEPENDENCE_TOL * lens.iter().product::<f64>() {
        return Err(Error::DegenerateTriple);
    }
    let perpendicular = |i: usize, j: usize| dot(&v[i], &v[j]).abs() <= ORTHOGONAL_TOL * lens[i] * lens[j];
    if perpendicular(0, 1) && perpendicular(0, 2) && perpendicular(1, 2) {
        let axes = (0..3).map(|i| (unit3(v[i]), lens[i])).collect();
        return Ok(sorted(axes, ChaslesRoute::Orthogonal));
    }

    // pivot on the diameter whose end lies farthest from the principal planes
    let mut scored: Vec<(usize, f64)> = (0..3)
        .filter_map(|i| {
            let (q, r) = (v[(i + 1) % 3], v[(i + 2) % 3]);
            let (_, n2, n3, rho2, rho3) = section(q, r).ok()?;
            let gap = (rho3 * rho3 - rho2 * rho2) / (rho3 * rho3);
            let off = dot(&n2, &v[i]).abs().min(dot(&n3, &v[i]).abs()) / lens[i];
            Some((i, off.min(gap)))
        })
        .collect();
    scored.sort_by(|x, y| y.1.total_cmp(&x.1));
    let mut last = None;
    for &(i, score) in &scored {
        if score < PIVOT_TOL {
            break;
        }
        match by_focal_cones(v[i], v[(i + 1) % 3], v[(i + 2) % 3], i) {
            Ok(axes) => return Ok(axes),
            Err(e) => last = Some(e),
        }
    }

    // a diameter perpendicular to the plane of the other two is an axis
    for i in 0..3 {
        let (q, r) = (v[(i + 1) % 3], v[(i + 2) % 3]);
        if perpendicular(i, (i + 1) % 3) && perpendicular(i, (i + 2) % 3) {
            let (_, n2, n3, rho2, rho3) = section(q, r)?;
            let axes = vec![(unit3(v[i]), lens[i]), (n2, rho2), (n3, rho3)];
            return Ok(sorted(axes, ChaslesRoute::AxisAndSection { axis: i }));
        }
    }
    Err(Error::UnconstructibleConfiguration(match last {
        Some(e) => format!("no usable pivot: {e}"),
        None => "every diameter ends on a principal plane".into(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{jacobi_eigen, SymmetricMatrix};

    fn ellipse_point(a: f64, b: f64, angle: f64, phi: f64) -> ([f64; 2], [f64; 2]) {
        let (c, s) = (angle.cos(), angle.sin());
        let rot = |x: f64, y: f64| [c * x - s * y, s * x + c * y];
        (rot(a * phi.cos(), b * phi.sin()), rot(-a * phi.sin(), b * phi.cos()))
    }

    #[test]
    fn rytz_recovers_rotated_ellipse() {
        for (angle, phi) in [(0.3, 0.4), (1.2, 2.0), (-0.7, 3.5), (0.0, 0.0), (0.5, std::f64::consts::FRAC_PI_2)] {
            let (p, q) = ellipse_point(3.0, 1.5, angle, phi);
            let ax = rytz_chasles_2d([0.0, 0.0], p, q).unwrap();
            assert!((ax.lengths[0] - 3.0).abs() < 1e-12, "{ax:?}");
            assert!((ax.lengths[1] - 1.5).abs() < 1e-12);
            let want = [angle.cos(), angle.sin()];
            assert!((cross2(ax.directions[0], want)).abs() < 1e-12);
            assert!(!ax.tie_break);
        }
    }

    #[test]
    fn rytz_with_offset_center_and_swapped_pair() {
        let (p, q) = ellipse_point(2.0, 1.0, 0.4, 1.0);
        let o = [5.0, -2.0];
        let shift = |v: [f64; 2]| [v[0] + o[0], v[1] + o[1]];
        let ax = rytz_chasles_2d(o, shift(q), shift(p)).unwrap();
        assert!((ax.lengths[0] - 2.0).abs() < 1e-12 && (ax.lengths[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rytz_circle_and_degenerate() {
        let ax = rytz_chasles_2d([0.0, 0.0], [0.6, 0.8], [-0.8, 0.6]).unwrap();
        assert!(ax.tie_break);
        assert_eq!(ax.lengths, [1.0, 1.0]);
        assert!(matches!(
            rytz_chasles_2d([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]),
            Err(Error::DegeneratePair)
        ));
    }

    fn rotation(a: f64, b: f64, c: f64) -> [[f64; 3]; 3] {
        let rx = [[1.0, 0.0, 0.0], [0.0, a.cos(), -a.sin()], [0.0, a.sin(), a.cos()]];
        let ry = [[b.cos(), 0.0, b.sin()], [0.0, 1.0, 0.0], [-b.sin(), 0.0, b.cos()]];
        let rz = [[c.cos(), -c.sin(), 0.0], [c.sin(), c.cos(), 0.0], [0.0, 0.0, 1.0]];
        let mul = |x: [[f64; 3]; 3], y: [[f64; 3]; 3]| {
            let mut m = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                }
            }
            m
        };
        mul(mul(rx, ry), rz)
    }

    /// Columns of `R·A·Q` for axes `A`, rotations `R` (placement) and `Q`
    /// (choice of conjugate system).
    fn triple(axes: [f64; 3], place: [[f64; 3]; 3], pick: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (col, o) in out.iter_mut().enumerate() {
            let local = [0, 1, 2].map(|i| axes[i] * pick[i][col]);
            for i in 0..3 {
                o[i] = (0..3).map(|k| place[i][k] * local[k]).sum();
            }
        }
        out
    }

    fn oracle(v: &[[f64; 3]; 3]) -> crate::numerics::Eigen {
        let mut m = SymmetricMatrix::zeros(3);
        for i in 0..3 {
            for j in i..3 {
                m.set(i, j, (0..3).map(|k| v[k][i] * v[k][j]).sum());
            }
        }
        jacobi_eigen(&m).unwrap()
    }

    #[test]
    fn chasles_matches_the_eigen_oracle() {
        let axes = [3.0, 2.0, 1.0];
        for (place, pick) in [
            ((0.3, -0.5, 1.1), (0.4, 0.9, -0.3)),
            ((0.0, 0.0, 0.0), (1.0, 0.2, 0.7)),
            ((2.1, 0.4, -1.3), (-0.6, 1.4, 2.2)),
        ] {
            let v = triple(axes, rotation(place.0, place.1, place.2), rotation(pick.0, pick.1, pick.2));
            let got = chasles_3d([0.0; 3], v[0], v[1], v[2]).unwrap();
            assert!(matches!(got.route, ChaslesRoute::FocalCones { .. }));
            let eig = oracle(&v);
            for k in 0..3 {
                assert!((got.lengths[k] - axes[k]).abs() < 1e-8, "{got:?}");
                assert!((got.lengths[k] - eig.values[k].sqrt()).abs() < 1e-8);
                let c = dot(&got.directions[k], &eig.vector(k)).abs();
                assert!((c - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn chasles_orthogonal_and_axis_routes() {
        let got = chasles_3d([0.0; 3], [0.0, 2.0, 0.0], [3.0, 0.0, 0.0], [0.0, 0.0, 1.0]).unwrap();
        assert_eq!(got.route, ChaslesRoute::Orthogonal);
        assert_eq!(got.lengths, [3.0, 2.0, 1.0]);
        // P on the x axis, Q and R conjugate in the yz section
        let (c, s) = (0.6f64.cos(), 0.6f64.sin());
        let got = chasles_3d([0.0; 3], [3.0, 0.0, 0.0], [0.0, 2.0 * c, s], [0.0, -2.0 * s, c]).unwrap();
        assert_eq!(got.route, ChaslesRoute::AxisAndSection { axis: 0 });
        assert!((got.lengths[1] - 2.0).abs() < 1e-12 && (got.lengths[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chasles_degenerate_triple() {
        let r = chasles_3d([0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 1e-12]);
        assert!(matches!(r, Err(Error::DegenerateTriple)));
    }
}
