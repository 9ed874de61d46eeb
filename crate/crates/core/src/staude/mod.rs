//! Three-dimensional applications: the focal conics of an ellipsoid,
//! shortest broken lines through them, focal radii, the string length of
//! the wire model and the axis constructions from conjugate diameters.

mod axes;
mod radii;

pub use axes::{chasles_3d, rytz_chasles_2d, Axes2, Axes3, ChaslesRoute};
pub use radii::{focal_radii, FocalRadius, SIGN_TABLE};

use crate::confocal::{ConfocalSystem, AXIS_GUARD};
use crate::error::{Error, Result};
use crate::numerics::{distance, dot, minimize_1d, norm, sub, Domain, DEFAULT_GRID};
use crate::quadrics::SURFACE_TOL;
use std::f64::consts::{PI, TAU};

/// Default bound `|v| ≤ V_MAX` of the hyperbola search.
pub const V_MAX: f64 = 5.0;

/// Semi-axes `a > b > c` of an ellipsoid, together with its focal ellipse in
/// `z = 0` and focal hyperbola in `y = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FocalConics {
    a: f64,
    b: f64,
    c: f64,
}

/// Branch of the focal hyperbola, by the sign of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Which focal conic a broken line is bent on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conic {
    Ellipse,
    Hyperbola(Branch),
}

impl FocalConics {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(c > 0.0 && b > c && a > b) || !a.is_finite() {
            return Err(Error::InvalidInput(format!("need a > b > c > 0, got ({a}, {b}, {c})")));
        }
        Ok(Self { a, b, c })
    }

    pub fn semi_axes(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// The confocal family with base squared axes `(a², b², c²)`.
    pub fn system(&self) -> ConfocalSystem {
        ConfocalSystem::new(vec![self.a * self.a, self.b * self.b, self.c * self.c]).expect("validated axes")
    }

    /// `√(a² − b²)`: the foci of the focal ellipse and vertices of the hyperbola.
    pub fn ab(&self) -> f64 {
        (self.a * self.a - self.b * self.b).sqrt()
    }

    /// `√(a² − c²)`: the vertices of the focal ellipse and foci of the hyperbola.
    pub fn ac(&self) -> f64 {
        (self.a * self.a - self.c * self.c).sqrt()
    }

    /// `√(b² − c²)`.
    pub fn bc(&self) -> f64 {
        (self.b * self.b - self.c * self.c).sqrt()
    }

    pub fn ellipse_point(&self, u: f64) -> [f64; 3] {
        [self.ac() * u.cos(), self.bc() * u.sin(), 0.0]
    }

    pub fn ellipse_tangent(&self, u: f64) -> [f64; 3] {
        [-self.ac() * u.sin(), self.bc() * u.cos(), 0.0]
    }

    pub fn hyperbola_point(&self, v: f64, branch: Branch) -> [f64; 3] {
        [branch.sign() * self.ab() * v.cosh(), 0.0, -self.bc() * v.sinh()]
    }

    pub fn hyperbola_tangent(&self, v: f64, branch: Branch) -> [f64; 3] {
        [branch.sign() * self.ab() * v.sinh(), 0.0, -self.bc() * v.cosh()]
    }

    /// `x²/(a²−c²) + y²/(b²−c²) − 1` and the off-plane coordinate `z`.
    pub fn ellipse_residual(&self, x: &[f64]) -> (f64, f64) {
        let (ac, bc) = (self.ac(), self.bc());
        ((x[0] / ac).powi(2) + (x[1] / bc).powi(2) - 1.0, x[2])
    }

    /// `x²/(a²−b²) − z²/(b²−c²) − 1` and the off-plane coordinate `y`.
    pub fn hyperbola_residual(&self, x: &[f64]) -> (f64, f64) {
        let (ab, bc) = (self.ab(), self.bc());
        ((x[0] / ab).powi(2) - (x[2] / bc).powi(2) - 1.0, x[1])
    }

    /// `F₁ = (−√(a²−c²), 0, 0)`.
    pub fn hyperbola_left_focus(&self) -> [f64; 3] {
        [-self.ac(), 0.0, 0.0]
    }

    /// `G₂ = (√(a²−b²), 0, 0)`.
    pub fn ellipse_right_focus(&self) -> [f64; 3] {
        [self.ab(), 0.0, 0.0]
    }

    /// `2a + √(a²−c²) − √(a²−b²)`.
    pub fn string_length(&self) -> f64 {
        2.0 * self.a + self.ac() - self.ab()
    }

    fn point_on(&self, conic: Conic, s: f64) -> ([f64; 3], [f64; 3]) {
        match conic {
            Conic::Ellipse => (self.ellipse_point(s), self.ellipse_tangent(s)),
            Conic::Hyperbola(b) => (self.hyperbola_point(s, b), self.hyperbola_tangent(s, b)),
        }
    }
}

/// An open polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct BrokenLine {
    vertices: Vec<Vec<f64>>,
}

impl BrokenLine {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidInput("a broken line needs two vertices".into()));
        }
        let n = vertices[0].len();
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| distance(&w[0], &w[1])).sum()
    }
}

/// Search settings for [`minimize_broken_line`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub samples: usize,
    pub v_max: f64,
    pub tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_GRID,
            v_max: V_MAX,
            tol: 1e-12,
        }
    }
}

/// The shortest broken line `F Q P` with `Q` on a focal conic.
#[derive(Debug, Clone, PartialEq)]
pub struct BrokenLineMinimum {
    pub conic: Conic,
    /// Curve parameter of `Q` (`u` on the ellipse, `v` on the hyperbola).
    pub parameter: f64,
    pub q: [f64; 3],
    pub length: f64,
    /// `|∠(QF, t) − ∠(QP, −t)|` for the unit tangent `t` at `Q`, in radians.
    pub reflection_defect: f64,
}

impl BrokenLineMinimum {
    pub fn broken_line(&self, f: &[f64; 3], p: &[f64; 3]) -> BrokenLine {
        BrokenLine {
            vertices: vec![f.to_vec(), self.q.to_vec(), p.to_vec()],
        }
    }
}

fn angle(u: &[f64], v: &[f64]) -> f64 {
    let c = dot(u, v) / (norm(u) * norm(v));
    c.clamp(-1.0, 1.0).acos()
}

/// Minimizes `|FQ| + |QP|` over `Q` on a focal conic by a grid scan and a
/// golden-section refinement. The hyperbola parameter is bounded by
/// `opts.v_max`.
pub fn minimize_broken_line(
    fc: &FocalConics,
    f: &[f64; 3],
    p: &[f64; 3],
    conic: Conic,
    opts: &SearchOptions,
) -> BrokenLineMinimum {
    let length = |s: f64| {
        let (q, _) = fc.point_on(conic, s);
        distance(f, &q) + distance(&q, p)
    };
    let domain = match conic {
        Conic::Ellipse => Domain::Periodic { start: 0.0, period: TAU },
        Conic::Hyperbola(_) => Domain::Interval {
            lo: -opts.v_max,
            hi: opts.v_max,
        },
    };
    let best = minimize_1d(length, domain, opts.samples, opts.tol);
    let (q, tangent) = fc.point_on(conic, best.arg);
    let to_f = sub(f, &q);
    let to_p = sub(p, &q);
    let reflection_defect = if norm(&to_f) == 0.0 || norm(&to_p) == 0.0 {
        0.0
    } else {
        let back: Vec<f64> = tangent.iter().map(|t| -t).collect();
        (angle(&to_f, &tangent) - angle(&to_p, &back)).abs()
    };
    BrokenLineMinimum {
        conic,
        parameter: best.arg,
        q,
        length: best.value,
        reflection_defect,
    }
}

/// `|H₁E| − |EH₂|` for points of the focal hyperbola and ellipse.
pub fn hh_difference(h1: &[f64; 3], h2: &[f64; 3], e: &[f64; 3]) -> f64 {
    distance(h1, e) - distance(e, h2)
}

/// `|H₁E| + |EH₂|`, the invariant for points on opposite branches.
pub fn hh_sum(h1: &[f64; 3], h2: &[f64; 3], e: &[f64; 3]) -> f64 {
    distance(h1, e) + distance(e, h2)
}

/// Both sides of the string-length theorem at a point of the ellipsoid.
#[derive(Debug, Clone, PartialEq)]
pub struct StaudeLength {
    pub closed_form: f64,
    pub assembled: f64,
    /// Shortest `P E G₂`.
    pub ellipse_leg: BrokenLineMinimum,
    /// Shortest `P H F₁` on the branch through `F₁` (`x < 0`) and on the
    /// other branch; the assembled length uses the shorter one.
    pub same_branch_leg: BrokenLineMinimum,
    pub opposite_branch_leg: BrokenLineMinimum,
}

impl StaudeLength {
    pub fn hyperbola_leg(&self) -> &BrokenLineMinimum {
        if self.same_branch_leg.length <= self.opposite_branch_leg.length {
            &self.same_branch_leg
        } else {
            &self.opposite_branch_leg
        }
    }
}

/// The string length `|PE| + |EG₂| + |PH| + |HF₁|` minimized over the
/// focal conics, next to its closed form.
pub fn staude_length(fc: &FocalConics, p: &[f64; 3], opts: &SearchOptions) -> Result<StaudeLength> {
    let residual = fc.system().base_ellipsoid().evaluate(p)?;
    if residual.abs() > SURFACE_TOL {
        return Err(Error::OffSurface { residual });
    }
    let guard = AXIS_GUARD * fc.a;
    if let Some(index) = p.iter().position(|c| c.abs() < guard) {
        return Err(Error::DegeneratePoint {
            index,
            value: p[index],
            guard,
        });
    }
    let g2 = fc.ellipse_right_focus();
    let f1 = fc.hyperbola_left_focus();
    let ellipse_leg = minimize_broken_line(fc, &g2, p, Conic::Ellipse, opts);
    let same_branch_leg = minimize_broken_line(fc, &f1, p, Conic::Hyperbola(Branch::Minus), opts);
    let opposite_branch_leg = minimize_broken_line(fc, &f1, p, Conic::Hyperbola(Branch::Plus), opts);
    let assembled = ellipse_leg.length + same_branch_leg.length.min(opposite_branch_leg.length);
    Ok(StaudeLength {
        closed_form: fc.string_length(),
        assembled,
        ellipse_leg,
        same_branch_leg,
        opposite_branch_leg,
    })
}

/// The point of the ellipsoid at spherical-like angles `(θ, φ)`, used for
/// sampling.
pub fn ellipsoid_point(fc: &FocalConics, theta: f64, phi: f64) -> [f64; 3] {
    let theta = theta.rem_euclid(PI);
    [
        fc.a * theta.sin() * phi.cos(),
        fc.b * theta.sin() * phi.sin(),
        fc.c * theta.cos(),
    ]
}
