//! Seeded invariant suites, one check per property and tolerance.
//!
//! Every case draws from its own stream keyed by `(seed, check, case)`, so
//! results do not depend on scheduling.

use crate::sampling::{case_rng, coordinate, gaussian, point, sq_axes, surface_point, sweep_ellipsoids};
use confocal_core::cones::{
    common_edges, focal_cone, identity_sum, intercept_length, sq_cosines_by_null_space, tangent_cone_canonical,
    tangent_cone_form, Cone,
};
use confocal_core::confocal::{ApollonianCurve, ConfocalSystem, FrameAtPoint};
use confocal_core::numerics::{
    bracketed_root, distance, dot, elementary_symmetric_all, jacobi_eigen, minimize_1d, norm, null_space_1d, scale,
    Bracket, Domain, Matrix, SymmetricMatrix,
};
use confocal_core::quadrics::{apollonius_target, random_orthonormal_frame, CentralQuadric};
use confocal_core::staude::{
    chasles_3d, focal_radii, hh_difference, hh_sum, minimize_broken_line, rytz_chasles_2d, staude_length, Branch,
    Conic, FocalConics, SearchOptions,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Relative error injected into the Apollonius identity by the self-test.
pub const FORCED_PERTURBATION: f64 = 1e-6;

/// Run settings shared by all checks.
#[derive(Debug, Clone)]
pub struct Ctx {
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub force_failure: bool,
}

impl Default for Ctx {
    fn default() -> Self {
        Self {
            seed: 0,
            n_min: 2,
            n_max: 8,
            force_failure: false,
        }
    }
}

/// Worst metric of one case, or why the case could not be evaluated.
pub type Outcome = Result<f64, String>;

type Runner = fn(&Ctx, u64) -> Vec<Outcome>;

/// A named property with its tolerance.
#[derive(Clone, Copy)]
pub struct CheckDef {
    pub name: &'static str,
    pub suite: &'static str,
    pub tol: f64,
    run: Runner,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub tol: f64,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub worst_residual: f64,
    /// Largest `worst_residual / tol` over the checks; below 1 means pass.
    pub worst_ratio: f64,
    pub checks: Vec<CheckReport>,
}

/// Suite names in run order.
pub const SUITES: [&str; 5] = ["numerics", "apollonius", "confocal", "cones", "staude"];

/// Every check, in a fixed order that also fixes its random stream.
pub fn checks() -> Vec<CheckDef> {
    macro_rules! c {
        ($suite:expr, $name:ident, $tol:expr) => {
            CheckDef {
                name: stringify!($name),
                suite: $suite,
                tol: $tol,
                run: $name,
            }
        };
    }
    vec![
        c!("numerics", root_bracket, 0.5),
        c!("numerics", jacobi_reconstruction, 1e-9),
        c!("numerics", elementary_symmetric, 1e-10),
        c!("numerics", null_space_orthogonal, 1e-10),
        c!("apollonius", apollonius_invariants, 1e-9),
        c!("apollonius", tangent_hyperplane, 1e-12),
        c!("apollonius", pole_round_trip, 1e-10),
        c!("apollonius", conjugacy_symmetry, 0.5),
        c!("confocal", interlacing, 0.5),
        c!("confocal", round_trip, 1e-9),
        c!("confocal", orthogonality, 1e-10),
        c!("confocal", norm_identity, 1e-9),
        c!("confocal", support_consistency, 1e-9),
        c!("confocal", dual_membership, 1e-9),
        c!("confocal", central_sections, 1e-9),
        c!("confocal", tangency_product, 1e-9),
        c!("confocal", apollonian_residual, 1e-9),
        c!("confocal", apollonian_nearest, 1e-6),
        c!("confocal", apollonian_anchors, 1e-12),
        c!("cones", identity_lemma, 1e-9),
        c!("cones", edges_oracle, 1e-8),
        c!("cones", edges_residual, 1e-8),
        c!("cones", edges_unit_sum, 1e-10),
        c!("cones", intercept, 1e-8),
        c!("cones", tangent_cone_offdiag, 1e-8),
        c!("cones", tangent_cone_ratio, 1e-7),
        c!("cones", focal_cone_membership, 1e-8),
        c!("cones", focal_intersection_cone, 1e-9),
        c!("cones", right_cone_hyperbola, 1e-7),
        c!("cones", right_cone_generic, 1.0),
        c!("staude", staude_constancy, 1e-6),
        c!("staude", reflection, 1e-6),
        c!("staude", hh_constancy, 1e-9),
        c!("staude", transversal_optimality, 1e-9),
        c!("staude", chasles_2d, 1e-9),
        c!("staude", chasles_3d_oracle, 1e-7),
        c!("staude", chasles_consistency, 1e-7),
    ]
}

/// Runs one check by name.
pub fn run_check(ctx: &Ctx, name: &str) -> Option<CheckReport> {
    let all = checks();
    let (id, def) = all.iter().enumerate().find(|(_, c)| c.name == name)?;
    Some(evaluate(ctx, id as u64, def))
}

fn evaluate(ctx: &Ctx, id: u64, def: &CheckDef) -> CheckReport {
    let outcomes = (def.run)(ctx, id);
    let mut report = CheckReport {
        check: def.name.to_string(),
        tol: def.tol,
        cases: outcomes.len(),
        failures: 0,
        worst_residual: 0.0,
        first_failure: None,
    };
    for (i, o) in outcomes.iter().enumerate() {
        let failure = match o {
            Ok(v) if *v <= def.tol => {
                report.worst_residual = report.worst_residual.max(*v);
                None
            }
            Ok(v) => {
                if v.is_finite() {
                    report.worst_residual = report.worst_residual.max(*v);
                }
                Some(format!("case {i}: residual {v:e}"))
            }
            Err(e) => Some(format!("case {i}: {e}")),
        };
        if let Some(f) = failure {
            report.failures += 1;
            report.first_failure.get_or_insert(f);
        }
    }
    report
}

/// Runs the selected suites (all when `only` is empty). The forced-failure
/// self-test always includes the Apollonius suite it perturbs.
pub fn run_suites(ctx: &Ctx, only: &[String]) -> Vec<SuiteReport> {
    let all = checks();
    SUITES
        .iter()
        .filter(|s| only.is_empty() || only.iter().any(|o| o == *s) || (ctx.force_failure && **s == "apollonius"))
        .map(|suite| {
            let reports: Vec<CheckReport> = all
                .iter()
                .enumerate()
                .filter(|(_, c)| c.suite == *suite)
                .map(|(id, c)| evaluate(ctx, id as u64, c))
                .collect();
            let tols: Vec<f64> = all.iter().filter(|c| c.suite == *suite).map(|c| c.tol).collect();
            SuiteReport {
                suite: suite.to_string(),
                cases: reports.iter().map(|r| r.cases).sum(),
                failures: reports.iter().map(|r| r.failures).sum(),
                worst_residual: reports.iter().map(|r| r.worst_residual).fold(0.0, f64::max),
                worst_ratio: reports
                    .iter()
                    .zip(&tols)
                    .map(|(r, t)| r.worst_residual / t)
                    .fold(0.0, f64::max),
                checks: reports,
            }
        })
        .collect()
}

/// `per` cases for each dimension of `lo..=hi` inside the requested range.
fn dims(ctx: &Ctx, lo: usize, hi: usize, per: usize) -> Vec<usize> {
    (lo.max(ctx.n_min)..=hi.min(ctx.n_max))
        .flat_map(|n| std::iter::repeat_n(n, per))
        .collect()
}

/// Runs `f` on every planned dimension in parallel, in case order.
fn sweep<F>(ctx: &Ctx, id: u64, plan: Vec<usize>, f: F) -> Vec<Outcome>
where
    F: Fn(&mut ChaCha8Rng, usize) -> Outcome + Sync,
{
    plan.into_par_iter()
        .enumerate()
        .map(|(i, n)| f(&mut case_rng(ctx.seed, id, i as u64), n))
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// numerics

fn root_bracket(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, vec![0; 100], |rng, _| {
        let (c, k): (f64, f64) = (rng.gen_range(-0.9..0.9), rng.gen_range(1.0..5.0));
        let tol = 10f64.powf(rng.gen_range(-14.0..-6.0));
        let f = |x: f64| (k * x).tanh() - c;
        let r = bracketed_root(f, &Bracket::new(-3.0, 3.0, tol).map_err(err)?).map_err(err)?;
        let (lo, hi) = ((r - tol).max(-3.0), (r + tol).min(3.0));
        Ok(flag((-3.0..=3.0).contains(&r) && f(lo) * f(hi) <= 0.0))
    })
}

fn jacobi_reconstruction(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, (0..100).map(|i| 1 + i % 8).collect(), |rng, n| {
        let mut s = SymmetricMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                s.set(i, j, rng.gen_range(-5.0..5.0));
            }
        }
        let e = jacobi_eigen(&s).map_err(err)?;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let v: f64 = (0..n).map(|k| e.vectors[(i, k)] * e.values[k] * e.vectors[(j, k)]).sum();
                worst = worst.max((v - s.get(i, j)).abs());
            }
        }
        Ok(worst / s.max_abs().max(1.0))
    })
}

fn elementary_symmetric(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, (0..100).map(|i| 1 + i % 8).collect(), |rng, n| {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let e = elementary_symmetric_all(&x);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let t: f64 = rng.gen_range(-2.0..2.0);
            let product: f64 = x.iter().map(|xi| xi + t).product();
            let terms: Vec<f64> = (0..=n).map(|k| t.powi((n - k) as i32) * e[k]).collect();
            let size: f64 = terms.iter().map(|v| v.abs()).sum();
            worst = worst.max((product - terms.iter().sum::<f64>()).abs() / size.max(1.0));
        }
        Ok(worst)
    })
}

fn null_space_orthogonal(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, (0..100).map(|i| 2 + i % 7).collect(), |rng, n| {
        let cols: Vec<Vec<f64>> = (0..n - 1).map(|_| gaussian(rng, n)).collect();
        let v = null_space_1d(&Matrix::from_columns(&cols)).map_err(err)?;
        Ok(cols.iter().map(|c| dot(c, &v).abs() / norm(c)).fold(0.0, f64::max))
    })
}

// quadrics

fn apollonius_invariants(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    let bias = if ctx.force_failure { 1.0 + FORCED_PERTURBATION } else { 1.0 };
    sweep(ctx, id, dims(ctx, 2, 6, 100), |rng, n| {
        let q = CentralQuadric::ellipsoid(sq_axes(rng, n)).map_err(err)?;
        let sys = q.random_conjugate_system(rng).map_err(err)?;
        let mut worst = 0.0f64;
        for k in 1..=n {
            let v = sys.apollonius_invariant(k).map_err(err)?;
            worst = worst.max(rel(v, bias * apollonius_target(&q, k)));
        }
        Ok(worst)
    })
}

/// A quadric with random signs (the first axis kept real) and a point on it.
fn signed_quadric_point(rng: &mut ChaCha8Rng, n: usize) -> Result<(CentralQuadric, Vec<f64>), String> {
    let mut s = sq_axes(rng, n);
    for v in s.iter_mut().skip(1) {
        if rng.gen::<bool>() {
            *v = -*v;
        }
    }
    let q = CentralQuadric::new(s).map_err(err)?;
    loop {
        let d = gaussian(rng, n);
        let r2 = q.squared_radius_along(&d).map_err(err)?;
        if r2 > 0.0 && r2.is_finite() {
            return Ok((q, scale(&d, r2.sqrt() / norm(&d))));
        }
    }
}

fn tangent_hyperplane(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 100), |rng, n| {
        let (q, x) = signed_quadric_point(rng, n)?;
        let h = q.tangent_hyperplane_at(&x).map_err(err)?;
        let normal = q.normal_at(&x).map_err(err)?;
        let c = dot(h.coefficients(), &normal) / (norm(h.coefficients()) * norm(&normal));
        Ok((h.value_at(&x) - 1.0).abs().max((c.abs() - 1.0).abs()))
    })
}

fn pole_round_trip(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 100), |rng, n| {
        let q = CentralQuadric::ellipsoid(sq_axes(rng, n)).map_err(err)?;
        let d = gaussian(rng, n);
        let x = scale(&d, q.squared_radius_along(&d).map_err(err)?.sqrt() / norm(&d));
        let pole = q.pole_of_hyperplane(&q.tangent_hyperplane_at(&x).map_err(err)?).map_err(err)?;
        Ok(distance(&pole, &x) / norm(&x).max(1.0))
    })
}

fn conjugacy_symmetry(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 100), |rng, n| {
        let q = CentralQuadric::ellipsoid(sq_axes(rng, n)).map_err(err)?;
        let sys = q.random_conjugate_system(rng).map_err(err)?;
        let v = sys.vectors();
        let e = gaussian(rng, n);
        let mut ok = q.is_conjugate_pair(&e, &v[0]).map_err(err)? == q.is_conjugate_pair(&v[0], &e).map_err(err)?;
        for i in 0..n {
            for j in i + 1..n {
                ok &= q.is_conjugate_pair(&v[i], &v[j]).map_err(err)? && q.is_conjugate_pair(&v[j], &v[i]).map_err(err)?;
            }
        }
        Ok(flag(ok))
    })
}

// confocal

fn system_point(rng: &mut ChaCha8Rng, n: usize) -> Result<(ConfocalSystem, Vec<f64>), String> {
    let sys = ConfocalSystem::new(sq_axes(rng, n)).map_err(err)?;
    Ok((sys, point(rng, n)))
}

fn interlacing(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let l = sys.elliptic_coordinates(&x).map_err(err)?.lambdas().to_vec();
        let a = sys.base_sq_axes();
        let mut ok = l[0] < a[n - 1];
        for j in 1..n {
            ok &= a[n - j] < l[j] && l[j] < a[n - 1 - j];
        }
        Ok(flag(ok))
    })
}

fn round_trip(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let table = sys.axes_table(&sys.elliptic_coordinates(&x).map_err(err)?);
        let back = table.point(&x).map_err(err)?;
        Ok(back.iter().zip(&x).map(|(b, xi)| rel(b.abs(), xi.abs())).fold(0.0, f64::max))
    })
}

fn orthogonality(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        Ok(sys.frame_at_point(&x).map_err(err)?.orthogonality_defect())
    })
}

fn norm_identity(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let (lhs, rhs) = sys.norm_identity_check(&sys.elliptic_coordinates(&x).map_err(err)?);
        Ok(rel(lhs, rhs))
    })
}

fn support_consistency(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let ec = sys.elliptic_coordinates(&x).map_err(err)?;
        let table = sys.axes_table(&ec);
        let frame = FrameAtPoint::from_table(&x, &table).map_err(err)?;
        let closed = FrameAtPoint::closed_form_support_sq(&table);
        let mut worst = 0.0f64;
        for (j, &lambda) in ec.lambdas().iter().enumerate() {
            let plane = sys
                .confocal_quadric(lambda)
                .and_then(|q| q.tangent_hyperplane_at(&x))
                .map_err(err)?;
            worst = worst
                .max(rel(plane.distance_from_origin(), frame.support()[j]))
                .max(rel(closed[j], frame.support()[j].powi(2)));
        }
        Ok(worst)
    })
}

/// Largest dual-membership residual at `x`.
fn dual_residual(sys: &ConfocalSystem, x: &[f64]) -> Outcome {
    let table = sys.axes_table(&sys.elliptic_coordinates(x).map_err(err)?);
    let frame = FrameAtPoint::from_table(x, &table).map_err(err)?;
    Ok(frame
        .dual_membership_residuals(&table)
        .iter()
        .fold(0.0, |m, r| m.max(r.abs())))
}

fn dual_membership(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    let mut out = sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        dual_residual(&sys, &x)
    });
    if ctx.n_min <= 2 {
        // base (4, 1) at (√2, √2/2): 1.6/4 + 0.9/1.5 = 1
        let sys = ConfocalSystem::new(vec![4.0, 1.0]).expect("valid");
        let x = [2f64.sqrt(), 2f64.sqrt() / 2.0];
        out.push(dual_residual(&sys, &x).and_then(|r| {
            let table = sys.axes_table(&sys.elliptic_coordinates(&x).map_err(err)?);
            let p2 = FrameAtPoint::closed_form_support_sq(&table);
            Ok(r.max((p2[0] - 1.6).abs()).max((p2[1] - 0.9).abs()))
        }));
    }
    out
}

fn central_sections(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 200), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let ec = sys.elliptic_coordinates(&x).map_err(err)?;
        let first = sys.confocal_quadric(ec.lambdas()[0]).map_err(err)?;
        let frame = sys.frame_at_point(&x).map_err(err)?;
        let sq = sys.central_section_sq_axes(&x).map_err(err)?;
        let inv = first.signed_sq_axes().iter().fold(0.0f64, |m, s| m.max(1.0 / s.abs()));
        let mut worst = 0.0f64;
        for j in 1..n {
            worst = worst.max(rel(first.squared_radius_along(frame.normal(j)).map_err(err)?, sq[j - 1]));
            for k in j + 1..n {
                let c = first.conjugacy_value(frame.normal(j), frame.normal(k)).map_err(err)?;
                worst = worst.max(c.abs() / inv);
            }
        }
        Ok(worst)
    })
}

fn tangency_product(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 50), |rng, n| {
        let (sys, h) = system_point(rng, n)?;
        let a = sys.base_sq_axes();
        let top = h.iter().zip(a).map(|(hi, ai)| hi * hi * ai).sum::<f64>() / dot(&h, &h);
        let want = sys.tangency_invariant(&h).map_err(err)?;
        let mut worst = 0.0f64;
        for _ in 0..4 {
            let lambda = top - rng.gen_range(0.05..1.0) * (top + 3.0);
            let s = sys.tangency_locus_product(&h, lambda).map_err(err)?;
            worst = worst.max((s.product - want).abs() / want.max(a[0]));
        }
        Ok(worst)
    })
}

fn apollonian_residual(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 20), |rng, n| {
        let curve = ApollonianCurve::new(sq_axes(rng, n), point(rng, n)).map_err(err)?;
        let poles = curve.pole_parameters();
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < 50 {
            let tau: f64 = rng.gen_range(-2.0..2.0);
            if poles.iter().any(|p| (tau / p - 1.0).abs() < 1e-3) {
                continue;
            }
            worst = worst.max(curve.relative_residual(&curve.point(tau).map_err(err)?));
            done += 1;
        }
        Ok(worst)
    })
}

/// Nearest point of the homothet `s·E` to `u` in the plane, by dense
/// sampling of the angle and golden-section refinement.
pub fn nearest_on_homothet(sq_axes: &[f64], s: f64, u: &[f64]) -> [f64; 2] {
    let (p, q) = (s * sq_axes[0].sqrt(), s * sq_axes[1].sqrt());
    let d2 = |t: f64| (p * t.cos() - u[0]).powi(2) + (q * t.sin() - u[1]).powi(2);
    let best = minimize_1d(
        d2,
        Domain::Periodic {
            start: 0.0,
            period: std::f64::consts::TAU,
        },
        4096,
        1e-13,
    );
    [p * best.arg.cos(), q * best.arg.sin()]
}

fn apollonian_nearest(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 2, 10), |rng, n| {
        let a = sq_axes(rng, n);
        let u = point(rng, n);
        let s: f64 = rng.gen_range(0.3..3.0);
        let x = nearest_on_homothet(&a, s, &u);
        Ok(ApollonianCurve::new(a, u).map_err(err)?.relative_residual(&x))
    })
}

fn apollonian_anchors(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 6, 10), |rng, n| {
        let a = sq_axes(rng, n);
        let u = point(rng, n);
        let curve = ApollonianCurve::new(a.clone(), u.clone()).map_err(err)?;
        let center = curve.point(0.0).map_err(err)?;
        let p = curve.point(1.0 / a[0]).map_err(err)?;
        let c = center.iter().fold(0.0f64, |m, v| m.max(v.abs())) / a[0];
        let d = p.iter().zip(&u).fold(0.0f64, |m, (x, y)| m.max((x - y).abs() / y.abs().max(1.0)));
        Ok(c.max(d))
    })
}

// cones

fn identity_lemma(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    let plan: Vec<usize> = (0..500)
        .map(|i| 2 + i % 7)
        .filter(|n| (ctx.n_min..=ctx.n_max).contains(n))
        .collect();
    sweep(ctx, id, plan, |rng, n| {
        let first = sq_axes(rng, n);
        let shifts: Vec<f64> = (0..n - 2).map(|_| rng.gen_range(-4.0..4.0)).collect();
        Ok((identity_sum(&first, &shifts).map_err(err)? - 1.0).abs())
    })
}

/// Oracle gap, worst cone residual and unit-sum defect of the common edges
/// of the focal cones at a random point.
fn edge_metrics(rng: &mut ChaCha8Rng, n: usize) -> Result<[f64; 3], String> {
    let (sys, x) = system_point(rng, n)?;
    let cones = (1..n).map(|k| focal_cone(&sys, &x, k)).collect::<Result<Vec<Cone>, _>>().map_err(err)?;
    let edges = common_edges(&cones).map_err(err)?;
    if edges.len() != 1 << (n - 1) {
        return Err(format!("{} edges instead of {}", edges.len(), 1 << (n - 1)));
    }
    let oracle = sq_cosines_by_null_space(&cones).map_err(err)?;
    let mut m = [0.0f64; 3];
    for e in &edges {
        for (c, o) in e.sq_cosines.iter().zip(&oracle) {
            m[0] = m[0].max((c - o).abs());
        }
        let probe: Vec<f64> = x.iter().zip(&e.world_direction).map(|(p, d)| p + 2.5 * d).collect();
        for c in &cones {
            m[1] = m[1].max(c.relative_eval(&probe).map_err(err)?.abs());
        }
        m[2] = m[2].max((e.sq_cosines.iter().sum::<f64>() - 1.0).abs());
    }
    Ok(m)
}

fn edges_oracle(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 5, 50), |rng, n| Ok(edge_metrics(rng, n)?[0]))
}

fn edges_residual(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 5, 50), |rng, n| Ok(edge_metrics(rng, n)?[1]))
}

fn edges_unit_sum(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 5, 50), |rng, n| Ok(edge_metrics(rng, n)?[2]))
}

fn intercept(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 50), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let l0 = sys.elliptic_coordinates(&x).map_err(err)?.lambdas()[0];
        let want = (sys.base_sq_axes()[0] - l0).sqrt();
        let cones = (1..n).map(|k| focal_cone(&sys, &x, k)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let mut worst = 0.0f64;
        for e in common_edges(&cones).map_err(err)? {
            worst = worst.max(rel(intercept_length(&sys, &x, &e).map_err(err)?, want));
        }
        Ok(worst)
    })
}

/// Off-diagonal size and diagonal-ratio spread of the tangent-cone form in
/// the confocal frame at a random exterior point.
fn tangent_cone_metrics(rng: &mut ChaCha8Rng, n: usize) -> Result<[f64; 2], String> {
    let (sys, x) = system_point(rng, n)?;
    let v = sys.base_ellipsoid().evaluate(&x).map_err(err)? + 1.0;
    let grow: f64 = rng.gen_range(1.05..4.0);
    let x: Vec<f64> = x.iter().map(|c| c * grow / v.sqrt()).collect();
    let cone = tangent_cone_canonical(&sys, &x).map_err(err)?;
    let form = tangent_cone_form(&sys.base_ellipsoid(), &x).map_err(err)?;
    let m = form.quadratic_in_frame(cone.frame());
    let size = form.quadratic.max_abs();
    let mut off = 0.0f64;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                off = off.max(m[(j, k)].abs() / size);
            }
        }
    }
    let ratio: Vec<f64> = (0..n).map(|i| m[(i, i)] * cone.signed_sq_axes()[i]).collect();
    let spread = ratio.iter().map(|r| (r / ratio[0] - 1.0).abs()).fold(0.0, f64::max);
    Ok([off, spread])
}

fn tangent_cone_offdiag(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 5, 50), |rng, n| Ok(tangent_cone_metrics(rng, n)?[0]))
}

fn tangent_cone_ratio(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 5, 50), |rng, n| Ok(tangent_cone_metrics(rng, n)?[1]))
}

fn focal_cone_membership(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 5, 30), |rng, n| {
        let (sys, x) = system_point(rng, n)?;
        let mut worst = 0.0f64;
        for k in 1..n {
            let cone = focal_cone(&sys, &x, k).map_err(err)?;
            let focal = sys.focal_quadric(k).map_err(err)?;
            for _ in 0..16 {
                if let Some(q) = focal.point_along(&gaussian(rng, n - 1)) {
                    worst = worst.max(cone.relative_eval(&q).map_err(err)?.abs());
                }
            }
        }
        Ok(worst)
    })
}

fn focal_intersection_cone(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 4, 6, 50), |rng, n| {
        let a = sq_axes(rng, n);
        // C_k ∩ C_l has real points when an axis separates a_k² and a_l²
        let k = rng.gen_range(1..n - 2);
        let l = rng.gen_range(k + 2..n);
        let rest: Vec<usize> = (0..n).filter(|&i| i != k && i != l).collect();
        let b: Vec<f64> = rest.iter().map(|&i| a[i]).collect();
        let r = b.len();
        let interval = |v: f64| (0..r).find(|&j| v < b[r - 1 - j]).unwrap_or(r);
        let (ik, il) = (interval(a[k]), interval(a[l]));
        let mut mu = Vec::with_capacity(r);
        for j in 0..r {
            let f: f64 = rng.gen_range(0.05..0.95);
            mu.push(if j == ik {
                a[k]
            } else if j == il {
                a[l]
            } else if j == 0 {
                b[r - 1] - 3.0 * f
            } else {
                b[r - j] + f * (b[r - 1 - j] - b[r - j])
            });
        }
        let mut x = vec![0.0; n];
        for (m, &i) in rest.iter().enumerate() {
            let num: f64 = mu.iter().map(|v| b[m] - v).product();
            let den: f64 = (0..r).filter(|&q| q != m).map(|q| b[m] - b[q]).product();
            x[i] = (num / den).max(0.0).sqrt();
        }
        let sys = ConfocalSystem::new(a.clone()).map_err(err)?;
        let mut worst = 0.0f64;
        for m in [k, l] {
            worst = worst.max(sys.focal_quadric(m).and_then(|f| f.evaluate(&x)).map_err(err)?.0.abs());
        }
        let terms: Vec<f64> = rest.iter().map(|&i| x[i] * x[i] / ((a[i] - a[k]) * (a[i] - a[l]))).collect();
        let size: f64 = terms.iter().map(|t| t.abs()).sum();
        Ok(worst.max(terms.iter().sum::<f64>().abs() / size))
    })
}

/// Smallest gap between two axes of the focal cone over quadric `k`, in
/// units of `a_1²`.
fn axis_gap(sys: &ConfocalSystem, x: &[f64], k: usize) -> Result<f64, String> {
    let table = sys.axes_table(&sys.elliptic_coordinates(x).map_err(err)?);
    let s = table.row(k);
    let mut gap = f64::INFINITY;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            gap = gap.min((s[i] - s[j]).abs());
        }
    }
    Ok(gap / sys.scale_sq())
}

fn right_cone_hyperbola(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 20), |rng, _| {
        let sys = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).map_err(err)?;
        let v: f64 = rng.gen_range(-1.5..1.5);
        let side = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let on = [side * 5f64.sqrt() * v.cosh(), 0.0, -3f64.sqrt() * v.sinh()];
        let (on, _) = sys.nudge(&on, sys.default_guard());
        axis_gap(&sys, &on, 2)
    })
}

/// `10⁻³ / gap`: below one when the cone is far from right.
fn right_cone_generic(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 20), |rng, _| {
        let sys = ConfocalSystem::new(vec![9.0, 4.0, 1.0]).map_err(err)?;
        let x: Vec<f64> = (0..3).map(|_| coordinate(rng, 0.3, 3.0)).collect();
        let gap = (1..3).map(|k| axis_gap(&sys, &x, k)).collect::<Result<Vec<_>, _>>()?;
        Ok(1e-3 / gap.iter().copied().fold(f64::INFINITY, f64::min))
    })
}

// staude

fn random_conics(rng: &mut ChaCha8Rng) -> Result<FocalConics, String> {
    let c: f64 = rng.gen_range(0.5..2.0);
    let b = c + rng.gen_range(0.3..2.0);
    FocalConics::new(b + rng.gen_range(0.3..2.0), b, c).map_err(err)
}

fn staude_constancy(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    let ellipsoids = sweep_ellipsoids();
    let plan = if dims(ctx, 3, 3, 1).is_empty() {
        vec![]
    } else {
        (0..ellipsoids.len()).collect()
    };
    // one case per ellipsoid, the plan entry naming it
    sweep(ctx, id, plan, |rng, which| {
        let fc = ellipsoids[which];
        let opts = SearchOptions::default();
        let mut lengths = Vec::with_capacity(20);
        for _ in 0..20 {
            let p = surface_point(rng, &fc, 1e-3);
            lengths.push(staude_length(&fc, &p, &opts).map_err(err)?.assembled);
        }
        let closed = fc.string_length();
        let dev = lengths.iter().map(|l| (l - closed).abs()).fold(0.0, f64::max);
        let spread = lengths.iter().copied().fold(f64::MIN, f64::max) - lengths.iter().copied().fold(f64::MAX, f64::min);
        Ok(dev.max(spread))
    })
}

fn reflection(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 20), |rng, _| {
        let fc = random_conics(rng)?;
        let opts = SearchOptions::default();
        let p = surface_point(rng, &fc, 1e-3);
        let s = staude_length(&fc, &p, &opts).map_err(err)?;
        let mut worst = s.ellipse_leg.reflection_defect.max(s.hyperbola_leg().reflection_defect);
        let f: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let q: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let (f, q) = ([f[0], f[1], f[2] + 0.5], [q[0], q[1], q[2] - 0.5]);
        worst = worst.max(minimize_broken_line(&fc, &f, &q, Conic::Ellipse, &opts).reflection_defect);
        Ok(worst)
    })
}

fn hh_constancy(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 20), |rng, _| {
        let fc = random_conics(rng)?;
        let (v1, v2): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let h1 = fc.hyperbola_point(v1, Branch::Plus);
        let h2 = fc.hyperbola_point(v2, Branch::Plus);
        let h3 = fc.hyperbola_point(v2, Branch::Minus);
        let e0 = fc.ellipse_point(0.0);
        let (d0, s0) = (hh_difference(&h1, &h2, &e0), hh_sum(&h1, &h3, &e0));
        let mut worst = 0.0f64;
        for _ in 0..32 {
            let e = fc.ellipse_point(rng.gen_range(0.0..std::f64::consts::TAU));
            worst = worst
                .max((hh_difference(&h1, &h2, &e) - d0).abs())
                .max((hh_sum(&h1, &h3, &e) - s0).abs());
        }
        Ok(worst)
    })
}

/// For radii with `E` between `P` and `H`, `|PE| + |EH|` against broken
/// lines through sampled ellipse points; symmetrically for `H` between.
fn transversal_optimality(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    let ellipsoids = sweep_ellipsoids();
    sweep(ctx, id, dims(ctx, 3, 3, 20), |rng, _| {
        let fc = ellipsoids[rng.gen_range(0..ellipsoids.len())];
        let p = surface_point(rng, &fc, 1e-2);
        let mut worst = 0.0f64;
        for r in focal_radii(&fc, &p).map_err(err)? {
            let u0: f64 = rng.gen_range(0.0..1.0);
            for m in 0..64 {
                let s = (m as f64 + u0) / 64.0;
                if r.t > 0.0 && r.tau > r.t {
                    let f = fc.ellipse_point(std::f64::consts::TAU * s);
                    worst = worst.max(r.tau - distance(&p, &f) - distance(&f, &r.h));
                }
                if r.tau > 0.0 && r.t > r.tau {
                    let branch = if r.h[0] > 0.0 { Branch::Plus } else { Branch::Minus };
                    let g = fc.hyperbola_point(6.0 * s - 3.0, branch);
                    worst = worst.max(r.t - distance(&p, &g) - distance(&g, &r.e));
                }
            }
        }
        Ok(worst)
    })
}

fn chasles_2d(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 2, 2, 50), |rng, _| {
        let a: f64 = rng.gen_range(1.0..4.0);
        let b: f64 = a * rng.gen_range(0.2..0.95);
        let (rot, phi): (f64, f64) = (rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
        let (c, s) = (rot.cos(), rot.sin());
        let turn = |x: f64, y: f64| [c * x - s * y, s * x + c * y];
        let o = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let p = turn(a * phi.cos(), b * phi.sin());
        let q = turn(-a * phi.sin(), b * phi.cos());
        let ax = rytz_chasles_2d(o, [o[0] + p[0], o[1] + p[1]], [o[0] + q[0], o[1] + q[1]]).map_err(err)?;
        let mut m = SymmetricMatrix::zeros(2);
        m.set(0, 0, p[0] * p[0] + q[0] * q[0]);
        m.set(0, 1, p[0] * p[1] + q[0] * q[1]);
        m.set(1, 1, p[1] * p[1] + q[1] * q[1]);
        let e = jacobi_eigen(&m).map_err(err)?;
        let mut worst = 0.0f64;
        for k in 0..2 {
            worst = worst
                .max((ax.lengths[k] - e.values[k].sqrt()).abs())
                .max((dot(&ax.directions[k], &e.vector(k)).abs() - 1.0).abs());
        }
        Ok(worst)
    })
}

/// Center, placed semi-diameters and semi-axes of a random ellipsoid.
type PlacedTriple = ([f64; 3], [[f64; 3]; 3], [f64; 3]);

/// A placed conjugate triple of a random ellipsoid and its semi-axes.
fn conjugate_triple(rng: &mut ChaCha8Rng) -> Result<PlacedTriple, String> {
    let fc = random_conics(rng)?;
    let [a, b, c] = fc.semi_axes();
    let q = CentralQuadric::ellipsoid(vec![a * a, b * b, c * c]).map_err(err)?;
    let place = random_orthonormal_frame(3, rng);
    let sys = q.random_conjugate_system(rng).map_err(err)?;
    let mut v = [[0.0; 3]; 3];
    for (j, x) in sys.vectors().iter().enumerate() {
        for i in 0..3 {
            v[j][i] = (0..3).map(|k| place[k][i] * x[k]).sum();
        }
    }
    let o = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
    Ok((o, v, [a, b, c]))
}

fn chasles_3d_oracle(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 50), |rng, _| {
        let (o, v, _) = conjugate_triple(rng)?;
        let at = |x: [f64; 3]| [o[0] + x[0], o[1] + x[1], o[2] + x[2]];
        let ax = chasles_3d(o, at(v[0]), at(v[1]), at(v[2])).map_err(err)?;
        let mut m = SymmetricMatrix::zeros(3);
        for i in 0..3 {
            for j in i..3 {
                m.set(i, j, v.iter().map(|x| x[i] * x[j]).sum());
            }
        }
        let e = jacobi_eigen(&m).map_err(err)?;
        let mut worst = 0.0f64;
        for k in 0..3 {
            worst = worst
                .max((ax.lengths[k] - e.values[k].sqrt()).abs())
                .max((dot(&ax.directions[k], &e.vector(k)).abs() - 1.0).abs());
        }
        Ok(worst)
    })
}

fn chasles_consistency(ctx: &Ctx, id: u64) -> Vec<Outcome> {
    sweep(ctx, id, dims(ctx, 3, 3, 50), |rng, _| {
        let (o, v, axes) = conjugate_triple(rng)?;
        let at = |x: [f64; 3]| [o[0] + x[0], o[1] + x[1], o[2] + x[2]];
        let ax = chasles_3d(o, at(v[0]), at(v[1]), at(v[2])).map_err(err)?;
        let gram = |u: &[f64; 3], w: &[f64; 3]| v.iter().map(|x| dot(x, u) * dot(x, w)).sum::<f64>();
        let size = axes[0] * axes[0];
        let mut worst = 0.0f64;
        for i in 0..3 {
            worst = worst.max((gram(&ax.directions[i], &ax.directions[i]) - ax.lengths[i].powi(2)).abs() / size);
            for j in i + 1..3 {
                worst = worst.max(gram(&ax.directions[i], &ax.directions[j]).abs() / size);
            }
        }
        Ok(worst)
    })
}
