//! The four commands. Each turns a job into a rendered body and exit code.

mod mesh;

use crate::args::{CommandKind, Format, JobSpec};
use crate::output::to_json;
use crate::sampling::{case_rng, surface_point};
use crate::suites::{run_suites, Ctx, SuiteReport, SUITES};
use crate::{Failure, Rendered, EXIT_OK, EXIT_VERIFY};
use confocal_core::confocal::ConfocalSystem;
use confocal_core::numerics::distance;
use confocal_core::quadrics::SURFACE_TOL;
use confocal_core::staude::{focal_radii, staude_length, FocalConics, SearchOptions};
use rayon::prelude::*;
use serde::Serialize;

pub use mesh::mesh;

pub fn dispatch(job: &JobSpec) -> Result<Rendered, Failure> {
    match job.command {
        CommandKind::Elliptic => elliptic(job),
        CommandKind::Mesh => mesh(job),
        CommandKind::Staude => staude(job),
        CommandKind::Verify => verify(job),
    }
}

pub(crate) fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn json_only(job: &JobSpec) -> Result<(), Failure> {
    match job.format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => usage(format!("{:?} output is not available for this command", f).to_lowercase()),
    }
}

pub(crate) fn require_axes(job: &JobSpec) -> Result<Vec<f64>, Failure> {
    match job.sq_axes().map_err(Failure::Usage)? {
        Some(a) if !a.is_empty() => Ok(a),
        _ => usage("--axes or --lengths is required"),
    }
}

pub(crate) fn require_point(job: &JobSpec, n: usize) -> Result<Vec<f64>, Failure> {
    match &job.point {
        Some(p) if p.len() == n => Ok(p.clone()),
        Some(p) => usage(format!("point has {} coordinates, the system has {n}", p.len())),
        None => usage("--point is required"),
    }
}

fn rendered(body: String) -> Rendered {
    Rendered { body, code: EXIT_OK }
}

// elliptic

#[derive(Serialize)]
struct NormCheck {
    lhs: f64,
    rhs: f64,
    diff: f64,
}

#[derive(Serialize)]
struct EllipticReport {
    command: &'static str,
    axes_sq: Vec<f64>,
    point: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nudge: Option<Vec<f64>>,
    lambdas: Vec<f64>,
    /// Row `j` holds the signed squared axes `a_i² − λ_j`.
    axes_table: Vec<Vec<f64>>,
    norm_check: NormCheck,
}

fn elliptic(job: &JobSpec) -> Result<Rendered, Failure> {
    json_only(job)?;
    let a = require_axes(job)?;
    let sys = ConfocalSystem::new(a.clone())?;
    let x = require_point(job, sys.dim())?;
    let guard = job.tol.unwrap_or_else(|| sys.default_guard());
    let (x, nudge) = if job.nudge {
        let (moved, delta) = sys.nudge(&x, guard);
        (moved, Some(delta))
    } else {
        (x, None)
    };
    let ec = sys.elliptic_coordinates_guarded(&x, guard)?;
    let table = sys.axes_table(&ec);
    let (lhs, rhs) = sys.norm_identity_check(&ec);
    Ok(rendered(to_json(&EllipticReport {
        command: "elliptic",
        axes_sq: a,
        point: x,
        nudge,
        lambdas: ec.lambdas().to_vec(),
        axes_table: (0..table.dim()).map(|j| table.row(j).to_vec()).collect(),
        norm_check: NormCheck {
            lhs,
            rhs,
            diff: (lhs - rhs).abs(),
        },
    })))
}

// staude

#[allow(non_snake_case)]
#[derive(Serialize)]
struct Legs {
    PE: f64,
    EG2: f64,
    PH: f64,
    HF1: f64,
}

#[derive(Serialize)]
struct RadiusReport {
    sign_profile: [i8; 3],
    direction: [f64; 3],
    t: f64,
    tau: f64,
    e: [f64; 3],
    h: [f64; 3],
}

#[derive(Serialize)]
struct Sweep {
    samples: usize,
    max_spread: f64,
    max_deviation: f64,
}

#[derive(Serialize)]
struct StaudeReport {
    command: &'static str,
    semi_axes: [f64; 3],
    point: [f64; 3],
    closed_form: f64,
    assembled: f64,
    per_leg: Legs,
    radii: Vec<RadiusReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<Sweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

/// Margin that keeps seeded surface points off the coordinate planes.
const SURFACE_MARGIN: f64 = 1e-2;

fn staude(job: &JobSpec) -> Result<Rendered, Failure> {
    json_only(job)?;
    let a = require_axes(job)?;
    if a.len() != 3 {
        return usage("the string construction needs three axes");
    }
    if a.iter().any(|v| !(*v > 0.0)) {
        return usage("axes must be positive");
    }
    let fc = FocalConics::new(a[0].sqrt(), a[1].sqrt(), a[2].sqrt())?;
    let ellipsoid = fc.system().base_ellipsoid();
    let mut warning = None;
    let p: [f64; 3] = match &job.point {
        None => surface_point(&mut case_rng(job.seed, 0, 0), &fc, SURFACE_MARGIN),
        Some(_) => {
            let p = require_point(job, 3)?;
            let residual = ellipsoid.evaluate(&p)?;
            let tol = job.tol.unwrap_or(SURFACE_TOL);
            if residual.abs() > tol && !job.project {
                return Err(confocal_core::Error::OffSurface { residual }.into());
            }
            if residual <= -1.0 {
                return Err(confocal_core::Error::InvalidInput("cannot project the center".into()).into());
            }
            if residual.abs() > tol {
                warning = Some(format!("point was {residual:e} off the surface and was projected radially"));
            }
            let s = (residual + 1.0).sqrt();
            [p[0] / s, p[1] / s, p[2] / s]
        }
    };
    let opts = SearchOptions::default();
    let s = staude_length(&fc, &p, &opts)?;
    let (e, h) = (s.ellipse_leg.q, s.hyperbola_leg().q);
    let per_leg = Legs {
        PE: distance(&p, &e),
        EG2: distance(&e, &fc.ellipse_right_focus()),
        PH: distance(&p, &h),
        HF1: distance(&h, &fc.hyperbola_left_focus()),
    };
    let radii = focal_radii(&fc, &p)?
        .into_iter()
        .map(|r| RadiusReport {
            sign_profile: r.sign_profile,
            direction: r.direction,
            t: r.t,
            tau: r.tau,
            e: r.e,
            h: r.h,
        })
        .collect();
    let sweep = match job.samples {
        Some(0) | None => None,
        Some(count) => {
            let lengths = (0..count as u64)
                .into_par_iter()
                .map(|i| {
                    let q = surface_point(&mut case_rng(job.seed, 1, i), &fc, SURFACE_MARGIN);
                    staude_length(&fc, &q, &opts).map(|r| r.assembled)
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let hi = lengths.iter().copied().fold(f64::MIN, f64::max);
            let lo = lengths.iter().copied().fold(f64::MAX, f64::min);
            Some(Sweep {
                samples: count,
                max_spread: hi - lo,
                max_deviation: lengths.iter().map(|l| (l - s.closed_form).abs()).fold(0.0, f64::max),
            })
        }
    };
    Ok(rendered(to_json(&StaudeReport {
        command: "staude",
        semi_axes: fc.semi_axes(),
        point: p,
        closed_form: s.closed_form,
        assembled: s.assembled,
        per_leg,
        radii,
        sweep,
        warning,
    })))
}

// verify

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    seed: u64,
    n_max: usize,
    force_failure: bool,
    cases: usize,
    failures: usize,
    suites: Vec<SuiteReport>,
}

/// Largest dimension swept by default.
pub const DEFAULT_N_MAX: usize = 8;

fn verify(job: &JobSpec) -> Result<Rendered, Failure> {
    json_only(job)?;
    if let Some(bad) = job.only.iter().find(|o| !SUITES.contains(&o.as_str())) {
        return usage(format!("unknown suite {bad:?}; choose from {}", SUITES.join(", ")));
    }
    let n_max = job.n.unwrap_or(DEFAULT_N_MAX);
    if n_max < 2 {
        return usage("--n must be at least 2");
    }
    let ctx = Ctx {
        seed: job.seed,
        n_min: 2,
        n_max,
        force_failure: job.force_failure,
    };
    let suites = run_suites(&ctx, &job.only);
    let failures = suites.iter().map(|s| s.failures).sum();
    let report = VerifyReport {
        command: "verify",
        seed: job.seed,
        n_max,
        force_failure: job.force_failure,
        cases: suites.iter().map(|s| s.cases).sum(),
        failures,
        suites,
    };
    Ok(Rendered {
        body: to_json(&report),
        code: if failures == 0 { EXIT_OK } else { EXIT_VERIFY },
    })
}
