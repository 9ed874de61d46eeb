//! Mesh and point-cloud export.

use super::{require_axes, require_point, usage};
use crate::args::{Format, JobSpec, MeshKind};
use crate::output::{write_csv, write_obj, CsvCell, ObjObject};
use crate::sampling::{case_rng, gaussian};
use crate::{Failure, Rendered, EXIT_OK};
use confocal_core::cones::{common_edges, focal_cone};
use confocal_core::confocal::{ApollonianCurve, ConfocalSystem};
use rand::Rng;
use std::f64::consts::{PI, TAU};

/// Grid resolution of OBJ surfaces and polylines.
const DEFAULT_GRID: usize = 32;
/// Rows of CSV point clouds and Apollonian samples.
const DEFAULT_ROWS: usize = 200;
/// Relative distance kept from the poles of the Apollonian curve.
const POLE_GAP: f64 = 2e-3;
/// Parameter range of hyperboloid grids and focal hyperbolas.
const SHEET_RANGE: f64 = 1.5;

pub fn mesh(job: &JobSpec) -> Result<Rendered, Failure> {
    let a = require_axes(job)?;
    let sys = ConfocalSystem::new(a.clone())?;
    let n = sys.dim();
    let kind = job.kind.unwrap_or(MeshKind::Surfaces);
    let format = job.format.unwrap_or(match kind {
        MeshKind::Apollonian => Format::Csv,
        _ if n == 3 => Format::Obj,
        _ => Format::Csv,
    });
    match format {
        Format::Json => return usage("mesh writes OBJ or CSV"),
        Format::Obj if n != 3 => return usage(format!("OBJ export needs three axes, got {n}")),
        _ => {}
    }
    let obj = format == Format::Obj;
    let body = match kind {
        MeshKind::Surfaces => {
            let lambdas = match &job.lambdas {
                Some(l) => l.clone(),
                None => return usage("--lambdas is required for surfaces"),
            };
            if let Some(l) = lambdas.iter().find(|l| !(**l < a[0])) {
                return usage(format!("λ = {l} is not below a_1² = {}; the quadric has no real points", a[0]));
            }
            if obj {
                let objects = lambdas
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| surface_grid(&sys, i, l, job.samples.unwrap_or(DEFAULT_GRID)))
                    .collect::<Result<Vec<_>, _>>()?;
                write_obj(&objects)
            } else {
                surface_cloud(&sys, &lambdas, job.seed, job.samples.unwrap_or(DEFAULT_ROWS))?
            }
        }
        MeshKind::Focal => {
            if obj {
                write_obj(&focal_conics(&a, job.samples.unwrap_or(DEFAULT_GRID)))
            } else {
                focal_cloud(&sys, job.seed, job.samples.unwrap_or(DEFAULT_ROWS))?
            }
        }
        MeshKind::Apollonian => {
            let u = require_point(job, n)?;
            let curve = ApollonianCurve::new(a.clone(), u)?;
            let rows = apollonian_rows(&curve, &a, job.samples.unwrap_or(DEFAULT_ROWS))?;
            if obj {
                write_obj(&[apollonian_polylines(&curve, &rows)])
            } else {
                let mut header = vec!["tau".to_string()];
                header.extend((0..n).map(|i| format!("x{i}")));
                header.push("residual".into());
                let table: Vec<Vec<CsvCell>> = rows
                    .iter()
                    .map(|(tau, x)| {
                        let mut r = vec![CsvCell::Float(*tau)];
                        r.extend(x.iter().map(|v| CsvCell::Float(*v)));
                        r.push(CsvCell::Float(curve.relative_residual(x)));
                        r
                    })
                    .collect();
                write_csv(&header, &table)
            }
        }
        MeshKind::Edges => {
            if n < 3 {
                return usage("common edges need at least three axes");
            }
            let apex = require_point(job, n)?;
            let cones = (1..n)
                .map(|k| focal_cone(&sys, &apex, k))
                .collect::<Result<Vec<_>, _>>()?;
            let edges = common_edges(&cones)?;
            if obj {
                let reach = a[0].sqrt();
                let objects: Vec<ObjObject> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let d = &e.world_direction;
                        let at = |s: f64| [apex[0] + s * d[0], apex[1] + s * d[1], apex[2] + s * d[2]];
                        ObjObject {
                            name: format!("edge_{i}"),
                            vertices: vec![at(-reach), at(reach)],
                            lines: vec![vec![0, 1]],
                            faces: vec![],
                        }
                    })
                    .collect();
                write_obj(&objects)
            } else {
                let mut header = vec!["edge".to_string()];
                header.extend((0..n).map(|i| format!("sq_cos{i}")));
                header.extend((0..n).map(|i| format!("d{i}")));
                let table: Vec<Vec<CsvCell>> = edges
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let mut r = vec![CsvCell::Int(i as i64)];
                        r.extend(e.sq_cosines.iter().map(|v| CsvCell::Float(*v)));
                        r.extend(e.world_direction.iter().map(|v| CsvCell::Float(*v)));
                        r
                    })
                    .collect();
                write_csv(&header, &table)
            }
        }
    };
    Ok(Rendered { body, code: EXIT_OK })
}

/// A grid with `rows.len()` rings of `nu` vertices, periodic along rings.
fn grid(rows: &[f64], nu: usize, f: impl Fn(f64, f64) -> [f64; 3]) -> ObjObject {
    let mut o = ObjObject::default();
    for &s in rows {
        for k in 0..nu {
            o.vertices.push(f(s, TAU * k as f64 / nu as f64));
        }
    }
    for r in 0..rows.len() - 1 {
        for k in 0..nu {
            let k1 = (k + 1) % nu;
            o.faces.push(vec![r * nu + k, r * nu + k1, (r + 1) * nu + k1, (r + 1) * nu + k]);
        }
    }
    o
}

fn append(into: &mut ObjObject, part: ObjObject) {
    let offset = into.vertices.len();
    into.vertices.extend(part.vertices);
    into.faces.extend(part.faces.into_iter().map(|f| f.iter().map(|i| i + offset).collect()));
    into.lines.extend(part.lines.into_iter().map(|l| l.iter().map(|i| i + offset).collect()));
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}

/// The confocal quadric with parameter `lambda` as a quad grid.
fn surface_grid(sys: &ConfocalSystem, index: usize, lambda: f64, samples: usize) -> Result<ObjObject, Failure> {
    let s: Vec<f64> = sys.confocal_quadric(lambda)?.signed_sq_axes().to_vec();
    let r: Vec<f64> = s.iter().map(|v| v.abs().sqrt()).collect();
    let nu = samples.max(4);
    let nv = (samples / 2).max(2) + 1;
    let (kind, mut o) = if s[2] > 0.0 {
        let o = grid(&linspace(0.0, PI, nv), nu, |t, p| {
            [r[0] * t.sin() * p.cos(), r[1] * t.sin() * p.sin(), r[2] * t.cos()]
        });
        ("ellipsoid", o)
    } else if s[1] > 0.0 {
        let o = grid(&linspace(-SHEET_RANGE, SHEET_RANGE, nv), nu, |v, p| {
            [r[0] * v.cosh() * p.cos(), r[1] * v.cosh() * p.sin(), r[2] * v.sinh()]
        });
        ("hyperboloid_one_sheet", o)
    } else {
        let mut o = ObjObject::default();
        for side in [1.0, -1.0] {
            append(
                &mut o,
                grid(&linspace(0.0, SHEET_RANGE, nv), nu, |v, p| {
                    [side * r[0] * v.cosh(), r[1] * v.sinh() * p.cos(), r[2] * v.sinh() * p.sin()]
                }),
            );
        }
        ("hyperboloid_two_sheets", o)
    };
    o.name = format!("{kind}_{index}");
    Ok(o)
}

/// Focal ellipse in `z = 0` and both focal hyperbola branches in `y = 0`.
fn focal_conics(a: &[f64], samples: usize) -> Vec<ObjObject> {
    let count = samples.max(8);
    let (p, q) = ((a[0] - a[2]).sqrt(), (a[1] - a[2]).sqrt());
    let ellipse = ObjObject {
        name: "focal_ellipse".into(),
        vertices: (0..count)
            .map(|k| {
                let t = TAU * k as f64 / count as f64;
                [p * t.cos(), q * t.sin(), 0.0]
            })
            .collect(),
        lines: vec![(0..count).chain([0]).collect()],
        faces: vec![],
    };
    let h = (a[0] - a[1]).sqrt();
    let mut out = vec![ellipse];
    for (name, side) in [("focal_hyperbola_plus", 1.0), ("focal_hyperbola_minus", -1.0)] {
        out.push(ObjObject {
            name: name.into(),
            vertices: linspace(-SHEET_RANGE, SHEET_RANGE, count)
                .into_iter()
                .map(|v| [side * h * v.cosh(), 0.0, -q * v.sinh()])
                .collect(),
            lines: vec![(0..count).collect()],
            faces: vec![],
        });
    }
    out
}

fn coordinate_header(first: &[&str], n: usize) -> Vec<String> {
    let mut h: Vec<String> = first.iter().map(|s| s.to_string()).collect();
    h.extend((0..n).map(|i| format!("x{i}")));
    h.push("residual".into());
    h
}

/// Seeded points on each listed confocal, drawn through elliptic coordinates:
/// the given parameter fills its slot, the others are sampled in theirs.
fn surface_cloud(sys: &ConfocalSystem, lambdas: &[f64], seed: u64, rows: usize) -> Result<String, Failure> {
    let a = sys.base_sq_axes();
    let n = a.len();
    let slot = |l: f64| (0..n).find(|&j| j == n - 1 || l < a[n - 1 - j]).unwrap_or(n - 1);
    let mut table = Vec::with_capacity(rows * lambdas.len());
    for (index, &lambda) in lambdas.iter().enumerate() {
        if a.iter().any(|v| (v - lambda).abs() <= 1e-12 * a[0]) {
            return usage(format!("λ = {lambda} is a focal parameter"));
        }
        let quadric = sys.confocal_quadric(lambda)?;
        let fixed = slot(lambda);
        let mut rng = case_rng(seed, 2, index as u64);
        for _ in 0..rows {
            let mu: Vec<f64> = (0..n)
                .map(|j| {
                    if j == fixed {
                        lambda
                    } else if j == 0 {
                        a[n - 1] * (1.0 - rng.gen_range(0.05..3.0))
                    } else {
                        a[n - j] + rng.gen_range(0.02..0.98) * (a[n - 1 - j] - a[n - j])
                    }
                })
                .collect();
            let x: Vec<f64> = (0..n)
                .map(|i| {
                    let num: f64 = mu.iter().map(|m| a[i] - m).product();
                    let den: f64 = (0..n).filter(|&k| k != i).map(|k| a[i] - a[k]).product();
                    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    sign * (num / den).max(0.0).sqrt()
                })
                .collect();
            let mut r = vec![CsvCell::Int(index as i64), CsvCell::Float(lambda)];
            r.extend(x.iter().map(|v| CsvCell::Float(*v)));
            r.push(CsvCell::Float(quadric.evaluate(&x)?));
            table.push(r);
        }
    }
    Ok(write_csv(&coordinate_header(&["surface", "lambda"], n), &table))
}

/// Seeded points on every focal quadric.
fn focal_cloud(sys: &ConfocalSystem, seed: u64, rows: usize) -> Result<String, Failure> {
    let n = sys.dim();
    let mut table = Vec::new();
    for k in 1..n {
        let focal = sys.focal_quadric(k)?;
        let mut rng = case_rng(seed, 3, k as u64);
        let (mut found, mut tries) = (0, 0);
        while found < rows && tries < 100 * rows {
            tries += 1;
            if let Some(x) = focal.point_along(&gaussian(&mut rng, n - 1)) {
                let mut r = vec![CsvCell::Int(k as i64)];
                r.extend(x.iter().map(|v| CsvCell::Float(*v)));
                r.push(CsvCell::Float(focal.evaluate(&x)?.0));
                table.push(r);
                found += 1;
            }
        }
    }
    Ok(write_csv(&coordinate_header(&["focal"], n), &table))
}

/// Evenly spaced parameters over a range covering every pole, each moved
/// off a pole when it lands too close.
fn apollonian_rows(curve: &ApollonianCurve, a: &[f64], samples: usize) -> Result<Vec<(f64, Vec<f64>)>, Failure> {
    let last = a[a.len() - 1];
    let (lo, hi) = (-1.0 / last, 2.0 / last);
    let poles = curve.pole_parameters();
    (0..samples)
        .map(|m| {
            let mut tau = lo + (m as f64 + 0.5) * (hi - lo) / samples as f64;
            if let Some(p) = poles.iter().find(|p| (tau / **p - 1.0).abs() < POLE_GAP) {
                tau = p * if tau < *p { 1.0 - POLE_GAP } else { 1.0 + POLE_GAP };
            }
            Ok((tau, curve.point(tau)?))
        })
        .collect()
}

/// The sampled curve as polylines broken at the poles.
fn apollonian_polylines(curve: &ApollonianCurve, rows: &[(f64, Vec<f64>)]) -> ObjObject {
    let poles = curve.pole_parameters();
    let mut o = ObjObject {
        name: "apollonian_curve".into(),
        ..ObjObject::default()
    };
    let mut line: Vec<usize> = Vec::new();
    for (i, (tau, x)) in rows.iter().enumerate() {
        if i > 0 && poles.iter().any(|p| (rows[i - 1].0 - p) * (tau - p) < 0.0) {
            let done = std::mem::take(&mut line);
            if done.len() > 1 {
                o.lines.push(done);
            }
        }
        line.push(o.vertices.len());
        o.vertices.push([x[0], x[1], x[2]]);
    }
    if line.len() > 1 {
        o.lines.push(line);
    }
    o
}
