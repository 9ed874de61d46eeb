use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn confocal(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_confocal"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses a JSON report and validates it against its schema.
fn report(run: &Run, schema_name: &str) -> Value {
    let v: Value = serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout));
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
    v
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn elliptic_hand_case() {
    let r = confocal(&["elliptic", "--axes", "4,1", "--point", "1.4142135623730951,0.7071067811865476"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "elliptic.v1.schema.json");
    let l = floats(&v["lambdas"]);
    assert!(l[0].abs() < 1e-12 && (l[1] - 2.5).abs() < 1e-12, "{l:?}");
}

#[test]
fn elliptic_three_dimensional_roots_interlace() {
    let r = confocal(&["elliptic", "--axes", "9,4,1", "--point", "1,1,0.5"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "elliptic.v1.schema.json");
    let l = floats(&v["lambdas"]);
    assert!(l[0] < 1.0 && 1.0 < l[1] && l[1] < 4.0 && 4.0 < l[2] && l[2] < 9.0);
    assert!(v["norm_check"]["diff"].as_f64().unwrap() < 1e-9);
}

#[test]
fn elliptic_point_on_axis() {
    let r = confocal(&["elliptic", "--axes", "9,4,1", "--point", "1,0,0.5"]);
    assert_eq!(r.code, 2);
    let v = report(&r, "error.v1.schema.json");
    assert_eq!(v["error"]["code"], "degenerate_point");

    let r = confocal(&["elliptic", "--axes", "9,4,1", "--point", "1,0,0.5", "--nudge"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "elliptic.v1.schema.json");
    assert!(floats(&v["nudge"])[1] > 0.0);
}

#[test]
fn lengths_flag_squares() {
    let a = confocal(&["elliptic", "--lengths", "3,2,1", "--point", "1,1,0.5"]);
    let b = confocal(&["elliptic", "--axes", "9,4,1", "--point", "1,1,0.5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["nonsense"],
        vec!["elliptic", "--axes", "9,4,1"],
        vec!["elliptic", "--axes", "9,4,1", "--point", "1,1"],
        vec!["elliptic", "--axes", "9,4,1", "--point", "1,1,1", "--format", "csv"],
        vec!["verify", "--only", "everything"],
        vec!["verify", "--n", "1"],
        vec!["staude", "--axes", "4,1"],
    ] {
        let r = confocal(&args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(confocal(&["--help"]).code, 0);
}

#[test]
fn invalid_axes_report_an_error_object() {
    let r = confocal(&["elliptic", "--axes", "1,4", "--point", "1,1"]);
    assert_eq!(r.code, 1);
    report(&r, "error.v1.schema.json");
}

#[test]
fn staude_seeded_point() {
    let r = confocal(&["staude", "--lengths", "3,2,1"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "staude.v1.schema.json");
    let closed = v["closed_form"].as_f64().unwrap();
    assert!((closed - (6.0 + 2.0 * 2f64.sqrt() - 5f64.sqrt())).abs() < 1e-12);
    assert!((closed - 6.5923591).abs() < 1e-7);
    assert!((v["assembled"].as_f64().unwrap() - closed).abs() < 1e-6);
    let legs: f64 = ["PE", "EG2", "PH", "HF1"].iter().map(|k| v["per_leg"][k].as_f64().unwrap()).sum();
    assert!((legs - closed).abs() < 1e-6);
    assert_eq!(v["radii"].as_array().unwrap().len(), 4);
    assert!(v.get("warning").is_none());
}

#[test]
fn staude_sweep() {
    let r = confocal(&["staude", "--lengths", "3,2,1", "--samples", "20", "--seed", "7"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "staude.v1.schema.json");
    assert_eq!(v["sweep"]["samples"], 20);
    assert!(v["sweep"]["max_spread"].as_f64().unwrap() < 1e-6);
    assert!(v["sweep"]["max_deviation"].as_f64().unwrap() < 1e-6);
}

#[test]
fn staude_off_surface() {
    let r = confocal(&["staude", "--lengths", "3,2,1", "--point", "3,1,1"]);
    assert_eq!(r.code, 2);
    assert_eq!(report(&r, "error.v1.schema.json")["error"]["code"], "off_surface");

    let r = confocal(&["staude", "--lengths", "3,2,1", "--point", "3,1,1", "--project"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "staude.v1.schema.json");
    assert!(v["warning"].is_string());
    let p = floats(&v["point"]);
    assert!((p[0] * p[0] / 9.0 + p[1] * p[1] / 4.0 + p[2] * p[2] - 1.0).abs() < 1e-12);
}

#[test]
fn staude_on_a_coordinate_plane() {
    let r = confocal(&["staude", "--lengths", "3,2,1", "--point", "3,0,0"]);
    assert_eq!(r.code, 2);
    assert_eq!(report(&r, "error.v1.schema.json")["error"]["code"], "degenerate_point");
}

/// Checks that an OBJ body uses only object, vertex, line and face records
/// with in-range 1-based indices, and returns the object names.
fn parse_obj(body: &str) -> Vec<String> {
    let mut names = Vec::new();
    let mut vertices = 0usize;
    let mut refs = Vec::new();
    for line in body.lines() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("o") => names.push(parts.next().unwrap().to_string()),
            Some("v") => {
                let c: Vec<f64> = parts.map(|p| p.parse().unwrap()).collect();
                assert_eq!(c.len(), 3);
                for x in &c {
                    let digits = format!("{x:e}").split('e').next().unwrap().replace(['-', '.'], "").len();
                    assert!(digits <= 9, "{line}");
                }
                vertices += 1;
            }
            Some("l") | Some("f") => refs.extend(parts.map(|p| p.parse::<usize>().unwrap())),
            other => panic!("unexpected record {other:?}"),
        }
    }
    assert!(refs.iter().all(|&i| i >= 1 && i <= vertices));
    names
}

#[test]
fn mesh_surfaces_obj() {
    let r = confocal(&["mesh", "--axes", "9,4,1", "--lambdas", "0,2,6"]);
    assert_eq!(r.code, 0);
    let names = parse_obj(&r.stdout);
    assert_eq!(names, ["ellipsoid_0", "hyperboloid_one_sheet_1", "hyperboloid_two_sheets_2"]);
}

#[test]
fn mesh_focal_obj() {
    let r = confocal(&["mesh", "--axes", "9,4,1", "--kind", "focal"]);
    assert_eq!(r.code, 0);
    assert_eq!(parse_obj(&r.stdout).len(), 3);
}

#[test]
fn mesh_edges_obj() {
    let r = confocal(&["mesh", "--axes", "9,4,1", "--kind", "edges", "--point", "1,1,0.5"]);
    assert_eq!(r.code, 0);
    assert_eq!(parse_obj(&r.stdout).len(), 4);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("l ")).count(), 4);
    let v: Vec<Vec<f64>> = r
        .stdout
        .lines()
        .filter(|l| l.starts_with("v "))
        .map(|l| l[2..].split(' ').map(|p| p.parse().unwrap()).collect())
        .collect();
    for pair in v.chunks(2) {
        let len: f64 = (0..3).map(|i| (pair[0][i] - pair[1][i]).powi(2)).sum::<f64>().sqrt();
        assert!((len - 6.0).abs() < 1e-7, "{len}");
    }
}

#[test]
fn mesh_apollonian_csv() {
    let r = confocal(&["mesh", "--axes", "4,1", "--kind", "apollonian", "--point", "1,1"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("tau,x0,x1,residual"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|p| p.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r[3] < 1e-9));
}

#[test]
fn mesh_csv_in_higher_dimension() {
    let r = confocal(&["mesh", "--axes", "16,9,4,1", "--lambdas", "0,5", "--samples", "50"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("surface,lambda,x0,x1,x2,x3,residual"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|p| p.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r[6].abs() < 1e-9));

    let r = confocal(&["mesh", "--axes", "16,9,4,1", "--kind", "focal", "--samples", "20"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 1 + 3 * 20);

    let r = confocal(&["mesh", "--axes", "16,9,4,1", "--kind", "edges", "--point", "1,1,1,0.5"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 1 + 8);
}

#[test]
fn mesh_rejects_unsupported_combinations() {
    assert_eq!(confocal(&["mesh", "--axes", "16,9,4,1", "--lambdas", "0", "--format", "obj"]).code, 1);
    assert_eq!(confocal(&["mesh", "--axes", "9,4,1", "--lambdas", "0", "--format", "json"]).code, 1);
    assert_eq!(confocal(&["mesh", "--axes", "9,4,1", "--lambdas", "10"]).code, 1);
}

#[test]
fn verify_only_one_suite() {
    let r = confocal(&["verify", "--only", "apollonius", "--n", "6"]);
    assert_eq!(r.code, 0);
    let v = report(&r, "verify.v1.schema.json");
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["suite"], "apollonius");
    assert_eq!(v["n_max"], 6);
}

#[test]
fn verify_forced_failure() {
    let r = confocal(&["verify", "--only", "numerics", "--force-failure"]);
    assert_eq!(r.code, 3);
    let v = report(&r, "verify.v1.schema.json");
    assert!(v["failures"].as_u64().unwrap() > 0);
}

#[test]
fn verify_full_suite() {
    let r = confocal(&["verify"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = report(&r, "verify.v1.schema.json");
    assert_eq!(v["failures"], 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 5);
}

#[test]
fn job_files_match_flags() {
    let dir = std::env::temp_dir().join(format!("confocal-job-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let job = dir.join("job.json");
    let spec = serde_json::json!({ "command": "elliptic", "axes": [9.0, 4.0, 1.0], "point": [1.0, 1.0, 0.5] });
    let validator = jsonschema::validator_for(&schema("job.v1.schema.json")).unwrap();
    assert!(validator.is_valid(&spec));
    std::fs::write(&job, spec.to_string()).unwrap();
    let a = confocal(&["job", job.to_str().unwrap()]);
    let b = confocal(&["elliptic", "--axes", "9,4,1", "--point", "1,1,0.5"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);

    std::fs::write(&job, r#"{"command":"elliptic","unknown":1}"#).unwrap();
    assert_eq!(confocal(&["job", job.to_str().unwrap()]).code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("confocal-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("surfaces.obj");
    let r = confocal(&["mesh", "--axes", "9,4,1", "--lambdas", "0", "--output", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body, confocal(&["mesh", "--axes", "9,4,1", "--lambdas", "0"]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let args = ["staude", "--lengths", "3,2,1", "--samples", "12", "--seed", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_confocal"))
        .args(args)
        .env("CONFOCAL_WORKERS", "1")
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_confocal"))
        .args(args)
        .env("CONFOCAL_WORKERS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
    assert_ne!(confocal(&args).stdout, confocal(&["staude", "--lengths", "3,2,1", "--samples", "12"]).stdout);
}
