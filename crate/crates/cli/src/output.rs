//! JSON, OBJ and CSV writers.

use serde::Serialize;
use std::fmt::Write as _;
use std::io;

/// Compact JSON with every float at 17 significant digits, which round-trips
/// exactly.
struct Precise;

impl serde_json::ser::Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            return writer.write_all(b"0.0");
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Serializes a report, terminated by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise);
    value.serialize(&mut ser).expect("reports serialize");
    let mut s = String::from_utf8(buf).expect("JSON is UTF-8");
    s.push('\n');
    s
}

/// `v` rounded to nine significant digits, printed without exponent.
pub fn nine(v: f64) -> String {
    let rounded: f64 = format!("{v:.8e}").parse().expect("round trip");
    format!("{rounded}")
}

/// One named object of an OBJ file.
#[derive(Debug, Clone, Default)]
pub struct ObjObject {
    pub name: String,
    pub vertices: Vec<[f64; 3]>,
    /// Polylines as 0-based indices into `vertices`.
    pub lines: Vec<Vec<usize>>,
    /// Faces as 0-based indices into `vertices`.
    pub faces: Vec<Vec<usize>>,
}

/// Vertices, lines and faces only; no materials or normals.
pub fn write_obj(objects: &[ObjObject]) -> String {
    let mut out = String::new();
    let mut offset = 1;
    for o in objects {
        let _ = writeln!(out, "o {}", o.name);
        for v in &o.vertices {
            let _ = writeln!(out, "v {} {} {}", nine(v[0]), nine(v[1]), nine(v[2]));
        }
        for l in &o.lines {
            let ids: Vec<String> = l.iter().map(|i| (i + offset).to_string()).collect();
            let _ = writeln!(out, "l {}", ids.join(" "));
        }
        for f in &o.faces {
            let ids: Vec<String> = f.iter().map(|i| (i + offset).to_string()).collect();
            let _ = writeln!(out, "f {}", ids.join(" "));
        }
        offset += o.vertices.len();
    }
    out
}

/// A CSV table with a header row; floats at 17 significant digits.
pub fn write_csv(header: &[String], rows: &[Vec<CsvCell>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(CsvCell::render).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone)]
pub enum CsvCell {
    Text(String),
    Int(i64),
    Float(f64),
}

impl CsvCell {
    fn render(&self) -> String {
        match self {
            CsvCell::Text(s) => s.clone(),
            CsvCell::Int(i) => i.to_string(),
            CsvCell::Float(v) => format!("{v:.16e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_seventeen_digits() {
        let s = to_json(&serde_json::json!({ "x": 0.1, "n": 3, "z": 0.0 }));
        assert_eq!(s, "{\"n\":3,\"x\":1.0000000000000001e-1,\"z\":0.0}\n");
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn obj_indices_are_global() {
        let a = ObjObject {
            name: "a".into(),
            vertices: vec![[0.0; 3], [1.0, 0.0, 0.0]],
            lines: vec![vec![0, 1]],
            faces: vec![],
        };
        let b = ObjObject {
            name: "b".into(),
            vertices: vec![[0.0; 3], [1.0 / 3.0, 0.0, 0.0]],
            lines: vec![vec![0, 1]],
            faces: vec![],
        };
        let s = write_obj(&[a, b]);
        assert!(s.contains("l 3 4"));
        assert!(s.contains("v 0.333333333 0 0"));
    }
}
