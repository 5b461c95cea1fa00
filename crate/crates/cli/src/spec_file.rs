//! Surface spec files: JSON with keys `signature{g,n}`, `c2`, `pants`, `short_spectrum`,
//! `short_spectrum_complete`, `horocycle_graph{vertices,edges,self_intersect,H,C}`,
//! `pinch{lengths,Kq}` and `components[{g,n,b}]`.

use std::path::Path;

use serde::Deserialize;
use smalleig::certify::{Component, IntersectionGraph, PinchSpec, SurfaceSpec};
use smalleig::hypgeom::SurfaceSignature;
use smalleig::trace::ShortSpectrum;

use crate::error::{io, CliError, ParseError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    g: u32,
    n: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    self_intersect: Vec<bool>,
    #[serde(rename = "H")]
    h: usize,
    #[serde(rename = "C")]
    c: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPinch {
    lengths: Vec<f64>,
    #[serde(rename = "Kq")]
    kq: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    g: u32,
    n: u32,
    b: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    signature: RawSignature,
    c2: Option<f64>,
    #[serde(default)]
    pants: Vec<[f64; 3]>,
    #[serde(default)]
    short_spectrum: Vec<f64>,
    short_spectrum_complete: Option<bool>,
    horocycle_graph: Option<RawGraph>,
    pinch: Option<RawPinch>,
    components: Option<Vec<RawComponent>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Seg {
    Key(String),
    Index(usize),
}

fn split_path(field: &str) -> Vec<Seg> {
    let mut out = Vec::new();
    for part in field.split('.') {
        let mut rest = part;
        if let Some(i) = rest.find('[') {
            out.push(Seg::Key(rest[..i].to_string()));
            rest = &rest[i..];
            while let Some(end) = rest.find(']') {
                if let Ok(k) = rest[1..end].parse() {
                    out.push(Seg::Index(k));
                }
                rest = &rest[end + 1..];
            }
        } else if !rest.is_empty() {
            out.push(Seg::Key(rest.to_string()));
        }
    }
    out
}

/// Byte offset where the value at `target` starts, or of its deepest present ancestor.
/// Walks already-validated JSON, so it only needs to skip strings and track nesting.
fn locate(text: &str, target: &[Seg]) -> usize {
    struct Walk<'a> {
        b: &'a [u8],
        i: usize,
        target: &'a [Seg],
        best: (usize, usize),
    }
    impl Walk<'_> {
        fn ws(&mut self) {
            while self.i < self.b.len() && self.b[self.i].is_ascii_whitespace() {
                self.i += 1;
            }
        }
        fn string(&mut self) -> String {
            let start = self.i + 1;
            self.i += 1;
            while self.i < self.b.len() && self.b[self.i] != b'"' {
                self.i += if self.b[self.i] == b'\\' { 2 } else { 1 };
            }
            self.i += 1;
            String::from_utf8_lossy(&self.b[start..self.i - 1]).into_owned()
        }
        fn value(&mut self, path: &mut Vec<Seg>) {
            self.ws();
            let depth = path.len();
            if depth <= self.target.len() && self.target[..depth] == path[..] && depth >= self.best.0 {
                self.best = (depth, self.i);
            }
            match self.b.get(self.i) {
                Some(b'{') => {
                    self.i += 1;
                    loop {
                        self.ws();
                        match self.b.get(self.i) {
                            Some(b'"') => {
                                let key = self.string();
                                self.ws();
                                self.i += 1; // ':'
                                path.push(Seg::Key(key));
                                self.value(path);
                                path.pop();
                            }
                            Some(b',') => self.i += 1,
                            _ => {
                                self.i += 1;
                                break;
                            }
                        }
                    }
                }
                Some(b'[') => {
                    self.i += 1;
                    let mut k = 0;
                    loop {
                        self.ws();
                        match self.b.get(self.i) {
                            Some(b']') | None => {
                                self.i += 1;
                                break;
                            }
                            Some(b',') => self.i += 1,
                            _ => {
                                path.push(Seg::Index(k));
                                self.value(path);
                                path.pop();
                                k += 1;
                            }
                        }
                    }
                }
                Some(b'"') => {
                    self.string();
                }
                _ => {
                    while self.i < self.b.len() && !matches!(self.b[self.i], b',' | b']' | b'}') {
                        self.i += 1;
                    }
                }
            }
        }
    }
    let mut w = Walk { b: text.as_bytes(), i: 0, target, best: (0, 0) };
    w.value(&mut Vec::new());
    w.best.1
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, column)
}

fn at_field(text: &str, origin: &str, field: &str, detail: String) -> ParseError {
    let (line, column) = line_col(text, locate(text, &split_path(field)));
    ParseError { origin: origin.to_string(), line, column, field: field.to_string(), detail }
}

/// Parses and validates a spec; `default_c2` applies when the file has no `c2`.
pub fn parse_spec_str(text: &str, origin: &str, default_c2: f64) -> Result<SurfaceSpec, ParseError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| ParseError {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        field: "schema".into(),
        detail: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    let signature = SurfaceSignature::new(raw.signature.g, raw.signature.n)
        .map_err(|e| at_field(text, origin, "signature", e.to_string()))?;
    let spec = SurfaceSpec {
        signature,
        c2: raw.c2.unwrap_or(default_c2),
        pants: raw.pants,
        short_spectrum: ShortSpectrum {
            lengths: raw.short_spectrum,
            declared_complete: raw.short_spectrum_complete.unwrap_or(true),
        },
        horocycle_graph: raw.horocycle_graph.map(|g| IntersectionGraph {
            vertices: g.vertices,
            edges: g.edges,
            self_intersect: g.self_intersect,
            degree_cap: g.h,
            c: g.c,
        }),
        pinch: raw.pinch.map(|p| PinchSpec { lengths: p.lengths, kq: p.kq }),
        components: raw.components.map(|cs| cs.into_iter().map(|c| Component { g: c.g, n: c.n, b: c.b }).collect()),
    };
    spec.validate().map_err(|e| match e {
        smalleig::Error::Input { field, detail } => at_field(text, origin, &field, detail),
        other => at_field(text, origin, "", other.to_string()),
    })?;
    Ok(spec)
}

pub fn parse_spec(path: &Path, default_c2: f64) -> Result<SurfaceSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(io(path))?;
    Ok(parse_spec_str(&text, &path.display().to_string(), default_c2)?)
}
