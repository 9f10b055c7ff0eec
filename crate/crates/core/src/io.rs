//! JSON file formats: seeds, triangulations, quiver representations, and
//! element families. Matrices are row-major, vertex and arc ids are strings,
//! and big integer coefficients are carried as decimal strings.
//!
//! Serialization is canonical: fields in fixed order, two-space indentation,
//! a single trailing newline. Parsing a canonical file and serializing the
//! result reproduces the input byte for byte.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::frame::Frame;
use crate::matrix::Matrix;
use crate::quiver::{Quiver, QuiverRep};
use crate::scalar::ScalarPoly;
use crate::seed::{Seed, Triangulation};
use crate::torus::TorusElement;
use crate::{Error, Result};

fn schema(e: serde_json::Error) -> Error {
    Error::Schema(e.to_string())
}

fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serialization is infallible");
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedFile {
    vertices: Vec<String>,
    frozen: Vec<String>,
    d: Vec<i64>,
    b: Matrix,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    lambda: Option<Matrix>,
}

pub fn parse_seed(text: &str) -> Result<Seed> {
    let file: SeedFile = serde_json::from_str(text).map_err(schema)?;
    let mut unfrozen: Vec<usize> = (0..file.vertices.len()).collect();
    for name in &file.frozen {
        let Some(i) = file.vertices.iter().position(|v| v == name) else {
            return Err(Error::Schema(format!(
                "frozen entry {name:?} is not one of the vertices"
            )));
        };
        unfrozen.retain(|&k| k != i);
    }
    if file.frozen.len() + unfrozen.len() != file.vertices.len() {
        return Err(Error::Schema("frozen list repeats a vertex".into()));
    }
    let frame = Frame::new(file.vertices, unfrozen, file.d, file.lambda)?;
    Seed::new(Arc::new(frame), file.b)
}

pub fn seed_to_string(s: &Seed) -> String {
    let frame = s.frame();
    let file = SeedFile {
        vertices: frame.vertices().to_vec(),
        frozen: frame
            .frozen()
            .iter()
            .map(|&i| frame.vertices()[i].clone())
            .collect(),
        d: frame.d().to_vec(),
        b: s.b_full().clone(),
        lambda: s.lambda_local().cloned(),
    };
    render(&file)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangulationFile {
    arcs: Vec<String>,
    frozen_arcs: Vec<String>,
    triangles: Vec<[String; 3]>,
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation> {
    let file: TriangulationFile = serde_json::from_str(text).map_err(schema)?;
    let t = Triangulation {
        arcs: file.arcs,
        frozen_arcs: file.frozen_arcs,
        triangles: file.triangles,
    };
    t.validate()?;
    Ok(t)
}

pub fn triangulation_to_string(t: &Triangulation) -> String {
    let file = TriangulationFile {
        arcs: t.arcs.clone(),
        frozen_arcs: t.frozen_arcs.clone(),
        triangles: t.triangles.clone(),
    };
    render(&file)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverFile {
    vertices: Vec<String>,
    arrows: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    quiver: QuiverFile,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

pub fn parse_rep(text: &str) -> Result<QuiverRep> {
    let file: RepFile = serde_json::from_str(text).map_err(schema)?;
    let names = &file.quiver.vertices;
    let mut arrows = Vec::with_capacity(file.quiver.arrows.len());
    for (src, tgt) in &file.quiver.arrows {
        let find = |name: &String| {
            names.iter().position(|v| v == name).ok_or_else(|| {
                Error::Schema(format!(
                    "arrow endpoint {name:?} is not one of the vertices"
                ))
            })
        };
        arrows.push((find(src)?, find(tgt)?));
    }
    let quiver = Quiver::new(names.clone(), arrows)?;
    QuiverRep::new(quiver, file.dims, file.maps)
}

pub fn rep_to_string(rep: &QuiverRep) -> String {
    let q = rep.quiver();
    let file = RepFile {
        quiver: QuiverFile {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|&(s, t)| (q.vertices()[s].clone(), q.vertices()[t].clone()))
                .collect(),
        },
        dims: rep.dims().to_vec(),
        maps: rep.maps().to_vec(),
    };
    render(&file)
}

/// One torus element as a list of terms; each term is an exponent vector
/// followed by the scalar as (v-power, decimal coefficient) pairs.
type ElementFile = Vec<(Vec<i64>, Vec<(i64, String)>)>;

fn element_to_file(z: &TorusElement) -> ElementFile {
    z.terms()
        .map(|(m, c)| {
            (
                m.clone(),
                c.terms().map(|(a, x)| (a, x.to_string())).collect(),
            )
        })
        .collect()
}

fn element_from_file(file: &ElementFile, frame: &Arc<Frame>) -> Result<TorusElement> {
    let mut terms = Vec::with_capacity(file.len());
    for (m, coeffs) in file {
        if m.len() != frame.n() {
            return Err(Error::Schema(format!(
                "term exponent has length {} but the seed has {} vertices",
                m.len(),
                frame.n()
            )));
        }
        let mut scalar = ScalarPoly::zero();
        for (a, digits) in coeffs {
            let c = BigInt::from_str(digits).map_err(|_| {
                Error::Schema(format!("coefficient {digits:?} is not a decimal integer"))
            })?;
            scalar = scalar.add(&ScalarPoly::from_bigint(c).shifted(*a));
        }
        terms.push((m.clone(), scalar));
    }
    Ok(TorusElement::from_terms(frame.clone(), terms))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    seed: SeedFile,
    elements: Vec<ElementFile>,
}

/// A family file bundles the seed the elements live over with the elements
/// themselves, so it is self-contained.
pub fn parse_family(text: &str) -> Result<(Seed, Vec<TorusElement>)> {
    let file: FamilyFile = serde_json::from_str(text).map_err(schema)?;
    let seed = parse_seed(&render(&file.seed))?;
    let elements = file
        .elements
        .iter()
        .map(|e| element_from_file(e, seed.frame()))
        .collect::<Result<Vec<_>>>()?;
    Ok((seed, elements))
}

pub fn family_to_string(s: &Seed, elements: &[TorusElement]) -> String {
    let seed_file: SeedFile =
        serde_json::from_str(&seed_to_string(s)).expect("seed serialization is valid JSON");
    let file = FamilyFile {
        seed: seed_file,
        elements: elements.iter().map(element_to_file).collect(),
    };
    render(&file)
}

/// JSON value of an element for structured CLI output.
pub fn element_to_value(z: &TorusElement) -> serde_json::Value {
    serde_json::to_value(element_to_file(z)).expect("serialization is infallible")
}
