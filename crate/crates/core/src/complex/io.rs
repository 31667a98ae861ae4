use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::coloring::{BalancedComplex, Coloring, MultiDeg};
use super::simplicial::{natural_cmp, SimplicialComplex};
use crate::error::{Error, Result};

/// On-disk form: `{"vertices", "facets", "coloring", "balance"}`; colors are
/// 1-based and `coloring`/`balance` are optional.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Value>>,
    pub facets: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balance: Option<Vec<u32>>,
}

fn line_of(text: &str, needle: &str) -> String {
    match text.lines().position(|l| l.contains(needle)) {
        Some(i) => format!(" (line {})", i + 1),
        None => String::new(),
    }
}

fn name_of(v: &Value) -> Result<String> {
    match v {
        Value::String(s) if !s.is_empty() => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Input(format!("vertex names must be strings or numbers, found {other}"))),
    }
}

/// Parses a complex; without a coloring the complex is monochromatic with
/// a = (d); without a balance vector, a_j is the largest number of color-j
/// vertices in a facet.
pub fn parse_complex_str(text: &str) -> Result<BalancedComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| {
        Error::Input(format!("invalid complex JSON at line {}, column {}: {e}", e.line(), e.column()))
    })?;
    let facets = file
        .facets
        .iter()
        .map(|f| f.iter().map(name_of).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let complex = SimplicialComplex::new(&facets).map_err(|e| Error::Input(format!("{e}{}", line_of(text, "\"facets\""))))?;
    if let Some(vs) = &file.vertices {
        for v in vs {
            let n = name_of(v)?;
            if complex.index_of(&n).is_none() {
                return Err(Error::Input(format!(
                    "vertex {n:?} is listed but lies in no facet{}",
                    line_of(text, "\"vertices\"")
                )));
            }
        }
    }
    let Some(colmap) = &file.coloring else {
        if let Some(b) = &file.balance {
            if b.len() != 1 || b[0] as usize != complex.d() {
                return Err(Error::Input(format!(
                    "balance {b:?} given without a coloring; only [{}] is possible{}",
                    complex.d(),
                    line_of(text, "\"balance\"")
                )));
            }
        }
        return Ok(BalancedComplex::monochromatic(complex));
    };
    let ctx = line_of(text, "\"coloring\"");
    let mut colors = Vec::with_capacity(complex.num_vertices());
    for n in complex.vertex_names() {
        match colmap.get(n) {
            Some(&0) => return Err(Error::Input(format!("vertex {n:?} has color 0; colors start at 1{ctx}"))),
            Some(&c) => colors.push(c - 1),
            None => return Err(Error::Input(format!("vertex {n:?} has no color{ctx}"))),
        }
    }
    if let Some(extra) = colmap.keys().find(|k| complex.index_of(k).is_none()) {
        return Err(Error::Input(format!("coloring mentions unknown vertex {extra:?}{ctx}")));
    }
    let max_color = colors.iter().max().map_or(1, |c| c + 1);
    let a = match &file.balance {
        Some(b) => {
            if max_color > b.len() {
                return Err(Error::Input(format!(
                    "color {max_color} used but the balance vector has length {}{}",
                    b.len(),
                    line_of(text, "\"balance\"")
                )));
            }
            MultiDeg(b.clone())
        }
        None => {
            let k = Coloring::new(colors.clone(), max_color)?;
            let mut a = vec![0u32; max_color];
            for f in complex.facets() {
                for (j, x) in k.multideg(f).0.into_iter().enumerate() {
                    a[j] = a[j].max(x);
                }
            }
            MultiDeg(a)
        }
    };
    if a.total() as usize != complex.d() {
        return Err(Error::Input(format!(
            "balance {} has |a| = {} but the complex has d = {}{}",
            a,
            a.total(),
            complex.d(),
            line_of(text, "\"balance\"")
        )));
    }
    let coloring = Coloring::new(colors, a.len())?;
    BalancedComplex::new(complex, coloring, a)
}

pub fn parse_complex_file(path: &std::path::Path) -> Result<BalancedComplex> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_complex_str(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn to_file(bc: &BalancedComplex, with_coloring: bool) -> ComplexFile {
    let c = &bc.complex;
    let mut vertices: Vec<String> = c.vertex_names().to_vec();
    vertices.sort_by(|a, b| natural_cmp(a, b));
    ComplexFile {
        vertices: Some(vertices.into_iter().map(Value::String).collect()),
        facets: c.named_facets().into_iter().map(|f| f.into_iter().map(Value::String).collect()).collect(),
        coloring: with_coloring
            .then(|| c.vertex_names().iter().enumerate().map(|(v, n)| (n.clone(), bc.coloring.color(v) + 1)).collect()),
        balance: with_coloring.then(|| bc.a.0.clone()),
    }
}

pub fn to_json(bc: &BalancedComplex, with_coloring: bool) -> String {
    serde_json::to_string_pretty(&to_file(bc, with_coloring)).expect("serializable")
}
