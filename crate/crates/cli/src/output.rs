use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::Result;
use mlsp::artinian::{substituted_configuration, symbolic_configuration, Artinian, LsopSpec};
use mlsp::complex::{check_balanced, f_vector, flag_h_of, flag_h_prime_double_prime, h_vector, flag_f_of};
use mlsp::homology::{
    is_cohen_macaulay, is_doubly_cm, is_homology_manifold, is_homology_sphere, is_orientable, is_pseudomanifold, reduced_betti,
    reduced_euler_characteristic,
};
use mlsp::lefschetz::describe;
use mlsp::{BalancedComplex, Field, FieldDescriptor, FlagVector, Gfp, MultiDeg, Rationals, Verdict};
use serde::Serialize;

/// Output of the commands that do not produce a report.
pub struct Plain {
    pub json: String,
    pub text: String,
}

#[derive(Serialize)]
struct Entry<T> {
    degree: MultiDeg,
    value: T,
}

fn entries<T: Copy>(m: &BTreeMap<MultiDeg, T>) -> Vec<Entry<T>> {
    m.iter().map(|(degree, &value)| Entry { degree: degree.clone(), value }).collect()
}

fn flag_entries(v: &FlagVector) -> Vec<Entry<i64>> {
    v.values.keys().map(|b| Entry { degree: b.clone(), value: v.get_i64(b) }).collect()
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    format!("({})", xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn table<T: ToString>(out: &mut String, title: &str, rows: &[Entry<T>]) {
    let _ = writeln!(out, "{title}:");
    for r in rows {
        let _ = writeln!(out, "  {:<16} {}", r.degree.to_string(), r.value.to_string());
    }
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("plain outputs serialize")
}

#[derive(Serialize)]
struct Info {
    vertices: usize,
    facets: usize,
    dimension: isize,
    colors: usize,
    balance: MultiDeg,
    pure: bool,
    f: Vec<i64>,
    h: Vec<i64>,
    reduced_euler_characteristic: i64,
}

pub fn info(bc: &BalancedComplex) -> Plain {
    let c = &bc.complex;
    let info = Info {
        vertices: bc.n(),
        facets: c.facets().len(),
        dimension: c.dim(),
        colors: bc.m(),
        balance: bc.a.clone(),
        pure: c.is_pure(),
        f: f_vector(c),
        h: h_vector(c).0,
        reduced_euler_characteristic: reduced_euler_characteristic(c),
    };
    let text = format!(
        "{}\ndimension {}, {} colors, pure: {}\nf = {}\nh = {}\nreduced Euler characteristic {}\n",
        describe(bc),
        info.dimension,
        info.colors,
        info.pure,
        tuple(&info.f),
        tuple(&info.h),
        info.reduced_euler_characteristic
    );
    Plain { json: json(&info), text }
}

#[derive(Serialize)]
struct Predicate {
    name: &'static str,
    verdict: Verdict,
}

fn homology_predicates<F: mlsp::Field>(bc: &BalancedComplex, f: &F) -> Vec<Predicate> {
    let c = &bc.complex;
    vec![
        Predicate { name: "orientable", verdict: is_orientable(c, f) },
        Predicate { name: "homology-sphere", verdict: is_homology_sphere(c, f) },
        Predicate { name: "homology-manifold", verdict: is_homology_manifold(c, f) },
        Predicate { name: "cohen-macaulay", verdict: is_cohen_macaulay(c, f) },
        Predicate { name: "doubly-cohen-macaulay", verdict: is_doubly_cm(c, f) },
    ]
}

/// Homology only sees the characteristic.
fn prime_field(desc: FieldDescriptor) -> Result<Option<Gfp>> {
    Ok(match desc {
        FieldDescriptor::Gf2k { .. } | FieldDescriptor::Symbolic => Some(Gfp::new(2)?),
        FieldDescriptor::Gfp { p } => Some(Gfp::new(p)?),
        FieldDescriptor::Rational => None,
    })
}

fn betti_over(bc: &BalancedComplex, desc: FieldDescriptor) -> Result<Vec<i64>> {
    Ok(match prime_field(desc)? {
        Some(f) => reduced_betti(&bc.complex, &f).values,
        None => reduced_betti(&bc.complex, &Rationals).values,
    })
}

pub fn check(bc: &BalancedComplex, desc: FieldDescriptor) -> Result<Plain> {
    let c = &bc.complex;
    let mut preds = vec![
        Predicate { name: "pure", verdict: Verdict::from_bool(c.is_pure(), || "facets of different sizes".into()) },
        Predicate { name: "balanced", verdict: check_balanced(c, &bc.coloring, &bc.a) },
        Predicate { name: "pseudomanifold", verdict: is_pseudomanifold(c) },
    ];
    preds.extend(match prime_field(desc)? {
        Some(f) => homology_predicates(bc, &f),
        None => homology_predicates(bc, &Rationals),
    });
    let char = desc.characteristic();
    let mut text = format!("{} (homology in characteristic {char})\n", describe(bc));
    for p in &preds {
        let _ = writeln!(text, "  {:<24} {}", p.name, p.verdict);
    }
    Ok(Plain { json: json(&preds), text })
}

#[derive(Serialize)]
struct Hvec {
    f: Vec<i64>,
    h: Vec<i64>,
    betti: Vec<i64>,
    h_prime: Vec<i64>,
    h_double_prime: Vec<i64>,
    flag_f: Vec<Entry<i64>>,
    flag_h: Vec<Entry<i64>>,
    flag_h_prime: Vec<Entry<i64>>,
    flag_h_double_prime: Vec<Entry<i64>>,
}

pub fn hvec(bc: &BalancedComplex, desc: FieldDescriptor, betti: Option<&[i64]>) -> Result<Plain> {
    let c = &bc.complex;
    let betti = match betti {
        Some(b) => b.to_vec(),
        None => betti_over(bc, desc)?,
    };
    let fh = flag_h_of(bc);
    let (hp, hpp) = flag_h_prime_double_prime(&fh, &betti)?;
    let out = Hvec {
        f: f_vector(c),
        h: h_vector(c).0,
        h_prime: hp.coarse_i64(),
        h_double_prime: hpp.coarse_i64(),
        betti,
        flag_f: flag_entries(&flag_f_of(bc)),
        flag_h: flag_entries(&fh),
        flag_h_prime: flag_entries(&hp),
        flag_h_double_prime: flag_entries(&hpp),
    };
    let mut text = format!("{}\n", describe(bc));
    for (name, v) in [("f", &out.f), ("h", &out.h), ("betti", &out.betti), ("h'", &out.h_prime), ("h''", &out.h_double_prime)] {
        let _ = writeln!(text, "{name} = {}", tuple(v));
    }
    table(&mut text, "flag f", &out.flag_f);
    table(&mut text, "flag h", &out.flag_h);
    table(&mut text, "flag h'", &out.flag_h_prime);
    table(&mut text, "flag h''", &out.flag_h_double_prime);
    Ok(Plain { json: json(&out), text })
}

#[derive(Serialize)]
struct ArtinianOut {
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    dims: Vec<Entry<usize>>,
    coarse: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    socle: Option<Vec<Entry<usize>>>,
}

fn dims<F: Field>(bc: &BalancedComplex, lsop: &LsopSpec<F>, seed: Option<u64>, socle: bool) -> Result<ArtinianOut> {
    let art = Artinian::new(bc, lsop)?;
    Ok(ArtinianOut {
        field: lsop.field.descriptor().to_string(),
        seed,
        dims: entries(&art.hilbert_function()?),
        coarse: art.coarse_hilbert()?,
        socle: if socle { Some(entries(&art.socle_dims()?)) } else { None },
    })
}

pub fn artinian(bc: &BalancedComplex, desc: FieldDescriptor, symbolic: bool, seed: u64, socle: bool) -> Result<Plain> {
    let out = if symbolic || desc == FieldDescriptor::Symbolic {
        dims(bc, &symbolic_configuration(bc)?, None, socle)?
    } else {
        mlsp::with_field!(desc, |f| dims(bc, &substituted_configuration(bc, f, seed)?, Some(seed), socle)?)
    };
    let mut text = format!("{}\nfield {}", describe(bc), out.field);
    if let Some(s) = out.seed {
        let _ = write!(text, ", seed {s}");
    }
    let _ = writeln!(text, "\ncoarse = {}", tuple(&out.coarse));
    table(&mut text, "dim A_b", &out.dims);
    if let Some(s) = &out.socle {
        table(&mut text, "socle", s);
    }
    Ok(Plain { json: json(&out), text })
}
