//! JSON manifest describing a structure and the check to run on it.

use std::collections::BTreeSet;
use std::sync::Arc;

use pnkit::expr::parse_scalar;
use pnkit::structures::StructureData;
use pnkit::tensor::{flat_matrix, Blade, Kind};
use pnkit::{Chart, Endo, Matrix, Multi, Scalar};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Poisson,
    Nijenhuis,
    Compatible,
    Ppn,
    Psn,
    Twisted,
    Courant,
    Hierarchy,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sections: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub indices: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoSpec {
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub coordinates: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opaque_functions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bivector: Option<Vec<Component>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivector: Option<Vec<Component>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endomorphism: Option<EndoSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_form: Option<Vec<Component>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub three_form: Option<Vec<Component>>,
    pub check: CheckKind,
    #[serde(default, skip_serializing_if = "is_default")]
    pub params: Params,
}

fn is_default(p: &Params) -> bool {
    *p == Params::default()
}

/// A loaded manifest: the structure plus what to do with it.
#[derive(Clone, Debug)]
pub struct Request {
    pub data: StructureData,
    pub check: CheckKind,
    pub params: Params,
}

fn at(pointer: String, message: impl Into<String>) -> CliError {
    CliError::Manifest { pointer, message: message.into() }
}

fn pointer_from_path(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

pub fn parse_manifest(text: &str) -> Result<Manifest, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_from_path(e.path());
        let inner = e.into_inner();
        let message = format!("{inner}");
        at(if pointer == "/?" || pointer.is_empty() { String::new() } else { pointer }, message)
    })
}

fn scalar(text: &str, chart: &Chart, pointer: String) -> Result<Scalar, CliError> {
    parse_scalar(text, chart).map_err(|e| at(pointer, format!("`{text}`: {e}")))
}

fn components<K: Kind>(
    chart: &Arc<Chart>,
    grade: usize,
    comps: &[Component],
    field: &str,
) -> Result<Multi<K>, CliError> {
    let mut seen = BTreeSet::new();
    let mut out = Multi::<K>::zero(chart, grade);
    for (k, c) in comps.iter().enumerate() {
        let base = format!("/{field}/{k}");
        if c.indices.len() != grade {
            return Err(at(format!("{base}/indices"), format!("expected {grade} indices, found {}", c.indices.len())));
        }
        let mut idx = Vec::with_capacity(grade);
        for (p, name) in c.indices.iter().enumerate() {
            let i = chart
                .index_of(name)
                .ok_or_else(|| at(format!("{base}/indices/{p}"), format!("unknown coordinate `{name}`")))?;
            idx.push(i);
        }
        let (blade, sign) = Blade::from_indices(&idx)
            .ok_or_else(|| at(format!("{base}/indices"), "indices must be distinct coordinate names"))?;
        if !seen.insert(blade) {
            return Err(at(format!("{base}/indices"), "duplicate index set"));
        }
        let s = scalar(&c.coeff, chart, format!("{base}/coeff"))?;
        let s = if sign < 0 { -s } else { s };
        let term = Multi::<K>::blade(chart, blade, s);
        out = out.add(&term).expect("same chart and grade");
    }
    Ok(out)
}

fn endomorphism(chart: &Arc<Chart>, spec: &EndoSpec) -> Result<Endo, CliError> {
    let n = chart.dim();
    if spec.matrix.len() != n {
        return Err(at("/endomorphism/matrix".into(), format!("expected {n} rows, found {}", spec.matrix.len())));
    }
    let mut m = Matrix::zero(n);
    for (i, row) in spec.matrix.iter().enumerate() {
        if row.len() != n {
            return Err(at(format!("/endomorphism/matrix/{i}"), format!("expected {n} entries, found {}", row.len())));
        }
        for (j, text) in row.iter().enumerate() {
            m.set(i, j, scalar(text, chart, format!("/endomorphism/matrix/{i}/{j}"))?);
        }
    }
    Ok(Endo::new(chart, m)?)
}

/// Parses and validates a manifest against its own chart.
pub fn build_request(m: &Manifest) -> Result<Request, CliError> {
    let chart = Chart::with_opaque(m.coordinates.iter().cloned(), m.opaque_functions.iter().cloned())
        .map_err(|e| at("/coordinates".into(), e.to_string()))?;
    if m.bivector.is_some() && m.two_form.is_some() {
        return Err(at("/two_form".into(), "give either a bivector or a two-form, not both"));
    }
    let pi = m.bivector.as_ref().map(|c| components::<pnkit::tensor::Tangent>(&chart, 2, c, "bivector")).transpose()?;
    let big_phi = m.trivector.as_ref().map(|c| components::<pnkit::tensor::Tangent>(&chart, 3, c, "trivector")).transpose()?;
    let omega = m.two_form.as_ref().map(|c| components::<pnkit::tensor::Cotangent>(&chart, 2, c, "two_form")).transpose()?;
    let phi = m.three_form.as_ref().map(|c| components::<pnkit::tensor::Cotangent>(&chart, 3, c, "three_form")).transpose()?;
    let n = m.endomorphism.as_ref().map(|e| endomorphism(&chart, e)).transpose()?;

    if let Some(w) = &omega {
        if flat_matrix(w)?.det().is_zero() {
            return Err(pnkit::Error::Degenerate("degenerate two-form".into()).into());
        }
    }
    let data = StructureData {
        chart: chart.clone(),
        bivector: pi,
        endo: n,
        trivector: big_phi,
        two_form: omega,
        three_form: phi,
        renamed: Vec::new(),
    };
    data.validate()?;
    require(&data, m.check)?;
    Ok(Request { data, check: m.check, params: m.params.clone() })
}

fn require(data: &StructureData, check: CheckKind) -> Result<(), CliError> {
    let has_2 = data.bivector.is_some() || data.two_form.is_some();
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(at(String::new(), format!("check `{}` needs {what}", check_name(check))))
        }
    };
    match check {
        CheckKind::Poisson => need(has_2, "a bivector or two-form"),
        CheckKind::Nijenhuis => need(data.endo.is_some(), "an endomorphism"),
        CheckKind::Compatible | CheckKind::Ppn | CheckKind::Hierarchy => {
            need(has_2, "a bivector or two-form")?;
            need(data.endo.is_some(), "an endomorphism")
        }
        CheckKind::Psn => {
            need(data.two_form.is_some(), "a two-form")?;
            need(data.endo.is_some(), "an endomorphism")
        }
        CheckKind::Twisted => {
            need(has_2, "a bivector or two-form")?;
            need(data.endo.is_some(), "an endomorphism")
        }
        // without any tensors this is the standard structure
        CheckKind::Courant => {
            if has_2 || data.endo.is_some() {
                need(has_2, "a bivector or two-form")?;
                need(data.endo.is_some(), "an endomorphism")?;
            }
            Ok(())
        }
    }
}

pub fn check_name(c: CheckKind) -> &'static str {
    match c {
        CheckKind::Poisson => "poisson",
        CheckKind::Nijenhuis => "nijenhuis",
        CheckKind::Compatible => "compatible",
        CheckKind::Ppn => "ppn",
        CheckKind::Psn => "psn",
        CheckKind::Twisted => "twisted",
        CheckKind::Courant => "courant",
        CheckKind::Hierarchy => "hierarchy",
    }
}

fn emit_components<K: Kind>(t: &Multi<K>) -> Vec<Component> {
    let chart = t.chart();
    t.iter()
        .map(|(b, s)| Component {
            indices: b.indices().map(|i| chart.coord_name(i).to_string()).collect(),
            coeff: s.to_string_in(chart),
        })
        .collect()
}

/// Manifest reproducing `data` exactly.
pub fn to_manifest(data: &StructureData, check: CheckKind) -> Manifest {
    let chart = &data.chart;
    Manifest {
        coordinates: chart.coords().to_vec(),
        opaque_functions: chart.opaque().to_vec(),
        bivector: data.bivector.as_ref().map(emit_components),
        trivector: data.trivector.as_ref().map(emit_components),
        endomorphism: data.endo.as_ref().map(|n| EndoSpec {
            matrix: n.matrix().rows().iter().map(|r| r.iter().map(|s| s.to_string_in(chart)).collect()).collect(),
        }),
        two_form: data.two_form.as_ref().map(emit_components::<pnkit::tensor::Cotangent>),
        three_form: data.three_form.as_ref().map(emit_components::<pnkit::tensor::Cotangent>),
        check,
        params: Params::default(),
    }
}
