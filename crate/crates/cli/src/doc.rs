//! JSON documents: ladders, ideals, minors, certificates and reports.
//!
//! Indices in documents are 1-based, including `pivot_k` and report step
//! numbers.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use symladder_core::biliaison::{BiliaisonCertificate, BiliaisonStep};
use symladder_core::ideal::{mk_ideal, Minor, MixedLadderIdeal};
use symladder_core::ladder::{from_corners, validate_ladder, Cell, Ladder};
use symladder_core::poly::VerificationReport;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("validation failed: {0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

pub type Pair = [usize; 2];

fn pair(c: Cell) -> Pair {
    [c.row, c.col]
}

fn cell(p: &Pair) -> Cell {
    Cell::new(p[0], p[1])
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderDoc {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_inside: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_inside: Option<Vec<Pair>>,
}

impl LadderDoc {
    /// The canonical form: the sorted plus-part cells.
    pub fn from_ladder(l: &Ladder) -> Self {
        LadderDoc {
            n: l.n(),
            cells: Some(l.cells().map(pair).collect()),
            lower_inside: None,
            upper_inside: None,
        }
    }

    pub fn to_ladder(&self) -> Result<Ladder, CliError> {
        match (&self.cells, &self.lower_inside, &self.upper_inside) {
            (Some(cells), None, None) => validate_ladder(self.n, cells.iter().map(cell))
                .map_err(|e| CliError::Invalid(e.to_string())),
            (None, Some(lo), Some(up)) => {
                let lo: Vec<Cell> = lo.iter().map(cell).collect();
                let up: Vec<Cell> = up.iter().map(cell).collect();
                from_corners(self.n, &lo, &up).map_err(|e| CliError::Invalid(e.to_string()))
            }
            _ => Err(CliError::Malformed(
                "a ladder needs either \"cells\" or both \"lower_inside\" and \"upper_inside\"".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub ladder: LadderDoc,
    pub points: Vec<Pair>,
    pub t: Vec<usize>,
}

impl IdealDoc {
    pub fn from_ideal(i: &MixedLadderIdeal) -> Self {
        IdealDoc {
            ladder: LadderDoc::from_ladder(i.ladder()),
            points: i.points().iter().copied().map(pair).collect(),
            t: i.sizes().to_vec(),
        }
    }

    pub fn to_ideal(&self) -> Result<MixedLadderIdeal, CliError> {
        let ladder = self.ladder.to_ladder()?;
        let points: Vec<Cell> = self.points.iter().map(cell).collect();
        mk_ideal(ladder, &points, &self.t).map_err(|e| CliError::Invalid(e.to_string()))
    }
}

/// Either kind of input document, told apart by the `ladder` key.
pub enum Input {
    Ladder(LadderDoc),
    Ideal(IdealDoc),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))?;
        let bad = |e: serde_json::Error| CliError::Malformed(e.to_string());
        if value.get("ladder").is_some() {
            serde_json::from_value(value).map(Input::Ideal).map_err(bad)
        } else {
            serde_json::from_value(value).map(Input::Ladder).map_err(bad)
        }
    }

    pub fn ladder(&self) -> Result<Ladder, CliError> {
        match self {
            Input::Ladder(l) => l.to_ladder(),
            Input::Ideal(i) => i.ladder.to_ladder(),
        }
    }

    pub fn ideal(&self) -> Result<MixedLadderIdeal, CliError> {
        match self {
            Input::Ladder(_) => Err(CliError::Malformed(
                "expected an ideal document with \"ladder\", \"points\" and \"t\"".into(),
            )),
            Input::Ideal(i) => i.to_ideal(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorDoc {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

impl MinorDoc {
    pub fn new(m: &Minor) -> Self {
        MinorDoc {
            rows: m.rows().to_vec(),
            cols: m.cols().to_vec(),
            poly: None,
        }
    }
}

#[derive(Serialize)]
pub struct GensDoc {
    pub minors: Vec<MinorDoc>,
}

#[derive(Serialize)]
pub struct HeightDoc {
    pub h_plus: Vec<Pair>,
    pub height: usize,
}

#[derive(Serialize)]
pub struct InfoDoc {
    pub points: Vec<Pair>,
    pub t: Vec<usize>,
    pub already_normalized: bool,
    pub normalized: IdealDoc,
    pub zero: bool,
    pub height: HeightDoc,
    pub generators: usize,
}

#[derive(Serialize)]
pub struct StepDoc {
    pub pivot_k: usize,
    pub source: IdealDoc,
    pub target: IdealDoc,
    pub link: IdealDoc,
    pub f_num: MinorDoc,
    pub f_den: MinorDoc,
    pub heights: [usize; 3],
}

impl StepDoc {
    pub fn new(s: &BiliaisonStep) -> Self {
        StepDoc {
            pivot_k: s.pivot_k + 1,
            source: IdealDoc::from_ideal(&s.source),
            target: IdealDoc::from_ideal(&s.target),
            link: IdealDoc::from_ideal(&s.link),
            f_num: MinorDoc::new(&s.f_numerator),
            f_den: MinorDoc::new(&s.f_denominator),
            heights: s.heights,
        }
    }
}

#[derive(Serialize)]
pub struct CertificateDoc {
    pub steps: Vec<StepDoc>,
    pub terminal: IdealDoc,
    pub biliaisons: usize,
    pub g_links: usize,
}

impl CertificateDoc {
    pub fn new(c: &BiliaisonCertificate) -> Self {
        CertificateDoc {
            steps: c.steps.iter().map(StepDoc::new).collect(),
            terminal: IdealDoc::from_ideal(&c.terminal),
            biliaisons: c.biliaison_count,
            g_links: c.g_link_count,
        }
    }
}

#[derive(Serialize)]
pub struct CheckDoc {
    pub name: &'static str,
    pub status: &'static str,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub step: usize,
    pub field: String,
    pub checks: Vec<CheckDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds_hit: Vec<String>,
}

impl ReportDoc {
    pub fn new(r: &VerificationReport) -> Self {
        ReportDoc {
            step: r.step,
            field: r.field.clone(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckDoc {
                    name: c.name,
                    status: c.status.as_str(),
                    witness: c.witness.clone(),
                    detail: c.detail.clone(),
                })
                .collect(),
            bounds_hit: r.bounds_hit.clone(),
        }
    }
}

/// Indented JSON that keeps arrays of scalars on one line, so cell pairs
/// read as `[1, 2]`.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("documents serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
