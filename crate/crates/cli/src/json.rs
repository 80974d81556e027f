//! The `--json` report document. See `docs/report-schema.md`.

use serde::Serialize;

use hassett_core::morphisms::PairClass;
use hassett_core::rational::format_rational;
use hassett_core::{Difference, DivisorClass, ModuliSpace, VerificationReport};

pub const SCHEMA: &str = "hassett-report";
pub const VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Document<T: Serialize> {
    pub schema: &'static str,
    pub version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Document<T> {
    pub fn new(command: &'static str, body: T) -> Document<T> {
        Document {
            schema: SCHEMA,
            version: VERSION,
            command,
            body,
        }
    }
}

#[derive(Serialize)]
pub struct SpaceJson {
    pub genus: u32,
    pub weights: Vec<String>,
}

impl From<&ModuliSpace> for SpaceJson {
    fn from(s: &ModuliSpace) -> SpaceJson {
        SpaceJson {
            genus: s.genus(),
            weights: s.weights().as_slice().iter().map(format_rational).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TermJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<&'static str>,
    pub generator: String,
    pub coefficient: String,
}

fn terms(c: &DivisorClass, factor: Option<&'static str>) -> Vec<TermJson> {
    c.iter()
        .map(|(g, k)| TermJson {
            factor,
            generator: g.to_string(),
            coefficient: format_rational(k),
        })
        .collect()
}

/// A class with its space; `expression` parses back to the same class.
#[derive(Serialize)]
pub struct ClassJson {
    pub space: SpaceJson,
    pub expression: String,
    pub terms: Vec<TermJson>,
}

impl From<&DivisorClass> for ClassJson {
    fn from(c: &DivisorClass) -> ClassJson {
        ClassJson {
            space: c.space().into(),
            expression: c.to_string(),
            terms: terms(c, None),
        }
    }
}

#[derive(Serialize)]
pub struct PairJson {
    pub left: ClassJson,
    pub right: ClassJson,
}

impl From<&PairClass> for PairJson {
    fn from(p: &PairClass) -> PairJson {
        PairJson {
            left: (&p.left).into(),
            right: (&p.right).into(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub identity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    pub genus: u32,
    pub weights: Vec<String>,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
    pub difference: Vec<TermJson>,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> ReportJson {
        let space = SpaceJson::from(&r.space);
        let difference = match &r.difference {
            Difference::Single(c) => terms(c, None),
            Difference::Pair(p) => {
                let mut t = terms(&p.left, Some("left"));
                t.extend(terms(&p.right, Some("right")));
                t
            }
        };
        ReportJson {
            identity: r.identity,
            parameter: r.parameter.clone(),
            genus: space.genus,
            weights: space.weights,
            passed: r.passed,
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    passed: c.passed,
                })
                .collect(),
            difference,
        }
    }
}

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Summary {
        let passed = reports.iter().filter(|r| r.passed).count();
        Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }
}

pub fn print<T: Serialize>(command: &'static str, body: T) {
    let doc = Document::new(command, body);
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
}
