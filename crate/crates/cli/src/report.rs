//! Machine-readable reports. Struct field order fixes the JSON field order;
//! all numbers are decimal integers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Number;

use lortho::certificates::EliminationCertificate;
use lortho::criteria::{LoFailure, SloInequalityFailure, TreeFailure};
use lortho::hodge::{Inertia, StructureReport, StructureViolation};
use lortho::{CurveConfiguration, Divisor};

pub fn int(value: &BigInt) -> Number {
    Number::from_str(&value.to_string()).expect("decimal integer literal")
}

fn divisor_map(cfg: &CurveConfiguration, d: &Divisor) -> BTreeMap<String, u64> {
    d.to_map(cfg)
        .into_iter()
        .map(|(id, k)| (id.as_str().to_owned(), k))
        .collect()
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeReason {
    NonRationalComponent { component: String, genus: u64 },
    MultiIncidence { pair: [String; 2], count: u32 },
    Cycle { components: Vec<String> },
    Disconnected { partition: Vec<Vec<String>> },
}

impl TreeReason {
    pub fn from_failure(f: &TreeFailure) -> Self {
        match f {
            TreeFailure::NonRationalComponent { component, genus } => {
                TreeReason::NonRationalComponent {
                    component: component.as_str().to_owned(),
                    genus: *genus,
                }
            }
            TreeFailure::MultiIncidence { pair, count } => TreeReason::MultiIncidence {
                pair: [pair.0.as_str().to_owned(), pair.1.as_str().to_owned()],
                count: *count,
            },
            TreeFailure::Cycle { components } => TreeReason::Cycle {
                components: components.iter().map(|c| c.as_str().to_owned()).collect(),
            },
            TreeFailure::Disconnected { partition } => TreeReason::Disconnected {
                partition: partition
                    .iter()
                    .map(|part| part.iter().map(|c| c.as_str().to_owned()).collect())
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NotTree {
        reason: TreeReason,
    },
    GenusNonzero {
        p_a: Number,
    },
    SubdivisorGenusPositive {
        subdivisor: BTreeMap<String, u64>,
        p_a: Number,
    },
    SloInequality {
        subdivisor: BTreeMap<String, u64>,
        p_a: Number,
        dd: Number,
    },
}

impl Witness {
    pub fn from_lo(cfg: &CurveConfiguration, f: &LoFailure) -> Self {
        match f {
            LoFailure::NotTree(t) => Witness::NotTree {
                reason: TreeReason::from_failure(t),
            },
            LoFailure::GenusNonzero { p_a } => Witness::GenusNonzero { p_a: int(p_a) },
            LoFailure::SubdivisorGenusPositive { subdivisor, p_a } => {
                Witness::SubdivisorGenusPositive {
                    subdivisor: divisor_map(cfg, subdivisor),
                    p_a: int(p_a),
                }
            }
        }
    }

    pub fn from_slo(cfg: &CurveConfiguration, w: &SloInequalityFailure) -> Self {
        Witness::SloInequality {
            subdivisor: divisor_map(cfg, &w.subdivisor),
            p_a: int(&w.p_a),
            dd: int(&w.pairing_with_ambient),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct StepJson {
    pub component: String,
    pub d: Number,
    pub multiplicities: Vec<u64>,
    pub lhs: Number,
    pub rhs: Number,
}

pub fn certificate_json(cert: &EliminationCertificate) -> Vec<StepJson> {
    cert.steps
        .iter()
        .map(|s| StepJson {
            component: s.component.as_str().to_owned(),
            d: int(&s.degree_bound),
            multiplicities: s.point_multiplicities.clone(),
            lhs: int(&s.inequality_lhs),
            rhs: int(&s.inequality_rhs),
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub lo: bool,
    pub slo: bool,
    pub p_a: Number,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Option<Vec<StepJson>>>,
    pub hodge_admissible: bool,
}

#[derive(Debug, Serialize)]
pub struct GenusReport {
    pub p_a: Number,
    /// Null when the support is not simple (positive genus or multiple
    /// incidences).
    pub genus_closed_form: Option<Number>,
    /// Null when a support component has positive genus.
    pub magic_formula_holds: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct InertiaJson {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl From<Inertia> for InertiaJson {
    fn from(i: Inertia) -> Self {
        InertiaJson {
            n_pos: i.n_pos,
            n_neg: i.n_neg,
            n_zero: i.n_zero,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationJson {
    PositivePair {
        components: Vec<String>,
    },
    PositiveMultiple {
        component: String,
        multiplicity: u64,
        self_intersection: i64,
    },
}

pub fn violations_json(report: &StructureReport) -> Vec<ViolationJson> {
    report
        .violations
        .iter()
        .map(|v| match v {
            StructureViolation::PositivePair {
                positive_components,
            } => ViolationJson::PositivePair {
                components: positive_components
                    .iter()
                    .map(|c| c.as_str().to_owned())
                    .collect(),
            },
            StructureViolation::PositiveMultiple {
                component,
                multiplicity,
                self_intersection,
            } => ViolationJson::PositiveMultiple {
                component: component.as_str().to_owned(),
                multiplicity: *multiplicity,
                self_intersection: *self_intersection,
            },
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct HodgeReport {
    pub inertia: InertiaJson,
    pub hodge_admissible: bool,
    pub structure_violations: Vec<ViolationJson>,
}

#[derive(Debug, Serialize)]
pub struct ComponentJson {
    pub id: String,
    pub self_intersection: i64,
    pub genus: u64,
}

#[derive(Debug, Serialize)]
pub struct ConfigJson {
    pub components: Vec<ComponentJson>,
    pub edges: Vec<[String; 2]>,
}

pub fn config_json(cfg: &CurveConfiguration) -> ConfigJson {
    let components = cfg
        .components()
        .iter()
        .map(|c| ComponentJson {
            id: c.id.as_str().to_owned(),
            self_intersection: c.self_intersection,
            genus: c.genus,
        })
        .collect();
    let mut edges = Vec::new();
    for ((i, j), count) in cfg.incidences() {
        for _ in 0..count {
            edges.push([cfg.id(i).as_str().to_owned(), cfg.id(j).as_str().to_owned()]);
        }
    }
    ConfigJson { components, edges }
}

#[derive(Debug, Serialize)]
pub struct LoJson {
    pub is_lo: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
pub struct SloJson {
    pub is_slo: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
pub struct RowJson {
    pub config: ConfigJson,
    pub divisor: BTreeMap<String, u64>,
    pub lo: LoJson,
    pub slo: SloJson,
    pub hodge_admissible: bool,
    pub structure_violations: Vec<ViolationJson>,
}

pub fn row_divisor_map(cfg: &CurveConfiguration, d: &Divisor) -> BTreeMap<String, u64> {
    divisor_map(cfg, d)
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

pub fn check_pretty(report: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "left-orthogonal:          {}", yes_no(report.lo));
    let _ = writeln!(out, "strongly left-orthogonal: {}", yes_no(report.slo));
    let _ = writeln!(out, "p_a:                      {}", report.p_a);
    if let Some(w) = &report.witness {
        let _ = writeln!(
            out,
            "witness:                  {}",
            serde_json::to_string(w).expect("witness serializes")
        );
    }
    if let Some(cert) = &report.certificate {
        match cert {
            Some(steps) => {
                let _ = writeln!(out, "certificate:              {} steps", steps.len());
                for (i, s) in steps.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  step {:>3}: peel {} (d = {}, jets {:?}, {} >= {})",
                        i + 1,
                        s.component,
                        s.d,
                        s.multiplicities,
                        s.lhs,
                        s.rhs
                    );
                }
            }
            None => {
                let _ = writeln!(out, "certificate:              none");
            }
        }
    }
    let _ = writeln!(
        out,
        "hodge admissible:         {}",
        yes_no(report.hodge_admissible)
    );
    out
}

pub fn genus_pretty(report: &GenusReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p_a:                 {}", report.p_a);
    match &report.genus_closed_form {
        Some(v) => {
            let _ = writeln!(out, "closed form:         {v}");
        }
        None => {
            let _ = writeln!(out, "closed form:         not applicable");
        }
    }
    match report.magic_formula_holds {
        Some(v) => {
            let _ = writeln!(out, "zero-genus identity: {}", yes_no(v));
        }
        None => {
            let _ = writeln!(out, "zero-genus identity: not applicable");
        }
    }
    out
}

pub fn hodge_pretty(report: &HodgeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "inertia:          ({}, {}, {})",
        report.inertia.n_pos, report.inertia.n_neg, report.inertia.n_zero
    );
    let _ = writeln!(
        out,
        "hodge admissible: {}",
        yes_no(report.hodge_admissible)
    );
    if report.structure_violations.is_empty() {
        let _ = writeln!(out, "structure:        clean");
    } else {
        let _ = writeln!(
            out,
            "structure:        {}",
            serde_json::to_string(&report.structure_violations).expect("violations serialize")
        );
    }
    out
}
