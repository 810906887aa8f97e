//! Input document schema and its mapping to configurations and divisors.
//!
//! ```json
//! {
//!   "components": [
//!     {"id": "E1", "self_intersection": -2, "genus": 0, "multiplicity": 1}
//!   ],
//!   "edges": [["E1", "E2"]]
//! }
//! ```
//!
//! `genus` defaults to 0 and `multiplicity` to 1; a repeated edge is a
//! multiple incidence; ids may be strings or integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use lortho::{Component, ComponentId, CurveConfiguration, Divisor};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum IdValue {
    Text(String),
    Number(i64),
}

impl IdValue {
    fn to_id(&self) -> ComponentId {
        match self {
            IdValue::Text(s) => ComponentId::new(s.clone()),
            IdValue::Number(n) => ComponentId::new(n.to_string()),
        }
    }
}

fn default_multiplicity() -> u64 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentDoc {
    id: IdValue,
    self_intersection: i64,
    #[serde(default)]
    genus: u64,
    #[serde(default = "default_multiplicity")]
    multiplicity: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    components: Vec<ComponentDoc>,
    #[serde(default)]
    edges: Vec<(IdValue, IdValue)>,
}

/// Parses a UTF-8 JSON document into a validated configuration and divisor.
pub fn parse_input(text: &str) -> Result<(CurveConfiguration, Divisor), CliError> {
    let doc: InputDocument =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid input: {e}")))?;
    let components: Vec<Component> = doc
        .components
        .iter()
        .map(|c| Component::new(c.id.to_id(), c.self_intersection, c.genus))
        .collect();
    let incidences: Vec<(ComponentId, ComponentId)> = doc
        .edges
        .iter()
        .map(|(a, b)| (a.to_id(), b.to_id()))
        .collect();
    let cfg = CurveConfiguration::new(components, &incidences)?;
    let mut mults = BTreeMap::new();
    for c in &doc.components {
        mults.insert(c.id.to_id(), c.multiplicity);
    }
    let divisor = Divisor::from_map(&cfg, &mults)?;
    Ok((cfg, divisor))
}

#[derive(Debug, Serialize)]
struct ComponentOut {
    id: String,
    self_intersection: i64,
    genus: u64,
    multiplicity: u64,
}

/// Input-schema rendering of a configuration and divisor; parsing the output
/// reproduces the pair.
#[derive(Debug, Serialize)]
pub struct RenderedDocument {
    components: Vec<ComponentOut>,
    edges: Vec<[String; 2]>,
}

pub fn render_document(cfg: &CurveConfiguration, d: &Divisor) -> RenderedDocument {
    let components = cfg
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| ComponentOut {
            id: c.id.as_str().to_owned(),
            self_intersection: c.self_intersection,
            genus: c.genus,
            multiplicity: d.multiplicity(i),
        })
        .collect();
    let mut edges = Vec::new();
    for ((i, j), count) in cfg.incidences() {
        for _ in 0..count {
            edges.push([
                cfg.id(i).as_str().to_owned(),
                cfg.id(j).as_str().to_owned(),
            ]);
        }
    }
    RenderedDocument { components, edges }
}
