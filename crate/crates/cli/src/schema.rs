//! The on-disk JSON definition format.
//!
//! ```json
//! {
//!   "description": "optional free-form text",
//!   "coords": ["x1", "x2", "x3"],
//!   "rank": 3,
//!   "anchor": [["1","0","0"],["0","1","0"],["0","0","1"]],
//!   "structure": [ {"lower": [1,2], "upper": 3, "value": "1"} ],
//!   "subbundles": { "contact": [["0","1","0"],["1","0","x2"]] },
//!   "forms": { "w": {"degree": 2, "terms": [{"indices":[1,2],"coeff":"x1"}]} }
//! }
//! ```
//!
//! `anchor` is an `n × p` array of expression strings (row `i` holds the
//! coefficients of `∂/∂x^i`). `structure` lists only entries with
//! `lower[0] < lower[1]`; the loader completes the antisymmetric part
//! automatically, so inconsistent redundant input is unrepresentable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DefinitionFile {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub coords: Vec<String>,
    pub rank: usize,
    pub anchor: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure: Vec<StructureEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subbundles: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, FormDef>,
}

/// One structure function `L^γ_{αβ}` with `α < β`: `lower: [α, β]`,
/// `upper: γ`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StructureEntry {
    pub lower: [usize; 2],
    pub upper: usize,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FormDef {
    pub degree: usize,
    pub terms: Vec<FormTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub indices: Vec<usize>,
    pub coeff: String,
}
