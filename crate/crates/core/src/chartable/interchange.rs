//! The JSON table interchange format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CentralSubgroup, CharacterTable};
use crate::arith::is_prime;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

/// One table entry: a full cyclotomic, or an integer shorthand.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Integer(i64),
    Cyclotomic(Cyclotomic),
}

/// Defect-group facts for one block, supplied with ingested tables whose
/// group is not available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectMetadata {
    pub p: u64,
    /// Row indices (document order) of the block's characters.
    pub characters: Vec<usize>,
    pub order: u64,
    pub abelian: bool,
    /// Whether `D/Z` is abelian for the enclosing central subgroup `Z`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelian_mod_z: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralSubgroupDoc {
    pub name: String,
    pub class_indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defect_metadata: Vec<DefectMetadata>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDocument {
    pub name: String,
    pub order: u64,
    pub exponent: u32,
    pub class_sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    pub characters: Vec<Vec<ValueDoc>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub power_maps: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub central_subgroups: Vec<CentralSubgroupDoc>,
}

impl CharacterTable {
    /// Validates and verifies a table document. Rows keep document order.
    pub fn ingest(doc: &TableDocument) -> Result<CharacterTable> {
        let r = doc.class_sizes.len();
        if r == 0 {
            return Err(Error::Schema("table has no classes".into()));
        }
        if doc.exponent == 0 || doc.order == 0 {
            return Err(Error::Schema("order and exponent must be positive".into()));
        }
        if doc.element_orders.len() != r {
            return Err(Error::Schema(format!(
                "{} element orders for {r} classes",
                doc.element_orders.len()
            )));
        }
        if doc.class_sizes[0] != 1 || doc.element_orders[0] != 1 {
            return Err(Error::Schema("class 0 must be the identity class".into()));
        }
        let total: u128 = doc.class_sizes.iter().map(|&s| s as u128).sum();
        if total != doc.order as u128 {
            return Err(Error::MalformedInput(format!(
                "class sizes sum to {total}, but the order is {}",
                doc.order
            )));
        }
        if let Some(k) = (0..r).find(|&k| doc.class_sizes[k] == 0 || doc.order % doc.class_sizes[k] != 0) {
            return Err(Error::MalformedInput(format!(
                "class {k} has size {} which does not divide {}",
                doc.class_sizes[k], doc.order
            )));
        }
        if let Some(k) = (0..r).find(|&k| {
            let o = doc.element_orders[k];
            o == 0 || doc.exponent as u64 % o != 0
        }) {
            return Err(Error::MalformedInput(format!(
                "element order {} of class {k} does not divide the exponent {}",
                doc.element_orders[k], doc.exponent
            )));
        }
        let e = doc.exponent;
        let mut values = Vec::with_capacity(doc.characters.len());
        for (i, row) in doc.characters.iter().enumerate() {
            if row.len() != r {
                return Err(Error::Schema(format!("character {i} has {} values", row.len())));
            }
            let lifted = row
                .iter()
                .map(|v| match v {
                    ValueDoc::Integer(n) => Ok(Cyclotomic::from_integer(e, *n)),
                    ValueDoc::Cyclotomic(c) if e % c.conductor() == 0 => Ok(c.lift(e)),
                    ValueDoc::Cyclotomic(c) => Err(Error::Schema(format!(
                        "value of conductor {} in character {i} does not fit exponent {e}",
                        c.conductor()
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(lifted);
        }
        let mut power_maps = BTreeMap::new();
        for (key, map) in &doc.power_maps {
            let p: u64 = key
                .parse()
                .ok()
                .filter(|&p| is_prime(p))
                .ok_or_else(|| Error::Schema(format!("power map key `{key}` is not a prime")))?;
            if map.len() != r || map.iter().any(|&k| k >= r) {
                return Err(Error::Schema(format!("power map for {p} is malformed")));
            }
            power_maps.insert(p, map.clone());
        }
        let mut table = CharacterTable {
            name: doc.name.clone(),
            order: doc.order,
            exponent: e,
            class_sizes: doc.class_sizes.clone(),
            element_orders: doc.element_orders.clone(),
            representatives: None,
            group: None,
            power_maps,
            values,
            central_subgroups: Vec::new(),
            dixon_prime: None,
        };
        table.verify()?;
        for z in &doc.central_subgroups {
            let sub = CentralSubgroup::from_classes(&table, &z.name, z.class_indices.clone())?;
            let sub = sub.with_defect_metadata(z.defect_metadata.clone());
            table.central_subgroups.push(sub);
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<CharacterTable> {
        let doc: TableDocument = serde_json::from_str(text)?;
        Self::ingest(&doc)
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            name: self.name.clone(),
            order: self.order,
            exponent: self.exponent,
            class_sizes: self.class_sizes.clone(),
            element_orders: self.element_orders.clone(),
            characters: self
                .values
                .iter()
                .map(|row| row.iter().cloned().map(ValueDoc::Cyclotomic).collect())
                .collect(),
            power_maps: self
                .power_maps
                .iter()
                .map(|(p, m)| (p.to_string(), m.clone()))
                .collect(),
            central_subgroups: self
                .central_subgroups
                .iter()
                .map(|z| CentralSubgroupDoc {
                    name: z.name.clone(),
                    class_indices: z.classes.clone(),
                    defect_metadata: z.defect_metadata.clone(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("table documents serialize")
    }
}
