//! The JSON semiring format:
//! `{"kind":"modular","n":12,"gamma":[1,5]}` or
//! `{"kind":"tables","n":N,"gamma_names":[...],"add":[[...]],"ternary":{"<name>":[[[...]]]}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{Caps, TernarySemiring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SemiringSpec {
    Modular {
        n: usize,
        gamma: Vec<usize>,
    },
    Tables {
        n: usize,
        gamma_names: Vec<String>,
        add: Vec<Vec<usize>>,
        ternary: BTreeMap<String, Vec<Vec<Vec<usize>>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        element_names: Option<Vec<String>>,
    },
}

impl SemiringSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn build(&self, caps: &Caps) -> Result<TernarySemiring> {
        match self {
            SemiringSpec::Modular { n, gamma } => {
                TernarySemiring::modular_with_caps(*n, gamma, caps)
            }
            SemiringSpec::Tables {
                n,
                gamma_names,
                add,
                ternary,
                element_names,
            } => {
                if add.len() != *n {
                    return Err(Error::DimensionMismatch {
                        what: "add".into(),
                        expected: *n,
                        found: add.len(),
                    });
                }
                if let Some(extra) = ternary.keys().find(|k| !gamma_names.contains(k)) {
                    return Err(Error::InvalidInput(format!(
                        "ternary table for unknown gamma {extra:?}"
                    )));
                }
                let tables = gamma_names
                    .iter()
                    .map(|g| {
                        ternary.get(g).cloned().ok_or_else(|| {
                            Error::InvalidInput(format!("missing ternary table for gamma {g:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                TernarySemiring::from_tables(
                    add,
                    &tables,
                    gamma_names.clone(),
                    element_names.clone(),
                    caps,
                )
            }
        }
    }

    /// Tables form of any semiring; modular presets keep their short form.
    pub fn from_semiring(t: &TernarySemiring) -> Self {
        if let Some(p) = t.modular_preset() {
            return SemiringSpec::Modular {
                n: p.n,
                gamma: p.gamma.clone(),
            };
        }
        let tables = t.ternary_tables();
        SemiringSpec::Tables {
            n: t.size(),
            gamma_names: t.gamma_names().to_vec(),
            add: t.add_table(),
            ternary: t.gamma_names().iter().cloned().zip(tables).collect(),
            element_names: t.element_names().map(<[String]>::to_vec),
        }
    }
}

pub fn parse_semiring(json: &str, caps: &Caps) -> Result<TernarySemiring> {
    SemiringSpec::parse(json)?.build(caps)
}
