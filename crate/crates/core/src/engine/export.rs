//! Versioned JSON export of an engine's word basis and right action.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::field::{Field, FieldSpec};

use super::token::{format_word, parse_word, Tok};
use super::{factorial, Engine, EngineError};

pub const EXPORT_VERSION: u32 = 1;

/// Serialized engine. `right[slot]` lists `(i, j, c)` with `w_i . t = Σ c w_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EngineExport {
    pub schema_version: u32,
    pub code_version: String,
    pub r: usize,
    pub s: usize,
    pub field: FieldSpec,
    pub words: Vec<String>,
    pub parents: Vec<Option<(u32, Tok)>>,
    pub right: Vec<Vec<(u32, u32, String)>>,
}

impl Engine {
    pub fn export(&self) -> EngineExport {
        EngineExport {
            schema_version: EXPORT_VERSION,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            r: self.r,
            s: self.s,
            field: self.field.spec().clone(),
            words: self.words.iter().map(|w| format_word(w)).collect(),
            parents: self.parent.clone(),
            right: self
                .right
                .iter()
                .map(|rows| {
                    rows.iter()
                        .enumerate()
                        .flat_map(|(i, v)| {
                            v.iter().map(move |(j, c)| (i as u32, *j, c.to_string()))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Rebuilds an engine from an export, checking its shape.
    pub fn from_export(ex: &EngineExport) -> Result<Engine, EngineError> {
        if ex.schema_version != EXPORT_VERSION {
            return Err(EngineError::Parse(format!(
                "unsupported schema version {}",
                ex.schema_version
            )));
        }
        let field = Field::new(ex.field.clone())?;
        let n = factorial(ex.r + ex.s);
        let ntok = ex.r + ex.s - 1;
        if ex.words.len() != n || ex.parents.len() != n || ex.right.len() != ntok {
            return Err(EngineError::Integrity(
                "export has the wrong dimensions".into(),
            ));
        }
        let words = ex
            .words
            .iter()
            .map(|w| parse_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        for (k, p) in ex.parents.iter().enumerate() {
            let ok = match p {
                None => k == 0,
                Some((i, t)) => {
                    let mut w = words[*i as usize].clone();
                    w.push(*t);
                    (*i as usize) < k && w == words[k]
                }
            };
            if !ok {
                return Err(EngineError::Integrity(format!(
                    "word {k} does not extend its parent"
                )));
            }
        }
        let mut right = Vec::with_capacity(ntok);
        for slot in &ex.right {
            let mut rows = vec![Vec::new(); n];
            for (i, j, c) in slot {
                if *i as usize >= n || *j as usize >= n {
                    return Err(EngineError::Integrity("matrix index out of range".into()));
                }
                rows[*i as usize].push((*j, field.parse_scalar(c)?));
            }
            for row in rows.iter_mut() {
                row.sort_by_key(|(j, _)| *j);
            }
            right.push(rows);
        }
        Ok(Engine {
            r: ex.r,
            s: ex.s,
            field,
            words,
            parent: ex.parents.clone(),
            right,
            sigma_cache: OnceLock::new(),
            left_cache: OnceLock::new(),
            central_cache: OnceLock::new(),
        })
    }
}
