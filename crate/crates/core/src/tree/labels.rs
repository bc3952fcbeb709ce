use std::collections::HashMap;

use super::{LeafLabel, MAX_LEAVES};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Numeric,
    Interned,
}

/// Bidirectional map between external leaf names and dense leaf ids.
///
/// The first batch of names seen decides the id policy: if every name is a
/// decimal numeral, ids are the numeric values (`"7"` is id 7); otherwise
/// names get ids in first-appearance order. Names are kept verbatim for
/// output.
#[derive(Debug, Clone, Default)]
pub struct LabelMap {
    names: Vec<Option<String>>,
    ids: HashMap<String, LeafLabel>,
    mode: Option<Mode>,
}

fn is_numeral(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_digit())
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// A map that assigns numerals their own value from the start.
    pub fn numeric() -> Self {
        LabelMap {
            mode: Some(Mode::Numeric),
            ..Self::default()
        }
    }

    /// Registers `name` under an explicit id.
    pub fn insert(&mut self, name: &str, id: LeafLabel) -> Result<()> {
        if id.index() >= MAX_LEAVES {
            return Err(Error::LeafOutOfRange(id.0 as u64));
        }
        if let Some(&existing) = self.ids.get(name) {
            if existing == id {
                return Ok(());
            }
        }
        if self.names.len() <= id.index() {
            self.names.resize(id.index() + 1, None);
        }
        match &self.names[id.index()] {
            Some(other) if other != name => Err(Error::LabelConflict {
                name: name.to_string(),
                id: id.0,
                other: other.clone(),
            }),
            _ => {
                self.names[id.index()] = Some(name.to_string());
                self.ids.insert(name.to_string(), id);
                if self.mode.is_none() {
                    self.mode = Some(Mode::Interned);
                }
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<LeafLabel> {
        self.ids.get(name).copied()
    }

    /// Looks up a name, falling back to the numeric reading of a numeral.
    pub fn resolve(&self, name: &str) -> Result<LeafLabel> {
        if let Some(id) = self.get(name) {
            return Ok(id);
        }
        if self.mode != Some(Mode::Interned) && is_numeral(name) {
            if let Ok(v) = name.parse::<u32>() {
                if (v as usize) < MAX_LEAVES && self.name_of(LeafLabel(v)).is_none() {
                    return Ok(LeafLabel(v));
                }
            }
        }
        Err(Error::UnknownLabel(name.to_string()))
    }

    pub fn name_of(&self, id: LeafLabel) -> Option<&str> {
        self.names.get(id.index()).and_then(|n| n.as_deref())
    }

    /// Name for output; unnamed ids print as their number.
    pub fn display(&self, id: LeafLabel) -> String {
        match self.name_of(id) {
            Some(n) => n.to_string(),
            None => id.0.to_string(),
        }
    }

    /// Interns a batch of names given in first-appearance order.
    pub fn intern_batch<'a, I>(&mut self, names: I) -> Result<Vec<LeafLabel>>
    where
        I: IntoIterator<Item = &'a str>,
        I::IntoIter: Clone,
    {
        let names = names.into_iter();
        let mode = match self.mode {
            Some(m) => m,
            None => {
                if names.clone().all(is_numeral) {
                    Mode::Numeric
                } else {
                    Mode::Interned
                }
            }
        };
        self.mode = Some(mode);
        let mut out = Vec::new();
        for name in names {
            if let Some(id) = self.get(name) {
                out.push(id);
                continue;
            }
            let id = if mode == Mode::Numeric && is_numeral(name) {
                let v: u64 = name.parse().map_err(|_| Error::LeafOutOfRange(u64::MAX))?;
                if v as usize >= MAX_LEAVES {
                    return Err(Error::LeafOutOfRange(v));
                }
                LeafLabel(v as u32)
            } else {
                self.next_free()?
            };
            self.insert(name, id)?;
            out.push(id);
        }
        Ok(out)
    }

    fn next_free(&self) -> Result<LeafLabel> {
        (0..MAX_LEAVES)
            .find(|&i| self.names.get(i).is_none_or(|n| n.is_none()))
            .map(|i| LeafLabel(i as u32))
            .ok_or(Error::LeafOutOfRange(MAX_LEAVES as u64))
    }
}
