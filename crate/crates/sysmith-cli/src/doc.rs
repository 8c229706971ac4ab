//! JSON matrix documents.  Entries are strings in the expression grammar so
//! every value survives serialization exactly, whatever the ring.  A
//! document is ring-valued when every entry evaluates into the ring; any
//! entry that stays a genuine fraction lifts the whole matrix to the
//! fraction field.

use serde::{Deserialize, Serialize};
use sysmith::{Frac, Mat, MatF, MatR, RingElem, RingTag};

use crate::expr::{parse_entry, ParsedEntry};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

/// A parsed document: a matrix over the ring or over its fraction field.
#[derive(Debug, Clone)]
pub enum LoadedMat {
    Ring(MatR),
    Frac(MatF),
}

impl LoadedMat {
    /// View over the fraction field, lifting ring entries if needed.
    pub fn to_frac(&self) -> MatF {
        match self {
            LoadedMat::Ring(m) => m.to_frac(),
            LoadedMat::Frac(m) => m.clone(),
        }
    }

    /// The ring-valued matrix, or an explanation of which commands accept
    /// fraction entries.
    pub fn require_ring(&self, what: &str) -> Result<&MatR, String> {
        match self {
            LoadedMat::Ring(m) => Ok(m),
            LoadedMat::Frac(_) => Err(format!(
                "{what} needs a ring-valued matrix, but the document has fraction entries"
            )),
        }
    }
}

pub fn tag_from_name(name: &str) -> Result<RingTag, String> {
    match name {
        "Z" => Ok(RingTag::Z),
        "Qz" => Ok(RingTag::Qz),
        "Rpr" => Ok(RingTag::Rpr),
        other => Err(format!(
            "unknown ring {other:?}; expected \"Z\", \"Qz\", or \"Rpr\""
        )),
    }
}

impl MatrixDoc {
    /// Parse every entry and decide whether the matrix lives in the ring or
    /// in its fraction field.
    pub fn load(&self) -> Result<LoadedMat, String> {
        let tag = tag_from_name(&self.ring)?;
        if self.rows == 0 || self.cols == 0 {
            return Err("matrix documents must have at least one row and column".to_string());
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(format!(
                "expected {} entries for a {}x{} matrix, found {}",
                self.rows * self.cols,
                self.rows,
                self.cols,
                self.entries.len()
            ));
        }
        let mut parsed = Vec::with_capacity(self.entries.len());
        for (k, text) in self.entries.iter().enumerate() {
            let value = parse_entry(text, tag)
                .map_err(|e| format!("entry {k} ({text:?}): {e}"))?;
            parsed.push(value);
        }
        if parsed.iter().all(ParsedEntry::is_ring) {
            let m = Mat::from_fn(tag, self.rows, self.cols, |i, j| {
                match &parsed[i * self.cols + j] {
                    ParsedEntry::Ring(e) => e.clone(),
                    ParsedEntry::Frac(_) => unreachable!(),
                }
            });
            Ok(LoadedMat::Ring(m))
        } else {
            let m = Mat::from_fn(tag, self.rows, self.cols, |i, j| {
                parsed[i * self.cols + j].to_frac()
            });
            Ok(LoadedMat::Frac(m))
        }
    }

    pub fn from_ring(m: &MatR) -> MatrixDoc {
        MatrixDoc {
            ring: m.ring().to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(RingElem::to_string).collect(),
        }
    }

    pub fn from_frac(m: &MatF) -> MatrixDoc {
        MatrixDoc {
            ring: m.ring().to_string(),
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().map(Frac::to_string).collect(),
        }
    }
}

/// Input for the converse direction: the two canonical chains, as fraction
/// strings in canonical order.  The state dimension is the length of
/// `sm_a`; the transfer rank is however much `sm_p` goes beyond it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainsDoc {
    pub ring: String,
    pub sm_a: Vec<String>,
    pub sm_p: Vec<String>,
}

impl ChainsDoc {
    pub fn load(&self) -> Result<(Vec<Frac>, Vec<Frac>, RingTag), String> {
        let tag = tag_from_name(&self.ring)?;
        let parse_list = |name: &str, list: &[String]| -> Result<Vec<Frac>, String> {
            list.iter()
                .enumerate()
                .map(|(k, text)| {
                    parse_entry(text, tag)
                        .map(|v| v.to_frac())
                        .map_err(|e| format!("{name}[{k}] ({text:?}): {e}"))
                })
                .collect()
        };
        let sm_a = parse_list("sm_a", &self.sm_a)?;
        let sm_p = parse_list("sm_p", &self.sm_p)?;
        if sm_p.len() < sm_a.len() {
            return Err("sm_p must be at least as long as sm_a".to_string());
        }
        Ok((sm_a, sm_p, tag))
    }
}

pub fn elem_strings(list: &[RingElem]) -> Vec<String> {
    list.iter().map(RingElem::to_string).collect()
}

pub fn frac_strings(list: &[Frac]) -> Vec<String> {
    list.iter().map(Frac::to_string).collect()
}
