//! The JSON interchange format for complexes.

use ncomplex::{Matrix, NComplex, PrimeField, Violation};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A complex on disk. Fields are declared in sorted key order, so the
/// compact serialization is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    #[serde(rename = "N")]
    pub order: usize,
    pub dims: Vec<usize>,
    pub lo: i64,
    /// `maps[k]` leaves degree `lo + k`, as a list of rows.
    pub maps: Vec<Vec<Vec<u64>>>,
    pub p: u64,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("not a complex document: {e}")))
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_complex(m: &NComplex) -> Self {
        ComplexDocument {
            order: m.order(),
            dims: m.dims().to_vec(),
            lo: m.lo(),
            maps: m
                .maps()
                .iter()
                .map(|d| {
                    d.to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(u64::from).collect())
                        .collect()
                })
                .collect(),
            p: m.field().modulus() as u64,
        }
    }

    /// Builds the complex without checking the nilpotency law.
    ///
    /// Bad moduli, orders and entries are malformed input; maps that do not
    /// fit the dimensions are reported as violations.
    pub fn to_complex(&self) -> Result<NComplex, CliError> {
        let field = PrimeField::new(self.p).map_err(|e| CliError::Malformed(e.to_string()))?;
        if self.order < 2 {
            return Err(CliError::Malformed(format!("N must be at least 2, got {}", self.order)));
        }
        for (k, map) in self.maps.iter().enumerate() {
            for (r, row) in map.iter().enumerate() {
                if let Some(&v) = row.iter().find(|&&v| v >= self.p) {
                    return Err(CliError::Malformed(format!(
                        "entry {v} in row {r} of map {k} is not below p = {}",
                        self.p
                    )));
                }
            }
        }

        let expected = self.dims.len().saturating_sub(1);
        if self.maps.len() != expected {
            return Err(CliError::Invalid(Violation::MapCount {
                expected,
                found: self.maps.len(),
            }));
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for (k, map) in self.maps.iter().enumerate() {
            let want = (self.dims[k + 1], self.dims[k]);
            let ragged = map.iter().find(|row| row.len() != want.1);
            if map.len() != want.0 || ragged.is_some() {
                let cols = ragged.or(map.first()).map_or(want.1, |row| row.len());
                return Err(CliError::Invalid(Violation::Shape {
                    degree: self.lo + k as i64,
                    expected: want,
                    found: (map.len(), cols),
                }));
            }
            let data = map.iter().flatten().map(|&v| v as u32).collect();
            maps.push(Matrix::new(field, want.0, want.1, data)?);
        }
        Ok(NComplex::from_parts(field, self.order, self.lo, self.dims.clone(), maps)?)
    }
}
