//! JSON encoding of matrices: a flat row-major list of `[re, im]` pairs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};

pub fn encode_entries(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.as_slice().iter().map(|z| [z.re, z.im]).collect()
}

pub fn decode_entries(dim: usize, entries: &[[f64; 2]]) -> Result<ComplexMatrix> {
    if entries.len() != dim * dim {
        return Err(Error::InvalidInput(format!(
            "expected {} entries for a {dim}x{dim} matrix, found {}",
            dim * dim,
            entries.len()
        )));
    }
    ComplexMatrix::from_row_major(dim, entries.iter().map(|[re, im]| C64::new(*re, *im)).collect())
}

/// Infers the dimension from the entry count.
pub fn decode_square(entries: &[[f64; 2]]) -> Result<ComplexMatrix> {
    let dim = (entries.len() as f64).sqrt().round() as usize;
    decode_entries(dim, entries)
}

/// `#[serde(with = "qrf_core::json::flat")]` for `ComplexMatrix` fields.
pub mod flat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &ComplexMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        encode_entries(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ComplexMatrix, D::Error> {
        let entries = Vec::<[f64; 2]>::deserialize(d)?;
        decode_square(&entries).map_err(serde::de::Error::custom)
    }
}
