//! Matrix wire format: row-major nested arrays of `[re, im]` pairs.

use chanforms::{Complex64, ComplexMatrix};
use serde::{Deserialize, Serialize};

use crate::document::ParseError;

/// One complex number as `[re, im]`.
pub type WireComplex = [f64; 2];

pub fn complex_to_wire(z: Complex64) -> WireComplex {
    [z.re, z.im]
}

/// A matrix as it appears on the wire. Shape is implied by nesting and is only
/// checked when converting to a [`ComplexMatrix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WireMatrix(pub Vec<Vec<WireComplex>>);

impl WireMatrix {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        WireMatrix(
            (0..m.rows())
                .map(|i| m.row(i).iter().copied().map(complex_to_wire).collect())
                .collect(),
        )
    }

    /// `(rows, cols)` when every row has the same length.
    pub fn shape(&self) -> Option<(usize, usize)> {
        let cols = self.0.first().map_or(0, Vec::len);
        self.0
            .iter()
            .all(|r| r.len() == cols)
            .then_some((self.0.len(), cols))
    }

    /// `field` names the document location used in error messages.
    pub fn to_matrix(&self, field: &str) -> Result<ComplexMatrix, ParseError> {
        let (rows, cols) = self.shape().ok_or_else(|| ParseError::BadMatrixShape {
            field: field.to_string(),
            detail: "rows have different lengths".into(),
        })?;
        if rows == 0 || cols == 0 {
            return Err(ParseError::BadMatrixShape {
                field: field.to_string(),
                detail: "matrix is empty".into(),
            });
        }
        for (i, row) in self.0.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !z[0].is_finite() || !z[1].is_finite() {
                    return Err(ParseError::NonFiniteEntry {
                        field: field.to_string(),
                        row: i,
                        col: j,
                    });
                }
            }
        }
        let data = self
            .0
            .iter()
            .flatten()
            .map(|z| Complex64::new(z[0], z[1]))
            .collect();
        Ok(ComplexMatrix::from_vec(rows, cols, data).expect("shape and finiteness checked"))
    }
}

impl From<&ComplexMatrix> for WireMatrix {
    fn from(m: &ComplexMatrix) -> Self {
        WireMatrix::from_matrix(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, -(j as f64) * 0.5));
        let w = WireMatrix::from_matrix(&m);
        let text = serde_json::to_string(&w).unwrap();
        assert_eq!(
            text,
            "[[[0.0,-0.0],[0.0,-0.5],[0.0,-1.0]],[[1.0,-0.0],[1.0,-0.5],[1.0,-1.0]]]"
        );
        let back: WireMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix("m").unwrap(), m);
    }

    #[test]
    fn ragged_and_empty_rejected() {
        let ragged = WireMatrix(vec![vec![[1.0, 0.0]], vec![]]);
        assert!(matches!(
            ragged.to_matrix("m"),
            Err(ParseError::BadMatrixShape { .. })
        ));
        assert!(matches!(
            WireMatrix(vec![]).to_matrix("m"),
            Err(ParseError::BadMatrixShape { .. })
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let w = WireMatrix(vec![vec![[1.0, 0.0], [f64::NAN, 0.0]]]);
        assert_eq!(
            w.to_matrix("m"),
            Err(ParseError::NonFiniteEntry {
                field: "m".into(),
                row: 0,
                col: 1
            })
        );
    }
}
