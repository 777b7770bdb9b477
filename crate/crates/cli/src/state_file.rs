//! On-disk JSON representation of a two-mode Gaussian state: either a full
//! 4x4 covariance matrix with its declared quadrature ordering, or a
//! standard-form quadruple.

use gaussian_bell::{CovarianceMatrix, StandardForm};
use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// The only quadrature ordering this tool reads or writes.
pub const ORDERING: &str = "qI,pI,qS,pS";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<[[f64; 4]; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_form: Option<StandardFormFields>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StandardFormFields {
    pub n: f64,
    pub m: f64,
    pub c1: f64,
    pub c2: f64,
}

impl StateFile {
    pub fn from_covariance(v: &CovarianceMatrix, meta: serde_json::Value) -> Self {
        let m = v.matrix();
        let mut rows = [[0.0; 4]; 4];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = m[(i, j)];
            }
        }
        Self {
            ordering: Some(ORDERING.to_string()),
            matrix: Some(rows),
            standard_form: None,
            meta: Some(meta),
        }
    }

    /// Validates the schema and the physics. Schema problems (both or
    /// neither representation, wrong ordering) are usage errors; an
    /// unphysical state is reported with the failing eigenvalue.
    pub fn into_state(self) -> Result<(CovarianceMatrix, StandardForm), CliError> {
        match (self.matrix, self.standard_form) {
            (Some(rows), None) => {
                match self.ordering.as_deref() {
                    Some(ORDERING) => {}
                    Some(other) => {
                        return Err(CliError::Usage(format!(
                            "unsupported ordering {other:?}; this tool only reads {ORDERING:?}"
                        )))
                    }
                    None => {
                        return Err(CliError::Usage(
                            "the ordering field is mandatory with a matrix".into(),
                        ))
                    }
                }
                let v = CovarianceMatrix::new(Matrix4::from_fn(|i, j| rows[i][j]))
                    .map_err(CliError::State)?;
                let (sf, _) = gaussian_bell::reduce(&v);
                Ok((v, sf))
            }
            (None, Some(f)) => {
                if self.ordering.is_some() {
                    return Err(CliError::Usage(
                        "the ordering field only applies to the matrix form".into(),
                    ));
                }
                let sf = StandardForm::new(f.n, f.m, f.c1, f.c2)
                    .map_err(CliError::State)?
                    .canonicalized();
                let v = sf.to_covariance().map_err(CliError::State)?;
                Ok((v, sf))
            }
            (Some(_), Some(_)) => {
                Err(CliError::Usage("give either matrix or standard_form, not both".into()))
            }
            (None, None) => {
                Err(CliError::Usage("one of matrix or standard_form is required".into()))
            }
        }
    }
}

pub fn load(path: &std::path::Path) -> Result<StateFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{} is not a valid state file: {e}", path.display())))
}

pub fn save(path: &std::path::Path, file: &StateFile) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(file).expect("state files always serialize");
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
