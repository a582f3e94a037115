use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CoefficientSet, Convention};
use crate::error::{Error, Result};

/// On-disk coefficient document (JSON). Complex numbers are `[re, im]` pairs.
///
/// ```json
/// { "period": 4,
///   "alpha": [[0, 2], [0, 0], [0, -2], [0, 0]],
///   "beta":  [[1, 0], [1, 0], [1, 0], [1, 0]],
///   "convention": "recurrence-minus" }
/// ```
///
/// `beta` defaults to all ones and `convention` to `recurrence-minus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub period: usize,
    pub alpha: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Complex64>>,
    #[serde(default)]
    pub convention: Convention,
}

impl CoefficientFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("coefficient file: {e}")))
    }

    pub fn to_coefficients(&self) -> Result<CoefficientSet<f64>> {
        let beta = self
            .beta
            .clone()
            .unwrap_or_else(|| vec![Complex64::new(1.0, 0.0); self.alpha.len()]);
        if self.alpha.len() != self.period || beta.len() != self.period {
            return Err(Error::Input(format!(
                "period is {} but alpha has {} and beta {} entries",
                self.period,
                self.alpha.len(),
                beta.len()
            )));
        }
        CoefficientSet::from_convention(self.alpha.clone(), beta, self.convention)
    }

    pub fn from_coefficients(set: &CoefficientSet<f64>) -> Self {
        Self {
            period: set.period(),
            alpha: set.alpha().to_vec(),
            beta: Some(set.beta().to_vec()),
            convention: Convention::RecurrenceMinus,
        }
    }
}
