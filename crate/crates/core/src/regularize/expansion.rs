use serde::{Deserialize, Serialize};

use crate::basis::BasisFamily;
use crate::error::{Error, Result};

/// Which side of the operator an expansion lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// `G(x) = Σ ξ_j u_j(x)`.
    Data,
    /// `f̂(x) = Σ c_j v_j(x)`, or `Σ ξ_j u_j'(x)` for the Legendre family.
    Source,
}

/// A finite closed-form expansion in one of the basis families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    #[serde(flatten)]
    pub family: BasisFamily,
    pub role: Role,
    /// `(index, coefficient)` pairs, indices from 1 and strictly increasing.
    pub coefficients: Vec<(usize, f64)>,
}

impl Expansion {
    pub fn new(family: BasisFamily, role: Role, mut coefficients: Vec<(usize, f64)>) -> Result<Self> {
        family.validate()?;
        coefficients.sort_by_key(|&(j, _)| j);
        if coefficients.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("duplicate expansion index"));
        }
        if let Some(&(j, c)) = coefficients.iter().find(|(j, c)| *j == 0 || !c.is_finite()) {
            return Err(Error::domain(format!("invalid coefficient {c} at index {j}")));
        }
        Ok(Self {
            family,
            role,
            coefficients,
        })
    }

    /// Largest index present, 0 for the empty expansion.
    pub fn max_index(&self) -> usize {
        self.coefficients.last().map_or(0, |&(j, _)| j)
    }

    pub fn coefficient(&self, j: usize) -> f64 {
        self.coefficients
            .binary_search_by_key(&j, |&(i, _)| i)
            .map_or(0.0, |k| self.coefficients[k].1)
    }

    /// Indices whose coefficient exceeds `tol` in magnitude.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.coefficients
            .iter()
            .filter(|(_, c)| c.abs() > tol)
            .map(|&(j, _)| j)
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.max_index();
        if n == 0 {
            return 0.0;
        }
        let row = match self.role {
            Role::Data => self.family.data_row(n, x),
            Role::Source => self.family.source_row(n, x),
        };
        self.coefficients.iter().map(|&(j, c)| c * row[j - 1]).sum()
    }

    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }
}
