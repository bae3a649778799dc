//! Free multi-differential commutative algebras over ℚ.
//!
//! A [`ModelConfig`] fixes the base variables and the number of derivations
//! and says whether the derivations commute. Elements are [`DiffPoly`]s:
//! finite ℚ-combinations of commutative [`Monomial`]s in differential
//! variables `w(x)`, where `w` is a [`DerWord`] of derivation indices and
//! `x` a base variable.

mod poly;
mod word;

pub use poly::DiffPoly;
pub use word::{monomial_order, DerWord, DiffVar, Monomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("num_operators must be at least 1")]
    NoOperators,
    #[error("a model needs at least one variable")]
    NoVariables,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable index {index} out of range for {count} variables")]
    VariableOutOfRange { index: usize, count: usize },
    #[error("operator index {index} out of range for {count} operators")]
    OperatorOutOfRange { index: usize, count: usize },
    #[error("operands belong to different models")]
    ModelMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModelConfig {
    commuting: bool,
    num_operators: usize,
    variables: Vec<String>,
}

impl ModelConfig {
    pub fn new(
        commuting: bool,
        num_operators: usize,
        variables: Vec<String>,
    ) -> Result<Self, AlgebraError> {
        if num_operators == 0 {
            return Err(AlgebraError::NoOperators);
        }
        if variables.is_empty() {
            return Err(AlgebraError::NoVariables);
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        Ok(ModelConfig {
            commuting,
            num_operators,
            variables,
        })
    }

    /// The model on `{x, y, z}` used by the kernel pipeline.
    pub fn xyz(commuting: bool, num_operators: usize) -> Result<Self, AlgebraError> {
        Self::new(
            commuting,
            num_operators,
            ["x", "y", "z"].iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn commuting(&self) -> bool {
        self.commuting
    }

    pub fn num_operators(&self) -> usize {
        self.num_operators
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Short human-readable description, e.g. `commuting, n=2, vars=[x,y,z]`.
    pub fn summary(&self) -> String {
        format!(
            "{}, n={}, vars=[{}]",
            if self.commuting {
                "commuting"
            } else {
                "noncommuting"
            },
            self.num_operators,
            self.variables.join(",")
        )
    }

    pub(crate) fn check_operator(&self, op: usize) -> Result<(), AlgebraError> {
        if op < self.num_operators {
            Ok(())
        } else {
            Err(AlgebraError::OperatorOutOfRange {
                index: op,
                count: self.num_operators,
            })
        }
    }

    pub(crate) fn check_variable(&self, var: usize) -> Result<(), AlgebraError> {
        if var < self.variables.len() {
            Ok(())
        } else {
            Err(AlgebraError::VariableOutOfRange {
                index: var,
                count: self.variables.len(),
            })
        }
    }
}
