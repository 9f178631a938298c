//! On-disk module description.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;

use super::FdModule;

/// `action[i]` is the matrix of the `i`-th algebra basis element.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: String,
    pub dim: usize,
    pub action: Vec<Vec<Vec<u64>>>,
}

impl ModuleFile {
    pub fn from_module(name: Option<String>, m: &FdModule) -> Self {
        ModuleFile {
            name,
            algebra: m.algebra().name().to_string(),
            dim: m.dim(),
            action: m
                .actions()
                .iter()
                .map(|a| {
                    a.to_rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(u64::from).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// Builds the module over `algebra`, checking residues and the module law.
    pub fn to_module(&self, algebra: &Arc<Algebra>) -> Result<FdModule> {
        let field = algebra.field();
        let action = self
            .action
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                if rows.len() != self.dim {
                    return Err(Error::InvalidModule(format!(
                        "action {i} has {} rows, expected {}",
                        rows.len(),
                        self.dim
                    )));
                }
                FieldMatrix::from_rows_with_cols(field, rows, self.dim)
                    .map_err(|e| Error::InvalidModule(format!("action {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FdModule::new(algebra.clone(), self.dim, action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::test_support::*;

    #[test]
    fn roundtrip_and_law_diagnostic() {
        let a = a2(2);
        for m in small_probes(&a) {
            let file = ModuleFile::from_module(None, &m);
            let json = serde_json::to_string(&file).unwrap();
            let back: ModuleFile = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_module(&a).unwrap(), m);
        }
        // a 1-dimensional module where both idempotents act as 1
        let bad = ModuleFile {
            name: None,
            algebra: "A2".into(),
            dim: 1,
            action: vec![vec![vec![1]], vec![vec![1]], vec![vec![0]]],
        };
        let err = bad.to_module(&a).unwrap_err().to_string();
        assert!(err.contains("unit") || err.contains("pair"), "{err}");

        let short = ModuleFile {
            name: None,
            algebra: "A2".into(),
            dim: 1,
            action: vec![vec![vec![1]], vec![vec![0]]],
        };
        assert!(short.to_module(&a).is_err());
    }

    #[test]
    fn law_failure_names_pair() {
        let a = k2x2();
        // x acting as 1 violates x * x = 0
        let bad = ModuleFile {
            name: None,
            algebra: "k2x2".into(),
            dim: 1,
            action: vec![vec![vec![1]], vec![vec![1]]],
        };
        let err = bad.to_module(&a).unwrap_err().to_string();
        assert!(err.contains("(1, 1)"), "{err}");
    }
}
