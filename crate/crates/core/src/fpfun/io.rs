//! On-disk functor description: a variance and a presenting morphism between
//! named modules.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactla::FieldMatrix;
use crate::modcat::{FdModule, ModMorphism};

use super::{FpFunctor, Variance};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentingRef {
    pub source: String,
    pub target: String,
    /// `dim target` rows of `dim source` residues.
    pub matrix: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub variance: Variance,
    pub presenting: PresentingRef,
}

impl FunctorFile {
    pub fn from_functor(f: &FpFunctor, source: &str, target: &str) -> Self {
        let m = f.presentation().matrix();
        FunctorFile {
            variance: f.variance(),
            presenting: PresentingRef {
                source: source.to_string(),
                target: target.to_string(),
                matrix: m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(u64::from).collect())
                    .collect(),
            },
        }
    }

    /// Builds the functor, looking module names up with `resolve`.
    pub fn to_functor(&self, resolve: impl Fn(&str) -> Result<FdModule>) -> Result<FpFunctor> {
        let x = resolve(&self.presenting.source)?;
        let y = resolve(&self.presenting.target)?;
        let m = FieldMatrix::from_rows_with_cols(x.field(), &self.presenting.matrix, x.dim())?;
        let f = ModMorphism::new(x, y, m)?;
        Ok(FpFunctor::new(self.variance, f))
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use crate::error::Error;
    use crate::modcat::regular_module;

    #[test]
    fn roundtrip() {
        let f = x_functor();
        let file = FunctorFile::from_functor(&f, "L", "L");
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"variance\":\"co\""));
        let back: FunctorFile = serde_json::from_str(&json).unwrap();
        let l = regular_module(f.algebra());
        let resolve = |name: &str| {
            if name == "L" {
                Ok(l.clone())
            } else {
                Err(Error::UnresolvedName(name.into()))
            }
        };
        assert_eq!(back.to_functor(resolve).unwrap(), f);
        let mut bad = back.clone();
        bad.presenting.target = "Q".into();
        assert!(matches!(bad.to_functor(resolve), Err(Error::UnresolvedName(_))));
        // not linear: the identity matrix on x but swapped basis
        let mut nonlinear = back;
        nonlinear.presenting.matrix = vec![vec![0, 1], vec![1, 0]];
        assert!(nonlinear.to_functor(resolve).is_err());
    }
}
