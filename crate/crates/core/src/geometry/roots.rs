use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexRational, LaurentSeries};
use crate::error::EngineError;

/// Positive roots as integer covectors on the maximal torus, plus `|W|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootSystemData {
    #[serde(rename = "positive")]
    pub positive_roots: Vec<Vec<i64>>,
    pub weyl_order: u64,
}

impl RootSystemData {
    pub fn trivial() -> Self {
        RootSystemData { positive_roots: Vec::new(), weyl_order: 1 }
    }

    /// SU(2) with torus `diag(y, −y)`: one positive root `α(y) = 2y`.
    pub fn su2() -> Self {
        RootSystemData { positive_roots: vec![vec![2]], weyl_order: 2 }
    }

    /// U(2) with torus `diag(y₁, y₂)`: one positive root `y₁ − y₂`.
    pub fn u2() -> Self {
        RootSystemData { positive_roots: vec![vec![1, -1]], weyl_order: 2 }
    }

    pub fn reference(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "su2" | "su(2)" => Some(Self::su2()),
            "u2" | "u(2)" => Some(Self::u2()),
            "trivial" => Some(Self::trivial()),
            _ => None,
        }
    }

    pub fn check_rank(&self, rank: usize) -> Result<(), EngineError> {
        for (index, r) in self.positive_roots.iter().enumerate() {
            if r.len() != rank {
                return Err(EngineError::RootRank { index, got: r.len(), rank });
            }
        }
        Ok(())
    }

    /// `w(y) = ∏_{α∈Δ⁺} α(y)`.
    pub fn weyl_product<S: AsRef<str>>(&self, vars: &[S]) -> Result<LaurentSeries, EngineError> {
        self.check_rank(vars.len())?;
        let mut w = LaurentSeries::one(vars);
        for root in &self.positive_roots {
            w = w.mul(&linear_form(vars, root))?;
        }
        Ok(w)
    }

    /// The inserted polynomial `w(y)⁴`.
    pub fn weyl_insertion<S: AsRef<str>>(&self, vars: &[S]) -> Result<LaurentSeries, EngineError> {
        Ok(self.weyl_product(vars)?.pow(4)?)
    }
}

/// `Σ_a c_a y_a` as an exact polynomial.
pub fn linear_form<S: AsRef<str>>(vars: &[S], coeffs: &[i64]) -> LaurentSeries {
    let k = vars.len();
    LaurentSeries::from_terms(
        vars,
        coeffs.iter().enumerate().map(|(a, &c)| {
            let mut e = vec![0; k];
            e[a] = 1;
            (e, ComplexRational::from(c))
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_insertion_is_16_y4() {
        let w4 = RootSystemData::su2().weyl_insertion(&["y"]).unwrap();
        assert_eq!(w4.render(), "(16,0) y^4");
    }

    #[test]
    fn trivial_insertion_is_one() {
        let w4 = RootSystemData::trivial().weyl_insertion(&["y1", "y2"]).unwrap();
        assert_eq!(w4, LaurentSeries::one(&["y1", "y2"]));
    }

    #[test]
    fn single_root_on_rank_two() {
        let r = RootSystemData { positive_roots: vec![vec![1, 0]], weyl_order: 1 };
        assert_eq!(r.weyl_insertion(&["y1", "y2"]).unwrap().render(), "(1,0) y1^4 y2^0");
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let err = RootSystemData::u2().weyl_product(&["y"]).unwrap_err();
        assert_eq!(err, EngineError::RootRank { index: 0, got: 2, rank: 1 });
    }
}
