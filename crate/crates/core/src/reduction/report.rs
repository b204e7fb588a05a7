use std::collections::BTreeMap;

use serde::Serialize;

use super::profile::ConventionProfile;
use crate::algebra::wire::{to_canonical_json, ComplexWire, SeriesWire};
use crate::algebra::{ComplexRational, LaurentSeries, SymbolicConstant};
use crate::geometry::Geometry;

/// One fixed point's coefficient before the prefactor.
#[derive(Clone, Debug, PartialEq)]
pub struct Contribution {
    pub name: String,
    pub selected: bool,
    pub coefficient: ComplexRational,
}

/// Exact result against the mollified-limit oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleComparison {
    pub oracle_value: FloatPair,
    pub exact_value: FloatPair,
    pub abs_err: f64,
    pub rel_err: f64,
    pub t_ladder: Vec<f64>,
    pub ladder_values: Vec<FloatPair>,
    pub extrapolation: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatPair {
    pub re: f64,
    pub im: f64,
}

impl From<(f64, f64)> for FloatPair {
    fn from((re, im): (f64, f64)) -> Self {
        FloatPair { re, im }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionReport {
    pub engine: String,
    pub geometry: Geometry,
    pub rank: usize,
    /// The extracted coefficient (divided by `|W|` for the Weyl wrapper).
    pub raw_coefficient: ComplexRational,
    pub prefactor: SymbolicConstant,
    pub degree_factor: i64,
    pub profile: ConventionProfile,
    pub variable_order: Vec<String>,
    pub contributions: Vec<Contribution>,
    pub inserted_polynomial: Option<LaurentSeries>,
    pub weyl_order: Option<u64>,
    pub oracle_comparison: Option<OracleComparison>,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct QuotientWire {
    symbolic: SymbolicConstant,
    coefficient: ComplexWire,
    numeric: FloatPair,
}

#[derive(Serialize)]
struct ProfileWire {
    name: String,
    parameters: BTreeMap<String, SymbolicConstant>,
}

#[derive(Serialize)]
struct ContributionWire {
    name: String,
    selected: bool,
    coefficient: ComplexWire,
}

#[derive(Serialize)]
struct ResultWire {
    geometry: Geometry,
    raw_coefficient: ComplexWire,
    prefactor: SymbolicConstant,
    degree_factor: i64,
    quotient_integral: QuotientWire,
    convention_profile: ProfileWire,
    variable_order: Vec<String>,
    contributions: Vec<ContributionWire>,
}

#[derive(Serialize)]
struct ReportWire {
    engine: String,
    #[serde(flatten)]
    result: ResultWire,
    #[serde(skip_serializing_if = "Option::is_none")]
    inserted_polynomial: Option<SeriesWire>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weyl_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_comparison: Option<OracleComparison>,
    notes: Vec<String>,
}

impl ReductionReport {
    /// `raw_coefficient / degree_factor`: the exact factor multiplying the
    /// symbolic prefactor in the quotient integral.
    pub fn quotient_coefficient(&self) -> ComplexRational {
        self.raw_coefficient.scale(&num::BigRational::new(1.into(), self.degree_factor.into()))
    }

    /// Floating value of the quotient integral.
    pub fn quotient_numeric(&self) -> (f64, f64) {
        self.prefactor.numeric_times(&self.quotient_coefficient())
    }

    fn result_wire(&self) -> ResultWire {
        ResultWire {
            geometry: self.geometry,
            raw_coefficient: (&self.raw_coefficient).into(),
            prefactor: self.prefactor.clone(),
            degree_factor: self.degree_factor,
            quotient_integral: QuotientWire {
                symbolic: self.prefactor.clone(),
                coefficient: (&self.quotient_coefficient()).into(),
                numeric: self.quotient_numeric().into(),
            },
            convention_profile: ProfileWire { name: self.profile.name.clone(), parameters: self.profile.parameters(self.rank) },
            variable_order: self.variable_order.clone(),
            contributions: self
                .contributions
                .iter()
                .map(|c| ContributionWire { name: c.name.clone(), selected: c.selected, coefficient: (&c.coefficient).into() })
                .collect(),
        }
    }

    /// Canonical JSON of the mathematical result only: no engine name,
    /// insertion metadata, oracle data or notes.
    pub fn result_json(&self) -> String {
        to_canonical_json(&self.result_wire())
    }

    /// Full canonical JSON report.
    pub fn to_json(&self) -> String {
        to_canonical_json(&ReportWire {
            engine: self.engine.clone(),
            result: self.result_wire(),
            inserted_polynomial: self.inserted_polynomial.as_ref().map(SeriesWire::from_series_standalone),
            weyl_order: self.weyl_order,
            oracle_comparison: self.oracle_comparison.clone(),
            notes: self.notes.clone(),
        })
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("engine".into(), self.engine.clone()),
            ("geometry".into(), self.geometry.as_str().into()),
            ("profile".into(), self.profile.name.clone()),
            ("variable order".into(), self.variable_order.join(",")),
            ("raw coefficient".into(), self.raw_coefficient.to_string()),
            ("prefactor".into(), self.prefactor.to_string()),
            ("degree factor".into(), self.degree_factor.to_string()),
            ("quotient integral".into(), format!("{} × {}", self.prefactor, self.quotient_coefficient())),
        ];
        let (re, im) = self.quotient_numeric();
        // `+ 0.0` normalizes negative zero for display
        let (re, im) = (re + 0.0, im + 0.0);
        rows.push(("numeric".into(), format!("{re:.12e} {im:+.12e}i")));
        if let Some(w) = self.weyl_order {
            rows.push(("|W|".into(), w.to_string()));
        }
        if let Some(p) = &self.inserted_polynomial {
            rows.push(("inserted".into(), p.render().replace('\n', " + ")));
        }
        for c in &self.contributions {
            let tag = if c.selected { "" } else { " (not selected)" };
            rows.push((format!("  {}{tag}", c.name), c.coefficient.to_string()));
        }
        if let Some(o) = &self.oracle_comparison {
            rows.push(("oracle".into(), format!("{:.12e} {:+.12e}i", o.oracle_value.re, o.oracle_value.im)));
            rows.push(("oracle rel_err".into(), format!("{:.3e}", o.rel_err)));
        }
        for n in &self.notes {
            rows.push(("note".into(), n.clone()));
        }
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}
