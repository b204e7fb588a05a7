//! The fixed-point sum `Σ_F α_F(y) / e_F(y)`.
//!
//! Multivariate sums are expanded in *nested coordinates*: with the variable
//! order `y₁, …, y_k` (the first variable is extracted first, so it is the
//! "smallest"), substitute `y_i = u_i·u_{i+1}⋯u_k`. A monomial `y^t` becomes
//! `u^s` with `s_j = t₁ + … + t_j`. Every nonzero linear form `Σ a_i y_i`
//! becomes a monomial times a unit power series in `u`, so each Euler class
//! is invertible by [`LaurentSeries::invert_to`] and box truncation in `u` is
//! exact. The iterated coefficient `Coeff_{y₁^{t₁}} … Coeff_{y_k^{t_k}}` is
//! the single coefficient of `u^{s(t)}`. For one variable the map is the
//! identity.

use std::sync::Arc;

use num::BigRational;

use crate::algebra::{ComplexRational, LaurentSeries, EXACT};
use crate::error::{AlgebraError, AtlasError, EngineError};
use crate::geometry::{linear_form, FixedPointAtlas, FixedPointDatum, PointMode};

/// `y^t ↦ u^s` with `s_j = Σ_{i≤j} t_i`.
pub fn nested_exponent(t: &[i64]) -> Vec<i64> {
    t.iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Inverse of [`nested_exponent`].
pub fn unnested_exponent(s: &[i64]) -> Vec<i64> {
    s.iter().enumerate().map(|(j, &x)| if j == 0 { x } else { x - s[j - 1] }).collect()
}

/// Rewrites a series in nested coordinates. Rank one is the identity;
/// otherwise the input must be exact (a Laurent polynomial).
pub fn to_nested(f: &LaurentSeries) -> Result<LaurentSeries, AlgebraError> {
    if f.vars().len() <= 1 {
        return Ok(f.clone());
    }
    if !f.is_exact() {
        return Err(AlgebraError::NotInvertible(
            "only exact series can be moved to nested coordinates when k > 1".into(),
        ));
    }
    Ok(LaurentSeries::from_terms(f.vars(), f.terms().map(|(e, c)| (nested_exponent(e), c.clone()))))
}

/// Terms of a nested-coordinate series, mapped back to `y` exponents.
pub fn from_nested_terms(f: &LaurentSeries) -> Vec<(Vec<i64>, ComplexRational)> {
    let mut out: Vec<_> = f.terms().map(|(s, c)| (unnested_exponent(s), c.clone())).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `e_F(y) = ∏_j ⟨w_j, y⟩`, an exact polynomial in `vars`.
pub fn euler_class<S: AsRef<str>>(point: &FixedPointDatum, vars: &[S]) -> Result<LaurentSeries, EngineError> {
    let mut e = LaurentSeries::one(vars);
    for (index, w) in point.weights.iter().enumerate() {
        if w.iter().all(|&x| x == 0) {
            return Err(AtlasError::ZeroDivisor { point: point.name.clone(), index }.into());
        }
        if w.len() != vars.len() {
            return Err(AtlasError::FixedPoint {
                point: point.name.clone(),
                field: "weights".into(),
                message: format!("weight {index} has length {}, expected {}", w.len(), vars.len()),
            }
            .into());
        }
        e = e.mul(&linear_form(vars, w))?;
    }
    Ok(e)
}

/// Exponent of the leading monomial of `e_F` in nested coordinates.
pub fn nested_lead(point: &FixedPointDatum) -> Vec<i64> {
    let k = point.weights.first().map_or(0, |w| w.len());
    let mut m = vec![0i64; k];
    for w in &point.weights {
        if let Some(top) = w.iter().rposition(|&x| x != 0) {
            for slot in &mut m[top..] {
                *slot += 1;
            }
        }
    }
    m
}

type Custom = Arc<dyn Fn(&FixedPointDatum) -> LaurentSeries + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    None,
    /// `exp(i Σ_ν μ_ν y_ν)`
    Symplectic,
    /// `exp(i Σ_ν |μ⃗_ν|² y_ν²)`
    Hyperkahler,
}

/// The numerator `α_F(y)` supplied at each fixed point: an optional phase,
/// optionally `η_F`, an optional fixed polynomial insertion and an optional
/// per-point polynomial.
#[derive(Clone)]
pub struct Integrand {
    phase: Phase,
    eta: bool,
    insertion: Option<LaurentSeries>,
    custom: Option<Custom>,
}

impl std::fmt::Debug for Integrand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Integrand")
            .field("phase", &self.phase)
            .field("eta", &self.eta)
            .field("insertion", &self.insertion)
            .field("custom", &self.custom.is_some())
            .finish()
    }
}

impl Integrand {
    pub fn unit() -> Self {
        Integrand { phase: Phase::None, eta: false, insertion: None, custom: None }
    }

    pub fn symplectic_phase() -> Self {
        Integrand { phase: Phase::Symplectic, ..Self::unit() }
    }

    pub fn hyperkahler_phase() -> Self {
        Integrand { phase: Phase::Hyperkahler, ..Self::unit() }
    }

    /// A per-point polynomial numerator, e.g. for linearity checks.
    pub fn polynomial<F>(f: F) -> Self
    where
        F: Fn(&FixedPointDatum) -> LaurentSeries + Send + Sync + 'static,
    {
        Integrand { custom: Some(Arc::new(f)), ..Self::unit() }
    }

    pub fn with_eta(mut self) -> Self {
        self.eta = true;
        self
    }

    pub fn with_insertion(mut self, poly: LaurentSeries) -> Self {
        self.insertion = Some(poly);
        self
    }

    fn phase_exponent(&self, point: &FixedPointDatum, vars: &[String]) -> Result<Option<LaurentSeries>, EngineError> {
        let k = vars.len();
        let unit_in = |v: usize, pow: i64, c: BigRational| {
            let mut e = vec![0; k];
            e[v] = pow;
            (e, ComplexRational::imag(c))
        };
        let terms: Vec<_> = match self.phase {
            Phase::None => return Ok(None),
            Phase::Symplectic => {
                if point.moment.len() != k {
                    return Err(missing(point, "moment"));
                }
                point.moment.iter().enumerate().map(|(v, m)| unit_in(v, 1, m.clone())).collect()
            }
            Phase::Hyperkahler => (0..k)
                .map(|v| point.hk_norm_sq(v).map(|m| unit_in(v, 2, m)).ok_or_else(|| missing(point, "moment_hk")))
                .collect::<Result<_, _>>()?,
        };
        Ok(Some(LaurentSeries::from_terms(vars, terms)))
    }

    /// `α_F` in nested coordinates, exact in the box `bounds`.
    pub fn numerator(&self, point: &FixedPointDatum, vars: &[String], bounds: &[i64]) -> Result<LaurentSeries, EngineError> {
        let mut poly = LaurentSeries::one(vars);
        if self.eta {
            poly = poly.mul(&point.eta)?;
        }
        if let Some(ins) = &self.insertion {
            poly = poly.mul(ins)?;
        }
        if let Some(f) = &self.custom {
            poly = poly.mul(&f(point))?;
        }
        if !poly.is_polynomial() {
            return Err(AlgebraError::NegativeExponent.into());
        }
        let poly = to_nested(&poly)?.truncate(bounds);
        match self.phase_exponent(point, vars)? {
            None => Ok(poly),
            Some(p) => {
                let phase = LaurentSeries::exp_series_to(&to_nested(&p)?, bounds)?;
                Ok(poly.mul(&phase)?)
            }
        }
    }
}

fn missing(point: &FixedPointDatum, field: &str) -> EngineError {
    AtlasError::FixedPoint { point: point.name.clone(), field: field.into(), message: "missing or wrong length".into() }
        .into()
}

/// One fixed point's share of the localized sum.
#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub name: String,
    pub selected: bool,
    /// Nested-coordinate series (zero when the point is not selected).
    pub series: LaurentSeries,
}

/// The localized integrand, in nested coordinates over `vars`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedSum {
    pub vars: Vec<String>,
    pub total: LaurentSeries,
    pub summands: Vec<Summand>,
}

impl LocalizedSum {
    /// Iterated coefficient of `y^t` in the declared order.
    pub fn coeff(&self, t: &[i64]) -> Result<ComplexRational, AlgebraError> {
        self.total.coeff(&nested_exponent(t))
    }

    pub fn summand_coeff(&self, index: usize, t: &[i64]) -> Result<ComplexRational, AlgebraError> {
        self.summands[index].series.coeff(&nested_exponent(t))
    }

    /// Canonical text rendering in the original `y` variables.
    pub fn render(&self) -> String {
        if self.vars.len() <= 1 {
            return self.total.render();
        }
        let terms = from_nested_terms(&self.total);
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = self.vars.iter().zip(e).map(|(v, x)| format!("{v}^{x}")).collect();
                format!("{} {}", c, mono.join(" "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Localizes over every fixed point, exact through `y`-exponent `target`
/// (taken in nested coordinates: the box `s ≤ nested_exponent(target)`).
pub fn localize(atlas: &FixedPointAtlas, integrand: &Integrand, target: &[i64]) -> Result<LocalizedSum, EngineError> {
    localize_selected(atlas, integrand, target, |_| true)
}

/// As [`localize`], summing only the fixed points accepted by `select`.
pub fn localize_selected<P>(
    atlas: &FixedPointAtlas,
    integrand: &Integrand,
    target: &[i64],
    select: P,
) -> Result<LocalizedSum, EngineError>
where
    P: Fn(&FixedPointDatum) -> bool,
{
    let vars = atlas.variable_order.clone();
    if target.len() != vars.len() {
        return Err(AlgebraError::ExponentArity { expected: vars.len(), got: target.len() }.into());
    }
    let bounds = nested_exponent(target);
    let mut total = LaurentSeries::zero(&vars).truncate(&bounds);
    let mut summands = Vec::with_capacity(atlas.fixed_points.len());
    for point in &atlas.fixed_points {
        let selected = select(point);
        let series = if selected {
            summand(point, &vars, integrand, &bounds)
                .map_err(|e| at_point(point, e))?
        } else {
            LaurentSeries::zero(&vars).truncate(&bounds)
        };
        total = total.add(&series)?;
        summands.push(Summand { name: point.name.clone(), selected, series });
    }
    Ok(LocalizedSum { vars, total, summands })
}

fn at_point(point: &FixedPointDatum, e: EngineError) -> EngineError {
    match e {
        EngineError::Algebra(source) => EngineError::AtFixedPoint { point: point.name.clone(), source },
        other => other,
    }
}

fn summand(point: &FixedPointDatum, vars: &[String], integrand: &Integrand, bounds: &[i64]) -> Result<LaurentSeries, EngineError> {
    match point.mode {
        PointMode::Raw => {
            let raw = point.raw.as_ref().ok_or_else(|| missing(point, "raw"))?;
            Ok(to_nested(raw)?.truncate(bounds))
        }
        PointMode::Structured => {
            let e = to_nested(&euler_class(point, vars)?)?;
            let lead = nested_lead(point);
            let num_bounds: Vec<i64> =
                bounds.iter().zip(&lead).map(|(b, m)| if *b == EXACT { EXACT } else { b + m }).collect();
            let inv = e.invert_to(bounds)?;
            let num = integrand.numerator(point, vars, &num_bounds)?;
            Ok(num.mul(&inv)?)
        }
    }
}
