use num::{BigRational, Signed};

use super::report::{Contribution, ReductionReport};
use super::{ReductionContext, ReductionEngine};
use crate::algebra::{ComplexRational, LaurentSeries};
use crate::error::{AlgebraError, AtlasError, EngineError};
use crate::geometry::{FixedPointAtlas, FixedPointDatum, Geometry, GroupKind, PointMode, RespectedVerdict};
use crate::localization::{euler_class, localize_selected, Integrand};

fn unsupported(engine: &str, reason: impl Into<String>) -> EngineError {
    EngineError::Unsupported { engine: engine.to_string(), reason: reason.into() }
}

/// Validation shared by every engine; returns the atlas in extraction order.
fn prepare(engine: &str, atlas: &FixedPointAtlas, ctx: &ReductionContext, geometry: Geometry) -> Result<FixedPointAtlas, EngineError> {
    atlas.validate()?;
    if atlas.geometry != geometry {
        return Err(unsupported(engine, format!("needs a {} atlas, got {}", geometry.as_str(), atlas.geometry.as_str())));
    }
    if let Some(RespectedVerdict::Violation { codim_l, limit }) = atlas.validate_respected() {
        return Err(AtlasError::Invariant(format!(
            "submanifold codimension {codim_l} exceeds the respected bound {limit}"
        ))
        .into());
    }
    if atlas.fixed_points.is_empty() {
        return Err(EngineError::NoFixedPoints);
    }
    match &ctx.order {
        Some(order) => atlas.reordered(order),
        None => Ok(atlas.clone()),
    }
}

struct ResiduePlan<'a> {
    engine: &'a str,
    integrand: Integrand,
    /// Exponent extracted in every variable (−1 symplectic, −2 hyperkähler).
    target: i64,
    prefactor: crate::algebra::SymbolicConstant,
    degree_factor: i64,
}

fn run<P>(atlas: &FixedPointAtlas, ctx: &ReductionContext, plan: ResiduePlan<'_>, select: P) -> Result<ReductionReport, EngineError>
where
    P: Fn(&FixedPointDatum) -> bool,
{
    let k = atlas.rank();
    let target = vec![plan.target; k];
    let sum = localize_selected(atlas, &plan.integrand, &target, select)?;
    let raw = sum.coeff(&target)?;
    let contributions = sum
        .summands
        .iter()
        .enumerate()
        .map(|(i, s)| Ok(Contribution { name: s.name.clone(), selected: s.selected, coefficient: sum.summand_coeff(i, &target)? }))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    if plan.degree_factor < 1 {
        return Err(EngineError::Internal(format!("degree factor {} is not positive", plan.degree_factor)));
    }
    Ok(ReductionReport {
        engine: plan.engine.to_string(),
        geometry: atlas.geometry,
        rank: k,
        raw_coefficient: raw,
        prefactor: plan.prefactor,
        degree_factor: plan.degree_factor,
        profile: ctx.profile.clone(),
        variable_order: atlas.variable_order.clone(),
        contributions,
        inserted_polynomial: None,
        weyl_order: None,
        oracle_comparison: None,
        notes: volume_note(atlas, ctx),
    })
}

fn volume_note(atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Vec<String> {
    let profile_vol = ctx.profile.vol_torus(atlas.rank());
    if atlas.group.kind != GroupKind::CompactWithTorus && atlas.group.vol != profile_vol {
        vec![format!(
            "atlas declares vol G = {}; profile '{}' uses (vol S¹)^k = {}",
            atlas.group.vol, ctx.profile.name, profile_vol
        )]
    } else {
        Vec::new()
    }
}

fn all_positive(p: &FixedPointDatum) -> bool {
    !p.moment.is_empty() && p.moment.iter().all(|m| m.is_positive())
}

pub struct SymplecticCircle;

impl ReductionEngine for SymplecticCircle {
    fn name(&self) -> &'static str {
        "symplectic-circle"
    }

    fn description(&self) -> &'static str {
        "Coeff_{y^-1} of the sum over fixed points with μ > 0, times 1/(2π vol S¹)"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        if atlas.group.kind != GroupKind::Circle {
            return Err(unsupported(self.name(), "needs a circle group; use symplectic-torus"));
        }
        let atlas = prepare(self.name(), atlas, ctx, Geometry::Symplectic)?;
        let plan = ResiduePlan {
            engine: self.name(),
            integrand: Integrand::symplectic_phase().with_eta(),
            target: -1,
            prefactor: ctx.profile.prefactor_symplectic_circle(),
            degree_factor: 1,
        };
        run(&atlas, ctx, plan, all_positive)
    }
}

pub struct SymplecticTorus;

impl ReductionEngine for SymplecticTorus {
    fn name(&self) -> &'static str {
        "symplectic-torus"
    }

    fn description(&self) -> &'static str {
        "iterated Coeff_{y1^-1..yk^-1} over fixed points with every μ component > 0"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        let atlas = prepare(self.name(), atlas, ctx, Geometry::Symplectic)?;
        let plan = ResiduePlan {
            engine: self.name(),
            integrand: Integrand::symplectic_phase().with_eta(),
            target: -1,
            prefactor: ctx.profile.prefactor_symplectic_torus(atlas.rank()),
            degree_factor: 1,
        };
        run(&atlas, ctx, plan, all_positive)
    }
}

pub struct HkCircle;

impl ReductionEngine for HkCircle {
    fn name(&self) -> &'static str {
        "hk-circle"
    }

    fn description(&self) -> &'static str {
        "Coeff_{y^-2} of Σ exp(i|μ|²y²)η/e over all fixed points, over the degree factor"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        if atlas.group.kind != GroupKind::Circle {
            return Err(unsupported(self.name(), "needs a circle group; use hk-torus"));
        }
        let atlas = prepare(self.name(), atlas, ctx, Geometry::Hyperkahler)?;
        let plan = ResiduePlan {
            engine: self.name(),
            integrand: Integrand::hyperkahler_phase().with_eta(),
            target: -2,
            prefactor: ctx.profile.prefactor_hk_circle(),
            degree_factor: atlas.degree_factor(),
        };
        run(&atlas, ctx, plan, |_| true)
    }
}

pub struct HkTorus;

impl HkTorus {
    pub(crate) fn reduce_with(
        &self,
        name: &str,
        atlas: &FixedPointAtlas,
        ctx: &ReductionContext,
        integrand: Integrand,
    ) -> Result<ReductionReport, EngineError> {
        let atlas = prepare(name, atlas, ctx, Geometry::Hyperkahler)?;
        let plan = ResiduePlan {
            engine: name,
            integrand,
            target: -2,
            prefactor: ctx.profile.prefactor_hk_torus(atlas.rank()),
            degree_factor: atlas.degree_factor(),
        };
        run(&atlas, ctx, plan, |_| true)
    }
}

impl ReductionEngine for HkTorus {
    fn name(&self) -> &'static str {
        "hk-torus"
    }

    fn description(&self) -> &'static str {
        "iterated Coeff_{y1^-2..yk^-2} over all fixed points, prefactor to the k-th power"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        self.reduce_with(self.name(), atlas, ctx, Integrand::hyperkahler_phase().with_eta())
    }
}

/// The even-projector route: `Coeff_{y^-1}[exp(i|μ|²y)·𝔓(η/e)(√y)]`.
pub struct HkCircleP;

impl HkCircleP {
    /// `𝔓(z ↦ η(z)/e(z))(√y)` for one structured point (or `𝔓(raw)(√y)` in
    /// raw mode), exact through `y^{-1}`. An odd power surviving the
    /// projector is reported as an internal error.
    pub fn projected(point: &FixedPointDatum, var: &str) -> Result<LaurentSeries, EngineError> {
        Self::projected_to(point, var, -1)
    }

    /// As [`HkCircleP::projected`], exact through `y^{bound}`.
    pub fn projected_to(point: &FixedPointDatum, var: &str, bound: i64) -> Result<LaurentSeries, EngineError> {
        let z = "z";
        let zb = 2 * bound;
        let series_z = match point.mode {
            PointMode::Raw => {
                let raw = point.raw.as_ref().ok_or_else(|| EngineError::Internal("raw point without data".into()))?;
                raw.with_vars(&[z])?.truncate(&[zb])
            }
            PointMode::Structured => {
                let e = euler_class(point, &[z])?;
                let d = point.weights.len() as i64;
                let eta = point.eta.with_vars(&[z])?.truncate(&[zb + d]);
                eta.mul(&e.invert_to(&[zb])?)?
            }
        };
        let even = series_z.even_projector(z)?;
        even.substitute_sqrt(z, var).map_err(|e| EngineError::Internal(format!("even projector left an odd power: {e}")))
    }
}

impl ReductionEngine for HkCircleP {
    fn name(&self) -> &'static str {
        "hk-circle-p"
    }

    fn description(&self) -> &'static str {
        "Coeff_{y^-1} of exp(i|μ|²y)·P(η/e)(√y), P the even projector"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        if atlas.rank() != 1 {
            return Err(unsupported(self.name(), "the even-projector route is implemented for rank 1"));
        }
        let atlas = prepare(self.name(), atlas, ctx, Geometry::Hyperkahler)?;
        let var = atlas.variable_order[0].clone();
        let mut raw = ComplexRational::zero();
        let mut contributions = Vec::new();
        for point in &atlas.fixed_points {
            let ctx_err = |source: AlgebraError| EngineError::AtFixedPoint { point: point.name.clone(), source };
            let g = Self::projected(point, &var)?;
            let c = match point.mode {
                PointMode::Raw => g.coeff(&[-1]).map_err(ctx_err)?,
                PointMode::Structured => {
                    let m = point.hk_norm_sq(0).ok_or_else(|| EngineError::Internal("missing hyperkähler moment".into()))?;
                    let min_g = g.min_exponent()[0].min(0);
                    let phase = LaurentSeries::exp_series_to(
                        &LaurentSeries::monomial(&[var.as_str()], vec![1], ComplexRational::imag(m)),
                        &[-1 - min_g],
                    )
                    .map_err(ctx_err)?;
                    g.mul(&phase).map_err(ctx_err)?.coeff(&[-1]).map_err(ctx_err)?
                }
            };
            raw += &c;
            contributions.push(Contribution { name: point.name.clone(), selected: true, coefficient: c });
        }
        let degree_factor = atlas.degree_factor();
        if degree_factor < 1 {
            return Err(EngineError::Internal(format!("degree factor {degree_factor} is not positive")));
        }
        Ok(ReductionReport {
            engine: self.name().to_string(),
            geometry: atlas.geometry,
            rank: 1,
            raw_coefficient: raw,
            prefactor: ctx.profile.prefactor_hk_circle(),
            degree_factor,
            profile: ctx.profile.clone(),
            variable_order: atlas.variable_order.clone(),
            contributions,
            inserted_polynomial: None,
            weyl_order: None,
            oracle_comparison: None,
            notes: volume_note(&atlas, ctx),
        })
    }
}

/// Nonabelian wrapper: multiply η by `w(y)⁴`, run the hyperkähler torus
/// engine on the maximal-torus atlas, divide by `|W|`.
pub struct Weyl;

impl ReductionEngine for Weyl {
    fn name(&self) -> &'static str {
        "weyl"
    }

    fn description(&self) -> &'static str {
        "maximal-torus reduction with w(y)^4 inserted, divided by |W|"
    }

    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        if atlas.geometry != Geometry::Hyperkahler {
            return Err(unsupported(self.name(), "the w⁴/|W| insertion is the hyperkähler formula"));
        }
        let roots = ctx
            .roots
            .clone()
            .or_else(|| atlas.group.roots.clone())
            .ok_or_else(|| unsupported(self.name(), "no root data: pass roots or declare them in the atlas group"))?;
        roots.check_rank(atlas.rank())?;
        if roots.weyl_order == 0 {
            return Err(unsupported(self.name(), "weyl_order must be at least 1"));
        }
        // Insertion is built in the atlas's own variable order; reorder after.
        let mut insertion = roots.weyl_insertion(&atlas.variable_order)?;
        if let Some(order) = &ctx.order {
            insertion = insertion.permute_vars(order)?;
        }
        let mut report =
            HkTorus.reduce_with(self.name(), atlas, ctx, Integrand::hyperkahler_phase().with_eta().with_insertion(insertion.clone()))?;
        let w = BigRational::new(1.into(), (roots.weyl_order as i64).into());
        report.raw_coefficient = report.raw_coefficient.scale(&w);
        for c in &mut report.contributions {
            c.coefficient = c.coefficient.scale(&w);
        }
        report.inserted_polynomial = Some(insertion);
        report.weyl_order = Some(roots.weyl_order);
        Ok(report)
    }
}
