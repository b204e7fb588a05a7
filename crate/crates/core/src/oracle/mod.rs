//! Floating-point verification of the exact engines.
//!
//! The central quantity is the Gaussian-mollified limit
//! `L = lim_{t→∞} ∫ e^{-y²/4t} f(y) dy`, evaluated by adaptive quadrature on
//! the window `|y| ≤ σ·√(2t)` for each `t` of a ladder. Here `f` is the
//! localized fixed-point sum, evaluated in closed form away from `0` and by
//! its exact Taylor expansion near `0`, where the closed form cancels.

mod contour;
mod quadrature;

use std::f64::consts::PI;

use serde::Serialize;

pub use contour::{contour_coeff, contour_coeff_with, CONTOUR_NODES, CONTOUR_RADIUS};
pub use quadrature::{gk15, integrate, Complex, Quadrature};

use crate::algebra::{ComplexRational, LaurentSeries, SymbolicConstant};
use crate::error::{EngineError, OracleError};
use crate::geometry::{FixedPointAtlas, Geometry, PointMode};
use crate::localization::{euler_class, localize, Integrand};
use crate::reduction::{ConventionProfile, FloatPair, HkCircleP, OracleComparison, ReductionReport};

/// Taylor order used near the origin.
const TAYLOR_ORDER: i64 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extrapolation {
    LastValue,
    Richardson,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MollifierConfig {
    pub t_ladder: Vec<f64>,
    /// Absolute error target per quadrature panel.
    pub quad_tolerance: f64,
    pub window_sigmas: f64,
    pub extrapolation: Extrapolation,
    pub panel_budget: usize,
}

impl Default for MollifierConfig {
    fn default() -> Self {
        MollifierConfig {
            t_ladder: vec![1.0, 10.0, 100.0, 1000.0, 10000.0],
            quad_tolerance: 1e-10,
            window_sigmas: 12.0,
            extrapolation: Extrapolation::LastValue,
            panel_budget: 4_000_000,
        }
    }
}

impl MollifierConfig {
    pub fn validate(&self) -> Result<(), OracleError> {
        if self.t_ladder.len() < 2 {
            return Err(OracleError::Config("t ladder needs at least two entries".into()));
        }
        if self.t_ladder.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(OracleError::Config("t ladder entries must be positive".into()));
        }
        if self.t_ladder.windows(2).any(|w| w[1] <= w[0]) {
            return Err(OracleError::Config("t ladder must be strictly increasing".into()));
        }
        if !(self.quad_tolerance > 0.0 && self.window_sigmas > 0.0) {
            return Err(OracleError::Config("tolerance and window must be positive".into()));
        }
        Ok(())
    }

    pub fn top(&self) -> f64 {
        *self.t_ladder.last().expect("validated ladder")
    }
}

fn cmul(a: Complex, b: Complex) -> Complex {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: Complex, b: Complex) -> Complex {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn cexp_i(x: f64) -> Complex {
    let (s, c) = x.sin_cos();
    (c, s)
}

fn scale(a: Complex, s: f64) -> Complex {
    (a.0 * s, a.1 * s)
}

/// Univariate Laurent polynomial with float coefficients, for fast evaluation.
#[derive(Clone, Debug)]
struct FloatPoly(Vec<(i32, f64, f64)>);

impl FloatPoly {
    fn from_series(s: &LaurentSeries) -> Self {
        FloatPoly(
            s.terms()
                .map(|(e, c)| {
                    let (re, im) = c.to_f64();
                    (e[0] as i32, re, im)
                })
                .collect(),
        )
    }

    fn eval(&self, z: Complex) -> Complex {
        let mut acc = (0.0, 0.0);
        for &(p, re, im) in &self.0 {
            let zp = cpowi(z, p);
            let t = cmul((re, im), zp);
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }
}

fn cpowi(z: Complex, p: i32) -> Complex {
    let (mut base, mut e) = if p < 0 { (cdiv((1.0, 0.0), z), (-p) as u32) } else { (z, p as u32) };
    let mut acc = (1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc = cmul(acc, base);
        }
        base = cmul(base, base);
        e >>= 1;
    }
    acc
}

#[derive(Clone, Debug)]
struct PointTerm {
    freq: f64,
    eta: FloatPoly,
    euler: FloatPoly,
}

/// The localized sum `f(y)` of a rank-one atlas as a real-variable function.
#[derive(Clone, Debug)]
pub struct SummedIntegrand {
    geometry: Geometry,
    points: Vec<PointTerm>,
    taylor: FloatPoly,
    delta: f64,
    max_freq: f64,
    /// Exact regular expansion at `0`.
    pub expansion: LaurentSeries,
}

fn rank_one_structured(atlas: &FixedPointAtlas) -> Result<(), OracleError> {
    if atlas.rank() != 1 {
        return Err(OracleError::Unsupported(format!("the mollified oracle is one-dimensional; atlas has rank {}", atlas.rank())));
    }
    if atlas.fixed_points.iter().any(|p| p.mode == PointMode::Raw) {
        return Err(OracleError::Unsupported("raw-mode fixed points cannot be evaluated pointwise".into()));
    }
    Ok(())
}

impl SummedIntegrand {
    /// `f(y) = Σ_F e^{iμ_F y} η_F(y)/e_F(y)` over all fixed points.
    pub fn symplectic(atlas: &FixedPointAtlas) -> Result<Self, OracleError> {
        rank_one_structured(atlas)?;
        if atlas.geometry != Geometry::Symplectic {
            return Err(OracleError::Unsupported("symplectic oracle on a hyperkähler atlas".into()));
        }
        let sum = localize(atlas, &Integrand::symplectic_phase().with_eta(), &[TAYLOR_ORDER])?;
        let mut points = Vec::new();
        for p in &atlas.fixed_points {
            let vars = &atlas.variable_order;
            points.push(PointTerm {
                freq: crate::algebra::rational_to_f64(&p.moment[0]),
                eta: FloatPoly::from_series(&p.eta),
                euler: FloatPoly::from_series(&euler_class(p, vars)?),
            });
        }
        Self::finish(Geometry::Symplectic, points, sum.total)
    }

    /// `f(y) = Σ_F e^{i|μ⃗_F|² y} 𝔓(η_F/e_F)(√y)` over all fixed points.
    pub fn hyperkahler(atlas: &FixedPointAtlas) -> Result<Self, OracleError> {
        rank_one_structured(atlas)?;
        if atlas.geometry != Geometry::Hyperkahler {
            return Err(OracleError::Unsupported("hyperkähler oracle on a symplectic atlas".into()));
        }
        let var = atlas.variable_order[0].clone();
        let mut total = LaurentSeries::zero(&[var.as_str()]).truncate(&[TAYLOR_ORDER]);
        let mut points = Vec::new();
        for p in &atlas.fixed_points {
            let m = p.hk_norm_sq(0).ok_or_else(|| EngineError::Internal("missing hyperkähler moment".into()))?;
            let g = HkCircleP::projected_to(p, &var, TAYLOR_ORDER)?;
            let min_g = g.min_exponent()[0].min(0);
            let phase = LaurentSeries::exp_series_to(
                &LaurentSeries::monomial(&[var.as_str()], vec![1], ComplexRational::imag(m.clone())),
                &[TAYLOR_ORDER - min_g],
            )
            .map_err(EngineError::from)?;
            total = total.add(&g.mul(&phase).map_err(EngineError::from)?).map_err(EngineError::from)?;
            points.push(PointTerm {
                freq: crate::algebra::rational_to_f64(&m),
                eta: FloatPoly::from_series(&p.eta),
                euler: FloatPoly::from_series(&euler_class(p, &[var.as_str()])?),
            });
        }
        Self::finish(Geometry::Hyperkahler, points, total)
    }

    fn finish(geometry: Geometry, points: Vec<PointTerm>, expansion: LaurentSeries) -> Result<Self, OracleError> {
        if !expansion.principal_part().is_zero() {
            return Err(OracleError::PrincipalPart);
        }
        let max_freq = points.iter().map(|p| p.freq.abs()).fold(0.0, f64::max);
        let delta = (2.0 / max_freq.max(1e-300)).min(0.5);
        Ok(SummedIntegrand { geometry, points, taylor: FloatPoly::from_series(&expansion), delta, max_freq, expansion })
    }

    pub fn max_frequency(&self) -> f64 {
        self.max_freq
    }

    fn closed_form(&self, y: f64) -> Complex {
        let mut acc = (0.0, 0.0);
        for p in &self.points {
            let g = match self.geometry {
                Geometry::Symplectic => cdiv(p.eta.eval((y, 0.0)), p.euler.eval((y, 0.0))),
                Geometry::Hyperkahler => {
                    let z = if y >= 0.0 { (y.sqrt(), 0.0) } else { (0.0, (-y).sqrt()) };
                    let h = |z: Complex| cdiv(p.eta.eval(z), p.euler.eval(z));
                    let (a, b) = (h(z), h((-z.0, -z.1)));
                    ((a.0 + b.0) * 0.5, (a.1 + b.1) * 0.5)
                }
            };
            let t = cmul(cexp_i(p.freq * y), g);
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    pub fn eval(&self, y: f64) -> Complex {
        if y.abs() < self.delta {
            self.taylor.eval((y, 0.0))
        } else {
            self.closed_form(y)
        }
    }
}

/// Mollified integral at one ladder point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderPoint {
    pub t: f64,
    pub value: FloatPair,
    pub left_half: FloatPair,
    pub right_half: FloatPair,
    pub quad_error: f64,
    pub panels: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MollifiedLimit {
    pub ladder: Vec<LadderPoint>,
    pub estimate: FloatPair,
    pub extrapolation: Extrapolation,
}

impl MollifiedLimit {
    /// `|L(t_{i+1}) − L(t_i)|` along the ladder.
    pub fn successive_differences(&self) -> Vec<f64> {
        self.ladder
            .windows(2)
            .map(|w| (w[1].value.re - w[0].value.re).hypot(w[1].value.im - w[0].value.im))
            .collect()
    }
}

fn panel_width(max_freq: f64) -> f64 {
    if max_freq > 0.0 {
        (PI / (4.0 * max_freq)).min(1.0)
    } else {
        1.0
    }
}

/// `∫_{|y| ≤ σ√(2t)} e^{-y²/4t} g(y) dy`, as left and right halves.
pub fn mollified_integral<F>(g: &F, t: f64, max_freq: f64, cfg: &MollifierConfig) -> Result<LadderPoint, OracleError>
where
    F: Fn(f64) -> Complex,
{
    let w = cfg.window_sigmas * (2.0 * t).sqrt();
    let h = |y: f64| scale(g(y), (-y * y / (4.0 * t)).exp());
    let width = panel_width(max_freq);
    let left = integrate(&h, -w, 0.0, width, cfg.quad_tolerance, cfg.panel_budget)?;
    let right = integrate(&h, 0.0, w, width, cfg.quad_tolerance, cfg.panel_budget)?;
    let value = (left.value.0 + right.value.0, left.value.1 + right.value.1);
    Ok(LadderPoint {
        t,
        value: value.into(),
        left_half: left.value.into(),
        right_half: right.value.into(),
        quad_error: left.error + right.error,
        panels: left.panels + right.panels,
    })
}

/// `lim_{t→∞} ∫ e^{-y²/4t} f(y) dy` along the configured ladder.
pub fn mollified_limit<F>(f: &F, max_freq: f64, cfg: &MollifierConfig) -> Result<MollifiedLimit, OracleError>
where
    F: Fn(f64) -> Complex,
{
    cfg.validate()?;
    let ladder = cfg
        .t_ladder
        .iter()
        .map(|&t| mollified_integral(f, t, max_freq, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let n = ladder.len();
    let last = ladder[n - 1].value;
    let estimate = match cfg.extrapolation {
        Extrapolation::LastValue => last,
        Extrapolation::Richardson => {
            // L(t) ≈ L + c/t through the last two points
            let (t0, t1) = (ladder[n - 2].t, ladder[n - 1].t);
            let prev = ladder[n - 2].value;
            FloatPair {
                re: (t1 * last.re - t0 * prev.re) / (t1 - t0),
                im: (t1 * last.im - t0 * prev.im) / (t1 - t0),
            }
        }
    };
    Ok(MollifiedLimit { ladder, estimate, extrapolation: cfg.extrapolation })
}

/// The mollified `∮ f = (1/vol G)·lim ∫ e^{-y²/4t} f(y) dy` for one circle.
pub fn mollified_oint<F>(f: &F, vol: &SymbolicConstant, max_freq: f64, cfg: &MollifierConfig) -> Result<(Complex, MollifiedLimit), OracleError>
where
    F: Fn(f64) -> Complex,
{
    let lim = mollified_limit(f, max_freq, cfg)?;
    let inv_vol = vol.inv().map_err(EngineError::from)?.numeric_value();
    Ok((cmul((lim.estimate.re, lim.estimate.im), inv_vol), lim))
}

fn oracle_constant(report: &ReductionReport) -> Result<(SymbolicConstant, Geometry), OracleError> {
    let p: &ConventionProfile = &report.profile;
    match report.engine.as_str() {
        "symplectic-circle" | "symplectic-torus" => Ok((p.oint_symplectic(1), Geometry::Symplectic)),
        "hk-circle" | "hk-circle-p" | "hk-torus" => Ok((p.oint_hk(1), Geometry::Hyperkahler)),
        other => Err(OracleError::Unsupported(format!("no oracle for engine {other}"))),
    }
}

/// Compares a report's quotient integral with
/// `c_∮ · (1/vol S¹) · lim ∫ e^{-y²/4t} f / degree_factor`.
pub fn compare(report: &ReductionReport, atlas: &FixedPointAtlas, cfg: &MollifierConfig) -> Result<OracleComparison, OracleError> {
    let (constant, geometry) = oracle_constant(report)?;
    let f = match geometry {
        Geometry::Symplectic => SummedIntegrand::symplectic(atlas)?,
        Geometry::Hyperkahler => SummedIntegrand::hyperkahler(atlas)?,
    };
    let (oint, lim) = mollified_oint(&|y| f.eval(y), &report.profile.vol_circle, f.max_frequency(), cfg)?;
    let factor = scale(constant.numeric_value(), 1.0 / report.degree_factor as f64);
    let per_vol = report.profile.vol_circle.inv().map_err(EngineError::from)?.numeric_value();
    let to_quotient = |v: FloatPair| -> FloatPair { cmul(cmul((v.re, v.im), per_vol), factor).into() };
    let oracle = cmul(oint, factor);
    let exact = report.quotient_numeric();
    let abs_err = (oracle.0 - exact.0).hypot(oracle.1 - exact.1);
    let mag = exact.0.hypot(exact.1);
    Ok(OracleComparison {
        oracle_value: oracle.into(),
        exact_value: exact.into(),
        abs_err,
        rel_err: if mag > 0.0 { abs_err / mag } else { abs_err },
        t_ladder: cfg.t_ladder.clone(),
        ladder_values: lim.ladder.iter().map(|p| to_quotient(p.value)).collect(),
        extrapolation: match cfg.extrapolation {
            Extrapolation::LastValue => "last_value".into(),
            Extrapolation::Richardson => "richardson".into(),
        },
    })
}

/// Runs [`compare`] and stores the result in the report.
pub fn attach(mut report: ReductionReport, atlas: &FixedPointAtlas, cfg: &MollifierConfig) -> Result<ReductionReport, OracleError> {
    report.oracle_comparison = Some(compare(&report, atlas, cfg)?);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuptsqRow {
    pub t: f64,
    pub value: FloatPair,
    pub abs: f64,
    pub closed_form: FloatPair,
    pub envelope: f64,
    pub quad_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuptsqTable {
    pub x: f64,
    pub n: u32,
    pub rows: Vec<SuptsqRow>,
    /// `max_t |closed form| / envelope` over ladder points with a nonzero envelope.
    pub constant: f64,
    pub decay_asserted: bool,
    pub within_bound: bool,
}

/// `∫ e^{-y²/4t + ixy} y^m dy = √(4πt) e^{-tx²} P_m(x)` with
/// `P_0 = 1`, `P_{m+1} = −i(P_m' − 2tx P_m)`.
pub fn suptsq_closed_form(x: f64, m: u32, t: f64) -> Complex {
    // coefficients of P as a polynomial in x
    let mut p: Vec<Complex> = vec![(1.0, 0.0)];
    for _ in 0..m {
        let mut next = vec![(0.0, 0.0); p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            if k > 0 {
                next[k - 1].0 += k as f64 * c.0;
                next[k - 1].1 += k as f64 * c.1;
            }
            next[k + 1].0 -= 2.0 * t * c.0;
            next[k + 1].1 -= 2.0 * t * c.1;
        }
        p = next.into_iter().map(|c| cmul(c, (0.0, -1.0))).collect();
    }
    let mut val = (0.0, 0.0);
    for &c in p.iter().rev() {
        val = cmul(val, (x, 0.0));
        val.0 += c.0;
        val.1 += c.1;
    }
    scale(val, (4.0 * PI * t).sqrt() * (-t * x * x).exp())
}

/// Decay table for `I(t) = ∫ e^{-y²/4t + ixy} y^{n/2} dy`, `n` even.
pub fn suptsq_check(x: f64, n: u32, cfg: &MollifierConfig) -> Result<SuptsqTable, OracleError> {
    cfg.validate()?;
    if n % 2 != 0 {
        return Err(OracleError::Config(format!("n must be even, got {n}")));
    }
    let m = (n / 2) as i32;
    let f = |y: f64| scale(cexp_i(x * y), y.powi(m));
    let exponent = (n as f64 + 2.0) / 4.0;
    let mut rows = Vec::new();
    let mut constant: f64 = 0.0;
    for &t in &cfg.t_ladder {
        let lp = mollified_integral(&f, t, x.abs(), cfg)?;
        let closed = suptsq_closed_form(x, n / 2, t);
        let envelope = t.powf(exponent) * (-t * x * x).exp();
        if envelope > 0.0 {
            constant = constant.max(closed.0.hypot(closed.1) / envelope);
        }
        rows.push(SuptsqRow {
            t,
            abs: lp.value.re.hypot(lp.value.im),
            value: lp.value,
            closed_form: closed.into(),
            envelope,
            quad_error: lp.quad_error,
        });
    }
    let within_bound = rows.iter().all(|r| r.abs <= constant * r.envelope + 10.0 * r.quad_error + 1e-13);
    Ok(SuptsqTable { x, n, rows, constant, decay_asserted: x != 0.0, within_bound })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftRow {
    pub zeta: f64,
    pub difference: FloatPair,
    pub abs: f64,
    /// False when `|ζ|` exceeds half the smallest `|μ_F|`.
    pub asserted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftTable {
    pub t: f64,
    pub base: FloatPair,
    pub rows: Vec<ShiftRow>,
}

/// `F(ζ) − F(0)` at the top of the ladder, where `F(ζ)` is the oracle value
/// with every moment shifted `μ_F ↦ μ_F − ζ`. The difference is integrated
/// directly as `(e^{-iζy} − 1)·f(y)` so rounding noise scales with `ζ`.
pub fn shift_smoothness_check(
    atlas: &FixedPointAtlas,
    zetas: &[f64],
    profile: &ConventionProfile,
    cfg: &MollifierConfig,
) -> Result<ShiftTable, OracleError> {
    cfg.validate()?;
    if atlas.geometry != Geometry::Symplectic {
        return Err(OracleError::Unsupported("shift smoothness is a symplectic check".into()));
    }
    let f = SummedIntegrand::symplectic(atlas)?;
    let t = cfg.top();
    let constant = cmul(profile.oint_symplectic(1).numeric_value(), profile.vol_circle.inv().map_err(EngineError::from)?.numeric_value());
    let base = mollified_integral(&|y| f.eval(y), t, f.max_frequency(), cfg)?;
    let gap = atlas
        .fixed_points
        .iter()
        .map(|p| crate::algebra::rational_to_f64(&p.moment[0]).abs())
        .fold(f64::INFINITY, f64::min);
    let rows = zetas
        .iter()
        .map(|&zeta| {
            let g = |y: f64| {
                let half = 0.5 * zeta * y;
                let factor = (-2.0 * half.sin() * half.sin(), -(zeta * y).sin());
                cmul(factor, f.eval(y))
            };
            let lp = mollified_integral(&g, t, f.max_frequency() + zeta.abs(), cfg)?;
            let d = cmul((lp.value.re, lp.value.im), constant);
            Ok(ShiftRow { zeta, difference: d.into(), abs: d.0.hypot(d.1), asserted: zeta.abs() <= 0.5 * gap })
        })
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(ShiftTable { t, base: cmul((base.value.re, base.value.im), constant).into(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sphere_s2;

    fn quick() -> MollifierConfig {
        MollifierConfig { t_ladder: vec![10.0, 100.0], ..Default::default() }
    }

    #[test]
    fn gaussian_oint_is_sqrt_pi_over_two_pi() {
        // The finite-t value is √(π/(1+1/4t)), off by ≈ 1/8t; Richardson
        // removes the 1/t term.
        let cfg = MollifierConfig { extrapolation: Extrapolation::Richardson, ..Default::default() };
        let (v, _) = mollified_oint(&|y: f64| ((-y * y).exp(), 0.0), &SymbolicConstant::two_pi(), 0.0, &cfg).unwrap();
        let want = PI.sqrt() / (2.0 * PI);
        assert!((v.0 - want).abs() < 1e-8 * want && v.1.abs() < 1e-12);
        let lim = mollified_limit(&|y: f64| ((-y * y).exp(), 0.0), 0.0, &MollifierConfig::default()).unwrap();
        let exact_top = (PI / (1.0 + 1.0 / 4e4)).sqrt();
        assert!((lim.estimate.re - exact_top).abs() < 1e-8 * exact_top);
    }

    #[test]
    fn pure_phase_decays() {
        let lim = mollified_limit(&|y: f64| cexp_i(y), 1.0, &MollifierConfig { t_ladder: vec![1.0, 30.0], ..Default::default() }).unwrap();
        let want = (4.0 * PI).sqrt() * (-1.0f64).exp();
        assert!((lim.ladder[0].value.re - want).abs() < 1e-10);
        assert!(lim.estimate.re.hypot(lim.estimate.im) < 1e-10);
    }

    #[test]
    fn sphere_limit_is_two_pi_i() {
        let f = SummedIntegrand::symplectic(&sphere_s2()).unwrap();
        let lim = mollified_limit(&|y| f.eval(y), f.max_frequency(), &quick()).unwrap();
        assert!(lim.estimate.re.abs() < 1e-9);
        assert!((lim.estimate.im - 2.0 * PI).abs() < 1e-9);
        let top = lim.ladder.last().unwrap();
        assert!((top.left_half.im - top.right_half.im).abs() < 1e-9);
    }

    #[test]
    fn unbalanced_principal_part_is_refused() {
        let mut a = sphere_s2();
        a.fixed_points.truncate(1);
        assert_eq!(SummedIntegrand::symplectic(&a).unwrap_err(), OracleError::PrincipalPart);
    }

    #[test]
    fn closed_form_matches_taylor_at_the_switch() {
        let f = SummedIntegrand::symplectic(&crate::geometry::mirror_pair(3)).unwrap();
        let y = f.delta;
        let a = f.closed_form(y);
        let b = f.taylor.eval((y, 0.0));
        assert!((a.0 - b.0).hypot(a.1 - b.1) < 1e-10);
    }

    #[test]
    fn suptsq_values() {
        let cfg = MollifierConfig { t_ladder: vec![10.0, 30.0], ..Default::default() };
        let tab = suptsq_check(1.0, 0, &cfg).unwrap();
        assert!(tab.rows[1].abs <= 1e-10);
        assert!(tab.decay_asserted && tab.within_bound);
        let tab = suptsq_check(0.0, 0, &cfg).unwrap();
        let want = (4.0 * PI * 30.0).sqrt();
        assert!((tab.rows[1].value.re - want).abs() < 1e-8 * want);
        assert!(!tab.decay_asserted);
        // x = 2, n = 4, t = 10: √(4πt)(2t − 4t²x²)e^{−tx²}
        let c = suptsq_closed_form(2.0, 2, 10.0);
        let want = (40.0 * PI).sqrt() * (20.0 - 1600.0) * (-40.0f64).exp();
        assert!((c.0 - want).abs() < 1e-12 * want.abs() && c.1.abs() < 1e-25);
        assert!(suptsq_check(1.0, 3, &cfg).is_err());
    }

    #[test]
    fn shift_at_zero_is_exactly_zero_and_large_shift_is_not_asserted() {
        let cfg = quick();
        let tab = shift_smoothness_check(&sphere_s2(), &[0.0, 0.9], &ConventionProfile::default(), &cfg).unwrap();
        assert_eq!(tab.rows[0].abs, 0.0);
        assert!(tab.rows[0].asserted);
        assert!(!tab.rows[1].asserted);
    }
}
