//! Fixed-point atlases: the only description of a manifold the engines see.
//!
//! An atlas lists the isolated fixed points of a torus action together with
//! their moment values, tangent weights and the restriction of the
//! integrated class. Validation enforces the dimension bookkeeping and the
//! regularity of the zero level.

mod builtin;
mod roots;
mod schema;

use num::{BigRational, Signed, Zero};

pub use builtin::{builtin_atlas, hk_synthetic, hk_synthetic_torus, mirror_pair, product_atlas, sphere_s2};
pub use roots::{linear_form, RootSystemData};
pub use schema::{parse_atlas, serialize_atlas, AtlasWire};

use crate::algebra::{LaurentSeries, SymbolicConstant};
use crate::error::AtlasError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Circle,
    Torus,
    CompactWithTorus,
}

impl GroupKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Circle => "circle",
            GroupKind::Torus => "torus",
            GroupKind::CompactWithTorus => "compact_with_torus",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    /// Rank `k` of the (maximal) torus.
    pub rank: usize,
    /// `s = dim G`.
    pub s: usize,
    pub vol: SymbolicConstant,
    pub roots: Option<RootSystemData>,
}

impl GroupSpec {
    pub fn circle() -> Self {
        GroupSpec { kind: GroupKind::Circle, rank: 1, s: 1, vol: SymbolicConstant::two_pi(), roots: None }
    }

    pub fn torus(rank: usize) -> Self {
        GroupSpec {
            kind: GroupKind::Torus,
            rank,
            s: rank,
            vol: SymbolicConstant::two_pi().powi(rank as i32).expect("nonzero"),
            roots: None,
        }
    }

    fn validate(&self) -> Result<(), AtlasError> {
        let bad = |m: String| Err(AtlasError::Invariant(m));
        if self.rank == 0 {
            return bad("group rank must be positive".into());
        }
        match self.kind {
            GroupKind::Circle if self.rank != 1 || self.s != 1 => {
                return bad(format!("circle group must have rank = s = 1, got rank {} and s {}", self.rank, self.s))
            }
            GroupKind::Torus if self.s != self.rank => {
                return bad(format!("torus has s = rank, got rank {} and s {}", self.rank, self.s))
            }
            GroupKind::CompactWithTorus => {
                if self.s < self.rank {
                    return bad(format!("dim G = {} is smaller than its rank {}", self.s, self.rank));
                }
                let roots = self
                    .roots
                    .as_ref()
                    .ok_or_else(|| AtlasError::Invariant("compact_with_torus requires root data".into()))?;
                if roots.weyl_order == 0 {
                    return bad("weyl_order must be at least 1".into());
                }
                for (i, r) in roots.positive_roots.iter().enumerate() {
                    if r.len() != self.rank {
                        return bad(format!("root {i} has length {}, rank is {}", r.len(), self.rank));
                    }
                }
            }
            _ => {}
        }
        if !self.vol.is_positive_real() {
            return bad(format!("group volume must be a positive real number, got {}", self.vol));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Symplectic,
    Hyperkahler,
}

impl Geometry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Geometry::Symplectic => "symplectic",
            Geometry::Hyperkahler => "hyperkahler",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointMode {
    Structured,
    Raw,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointDatum {
    pub name: String,
    pub mode: PointMode,
    /// Symplectic moment value, one component per circle factor.
    pub moment: Vec<BigRational>,
    /// Hyperkähler moment triples, one per circle factor.
    pub moment_hk: Option<Vec<[BigRational; 3]>>,
    /// One integer `k`-vector per complex tangent line.
    pub weights: Vec<Vec<i64>>,
    /// Restriction of the integrated class; a polynomial in the atlas variables.
    pub eta: LaurentSeries,
    /// Component-integrated contribution, used verbatim in raw mode.
    pub raw: Option<LaurentSeries>,
}

impl FixedPointDatum {
    /// `|μ⃗_ν|²` for circle factor `ν`.
    pub fn hk_norm_sq(&self, factor: usize) -> Option<BigRational> {
        self.moment_hk.as_ref().and_then(|m| m.get(factor)).map(|t| t.iter().map(|c| c * c).sum())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubmanifoldRestriction {
    pub codim_l: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RespectedVerdict {
    Ok { codim_l: i64, limit: i64 },
    Violation { codim_l: i64, limit: i64 },
}

impl RespectedVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, RespectedVerdict::Ok { .. })
    }
}

/// Codimension test for a submanifold respected by the action: at most
/// `3·dim G` in the hyperkähler case. The symplectic analogue (`≤ dim G`)
/// is an extension with the same shape.
pub fn respected_verdict(geometry: Geometry, s: usize, codim_l: i64) -> RespectedVerdict {
    let limit = match geometry {
        Geometry::Hyperkahler => 3 * s as i64,
        Geometry::Symplectic => s as i64,
    };
    if codim_l <= limit {
        RespectedVerdict::Ok { codim_l, limit }
    } else {
        RespectedVerdict::Violation { codim_l, limit }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointAtlas {
    pub group: GroupSpec,
    pub geometry: Geometry,
    pub dim_m: i64,
    pub dim_quotient: i64,
    pub deg_eta0: i64,
    pub variable_order: Vec<String>,
    pub fixed_points: Vec<FixedPointDatum>,
    pub submanifold: Option<SubmanifoldRestriction>,
}

impl FixedPointAtlas {
    pub fn rank(&self) -> usize {
        self.group.rank
    }

    /// `dim 𝓜 − deg η₀ + 1`, the factor multiplying hyperkähler quotient integrals.
    pub fn degree_factor(&self) -> i64 {
        self.dim_quotient - self.deg_eta0 + 1
    }

    pub fn validate_respected(&self) -> Option<RespectedVerdict> {
        self.submanifold.map(|r| respected_verdict(self.geometry, self.group.s, r.codim_l))
    }

    pub fn validate(&self) -> Result<(), AtlasError> {
        let bad = |m: String| Err(AtlasError::Invariant(m));
        self.group.validate()?;
        let k = self.group.rank;
        if self.variable_order.len() != k {
            return bad(format!("variable_order has {} names, group rank is {k}", self.variable_order.len()));
        }
        for (i, v) in self.variable_order.iter().enumerate() {
            if v.is_empty() || self.variable_order[..i].contains(v) {
                return bad(format!("variable names must be nonempty and distinct: {:?}", self.variable_order));
            }
        }
        if self.dim_m < 0 || self.dim_m % 2 != 0 {
            return bad(format!("dim_M = {} must be a nonnegative even integer", self.dim_m));
        }
        let s = self.group.s as i64;
        let expected = match self.geometry {
            Geometry::Symplectic => self.dim_m - 2 * s,
            Geometry::Hyperkahler => {
                if self.dim_m % 4 != 0 {
                    return bad(format!("hyperkähler dim_M = {} must be a multiple of 4", self.dim_m));
                }
                self.dim_m - 4 * s
            }
        };
        if self.dim_quotient != expected {
            return bad(format!(
                "dim_quotient = {} but dim_M = {} and dim G = {s} give {expected}",
                self.dim_quotient, self.dim_m
            ));
        }
        if self.dim_quotient < 0 {
            return bad(format!("negative quotient dimension {}", self.dim_quotient));
        }
        if self.deg_eta0 < 0 || self.deg_eta0 > self.dim_quotient {
            return bad(format!("deg_eta0 = {} must lie in [0, {}]", self.deg_eta0, self.dim_quotient));
        }
        if let Some(r) = self.submanifold {
            if r.codim_l < 0 {
                return bad(format!("codim_L = {} is negative", r.codim_l));
            }
        }
        for (i, fp) in self.fixed_points.iter().enumerate() {
            if self.fixed_points[..i].iter().any(|o| o.name == fp.name) {
                return bad(format!("duplicate fixed point name {}", fp.name));
            }
            self.validate_point(fp)?;
        }
        Ok(())
    }

    fn validate_point(&self, fp: &FixedPointDatum) -> Result<(), AtlasError> {
        let k = self.group.rank;
        let field = |f: &str, m: String| AtlasError::FixedPoint { point: fp.name.clone(), field: f.into(), message: m };
        if fp.eta.vars() != self.variable_order.as_slice() {
            return Err(field("eta", "series variables differ from variable_order".into()));
        }
        if !fp.eta.is_polynomial() {
            return Err(field("eta", "restriction must be a polynomial (no negative exponents)".into()));
        }
        match fp.mode {
            PointMode::Structured => {
                if fp.raw.is_some() {
                    return Err(field("raw", "raw contribution given for a structured fixed point".into()));
                }
                let lines = (self.dim_m / 2) as usize;
                if fp.weights.len() != lines {
                    return Err(field(
                        "weights",
                        format!("isolated fixed point needs dim_M/2 = {lines} tangent weights, got {}", fp.weights.len()),
                    ));
                }
                for (index, w) in fp.weights.iter().enumerate() {
                    if w.len() != k {
                        return Err(field("weights", format!("weight {index} has length {}, rank is {k}", w.len())));
                    }
                    if w.iter().all(|&x| x == 0) {
                        return Err(AtlasError::ZeroDivisor { point: fp.name.clone(), index });
                    }
                }
            }
            PointMode::Raw => {
                let raw = fp.raw.as_ref().ok_or_else(|| field("raw", "raw mode requires a raw contribution".into()))?;
                if raw.vars() != self.variable_order.as_slice() {
                    return Err(field("raw", "series variables differ from variable_order".into()));
                }
                if k > 1 && !raw.is_exact() {
                    return Err(field("raw", "truncated raw contributions are supported for rank 1 only".into()));
                }
                for (index, w) in fp.weights.iter().enumerate() {
                    if w.len() != k {
                        return Err(field("weights", format!("weight {index} has length {}, rank is {k}", w.len())));
                    }
                }
            }
        }
        match self.geometry {
            Geometry::Symplectic => {
                if fp.moment.len() != k {
                    return Err(field("moment", format!("expected {k} components, got {}", fp.moment.len())));
                }
                if fp.moment.iter().any(|m| m.is_zero()) {
                    return Err(AtlasError::NotRegular { point: fp.name.clone(), what: "μ".into() });
                }
            }
            Geometry::Hyperkahler => {
                let hk = fp.moment_hk.as_ref().ok_or_else(|| field("moment_hk", "required for hyperkähler atlases".into()))?;
                if hk.len() != k {
                    return Err(field("moment_hk", format!("expected {k} triples, got {}", hk.len())));
                }
                if hk.iter().any(|t| t.iter().all(|c| c.is_zero())) {
                    return Err(AtlasError::NotRegular { point: fp.name.clone(), what: "μ⃗".into() });
                }
                if !fp.moment.is_empty() && fp.moment.len() != k {
                    return Err(field("moment", format!("expected 0 or {k} components, got {}", fp.moment.len())));
                }
            }
        }
        Ok(())
    }

    /// Fixed points with every moment component strictly positive.
    pub fn positive_points(&self) -> impl Iterator<Item = &FixedPointDatum> {
        self.fixed_points.iter().filter(|fp| fp.moment.iter().all(|m| m.is_positive()))
    }

    /// Same atlas with the extraction order permuted to `order`.
    pub fn reordered(&self, order: &[String]) -> Result<FixedPointAtlas, crate::error::EngineError> {
        let idx: Vec<usize> = order
            .iter()
            .map(|v| self.variable_order.iter().position(|x| x == v))
            .collect::<Option<_>>()
            .ok_or_else(|| crate::error::EngineError::BadOrder(order.to_vec()))?;
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if idx.len() != self.variable_order.len() || sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(crate::error::EngineError::BadOrder(order.to_vec()));
        }
        let pick_i = |xs: &[i64]| idx.iter().map(|&i| xs[i]).collect::<Vec<_>>();
        let mut out = self.clone();
        out.variable_order = order.to_vec();
        if let Some(r) = &mut out.group.roots {
            r.positive_roots = r.positive_roots.iter().map(|x| pick_i(x)).collect();
        }
        for fp in &mut out.fixed_points {
            fp.moment = if fp.moment.is_empty() { Vec::new() } else { idx.iter().map(|&i| fp.moment[i].clone()).collect() };
            if let Some(hk) = &fp.moment_hk {
                fp.moment_hk = Some(idx.iter().map(|&i| hk[i].clone()).collect());
            }
            fp.weights = fp.weights.iter().map(|w| pick_i(w)).collect();
            fp.eta = fp.eta.permute_vars(order)?;
            if let Some(r) = &fp.raw {
                fp.raw = Some(r.permute_vars(order)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respected_codimension_bounds() {
        assert!(respected_verdict(Geometry::Hyperkahler, 1, 3).is_ok());
        assert!(!respected_verdict(Geometry::Hyperkahler, 1, 4).is_ok());
        assert!(respected_verdict(Geometry::Hyperkahler, 2, 6).is_ok());
        assert!(respected_verdict(Geometry::Symplectic, 2, 2).is_ok());
        assert!(!respected_verdict(Geometry::Symplectic, 2, 3).is_ok());
    }

    #[test]
    fn respected_is_monotone() {
        for s in 1..4 {
            for g in [Geometry::Symplectic, Geometry::Hyperkahler] {
                let mut seen_violation = false;
                for codim in 0..20 {
                    let ok = respected_verdict(g, s, codim).is_ok();
                    assert!(!(seen_violation && ok));
                    seen_violation |= !ok;
                }
            }
        }
    }

    #[test]
    fn sphere_validates_with_degree_factor_one() {
        let a = sphere_s2();
        a.validate().unwrap();
        assert_eq!((a.dim_m, a.dim_quotient, a.degree_factor()), (2, 0, 1));
    }

    #[test]
    fn zero_weight_is_a_zero_divisor() {
        let mut a = sphere_s2();
        a.fixed_points[0].weights[0] = vec![0];
        let err = a.validate().unwrap_err();
        assert_eq!(err.to_string(), "e(y) is a zero divisor at N: tangent weight 0 is zero");
    }

    #[test]
    fn zero_moment_is_not_regular() {
        let mut a = sphere_s2();
        a.fixed_points[1].moment[0] = BigRational::zero();
        let err = a.validate().unwrap_err();
        assert_eq!(err.to_string(), "0 is not a regular value: fixed point S has μ = 0");
    }

    #[test]
    fn dimension_bookkeeping_is_checked() {
        let mut a = sphere_s2();
        a.dim_quotient = 2;
        assert!(matches!(a.validate(), Err(AtlasError::Invariant(_))));
        let mut b = sphere_s2();
        b.deg_eta0 = 1;
        assert!(matches!(b.validate(), Err(AtlasError::Invariant(_))));
    }

    #[test]
    fn reordering_twice_restores_the_atlas() {
        let a = product_atlas(&sphere_s2(), &sphere_s2()).unwrap();
        let rev: Vec<String> = a.variable_order.iter().rev().cloned().collect();
        let b = a.reordered(&rev).unwrap();
        b.validate().unwrap();
        assert_eq!(b.reordered(&a.variable_order).unwrap(), a);
        assert!(a.reordered(&["y1".to_string(), "y1".to_string()]).is_err());
    }
}
