//! Quotient-integration engines behind a name-keyed registry.
//!
//! Each engine maps a validated atlas to a [`ReductionReport`]. Engines are
//! registered as trait objects and selected at runtime, either by engine name
//! or by one of the mode aliases `symplectic`, `hk`, `hk-p`, `weyl`.

mod engines;
mod profile;
mod report;

use std::collections::BTreeMap;

pub use engines::{HkCircle, HkCircleP, HkTorus, SymplecticCircle, SymplecticTorus, Weyl};
pub use profile::{ConventionProfile, OintConvention, ProfileRegistry, PROFILE_ENV};
pub use report::{Contribution, FloatPair, OracleComparison, ReductionReport};

use crate::error::EngineError;
use crate::geometry::{FixedPointAtlas, GroupKind, RootSystemData};

/// Everything an engine needs besides the atlas.
#[derive(Clone, Debug, Default)]
pub struct ReductionContext {
    pub profile: ConventionProfile,
    /// Extraction order override (a permutation of the atlas variables).
    pub order: Option<Vec<String>>,
    /// Root data for the Weyl wrapper; falls back to the atlas group.
    pub roots: Option<RootSystemData>,
}

impl ReductionContext {
    pub fn with_profile(profile: ConventionProfile) -> Self {
        ReductionContext { profile, ..Default::default() }
    }
}

pub trait ReductionEngine: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn reduce(&self, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError>;
}

pub struct EngineRegistry {
    engines: BTreeMap<&'static str, Box<dyn ReductionEngine>>,
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut r = EngineRegistry { engines: BTreeMap::new() };
        r.register(Box::new(SymplecticCircle));
        r.register(Box::new(SymplecticTorus));
        r.register(Box::new(HkCircle));
        r.register(Box::new(HkCircleP));
        r.register(Box::new(HkTorus));
        r.register(Box::new(Weyl));
        r
    }
}

impl EngineRegistry {
    pub fn register(&mut self, engine: Box<dyn ReductionEngine>) {
        self.engines.insert(engine.name(), engine);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.engines.keys().copied().collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn ReductionEngine, EngineError> {
        self.engines.get(name).map(|b| b.as_ref()).ok_or_else(|| EngineError::UnknownEngine(name.to_string()))
    }

    /// Maps a mode alias (or an engine name) to the engine for this atlas.
    pub fn resolve(&self, mode: &str, atlas: &FixedPointAtlas) -> Result<&dyn ReductionEngine, EngineError> {
        let circle = atlas.group.kind == GroupKind::Circle;
        let name = match mode {
            "symplectic" if circle => "symplectic-circle",
            "symplectic" => "symplectic-torus",
            "hk" if circle => "hk-circle",
            "hk" => "hk-torus",
            "hk-p" => "hk-circle-p",
            other => other,
        };
        self.get(name)
    }

    pub fn reduce(&self, mode: &str, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
        self.resolve(mode, atlas)?.reduce(atlas, ctx)
    }
}

/// Convenience: reduce with the default registry.
pub fn reduce(mode: &str, atlas: &FixedPointAtlas, ctx: &ReductionContext) -> Result<ReductionReport, EngineError> {
    EngineRegistry::default().reduce(mode, atlas, ctx)
}
