//! Convention profiles: every normalization constant in one table.
//!
//! Residue-side prefactors follow the localization formulas with the
//! profile's `vol S¹`. The oracle-side `∮` constants multiply
//! `(1/vol G)·lim ∫ e^{-|y|²/4t} f(y) dy`; the `residue_consistent` choice
//! makes the two sides agree for bare-weight Euler classes, the
//! `literal` choice takes the textbook constants at face value.

use std::collections::BTreeMap;

use num::BigRational;
use serde::Serialize;

use crate::algebra::SymbolicConstant;
use crate::error::EngineError;

/// Environment variable consulted when no profile is named explicitly.
pub const PROFILE_ENV: &str = "EQLOC_PROFILE";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OintConvention {
    /// `∮` constants chosen so that `∮ = residue` exactly.
    ResidueConsistent,
    /// `iˢ²/(2π)ˢ` and `(1/(6πi√2))ᵏ` at face value.
    Literal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConventionProfile {
    pub name: String,
    pub vol_circle: SymbolicConstant,
    pub oint: OintConvention,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow(c: &SymbolicConstant, k: usize) -> SymbolicConstant {
    c.powi(k as i32).expect("nonzero constant")
}

impl ConventionProfile {
    pub fn default_profile() -> Self {
        ConventionProfile { name: "default".into(), vol_circle: SymbolicConstant::two_pi(), oint: OintConvention::ResidueConsistent }
    }

    pub fn literal() -> Self {
        ConventionProfile { name: "literal".into(), oint: OintConvention::Literal, ..Self::default_profile() }
    }

    pub fn unit_volume() -> Self {
        ConventionProfile { name: "unit-volume".into(), vol_circle: SymbolicConstant::one(), ..Self::default_profile() }
    }

    /// `vol 𝕋ᵏ = (vol S¹)ᵏ`.
    pub fn vol_torus(&self, k: usize) -> SymbolicConstant {
        pow(&self.vol_circle, k)
    }

    /// `1/(2π·vol S¹)`.
    pub fn prefactor_symplectic_circle(&self) -> SymbolicConstant {
        (&SymbolicConstant::two_pi() * &self.vol_circle).inv().expect("nonzero volume")
    }

    /// `(1/2π)ᵏ·(1/vol 𝕋ᵏ)`.
    pub fn prefactor_symplectic_torus(&self, k: usize) -> SymbolicConstant {
        pow(&self.prefactor_symplectic_circle(), k)
    }

    /// `−1/(6√2·π·vol S¹)`.
    pub fn prefactor_hk_circle(&self) -> SymbolicConstant {
        let d = &SymbolicConstant::new(q(-6, 1), 0, 1, 1) * &self.vol_circle;
        d.inv().expect("nonzero volume")
    }

    /// `(−1/(6√2·π·vol S¹))ᵏ`.
    pub fn prefactor_hk_torus(&self, k: usize) -> SymbolicConstant {
        pow(&self.prefactor_hk_circle(), k)
    }

    /// Constant in front of `∮` for the symplectic rank-`k` torus.
    pub fn oint_symplectic(&self, k: usize) -> SymbolicConstant {
        match self.oint {
            // 1/(2π·2πi) per circle
            OintConvention::ResidueConsistent => pow(&SymbolicConstant::new(q(1, 4), -1, -2, 0), k),
            // i^{s²}/(2π)^s with s = k
            OintConvention::Literal => {
                let s = k as i64;
                &SymbolicConstant::new(q(1, 1), s * s, 0, 0) * &pow(&SymbolicConstant::two_pi(), k).inv().expect("nonzero")
            }
        }
    }

    /// Constant in front of `∮` for the hyperkähler rank-`k` torus.
    pub fn oint_hk(&self, k: usize) -> SymbolicConstant {
        match self.oint {
            // −1/(6√2π·2πi) = i/(12√2π²) per circle
            OintConvention::ResidueConsistent => pow(&SymbolicConstant::new(q(1, 24), 1, -2, 1), k),
            // 1/(6πi√2) per circle
            OintConvention::Literal => pow(&SymbolicConstant::new(q(6, 1), 1, 1, 1).inv().expect("nonzero"), k),
        }
    }

    /// Parameter dump for reports, at rank `k`.
    pub fn parameters(&self, k: usize) -> BTreeMap<String, SymbolicConstant> {
        let mut m = BTreeMap::new();
        m.insert("vol_circle".into(), self.vol_circle.clone());
        m.insert("prefactor_symplectic_circle".into(), self.prefactor_symplectic_circle());
        m.insert("prefactor_symplectic_torus".into(), self.prefactor_symplectic_torus(k));
        m.insert("prefactor_hk_circle".into(), self.prefactor_hk_circle());
        m.insert("prefactor_hk_torus".into(), self.prefactor_hk_torus(k));
        m.insert("oint_symplectic".into(), self.oint_symplectic(k));
        m.insert("oint_hk".into(), self.oint_hk(k));
        m
    }
}

impl Default for ConventionProfile {
    fn default() -> Self {
        Self::default_profile()
    }
}

/// Profiles registered by name.
#[derive(Clone, Debug)]
pub struct ProfileRegistry {
    profiles: BTreeMap<String, ConventionProfile>,
}

impl Default for ProfileRegistry {
    fn default() -> Self {
        let mut r = ProfileRegistry { profiles: BTreeMap::new() };
        r.register(ConventionProfile::default_profile());
        r.register(ConventionProfile::literal());
        r.register(ConventionProfile::unit_volume());
        r
    }
}

impl ProfileRegistry {
    pub fn register(&mut self, profile: ConventionProfile) {
        self.profiles.insert(profile.name.clone(), profile);
    }

    pub fn names(&self) -> Vec<&str> {
        self.profiles.keys().map(String::as_str).collect()
    }

    pub fn get(&self, name: &str) -> Result<ConventionProfile, EngineError> {
        self.profiles.get(name).cloned().ok_or_else(|| EngineError::UnknownProfile(name.to_string()))
    }

    /// Explicit name, else `$EQLOC_PROFILE`, else `default`.
    pub fn resolve(&self, explicit: Option<&str>) -> Result<ConventionProfile, EngineError> {
        match explicit {
            Some(name) => self.get(name),
            None => match std::env::var(PROFILE_ENV) {
                Ok(name) if !name.trim().is_empty() => self.get(name.trim()),
                _ => self.get("default"),
            },
        }
    }
}
