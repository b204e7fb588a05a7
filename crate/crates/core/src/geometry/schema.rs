use serde::{Deserialize, Serialize};

use super::{
    FixedPointAtlas, FixedPointDatum, Geometry, GroupKind, GroupSpec, PointMode, RootSystemData, SubmanifoldRestriction,
};
use crate::algebra::wire::{to_canonical_json, RationalWire, SeriesWire};
use crate::algebra::SymbolicConstant;
use crate::error::AtlasError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupWire {
    kind: GroupKind,
    rank: usize,
    s: usize,
    vol: SymbolicConstant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roots: Option<RootSystemData>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FixedPointWire {
    name: String,
    mode: PointMode,
    moment: Vec<RationalWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    moment_hk: Option<Vec<[RationalWire; 3]>>,
    weights: Vec<Vec<i64>>,
    eta: SeriesWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    raw: Option<SeriesWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubmanifoldWire {
    #[serde(rename = "codim_L")]
    codim_l: i64,
}

/// Document form of an atlas, field-for-field with the JSON schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasWire {
    group: GroupWire,
    geometry: Geometry,
    #[serde(rename = "dim_M")]
    dim_m: i64,
    dim_quotient: i64,
    deg_eta0: i64,
    variable_order: Vec<String>,
    fixed_points: Vec<FixedPointWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    submanifold: Option<SubmanifoldWire>,
}

impl AtlasWire {
    pub fn into_atlas(self) -> Result<FixedPointAtlas, AtlasError> {
        let vars = self.variable_order.clone();
        let fixed_points = self
            .fixed_points
            .into_iter()
            .map(|fp| {
                let ctx = |field: &str, e: crate::error::AlgebraError| AtlasError::FixedPoint {
                    point: fp.name.clone(),
                    field: field.into(),
                    message: e.to_string(),
                };
                let eta = fp.eta.to_series(&vars).map_err(|e| ctx("eta", e))?;
                let raw = match &fp.raw {
                    Some(r) => Some(r.to_series(&vars).map_err(|e| ctx("raw", e))?),
                    None => None,
                };
                Ok(FixedPointDatum {
                    name: fp.name.clone(),
                    mode: fp.mode,
                    moment: fp.moment.into_iter().map(|r| r.0).collect(),
                    moment_hk: fp.moment_hk.map(|v| v.into_iter().map(|[a, b, c]| [a.0, b.0, c.0]).collect()),
                    weights: fp.weights,
                    eta,
                    raw,
                })
            })
            .collect::<Result<Vec<_>, AtlasError>>()?;
        let atlas = FixedPointAtlas {
            group: GroupSpec {
                kind: self.group.kind,
                rank: self.group.rank,
                s: self.group.s,
                vol: self.group.vol,
                roots: self.group.roots,
            },
            geometry: self.geometry,
            dim_m: self.dim_m,
            dim_quotient: self.dim_quotient,
            deg_eta0: self.deg_eta0,
            variable_order: self.variable_order,
            fixed_points,
            submanifold: self.submanifold.map(|s| SubmanifoldRestriction { codim_l: s.codim_l }),
        };
        atlas.validate()?;
        Ok(atlas)
    }

    pub fn from_atlas(a: &FixedPointAtlas) -> Self {
        AtlasWire {
            group: GroupWire {
                kind: a.group.kind,
                rank: a.group.rank,
                s: a.group.s,
                vol: a.group.vol.clone(),
                roots: a.group.roots.clone(),
            },
            geometry: a.geometry,
            dim_m: a.dim_m,
            dim_quotient: a.dim_quotient,
            deg_eta0: a.deg_eta0,
            variable_order: a.variable_order.clone(),
            fixed_points: a
                .fixed_points
                .iter()
                .map(|fp| FixedPointWire {
                    name: fp.name.clone(),
                    mode: fp.mode,
                    moment: fp.moment.iter().cloned().map(RationalWire).collect(),
                    moment_hk: fp.moment_hk.as_ref().map(|v| {
                        v.iter()
                            .map(|[a, b, c]| [RationalWire(a.clone()), RationalWire(b.clone()), RationalWire(c.clone())])
                            .collect()
                    }),
                    weights: fp.weights.clone(),
                    eta: SeriesWire::from_series(&fp.eta),
                    raw: fp.raw.as_ref().map(|r| {
                        let mut w = SeriesWire::from_series(r);
                        if !r.is_exact() {
                            w.truncation = Some(r.truncation().to_vec());
                        }
                        w
                    }),
                })
                .collect(),
            submanifold: a.submanifold.map(|s| SubmanifoldWire { codim_l: s.codim_l }),
        }
    }
}

/// Parses and validates an atlas document.
pub fn parse_atlas(document: &str) -> Result<FixedPointAtlas, AtlasError> {
    let wire: AtlasWire = serde_json::from_str(document).map_err(|e| AtlasError::Schema(e.to_string()))?;
    wire.into_atlas()
}

/// Canonical JSON form (sorted keys, integer-pair rationals).
pub fn serialize_atlas(atlas: &FixedPointAtlas) -> String {
    to_canonical_json(&AtlasWire::from_atlas(atlas))
}
