//! Builtin atlases: the two-sphere, seeded random generators and the
//! hyperkähler examples shipped as golden files.

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FixedPointAtlas, FixedPointDatum, Geometry, GroupKind, GroupSpec, PointMode};
use crate::algebra::{ComplexRational, LaurentSeries};
use crate::error::AtlasError;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn y_vars() -> Vec<String> {
    vec!["y".to_string()]
}

/// Circle acting on S² by rotation: north pole `μ = +1`, weight `+1`;
/// south pole `μ = −1`, weight `−1`; `η = 1`.
pub fn sphere_s2() -> FixedPointAtlas {
    let vars = y_vars();
    let point = |name: &str, sign: i64| FixedPointDatum {
        name: name.into(),
        mode: PointMode::Structured,
        moment: vec![q(sign, 1)],
        moment_hk: None,
        weights: vec![vec![sign]],
        eta: LaurentSeries::one(&vars),
        raw: None,
    };
    FixedPointAtlas {
        group: GroupSpec::circle(),
        geometry: Geometry::Symplectic,
        dim_m: 2,
        dim_quotient: 0,
        deg_eta0: 0,
        variable_order: vars.clone(),
        fixed_points: vec![point("N", 1), point("S", -1)],
        submanifold: None,
    }
}

fn random_complex(rng: &mut ChaCha8Rng, nonzero: bool) -> ComplexRational {
    loop {
        let re = q(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let im = if rng.gen_bool(0.5) { q(rng.gen_range(-5..=5), rng.gen_range(1..=4)) } else { BigRational::zero() };
        let c = ComplexRational::new(re, im);
        if !nonzero || !c.is_zero() {
            return c;
        }
    }
}

fn nonzero_weight(rng: &mut ChaCha8Rng) -> i64 {
    let w = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        w
    } else {
        -w
    }
}

/// Random symplectic circle atlas whose fixed points come in mirror pairs
/// `(μ, w)`, `(−μ, −w)` with a shared restriction `η = y^{d−1}·p(y)`.
///
/// With an odd number `d` of tangent lines each pair contributes
/// `2i·p(y)·sin(μy)/(W·y)`, so the full localization sum is entire.
pub fn mirror_pair(seed: u64) -> FixedPointAtlas {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = y_vars();
    let d: usize = if rng.gen_bool(0.5) { 1 } else { 3 };
    let pairs = rng.gen_range(1..=3);
    let mut fixed_points = Vec::new();
    let mut residue_sum = ComplexRational::zero();
    for p in 0..pairs {
        let mu = q(rng.gen_range(1..=6), 2);
        let weights: Vec<i64> = (0..d).map(|_| if d == 1 { rng.gen_range(1..=3) } else { nonzero_weight(&mut rng) }).collect();
        let mut p0 = random_complex(&mut rng, true);
        let p1 = if rng.gen_bool(0.5) { random_complex(&mut rng, false) } else { ComplexRational::zero() };
        let w_prod: i64 = weights.iter().product();
        let share = p0.scale(&q(1, w_prod));
        if p + 1 == pairs && (&residue_sum + &share).is_zero() {
            p0 = &p0 + &p0;
        }
        residue_sum += &p0.scale(&q(1, w_prod));
        let shift = (d - 1) as i64;
        let eta = LaurentSeries::from_terms(&vars, [(vec![shift], p0), (vec![shift + 1], p1)]);
        for (tag, sign) in [("+", 1i64), ("-", -1i64)] {
            fixed_points.push(FixedPointDatum {
                name: format!("P{p}{tag}"),
                mode: PointMode::Structured,
                moment: vec![&mu * &q(sign, 1)],
                moment_hk: None,
                weights: weights.iter().map(|w| vec![w * sign]).collect(),
                eta: eta.clone(),
                raw: None,
            });
        }
    }
    let dim_m = 2 * d as i64;
    FixedPointAtlas {
        group: GroupSpec::circle(),
        geometry: Geometry::Symplectic,
        dim_m,
        dim_quotient: dim_m - 2,
        deg_eta0: 0,
        variable_order: vars,
        fixed_points,
        submanifold: None,
    }
}

fn random_hk_triple(rng: &mut ChaCha8Rng) -> [BigRational; 3] {
    loop {
        let t = [0, 1, 2].map(|_| q(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        if t.iter().any(|c| !c.is_zero()) {
            return t;
        }
    }
}

fn random_polynomial(rng: &mut ChaCha8Rng, vars: &[String], max_degree: i64) -> LaurentSeries {
    let k = vars.len();
    let n = rng.gen_range(1..=4);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let e: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=max_degree)).collect();
            (e, random_complex(rng, true))
        })
        .collect();
    LaurentSeries::from_terms(vars, terms)
}

/// Random hyperkähler circle atlas: nonzero moment triples, weights in
/// `{±1, ±2, ±3}`, random polynomial restrictions with odd and even parts.
pub fn hk_synthetic(seed: u64) -> FixedPointAtlas {
    let mut atlas = hk_synthetic_torus(seed, 1);
    atlas.group = GroupSpec::circle();
    atlas
}

/// Rank-`k` version of [`hk_synthetic`] with a torus group; tangent weights
/// are arbitrary nonzero integer vectors, so Euler classes mix variables.
pub fn hk_synthetic_torus(seed: u64, rank: usize) -> FixedPointAtlas {
    assert!(rank >= 1, "rank must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b79_6e74_6865_7469);
    let vars: Vec<String> = if rank == 1 { y_vars() } else { (1..=rank).map(|i| format!("y{i}")).collect() };
    let lines = 2 * rank + if rng.gen_bool(0.5) { 0 } else { 2 };
    let dim_m = 2 * lines as i64;
    let dim_quotient = dim_m - 4 * rank as i64;
    let npoints = rng.gen_range(1..=4);
    let fixed_points = (0..npoints)
        .map(|p| {
            let weights = (0..lines)
                .map(|_| loop {
                    let w: Vec<i64> = if rank == 1 {
                        vec![nonzero_weight(&mut rng)]
                    } else {
                        (0..rank).map(|_| rng.gen_range(-3..=3)).collect()
                    };
                    if w.iter().any(|&x| x != 0) {
                        break w;
                    }
                })
                .collect();
            FixedPointDatum {
                name: format!("F{p}"),
                mode: PointMode::Structured,
                moment: Vec::new(),
                moment_hk: Some((0..rank).map(|_| random_hk_triple(&mut rng)).collect()),
                weights,
                eta: random_polynomial(&mut rng, &vars, 3),
                raw: None,
            }
        })
        .collect();
    let deg_eta0 = rng.gen_range(0..=dim_quotient);
    FixedPointAtlas {
        group: GroupSpec::torus(rank),
        geometry: Geometry::Hyperkahler,
        dim_m,
        dim_quotient,
        deg_eta0,
        variable_order: vars,
        fixed_points,
        submanifold: None,
    }
}

/// One hyperkähler fixed point with `|μ⃗|² = 2`, `e = y⁴`, `η = 1`.
pub fn hk_point() -> FixedPointAtlas {
    hk_single(&[q(1, 1), q(1, 1), q(0, 1)], &[1, 1, 1, 1], LaurentSeries::one(&y_vars()), "F")
}

fn hk_single(mu: &[BigRational; 3], weights: &[i64], eta: LaurentSeries, name: &str) -> FixedPointAtlas {
    let dim_m = 2 * weights.len() as i64;
    FixedPointAtlas {
        group: GroupSpec::circle(),
        geometry: Geometry::Hyperkahler,
        dim_m,
        dim_quotient: dim_m - 4,
        deg_eta0: 0,
        variable_order: y_vars(),
        fixed_points: vec![FixedPointDatum {
            name: name.into(),
            mode: PointMode::Structured,
            moment: Vec::new(),
            moment_hk: Some(vec![mu.clone()]),
            weights: weights.iter().map(|&w| vec![w]).collect(),
            eta,
            raw: None,
        }],
        submanifold: None,
    }
}

/// Product of [`hk_point`] with a second point (`|μ⃗|² = 1`, `e = −2y⁴`,
/// `η = 1 + y²`): a separable rank-2 hyperkähler atlas.
pub fn hk_torus_rank2() -> FixedPointAtlas {
    let vars = y_vars();
    let eta = LaurentSeries::from_terms(&vars, [(vec![0], ComplexRational::one()), (vec![2], ComplexRational::one())]);
    let second = hk_single(&[q(1, 1), q(0, 1), q(0, 1)], &[1, 1, -1, 2], eta, "G");
    product_atlas(&hk_point(), &second).expect("compatible factors")
}

/// Cartesian product of two circle atlases of the same geometry, acted on by
/// the rank-2 torus. Fixed points are pairs; weights and moments split by
/// factor, and the restriction is `η_A(y1)·η_B(y2)`.
pub fn product_atlas(a: &FixedPointAtlas, b: &FixedPointAtlas) -> Result<FixedPointAtlas, AtlasError> {
    if a.group.kind != GroupKind::Circle || b.group.kind != GroupKind::Circle {
        return Err(AtlasError::Invariant("product_atlas takes two circle atlases".into()));
    }
    if a.geometry != b.geometry {
        return Err(AtlasError::Invariant("product_atlas factors have different geometries".into()));
    }
    let vars = vec!["y1".to_string(), "y2".to_string()];
    let lift = |s: &LaurentSeries, slot: usize| {
        LaurentSeries::from_terms(
            &vars,
            s.terms().map(|(e, c)| {
                let mut x = vec![0, 0];
                x[slot] = e[0];
                (x, c.clone())
            }),
        )
    };
    let mut fixed_points = Vec::new();
    for fa in &a.fixed_points {
        for fb in &b.fixed_points {
            if fa.mode != PointMode::Structured || fb.mode != PointMode::Structured {
                return Err(AtlasError::Invariant("product_atlas needs structured fixed points".into()));
            }
            let weights = fa.weights.iter().map(|w| vec![w[0], 0]).chain(fb.weights.iter().map(|w| vec![0, w[0]])).collect();
            let moment_hk = match (&fa.moment_hk, &fb.moment_hk) {
                (Some(x), Some(y)) => Some(vec![x[0].clone(), y[0].clone()]),
                _ => None,
            };
            let moment = if fa.moment.is_empty() || fb.moment.is_empty() {
                Vec::new()
            } else {
                vec![fa.moment[0].clone(), fb.moment[0].clone()]
            };
            fixed_points.push(FixedPointDatum {
                name: format!("{}x{}", fa.name, fb.name),
                mode: PointMode::Structured,
                moment,
                moment_hk,
                weights,
                eta: lift(&fa.eta, 0).mul(&lift(&fb.eta, 1))?,
                raw: None,
            });
        }
    }
    let dim_m = a.dim_m + b.dim_m;
    let per = match a.geometry {
        Geometry::Symplectic => 2,
        Geometry::Hyperkahler => 4,
    };
    let atlas = FixedPointAtlas {
        group: GroupSpec::torus(2),
        geometry: a.geometry,
        dim_m,
        dim_quotient: dim_m - 2 * per,
        deg_eta0: a.deg_eta0 + b.deg_eta0,
        variable_order: vars,
        fixed_points,
        submanifold: None,
    };
    atlas.validate()?;
    Ok(atlas)
}

/// Looks up `sphere_S2`, `mirror_pair(seed)`, `hk_synthetic(seed)`,
/// `hk_point` or `hk_torus_rank2`.
pub fn builtin_atlas(name: &str) -> Result<FixedPointAtlas, AtlasError> {
    let name = name.trim();
    let seeded = |prefix: &str| -> Option<u64> {
        name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.trim().parse().ok()
    };
    if name.eq_ignore_ascii_case("sphere_s2") {
        return Ok(sphere_s2());
    }
    if name == "hk_point" {
        return Ok(hk_point());
    }
    if name == "hk_torus_rank2" {
        return Ok(hk_torus_rank2());
    }
    if let Some(seed) = seeded("mirror_pair") {
        return Ok(mirror_pair(seed));
    }
    if let Some(seed) = seeded("hk_synthetic") {
        return Ok(hk_synthetic(seed));
    }
    Err(AtlasError::UnknownBuiltin(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_has_two_points() {
        assert_eq!(builtin_atlas("sphere_S2").unwrap().fixed_points.len(), 2);
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(builtin_atlas("mirror_pair(7)").unwrap(), builtin_atlas("mirror_pair(7)").unwrap());
        assert_eq!(hk_synthetic(11), hk_synthetic(11));
        assert_ne!(mirror_pair(1), mirror_pair(2));
    }

    #[test]
    fn generated_atlases_validate() {
        for seed in 0..50 {
            mirror_pair(seed).validate().unwrap();
            hk_synthetic(seed).validate().unwrap();
            hk_synthetic_torus(seed, 2).validate().unwrap();
        }
        hk_point().validate().unwrap();
        hk_torus_rank2().validate().unwrap();
    }

    #[test]
    fn hk_synthetic_moments_are_nonzero() {
        let a = hk_synthetic(1);
        for fp in &a.fixed_points {
            assert!(fp.hk_norm_sq(0).unwrap() > BigRational::zero());
        }
    }

    #[test]
    fn mirror_points_pair_up() {
        for seed in 0..20 {
            let a = mirror_pair(seed);
            for pair in a.fixed_points.chunks(2) {
                assert_eq!(pair[0].moment[0], -pair[1].moment[0].clone());
                assert_eq!(pair[0].eta, pair[1].eta);
                for (w, v) in pair[0].weights.iter().zip(&pair[1].weights) {
                    assert_eq!(w[0], -v[0]);
                }
            }
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert_eq!(builtin_atlas("torus_T9"), Err(AtlasError::UnknownBuiltin("torus_T9".into())));
    }
}
