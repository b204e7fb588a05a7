//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use crate::error::OracleError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

pub type Complex = (f64, f64);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: Complex,
    /// Sum of per-panel `|K15 − G7|` estimates.
    pub error: f64,
    pub panels: usize,
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
pub fn gk15<F: Fn(f64) -> Complex>(f: &F, a: f64, b: f64) -> (Complex, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = (fc.0 * WGK[7], fc.1 * WGK[7]);
    let mut g = (fc.0 * WG[3], fc.1 * WG[3]);
    for j in 0..7 {
        let dx = h * XGK[j];
        let (l, r) = (f(c - dx), f(c + dx));
        let s = (l.0 + r.0, l.1 + r.1);
        k.0 += WGK[j] * s.0;
        k.1 += WGK[j] * s.1;
        if j % 2 == 1 {
            g.0 += WG[j / 2] * s.0;
            g.1 += WG[j / 2] * s.1;
        }
    }
    let k = (k.0 * h, k.1 * h);
    let g = (g.0 * h, g.1 * h);
    (k, (k.0 - g.0).hypot(k.1 - g.1))
}

/// Integrates `f` over `[a, b]`: uniform panels no wider than `max_width`,
/// each bisected until its error estimate is below `tol`. Panels are summed
/// left to right, so the result is independent of any scheduling.
pub fn integrate<F: Fn(f64) -> Complex>(
    f: &F,
    a: f64,
    b: f64,
    max_width: f64,
    tol: f64,
    budget: usize,
) -> Result<Quadrature, OracleError> {
    if !(a.is_finite() && b.is_finite() && max_width > 0.0 && tol > 0.0) {
        return Err(OracleError::Config(format!("bad quadrature request [{a}, {b}], width {max_width}, tol {tol}")));
    }
    if a == b {
        return Ok(Quadrature { value: (0.0, 0.0), error: 0.0, panels: 0 });
    }
    let n = ((b - a).abs() / max_width).ceil().max(1.0) as usize;
    let step = (b - a) / n as f64;
    let mut total = (0.0, 0.0);
    let mut error = 0.0;
    let mut panels = 0usize;
    let mut stack: Vec<(f64, f64, u32)> = Vec::new();
    for i in 0..n {
        let lo = a + step * i as f64;
        let hi = if i + 1 == n { b } else { a + step * (i + 1) as f64 };
        stack.push((lo, hi, 0));
        while let Some((lo, hi, depth)) = stack.pop() {
            panels += 1;
            if panels > budget {
                return Err(OracleError::QuadratureBudget { budget, a, b });
            }
            let (v, e) = gk15(f, lo, hi);
            if !(v.0.is_finite() && v.1.is_finite()) {
                return Err(OracleError::Evaluation { at: vec![lo, hi], reason: "non-finite integrand".into() });
            }
            if e <= tol || depth >= 40 {
                total.0 += v.0;
                total.1 += v.1;
                error += e;
            } else {
                let mid = 0.5 * (lo + hi);
                // right half pushed first so the left half is summed first
                stack.push((mid, hi, depth + 1));
                stack.push((lo, mid, depth + 1));
            }
        }
    }
    Ok(Quadrature { value: total, error, panels })
}
