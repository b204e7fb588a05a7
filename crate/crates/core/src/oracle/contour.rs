use std::f64::consts::PI;

use crate::algebra::LaurentSeries;
use crate::error::OracleError;

pub const CONTOUR_RADIUS: f64 = 0.5;
pub const CONTOUR_NODES: usize = 4096;

/// Approximates `Coeff_{var^{-m}} f` by the trapezoid rule on the circle
/// `|y| = 1/2`: `(1/N) Σ_j f(z_j) z_j^m`.
pub fn contour_coeff(f: &LaurentSeries, m: i64) -> Result<(f64, f64), OracleError> {
    contour_coeff_with(f, m, CONTOUR_RADIUS, CONTOUR_NODES)
}

pub fn contour_coeff_with(f: &LaurentSeries, m: i64, r: f64, n: usize) -> Result<(f64, f64), OracleError> {
    if f.vars().len() != 1 {
        return Err(OracleError::Unsupported(format!("contour extraction is univariate, got {} variables", f.vars().len())));
    }
    if n == 0 || !(r > 0.0) {
        return Err(OracleError::Config("contour needs a positive radius and node count".into()));
    }
    let terms: Vec<(i64, f64, f64)> = f
        .terms()
        .map(|(e, c)| {
            let (re, im) = c.to_f64();
            (e[0] + m, re, im)
        })
        .collect();
    let mut acc = (0.0, 0.0);
    for j in 0..n {
        let theta = 2.0 * PI * j as f64 / n as f64;
        for &(p, cr, ci) in &terms {
            // c · r^p · e^{ipθ}
            let mag = r.powi(p as i32);
            let (s, c) = (p as f64 * theta).sin_cos();
            acc.0 += mag * (cr * c - ci * s);
            acc.1 += mag * (cr * s + ci * c);
        }
    }
    Ok((acc.0 / n as f64, acc.1 / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ComplexRational;

    #[test]
    fn simple_poles() {
        let inv_y = LaurentSeries::monomial(&["y"], vec![-1], ComplexRational::one());
        let (re, im) = contour_coeff(&inv_y, 1).unwrap();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        let y2 = LaurentSeries::monomial(&["y"], vec![2], ComplexRational::one());
        let (re, im) = contour_coeff(&y2, 1).unwrap();
        assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn exp_iy_over_y_cubed() {
        let iy = LaurentSeries::monomial(&["y"], vec![1], ComplexRational::i());
        let f = LaurentSeries::exp_series(&iy, 8)
            .unwrap()
            .mul(&LaurentSeries::monomial(&["y"], vec![-3], ComplexRational::one()))
            .unwrap();
        let (re, im) = contour_coeff(&f, 1).unwrap();
        assert!((re + 0.5).abs() < 1e-10 && im.abs() < 1e-10);
    }
}
