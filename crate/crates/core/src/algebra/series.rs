//! Multivariate Laurent series over [`ComplexRational`] with per-variable
//! truncation.
//!
//! A series is a finite map from exponent vectors to coefficients, together
//! with two per-variable bounds:
//!
//! * `truncation[v]`: every coefficient whose exponent vector lies inside
//!   the box `e[v] <= truncation[v]` for all `v` is exact. [`EXACT`] means
//!   the variable is not truncated at all.
//! * `min_exponent[v]`: a lower bound on the exponent of `v` in every term
//!   of the underlying (untruncated) series. For a Laurent polynomial this is
//!   the most negative exponent present.
//!
//! Products use both bounds to decide how far the result is exact, so a
//! coefficient read through [`LaurentSeries::coeff`] is never a truncation
//! artefact.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One};

use super::complex_rational::ComplexRational;
use crate::error::AlgebraError;

/// Truncation sentinel: the variable carries no truncation.
pub const EXACT: i64 = i64::MAX;

pub type Exponent = Vec<i64>;

fn bound_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, ComplexRational>,
    truncation: Vec<i64>,
    min_exponent: Vec<i64>,
}

impl LaurentSeries {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        let k = vars.len();
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
            truncation: vec![EXACT; k],
            min_exponent: vec![EXACT; k],
        }
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, ComplexRational::one())
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: ComplexRational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exp: Exponent, c: ComplexRational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent arity");
        Self::from_terms(vars, [(exp, c)])
    }

    /// Exact Laurent polynomial from explicit terms. Repeated exponents add.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Self
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Exponent, ComplexRational)>,
    {
        let mut s = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity");
            s.accumulate(e, &c);
        }
        s.min_exponent = s.stored_min();
        s
    }

    /// Series from explicit terms, known only up to `truncation`. Terms beyond
    /// the truncation box are dropped.
    pub fn from_terms_truncated<S, I>(vars: &[S], terms: I, truncation: Vec<i64>) -> Result<Self, AlgebraError>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Exponent, ComplexRational)>,
    {
        if truncation.len() != vars.len() {
            return Err(AlgebraError::ExponentArity { expected: vars.len(), got: truncation.len() });
        }
        let mut s = Self::from_terms(vars, terms);
        s.truncation = truncation;
        s.min_exponent = s
            .stored_min()
            .into_iter()
            .zip(&s.truncation)
            .map(|(m, &t)| if m == EXACT && t != EXACT { t + 1 } else { m })
            .collect();
        s.drop_beyond_truncation();
        Ok(s)
    }

    fn accumulate(&mut self, e: Exponent, c: &ComplexRational) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                slot.is_zero()
            }
            None => {
                self.terms.insert(e.clone(), c.clone());
                false
            }
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    fn stored_min(&self) -> Vec<i64> {
        let mut m = vec![EXACT; self.vars.len()];
        for e in self.terms.keys() {
            for (slot, &x) in m.iter_mut().zip(e) {
                *slot = (*slot).min(x);
            }
        }
        m
    }

    fn drop_beyond_truncation(&mut self) {
        let t = &self.truncation;
        self.terms.retain(|e, _| e.iter().zip(t).all(|(x, b)| x <= b));
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncation(&self) -> &[i64] {
        &self.truncation
    }

    pub fn is_exact(&self) -> bool {
        self.truncation.iter().all(|&t| t == EXACT)
    }

    /// Per-variable lower bound on exponents ([`EXACT`] for the zero series).
    pub fn min_exponent(&self) -> &[i64] {
        &self.min_exponent
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn check_vars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch { left: self.vars.clone(), right: other.vars.clone() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c);
        }
        out.truncation = self.truncation.iter().zip(&other.truncation).map(|(a, b)| *a.min(b)).collect();
        out.min_exponent = self.min_exponent.iter().zip(&other.min_exponent).map(|(a, b)| *a.min(b)).collect();
        out.drop_beyond_truncation();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ComplexRational::from(-1))
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// Exact product, truncated to what both factors determine.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other)?;
        let k = self.vars.len();
        let truncation: Vec<i64> = (0..k)
            .map(|v| {
                let a = bound_add(self.truncation[v], other.min_exponent[v]);
                let b = bound_add(other.truncation[v], self.min_exponent[v]);
                a.min(b).min(self.truncation[v]).min(other.truncation[v])
            })
            .collect();
        let min_exponent: Vec<i64> =
            (0..k).map(|v| bound_add(self.min_exponent[v], other.min_exponent[v])).collect();
        let mut out = Self { vars: self.vars.clone(), terms: BTreeMap::new(), truncation, min_exponent };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().zip(&out.truncation).all(|(x, t)| x <= t) {
                    out.accumulate(e, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Lowers the truncation to `bounds` (never raises it).
    pub fn truncate(&self, bounds: &[i64]) -> Self {
        let mut out = self.clone();
        for (t, b) in out.truncation.iter_mut().zip(bounds) {
            *t = (*t).min(*b);
        }
        out.drop_beyond_truncation();
        out
    }

    /// `exp(p)` truncated at `order` in every variable.
    pub fn exp_series(p: &Self, order: i64) -> Result<Self, AlgebraError> {
        let bounds = vec![order; p.vars.len()];
        Self::exp_series_to(p, &bounds)
    }

    /// `Σ pⁿ/n!` truncated to the box `bounds`. `p` must be a polynomial
    /// without constant term; the sum then has finitely many terms in the
    /// box and is exact there.
    pub fn exp_series_to(p: &Self, bounds: &[i64]) -> Result<Self, AlgebraError> {
        if bounds.len() != p.vars.len() {
            return Err(AlgebraError::ExponentArity { expected: p.vars.len(), got: bounds.len() });
        }
        if !p.is_polynomial() {
            return Err(AlgebraError::NegativeExponent);
        }
        if p.terms.contains_key(&vec![0; p.vars.len()]) {
            return Err(AlgebraError::NonzeroConstantTerm);
        }
        if bounds.iter().any(|&b| b == EXACT) {
            return Err(AlgebraError::NotInvertible("exp_series needs a finite truncation order".into()));
        }
        let p = p.truncate(bounds);
        let mut result = Self::one(&p.vars).truncate(bounds);
        let mut power = result.clone();
        let mut n: i64 = 0;
        loop {
            n += 1;
            power = power.mul(&p)?.scale(&ComplexRational::real(BigRational::new(BigInt::one(), n.into())));
            if power.is_zero() {
                break;
            }
            result = result.add(&power)?;
        }
        result.truncation = result.truncation.iter().zip(bounds).map(|(a, b)| *a.min(b)).collect();
        result.min_exponent = vec![0; p.vars.len()];
        Ok(result)
    }

    /// Inverse of a series of the form `c·y^m·(1 + r)` where `y^m` is the
    /// per-variable minimal monomial and `r` has no negative exponents.
    /// The result is exact in the box `bounds`.
    pub fn invert_to(&self, bounds: &[i64]) -> Result<Self, AlgebraError> {
        let k = self.vars.len();
        if self.terms.is_empty() {
            return Err(AlgebraError::NotInvertible("zero series".into()));
        }
        let m = self.stored_min();
        let lead = self
            .terms
            .get(&m)
            .ok_or_else(|| AlgebraError::NotInvertible(format!("no term at the minimal monomial {m:?}")))?
            .clone();
        if self.min_exponent != m && !self.is_exact() {
            return Err(AlgebraError::NotInvertible("leading monomial is not known exactly".into()));
        }
        let lead_inv = lead.inv()?;
        // r = self / (lead·y^m) − 1, nonnegative exponents and no constant term.
        let shifted: Vec<(Exponent, ComplexRational)> = self
            .terms
            .iter()
            .filter(|(e, _)| **e != m)
            .map(|(e, c)| (e.iter().zip(&m).map(|(a, b)| a - b).collect(), c * &lead_inv))
            .collect();
        // Inverse is lead⁻¹·y^{-m}·(1 − r + r² − …); the unit part is needed to bounds + m.
        let unit_bounds: Vec<i64> = bounds.iter().zip(&m).map(|(b, mm)| bound_add(*b, *mm)).collect();
        if unit_bounds.iter().any(|&b| b == EXACT) {
            return Err(AlgebraError::NotInvertible("inversion needs a finite truncation order".into()));
        }
        let self_trunc_unit: Vec<i64> =
            self.truncation.iter().zip(&m).map(|(t, mm)| if *t == EXACT { EXACT } else { t - mm }).collect();
        let r = Self::from_terms(&self.vars, shifted).truncate(&self_trunc_unit);
        let neg_r = r.neg();
        let mut unit_inv = Self::one(&self.vars).truncate(&unit_bounds);
        let mut power = unit_inv.clone();
        loop {
            power = power.mul(&neg_r)?;
            if power.is_zero() {
                break;
            }
            unit_inv = unit_inv.add(&power)?;
        }
        unit_inv.min_exponent = vec![0; k];
        let neg_m: Exponent = m.iter().map(|x| -x).collect();
        let mono = Self::monomial(&self.vars, neg_m, lead_inv);
        let mut out = mono.mul(&unit_inv)?;
        out.truncation = out.truncation.iter().zip(bounds).map(|(a, b)| *a.min(b)).collect();
        out.drop_beyond_truncation();
        Ok(out)
    }

    /// Coefficient of the monomial `y^exponent`.
    pub fn coeff(&self, exponent: &[i64]) -> Result<ComplexRational, AlgebraError> {
        if exponent.len() != self.vars.len() {
            return Err(AlgebraError::ExponentArity { expected: self.vars.len(), got: exponent.len() });
        }
        for (v, (&e, &t)) in exponent.iter().zip(&self.truncation).enumerate() {
            if e > t {
                return Err(AlgebraError::InsufficientTruncation {
                    var: self.vars[v].clone(),
                    requested: e,
                    available: t,
                });
            }
        }
        Ok(self.terms.get(exponent).cloned().unwrap_or_default())
    }

    /// Coefficient of `var^exponent`, as a series in the remaining variables.
    pub fn coeff_in(&self, var: &str, exponent: i64) -> Result<Self, AlgebraError> {
        let v = self.var_index(var)?;
        if exponent > self.truncation[v] {
            return Err(AlgebraError::InsufficientTruncation {
                var: var.to_string(),
                requested: exponent,
                available: self.truncation[v],
            });
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| i != v).collect();
        let pick = |xs: &[i64]| keep.iter().map(|&i| xs[i]).collect::<Vec<_>>();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            if e[v] == exponent {
                out.accumulate(pick(e), c);
            }
        }
        out.truncation = pick(&self.truncation);
        out.min_exponent = pick(&self.min_exponent);
        Ok(out)
    }

    /// Iterated extraction: `Coeff_{v₁^{e₁}}` first, then `v₂`, … in `order`.
    pub fn coeff_iterated(&self, order: &[String], exponents: &[i64]) -> Result<ComplexRational, AlgebraError> {
        if order.len() != self.vars.len() || exponents.len() != order.len() {
            return Err(AlgebraError::ExponentArity { expected: self.vars.len(), got: order.len() });
        }
        let mut cur = self.clone();
        for (var, &e) in order.iter().zip(exponents) {
            cur = cur.coeff_in(var, e)?;
        }
        Ok(cur.terms.get(&Vec::new()).cloned().unwrap_or_default())
    }

    /// `½(f(var) + f(−var))`: keeps the even powers of `var`.
    pub fn even_projector(&self, var: &str) -> Result<Self, AlgebraError> {
        let v = self.var_index(var)?;
        let mut out = self.clone();
        out.terms.retain(|e, _| e[v].rem_euclid(2) == 0);
        Ok(out)
    }

    /// Replaces `var²` by `new_var` in a series that is even in `var`.
    pub fn substitute_sqrt(&self, var: &str, new_var: &str) -> Result<Self, AlgebraError> {
        let v = self.var_index(var)?;
        if self.terms.keys().any(|e| e[v].rem_euclid(2) != 0) {
            return Err(AlgebraError::NotInvertible(format!("odd power of {var} survives; √ substitution undefined")));
        }
        let mut vars = self.vars.clone();
        vars[v] = new_var.to_string();
        let halve = |x: i64| if x == EXACT { EXACT } else { x.div_euclid(2) };
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e[v] /= 2;
            (e, c.clone())
        });
        let mut out = Self::from_terms(&vars, terms);
        out.truncation = self.truncation.clone();
        out.truncation[v] = halve(self.truncation[v]);
        out.min_exponent = self.min_exponent.clone();
        out.min_exponent[v] = if self.min_exponent[v] == EXACT { EXACT } else { self.min_exponent[v].div_euclid(2) };
        Ok(out)
    }

    /// Terms with at least one negative exponent.
    pub fn principal_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.retain(|e, _| e.iter().any(|&x| x < 0));
        out
    }

    /// Renames variables (same arity); used when re-running under another order.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self, AlgebraError> {
        if vars.len() != self.vars.len() {
            return Err(AlgebraError::ExponentArity { expected: self.vars.len(), got: vars.len() });
        }
        let mut out = self.clone();
        out.vars = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Ok(out)
    }

    /// Reorders variables to `order` (a permutation of the current list).
    pub fn permute_vars(&self, order: &[String]) -> Result<Self, AlgebraError> {
        let idx: Vec<usize> = order.iter().map(|v| self.var_index(v)).collect::<Result<_, _>>()?;
        if idx.len() != self.vars.len() {
            return Err(AlgebraError::ExponentArity { expected: self.vars.len(), got: idx.len() });
        }
        let pick = |xs: &[i64]| idx.iter().map(|&i| xs[i]).collect::<Vec<_>>();
        let mut out = Self::zero(order);
        for (e, c) in &self.terms {
            out.accumulate(pick(e), c);
        }
        out.truncation = pick(&self.truncation);
        out.min_exponent = pick(&self.min_exponent);
        Ok(out)
    }

    /// Maps every exponent vector through `f`, keeping coefficients. The
    /// caller supplies the new truncation and lower bounds.
    pub fn map_exponents<F>(&self, f: F, truncation: Vec<i64>, min_exponent: Vec<i64>) -> Self
    where
        F: Fn(&[i64]) -> Exponent,
    {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.accumulate(f(e), c);
        }
        out.truncation = truncation;
        out.min_exponent = min_exponent;
        out
    }

    /// Evaluates the stored terms at a complex point given as `(re, im)` pairs.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (e, c) in &self.terms {
            let (cr, ci) = c.to_f64();
            let mut t = (cr, ci);
            for (&(zr, zi), &x) in point.iter().zip(e) {
                let z = cpowi((zr, zi), x);
                t = (t.0 * z.0 - t.1 * z.1, t.0 * z.1 + t.1 * z.0);
            }
            acc.0 += t.0;
            acc.1 += t.1;
        }
        acc
    }

    /// Canonical text form: one `(re,im) v1^e1 ... vk^ek` line per term, in
    /// lexicographic exponent order; `0` for the zero series.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = self.vars.iter().zip(e).map(|(v, x)| format!("{v}^{x}")).collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{} {}", c, mono.join(" "))
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Largest coefficient magnitude, for tolerance scaling.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.magnitude_f64()).fold(0.0, f64::max)
    }
}

fn cpowi(z: (f64, f64), n: i64) -> (f64, f64) {
    let (mut base, mut e) = if n < 0 {
        let d = z.0 * z.0 + z.1 * z.1;
        ((z.0 / d, -z.1 / d), (-n) as u64)
    } else {
        (z, n as u64)
    };
    let mut acc = (1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc.0 * base.0 - acc.1 * base.1, acc.0 * base.1 + acc.1 * base.0);
        }
        base = (base.0 * base.0 - base.1 * base.1, 2.0 * base.0 * base.1);
        e >>= 1;
    }
    acc
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries[{:?}; trunc {:?}]{{{}}}", self.vars, self.truncation, self.render().replace('\n', " + "))
    }
}
