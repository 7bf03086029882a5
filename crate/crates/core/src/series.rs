//! Truncated multivariate formal power series over exact coefficients.
//!
//! Exponents are vectors of exact rationals (the pairings of a class with a
//! fixed basis of covectors), graded by a rational weight vector. A series
//! stores only terms of grade at most its truncation order; asking for a
//! coefficient beyond the order is an error, never a silent zero.

use crate::error::{Error, Result};
use crate::util::{rat_string, rat_int};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Coefficient domain: exact field arithmetic plus an embedding of Q.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: &BigRational) -> Self;
    fn coeff_string(&self) -> String;
}

impl Coeff for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn coeff_string(&self) -> String {
        rat_string(self)
    }
}

/// Exact Gaussian rational `re + im * i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }
    pub fn i() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::one())
    }
    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        GaussRational::new(&self.re / &n, -&self.im / &n)
    }
    /// i^k for any integer k.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussRational::one(),
            1 => GaussRational::i(),
            2 => -GaussRational::one(),
            _ => -GaussRational::i(),
        }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Mul for GaussRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussRational {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Coeff for GaussRational {
    fn from_rational(q: &BigRational) -> Self {
        GaussRational::new(q.clone(), BigRational::zero())
    }
    fn coeff_string(&self) -> String {
        if self.im.is_zero() {
            rat_string(&self.re)
        } else {
            format!("{}+{}i", rat_string(&self.re), rat_string(&self.im))
        }
    }
}

/// Which family of variables a series lives in. Weights are the
/// grading-covector degrees of the individual variables; two series may be
/// combined only when their systems agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SystemKind {
    /// Complex-moduli chart variables `y_1 ... y_r`.
    Y,
    /// Kahler-side variables `q_1 ... q_{r'}` followed by `tau` components.
    QTau { num_q: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSystem {
    pub kind: SystemKind,
    pub names: Vec<String>,
    #[serde(with = "crate::series::rat_vec_serde")]
    pub weights: Vec<BigRational>,
}

pub(crate) mod rat_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_string).collect();
        serde::Serialize::serialize(&strings, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<BigRational>, D::Error> {
        let strings: Vec<String> = serde::Deserialize::deserialize(de)?;
        strings
            .iter()
            .map(|s| crate::util::parse_rat(s).ok_or_else(|| serde::de::Error::custom("bad rational")))
            .collect()
    }
}

impl VarSystem {
    pub fn y(weights: Vec<BigRational>) -> Self {
        let names = (1..=weights.len()).map(|i| format!("y{i}")).collect();
        VarSystem {
            kind: SystemKind::Y,
            names,
            weights,
        }
    }

    pub fn qtau(q_weights: Vec<BigRational>, tau_weights: Vec<BigRational>, tau_names: Vec<String>) -> Self {
        let num_q = q_weights.len();
        let mut names: Vec<String> = (1..=num_q).map(|i| format!("q{i}")).collect();
        names.extend(tau_names);
        let mut weights = q_weights;
        weights.extend(tau_weights);
        VarSystem {
            kind: SystemKind::QTau { num_q },
            names,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn degree(&self, exp: &[BigRational]) -> BigRational {
        exp.iter()
            .zip(&self.weights)
            .map(|(e, w)| e * w)
            .fold(BigRational::zero(), |a, t| a + t)
    }
}

/// Truncated formal series: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<C: Coeff> {
    pub vars: VarSystem,
    pub order: BigRational,
    terms: BTreeMap<Vec<BigRational>, C>,
}

pub type RatSeries = MultiSeries<BigRational>;

impl<C: Coeff> MultiSeries<C> {
    pub fn zero(vars: VarSystem, order: BigRational) -> Self {
        MultiSeries {
            vars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: VarSystem, order: BigRational) -> Self {
        let mut s = Self::zero(vars, order);
        let zero_exp = vec![BigRational::zero(); s.vars.len()];
        s.terms.insert(zero_exp, C::one());
        s
    }

    pub fn constant(vars: VarSystem, order: BigRational, c: C) -> Self {
        let mut s = Self::zero(vars, order);
        if !c.is_zero() {
            let zero_exp = vec![BigRational::zero(); s.vars.len()];
            s.terms.insert(zero_exp, c);
        }
        s
    }

    pub fn monomial(vars: VarSystem, order: BigRational, exp: Vec<BigRational>, c: C) -> Self {
        let mut s = Self::zero(vars, order);
        s.add_term(exp, c);
        s
    }

    /// Insert (adding) a term, dropping it beyond truncation or when zero.
    pub fn add_term(&mut self, exp: Vec<BigRational>, c: C) {
        assert_eq!(exp.len(), self.vars.len(), "exponent arity mismatch");
        if c.is_zero() || self.vars.degree(&exp) > self.order {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<BigRational>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        let zero_exp = vec![BigRational::zero(); self.vars.len()];
        self.terms.get(&zero_exp).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest positive grade among the terms, ignoring the constant term.
    pub fn min_positive_degree(&self) -> Option<BigRational> {
        self.terms
            .keys()
            .map(|e| self.vars.degree(e))
            .filter(|d| d.is_positive())
            .min()
    }

    /// Exact coefficient at `exp`; degree beyond truncation is an error.
    pub fn coefficient(&self, exp: &[BigRational]) -> Result<C> {
        let d = self.vars.degree(exp);
        if d > self.order {
            return Err(Error::BeyondTruncation {
                degree: rat_string(&d),
                order: rat_string(&self.order),
            });
        }
        Ok(self.terms.get(exp).cloned().unwrap_or_else(C::zero))
    }

    pub fn truncate(&self, order: BigRational) -> Self {
        let mut out = Self::zero(self.vars.clone(), order.clone());
        for (e, c) in &self.terms {
            if self.vars.degree(e) <= order {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.order.clone());
        for (e, c) in &self.terms {
            let c = f(c);
            if !c.is_zero() {
                out.terms.insert(e.clone(), c);
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x.clone())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!(
                "{:?} vs {:?}",
                self.vars.names, other.vars.names
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.clone().min(other.order.clone());
        let mut out = self.truncate(order);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact convolution, truncated at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let order = self.order.clone().min(other.order.clone());
        let mut out = Self::zero(self.vars.clone(), order.clone());
        for (ea, ca) in &self.terms {
            let da = self.vars.degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &other.terms {
                let db = self.vars.degree(eb);
                if &da + &db > order {
                    continue;
                }
                let exp: Vec<BigRational> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exp, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Multiply every term by the monomial `exp` (may carry negative grade;
    /// terms pushed beyond the truncation order are dropped, so the result
    /// is exact to the stated order only when `exp` has nonnegative grade).
    pub fn shift(&self, exp: &[BigRational]) -> Self {
        let mut out = Self::zero(self.vars.clone(), self.order.clone());
        for (e, c) in &self.terms {
            let shifted: Vec<BigRational> = e.iter().zip(exp).map(|(x, y)| x + y).collect();
            out.add_term(shifted, c.clone());
        }
        out
    }

    /// exp(A) for A with zero constant term and strictly positive grades.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm(format!(
                "exp needs zero constant term, found {}",
                self.constant_term().coeff_string()
            )));
        }
        if self
            .terms
            .keys()
            .any(|e| !self.vars.degree(e).is_positive())
        {
            return Err(Error::ConstantTerm(
                "exp argument has a term of non-positive grade".into(),
            ));
        }
        let mut out = Self::one(self.vars.clone(), self.order.clone());
        let Some(min_deg) = self.min_positive_degree() else {
            return Ok(out);
        };
        let max_k = (self.order.clone() / min_deg).floor().to_integer();
        let mut power = Self::one(self.vars.clone(), self.order.clone());
        let mut factorial = BigRational::one();
        let mut k = BigInt::one();
        while k <= max_k {
            power = power.mul(self)?;
            factorial *= BigRational::from_integer(k.clone());
            let inv = C::from_rational(&factorial.recip());
            out = out.add(&power.scale(&inv))?;
            k += 1;
        }
        Ok(out)
    }

    /// log(A) for A with constant term exactly 1.
    pub fn log_series(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm(format!(
                "log needs constant term 1, found {}",
                self.constant_term().coeff_string()
            )));
        }
        let one = Self::one(self.vars.clone(), self.order.clone());
        let u = self.sub(&one)?;
        if u.terms.keys().any(|e| !self.vars.degree(e).is_positive()) {
            return Err(Error::ConstantTerm(
                "log argument has a non-constant term of non-positive grade".into(),
            ));
        }
        let mut out = Self::zero(self.vars.clone(), self.order.clone());
        let Some(min_deg) = u.min_positive_degree() else {
            return Ok(out);
        };
        let max_k = (self.order.clone() / min_deg).floor().to_integer();
        let mut power = Self::one(self.vars.clone(), self.order.clone());
        let mut k = BigInt::one();
        while k <= max_k {
            power = power.mul(&u)?;
            let sign = if (&k % BigInt::from(2)).is_one() {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let coeff = C::from_rational(&(sign / BigRational::from_integer(k.clone())));
            out = out.add(&power.scale(&coeff))?;
            k += 1;
        }
        Ok(out)
    }

    /// A^e for rational e, A with constant term exactly 1 (binomial series).
    pub fn pow_series(&self, e: &BigRational) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm(format!(
                "pow needs constant term 1, found {}",
                self.constant_term().coeff_string()
            )));
        }
        let one = Self::one(self.vars.clone(), self.order.clone());
        let u = self.sub(&one)?;
        if u.terms.keys().any(|x| !self.vars.degree(x).is_positive()) {
            return Err(Error::ConstantTerm(
                "pow base has a non-constant term of non-positive grade".into(),
            ));
        }
        let mut out = one.clone();
        let Some(min_deg) = u.min_positive_degree() else {
            return Ok(out);
        };
        let max_k = (self.order.clone() / min_deg).floor().to_integer();
        let mut power = Self::one(self.vars.clone(), self.order.clone());
        let mut binom = BigRational::one();
        let mut k = BigInt::one();
        while k <= max_k {
            // binom(e, k) = binom(e, k-1) * (e - k + 1) / k
            let kq = BigRational::from_integer(k.clone());
            binom = binom * (e - (&kq - BigRational::one())) / kq;
            power = power.mul(&u)?;
            out = out.add(&power.scale(&C::from_rational(&binom)))?;
            k += 1;
        }
        Ok(out)
    }

    pub fn sqrt_series(&self) -> Result<Self> {
        self.pow_series(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// 1/A for A with constant term 1.
    pub fn recip_series(&self) -> Result<Self> {
        self.pow_series(&-BigRational::one())
    }

    /// Integer power, allowing negatives through `recip_series` (constant
    /// term must be 1 for negative exponents).
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.vars.clone(), self.order.clone()));
        }
        let base = if e < 0 { self.recip_series()? } else { self.clone() };
        let mut out = Self::one(self.vars.clone(), self.order.clone());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exp": e.iter().map(rat_string).collect::<Vec<_>>(),
                    "coeff": c.coeff_string(),
                })
            })
            .collect();
        serde_json::json!({
            "vars": self.vars.names,
            "order": rat_string(&self.order),
            "terms": terms,
        })
    }
}

impl RatSeries {
    /// Parse the JSON series format (exact strings, never floats).
    pub fn from_json(vars: VarSystem, value: &serde_json::Value) -> Result<RatSeries> {
        let order = value
            .get("order")
            .and_then(|v| v.as_str())
            .and_then(crate::util::parse_rat)
            .ok_or_else(|| Error::InvalidInput("series JSON missing order".into()))?;
        let mut s = RatSeries::zero(vars, order);
        let terms = value
            .get("terms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::InvalidInput("series JSON missing terms".into()))?;
        for t in terms {
            let exp: Vec<BigRational> = t
                .get("exp")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidInput("term missing exp".into()))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .and_then(crate::util::parse_rat)
                        .ok_or_else(|| Error::InvalidInput("bad exponent".into()))
                })
                .collect::<Result<_>>()?;
            let coeff = t
                .get("coeff")
                .and_then(|v| v.as_str())
                .and_then(crate::util::parse_rat)
                .ok_or_else(|| Error::InvalidInput("bad coefficient".into()))?;
            s.add_term(exp, coeff);
        }
        Ok(s)
    }
}

/// Substitution image for one variable: `coeff-free` monomial times a unit
/// series with constant term 1. Fractional powers of the image are taken by
/// scaling the monomial exponent and `pow_series` on the unit.
#[derive(Clone, Debug)]
pub struct MonomialUnit<C: Coeff> {
    pub mono: Vec<BigRational>,
    pub unit: MultiSeries<C>,
}

impl<C: Coeff> MonomialUnit<C> {
    pub fn new(mono: Vec<BigRational>, unit: MultiSeries<C>) -> Self {
        MonomialUnit { mono, unit }
    }

    pub fn monomial_only(target: &VarSystem, order: &BigRational, mono: Vec<BigRational>) -> Self {
        MonomialUnit {
            mono,
            unit: MultiSeries::one(target.clone(), order.clone()),
        }
    }
}

/// Compose `series` (in some source system) with per-variable images in a
/// target system.
///
/// Truncation stability requires (a) each image monomial to carry exactly
/// the grade of its source variable, so monomial parts of composites land at
/// the grade of the source term, and (b) each unit to be 1 plus strictly
/// positive-grade terms, so corrections only move up in grade. Individual
/// variable weights may be zero or negative as long as (a) holds; the series
/// being composed only ever supports positively graded exponents.
pub fn substitute<C: Coeff>(
    series: &MultiSeries<C>,
    target: &VarSystem,
    images: &[MonomialUnit<C>],
) -> Result<MultiSeries<C>> {
    if images.len() != series.vars.len() {
        return Err(Error::VariableMismatch(format!(
            "{} images for {} variables",
            images.len(),
            series.vars.len()
        )));
    }
    let order = series.order.clone();
    for (a, img) in images.iter().enumerate() {
        if target.degree(&img.mono) != series.vars.weights[a] {
            return Err(Error::ZeroValuation(a));
        }
        if !img.unit.constant_term().is_one() {
            return Err(Error::ConstantTerm(format!(
                "image of variable {a} is not monomial times unit"
            )));
        }
        if img
            .unit
            .terms()
            .any(|(e, _)| !target.degree(e).is_positive() && !e.iter().all(Zero::is_zero))
        {
            return Err(Error::ConstantTerm(format!(
                "unit part of image {a} has a non-constant term of non-positive grade"
            )));
        }
    }
    // Memoized integer powers of each unit; fractional residue handled once
    // per distinct residue exponent via pow_series.
    let mut int_pows: Vec<BTreeMap<i64, MultiSeries<C>>> = vec![BTreeMap::new(); images.len()];
    let mut frac_pows: Vec<BTreeMap<BigRational, MultiSeries<C>>> =
        vec![BTreeMap::new(); images.len()];

    let mut out = MultiSeries::zero(target.clone(), order.clone());
    for (exp, c) in series.terms() {
        // Target-degree of the image of this term equals its source degree
        // (monomial grades match the variable weights); skip beyond order.
        let mono_exp: Vec<BigRational> = (0..target.len())
            .map(|k| {
                exp.iter()
                    .zip(images)
                    .map(|(x, img)| x * &img.mono[k])
                    .fold(BigRational::zero(), |a, t| a + t)
            })
            .collect();
        if target.degree(&mono_exp) > order {
            continue;
        }
        let mut term = MultiSeries::constant(target.clone(), order.clone(), c.clone());
        for (a, x) in exp.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let floor = x.floor();
            let residue = x - &floor;
            let int_part: i64 = floor
                .to_integer()
                .try_into()
                .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
            if int_part != 0 {
                let pow = match int_pows[a].get(&int_part) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[a].unit.powi(int_part)?;
                        int_pows[a].insert(int_part, p.clone());
                        p
                    }
                };
                term = term.mul(&pow)?;
            }
            if !residue.is_zero() {
                let pow = match frac_pows[a].get(&residue) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[a].unit.pow_series(&residue)?;
                        frac_pows[a].insert(residue.clone(), p.clone());
                        p
                    }
                };
                term = term.mul(&pow)?;
            }
        }
        out = out.add(&term.shift(&mono_exp))?;
    }
    Ok(out)
}

/// Evaluate a rational series at a complex point (used only by the numeric
/// wall-crossing harness). Monomials with fractional exponents use principal
/// powers of the given values.
pub fn evaluate_complex(
    series: &RatSeries,
    point: &[num::complex::Complex64],
) -> num::complex::Complex64 {
    use num::complex::Complex64;
    use num::ToPrimitive;
    let mut total = Complex64::new(0.0, 0.0);
    for (exp, c) in series.terms() {
        let mut term = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (x, v) in exp.iter().zip(point) {
            if x.is_zero() {
                continue;
            }
            let e = x.to_f64().unwrap_or(f64::NAN);
            if crate::util::is_integer(x) {
                term *= v.powi(e as i32);
            } else {
                term *= v.powc(Complex64::new(e, 0.0));
            }
        }
        total += term;
    }
    total
}

pub fn weights_all_one(n: usize) -> Vec<BigRational> {
    vec![rat_int(1); n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{rat, rat_int};

    fn y1(_order: i64) -> VarSystem {
        VarSystem::y(vec![rat_int(1)])
    }

    fn t_series(coeffs: &[(i64, BigRational)], order: i64) -> RatSeries {
        let vars = VarSystem::y(vec![rat_int(1)]);
        let mut s = RatSeries::zero(vars, rat_int(order));
        for (k, c) in coeffs {
            s.add_term(vec![rat_int(*k)], c.clone());
        }
        s
    }

    #[test]
    fn mul_identity() {
        let one = RatSeries::one(y1(5), rat_int(5));
        let b = t_series(&[(0, rat_int(1)), (1, rat(3, 2)), (4, rat(-7, 3))], 5);
        assert_eq!(one.mul(&b).unwrap(), b);
    }

    #[test]
    fn one_plus_y_times_one_minus_y() {
        let a = t_series(&[(0, rat_int(1)), (1, rat_int(1))], 2);
        let b = t_series(&[(0, rat_int(1)), (1, rat_int(-1))], 2);
        let prod = a.mul(&b).unwrap();
        let expect = t_series(&[(0, rat_int(1)), (2, rat_int(-1))], 2);
        assert_eq!(prod, expect);
    }

    #[test]
    fn half_integer_exponents_compose() {
        let vars = VarSystem::y(vec![rat_int(1)]);
        let a = RatSeries::monomial(vars.clone(), rat_int(3), vec![rat(1, 2)], rat_int(1));
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coefficient(&[rat_int(1)]).unwrap(), rat_int(1));
    }

    #[test]
    fn exp_log_round_trip() {
        let a = t_series(&[(1, rat_int(2)), (2, rat(-1, 3)), (3, rat(5, 7))], 6);
        let e = a.exp_series().unwrap();
        assert_eq!(e.log_series().unwrap(), a);
        let l = t_series(&[(0, rat_int(1)), (1, rat_int(1))], 4).log_series().unwrap();
        // log(1+t) = t - t^2/2 + t^3/3 - t^4/4
        assert_eq!(l.coefficient(&[rat_int(1)]).unwrap(), rat_int(1));
        assert_eq!(l.coefficient(&[rat_int(2)]).unwrap(), rat(-1, 2));
        assert_eq!(l.coefficient(&[rat_int(3)]).unwrap(), rat(1, 3));
        assert_eq!(l.coefficient(&[rat_int(4)]).unwrap(), rat(-1, 4));
    }

    #[test]
    fn exp_zero_is_one() {
        let z = RatSeries::zero(y1(4), rat_int(4));
        assert_eq!(z.exp_series().unwrap(), RatSeries::one(y1(4), rat_int(4)));
    }

    #[test]
    fn sqrt_of_one_minus_four_t() {
        let a = t_series(&[(0, rat_int(1)), (1, rat_int(-4))], 3);
        let s = a.sqrt_series().unwrap();
        // 1 - 2t - 2t^2 - 4t^3, cross-checked by squaring
        assert_eq!(s.coefficient(&[rat_int(0)]).unwrap(), rat_int(1));
        assert_eq!(s.coefficient(&[rat_int(1)]).unwrap(), rat_int(-2));
        assert_eq!(s.coefficient(&[rat_int(2)]).unwrap(), rat_int(-2));
        assert_eq!(s.coefficient(&[rat_int(3)]).unwrap(), rat_int(-4));
        assert_eq!(s.mul(&s).unwrap(), a);
    }

    #[test]
    fn beyond_truncation_is_error() {
        let a = t_series(&[(0, rat_int(1))], 3);
        assert!(a.coefficient(&[rat_int(4)]).is_err());
        assert_eq!(a.coefficient(&[rat_int(2)]).unwrap(), rat_int(0));
    }

    #[test]
    fn variable_mismatch_rejected() {
        let a = RatSeries::one(VarSystem::y(vec![rat_int(1)]), rat_int(2));
        let b = RatSeries::one(VarSystem::y(vec![rat_int(2)]), rat_int(2));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn substitute_relabels() {
        // A = y + y^3/24, y -> tau - tau^3/24 gives tau + O(tau^5):
        // the arcsin/sin compositional identity at low order.
        let vars_y = VarSystem::y(vec![rat_int(1)]);
        let vars_t = VarSystem::qtau(vec![], vec![rat_int(1)], vec!["t".into()]);
        let mut a = RatSeries::zero(vars_y, rat_int(4));
        a.add_term(vec![rat_int(1)], rat_int(1));
        a.add_term(vec![rat_int(3)], rat(1, 24));
        let mut unit = RatSeries::one(vars_t.clone(), rat_int(4));
        unit.add_term(vec![rat_int(2)], rat(-1, 24));
        let img = MonomialUnit::new(vec![rat_int(1)], unit);
        let out = substitute(&a, &vars_t, &[img]).unwrap();
        assert_eq!(out.coefficient(&[rat_int(1)]).unwrap(), rat_int(1));
        assert_eq!(out.coefficient(&[rat_int(3)]).unwrap(), rat_int(0));
    }

    #[test]
    fn substitute_fractional_power_of_unit() {
        // A = y^{1/2}, y -> tau^2 * (1 + tau^2): image is tau * (1+tau^2)^{1/2}
        let vars_y = VarSystem::y(vec![rat_int(1)]);
        let vars_t = VarSystem::qtau(vec![], vec![rat(1, 2)], vec!["t".into()]);
        let a = RatSeries::monomial(vars_y, rat_int(3), vec![rat(1, 2)], rat_int(1));
        let mut unit = RatSeries::one(vars_t.clone(), rat_int(3));
        unit.add_term(vec![rat_int(2)], rat_int(1));
        let img = MonomialUnit::new(vec![rat_int(2)], unit);
        let out = substitute(&a, &vars_t, &[img]).unwrap();
        assert_eq!(out.coefficient(&[rat_int(1)]).unwrap(), rat_int(1));
        assert_eq!(out.coefficient(&[rat_int(3)]).unwrap(), rat(1, 2));
        assert_eq!(out.coefficient(&[rat_int(5)]).unwrap(), rat(-1, 8));
    }

    #[test]
    fn substitute_zero_valuation_rejected() {
        let vars_y = VarSystem::y(vec![rat_int(1)]);
        let vars_t = VarSystem::qtau(vec![], vec![rat_int(1)], vec!["t".into()]);
        let a = RatSeries::monomial(vars_y, rat_int(3), vec![rat_int(1)], rat_int(1));
        let img = MonomialUnit::monomial_only(&vars_t, &rat_int(3), vec![rat_int(0)]);
        assert!(matches!(
            substitute(&a, &vars_t, &[img]),
            Err(Error::ZeroValuation(0))
        ));
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussRational::i();
        assert_eq!(i.clone() * i.clone(), -GaussRational::one());
        let z = GaussRational::new(rat_int(3), rat_int(4));
        assert_eq!(z.clone() * z.recip(), GaussRational::one());
        assert_eq!(GaussRational::i_pow(7), -GaussRational::i());
    }

    #[test]
    fn json_round_trip() {
        let a = t_series(&[(0, rat_int(1)), (2, rat(-7, 3))], 4);
        let v = a.to_json();
        let b = RatSeries::from_json(a.vars.clone(), &v).unwrap();
        assert_eq!(a, b);
    }
}
