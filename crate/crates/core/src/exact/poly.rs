//! Sparse multivariate polynomials over an exact [`Scalar`] field.
//!
//! A polynomial lives in a fixed, ordered variable context. Terms are kept in a
//! `BTreeMap` keyed by exponent vectors, so iteration order (and therefore every
//! serialized form) is deterministic, and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::gaussian::GaussianRational;
use super::rational::{Rational, Scalar};
use crate::error::{Error, Result};

/// Ordered list of variable names shared by a family of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn xy() -> Self {
        Vars::new(&["x", "y"])
    }

    /// Symbol variables: `xi` stands for d/dx, `eta` for d/dy.
    pub fn xi_eta() -> Self {
        Vars::new(&["xi", "eta"])
    }

    pub fn st() -> Self {
        Vars::new(&["s", "t"])
    }

    pub fn single(name: &str) -> Self {
        Vars::new(&[name])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, PartialEq)]
pub struct MultiPoly<S: Scalar = Rational> {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: S) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, S::one())
    }

    pub fn monomial(vars: &Vars, exponents: Vec<u32>, c: S) -> Self {
        assert_eq!(exponents.len(), vars.len(), "exponent arity");
        let mut p = Self::zero(vars);
        p.add_term(exponents, c);
        p
    }

    /// The polynomial consisting of the single variable at `index`.
    pub fn var(vars: &Vars, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, S::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.index_of(name)?))
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Adds `c` to the coefficient of the given monomial, dropping it if it cancels.
    pub fn add_term(&mut self, exponents: Vec<u32>, c: S) {
        debug_assert_eq!(exponents.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &S)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Vec<u32>, S)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exponents: &[u32]) -> S {
        self.terms.get(exponents).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in the variable at `index`; `None` for zero.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).max()
    }

    /// True when every term has weighted degree exactly `degree`.
    pub fn is_weighted_homogeneous(&self, weights: &[u32], degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>() == degree)
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        let ones = vec![1; self.vars.len()];
        self.is_weighted_homogeneous(&ones, degree)
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&S::from_rational(c.clone()))
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn shift(&self, exponents: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    (
                        e.iter().zip(exponents).map(|(a, b)| a + b).collect(),
                        v.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[index] = k - 1;
            out.add_term(e2, c.clone() * S::from_int(k as i64));
        }
        out
    }

    pub fn derivative_by(&self, name: &str) -> Result<Self> {
        Ok(self.derivative(self.vars.index_of(name)?))
    }

    /// Repeated derivative `d^k/dv^k` for the variable at `index`.
    pub fn nth_derivative(&self, index: usize, k: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derivative(index);
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; every image must share one target context.
    pub fn substitute(&self, images: &[MultiPoly<S>]) -> Result<MultiPoly<S>> {
        if images.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.vars.len(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        for img in images {
            if img.vars != target {
                return Err(Error::VariableMismatch {
                    left: target.names().to_vec(),
                    right: img.vars.names().to_vec(),
                });
            }
        }
        // power tables per variable, grown on demand
        let mut powers: Vec<Vec<MultiPoly<S>>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(&target)])
            .collect();
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
            }
        }
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sets the variable at `index` to the constant `value`, keeping the context.
    pub fn evaluate_var(&self, index: usize, value: &S) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut factor = S::one();
            for _ in 0..e[index] {
                factor = factor * value;
            }
            let mut e2 = e.clone();
            e2[index] = 0;
            out.add_term(e2, c.clone() * &factor);
        }
        out
    }

    /// Full evaluation at a point.
    pub fn evaluate(&self, point: &[S]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Drops variables at the listed indices, which must not occur in any term.
    pub fn project(&self, keep: &[usize], vars: &Vars) -> Result<Self> {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                if k > 0 && !keep.contains(&i) {
                    return Err(Error::InvalidArgument(format!(
                        "variable `{}` still occurs",
                        self.vars.names()[i]
                    )));
                }
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        Ok(out)
    }

    /// Same terms in a context of the same arity under new names.
    pub fn rename(&self, vars: &Vars) -> Self {
        assert_eq!(vars.len(), self.vars.len(), "rename arity");
        MultiPoly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Division with remainder by `v0^2 + v1^2` (first two variables), reducing the
    /// degree in `v0` below 2. The remainder is zero exactly when the division is exact.
    pub fn div_rem_sum_of_squares(&self) -> (Self, Self) {
        assert!(self.vars.len() >= 2, "needs two variables");
        let mut rem = self.terms.clone();
        let mut quot = Self::zero(&self.vars);
        loop {
            // lexicographic order puts the largest v0 exponent last
            let Some((e, c)) = rem.pop_last() else { break };
            if e[0] < 2 {
                rem.insert(e, c);
                break;
            }
            let mut lowered = e;
            lowered[0] -= 2;
            quot.add_term(lowered.clone(), c.clone());
            lowered[1] += 2;
            let cancelled = match rem.get_mut(&lowered) {
                Some(v) => {
                    *v -= &c;
                    v.is_zero()
                }
                None => {
                    rem.insert(lowered.clone(), -c);
                    false
                }
            };
            if cancelled {
                rem.remove(&lowered);
            }
        }
        (
            quot,
            MultiPoly {
                vars: self.vars.clone(),
                terms: rem,
            },
        )
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultiPoly<T> {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl MultiPoly<Rational> {
    pub fn to_gaussian(&self) -> MultiPoly<GaussianRational> {
        self.map_coeffs(|c| GaussianRational::real(c.clone()))
    }

    /// Builds a one-variable polynomial from ascending coefficients.
    pub fn from_coeffs(vars: &Vars, coeffs: &[Rational]) -> Self {
        assert_eq!(vars.len(), 1);
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }
}

impl MultiPoly<GaussianRational> {
    /// Splits into real and imaginary parts.
    pub fn split_re_im(&self) -> (MultiPoly<Rational>, MultiPoly<Rational>) {
        (
            self.map_coeffs(|c| c.re.clone()),
            self.map_coeffs(|c| c.im.clone()),
        )
    }
}

impl<S: Scalar> Add for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: Self) -> MultiPoly<S> {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl<S: Scalar> Sub for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: Self) -> MultiPoly<S> {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl<S: Scalar> Mul for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: Self) -> MultiPoly<S> {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl<S: Scalar> Add for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, rhs: Self) -> MultiPoly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, rhs: Self) -> MultiPoly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, rhs: Self) -> MultiPoly<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        MultiPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<S: Scalar> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        -self.clone()
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    /// Terms in descending exponent order, e.g. `2/3*x^2*y - y + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.names())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| {
                    if *k == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let coeff = c.to_string();
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}({})", self.vars, self)
    }
}
