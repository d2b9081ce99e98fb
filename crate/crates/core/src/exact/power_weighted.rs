//! Finite sums `Σ pᵢ(x,y)·(x²+y²)^{μᵢ}` with rational exponents.
//!
//! This class contains every polynomial, is closed under `∂/∂x`, `∂/∂y` and
//! products, and is mapped to itself by the geometric inversion
//! `(x,y) ↦ (-x,y)/(x²+y²)`. That makes it the natural home for twisted
//! inversions of polynomial inputs.
//!
//! Normal form: one term per class of `μ` modulo `Z`, and within a class the
//! polynomial part is not divisible by `w = x²+y²` (factors of `w` are moved
//! into the exponent). Since `w` is irreducible over Q and distinct classes are
//! linearly independent, two functions are equal iff their normal forms are.

use std::collections::BTreeMap;
use std::fmt;

use super::half_line::{Branch, HalfLineExpr};
use super::poly::{MultiPoly, Vars};
use super::rational::{Rational, Scalar};

#[derive(Clone, PartialEq)]
pub struct PowerWeightedFn<S: Scalar = Rational> {
    /// exponent `μ` -> polynomial part `p`, in normal form
    terms: BTreeMap<Rational, MultiPoly<S>>,
}

/// `w = x² + y²` in the `(x, y)` context.
pub fn sum_of_squares<S: Scalar>() -> MultiPoly<S> {
    let vars = Vars::xy();
    let mut w = MultiPoly::zero(&vars);
    w.add_term(vec![2, 0], S::one());
    w.add_term(vec![0, 2], S::one());
    w
}

impl<S: Scalar> PowerWeightedFn<S> {
    pub fn zero() -> Self {
        PowerWeightedFn {
            terms: BTreeMap::new(),
        }
    }

    /// `p·w^μ`; `p` must live in the `(x, y)` context.
    pub fn term(p: MultiPoly<S>, mu: Rational) -> Self {
        Self::from_terms(vec![(p, mu)])
    }

    pub fn from_poly(p: MultiPoly<S>) -> Self {
        Self::term(p, Rational::zero())
    }

    /// Builds the normal form of an arbitrary list of `(p, μ)` terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (MultiPoly<S>, Rational)>) -> Self {
        let mut classes: BTreeMap<Rational, Vec<(MultiPoly<S>, Rational)>> = BTreeMap::new();
        for (p, mu) in terms {
            assert_eq!(p.vars(), &Vars::xy(), "power-weighted terms live in (x, y)");
            if p.is_zero() {
                continue;
            }
            classes
                .entry(mu.fract_positive())
                .or_default()
                .push((p, mu));
        }
        let mut out = Self::zero();
        for (_, group) in classes {
            if let Some((mu, p)) = Self::normalize_class(group) {
                out.terms.insert(mu, p);
            }
        }
        out
    }

    /// Folds one class to its minimal exponent, then strips factors of `w`.
    fn normalize_class(group: Vec<(MultiPoly<S>, Rational)>) -> Option<(Rational, MultiPoly<S>)> {
        let base = group.iter().map(|(_, mu)| mu.clone()).min()?;
        let w = sum_of_squares::<S>();
        let mut sum = MultiPoly::zero(&Vars::xy());
        for (p, mu) in group {
            let k = (mu - &base)
                .to_natural()
                .expect("exponents in one class differ by naturals");
            sum = &sum + &(&p * &w.pow(k));
        }
        if sum.is_zero() {
            return None;
        }
        let mut mu = base;
        loop {
            let (quot, rem) = sum.div_rem_sum_of_squares();
            if !rem.is_zero() {
                break;
            }
            sum = quot;
            mu += Rational::one();
        }
        Some((mu, sum))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiPoly<S>, &Rational)> {
        self.terms.iter().map(|(mu, p)| (p, mu))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-runs normalization on the stored terms.
    pub fn canonicalized(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(mu, p)| (p.clone(), mu.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(mu, p)| (p.clone(), mu.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PowerWeightedFn {
            terms: self.terms.iter().map(|(mu, p)| (mu.clone(), -p)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PowerWeightedFn {
            terms: self
                .terms
                .iter()
                .map(|(mu, p)| (mu.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, q: &MultiPoly<S>) -> Self {
        Self::from_terms(self.terms.iter().map(|(mu, p)| (p * q, mu.clone())))
    }

    /// Multiplies by `w^k`.
    pub fn shift_exponent(&self, k: &Rational) -> Self {
        PowerWeightedFn {
            terms: self
                .terms
                .iter()
                .map(|(mu, p)| (mu + k, p.clone()))
                .collect(),
        }
    }

    /// `∂/∂x` (`index = 0`) or `∂/∂y` (`index = 1`).
    ///
    /// `∂(p·w^μ) = ((∂p)·w + 2μ·v·p)·w^{μ-1}` where `v` is the variable differentiated.
    pub fn differentiate(&self, index: usize) -> Self {
        assert!(index < 2, "power-weighted functions have two variables");
        let vars = Vars::xy();
        let w = sum_of_squares::<S>();
        let v = MultiPoly::<S>::var(&vars, index);
        Self::from_terms(self.terms.iter().map(|(mu, p)| {
            let two_mu = S::from_rational(mu * &Rational::from(2));
            let lowered = &(&p.derivative(index) * &w) + &(&v * p).scale(&two_mu);
            (lowered, mu - &Rational::one())
        }))
    }

    /// `∂^i/∂x^i ∂^j/∂y^j`.
    pub fn partial(&self, dx: u32, dy: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..dx {
            out = out.differentiate(0);
        }
        for _ in 0..dy {
            out = out.differentiate(1);
        }
        out
    }

    /// Restriction to the line `y = 0`: `x^k·(x²)^μ = sgn(x)^k·|x|^{k+2μ}`.
    pub fn restrict_y0(&self) -> HalfLineExpr<S> {
        let mut out = HalfLineExpr::zero();
        for (mu, p) in &self.terms {
            let two_mu = mu * &Rational::from(2);
            for (e, c) in p.terms() {
                if e[1] != 0 {
                    continue;
                }
                let k = e[0];
                let exponent = &two_mu + &Rational::from(k);
                let neg = if k % 2 == 1 { -c.clone() } else { c.clone() };
                out.add_term(Branch::Pos, exponent.clone(), c.clone());
                out.add_term(Branch::Neg, exponent, neg);
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PowerWeightedFn<T> {
        PowerWeightedFn::from_terms(
            self.terms
                .iter()
                .map(|(mu, p)| (p.map_coeffs(f), mu.clone())),
        )
    }

    /// True when the stored data already satisfies the normal-form invariants.
    pub fn is_normal_form(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.terms.iter().all(|(mu, p)| {
            !p.is_zero()
                && seen.insert(mu.fract_positive())
                && !p.div_rem_sum_of_squares().1.is_zero()
        })
    }
}

impl<S: Scalar> fmt::Display for PowerWeightedFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mu, p)| {
                if mu.is_zero() {
                    format!("({p})")
                } else {
                    format!("({p})*w^({mu})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> fmt::Debug for PowerWeightedFn<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
