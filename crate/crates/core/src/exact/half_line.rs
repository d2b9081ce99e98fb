use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::rational::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Pos,
    Neg,
}

/// A function on the punctured line: per branch (`x > 0`, `x < 0`), a finite sum
/// of `c·|x|^q` with rational exponents `q`.
#[derive(Clone, PartialEq, Default)]
pub struct HalfLineExpr<S: Scalar = Rational> {
    pos: BTreeMap<Rational, S>,
    neg: BTreeMap<Rational, S>,
}

impl<S: Scalar> HalfLineExpr<S> {
    pub fn zero() -> Self {
        HalfLineExpr {
            pos: BTreeMap::new(),
            neg: BTreeMap::new(),
        }
    }

    /// `c·x^k·|x|^q` on the whole punctured line.
    pub fn signed_monomial(k: u32, q: &Rational, c: S) -> Self {
        let mut out = Self::zero();
        let exponent = q + &Rational::from(k);
        if k % 2 == 1 {
            out.add_term(Branch::Neg, exponent.clone(), -c.clone());
        } else {
            out.add_term(Branch::Neg, exponent.clone(), c.clone());
        }
        out.add_term(Branch::Pos, exponent, c);
        out
    }

    pub fn branch(&self, b: Branch) -> &BTreeMap<Rational, S> {
        match b {
            Branch::Pos => &self.pos,
            Branch::Neg => &self.neg,
        }
    }

    fn branch_mut(&mut self, b: Branch) -> &mut BTreeMap<Rational, S> {
        match b {
            Branch::Pos => &mut self.pos,
            Branch::Neg => &mut self.neg,
        }
    }

    pub fn add_term(&mut self, b: Branch, exponent: Rational, c: S) {
        if c.is_zero() {
            return;
        }
        let map = self.branch_mut(b);
        let cancelled = match map.get_mut(&exponent) {
            Some(v) => {
                *v += &c;
                v.is_zero()
            }
            None => {
                map.insert(exponent, c);
                return;
            }
        };
        if cancelled {
            map.remove(&exponent);
        }
    }

    /// All `(branch, exponent, coefficient)` entries in deterministic order.
    pub fn entries(&self) -> impl Iterator<Item = (Branch, &Rational, &S)> {
        self.pos
            .iter()
            .map(|(q, c)| (Branch::Pos, q, c))
            .chain(self.neg.iter().map(|(q, c)| (Branch::Neg, q, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, q, c) in other.entries() {
            out.add_term(b, q.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-S::one())))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (b, q, v) in self.entries() {
            out.add_term(b, q.clone(), v.clone() * c);
        }
        out
    }

    /// `x ↦ |x|^{-2ν}·h(-1/x)`: the right-hand side transform of the functional identity.
    ///
    /// For `x > 0` the point `-1/x` lies on the negative branch and `|-1/x|^q = |x|^{-q}`,
    /// so the branches swap and every exponent `q` becomes `-q - 2ν`.
    pub fn inversion_pullback(&self, nu: &Rational) -> Self {
        let two_nu = nu * &Rational::from(2);
        let mut out = Self::zero();
        for (b, q, c) in self.entries() {
            let target = match b {
                Branch::Pos => Branch::Neg,
                Branch::Neg => Branch::Pos,
            };
            out.add_term(target, -q - &two_nu, c.clone());
        }
        out
    }
}

impl<S: Scalar> fmt::Display for HalfLineExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &BTreeMap<Rational, S>| -> String {
            if m.is_empty() {
                return "0".into();
            }
            m.iter()
                .map(|(q, c)| format!("{c}*|x|^({q})"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        write!(f, "x>0: {}; x<0: {}", side(&self.pos), side(&self.neg))
    }
}

impl<S: Scalar> fmt::Debug for HalfLineExpr<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn odd_monomial_flips_sign_on_negative_branch() {
        let h = HalfLineExpr::signed_monomial(1, &q(0, 1), q(1, 1));
        assert_eq!(h.branch(Branch::Pos).get(&q(1, 1)), Some(&q(1, 1)));
        assert_eq!(h.branch(Branch::Neg).get(&q(1, 1)), Some(&q(-1, 1)));
    }

    #[test]
    fn inversion_pullback_of_a_monomial() {
        // |x|^{-2ν}·(-1/x) = -sgn(x)|x|^{-1-2ν}
        let nu = q(4, 3);
        let h = HalfLineExpr::signed_monomial(1, &q(0, 1), q(1, 1)).inversion_pullback(&nu);
        let e = q(-1, 1) - q(8, 3);
        assert_eq!(h.branch(Branch::Pos).get(&e), Some(&q(-1, 1)));
        assert_eq!(h.branch(Branch::Neg).get(&e), Some(&q(1, 1)));
        // applying twice with ν gives |x|^{-2ν}·|x|^{2ν} back
        let twice = h.inversion_pullback(&nu);
        assert_eq!(twice, HalfLineExpr::signed_monomial(1, &q(0, 1), q(1, 1)));
    }

    #[test]
    fn cancellation_leaves_no_zero_entries() {
        let h = HalfLineExpr::signed_monomial(2, &q(1, 3), q(2, 1));
        assert!(h.sub(&h).is_zero());
    }
}
