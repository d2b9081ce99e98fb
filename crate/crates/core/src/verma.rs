//! Verma modules of sl(2), their tensor products, and singular vectors.
//!
//! Conventions: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`, with highest weight vector
//! `1_λ` satisfying `e·1_λ = 0` and `h·1_λ = λ·1_λ`. The vector `f^k·1_λ` is written
//! `f^k`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exact::{normalize_integral, ExactMatrix, Rational};
use crate::special::rc_symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    E,
    H,
    F,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::H, Generator::F];
}

/// An element `Σ c_{ij} f^i ⊗ f^j` of `M(λ₁) ⊗ M(λ₂)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector {
    pub weight1: Rational,
    pub weight2: Rational,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl TensorVector {
    pub fn zero(l1: &Rational, l2: &Rational) -> Self {
        TensorVector {
            weight1: l1.clone(),
            weight2: l2.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(l1: &Rational, l2: &Rational, i: u32, j: u32) -> Self {
        let mut v = Self::zero(l1, l2);
        v.add_term(i, j, Rational::one());
        v
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some(a)` when every basis vector present has `i + j = a`.
    pub fn level(&self) -> Option<u32> {
        let mut levels = self.coeffs.keys().map(|(i, j)| i + j);
        let first = levels.next()?;
        levels.all(|l| l == first).then_some(first)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.weight1 == other.weight1 && self.weight2 == other.weight2,
            "tensor vectors in different modules"
        );
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.weight1, &self.weight2);
        for (i, j, v) in self.terms() {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(i, j, c)| json!({"i": i, "j": j, "c": c.to_string()}))
                .collect(),
        )
    }
}

/// `e·f^k = k(λ-k+1) f^{k-1}`.
fn e_factor(lambda: &Rational, k: u32) -> Rational {
    Rational::from(k) * (lambda - &Rational::from(k) + Rational::one())
}

/// Coproduct action `X(u ⊗ w) = Xu ⊗ w + u ⊗ Xw`.
pub fn act(x: Generator, v: &TensorVector) -> TensorVector {
    let (l1, l2) = (&v.weight1, &v.weight2);
    let mut out = TensorVector::zero(l1, l2);
    for (i, j, c) in v.terms() {
        match x {
            Generator::E => {
                if i > 0 {
                    out.add_term(i - 1, j, c * &e_factor(l1, i));
                }
                if j > 0 {
                    out.add_term(i, j - 1, c * &e_factor(l2, j));
                }
            }
            Generator::H => {
                let w = l1 + l2 - Rational::from(2 * (i + j));
                out.add_term(i, j, c * &w);
            }
            Generator::F => {
                out.add_term(i + 1, j, c.clone());
                out.add_term(i, j + 1, c.clone());
            }
        }
    }
    out
}

/// Basis of the kernel of `e` on `span{f^i ⊗ f^{a-i}}`, each vector scaled to
/// coprime integers with a positive coefficient at the smallest `i` present.
pub fn singular_vectors(l1: &Rational, l2: &Rational, a: u32) -> Vec<TensorVector> {
    // columns: f^i ⊗ f^{a-i}, i = 0..=a; rows: f^i ⊗ f^{a-1-i}
    let mut m = ExactMatrix::zeros(a as usize, a as usize + 1);
    for i in 0..=a {
        let j = a - i;
        if i > 0 {
            m.set((i - 1) as usize, i as usize, e_factor(l1, i));
        }
        if j > 0 {
            m.set(i as usize, i as usize, e_factor(l2, j));
        }
    }
    m.kernel_basis()
        .iter()
        .map(|v| {
            let v = normalize_integral(v);
            let mut out = TensorVector::zero(l1, l2);
            for (i, c) in v.into_iter().enumerate() {
                out.add_term(i as u32, a - i as u32, c);
            }
            out
        })
        .collect()
}

/// Multiplicity of `M(λ₁+λ₂-2a)` in `M(λ₁) ⊗ M(λ₂)`, i.e. the number of
/// independent singular vectors at level `a`.
pub fn branching_multiplicity(l1: &Rational, l2: &Rational, a: u32) -> usize {
    singular_vectors(l1, l2, a).len()
}

/// `dim Hom(M(-2ν), M(-λ-1)⊗M(-λ+1)) + dim Hom(M(-2ν), M(-λ+1)⊗M(-λ-1))`.
///
/// A homomorphism from `M(-2ν)` is a singular vector of weight `-2ν`, which sits at
/// level `a = ν - λ`; there is none unless `a` is a natural number.
pub fn kp_dimension(lambda: &Rational, nu: &Rational) -> usize {
    let Some(a) = (nu - lambda).to_natural() else {
        return 0;
    };
    let one = Rational::one();
    let m1 = -lambda - &one;
    let m2 = -lambda + one;
    branching_multiplicity(&m1, &m2, a) + branching_multiplicity(&m2, &m1, a)
}

pub fn singular_vectors_json(l1: &Rational, l2: &Rational, a: u32) -> Value {
    let vs = singular_vectors(l1, l2, a);
    json!({
        "l1": l1.to_string(),
        "l2": l2.to_string(),
        "level": a,
        "vectors": vs.iter().map(TensorVector::to_json).collect::<Vec<_>>(),
    })
}

/// How the level-`a` singular vector of `M(-λ-1)⊗M(-λ+1)` compares with the
/// Rankin–Cohen symbol `RC^a_{λ+1,λ-1}` under `f^{a-ℓ}⊗f^ℓ ↔ x^{a-ℓ}y^ℓ`.
///
/// Each flag says whether the two coefficient vectors are proportional after the
/// stated rescaling of the singular vector: none, multiplied by `(a-ℓ)! ℓ!`, or
/// divided by it. Exploratory only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RcCorrespondence {
    pub level: u32,
    pub lambda: Rational,
    pub multiplicity: usize,
    pub plain: bool,
    pub factorial_scaled: bool,
    pub factorial_divided: bool,
}

fn proportional(u: &[Rational], v: &[Rational]) -> bool {
    normalize_integral(u) == normalize_integral(v)
}

pub fn rc_correspondence(lambda: &Rational, a: u32) -> RcCorrespondence {
    let one = Rational::one();
    let vs = singular_vectors(&(-lambda - &one), &(-lambda + &one), a);
    let sym = rc_symbol(a, &(lambda + &one), &(lambda - &one));
    let rc: Vec<Rational> = (0..=a).map(|l| sym.coeff(&[a - l, l])).collect();
    let (mut plain, mut scaled, mut divided) = (false, false, false);
    if let [v] = vs.as_slice() {
        let base: Vec<Rational> = (0..=a).map(|l| v.coeff(a - l, l)).collect();
        let fact = |l: u32| Rational::factorial(a - l) * Rational::factorial(l);
        let up: Vec<Rational> = base.iter().zip(0..).map(|(c, l)| c * &fact(l)).collect();
        let down: Vec<Rational> = base
            .iter()
            .zip(0..)
            .map(|(c, l)| c.clone() / fact(l))
            .collect();
        plain = proportional(&base, &rc);
        scaled = proportional(&up, &rc);
        divided = proportional(&down, &rc);
    }
    RcCorrespondence {
        level: a,
        lambda: lambda.clone(),
        multiplicity: vs.len(),
        plain,
        factorial_scaled: scaled,
        factorial_divided: divided,
    }
}
