//! Constant-coefficient operators written as symbols in `(ξ, η) ↔ (∂x, ∂y)`, the
//! vector-valued operators `𝒟 = Rest_{y=0} ∘ (D₁, D₂)`, and the Rankin–Cohen
//! machinery used to split them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{
    GaussianRational, HalfLineExpr, MultiPoly, PowerWeightedFn, Rational, Scalar, Vars,
};
use crate::special::{gegenbauer_at_minus_square, gen_binomial, rc_symbol, GegenbauerConvention};

/// A polynomial in `(ξ, η)`, read as `Σ c·∂x^i ∂y^j`.
pub type OperatorSymbol<S = Rational> = MultiPoly<S>;

/// Applies a symbol term by term. Derivatives in `x` are shared between terms
/// with the same `∂x` order, so the cost is one derivative chain per `i`.
pub fn apply<S: Scalar>(op: &OperatorSymbol<S>, f: &PowerWeightedFn<S>) -> PowerWeightedFn<S> {
    let mut by_dx: BTreeMap<u32, Vec<(u32, &S)>> = BTreeMap::new();
    for (e, c) in op.terms() {
        by_dx.entry(e[0]).or_default().push((e[1], c));
    }
    let mut pieces = Vec::new();
    let mut fx = f.clone();
    let mut cx = 0;
    for (dx, mut list) in by_dx {
        while cx < dx {
            fx = fx.differentiate(0);
            cx += 1;
        }
        list.sort_by_key(|(dy, _)| *dy);
        let mut fy = fx.clone();
        let mut cy = 0;
        for (dy, c) in list {
            while cy < dy {
                fy = fy.differentiate(1);
                cy += 1;
            }
            pieces.push(fy.scale(c));
        }
    }
    PowerWeightedFn::from_terms(pieces.iter().flat_map(|p| {
        p.terms()
            .map(|(q, mu)| (q.clone(), mu.clone()))
            .collect::<Vec<_>>()
    }))
}

/// Applies a symbol to a polynomial in `(x, y)`.
pub fn apply_poly<S: Scalar>(op: &OperatorSymbol<S>, p: &MultiPoly<S>) -> MultiPoly<S> {
    let mut out = MultiPoly::zero(p.vars());
    for (e, c) in op.terms() {
        let d = p.nth_derivative(0, e[0]).nth_derivative(1, e[1]);
        out = &out + &d.scale(c);
    }
    out
}

/// `𝒟 = Rest_{y=0} ∘ (D₁, D₂)` from functions on the plane to functions on the line,
/// together with the parameters `(λ, ν)` of the identity it is meant to satisfy.
#[derive(Clone, Debug, PartialEq)]
pub struct PairOperator {
    pub d1: OperatorSymbol,
    pub d2: OperatorSymbol,
    pub lambda: Rational,
    pub nu: Rational,
}

impl PairOperator {
    pub fn new(d1: OperatorSymbol, d2: OperatorSymbol, lambda: Rational, nu: Rational) -> Self {
        let vars = Vars::xi_eta();
        assert!(
            d1.vars() == &vars && d2.vars() == &vars,
            "symbols live in (xi, eta)"
        );
        PairOperator { d1, d2, lambda, nu }
    }

    /// `ν - λ`.
    pub fn order(&self) -> Rational {
        &self.nu - &self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PairOperator {
            d1: self.d1.scale(c),
            d2: self.d2.scale(c),
            ..self.clone()
        }
    }

    /// `Rest_{y=0}(D₁f + D₂g)`.
    pub fn apply(&self, f: &PowerWeightedFn, g: &PowerWeightedFn) -> HalfLineExpr {
        apply(&self.d1, f).add(&apply(&self.d2, g)).restrict_y0()
    }

    /// Largest total degree appearing in either symbol.
    pub fn max_degree(&self) -> u32 {
        self.d1
            .total_degree()
            .into_iter()
            .chain(self.d2.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Coefficients of `D₁` then `D₂` over all `ξ^i η^j` with `i + j ≤ max_order`,
    /// ordered by total degree, then by `i`.
    pub fn coefficient_vector(&self, max_order: u32) -> Vec<Rational> {
        let basis = monomial_basis(max_order);
        basis
            .iter()
            .map(|e| self.d1.coeff(e))
            .chain(basis.iter().map(|e| self.d2.coeff(e)))
            .collect()
    }

    /// Inverse of [`coefficient_vector`](Self::coefficient_vector).
    pub fn from_coefficient_vector(
        v: &[Rational],
        max_order: u32,
        lambda: Rational,
        nu: Rational,
    ) -> Self {
        let basis = monomial_basis(max_order);
        assert_eq!(v.len(), 2 * basis.len());
        let vars = Vars::xi_eta();
        let mut d1 = MultiPoly::zero(&vars);
        let mut d2 = MultiPoly::zero(&vars);
        for (k, e) in basis.iter().enumerate() {
            d1.add_term(e.clone(), v[k].clone());
            d2.add_term(e.clone(), v[basis.len() + k].clone());
        }
        PairOperator::new(d1, d2, lambda, nu)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_string(),
            "nu": self.nu.to_string(),
            "D1": symbol_json(&self.d1),
            "D2": symbol_json(&self.d2),
        })
    }

    pub fn to_latex(&self) -> String {
        format!(
            "\\lambda = {}, \\quad \\nu = {}, \\quad D_1 = {}, \\quad D_2 = {}",
            latex_rational(&self.lambda),
            latex_rational(&self.nu),
            symbol_latex(&self.d1),
            symbol_latex(&self.d2)
        )
    }

    pub fn to_text(&self) -> String {
        let vars = Vars::new(&["dx", "dy"]);
        format!(
            "lambda = {}\nnu = {}\nD1 = {}\nD2 = {}\n",
            self.lambda,
            self.nu,
            self.d1.rename(&vars),
            self.d2.rename(&vars)
        )
    }
}

/// All exponent pairs with `i + j ≤ max_order`, by total degree then `i`.
pub fn monomial_basis(max_order: u32) -> Vec<Vec<u32>> {
    (0..=max_order)
        .flat_map(|d| (0..=d).map(move |i| vec![i, d - i]))
        .collect()
}

fn symbol_json(s: &OperatorSymbol) -> Value {
    Value::Array(
        s.terms()
            .map(|(e, c)| json!({"dx": e[0], "dy": e[1], "c": c.to_string()}))
            .collect(),
    )
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    }
}

/// LaTeX for a rational symbol, lowest `(dx, dy)` first.
pub fn symbol_latex(s: &OperatorSymbol) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (e, c)) in s.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut mono = String::new();
        for (k, name) in [(e[0], "x"), (e[1], "y")] {
            match k {
                0 => {}
                1 => write!(mono, "\\partial_{name}").unwrap(),
                _ => write!(mono, "\\partial_{name}^{{{k}}}").unwrap(),
            }
        }
        if mono.is_empty() {
            out.push_str(&latex_rational(&mag));
        } else if mag == Rational::one() {
            out.push_str(&mono);
        } else {
            out.push_str(&latex_rational(&mag));
            out.push_str(&mono);
        }
    }
    out
}

fn xi() -> OperatorSymbol {
    MultiPoly::var(&Vars::xi_eta(), 0)
}

fn eta() -> OperatorSymbol {
    MultiPoly::var(&Vars::xi_eta(), 1)
}

/// The operator of the main construction.
///
/// `a = 0`: `(1, 0)`. Otherwise, with `C_ℓ^α = C_ℓ^α(-ξ², η)`,
/// `D₁ = a(2λ+a-1)·ξ·C^{λ+1/2}_{a-1}` and
/// `D₂ = (2λ²+2(a-1)λ+a(a-1))·η·C^{λ+1/2}_{a-1} + (λ-1)(2λ+1)(ξ²+η²)·C^{λ+3/2}_{a-2}`.
pub fn theorem_a_pair(lambda: &Rational, a: u32) -> PairOperator {
    theorem_a_pair_with(lambda, a, GegenbauerConvention::Direct)
}

pub fn theorem_a_pair_with(
    lambda: &Rational,
    a: u32,
    convention: GegenbauerConvention,
) -> PairOperator {
    let vars = Vars::xi_eta();
    let nu = lambda + &Rational::from(a);
    if a == 0 {
        return PairOperator::new(
            MultiPoly::one(&vars),
            MultiPoly::zero(&vars),
            lambda.clone(),
            nu,
        );
    }
    let ar = Rational::from(a);
    let one = Rational::one();
    let two = Rational::from(2);
    let al = a as i64;
    let c1: OperatorSymbol =
        gegenbauer_at_minus_square(&(lambda + &Rational::new(1, 2)), al - 1, convention, &vars);
    let c2: OperatorSymbol =
        gegenbauer_at_minus_square(&(lambda + &Rational::new(3, 2)), al - 2, convention, &vars);
    let k1 = &ar * &(&two * lambda + &ar - &one);
    let k2 = &two * &(lambda * lambda) + &two * &(&ar - &one) * lambda + &ar * &(&ar - &one);
    let k3 = (lambda - &one) * (&two * lambda + &one);
    let w = &(&xi() * &xi()) + &(&eta() * &eta());
    let d1 = (&xi() * &c1).scale(&k1);
    let d2 = &(&eta() * &c1).scale(&k2) + &(&w * &c2).scale(&k3);
    PairOperator::new(d1, d2, lambda.clone(), nu)
}

/// The three low-order operators written out by hand: `(1, 0)`, `(ξ, λη)`, and
/// `(2(2λ+1)ξη, (λ-1)ξ² + (λ+1)(2λ+1)η²)`.
pub fn example_pair(lambda: &Rational, a: u32) -> Result<PairOperator> {
    let vars = Vars::xi_eta();
    let one = Rational::one();
    let nu = lambda + &Rational::from(a);
    let (d1, d2) = match a {
        0 => (MultiPoly::one(&vars), MultiPoly::zero(&vars)),
        1 => (xi(), eta().scale(lambda)),
        2 => {
            let t = Rational::from(2) * lambda + one.clone();
            let d1 = (&xi() * &eta()).scale(&(Rational::from(2) * &t));
            let d2 = &(&xi() * &xi()).scale(&(lambda - &one))
                + &(&eta() * &eta()).scale(&((lambda + &one) * t));
            (d1, d2)
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "hand-written operators exist only for a <= 2, got {a}"
            )))
        }
    };
    Ok(PairOperator::new(d1, d2, lambda.clone(), nu))
}

/// `(D₁, D₂) ↦ (-D₂, D₁)`, the operator for the quarter-turned input.
pub fn dual(p: &PairOperator) -> PairOperator {
    PairOperator {
        d1: -&p.d2,
        d2: p.d1.clone(),
        lambda: p.lambda.clone(),
        nu: p.nu.clone(),
    }
}

/// Scalar operator `C^{λ-1/2}_a(-ξ², η)`.
pub fn juhl_scalar(lambda: &Rational, a: u32) -> OperatorSymbol {
    gegenbauer_at_minus_square(
        &(lambda - &Rational::new(1, 2)),
        a as i64,
        GegenbauerConvention::Direct,
        &Vars::xi_eta(),
    )
}

/// Rankin–Cohen bracket of two one-variable polynomials:
/// `Σ_ℓ (-1)^ℓ binom(λ₁+a-1, ℓ) binom(λ₂+a-1, a-ℓ) f₁^{(a-ℓ)} f₂^{(ℓ)}`.
pub fn rc_bracket_apply(
    a: u32,
    l1: &Rational,
    l2: &Rational,
    f1: &MultiPoly,
    f2: &MultiPoly,
) -> MultiPoly {
    let shift = Rational::from(a) - Rational::one();
    let b1 = l1 + &shift;
    let b2 = l2 + &shift;
    let mut out = MultiPoly::zero(f1.vars());
    for l in 0..=a {
        let c = Rational::sign_power(l as u64) * gen_binomial(&b1, l) * gen_binomial(&b2, a - l);
        let term = &f1.nth_derivative(0, a - l) * &f2.nth_derivative(0, l);
        out = &out + &term.scale(&c);
    }
    out
}

/// Rankin–Cohen operator on a polynomial in `(z₁, z₂)`, restricted to the diagonal
/// `z₁ = z₂ = z`.
pub fn rc_diagonal(a: u32, l1: &Rational, l2: &Rational, g: &MultiPoly) -> MultiPoly {
    let sym = rc_symbol(a, l1, l2);
    let mut out = MultiPoly::zero(g.vars());
    for (e, c) in sym.terms() {
        out = &out + &g.nth_derivative(0, e[0]).nth_derivative(1, e[1]).scale(c);
    }
    let z = Vars::single("z");
    let zz = MultiPoly::var(&z, 0);
    out.substitute(&[zz.clone(), zz]).expect("two images")
}

/// Real and imaginary parts of `2^{-a}·RC^a_{λ+1,λ-1}(ξ - iη, ξ + iη)`.
pub fn rc_split(lambda: &Rational, a: u32) -> PairOperator {
    let one = Rational::one();
    let sym = rc_symbol(a, &(lambda + &one), &(lambda - &one)).to_gaussian();
    let vars = Vars::xi_eta();
    let i = GaussianRational::i();
    let x = MultiPoly::<GaussianRational>::var(&vars, 0);
    let y = MultiPoly::<GaussianRational>::var(&vars, 1).scale(&i);
    let sub = sym.substitute(&[&x - &y, &x + &y]).expect("two images");
    let (re, im) = sub
        .scale_rational(&Rational::from(2).pow(-(a as i32)))
        .split_re_im();
    PairOperator::new(re, im, lambda.clone(), lambda + &Rational::from(a))
}

/// `f₁(x+iy)·f₂(x-iy)` as a polynomial in `(x, y)` over Q(i).
fn holomorphic_product(f1: &MultiPoly, f2: &MultiPoly) -> MultiPoly<GaussianRational> {
    let vars = Vars::xy();
    let x = MultiPoly::<GaussianRational>::var(&vars, 0);
    let iy = MultiPoly::<GaussianRational>::var(&vars, 1).scale(&GaussianRational::i());
    let a = f1.to_gaussian().substitute(&[&x + &iy]).expect("one image");
    let b = f2.to_gaussian().substitute(&[&x - &iy]).expect("one image");
    &a * &b
}

fn restrict_to_line(p: &MultiPoly<GaussianRational>) -> MultiPoly<GaussianRational> {
    p.evaluate_var(1, &GaussianRational::zero())
        .project(&[0], &Vars::single("z"))
        .expect("y eliminated")
}

/// Both sides of the two holomorphic-trick identities, with `f = f₁(x+iy) f₂(x-iy)`:
/// `𝒟(f, if) = RC^a_{λ+1,λ-1}(f₁, f₂)` and `𝒟(f, -if) = (-1)^a RC^a_{λ-1,λ+1}(f₁, f₂)`,
/// where `𝒟 = rc_split(λ, a)`. Returns `[(lhs, rhs); 2]`.
pub fn holomorphic_trick_sides(
    a: u32,
    lambda: &Rational,
    f1: &MultiPoly,
    f2: &MultiPoly,
) -> [(MultiPoly<GaussianRational>, MultiPoly<GaussianRational>); 2] {
    let p = rc_split(lambda, a);
    let d1 = p.d1.to_gaussian();
    let d2 = p.d2.to_gaussian();
    let f = holomorphic_product(f1, f2);
    let i = GaussianRational::i();
    let d1f = apply_poly(&d1, &f);
    let d2f = apply_poly(&d2, &f);
    let plus = restrict_to_line(&(&d1f + &d2f.scale(&i)));
    let minus = restrict_to_line(&(&d1f - &d2f.scale(&i)));
    let one = Rational::one();
    let z = Vars::single("z");
    let f1 = f1.rename(&z);
    let f2 = f2.rename(&z);
    let rc_plus = rc_bracket_apply(a, &(lambda + &one), &(lambda - &one), &f1, &f2);
    let rc_minus = rc_bracket_apply(a, &(lambda - &one), &(lambda + &one), &f1, &f2)
        .scale(&Rational::sign_power(a as u64));
    [
        (plus, rc_plus.to_gaussian()),
        (minus, rc_minus.to_gaussian()),
    ]
}

pub fn holomorphic_trick_check(a: u32, lambda: &Rational, f1: &MultiPoly, f2: &MultiPoly) -> bool {
    holomorphic_trick_sides(a, lambda, f1, f2)
        .iter()
        .all(|(l, r)| l == r)
}

/// Generators of the weight-`λ` action on polynomials in one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sl2Generator {
    E,
    H,
    F,
}

impl Sl2Generator {
    pub const ALL: [Sl2Generator; 3] = [Sl2Generator::E, Sl2Generator::H, Sl2Generator::F];
}

/// `E = ∂`, `H = 2z∂ + λ`, `F = z²∂ + λz`, acting in variable `index` of `p`.
pub fn sl2_act(x: Sl2Generator, lambda: &Rational, p: &MultiPoly, index: usize) -> MultiPoly {
    let z = MultiPoly::var(p.vars(), index);
    let dp = p.derivative(index);
    match x {
        Sl2Generator::E => dp,
        Sl2Generator::H => &(&z * &dp).scale(&Rational::from(2)) + &p.scale(lambda),
        Sl2Generator::F => &(&(&z * &z) * &dp) + &(&z * p).scale(lambda),
    }
}

/// `[E,F] = H`, `[H,E] = -2E`, `[H,F] = 2F` on monomials of degree `≤ deg_bound`.
pub fn sl2_bracket_self_check(lambda: &Rational, deg_bound: u32) -> bool {
    use Sl2Generator::*;
    let vars = Vars::single("z");
    let bracket = |a: Sl2Generator, b: Sl2Generator, p: &MultiPoly| {
        &sl2_act(a, lambda, &sl2_act(b, lambda, p, 0), 0)
            - &sl2_act(b, lambda, &sl2_act(a, lambda, p, 0), 0)
    };
    (0..=deg_bound).all(|m| {
        let p = MultiPoly::monomial(&vars, vec![m], Rational::one());
        bracket(E, F, &p) == sl2_act(H, lambda, &p, 0)
            && bracket(H, E, &p) == sl2_act(E, lambda, &p, 0).scale(&Rational::from(-2))
            && bracket(H, F, &p) == sl2_act(F, lambda, &p, 0).scale(&Rational::from(2))
    })
}

/// First failing `(generator, m, n)`, if any, for
/// `RC ∘ (X_{λ₁}⊗1 + 1⊗X_{λ₂}) = X_{λ₁+λ₂+2a} ∘ RC` on `z₁^m z₂^n`, `m + n ≤ deg_bound`.
pub fn sl2_holo_covariance_witness(
    a: u32,
    l1: &Rational,
    l2: &Rational,
    deg_bound: u32,
) -> Option<(Sl2Generator, u32, u32)> {
    let vars = Vars::new(&["z1", "z2"]);
    let target = l1 + l2 + Rational::from(2 * a);
    for x in Sl2Generator::ALL {
        for d in 0..=deg_bound {
            for m in 0..=d {
                let n = d - m;
                let g = MultiPoly::monomial(&vars, vec![m, n], Rational::one());
                let moved = &sl2_act(x, l1, &g, 0) + &sl2_act(x, l2, &g, 1);
                let lhs = rc_diagonal(a, l1, l2, &moved);
                let rhs = sl2_act(x, &target, &rc_diagonal(a, l1, l2, &g), 0);
                if lhs != rhs {
                    return Some((x, m, n));
                }
            }
        }
    }
    None
}

/// The bracket self-check at both weights, followed by the covariance identity.
pub fn sl2_holo_covariance_check(a: u32, l1: &Rational, l2: &Rational, deg_bound: u32) -> bool {
    sl2_bracket_self_check(l1, deg_bound + 2)
        && sl2_bracket_self_check(l2, deg_bound + 2)
        && sl2_holo_covariance_witness(a, l1, l2, deg_bound).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    fn sym(terms: &[(u32, u32, Rational)]) -> OperatorSymbol {
        let mut s = MultiPoly::zero(&Vars::xi_eta());
        for (i, j, c) in terms {
            s.add_term(vec![*i, *j], c.clone());
        }
        s
    }

    fn z_mono(m: u32) -> MultiPoly {
        MultiPoly::monomial(&Vars::single("z"), vec![m], Rational::one())
    }

    #[test]
    fn applying_simple_symbols() {
        let vars = Vars::xy();
        let f = PowerWeightedFn::from_poly(MultiPoly::var(&vars, 0));
        assert_eq!(apply(&sym(&[(0, 0, q(1, 1))]), &f), f);
        assert_eq!(
            apply(&xi(), &f),
            PowerWeightedFn::from_poly(MultiPoly::one(&vars))
        );

        // η on -2x²y·w^{-λ-2}, restricted, is -2|x|^{-2λ-2}
        let lambda = q(3, 7);
        let g = PowerWeightedFn::term(
            MultiPoly::monomial(&vars, vec![2, 1], q(-2, 1)),
            -&lambda - q(2, 1),
        );
        let r = apply(&eta(), &g).restrict_y0();
        let expected =
            HalfLineExpr::signed_monomial(0, &(-(&lambda * &q(2, 1)) - q(2, 1)), q(-2, 1));
        assert_eq!(r, expected);
    }

    #[test]
    fn theorem_a_low_orders() {
        let lambda = q(5, 3);
        let vars = Vars::xi_eta();
        let p0 = theorem_a_pair(&lambda, 0);
        assert_eq!(
            (p0.d1, p0.d2),
            (MultiPoly::one(&vars), MultiPoly::zero(&vars))
        );

        let p1 = theorem_a_pair(&lambda, 1);
        let two_l = &lambda * &q(2, 1);
        assert_eq!(p1.d1, xi().scale(&two_l));
        assert_eq!(p1.d2, eta().scale(&(&two_l * &lambda)));
        assert_eq!(p1.nu, &lambda + &q(1, 1));
    }

    #[test]
    fn example_operators_and_their_scalars() {
        for lambda in [
            q(1, 3),
            q(2, 5),
            q(7, 4),
            q(-3, 7),
            q(5, 2),
            q(-1, 2),
            q(0, 1),
        ] {
            let e1 = example_pair(&lambda, 1).unwrap();
            assert_eq!(theorem_a_pair(&lambda, 1), e1.scale(&(&lambda * &q(2, 1))));
            let e2 = example_pair(&lambda, 2).unwrap();
            assert_eq!(
                theorem_a_pair(&lambda, 2),
                e2.scale(&(&lambda * &q(2, 1) + q(1, 1)))
            );
            assert_eq!(
                example_pair(&lambda, 0).unwrap(),
                theorem_a_pair(&lambda, 0)
            );
        }
        assert!(matches!(
            example_pair(&q(1, 1), 3),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn dual_examples() {
        let lambda = q(2, 3);
        let p = theorem_a_pair(&lambda, 0);
        let d = dual(&p);
        assert!(d.d1.is_zero());
        assert_eq!(d.d2, MultiPoly::one(&Vars::xi_eta()));

        let e = example_pair(&lambda, 1).unwrap();
        let d = dual(&e);
        assert_eq!(d.d1, eta().scale(&-lambda.clone()));
        assert_eq!(d.d2, xi());
        assert_eq!(dual(&dual(&e)), e.scale(&q(-1, 1)));
    }

    #[test]
    fn juhl_low_orders() {
        let lambda = q(4, 5);
        assert_eq!(juhl_scalar(&lambda, 0), MultiPoly::one(&Vars::xi_eta()));
        assert_eq!(
            juhl_scalar(&lambda, 1),
            eta().scale(&(&lambda * &q(2, 1) - q(1, 1)))
        );
        // C^μ_2(-ξ², η) = μξ² + 2μ(μ+1)η² with μ = λ - 1/2
        let mu = &lambda - &q(1, 2);
        let expected = sym(&[(2, 0, mu.clone()), (0, 2, q(2, 1) * &mu * (&mu + &q(1, 1)))]);
        assert_eq!(juhl_scalar(&lambda, 2), expected);
    }

    #[test]
    fn bracket_examples() {
        let (l1, l2) = (q(2, 3), q(-5, 4));
        let z = z_mono(1);
        let one = z_mono(0);
        assert_eq!(rc_bracket_apply(0, &l1, &l2, &z, &z), &z * &z);
        assert_eq!(rc_bracket_apply(1, &l1, &l2, &z, &z), z.scale(&(&l2 - &l1)));
        assert_eq!(
            rc_bracket_apply(1, &l1, &l2, &z_mono(2), &one),
            z.scale(&(&l2 * &q(2, 1)))
        );
    }

    #[test]
    fn rc_split_low_orders() {
        let lambda = q(3, 8);
        let p0 = rc_split(&lambda, 0);
        assert_eq!(p0.d1, MultiPoly::one(&Vars::xi_eta()));
        assert!(p0.d2.is_zero());
        let p1 = rc_split(&lambda, 1);
        assert_eq!(p1, example_pair(&lambda, 1).unwrap().scale(&q(-1, 1)));
    }

    #[test]
    fn holomorphic_trick_anchor() {
        let lambda = q(7, 3);
        let [(l, r), _] = holomorphic_trick_sides(1, &lambda, &z_mono(1), &z_mono(0));
        let expected = MultiPoly::constant(
            &Vars::single("z"),
            GaussianRational::real(&lambda - &q(1, 1)),
        );
        assert_eq!(l, expected);
        assert_eq!(r, expected);
        assert!(holomorphic_trick_check(0, &lambda, &z_mono(3), &z_mono(2)));
    }

    #[test]
    fn covariance_of_brackets() {
        assert!(sl2_bracket_self_check(&q(-2, 7), 8));
        assert!(sl2_holo_covariance_check(0, &q(1, 2), &q(3, 1), 4));
        assert!(sl2_holo_covariance_check(1, &q(1, 2), &q(3, 1), 4));
        // a mismatched target weight must fail
        let vars = Vars::new(&["z1", "z2"]);
        let g = MultiPoly::monomial(&vars, vec![1, 0], Rational::one());
        let moved =
            &sl2_act(Sl2Generator::H, &q(1, 2), &g, 0) + &sl2_act(Sl2Generator::H, &q(3, 1), &g, 1);
        let lhs = rc_diagonal(1, &q(1, 2), &q(3, 1), &moved);
        let wrong = sl2_act(
            Sl2Generator::H,
            &q(7, 2),
            &rc_diagonal(1, &q(1, 2), &q(3, 1), &g),
            0,
        );
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn output_formats() {
        let p = theorem_a_pair(&q(1, 3), 1);
        let j = p.to_json();
        assert_eq!(j["D1"], json!([{"c": "2/3", "dx": 1, "dy": 0}]));
        assert_eq!(j["D2"], json!([{"c": "2/9", "dx": 0, "dy": 1}]));
        assert_eq!(j["nu"], json!("4/3"));
        assert_eq!(
            p.to_latex(),
            "\\lambda = \\frac{1}{3}, \\quad \\nu = \\frac{4}{3}, \\quad D_1 = \\frac{2}{3}\\partial_x, \\quad D_2 = \\frac{2}{9}\\partial_y"
        );
        assert_eq!(
            p.to_text(),
            "lambda = 1/3\nnu = 4/3\nD1 = 2/3*dx\nD2 = 2/9*dy\n"
        );
        let v = p.coefficient_vector(2);
        assert_eq!(
            PairOperator::from_coefficient_vector(&v, 2, p.lambda.clone(), p.nu.clone()),
            p
        );
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn theorem_a_symbols_are_homogeneous(lambda in rational(), a in 0u32..8) {
            let p = theorem_a_pair(&lambda, a);
            prop_assert!(p.d1.is_homogeneous(a) && p.d2.is_homogeneous(a));
        }

        #[test]
        fn rc_split_is_real(lambda in rational(), a in 0u32..11) {
            // split_re_im would silently drop nothing; recombining must give back the symbol
            let p = rc_split(&lambda, a);
            let i = GaussianRational::i();
            let joined = &p.d1.to_gaussian() + &p.d2.to_gaussian().scale(&i);
            let one = Rational::one();
            let sym = rc_symbol(a, &(&lambda + &one), &(&lambda - &one)).to_gaussian();
            let vars = Vars::xi_eta();
            let x = MultiPoly::<GaussianRational>::var(&vars, 0);
            let y = MultiPoly::<GaussianRational>::var(&vars, 1).scale(&i);
            let direct = sym.substitute(&[&x - &y, &x + &y]).unwrap()
                .scale_rational(&Rational::from(2).pow(-(a as i32)));
            prop_assert_eq!(joined, direct);
        }

        #[test]
        fn dual_twice_is_negation(lambda in rational(), a in 0u32..6) {
            let p = theorem_a_pair(&lambda, a);
            prop_assert_eq!(dual(&dual(&p)), p.scale(&q(-1, 1)));
        }

        #[test]
        fn apply_commutes_with_canonicalization(
            lambda in rational(),
            a in 0u32..4,
            p in 0u32..4,
            k in 0u32..3,
        ) {
            // p·w^μ stored unreduced as (p·w^k)·w^{μ-k}
            let vars = Vars::xy();
            let w = crate::exact::sum_of_squares::<Rational>();
            let base = MultiPoly::monomial(&vars, vec![p, 1], Rational::one());
            let f = PowerWeightedFn::term(&base * &w.pow(k), -&lambda - Rational::from(k));
            let op = theorem_a_pair(&lambda, a).d2;
            prop_assert_eq!(apply(&op, &f.canonicalized()), apply(&op, &f).canonicalized());
        }

        #[test]
        fn apply_is_linear(lambda in rational(), c in rational(), p in 0u32..4, q_ in 0u32..4) {
            let vars = Vars::xy();
            let f = PowerWeightedFn::term(MultiPoly::monomial(&vars, vec![p, q_], Rational::one()), lambda.clone());
            let g = PowerWeightedFn::term(MultiPoly::monomial(&vars, vec![q_, p], Rational::one()), -lambda.clone());
            let op = theorem_a_pair(&lambda, 2).d1;
            let lhs = apply(&op, &f.add(&g.scale(&c)));
            let rhs = apply(&op, &f).add(&apply(&op, &g).scale(&c));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
