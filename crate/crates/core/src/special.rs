//! Gegenbauer and Jacobi polynomials, Rankin–Cohen symbols, and exact checkers
//! for the polynomial identities that tie them together.
//!
//! Every Γ-ratio is rewritten as a Pochhammer product, so all coefficients are
//! polynomials in the parameters and no Γ evaluation is ever needed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{sum_of_squares, GaussianRational, MultiPoly, Rational, Scalar, Vars};

/// Rising factorial `(μ)_k = μ(μ+1)···(μ+k-1)`, with `(μ)_0 = 1`.
pub fn pochhammer(mu: &Rational, k: u32) -> Rational {
    (0..k).map(|j| mu + &Rational::from(j)).product()
}

/// Generalized binomial `binom(μ, k) = (μ-k+1)_k / k!`.
pub fn gen_binomial(mu: &Rational, k: u32) -> Rational {
    let start = mu - &Rational::from(k) + Rational::one();
    pochhammer(&start, k) / Rational::factorial(k)
}

/// Which second-order Gegenbauer operator to use.
///
/// `Direct` expands the two-variable inflation for every degree. `PrintedSecondOrder`
/// replaces degree 2 by the symbol `α·s + α(α+1)·t²`, i.e. the operator
/// `α(-∂x² + (α+1)∂y²)`. Only `Direct` makes the degree-3 operator covariant; the
/// other variant is kept so the acceptance suite can show that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GegenbauerConvention {
    #[default]
    Direct,
    PrintedSecondOrder,
}

/// `2^{ℓ-2k} (-1)^k (α)_{ℓ-k} / ((ℓ-2k)! k!)`, the coefficient of `t^{ℓ-2k}` (times `s^k`).
fn gegenbauer_coeff(alpha: &Rational, l: u32, k: u32) -> Rational {
    let sign = Rational::sign_power(k as u64);
    sign * pochhammer(alpha, l - k) * Rational::from(2).pow((l - 2 * k) as i32)
        / (Rational::factorial(l - 2 * k) * Rational::factorial(k))
}

/// `C^α_ℓ(t)` in the variable `t`; the zero polynomial for `ℓ < 0`.
pub fn gegenbauer_1d(alpha: &Rational, l: i64) -> MultiPoly {
    let vars = Vars::single("t");
    let mut p = MultiPoly::zero(&vars);
    if l < 0 {
        return p;
    }
    let l = l as u32;
    for k in 0..=l / 2 {
        p.add_term(vec![l - 2 * k], gegenbauer_coeff(alpha, l, k));
    }
    p
}

/// Two-variable inflation `C^α_ℓ(s,t) = s^{ℓ/2} C^α_ℓ(t/√s)`, expanded to
/// `Σ_k c_k s^k t^{ℓ-2k}`; zero for `ℓ < 0`.
pub fn gegenbauer_2d(alpha: &Rational, l: i64) -> MultiPoly {
    gegenbauer_2d_with(alpha, l, GegenbauerConvention::Direct)
}

pub fn gegenbauer_2d_with(alpha: &Rational, l: i64, convention: GegenbauerConvention) -> MultiPoly {
    let vars = Vars::st();
    let mut p = MultiPoly::zero(&vars);
    if l < 0 {
        return p;
    }
    if l == 2 && convention == GegenbauerConvention::PrintedSecondOrder {
        p.add_term(vec![1, 0], alpha.clone());
        p.add_term(vec![0, 2], alpha * &(alpha + &Rational::one()));
        return p;
    }
    let l = l as u32;
    for k in 0..=l / 2 {
        p.add_term(vec![k, l - 2 * k], gegenbauer_coeff(alpha, l, k));
    }
    p
}

/// `C^α_ℓ(-u², v)` where `u, v` are the two variables of `vars` (for operator symbols,
/// `u = ξ ↔ ∂x` and `v = η ↔ ∂y`).
pub fn gegenbauer_at_minus_square<S: Scalar>(
    alpha: &Rational,
    l: i64,
    convention: GegenbauerConvention,
    vars: &Vars,
) -> MultiPoly<S> {
    let c = gegenbauer_2d_with(alpha, l, convention);
    let mut out = MultiPoly::zero(vars);
    for (e, coeff) in c.terms() {
        // s^k t^m -> (-1)^k u^{2k} v^m
        let sign = Rational::sign_power(e[0] as u64);
        out.add_term(vec![2 * e[0], e[1]], S::from_rational(sign * coeff));
    }
    out
}

/// Coefficient of `((t-1)/2)^m` in `P^{α,β}_ℓ(t)`:
/// `(α+m+1)_{ℓ-m} (α+β+ℓ+1)_m / ((ℓ-m)! m!)`.
fn jacobi_coeff(alpha: &Rational, beta: &Rational, l: u32, m: u32) -> Rational {
    let a1 = alpha + &Rational::from(m + 1);
    let ab = alpha + beta + Rational::from(l + 1);
    pochhammer(&a1, l - m) * pochhammer(&ab, m)
        / (Rational::factorial(l - m) * Rational::factorial(m))
}

/// `P^{α,β}_ℓ(t)` in the variable `t`.
pub fn jacobi_1d(alpha: &Rational, beta: &Rational, l: u32) -> MultiPoly {
    let vars = Vars::single("t");
    let half = Rational::new(1, 2);
    let mut u = MultiPoly::zero(&vars);
    u.add_term(vec![1], half.clone());
    u.add_term(vec![0], -half);
    let mut out = MultiPoly::zero(&vars);
    let mut power = MultiPoly::one(&vars);
    for m in 0..=l {
        out = &out + &power.scale(&jacobi_coeff(alpha, beta, l, m));
        power = &power * &u;
    }
    out
}

/// Homogeneous inflation `P^{α,β}_ℓ(x,y) = y^ℓ P^{α,β}_ℓ(2x/y + 1) = Σ_m c_m x^m y^{ℓ-m}`.
///
/// The Pochhammer form is polynomial in `α, β`, so this is defined for every
/// rational parameter pair. Zero for `ℓ < 0`.
pub fn jacobi_2d(alpha: &Rational, beta: &Rational, l: i64) -> MultiPoly {
    let vars = Vars::xy();
    let mut out = MultiPoly::zero(&vars);
    if l < 0 {
        return out;
    }
    let l = l as u32;
    for m in 0..=l {
        out.add_term(vec![m, l - m], jacobi_coeff(alpha, beta, l, m));
    }
    out
}

/// Rankin–Cohen symbol `Σ_ℓ (-1)^ℓ binom(λ₁+a-1, ℓ) binom(λ₂+a-1, a-ℓ) x^{a-ℓ} y^ℓ`.
pub fn rc_symbol(a: u32, l1: &Rational, l2: &Rational) -> MultiPoly {
    let vars = Vars::xy();
    let shift = Rational::from(a) - Rational::one();
    let b1 = l1 + &shift;
    let b2 = l2 + &shift;
    let mut out = MultiPoly::zero(&vars);
    for l in 0..=a {
        let c = Rational::sign_power(l as u64) * gen_binomial(&b1, l) * gen_binomial(&b2, a - l);
        out.add_term(vec![a - l, l], c);
    }
    out
}

fn swap_xy<S: Scalar>(p: &MultiPoly<S>) -> MultiPoly<S> {
    let mut out = MultiPoly::zero(p.vars());
    for (e, c) in p.terms() {
        out.add_term(vec![e[1], e[0]], c.clone());
    }
    out
}

/// `RC(λ₁,λ₂)(x,y) = (-1)^a RC(λ₂,λ₁)(y,x)`.
pub fn rc_swap_check(a: u32, l1: &Rational, l2: &Rational) -> bool {
    let lhs = rc_symbol(a, l1, l2);
    let rhs = swap_xy(&rc_symbol(a, l2, l1)).scale(&Rational::sign_power(a as u64));
    lhs == rhs
}

/// Both sides of `RC^a_{λ₁,λ₂}(x,y) = (-1)^a P^{λ₁-1, -λ₁-λ₂-2a+1}_a(x,y)`.
pub fn rc_jacobi_sides(a: u32, l1: &Rational, l2: &Rational) -> (MultiPoly, MultiPoly) {
    let alpha = l1 - &Rational::one();
    let beta = -l1 - l2 - Rational::from(2 * a) + Rational::one();
    let rhs = jacobi_2d(&alpha, &beta, a as i64).scale(&Rational::sign_power(a as u64));
    (rc_symbol(a, l1, l2), rhs)
}

pub fn rc_jacobi_relation_check(a: u32, l1: &Rational, l2: &Rational) -> bool {
    let (lhs, rhs) = rc_jacobi_sides(a, l1, l2);
    lhs == rhs
}

/// Values `A_a(λ)`, `B_a(λ)`, `U_a(λ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoeffTriple {
    #[serde(rename = "A")]
    pub a: Rational,
    #[serde(rename = "B")]
    pub b: Rational,
    #[serde(rename = "U")]
    pub u: Rational,
}

/// `A_a = (2λ²+2(a-1)λ+a(a-1)) / (a(2λ+a-1))`, `B_a = (λ-1)(2λ+1) / (a(2λ+a-1))`,
/// `U_a = 2(λ+[a/2])_{[(a-1)/2]} / (λ+1/2)_{[(a-1)/2]}`.
pub fn abu(a: u32, lambda: &Rational) -> Result<CoeffTriple> {
    if a == 0 {
        return Err(Error::InvalidArgument("A_a, B_a, U_a need a >= 1".into()));
    }
    let ar = Rational::from(a);
    let two = Rational::from(2);
    let denom = &ar * &(&two * lambda + &ar - Rational::one());
    let Some(inv) = denom.recip() else {
        return Err(Error::Pole {
            denominator: format!("a(2λ+a-1) with a={a}"),
            parameter: "lambda",
            value: lambda.clone(),
        });
    };
    let numer_a = &two * &(lambda * lambda)
        + &two * &(&ar - &Rational::one()) * lambda
        + &ar * &(&ar - &Rational::one());
    let numer_b = (lambda - &Rational::one()) * (&two * lambda + Rational::one());
    let k = (a - 1) / 2;
    let u_den = pochhammer(&(lambda + &Rational::new(1, 2)), k);
    if u_den.is_zero() {
        return Err(Error::Pole {
            denominator: format!("(λ+1/2)_{k}"),
            parameter: "lambda",
            value: lambda.clone(),
        });
    }
    let u = two * pochhammer(&(lambda + &Rational::from(a / 2)), k) / u_den;
    Ok(CoeffTriple {
        a: numer_a * &inv,
        b: numer_b * &inv,
        u,
    })
}

/// Left and right sides of both displays of the Jacobi–Gegenbauer identity:
/// a one-variable pair in `z` and a Gaussian pair in `(x, y)`.
pub struct IdentitySides {
    pub line: (MultiPoly, MultiPoly),
    pub gaussian: (MultiPoly<GaussianRational>, MultiPoly<GaussianRational>),
}

impl IdentitySides {
    pub fn holds(&self) -> bool {
        self.line.0 == self.line.1 && self.gaussian.0 == self.gaussian.1
    }
}

/// `P(1+z, 1-z) = (1-z)^ℓ P((3+z)/(1-z))` for the homogeneous inflation `P(x, y)`.
fn at_one_plus_minus_z(p: &MultiPoly) -> MultiPoly {
    let z = Vars::single("z");
    let one = MultiPoly::one(&z);
    let zz = MultiPoly::var(&z, 0);
    p.substitute(&[&one + &zz, &one - &zz]).expect("two images")
}

/// `P(x - iy, x + iy)` over Q(i).
fn at_conjugate_pair(p: &MultiPoly) -> MultiPoly<GaussianRational> {
    let vars = Vars::xy();
    let x = MultiPoly::<GaussianRational>::var(&vars, 0);
    let iy = MultiPoly::<GaussianRational>::var(&vars, 1).scale(&GaussianRational::i());
    p.to_gaussian()
        .substitute(&[&x - &iy, &x + &iy])
        .expect("two images")
}

fn gegenbauer_in_z(alpha: &Rational, l: i64) -> MultiPoly {
    gegenbauer_1d(alpha, l).rename(&Vars::single("z"))
}

/// Sides of the vector-valued Jacobi–Gegenbauer identity for `a ≥ 1`.
pub fn prop_jacob_sides(a: u32, lambda: &Rational) -> Result<IdentitySides> {
    let CoeffTriple {
        a: ca,
        b: cb,
        u: cu,
    } = abu(a, lambda)?;
    let al = a as i64;
    let half = Rational::new(1, 2);
    let alpha1 = lambda + &half;
    let alpha2 = lambda + &Rational::new(3, 2);
    let beta = -(lambda * &Rational::from(2)) - Rational::from(2 * a) + Rational::one();
    let jac = jacobi_2d(lambda, &beta, al);

    let z = Vars::single("z");
    let zz = MultiPoly::var(&z, 0);
    let one = MultiPoly::one(&z);
    let c1 = gegenbauer_in_z(&alpha1, al - 1);
    let c2 = gegenbauer_in_z(&alpha2, al - 2);
    let line_rhs = &(&(&one - &zz.scale(&ca)) * &c1) + &(&(&one - &zz.pow(2)) * &c2).scale(&cb);
    let line_rhs = line_rhs.scale(&(Rational::sign_power((a - 1) as u64) * &cu));
    let line = (at_one_plus_minus_z(&jac), line_rhs);

    let vars = Vars::xy();
    let conv = GegenbauerConvention::Direct;
    let g1: MultiPoly<GaussianRational> = gegenbauer_at_minus_square(&alpha1, al - 1, conv, &vars);
    let g2: MultiPoly<GaussianRational> = gegenbauer_at_minus_square(&alpha2, al - 2, conv, &vars);
    let gx = MultiPoly::<GaussianRational>::var(&vars, 0);
    let gy = MultiPoly::<GaussianRational>::var(&vars, 1);
    let w = sum_of_squares::<GaussianRational>();
    let real = &gx * &g1;
    let imag = &(&gy * &g1).scale_rational(&ca) + &(&w * &g2).scale_rational(&cb);
    let inner = &real + &imag.scale(&GaussianRational::i());
    let prefactor = GaussianRational::i_pow(a as i64 - 1).scale(&cu);
    let gaussian = (at_conjugate_pair(&jac), inner.scale(&prefactor));

    Ok(IdentitySides { line, gaussian })
}

pub fn prop_jacob_check(a: u32, lambda: &Rational) -> Result<bool> {
    Ok(prop_jacob_sides(a, lambda)?.holds())
}

/// Sides of the scalar Jacobi–Gegenbauer identity for `a ≥ 0`.
pub fn scalar_prop_sides(a: u32, lambda: &Rational) -> Result<IdentitySides> {
    let k = a.div_ceil(2);
    let half = Rational::new(1, 2);
    let den = pochhammer(&(lambda - &half), k);
    if den.is_zero() {
        return Err(Error::Pole {
            denominator: format!("(λ-1/2)_{k}"),
            parameter: "lambda",
            value: lambda.clone(),
        });
    }
    let ratio = pochhammer(&(lambda + &Rational::from(a / 2)), k) / den;
    let al = a as i64;
    let alpha = lambda - &half;
    let jac = jacobi_2d(
        &(lambda - &Rational::one()),
        &(-(lambda * &Rational::from(2)) - Rational::from(2 * a) + Rational::one()),
        al,
    );

    let line_rhs = gegenbauer_in_z(&alpha, al).scale(&(Rational::sign_power(a as u64) * &ratio));
    let line = (at_one_plus_minus_z(&jac), line_rhs);

    let vars = Vars::xy();
    let g: MultiPoly<GaussianRational> =
        gegenbauer_at_minus_square(&alpha, al, GegenbauerConvention::Direct, &vars);
    let prefactor = GaussianRational::i_pow(al).scale(&ratio);
    let gaussian = (at_conjugate_pair(&jac), g.scale(&prefactor));
    Ok(IdentitySides { line, gaussian })
}

pub fn scalar_prop_check(a: u32, lambda: &Rational) -> Result<bool> {
    Ok(scalar_prop_sides(a, lambda)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use proptest::prelude::*;

    fn t_poly(coeffs: &[Rational]) -> MultiPoly {
        MultiPoly::from_coeffs(&Vars::single("t"), coeffs)
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&q(7, 3), 0), q(1, 1));
        assert_eq!(pochhammer(&q(1, 1), 4), q(24, 1));
        assert_eq!(pochhammer(&q(1, 2), 2), q(3, 4));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(gen_binomial(&q(-5, 7), 0), q(1, 1));
        assert_eq!(gen_binomial(&q(-5, 7), 1), q(-5, 7));
        assert_eq!(gen_binomial(&q(5, 1), 2), q(10, 1));
        assert_eq!(gen_binomial(&q(3, 1), 5), q(0, 1));
    }

    #[test]
    fn gegenbauer_low_degrees() {
        let alpha = q(3, 5);
        assert_eq!(gegenbauer_1d(&alpha, 0), t_poly(&[q(1, 1)]));
        assert_eq!(
            gegenbauer_1d(&alpha, 1),
            t_poly(&[q(0, 1), &alpha * &q(2, 1)])
        );
        // (4/3)α(α+1)(α+2)t³ - 2α(α+1)t
        let a1 = &alpha + &q(1, 1);
        let a2 = &alpha + &q(2, 1);
        let c3 = q(4, 3) * &alpha * &a1 * &a2;
        let c1 = -(q(2, 1) * &alpha * &a1);
        assert_eq!(
            gegenbauer_1d(&alpha, 3),
            t_poly(&[q(0, 1), c1, q(0, 1), c3])
        );
        assert!(gegenbauer_1d(&alpha, -1).is_zero());
        assert!(gegenbauer_1d(&alpha, -2).is_zero());
    }

    #[test]
    fn gegenbauer_inflation_degree_two() {
        // 2α(α+1)t² - αs
        let alpha = q(-2, 9);
        let mut expected = MultiPoly::zero(&Vars::st());
        expected.add_term(vec![0, 2], q(2, 1) * &alpha * (&alpha + &q(1, 1)));
        expected.add_term(vec![1, 0], -alpha.clone());
        assert_eq!(gegenbauer_2d(&alpha, 2), expected);
        assert!(gegenbauer_2d(&alpha, -1).is_zero());

        let printed = gegenbauer_2d_with(&alpha, 2, GegenbauerConvention::PrintedSecondOrder);
        assert_ne!(printed, expected);
    }

    #[test]
    fn gegenbauer_three_term_recurrence() {
        // ℓ C_ℓ = 2t(ℓ+α-1) C_{ℓ-1} - (ℓ+2α-2) C_{ℓ-2}, an independent check of the sum formula
        let alpha = q(5, 4);
        let t = MultiPoly::var(&Vars::single("t"), 0);
        for l in 2..10i64 {
            let lhs = gegenbauer_1d(&alpha, l).scale(&Rational::from(l));
            let a = (&t * &gegenbauer_1d(&alpha, l - 1))
                .scale(&(q(2, 1) * (Rational::from(l - 1) + &alpha)));
            let b =
                gegenbauer_1d(&alpha, l - 2).scale(&(Rational::from(l - 2) + &alpha * &q(2, 1)));
            assert_eq!(lhs, &a - &b, "degree {l}");
        }
    }

    #[test]
    fn jacobi_low_degrees() {
        let (alpha, beta) = (q(1, 3), q(-7, 2));
        assert_eq!(jacobi_2d(&alpha, &beta, 0), MultiPoly::one(&Vars::xy()));
        let mut p1 = MultiPoly::zero(&Vars::xy());
        p1.add_term(vec![1, 0], q(2, 1) + &alpha + &beta);
        p1.add_term(vec![0, 1], &alpha + &q(1, 1));
        assert_eq!(jacobi_2d(&alpha, &beta, 1), p1);
    }

    #[test]
    fn jacobi_inflation_anchor() {
        // P^{λ,-2λ-1}_1 at (1+z, 1-z) is 2 - 2λz
        let lambda = q(4, 7);
        let beta = -(&lambda * &q(2, 1)) - q(1, 1);
        let p = at_one_plus_minus_z(&jacobi_2d(&lambda, &beta, 1));
        let expected =
            MultiPoly::from_coeffs(&Vars::single("z"), &[q(2, 1), -(&lambda * &q(2, 1))]);
        assert_eq!(p, expected);
    }

    #[test]
    fn jacobi_inflation_matches_one_variable_form() {
        // y^ℓ P(2x/y + 1) evaluated at sample points against the one-variable polynomial
        let (alpha, beta) = (q(2, 3), q(-3, 5));
        for l in 0..7u32 {
            let p1 = jacobi_1d(&alpha, &beta, l);
            let p2 = jacobi_2d(&alpha, &beta, l as i64);
            for (x, y) in [(q(1, 2), q(3, 1)), (q(-2, 1), q(5, 7)), (q(3, 1), q(-1, 4))] {
                let t = q(2, 1) * &x / y.clone() + q(1, 1);
                let lhs = p2.evaluate(&[x.clone(), y.clone()]);
                let rhs = y.pow(l as i32) * p1.evaluate(&[t]);
                assert_eq!(lhs, rhs, "degree {l}");
            }
        }
    }

    #[test]
    fn jacobi_recurrence() {
        // 2ℓ(ℓ+α+β)(2ℓ+α+β-2) P_ℓ = (2ℓ+α+β-1)[(2ℓ+α+β)(2ℓ+α+β-2)t + α²-β²] P_{ℓ-1}
        //                            - 2(ℓ+α-1)(ℓ+β-1)(2ℓ+α+β) P_{ℓ-2}
        let (a, b) = (q(1, 3), q(2, 7));
        let t = MultiPoly::var(&Vars::single("t"), 0);
        let one = MultiPoly::one(&Vars::single("t"));
        for l in 2..8u32 {
            let lr = Rational::from(l);
            let s = &lr * &q(2, 1) + &a + &b;
            let lhs =
                jacobi_1d(&a, &b, l).scale(&(q(2, 1) * &lr * (&lr + &a + &b) * (&s - &q(2, 1))));
            let lin = &t.scale(&(&s * &(&s - &q(2, 1)))) + &one.scale(&(&a * &a - &b * &b));
            let first = (&lin * &jacobi_1d(&a, &b, l - 1)).scale(&(&s - &q(1, 1)));
            let second = jacobi_1d(&a, &b, l - 2)
                .scale(&(q(2, 1) * (&lr + &a - q(1, 1)) * (&lr + &b - q(1, 1)) * s.clone()));
            assert_eq!(lhs, &first - &second, "degree {l}");
        }
    }

    #[test]
    fn rc_symbol_low_degrees() {
        let (l1, l2) = (q(5, 3), q(-1, 3));
        assert_eq!(rc_symbol(0, &l1, &l2), MultiPoly::one(&Vars::xy()));
        let mut p = MultiPoly::zero(&Vars::xy());
        p.add_term(vec![1, 0], l2.clone());
        p.add_term(vec![0, 1], -l1.clone());
        assert_eq!(rc_symbol(1, &l1, &l2), p);
    }

    #[test]
    fn abu_values() {
        let lambda = q(3, 4);
        let t = abu(1, &lambda).unwrap();
        assert_eq!(t.a, lambda);
        assert_eq!(
            t.b,
            (&lambda - &q(1, 1)) * (q(2, 1) * &lambda + q(1, 1)) / (q(2, 1) * &lambda)
        );
        assert_eq!(t.u, q(2, 1));
        assert_eq!(abu(2, &q(1, 1)).unwrap().a, q(1, 1));
        assert!(matches!(abu(1, &q(0, 1)), Err(Error::Pole { .. })));
        assert!(matches!(abu(3, &q(-1, 2)), Err(Error::Pole { .. })));
    }

    #[test]
    fn identity_anchors() {
        let lambda = q(2, 9);
        let sides = prop_jacob_sides(1, &lambda).unwrap();
        let anchor = MultiPoly::from_coeffs(&Vars::single("z"), &[q(2, 1), -(&lambda * &q(2, 1))]);
        assert_eq!(sides.line.0, anchor);
        assert_eq!(sides.line.1, anchor);
        assert!(sides.holds());

        let s = scalar_prop_sides(1, &lambda).unwrap();
        let anchor = MultiPoly::from_coeffs(&Vars::single("z"), &[q(0, 1), -(&lambda * &q(2, 1))]);
        assert_eq!(s.line.0, anchor);
        assert!(s.holds());

        assert!(scalar_prop_check(0, &lambda).unwrap());
        assert!(rc_jacobi_relation_check(0, &lambda, &q(1, 5)));
        assert!(rc_jacobi_relation_check(1, &lambda, &q(1, 5)));
    }

    #[test]
    fn identity_poles_are_errors_not_failures() {
        assert!(matches!(
            prop_jacob_check(1, &q(0, 1)),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            scalar_prop_check(1, &q(1, 2)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn both_identities_hold_through_degree_eight() {
        for lambda in [q(1, 3), q(2, 5), q(7, 4), q(-3, 7), q(5, 2)] {
            for a in 1..=8 {
                assert!(
                    prop_jacob_check(a, &lambda).unwrap(),
                    "vector a={a} λ={lambda}"
                );
                assert!(
                    scalar_prop_check(a, &lambda).unwrap(),
                    "scalar a={a} λ={lambda}"
                );
            }
        }
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..9).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gegenbauer_parity(alpha in rational(), l in 0i64..9) {
            let p = gegenbauer_1d(&alpha, l);
            for (e, c) in p.terms() {
                prop_assert_eq!(e[0] as i64 % 2, l % 2, "coefficient {} breaks parity", c);
            }
        }

        #[test]
        fn gegenbauer_inflation_is_weighted_homogeneous(alpha in rational(), l in 0i64..10) {
            prop_assert!(gegenbauer_2d(&alpha, l).is_weighted_homogeneous(&[2, 1], l as u32));
        }

        #[test]
        fn jacobi_inflation_is_homogeneous(a in rational(), b in rational(), l in 0i64..10) {
            prop_assert!(jacobi_2d(&a, &b, l).is_homogeneous(l as u32));
        }

        #[test]
        fn rc_swap_and_jacobi_relation(a in 0u32..8, l1 in rational(), l2 in rational()) {
            prop_assert!(rc_swap_check(a, &l1, &l2));
            prop_assert!(rc_jacobi_relation_check(a, &l1, &l2));
        }
    }
}
