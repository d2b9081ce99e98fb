//! Twisted inversions and exact checks of the functional identity
//!
//! ```text
//! Rest_{y=0}(D₁ f∨ + D₂ g∨)(x) = |x|^{-2ν} · (𝒟F)(-1/x)
//! ```
//!
//! on the power-weighted class, plus a brute-force solver for all `(D₁, D₂)` up to
//! a given order satisfying it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diff_op::{apply, monomial_basis, OperatorSymbol, PairOperator};
use crate::error::{Error, Result};
use crate::exact::{
    normalize_integral, rank_of, Branch, ExactMatrix, HalfLineExpr, MultiPoly, PowerWeightedFn,
    Rational, Vars,
};

/// `F = (f, g)`, identified with the 1-form `f dx + g dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFn {
    pub f: PowerWeightedFn,
    pub g: PowerWeightedFn,
}

/// A scalar function on the plane.
pub type ScalarFn = PowerWeightedFn;

impl VectorFn {
    pub fn new(f: PowerWeightedFn, g: PowerWeightedFn) -> Self {
        VectorFn { f, g }
    }

    pub fn from_polys(f: MultiPoly, g: MultiPoly) -> Self {
        VectorFn::new(PowerWeightedFn::from_poly(f), PowerWeightedFn::from_poly(g))
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorFn::new(self.f.add(&other.f), self.g.add(&other.g))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorFn::new(self.f.scale(c), self.g.scale(c))
    }

    pub fn neg(&self) -> Self {
        VectorFn::new(self.f.neg(), self.g.neg())
    }

    /// `∨F = (g, -f)`; applying it twice gives `-F`.
    pub fn quarter_turn(&self) -> Self {
        VectorFn::new(self.g.clone(), self.f.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }
}

/// `w^{shift} · (F ∘ ι)` with `ι(x, y) = (-x, y)/w`: each `x^a y^b w^μ` becomes
/// `(-1)^a x^a y^b w^{shift-a-b-μ}`.
fn compose_inversion(f: &PowerWeightedFn, shift: &Rational) -> PowerWeightedFn {
    let vars = Vars::xy();
    let mut terms = Vec::new();
    for (p, mu) in f.terms() {
        for (e, c) in p.terms() {
            let sign = Rational::sign_power(e[0] as u64);
            terms.push((
                MultiPoly::monomial(&vars, e.to_vec(), sign * c),
                shift - &Rational::from(e[0] + e[1]) - mu,
            ));
        }
    }
    PowerWeightedFn::from_terms(terms)
}

/// `F∨_λ = w^{-λ-1} · [[x²-y², -2xy], [2xy, x²-y²]] · F(ι(x, y))`.
pub fn twisted_inversion(v: &VectorFn, lambda: &Rational) -> VectorFn {
    let vars = Vars::xy();
    let shift = -lambda - Rational::one();
    let fi = compose_inversion(&v.f, &shift);
    let gi = compose_inversion(&v.g, &shift);
    let mut c = MultiPoly::zero(&vars);
    c.add_term(vec![2, 0], Rational::one());
    c.add_term(vec![0, 2], -Rational::one());
    let s = MultiPoly::monomial(&vars, vec![1, 1], Rational::from(2));
    VectorFn::new(
        fi.mul_poly(&c).sub(&gi.mul_poly(&s)),
        fi.mul_poly(&s).add(&gi.mul_poly(&c)),
    )
}

/// `f∨_λ = w^{-λ} · f(ι(x, y))`.
pub fn scalar_twisted_inversion(f: &ScalarFn, lambda: &Rational) -> ScalarFn {
    compose_inversion(f, &-lambda.clone())
}

/// The two sides of the functional identity for `P` at input `F`.
pub fn identity_sides(p: &PairOperator, v: &VectorFn) -> (HalfLineExpr, HalfLineExpr) {
    let inv = twisted_inversion(v, &p.lambda);
    let lhs = p.apply(&inv.f, &inv.g);
    let rhs = p.apply(&v.f, &v.g).inversion_pullback(&p.nu);
    (lhs, rhs)
}

/// Exact check of the identity on both branches. Exponents are compared as exact
/// rationals, so when `ν - λ ∉ Z` the sides can only agree if both vanish.
pub fn identity_check(p: &PairOperator, v: &VectorFn) -> bool {
    let (l, r) = identity_sides(p, v);
    l == r
}

pub fn scalar_identity_sides(
    op: &OperatorSymbol,
    lambda: &Rational,
    nu: &Rational,
    f: &ScalarFn,
) -> (HalfLineExpr, HalfLineExpr) {
    let lhs = apply(op, &scalar_twisted_inversion(f, lambda)).restrict_y0();
    let rhs = apply(op, f).restrict_y0().inversion_pullback(nu);
    (lhs, rhs)
}

pub fn scalar_identity_check(
    op: &OperatorSymbol,
    lambda: &Rational,
    nu: &Rational,
    f: &ScalarFn,
) -> bool {
    let (l, r) = scalar_identity_sides(op, lambda, nu, f);
    l == r
}

/// Every term of both symbols has total degree `ν - λ`. Vacuously true for `(0, 0)`.
pub fn homogeneity_check(p: &PairOperator) -> bool {
    if p.is_zero() {
        return true;
    }
    match p.order().to_natural() {
        Some(a) => p.d1.is_homogeneous(a) && p.d2.is_homogeneous(a),
        None => false,
    }
}

/// Monomials `x^p y^q` with `p + q ≤ deg`, by total degree then `p`.
pub fn monomials_xy(deg: u32) -> Vec<MultiPoly> {
    let vars = Vars::xy();
    monomial_basis(deg)
        .into_iter()
        .map(|e| MultiPoly::monomial(&vars, e, Rational::one()))
        .collect()
}

/// One labelled test input of the covariance suite.
#[derive(Clone, Debug)]
pub struct TestInput {
    pub label: String,
    pub value: VectorFn,
}

/// `(x^p y^q, 0)` and `(0, x^p y^q)` for `p + q ≤ deg`.
pub fn monomial_inputs(deg: u32) -> Vec<TestInput> {
    let zero = MultiPoly::zero(&Vars::xy());
    let mut out = Vec::new();
    for m in monomials_xy(deg) {
        out.push(TestInput {
            label: format!("({m}, 0)"),
            value: VectorFn::from_polys(m.clone(), zero.clone()),
        });
        out.push(TestInput {
            label: format!("(0, {m})"),
            value: VectorFn::from_polys(zero.clone(), m),
        });
    }
    out
}

/// A failing case: which input, and both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({"input": self.input, "lhs": self.lhs, "rhs": self.rhs})
    }
}

/// First failure of the covariance suite, or `None` if `P` passes.
///
/// The suite is the identity on every monomial input up to `deg_bound` (the
/// inversion generator), homogeneity (dilations), and the structural fact that
/// the symbols have constant coefficients (translations).
pub fn covariance_witness(p: &PairOperator, deg_bound: u32) -> Option<Witness> {
    let vars = Vars::xi_eta();
    if p.d1.vars() != &vars || p.d2.vars() != &vars {
        return Some(Witness {
            input: "translations".into(),
            lhs: "symbol depends on position".into(),
            rhs: String::new(),
        });
    }
    if !homogeneity_check(p) {
        return Some(Witness {
            input: "dilations".into(),
            lhs: format!("D1 = {}, D2 = {}", p.d1, p.d2),
            rhs: format!("homogeneous of degree {}", p.order()),
        });
    }
    let inputs = monomial_inputs(deg_bound);
    inputs.par_iter().find_map_first(|t| {
        let (l, r) = identity_sides(p, &t.value);
        (l != r).then(|| Witness {
            input: t.label.clone(),
            lhs: l.to_string(),
            rhs: r.to_string(),
        })
    })
}

pub fn covariance_suite(p: &PairOperator, deg_bound: u32) -> bool {
    covariance_witness(p, deg_bound).is_none()
}

/// Output of [`solve_sbo`].
#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub lambda: Rational,
    pub nu: Rational,
    pub max_order: u32,
    pub test_degree: u32,
    pub basis: Vec<PairOperator>,
}

impl SolveOutcome {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_string(),
            "nu": self.nu.to_string(),
            "max_order": self.max_order,
            "test_degree": self.test_degree,
            "dimension": self.dimension(),
            "stable": true,
            "basis": self.basis.iter().map(PairOperator::to_json).collect::<Vec<_>>(),
        })
    }
}

type RowKey = (usize, Branch, Rational);

/// Partials `∂x^i ∂y^j f` for `i + j ≤ n` followed by restriction, in
/// `monomial_basis(n)` order.
fn restricted_partials(f: &PowerWeightedFn, n: u32) -> BTreeMap<Vec<u32>, HalfLineExpr> {
    let mut out = BTreeMap::new();
    let mut fx = f.clone();
    for i in 0..=n {
        let mut fy = fx.clone();
        for j in 0..=(n - i) {
            out.insert(vec![i, j], fy.restrict_y0());
            if j < n - i {
                fy = fy.differentiate(1);
            }
        }
        if i < n {
            fx = fx.differentiate(0);
        }
    }
    out
}

/// Kernel of the constraint system at one test degree.
fn solve_once(
    lambda: &Rational,
    nu: &Rational,
    max_order: u32,
    test_degree: u32,
) -> Vec<Vec<Rational>> {
    let basis = monomial_basis(max_order);
    let n_unknowns = 2 * basis.len();
    let inputs = monomial_inputs(test_degree);

    // Per input: column index -> defect (LHS - RHS) contribution.
    let per_input: Vec<Vec<(usize, HalfLineExpr)>> = inputs
        .par_iter()
        .map(|t| {
            let inv = twisted_inversion(&t.value, lambda);
            let comps = [(&inv.f, &t.value.f), (&inv.g, &t.value.g)];
            let mut cols = Vec::new();
            for (c, (transformed, original)) in comps.into_iter().enumerate() {
                let lhs = restricted_partials(transformed, max_order);
                let rhs = restricted_partials(original, max_order);
                for (k, e) in basis.iter().enumerate() {
                    let defect = lhs[e].sub(&rhs[e].inversion_pullback(nu));
                    if !defect.is_zero() {
                        cols.push((c * basis.len() + k, defect));
                    }
                }
            }
            cols
        })
        .collect();

    let mut rows: BTreeMap<RowKey, Vec<Rational>> = BTreeMap::new();
    for (idx, cols) in per_input.iter().enumerate() {
        for (col, defect) in cols {
            for (b, q, c) in defect.entries() {
                rows.entry((idx, b, q.clone()))
                    .or_insert_with(|| vec![Rational::zero(); n_unknowns])[*col] = c.clone();
            }
        }
    }
    let mut m = ExactMatrix::with_cols(n_unknowns);
    for row in rows.into_values() {
        m.push_row(row);
    }
    m.kernel_basis()
        .iter()
        .map(|v| normalize_integral(v))
        .collect()
}

/// All `(D₁, D₂)` with `deg ≤ max_order` satisfying the identity on every monomial
/// input up to `test_degree`. The result is re-derived at `test_degree + 1` and an
/// [`Error::Instability`] is returned if the dimension changes.
pub fn solve_sbo(
    lambda: &Rational,
    nu: &Rational,
    max_order: u32,
    test_degree: u32,
) -> Result<SolveOutcome> {
    if test_degree < max_order + 2 {
        return Err(Error::InvalidArgument(format!(
            "test degree {test_degree} must be at least max order + 2 = {}",
            max_order + 2
        )));
    }
    let (kernel, next) = rayon::join(
        || solve_once(lambda, nu, max_order, test_degree),
        || solve_once(lambda, nu, max_order, test_degree + 1),
    );
    if kernel.len() != next.len() {
        return Err(Error::Instability {
            test_degree,
            at_degree: kernel.len(),
            at_next: next.len(),
        });
    }
    let basis = kernel
        .iter()
        .map(|v| PairOperator::from_coefficient_vector(v, max_order, lambda.clone(), nu.clone()))
        .collect();
    Ok(SolveOutcome {
        lambda: lambda.clone(),
        nu: nu.clone(),
        max_order,
        test_degree,
        basis,
    })
}

/// Exact equality of linear spans, via ranks of stacked coefficient vectors.
pub fn same_span(a: &[PairOperator], b: &[PairOperator]) -> bool {
    let n = a
        .iter()
        .chain(b)
        .map(PairOperator::max_degree)
        .max()
        .unwrap_or(0);
    let va: Vec<_> = a.iter().map(|p| p.coefficient_vector(n)).collect();
    let vb: Vec<_> = b.iter().map(|p| p.coefficient_vector(n)).collect();
    let both: Vec<_> = va.iter().chain(&vb).cloned().collect();
    let r = rank_of(&both);
    rank_of(&va) == r && rank_of(&vb) == r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff_op::{dual, example_pair, juhl_scalar, theorem_a_pair};
    use crate::exact::{q, sum_of_squares};
    use proptest::prelude::*;

    fn mono(p: u32, q_: u32) -> MultiPoly {
        MultiPoly::monomial(&Vars::xy(), vec![p, q_], Rational::one())
    }

    fn zero() -> MultiPoly {
        MultiPoly::zero(&Vars::xy())
    }

    #[test]
    fn inversion_of_constants_and_x() {
        let lambda = q(2, 7);
        let w_exp = -&lambda - q(1, 1);
        let v = twisted_inversion(&VectorFn::from_polys(mono(0, 0), zero()), &lambda);
        let mut c = zero();
        c.add_term(vec![2, 0], q(1, 1));
        c.add_term(vec![0, 2], q(-1, 1));
        assert_eq!(v.f, PowerWeightedFn::term(c.clone(), w_exp.clone()));
        assert_eq!(
            v.g,
            PowerWeightedFn::term(mono(1, 1).scale(&q(2, 1)), w_exp.clone())
        );

        let v = twisted_inversion(&VectorFn::from_polys(mono(1, 0), zero()), &lambda);
        let w_exp = &w_exp - &q(1, 1);
        assert_eq!(
            v.f,
            PowerWeightedFn::term(-&(&mono(1, 0) * &c), w_exp.clone())
        );
        assert_eq!(
            v.g,
            PowerWeightedFn::term(mono(2, 1).scale(&q(-2, 1)), w_exp)
        );
    }

    #[test]
    fn scalar_inversion_examples() {
        let lambda = q(-5, 3);
        let one = PowerWeightedFn::from_poly(mono(0, 0));
        assert_eq!(
            scalar_twisted_inversion(&one, &lambda),
            PowerWeightedFn::term(mono(0, 0), -lambda.clone())
        );
        let x = PowerWeightedFn::from_poly(mono(1, 0));
        assert_eq!(
            scalar_twisted_inversion(&x, &lambda),
            PowerWeightedFn::term(-&mono(1, 0), -&lambda - q(1, 1))
        );
    }

    #[test]
    fn inversions_are_involutions() {
        let lambda = q(3, 5);
        let w = sum_of_squares::<Rational>();
        for m in monomials_xy(6) {
            let v = VectorFn::from_polys(m.clone(), &m * &w);
            assert_eq!(
                twisted_inversion(&twisted_inversion(&v, &lambda), &lambda),
                v
            );
            let s = PowerWeightedFn::from_poly(m.clone());
            assert_eq!(
                scalar_twisted_inversion(&scalar_twisted_inversion(&s, &lambda), &lambda),
                s
            );
        }
    }

    #[test]
    fn hand_checked_identities() {
        let lambda = q(3, 4);
        assert!(identity_check(
            &example_pair(&lambda, 0).unwrap(),
            &VectorFn::from_polys(mono(0, 0), zero())
        ));
        assert!(identity_check(
            &example_pair(&lambda, 1).unwrap(),
            &VectorFn::from_polys(mono(1, 0), zero())
        ));
        let bad = PairOperator::new(
            MultiPoly::var(&Vars::xi_eta(), 1),
            MultiPoly::zero(&Vars::xi_eta()),
            lambda.clone(),
            &lambda + &q(1, 1),
        );
        let input = VectorFn::from_polys(zero(), mono(0, 0));
        let (l, r) = identity_sides(&bad, &input);
        assert!(r.is_zero());
        assert_eq!(
            l,
            HalfLineExpr::signed_monomial(1, &(-(&lambda * &q(2, 1)) - q(2, 1)), q(-2, 1))
        );
        assert!(!covariance_suite(&bad, 2));
    }

    #[test]
    fn scalar_identity_examples() {
        let lambda = q(5, 7);
        let id = MultiPoly::one(&Vars::xi_eta());
        assert!(scalar_identity_check(
            &id,
            &lambda,
            &lambda,
            &PowerWeightedFn::from_poly(mono(0, 0))
        ));
        let juhl = juhl_scalar(&lambda, 1);
        let nu = &lambda + &q(1, 1);
        for m in monomials_xy(4) {
            assert!(scalar_identity_check(
                &juhl,
                &lambda,
                &nu,
                &PowerWeightedFn::from_poly(m)
            ));
        }
        let xi = MultiPoly::var(&Vars::xi_eta(), 0);
        // with f = y both sides vanish; f = x gives (2λ+1) against 1
        assert!(scalar_identity_check(
            &xi,
            &lambda,
            &nu,
            &PowerWeightedFn::from_poly(mono(0, 1))
        ));
        assert!(!scalar_identity_check(
            &xi,
            &lambda,
            &nu,
            &PowerWeightedFn::from_poly(mono(1, 0))
        ));
    }

    #[test]
    fn homogeneity_examples() {
        let vars = Vars::xi_eta();
        let xi = MultiPoly::var(&vars, 0);
        let mixed = PairOperator::new(&xi + &xi.pow(2), MultiPoly::zero(&vars), q(1, 3), q(4, 3));
        assert!(!homogeneity_check(&mixed));
        let zero_op = PairOperator::new(
            MultiPoly::zero(&vars),
            MultiPoly::zero(&vars),
            q(1, 3),
            q(5, 6),
        );
        assert!(homogeneity_check(&zero_op));
        for a in 0..=6 {
            assert!(homogeneity_check(&theorem_a_pair(&q(1, 3), a)));
        }
    }

    #[test]
    fn low_order_operators_pass_the_suite() {
        for a in 0..=2 {
            let p = theorem_a_pair(&q(2, 5), a);
            assert!(covariance_suite(&p, 4), "a={a}");
            assert!(covariance_suite(&dual(&p), 4), "dual a={a}");
        }
    }

    #[test]
    fn solver_examples() {
        let lambda = q(1, 3);
        let s = solve_sbo(&lambda, &lambda, 2, 4).unwrap();
        assert_eq!(s.dimension(), 2);
        let p0 = theorem_a_pair(&lambda, 0);
        assert!(same_span(&s.basis, &[p0.clone(), dual(&p0)]));

        let s = solve_sbo(&lambda, &q(4, 3), 3, 5).unwrap();
        let p1 = theorem_a_pair(&lambda, 1);
        assert_eq!(s.dimension(), 2);
        assert!(same_span(&s.basis, &[p1.clone(), dual(&p1)]));

        assert_eq!(solve_sbo(&lambda, &q(5, 6), 3, 5).unwrap().dimension(), 0);
        assert!(matches!(
            solve_sbo(&lambda, &lambda, 3, 4),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn span_comparison() {
        let p = theorem_a_pair(&q(7, 4), 2);
        let d = dual(&p);
        assert!(same_span(&[p.clone(), d.clone()], &[d.clone(), dual(&d)]));
        assert!(!same_span(std::slice::from_ref(&p), &[d]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn inversion_intertwines_quarter_turn(
            n in -12i64..12, d in 1i64..6, p in 0u32..5, q_ in 0u32..5, r in 0u32..4,
        ) {
            let lambda = q(n, d);
            let v = VectorFn::from_polys(mono(p, q_), mono(r, p));
            prop_assert_eq!(
                twisted_inversion(&v.quarter_turn(), &lambda),
                twisted_inversion(&v, &lambda).quarter_turn()
            );
            prop_assert_eq!(v.quarter_turn().quarter_turn(), v.neg());
        }

        #[test]
        fn inversion_is_linear(n in -12i64..12, d in 1i64..6, c in -5i64..5, p in 0u32..4, q_ in 0u32..4) {
            let lambda = q(n, d);
            let a = VectorFn::from_polys(mono(p, q_), zero());
            let b = VectorFn::from_polys(mono(q_, 1), mono(p, 0));
            let c = q(c, 1);
            prop_assert_eq!(
                twisted_inversion(&a.add(&b.scale(&c)), &lambda),
                twisted_inversion(&a, &lambda).add(&twisted_inversion(&b, &lambda).scale(&c))
            );
        }
    }
}
