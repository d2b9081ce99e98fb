//! Verification suites and their JSON reports.
//!
//! Cases are enumerated in a fixed order, run in parallel, and collected back in
//! that order, so a report is byte-identical for a fixed configuration.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::diff_op::{
    dual, holomorphic_trick_sides, juhl_scalar, sl2_bracket_self_check,
    sl2_holo_covariance_witness, theorem_a_pair, PairOperator,
};
use crate::error::Error;
use crate::exact::{q, MultiPoly, PowerWeightedFn, Rational, Vars};
use crate::moebius::{covariance_witness, monomials_xy, scalar_identity_sides};
use crate::special::{
    prop_jacob_sides, rc_jacobi_sides, rc_swap_check, scalar_prop_sides, IdentitySides,
};

/// Generic parameters: `2λ ∉ -N` and away from every coefficient pole.
pub fn default_lambdas() -> Vec<Rational> {
    vec![q(1, 3), q(2, 5), q(7, 4), q(-3, 7), q(5, 2)]
}

/// A wider list for the polynomial identities, which are cheap.
pub fn identity_lambdas() -> Vec<Rational> {
    [
        (1, 3),
        (2, 5),
        (7, 4),
        (-3, 7),
        (5, 2),
        (1, 1),
        (2, 1),
        (3, 1),
        (-1, 3),
        (3, 8),
        (11, 5),
        (-5, 4),
        (9, 7),
        (1, 7),
        (-7, 3),
        (13, 6),
        (4, 9),
        (-2, 11),
        (17, 10),
        (6, 1),
    ]
    .into_iter()
    .map(|(n, d)| q(n, d))
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremA,
    Identities,
    Rc,
    HoloTrick,
    Scalar,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "theorem-a",
            Suite::Identities => "identities",
            Suite::Rc => "rc",
            Suite::HoloTrick => "holo-trick",
            Suite::Scalar => "scalar",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// parameters for operator-level checks
    pub lambdas: Vec<Rational>,
    /// parameters for polynomial identities
    pub identity_lambdas: Vec<Rational>,
    pub max_a: u32,
    pub deg_bound: u32,
    /// perturb one operator coefficient, so the suite must fail
    pub mutate: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            lambdas: default_lambdas(),
            identity_lambdas: identity_lambdas(),
            max_a: 8,
            deg_bound: 6,
            mutate: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Pole,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseReport {
    pub case: String,
    pub lambda: Option<Rational>,
    pub nu: Option<Rational>,
    pub a: Option<u32>,
    pub status: Status,
    pub witness: Option<Value>,
}

impl CaseReport {
    fn new(case: String, lambda: &Rational, nu: Option<Rational>, a: u32) -> Self {
        CaseReport {
            case,
            lambda: Some(lambda.clone()),
            nu,
            a: Some(a),
            status: Status::Pass,
            witness: None,
        }
    }

    fn fail(mut self, witness: Value) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    fn pole(mut self, err: &Error) -> Self {
        self.status = Status::Pole;
        self.witness = Some(json!({"error": err.to_string()}));
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "lambda": self.lambda.as_ref().map(ToString::to_string),
            "nu": self.nu.as_ref().map(ToString::to_string),
            "a": self.a,
            "status": self.status,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub cases: Vec<CaseReport>,
}

impl Report {
    fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Status::Pass) == self.cases.len()
    }

    pub fn first_failure(&self) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.status == Status::Fail)
    }

    /// 0 if every case passes, 1 on any failure, otherwise 3 if a pole was hit.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Fail) > 0 {
            1
        } else if self.count(Status::Pole) > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "poles": self.count(Status::Pole),
            "first_failure": self.first_failure().map(CaseReport::to_json),
            "cases": self.cases.iter().map(CaseReport::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "suite {}: {} passed, {} failed, {} poles\n",
            self.suite.name(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Pole)
        );
        for c in self.cases.iter().filter(|c| c.status != Status::Pass) {
            let w = c.witness.as_ref().map(Value::to_string).unwrap_or_default();
            out.push_str(&format!("  {:?} {} {}\n", c.status, c.case, w));
        }
        out
    }
}

/// A deterministic list of work items, each producing one case report.
type Job = Box<dyn Fn() -> CaseReport + Send + Sync>;

fn theorem_a_jobs(cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    for (k, lambda) in cfg.lambdas.iter().enumerate() {
        for a in 0..=cfg.max_a {
            for is_dual in [false, true] {
                let mutate = cfg.mutate && k == 0 && a == cfg.max_a.min(1) && !is_dual;
                let lambda = lambda.clone();
                let deg = cfg.deg_bound;
                jobs.push(Box::new(move || {
                    let mut p = theorem_a_pair(&lambda, a);
                    if is_dual {
                        p = dual(&p);
                    }
                    if mutate {
                        p = mutated(&p, a);
                    }
                    let name = format!(
                        "theorem-a/lambda={lambda}/a={a}{}{}",
                        if is_dual { "/dual" } else { "" },
                        if mutate { "/mutated" } else { "" }
                    );
                    let report = CaseReport::new(name, &lambda, Some(p.nu.clone()), a);
                    match covariance_witness(&p, deg) {
                        None => report,
                        Some(w) => report.fail(w.to_json()),
                    }
                }));
            }
        }
    }
}

/// Adds `η^a` to `D₂` (`ξ` to `D₁` when `a = 0`, where every constant pair is a solution).
fn mutated(p: &PairOperator, a: u32) -> PairOperator {
    let vars = Vars::xi_eta();
    let mut out = p.clone();
    if a == 0 {
        out.d1 = &out.d1 + &MultiPoly::var(&vars, 0);
    } else {
        out.d2 = &out.d2 + &MultiPoly::monomial(&vars, vec![0, a], Rational::one());
    }
    out
}

fn sides_witness(s: &IdentitySides) -> Value {
    json!({
        "line": {"lhs": s.line.0.to_string(), "rhs": s.line.1.to_string()},
        "gaussian": {"lhs": s.gaussian.0.to_string(), "rhs": s.gaussian.1.to_string()},
    })
}

fn identity_job(
    name: String,
    lambda: Rational,
    a: u32,
    sides: fn(u32, &Rational) -> crate::Result<IdentitySides>,
) -> Job {
    Box::new(move || {
        let report = CaseReport::new(name.clone(), &lambda, None, a);
        match sides(a, &lambda) {
            Ok(s) if s.holds() => report,
            Ok(s) => report.fail(sides_witness(&s)),
            Err(e) => report.pole(&e),
        }
    })
}

fn partner(list: &[Rational], k: usize) -> Rational {
    list[(k + 1) % list.len()].clone()
}

fn identities_jobs(cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    let list = &cfg.identity_lambdas;
    for (k, lambda) in list.iter().enumerate() {
        for a in 1..=cfg.max_a {
            jobs.push(identity_job(
                format!("identities/jacobi-gegenbauer/lambda={lambda}/a={a}"),
                lambda.clone(),
                a,
                prop_jacob_sides,
            ));
        }
        for a in 0..=cfg.max_a {
            jobs.push(identity_job(
                format!("identities/scalar-jacobi-gegenbauer/lambda={lambda}/a={a}"),
                lambda.clone(),
                a,
                scalar_prop_sides,
            ));
        }
        let l2 = partner(list, k);
        for a in 0..=cfg.max_a {
            let (l1, l2) = (lambda.clone(), l2.clone());
            jobs.push(Box::new(move || {
                let report = CaseReport::new(
                    format!("identities/rc-jacobi/l1={l1}/l2={l2}/a={a}"),
                    &l1,
                    None,
                    a,
                );
                let (lhs, rhs) = rc_jacobi_sides(a, &l1, &l2);
                if lhs == rhs {
                    report
                } else {
                    report.fail(json!({"lhs": lhs.to_string(), "rhs": rhs.to_string()}))
                }
            }));
        }
    }
}

fn rc_jobs(cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    let list = &cfg.lambdas;
    for (k, l1) in list.iter().enumerate() {
        let l2 = partner(list, k);
        for a in 0..=cfg.max_a {
            let (l1c, l2c) = (l1.clone(), l2.clone());
            jobs.push(Box::new(move || {
                let report =
                    CaseReport::new(format!("rc/swap/l1={l1c}/l2={l2c}/a={a}"), &l1c, None, a);
                if rc_swap_check(a, &l1c, &l2c) {
                    report
                } else {
                    report.fail(json!({"a": a}))
                }
            }));
            let (l1c, l2c) = (l1.clone(), l2.clone());
            let deg = cfg.deg_bound;
            jobs.push(Box::new(move || {
                let report = CaseReport::new(
                    format!("rc/sl2-covariance/l1={l1c}/l2={l2c}/a={a}"),
                    &l1c,
                    None,
                    a,
                );
                for w in [&l1c, &l2c] {
                    if !sl2_bracket_self_check(w, deg + 2) {
                        return report.fail(json!({"bracket-self-check": w.to_string()}));
                    }
                }
                match sl2_holo_covariance_witness(a, &l1c, &l2c, deg) {
                    None => report,
                    Some((x, m, n)) => report.fail(json!({"generator": x, "m": m, "n": n})),
                }
            }));
        }
    }
}

fn holo_jobs(cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    for lambda in &cfg.lambdas {
        for a in 0..=cfg.max_a {
            let lambda = lambda.clone();
            let deg = cfg.deg_bound;
            jobs.push(Box::new(move || {
                let nu = &lambda + &Rational::from(a);
                let report = CaseReport::new(
                    format!("holo-trick/lambda={lambda}/a={a}"),
                    &lambda,
                    Some(nu),
                    a,
                );
                let z = Vars::single("z");
                for d in 0..=deg {
                    for m in 0..=d {
                        let f1 = MultiPoly::monomial(&z, vec![m], Rational::one());
                        let f2 = MultiPoly::monomial(&z, vec![d - m], Rational::one());
                        let sides = holomorphic_trick_sides(a, &lambda, &f1, &f2);
                        if let Some((form, (l, r))) = ["(1,0)", "(0,1)"]
                            .iter()
                            .zip(&sides)
                            .find(|(_, (l, r))| l != r)
                        {
                            return report.fail(json!({
                                "f1": f1.to_string(), "f2": f2.to_string(), "form": form,
                                "lhs": l.to_string(), "rhs": r.to_string(),
                            }));
                        }
                    }
                }
                report
            }));
        }
    }
}

fn scalar_jobs(cfg: &SuiteConfig, jobs: &mut Vec<Job>) {
    for lambda in &cfg.lambdas {
        for a in 0..=cfg.max_a {
            let lambda = lambda.clone();
            let deg = cfg.deg_bound;
            jobs.push(Box::new(move || {
                let nu = &lambda + &Rational::from(a);
                let report = CaseReport::new(format!("scalar/juhl/lambda={lambda}/a={a}"), &lambda, Some(nu.clone()), a);
                let op = juhl_scalar(&lambda, a);
                for m in monomials_xy(deg) {
                    let (l, r) = scalar_identity_sides(&op, &lambda, &nu, &PowerWeightedFn::from_poly(m.clone()));
                    if l != r {
                        return report.fail(json!({"input": m.to_string(), "lhs": l.to_string(), "rhs": r.to_string()}));
                    }
                }
                report
            }));
        }
    }
    for lambda in &cfg.identity_lambdas {
        for a in 0..=cfg.max_a {
            jobs.push(identity_job(
                format!("scalar/scalar-jacobi-gegenbauer/lambda={lambda}/a={a}"),
                lambda.clone(),
                a,
                scalar_prop_sides,
            ));
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Report {
    let mut jobs: Vec<Job> = Vec::new();
    match suite {
        Suite::TheoremA => theorem_a_jobs(cfg, &mut jobs),
        Suite::Identities => identities_jobs(cfg, &mut jobs),
        Suite::Rc => rc_jobs(cfg, &mut jobs),
        Suite::HoloTrick => holo_jobs(cfg, &mut jobs),
        Suite::Scalar => scalar_jobs(cfg, &mut jobs),
        Suite::All => {
            theorem_a_jobs(cfg, &mut jobs);
            identities_jobs(cfg, &mut jobs);
            rc_jobs(cfg, &mut jobs);
            holo_jobs(cfg, &mut jobs);
            scalar_jobs(cfg, &mut jobs);
        }
    }
    let cases = jobs.par_iter().map(|job| job()).collect();
    Report { suite, cases }
}
