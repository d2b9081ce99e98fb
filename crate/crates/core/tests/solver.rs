use sbo_core::diff_op::{dual, theorem_a_pair};
use sbo_core::exact::q;
use sbo_core::moebius::{covariance_suite, homogeneity_check, same_span, solve_sbo};
use sbo_core::verma::kp_dimension;
use sbo_core::Error;

#[test]
fn zero_order_solutions() {
    let s = solve_sbo(&q(1, 3), &q(1, 3), 2, 4).unwrap();
    assert_eq!(s.dimension(), 2);
    let p = theorem_a_pair(&q(1, 3), 0);
    assert!(same_span(&s.basis, &[p.clone(), dual(&p)]));
}

#[test]
fn first_order_solutions() {
    let s = solve_sbo(&q(1, 3), &q(4, 3), 3, 5).unwrap();
    let p = theorem_a_pair(&q(1, 3), 1);
    assert_eq!(s.dimension(), 2);
    assert!(same_span(&s.basis, &[p.clone(), dual(&p)]));
}

#[test]
fn no_solutions_off_the_integers() {
    assert_eq!(solve_sbo(&q(1, 3), &q(5, 6), 3, 5).unwrap().dimension(), 0);
    assert_eq!(solve_sbo(&q(2, 5), &q(-3, 5), 3, 5).unwrap().dimension(), 0);
}

#[test]
fn homogeneity_is_not_imposed_but_emerges() {
    let s = solve_sbo(&q(-3, 7), &(q(-3, 7) + q(2, 1)), 4, 6).unwrap();
    assert_eq!(s.dimension(), 2);
    for p in &s.basis {
        assert!(homogeneity_check(p));
        assert!(covariance_suite(p, 5));
    }
}

#[test]
fn too_small_test_degree_is_rejected() {
    assert!(matches!(
        solve_sbo(&q(1, 3), &q(4, 3), 3, 4),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn output_is_deterministic() {
    let a = solve_sbo(&q(7, 4), &q(15, 4), 3, 5).unwrap().to_json();
    let b = solve_sbo(&q(7, 4), &q(15, 4), 3, 5).unwrap().to_json();
    assert_eq!(a.to_string(), b.to_string());
}

#[test]
fn dimension_count_matches_the_solver() {
    for lambda in [q(1, 3), q(5, 2)] {
        for offset in [q(0, 1), q(1, 1), q(3, 1), q(1, 2), q(-1, 1)] {
            let nu = &lambda + &offset;
            let s = solve_sbo(&lambda, &nu, 4, 6).unwrap();
            assert_eq!(
                s.dimension(),
                kp_dimension(&lambda, &nu),
                "λ={lambda} ν={nu}"
            );
        }
    }
}
