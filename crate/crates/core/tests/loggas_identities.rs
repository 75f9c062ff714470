use approx::assert_relative_eq;
use rmtgaps_core::hermite::hermite_closed_form;
use rmtgaps_core::hermite::hermite_poly;
use rmtgaps_core::loggas::*;

#[test]
fn ba_product_is_minus_four_identity() {
    let t = CoefficientTables::new(20);
    for n in (2..=20).step_by(2) {
        assert!(ba_product_defect(n, &t) < 1e-10, "n = {n}");
    }
}

#[test]
fn laplace_expansion_holds_coefficientwise() {
    let t = CoefficientTables::new(12);
    for n in (2..=12).step_by(2) {
        let d = laplace_defect(n, &t).unwrap();
        assert!(d < 1e-9, "n = {n}: {d:e}");
    }
}

#[test]
fn pfaffian_times_pf_b_is_dn() {
    let t = CoefficientTables::new(12);
    for n in (2..=12).step_by(2) {
        let d = dn_pfaffian_defect(n, &t).unwrap();
        assert!(d < 1e-8, "n = {n}: {d:e}");
        let d = dn_prime_pfaffian_defect(n, &t).unwrap();
        assert!(d < 1e-8, "primed n = {n}: {d:e}");
    }
}

#[test]
fn dn_recurrence_matches_closed_form_exactly() {
    for n in 0..=41 {
        assert_eq!(dn_recurrence(n), dn_poly(n).unwrap(), "n = {n}");
    }
}

#[test]
fn alpha_closed_form_matches_quadrature() {
    for j in 1..=12 {
        for k in 1..=12 {
            let q = alpha_quadrature(j, k).unwrap();
            assert!((q - alpha_coeff(j, k)).abs() < 1e-6, "({j},{k}): {q} vs {}", alpha_coeff(j, k));
        }
    }
}

#[test]
fn one_component_partition_matches_closed_form() {
    for n in 1..=14 {
        assert_relative_eq!(partition_general(n, 0).unwrap(), gn_closed(n).unwrap(), max_relative = 1e-8);
    }
}

#[test]
fn two_component_quadrature_cross_check() {
    let g11 = partition_general(1, 1).unwrap();
    let quad = integrate_constrained(3, &GapConstraint::below(1, 0.5).unwrap(), 1).unwrap();
    assert_relative_eq!(quad, g11, max_relative = 1e-3);
    assert_relative_eq!(quad, gn_closed(3).unwrap() / 4.0, max_relative = 1e-3);
}

#[test]
fn lemma9_table_to_fourteen() {
    let r = verify_lemma9(14).unwrap();
    assert!(r.max_error < 1e-8, "{:e}", r.max_error);
}

#[test]
fn lemma9_table_to_thirty() {
    let r = verify_lemma9(30).unwrap();
    assert!(r.max_error < 1e-6, "{:e}", r.max_error);
}

#[test]
fn lemma9_table_to_forty_stays_near_round_off() {
    let r = verify_lemma9(40).unwrap();
    assert!(r.max_error < 1e-10, "{:e}", r.max_error);
    assert_eq!(r.rows.len(), (2..=40).map(|n| n / 2).sum::<usize>());
}

#[test]
fn hermite_recurrence_matches_closed_form() {
    use num_bigint::BigInt;
    for j in 0..=40 {
        assert_eq!(hermite_poly::<BigInt>(j).unwrap(), hermite_closed_form(j).unwrap(), "j = {j}");
    }
}
