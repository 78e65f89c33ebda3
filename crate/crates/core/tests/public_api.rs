use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secant_core::exterior::{binomial, perp};
use secant_core::secant::{
    apolar_dim, expected_dim, normal_form_configuration, random_configuration, secant_report,
    terracini_dim, FieldChoice, Method, ReportOptions,
};
use secant_core::{ExtMonomial, ExtVector, Field, PrimeField, RationalField, VSubspace};

#[test]
fn chordal_lines_defect_formula() {
    // s = 2 lines: W surplus 2s(s-1) = 4, defective exactly when n+1 >= 6
    for ambient in 5..=11 {
        let r = secant_report(ambient, 2, 2, &ReportOptions::default()).unwrap();
        assert_eq!(r.w_surplus, 4, "n+1 = {ambient}");
        assert_eq!(r.defect > 0, ambient >= 6, "n+1 = {ambient}");
        assert_eq!(r.w_dim, binomial(ambient - 4, 2));
    }
}

#[test]
fn prime_and_rational_engines_agree() {
    for (a, k, s) in [(6, 3, 2), (7, 3, 3), (8, 4, 3), (7, 2, 3)] {
        let fp = PrimeField::default();
        let p = normal_form_configuration(&fp, a, k, s, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let q =
            normal_form_configuration(&RationalField, a, k, s, &mut ChaCha8Rng::seed_from_u64(3))
                .unwrap();
        assert_eq!(terracini_dim(&p), terracini_dim(&q));
        assert_eq!(apolar_dim(&p).dim, apolar_dim(&q).dim);
    }
}

#[test]
fn random_points_reach_expected_outside_known_defects() {
    let f = PrimeField::default();
    for (a, k, s) in [(8, 3, 3), (10, 3, 4), (9, 4, 2), (10, 5, 3)] {
        let c = random_configuration(&f, a, k, s, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert_eq!(
            terracini_dim(&c) as u64,
            expected_dim(a, k, s).unwrap(),
            "G({k},{a})^{s}"
        );
    }
}

#[test]
fn plucker_point_is_isotropic_to_its_own_square_piece() {
    // a point pairs to zero against the degree n+1-k part of its own squared ideal
    let f = PrimeField::default();
    let v = VSubspace::random(&f, 7, 3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let point = v.plucker();
    let annihilator = perp(&f, 7, 3, std::slice::from_ref(&point)).unwrap();
    assert_eq!(annihilator.len() as u64, binomial(7, 4) - 1);
    for w in v.ideal_square_basis(4).unwrap() {
        assert!(f.is_zero(&secant_core::exterior::pairing(&point, &w).unwrap()));
    }
}

#[test]
fn rational_report_matches_prime_report() {
    let q = ReportOptions {
        field: FieldChoice::Rational,
        method: Method::Terracini,
        ..Default::default()
    };
    let p = ReportOptions {
        method: Method::Terracini,
        ..Default::default()
    };
    for (a, k, s) in [(7, 3, 3), (8, 2, 3)] {
        let rq = secant_report(a, k, s, &q).unwrap();
        let rp = secant_report(a, k, s, &p).unwrap();
        assert_eq!(rq.computed_dim, rp.computed_dim);
        assert_eq!(rq.w_dim, rp.w_dim);
    }
}

#[test]
fn monomials_display_and_order() {
    let a = ExtMonomial::new(5, &[0, 3]).unwrap();
    let b = ExtMonomial::new(5, &[1, 2]).unwrap();
    assert!(a < b);
    assert_eq!(a.to_string(), "e0^e3");
    let f = PrimeField::default();
    let v = ExtVector::from_monomial(&f, a, f.one());
    assert_eq!(v.terms().count(), 1);
}
