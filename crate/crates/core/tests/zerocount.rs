use approx::assert_relative_eq;
use lplab::zerocount::{
    count_zeros_in_disk, min_modulus_on_circle, rho_radius, s2_root_modulus, section_roots_inside, xi,
};
use lplab::{Error, SeriesFamily};
use num_complex::Complex64;
use proptest::prelude::*;

fn f(a: f64) -> SeriesFamily {
    SeriesFamily::euler_f(a).unwrap().alternating()
}

#[test]
fn rho_examples() {
    // q_n = (4^n + 1)/(4^(n-1) + 1) for a = 4.
    let q = |n: i32| (4f64.powi(n) + 1.0) / (4f64.powi(n - 1) + 1.0);
    assert_relative_eq!(
        rho_radius(&f(4.0), 2).unwrap(),
        q(2) * q(3).sqrt(),
        max_relative = 1e-14
    );
    assert_relative_eq!(rho_radius(&f(4.0), 2).unwrap(), 6.6483, epsilon = 1e-4);
    assert_relative_eq!(
        rho_radius(&f(4.0), 3).unwrap(),
        q(2) * q(3) * q(4).sqrt(),
        max_relative = 1e-14
    );
    assert_relative_eq!(rho_radius(&f(4.0), 3).unwrap(), 25.8496, epsilon = 1e-4);
    assert_relative_eq!(
        rho_radius(&SeriesFamily::partial_theta(2.0).unwrap(), 2).unwrap(),
        8.0,
        max_relative = 1e-15
    );
    assert_relative_eq!(rho_radius(&f(4.0), 1).unwrap(), 3.4f64.sqrt(), max_relative = 1e-15);
    assert!(matches!(rho_radius(&f(4.0), 0), Err(Error::Domain(_))));
}

#[test]
fn count_examples() {
    // The disk |z| < a² + 1 of the natural variable is |u| < q_2.
    let w = count_zeros_in_disk(&f(4.0), 3.4, 256).unwrap();
    assert_eq!(w.count, 2);
    assert!(w.certified);

    let rho6 = rho_radius(&f(4.0), 6).unwrap();
    let w = count_zeros_in_disk(&f(4.0), rho6, 256).unwrap();
    assert_eq!((w.count, w.certified), (6, true));
    assert_eq!(section_roots_inside(&f(4.0), 18, rho6).unwrap(), 6);

    let one = SeriesFamily::custom(vec![0.0]).unwrap();
    let w = count_zeros_in_disk(&one, 5.0, 256).unwrap();
    assert_eq!((w.count, w.certified), (0, true));
    assert!(matches!(count_zeros_in_disk(&one, 0.0, 256), Err(Error::Domain(_))));
}

#[test]
fn zero_on_circle_is_detected() {
    // 2 − 3z + z² = (1 − z)(2 − z); with p_1 = 2/3 the zero z = 1 sits on |u| = 1.5.
    let p = SeriesFamily::custom(vec![2f64.ln(), 3f64.ln(), 0.0])
        .unwrap()
        .alternating();
    match count_zeros_in_disk(&p, 1.5, 256) {
        Ok(w) => assert!(w.radius != 1.5 && w.count <= 1),
        Err(Error::ZeroOnCircle { .. }) => {}
        Err(e) => panic!("{e}"),
    }
    assert_eq!(count_zeros_in_disk(&p, 2.0, 256).unwrap().count, 1);
}

#[test]
fn circle_minimum_examples() {
    let m = min_modulus_on_circle(&f(4.0), Some(2), 17.0, 256).unwrap();
    assert_relative_eq!(m.value(), 1.0, epsilon = 1e-13);
    assert_relative_eq!(m.numeric, 1.0, epsilon = 1e-12);
    let m = min_modulus_on_circle(&f(3.6), Some(2), 3.6 * 3.6 + 1.0, 256).unwrap();
    assert_relative_eq!(m.value(), 1.0, epsilon = 1e-13);
    let one = SeriesFamily::custom(vec![0.0]).unwrap();
    assert_eq!(min_modulus_on_circle(&one, None, 3.0, 64).unwrap().value(), 1.0);
    assert!(min_modulus_on_circle(&one, None, 3.0, 63).is_err());
}

#[test]
fn root_modulus_examples() {
    assert_relative_eq!(s2_root_modulus(4.0).unwrap(), 9.2195, epsilon = 1e-4);
    // Roots of 1 − z/(a+1) + z²/((a+1)(a²+1)) by the quadratic formula.
    let a: f64 = 3.6;
    let (c2, c1) = (1.0 / ((a + 1.0) * (a * a + 1.0)), -1.0 / (a + 1.0));
    let disc = Complex64::new(c1 * c1 - 4.0 * c2, 0.0).sqrt();
    let root = (-c1 + disc) / (2.0 * c2);
    assert_relative_eq!(s2_root_modulus(a).unwrap(), root.norm(), max_relative = 1e-13);
    assert_relative_eq!(s2_root_modulus(a).unwrap(), 8.01349, epsilon = 1e-5);
    assert!(s2_root_modulus(a).unwrap() < a * a + 1.0);
    assert!(matches!(s2_root_modulus(5.0), Err(Error::RealRoots { .. })));
}

#[test]
fn rouche_disks_hold_exactly_j_zeros() {
    for a in [3.7, 4.0, 4.3, 4.6] {
        for j in 4..=10 {
            let r = rho_radius(&f(a), j).unwrap();
            let w = count_zeros_in_disk(&f(a), r, 256).unwrap();
            assert!(w.certified, "a = {a}, j = {j}: {w:?}");
            assert!(w.residual < 0.05);
            assert_eq!(w.count, j, "a = {a}, j = {j}");
        }
    }
}

#[test]
fn sections_agree_inside_rouche_disks() {
    for a in [3.7, 4.0, 4.3, 4.6] {
        for j in 4..=10 {
            let r = rho_radius(&f(a), j).unwrap();
            assert_eq!(section_roots_inside(&f(a), j + 8, r).unwrap(), j, "a = {a}, j = {j}");
        }
    }
}

#[test]
fn circle_minimum_matches_closed_form() {
    // q_2 ∈ [3, 4) for a ∈ [(3 + √17)/2, 2 + √7).
    let (lo, hi) = ((3.0 + 17f64.sqrt()) / 2.0, 2.0 + 7f64.sqrt());
    for i in 0..20 {
        let a = lo + (hi - lo) * (i as f64 + 0.5) / 20.0;
        let m = min_modulus_on_circle(&f(a), Some(2), a * a + 1.0, 512).unwrap();
        let q2 = (a * a + 1.0) / (a + 1.0);
        assert!((3.0..4.0).contains(&q2));
        let closed = xi(q2, 1.0).sqrt();
        assert!(
            (m.numeric - closed).abs() <= 1e-10,
            "a = {a}: {} vs {closed}",
            m.numeric
        );
        assert!((m.analytic.unwrap() - closed).abs() <= 1e-10);
    }
}

#[test]
fn rho_is_increasing_and_sandwiched() {
    for fam in [
        f(3.7),
        f(4.6),
        SeriesFamily::euler_h(2.0).unwrap(),
        SeriesFamily::partial_theta(1.3).unwrap(),
    ] {
        let q = fam.quotients().unwrap();
        let mut prod = 1.0;
        for j in 2..=20 {
            prod *= q.q(j);
            let r = rho_radius(&fam, j).unwrap();
            assert!(prod < r && r < prod * q.q(j + 1), "j = {j}");
            assert!(r < rho_radius(&fam, j + 1).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certified_results_are_integral(a in 3.6f64..5.0, j in 2usize..8) {
        let r = rho_radius(&f(a), j).unwrap();
        let w = count_zeros_in_disk(&f(a), r, 256).unwrap();
        if w.certified {
            prop_assert!(w.residual < 0.05);
            prop_assert!(w.min_modulus_seen > 10.0 * w.max_error_bound);
        }
    }
}
