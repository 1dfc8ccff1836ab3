use std::collections::BTreeSet;

use super::*;
use crate::ball::enumerate_coords;
use proptest::prelude::*;

fn el(s: &str) -> Elem {
    s.parse().unwrap()
}

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

fn quad(d: i64) -> Field {
    Field::quadratic(d).unwrap()
}

#[test]
fn image_examples() {
    assert_eq!(apply_f(&el("1")), el("-2"));
    assert_eq!(apply_f(&el("1/2")), el("-11/8"));
    assert_eq!(apply_f(&el("(1+1*sqrt(5))/2")), el("(1-1*sqrt(5))/2"));
    let t = raw_image(&"(1+1*sqrt(5))/2".parse().unwrap()).unwrap();
    assert_eq!((t.a1, t.a2, t.b, t.g), (4.into(), (-4).into(), 8.into(), 4.into()));
    let t = raw_image(&QuadElem::from_int(1, Radicand::new(2).unwrap())).unwrap();
    assert_eq!((t.a1, t.a2, t.b, t.g), ((-2).into(), 0.into(), 1.into(), 1.into()));
    let t = raw_image(&"(1+1*sqrt(2))/2".parse().unwrap()).unwrap();
    assert_eq!((t.a1, t.a2, t.b, t.g), ((-5).into(), (-7).into(), 8.into(), 1.into()));
}

#[test]
fn preimage_bound_examples() {
    assert_eq!(preimage_bound(Field::Rational, &rat("1000")), 20.into());
    assert_eq!(preimage_bound(Field::Rational, &rat("1")), 2.into());
    // 2 * 16000^(1/3) = 50.39...
    assert_eq!(preimage_bound(quad(2), &rat("1000")), 51.into());
}

#[test]
fn phi_examples() {
    let one = rat("1");
    assert_eq!(phi_curve(&one, &one, &rat("2")), rat("2"));
    assert_eq!(phi_curve(&one, &rat("1/2"), &rat("0")), rat("0"));
    let c = bound_check(&rat("2"), &one, &rat("8"), &rat("-3"));
    assert_eq!(c.phi, "-36");
    assert!(c.consistent());
    assert!(bound_check(&one, &one, &one, &rat("2")).consistent());
}

proptest! {
    #[test]
    fn phi_bound_holds(dn in 1i64..50, en in 0i64..40, tn in 1i64..4000, xn in -400i64..400) {
        let c = bound_check(
            &Rational::new(dn, 7).unwrap(),
            &Rational::new(en, 10).unwrap(),
            &Rational::new(tn, 10).unwrap(),
            &Rational::new(xn, 10).unwrap(),
        );
        prop_assert!(c.consistent(), "{:?}", c);
    }

    #[test]
    fn phi_is_odd(dn in 1i64..50, en in 0i64..40, xn in -400i64..400) {
        let (dd, e, x) = (Rational::new(dn, 3).unwrap(), Rational::new(en, 5).unwrap(), Rational::new(xn, 9).unwrap());
        prop_assert_eq!(phi_curve(&dd, &e, &-&x), -&phi_curve(&dd, &e, &x));
    }

    #[test]
    fn quadratic_image_matches_field_arithmetic(a1 in -40i64..40, a2 in -40i64..40, b in 1i64..40, di in 0usize..5) {
        let d = [2, 3, 5, 6, 7][di];
        let x = QuadElem::canonicalize(a1, a2, b, d).unwrap();
        let cube = x.pow(3);
        let three_x = x.checked_mul(&QuadElem::from_int(3, x.d())).unwrap();
        prop_assert_eq!(raw_image(&x).unwrap().reduced(), cube.checked_sub(&three_x).unwrap());
    }
}

#[test]
fn decide_examples() {
    let q = Field::Rational;
    assert!(!decide_trisection(q, &el("1")).unwrap().member);
    let v = decide_trisection(q, &el("0")).unwrap();
    assert_eq!(v.witness.as_deref(), Some("0"));
    let v = decide_trisection(q, &el("-11/8")).unwrap();
    assert_eq!(v.witness.as_deref(), Some("1/2"));
    let v = decide_trisection(q, &el("3/2")).unwrap();
    assert!(!v.member);
    assert!(matches!(v.certificate, Some(Certificate::Eisenstein3rs { r: 1, s: 2, .. })));
    let v = decide_trisection(quad(2), &el("(0+1*sqrt(2))/1")).unwrap();
    assert_eq!(v.witness.as_deref(), Some("(0-1*sqrt(2))/1"));
    assert_eq!(v.method, Method::BoundedSearch);
    assert!(!decide_trisection(quad(3), &el("(0+1*sqrt(3))/1")).unwrap().member);
    assert!(matches!(decide_trisection(q, &el("5/2")), Err(Error::OutOfRange(_))));
    assert!(matches!(decide_trisection(quad(2), &el("(1+1*sqrt(2))/1")), Err(Error::OutOfRange(_))));
    for e in ["2", "-2"] {
        assert!(decide_trisection(q, &el(e)).unwrap().member);
        assert!(decide_trisection(quad(5), &el(e)).unwrap().member);
    }
}

#[test]
fn witnesses_are_sound() {
    for field in [Field::Rational, quad(2), quad(5)] {
        let r = if field == Field::Rational { 40 } else { 10 };
        for c in enumerate_coords(field, r, Some(&crate::ball::Window::symmetric(2)), 4) {
            let a = c.to_elem(field);
            let v = decide_trisection(field, &a).unwrap();
            if let Some(w) = v.witness_elem {
                assert_eq!(apply_f(&w), a);
                assert!(w.in_interval(&rat("-2"), &rat("2")));
            }
        }
    }
}

#[test]
fn search_bound_is_sound() {
    let check = |field: Field, rmax: i64| {
        let d = field.radicand().unwrap_or(0);
        let t = 3 * preimage_bound(field, &Rational::from_int(rmax)).to_i64().unwrap();
        for c in enumerate_coords(field, t, None, 8) {
            let (a1, a2, b) = image_coords(&c, d);
            let h = a1.abs().max(a2.abs()).max(b);
            if h <= rmax as i128 {
                let s = preimage_bound(field, &Rational::from_int(h as i64)).to_i64().unwrap();
                assert!(c.height() <= s, "{field}: {c:?} maps to height {h}");
            }
        }
    };
    check(Field::Rational, 50);
    for d in [2, 3, 5] {
        check(quad(d), 20);
    }
}

#[test]
fn fast_path_agrees_with_search() {
    let q = Field::Rational;
    for c in enumerate_coords(q, 200, Some(&crate::ball::Window::symmetric(2)), 8) {
        let a = c.to_elem(q);
        let fast = rational_preimage(&a.as_rational().unwrap());
        let slow = bounded_search(q, &a, false).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "a = {a}");
        for w in fast.map(Elem::Rational).iter().chain(slow.iter()) {
            assert_eq!(apply_f(w), a);
        }
    }
}

#[test]
fn pruned_search_agrees_with_full_search() {
    for d in [2, 3, 5] {
        let field = quad(d);
        for c in enumerate_coords(field, 6, Some(&crate::ball::Window::symmetric(2)), 4) {
            let a = c.to_elem(field);
            assert_eq!(
                bounded_search(field, &a, true).unwrap().is_some(),
                bounded_search(field, &a, false).unwrap().is_some(),
                "a = {a}"
            );
        }
    }
}

#[test]
fn ambient_field_consistency() {
    let q = Field::Rational;
    for c in enumerate_coords(q, 60, Some(&crate::ball::Window::symmetric(2)), 8) {
        let a = c.to_elem(q);
        let base = decide_trisection(q, &a).unwrap().member;
        for d in [2, 3, 5] {
            assert_eq!(decide_trisection(quad(d), &a).unwrap().member, base, "a = {a}, d = {d}");
        }
    }
}

#[test]
fn numerator_equals_trisection_count() {
    for (field, rmax) in [(Field::Rational, 50), (quad(2), 20), (quad(3), 20), (quad(5), 20)] {
        let mut heights = Vec::new();
        for c in enumerate_coords(field, rmax, Some(&crate::ball::Window::symmetric(2)), 8) {
            if decide_trisection(field, &c.to_elem(field)).unwrap().member {
                heights.push(c.height());
            }
        }
        for r in 1..=rmax {
            let tri = heights.iter().filter(|&&h| h <= r).count();
            assert_eq!(tri, numerator_coords(field, r, 4).len(), "{field}, R = {r}");
        }
    }
}

#[test]
fn gcd_bound_small_heights() {
    for d in [2, 3, 5, 6, 7] {
        for c in enumerate_coords(quad(d), 30, None, 8) {
            let x = QuadElem::canonicalize(c.a1, c.a2, c.b, d).unwrap();
            raw_image(&x).unwrap();
        }
    }
}

#[test]
fn density_small_radius() {
    let rep = density_experiment(Field::Rational, &[10], 1, 1 << 20).unwrap();
    let got: BTreeSet<String> =
        numerator_coords(Field::Rational, 10, 1).iter().map(|c| c.to_elem(Field::Rational).to_string()).collect();
    let want: BTreeSet<String> = ["-2", "-9/8", "0", "9/8", "2"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
    assert_eq!(rep.points[0].num, 5);
    assert!(rep.slope.is_none());
}

#[test]
fn density_monotone_and_bounded() {
    let rep = density_experiment(quad(2), &[5, 10, 15, 20], 2, 1 << 24).unwrap();
    for w in rep.points.windows(2) {
        assert!(w[0].num <= w[1].num && w[0].den <= w[1].den);
    }
    for p in &rep.points {
        assert!(p.num <= p.den && (0.0..=1.0).contains(&p.delta));
    }
    let one = density_experiment(quad(2), &[5, 10, 15, 20], 1, 1 << 24).unwrap();
    assert_eq!(one, rep);
}

#[test]
fn slope_fit() {
    let pts: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0].iter().map(|&x| (x, 3.0 * x.powf(-1.5))).collect();
    assert!((fit_slope(&pts).unwrap() + 1.5).abs() < 1e-12);
    assert!(fit_slope(&pts[..2]).is_none());
}

#[test]
fn eisenstein_certificates() {
    let c = eisenstein_cert_3rs(1, 2).unwrap();
    assert!(matches!(&c, Certificate::Eisenstein3rs { in_range: true, a, .. } if a == "3/2"));
    assert!(c.verify());
    let c = eisenstein_cert_3rs(1, 1).unwrap();
    assert!(matches!(&c, Certificate::Eisenstein3rs { in_range: false, a, .. } if a == "3"));
    let c = eisenstein_cert_3rs(2, 5).unwrap();
    match &c {
        Certificate::Eisenstein3rs { polynomial, .. } => assert_eq!(polynomial.to_string(), "-6 - 15*x + 5*x^3"),
        _ => unreachable!(),
    }
    assert!(c.verify());
    assert!(eisenstein_cert_3rs(3, 2).is_err());
    assert!(eisenstein_cert_3rs(2, 4).is_err());
}

#[test]
fn square_family() {
    let rep = square_family_check(100);
    assert!(rep.members.is_empty());
    assert!(rep.checked > 20);
    assert!(rep.certificate().verify());
    for a in ["1", "1/4", "16/9"] {
        assert!(!decide_trisection(Field::Rational, &el(a)).unwrap().member);
    }
}

#[test]
fn yates_pairs() {
    assert_eq!(yates_certificate(2).unwrap(), (1, -1));
    assert_eq!(yates_certificate(4).unwrap(), (-1, 1));
    assert!(yates_certificate(3).is_err());
    for k in 1..200 {
        if k % 3 != 0 {
            let (a, b) = yates_certificate(k).unwrap();
            assert!(Certificate::YatesBezout { k, a, b }.verify());
        }
    }
}

#[test]
fn nonconstructible_witnesses() {
    let c = nonconstructible_witness(5, 2).unwrap();
    match &c {
        Certificate::NonconstructibleWitness { degree, approx, .. } => {
            assert_eq!(*degree, 5);
            assert!(approx.starts_with("-1.93"));
        }
        _ => unreachable!(),
    }
    assert!(c.verify());
    assert!(nonconstructible_witness(7, 2).unwrap().verify());
    assert!(nonconstructible_witness(3, 2).is_err());
    assert!(nonconstructible_witness(5, 4).is_err());
    assert!(nonconstructible_witness(5, 37).is_err());
    assert!(nonconstructible_witness(11, 3).unwrap().verify());
}
