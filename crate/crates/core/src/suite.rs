//! Cross-module invariant sweeps at desk scale. Each check recomputes its claim from
//! scratch against an independent path through the library.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algdeg::{angle_degree, cn_degree_check, identity_suite, tower_checks};
use crate::arith::{Elem, Field, QuadElem, Rational};
use crate::ball::{count_ball, enumerate_ball, enumerate_coords, qbox, HeightBall, QBoxSpec, Window};
use crate::coprime::{sieve_count, BruteTable, CountBox, Side};
use crate::nsect::{bridge_p3, nonsectability_cert, psection_poly, verify_structure};
use crate::ntheory::is_prime;
use crate::trisect::{
    apply_f, decide_trisection, density_experiment, eisenstein_cert_3rs, nonconstructible_witness, numerator_coords,
    raw_image, square_family_check, yates_certificate,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl SuiteCheck {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        SuiteCheck { name: name.into(), ok, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<SuiteCheck>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn all_ok(&self) -> bool {
        self.failed == 0
    }
}

fn q(n: i64, d: i64) -> Elem {
    Elem::Rational(Rational::new(n, d).expect("nonzero denominator"))
}

fn quad_fields() -> Vec<Field> {
    [2, 3, 5].iter().map(|&d| Field::quadratic(d).expect("squarefree")).collect()
}

fn wantzel() -> SuiteCheck {
    let v = decide_trisection(Field::Rational, &q(1, 1));
    let ok = matches!(&v, Ok(v) if !v.member);
    SuiteCheck::new("x^3 - 3x - 1 has no rational root", ok, format!("{:?}", v.map(|v| v.member)))
}

fn eisenstein_family() -> SuiteCheck {
    let mut n = 0;
    let mut bad = Vec::new();
    for s in 1..=12i64 {
        for r in -12..=12i64 {
            if (3 * r).abs() > 2 * s || r % 3 == 0 || s % 3 == 0 || crate::ntheory::gcd_i64(r, s) != 1 {
                continue;
            }
            n += 1;
            let member = decide_trisection(Field::Rational, &q(3 * r, s)).map(|v| v.member);
            let cert = eisenstein_cert_3rs(r, s).map(|c| c.verify());
            if member != Ok(false) || cert != Ok(true) {
                bad.push(format!("{r}/{s}"));
            }
        }
    }
    SuiteCheck::new("3r/s is not a trisection number", bad.is_empty(), format!("{n} cases, failures {bad:?}"))
}

fn squares() -> SuiteCheck {
    let rep = square_family_check(40);
    SuiteCheck::new(
        "nonzero squares are not trisection numbers",
        rep.members.is_empty() && rep.certificate().verify(),
        format!("{} squares", rep.checked),
    )
}

fn sieve_vs_brute(seed: u64) -> SuiteCheck {
    let mut bad = Vec::new();
    for k in 2..=3usize {
        let max = if k == 2 { 25 } else { 12 };
        let table = BruteTable::new(k, max);
        let mut sides = vec![1u64; k];
        loop {
            let b = CountBox::from_ints(&sides).expect("sides >= 1");
            if sieve_count(&b) != table.count(&sides) as u128 {
                bad.push(format!("{sides:?}"));
            }
            let mut i = 0;
            while i < k && sides[i] == max as u64 {
                sides[i] = 1;
                i += 1;
            }
            if i == k {
                break;
            }
            sides[i] += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = BruteTable::new(2, 30);
    for _ in 0..100 {
        let sides: Vec<Side> = (0..2)
            .map(|_| Side::rational(Rational::new(rng.gen_range(100..3000i64), 100).expect("positive")))
            .collect();
        let b = CountBox::new(sides).expect("sides >= 1");
        if sieve_count(&b) != table.count(&b.floors()) as u128 {
            bad.push(format!("{:?}", b.floors()));
        }
    }
    SuiteCheck::new("Mobius sieve matches direct count", bad.is_empty(), format!("failures {bad:?}"))
}

fn ball_counts() -> SuiteCheck {
    let mut bad = Vec::new();
    let mut cases: Vec<(Field, i64)> = (1..=20).map(|r| (Field::Rational, r)).collect();
    for f in quad_fields() {
        cases.extend((1..=6).map(|r| (f, r)));
    }
    for (f, r) in cases {
        let ball = HeightBall::with_int(f, r);
        let n = enumerate_ball(&ball, u128::MAX).map(|v| v.len() as u128);
        if n != Ok(count_ball(&ball)) {
            bad.push(format!("{f} R={r}"));
        }
    }
    SuiteCheck::new("ball count matches enumeration", bad.is_empty(), format!("failures {bad:?}"))
}

fn qbox_membership(seed: u64) -> SuiteCheck {
    let mut bad = Vec::new();
    for (f, r) in [(Field::Rational, 150), (Field::quadratic(2).expect("squarefree"), 12)] {
        let spec = QBoxSpec::new(f, Rational::from_int(r)).expect("R large enough");
        let rep = qbox(&spec, 1_000_000, 1000, seed);
        if rep.violations != 0 || !rep.exhaustive {
            bad.push(format!("{f} R={r}: {} violations", rep.violations));
        }
    }
    SuiteCheck::new("Q(R) lies in the height ball and [-2, 2]", bad.is_empty(), format!("{bad:?}"))
}

fn gcd_bound() -> SuiteCheck {
    let mut n = 0u64;
    let mut bad = 0u64;
    for f in quad_fields() {
        let Field::Quadratic(d) = f else { unreachable!() };
        for c in enumerate_coords(f, 15, None, 1) {
            let x = QuadElem::canonicalize(c.a1, c.a2, c.b, d.get()).expect("canonical");
            n += 1;
            bad += raw_image(&x).is_err() as u64;
        }
    }
    SuiteCheck::new("gcd of image coordinates divides 8d", bad == 0, format!("{n} elements, {bad} violations"))
}

fn numerator_identity() -> SuiteCheck {
    let mut bad = Vec::new();
    let two = Rational::from_int(2);
    let mut cases: Vec<(Field, i64)> = (1..=20).map(|r| (Field::Rational, r)).collect();
    cases.extend([(Field::quadratic(2).expect("squarefree"), 4), (Field::quadratic(5).expect("squarefree"), 3)]);
    for (f, r) in cases {
        let ball = HeightBall::with_int(f, r);
        let members: BTreeSet<String> = enumerate_ball(&ball, u128::MAX)
            .expect("small ball")
            .into_iter()
            .filter(|a| a.in_interval(&-&two, &two))
            .filter(|a| decide_trisection(f, a).map(|v| v.member).unwrap_or(false))
            .map(|a| a.to_string())
            .collect();
        let images: BTreeSet<String> =
            numerator_coords(f, r, 1).into_iter().map(|c| c.to_elem(f).to_string()).collect();
        if members != images {
            bad.push(format!("{f} R={r}"));
        }
    }
    SuiteCheck::new("decided members equal the image count", bad.is_empty(), format!("failures {bad:?}"))
}

fn witnesses_sound() -> SuiteCheck {
    let mut bad = 0;
    let mut n = 0;
    let two = Rational::from_int(2);
    for f in std::iter::once(Field::Rational).chain(quad_fields()) {
        let r = if f == Field::Rational { 30 } else { 4 };
        let w = Window::symmetric(2);
        for c in enumerate_coords(f, r, Some(&w), 1) {
            let a = c.to_elem(f);
            let Ok(v) = decide_trisection(f, &a) else {
                bad += 1;
                continue;
            };
            if let Some(beta) = v.witness_elem {
                n += 1;
                if apply_f(&beta) != a || !beta.in_interval(&-&two, &two) {
                    bad += 1;
                }
            }
        }
    }
    SuiteCheck::new("member witnesses satisfy f(beta) = a", bad == 0, format!("{n} witnesses, {bad} bad"))
}

fn density_shards() -> SuiteCheck {
    let f = Field::quadratic(2).expect("squarefree");
    let reports: Vec<_> = [1, 4, 8]
        .iter()
        .map(|&s| density_experiment(f, &[3, 5, 8], s, u128::MAX).map(|r| serde_json::to_string(&r).expect("json")))
        .collect();
    let ok = reports.iter().all(|r| r.is_ok() && r == &reports[0]);
    SuiteCheck::new("density output independent of shard count", ok, "shards 1, 4, 8")
}

fn psection() -> SuiteCheck {
    let mut bad = Vec::new();
    for p in (3..=41).filter(|&p| is_prime(p)) {
        if !psection_poly(p).map(|pp| verify_structure(&pp).all_ok()).unwrap_or(false) {
            bad.push(p);
        }
    }
    let certs = [(3, 3, 4), (5, 5, 7)]
        .iter()
        .all(|&(p, c, d)| nonsectability_cert(p, c, d).map(|c| c.eisenstein && c.verify()).unwrap_or(false));
    SuiteCheck::new(
        "p-section polynomial structure and certificates",
        bad.is_empty() && certs && bridge_p3(),
        format!("structure failures {bad:?}, certificates {certs}"),
    )
}

fn algdeg_checks() -> SuiteCheck {
    let towers = (1..=6).all(|n| tower_checks(n, 1 << 12).map(|r| r.all_ok()).unwrap_or(false));
    let cn = (1..=5).all(|n| cn_degree_check(n, 1 << 12).map(|r| r.ok).unwrap_or(false));
    let an = (1..=6u32).all(|n| angle_degree(1, 2 << n).map(|a| a.degree == 1 << (n - 1)).unwrap_or(false));
    let ids = identity_suite(6).all_ok();
    SuiteCheck::new(
        "half-angle tower degrees and identities",
        towers && cn && an && ids,
        format!("tower {towers}, c_n {cn}, a_n {an}, identities {ids}"),
    )
}

fn witness_and_yates() -> SuiteCheck {
    let w = nonconstructible_witness(5, 2).map(|c| c.verify()).unwrap_or(false);
    let y = (1..=60).filter(|k| k % 3 != 0).all(|k| matches!(yates_certificate(k), Ok((a, b)) if 3 * a + b * k == 1));
    SuiteCheck::new("odd-degree witness and Bezout pairs", w && y, format!("witness {w}, bezout {y}"))
}

/// Run every check; `seed` drives the randomized sweeps.
pub fn verify_suite(seed: u64) -> SuiteReport {
    let checks = vec![
        wantzel(),
        eisenstein_family(),
        squares(),
        sieve_vs_brute(seed),
        ball_counts(),
        qbox_membership(seed),
        gcd_bound(),
        numerator_identity(),
        witnesses_sound(),
        density_shards(),
        psection(),
        algdeg_checks(),
        witness_and_yates(),
    ];
    let passed = checks.iter().filter(|c| c.ok).count();
    let failed = checks.len() - passed;
    SuiteReport { checks, passed, failed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let rep = verify_suite(7);
        for c in &rep.checks {
            assert!(c.ok, "{c:?}");
        }
        assert_eq!(rep.passed, 13);
    }
}
