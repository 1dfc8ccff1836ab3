//! Which a = 2cos(alpha) give trisectable angles, over Q and Q(sqrt d).
use trisect::arith::{Elem, Field};
use trisect::trisect::{decide_trisection, eisenstein_cert_3rs, square_family_check, yates_certificate};

fn main() -> trisect::Result<()> {
    let q = Field::Rational;
    for a in ["1", "0", "-2", "2", "3/2", "-9/8", "1/4", "110/27"] {
        let a: Elem = a.parse()?;
        match decide_trisection(q, &a) {
            Ok(v) => println!("{:>7} member={} witness={:?}", v.a, v.member, v.witness),
            Err(e) => println!("{a:>7} {e}"),
        }
    }

    let f = Field::quadratic(2)?;
    for a in ["(0+1*sqrt(2))/1", "(-10+7*sqrt(2))/1", "(1+1*sqrt(2))/2"] {
        let v = decide_trisection(f, &a.parse()?)?;
        println!("{} over {}: member={} witness={:?} bound={:?}", v.a, v.field, v.member, v.witness, v.search_bound);
    }

    let cert = eisenstein_cert_3rs(1, 2)?;
    println!("{}", serde_json::to_string(&cert).expect("json"));
    println!("verifies: {}", cert.verify());

    let sq = square_family_check(100);
    println!("squares checked {}, members {:?}", sq.checked, sq.members);

    for k in [1, 2, 4, 5, 7] {
        let (a, b) = yates_certificate(k)?;
        println!("k = {k}: 3*{a} + {b}*{k} = 1");
    }
    Ok(())
}
