//! p-section polynomials, Eisenstein certificates for non-p-sectable angles, and
//! the reduction from general n.
use trisect::nsect::{
    bridge_p3, dense_family_certificate, nonsectability_cert, nsect_reduce, psection_poly, verify_structure,
};

fn main() -> trisect::Result<()> {
    for p in [3, 5, 7, 11] {
        let pp = psection_poly(p)?;
        println!("P_{p}(x, a) = {pp}   structure ok: {}", verify_structure(&pp).all_ok());
    }
    println!("2P(x,a) = p(2x,2a) for p = 3: {}", bridge_p3());

    for (p, c, d) in [(3, 3, 4), (5, 5, 7), (7, -7, 10)] {
        let cert = nonsectability_cert(p, c, d)?;
        println!("cos(alpha) = {}: not {p}-sectable, certificate {}", cert.cos_alpha, cert.verify());
    }

    for n in [8, 12, 25] {
        println!("{}", serde_json::to_string(&nsect_reduce(n)?).expect("json"));
    }
    println!("{:?}", dense_family_certificate(17, 3)?);
    Ok(())
}
