//! a = f(q^(1/m)) is a trisection number of odd degree m, hence not constructible.
use trisect::trisect::{nonconstructible_witness, Certificate};

fn main() -> trisect::Result<()> {
    for (m, q) in [(5, 2), (7, 2), (11, 3), (13, 5)] {
        let cert = nonconstructible_witness(m, q)?;
        if let Certificate::NonconstructibleWitness { minpoly, approx, .. } = &cert {
            println!("m={m} q={q}: a ~ {approx}");
            println!("  minpoly {minpoly}");
        }
        println!("  verifies: {}", cert.verify());
    }
    match nonconstructible_witness(9, 2) {
        Ok(_) => println!("m = 9 accepted?"),
        Err(e) => println!("m = 9: {e}"),
    }
    Ok(())
}
