//! Integer polynomials: resultants by fraction-free elimination, Eisenstein tests,
//! rational roots and minimal polynomials of 2cos(2 pi / m).
use num_bigint::BigInt;
use trisect::poly::{cos_minimal_poly, cyclotomic, eisenstein_check, rational_roots, resultant, IntPoly, RatPoly};

fn main() -> trisect::Result<()> {
    let p: IntPoly = "-1 - 3*x + x^3".parse()?;
    let dp: IntPoly = "-3 + 3*x^2".parse()?;
    println!("Res({p}, {dp}) = {}", resultant(&p, &dp));

    let roots = rational_roots(&RatPoly::from(&"2 - 3*x + x^3".parse::<IntPoly>()?));
    let shown: Vec<String> = roots.iter().map(ToString::to_string).collect();
    println!("rational roots of x^3 - 3x + 2: {}", shown.join(", "));

    let e: IntPoly = "-3 - 6*x + 2*x^3".parse()?;
    println!("{e} Eisenstein at 3: {}", eisenstein_check(&e, &BigInt::from(3))?);

    for m in [5u64, 7, 9, 12, 16] {
        println!("Phi_{m} = {}   minpoly of 2cos(2pi/{m}) = {}", cyclotomic(m), cos_minimal_poly(m));
    }
    Ok(())
}
