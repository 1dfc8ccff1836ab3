//! Coprime lattice points in boxes: Mobius sieve against direct counting, and the
//! main term prod(x_i) / zeta(k).
use trisect::arith::Rational;
use trisect::coprime::{brute_count, lehmer_report, sieve_count, zeta, CountBox, Side, DEFAULT_BRUTE_CAP};

fn main() -> trisect::Result<()> {
    let small = CountBox::from_ints(&[4, 4])?;
    println!("coprime pairs in [1,4]^2: {}", sieve_count(&small));

    let b = CountBox::new(vec![
        Side::rational(Rational::new(301, 7)?),
        Side::int(55),
        Side::over_sqrt(Rational::from_int(90), 2),
    ])?;
    println!("sieve {} brute {}", sieve_count(&b), brute_count(&b, DEFAULT_BRUTE_CAP)?);

    println!("{}", trisect::coprime::CountReport::CSV_HEADER);
    for n in [10u64, 100, 1000, 10_000] {
        let rep = lehmer_report(&CountBox::from_ints(&[n, n])?);
        println!("{}", rep.csv_row());
    }
    println!("1/zeta(2) = {:.6}", 1.0 / zeta(2, 1e-12));
    Ok(())
}
