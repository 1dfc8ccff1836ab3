//! Fraction of B_K(R) ∩ [-2, 2] made of trisection numbers, with the log-log slope.
//!
//! cargo run --release --example density -- 2 25,50,100
use trisect::arith::Field;
use trisect::trisect::{density_experiment, DensityReport};

fn main() -> trisect::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let field = match args.first().map(|s| s.parse::<i64>()) {
        Some(Ok(d)) if d > 1 => Field::quadratic(d)?,
        _ => Field::Rational,
    };
    let radii: Vec<i64> = match args.get(1) {
        Some(s) => s.split(',').filter_map(|r| r.parse().ok()).collect(),
        None if field == Field::Rational => vec![100, 1000, 10_000],
        None => vec![25, 50, 100],
    };
    let rep = density_experiment(field, &radii, rayon::current_num_threads(), 1 << 40)?;
    println!("{}", DensityReport::CSV_HEADER);
    for row in rep.csv_rows() {
        println!("{row}");
    }
    println!("slope {:?}, expected exponent {:.4}", rep.slope, rep.target_exponent);
    Ok(())
}
