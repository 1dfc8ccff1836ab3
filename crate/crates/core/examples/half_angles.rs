//! Degrees of 2cos(pi/2^n), 2sin(pi/2^n) and 2cos(pi/3 ± pi/2^n), the tower
//! p_n = p_1 o p_(n-1) with p_1 = x^2 - 2, and the doubling identities.
use trisect::algdeg::{angle_degree, cn_degree_check, identity_suite, p_tower, tower_checks};

fn main() -> trisect::Result<()> {
    println!("p_3 = {}", p_tower(3, 64)?);
    for n in 1..=8 {
        let a = angle_degree(1, 2 << n)?;
        let c = cn_degree_check(n, 4096)?;
        let t = tower_checks(n, 4096)?;
        println!(
            "n={n}: deg a_n = {}, deg c_n = {} (2cos(2pi*{}/{})), tower ok {}",
            a.degree,
            c.degree,
            c.j,
            c.m,
            t.all_ok()
        );
    }
    let rep = identity_suite(10);
    for c in rep.checks.iter().filter(|c| c.n == 10 || c.n == 2) {
        println!("n={:>2} {:<34} {:<13} {}", c.n, c.identity, c.method, c.residual_bound);
    }
    for t in &rep.table {
        println!("{} = {}", t.name, t.value);
    }
    println!("all ok: {}", rep.all_ok());
    Ok(())
}
