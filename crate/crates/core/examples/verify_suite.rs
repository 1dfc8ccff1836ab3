//! The invariant sweep behind `trisect verify`.
fn main() {
    let rep = trisect::suite::verify_suite(0);
    for c in &rep.checks {
        println!("{} {:<48} {}", if c.ok { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    std::process::exit(if rep.all_ok() { 0 } else { 1 });
}
