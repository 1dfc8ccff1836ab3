//! Elements of bounded height: exact ball counts, the [-2, 2] window, and the inner
//! box Q(R) whose points all lie in the ball.
use trisect::arith::{Field, Rational};
use trisect::ball::{count_ball, count_ball_interval, enumerate_ball_interval, qbox, HeightBall, QBoxSpec, Window};
use trisect::coprime::zeta;

fn main() -> trisect::Result<()> {
    let ball = HeightBall::with_int(Field::Rational, 3);
    let two = Rational::from_int(2);
    let elems = enumerate_ball_interval(&ball, &-&two, &two, 1000)?;
    println!("B_Q(3) in [-2,2]: {}", elems.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));

    for r in [100i64, 1000, 10_000] {
        let n = count_ball(&HeightBall::with_int(Field::Rational, r));
        let scaled = n as f64 * zeta(2, 1e-12) / (2.0 * (r as f64).powi(2));
        println!("R = {r}: |B_Q(R)| = {n}, normalized {scaled:.5}");
    }

    for d in [2, 3, 5] {
        let f = Field::quadratic(d)?;
        println!(
            "{}: |B(20)| = {}, in [-2,2]: {}",
            f,
            count_ball(&HeightBall::with_int(f, 20)),
            count_ball_interval(f, 20, &Window::symmetric(2), 4)
        );
    }

    let spec = QBoxSpec::new(Field::Rational, Rational::from_int(10_000))?;
    let rep = qbox(&spec, 1_000_000, 10_000, 1);
    println!(
        "Q(10^4): {} points, main term {:.0}, ratio {:.4}, violations {}",
        rep.count, rep.main_term, rep.ratio, rep.violations
    );
    Ok(())
}
