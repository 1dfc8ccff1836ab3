//! Rationals and Q(sqrt d) elements in canonical form, heights, and a height
//! comparison between two bases.
use trisect::arith::{height_in_basis, verify_commensurability, Elem, Field, QuadElem, Rational};

fn main() -> trisect::Result<()> {
    let x: Rational = "-6/4".parse()?;
    println!("{x} has height {}", x.height());

    let field = Field::quadratic(2)?;
    let a: Elem = "(1+1*sqrt(2))/2".parse()?;
    let b = field.embed(&"3/4".parse()?)?;
    let prod = a.mul(&b)?;
    println!("({a}) * ({b}) = {prod}, height {}", prod.height());
    println!("inverse of {a} is {}", a.inv()?);
    println!("{a} lies in [-2, 2]: {}", a.in_interval(&Rational::from_int(-2), &Rational::from_int(2)));

    // the same element measured against {1, 1 + sqrt 2}
    let q: QuadElem = "(3+5*sqrt(2))/7".parse()?;
    let w1: QuadElem = "(1+0*sqrt(2))/1".parse()?;
    let w2: QuadElem = "(1+1*sqrt(2))/1".parse()?;
    println!("{q}: standard height {}, alt height {}", q.height(), height_in_basis(&q, &w1, &w2)?);

    let rep = verify_commensurability(2, (&w1, &w2), 40, 1000)?;
    println!("heights agree up to a factor {} over {} elements", rep.factor, rep.checked);
    Ok(())
}
