//! Lagrange interpolation on a poised knot set and its fundamental
//! polynomials.

use num_traits::One;
use poise::interp::{fundamental_polynomials, interpolate, total_degree_basis, KnotSet};
use poise::rational::{int, ratio, Rational};

fn main() -> poise::Result<()> {
    let points: Vec<Vec<Rational>> = [(0, 0), (2, 0), (0, 2), (1, 1), (3, 1), (1, 3)]
        .iter()
        .map(|&(a, b)| vec![int(a), ratio(b, 2)])
        .collect();
    let knots = KnotSet::from_points(2, points)?;
    let basis = total_degree_basis(2, 2)?;

    let values: Vec<Rational> = [1, -1, 4, 0, 2, 7].iter().map(|&v| int(v)).collect();
    let p = interpolate(&knots, &values, &basis)?;
    println!("interpolant: {p}");
    for (x, v) in knots.points().zip(&values) {
        assert_eq!(&p.evaluate(x)?, v);
    }

    let ls = fundamental_polynomials(&knots, &basis)?;
    let mut sum = ls[0].clone();
    for l in &ls[1..] {
        sum = &sum + l;
    }
    println!("sum of fundamental polynomials: {sum}");
    assert!(sum.is_constant() && sum.constant_term().is_one());
    Ok(())
}
