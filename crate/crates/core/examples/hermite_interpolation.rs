//! Hermite interpolation: values and derivatives at knots with multiplicity.
//!
//! A double knot at 0 and a simple knot at 1 determine a quadratic from
//! p(0), p'(0) and p(1).

use poise::interp::{
    hermite_interpolate, is_hermite_poised, total_degree_basis, ConditionShape, HermiteScheme, Knot, KnotSet,
};
use poise::rational::{format_rational, int};

fn main() -> poise::Result<()> {
    let knots = KnotSet::new(
        1,
        vec![
            Knot {
                point: vec![int(0)],
                multiplicity: 2,
            },
            Knot {
                point: vec![int(1)],
                multiplicity: 1,
            },
        ],
    )?;
    let scheme = HermiteScheme::from_knots(knots, ConditionShape::TotalOrder);
    let basis = total_degree_basis(2, 1)?;
    let cert = is_hermite_poised(&scheme, &basis)?;
    println!("confluent determinant {}", format_rational(&cert.det));

    // p(0) = 1, p'(0) = -1, p(1) = 3
    let p = hermite_interpolate(&scheme, &[int(1), int(-1), int(3)], &basis)?;
    println!("p = {p}");
    Ok(())
}
