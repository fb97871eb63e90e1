//! Solving a two-variable system by resultant elimination after a random
//! change of coordinates.

use poise::ftasys::{solve_2d, AlgebraicSystem, SolveOptions};
use poise::multipoly::Polynomial;
use poise::rational::{format_rational, int};

fn main() -> poise::Result<()> {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let c = |n| Polynomial::constant(2, int(n));
    // circle x² + y² = 5 meets the hyperbola xy = 2 in four rational points
    let circle = &(&(&x * &x) + &(&y * &y)) - &c(5);
    let hyperbola = &(&x * &y) - &c(2);
    let system = AlgebraicSystem::new(vec![circle, hyperbola])?;
    let set = solve_2d(&system, &SolveOptions::default())?;
    for s in &set.solutions {
        match &s.exact {
            Some(q) => println!("({}, {})", format_rational(&q[0]), format_rational(&q[1])),
            None => println!("({:.6}, {:.6})", s.point[0], s.point[1]),
        }
    }
    println!("{} of Bezout bound {}", set.distinct_count(), system.bezout());
    Ok(())
}
