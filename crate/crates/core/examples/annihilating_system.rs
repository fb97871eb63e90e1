//! From knots back to equations: a system of box degrees (2,2) whose common
//! zeros include four scattered knots.

use poise::ftasys::annihilating_system;
use poise::interp::KnotSet;
use poise::rational::int;

fn main() -> poise::Result<()> {
    let points = [[0, 0], [1, 0], [0, 1], [2, 3]]
        .iter()
        .map(|p| p.iter().map(|&c| int(c)).collect())
        .collect();
    let knots = KnotSet::from_points(2, points)?;
    let system = annihilating_system(&knots, &[2, 2])?;
    for (i, p) in system.equations().iter().enumerate() {
        println!("p{} = {p}", i + 1);
    }
    for x in knots.points() {
        assert!(system.vanishes_exactly(x)?);
    }
    Ok(())
}
