//! Grid systems attain their Bezout bound, and their solution sets are poised
//! for the box space. Composing with an affine map keeps maximality but can
//! break box poisedness; both cases are shown.

use poise::exactla::RationalMatrix;
use poise::ftasys::{generate_grid_system, verify_maximality, PoisednessCheck, SolveOptions};
use poise::multipoly::AffineMap;
use poise::rational::{format_rational, int};

fn main() -> poise::Result<()> {
    let coords = vec![vec![int(0), int(1), int(3)], vec![int(-1), int(2)]];
    let (system, _) = generate_grid_system(&coords, None)?;
    report("plain grid", &system)?;

    // (x, y) -> (y, x): the six solutions now take only two x values, but
    // box(3,2) contains x², so its Vandermonde matrix is singular
    let swap = AffineMap::linear(RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])?)?;
    let (system, _) = generate_grid_system(&coords, Some(&swap))?;
    report("swapped grid", &system)?;
    Ok(())
}

fn report(name: &str, system: &poise::ftasys::AlgebraicSystem) -> poise::Result<()> {
    let r = verify_maximality(system, None, &SolveOptions::default())?;
    let det = match &r.poisedness {
        PoisednessCheck::Exact { det, .. } => format_rational(det),
        other => format!("{:?}", other.verdict()),
    };
    println!(
        "{name}: {} of {} solutions, maximal {}, box determinant {det}",
        r.distinct_count, r.bezout, r.is_maximal
    );
    Ok(())
}
