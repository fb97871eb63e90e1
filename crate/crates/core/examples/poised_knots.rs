//! Poisedness of knot sets for box and total-degree spaces.

use poise::interp::{box_basis, is_poised, total_degree_basis, KnotSet};
use poise::rational::{format_rational, int, Rational};

fn knots(points: &[[i64; 2]]) -> poise::Result<KnotSet> {
    KnotSet::from_points(
        2,
        points
            .iter()
            .map(|p| p.iter().map(|&c| int(c)).collect::<Vec<Rational>>())
            .collect(),
    )
}

fn main() -> poise::Result<()> {
    let grid = knots(&[[0, 0], [0, 2], [1, 0], [1, 2]])?;
    let cert = is_poised(&grid, &box_basis(&[2, 2])?)?;
    println!(
        "{{0,1}}x{{0,2}} for box(2,2): poised {} det {}",
        cert.poised,
        format_rational(&cert.det)
    );

    // three points on a line cannot carry all affine functions
    let line = knots(&[[0, 0], [1, 1], [2, 2]])?;
    let cert = is_poised(&line, &total_degree_basis(1, 2)?)?;
    println!(
        "collinear triple for total degree 1: poised {} det {}",
        cert.poised,
        format_rational(&cert.det)
    );

    // six points on y = x² lie on a conic, so degree 2 fails
    let parabola = knots(&[[-2, 4], [-1, 1], [0, 0], [1, 1], [2, 4], [3, 9]])?;
    let cert = is_poised(&parabola, &total_degree_basis(2, 2)?)?;
    println!("six points on a parabola for total degree 2: poised {}", cert.poised);
    Ok(())
}
