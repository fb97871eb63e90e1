use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::RationalMatrix;
use crate::multipoly::{AffineMap, Polynomial};
use crate::rational::{format_rational, int, ratio, Rational};

use super::{AlgebraicSystem, SolutionSet};

/// Maximal system with a known solution set: equation `i` is
/// `Π_k (x_i − c_{i,k})`, optionally composed with `map`. The solutions are
/// the grid points pulled back through `map`, each checked to vanish exactly.
pub fn generate_grid_system(
    coords: &[Vec<Rational>],
    map: Option<&AffineMap>,
) -> Result<(AlgebraicSystem, SolutionSet)> {
    let d = coords.len();
    if d == 0 {
        return Err(Error::NoVariables);
    }
    for (axis, c) in coords.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::InvalidDegrees(format!("axis {axis} has no coordinates")));
        }
        for (k, v) in c.iter().enumerate() {
            if c[..k].contains(v) {
                return Err(Error::RepeatedCoordinate {
                    axis,
                    value: format_rational(v),
                });
            }
        }
    }
    let inverse = match map {
        Some(m) => {
            if m.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.dim(),
                });
            }
            Some(m.inverse()?)
        }
        None => None,
    };

    let mut equations = Vec::with_capacity(d);
    for (axis, c) in coords.iter().enumerate() {
        let xi = Polynomial::var(d, axis);
        let factors: Vec<Polynomial> = c.iter().map(|v| &xi - &Polynomial::constant(d, v.clone())).collect();
        let p = Polynomial::product_of_linear(d, &factors)?;
        equations.push(match map {
            Some(m) => p.compose_affine(m)?,
            None => p,
        });
    }
    let system = AlgebraicSystem::new(equations)?;

    let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
    for c in coords {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                c.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    if let Some(inv) = &inverse {
        points = points.iter().map(|g| inv.apply(g)).collect::<Result<_>>()?;
    }
    for p in &points {
        if !system.vanishes_exactly(p)? {
            return Err(Error::InvalidSystem(
                "grid point does not solve the generated system".into(),
            ));
        }
    }
    Ok((system, SolutionSet::from_exact(d, points)))
}

/// `degrees[i]` distinct rationals per axis, numerators in [-6, 6] and
/// denominators in {1, 2, 3}.
pub fn random_grid_coords(degrees: &[u32], rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    degrees
        .iter()
        .map(|&n| {
            let mut axis: Vec<Rational> = Vec::with_capacity(n as usize);
            while axis.len() < n as usize {
                let v = ratio(rng.random_range(-6..=6), rng.random_range(1..=3));
                if !axis.contains(&v) {
                    axis.push(v);
                }
            }
            axis
        })
        .collect()
}

/// Random affine map with a determinant-one integer matrix (a product of a
/// unit lower and a unit upper triangular factor with entries in [-2, 2]),
/// a random signed permutation, and an integer offset in [-2, 2] when
/// `with_offset` is set.
pub fn random_unimodular_map(d: usize, with_offset: bool, rng: &mut impl Rng) -> AffineMap {
    let mut lower = RationalMatrix::identity(d);
    let mut upper = RationalMatrix::identity(d);
    for i in 0..d {
        for j in 0..i {
            lower.set(i, j, int(rng.random_range(-2..=2)));
            upper.set(j, i, int(rng.random_range(-2..=2)));
        }
    }
    let mut perm: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        perm.swap(i, rng.random_range(0..=i));
    }
    let mut signed = RationalMatrix::zeros(d, d);
    for (i, &j) in perm.iter().enumerate() {
        signed.set(i, j, int(if rng.random_bool(0.5) { 1 } else { -1 }));
    }
    let m = signed.mul(&lower).and_then(|a| a.mul(&upper)).expect("square factors");
    let offset = (0..d)
        .map(|_| {
            if with_offset {
                int(rng.random_range(-2..=2))
            } else {
                int(0)
            }
        })
        .collect();
    AffineMap::new(m, offset).expect("consistent dimensions")
}
