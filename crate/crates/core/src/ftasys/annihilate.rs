use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::RationalMatrix;
use crate::interp::{box_basis, KnotSet};
use crate::multipoly::{ExponentVector, Polynomial};
use crate::rational::Rational;

use super::{bezout_bound, AlgebraicSystem};

/// Monomials `α` with `α_i = n_i` and `α_j ≤ n_j − 1` for `j ≠ i`, graded order.
fn top_monomials(degrees: &[u32], i: usize) -> Result<Vec<ExponentVector>> {
    let mut reduced = degrees.to_vec();
    reduced[i] = 1;
    Ok(box_basis(&reduced)?
        .monomials()
        .iter()
        .map(|m| {
            let mut e = m.exps().to_vec();
            e[i] = degrees[i];
            ExponentVector::from(e)
        })
        .collect())
}

/// For each variable `x_i`, a polynomial spanned by
/// `{x^α : α_i ≤ n_i, α_j ≤ n_j − 1}` that vanishes on every knot and has
/// degree exactly `n_i` in `x_i`.
///
/// When the knots are poised for the box space the pure power is used:
/// `x_i^{n_i}` minus its box interpolant, which on a grid is the separable
/// product `Π_k (x_i − c_{i,k})`. Otherwise any kernel element with a nonzero
/// coefficient on a top monomial is taken.
pub fn annihilating_system(knots: &KnotSet, degrees: &[u32]) -> Result<AlgebraicSystem> {
    let d = knots.nvars();
    if degrees.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: degrees.len(),
        });
    }
    let count = bezout_bound(degrees)?;
    if knots.len() as u64 != count {
        return Err(Error::SizeMismatch {
            conditions: knots.len(),
            basis: count as usize,
        });
    }
    if let Some((index, k)) = knots.knots().iter().enumerate().find(|(_, k)| k.multiplicity != 1) {
        return Err(Error::MultiplicityPresent {
            index,
            multiplicity: k.multiplicity,
        });
    }
    let base = box_basis(degrees)?;
    let points: Vec<&[_]> = knots.points().collect();

    let mut equations = Vec::with_capacity(d);
    for i in 0..d {
        let top = top_monomials(degrees, i)?;
        let columns: Vec<&ExponentVector> = base.monomials().iter().chain(&top).collect();
        let mut eval = RationalMatrix::zeros(points.len(), columns.len());
        for (r, p) in points.iter().enumerate() {
            for (c, m) in columns.iter().enumerate() {
                eval.set(r, c, m.evaluate(p));
            }
        }
        let kernel = eval.nullspace_exact();
        let n_base = base.dimension();
        let pure = top
            .iter()
            .position(|m| m.exps().iter().enumerate().all(|(j, &a)| j == i || a == 0))
            .expect("pure power is a top monomial");
        let has_top = |v: &&Vec<Rational>| v[n_base..].iter().any(|c| !c.is_zero());
        let chosen = kernel
            .iter()
            .find(|v| !v[n_base + pure].is_zero() && v[n_base..].iter().filter(|c| !c.is_zero()).count() == 1)
            .or_else(|| kernel.iter().find(has_top))
            .ok_or(Error::NoAnnihilator {
                var: i,
                degree: degrees[i],
            })?;
        let p = Polynomial::from_terms(
            d,
            columns
                .iter()
                .zip(chosen)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )?;
        for x in &points {
            if !p.evaluate(x)?.is_zero() {
                return Err(Error::InvalidSystem(format!(
                    "annihilator for x{i} does not vanish on a knot"
                )));
            }
        }
        equations.push(p);
    }
    AlgebraicSystem::new(equations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn knots(v: &[&[i64]]) -> KnotSet {
        KnotSet::from_points(
            v[0].len(),
            v.iter().map(|p| p.iter().map(|&c| int(c)).collect()).collect(),
        )
        .unwrap()
    }

    fn proportional(a: &Polynomial, b: &Polynomial) -> bool {
        let Some((m, c)) = b.terms().next() else {
            return a.is_zero();
        };
        let s: Rational = a.coeff(m) / c;
        !s.is_zero() && *a == b.scale(&s)
    }

    #[test]
    fn grid_recovers_separable_equations() {
        let k = knots(&[&[0, 0], &[0, 2], &[1, 0], &[1, 2], &[3, 0], &[3, 2]]);
        let s = annihilating_system(&k, &[3, 2]).unwrap();
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let c = |n| Polynomial::constant(2, int(n));
        let px = &(&x * &(&x - &c(1))) * &(&x - &c(3));
        let py = &y * &(&y - &c(2));
        assert!(proportional(&s.equations()[0], &px));
        assert!(proportional(&s.equations()[1], &py));
    }

    #[test]
    fn scattered_poised_knots() {
        let k = knots(&[&[0, 0], &[1, 0], &[0, 1], &[2, 3]]);
        let s = annihilating_system(&k, &[2, 2]).unwrap();
        assert_eq!(s.equations()[0].degree_in(0), Some(2));
        assert_eq!(s.equations()[1].degree_in(1), Some(2));
        for p in k.points() {
            assert!(s.vanishes_exactly(p).unwrap());
        }
    }

    #[test]
    fn wrong_count_rejected() {
        let k = knots(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(matches!(
            annihilating_system(&k, &[2, 2]),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn univariate_case_is_the_node_polynomial() {
        let k = knots(&[&[-1], &[2]]);
        let s = annihilating_system(&k, &[2]).unwrap();
        let t = Polynomial::var(1, 0);
        let expected = &(&t + &Polynomial::constant(1, int(1))) * &(&t - &Polynomial::constant(1, int(2)));
        assert!(proportional(&s.equations()[0], &expected));
    }
}
