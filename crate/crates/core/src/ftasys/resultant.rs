//! Sylvester resultants of bivariate polynomials.

use crate::error::{Error, Result};
use crate::multipoly::Polynomial;
use crate::rational::{int, Rational};
use num_traits::One;

use super::univariate::UniPoly;

/// Coefficients of `p` in `elim`, ascending, each as a univariate polynomial
/// in the remaining variable.
fn coefficients_over(p: &Polynomial, elim: usize) -> Result<Vec<UniPoly>> {
    p.coefficients_in(elim)
        .iter()
        .map(|c| UniPoly::from_polynomial(&c.drop_variable(elim)))
        .collect()
}

fn power(a: &UniPoly, k: usize) -> UniPoly {
    (0..k).fold(UniPoly::constant(Rational::one()), |acc, _| acc.mul(a))
}

/// Determinant over `Q[t]` by fraction-free elimination; every division is exact.
fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::constant(Rational::one());
    }
    let mut negate = false;
    let mut prev = UniPoly::constant(Rational::one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.scale(&int(-1))
    } else {
        d
    }
}

/// `Res_elim(p, q)` for bivariate `p, q`, returned as a univariate polynomial
/// in the other variable. When one argument is free of `elim` the result is
/// that argument raised to the other's `elim`-degree.
pub fn resultant_eliminate(p: &Polynomial, q: &Polynomial, elim: usize) -> Result<Polynomial> {
    for f in [p, q] {
        if f.nvars() != 2 {
            return Err(Error::UnsupportedDimension {
                nvars: f.nvars(),
                supported: "exactly 2",
            });
        }
    }
    if elim > 1 {
        return Err(Error::VariableOutOfRange { var: elim, nvars: 2 });
    }
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidSystem("resultant of the zero polynomial".into()));
    }
    let pc = coefficients_over(p, elim)?;
    let qc = coefficients_over(q, elim)?;
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let result = match (m, n) {
        (0, 0) => return Err(Error::NothingToEliminate { var: elim }),
        (0, _) => power(&pc[0], n),
        (_, 0) => power(&qc[0], m),
        _ => {
            let size = m + n;
            let mut s = vec![vec![UniPoly::zero(); size]; size];
            for i in 0..n {
                for (j, c) in pc.iter().rev().enumerate() {
                    s[i][i + j] = c.clone();
                }
            }
            for i in 0..m {
                for (j, c) in qc.iter().rev().enumerate() {
                    s[n + i][i + j] = c.clone();
                }
            }
            bareiss_det(s)
        }
    };
    Ok(result.to_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(2, int(n))
    }
    fn uni(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_univariate(&coeffs.iter().map(|&v| int(v)).collect::<Vec<_>>())
    }

    fn same_up_to_sign(a: &Polynomial, b: &Polynomial) -> bool {
        a == b || a == &(-b)
    }

    #[test]
    fn linear_substitution() {
        let r = resultant_eliminate(&(&y() - &x()), &(&(&y() * &y()) - &c(1)), 1).unwrap();
        assert!(same_up_to_sign(&r, &uni(&[-1, 0, 1])));
    }

    #[test]
    fn quadratic_against_linear() {
        let r = resultant_eliminate(&(&(&y() * &y()) - &x()), &(&y() - &c(1)), 1).unwrap();
        assert!(same_up_to_sign(&r, &uni(&[1, -1])));
    }

    #[test]
    fn common_factor_gives_zero() {
        let f = &x() + &y();
        let p = &f * &(&x() - &c(3));
        let q = &f * &(&y() + &c(2));
        assert!(resultant_eliminate(&p, &q, 1).unwrap().is_zero());
        assert!(resultant_eliminate(&p, &q, 0).unwrap().is_zero());
    }

    #[test]
    fn constant_in_elimination_variable() {
        // Res_y(x + 1, y^2 - 2) = (x + 1)^2
        let r = resultant_eliminate(&(&x() + &c(1)), &(&(&y() * &y()) - &c(2)), 1).unwrap();
        assert_eq!(r, uni(&[1, 2, 1]));
        assert!(matches!(
            resultant_eliminate(&x(), &(&x() + &c(1)), 1),
            Err(Error::NothingToEliminate { var: 1 })
        ));
    }

    #[test]
    fn separable_system() {
        // Res_y(x^2 - 1, y^2 - 4) = (x^2 - 1)^2
        let p = &(&x() * &x()) - &c(1);
        let q = &(&y() * &y()) - &c(4);
        let r = resultant_eliminate(&p, &q, 1).unwrap();
        assert_eq!(r, uni(&[-1, 0, 1]).pow(2));
    }
}
