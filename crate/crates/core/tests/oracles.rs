use num_traits::{One, Signed, Zero};

use poise::ftasys::{conjecture_batch, Verdict};
use poise::interp::ConditionShape;
use poise::rational::{parse_rational, Rational};

fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    if m.is_empty() {
        return Rational::one();
    }
    let mut det = Rational::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
}

/// `∂^β x^α` at `x`, written out as falling factorials.
fn derivative_of_monomial(alpha: &[u32], beta: &[u32], x: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for ((&a, &b), xj) in alpha.iter().zip(beta).zip(x) {
        if b > a {
            return Rational::zero();
        }
        for k in 0..b {
            v *= Rational::from_integer((a - k).into());
        }
        for _ in 0..a - b {
            v *= xj;
        }
    }
    v
}

/// Box exponents in odometer order; the determinant magnitude does not depend
/// on the column order.
fn box_exponents(degrees: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in degrees {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..n).map(move |a| {
                    let mut e = e.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    out
}

#[test]
fn conjecture_determinants_match_cofactor_expansion() {
    let mut checked = 0;
    for degrees in [vec![2, 2], vec![2, 1], vec![1, 3], vec![5, 1], vec![5], vec![1, 1, 2]] {
        for shape in [ConditionShape::TotalOrder, ConditionShape::BoxOrder] {
            let records = conjecture_batch(&degrees, 40, 3, shape).unwrap();
            assert_eq!(records.len(), 40);
            for (i, r) in records.iter().enumerate() {
                assert_eq!(r.instance, i as u64);
                let knots: Vec<Vec<Rational>> = r
                    .knots
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|p| {
                        p.as_array()
                            .unwrap()
                            .iter()
                            .map(|c| parse_rational(c.as_str().unwrap()).unwrap())
                            .collect()
                    })
                    .collect();
                let columns = box_exponents(&degrees);
                let rows: Vec<Vec<Rational>> = knots
                    .iter()
                    .zip(&r.conditions)
                    .flat_map(|(x, betas)| {
                        let columns = &columns;
                        betas
                            .iter()
                            .map(move |b| columns.iter().map(|a| derivative_of_monomial(a, b, x)).collect())
                    })
                    .collect();
                assert_eq!(rows.len(), columns.len(), "{degrees:?} instance {i}");
                assert!(columns.len() <= 5);
                let oracle = cofactor_det(&rows);
                let det = parse_rational(r.det.as_deref().unwrap()).unwrap();
                assert_eq!(det.abs(), oracle.abs(), "{degrees:?} instance {i}");
                assert_eq!(r.verdict == Verdict::Singular, oracle.is_zero());
                assert_eq!(r.flagged, oracle.is_zero());
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 480);
}
