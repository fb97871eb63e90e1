//! Maximality certification: does a system attain its Bezout bound with
//! pairwise-distinct solutions, and is that solution set poised for the box
//! space of the same degrees?

use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::interp::{box_basis, is_poised, numeric_poisedness, KnotSet};
use crate::rational::{format_rational, Rational};

use super::solve2d::{shares_component, solve_2d, SolveOptions};
use super::univariate::univariate_roots;
use super::{same_point, AlgebraicSystem, SolutionSet};

/// Relative singular-value threshold for numeric poisedness of solution sets.
pub const NUMERIC_POISED_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum PoisednessCheck {
    /// Exact Vandermonde determinant over the rationals.
    Exact {
        poised: bool,
        det: Rational,
    },
    /// Singular values of the floating Vandermonde matrix (approximate).
    NumericRank {
        full_rank: bool,
        rank: usize,
        sigma_min: f64,
        sigma_max: f64,
    },
    NotChecked,
}

impl PoisednessCheck {
    /// `None` when the check was skipped.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            PoisednessCheck::Exact { poised, .. } => Some(*poised),
            PoisednessCheck::NumericRank { full_rank, .. } => Some(*full_rank),
            PoisednessCheck::NotChecked => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PoisednessCheck::Exact { poised, det } => {
                json!({"mode": "exact", "poised": poised, "det": format_rational(det)})
            }
            PoisednessCheck::NumericRank {
                full_rank,
                rank,
                sigma_min,
                sigma_max,
            } => json!({
                "mode": "numeric-rank",
                "approximate": true,
                "poised": full_rank,
                "rank": rank,
                "sigma_min": sigma_min,
                "sigma_max": sigma_max,
            }),
            PoisednessCheck::NotChecked => json!({"mode": "not-checked"}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityReport {
    pub bezout: u64,
    pub distinct_count: usize,
    pub multiplicity_sum: u64,
    pub is_maximal: bool,
    pub positive_dimensional: bool,
    pub poisedness: PoisednessCheck,
    pub solutions: SolutionSet,
    /// `"solved"` when the solutions were computed, `"verified"` when supplied.
    pub mode: &'static str,
    pub notes: Vec<String>,
}

impl MaximalityReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "mode": self.mode,
            "bezout": self.bezout,
            "distinct_count": self.distinct_count,
            "multiplicity_sum": self.multiplicity_sum,
            "is_maximal": self.is_maximal,
            "positive_dimensional": self.positive_dimensional,
            "poisedness": self.poisedness.to_json(),
            "solutions": self.solutions.to_json(),
            "notes": self.notes,
        })
    }
}

fn validate_supplied(system: &AlgebraicSystem, supplied: &SolutionSet, tol: f64) -> Result<()> {
    if supplied.nvars != system.nvars() {
        return Err(Error::DimensionMismatch {
            expected: system.nvars(),
            found: supplied.nvars,
        });
    }
    for (index, s) in supplied.solutions.iter().enumerate() {
        if s.point.len() != system.nvars() {
            return Err(Error::DimensionMismatch {
                expected: system.nvars(),
                found: s.point.len(),
            });
        }
        let residual = system.residual(&s.point)?;
        let ok = match &s.exact {
            Some(q) => system.vanishes_exactly(q)?,
            None => residual < tol,
        };
        if !ok {
            return Err(Error::ResidualCheck {
                index,
                residual,
                tol: if s.exact.is_some() { 0.0 } else { tol },
            });
        }
    }
    for (i, a) in supplied.solutions.iter().enumerate() {
        for (j, b) in supplied.solutions.iter().enumerate().skip(i + 1) {
            let same = match (&a.exact, &b.exact) {
                (Some(p), Some(q)) => p == q,
                _ => same_point(&a.point, &b.point, tol),
            };
            if same {
                return Err(Error::InvalidSystem(format!("supplied solutions {i} and {j} coincide")));
            }
        }
    }
    Ok(())
}

/// Decides whether `system` has `Π n_i` distinct solutions and, if so,
/// whether they are poised for `box_basis(n_1..n_d)`.
///
/// Without `supplied` solutions the system is solved (one or two variables).
/// With them, the tool only validates residuals, distinctness and counts,
/// which works in any dimension; shared components are then detected for
/// two variables only.
pub fn verify_maximality(
    system: &AlgebraicSystem,
    supplied: Option<&SolutionSet>,
    opts: &SolveOptions,
) -> Result<MaximalityReport> {
    let d = system.nvars();
    let mut notes = Vec::new();
    let (solutions, mode) = match supplied {
        Some(s) => {
            validate_supplied(system, s, opts.tol)?;
            let mut s = s.clone();
            s.positive_dimensional = match d {
                1 => false,
                2 => shares_component(system, opts.seed)?,
                _ => {
                    notes.push("positive-dimensional components are not checked for three or more variables".into());
                    false
                }
            };
            (s, "verified")
        }
        None => match d {
            1 => (univariate_roots(&system.equations()[0])?, "solved"),
            2 => (solve_2d(system, opts)?, "solved"),
            _ => {
                return Err(Error::UnsupportedDimension {
                    nvars: d,
                    supported: "1 or 2 without supplied solutions",
                })
            }
        },
    };

    let bezout = system.bezout();
    let distinct_count = solutions.distinct_count();
    let positive_dimensional = solutions.positive_dimensional;
    let is_maximal = distinct_count as u64 == bezout && !positive_dimensional;
    if distinct_count as u64 > bezout && !positive_dimensional {
        notes.push(format!(
            "distinct count {distinct_count} exceeds the Bezout bound {bezout}: counterexample candidate"
        ));
    }

    let poisedness = if is_maximal {
        let basis = box_basis(system.degrees())?;
        match solutions.exact_points() {
            Some(points) => {
                let knots = KnotSet::from_points(d, points)?;
                let cert = is_poised(&knots, &basis)?;
                PoisednessCheck::Exact {
                    poised: cert.poised,
                    det: cert.det,
                }
            }
            None => {
                let np = numeric_poisedness(&solutions.numeric_points(), &basis, NUMERIC_POISED_TOL)?;
                PoisednessCheck::NumericRank {
                    full_rank: np.full_rank,
                    rank: np.rank,
                    sigma_min: np.sigma_min,
                    sigma_max: np.sigma_max,
                }
            }
        }
    } else {
        PoisednessCheck::NotChecked
    };
    if let PoisednessCheck::Exact { det, .. } = &poisedness {
        if det.is_zero() {
            notes.push("maximal system whose solution set is not poised for the box space".into());
        }
    }
    if poisedness.verdict() == Some(false) {
        log::warn!("maximal system with unpoised solution set: {:?}", system.equations());
    }

    Ok(MaximalityReport {
        bezout,
        distinct_count,
        multiplicity_sum: solutions.multiplicity_sum(),
        is_maximal,
        positive_dimensional,
        poisedness,
        solutions,
        mode,
        notes,
    })
}
