//! Polynomial systems with as many equations as variables: Bezout bounds,
//! grid-system generation, univariate and two-variable solving, maximality
//! certification and the Hermite experiments.

mod annihilate;
mod conjecture;
mod grid;
mod maximality;
mod resultant;
mod solve2d;
pub mod univariate;

pub use annihilate::annihilating_system;
pub use conjecture::{
    conjecture_batch, hermite_conjecture_check, log_lines, random_hermite_scheme, write_log, ExperimentRecord,
    SchemeSource, Verdict,
};
pub use grid::{generate_grid_system, random_grid_coords, random_unimodular_map};
pub use maximality::{verify_maximality, MaximalityReport, PoisednessCheck, NUMERIC_POISED_TOL};
pub use resultant::resultant_eliminate;
pub use solve2d::{solve_2d, SolveOptions, DEFAULT_TOL};
pub use univariate::{squarefree_part, univariate_roots};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipoly::{Polynomial, PolynomialJson};
use crate::rational::{format_rational, to_f64, Rational};

/// `Π n_i`.
pub fn bezout_bound(degrees: &[u32]) -> Result<u64> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidDegrees("degrees must be nonempty and at least 1".into()));
    }
    Ok(degrees.iter().map(|&n| u64::from(n)).product())
}

/// `d` nonconstant equations in `d` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicSystem {
    nvars: usize,
    equations: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl AlgebraicSystem {
    pub fn new(equations: Vec<Polynomial>) -> Result<Self> {
        let nvars = equations.len();
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        let mut degrees = Vec::with_capacity(nvars);
        for (i, eq) in equations.iter().enumerate() {
            if eq.nvars() != nvars {
                return Err(Error::InvalidSystem(format!(
                    "equation {i} has {} variables, the system has {nvars} equations",
                    eq.nvars()
                )));
            }
            match eq.total_degree() {
                None => return Err(Error::InvalidSystem(format!("equation {i} is zero"))),
                Some(0) => return Err(Error::InvalidSystem(format!("equation {i} is a nonzero constant"))),
                Some(n) => degrees.push(n),
            }
        }
        Ok(AlgebraicSystem {
            nvars,
            equations,
            degrees,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn bezout(&self) -> u64 {
        self.degrees.iter().map(|&n| u64::from(n)).product()
    }

    /// Largest relative residual over the equations at a complex point.
    pub fn residual(&self, x: &[Complex64]) -> Result<f64> {
        self.equations
            .iter()
            .map(|e| e.relative_residual(x))
            .try_fold(0.0f64, |acc, r| Ok(acc.max(r?)))
    }

    pub fn vanishes_exactly(&self, x: &[Rational]) -> Result<bool> {
        for e in &self.equations {
            if !num_traits::Zero::is_zero(&e.evaluate(x)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            nvars: self.nvars,
            equations: self.equations.iter().map(Polynomial::to_json).collect(),
        }
    }

    pub fn from_json(json: &SystemJson) -> Result<Self> {
        let equations = json
            .equations
            .iter()
            .enumerate()
            .map(|(i, e)| {
                Polynomial::from_json(e).map_err(|err| match err {
                    Error::Parse { context, message } => Error::parse(format!("equations[{i}].{context}"), message),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if equations.len() != json.nvars {
            return Err(Error::InvalidSystem(format!(
                "{} equations for {} variables",
                equations.len(),
                json.nvars
            )));
        }
        AlgebraicSystem::new(equations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub nvars: usize,
    pub equations: Vec<PolynomialJson>,
}

/// One solution point. `exact` is present when the point was certified to be
/// a rational zero by exact evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub point: Vec<Complex64>,
    pub exact: Option<Vec<Rational>>,
    pub multiplicity: u32,
}

impl Solution {
    pub fn exact(point: Vec<Rational>, multiplicity: u32) -> Self {
        Solution {
            point: point.iter().map(|q| Complex64::new(to_f64(q), 0.0)).collect(),
            exact: Some(point),
            multiplicity,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "point": self.point.iter().map(|z| serde_json::json!({"re": z.re, "im": z.im})).collect::<Vec<_>>(),
            "multiplicity": self.multiplicity,
        });
        if let Some(e) = &self.exact {
            v["exact"] = e.iter().map(format_rational).collect::<Vec<_>>().into();
        }
        v
    }
}

/// Distinct solutions of a system (exactly distinct when rational,
/// separated by the clustering tolerance otherwise).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolutionSet {
    pub nvars: usize,
    pub solutions: Vec<Solution>,
    pub positive_dimensional: bool,
    pub notes: Vec<String>,
}

impl SolutionSet {
    pub fn from_exact(nvars: usize, points: Vec<Vec<Rational>>) -> Self {
        SolutionSet {
            nvars,
            solutions: points.into_iter().map(|p| Solution::exact(p, 1)).collect(),
            positive_dimensional: false,
            notes: Vec::new(),
        }
    }

    pub fn distinct_count(&self) -> usize {
        self.solutions.len()
    }

    pub fn multiplicity_sum(&self) -> u64 {
        self.solutions.iter().map(|s| u64::from(s.multiplicity)).sum()
    }

    /// True when every solution carries an exact rational point.
    pub fn is_exact(&self) -> bool {
        self.solutions.iter().all(|s| s.exact.is_some())
    }

    pub fn exact_points(&self) -> Option<Vec<Vec<Rational>>> {
        self.solutions.iter().map(|s| s.exact.clone()).collect()
    }

    pub fn numeric_points(&self) -> Vec<Vec<Complex64>> {
        self.solutions.iter().map(|s| s.point.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nvars": self.nvars,
            "exact": self.is_exact(),
            "positive_dimensional": self.positive_dimensional,
            "distinct_count": self.distinct_count(),
            "multiplicity_sum": self.multiplicity_sum(),
            "solutions": self.solutions.iter().map(Solution::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

/// Distance test used for merging numeric solutions: `|a − b|` below
/// `tol · (1 + max coordinate magnitude)`.
pub(crate) fn same_point(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = 1.0 + a.iter().chain(b).map(|z| z.norm()).fold(0.0f64, f64::max);
    let dist = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
    dist < tol * scale
}

/// Greedy clustering in input order; merged multiplicities add up.
pub(crate) fn cluster(solutions: Vec<Solution>, tol: f64) -> Vec<Solution> {
    let mut out: Vec<Solution> = Vec::new();
    for s in solutions {
        match out.iter_mut().find(|o| same_point(&o.point, &s.point, tol)) {
            Some(o) => {
                o.multiplicity += s.multiplicity;
                if o.exact.is_none() {
                    o.exact = s.exact;
                }
            }
            None => out.push(s),
        }
    }
    out
}
