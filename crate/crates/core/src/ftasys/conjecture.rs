//! Evidence gathering for Hermite schemes whose condition count matches the
//! box dimension `Π n_i`. Nothing here asserts nonsingularity; singular
//! instances are recorded and flagged.

use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactla::{rank_from_singular_values, singular_values_complex};
use crate::interp::{
    box_basis, hermite_matrix, lower_set, lower_set_size, ConditionShape, HermiteScheme, Knot, KnotSet, MonomialBasis,
};
use crate::multipoly::ExponentVector;
use crate::rational::{format_rational, ratio, Rational};

use super::{AlgebraicSystem, SolutionSet, NUMERIC_POISED_TOL};

/// Where the knots and their conditions come from.
#[derive(Clone, Debug)]
pub enum SchemeSource {
    Explicit(HermiteScheme),
    /// Solutions of a system; a solution of multiplicity `μ` becomes the
    /// lower set of `shape` with exactly `μ` elements.
    Solved {
        system: AlgebraicSystem,
        solutions: SolutionSet,
        shape: ConditionShape,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Nonsingular,
    Singular,
    /// A multiplicity with no lower set of that size in the chosen shape.
    Unsupported,
}

/// One line of the experiment log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance: u64,
    pub seed: u64,
    pub degrees: Vec<u32>,
    /// Rational coordinates as strings, or `{"re", "im"}` pairs.
    pub knots: serde_json::Value,
    pub conditions: Vec<Vec<Vec<u32>>>,
    pub verdict: Verdict,
    /// Exact determinant for rational knots.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub det: Option<String>,
    /// Numeric rank for floating knots.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<usize>,
    pub dimension: usize,
    pub flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

fn conditions_json(conditions: &[Vec<ExponentVector>]) -> Vec<Vec<Vec<u32>>> {
    conditions
        .iter()
        .map(|set| set.iter().map(|b| b.exps().to_vec()).collect())
        .collect()
}

fn check_count(count: usize, basis: &MonomialBasis) -> Result<()> {
    if count != basis.dimension() {
        return Err(Error::SizeMismatch {
            conditions: count,
            basis: basis.dimension(),
        });
    }
    Ok(())
}

fn exact_record(scheme: &HermiteScheme, basis: &MonomialBasis, degrees: &[u32]) -> Result<ExperimentRecord> {
    let det = hermite_matrix(scheme, basis)?.det_exact()?;
    let verdict = if det.is_zero() {
        Verdict::Singular
    } else {
        Verdict::Nonsingular
    };
    Ok(ExperimentRecord {
        instance: 0,
        seed: 0,
        degrees: degrees.to_vec(),
        knots: scheme
            .knots()
            .points()
            .map(|p| p.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into(),
        conditions: conditions_json(scheme.conditions()),
        verdict,
        det: Some(format_rational(&det)),
        rank: None,
        dimension: basis.dimension(),
        flagged: verdict == Verdict::Singular,
        note: None,
    })
}

/// `D^β x^α` at a complex point.
fn derivative_of_monomial_complex(alpha: &ExponentVector, beta: &ExponentVector, x: &[Complex64]) -> Complex64 {
    let mut coeff = 1.0;
    let mut value = Complex64::new(1.0, 0.0);
    for ((&a, &b), z) in alpha.exps().iter().zip(beta.exps()).zip(x) {
        if b > a {
            return Complex64::zero();
        }
        coeff *= (0..b).map(|j| f64::from(a - j)).product::<f64>();
        value *= z.powu(a - b);
    }
    value * coeff
}

fn numeric_record(
    points: &[Vec<Complex64>],
    conditions: &[Vec<ExponentVector>],
    basis: &MonomialBasis,
    degrees: &[u32],
) -> ExperimentRecord {
    let rows: Vec<(usize, &ExponentVector)> = conditions
        .iter()
        .enumerate()
        .flat_map(|(k, set)| set.iter().map(move |b| (k, b)))
        .collect();
    let n = basis.dimension();
    let m = DMatrix::from_fn(rows.len(), n, |r, c| {
        let (k, beta) = rows[r];
        derivative_of_monomial_complex(&basis.monomials()[c], beta, &points[k])
    });
    let rank = rank_from_singular_values(&singular_values_complex(&m), NUMERIC_POISED_TOL);
    let verdict = if rank == n {
        Verdict::Nonsingular
    } else {
        Verdict::Singular
    };
    ExperimentRecord {
        instance: 0,
        seed: 0,
        degrees: degrees.to_vec(),
        knots: points
            .iter()
            .map(|p| p.iter().map(|z| json!({"re": z.re, "im": z.im})).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into(),
        conditions: conditions_json(conditions),
        verdict,
        det: None,
        rank: Some(rank),
        dimension: n,
        flagged: verdict == Verdict::Singular,
        note: Some("numeric rank at relative tolerance 1e-8".into()),
    }
}

/// Builds the Hermite matrix of `source` against `box_basis(degrees)` and
/// records whether it is singular (exactly for rational knots, by numeric
/// rank otherwise).
pub fn hermite_conjecture_check(
    source: &SchemeSource,
    degrees: &[u32],
    instance: u64,
    seed: u64,
) -> Result<ExperimentRecord> {
    let basis = box_basis(degrees)?;
    let mut record = match source {
        SchemeSource::Explicit(scheme) => {
            check_count(scheme.condition_count(), &basis)?;
            exact_record(scheme, &basis, degrees)?
        }
        SchemeSource::Solved {
            system,
            solutions,
            shape,
        } => {
            let d = system.nvars();
            if d != degrees.len() {
                return Err(Error::DimensionMismatch {
                    expected: degrees.len(),
                    found: d,
                });
            }
            let total: u64 = solutions.multiplicity_sum();
            if total != basis.dimension() as u64 {
                return Err(Error::SizeMismatch {
                    conditions: total as usize,
                    basis: basis.dimension(),
                });
            }
            let mut orders = Vec::with_capacity(solutions.solutions.len());
            for s in &solutions.solutions {
                let mu = s.multiplicity as usize;
                match (1..=s.multiplicity).find(|&m| lower_set_size(d, m, *shape) == mu) {
                    Some(m) => orders.push(m),
                    None => {
                        return Ok(ExperimentRecord {
                            instance,
                            seed,
                            degrees: degrees.to_vec(),
                            knots: solutions.to_json()["solutions"].clone(),
                            conditions: Vec::new(),
                            verdict: Verdict::Unsupported,
                            det: None,
                            rank: None,
                            dimension: basis.dimension(),
                            flagged: false,
                            note: Some(format!("no {shape:?} lower set has {mu} elements in {d} variables")),
                        })
                    }
                }
            }
            match solutions.exact_points() {
                Some(points) => {
                    let knots = points
                        .into_iter()
                        .zip(&orders)
                        .map(|(point, &multiplicity)| Knot { point, multiplicity })
                        .collect();
                    let scheme = HermiteScheme::from_knots(KnotSet::new(d, knots)?, *shape);
                    exact_record(&scheme, &basis, degrees)?
                }
                None => {
                    let conditions: Vec<_> = orders.iter().map(|&m| lower_set(d, m, *shape)).collect();
                    let mut r = numeric_record(&solutions.numeric_points(), &conditions, &basis, degrees);
                    if solutions.solutions.iter().any(|s| s.multiplicity > 1) {
                        r.note = Some(format!(
                            "{}; multiplicities read from the eliminant",
                            r.note.unwrap_or_default()
                        ));
                    }
                    r
                }
            }
        }
    };
    record.instance = instance;
    record.seed = seed;
    if record.flagged {
        log::warn!("singular Hermite instance {instance} (seed {seed})");
    }
    Ok(record)
}

/// Random scheme in `degrees.len()` variables: multiplicities drawn so that
/// the condition count is exactly `Π n_i`, at distinct small rational knots.
pub fn random_hermite_scheme(degrees: &[u32], shape: ConditionShape, rng: &mut impl Rng) -> Result<HermiteScheme> {
    let d = degrees.len();
    let target = box_basis(degrees)?.dimension();
    let mut multiplicities = Vec::new();
    let mut remaining = target;
    while remaining > 0 {
        let feasible: Vec<u32> = (1..)
            .take_while(|&m| lower_set_size(d, m, shape) <= remaining)
            .collect();
        let m = feasible[rng.random_range(0..feasible.len())];
        remaining -= lower_set_size(d, m, shape);
        multiplicities.push(m);
    }
    let mut knots: Vec<Knot> = Vec::with_capacity(multiplicities.len());
    for m in multiplicities {
        loop {
            let point: Vec<Rational> = (0..d)
                .map(|_| ratio(rng.random_range(-4..=4), rng.random_range(1..=2)))
                .collect();
            if knots.iter().all(|k| k.point != point) {
                knots.push(Knot { point, multiplicity: m });
                break;
            }
        }
    }
    Ok(HermiteScheme::from_knots(KnotSet::new(d, knots)?, shape))
}

/// Per-instance seed; instances are independent of each other and of thread scheduling.
fn instance_seed(seed: u64, instance: u64) -> u64 {
    seed ^ instance.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `count` random schemes checked in parallel, returned in instance order.
pub fn conjecture_batch(
    degrees: &[u32],
    count: u64,
    seed: u64,
    shape: ConditionShape,
) -> Result<Vec<ExperimentRecord>> {
    box_basis(degrees)?;
    (0..count)
        .into_par_iter()
        .map(|instance| {
            let s = instance_seed(seed, instance);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let scheme = random_hermite_scheme(degrees, shape, &mut rng)?;
            hermite_conjecture_check(&SchemeSource::Explicit(scheme), degrees, instance, s)
        })
        .collect()
}

/// JSON lines, one record per line, in the given order.
pub fn log_lines(records: &[ExperimentRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Appends the records to `path` as JSON lines.
pub fn write_log(records: &[ExperimentRecord], path: &Path) -> Result<()> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let mut f = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(io)?;
    f.write_all(log_lines(records).as_bytes()).map_err(io)
}
