//! Monomial bases, Vandermonde and confluent (Hermite) matrices, poisedness
//! checks and exact Lagrange/Hermite interpolation.
//!
//! A knot set is *poised* for a basis when the interpolation problem has a
//! unique solution for every data vector, i.e. when the square Vandermonde
//! matrix (rows are knots, columns are basis monomials) is nonsingular.
//! Poisedness is always decided over the rationals; [`numeric_poisedness`]
//! exists only for floating-point knots coming out of the solver.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{rank_from_singular_values, singular_values_complex, RationalMatrix};
use crate::multipoly::{AffineMap, ExponentVector, Polynomial};
use crate::rational::{format_rational, parse_rational, Rational};

/// Ordered list of distinct monomials spanning an interpolation space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    monomials: Vec<ExponentVector>,
}

impl MonomialBasis {
    /// Sorts into graded order; duplicates are rejected.
    pub fn new(nvars: usize, mut monomials: Vec<ExponentVector>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        if let Some(bad) = monomials.iter().find(|m| m.nvars() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: bad.nvars(),
            });
        }
        monomials.sort();
        if let Some(w) = monomials.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateExponent(w[0].exps().to_vec()));
        }
        Ok(MonomialBasis { nvars, monomials })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[ExponentVector] {
        &self.monomials
    }

    pub fn contains(&self, e: &ExponentVector) -> bool {
        self.monomials.binary_search(e).is_ok()
    }

    /// `Σ coeffs[j] · monomial_j`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<Polynomial> {
        if coeffs.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: coeffs.len(),
            });
        }
        Polynomial::from_terms(
            self.nvars,
            self.monomials
                .iter()
                .zip(coeffs)
                .map(|(m, c)| (m.exps().to_vec(), c.clone())),
        )
    }

    /// Coordinates of `p` in this basis, or `None` if `p` is outside the span.
    pub fn coordinates(&self, p: &Polynomial) -> Option<Vec<Rational>> {
        if p.nvars() != self.nvars || p.terms().any(|(e, _)| !self.contains(e)) {
            return None;
        }
        Some(self.monomials.iter().map(|m| p.coeff(m)).collect())
    }
}

/// All `α` with `0 ≤ α_i ≤ n_i − 1`; dimension `Π n_i`.
pub fn box_basis(degrees: &[u32]) -> Result<MonomialBasis> {
    if degrees.is_empty() {
        return Err(Error::InvalidDegrees("empty degree sequence".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidDegrees("every degree must be at least 1".into()));
    }
    let mut monomials = vec![Vec::new()];
    for &n in degrees {
        monomials = monomials
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..n).map(move |a| {
                    let mut e = prefix.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    MonomialBasis::new(degrees.len(), monomials.into_iter().map(ExponentVector::from).collect())
}

/// All `α` with `|α| ≤ n`; dimension `C(n + d, d)`.
pub fn total_degree_basis(n: u32, d: usize) -> Result<MonomialBasis> {
    if d == 0 {
        return Err(Error::NoVariables);
    }
    MonomialBasis::new(d, simplex_exponents(d, n + 1))
}

/// Exponents with `|β| < bound`.
fn simplex_exponents(d: usize, bound: u32) -> Vec<ExponentVector> {
    if bound == 0 {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..bound - used).map(move |a| {
                    let mut e = prefix.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    let mut v: Vec<ExponentVector> = out.into_iter().map(ExponentVector::from).collect();
    v.sort();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knot {
    pub point: Vec<Rational>,
    pub multiplicity: u32,
}

impl Knot {
    pub fn simple(point: Vec<Rational>) -> Self {
        Knot { point, multiplicity: 1 }
    }
}

/// Pairwise-distinct rational points, each with a multiplicity (Hermite order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotSet {
    nvars: usize,
    knots: Vec<Knot>,
}

impl KnotSet {
    pub fn new(nvars: usize, knots: Vec<Knot>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        for (index, k) in knots.iter().enumerate() {
            if k.point.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: k.point.len(),
                });
            }
            if k.multiplicity == 0 {
                return Err(Error::InvalidMultiplicity { index, multiplicity: 0 });
            }
        }
        let mut order: Vec<usize> = (0..knots.len()).collect();
        order.sort_by(|&a, &b| knots[a].point.cmp(&knots[b].point).then(a.cmp(&b)));
        if let Some(w) = order.windows(2).find(|w| knots[w[0]].point == knots[w[1]].point) {
            return Err(Error::DuplicateKnot {
                first: w[0],
                second: w[1],
            });
        }
        Ok(KnotSet { nvars, knots })
    }

    /// Multiplicity-one knots at the given points.
    pub fn from_points(nvars: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(nvars, points.into_iter().map(Knot::simple).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn points(&self) -> impl Iterator<Item = &[Rational]> {
        self.knots.iter().map(|k| k.point.as_slice())
    }

    /// Image of every knot under `map`, multiplicities kept.
    pub fn map_affine(&self, map: &AffineMap) -> Result<KnotSet> {
        let knots = self
            .knots
            .iter()
            .map(|k| {
                Ok(Knot {
                    point: map.apply(&k.point)?,
                    multiplicity: k.multiplicity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        KnotSet::new(self.nvars, knots)
    }

    pub fn to_json(&self) -> KnotSetJson {
        KnotSetJson {
            nvars: self.nvars,
            points: self
                .knots
                .iter()
                .map(|k| KnotJson {
                    coords: k.point.iter().map(format_rational).collect(),
                    multiplicity: (k.multiplicity != 1).then_some(k.multiplicity),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &KnotSetJson) -> Result<KnotSet> {
        let knots = json
            .points
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let point = k
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        parse_rational(c).map_err(|e| Error::parse(format!("points[{i}].coords[{j}]"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Knot {
                    point,
                    multiplicity: k.multiplicity.unwrap_or(1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        KnotSet::new(json.nvars, knots)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotSetJson {
    pub nvars: usize,
    pub points: Vec<KnotJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotJson {
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
}

/// How a knot of multiplicity `m` translates into derivative conditions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionShape {
    /// `D^β` for all `|β| < m`.
    #[default]
    TotalOrder,
    /// `D^β` for all `β` with every `β_j < m`.
    BoxOrder,
}

/// The derivative multi-indices a knot of multiplicity `m` imposes.
pub fn lower_set(nvars: usize, m: u32, shape: ConditionShape) -> Vec<ExponentVector> {
    match shape {
        ConditionShape::TotalOrder => simplex_exponents(nvars, m),
        ConditionShape::BoxOrder => box_basis(&vec![m; nvars]).map(|b| b.monomials).unwrap_or_default(),
    }
}

/// Number of conditions [`lower_set`] produces.
pub fn lower_set_size(nvars: usize, m: u32, shape: ConditionShape) -> usize {
    match shape {
        ConditionShape::TotalOrder => binomial(m as usize - 1 + nvars, nvars),
        ConditionShape::BoxOrder => (m as usize).pow(nvars as u32),
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn is_lower_set(set: &[ExponentVector]) -> bool {
    set.iter().all(|b| {
        (0..b.nvars()).all(|i| {
            if b.exps()[i] == 0 {
                return true;
            }
            let mut below = b.exps().to_vec();
            below[i] -= 1;
            set.contains(&ExponentVector::from(below))
        })
    })
}

/// Knots plus, per knot, the derivative functionals `D^β` applied there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteScheme {
    knots: KnotSet,
    conditions: Vec<Vec<ExponentVector>>,
}

impl HermiteScheme {
    /// Conditions derived from each knot's multiplicity.
    pub fn from_knots(knots: KnotSet, shape: ConditionShape) -> Self {
        let conditions = knots
            .knots()
            .iter()
            .map(|k| lower_set(knots.nvars(), k.multiplicity, shape))
            .collect();
        HermiteScheme { knots, conditions }
    }

    /// Explicit per-knot condition sets; each must be a nonempty lower set.
    pub fn with_conditions(knots: KnotSet, conditions: Vec<Vec<ExponentVector>>) -> Result<Self> {
        if conditions.len() != knots.len() {
            return Err(Error::DimensionMismatch {
                expected: knots.len(),
                found: conditions.len(),
            });
        }
        let mut sorted = Vec::with_capacity(conditions.len());
        for (index, mut set) in conditions.into_iter().enumerate() {
            if set.iter().any(|b| b.nvars() != knots.nvars()) {
                return Err(Error::InvalidConditions {
                    index,
                    reason: "multi-index length differs from the variable count".into(),
                });
            }
            set.sort();
            set.dedup();
            if set.is_empty() || !is_lower_set(&set) {
                return Err(Error::InvalidConditions {
                    index,
                    reason: "conditions must form a nonempty lower set".into(),
                });
            }
            sorted.push(set);
        }
        Ok(HermiteScheme {
            knots,
            conditions: sorted,
        })
    }

    pub fn knots(&self) -> &KnotSet {
        &self.knots
    }

    pub fn conditions(&self) -> &[Vec<ExponentVector>] {
        &self.conditions
    }

    pub fn condition_count(&self) -> usize {
        self.conditions.iter().map(Vec::len).sum()
    }
}

/// Exact verdict plus the determinant that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoisednessCertificate {
    pub poised: bool,
    pub det: Rational,
}

fn check_nvars(knots: usize, basis: usize) -> Result<()> {
    if knots != basis {
        return Err(Error::DimensionMismatch {
            expected: basis,
            found: knots,
        });
    }
    Ok(())
}

/// Entry `(k, j)` is basis monomial `j` at knot `k`.
pub fn vandermonde(knots: &KnotSet, basis: &MonomialBasis) -> Result<RationalMatrix> {
    check_nvars(knots.nvars(), basis.nvars())?;
    if let Some((index, k)) = knots.knots().iter().enumerate().find(|(_, k)| k.multiplicity > 1) {
        return Err(Error::MultiplicityPresent {
            index,
            multiplicity: k.multiplicity,
        });
    }
    let mut m = RationalMatrix::zeros(knots.len(), basis.dimension());
    for (i, p) in knots.points().enumerate() {
        for (j, mono) in basis.monomials().iter().enumerate() {
            m.set(i, j, mono.evaluate(p));
        }
    }
    Ok(m)
}

fn square_check(conditions: usize, basis: &MonomialBasis) -> Result<()> {
    if conditions != basis.dimension() {
        return Err(Error::SizeMismatch {
            conditions,
            basis: basis.dimension(),
        });
    }
    Ok(())
}

pub fn is_poised(knots: &KnotSet, basis: &MonomialBasis) -> Result<PoisednessCertificate> {
    square_check(knots.len(), basis)?;
    let det = vandermonde(knots, basis)?.det_exact()?;
    Ok(PoisednessCertificate {
        poised: !det.is_zero(),
        det,
    })
}

/// The unique element of `span(basis)` taking `values[k]` at knot `k`.
pub fn interpolate(knots: &KnotSet, values: &[Rational], basis: &MonomialBasis) -> Result<Polynomial> {
    square_check(knots.len(), basis)?;
    if values.len() != knots.len() {
        return Err(Error::DimensionMismatch {
            expected: knots.len(),
            found: values.len(),
        });
    }
    let v = vandermonde(knots, basis)?;
    let coeffs = v.solve_exact(values).map_err(singular_as_unpoised)?;
    basis.combine(&coeffs)
}

/// Cardinal polynomials `ℓ_k` with `ℓ_k(knot_j) = δ_kj`: the columns of `V⁻¹`.
pub fn fundamental_polynomials(knots: &KnotSet, basis: &MonomialBasis) -> Result<Vec<Polynomial>> {
    square_check(knots.len(), basis)?;
    let inv = vandermonde(knots, basis)?.inverse().map_err(singular_as_unpoised)?;
    (0..knots.len())
        .map(|k| {
            let col: Vec<Rational> = (0..basis.dimension()).map(|j| inv.get(j, k).clone()).collect();
            basis.combine(&col)
        })
        .collect()
}

fn singular_as_unpoised(e: Error) -> Error {
    match e {
        Error::Singular => Error::NotPoised,
        other => other,
    }
}

/// `D^β x^α` evaluated at `point`.
fn derivative_of_monomial(alpha: &ExponentVector, beta: &ExponentVector, point: &[Rational]) -> Rational {
    if !beta.divides(alpha) {
        return Rational::zero();
    }
    let mut coeff: u64 = 1;
    let mut rest = Vec::with_capacity(alpha.nvars());
    for (&a, &b) in alpha.exps().iter().zip(beta.exps()) {
        coeff *= (0..b).map(|j| u64::from(a - j)).product::<u64>();
        rest.push(a - b);
    }
    ExponentVector::from(rest).evaluate(point) * Rational::from_integer(coeff.into())
}

/// One row per condition `(knot, β)`, knots in input order and `β` in graded order.
pub fn hermite_matrix(scheme: &HermiteScheme, basis: &MonomialBasis) -> Result<RationalMatrix> {
    check_nvars(scheme.knots().nvars(), basis.nvars())?;
    square_check(scheme.condition_count(), basis)?;
    let mut m = RationalMatrix::zeros(scheme.condition_count(), basis.dimension());
    let mut row = 0;
    for (knot, betas) in scheme.knots().knots().iter().zip(scheme.conditions()) {
        for beta in betas {
            for (j, alpha) in basis.monomials().iter().enumerate() {
                m.set(row, j, derivative_of_monomial(alpha, beta, &knot.point));
            }
            row += 1;
        }
    }
    Ok(m)
}

pub fn is_hermite_poised(scheme: &HermiteScheme, basis: &MonomialBasis) -> Result<PoisednessCertificate> {
    let det = hermite_matrix(scheme, basis)?.det_exact()?;
    Ok(PoisednessCertificate {
        poised: !det.is_zero(),
        det,
    })
}

/// Values are listed in the row order of [`hermite_matrix`].
pub fn hermite_interpolate(scheme: &HermiteScheme, values: &[Rational], basis: &MonomialBasis) -> Result<Polynomial> {
    let m = hermite_matrix(scheme, basis)?;
    if values.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: values.len(),
        });
    }
    let coeffs = m.solve_exact(values).map_err(singular_as_unpoised)?;
    basis.combine(&coeffs)
}

/// Floating-point poisedness of complex points: the Vandermonde matrix has
/// full rank when its smallest singular value exceeds `tol_rel` times its largest.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoisedness {
    pub full_rank: bool,
    pub rank: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

pub fn numeric_poisedness(points: &[Vec<Complex64>], basis: &MonomialBasis, tol_rel: f64) -> Result<NumericPoisedness> {
    square_check(points.len(), basis)?;
    if let Some(p) = points.iter().find(|p| p.len() != basis.nvars()) {
        return Err(Error::DimensionMismatch {
            expected: basis.nvars(),
            found: p.len(),
        });
    }
    let m = DMatrix::from_fn(points.len(), basis.dimension(), |i, j| {
        basis.monomials()[j].evaluate_complex(&points[i])
    });
    let s = singular_values_complex(&m);
    let rank = rank_from_singular_values(&s, tol_rel);
    Ok(NumericPoisedness {
        full_rank: rank == basis.dimension(),
        rank,
        sigma_min: s.last().copied().unwrap_or(0.0),
        sigma_max: s.first().copied().unwrap_or(0.0),
    })
}
