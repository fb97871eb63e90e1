//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Polynomial`] is a map from [`ExponentVector`] to a nonzero rational.
//! Terms are kept in graded lexicographic order (total degree first, then
//! the exponent vectors compared lexicographically, so `y < x` and
//! `y² < xy < x²`). This is also the column order of every monomial basis
//! built elsewhere in the crate.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::RationalMatrix;
use crate::rational::{format_rational, parse_rational, to_f64, Rational};

/// Exponents of one monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::NoVariables);
        }
        Ok(ExponentVector(exps))
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self >= other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `x^self` at a rational point.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .fold(Rational::one(), |acc, (&e, xi)| {
                acc * num_traits::pow(xi.clone(), e as usize)
            })
    }

    pub fn evaluate_complex(&self, x: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(x)
            .fold(Complex64::one(), |acc, (&e, xi)| acc * xi.powu(e))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Total degree and per-variable degrees of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub total: u32,
    pub coordinate: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zero(nvars), c);
        p
    }

    /// The coordinate function `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, var), Rational::one())
    }

    pub fn monomial(exps: ExponentVector, c: Rational) -> Self {
        let mut p = Self::zero(exps.nvars());
        p.add_term(exps, c);
        p
    }

    /// Builds a polynomial from terms, summing repeated exponent vectors.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(ExponentVector(exps), c);
        }
        Ok(p)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_univariate(coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(ExponentVector(vec![k as u32]), c.clone());
        }
        p
    }

    fn add_term(&mut self, exps: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &ExponentVector) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExponentVector::zero(self.nvars))
    }

    fn check_point_len(&self, len: usize) -> Result<()> {
        if len != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: len,
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    /// Exact value at a rational point. Powers of each coordinate are cached
    /// up to the largest exponent that occurs.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.check_point_len(x.len())?;
        let powers: Vec<Vec<Rational>> = (0..self.nvars)
            .map(|i| {
                let top = self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0) as usize;
                let mut pw = Vec::with_capacity(top + 1);
                pw.push(Rational::one());
                for k in 1..=top {
                    let next = &pw[k - 1] * &x[i];
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t *= &powers[i][k as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn evaluate_complex(&self, x: &[Complex64]) -> Result<Complex64> {
        self.check_point_len(x.len())?;
        Ok(self.terms.iter().map(|(e, c)| e.evaluate_complex(x) * to_f64(c)).sum())
    }

    /// `Σ |c_α| Π max(1, |x_j|)^{α_j}`: the rounding scale of
    /// [`Polynomial::evaluate_complex`], floored so that it stays bounded
    /// below near the origin.
    pub fn absolute_scale(&self, x: &[Complex64]) -> Result<f64> {
        self.check_point_len(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e
                    .exps()
                    .iter()
                    .zip(x)
                    .map(|(&a, z)| z.norm().max(1.0).powi(a as i32))
                    .product();
                m * to_f64(c).abs()
            })
            .sum())
    }

    /// `|p(x)| / absolute_scale(x)`: invariant under scaling `p`, zero exactly at roots.
    pub fn relative_residual(&self, x: &[Complex64]) -> Result<f64> {
        let value = self.evaluate_complex(x)?.norm();
        let scale = self.absolute_scale(x)?;
        Ok(if scale == 0.0 { value } else { value / scale })
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `order`-fold partial derivative in `var`.
    pub fn derivative(&self, var: usize, order: u32) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange { var, nvars: self.nvars });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k < order {
                continue;
            }
            // falling factorial k (k-1) ... (k-order+1)
            let ff: u64 = (0..order).map(|j| u64::from(k - j)).product();
            let mut ne = e.clone();
            ne.0[var] -= order;
            out.add_term(ne, c * Rational::from_integer(ff.into()));
        }
        Ok(out)
    }

    /// Mixed partial derivative `D^β`.
    pub fn derivative_multi(&self, beta: &ExponentVector) -> Result<Polynomial> {
        self.check_point_len(beta.nvars())?;
        let mut out = self.clone();
        for (var, &order) in beta.0.iter().enumerate() {
            if order > 0 {
                out = out.derivative(var, order)?;
            }
        }
        Ok(out)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(ExponentVector::total_degree)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[var]).max()
    }

    pub fn degree_profile(&self) -> Result<DegreeProfile> {
        let total = self.total_degree().ok_or(Error::ZeroPolynomialDegree)?;
        let coordinate = (0..self.nvars).map(|i| self.degree_in(i).unwrap_or(0)).collect();
        Ok(DegreeProfile { total, coordinate })
    }

    /// Product of polynomials of total degree at most one; the empty product is 1.
    pub fn product_of_linear(nvars: usize, factors: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = Polynomial::one(nvars);
        for (index, f) in factors.iter().enumerate() {
            acc.check_same(f)?;
            let degree = f.total_degree().unwrap_or(0);
            if degree > 1 {
                return Err(Error::NotLinear { index, degree });
            }
            acc = &acc * f;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`. All images share one
    /// variable count, which becomes the result's.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        self.check_point_len(images.len())?;
        let target = images.first().map(Polynomial::nvars).unwrap_or(self.nvars);
        for img in images {
            if img.nvars != target {
                return Err(Error::DimensionMismatch {
                    expected: target,
                    found: img.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// `p(Ax + b)`.
    pub fn compose_affine(&self, map: &AffineMap) -> Result<Polynomial> {
        self.check_point_len(map.dim())?;
        let d = map.dim();
        let images: Vec<Polynomial> = (0..d)
            .map(|i| {
                let mut img = Polynomial::constant(d, map.offset[i].clone());
                for j in 0..d {
                    img.add_term(ExponentVector::unit(d, j), map.matrix.get(i, j).clone());
                }
                img
            })
            .collect();
        self.compose(&images)
    }

    /// Coefficients of `p` as a polynomial in `var`: entry `k` multiplies
    /// `x_var^k` and no longer involves `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let top = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); top + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let k = e.0[var] as usize;
            let mut ne = e.clone();
            ne.0[var] = 0;
            out[k].add_term(ne, c.clone());
        }
        out
    }

    /// Drops variable `var`, which must not occur.
    pub fn drop_variable(&self, var: usize) -> Polynomial {
        debug_assert!(self.degree_in(var).unwrap_or(0) == 0);
        let mut out = Polynomial::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut ne = e.0.clone();
            ne.remove(var);
            out.add_term(ExponentVector(ne), c.clone());
        }
        out
    }

    /// Ascending dense coefficients of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.nvars != 1 {
            return Err(Error::UnsupportedDimension {
                nvars: self.nvars,
                supported: "exactly 1",
            });
        }
        let top = self.degree_in(0).unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { top + 1 }];
        for (e, c) in &self.terms {
            out[e.0[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| TermJson {
                    exps: e.0.clone(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    /// Validating load: rejects duplicate exponent vectors and explicit zeros are dropped.
    pub fn from_json(json: &PolynomialJson) -> Result<Polynomial> {
        if json.nvars == 0 {
            return Err(Error::NoVariables);
        }
        let mut p = Polynomial::zero(json.nvars);
        let mut seen = std::collections::HashSet::new();
        for (i, t) in json.terms.iter().enumerate() {
            if t.exps.len() != json.nvars {
                return Err(Error::parse(
                    format!("terms[{i}].exps"),
                    format!("expected {} exponents, found {}", json.nvars, t.exps.len()),
                ));
            }
            if !seen.insert(t.exps.clone()) {
                return Err(Error::DuplicateExponent(t.exps.clone()));
            }
            let c = parse_rational(&t.coeff).map_err(|e| Error::parse(format!("terms[{i}].coeff"), e.to_string()))?;
            p.add_term(ExponentVector(t.exps.clone()), c);
        }
        Ok(p)
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    if nvars <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{i}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(if mag.is_integer() {
                    mag.to_string()
                } else {
                    format!("({mag})")
                });
            }
            for (i, &p) in e.0.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, i)),
                    _ => factors.push(format!("{}^{}", var_name(self.nvars, i), p)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

// Operator forms panic on mismatched variable counts; the `checked_*`
// methods report it as an error instead.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

/// `x ↦ Ax + b` on rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    matrix: RationalMatrix,
    offset: Vec<Rational>,
}

impl AffineMap {
    pub fn new(matrix: RationalMatrix, offset: Vec<Rational>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if offset.len() != matrix.rows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: offset.len(),
            });
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn linear(matrix: RationalMatrix) -> Result<Self> {
        let n = matrix.rows();
        Self::new(matrix, vec![Rational::zero(); n])
    }

    pub fn identity(d: usize) -> Self {
        AffineMap {
            matrix: RationalMatrix::identity(d),
            offset: vec![Rational::zero(); d],
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let mut y = self.matrix.mul_vec(x)?;
        for (yi, bi) in y.iter_mut().zip(&self.offset) {
            *yi += bi;
        }
        Ok(y)
    }

    pub fn apply_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| x[j] * to_f64(self.matrix.get(i, j)))
                    .sum::<Complex64>()
                    + to_f64(&self.offset[i])
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        !self.matrix.det_exact().map(|d| d.is_zero()).unwrap_or(true)
    }

    /// `y ↦ A⁻¹(y − b)`.
    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.matrix.inverse()?;
        let offset = inv.mul_vec(&self.offset)?.into_iter().map(|v| -v).collect();
        Ok(AffineMap { matrix: inv, offset })
    }
}

/// Wire form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::constant(2, int(n))
    }

    #[test]
    fn evaluate_examples() {
        let p = &(&c(2) * &(&(&x() * &x()) * &y())) + &c(3);
        assert_eq!(p.evaluate(&[int(1), int(2)]).unwrap(), int(7));
        let q = &x() - &y();
        assert_eq!(q.evaluate(&[ratio(3, 7), ratio(3, 7)]).unwrap(), int(0));
        let r = &(&(&x() * &x()) * &y()) + &c(3);
        assert_eq!(r.evaluate(&[int(0), int(5)]).unwrap(), int(3));
        assert!(matches!(r.evaluate(&[int(0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn add_examples() {
        let p = &x() + &c(1);
        assert_eq!(&p + &Polynomial::zero(2), p);
        assert!((&x() + &(-&x())).is_zero());
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&int(2)));
        assert!(x().checked_add(&Polynomial::var(3, 0)).is_err());
    }

    #[test]
    fn mul_examples() {
        let lhs = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(lhs, &(&x() * &x()) - &(&y() * &y()));
        let p = &x() + &c(5);
        assert_eq!(&p * &c(1), p);
        let sq = (&x() + &c(1)).pow(2);
        assert_eq!(sq, &(&(&x() * &x()) + &x().scale(&int(2))) + &c(1));
        assert!(x().checked_mul(&Polynomial::var(1, 0)).is_err());
    }

    #[test]
    fn derivative_examples() {
        let x2y = &(&x() * &x()) * &y();
        assert_eq!(x2y.derivative(0, 1).unwrap(), (&x() * &y()).scale(&int(2)));
        assert!(c(7).derivative(1, 1).unwrap().is_zero());
        let x3 = Polynomial::var(1, 0).pow(3);
        assert_eq!(x3.derivative(0, 2).unwrap(), Polynomial::var(1, 0).scale(&int(6)));
        assert!(matches!(x3.derivative(1, 1), Err(Error::VariableOutOfRange { .. })));
        assert_eq!(x2y.derivative(0, 0).unwrap(), x2y);
    }

    #[test]
    fn degree_profile_examples() {
        let x2y = &(&x() * &x()) * &y();
        assert_eq!(
            x2y.degree_profile().unwrap(),
            DegreeProfile {
                total: 3,
                coordinate: vec![2, 1]
            }
        );
        assert_eq!(
            c(4).degree_profile().unwrap(),
            DegreeProfile {
                total: 0,
                coordinate: vec![0, 0]
            }
        );
        assert!(matches!(
            Polynomial::zero(2).degree_profile(),
            Err(Error::ZeroPolynomialDegree)
        ));
    }

    #[test]
    fn product_of_linear_examples() {
        let t = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let p = Polynomial::product_of_linear(1, &[t.clone(), &t - &one]).unwrap();
        assert_eq!(p, &(&t * &t) - &t);
        assert_eq!(Polynomial::product_of_linear(2, &[]).unwrap(), c(1));
        let p = Polynomial::product_of_linear(2, &[&(&x() + &y()) - &c(1), &x() - &y()]).unwrap();
        let expected = &(&(&(&x() * &x()) - &(&y() * &y())) - &x()) + &y();
        assert_eq!(p, expected);
        assert!(matches!(
            Polynomial::product_of_linear(2, &[&x() * &y()]),
            Err(Error::NotLinear { index: 0, degree: 2 })
        ));
    }

    #[test]
    fn compose_affine_examples() {
        let t = Polynomial::var(1, 0);
        let map = AffineMap::new(RationalMatrix::from_rows(vec![vec![int(2)]]).unwrap(), vec![int(1)]).unwrap();
        let got = (&t * &t).compose_affine(&map).unwrap();
        let expected = Polynomial::from_univariate(&[int(1), int(4), int(4)]);
        assert_eq!(got, expected);

        let p = &(&x() * &y()) + &c(3);
        assert_eq!(p.compose_affine(&AffineMap::identity(2)).unwrap(), p);

        let swap =
            AffineMap::linear(RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap())
                .unwrap();
        let xy = &x() * &y();
        assert_eq!(xy.compose_affine(&swap).unwrap(), xy);
        assert!(xy.compose_affine(&AffineMap::identity(3)).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let mut v: Vec<ExponentVector> = vec![
            vec![1, 1].into(),
            vec![0, 1].into(),
            vec![1, 0].into(),
            vec![0, 0].into(),
            vec![2, 0].into(),
        ];
        v.sort();
        let got: Vec<Vec<u32>> = v.iter().map(|e| e.exps().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn display_is_descending() {
        let p = &(&(&x() * &x()).scale(&int(2)) - &y()) + &c(3);
        assert_eq!(p.to_string(), "2*x^2 - y + 3");
        assert_eq!(Polynomial::zero(1).to_string(), "0");
    }

    #[test]
    fn json_rejects_duplicates() {
        let json: PolynomialJson =
            serde_json::from_str(r#"{"nvars":1,"terms":[{"exps":[1],"coeff":"1"},{"exps":[1],"coeff":"2"}]}"#).unwrap();
        assert!(matches!(Polynomial::from_json(&json), Err(Error::DuplicateExponent(_))));
    }

    #[test]
    fn coefficients_in_splits_by_power() {
        let p = &(&(&y() * &y()) * &x()) + &y();
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], c(1));
        assert_eq!(cs[2], x());
    }
}
