//! Dense univariate polynomials over the rationals and the root engine built
//! on them: exact square-free decomposition, companion-matrix eigenvalues,
//! one Newton step per root, and exact certification of rational roots.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactla::eig_complex;
use crate::multipoly::Polynomial;
use crate::rational::{denominator_lcm, rationalize, to_f64, Rational};

use super::{Solution, SolutionSet};

/// Ascending coefficients, no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        Ok(Self::new(p.univariate_coeffs()?))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_univariate(&self.0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lead().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Division known to be exact.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    /// Monic greatest common divisor (zero only if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn evaluate_complex(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, c| acc * z + to_f64(c))
    }

    /// Primitive integer multiple: coefficients integral with content 1.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = denominator_lcm(&self.0);
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

/// `p / gcd(p, p')`, monic. A constant input is returned unchanged.
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    let u = UniPoly::from_polynomial(p)?;
    if u.degree().unwrap_or(0) == 0 {
        return Ok(p.clone());
    }
    let g = u.gcd(&u.derivative());
    Ok(u.exact_div(&g).monic().to_polynomial())
}

/// Yun's square-free decomposition: monic `f_i` with `p = c ∏ f_i^i`,
/// returned as `(f_i, i)` for the nonconstant factors.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0);
    let mut d = dp.exact_div(&a0).sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = c.sub(&nb.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = nb;
        i += 1;
    }
    out
}

/// Companion matrix of a monic polynomial given in ascending coefficients.
pub fn companion_matrix(monic: &[f64]) -> DMatrix<f64> {
    let n = monic.len() - 1;
    let mut m = DMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -monic[i];
    }
    m
}

/// Numeric roots of a nonconstant polynomial: companion eigenvalues
/// followed by one Newton step.
pub(crate) fn numeric_roots(f: &UniPoly) -> Result<Vec<Complex64>> {
    let f = f.monic();
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let coeffs: Vec<f64> = f.coeffs().iter().map(to_f64).collect();
    let df = f.derivative();
    let eig = eig_complex(&companion_matrix(&coeffs))?;
    Ok(eig
        .iter()
        .map(|&z| {
            let d = df.evaluate_complex(z);
            if d.norm() > 0.0 {
                let step = f.evaluate_complex(z) / d;
                if step.re.is_finite() && step.im.is_finite() {
                    return z - step;
                }
            }
            z
        })
        .collect())
}

/// `p(z) / p'(z)` with `p` evaluated exactly at the binary value of `z`,
/// rounded once at the end. `None` when `p'(z)` vanishes.
fn exact_newton_ratio(ints: &[BigInt], z: Complex64) -> Option<Complex64> {
    let n = ints.len().checked_sub(1).filter(|&n| n > 0)?;
    // z = (a + bi) / 2^s exactly; the homogenized Horner sums below stay in
    // the integers, so no gcd is ever taken.
    let decode = |x: f64| {
        x.is_finite().then(|| {
            let (m, e, sign) = num_traits::Float::integer_decode(x);
            (BigInt::from(m) * sign, i64::from(e))
        })
    };
    let ((mr, er), (mi, ei)) = (decode(z.re)?, decode(z.im)?);
    let e = er.min(ei);
    let (mut a, mut b) = (mr << (er - e) as usize, mi << (ei - e) as usize);
    let s = if e >= 0 {
        a <<= e as usize;
        b <<= e as usize;
        0
    } else {
        (-e) as usize
    };
    let mul_w = |x: &(BigInt, BigInt)| (&x.0 * &a - &x.1 * &b, &x.0 * &b + &x.1 * &a);
    // p(z) = h / 2^{sn}, p'(z) = g / 2^{s(n-1)}
    let mut h = (ints[n].clone(), BigInt::zero());
    let mut g = (&ints[n] * n, BigInt::zero());
    for k in (0..n).rev() {
        let t = mul_w(&h);
        h = (t.0 + (&ints[k] << (s * (n - k))), t.1);
        if k >= 1 {
            let t = mul_w(&g);
            g = (t.0 + ((&ints[k] * k) << (s * (n - k))), t.1);
        }
    }
    let norm = (&g.0 * &g.0 + &g.1 * &g.1) << s;
    if norm.is_zero() {
        return None;
    }
    // p / p' = h · conj(g) / (|g|² 2^s)
    let re = &h.0 * &g.0 + &h.1 * &g.1;
    let im = &h.1 * &g.0 - &h.0 * &g.1;
    Some(Complex64::new(
        to_f64(&Rational::new_raw(re, norm.clone())),
        to_f64(&Rational::new_raw(im, norm)),
    ))
}

const ABERTH_MAX_ITERATIONS: usize = 80;

/// Roots of a square-free `f` to working precision: companion eigenvalues,
/// then Aberth–Ehrlich simultaneous iteration with exactly evaluated Newton
/// corrections. The simultaneous update keeps clustered roots apart, which a
/// per-root Newton step cannot.
pub(crate) fn refined_roots(f: &UniPoly) -> Result<Vec<Complex64>> {
    let mut z = numeric_roots(f)?;
    let n = z.len();
    if n == 0 {
        return Ok(z);
    }
    let ints = f.primitive_integer();
    // break conjugate symmetry so pairs may split onto the real axis
    for (k, zk) in z.iter_mut().enumerate() {
        *zk += Complex64::from_polar(1e-9 * (1.0 + zk.norm()), 0.5 + k as f64);
    }
    for _ in 0..ABERTH_MAX_ITERATIONS {
        let mut moved = false;
        for k in 0..n {
            let Some(ratio) = exact_newton_ratio(&ints, z[k]) else {
                continue;
            };
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .filter(|w| w.re.is_finite() && w.im.is_finite())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            if step.norm() > 4.0 * f64::EPSILON * (z[k].norm() + f64::MIN_POSITIVE) {
                moved = true;
            }
            z[k] -= step;
        }
        if !moved {
            break;
        }
    }
    Ok(z)
}

/// Tries to replace a numeric root of `f` by an exact rational one.
/// Candidate denominators are bounded by the leading coefficient of the
/// primitive integer form of `f` (rational root theorem); the candidate is
/// accepted only if `f` vanishes on it exactly.
fn certify_rational_root(f: &UniPoly, z: Complex64) -> Option<Rational> {
    let scale = 1.0 + z.norm();
    if z.im.abs() > 1e-6 * scale {
        return None;
    }
    let ints = f.primitive_integer();
    let lead = ints.last()?.abs();
    let max_den = lead.to_u64().unwrap_or(u64::MAX).max(1);
    let q = rationalize(z.re, max_den)?;
    f.evaluate(&q).is_zero().then_some(q)
}

/// Roots of a univariate polynomial with their exact multiplicities.
/// Multiplicities come from the exact square-free decomposition; each
/// square-free factor is solved through its companion matrix.
pub fn univariate_roots(p: &Polynomial) -> Result<SolutionSet> {
    if p.nvars() != 1 {
        return Err(Error::UnsupportedDimension {
            nvars: p.nvars(),
            supported: "exactly 1",
        });
    }
    let u = UniPoly::from_polynomial(p)?;
    if u.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut solutions = Vec::new();
    for (factor, mult) in squarefree_decomposition(&u) {
        for z in numeric_roots(&factor)? {
            let exact = certify_rational_root(&factor, z);
            let point = match &exact {
                Some(q) => Complex64::new(to_f64(q), 0.0),
                None => z,
            };
            solutions.push(Solution {
                point: vec![point],
                exact: exact.map(|q| vec![q]),
                multiplicity: mult,
            });
        }
    }
    solutions.sort_by(|a, b| {
        a.point[0]
            .re
            .total_cmp(&b.point[0].re)
            .then(a.point[0].im.total_cmp(&b.point[0].im))
    });
    Ok(SolutionSet {
        nvars: 1,
        solutions,
        positive_dimensional: false,
        notes: Vec::new(),
    })
}
