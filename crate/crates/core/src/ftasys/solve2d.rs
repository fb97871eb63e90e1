//! Two-variable solver: generic linear change of coordinates, resultant
//! elimination, univariate roots of the eliminant, back-substitution on each
//! fiber, residual verification and exact certification of rational points.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{eig_complex, RationalMatrix};
use crate::multipoly::{AffineMap, Polynomial};
use crate::rational::{rationalize, Rational};

use super::resultant::resultant_eliminate;
use super::univariate::{refined_roots, squarefree_decomposition, UniPoly};
use super::{cluster, same_point, AlgebraicSystem, Solution, SolutionSet};

/// Clustering and residual tolerance for numeric solutions.
pub const DEFAULT_TOL: f64 = 1e-6;

const MAX_ATTEMPTS: usize = 5;
const NEWTON_STEPS: usize = 4;
// A second point over the same fiber counts as a collision when its
// residual is below the floor or within the gap factor of the best one.
const FIBER_FLOOR: f64 = 1e-10;
const FIBER_GAP: f64 = 1e4;
const DENOMINATOR_BOUNDS: [u64; 6] = [10, 100, 1_000, 10_000, 100_000, 1_000_000];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: DEFAULT_TOL,
            seed: 0,
        }
    }
}

/// Random integer 2×2 matrix with entries in [-100, 100] and nonzero determinant.
fn random_change(rng: &mut ChaCha8Rng) -> RationalMatrix {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.random_range(-50..=50)).collect();
        if e[0] * e[3] - e[1] * e[2] != 0 {
            return RationalMatrix::from_i64_rows(&[&e[0..2], &e[2..4]]).expect("2x2");
        }
    }
}

/// Roots of a complex polynomial (ascending coefficients, nonzero leading
/// coefficient). The complex companion matrix is embedded as a real matrix of
/// twice the size, so the output also contains the conjugate of every root;
/// callers filter candidates by residual.
fn complex_root_candidates(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let mut c = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        c[(i, n - 1)] = -monic[i];
    }
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            real[(i, j)] = c[(i, j)].re;
            real[(i + n, j + n)] = c[(i, j)].re;
            real[(i, j + n)] = -c[(i, j)].im;
            real[(i + n, j)] = c[(i, j)].im;
        }
    }
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a);
    let deval = |z: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::zero(), |acc, (k, a)| acc * z + a * k as f64)
    };
    Ok(eig_complex(&real)?
        .iter()
        .map(|&z| {
            let d = deval(z);
            if d.norm() > 0.0 {
                let z1 = z - eval(z) / d;
                if z1.re.is_finite() && z1.im.is_finite() && eval(z1).norm() <= eval(z).norm() {
                    return z1;
                }
            }
            z
        })
        .collect())
}

fn jacobian(system: &AlgebraicSystem) -> [[Polynomial; 2]; 2] {
    let e = system.equations();
    let d = |i: usize, v: usize| e[i].derivative(v, 1).expect("two variables");
    [[d(0, 0), d(0, 1)], [d(1, 0), d(1, 1)]]
}

/// Newton iteration on a two-variable system; steps are kept only while they
/// reduce the residual, so singular solutions are left where they are.
fn polish(system: &AlgebraicSystem, jac: &[[Polynomial; 2]; 2], mut x: Vec<Complex64>) -> Vec<Complex64> {
    let eqs = system.equations();
    let Ok(mut res) = system.residual(&x) else {
        return x;
    };
    for _ in 0..NEWTON_STEPS {
        if res == 0.0 {
            break;
        }
        let f: Vec<Complex64> = eqs.iter().map(|e| e.evaluate_complex(&x).unwrap_or_default()).collect();
        let j = |r: usize, c: usize| jac[r][c].evaluate_complex(&x).unwrap_or_default();
        let (a, b, c, d) = (j(0, 0), j(0, 1), j(1, 0), j(1, 1));
        let det = a * d - b * c;
        let scale = (a.norm() + b.norm()) * (c.norm() + d.norm());
        if det.norm() <= 1e-12 * scale || det.norm() == 0.0 {
            break;
        }
        let dx = (d * f[0] - b * f[1]) / det;
        let dy = (a * f[1] - c * f[0]) / det;
        let cand = vec![x[0] - dx, x[1] - dy];
        match system.residual(&cand) {
            Ok(r) if r < res => {
                x = cand;
                res = r;
            }
            _ => break,
        }
    }
    x
}

/// Rational point within rounding distance of `x` on which every equation
/// vanishes exactly, if one with a small denominator exists.
pub(crate) fn certify_rational_point(system: &AlgebraicSystem, x: &[Complex64]) -> Option<Vec<Rational>> {
    let scale = 1.0 + x.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    if x.iter().any(|z| z.im.abs() > 1e-6 * scale) {
        return None;
    }
    DENOMINATOR_BOUNDS.iter().find_map(|&bound| {
        let q: Option<Vec<Rational>> = x.iter().map(|z| rationalize(z.re, bound)).collect();
        let q = q?;
        system.vanishes_exactly(&q).ok()?.then_some(q)
    })
}

enum Attempt {
    Done(SolutionSet),
    Degenerate,
    Residual { residual: f64 },
}

/// Solves a system in two variables. See the module documentation for the
/// pipeline; `opts.seed` fixes the coordinate changes and `opts.tol` is both
/// the clustering distance and the relative residual bound.
pub fn solve_2d(system: &AlgebraicSystem, opts: &SolveOptions) -> Result<SolutionSet> {
    if system.nvars() != 2 {
        return Err(Error::UnsupportedDimension {
            nvars: system.nvars(),
            supported: "exactly 2",
        });
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidSystem("tolerance must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let jac = jacobian(system);
    let mut worst = None;
    for attempt in 0..MAX_ATTEMPTS {
        let change = random_change(&mut rng);
        match solve_attempt(system, &change, &jac, opts.tol)? {
            Attempt::Done(mut set) => {
                if attempt > 0 {
                    set.notes.push(format!("coordinate change retried {attempt} time(s)"));
                }
                return Ok(set);
            }
            Attempt::Degenerate => log::debug!("solve_2d: degenerate coordinate change on attempt {attempt}"),
            Attempt::Residual { residual } => {
                log::debug!("solve_2d: residual {residual:e} on attempt {attempt}");
                worst = Some(residual);
            }
        }
    }
    match worst {
        Some(residual) => Err(Error::ResidualCheck {
            index: 0,
            residual,
            tol: opts.tol,
        }),
        None => Err(Error::Degenerate { attempts: MAX_ATTEMPTS }),
    }
}

fn solve_attempt(
    system: &AlgebraicSystem,
    change: &RationalMatrix,
    jac: &[[Polynomial; 2]; 2],
    tol: f64,
) -> Result<Attempt> {
    let map = AffineMap::linear(change.clone())?;
    let moved: Vec<Polynomial> = system
        .equations()
        .iter()
        .map(|e| e.compose_affine(&map))
        .collect::<Result<_>>()?;

    // Leading coefficients in v must be nonzero constants: then no solution
    // escapes to infinity along the projection and the resultant vanishes
    // identically only for a shared component.
    if !leading_coefficients_constant(&moved, system.degrees()) {
        return Ok(Attempt::Degenerate);
    }

    let moved_system = AlgebraicSystem::new(moved.clone())?;
    let moved_jac = jacobian(&moved_system);
    let eliminant = resultant_eliminate(&moved[0], &moved[1], 1)?;
    let mut set = SolutionSet {
        nvars: 2,
        ..SolutionSet::default()
    };
    if eliminant.is_zero() {
        set.positive_dimensional = true;
        set.notes
            .push("eliminant vanishes identically: the equations share a component".into());
        return Ok(Attempt::Done(set));
    }
    let eliminant = UniPoly::from_polynomial(&eliminant)?;

    let fibers: Vec<Vec<Polynomial>> = moved.iter().map(|p| p.coefficients_in(1)).collect();
    let pick = if fibers[0].len() <= fibers[1].len() { 0 } else { 1 };

    let mut found = Vec::new();
    for (factor, mult) in squarefree_decomposition(&eliminant) {
        for u in refined_roots(&factor)? {
            let coeffs: Vec<Complex64> = fibers[pick]
                .iter()
                .map(|c| c.evaluate_complex(&[u, Complex64::zero()]))
                .collect::<Result<_>>()?;
            // Candidates are polished in the moved coordinates; those that
            // stay over u are ranked by residual. An empty or poor fiber means
            // numerical trouble; a second point with a residual comparable to
            // the best means the projection is not injective. Both call for a
            // new change.
            let mut ranked: Vec<(f64, Vec<Complex64>)> = Vec::new();
            for v in complex_root_candidates(&coeffs)? {
                let w = polish(&moved_system, &moved_jac, vec![u, v]);
                let r = moved_system.residual(&w)?;
                let on_fiber = same_point(&[w[0]], &[u], tol);
                if on_fiber && !ranked.iter().any(|(_, c)| same_point(c, &w, tol)) {
                    ranked.push((r, w));
                }
            }
            ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
            let Some((best, w)) = ranked.first() else {
                return Ok(Attempt::Degenerate);
            };
            let ambiguous = ranked[1..]
                .iter()
                .any(|(r, _)| *r < FIBER_FLOOR || *r < best * FIBER_GAP);
            if *best >= tol || ambiguous {
                return Ok(Attempt::Degenerate);
            }
            let x: Vec<Complex64> = map.apply_complex(w);
            found.push(Solution {
                point: polish(system, jac, x),
                exact: None,
                multiplicity: mult,
            });
        }
    }

    let mut worst: f64 = 0.0;
    for s in &found {
        worst = worst.max(system.residual(&s.point)?);
    }
    if worst >= tol {
        return Ok(Attempt::Residual { residual: worst });
    }

    let mut solutions = cluster(found, tol);
    for s in &mut solutions {
        if let Some(q) = certify_rational_point(system, &s.point) {
            *s = Solution::exact(q, s.multiplicity);
        }
    }
    solutions.sort_by(|a, b| {
        let key = |s: &Solution| (s.point[0].re, s.point[1].re, s.point[0].im, s.point[1].im);
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
            .then(ka.3.total_cmp(&kb.3))
    });
    if solutions.iter().any(|s| s.multiplicity > 1) {
        set.notes
            .push("multiplicities read from eliminant root multiplicities after a generic coordinate change".into());
    }
    set.solutions = solutions;
    Ok(Attempt::Done(set))
}

/// Detects a shared component: after a generic change of coordinates with
/// constant leading coefficients in the eliminated variable, the resultant
/// vanishes identically exactly when the equations share a factor.
pub(crate) fn shares_component(system: &AlgebraicSystem, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let map = AffineMap::linear(random_change(&mut rng))?;
        let moved: Vec<Polynomial> = system
            .equations()
            .iter()
            .map(|e| e.compose_affine(&map))
            .collect::<Result<_>>()?;
        if !leading_coefficients_constant(&moved, system.degrees()) {
            continue;
        }
        return Ok(resultant_eliminate(&moved[0], &moved[1], 1)?.is_zero());
    }
    Err(Error::Degenerate { attempts: MAX_ATTEMPTS })
}

fn leading_coefficients_constant(moved: &[Polynomial], degrees: &[u32]) -> bool {
    moved.iter().zip(degrees).all(|(p, &n)| {
        let coeffs = p.coefficients_in(1);
        coeffs.len() == n as usize + 1 && coeffs[n as usize].is_constant()
    })
}
