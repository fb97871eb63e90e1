use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poise::exactla::{eig_complex, rank_numeric, RationalMatrix, DEFAULT_RANK_TOL};
use poise::ftasys::univariate::companion_matrix;
use poise::ftasys::{
    generate_grid_system, random_grid_coords, resultant_eliminate, solve_2d, univariate_roots, verify_maximality,
    AlgebraicSystem, PoisednessCheck, SolveOptions,
};
use poise::interp::{
    box_basis, hermite_matrix, interpolate, is_poised, total_degree_basis, vandermonde, ConditionShape, HermiteScheme,
    KnotSet, MonomialBasis,
};
use poise::multipoly::{AffineMap, ExponentVector, Polynomial};
use poise::rational::{int, ratio, Rational};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn polynomial(nvars: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), rational()), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(nvars, terms).unwrap())
}

fn nvars_and_polys(k: usize) -> impl Strategy<Value = (usize, Vec<Polynomial>, Vec<Rational>)> {
    (1usize..=3).prop_flat_map(move |d| {
        (
            Just(d),
            prop::collection::vec(polynomial(d, 8, 3), k),
            prop::collection::vec(rational(), d),
        )
    })
}

fn invertible_map(d: usize) -> impl Strategy<Value = AffineMap> {
    (
        prop::collection::vec(rational(), d * d),
        prop::collection::vec(rational(), d),
    )
        .prop_filter_map("singular", move |(m, b)| {
            let m = RationalMatrix::new(d, d, m).unwrap();
            AffineMap::new(m, b).ok().filter(AffineMap::is_invertible)
        })
}

fn distinct_points(d: usize, n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::btree_set(prop::collection::vec(lo..=hi, d), n)
        .prop_map(|s| s.into_iter().map(|p| p.into_iter().map(int).collect()).collect())
}

/// `Π_{j<k} (x_k − x_j)`.
fn univariate_vandermonde(xs: &[Rational]) -> Rational {
    let mut v = Rational::one();
    for k in 0..xs.len() {
        for j in 0..k {
            v *= &xs[k] - &xs[j];
        }
    }
    v
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn evaluation_is_multiplicative((_, ps, x) in nvars_and_polys(2)) {
        let prod = &ps[0] * &ps[1];
        prop_assert_eq!(prod.evaluate(&x).unwrap(), ps[0].evaluate(&x).unwrap() * ps[1].evaluate(&x).unwrap());
    }

    #[test]
    fn degrees_add_under_multiplication((_, ps, _) in nvars_and_polys(2)) {
        prop_assume!(!ps[0].is_zero() && !ps[1].is_zero());
        let prod = &ps[0] * &ps[1];
        prop_assert_eq!(
            prod.total_degree().unwrap(),
            ps[0].total_degree().unwrap() + ps[1].total_degree().unwrap()
        );
    }

    #[test]
    fn addition_commutes_and_associates((_, ps, _) in nvars_and_polys(3)) {
        let (p, q, r) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(p + q, q + p);
        prop_assert_eq!(&(p + q) + r, p + &(q + r));
    }

    #[test]
    fn affine_composition_inverts(
        (p, map) in (1usize..=3).prop_flat_map(|d| (polynomial(d, 8, 3), invertible_map(d)))
    ) {
        let back = p.compose_affine(&map).unwrap().compose_affine(&map.inverse().unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn mixed_partials_commute(p in polynomial(2, 8, 4)) {
        let xy = p.derivative(0, 1).unwrap().derivative(1, 1).unwrap();
        let yx = p.derivative(1, 1).unwrap().derivative(0, 1).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn row_permutation_flips_determinant_by_parity(
        entries in prop::collection::vec(rational(), 16),
        perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let m = RationalMatrix::new(4, 4, entries).unwrap();
        let rows = m.to_rows();
        let permuted = RationalMatrix::from_rows(perm.iter().map(|&i| rows[i].clone()).collect()).unwrap();
        let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let det = m.det_exact().unwrap();
        let expected = if inversions % 2 == 0 { det } else { -det };
        prop_assert_eq!(permuted.det_exact().unwrap(), expected);
    }

    #[test]
    fn solve_reproduces_right_hand_side(
        (n, entries, b) in (1usize..=5).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec(rational(), n * n),
            prop::collection::vec(rational(), n),
        ))
    ) {
        let m = RationalMatrix::new(n, n, entries).unwrap();
        prop_assume!(!m.det_exact().unwrap().is_zero());
        let x = m.solve_exact(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn exact_and_numeric_rank_agree(
        (r, c, entries, copies) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| (
            Just(r),
            Just(c),
            prop::collection::vec(-9i64..=9, r * c),
            prop::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..=3),
        ))
    ) {
        let mut rows: Vec<Vec<Rational>> = entries.chunks(c).map(|row| row.iter().map(|&v| int(v)).collect()).collect();
        // copied or negated rows make rank deficiency common
        for (from, to, negate) in copies {
            let (from, to) = (from % r, to % r);
            rows[to] = rows[from].iter().map(|v| if negate { -v } else { v.clone() }).collect();
        }
        let m = RationalMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(m.rank_exact(), rank_numeric(&m.to_f64(), DEFAULT_RANK_TOL));
    }

    #[test]
    fn companion_eigenvalues_reexpand_to_the_polynomial(roots in prop::collection::vec(-5i64..=5, 1..=10)) {
        let n = roots.len();
        // monic coefficients, ascending
        let mut coeffs = vec![1.0f64];
        for &r in &roots {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r as f64;
            }
            coeffs = next;
        }
        let eig = eig_complex(&companion_matrix(&coeffs)).unwrap();
        prop_assert_eq!(eig.len(), n);
        let mut expanded = vec![Complex64::new(1.0, 0.0)];
        for &lambda in eig.iter() {
            let mut next = vec![Complex64::zero(); expanded.len() + 1];
            for (k, c) in expanded.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * lambda;
            }
            expanded = next;
        }
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        for (c, e) in coeffs.iter().zip(&expanded) {
            prop_assert!((Complex64::new(*c, 0.0) - e).norm() <= 1e-8 * scale, "{c} vs {e}");
        }
    }
}

fn random_basis(d: usize, box_kind: bool, sizes: &[u32]) -> MonomialBasis {
    if box_kind {
        box_basis(&sizes[..d]).unwrap()
    } else {
        total_degree_basis(sizes[0], d).unwrap()
    }
}

fn poised_instance() -> impl Strategy<Value = (KnotSet, MonomialBasis)> {
    (1usize..=3, any::<bool>(), prop::collection::vec(1u32..=3, 3))
        .prop_filter("dimension at most 20", |(d, b, s)| {
            random_basis(*d, *b, s).dimension() <= 20
        })
        .prop_flat_map(|(d, b, s)| {
            let basis = random_basis(d, b, &s);
            let n = basis.dimension();
            (distinct_points(d, n, -6, 6), Just(basis))
        })
        .prop_filter_map("not poised", |(points, basis)| {
            let knots = KnotSet::from_points(basis.nvars(), points).unwrap();
            is_poised(&knots, &basis).unwrap().poised.then_some((knots, basis))
        })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn interpolation_is_idempotent(
        ((knots, basis), values) in (poised_instance(), prop::collection::vec(rational(), 20))
    ) {
        let p = interpolate(&knots, &values[..knots.len()], &basis).unwrap();
        let again: Vec<Rational> = knots.points().map(|x| p.evaluate(x).unwrap()).collect();
        prop_assert_eq!(interpolate(&knots, &again, &basis).unwrap(), p);
    }

    #[test]
    fn interpolation_reproduces_the_span(
        ((knots, basis), coeffs) in (poised_instance(), prop::collection::vec(rational(), 20))
    ) {
        let p = basis.combine(&coeffs[..basis.dimension()]).unwrap();
        let values: Vec<Rational> = knots.points().map(|x| p.evaluate(x).unwrap()).collect();
        prop_assert_eq!(interpolate(&knots, &values, &basis).unwrap(), p);
    }

    #[test]
    fn tensor_grids_are_poised_with_kronecker_determinant(
        axes in prop::collection::vec((1usize..=4).prop_flat_map(|n| prop::collection::btree_set(-8i64..=8, n)), 1..=2)
    ) {
        let axes: Vec<Vec<Rational>> = axes.into_iter().map(|s| s.into_iter().map(int).collect()).collect();
        let degrees: Vec<u32> = axes.iter().map(|a| a.len() as u32).collect();
        let (_, solutions) = generate_grid_system(&axes, None).unwrap();
        let knots = KnotSet::from_points(axes.len(), solutions.exact_points().unwrap()).unwrap();
        let cert = is_poised(&knots, &box_basis(&degrees).unwrap()).unwrap();
        prop_assert!(cert.poised);
        let total: usize = axes.iter().map(Vec::len).product();
        let expected = axes.iter().fold(Rational::one(), |acc, a| {
            acc * num_traits::pow(univariate_vandermonde(a).abs(), total / a.len())
        });
        prop_assert_eq!(cert.det.abs(), expected);
    }

    #[test]
    fn total_degree_verdict_is_affine_invariant(
        (degree, points, map) in (1u32..=2).prop_flat_map(|n| {
            let count = if n == 1 { 3 } else { 6 };
            (Just(n), distinct_points(2, count, -2, 2), invertible_map(2))
        })
    ) {
        let basis = total_degree_basis(degree, 2).unwrap();
        let knots = KnotSet::from_points(2, points).unwrap();
        let moved = knots.map_affine(&map).unwrap();
        prop_assert_eq!(is_poised(&knots, &basis).unwrap().poised, is_poised(&moved, &basis).unwrap().poised);
    }

    #[test]
    fn simple_hermite_matrix_is_the_vandermonde(((knots, basis), _) in (poised_instance(), Just(()))) {
        let scheme = HermiteScheme::from_knots(knots.clone(), ConditionShape::TotalOrder);
        prop_assert_eq!(hermite_matrix(&scheme, &basis).unwrap(), vandermonde(&knots, &basis).unwrap());
    }
}

fn monic_with_roots(roots: &[i64]) -> Polynomial {
    let t = Polynomial::var(1, 0);
    roots.iter().fold(Polynomial::one(1), |acc, &r| {
        &acc * &(&t - &Polynomial::constant(1, int(r)))
    })
}

/// `x_i^{n_i}` plus box terms of lower total degree: the leading forms are
/// coprime pure powers, so the box monomials span the quotient ring.
fn pure_power_system() -> impl Strategy<Value = AlgebraicSystem> {
    (1u32..=3, 1u32..=3).prop_flat_map(|(n1, n2)| {
        let degrees = [n1, n2];
        let lower: Vec<Vec<ExponentVector>> = (0..2)
            .map(|i| {
                box_basis(&degrees)
                    .unwrap()
                    .monomials()
                    .iter()
                    .filter(|m| m.total_degree() < degrees[i])
                    .cloned()
                    .collect()
            })
            .collect();
        let sizes = (lower[0].len(), lower[1].len());
        (
            Just(degrees),
            Just(lower),
            prop::collection::vec(-4i64..=4, sizes.0),
            prop::collection::vec(-4i64..=4, sizes.1),
        )
            .prop_map(|(degrees, lower, c0, c1)| {
                let eqs = [c0, c1]
                    .iter()
                    .enumerate()
                    .map(|(i, cs)| {
                        let mut lead = vec![0u32; 2];
                        lead[i] = degrees[i];
                        let terms = std::iter::once((lead, int(1)))
                            .chain(lower[i].iter().zip(cs).map(|(m, &c)| (m.exps().to_vec(), int(c))));
                        Polynomial::from_terms(2, terms).unwrap()
                    })
                    .collect();
                AlgebraicSystem::new(eqs).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn fta_baseline(roots in prop::collection::vec(-5i64..=5, 1..=10)) {
        let p = monic_with_roots(&roots);
        let set = univariate_roots(&p).unwrap();
        prop_assert_eq!(set.multiplicity_sum(), roots.len() as u64);
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(set.distinct_count(), distinct.len());
        for s in &set.solutions {
            let z = s.point[0];
            prop_assert!(distinct.iter().any(|&r| (z - Complex64::new(r as f64, 0.0)).norm() < 1e-8));
        }
    }

    #[test]
    fn bezout_ceiling(p in polynomial(2, 6, 2), q in polynomial(2, 6, 2)) {
        let Ok(system) = AlgebraicSystem::new(vec![p, q]) else { return Ok(()) };
        if let Ok(set) = solve_2d(&system, &SolveOptions::default()) {
            if !set.positive_dimensional {
                prop_assert!(set.distinct_count() as u64 <= system.bezout());
            }
        }
    }

    #[test]
    fn maximal_pure_power_systems_have_poised_solutions(system in pure_power_system()) {
        let report = verify_maximality(&system, None, &SolveOptions::default()).unwrap();
        if report.is_maximal {
            prop_assert_eq!(report.poisedness.verdict(), Some(true), "{:?}", report.poisedness);
        }
    }

    #[test]
    fn plain_grids_are_maximal_and_exactly_poised(seed in any::<u64>(), n1 in 1u32..=4, n2 in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords = random_grid_coords(&[n1, n2], &mut rng);
        let (system, _) = generate_grid_system(&coords, None).unwrap();
        let report = verify_maximality(&system, None, &SolveOptions::default()).unwrap();
        prop_assert!(report.is_maximal);
        let exact_poised = matches!(report.poisedness, PoisednessCheck::Exact { poised: true, .. });
        prop_assert!(exact_poised);
    }

    #[test]
    fn planted_common_roots_zero_the_resultant(
        parts in prop::collection::vec(polynomial(2, 4, 2), 4),
        a in rational(),
        r in rational(),
    ) {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let xa = &x - &Polynomial::constant(2, a.clone());
        let yr = &y - &Polynomial::constant(2, r);
        let p = &(&yr * &parts[0]) + &(&xa * &parts[1]);
        let q = &(&yr * &parts[2]) + &(&xa * &parts[3]);
        prop_assume!(!p.is_zero() && !q.is_zero());
        prop_assume!(p.degree_in(1).unwrap() > 0 || q.degree_in(1).unwrap() > 0);
        let res = resultant_eliminate(&p, &q, 1).unwrap();
        prop_assert!(res.evaluate(&[a]).unwrap().is_zero());
    }
}

#[test]
fn maximality_verdict_is_invariant_under_linear_changes() {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let c = |n| Polynomial::constant(2, int(n));
    let mut systems = vec![
        AlgebraicSystem::new(vec![&(&x * &x) - &c(1), (&y - &x).pow(2)]).unwrap(),
        AlgebraicSystem::new(vec![&x * &y, &x * &(&y - &c(1))]).unwrap(),
        AlgebraicSystem::new(vec![&(&x * &y) - &c(1), x.clone()]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    while systems.len() < 20 {
        let n1 = 1 + systems.len() as u32 % 3;
        let n2 = 1 + (systems.len() as u32 / 3) % 3;
        let coords = random_grid_coords(&[n1, n2], &mut rng);
        systems.push(generate_grid_system(&coords, None).unwrap().0);
    }
    let mut runner = proptest::test_runner::TestRunner::new(config(1));
    let maps: Vec<AffineMap> = (0..systems.len())
        .map(|_| {
            let m = prop::collection::vec(rational(), 4)
                .prop_filter_map("singular", |m| {
                    AffineMap::linear(RationalMatrix::new(2, 2, m).unwrap())
                        .ok()
                        .filter(AffineMap::is_invertible)
                })
                .new_tree(&mut runner)
                .unwrap();
            proptest::strategy::ValueTree::current(&m)
        })
        .collect();
    for (i, (system, map)) in systems.iter().zip(&maps).enumerate() {
        let moved = AlgebraicSystem::new(
            system
                .equations()
                .iter()
                .map(|e| e.compose_affine(map).unwrap())
                .collect(),
        )
        .unwrap();
        let opts = SolveOptions::default();
        let before = verify_maximality(system, None, &opts).unwrap().is_maximal;
        let after = verify_maximality(&moved, None, &opts).unwrap().is_maximal;
        assert_eq!(before, after, "instance {i}: {:?}", moved.equations());
    }
}
