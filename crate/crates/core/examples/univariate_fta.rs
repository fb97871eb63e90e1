//! Roots of a univariate polynomial with exact multiplicities.
//!
//! (x − 1)³ (x + 2) (x² + 1): the square-free decomposition fixes the
//! multiplicities, the companion matrix supplies the roots, and rational
//! roots come back certified.

use poise::ftasys::univariate_roots;
use poise::multipoly::Polynomial;
use poise::rational::{format_rational, int};

fn main() -> poise::Result<()> {
    let x = Polynomial::var(1, 0);
    let c = |n| Polynomial::constant(1, int(n));
    let p = &(&(&x - &c(1)).pow(3) * &(&x + &c(2))) * &(&(&x * &x) + &c(1));
    println!("p = {p}");
    let set = univariate_roots(&p)?;
    for s in &set.solutions {
        let exact = s.exact.as_ref().map(|q| format_rational(&q[0]));
        println!(
            "root {:+.6}  multiplicity {}  exact {:?}",
            s.point[0], s.multiplicity, exact
        );
    }
    println!("multiplicities sum to {} = deg p", set.multiplicity_sum());
    Ok(())
}
