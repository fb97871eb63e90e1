//! A seeded batch of random Hermite schemes for box(3,2), summarised by
//! verdict. Singular instances are flagged in the log, not treated as errors.

use poise::ftasys::{conjecture_batch, log_lines, Verdict};
use poise::interp::ConditionShape;

fn main() -> poise::Result<()> {
    let records = conjecture_batch(&[3, 2], 50, 0, ConditionShape::TotalOrder)?;
    let singular: Vec<u64> = records
        .iter()
        .filter(|r| r.verdict == Verdict::Singular)
        .map(|r| r.instance)
        .collect();
    println!("{} instances, singular: {singular:?}", records.len());
    if let Some(first) = log_lines(&records).lines().next() {
        println!("first log line: {first}");
    }
    Ok(())
}
