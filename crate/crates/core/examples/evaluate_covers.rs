// Compare a detected cover with a ground truth read from cover files.
//
// cargo run --example evaluate_covers

use nectar::io::{format_records, format_scores, read_cover, LabelMap};
use nectar::metrics::{self, f1, match_ground_truth};

const DETECTED: &str = "a b c\nc d\nd e f\nf\n";
const TRUTH: &str = "a b c d\nd e f\n";

pub fn run_example() -> nectar::Result<()> {
    let mut labels = LabelMap::new();
    let detected = read_cover(DETECTED.as_bytes(), &mut labels)?;
    let truth = read_cover(TRUTH.as_bytes(), &mut labels)?;
    let n = labels.len();

    println!("F1 of each detected community against its best truth match:");
    for set in &detected {
        let best = truth.iter().map(|t| f1(set, t)).fold(0.0, f64::max);
        let names: Vec<&str> = set.iter().map(|v| labels.labels()[v].as_str()).collect();
        println!("  {:<8} {best:.3}", names.join(" "));
    }

    let full = metrics::evaluate(&detected, &truth, n, false)?;
    print!("\nall communities\n{}", format_scores(&full));
    let matched = metrics::evaluate(&detected, &truth, n, true)?;
    print!("\nbest matches only\n{}", format_scores(&matched));
    println!(
        "kept {} of {}",
        match_ground_truth(&detected, &truth)?.len(),
        detected.len()
    );

    print!("\n{}", format_records(&full, "detected.txt", "truth.txt"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
