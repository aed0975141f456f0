//! Dimension upper bounds of the weight-graded value spaces: the positive
//! case follows the Padovan numbers, the alternating case the Fibonacci
//! numbers, and dropping the reversal family visibly weakens weight 2.

use fes::linalg;
use fes::relations::Family;

fn main() {
    let fmzv = linalg::dimension_table(8, 1, false, &Family::ALL).unwrap();
    println!("positive, superbity 1, weights 0..8: {fmzv:?}");

    let fes = linalg::dimension_table(6, 1, true, &Family::ALL).unwrap();
    println!("alternating, superbity 1, weights 0..6: {fes:?}");

    let no_reversal: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|f| *f != Family::Reversal)
        .collect();
    let weakened = linalg::dimension_upper_bound(2, 1, true, &no_reversal).unwrap();
    println!("alternating weight 2 without reversal: {weakened} (with: {})", fes[2]);
}
