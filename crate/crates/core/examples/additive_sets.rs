//! Builds a few solution-free sets in Z_p and rechecks their certificates.

use percolab::additive::{greedy_solution_free_set, kfold3_set, modular_construction, EquationFamily, DEFAULT_BUDGET};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sets = [
        modular_construction(499, 3, 2)?,
        kfold3_set(499, 2)?,
        greedy_solution_free_set(149, &[EquationFamily::ZeroSum { h: 4, k: 2 }], 1..149, DEFAULT_BUDGET)?,
    ];
    for s in &sets {
        println!("p={} |A|={} recheck={} origin: {}", s.p(), s.len(), s.recheck(DEFAULT_BUDGET)?, s.origin);
        println!("  {:?}", s.elems());
    }
    Ok(())
}
