//! Simple chains for K5, W7 and K4: the first two are proper, the K4 chain is not.

use percolab::chains::{simple_chain, verify_proper, wheel_ordering, DEFAULT_COPY_BUDGET};
use percolab::graph::named::{complete, wheel};
use percolab::oracle::certify_lower_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let chains = [
        ("K5", simple_chain(&complete(5), &[0, 1, 2, 3, 4], 8)?),
        ("W7", simple_chain(&wheel(7), &wheel_ordering(7, 4)?, 8)?),
        ("K4", simple_chain(&complete(4), &[0, 1, 2, 3], 8)?),
    ];
    for (name, c) in &chains {
        let r = verify_proper(c, DEFAULT_COPY_BUDGET);
        let lb = certify_lower_bound(c);
        println!("{name}: proper={} tau={} certified={}", r.passed(), lb.tau, lb.certified());
        if let Some(w) = &r.copies_have_unique_home.witness {
            println!("  witness: {w:?}");
        }
    }
    Ok(())
}
