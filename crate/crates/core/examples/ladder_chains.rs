//! The K6 ladder with slopes 1, 2, 3, linked into a single chain.

use percolab::chains::{ladder_collection, ladder_crossing_check, ladder_slice_check, link_chains, verify_collection};
use percolab::chains::{LinkMode, Strength, DEFAULT_COPY_BUDGET};
use percolab::graph::named::complete;
use percolab::oracle::certify_lower_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let coll = ladder_collection(&complete(6), &[0, 1, 2], (0, 3), (2, 5), &[1, 2, 3])?;
    println!("crossing: {}", ladder_crossing_check(&coll)?.holds);
    println!("slices: {}", ladder_slice_check(&coll)?.holds);
    println!("proper: {}", verify_collection(&coll, Strength::Proper, DEFAULT_COPY_BUDGET).passed());
    let linked = link_chains(&coll, LinkMode::Standard)?;
    let lb = certify_lower_bound(&linked);
    println!("linked length {} on {} vertices, tau={} certified={}", linked.len(), linked.n(), lb.tau, lb.certified());
    Ok(())
}
