//! K3,3 dilation chains modulo 433, before and after sparsification.

use percolab::additive::ZpSet;
use percolab::chains::{bip_dilation_collection, bip_labels, four_cycle_trichotomy_check, link_chains, positive_slope_check};
use percolab::chains::{sparsify_bip_dilation, verify_collection, LinkMode, Strength, DEFAULT_COPY_BUDGET};
use percolab::graph::named::complete_bipartite;
use percolab::oracle::certify_lower_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = complete_bipartite(3, 3);
    let a = ZpSet::new(433, [1, 8, 17])?;
    let coll = bip_dilation_collection(&h, &bip_labels(&h)?, &a, 0)?;
    println!("positive slopes: {}", positive_slope_check(&coll)?.holds);
    // A is not (48,3)-fold solution-free, so the trichotomy may fail here.
    println!("trichotomy: {:?}", four_cycle_trichotomy_check(&coll).witness);
    let (sparse, rep) = sparsify_bip_dilation(&h, &a, 0.75, 1, DEFAULT_COPY_BUDGET)?;
    println!("kept {:?} (bound {:.2})", rep.kept, rep.bound);
    println!("strongly proper: {}", verify_collection(&sparse, Strength::Strong, DEFAULT_COPY_BUDGET).passed());
    let linked = link_chains(&sparse, LinkMode::Standard)?;
    let lb = certify_lower_bound(&linked);
    println!("linked length {} tau={} certified={}", linked.len(), lb.tau, lb.certified());
    Ok(())
}
