//! K5 chains on the lines of a random girth-6 hypergraph.

use percolab::chains::{berge_girth, greedy_girth_hypergraph, line_collection, link_chains, verify_collection};
use percolab::chains::{LinkMode, Strength, DEFAULT_COPY_BUDGET};
use percolab::graph::named::complete;
use percolab::oracle::certify_lower_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = complete(5);
    let hg = greedy_girth_hypergraph(200, 30, 6, 1000, 1);
    println!("{} lines, linear={}, berge girth {:?}", hg.edges.len(), hg.is_linear(), berge_girth(&hg));
    let coll = line_collection(&h, &hg, None, false, 1)?;
    println!("strongly proper: {}", verify_collection(&coll, Strength::Strong, DEFAULT_COPY_BUDGET).passed());
    let linked = link_chains(&coll, LinkMode::Standard)?;
    let lb = certify_lower_bound(&linked);
    println!("linked length {} tau={} certified={}", linked.len(), lb.tau, lb.certified());
    Ok(())
}
