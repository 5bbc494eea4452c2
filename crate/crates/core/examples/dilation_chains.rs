//! K5 dilation chains modulo 127 with dilations chosen under the collection verifier.

use percolab::additive::{EquationFamily, ZpSet};
use percolab::chains::{dilation_collection, link_chains, select_dilations, verify_collection};
use percolab::chains::{LinkMode, Strength, DEFAULT_COPY_BUDGET};
use percolab::graph::named::complete;
use percolab::oracle::certify_lower_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = complete(5);
    let build = |s: &ZpSet| dilation_collection(&h, None, s);
    let a = select_dilations(127, &[EquationFamily::Bounded { h: 2, k: 5 }], 3, Strength::Strong, DEFAULT_COPY_BUDGET, &build)?;
    println!("A = {:?}", a.elems());
    let coll = build(&a)?;
    let r = verify_collection(&coll, Strength::Strong, DEFAULT_COPY_BUDGET);
    println!("strongly proper: {}", r.passed());
    let linked = link_chains(&coll, LinkMode::Standard)?;
    let lb = certify_lower_bound(&linked);
    println!("linked length {} tau={} certified={}", linked.len(), lb.tau, lb.certified());
    Ok(())
}
