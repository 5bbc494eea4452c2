//! Runs the K4-process on a chain's starting graph and prints each round.

use percolab::chains::{simple_chain, starting_graph};
use percolab::engine::{run, RunOptions};
use percolab::graph::named::complete;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = complete(4);
    let c = simple_chain(&h, &[0, 1, 2, 3], 6)?;
    let trace = run(&h, &starting_graph(&c), &RunOptions::default());
    for (i, added) in trace.rounds.iter().enumerate() {
        println!("round {}: {added:?}", i + 1);
    }
    let (n, e0, tau, e_final) = trace.summary();
    println!("n={n} e0={e0} tau={tau} e_final={e_final}");
    Ok(())
}
