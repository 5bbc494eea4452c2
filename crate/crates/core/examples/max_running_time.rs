//! Exhaustive maximum running times for K3 and K4 on up to seven vertices.

use percolab::graph::named::complete;
use percolab::oracle::{max_running_time, triangle_reference};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 4..=7 {
        let k3 = max_running_time(&complete(3), n, false)?;
        let k4 = max_running_time(&complete(4), n, false)?;
        println!("n={n}: M_K3={} (log reference {}) M_K4={} over {} classes", k3.max, triangle_reference(n), k4.max, k4.classes());
    }
    Ok(())
}
