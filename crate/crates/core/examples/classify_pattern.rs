//! Structural classification of a named pattern, e.g. `cargo run --example classify_pattern -- petersen`.

use percolab::classify::full_report;
use percolab::graph::named::by_name;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "k3,3".into());
    let h = by_name(&name).ok_or_else(|| format!("unknown pattern {name}"))?;
    println!("{}", serde_json::to_string_pretty(&full_report(&h))?);
    Ok(())
}
