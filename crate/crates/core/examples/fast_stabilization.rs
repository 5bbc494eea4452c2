//! Patterns with an isolated edge stabilise fast; cycles and wheels grow cliques.

use percolab::oracle::{cycle_clique_check, cycle_instance, fast_stabilization_check, sample_gnp, triangle_plus_edge};
use percolab::oracle::{wheel_clique_growth_check, wheel_instance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = triangle_plus_edge();
    let fast = (0..50).filter(|&s| fast_stabilization_check(&h, &sample_gnp(12, 1, 2, s)).unwrap_or(false)).count();
    println!("K3+K2 on G(12,1/2): {fast}/50 starts stabilise within 3 rounds");
    let cycles = (0..20).filter(|&s| cycle_clique_check(5, &cycle_instance(5, 8, 0.1, s)).unwrap_or(false)).count();
    println!("C5 closures that are cliques: {cycles}/20");
    let wheels = (0..20)
        .filter(|&s| {
            let w = wheel_instance(7, s);
            wheel_clique_growth_check(7, &w.graph, &w.clique, &w.copy).unwrap_or(false)
        })
        .count();
    println!("W7 clique growth: {wheels}/20");
    Ok(())
}
