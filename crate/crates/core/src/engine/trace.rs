use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{embed_exists, Edge, Graph};

pub const TRACE_SCHEMA: &str = "percolab.trace/1";

#[derive(Clone, Debug)]
pub struct ProcessTrace {
    pub start: Graph,
    /// Edges added in round `i + 1`, sorted.
    pub rounds: Vec<Vec<Edge>>,
    /// Rounds until the fixpoint; equals `rounds.len()` unless truncated.
    pub tau: usize,
    pub truncated: bool,
    pub final_graph: Graph,
}

impl ProcessTrace {
    pub(crate) fn new(start: Graph, rounds: Vec<Vec<Edge>>, truncated: bool, final_graph: Graph) -> Self {
        let tau = rounds.len();
        ProcessTrace { start, rounds, tau, truncated, final_graph }
    }

    /// Round (1-based) in which each added edge appeared.
    pub fn round_of(&self) -> HashMap<Edge, usize> {
        self.rounds
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&e| (e, i + 1)))
            .collect()
    }

    /// State after `t` rounds.
    pub fn state_after(&self, t: usize) -> Graph {
        let mut g = self.start.clone();
        for r in self.rounds.iter().take(t) {
            for &(u, v) in r {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// The lexicographically least edge of every odd-numbered round.
    pub fn parity_graph(&self) -> Graph {
        let mut g = Graph::empty(self.start.n());
        for r in self.rounds.iter().step_by(2) {
            let (u, v) = r[0];
            g.add_edge(u, v);
        }
        g
    }

    /// The designated odd-round edges never contain a copy of `h` (needs `e(h) ≥ 2`).
    pub fn parity_extraction_holds(&self, h: &Graph) -> bool {
        h.edge_count() < 2 || !embed_exists(h, &self.parity_graph(), &[])
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            schema: TRACE_SCHEMA.to_string(),
            n: self.start.n(),
            tau: self.tau,
            rounds: self.rounds.iter().map(|r| r.iter().map(|&(u, v)| [u, v]).collect()).collect(),
            truncated: self.truncated,
        }
    }

    /// `(n, e0, tau, final_edges)`.
    pub fn summary(&self) -> (usize, usize, usize, usize) {
        (self.start.n(), self.start.edge_count(), self.tau, self.final_graph.edge_count())
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TraceJson {
    pub schema: String,
    pub n: usize,
    pub tau: usize,
    pub rounds: Vec<Vec<[usize; 2]>>,
    pub truncated: bool,
}
