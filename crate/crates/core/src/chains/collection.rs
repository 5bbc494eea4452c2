use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Chain, ChainJson, LinearHypergraph};
use crate::engine::final_graph;
use crate::error::ChainError;
use crate::graph::{Edge, EdgeListJson, Graph};

pub const COLLECTION_SCHEMA: &str = "percolab.collection/1";

/// How a collection was built, with the parameters needed to re-run its checks.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CollectionKind {
    Ladder { u: Vec<usize>, e_prime: Edge, f_prime: Edge, m: usize },
    Dilation { p: u64 },
    BipDilation { p: u64, m: u64, labels: Vec<usize> },
    Line { hypergraph: LinearHypergraph, bipartite: bool },
    Custom,
}

/// Chains of one pattern on a shared vertex universe, one per index in `index`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCollection {
    pattern: Graph,
    kind: CollectionKind,
    index: Vec<u64>,
    chains: Vec<Chain>,
    names: Vec<String>,
}

impl ChainCollection {
    pub fn new(kind: CollectionKind, index: Vec<u64>, chains: Vec<Chain>, names: Vec<String>) -> Result<Self, ChainError> {
        let first = chains.first().ok_or_else(|| ChainError::Parameters("empty collection".into()))?;
        let (pattern, n) = (first.pattern().clone(), first.n());
        if chains.iter().any(|c| c.pattern() != &pattern || c.n() != n) {
            return Err(ChainError::Parameters("chains must share the pattern and the vertex universe".into()));
        }
        if index.len() != chains.len() {
            return Err(ChainError::Parameters(format!("{} indices for {} chains", index.len(), chains.len())));
        }
        if names.len() != n {
            return Err(ChainError::Parameters(format!("{} names for {n} vertices", names.len())));
        }
        Ok(ChainCollection { pattern, kind, index, chains, names })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn kind(&self) -> &CollectionKind {
        &self.kind
    }

    /// The label of each chain, e.g. its slope.
    pub fn index(&self) -> &[u64] {
        &self.index
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n(&self) -> usize {
        self.chains[0].n()
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Union of the chains' host graphs.
    pub fn union_host(&self) -> Graph {
        let mut g = Graph::empty(self.n());
        for c in &self.chains {
            for (u, v) in c.host().edges() {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// `⟨G^a⟩_H` for every chain, computed by the engine on the chain's host.
    pub fn final_graphs(&self) -> Vec<Graph> {
        self.chains.par_iter().map(|c| final_graph(&self.pattern, c.host())).collect()
    }

    /// Keeps the chains whose position is listed, in the order given.
    pub fn select(&self, positions: &[usize]) -> Result<Self, ChainError> {
        if positions.iter().any(|&i| i >= self.len()) {
            return Err(ChainError::Parameters("chain position out of range".into()));
        }
        let chains = positions.iter().map(|&i| self.chains[i].clone()).collect();
        let index = positions.iter().map(|&i| self.index[i]).collect();
        ChainCollection::new(self.kind.clone(), index, chains, self.names.clone())
    }

    pub fn to_json(&self) -> CollectionJson {
        CollectionJson {
            schema: COLLECTION_SCHEMA.into(),
            pattern: EdgeListJson::from_graph(&self.pattern, None),
            kind: self.kind.clone(),
            n: self.n(),
            index: self.index.clone(),
            names: self.names.clone(),
            chains: self.chains.iter().map(Chain::to_json).collect(),
        }
    }

    pub fn from_json(doc: &CollectionJson) -> Result<Self, ChainError> {
        let chains = doc.chains.iter().map(Chain::from_json).collect::<Result<Vec<_>, _>>()?;
        ChainCollection::new(doc.kind.clone(), doc.index.clone(), chains, doc.names.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollectionJson {
    pub schema: String,
    pub pattern: EdgeListJson,
    pub kind: CollectionKind,
    pub n: usize,
    pub index: Vec<u64>,
    pub names: Vec<String>,
    pub chains: Vec<ChainJson>,
}

/// For each edge of the union of final graphs, the chains whose final graph contains it.
pub fn collection_edge_owners(coll: &ChainCollection) -> Vec<(Edge, Vec<usize>)> {
    let mut owners: std::collections::BTreeMap<Edge, Vec<usize>> = Default::default();
    for (a, f) in coll.final_graphs().iter().enumerate() {
        for e in f.edges() {
            owners.entry(e).or_default().push(a);
        }
    }
    owners.into_iter().collect()
}
