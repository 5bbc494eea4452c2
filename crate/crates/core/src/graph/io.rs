//! graph6 and edge-list JSON.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::ParseError;

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let sextet = |i: usize| -> Result<usize, ParseError> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(ParseError::at(i, format!("byte {b:#04x} outside graph6 range"))),
            None => Err(ParseError::at(i, "unexpected end of input")),
        }
    };
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(ParseError::at(i, format!("byte {:#04x} outside graph6 range", bytes[i])));
    }
    let (n, mut pos) = if bytes.first() != Some(&126) {
        (sextet(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        (sextet(1)? << 12 | sextet(2)? << 6 | sextet(3)?, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = n << 6 | sextet(i)?;
        }
        (n, 8)
    };
    let total = n * n.saturating_sub(1) / 2;
    let need = total.div_ceil(6);
    if bytes.len() != pos + need {
        return Err(ParseError::at(bytes.len().min(pos + need), format!("expected {need} data bytes for n={n}")));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let (mut i, mut j) = (0, 1);
    while k < total {
        let word = sextet(pos)?;
        for b in (0..6).rev() {
            if k == total {
                if word & ((1 << (b + 1)) - 1) != 0 {
                    return Err(ParseError::at(pos, "nonzero padding bits"));
                }
                break;
            }
            if (word >> b) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    Ok(g)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl EdgeListJson {
    pub fn from_graph(g: &Graph, names: Option<Vec<String>>) -> Self {
        EdgeListJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect(), names }
    }

    pub fn to_graph(&self) -> Result<Graph, ParseError> {
        if let Some(names) = &self.names {
            if names.len() != self.n {
                return Err(ParseError::at(0, format!("{} names for {} vertices", names.len(), self.n)));
            }
        }
        let edges: Vec<_> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.n, &edges).map_err(|e| ParseError::at(0, e.to_string()))
    }
}

pub fn emit_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeListJson::from_graph(g, None)).expect("edge list serializes")
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let doc: EdgeListJson = serde_json::from_str(text).map_err(|e| {
        let offset = text
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        ParseError::at(offset, e.to_string())
    })?;
    doc.to_graph()
}
