//! Small undirected graphs with one adjacency bit vector per vertex.

use crate::bits::{BitSet, MAX_ORDER};
use crate::error::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BitSet>,
}

impl Graph {
    /// Builds a graph from adjacency rows; fails unless the rows are
    /// symmetric and loop-free.
    pub fn from_rows(adjacency: Vec<BitSet>) -> Result<Self> {
        let n = adjacency.len();
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_ORDER,
            });
        }
        for (v, row) in adjacency.iter().enumerate() {
            if row.contains(v) || row.iter().any(|u| u >= n || !adjacency[u].contains(v)) {
                return Err(Error::Precondition(format!(
                    "adjacency row {v} is not symmetric and loop-free"
                )));
            }
        }
        Ok(Graph { adjacency })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![BitSet::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Precondition(format!("bad edge {u} {v}")));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Graph::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Valency if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.adjacency.first().map(BitSet::len)?;
        self.adjacency.iter().all(|r| r.len() == k).then_some(k)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::len).sum::<usize>() / 2
    }

    /// Union of the neighborhoods of a vertex set.
    #[inline]
    pub fn neighborhood_of(&self, set: &BitSet) -> BitSet {
        let mut out = BitSet::new();
        for v in set.iter() {
            out.union_with(&self.adjacency[v]);
        }
        out
    }

    /// BFS layers from `root`, computed a whole layer at a time.
    pub fn bfs_layers(&self, root: usize) -> Vec<BitSet> {
        let mut layers = vec![BitSet::singleton(root)];
        let mut seen = BitSet::singleton(root);
        loop {
            let next = self
                .neighborhood_of(layers.last().expect("non-empty"))
                .difference(&seen);
            if next.is_empty() {
                break;
            }
            seen.union_with(&next);
            layers.push(next);
        }
        layers
    }

    /// Distances from `root`; `None` for unreachable vertices.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        for (i, layer) in self.bfs_layers(root).iter().enumerate() {
            for v in layer.iter() {
                dist[v] = Some(i);
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.order() == 0 {
            return true;
        }
        self.bfs_layers(0).iter().map(BitSet::len).sum::<usize>() == self.order()
    }

    /// Connected components as vertex sets, listed by smallest vertex.
    pub fn components(&self) -> Vec<BitSet> {
        let mut left = BitSet::full(self.order());
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self
                .bfs_layers(v)
                .iter()
                .fold(BitSet::new(), |acc, l| acc.union(l));
            left = left.difference(&comp);
            out.push(comp);
        }
        out
    }

    /// The subgraph induced on `vertices`, relabelled `0..|vertices|` in
    /// ascending order.
    pub fn induced(&self, vertices: &BitSet) -> Graph {
        let list = vertices.to_vec();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in list.iter().enumerate() {
            index[v] = i;
        }
        let rows = list
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .intersection(vertices)
                    .iter()
                    .map(|u| index[u])
                    .collect()
            })
            .collect();
        Graph { adjacency: rows }
    }

    /// Undirected edge list, one `u v` pair per line with `u < v`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            for v in row.iter().filter(|&v| v > u) {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        out
    }

    /// The graph in graph6 format (without header or trailing newline).
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        let mut bytes: Vec<u8> = Vec::new();
        if n < 63 {
            bytes.push(n as u8 + 63);
        } else {
            bytes.push(126);
            for shift in [12, 6, 0] {
                bytes.push(((n >> shift) & 63) as u8 + 63);
            }
        }
        let mut acc = 0u8;
        let mut nbits = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.is_adjacent(i, j) as u8;
                nbits += 1;
                if nbits == 6 {
                    bytes.push(acc + 63);
                    acc = 0;
                    nbits = 0;
                }
            }
        }
        if nbits > 0 {
            bytes.push((acc << (6 - nbits)) + 63);
        }
        String::from_utf8(bytes).expect("graph6 is printable ASCII")
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bad = || Error::Precondition(format!("malformed graph6 string {text:?}"));
        let data: Vec<u8> = text.trim().bytes().map(|b| b.wrapping_sub(63)).collect();
        if data.iter().any(|&b| b > 63) || data.is_empty() {
            return Err(bad());
        }
        let (n, body) = if data[0] == 63 {
            if data.len() < 4 {
                return Err(bad());
            }
            let n = ((data[1] as usize) << 12) | ((data[2] as usize) << 6) | data[3] as usize;
            (n, &data[4..])
        } else {
            (data[0] as usize, &data[1..])
        };
        let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if body.len() != needed {
            return Err(bad());
        }
        let mut rows = vec![BitSet::new(); n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let bit = (body[k / 6] >> (5 - k % 6)) & 1;
                if bit == 1 {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
                k += 1;
            }
        }
        Graph::from_rows(rows)
    }
}
