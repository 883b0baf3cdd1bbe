//! Cayley graphs `Cay(G, S)` and their distance partitions from the identity.

use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{GroupDescriptor, GroupElement};

/// An identity-free, negation-closed subset of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymmetricSet {
    group: GroupDescriptor,
    mask: BitSet,
}

impl SymmetricSet {
    pub fn new(group: GroupDescriptor, mask: BitSet) -> Result<Self> {
        let n = group.order();
        if mask.contains(0) {
            return Err(Error::NotSymmetric("contains the identity".into()));
        }
        for r in mask.iter() {
            if r >= n {
                return Err(Error::NotSymmetric(format!("rank {r} outside the group")));
            }
            if !mask.contains(group.neg_rank(r)) {
                return Err(Error::NotSymmetric(format!(
                    "{} present without its inverse",
                    group.element_at(r)
                )));
            }
        }
        Ok(SymmetricSet { group, mask })
    }

    pub fn from_elements(group: GroupDescriptor, elements: &[GroupElement]) -> Result<Self> {
        for &e in elements {
            if !group.contains(e) {
                return Err(Error::ElementSpec(e.to_string()));
            }
        }
        Self::new(group, elements.iter().map(|&e| group.rank(e)).collect())
    }

    /// Parses an element list and closes it under negation.
    pub fn parse_closed(group: GroupDescriptor, text: &str) -> Result<Self> {
        let mut mask = BitSet::new();
        for e in group.parse_elements(text)? {
            mask.insert(group.rank(e));
            mask.insert(group.rank(group.neg(e)));
        }
        Self::new(group, mask)
    }

    /// Union of the inverse classes whose bit is set in `selection`; class
    /// `i` is the `i`-th entry of [`GroupDescriptor::inverse_classes`].
    pub fn from_class_selection(
        group: GroupDescriptor,
        classes: &[Vec<usize>],
        selection: u128,
    ) -> Self {
        let mut mask = BitSet::new();
        for (i, class) in classes.iter().enumerate() {
            if selection >> i & 1 == 1 {
                class.iter().for_each(|&r| mask.insert(r));
            }
        }
        SymmetricSet { group, mask }
    }

    /// `G` minus the identity.
    pub fn all_nonidentity(group: GroupDescriptor) -> Self {
        let mut mask = group.full_set();
        mask.remove(0);
        SymmetricSet { group, mask }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn mask(&self) -> &BitSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.mask.contains(self.group.rank(g))
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.mask.iter().map(|r| self.group.element_at(r)).collect()
    }

    /// Members as `(a,b)` strings in rank order.
    pub fn to_strings(&self) -> Vec<String> {
        self.elements().iter().map(ToString::to_string).collect()
    }

    /// Row decomposition `R_j = {u : (u, j) ∈ S}`.
    pub fn rows(&self) -> RowDecomposition {
        let q = self.group.second_mod();
        let mut rows = vec![BitSet::new(); q];
        for e in self.elements() {
            rows[e.second].insert(e.first);
        }
        RowDecomposition {
            group: self.group,
            rows,
        }
    }
}

impl fmt::Display for SymmetricSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_strings().join(","))
    }
}

/// The rows `R_0, …, R_{q-1}` of a connection set, each a subset of `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDecomposition {
    group: GroupDescriptor,
    rows: Vec<BitSet>,
}

impl RowDecomposition {
    /// Builds from explicit rows; validates `R_j = -R_{-j}` and `0 ∉ R_0`.
    pub fn new(group: GroupDescriptor, rows: Vec<BitSet>) -> Result<Self> {
        let decomposition = RowDecomposition { group, rows };
        decomposition.to_set()?;
        Ok(decomposition)
    }

    pub fn row(&self, j: usize) -> &BitSet {
        &self.rows[j % self.rows.len()]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Reassembles `S = ∪_j (R_j, j)`.
    pub fn to_set(&self) -> Result<SymmetricSet> {
        let g = self.group;
        if self.rows.len() != g.second_mod() {
            return Err(Error::Precondition(
                "row count differs from second modulus".into(),
            ));
        }
        let mut mask = BitSet::new();
        for (j, row) in self.rows.iter().enumerate() {
            for u in row.iter() {
                if u >= g.first_mod() {
                    return Err(Error::Precondition(format!("row entry {u} out of range")));
                }
                mask.insert(g.rank(GroupElement::new(u, j)));
            }
        }
        SymmetricSet::new(g, mask)
    }
}

/// `Cay(G, S)`: `g ~ h` iff `h - g ∈ S`.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    set: SymmetricSet,
    graph: Graph,
}

/// Builds `Cay(G, S)`. The neighbor mask of vertex `g` is `g + S`.
pub fn build(set: SymmetricSet) -> CayleyGraph {
    let group = set.group();
    let rows = (0..group.order())
        .map(|g| group.translate(set.mask(), g))
        .collect();
    let graph = Graph::from_rows(rows).expect("symmetric connection sets give undirected graphs");
    CayleyGraph { set, graph }
}

impl CayleyGraph {
    pub fn group(&self) -> GroupDescriptor {
        self.set.group()
    }

    pub fn connection_set(&self) -> &SymmetricSet {
        &self.set
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn valency(&self) -> usize {
        self.set.len()
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        self.graph.neighbors(v)
    }

    /// Breadth-first reachability from the identity.
    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    /// `⟨S⟩ = G`, decided by subgroup closure.
    pub fn generates_group(&self) -> bool {
        self.group().generated_subgroup(self.set.mask()).len() == self.order()
    }

    /// Checks the neighborhood translation law: the row of `(i, j)` equals
    /// `∪_t (i + R_t, j + t)`.
    pub fn satisfies_translation_law(&self) -> bool {
        let g = self.group();
        let rows = self.set.rows();
        (0..self.order()).all(|v| {
            let e = g.element_at(v);
            let mut expected = BitSet::new();
            for (t, row) in rows.rows().iter().enumerate() {
                for u in row.iter() {
                    expected.insert(g.rank(g.element((e.first + u) as i64, (e.second + t) as i64)));
                }
            }
            expected == *self.neighbors(v)
        })
    }

    /// `|N(0) ∩ N(target)|`, computed from the adjacency masks and from the
    /// row-wise sum `Σ_t |R_t ∩ (i - R_{j-t})|`; the two must agree.
    pub fn common_neighbors(&self, target: GroupElement) -> Result<usize> {
        let t = self.group().rank(target);
        let by_mask = self.neighbors(0).intersection_len(self.neighbors(t));
        let by_rows = common_neighbors_rowwise(&self.set.rows(), target);
        if by_mask != by_rows {
            return Err(Error::Inconsistent(format!(
                "common neighbours of {target}: mask count {by_mask}, row count {by_rows}"
            )));
        }
        Ok(by_mask)
    }

    pub fn edge_list(&self) -> String {
        self.graph.edge_list()
    }

    pub fn to_graph6(&self) -> String {
        self.graph.to_graph6()
    }
}

/// `Σ_{t ∈ Z_q} |R_t ∩ (i - R_{j-t})|` for the target `(i, j)`.
pub fn common_neighbors_rowwise(rows: &RowDecomposition, target: GroupElement) -> usize {
    let g = rows.group;
    let m = g.first_mod();
    let q = g.second_mod();
    (0..q)
        .map(|t| {
            let other = rows.row((target.second + q - t) % q);
            let shifted: BitSet = other.iter().map(|u| (target.first + m - u) % m).collect();
            rows.row(t).intersection_len(&shifted)
        })
        .sum()
}

/// BFS layers `N_0, …, N_d` from the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    group: GroupDescriptor,
    layers: Vec<BitSet>,
}

impl DistancePartition {
    pub fn layers(&self) -> &[BitSet] {
        &self.layers
    }

    pub fn diameter(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, i: usize) -> BitSet {
        self.layers.get(i).copied().unwrap_or_default()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(BitSet::len).collect()
    }

    /// Distance of each vertex from the identity.
    pub fn distance_of(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(v))
    }

    /// `R_{i,j} = {u : (u, i) ∈ N_j}`.
    pub fn row_layer(&self, i: usize, j: usize) -> BitSet {
        let g = self.group;
        self.layer(j)
            .iter()
            .map(|r| g.element_at(r))
            .filter(|e| e.second == i)
            .map(|e| e.first)
            .collect()
    }
}

/// Exact BFS layers from the identity; fails on disconnected graphs.
pub fn distance_partition(graph: &CayleyGraph) -> Result<DistancePartition> {
    let layers = graph.graph().bfs_layers(0);
    let covered: usize = layers.iter().map(BitSet::len).sum();
    if covered != graph.order() {
        return Err(Error::Disconnected);
    }
    Ok(DistancePartition {
        group: graph.group(),
        layers,
    })
}
