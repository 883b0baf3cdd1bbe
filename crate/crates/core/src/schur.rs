//! Group-algebra layer: class sums, the distance module of a Cayley graph,
//! and Schur-ring verification.

use serde::Serialize;

use crate::bits::BitSet;
use crate::cayley::{CayleyGraph, DistancePartition};
use crate::error::{Error, Result};
use crate::group::{gcd, GroupDescriptor};

/// An element of the integral group algebra, indexed by element rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSum {
    group: GroupDescriptor,
    coeffs: Vec<i64>,
}

impl ClassSum {
    pub fn zero(group: GroupDescriptor) -> Self {
        ClassSum {
            group,
            coeffs: vec![0; group.order()],
        }
    }

    /// The 0/1 sum of the elements of `set`.
    pub fn of_set(group: GroupDescriptor, set: &BitSet) -> Self {
        let mut out = ClassSum::zero(group);
        for r in set.iter() {
            out.coeffs[r] = 1;
        }
        out
    }

    pub fn from_coeffs(group: GroupDescriptor, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Precondition(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(ClassSum { group, coeffs })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, rank: usize) -> i64 {
        self.coeffs[rank]
    }

    pub fn scaled(&self, k: i64) -> ClassSum {
        ClassSum {
            group: self.group,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &ClassSum) -> ClassSum {
        ClassSum {
            group: self.group,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Group-algebra product: coefficient of `g` is `Σ_h x(h)·y(g - h)`.
pub fn convolve(x: &ClassSum, y: &ClassSum) -> Result<ClassSum> {
    if x.group != y.group {
        return Err(Error::Precondition(
            "class sums over different groups".into(),
        ));
    }
    let g = x.group;
    let mut out = ClassSum::zero(g);
    for (h, &a) in x.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (t, &b) in y.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
            out.coeffs[g.add_rank(h, t)] += a * b;
        }
    }
    Ok(out)
}

fn convolve_sets(g: GroupDescriptor, a: &BitSet, b: &BitSet) -> Vec<i64> {
    let mut out = vec![0i64; g.order()];
    for h in a.iter() {
        for t in b.iter() {
            out[g.add_rank(h, t)] += 1;
        }
    }
    out
}

/// Structure constants `p[i][j][k]` with `T_i·T_j = Σ_k p[i][j][k]·T_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StructureConstants(pub Vec<Vec<Vec<i64>>>);

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.0[i][j][k]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("integer tensor serializes")
    }
}

/// A partition of the group into cells, a candidate Schur basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurBasis {
    group: GroupDescriptor,
    cells: Vec<BitSet>,
}

impl SchurBasis {
    /// Requires the cells to partition `G` with `T_0 = {identity}`.
    pub fn new(group: GroupDescriptor, cells: Vec<BitSet>) -> Result<Self> {
        if cells.first() != Some(&BitSet::singleton(0)) {
            return Err(Error::Precondition(
                "first cell must be the identity".into(),
            ));
        }
        let mut seen = BitSet::new();
        for c in &cells {
            if c.is_empty() || !c.is_disjoint(&seen) {
                return Err(Error::Precondition(
                    "cells must be non-empty and disjoint".into(),
                ));
            }
            seen.union_with(c);
        }
        if seen != group.full_set() {
            return Err(Error::Precondition("cells must cover the group".into()));
        }
        Ok(SchurBasis { group, cells })
    }

    /// `{identity}, G \ {identity}`.
    pub fn trivial(group: GroupDescriptor) -> Self {
        let mut rest = group.full_set();
        rest.remove(0);
        let cells = if rest.is_empty() {
            vec![BitSet::singleton(0)]
        } else {
            vec![BitSet::singleton(0), rest]
        };
        SchurBasis { group, cells }
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn cells(&self) -> &[BitSet] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_of(&self, rank: usize) -> usize {
        self.cells
            .iter()
            .position(|c| c.contains(rank))
            .expect("cells cover the group")
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.cells.iter().map(BitSet::len).collect()
    }
}

/// Cells are the distance layers of a connected Cayley graph.
pub fn distance_module(graph: &CayleyGraph, partition: &DistancePartition) -> SchurBasis {
    SchurBasis {
        group: graph.group(),
        cells: partition.layers().to_vec(),
    }
}

/// Structure constants if the cell sums span a subring closed under
/// negation; each product is checked to be constant on every cell.
pub fn is_schur_ring(basis: &SchurBasis) -> Option<StructureConstants> {
    let g = basis.group;
    let cells = &basis.cells;
    if cells.iter().any(|c| !cells.contains(&g.negate_set(c))) {
        return None;
    }
    let r = cells.len();
    let mut p = vec![vec![vec![0i64; r]; r]; r];
    for i in 0..r {
        for j in i..r {
            let prod = convolve_sets(g, &cells[i], &cells[j]);
            for (k, cell) in cells.iter().enumerate() {
                let mut it = cell.iter();
                let v = prod[it.next()?];
                if it.any(|x| prod[x] != v) {
                    return None;
                }
                p[i][j][k] = v;
                p[j][i][k] = v;
            }
        }
    }
    Some(StructureConstants(p))
}

/// Every non-identity cell generates the group.
pub fn is_primitive(basis: &SchurBasis) -> bool {
    let full = basis.group.full_set();
    basis.cells[1..]
        .iter()
        .all(|c| basis.group.generated_subgroup(c) == full)
}

pub fn is_trivial(basis: &SchurBasis) -> bool {
    basis.cells.len() == 2
}

/// The permutation `π` with `m·T_i = T_π(i)` for `m` coprime to `|G|`.
pub fn power_map(basis: &SchurBasis, m: i64) -> Result<Vec<usize>> {
    let n = basis.group.order();
    if gcd(m.rem_euclid(n as i64) as usize, n) != 1 {
        return Err(Error::Precondition(format!("{m} is not coprime to {n}")));
    }
    basis
        .cells
        .iter()
        .map(|c| {
            let img = basis.group.scale_set(c, m);
            basis.cells.iter().position(|d| *d == img).ok_or_else(|| {
                Error::Inconsistent(format!("image of a cell under x -> {m}x is not a cell"))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{build, distance_partition, SymmetricSet};
    use crate::drg::check_drg;

    fn grp(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    fn module(g: &str, set: &str) -> SchurBasis {
        let graph = build(SymmetricSet::parse_closed(grp(g), set).unwrap());
        distance_module(&graph, &distance_partition(&graph).unwrap())
    }

    fn k33() -> SchurBasis {
        let g = grp("3x3");
        let h = g.subgroups_of_order(3).remove(0);
        let graph = build(SymmetricSet::new(g, g.full_set().difference(&h.members)).unwrap());
        distance_module(&graph, &distance_partition(&graph).unwrap())
    }

    #[test]
    fn convolution_examples() {
        let g = grp("3x3");
        let mut h = g.subgroups_of_order(3).remove(0).members;
        h.remove(0);
        let x = ClassSum::of_set(g, &h);
        let sq = convolve(&x, &x).unwrap();
        let want = ClassSum::of_set(g, &BitSet::singleton(0))
            .scaled(2)
            .add(&ClassSum::of_set(g, &h));
        assert_eq!(sq, want);

        let one = ClassSum::of_set(g, &BitSet::singleton(0));
        assert_eq!(convolve(&one, &x).unwrap(), x);
        let all = ClassSum::of_set(g, &g.full_set());
        assert_eq!(convolve(&all, &all).unwrap(), all.scaled(9));
        assert!(convolve(&all, &ClassSum::zero(grp("Zn:9"))).is_err());
    }

    #[test]
    fn distance_module_cells() {
        let k9 = build(SymmetricSet::all_nonidentity(grp("3x3")));
        let m = distance_module(&k9, &distance_partition(&k9).unwrap());
        assert_eq!(m, SchurBasis::trivial(grp("3x3")));
        assert_eq!(module("3x3", "(1,0),(0,1)").sizes(), vec![1, 4, 4]);
        assert_eq!(k33().sizes(), vec![1, 6, 2]);
    }

    #[test]
    fn schur_ring_examples() {
        let lattice = module("3x3", "(1,0),(0,1)");
        let p = is_schur_ring(&lattice).unwrap();
        assert_eq!(p.get(1, 1, 1), 1);
        assert_eq!(p.get(1, 1, 2), 2);
        assert_eq!(p.get(1, 1, 0), 4);

        let g = grp("3x3");
        let odd = SchurBasis::new(
            g,
            vec![
                BitSet::singleton(0),
                BitSet::singleton(3),
                BitSet::from_indices([1, 2, 4, 5, 6, 7, 8]),
            ],
        )
        .unwrap();
        assert!(is_schur_ring(&odd).is_none());
        assert!(is_schur_ring(&SchurBasis::trivial(g)).is_some());
        assert!(SchurBasis::new(g, vec![BitSet::singleton(1), g.full_set()]).is_err());
    }

    #[test]
    fn primitivity() {
        let t = SchurBasis::trivial(grp("3x3"));
        assert!(is_primitive(&t) && is_trivial(&t));
        let k = k33();
        assert!(is_schur_ring(&k).is_some());
        assert!(!is_primitive(&k));
        assert!(is_primitive(&module("3x3", "(1,0),(0,1)")));
    }

    #[test]
    fn power_maps() {
        let lattice = module("3x3", "(1,0),(0,1)");
        assert_eq!(power_map(&lattice, 1).unwrap(), vec![0, 1, 2]);
        assert_eq!(power_map(&lattice, 8).unwrap(), vec![0, 1, 2]);
        assert_eq!(power_map(&lattice, 2).unwrap(), vec![0, 1, 2]);
        assert!(power_map(&lattice, 3).is_err());
        let g = grp("Zn:7");
        let not_ring = SchurBasis::new(
            g,
            vec![
                BitSet::singleton(0),
                BitSet::from_indices([1, 6]),
                BitSet::from_indices([2, 3, 4, 5]),
            ],
        )
        .unwrap();
        assert!(power_map(&not_ring, 2).is_err());
    }

    #[test]
    fn drg_iff_schur_on_order_nine() {
        let g = grp("3x3");
        let classes = g.inverse_classes();
        for bits in 1u128..16 {
            let graph = build(SymmetricSet::from_class_selection(g, &classes, bits));
            let Ok(part) = distance_partition(&graph) else {
                continue;
            };
            let module = distance_module(&graph, &part);
            assert_eq!(
                check_drg(&graph).is_some(),
                is_schur_ring(&module).is_some()
            );
        }
    }

    proptest::proptest! {
        #[test]
        fn constant_identities(bits in 1u128..(1 << 12)) {
            let g = grp("5x5");
            let graph = build(SymmetricSet::from_class_selection(g, &g.inverse_classes(), bits));
            if let Ok(part) = distance_partition(&graph) {
                let m = distance_module(&graph, &part);
                if let Some(p) = is_schur_ring(&m) {
                    let sizes = m.sizes();
                    for i in 0..m.len() {
                        for j in 0..m.len() {
                            let total: i64 = (0..m.len()).map(|k| p.get(i, j, k) * sizes[k] as i64).sum();
                            proptest::prop_assert_eq!(total, (sizes[i] * sizes[j]) as i64);
                            for k in 0..m.len() {
                                proptest::prop_assert_eq!(p.get(i, j, k), p.get(j, i, k));
                            }
                        }
                    }
                }
            }
        }
    }
}
