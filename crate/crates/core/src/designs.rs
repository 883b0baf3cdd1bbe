//! Transversal designs from partial congruence partitions, their line
//! graphs, difference sets, and the bipartite diameter-3 construction over
//! `Z_n ⊕ Z_2`.

use itertools::Itertools;
use serde::Serialize;

use crate::bits::BitSet;
use crate::cayley::{build, CayleyGraph, SymmetricSet};
use crate::drg::{check_drg, td_line_params, IntersectionArray, SrgParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{GroupDescriptor, GroupElement, Subgroup};
use crate::structure::{antipodal_classes, is_bipartite};

/// Default cap on candidate subsets examined by [`diffset_search`].
pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;

/// `r` subgroups of order `v` in a group of order `v²`, pairwise meeting
/// only in the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCongruencePartition {
    group: GroupDescriptor,
    v: usize,
    subgroups: Vec<Subgroup>,
}

fn square_root(n: usize) -> Option<usize> {
    let v = (n as f64).sqrt().round() as usize;
    (v * v == n).then_some(v)
}

impl PartialCongruencePartition {
    pub fn new(group: GroupDescriptor, subgroups: Vec<Subgroup>) -> Result<Self> {
        let v = square_root(group.order())
            .ok_or_else(|| Error::Precondition(format!("order of {group} is not a square")))?;
        let r = subgroups.len();
        if r < 2 || r > v + 1 {
            return Err(Error::Precondition(format!(
                "need 2 <= r <= {}, got {r}",
                v + 1
            )));
        }
        if subgroups.iter().any(|h| h.order != v) {
            return Err(Error::Precondition(format!(
                "every subgroup must have order {v}"
            )));
        }
        for (a, b) in subgroups.iter().tuple_combinations() {
            if a.members.intersection_len(&b.members) != 1 {
                return Err(Error::Precondition("subgroups must meet trivially".into()));
            }
        }
        Ok(PartialCongruencePartition {
            group,
            v,
            subgroups,
        })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn r(&self) -> usize {
        self.subgroups.len()
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// `∪H \ {identity}`.
    pub fn connection_set(&self) -> SymmetricSet {
        let mut mask = self
            .subgroups
            .iter()
            .fold(BitSet::new(), |acc, h| acc.union(&h.members));
        mask.remove(0);
        SymmetricSet::new(self.group, mask).expect("subgroups are inverse-closed")
    }
}

/// All partial congruence partitions with `r` parts.
pub fn pcp_enumerate(group: GroupDescriptor, r: usize) -> Result<Vec<PartialCongruencePartition>> {
    let v = square_root(group.order())
        .ok_or_else(|| Error::Precondition(format!("order of {group} is not a square")))?;
    let subgroups = group.subgroups_of_order(v);
    Ok(subgroups
        .into_iter()
        .combinations(r)
        .filter_map(|hs| PartialCongruencePartition::new(group, hs).ok())
        .collect())
}

/// A transversal design `TD(r, v)`. Point `(i, c)` is the `c`-th coset of
/// the `i`-th subgroup, cosets ordered by smallest member rank; line `g` is
/// `{g + H_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalDesign {
    pub r: usize,
    pub v: usize,
    pub points: Vec<(usize, usize)>,
    /// Point indices of each class.
    pub classes: Vec<Vec<usize>>,
    /// Point indices on each line, one line per group element rank.
    pub lines: Vec<Vec<usize>>,
}

impl TransversalDesign {
    /// Checks the design axioms; returns a description of the first failure.
    pub fn verify(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Inconsistent(m));
        let npts = self.points.len();
        if npts != self.r * self.v || self.lines.len() != self.v * self.v {
            return fail("wrong number of points or lines".into());
        }
        let class_of: Vec<usize> = self.points.iter().map(|&(i, _)| i).collect();
        if self.classes.len() != self.r || self.classes.iter().any(|c| c.len() != self.v) {
            return fail("classes must be r sets of v points".into());
        }
        for (l, line) in self.lines.iter().enumerate() {
            let mut hit = vec![0; self.r];
            line.iter().for_each(|&p| hit[class_of[p]] += 1);
            if hit.iter().any(|&h| h != 1) {
                return fail(format!("line {l} does not meet every class once"));
            }
        }
        let mut together = vec![vec![0u32; npts]; npts];
        for line in &self.lines {
            for (&a, &b) in line.iter().tuple_combinations() {
                together[a][b] += 1;
                together[b][a] += 1;
            }
        }
        for a in 0..npts {
            for b in a + 1..npts {
                let want = (class_of[a] != class_of[b]) as u32;
                if together[a][b] != want {
                    return fail(format!("points {a} and {b} share {} lines", together[a][b]));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("design serializes")
    }
}

/// Builds and verifies the design of a partition with `2 ≤ r ≤ v`.
pub fn td_from_pcp(pcp: &PartialCongruencePartition) -> Result<TransversalDesign> {
    let (r, v) = (pcp.r(), pcp.v());
    if r == v + 1 {
        return Err(Error::Precondition(
            "r = v + 1 covers the whole group; the design degenerates".into(),
        ));
    }
    let g = pcp.group;
    let n = g.order();
    let mut points = Vec::new();
    let mut classes = Vec::new();
    // coset_point[i][x] = point index of x + H_i
    let mut coset_point = vec![vec![usize::MAX; n]; r];
    for (i, h) in pcp.subgroups.iter().enumerate() {
        let mut class = Vec::new();
        for x in 0..n {
            if coset_point[i][x] == usize::MAX {
                let id = points.len();
                for y in g.translate(&h.members, x).iter() {
                    coset_point[i][y] = id;
                }
                points.push((i, class.len()));
                class.push(id);
            }
        }
        classes.push(class);
    }
    let lines = (0..n)
        .map(|x| (0..r).map(|i| coset_point[i][x]).collect())
        .collect();
    let td = TransversalDesign {
        r,
        v,
        points,
        classes,
        lines,
    };
    td.verify()?;
    Ok(td)
}

/// Lines adjacent when they share a point.
pub fn line_graph(td: &TransversalDesign) -> Graph {
    let m = td.lines.len();
    let sets: Vec<BitSet> = td
        .lines
        .iter()
        .map(|l| l.iter().copied().collect())
        .collect();
    let rows = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && !sets[a].is_disjoint(&sets[b]))
                .collect()
        })
        .collect();
    Graph::from_rows(rows).expect("sharing a point is symmetric")
}

/// The line graph together with the Cayley graph it should equal under
/// `line g ↦ g`.
#[derive(Debug, Clone)]
pub struct LineGraphCheck {
    pub graph: Graph,
    pub cayley: CayleyGraph,
    pub isomorphic: bool,
}

pub fn line_graph_check(
    pcp: &PartialCongruencePartition,
    td: &TransversalDesign,
) -> LineGraphCheck {
    let graph = line_graph(td);
    let cayley = build(pcp.connection_set());
    let isomorphic = graph == *cayley.graph();
    LineGraphCheck {
        graph,
        cayley,
        isomorphic,
    }
}

/// `(v², r(v-1), v + r² - 3r, r² - r)` for `2 ≤ r ≤ v`.
pub fn td_line_srg_params(r: usize, v: usize) -> Result<SrgParams> {
    if r < 2 || r > v {
        return Err(Error::Precondition(format!(
            "need 2 <= r <= v, got r = {r}, v = {v}"
        )));
    }
    Ok(td_line_params(r, v))
}

/// A `(v, k, λ)` difference set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSetCertificate {
    pub group: GroupDescriptor,
    #[serde(serialize_with = "ser_elements")]
    pub set: Vec<GroupElement>,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    /// `k - λ`.
    pub order: i64,
    /// `k ∉ {0, 1, v - 1, v}`.
    pub nontrivial: bool,
}

fn ser_elements<S: serde::Serializer>(
    set: &[GroupElement],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(set.iter().map(ToString::to_string))
}

fn difference_counts(group: GroupDescriptor, set: &BitSet) -> Vec<usize> {
    let mut counts = vec![0usize; group.order()];
    for a in set.iter() {
        for b in set.iter() {
            counts[group.sub_rank(a, b)] += 1;
        }
    }
    counts
}

/// A certificate iff every non-identity element is a difference `d1 - d2`
/// the same number of times.
pub fn diffset_verify(group: GroupDescriptor, set: &BitSet) -> Option<DifferenceSetCertificate> {
    let v = group.order();
    let k = set.len();
    let counts = difference_counts(group, set);
    let lambda = counts.get(1).copied().unwrap_or(0);
    if counts[1..].iter().any(|&c| c != lambda) {
        return None;
    }
    Some(DifferenceSetCertificate {
        group,
        set: set.iter().map(|r| group.element_at(r)).collect(),
        v,
        k,
        lambda,
        order: k as i64 - lambda as i64,
        nontrivial: ![0, 1, v.wrapping_sub(1), v].contains(&k),
    })
}

/// Difference sets of one size, as class representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffSetSearch {
    pub group: GroupDescriptor,
    pub k: usize,
    pub candidates: u128,
    /// One member per translation class: the smallest translate.
    pub translation_classes: Vec<Vec<usize>>,
    /// One member per class under translations and automorphisms.
    pub affine_classes: Vec<Vec<usize>>,
}

impl DiffSetSearch {
    /// Every difference set found, all translates included.
    pub fn all_sets(&self) -> Vec<BitSet> {
        let g = self.group;
        let mut out: Vec<BitSet> = self
            .translation_classes
            .iter()
            .flat_map(|d| {
                let d: BitSet = d.iter().copied().collect();
                (0..g.order()).map(move |t| g.translate(&d, t))
            })
            .collect();
        out.sort_by_key(BitSet::to_vec);
        out.dedup();
        out
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn smallest_translate(group: GroupDescriptor, set: &BitSet) -> Vec<usize> {
    set.iter()
        .map(|d| group.translate(set, group.neg_rank(d)).to_vec())
        .min()
        .unwrap_or_default()
}

/// All `k`-element difference sets up to translation. Translation lets the
/// search fix the identity inside the set, so `C(|G| - 1, k - 1)` candidates
/// are examined; that count must not exceed `budget`.
pub fn diffset_search(group: GroupDescriptor, k: usize, budget: u128) -> Result<DiffSetSearch> {
    let n = group.order();
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "set size {k} out of range 1..={n}"
        )));
    }
    let candidates = binomial(n - 1, k - 1);
    if candidates > budget {
        return Err(Error::BudgetExceeded {
            needed: candidates,
            budget,
        });
    }
    let mut translation_classes = Vec::new();
    for rest in (1..n).combinations(k - 1) {
        let set: BitSet = std::iter::once(0).chain(rest).collect();
        if diffset_verify(group, &set).is_none() {
            continue;
        }
        let canon = smallest_translate(group, &set);
        if canon == set.to_vec() {
            translation_classes.push(canon);
        }
    }
    let automorphisms = group.automorphism_group_with_bound(n.max(1))?;
    let mut affine_classes: Vec<Vec<usize>> = translation_classes
        .iter()
        .map(|d| {
            let d: BitSet = d.iter().copied().collect();
            automorphisms
                .iter()
                .map(|a| smallest_translate(group, &a.apply_set(&d)))
                .min()
                .expect("identity automorphism exists")
        })
        .collect();
    affine_classes.sort();
    affine_classes.dedup();
    Ok(DiffSetSearch {
        group,
        k,
        candidates,
        translation_classes,
        affine_classes,
    })
}

/// Outcome of building `Cay(Z_n ⊕ Z_2, (R_0, 0) ∪ (R_1, 1))` and testing the
/// shifted set `(-1 + R_0, 0) ∪ (-1 + R_1, 1)` inside `2Z_n ⊕ Z_2`.
#[derive(Debug, Clone, Serialize)]
pub struct BipartiteConstruction {
    pub n: usize,
    pub connection_set: Vec<String>,
    /// The shifted set in `Z_{n/2} ⊕ Z_2`, first coordinates halved.
    pub shifted_set: Vec<String>,
    pub certificate: Option<DifferenceSetCertificate>,
    pub array: Option<IntersectionArray>,
    pub bipartite: bool,
    pub antipodal: bool,
    /// Non-trivial difference set iff the graph is a bipartite,
    /// non-antipodal distance-regular graph of diameter 3; a trivial
    /// difference set gives the complete bipartite graph.
    pub prediction_holds: bool,
    #[serde(skip)]
    pub graph: CayleyGraph,
}

fn odd_symmetric(n: usize, set: &BitSet, name: &str) -> Result<()> {
    if set.is_empty() {
        return Err(Error::Precondition(format!("{name} is empty")));
    }
    for x in set.iter() {
        if x >= n || x % 2 == 0 {
            return Err(Error::Precondition(format!(
                "{name} has {x}, not an odd residue mod {n}"
            )));
        }
        if !set.contains((n - x) % n) {
            return Err(Error::NotSymmetric(format!(
                "{name} has {x} but not {}",
                n - x
            )));
        }
    }
    Ok(())
}

/// Builds the graph from odd, negation-closed, non-empty `R_0, R_1 ⊆ Z_n`
/// and reports both sides of the predicted equivalence.
pub fn bipartite_from_rows(n: usize, r0: &BitSet, r1: &BitSet) -> Result<BipartiteConstruction> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n = {n} must be even and greater than 2"
        )));
    }
    odd_symmetric(n, r0, "R_0")?;
    odd_symmetric(n, r1, "R_1")?;
    let g = GroupDescriptor::product(n, 2)?;
    let half = GroupDescriptor::product(n / 2, 2)?;
    let mut mask = BitSet::new();
    let mut shifted = BitSet::new();
    for (b, row) in [r0, r1].into_iter().enumerate() {
        for a in row.iter() {
            mask.insert(g.rank(g.element(a as i64, b as i64)));
            shifted.insert(half.rank(half.element((a as i64 - 1) / 2, b as i64)));
        }
    }
    let graph = build(SymmetricSet::new(g, mask)?);
    let certificate = diffset_verify(half, &shifted);
    let array = check_drg(&graph);
    let bipartite = is_bipartite(graph.graph()).is_some();
    let antipodal = array
        .as_ref()
        .is_some_and(|a| antipodal_classes(graph.graph(), a.diameter()).is_some());
    let prediction_holds = match (&certificate, &array) {
        (Some(c), Some(a)) if c.nontrivial => a.diameter() == 3 && bipartite && !antipodal,
        (Some(c), Some(a)) => c.k == n && a.diameter() == 2 && bipartite,
        (None, None) => true,
        (Some(c), None) => !c.nontrivial && c.k != n,
        (None, Some(_)) => false,
    };
    Ok(BipartiteConstruction {
        n,
        connection_set: graph.connection_set().to_strings(),
        shifted_set: shifted
            .iter()
            .map(|r| half.element_at(r).to_string())
            .collect(),
        certificate,
        array,
        bipartite,
        antipodal,
        prediction_holds,
        graph,
    })
}

/// `R_b = 1 + 2·D_b` for a set `D ⊆ Z_{n/2} ⊕ Z_2`; `None` unless the rows
/// come out negation-closed and non-empty.
pub fn rows_from_shifted(n: usize, d: &BitSet) -> Option<(BitSet, BitSet)> {
    let half = GroupDescriptor::product(n / 2, 2).ok()?;
    let mut rows = [BitSet::new(), BitSet::new()];
    for r in d.iter() {
        let e = half.element_at(r);
        rows[e.second].insert(1 + 2 * e.first);
    }
    let [r0, r1] = rows;
    (odd_symmetric(n, &r0, "R_0").is_ok() && odd_symmetric(n, &r1, "R_1").is_ok())
        .then_some((r0, r1))
}

/// The three families other than the difference-set construction, over
/// `Z_n ⊕ Z_2`: the complete graph, every `K_{t×m}` with `tm = 2n` and
/// `t, m ≥ 2` realizable as `G \ H`, and `K_{n,n} - nK_2`.
pub fn doubled_group_families(n: usize) -> Result<Vec<(String, CayleyGraph, IntersectionArray)>> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n = {n} must be even and greater than 2"
        )));
    }
    let g = GroupDescriptor::product(n, 2)?;
    let total = 2 * n;
    let mut out = Vec::new();
    out.push((
        format!("K_{total}"),
        build(SymmetricSet::all_nonidentity(g)),
        IntersectionArray::from_bc(vec![total - 1], vec![1])?,
    ));
    for m in (2..total).filter(|m| total.is_multiple_of(*m)) {
        let t = total / m;
        for h in g.subgroups_of_order(m) {
            let set = SymmetricSet::new(g, g.full_set().difference(&h.members))?;
            out.push((
                format!("K_{t}x{m} by H = {:?}", h.members.to_vec()),
                build(set),
                IntersectionArray::from_bc(vec![total - m, m - 1], vec![1, total - m])?,
            ));
        }
    }
    let cocktail: BitSet = (1..n).map(|a| g.rank(g.element(a as i64, 1))).collect();
    out.push((
        format!("K_{n},{n} - {n}K_2"),
        build(SymmetricSet::new(g, cocktail)?),
        IntersectionArray::from_bc(vec![n - 1, n - 2, 1], vec![1, n - 2, n - 1])?,
    ));
    Ok(out)
}
