//! Imprimitivity analysis: bipartitions, antipodal classes, quotients by
//! subgroups, halved graphs, equitable partitions, and the spectrum of a
//! non-bipartite antipodal distance-regular graph of diameter 3.

use serde::Serialize;

use crate::bits::BitSet;
use crate::cayley::{build, CayleyGraph, DistancePartition, SymmetricSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{GroupDescriptor, Subgroup};

/// Disjoint vertex blocks covering the vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<BitSet>,
}

impl VertexPartition {
    pub fn new(order: usize, blocks: Vec<BitSet>) -> Result<Self> {
        let mut seen = BitSet::new();
        for b in &blocks {
            if b.is_empty() || !b.is_disjoint(&seen) {
                return Err(Error::Precondition(
                    "blocks must be non-empty and disjoint".into(),
                ));
            }
            seen.union_with(b);
        }
        if seen != BitSet::full(order) {
            return Err(Error::Precondition(
                "blocks must cover the vertex set".into(),
            ));
        }
        Ok(VertexPartition { blocks })
    }

    /// The partition into singletons.
    pub fn discrete(order: usize) -> Self {
        VertexPartition {
            blocks: (0..order).map(BitSet::singleton).collect(),
        }
    }

    pub fn blocks(&self) -> &[BitSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// Block sizes, if all equal.
    pub fn uniform_size(&self) -> Option<usize> {
        let s = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == s).then_some(s)
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(BitSet::to_vec).collect()
    }
}

/// Two-coloring by BFS parity, if consistent.
pub fn is_bipartite(graph: &Graph) -> Option<(BitSet, BitSet)> {
    let mut even = BitSet::new();
    let mut odd = BitSet::new();
    for comp in graph.components() {
        let root = comp.first()?;
        for (i, layer) in graph.bfs_layers(root).iter().enumerate() {
            if i % 2 == 0 {
                even.union_with(layer);
            } else {
                odd.union_with(layer);
            }
        }
    }
    let clash = even.iter().any(|v| !graph.neighbors(v).is_disjoint(&even))
        || odd.iter().any(|v| !graph.neighbors(v).is_disjoint(&odd));
    (!clash).then_some((even, odd))
}

/// Classes of the relation `∂(u, v) ∈ {0, d}` if it is an equivalence
/// relation (transitivity is checked over all pairs); requires `d ≥ 2`.
pub fn antipodal_classes(graph: &Graph, diameter: usize) -> Option<VertexPartition> {
    if diameter < 2 {
        return None;
    }
    let n = graph.order();
    let classes: Vec<BitSet> = (0..n)
        .map(|u| {
            let layers = graph.bfs_layers(u);
            let mut c = BitSet::singleton(u);
            if let Some(far) = layers.get(diameter) {
                c.union_with(far);
            }
            c
        })
        .collect();
    for u in 0..n {
        if classes[u].iter().any(|v| classes[v] != classes[u]) {
            return None;
        }
    }
    let mut blocks: Vec<BitSet> = Vec::new();
    for c in classes {
        if !blocks.contains(&c) {
            blocks.push(c);
        }
    }
    blocks.sort_by_key(|b| b.first());
    let part = VertexPartition { blocks };
    part.uniform_size().map(|_| part)
}

/// Antipodal classes of a Cayley graph from its distance partition.
pub fn antipodal_classes_of(
    graph: &CayleyGraph,
    partition: &DistancePartition,
) -> Option<VertexPartition> {
    antipodal_classes(graph.graph(), partition.diameter())
}

/// Every distance-`i` graph is connected. For a Cayley graph the
/// distance-`i` graph is `Cay(G, Γ_i(0))`, connected iff the layer generates
/// `G`. For valency at least 3 this agrees with "neither bipartite nor
/// antipodal"; cycles of composite length are the exception.
pub fn is_primitive_graph(graph: &CayleyGraph, partition: &DistancePartition) -> bool {
    let g = graph.group();
    let full = g.full_set();
    partition.layers()[1..]
        .iter()
        .all(|layer| g.generated_subgroup(layer) == full)
}

/// A Cayley graph over `G/B`, identified with `Z_e ⊕ Z_f`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: CayleyGraph,
    /// Quotient rank of the coset containing each element of `G`.
    pub coset_of: Vec<usize>,
    pub blocks: VertexPartition,
}

impl Quotient {
    pub fn group(&self) -> GroupDescriptor {
        self.graph.group()
    }
}

/// `Cay(G/B, S/B)` with `S/B = {s + B : s ∈ S \ B}`. The quotient group is
/// put in invariant-factor form by choosing a coset `x` of maximal order and
/// a complement generator `y`.
pub fn quotient_by_subgroup(graph: &CayleyGraph, subgroup: &Subgroup) -> Result<Quotient> {
    let g = graph.group();
    let n = g.order();
    if !subgroup.contains(0) || subgroup.order == 0 || !n.is_multiple_of(subgroup.order) {
        return Err(Error::Precondition(
            "not a subgroup of the graph's group".into(),
        ));
    }
    let s = graph.connection_set();
    if s.mask().is_subset(&subgroup.members) {
        return Err(Error::Precondition(
            "connection set lies inside the subgroup; quotient connection set is empty".into(),
        ));
    }
    // cosets by smallest rank
    let mut coset_index = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for r in 0..n {
        if coset_index[r] == usize::MAX {
            for x in g.translate(&subgroup.members, r).iter() {
                coset_index[x] = reps.len();
            }
            reps.push(r);
        }
    }
    let count = reps.len();
    let coset_add = |a: usize, b: usize| coset_index[g.add_rank(reps[a], reps[b])];
    let coset_order = |a: usize| {
        let mut t = 1;
        let mut acc = a;
        while acc != 0 {
            acc = coset_add(acc, a);
            t += 1;
        }
        t
    };
    let multiples = |a: usize, len: usize| {
        let mut out = Vec::with_capacity(len);
        let mut acc = 0;
        for _ in 0..len {
            out.push(acc);
            acc = coset_add(acc, a);
        }
        out
    };
    let exponent = (0..count).map(coset_order).max().unwrap_or(1);
    let x = (0..count)
        .find(|&a| coset_order(a) == exponent)
        .expect("some coset attains the exponent");
    let cofactor = count / exponent;
    let x_mult = multiples(x, exponent);
    let in_x: Vec<bool> = {
        let mut v = vec![false; count];
        x_mult.iter().for_each(|&c| v[c] = true);
        v
    };
    let y = if cofactor == 1 {
        0
    } else {
        (0..count)
            .find(|&b| {
                coset_order(b) == cofactor
                    && multiples(b, cofactor).iter().skip(1).all(|&c| !in_x[c])
            })
            .ok_or_else(|| {
                Error::Inconsistent("no complement for a maximal cyclic subgroup".into())
            })?
    };
    let y_mult = multiples(y, cofactor);
    let qgroup = GroupDescriptor::product(exponent, cofactor)?;
    // phi(a, b) = a·x + b·y; invert it
    let mut to_quotient = vec![usize::MAX; count];
    for (a, &xa) in x_mult.iter().enumerate() {
        for (b, &yb) in y_mult.iter().enumerate() {
            let c = coset_add(xa, yb);
            if to_quotient[c] != usize::MAX {
                return Err(Error::Inconsistent(
                    "quotient identification is not injective".into(),
                ));
            }
            to_quotient[c] = qgroup.rank(qgroup.element(a as i64, b as i64));
        }
    }
    let coset_of: Vec<usize> = (0..n).map(|r| to_quotient[coset_index[r]]).collect();
    let qmask: BitSet = s
        .mask()
        .difference(&subgroup.members)
        .iter()
        .map(|r| coset_of[r])
        .collect();
    let qgraph = build(SymmetricSet::new(qgroup, qmask)?);
    // block adjacency must match quotient adjacency
    let mut block_adj = vec![BitSet::new(); count];
    for u in 0..n {
        for v in graph.neighbors(u).iter() {
            if coset_of[u] != coset_of[v] {
                block_adj[coset_of[u]].insert(coset_of[v]);
            }
        }
    }
    if block_adj
        .iter()
        .enumerate()
        .any(|(c, row)| row != qgraph.neighbors(c))
    {
        return Err(Error::Inconsistent(
            "block adjacency differs from quotient adjacency".into(),
        ));
    }
    let mut blocks = vec![BitSet::new(); count];
    for (r, &c) in coset_of.iter().enumerate() {
        blocks[c].insert(r);
    }
    blocks.sort_by_key(|b| b.first());
    Ok(Quotient {
        graph: qgraph,
        coset_of,
        blocks: VertexPartition { blocks },
    })
}

/// One halved graph: the color class and the distance-2 graph on it.
#[derive(Debug, Clone)]
pub struct HalvedGraph {
    pub vertices: Vec<usize>,
    pub graph: Graph,
}

/// The two halved graphs of a connected bipartite graph.
pub fn halved_graphs(
    graph: &Graph,
    bipartition: &(BitSet, BitSet),
) -> Result<(HalvedGraph, HalvedGraph)> {
    let (x, y) = bipartition;
    let valid = x.is_disjoint(y)
        && x.union(y) == BitSet::full(graph.order())
        && x.iter().all(|v| graph.neighbors(v).is_subset(y))
        && y.iter().all(|v| graph.neighbors(v).is_subset(x));
    if !valid {
        return Err(Error::NotBipartite);
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = graph.order();
    let rows: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut two = graph.neighborhood_of(graph.neighbors(v));
            two.remove(v);
            two
        })
        .collect();
    let distance_two = Graph::from_rows(rows)?;
    let half = |side: &BitSet| HalvedGraph {
        vertices: side.to_vec(),
        graph: distance_two.induced(side),
    };
    Ok((half(x), half(y)))
}

/// Block-degree matrix `b_ij` if every vertex of block `i` has exactly `b_ij`
/// neighbors in block `j`.
pub fn is_equitable(graph: &Graph, partition: &VertexPartition) -> Option<Vec<Vec<usize>>> {
    let blocks = partition.blocks();
    let mut matrix = Vec::with_capacity(blocks.len());
    for bi in blocks {
        let first = bi.first()?;
        let row: Vec<usize> = blocks
            .iter()
            .map(|bj| graph.neighbors(first).intersection_len(bj))
            .collect();
        for v in bi.iter() {
            if blocks
                .iter()
                .zip(&row)
                .any(|(bj, &want)| graph.neighbors(v).intersection_len(bj) != want)
            {
                return None;
            }
        }
        matrix.push(row);
    }
    Some(matrix)
}

/// Spectrum `{k, θ_1^{m_1}, (-1)^k, θ_3^{m_3}}` of an `r`-fold antipodal
/// non-bipartite distance-regular graph of diameter 3.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntipodalSpectrum {
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
    pub mu: usize,
    /// `4δ² = 4k + (λ - μ)²`, exact.
    pub discriminant: i64,
    pub delta: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub m1: f64,
    pub m3: f64,
    pub order: usize,
    /// `θ_1` and `θ_3` are integers (the discriminant is a perfect square).
    pub integral: bool,
    /// Exact integer eigenvalues when integral.
    pub exact_thetas: Option<(i64, i64)>,
    /// Multiplicities are exact non-negative integers.
    pub multiplicities_integral: bool,
    /// `false` when `λ ≠ μ` but the eigenvalues are irrational, or the
    /// multiplicities are not integers.
    pub feasible: bool,
}

fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Eigenvalues and multiplicities from `(k, r, λ, μ)`; requires
/// `k = μ(r - 1) + λ + 1` and `r ≥ 2`.
pub fn antipodal_spectrum(
    k: usize,
    r: usize,
    lambda: usize,
    mu: usize,
) -> Result<AntipodalSpectrum> {
    if r < 2 {
        return Err(Error::Precondition(format!(
            "fold r = {r} must be at least 2"
        )));
    }
    if k != mu * (r - 1) + lambda + 1 {
        return Err(Error::Precondition(format!(
            "k = {k} differs from mu(r-1) + lambda + 1 = {}",
            mu * (r - 1) + lambda + 1
        )));
    }
    let diff = lambda as i64 - mu as i64;
    let discriminant = 4 * k as i64 + diff * diff;
    let delta = (discriminant as f64).sqrt() / 2.0;
    let half = diff as f64 / 2.0;
    let theta1 = half + delta;
    let theta3 = half - delta;
    let total = ((r - 1) * (k + 1)) as i64;
    let m1 = -theta3 / (theta1 - theta3) * total as f64;
    let m3 = theta1 / (theta1 - theta3) * total as f64;
    let root = exact_sqrt(discriminant);
    let exact_thetas = root.map(|s| ((diff + s) / 2, (diff - s) / 2));
    let multiplicities_integral = match (root, exact_thetas) {
        (Some(s), Some((t1, t3))) => {
            (-t3 * total) % s == 0 && (t1 * total) % s == 0 && -t3 * total >= 0 && t1 * total >= 0
        }
        // λ = μ: m_1 = m_3 = total / 2
        _ if diff == 0 => total % 2 == 0,
        _ => false,
    };
    let integral = root.is_some();
    let feasible = (diff == 0 || integral) && multiplicities_integral;
    Ok(AntipodalSpectrum {
        k,
        r,
        lambda,
        mu,
        discriminant,
        delta,
        theta1,
        theta2: -1.0,
        theta3,
        m1,
        m3,
        order: r * (k + 1),
        integral,
        exact_thetas,
        multiplicities_integral,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::distance_partition;
    use crate::drg::{check_drg, check_drg_general};

    fn grp(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn primitivity_of_distance_graphs() {
        let prim = |g: &str, set: &str| {
            let graph = build(SymmetricSet::parse_closed(grp(g), set).unwrap());
            is_primitive_graph(&graph, &distance_partition(&graph).unwrap())
        };
        // C_9: distance-3 graph is three triangles
        assert!(!prim("Zn:9", "(1,0)"));
        assert!(prim("Zn:7", "(1,0)"));
        assert!(prim("3x3", "(1,0),(0,1)"));
        // K_{3x3}
        assert!(!prim("3x3", "(1,0),(0,1),(1,1)"));
    }

    fn cay(g: &str, set: &str) -> CayleyGraph {
        build(SymmetricSet::parse_closed(grp(g), set).unwrap())
    }

    fn multipartite(g: GroupDescriptor, part: usize) -> (CayleyGraph, Subgroup) {
        let h = g.subgroups_of_order(part).remove(0);
        let graph = build(SymmetricSet::new(g, g.full_set().difference(&h.members)).unwrap());
        (graph, h)
    }

    #[test]
    fn bipartiteness() {
        let k9 = build(SymmetricSet::all_nonidentity(grp("3x3")));
        assert!(is_bipartite(k9.graph()).is_none());
        let lattice = cay("3x3", "(1,0),(0,1)");
        assert!(is_bipartite(lattice.graph()).is_none());
        let c6 = cay("Zn:6", "1");
        let (a, b) = is_bipartite(c6.graph()).unwrap();
        assert_eq!(a.to_vec(), vec![0, 2, 4]);
        assert_eq!(b.to_vec(), vec![1, 3, 5]);
    }

    #[test]
    fn antipodal_class_examples() {
        let (k33, _) = multipartite(grp("3x3"), 3);
        let part = distance_partition(&k33).unwrap();
        let classes = antipodal_classes_of(&k33, &part).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.uniform_size(), Some(3));
        let lattice = cay("3x3", "(1,0),(0,1)");
        let part = distance_partition(&lattice).unwrap();
        assert!(antipodal_classes_of(&lattice, &part).is_none());
        let k9 = build(SymmetricSet::all_nonidentity(grp("3x3")));
        assert!(antipodal_classes(k9.graph(), 1).is_none());
    }

    #[test]
    fn quotients() {
        let (k33, h) = multipartite(grp("3x3"), 3);
        let q = quotient_by_subgroup(&k33, &h).unwrap();
        assert_eq!(q.group().order(), 3);
        assert_eq!(check_drg(&q.graph).unwrap().to_string(), "{2; 1}");

        let k9 = build(SymmetricSet::all_nonidentity(grp("3x3")));
        for h in grp("3x3").subgroups_of_order(3) {
            let q = quotient_by_subgroup(&k9, &h).unwrap();
            assert_eq!(q.graph.valency(), 2);
            assert_eq!(q.graph.order(), 3);
        }

        let (k39, h9) = multipartite(grp("3^2x3"), 9);
        let q = quotient_by_subgroup(&k39, &h9).unwrap();
        assert_eq!(q.graph.order(), 3);
        assert_eq!(q.graph.valency(), 2);
        assert_eq!(q.blocks.uniform_size(), Some(9));

        let tri = cay("3x3", "(1,0)");
        let inside = grp("3x3")
            .subgroups_of_order(3)
            .into_iter()
            .find(|h| h.contains(3))
            .unwrap();
        assert!(quotient_by_subgroup(&tri, &inside).is_err());
    }

    #[test]
    fn quotient_to_non_elementary_group() {
        // Z_9 + Z_3 modulo <(0,1)> is cyclic of order 9
        let g = grp("3^2x3");
        let graph = cay("3^2x3", "(1,0),(0,1)");
        let h = g
            .subgroups_of_order(3)
            .into_iter()
            .find(|h| h.contains(1))
            .unwrap();
        let q = quotient_by_subgroup(&graph, &h).unwrap();
        assert_eq!(q.group().to_string(), "Zn:9");
        assert_eq!(q.graph.valency(), 2);
    }

    #[test]
    fn halved_graph_examples() {
        let c6 = cay("Zn:6", "1");
        let bip = is_bipartite(c6.graph()).unwrap();
        let (a, b) = halved_graphs(c6.graph(), &bip).unwrap();
        assert_eq!(a.graph.edge_count(), 3);
        assert_eq!(b.graph.edge_count(), 3);

        let cube = cay("Zn:4x2", "(1,1),(2,1)");
        let bip = is_bipartite(cube.graph()).unwrap();
        let (a, b) = halved_graphs(cube.graph(), &bip).unwrap();
        for h in [a, b] {
            assert_eq!(h.vertices.len(), 4);
            assert_eq!(h.graph.edge_count(), 6);
        }

        let k9 = build(SymmetricSet::all_nonidentity(grp("3x3")));
        let fake = (BitSet::from_indices(0..4), BitSet::from_indices(4..9));
        assert_eq!(
            halved_graphs(k9.graph(), &fake).err(),
            Some(Error::NotBipartite)
        );
    }

    #[test]
    fn equitable_partitions() {
        let lattice = cay("3x3", "(1,0),(0,1)");
        let part = distance_partition(&lattice).unwrap();
        let vp = VertexPartition::new(9, part.layers().to_vec()).unwrap();
        let m = is_equitable(lattice.graph(), &vp).unwrap();
        let arr = check_drg(&lattice).unwrap();
        for i in 0..=2 {
            assert_eq!(m[i][i], arr.a[i]);
            if i > 0 {
                assert_eq!(m[i][i - 1], arr.c_at(i));
            }
            if i < 2 {
                assert_eq!(m[i][i + 1], arr.b_at(i));
            }
        }

        let (k33, _) = multipartite(grp("3x3"), 3);
        let classes = antipodal_classes(k33.graph(), 2).unwrap();
        let m = is_equitable(k33.graph(), &classes).unwrap();
        assert_eq!(m, vec![vec![0, 3, 3], vec![3, 0, 3], vec![3, 3, 0]]);

        let singles = VertexPartition::discrete(9);
        let m = is_equitable(lattice.graph(), &singles).unwrap();
        assert!(m.iter().all(|row| row.iter().sum::<usize>() == 4));

        let uneven = VertexPartition::new(
            9,
            vec![BitSet::from_indices([0, 1]), BitSet::from_indices(2..9)],
        )
        .unwrap();
        assert!(is_equitable(lattice.graph(), &uneven).is_none());
    }

    #[test]
    fn antipodal_quotient_of_cocktail_complement() {
        let cube = cay("Zn:4x2", "(1,1),(2,1)");
        let arr = check_drg(&cube).unwrap();
        assert_eq!(arr.diameter(), 3);
        let part = distance_partition(&cube).unwrap();
        let classes = antipodal_classes_of(&cube, &part).unwrap();
        assert_eq!(classes.uniform_size(), Some(2));
        let g = cube.group();
        let id_class = classes.blocks()[0];
        let sub = g
            .all_subgroups()
            .into_iter()
            .find(|h| h.members == id_class)
            .expect("antipodal class of the identity is a subgroup");
        let q = quotient_by_subgroup(&cube, &sub).unwrap();
        assert_eq!(check_drg(&q.graph).unwrap().diameter(), 1);
        assert_eq!(check_drg_general(q.graph.graph()).unwrap().diameter(), 1);
    }

    #[test]
    fn spectrum_examples() {
        let s = antipodal_spectrum(3, 2, 1, 1).unwrap();
        assert!((s.theta1 - 3f64.sqrt()).abs() < 1e-12);
        assert!((s.theta3 + 3f64.sqrt()).abs() < 1e-12);
        assert!((s.m1 - 2.0).abs() < 1e-12);
        assert!((s.m3 - 2.0).abs() < 1e-12);
        assert_eq!(s.order, 8);
        assert!(!s.integral);
        assert!(s.feasible);
        assert!(antipodal_spectrum(3, 2, 0, 1).is_err());
        assert!(antipodal_spectrum(3, 1, 2, 0).is_err());
    }

    #[test]
    fn spectrum_integral_case() {
        // k = 5, r = 2, λ = 0, μ = 4: 4k + 16 = 36
        let s = antipodal_spectrum(5, 2, 0, 4).unwrap();
        assert_eq!(s.exact_thetas, Some((1, -5)));
        assert!(s.integral);
        assert!(s.multiplicities_integral);
        assert_eq!((s.m1, s.m3), (5.0, 1.0));
    }

    proptest::proptest! {
        #[test]
        fn spectrum_identities(mu in 0usize..20, lambda in 0usize..20, r in 2usize..8) {
            let k = mu * (r - 1) + lambda + 1;
            let s = antipodal_spectrum(k, r, lambda, mu).unwrap();
            let total = ((r - 1) * (k + 1)) as f64;
            proptest::prop_assert!((s.m1 + s.m3 - total).abs() < 1e-6 * total.max(1.0));
            proptest::prop_assert!((s.m1 * s.theta1 + s.m3 * s.theta3).abs() < 1e-6 * total.max(1.0));
            let d = lambda as f64 - mu as f64;
            proptest::prop_assert!((s.delta * s.delta - (k as f64 + d * d / 4.0)).abs() < 1e-6 * (k as f64 + d * d));
            proptest::prop_assert_eq!(s.order, r * (k + 1));
            if lambda != mu && !s.integral {
                proptest::prop_assert!(!s.feasible);
            }
        }
    }
}
