//! Distance-regularity: intersection arrays, strongly regular parameters and
//! parameter-based family recognition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::is_prime;

/// Intersection numbers `b_i, a_i, c_i` and layer sizes `k_i` of a
/// distance-regular graph of diameter `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionArray {
    /// `b_0, …, b_{d-1}`.
    pub b: Vec<usize>,
    /// `c_1, …, c_d`.
    pub c: Vec<usize>,
    /// `a_0, …, a_d`.
    pub a: Vec<usize>,
    /// `k_0, …, k_d`.
    pub sizes: Vec<usize>,
}

impl IntersectionArray {
    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> usize {
        self.b.first().copied().unwrap_or(0)
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c_at(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `b_i`, with `b_d = 0`.
    pub fn b_at(&self, i: usize) -> usize {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_1 = 1`, `a_i + b_i + c_i = k` and `k_i·b_i = k_{i+1}·c_{i+1}`.
    pub fn is_consistent(&self) -> bool {
        let d = self.diameter();
        let k = self.valency();
        self.c.len() == d
            && self.a.len() == d + 1
            && self.sizes.len() == d + 1
            && self.c.first().is_none_or(|&c1| c1 == 1)
            && (0..=d).all(|i| self.a[i] + self.b_at(i) + self.c_at(i) == k)
            && (0..d).all(|i| self.sizes[i] * self.b[i] == self.sizes[i + 1] * self.c[i])
    }

    /// `c_i` non-decreasing and `b_i` non-increasing.
    pub fn is_monotone(&self) -> bool {
        self.c.windows(2).all(|w| w[0] <= w[1]) && self.b.windows(2).all(|w| w[0] >= w[1])
    }

    /// Rebuilds the remaining numbers from `{b; c}`.
    pub fn from_bc(b: Vec<usize>, c: Vec<usize>) -> Result<Self> {
        let d = b.len();
        if c.len() != d || d == 0 {
            return Err(Error::Precondition(
                "b and c must have equal non-zero length".into(),
            ));
        }
        let k = b[0];
        let mut sizes = vec![1usize];
        for i in 0..d {
            let num = sizes[i] * b[i];
            if c[i] == 0 || !num.is_multiple_of(c[i]) {
                return Err(Error::Precondition("layer sizes are not integral".into()));
            }
            sizes.push(num / c[i]);
        }
        let a = (0..=d)
            .map(|i| {
                let bi = b.get(i).copied().unwrap_or(0);
                let ci = if i == 0 { 0 } else { c[i - 1] };
                k.checked_sub(bi + ci)
                    .ok_or_else(|| Error::Precondition("b_i + c_i exceeds k".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntersectionArray { b, c, a, sizes })
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{}; {}}}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("malformed intersection array {text:?}"));
        let body = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let (b, c) = body.split_once(';').ok_or_else(bad)?;
        let parse = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        IntersectionArray::from_bc(parse(b)?, parse(c)?)
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntersectionArray {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters `(n, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn new(n: usize, k: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { n, k, lambda, mu }
    }

    /// `k(k - λ - 1) = (n - k - 1)μ`.
    pub fn is_feasible(&self) -> bool {
        self.k > self.lambda
            && self.n > self.k
            && self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Known families, identified from parameters alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    Complete,
    /// `K_{t×m}`: `t` parts of size `m`.
    CompleteMultipartite {
        parts: usize,
        part_size: usize,
    },
    Cycle(usize),
    Paley(usize),
    /// `K_{m,m} - mK_2`.
    CocktailComplement(usize),
    /// Line graph of a transversal design `TD(r, v)`.
    TdLineGraph {
        r: usize,
        v: usize,
    },
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Complete => write!(f, "Complete"),
            FamilyTag::CompleteMultipartite { parts, part_size } => {
                write!(f, "CompleteMultipartite({parts},{part_size})")
            }
            FamilyTag::Cycle(n) => write!(f, "Cycle({n})"),
            FamilyTag::Paley(q) => write!(f, "Paley({q})"),
            FamilyTag::CocktailComplement(m) => write!(f, "CocktailComplement({m})"),
            FamilyTag::TdLineGraph { r, v } => write!(f, "TDLineGraph({r},{v})"),
            FamilyTag::Other => write!(f, "Other"),
        }
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Intersection numbers around `root` given its BFS layers, if every vertex
/// of each layer sees the same `(c, a, b)` triple.
fn array_around(graph: &Graph, layers: &[BitSet]) -> Option<IntersectionArray> {
    let d = layers.len() - 1;
    let empty = BitSet::new();
    let mut b = Vec::with_capacity(d);
    let mut c = Vec::with_capacity(d);
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let prev = if i == 0 { &empty } else { &layers[i - 1] };
        let next = layers.get(i + 1).unwrap_or(&empty);
        let mut triple = None;
        for v in layers[i].iter() {
            let row = graph.neighbors(v);
            let t = (
                row.intersection_len(prev),
                row.intersection_len(&layers[i]),
                row.intersection_len(next),
            );
            match triple {
                None => triple = Some(t),
                Some(x) if x != t => return None,
                _ => {}
            }
        }
        let (ci, ai, bi) = triple?;
        if i > 0 {
            c.push(ci);
        }
        a.push(ai);
        if i < d {
            b.push(bi);
        }
    }
    Some(IntersectionArray {
        b,
        c,
        a,
        sizes: layers.iter().map(BitSet::len).collect(),
    })
}

/// Intersection array of a connected Cayley graph, if it is distance-regular.
///
/// Translations are automorphisms of every Cayley graph over the group (this
/// is verified once per group shape), so only pairs rooted at the identity
/// are examined. Checks run in the order connectivity, λ-constancy over the
/// first layer, full layer check.
pub fn check_drg(graph: &CayleyGraph) -> Option<IntersectionArray> {
    assert!(
        graph.group().translations_are_automorphisms(),
        "translations must be graph automorphisms"
    );
    let g = graph.graph();
    let layers = g.bfs_layers(0);
    if layers.iter().map(BitSet::len).sum::<usize>() != g.order() {
        return None;
    }
    if let Some(first) = layers.get(1) {
        let mut lambda = None;
        for v in first.iter() {
            let l = g.neighbors(v).intersection_len(first);
            if *lambda.get_or_insert(l) != l {
                return None;
            }
        }
    }
    array_around(g, &layers)
}

/// Intersection array of an arbitrary connected graph, checking every root.
pub fn check_drg_general(graph: &Graph) -> Option<IntersectionArray> {
    if graph.order() == 0 || !graph.is_connected() {
        return None;
    }
    let first = array_around(graph, &graph.bfs_layers(0))?;
    for v in 1..graph.order() {
        if array_around(graph, &graph.bfs_layers(v))? != first {
            return None;
        }
    }
    Some(first)
}

/// `(n, k, λ, μ)` for diameter-2 arrays.
pub fn srg_params(array: &IntersectionArray) -> Option<SrgParams> {
    (array.diameter() == 2).then(|| SrgParams {
        n: array.order(),
        k: array.valency(),
        lambda: array.a[1],
        mu: array.c[1],
    })
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `(v², r(v-1), v + r² - 3r, r² - r)`.
pub fn td_line_params(r: usize, v: usize) -> SrgParams {
    SrgParams::new(v * v, r * (v - 1), v + r * r - 3 * r, r * r - r)
}

fn paley_match(p: &SrgParams) -> Option<FamilyTag> {
    let n = p.n;
    (is_prime(n) && n % 4 == 1 && *p == SrgParams::new(n, (n - 1) / 2, (n - 5) / 4, (n - 1) / 4))
        .then_some(FamilyTag::Paley(n))
}

fn td_match(p: &SrgParams) -> Option<FamilyTag> {
    let v = isqrt(p.n);
    if v < 2 || v * v != p.n || !p.k.is_multiple_of(v - 1) {
        return None;
    }
    let r = p.k / (v - 1);
    ((2..=v).contains(&r) && td_line_params(r, v) == *p).then_some(FamilyTag::TdLineGraph { r, v })
}

/// Every parameter-based tag among Paley and TD line graph that matches.
pub fn parameter_candidates(array: &IntersectionArray) -> Vec<FamilyTag> {
    srg_params(array)
        .map(|p| {
            [paley_match(&p), td_match(&p)]
                .into_iter()
                .flatten()
                .collect()
        })
        .unwrap_or_default()
}

/// Deterministic parameter-based tagging of a verified intersection array.
/// A collision between the Paley and TD line graph tuples yields `Other`.
pub fn recognize(array: &IntersectionArray) -> FamilyTag {
    let d = array.diameter();
    let n = array.order();
    let k = array.valency();
    if d == 1 {
        return FamilyTag::Complete;
    }
    if d == 2 && array.c[1] == k {
        let part_size = n - k;
        return FamilyTag::CompleteMultipartite {
            parts: n / part_size,
            part_size,
        };
    }
    if k == 2 {
        return FamilyTag::Cycle(n);
    }
    if d == 3 && n.is_multiple_of(2) {
        let m = n / 2;
        if m >= 3 && array.b == [m - 1, m - 2, 1] && array.c == [1, m - 2, m - 1] {
            return FamilyTag::CocktailComplement(m);
        }
    }
    match parameter_candidates(array).as_slice() {
        [one] => *one,
        _ => FamilyTag::Other,
    }
}
