//! Exhaustive census of distance-regular Cayley connection sets.
//!
//! Symmetric sets are enumerated as unions of inverse classes, indexed by a
//! selection integer whose bit `i` picks the `i`-th class. A bit-parallel
//! kernel works on whole element masks held in a `u64` or `u128` (groups of
//! order up to 128): a translation by `(x, y)` is a rotation by `x·q` bits
//! followed by a rotation by `y` inside every block of `q` bits. Cheap
//! filters run first (generation, then constancy of common-neighbor counts
//! along the first layer), and only survivors get the full layer check.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_traits::PrimInt;
use serde::Serialize;

use crate::bits::BitSet;
use crate::cayley::{build, distance_partition, CayleyGraph, SymmetricSet};
use crate::designs::pcp_enumerate;
use crate::drg::{check_drg, check_drg_general, recognize, FamilyTag, IntersectionArray};
use crate::error::{Error, Result};
use crate::fourier::fourier_audit;
use crate::group::{is_prime, GroupAutomorphism, GroupDescriptor};
use crate::schur::{distance_module, is_primitive, is_schur_ring};
use crate::structure::{
    antipodal_classes, halved_graphs, is_bipartite, is_primitive_graph, quotient_by_subgroup,
};

/// Largest selection space scanned by full enumeration, by default.
pub const DEFAULT_MAX_SETS: u128 = 1 << 24;
/// Default cap on canonical nodes visited in orbit-first mode.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// All symmetric sets, one per selection `0..2^P`, streamed in order.
pub fn enumerate_symmetric_sets(
    group: GroupDescriptor,
) -> Result<impl Iterator<Item = SymmetricSet>> {
    let classes = group.inverse_classes();
    if classes.len() > 64 {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << 64.min(classes.len()),
            budget: u64::MAX as u128,
        });
    }
    let total: u128 = 1u128 << classes.len();
    Ok((0..total).map(move |sel| SymmetricSet::from_class_selection(group, &classes, sel)))
}

/// Lexicographically smallest sorted rank list in the `Aut(G)` orbit of
/// `set`, and the orbit size.
pub fn orbit_canonical(set: &SymmetricSet) -> Result<(SymmetricSet, usize)> {
    let autos = set.group().automorphism_group()?;
    Ok(orbit_canonical_with(set, &autos))
}

fn orbit_canonical_with(set: &SymmetricSet, autos: &[GroupAutomorphism]) -> (SymmetricSet, usize) {
    let images: HashSet<Vec<usize>> = autos
        .iter()
        .map(|a| a.apply_set(set.mask()).to_vec())
        .collect();
    let best = images.iter().min().expect("identity automorphism").clone();
    let canon =
        SymmetricSet::new(set.group(), best.into_iter().collect()).expect("images stay symmetric");
    (canon, images.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// Every selection in `0..2^P`.
    Full,
    /// Orderly generation of orbit representatives (experimental).
    OrbitFirst { node_budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelCheck {
    /// Compare the kernel with the generic checker on DRG hits.
    Hits,
    /// Compare on every set (slow; for small orders).
    All,
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub mode: CensusMode,
    /// Contiguous ranges the selection space is cut into.
    pub partitions: usize,
    /// Worker threads processing partitions.
    pub threads: usize,
    /// Cheap filters and the bit-parallel kernel. When off, every set goes
    /// through the generic graph checker.
    pub pruning: bool,
    pub kernel_check: KernelCheck,
    /// Run the Schur-ring check on every `schur_every`-th hit (0 disables).
    pub schur_every: usize,
    pub fourier: bool,
    pub max_sets: u128,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            mode: CensusMode::Full,
            partitions: 1,
            threads: 1,
            pruning: true,
            kernel_check: KernelCheck::Hits,
            schur_every: 1,
            fourier: true,
            max_sets: DEFAULT_MAX_SETS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusFlags {
    pub primitive: bool,
    pub bipartite: bool,
    pub antipodal: bool,
    pub schur_verified: Option<bool>,
    pub schur_primitive: Option<bool>,
    pub fourier_audit: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusRecord {
    pub set: Vec<String>,
    pub orbit_size: usize,
    pub family: FamilyTag,
    pub array: IntersectionArray,
    pub flags: CensusFlags,
    #[serde(skip)]
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusTotals {
    pub symmetric_sets: u128,
    pub connected: u128,
    pub drg_sets: u128,
    pub orbits: usize,
    pub parameter_classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyCount {
    pub family: FamilyTag,
    pub array: IntersectionArray,
    pub sets: u128,
    pub orbits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusReport {
    pub group: GroupDescriptor,
    pub totals: CensusTotals,
    pub families: Vec<FamilyCount>,
    pub records: Vec<CensusRecord>,
    pub anomalies: Vec<String>,
    /// Items worth a manual look that are not contradictions.
    pub review: Vec<String>,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Number of DRG sets with the given family tag.
    pub fn sets_with(&self, family: FamilyTag) -> u128 {
        self.families
            .iter()
            .filter(|f| f.family == family)
            .map(|f| f.sets)
            .sum()
    }
}

/// Bit-parallel evaluation of selections on a group of order at most the
/// width of `T`.
struct Kernel<T> {
    n: usize,
    q: usize,
    full: T,
    hi: Vec<T>,
    lo: Vec<T>,
    /// Per element rank: (block shift `x·q`, in-block shift `y`).
    shift: Vec<(usize, usize)>,
    maximal: Vec<T>,
    chunks: Vec<Vec<T>>,
    class_reps: Vec<usize>,
}

const CHUNK: usize = 8;

impl<T: PrimInt + Send + Sync> Kernel<T> {
    fn new(group: GroupDescriptor) -> Self {
        let n = group.order();
        let q = group.second_mod();
        let width = T::zero().count_zeros() as usize;
        assert!(n <= width, "group too large for kernel word");
        let bit = |i: usize| T::one() << i;
        let full = (0..n).fold(T::zero(), |acc, i| acc | bit(i));
        let mut hi = Vec::with_capacity(q);
        let mut lo = Vec::with_capacity(q);
        for y in 0..q {
            hi.push(
                (0..n)
                    .filter(|i| i % q >= y)
                    .fold(T::zero(), |acc, i| acc | bit(i)),
            );
            lo.push(
                (0..n)
                    .filter(|i| i % q < y)
                    .fold(T::zero(), |acc, i| acc | bit(i)),
            );
        }
        let shift = (0..n)
            .map(|r| {
                let e = group.element_at(r);
                (e.first * q, e.second)
            })
            .collect();
        let to_word = |s: &BitSet| s.iter().fold(T::zero(), |acc, i| acc | bit(i));
        let maximal = group
            .maximal_subgroups()
            .iter()
            .map(|h| to_word(&h.members))
            .collect();
        let classes = group.inverse_classes();
        let chunks = classes
            .chunks(CHUNK)
            .map(|part| {
                (0..1usize << part.len())
                    .map(|sel| {
                        part.iter()
                            .enumerate()
                            .filter(|(i, _)| sel >> i & 1 == 1)
                            .flat_map(|(_, c)| c.iter())
                            .fold(T::zero(), |acc, &r| acc | bit(r))
                    })
                    .collect()
            })
            .collect();
        Kernel {
            n,
            q,
            full,
            hi,
            lo,
            shift,
            maximal,
            chunks,
            class_reps: classes.iter().map(|c| c[0]).collect(),
        }
    }

    #[inline]
    fn element_mask(&self, sel: u64) -> T {
        self.chunks
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (c, table)| {
                acc | table[(sel >> (c * CHUNK)) as usize & ((1 << CHUNK) - 1)]
            })
    }

    #[inline]
    fn translate(&self, m: T, v: usize) -> T {
        let (bs, y) = self.shift[v];
        let mut r = if bs == 0 {
            m
        } else {
            ((m << bs) | (m >> (self.n - bs))) & self.full
        };
        if y != 0 {
            r = ((r << y) & self.hi[y]) | ((r >> (self.q - y)) & self.lo[y]);
        }
        r
    }

    fn bits(m: T) -> impl Iterator<Item = usize> {
        let mut m = m;
        std::iter::from_fn(move || {
            if m == T::zero() {
                return None;
            }
            let i = m.trailing_zeros() as usize;
            m = m & (m - T::one());
            Some(i)
        })
    }

    fn connected(&self, s: T) -> bool {
        if self.n == 1 {
            return true;
        }
        s != T::zero() && self.maximal.iter().all(|&h| s & !h != T::zero())
    }

    /// `None` when disconnected; `Some(None)` when connected but not
    /// distance-regular.
    fn evaluate(&self, sel: u64) -> Option<Option<IntersectionArray>> {
        let s = self.element_mask(sel);
        if !self.connected(s) {
            return None;
        }
        let mut lambda = None;
        for &r in &self.class_reps {
            if s & (T::one() << r) != T::zero() {
                let l = (s & self.translate(s, r)).count_ones();
                match lambda {
                    None => lambda = Some(l),
                    Some(x) if x != l => return Some(None),
                    _ => {}
                }
            }
        }
        Some(self.full_check(s))
    }

    fn full_check(&self, s: T) -> Option<IntersectionArray> {
        let mut layers = vec![T::one()];
        let mut seen = T::one();
        loop {
            let last = *layers.last().expect("non-empty");
            let next =
                Self::bits(last).fold(T::zero(), |acc, v| acc | self.translate(s, v)) & !seen;
            if next == T::zero() {
                break;
            }
            seen = seen | next;
            layers.push(next);
        }
        let d = layers.len() - 1;
        let (mut b, mut c, mut a) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..=d {
            let prev = if i == 0 { T::zero() } else { layers[i - 1] };
            let next = layers.get(i + 1).copied().unwrap_or(T::zero());
            let mut triple = None;
            for v in Self::bits(layers[i]) {
                let nb = self.translate(s, v);
                let t = (
                    (nb & prev).count_ones(),
                    (nb & layers[i]).count_ones(),
                    (nb & next).count_ones(),
                );
                match triple {
                    None => triple = Some(t),
                    Some(x) if x != t => return None,
                    _ => {}
                }
            }
            let (ci, ai, bi) = triple?;
            if i > 0 {
                c.push(ci as usize);
            }
            a.push(ai as usize);
            if i < d {
                b.push(bi as usize);
            }
        }
        Some(IntersectionArray {
            b,
            c,
            a,
            sizes: layers.iter().map(|l| l.count_ones() as usize).collect(),
        })
    }
}

/// Verdict of the generic path: build the graph and check it.
fn generic_evaluate(
    group: GroupDescriptor,
    classes: &[Vec<usize>],
    sel: u64,
) -> Option<Option<IntersectionArray>> {
    let set = SymmetricSet::from_class_selection(group, classes, sel as u128);
    let graph = build(set);
    if !graph.is_connected() {
        return None;
    }
    Some(check_drg(&graph))
}

enum Evaluator {
    Word(Kernel<u64>),
    Wide(Kernel<u128>),
    Generic,
}

impl Evaluator {
    fn new(group: GroupDescriptor, pruning: bool) -> Self {
        match group.order() {
            _ if !pruning => Evaluator::Generic,
            n if n <= 64 => Evaluator::Word(Kernel::new(group)),
            n if n <= 128 => Evaluator::Wide(Kernel::new(group)),
            _ => Evaluator::Generic,
        }
    }

    fn evaluate(
        &self,
        group: GroupDescriptor,
        classes: &[Vec<usize>],
        sel: u64,
    ) -> Option<Option<IntersectionArray>> {
        match self {
            Evaluator::Word(k) => k.evaluate(sel),
            Evaluator::Wide(k) => k.evaluate(sel),
            Evaluator::Generic => generic_evaluate(group, classes, sel),
        }
    }
}

#[derive(Default)]
struct PartialScan {
    connected: u128,
    hits: Vec<(u64, IntersectionArray)>,
    /// Selections where kernel and generic verdicts differ.
    disagreements: Vec<u64>,
    /// Orbit sizes of hits, orbit-first mode only.
    orbit_sizes: Vec<usize>,
}

impl PartialScan {
    fn merge(mut self, other: PartialScan) -> PartialScan {
        self.connected += other.connected;
        self.hits.extend(other.hits);
        self.disagreements.extend(other.disagreements);
        self.orbit_sizes.extend(other.orbit_sizes);
        self
    }
}

fn scan_range(
    group: GroupDescriptor,
    classes: &[Vec<usize>],
    eval: &Evaluator,
    check: KernelCheck,
    range: std::ops::Range<u64>,
) -> PartialScan {
    let mut out = PartialScan::default();
    for sel in range {
        let verdict = eval.evaluate(group, classes, sel);
        if check == KernelCheck::All && !matches!(eval, Evaluator::Generic) {
            let generic = generic_evaluate(group, classes, sel);
            if generic != verdict {
                out.disagreements.push(sel);
            }
        }
        match verdict {
            None => {}
            Some(None) => out.connected += 1,
            Some(Some(arr)) => {
                out.connected += 1;
                out.hits.push((sel, arr));
            }
        }
    }
    out
}

fn run_partitioned<F>(jobs: usize, threads: usize, work: F) -> PartialScan
where
    F: Fn(usize) -> PartialScan + Sync,
{
    let results: Mutex<Vec<Option<PartialScan>>> = Mutex::new((0..jobs).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = threads.clamp(1, jobs.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                if j >= jobs {
                    break;
                }
                let part = work(j);
                results.lock().expect("results lock")[j] = Some(part);
            });
        }
    });
    results
        .into_inner()
        .expect("results lock")
        .into_iter()
        .map(|p| p.expect("every job ran"))
        .fold(PartialScan::default(), PartialScan::merge)
}

fn full_scan(
    group: GroupDescriptor,
    classes: &[Vec<usize>],
    opts: &CensusOptions,
) -> Result<(u128, PartialScan)> {
    let p = classes.len();
    let total: u128 = 1u128 << p.min(127);
    if p >= 64 || total > opts.max_sets {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: opts.max_sets,
        });
    }
    let total64 = total as u64;
    let parts = opts.partitions.max(1) as u64;
    let eval = Evaluator::new(group, opts.pruning);
    let bounds = |j: u64| total64 / parts * j + (total64 % parts).min(j);
    let scan = run_partitioned(parts as usize, opts.threads, |j| {
        let j = j as u64;
        scan_range(
            group,
            classes,
            &eval,
            opts.kernel_check,
            bounds(j)..bounds(j + 1),
        )
    });
    Ok((total, scan))
}

/// Orderly generation: class `i` sits at bit `P-1-i` of a key, a selection is
/// canonical when no automorphism image has a larger key, and children add
/// classes beyond the current last one. The parent of a canonical selection
/// is canonical, so every orbit is reached exactly once.
fn orbit_first_scan(
    group: GroupDescriptor,
    classes: &[Vec<usize>],
    autos: &[GroupAutomorphism],
    opts: &CensusOptions,
    node_budget: u64,
) -> Result<(u128, PartialScan)> {
    let p = classes.len();
    if p > 64 {
        return Err(Error::BudgetExceeded {
            needed: 1u128 << 64,
            budget: u64::MAX as u128,
        });
    }
    let mut class_of = vec![usize::MAX; group.order()];
    for (i, c) in classes.iter().enumerate() {
        c.iter().for_each(|&r| class_of[r] = i);
    }
    let perms: Vec<Vec<usize>> = autos
        .iter()
        .map(|a| {
            classes
                .iter()
                .map(|c| class_of[a.apply_rank(c[0])])
                .collect()
        })
        .collect();
    let key = |sel: u64| -> u64 {
        (0..p)
            .filter(|i| sel >> i & 1 == 1)
            .fold(0u64, |acc, i| acc | 1 << (p - 1 - i))
    };
    // Some(stabilizer size) if canonical
    let canonical = |sel: u64| -> Option<usize> {
        let own = key(sel);
        let mut stab = 0;
        for perm in &perms {
            let img = (0..p)
                .filter(|i| sel >> i & 1 == 1)
                .fold(0u64, |acc, i| acc | 1 << (p - 1 - perm[i]));
            match img.cmp(&own) {
                std::cmp::Ordering::Greater => return None,
                std::cmp::Ordering::Equal => stab += 1,
                std::cmp::Ordering::Less => {}
            }
        }
        Some(stab)
    };
    let eval = Evaluator::new(group, opts.pruning);
    let mut out = PartialScan::default();
    let mut visited = 0u64;
    // (selection, next class index allowed)
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    while let Some((sel, from)) = stack.pop() {
        visited += 1;
        if visited > node_budget {
            return Err(Error::BudgetExceeded {
                needed: visited as u128,
                budget: node_budget as u128,
            });
        }
        let stab = canonical(sel).expect("only canonical selections are pushed");
        let orbit = autos.len() / stab;
        match eval.evaluate(group, classes, sel) {
            None => {}
            Some(None) => out.connected += orbit as u128,
            Some(Some(arr)) => {
                out.connected += orbit as u128;
                out.hits.push((sel, arr));
                out.orbit_sizes.push(orbit);
            }
        }
        for i in (from..p).rev() {
            let child = sel | 1 << i;
            if canonical(child).is_some() {
                stack.push((child, i + 1));
            }
        }
    }
    Ok((1u128 << p, out))
}

struct OrbitAcc {
    hits: usize,
    expected: usize,
    record: CensusRecord,
}

/// Whether the family is one the classification allows over this group.
fn expected_family(group: GroupDescriptor, family: FamilyTag) -> bool {
    let n = group.order();
    match (group.pair_params(), family) {
        (_, FamilyTag::Complete) => true,
        (_, FamilyTag::CompleteMultipartite { parts, part_size }) => parts * part_size == n,
        (Some((p, 1)), FamilyTag::TdLineGraph { r, v }) => v == p && (2..p).contains(&r),
        (Some(_), _) => false,
        (None, _) => family != FamilyTag::Other,
    }
}

fn structure_problems(graph: &CayleyGraph, array: &IntersectionArray) -> Vec<String> {
    let mut out = Vec::new();
    let d = array.diameter();
    if let Some(bip) = is_bipartite(graph.graph()) {
        match halved_graphs(graph.graph(), &bip) {
            Ok((x, y)) => {
                for h in [x, y] {
                    match check_drg_general(&h.graph) {
                        Some(a) if a.diameter() == d / 2 => {}
                        _ => out.push(
                            "halved graph is not distance-regular of half the diameter".into(),
                        ),
                    }
                }
            }
            Err(e) => out.push(format!("halved graphs failed: {e}")),
        }
    }
    if d >= 2 {
        if let Some(classes) = antipodal_classes(graph.graph(), d) {
            let g = graph.group();
            let id_class = classes.blocks()[0];
            match g
                .all_subgroups()
                .into_iter()
                .find(|h| h.members == id_class)
            {
                None => out.push("antipodal class of the identity is not a subgroup".into()),
                Some(h) => match quotient_by_subgroup(graph, &h) {
                    Ok(q) => match check_drg(&q.graph) {
                        Some(a) if a.diameter() == d / 2 => {}
                        _ => out.push(
                            "antipodal quotient is not distance-regular of half the diameter"
                                .into(),
                        ),
                    },
                    Err(e) => out.push(format!("antipodal quotient failed: {e}")),
                },
            }
        }
    }
    out
}

/// Exhaustive census over a group without involutions.
pub fn census(group: GroupDescriptor, opts: &CensusOptions) -> Result<CensusReport> {
    if group.inverse_pairs().is_err() {
        return Err(Error::Involution);
    }
    let classes = group.inverse_classes();
    let autos = group.automorphism_group()?;
    let (total, scan) = match opts.mode {
        CensusMode::Full => full_scan(group, &classes, opts)?,
        CensusMode::OrbitFirst { node_budget } => {
            orbit_first_scan(group, &classes, &autos, opts, node_budget)?
        }
    };
    let mut anomalies = Vec::new();
    for sel in &scan.disagreements {
        let set = SymmetricSet::from_class_selection(group, &classes, *sel as u128);
        anomalies.push(format!("kernel and generic checker disagree on {set}"));
    }
    let mut hits = scan.hits;
    let orbit_sizes = scan.orbit_sizes;
    let orbit_first = matches!(opts.mode, CensusMode::OrbitFirst { .. });
    let mut order: Vec<usize> = (0..hits.len()).collect();
    order.sort_by_key(|&i| hits[i].0);
    let mut orbits: BTreeMap<Vec<usize>, OrbitAcc> = BTreeMap::new();
    let mut drg_sets: u128 = 0;
    let pair_s = group.pair_params().map(|(_, s)| s);
    for (count, &i) in order.iter().enumerate() {
        let (sel, ref kernel_array) = hits[i];
        let set = SymmetricSet::from_class_selection(group, &classes, sel as u128);
        let graph = build(set);
        let Some(array) = check_drg(&graph) else {
            anomalies.push(format!(
                "kernel accepted {set} but the generic checker rejects it"
            ));
            continue;
        };
        if array != *kernel_array {
            anomalies.push(format!(
                "kernel array {kernel_array} differs from {array} on {set}"
            ));
        }
        let family = recognize(&array);
        let bipartite = is_bipartite(graph.graph()).is_some();
        let antipodal =
            array.diameter() >= 2 && antipodal_classes(graph.graph(), array.diameter()).is_some();
        let partition = distance_partition(&graph)?;
        let primitive = is_primitive_graph(&graph, &partition);
        if array.valency() >= 3
            && primitive != (array.diameter() == 1 || (!bipartite && !antipodal))
        {
            anomalies.push(format!("primitive = {primitive} but bipartite = {bipartite}, antipodal = {antipodal} on {set}"));
        }
        let (mut schur_verified, mut schur_primitive) = (None, None);
        if opts.schur_every > 0 && count % opts.schur_every == 0 {
            let module = distance_module(&graph, &partition);
            let ok = is_schur_ring(&module).is_some();
            schur_verified = Some(ok);
            if ok {
                let mp = is_primitive(&module);
                schur_primitive = Some(mp);
                if mp != primitive {
                    anomalies.push(format!("module primitivity {mp} differs from graph primitivity {primitive} on {set}"));
                }
            } else {
                anomalies.push(format!("distance module of {set} is not a Schur ring"));
            }
        }
        let mut fourier_ok = None;
        if opts.fourier && pair_s.is_some() && array.diameter() >= 2 {
            let audit = fourier_audit(&graph)?;
            fourier_ok = Some(audit.passed());
            if let Some(f) = audit.failure {
                anomalies.push(format!("fourier audit failed on {set}: {f}"));
            }
        }
        let (canon, size) = orbit_canonical_with(&set, &autos);
        let orbit_size = if orbit_first { orbit_sizes[i] } else { size };
        if orbit_size != size {
            anomalies.push(format!(
                "orbit size {orbit_size} from the stabilizer differs from {size} on {set}"
            ));
        }
        drg_sets += if orbit_first { orbit_size as u128 } else { 1 };
        let entry = orbits
            .entry(canon.mask().to_vec())
            .or_insert_with(|| OrbitAcc {
                hits: 0,
                expected: size,
                record: CensusRecord {
                    set: canon.to_strings(),
                    orbit_size: size,
                    family,
                    array: array.clone(),
                    flags: CensusFlags {
                        primitive,
                        bipartite,
                        antipodal,
                        schur_verified,
                        schur_primitive,
                        fourier_audit: fourier_ok,
                    },
                    ranks: canon.mask().to_vec(),
                },
            });
        entry.hits += 1;
        if entry.record.family != family || entry.record.array != array {
            anomalies.push(format!("orbit of {canon} mixes arrays or families"));
        }
        let rec = &mut entry.record.flags;
        if rec.primitive != primitive || rec.bipartite != bipartite || rec.antipodal != antipodal {
            anomalies.push(format!("orbit of {canon} mixes structure flags"));
        }
        // sampled checks may land on any member; keep the conjunction
        rec.schur_verified = and_opt(rec.schur_verified, schur_verified);
        rec.schur_primitive = rec.schur_primitive.or(schur_primitive);
        rec.fourier_audit = and_opt(rec.fourier_audit, fourier_ok);
        for problem in structure_problems(&graph, &array) {
            anomalies.push(format!("{problem} ({set})"));
        }
    }
    hits.clear();
    let mut records = Vec::new();
    for (_, acc) in orbits {
        let want = if orbit_first { 1 } else { acc.expected };
        if acc.hits != want {
            anomalies.push(format!(
                "orbit of {{{}}} has size {} but {} members were found",
                acc.record.set.join(","),
                acc.expected,
                acc.hits
            ));
        }
        records.push(acc.record);
    }
    let mut families: BTreeMap<(FamilyTag, String), FamilyCount> = BTreeMap::new();
    for r in &records {
        let set = format!("{{{}}}", r.set.join(","));
        if r.family == FamilyTag::Other {
            anomalies.push(format!("unrecognized family {} for {set}", r.array));
        }
        if r.flags.antipodal && !r.flags.bipartite && r.array.diameter() == 3 {
            anomalies.push(format!("antipodal non-bipartite diameter-3 graph {set}"));
        }
        if pair_s.is_some_and(|s| s >= 2) && r.flags.primitive && r.array.diameter() > 1 {
            anomalies.push(format!("primitive non-complete graph {set} with s >= 2"));
        }
        if pair_s.is_some() && matches!(r.family, FamilyTag::Paley(_) | FamilyTag::Cycle(_)) {
            anomalies.push(format!("{} tag on {set}", r.family));
        }
        if !expected_family(group, r.family) {
            anomalies.push(format!(
                "{} is not an allowed family for {group} ({set})",
                r.family
            ));
        }
        let f = families
            .entry((r.family, r.array.to_string()))
            .or_insert_with(|| FamilyCount {
                family: r.family,
                array: r.array.clone(),
                sets: 0,
                orbits: 0,
            });
        f.sets += r.orbit_size as u128;
        f.orbits += 1;
    }
    let families: Vec<FamilyCount> = families.into_values().collect();
    let mut review = Vec::new();
    for f in &families {
        if f.orbits > 1 {
            review.push(format!(
                "{} {} spans {} orbits; the orbits may or may not give isomorphic graphs",
                f.family, f.array, f.orbits
            ));
        }
    }
    let totals = CensusTotals {
        symmetric_sets: total,
        connected: scan.connected,
        drg_sets,
        orbits: records.len(),
        parameter_classes: families.len(),
    };
    Ok(CensusReport {
        group,
        totals,
        families,
        records,
        anomalies,
        review,
    })
}

fn and_opt(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x && y),
        (x, None) => x,
        (None, y) => y,
    }
}

/// A connection set realizing `family` over `group`, verified with the
/// distance-regularity checker.
pub fn construct_family(group: GroupDescriptor, family: FamilyTag) -> Result<CayleyGraph> {
    let n = group.order();
    let bad = |m: String| Err(Error::Precondition(m));
    let set = match family {
        FamilyTag::Complete => SymmetricSet::all_nonidentity(group),
        FamilyTag::CompleteMultipartite { parts, part_size } => {
            if parts * part_size != n || parts < 2 || part_size < 2 {
                return bad(format!(
                    "{parts} parts of size {part_size} do not fit a group of order {n}"
                ));
            }
            let Some(h) = group.subgroups_of_order(part_size).into_iter().next() else {
                return bad(format!("{group} has no subgroup of order {part_size}"));
            };
            SymmetricSet::new(group, group.full_set().difference(&h.members))?
        }
        FamilyTag::TdLineGraph { r, v } => {
            if group.first_mod() != v || group.second_mod() != v || !is_prime(v) {
                return bad(format!(
                    "transversal design lines need Z_{v} + Z_{v}, got {group}"
                ));
            }
            if !(2..v).contains(&r) {
                return bad(format!("need 2 <= r <= {}, got {r}", v - 1));
            }
            pcp_enumerate(group, r)?.remove(0).connection_set()
        }
        FamilyTag::Cycle(m) => {
            if group != GroupDescriptor::cyclic(m)? || m < 3 {
                return bad(format!("cycles are built over Zn:{m} with n >= 3"));
            }
            SymmetricSet::parse_closed(group, "1")?
        }
        FamilyTag::Paley(qq) => {
            if group != GroupDescriptor::cyclic(qq)? || !is_prime(qq) || qq % 4 != 1 {
                return bad(format!(
                    "Paley graphs are built over Zn:{qq}, {qq} a prime 1 mod 4"
                ));
            }
            let squares: BitSet = (1..qq).map(|x| x * x % qq).collect();
            SymmetricSet::new(group, squares)?
        }
        FamilyTag::CocktailComplement(m) => {
            if group != GroupDescriptor::product(m, 2)? || m < 3 {
                return bad(format!("K_(m,m) - mK_2 is built over Zn:{m}x2 with m >= 3"));
            }
            let mask = (1..m)
                .map(|a| group.rank(group.element(a as i64, 1)))
                .collect();
            SymmetricSet::new(group, mask)?
        }
        FamilyTag::Other => return bad("no construction for Other".into()),
    };
    let graph = build(set);
    match check_drg(&graph).map(|a| recognize(&a)) {
        Some(tag) if tag == family => Ok(graph),
        other => Err(Error::Inconsistent(format!(
            "constructed graph recognized as {other:?}, not {family}"
        ))),
    }
}
