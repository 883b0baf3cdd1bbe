//! Arithmetic and subgroup structure of `Z_m ⊕ Z_q`.
//!
//! The groups of interest are the prime-power pairs `Z_{p^s} ⊕ Z_p`; the
//! cyclic groups `Z_n` (written with `q = 1`) and the even pairs `Z_n ⊕ Z_2`
//! are handled by the same descriptor. Elements are identified with ranks via
//! the fixed bijection `rank(a, b) = a·q + b`, so that bit-vector indices are
//! stable across runs and serialized artifacts.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::{BitSet, MAX_ORDER};
use crate::error::{Error, Result};

/// Default bound on the group order for automorphism enumeration (`3^5`).
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 243;

/// Which family a descriptor belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `Z_{p^s} ⊕ Z_p`.
    PrimePowerPair { p: usize, s: u32 },
    /// `Z_n`, stored as `Z_n ⊕ Z_1`.
    Cyclic,
    /// Any other `Z_m ⊕ Z_q`.
    Product,
}

/// The group `Z_m ⊕ Z_q` of order `m·q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    first_mod: usize,
    second_mod: usize,
    flavor: Flavor,
}

/// A point `(first, second)` with `first` mod `m` and `second` mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub first: usize,
    pub second: usize,
}

impl GroupElement {
    pub const fn new(first: usize, second: usize) -> Self {
        GroupElement { first, second }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// `(p, s)` with `n = p^s`, `s ≥ 1`, if `n` is a prime power.
pub(crate) fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut s = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        s += 1;
    }
    (rest == 1).then_some((p, s))
}

impl GroupDescriptor {
    /// `Z_m ⊕ Z_q`; the flavor is inferred.
    pub fn product(first_mod: usize, second_mod: usize) -> Result<Self> {
        if first_mod == 0 || second_mod == 0 {
            return Err(Error::GroupSpec(format!("Z_{first_mod} x Z_{second_mod}")));
        }
        let order = first_mod * second_mod;
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        let flavor = if second_mod == 1 {
            Flavor::Cyclic
        } else {
            match prime_power(first_mod) {
                Some((p, s)) if p == second_mod => Flavor::PrimePowerPair { p, s },
                _ => Flavor::Product,
            }
        };
        Ok(GroupDescriptor {
            first_mod,
            second_mod,
            flavor,
        })
    }

    /// `Z_{p^s} ⊕ Z_p` for a prime `p` and `s ≥ 1`.
    pub fn prime_power_pair(p: usize, s: u32) -> Result<Self> {
        if !is_prime(p) || s == 0 {
            return Err(Error::GroupSpec(format!("{p}^{s}x{p}")));
        }
        let m = p
            .checked_pow(s)
            .ok_or_else(|| Error::GroupSpec(format!("{p}^{s}x{p}")))?;
        Self::product(m, p)
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::product(n, 1)
    }

    pub fn first_mod(&self) -> usize {
        self.first_mod
    }

    pub fn second_mod(&self) -> usize {
        self.second_mod
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `(p, s)` for the prime-power pair flavor.
    pub fn pair_params(&self) -> Option<(usize, u32)> {
        match self.flavor {
            Flavor::PrimePowerPair { p, s } => Some((p, s)),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.first_mod * self.second_mod
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0)
    }

    /// Element with coordinates reduced modulo `(m, q)`.
    pub fn element(&self, first: i64, second: i64) -> GroupElement {
        GroupElement::new(
            first.rem_euclid(self.first_mod as i64) as usize,
            second.rem_euclid(self.second_mod as i64) as usize,
        )
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.first < self.first_mod && g.second < self.second_mod
    }

    #[inline]
    pub fn rank(&self, g: GroupElement) -> usize {
        g.first * self.second_mod + g.second
    }

    #[inline]
    pub fn element_at(&self, rank: usize) -> GroupElement {
        GroupElement::new(rank / self.second_mod, rank % self.second_mod)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |r| self.element_at(r))
    }

    #[inline]
    pub fn add(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        GroupElement::new(
            (g.first + h.first) % self.first_mod,
            (g.second + h.second) % self.second_mod,
        )
    }

    #[inline]
    pub fn neg(&self, g: GroupElement) -> GroupElement {
        GroupElement::new(
            (self.first_mod - g.first) % self.first_mod,
            (self.second_mod - g.second) % self.second_mod,
        )
    }

    #[inline]
    pub fn sub(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.add(g, self.neg(h))
    }

    /// `k·g`.
    pub fn scale(&self, k: i64, g: GroupElement) -> GroupElement {
        self.element(k * g.first as i64, k * g.second as i64)
    }

    #[inline]
    pub fn add_rank(&self, a: usize, b: usize) -> usize {
        let q = self.second_mod;
        let first = (a / q + b / q) % self.first_mod;
        let second = (a % q + b % q) % q;
        first * q + second
    }

    #[inline]
    pub fn neg_rank(&self, a: usize) -> usize {
        self.rank(self.neg(self.element_at(a)))
    }

    #[inline]
    pub fn sub_rank(&self, a: usize, b: usize) -> usize {
        self.add_rank(a, self.neg_rank(b))
    }

    /// `{g + x : x ∈ set}`.
    pub fn translate(&self, set: &BitSet, g: usize) -> BitSet {
        set.iter().map(|x| self.add_rank(g, x)).collect()
    }

    /// `{-x : x ∈ set}`.
    pub fn negate_set(&self, set: &BitSet) -> BitSet {
        set.iter().map(|x| self.neg_rank(x)).collect()
    }

    /// `{k·x : x ∈ set}`.
    pub fn scale_set(&self, set: &BitSet, k: i64) -> BitSet {
        set.iter()
            .map(|x| self.rank(self.scale(k, self.element_at(x))))
            .collect()
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.order())
    }

    /// Smallest `t ≥ 1` with `t·g = 0`.
    pub fn element_order(&self, g: GroupElement) -> usize {
        let a = self.first_mod / gcd(g.first, self.first_mod);
        let b = self.second_mod / gcd(g.second, self.second_mod);
        lcm(a, b)
    }

    /// Members of the cyclic subgroup `⟨g⟩`.
    pub fn cyclic_subgroup(&self, g: GroupElement) -> BitSet {
        let r = self.rank(g);
        let mut members = BitSet::singleton(0);
        let mut x = r;
        while x != 0 {
            members.insert(x);
            x = self.add_rank(x, r);
        }
        members
    }

    /// The subgroup generated by a set of elements.
    pub fn generated_subgroup(&self, generators: &BitSet) -> BitSet {
        let mut members = BitSet::singleton(0);
        for g in generators.iter() {
            if members.contains(g) {
                continue;
            }
            // members + ⟨g⟩
            let cyc = self.cyclic_subgroup(self.element_at(g));
            let mut next = BitSet::new();
            for a in members.iter() {
                for b in cyc.iter() {
                    next.insert(self.add_rank(a, b));
                }
            }
            members = next;
        }
        members
    }

    fn subgroup_from_members(&self, members: BitSet) -> Subgroup {
        let order = members.len();
        let elems: Vec<GroupElement> = members.iter().map(|r| self.element_at(r)).collect();
        let generators = if order == 1 {
            Vec::new()
        } else if let Some(g) = elems.iter().find(|&&g| self.element_order(g) == order) {
            vec![*g]
        } else {
            let max_ord = elems
                .iter()
                .map(|&g| self.element_order(g))
                .max()
                .unwrap_or(1);
            let g = *elems
                .iter()
                .find(|&&g| self.element_order(g) == max_ord)
                .expect("non-empty subgroup");
            let h = *elems
                .iter()
                .find(|&&h| {
                    self.generated_subgroup(&BitSet::from_indices([self.rank(g), self.rank(h)]))
                        == members
                })
                .expect("groups handled here are 2-generated");
            vec![g, h]
        };
        Subgroup {
            members,
            order,
            generators,
        }
    }

    /// All subgroups, ordered by order and then by sorted member list.
    ///
    /// Every subgroup of `Z_m ⊕ Z_q` is 2-generated, hence of the form
    /// `⟨g⟩ + ⟨h⟩`; the enumeration sums pairs of distinct cyclic subgroups.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<BitSet> = Vec::new();
        let mut seen = HashSet::new();
        for r in 0..self.order() {
            let c = self.cyclic_subgroup(self.element_at(r));
            if seen.insert(c) {
                cyclic.push(c);
            }
        }
        let mut all: HashSet<BitSet> = cyclic.iter().copied().collect();
        for (i, a) in cyclic.iter().enumerate() {
            for b in &cyclic[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let mut sum = BitSet::new();
                for x in a.iter() {
                    for y in b.iter() {
                        sum.insert(self.add_rank(x, y));
                    }
                }
                all.insert(sum);
            }
        }
        let mut list: Vec<BitSet> = all.into_iter().collect();
        list.sort_by_key(|s| (s.len(), s.to_vec()));
        list.into_iter()
            .map(|m| self.subgroup_from_members(m))
            .collect()
    }

    /// Every subgroup of order exactly `m`.
    pub fn subgroups_of_order(&self, m: usize) -> Vec<Subgroup> {
        if m == 0 || !self.order().is_multiple_of(m) {
            return Vec::new();
        }
        self.all_subgroups()
            .into_iter()
            .filter(|h| h.order == m)
            .collect()
    }

    /// Proper subgroups not contained in any other proper subgroup.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let proper: Vec<Subgroup> = self
            .all_subgroups()
            .into_iter()
            .filter(|h| h.order < n)
            .collect();
        proper
            .iter()
            .filter(|h| {
                !proper
                    .iter()
                    .any(|k| k.order > h.order && h.members.is_subset(&k.members))
            })
            .cloned()
            .collect()
    }

    /// Inverse classes `{g, -g}` of the non-identity elements, each sorted and
    /// listed by smallest rank. Involutions appear as singletons.
    pub fn inverse_classes(&self) -> Vec<Vec<usize>> {
        (1..self.order())
            .filter_map(|r| {
                let n = self.neg_rank(r);
                match r.cmp(&n) {
                    std::cmp::Ordering::Less => Some(vec![r, n]),
                    std::cmp::Ordering::Equal => Some(vec![r]),
                    std::cmp::Ordering::Greater => None,
                }
            })
            .collect()
    }

    /// The `(order - 1) / 2` unordered pairs `{g, -g}`; fails when an
    /// involution exists.
    pub fn inverse_pairs(&self) -> Result<Vec<(GroupElement, GroupElement)>> {
        self.inverse_classes()
            .into_iter()
            .map(|c| match c.as_slice() {
                [a, b] => Ok((self.element_at(*a), self.element_at(*b))),
                _ => Err(Error::Involution),
            })
            .collect()
    }

    /// The atoms `[g] = {x : ⟨x⟩ = ⟨g⟩}`, listed by smallest rank.
    pub fn atom_partition(&self) -> Vec<BitSet> {
        let mut by_subgroup: HashMap<BitSet, BitSet> = HashMap::new();
        let mut order: Vec<BitSet> = Vec::new();
        for r in 0..self.order() {
            let c = self.cyclic_subgroup(self.element_at(r));
            by_subgroup
                .entry(c)
                .or_insert_with(|| {
                    order.push(c);
                    BitSet::new()
                })
                .insert(r);
        }
        order.iter().map(|c| by_subgroup[c]).collect()
    }

    /// All automorphisms, under the default enumeration bound.
    pub fn automorphism_group(&self) -> Result<Vec<GroupAutomorphism>> {
        self.automorphism_group_with_bound(DEFAULT_AUTOMORPHISM_BOUND)
    }

    /// All automorphisms, found by enumerating images `(x, y)` of the
    /// canonical generators `(1,0)` and `(0,1)`. A candidate is kept when the
    /// images have the generators' orders, the induced map
    /// `(a, b) ↦ a·x + b·y` is well defined, and it is surjective.
    pub fn automorphism_group_with_bound(&self, bound: usize) -> Result<Vec<GroupAutomorphism>> {
        let n = self.order();
        if n > bound {
            return Err(Error::AutomorphismBound { order: n, bound });
        }
        let e1 = self.element(1, 0);
        let e2 = self.element(0, 1);
        let ord1 = self.element_order(e1);
        let ord2 = self.element_order(e2);
        let xs: Vec<GroupElement> = self
            .elements()
            .filter(|&x| self.element_order(x) == ord1)
            .collect();
        let ys: Vec<GroupElement> = self
            .elements()
            .filter(|&y| self.element_order(y) == ord2)
            .collect();
        let mut out = Vec::new();
        let mut hit = vec![false; n];
        for &x in &xs {
            // a·x for a in [0, m)
            let multiples_x: Vec<usize> = (0..self.first_mod)
                .map(|a| self.rank(self.scale(a as i64, x)))
                .collect();
            for &y in &ys {
                // well defined: m·x = 0 and q·y = 0 (implied by the order filter)
                debug_assert_eq!(self.scale(self.first_mod as i64, x), self.identity());
                debug_assert_eq!(self.scale(self.second_mod as i64, y), self.identity());
                hit.iter_mut().for_each(|h| *h = false);
                let mut table = Vec::with_capacity(n);
                let mut injective = true;
                for r in 0..n {
                    let g = self.element_at(r);
                    let yb = self.rank(self.scale(g.second as i64, y));
                    let img = self.add_rank(multiples_x[g.first], yb);
                    if hit[img] {
                        injective = false;
                        break;
                    }
                    hit[img] = true;
                    table.push(img as u16);
                }
                if injective {
                    out.push(GroupAutomorphism {
                        image_first: x,
                        image_second: y,
                        table,
                    });
                }
            }
        }
        Ok(out)
    }

    /// `true` iff `|A ∩ (g + H)| = 1` for every coset `g + H`.
    pub fn is_transversal(&self, set: &BitSet, subgroup: &Subgroup) -> bool {
        let n = self.order();
        if set.len() * subgroup.order != n {
            return false;
        }
        let mut covered = BitSet::new();
        for a in set.iter() {
            let coset = self.translate(&subgroup.members, a);
            if !coset.is_disjoint(&covered) {
                return false;
            }
            covered.union_with(&coset);
        }
        covered == self.full_set()
    }

    /// Checks that translations by the generators preserve all differences,
    /// i.e. that every translation `x ↦ g + x` is an automorphism of every
    /// Cayley graph over this group. The result is cached per group shape.
    pub fn translations_are_automorphisms(&self) -> bool {
        static VERIFIED: OnceLock<Mutex<HashMap<(usize, usize), bool>>> = OnceLock::new();
        let key = (self.first_mod, self.second_mod);
        let cache = VERIFIED.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(&ok) = cache.lock().expect("cache lock").get(&key) {
            return ok;
        }
        let n = self.order();
        let gens = [self.rank(self.element(1, 0)), self.rank(self.element(0, 1))];
        let ok = gens.iter().all(|&g| {
            (0..n).all(|h| {
                (0..n).all(|h2| {
                    self.sub_rank(self.add_rank(g, h2), self.add_rank(g, h)) == self.sub_rank(h2, h)
                })
            })
        });
        cache.lock().expect("cache lock").insert(key, ok);
        ok
    }

    /// Parses a comma-separated element list such as `(1,0),(2,0)`; bare
    /// integers are accepted for cyclic groups.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches([',', ' ']);
            if rest.is_empty() {
                break;
            }
            let (token, tail) = if rest.starts_with('(') {
                let end = rest
                    .find(')')
                    .ok_or_else(|| Error::ElementSpec(rest.to_string()))?;
                (&rest[1..end], &rest[end + 1..])
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                (&rest[..end], &rest[end..])
            };
            out.push(self.parse_element(token)?);
            rest = tail.trim_start();
        }
        Ok(out)
    }

    fn parse_element(&self, token: &str) -> Result<GroupElement> {
        let bad = || Error::ElementSpec(token.to_string());
        let parts: Vec<&str> = token.split(',').map(str::trim).collect();
        let nums: Vec<i64> = parts
            .iter()
            .map(|p| p.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match nums.as_slice() {
            [a] if self.second_mod == 1 => Ok(self.element(*a, 0)),
            [a, b] => Ok(self.element(*a, *b)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::PrimePowerPair { p, s } => write!(f, "{p}^{s}x{p}"),
            Flavor::Cyclic => write!(f, "Zn:{}", self.first_mod),
            Flavor::Product => write!(f, "Zn:{}x{}", self.first_mod, self.second_mod),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    /// Accepts `p^s x p` (e.g. `3^2x3`, `3x3`), `Zn:27` for a cyclic group and
    /// `Zn:16x2` for a general `Z_m ⊕ Z_q`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::GroupSpec(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some(body) = compact.strip_prefix("Zn:") {
            return match body.split_once('x') {
                Some((m, q)) => GroupDescriptor::product(num(m)?, num(q)?),
                None => GroupDescriptor::cyclic(num(body)?),
            };
        }
        let (left, right) = compact.split_once('x').ok_or_else(bad)?;
        let (p, s) = match left.split_once('^') {
            Some((p, s)) => (num(p)?, s.parse::<u32>().map_err(|_| bad())?),
            None => (num(left)?, 1),
        };
        if num(right)? != p {
            return Err(bad());
        }
        GroupDescriptor::prime_power_pair(p, s)
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subgroup given by its member mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub members: BitSet,
    pub order: usize,
    pub generators: Vec<GroupElement>,
}

impl Subgroup {
    pub fn contains(&self, rank: usize) -> bool {
        self.members.contains(rank)
    }
}

/// An automorphism, stored as the images of `(1,0)` and `(0,1)` together with
/// the full permutation of ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutomorphism {
    pub image_first: GroupElement,
    pub image_second: GroupElement,
    table: Vec<u16>,
}

impl GroupAutomorphism {
    #[inline]
    pub fn apply_rank(&self, rank: usize) -> usize {
        self.table[rank] as usize
    }

    pub fn apply_set(&self, set: &BitSet) -> BitSet {
        set.iter().map(|r| self.apply_rank(r)).collect()
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &t)| i == t as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupAutomorphism) -> Vec<u16> {
        other
            .table
            .iter()
            .map(|&r| self.table[r as usize])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(g("3^2x3").order(), 27);
        assert_eq!(g("3x3"), g("3^1x3"));
        assert_eq!(g("Zn:27").flavor(), Flavor::Cyclic);
        assert_eq!(g("Zn:16x2").flavor(), Flavor::PrimePowerPair { p: 2, s: 4 });
        assert_eq!(g("Zn:12x2").flavor(), Flavor::Product);
        assert_eq!(g("7^1x7").to_string(), "7^1x7");
        assert_eq!(g("Zn:9").to_string(), "Zn:9");
        assert!("4^1x4".parse::<GroupDescriptor>().is_err());
        assert!("3^2x5".parse::<GroupDescriptor>().is_err());
        assert!("Zn:400".parse::<GroupDescriptor>().is_err());
        assert!("banana".parse::<GroupDescriptor>().is_err());
    }

    #[test]
    fn rank_bijection() {
        let grp = g("3^2x3");
        for r in 0..grp.order() {
            let e = grp.element_at(r);
            assert_eq!(grp.rank(e), r);
            assert_eq!(r, e.first * 3 + e.second);
        }
    }

    #[test]
    fn element_orders() {
        let grp = g("3^2x3");
        assert_eq!(grp.element_order(grp.element(0, 0)), 1);
        assert_eq!(grp.element_order(grp.element(3, 0)), 3);
        // iterate addition until the identity is reached
        let x = grp.element(1, 1);
        let mut acc = x;
        let mut t = 1;
        while acc != grp.identity() {
            acc = grp.add(acc, x);
            t += 1;
        }
        assert_eq!(t, 9);
        assert_eq!(grp.element_order(x), 9);
        for e in grp.elements() {
            assert_eq!(grp.order() % grp.element_order(e), 0);
        }
    }

    #[test]
    fn subgroup_counts() {
        let g33 = g("3x3");
        assert_eq!(g33.subgroups_of_order(3).len(), 4);
        assert_eq!(g33.subgroups_of_order(1).len(), 1);
        assert_eq!(g33.subgroups_of_order(1)[0].members, BitSet::singleton(0));
        let g93 = g("3^2x3");
        let nine = g93.subgroups_of_order(9);
        assert_eq!(nine.len(), 4);
        let cyclic = nine.iter().filter(|h| h.generators.len() == 1).count();
        assert_eq!(cyclic, 3);
        assert!(g93.subgroups_of_order(5).is_empty());
    }

    #[test]
    fn order_p_subgroups_of_elementary_pair_meet_trivially() {
        for p in [3usize, 5, 7] {
            let grp = GroupDescriptor::prime_power_pair(p, 1).unwrap();
            let hs = grp.subgroups_of_order(p);
            assert_eq!(hs.len(), p + 1);
            for (i, a) in hs.iter().enumerate() {
                for b in &hs[i + 1..] {
                    assert_eq!(a.members.intersection(&b.members), BitSet::singleton(0));
                }
            }
        }
    }

    #[test]
    fn inverse_pair_counts() {
        assert_eq!(g("3x3").inverse_pairs().unwrap().len(), 4);
        assert_eq!(g("3^2x3").inverse_pairs().unwrap().len(), 13);
        assert_eq!(g("5x5").inverse_pairs().unwrap().len(), 12);
        assert_eq!(g("Zn:8x2").inverse_pairs(), Err(Error::Involution));
        let classes = g("Zn:8x2").inverse_classes();
        assert_eq!(classes.iter().filter(|c| c.len() == 1).count(), 3);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 15);
    }

    #[test]
    fn atoms() {
        let a = g("3x3").atom_partition();
        assert_eq!(a.len(), 5);
        assert_eq!(a[0], BitSet::singleton(0));
        assert!(a[1..].iter().all(|c| c.len() == 2));
        let z9 = g("Zn:9").atom_partition();
        let mut sizes: Vec<usize> = z9.iter().map(BitSet::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 6]);
    }

    #[test]
    fn subgroups_are_unions_of_atoms() {
        let grp = g("3^2x3");
        let atoms = grp.atom_partition();
        for h in grp.all_subgroups() {
            for a in &atoms {
                assert!(a.is_subset(&h.members) || a.is_disjoint(&h.members));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let auts = g("3x3").automorphism_group().unwrap();
        assert_eq!(auts.len(), 48);
        assert!(auts.iter().any(GroupAutomorphism::is_identity));
        assert_eq!(g("Zn:9").automorphism_group().unwrap().len(), 6);
        assert!(matches!(
            g("7^2x7").automorphism_group(),
            Err(Error::AutomorphismBound { .. })
        ));
    }

    #[test]
    fn automorphisms_are_closed_and_respect_structure() {
        let grp = g("3^2x3");
        let auts = grp.automorphism_group().unwrap();
        let tables: HashSet<Vec<u16>> = auts.iter().map(|a| a.table().to_vec()).collect();
        for a in auts.iter().take(8) {
            for b in auts.iter().take(8) {
                assert!(tables.contains(&a.compose(b)));
            }
        }
        let atoms = grp.atom_partition();
        let subgroups = grp.all_subgroups();
        let sub_masks: HashSet<BitSet> = subgroups.iter().map(|h| h.members).collect();
        for a in &auts {
            for cell in &atoms {
                assert!(atoms.contains(&a.apply_set(cell)));
            }
            for h in &subgroups {
                let img = a.apply_set(&h.members);
                assert_eq!(img.len(), h.order);
                assert!(sub_masks.contains(&img));
            }
            for x in 0..grp.order() {
                for y in 0..grp.order() {
                    assert_eq!(
                        a.apply_rank(grp.add_rank(x, y)),
                        grp.add_rank(a.apply_rank(x), a.apply_rank(y))
                    );
                }
            }
        }
    }

    #[test]
    fn transversals() {
        let z9 = g("Zn:9");
        let h = z9.subgroups_of_order(3).into_iter().next().unwrap();
        assert!(z9.is_transversal(&BitSet::from_indices([0, 1, 2]), &h));
        assert!(!z9.is_transversal(&BitSet::from_indices([0, 3, 6]), &h));
        assert!(!z9.is_transversal(&BitSet::from_indices([0, 1, 2, 3]), &h));
    }

    #[test]
    fn element_list_parsing() {
        let grp = g("3x3");
        let els = grp.parse_elements("(1,0),(2,0), (0,1),(0,-1)").unwrap();
        assert_eq!(els.len(), 4);
        assert_eq!(els[3], GroupElement::new(0, 2));
        assert_eq!(g("Zn:7").parse_elements("1,2,4").unwrap().len(), 3);
        assert!(grp.parse_elements("(1,x)").is_err());
    }

    #[test]
    fn translations_verified() {
        assert!(g("3^2x3").translations_are_automorphisms());
        assert!(g("Zn:12x2").translations_are_automorphisms());
    }

    #[test]
    fn maximal_subgroups_have_prime_index() {
        let grp = g("3^2x3");
        let maxes = grp.maximal_subgroups();
        assert_eq!(maxes.len(), 4);
        assert!(maxes.iter().all(|h| h.order == 9));
    }
}
