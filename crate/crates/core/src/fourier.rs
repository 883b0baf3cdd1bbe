//! Exact discrete Fourier transforms over `Z_{p^s}` with values in `Z[ω]`,
//! and the common-neighbor identity audit for Cayley graphs over
//! `Z_{p^s} ⊕ Z_p`.

use serde::Serialize;

use crate::bits::BitSet;
use crate::cayley::{distance_partition, CayleyGraph};
use crate::drg::check_drg;
use crate::error::{Error, Result};
use crate::group::{gcd, GroupDescriptor};

pub use crate::cyclotomic::{cyc_multiply, CyclotomicInteger, CyclotomicRing};

/// Indicator function of a subset of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicFunction {
    n: usize,
    members: BitSet,
}

impl CharacteristicFunction {
    pub fn new(n: usize, members: BitSet) -> Result<Self> {
        if members.iter().any(|x| x >= n) {
            return Err(Error::Precondition(format!("subset is not inside Z_{n}")));
        }
        Ok(CharacteristicFunction { n, members })
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, items: I) -> Result<Self> {
        Self::new(n, BitSet::from_indices(items))
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn values(&self) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.members.contains(i) as i64)
            .collect()
    }

    /// `{-a : a ∈ A}`.
    pub fn negated(&self) -> Self {
        CharacteristicFunction {
            n: self.n,
            members: self.members.iter().map(|a| (self.n - a) % self.n).collect(),
        }
    }
}

/// `z ↦ (F f)(z)` for every `z ∈ Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TransformTable {
    values: Vec<CyclotomicInteger>,
}

impl TransformTable {
    pub fn values(&self) -> &[CyclotomicInteger] {
        &self.values
    }

    pub fn at(&self, z: usize) -> &CyclotomicInteger {
        &self.values[z]
    }

    pub fn pointwise_mul(&self, other: &TransformTable) -> TransformTable {
        TransformTable {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn pointwise_add(&self, other: &TransformTable) -> TransformTable {
        TransformTable {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> TransformTable {
        TransformTable {
            values: self.values.iter().map(|a| a.scale(k)).collect(),
        }
    }

    /// Every value lies in `Z`.
    pub fn is_rational(&self) -> bool {
        self.values.iter().all(CyclotomicInteger::is_rational)
    }

    /// JSON array of canonical coefficient vectors.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("integer vectors serialize")
    }
}

fn check_modulus(ring: CyclotomicRing, n: usize) -> Result<()> {
    if ring.order() != n {
        return Err(Error::Precondition(format!(
            "function on Z_{n} but ring has roots of order {}",
            ring.order()
        )));
    }
    Ok(())
}

/// `(F f)(z) = Σ_i f(i)·ω^{iz}` for an integer-valued `f`.
pub fn transform_function(ring: CyclotomicRing, f: &[i64]) -> Result<TransformTable> {
    let n = ring.order();
    check_modulus(ring, f.len())?;
    let values = (0..n)
        .map(|z| {
            let mut coeffs = vec![0i64; n];
            for (i, &c) in f.iter().enumerate() {
                coeffs[i * z % n] += c;
            }
            ring.from_coeffs(coeffs).expect("length matches")
        })
        .collect();
    Ok(TransformTable { values })
}

/// `FΔ_A`.
pub fn transform(ring: CyclotomicRing, a: &CharacteristicFunction) -> Result<TransformTable> {
    transform_function(ring, &a.values())
}

/// `F` applied to a table of cyclotomic values.
pub fn transform_table(table: &TransformTable) -> TransformTable {
    let ring = table.values[0].ring();
    let n = ring.order();
    let values = (0..n)
        .map(|z| {
            table
                .values
                .iter()
                .enumerate()
                .fold(ring.zero(), |acc, (i, v)| {
                    &acc + &v.rotate((i * z % n) as i64)
                })
        })
        .collect();
    TransformTable { values }
}

/// Outcome of an identity check; `failure` names the first mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl VerificationReport {
    fn new() -> Self {
        VerificationReport {
            checks: 0,
            failure: None,
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `(Δ_A ∗ Δ_B)(i) = Σ_j Δ_A(j)·Δ_B(i - j)`.
pub fn convolve_indicators(a: &CharacteristicFunction, b: &CharacteristicFunction) -> Vec<i64> {
    let n = a.n;
    let mut out = vec![0i64; n];
    for x in a.members.iter() {
        for y in b.members.iter() {
            out[(x + y) % n] += 1;
        }
    }
    out
}

/// Checks `F(Δ_A ∗ Δ_B) = FΔ_A · FΔ_B` and `(Δ_A ∗ Δ_B)(i) = |(i - A) ∩ B|`.
pub fn convolution_check(
    ring: CyclotomicRing,
    a: &CharacteristicFunction,
    b: &CharacteristicFunction,
) -> Result<VerificationReport> {
    check_modulus(ring, a.n)?;
    check_modulus(ring, b.n)?;
    let n = a.n;
    let conv = convolve_indicators(a, b);
    let mut report = VerificationReport::new();
    for (i, &c) in conv.iter().enumerate() {
        let shifted: BitSet = a.members.iter().map(|x| (i + n - x) % n).collect();
        let count = shifted.intersection_len(&b.members) as i64;
        report.expect(c == count, || {
            format!("convolution at {i}: {c} vs |(i-A)∩B| = {count}")
        });
    }
    let lhs = transform_function(ring, &conv)?;
    let rhs = transform(ring, a)?.pointwise_mul(&transform(ring, b)?);
    for z in 0..n {
        report.expect(lhs.at(z) == rhs.at(z), || {
            format!(
                "transform of convolution at z = {z}: {} vs {}",
                lhs.at(z),
                rhs.at(z)
            )
        });
    }
    Ok(report)
}

/// Checks `F(F f)(z) = n·f(-z)` pointwise.
pub fn inversion_check(ring: CyclotomicRing, f: &[i64]) -> Result<VerificationReport> {
    let n = ring.order();
    let twice = transform_table(&transform_function(ring, f)?);
    let mut report = VerificationReport::new();
    for z in 0..n {
        let want = ring.scalar(n as i64 * f[(n - z) % n]);
        report.expect(*twice.at(z) == want, || {
            format!("double transform at z = {z}: {} vs {want}", twice.at(z))
        });
    }
    Ok(report)
}

/// For a transversal `A` of `rZ_n`, whether `FΔ_A` vanishes on
/// `(n/r)Z_n \ {0}`.
pub fn transversal_zeros(
    ring: CyclotomicRing,
    a: &CharacteristicFunction,
    r: usize,
) -> Result<bool> {
    let n = ring.order();
    check_modulus(ring, a.n)?;
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::Precondition(format!("{r} does not divide {n}")));
    }
    let g = GroupDescriptor::cyclic(n)?;
    let sub = g
        .subgroups_of_order(n / gcd(r, n))
        .into_iter()
        .next()
        .expect("cyclic groups have a subgroup of each order");
    if !g.is_transversal(&a.members, &sub) {
        return Err(Error::Precondition(format!(
            "set is not a transversal of {r}Z_{n}"
        )));
    }
    let table = transform(ring, a)?;
    let step = n / r;
    Ok((1..r).all(|m| table.at(m * step).is_zero()))
}

/// Divisors `r` of `n` in increasing order.
fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `O_r`: the elements of additive order exactly `r` in `Z_n`.
pub fn unit_orbit(n: usize, r: usize) -> BitSet {
    (0..n).filter(|&x| n / gcd(x, n) == r).collect()
}

/// If every transform value is rational, the orbits `O_r` making up `A`
/// (listed by `r`). Rationality and being a union of orbits are checked to
/// agree; a disagreement is an error.
pub fn rational_image_orbits(
    ring: CyclotomicRing,
    a: &CharacteristicFunction,
) -> Result<Option<Vec<usize>>> {
    check_modulus(ring, a.n)?;
    let n = a.n;
    let rational = transform(ring, a)?.is_rational();
    let mut parts = Vec::new();
    let mut union = true;
    for r in divisors(n) {
        let orbit = unit_orbit(n, r);
        if orbit.is_subset(&a.members) {
            parts.push(r);
        } else if !orbit.is_disjoint(&a.members) {
            union = false;
        }
    }
    match (rational, union) {
        (true, true) => Ok(Some(parts)),
        (false, false) => Ok(None),
        _ => Err(Error::Inconsistent(format!(
            "transform rational = {rational} but union of orbits = {union}"
        ))),
    }
}

/// Every union of unit orbits that is a transversal of `rZ_n`.
pub fn orbit_union_transversals(n: usize, r: usize) -> Result<Vec<BitSet>> {
    if r == 0 || !n.is_multiple_of(r) {
        return Err(Error::Precondition(format!("{r} does not divide {n}")));
    }
    let g = GroupDescriptor::cyclic(n)?;
    let sub = g
        .subgroups_of_order(n / r)
        .into_iter()
        .next()
        .expect("cyclic groups have a subgroup of each order");
    let orbits: Vec<BitSet> = divisors(n).into_iter().map(|d| unit_orbit(n, d)).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1 << orbits.len()) {
        let set = orbits
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(BitSet::new(), |acc, (_, o)| acc.union(o));
        if g.is_transversal(&set, &sub) {
            out.push(set);
        }
    }
    Ok(out)
}

/// Result of auditing the common-neighbor identities in transform space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourierAudit {
    pub group: GroupDescriptor,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
    pub diameter: usize,
    /// Pointwise checks of the row identities.
    pub identity_checks: usize,
    /// Pointwise checks of the `ε`-weighted combinations.
    pub weighted_checks: usize,
    pub failure: Option<String>,
}

impl FourierAudit {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Audits a distance-regular Cayley graph over `Z_{p^s} ⊕ Z_p` of diameter
/// at least 2. With `r_t = FΔ_{R_t}` for the rows of the connection set and
/// `r_{t,2}` for the rows of the second distance layer, checks for every
/// `j` and `z`
///
/// `Σ_t r_t·r_{j-t} = k·[j = 0] + λ·r_j + μ·r_{j,2}`,
///
/// and for every `e ∈ Z_p`, with `X = Σ_t ε^{et} r_t`, `Y = Σ_t ε^{et} r_{t,2}`,
/// that `X² = k + λX + μY`.
pub fn fourier_audit(graph: &CayleyGraph) -> Result<FourierAudit> {
    let g = graph.group();
    let (p, s) = g
        .pair_params()
        .ok_or_else(|| Error::Precondition(format!("{g} is not of the form Z_(p^s) + Z_p")))?;
    let array = check_drg(graph)
        .ok_or_else(|| Error::Precondition("graph is not distance-regular".into()))?;
    if array.diameter() < 2 {
        return Err(Error::Precondition("diameter must be at least 2".into()));
    }
    let partition = distance_partition(graph)?;
    let ring = CyclotomicRing::new(p, s)?;
    let n = ring.order();
    let k = array.valency();
    let lambda = array.a[1];
    let mu = array.c_at(2);
    let table = |set: BitSet| transform(ring, &CharacteristicFunction { n, members: set });
    let rows: Vec<TransformTable> = (0..p)
        .map(|t| table(partition.row_layer(t, 1)))
        .collect::<Result<_>>()?;
    let rows2: Vec<TransformTable> = (0..p)
        .map(|t| table(partition.row_layer(t, 2)))
        .collect::<Result<_>>()?;

    let mut report = VerificationReport::new();
    for j in 0..p {
        let lhs = (0..p)
            .map(|t| rows[t].pointwise_mul(&rows[(j + p - t) % p]))
            .reduce(|a, b| a.pointwise_add(&b))
            .expect("p > 0");
        for z in 0..n {
            let mut rhs = &rows[j].at(z).scale(lambda as i64) + &rows2[j].at(z).scale(mu as i64);
            if j == 0 {
                rhs = &rhs + &ring.scalar(k as i64);
            }
            report.expect(*lhs.at(z) == rhs, || {
                format!(
                    "row identity j = {j} fails at z = {z}: {} vs {rhs}",
                    lhs.at(z)
                )
            });
        }
    }
    let identity_checks = report.checks;

    let eps = ring.epsilon();
    for e in 0..p {
        let weights: Vec<CyclotomicInteger> = (0..p).map(|t| eps.pow((e * t) as u32)).collect();
        for z in 0..n {
            let weighted = |tables: &[TransformTable]| {
                (0..p).fold(ring.zero(), |acc, t| {
                    &acc + &(&weights[t] * tables[t].at(z))
                })
            };
            let x = weighted(&rows);
            let y = weighted(&rows2);
            let lhs = &x * &x;
            let rhs = &(&ring.scalar(k as i64) + &x.scale(lambda as i64)) + &y.scale(mu as i64);
            report.expect(lhs == rhs, || {
                format!("weighted identity e = {e} fails at z = {z}: {lhs} vs {rhs}")
            });
        }
    }
    Ok(FourierAudit {
        group: g,
        k,
        lambda,
        mu,
        diameter: array.diameter(),
        identity_checks,
        weighted_checks: report.checks - identity_checks,
        failure: report.failure,
    })
}
