//! Exact arithmetic in `Z[ω]`, `ω` a primitive `p^s`-th root of unity.
//!
//! Values are stored as full-length coefficient vectors over `ω^0..ω^{n-1}`
//! and kept reduced modulo `Φ_{p^s}(x) = Σ_{i<p} x^{i·p^{s-1}}`: the top
//! block of `p^{s-1}` coefficients is always zero, which makes the
//! representation unique.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_prime, prime_power};

/// The ring `Z[ω]` for `ω` of order `p^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclotomicRing {
    p: usize,
    s: u32,
    n: usize,
    block: usize,
}

impl CyclotomicRing {
    pub fn new(p: usize, s: u32) -> Result<Self> {
        if !is_prime(p) || s == 0 {
            return Err(Error::Precondition(format!("{p}^{s} is not a prime power")));
        }
        let n = p
            .checked_pow(s)
            .filter(|&n| n <= 1 << 16)
            .ok_or_else(|| Error::Precondition(format!("{p}^{s} is too large")))?;
        Ok(CyclotomicRing {
            p,
            s,
            n,
            block: n / p,
        })
    }

    /// The ring for `Z_n`, `n` a prime power.
    pub fn for_order(n: usize) -> Result<Self> {
        let (p, s) = prime_power(n)
            .ok_or_else(|| Error::Precondition(format!("{n} is not a prime power")))?;
        CyclotomicRing::new(p, s)
    }

    pub fn prime(&self) -> usize {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.s
    }

    /// `p^s`, the order of `ω`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> CyclotomicInteger {
        CyclotomicInteger {
            ring: *self,
            coeffs: vec![0; self.n],
        }
    }

    pub fn scalar(&self, c: i64) -> CyclotomicInteger {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    pub fn one(&self) -> CyclotomicInteger {
        self.scalar(1)
    }

    /// `ω^e`, exponent taken mod `p^s`.
    pub fn monomial(&self, e: i64) -> CyclotomicInteger {
        let mut z = self.zero();
        z.coeffs[e.rem_euclid(self.n as i64) as usize] = 1;
        z.reduce();
        z
    }

    /// `ε = ω^{p^{s-1}}`, a primitive `p`-th root of unity.
    pub fn epsilon(&self) -> CyclotomicInteger {
        self.monomial(self.block as i64)
    }

    /// Canonical form of an arbitrary coefficient vector.
    pub fn from_coeffs(&self, coeffs: Vec<i64>) -> Result<CyclotomicInteger> {
        if coeffs.len() != self.n {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                self.n,
                coeffs.len()
            )));
        }
        let mut z = CyclotomicInteger {
            ring: *self,
            coeffs,
        };
        z.reduce();
        Ok(z)
    }
}

/// An element of `Z[ω]` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    ring: CyclotomicRing,
    coeffs: Vec<i64>,
}

impl CyclotomicInteger {
    pub fn ring(&self) -> CyclotomicRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let CyclotomicRing { p, block, .. } = self.ring;
        let top = (p - 1) * block;
        for j in 0..block {
            let c = std::mem::take(&mut self.coeffs[top + j]);
            if c != 0 {
                for i in 0..p - 1 {
                    self.coeffs[j + i * block] -= c;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    pub fn is_rational(&self) -> bool {
        self.as_integer().is_some()
    }

    /// Multiplication by `ω^e`.
    pub fn rotate(&self, e: i64) -> CyclotomicInteger {
        let n = self.ring.n;
        let shift = e.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![0; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % n] = c;
        }
        let mut z = CyclotomicInteger {
            ring: self.ring,
            coeffs,
        };
        z.reduce();
        z
    }

    pub fn scale(&self, k: i64) -> CyclotomicInteger {
        CyclotomicInteger {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CyclotomicInteger {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check_ring(&self, other: &CyclotomicInteger) {
        assert_eq!(
            self.ring, other.ring,
            "cyclotomic integers from different rings"
        );
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_ring(rhs);
        CyclotomicInteger {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_ring(rhs);
        CyclotomicInteger {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_ring(rhs);
        let n = self.ring.n;
        let mut coeffs = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate().filter(|(_, &b)| b != 0) {
                coeffs[(i + j) % n] += a * b;
            }
        }
        let mut z = CyclotomicInteger {
            ring: self.ring,
            coeffs,
        };
        z.reduce();
        z
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for CyclotomicInteger {
            type Output = CyclotomicInteger;
            fn $f(self, rhs: CyclotomicInteger) -> CyclotomicInteger {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Free-standing product, for callers that prefer a function.
pub fn cyc_multiply(x: &CyclotomicInteger, y: &CyclotomicInteger) -> CyclotomicInteger {
    x * y
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                _ => format!("{c}w^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CyclotomicInteger {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(ser)
    }
}
