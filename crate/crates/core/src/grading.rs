//! Grading vectors of Z2^N and the two pairings that decide bracket kinds.
//!
//! A [`GradeVec`] stores component `i` (1-based, as written `(α_1,…,α_N)`) in
//! bit `i-1` of a `u16`, so `N <= 16`. The group law is XOR.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Report, Violation};

pub const MAX_GRADING_BITS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradeVec {
    bits: u16,
    len: u8,
}

impl GradeVec {
    pub fn zero(len: usize) -> Result<Self> {
        Self::from_bits(0, len)
    }

    /// `bits` uses bit `i-1` for component `i`.
    pub fn from_bits(bits: u16, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_GRADING_BITS {
            return Err(Error::GradingLength(len));
        }
        let mask = if len == 16 {
            u16::MAX
        } else {
            (1u16 << len) - 1
        };
        if bits & !mask != 0 {
            return Err(Error::Parse(format!(
                "bits {bits:#b} do not fit in {len} components"
            )));
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    pub fn from_components(components: &[u8]) -> Result<Self> {
        let mut bits = 0u16;
        for (i, &c) in components.iter().enumerate() {
            match c {
                0 => {}
                1 if i < MAX_GRADING_BITS => bits |= 1 << i,
                1 => return Err(Error::GradingLength(components.len())),
                _ => return Err(Error::Parse(format!("component {c} is not 0 or 1"))),
            }
        }
        Self::from_bits(bits, components.len())
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Component `i`, 1-based.
    pub fn component(self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len(), "component {i} out of range");
        ((self.bits >> (i - 1)) & 1) as u8
    }

    pub fn components(self) -> Vec<u8> {
        (1..=self.len()).map(|i| self.component(i)).collect()
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.same_len(other)?;
        Ok(Self {
            bits: self.bits ^ other.bits,
            len: self.len,
        })
    }

    /// Hamming weight σ(α).
    pub fn sigma(self) -> u32 {
        self.bits.count_ones()
    }

    /// The 2-component block `(α_{k,1}, α_{k,2})`, `k` 1-based.
    pub fn block(self, k: usize) -> (u8, u8) {
        (self.component(2 * k - 1), self.component(2 * k))
    }

    /// All `2^len` grading vectors in lexicographic tuple order,
    /// `(0,…,0), (0,…,0,1), …, (1,…,1)`.
    pub fn all(len: usize) -> Result<impl Iterator<Item = GradeVec>> {
        Self::zero(len)?;
        Ok((0u32..(1u32 << len)).map(move |idx| {
            // component 1 is the most significant digit of the tuple
            let mut bits = 0u16;
            for i in 0..len {
                if idx >> (len - 1 - i) & 1 == 1 {
                    bits |= 1 << i;
                }
            }
            GradeVec {
                bits,
                len: len as u8,
            }
        }))
    }

    fn lex_key(self) -> (u8, u16) {
        (self.len, self.bits.reverse_bits() >> (16 - self.len as u32))
    }

    fn same_len(self, other: Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Compact bit string, component 1 first: `"101"`.
    pub fn to_bit_string(self) -> String {
        self.components()
            .into_iter()
            .map(|c| if c == 1 { '1' } else { '0' })
            .collect()
    }
}

impl Add for GradeVec {
    type Output = GradeVec;

    /// Panics on a length mismatch; use [`GradeVec::checked_add`] to get an error instead.
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("grading length mismatch")
    }
}

impl PartialOrd for GradeVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradeVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl fmt::Display for GradeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for GradeVec {
    type Err = Error;

    /// Accepts `"101"` and `"(1,0,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits: Vec<&str> = if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unterminated tuple `{s}`")))?;
            inner.split(',').map(str::trim).collect()
        } else {
            s.split("").filter(|d| !d.is_empty()).collect()
        };
        let comps = digits
            .iter()
            .map(|d| match *d {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(Error::Parse(format!("invalid grading vector `{s}`"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::from_components(&comps)
    }
}

impl Serialize for GradeVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bit_string())
    }
}

impl<'de> Deserialize<'de> for GradeVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// α·β = Σ α_i β_i, unreduced.
pub fn dot(a: GradeVec, b: GradeVec) -> Result<u32> {
    a.same_len(b)?;
    Ok((a.bits & b.bits).count_ones())
}

pub fn sigma(a: GradeVec) -> u32 {
    a.sigma()
}

/// (α,β) = Σ_k det [[α_{k,1}, α_{k,2}], [β_{k,1}, β_{k,2}]], unreduced.
pub fn symplectic(a: GradeVec, b: GradeVec) -> Result<i32> {
    a.same_len(b)?;
    if !a.len().is_multiple_of(2) {
        return Err(Error::OddPairing(a.len()));
    }
    let odd = 0x5555u16; // components (k,1)
    let even = 0xAAAAu16; // components (k,2)
    let plus = ((a.bits & odd) << 1) & (b.bits & even);
    let minus = (a.bits & even) & ((b.bits & odd) << 1);
    Ok(plus.count_ones() as i32 - minus.count_ones() as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingKind {
    /// α·β, color superalgebras.
    Dot,
    /// (α,β) over `N = 2M`, color Lie algebras.
    Symplectic,
}

impl PairingKind {
    /// Checks the pairing is usable with grading length `n`.
    pub fn validate(self, n: usize) -> Result<()> {
        if n == 0 || n > MAX_GRADING_BITS {
            return Err(Error::GradingLength(n));
        }
        if self == PairingKind::Symplectic && !n.is_multiple_of(2) {
            return Err(Error::OddPairing(n));
        }
        Ok(())
    }

    pub fn name(self) -> &'static str {
        match self {
            PairingKind::Dot => "dot",
            PairingKind::Symplectic => "symplectic",
        }
    }
}

impl FromStr for PairingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(PairingKind::Dot),
            "symplectic" => Ok(PairingKind::Symplectic),
            _ => Err(Error::Parse(format!("unknown pairing `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Commutator.
    Even,
    /// Anticommutator.
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

pub fn pairing_value(kind: PairingKind, a: GradeVec, b: GradeVec) -> Result<i64> {
    match kind {
        PairingKind::Dot => dot(a, b).map(i64::from),
        PairingKind::Symplectic => symplectic(a, b).map(i64::from),
    }
}

pub fn pairing_parity(kind: PairingKind, a: GradeVec, b: GradeVec) -> Result<Parity> {
    pairing_value(kind, a, b).map(Parity::of)
}

/// Checks `(α,β) ≡ α·β + Σ_k σ(α_k)σ(β_k) (mod 2)` for every pair at even `n`.
pub fn check_maprel(n: usize) -> Result<Report> {
    PairingKind::Symplectic.validate(n)?;
    let mut violations = Vec::new();
    let mut checked = 0;
    for a in GradeVec::all(n)? {
        for b in GradeVec::all(n)? {
            checked += 1;
            let lhs = i64::from(symplectic(a, b)?);
            let mut rhs = i64::from(dot(a, b)?);
            for k in 1..=n / 2 {
                let (a1, a2) = a.block(k);
                let (b1, b2) = b.block(k);
                rhs += i64::from(a1 + a2) * i64::from(b1 + b2);
            }
            if Parity::of(lhs) != Parity::of(rhs) {
                violations.push(Violation {
                    lhs: format!("({a},{b}) = {lhs}"),
                    rhs: format!("{rhs}"),
                    residual: format!("{}", lhs - rhs),
                    location: vec![a.bits() as usize, b.bits() as usize],
                });
            }
        }
    }
    Ok(Report::new(checked, violations))
}
