//! Signed basis blades of Cl(p,q) and their products.
//!
//! A blade `γ_{i_1} γ_{i_2} ⋯ γ_{i_r}` is kept in ascending index order and
//! encoded by the bitmask of its generators (bit `i-1` for `γ_i`), matching
//! [`GradeVec`]. Generators `1..=p` square to `+1`, `p+1..=p+q` to `-1`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::{dot, GradeVec, MAX_GRADING_BITS};
use crate::report::{Report, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p + q;
        if n == 0 || n > MAX_GRADING_BITS {
            return Err(Error::Signature {
                p,
                q,
                max: MAX_GRADING_BITS,
            });
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    pub fn dim(self) -> usize {
        self.p + self.q
    }

    /// Mask of the generators squaring to `-1`.
    pub fn negative_mask(self) -> u16 {
        let all = (1u32 << self.dim()) - 1;
        (all & !((1u32 << self.p) - 1)) as u16
    }

    /// Every split `(p, n-p)` for `n` generators.
    pub fn splits(n: usize) -> Result<Vec<Signature>> {
        (0..=n).map(|p| Signature::new(p, n - p)).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_odd(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        Sign::from_odd(!self.is_minus())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade {
    pub mask: u16,
    pub sign: Sign,
}

impl Blade {
    pub const IDENTITY: Blade = Blade {
        mask: 0,
        sign: Sign::Plus,
    };

    pub fn new(mask: u16, sign: Sign) -> Self {
        Self { mask, sign }
    }

    /// The single generator `γ_i`, 1-based.
    pub fn generator(i: usize) -> Self {
        assert!(
            (1..=MAX_GRADING_BITS).contains(&i),
            "generator {i} out of range"
        );
        Self::new(1 << (i - 1), Sign::Plus)
    }

    pub fn grade(self) -> u32 {
        self.mask.count_ones()
    }
}

impl Neg for Blade {
    type Output = Blade;

    fn neg(self) -> Blade {
        Blade::new(self.mask, -self.sign)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.sign.is_minus() { "-" } else { "+" })?;
        if self.mask == 0 {
            return f.write_str("1");
        }
        for i in 0..MAX_GRADING_BITS {
            if self.mask >> i & 1 == 1 {
                write!(f, "g{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Blade {
    type Err = Error;

    /// Parses `+g1g2`, `-g3`, `+1`. Generators must be distinct and ascending.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid blade `{s}`"));
        let s = s.trim();
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &s[1..]),
            Some(b'-') => (Sign::Minus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        if rest == "1" {
            return Ok(Blade::new(0, sign));
        }
        let mut mask = 0u16;
        let mut last = 0usize;
        for part in rest.split('g').skip(1) {
            let i: usize = part.parse().map_err(|_| bad())?;
            if i <= last || i > MAX_GRADING_BITS {
                return Err(bad());
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        if mask == 0 || !rest.starts_with('g') {
            return Err(bad());
        }
        Ok(Blade::new(mask, sign))
    }
}

/// γ_α: the ascending product of the generators in α's support.
pub fn gamma_of_grade(a: GradeVec) -> Blade {
    Blade::new(a.bits(), Sign::Plus)
}

/// Inverse of [`gamma_of_grade`], ignoring the sign.
pub fn grade_of_blade(b: Blade, n: usize) -> Result<GradeVec> {
    GradeVec::from_bits(b.mask, n)
}

/// Sign from bringing `γ_a γ_b` into ascending order: one factor of `-1`
/// per pair `(i ∈ a, j ∈ b)` with `i > j`.
#[inline]
pub fn reorder_sign(a: u16, b: u16) -> Sign {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (u32::from(a) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Sign::from_odd(swaps & 1 == 1)
}

#[inline]
pub fn blade_mul(a: Blade, b: Blade, sig: Signature) -> Blade {
    let metric = Sign::from_odd((a.mask & b.mask & sig.negative_mask()).count_ones() & 1 == 1);
    Blade::new(
        a.mask ^ b.mask,
        a.sign * b.sign * reorder_sign(a.mask, b.mask) * metric,
    )
}

/// κ(α,β) with `γ_α γ_β = κ γ_{α+β}`.
#[inline]
pub fn kappa(a: GradeVec, b: GradeVec, sig: Signature) -> Sign {
    blade_mul(gamma_of_grade(a), gamma_of_grade(b), sig).sign
}

/// Predicted relative sign of `γ_a γ_b` against `γ_b γ_a`: `(-1)^{a·b + σ(a)σ(b)}`.
pub fn commutation_sign(a: GradeVec, b: GradeVec) -> Result<Sign> {
    let e = dot(a, b)? + a.sigma() * b.sigma();
    Ok(Sign::from_odd(e & 1 == 1))
}

/// Exhaustively checks `γ_a γ_b = (-1)^{a·b + σ(a)σ(b)} γ_b γ_a` over all
/// ordered blade pairs.
pub fn check_sign_law(sig: Signature) -> Report {
    let n = sig.dim();
    let size = 1u32 << n;
    let violations: Vec<Violation> = (0..size)
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..size).filter_map(move |b| {
                let ga = GradeVec::from_bits(a as u16, n).unwrap();
                let gb = GradeVec::from_bits(b as u16, n).unwrap();
                let ab = blade_mul(gamma_of_grade(ga), gamma_of_grade(gb), sig);
                let ba = blade_mul(gamma_of_grade(gb), gamma_of_grade(ga), sig);
                let predicted = commutation_sign(ga, gb).unwrap();
                let expected = Blade::new(ba.mask, ba.sign * predicted);
                (ab != expected).then(|| Violation {
                    lhs: format!("{} * {} = {ab}", gamma_of_grade(ga), gamma_of_grade(gb)),
                    rhs: format!("{expected}"),
                    residual: format!("{ga} {gb}"),
                    location: vec![a as usize, b as usize],
                })
            })
        })
        .collect();
    Report::new((size as usize) * (size as usize), violations)
}
