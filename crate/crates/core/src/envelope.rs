//! Normal ordering in the enveloping algebra of the n-mode boson-fermion
//! system with the extra odd involution `F`:
//!
//! ```text
//! [a_i, a_j†] = δ_ij,  {α_i, α_j†} = δ_ij,  {α_i, α_j} = {α_i†, α_j†} = 0,  F² = 1,
//! [F, a_i] = [F, a_i†] = {F, α_i} = {F, α_i†} = 0
//! ```
//!
//! Every element has a unique normal form built from [`NormalWord`]s, so
//! operator identities become equality of sparse maps. On top of that this
//! module defines the generators of `bf(n)` (the Z2⊗Z2 regrading of the
//! system), the relation table they are claimed to satisfy, and the export of
//! `bf(n)` as a [`ColorAlgebra`] whose structure constants are read off the
//! normal-ordered brackets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::algebra::{BasisElement, ColorAlgebra, Element};
use crate::error::{Error, Result};
use crate::grading::{dot, GradeVec, PairingKind};
use crate::report::{Report, Violation};
use crate::scalar::{self, int, Scalar};

/// Largest supported mode count; generator labels use one digit per index.
pub const MAX_MODES: usize = 9;

/// `∏ a_i†^{p_i} · ∏ α_i†^{r_i} · ∏ α_i^{s_i} · ∏ a_i^{q_i} · F^δ`, with the
/// creation products mode-ascending and the annihilation products
/// mode-descending. Bosons commute with every fermionic letter, so only the
/// relative order of `α†`, `α` and `F` carries signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    boson_create: Vec<u32>,
    boson_annihilate: Vec<u32>,
    /// Bit `i-1` is `r_i`.
    fermion_create: u16,
    /// Bit `i-1` is `s_i`.
    fermion_annihilate: u16,
    f: bool,
}

/// Single operator letter, modes 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Create(usize),
    Annihilate(usize),
    FermionCreate(usize),
    FermionAnnihilate(usize),
    F,
}

impl NormalWord {
    pub fn identity(modes: usize) -> Self {
        Self {
            boson_create: vec![0; modes],
            boson_annihilate: vec![0; modes],
            fermion_create: 0,
            fermion_annihilate: 0,
            f: false,
        }
    }

    pub fn modes(&self) -> usize {
        self.boson_create.len()
    }

    pub fn boson_create(&self, i: usize) -> u32 {
        self.boson_create[i - 1]
    }

    pub fn boson_annihilate(&self, i: usize) -> u32 {
        self.boson_annihilate[i - 1]
    }

    pub fn fermion_create(&self, i: usize) -> bool {
        self.fermion_create >> (i - 1) & 1 == 1
    }

    pub fn fermion_annihilate(&self, i: usize) -> bool {
        self.fermion_annihilate >> (i - 1) & 1 == 1
    }

    pub fn has_f(&self) -> bool {
        self.f
    }

    /// The word spelled out in its canonical order.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.modes();
        let mut out = Vec::new();
        for i in 1..=n {
            out.extend(std::iter::repeat_n(
                Letter::Create(i),
                self.boson_create(i) as usize,
            ));
        }
        out.extend(
            (1..=n)
                .filter(|&i| self.fermion_create(i))
                .map(Letter::FermionCreate),
        );
        out.extend(
            (1..=n)
                .rev()
                .filter(|&i| self.fermion_annihilate(i))
                .map(Letter::FermionAnnihilate),
        );
        for i in (1..=n).rev() {
            out.extend(std::iter::repeat_n(
                Letter::Annihilate(i),
                self.boson_annihilate(i) as usize,
            ));
        }
        if self.f {
            out.push(Letter::F);
        }
        out
    }

    /// Z2⊗Z2 grade: each boson letter adds (0,1), each fermion (1,0), `F` (1,1).
    pub fn grade(&self) -> GradeVec {
        let bosons: u32 = self.boson_create.iter().chain(&self.boson_annihilate).sum();
        let fermions = self.fermion_create.count_ones() + self.fermion_annihilate.count_ones();
        let first = (fermions + u32::from(self.f)) % 2;
        let second = (bosons + u32::from(self.f)) % 2;
        GradeVec::from_bits((first | second << 1) as u16, 2).unwrap()
    }

    /// `W · ℓ` rewritten to normal form, as integer-weighted words.
    fn times_letter(&self, letter: Letter) -> Vec<(i64, NormalWord)> {
        let below = |mask: u16, i: usize| (mask & ((1u16 << (i - 1)) - 1)).count_ones();
        let above = |mask: u16, i: usize| (mask >> i).count_ones();
        let parity = |n: u32| if n % 2 == 1 { -1 } else { 1 };
        match letter {
            Letter::F => {
                let mut w = self.clone();
                w.f = !w.f;
                vec![(1, w)]
            }
            Letter::Annihilate(i) => {
                let mut w = self.clone();
                w.boson_annihilate[i - 1] += 1;
                vec![(1, w)]
            }
            Letter::Create(i) => {
                // a^q a† = a† a^q + q a^{q-1}
                let q = self.boson_annihilate(i);
                let mut moved = self.clone();
                moved.boson_create[i - 1] += 1;
                let mut out = vec![(1, moved)];
                if q > 0 {
                    let mut contracted = self.clone();
                    contracted.boson_annihilate[i - 1] -= 1;
                    out.push((i64::from(q), contracted));
                }
                out
            }
            Letter::FermionAnnihilate(i) => {
                if self.fermion_annihilate(i) {
                    return vec![];
                }
                let sign = parity(u32::from(self.f) + below(self.fermion_annihilate, i));
                let mut w = self.clone();
                w.fermion_annihilate |= 1 << (i - 1);
                vec![(sign, w)]
            }
            Letter::FermionCreate(i) => {
                // pass F and the annihilators of lower mode, which sit to the right of α_i
                let sign = parity(u32::from(self.f) + below(self.fermion_annihilate, i));
                let mut out = Vec::new();
                let mut sign_moved = sign;
                if self.fermion_annihilate(i) {
                    // α_i α_i† = 1 - α_i† α_i
                    let mut contracted = self.clone();
                    contracted.fermion_annihilate &= !(1 << (i - 1));
                    out.push((sign, contracted));
                    sign_moved = -sign_moved;
                }
                if !self.fermion_create(i) {
                    let swaps = above(self.fermion_annihilate, i) + above(self.fermion_create, i);
                    let mut moved = self.clone();
                    moved.fermion_create |= 1 << (i - 1);
                    out.push((sign_moved * parity(swaps), moved));
                }
                out
            }
        }
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut parts: Vec<(String, usize)> = Vec::new();
        for l in letters {
            let s = match l {
                Letter::Create(i) => format!("adag{i}"),
                Letter::Annihilate(i) => format!("a{i}"),
                Letter::FermionCreate(i) => format!("alphadag{i}"),
                Letter::FermionAnnihilate(i) => format!("alpha{i}"),
                Letter::F => "F".to_string(),
            };
            match parts.last_mut() {
                Some((last, k)) if *last == s => *k += 1,
                _ => parts.push((s, 1)),
            }
        }
        let rendered: Vec<String> = parts
            .into_iter()
            .map(|(s, k)| if k == 1 { s } else { format!("{s}^{k}") })
            .collect();
        f.write_str(&rendered.join(" "))
    }
}

/// Sparse combination of normal words; no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnvElement(BTreeMap<NormalWord, Scalar>);

impl EnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: NormalWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, Scalar::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalWord, &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, w: &NormalWord) -> Scalar {
        self.0.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: NormalWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &EnvElement, c: &Scalar) {
        for (w, d) in other.iter() {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> EnvElement {
        let mut out = EnvElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    fn times_letter(&self, letter: Letter) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in self.iter() {
            for (k, v) in w.times_letter(letter) {
                out.add_term(v, c * int(k));
            }
        }
        out
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&scalar::render_sum(
            self.iter().map(|(w, c)| (c, w.to_string())),
        ))
    }
}

/// The enveloping algebra for a fixed number of modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Envelope {
    modes: usize,
}

impl Envelope {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 || modes > MAX_MODES {
            return Err(Error::ModeIndex {
                index: modes,
                modes: MAX_MODES,
            });
        }
        Ok(Self { modes })
    }

    pub fn modes(self) -> usize {
        self.modes
    }

    pub fn one(self) -> EnvElement {
        EnvElement::word(NormalWord::identity(self.modes))
    }

    pub fn scalar(self, c: Scalar) -> EnvElement {
        self.one().scaled(&c)
    }

    fn check_mode(self, i: usize) -> Result<()> {
        if i == 0 || i > self.modes {
            return Err(Error::ModeIndex {
                index: i,
                modes: self.modes,
            });
        }
        Ok(())
    }

    pub fn letter(self, l: Letter) -> Result<EnvElement> {
        match l {
            Letter::Create(i)
            | Letter::Annihilate(i)
            | Letter::FermionCreate(i)
            | Letter::FermionAnnihilate(i) => self.check_mode(i)?,
            Letter::F => {}
        }
        Ok(self.one().times_letter(l))
    }

    /// Product of a sequence of letters, left to right.
    pub fn word(self, letters: &[Letter]) -> Result<EnvElement> {
        let mut out = self.one();
        for &l in letters {
            out = self.mul(&out, &self.letter(l)?);
        }
        Ok(out)
    }

    /// Normal-ordered product. The right factor is fed in letter by letter,
    /// each letter being commuted into place with the defining relations.
    pub fn mul(self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in y.iter() {
            let mut partial = x.clone();
            for l in w.letters() {
                partial = partial.times_letter(l);
                if partial.is_zero() {
                    break;
                }
            }
            out.add_scaled(&partial, c);
        }
        out
    }

    /// `xy - s·yx`, where `s = -1` when `anticommute`.
    pub fn bracket_with(self, x: &EnvElement, y: &EnvElement, anticommute: bool) -> EnvElement {
        let mut out = self.mul(x, y);
        let s = if anticommute {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        out.add_scaled(&self.mul(y, x), &s);
        out
    }

    /// `½(xy + yx)`.
    fn half_anticommutator(self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        self.bracket_with(x, y, true).scaled(&scalar::frac(1, 2))
    }

    /// Expansion of a bf generator from its definition.
    pub fn realize(self, g: BfGenerator) -> Result<EnvElement> {
        for i in g.indices() {
            self.check_mode(i)?;
        }
        use BfGenerator::*;
        let l = |x: Letter| self.letter(x);
        Ok(match g {
            One => self.one(),
            A(i, j) => {
                self.half_anticommutator(&l(Letter::Annihilate(i))?, &l(Letter::Annihilate(j))?)
            }
            Adag(i, j) => self.half_anticommutator(&l(Letter::Create(i))?, &l(Letter::Create(j))?),
            N(i, j) => self.half_anticommutator(&l(Letter::Create(i))?, &l(Letter::Annihilate(j))?),
            Alpha(i) => l(Letter::FermionAnnihilate(i))?,
            AlphaDag(i) => l(Letter::FermionCreate(i))?,
            Beta(i) => self.half_anticommutator(&l(Letter::Annihilate(i))?, &l(Letter::F)?),
            BetaDag(i) => self.half_anticommutator(&l(Letter::Create(i))?, &l(Letter::F)?),
            Boson(i) => l(Letter::Annihilate(i))?,
            BosonDag(i) => l(Letter::Create(i))?,
            F => l(Letter::F)?,
        })
    }

    /// Realization of a combination `Σ c_k g_k`.
    pub fn realize_combination(self, combo: &Combination) -> Result<EnvElement> {
        let mut out = EnvElement::zero();
        for (g, c) in combo {
            out.add_scaled(&self.realize(*g)?, c);
        }
        Ok(out)
    }

    /// `⟦x, y⟧ = xy - (-1)^{grade(x)·grade(y)} yx` with the Z2⊗Z2 grades.
    pub fn graded_bracket(self, x: BfGenerator, y: BfGenerator) -> Result<EnvElement> {
        let odd = dot(x.grade(), y.grade())? % 2 == 1;
        Ok(self.bracket_with(&self.realize(x)?, &self.realize(y)?, odd))
    }

    /// The ordinary Z2 super-bracket, bosons even and `α`, `β`, `F` odd.
    pub fn super_bracket(self, x: BfGenerator, y: BfGenerator) -> Result<EnvElement> {
        let odd = x.z2_parity() && y.z2_parity();
        Ok(self.bracket_with(&self.realize(x)?, &self.realize(y)?, odd))
    }
}

/// Basis elements of `bf(n)`; modes are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BfGenerator {
    One,
    /// `½{a_i, a_j}`, symmetric.
    A(usize, usize),
    /// `½{a_i†, a_j†}`, symmetric.
    Adag(usize, usize),
    /// `½{a_i†, a_j}`.
    N(usize, usize),
    Alpha(usize),
    AlphaDag(usize),
    /// `½{a_i, F}`.
    Beta(usize),
    /// `½{a_i†, F}`.
    BetaDag(usize),
    /// `a_i`.
    Boson(usize),
    /// `a_i†`.
    BosonDag(usize),
    F,
}

impl BfGenerator {
    /// `A_ij` with its indices sorted.
    pub fn a(i: usize, j: usize) -> Self {
        BfGenerator::A(i.min(j), i.max(j))
    }

    pub fn adag(i: usize, j: usize) -> Self {
        BfGenerator::Adag(i.min(j), i.max(j))
    }

    /// Sorts the indices of the symmetric generators.
    pub fn normalized(self) -> Self {
        match self {
            BfGenerator::A(i, j) => Self::a(i, j),
            BfGenerator::Adag(i, j) => Self::adag(i, j),
            g => g,
        }
    }

    pub fn indices(self) -> Vec<usize> {
        use BfGenerator::*;
        match self {
            One | F => vec![],
            A(i, j) | Adag(i, j) | N(i, j) => vec![i, j],
            Alpha(i) | AlphaDag(i) | Beta(i) | BetaDag(i) | Boson(i) | BosonDag(i) => vec![i],
        }
    }

    /// Z2⊗Z2 degree.
    pub fn grade(self) -> GradeVec {
        use BfGenerator::*;
        let bits = match self {
            One | A(..) | Adag(..) | N(..) => 0b00,
            Alpha(_) | AlphaDag(_) | Beta(_) | BetaDag(_) => 0b01,
            Boson(_) | BosonDag(_) => 0b10,
            F => 0b11,
        };
        GradeVec::from_bits(bits, 2).unwrap()
    }

    /// Parity in the original boson-fermion superalgebra.
    pub fn z2_parity(self) -> bool {
        use BfGenerator::*;
        matches!(self, Alpha(_) | AlphaDag(_) | Beta(_) | BetaDag(_) | F)
    }

    pub fn label(self) -> String {
        use BfGenerator::*;
        match self {
            One => "1".into(),
            A(i, j) => format!("A{i}{j}"),
            Adag(i, j) => format!("Adag{i}{j}"),
            N(i, j) => format!("N{i}{j}"),
            Alpha(i) => format!("alpha{i}"),
            AlphaDag(i) => format!("alphadag{i}"),
            Beta(i) => format!("beta{i}"),
            BetaDag(i) => format!("betadag{i}"),
            Boson(i) => format!("a{i}"),
            BosonDag(i) => format!("adag{i}"),
            F => "F".into(),
        }
    }

    /// The export basis: `1, A_ij (i<=j), A†_ij (i<=j), N_ij, α_i, α_i†, β_i,
    /// β_i†, a_i, a_i†, F`.
    pub fn basis(modes: usize) -> Vec<BfGenerator> {
        use BfGenerator::*;
        let n = modes;
        let mut out = vec![One];
        let upper = || (1..=n).flat_map(move |i| (i..=n).map(move |j| (i, j)));
        out.extend(upper().map(|(i, j)| A(i, j)));
        out.extend(upper().map(|(i, j)| Adag(i, j)));
        out.extend((1..=n).flat_map(|i| (1..=n).map(move |j| N(i, j))));
        for make in [Alpha, AlphaDag, Beta, BetaDag, Boson, BosonDag] {
            out.extend((1..=n).map(make));
        }
        out.push(F);
        out
    }
}

impl fmt::Display for BfGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for BfGenerator {
    type Err = Error;

    /// Accepts the labels produced by [`BfGenerator::label`]; indices may be
    /// omitted for the single-mode algebra (`A`, `adag`, `beta`).
    fn from_str(s: &str) -> Result<Self> {
        use BfGenerator::*;
        let bad = || Error::Parse(format!("unknown bf generator `{s}`"));
        let s = s.trim();
        match s {
            "1" => return Ok(One),
            "F" => return Ok(F),
            _ => {}
        }
        let prefixes: [(&str, u8); 10] = [
            ("alphadag", 1),
            ("alpha", 1),
            ("betadag", 1),
            ("beta", 1),
            ("Adag", 2),
            ("adag", 1),
            ("A", 2),
            ("N", 2),
            ("a", 1),
            ("F", 0),
        ];
        let (prefix, arity) = prefixes
            .iter()
            .find(|(p, _)| s.starts_with(p))
            .ok_or_else(bad)?;
        let rest = &s[prefix.len()..];
        let digits: Vec<usize> = rest
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .filter(|&d| d > 0)
                    .ok_or_else(bad)
            })
            .collect::<Result<_>>()?;
        let idx = match (digits.len(), arity) {
            (0, _) => vec![1; *arity as usize],
            (n, a) if n == *a as usize => digits,
            _ => return Err(bad()),
        };
        Ok(match *prefix {
            "alphadag" => AlphaDag(idx[0]),
            "alpha" => Alpha(idx[0]),
            "betadag" => BetaDag(idx[0]),
            "beta" => Beta(idx[0]),
            "Adag" => Adag(idx[0], idx[1]).normalized(),
            "adag" => BosonDag(idx[0]),
            "A" => A(idx[0], idx[1]).normalized(),
            "N" => N(idx[0], idx[1]),
            "a" => Boson(idx[0]),
            _ => return Err(bad()),
        })
    }
}

/// Linear combination of bf generators.
pub type Combination = BTreeMap<BfGenerator, Scalar>;

fn combo(terms: &[(bool, i64, BfGenerator)]) -> Combination {
    let mut out = Combination::new();
    for &(present, c, g) in terms {
        if !present || c == 0 {
            continue;
        }
        let slot = out.entry(g.normalized()).or_insert_with(Scalar::zero);
        *slot += int(c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Right-hand sides as listed in the sector tables, for the orientations
/// the tables spell out.
fn listed_relation(x: BfGenerator, y: BfGenerator) -> Option<Combination> {
    use BfGenerator::*;
    let d = |a: usize, b: usize| a == b;
    Some(match (x, y) {
        // (0,0)-(0,0)
        (A(i, j), Adag(k, l)) => combo(&[
            (d(j, k), 1, N(l, i)),
            (d(i, l), 1, N(k, j)),
            (d(i, k), 1, N(l, j)),
            (d(j, l), 1, N(k, i)),
        ]),
        (A(i, j), N(k, _l)) => {
            let l = _l;
            combo(&[(d(i, k), 1, A(j, l)), (d(j, k), 1, A(i, l))])
        }
        (Adag(i, j), N(k, l)) => combo(&[(d(i, l), -1, Adag(k, j)), (d(j, l), -1, Adag(i, k))]),
        (N(i, j), N(k, l)) => combo(&[(d(j, k), 1, N(i, l)), (d(i, l), -1, N(k, j))]),
        // (0,0)-(1,0)
        (A(i, j), BetaDag(k)) => combo(&[(d(i, k), 1, Beta(j)), (d(j, k), 1, Beta(i))]),
        (Adag(i, j), Beta(k)) => combo(&[(d(i, k), -1, BetaDag(j)), (d(j, k), -1, BetaDag(i))]),
        (N(i, j), Beta(k)) => combo(&[(d(i, k), -1, Beta(j))]),
        (N(i, j), BetaDag(k)) => combo(&[(d(j, k), 1, BetaDag(i))]),
        // (0,0)-(0,1)
        (A(i, j), BosonDag(k)) => combo(&[(d(i, k), 1, Boson(j)), (d(j, k), 1, Boson(i))]),
        (Adag(i, j), Boson(k)) => combo(&[(d(i, k), -1, BosonDag(j)), (d(j, k), -1, BosonDag(i))]),
        (N(i, j), Boson(k)) => combo(&[(d(i, k), -1, Boson(j))]),
        (N(i, j), BosonDag(k)) => combo(&[(d(j, k), 1, BosonDag(i))]),
        // (1,0)-(1,0)
        (Alpha(i), AlphaDag(j)) => combo(&[(d(i, j), 1, One)]),
        (Beta(i), Beta(j)) => combo(&[(true, 2, A(i, j))]),
        (Beta(i), BetaDag(j)) => combo(&[(true, 2, N(j, i))]),
        (BetaDag(i), BetaDag(j)) => combo(&[(true, 2, Adag(i, j))]),
        // (1,0)-(0,1)
        (Beta(i), BosonDag(j)) => combo(&[(d(i, j), 1, F)]),
        (BetaDag(i), Boson(j)) => combo(&[(d(i, j), -1, F)]),
        // (1,0)-(1,1)
        (Beta(i), F) => combo(&[(true, 2, Boson(i))]),
        (BetaDag(i), F) => combo(&[(true, 2, BosonDag(i))]),
        // (0,1)-(0,1)
        (Boson(i), Boson(j)) => combo(&[(true, 2, A(i, j))]),
        (Boson(i), BosonDag(j)) => combo(&[(true, 2, N(j, i))]),
        (BosonDag(i), BosonDag(j)) => combo(&[(true, 2, Adag(i, j))]),
        // (0,1)-(1,1)
        (Boson(i), F) => combo(&[(true, 2, Beta(i))]),
        (BosonDag(i), F) => combo(&[(true, 2, BetaDag(i))]),
        _ => return None,
    })
}

/// The claimed value of `⟦x, y⟧` in `bf(n)`: the listed relation, or the
/// listed reverse orientation via `⟦x,y⟧ = -(-1)^{x·y} ⟦y,x⟧`, or zero.
pub fn claimed_bracket(x: BfGenerator, y: BfGenerator) -> Combination {
    let (x, y) = (x.normalized(), y.normalized());
    if let Some(c) = listed_relation(x, y) {
        return c;
    }
    if let Some(c) = listed_relation(y, x) {
        let anticommute = dot(x.grade(), y.grade()).unwrap() % 2 == 1;
        let s = if anticommute {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        return c.into_iter().map(|(g, v)| (g, v * &s)).collect();
    }
    Combination::new()
}

pub fn render_combination(c: &Combination) -> String {
    scalar::render_sum(c.iter().map(|(g, v)| (v, g.label())))
}

/// Expresses enveloping-algebra elements in the span of a fixed list of
/// elements by forward elimination on normal words.
#[derive(Debug, Clone)]
pub struct SpanDecomposer {
    /// `(pivot word, reduced row, row as a combination of the inputs)`.
    rows: Vec<(NormalWord, EnvElement, Element)>,
}

impl SpanDecomposer {
    /// Fails if the inputs are linearly dependent.
    pub fn new(elements: &[EnvElement]) -> Result<Self> {
        let mut rows: Vec<(NormalWord, EnvElement, Element)> = Vec::new();
        for (idx, e) in elements.iter().enumerate() {
            let mut row = e.clone();
            let mut combo = Element::basis(idx);
            for (pivot, prow, pcombo) in &rows {
                let c = row.coeff(pivot);
                if !c.is_zero() {
                    let f = -(c / prow.coeff(pivot));
                    row.add_scaled(prow, &f);
                    combo.add_scaled(pcombo, &f);
                }
            }
            let pivot = row.iter().next().map(|(w, _)| w.clone()).ok_or_else(|| {
                Error::Unsupported(format!("element {idx} is linearly dependent"))
            })?;
            rows.push((pivot, row, combo));
        }
        Ok(Self { rows })
    }

    /// Coordinates of `e` and the part of `e` outside the span.
    pub fn decompose(&self, e: &EnvElement) -> (Element, EnvElement) {
        let mut rest = e.clone();
        let mut coords = Element::zero();
        for (pivot, row, combo) in &self.rows {
            let c = rest.coeff(pivot);
            if !c.is_zero() {
                let f = c / row.coeff(pivot);
                rest.add_scaled(row, &-f.clone());
                coords.add_scaled(combo, &f);
            }
        }
        (coords, rest)
    }
}

/// Which grading the exported algebra carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfGrading {
    /// Z2⊗Z2 color superalgebra `bf(n)`.
    Color,
    /// The ordinary Z2 superalgebra on the same span.
    Super,
}

/// Structure constants of the span of `bf(n)` generators under either
/// bracket, read off the normal-ordered brackets.
pub fn export_algebra(modes: usize, grading: BfGrading) -> Result<ColorAlgebra> {
    let env = Envelope::new(modes)?;
    let gens = BfGenerator::basis(modes);
    let realized = gens
        .iter()
        .map(|&g| env.realize(g))
        .collect::<Result<Vec<_>>>()?;
    let span = SpanDecomposer::new(&realized)?;
    let (bits, name) = match grading {
        BfGrading::Color => (2, format!("bf({modes})")),
        BfGrading::Super => (1, format!("bf_source({modes})")),
    };
    let basis = gens
        .iter()
        .map(|&g| {
            let grade = match grading {
                BfGrading::Color => g.grade(),
                BfGrading::Super => GradeVec::from_bits(u16::from(g.z2_parity()), 1).unwrap(),
            };
            BasisElement::new(g.label(), grade)
        })
        .collect::<Vec<_>>();
    let mut entries = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for (j, &y) in gens.iter().enumerate() {
            let b = match grading {
                BfGrading::Color => env.graded_bracket(x, y)?,
                BfGrading::Super => env.super_bracket(x, y)?,
            };
            let (coords, rest) = span.decompose(&b);
            if !rest.is_zero() {
                return Err(Error::Audit {
                    check: "bf closure",
                    count: 1,
                    first: format!("[{x},{y}] leaves the span: {rest}"),
                });
            }
            if !coords.is_zero() {
                entries.push(((i, j), coords));
            }
        }
    }
    ColorAlgebra::new(name, bits, PairingKind::Dot, basis, entries)
}

/// `bf(n)` as a Z2⊗Z2 color superalgebra with the dot pairing.
pub fn export_bf(modes: usize) -> Result<ColorAlgebra> {
    export_algebra(modes, BfGrading::Color)
}

/// Checks every ordered pair of `bf(n)` generators: the normal-ordered
/// bracket must equal the claimed relation and lie in the generators' span.
pub fn verify_bf_relations(modes: usize) -> Result<Report> {
    let env = Envelope::new(modes)?;
    let gens = BfGenerator::basis(modes);
    let realized = gens
        .iter()
        .map(|&g| env.realize(g))
        .collect::<Result<Vec<_>>>()?;
    let span = SpanDecomposer::new(&realized)?;
    let mut violations = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for (j, &y) in gens.iter().enumerate() {
            let lhs = env.graded_bracket(x, y)?;
            let claimed = claimed_bracket(x, y);
            let rhs = env.realize_combination(&claimed)?;
            let diff = lhs.sub(&rhs);
            let (_, outside) = span.decompose(&lhs);
            if !diff.is_zero() || !outside.is_zero() {
                let residual = if diff.is_zero() {
                    format!("outside span: {outside}")
                } else {
                    diff.to_string()
                };
                violations.push(Violation {
                    lhs: format!("[{x},{y}] = {lhs}"),
                    rhs: render_combination(&claimed),
                    residual,
                    location: vec![i, j],
                });
            }
        }
    }
    Ok(Report::new(gens.len() * gens.len(), violations))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangularPart {
    Raising,
    Cartan,
    Lowering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangularClass {
    pub part: TriangularPart,
    /// `α`, `α†`, which decouple from the rest of `bf(1)`.
    pub decoupled_fermion: bool,
}

/// Position of a single-mode generator in `bf = bf_+ ⊕ bf_0 ⊕ bf_-`.
pub fn classify_triangular(g: BfGenerator, modes: usize) -> Result<TriangularClass> {
    use BfGenerator::*;
    if modes != 1 {
        return Err(Error::Unsupported(format!(
            "triangular decomposition is defined for one mode, got {modes}"
        )));
    }
    if g.indices().iter().any(|&i| i != 1) {
        return Err(Error::ModeIndex {
            index: g.indices().into_iter().max().unwrap_or(0),
            modes: 1,
        });
    }
    let part = match g {
        Adag(..) | BosonDag(_) | AlphaDag(_) | BetaDag(_) => TriangularPart::Raising,
        One | N(..) | F => TriangularPart::Cartan,
        A(..) | Boson(_) | Alpha(_) | Beta(_) => TriangularPart::Lowering,
    };
    Ok(TriangularClass {
        part,
        decoupled_fermion: matches!(g, Alpha(_) | AlphaDag(_)),
    })
}
