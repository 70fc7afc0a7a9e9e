//! Finite-dimensional Z2^N color (super)algebras given by structure constants.
//!
//! The bracket of basis elements `e_i, e_j` is stored as a sparse [`Element`]
//! `⟦e_i, e_j⟧ = Σ_k c_k e_k`; missing entries are zero. Whether the bracket is
//! read as a commutator or an anticommutator is decided by the algebra's
//! [`PairingKind`] applied to the grades of `e_i` and `e_j`.
//!
//! The three auditors ([`ColorAlgebra::check_closure`],
//! [`ColorAlgebra::check_antisymmetry`], [`ColorAlgebra::check_jacobi`]) are
//! exhaustive over basis pairs/triples and report every counterexample.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::clifford::{gamma_of_grade, kappa, Signature};
use crate::error::{Error, Result};
use crate::grading::{pairing_parity, GradeVec, PairingKind};
use crate::report::{Report, Violation};
use crate::scalar::{self, Scalar};

/// Sparse linear combination of basis elements, keyed by basis index.
/// Never stores a zero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Element(BTreeMap<usize, Scalar>);

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, Scalar::one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
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

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (i, d) in other.iter() {
            self.add_term(i, c * d);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub grade: GradeVec,
}

impl BasisElement {
    pub fn new(label: impl Into<String>, grade: GradeVec) -> Self {
        Self {
            label: label.into(),
            grade,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ColorAlgebra {
    name: String,
    grading_bits: usize,
    pairing: PairingKind,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    /// Row-major `dim × dim`.
    table: Vec<Element>,
    /// `odd[i*dim+j]`: the bracket of `e_i, e_j` is an anticommutator.
    odd: Vec<bool>,
}

/// Outcome of running all three auditors.
#[derive(Debug, Clone)]
pub struct Audit {
    pub closure: Report,
    pub antisymmetry: Report,
    pub jacobi: Report,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.closure.passed() && self.antisymmetry.passed() && self.jacobi.passed()
    }

    pub fn reports(&self) -> [(&'static str, &Report); 3] {
        [
            ("closure", &self.closure),
            ("antisymmetry", &self.antisymmetry),
            ("jacobi", &self.jacobi),
        ]
    }

    /// Collapses to an error naming the first failed auditor.
    pub fn into_result(self) -> Result<()> {
        for (check, report) in self.reports() {
            if let Some(v) = report.violations.first() {
                return Err(Error::Audit {
                    check,
                    count: report.violations.len(),
                    first: format!("{} vs {} (residual {})", v.lhs, v.rhs, v.residual),
                });
            }
        }
        Ok(())
    }
}

impl ColorAlgebra {
    /// Builds an algebra and enforces grading closure of every entry.
    pub fn new<I>(
        name: impl Into<String>,
        grading_bits: usize,
        pairing: PairingKind,
        basis: Vec<BasisElement>,
        entries: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Element)>,
    {
        let alg = Self::from_parts(name, grading_bits, pairing, basis, entries)?;
        if let Some(v) = alg.check_closure().violations.first() {
            return Err(Error::Closure {
                left: alg.basis[v.location[0]].label.clone(),
                right: alg.basis[v.location[1]].label.clone(),
                target: v.residual.clone(),
                expected: v.rhs.clone(),
            });
        }
        Ok(alg)
    }

    /// Builds an algebra checking only structure: label uniqueness, grade
    /// lengths, pairing compatibility and index ranges. Closure is left to
    /// [`ColorAlgebra::check_closure`]; later entries for the same pair are added.
    pub fn from_parts<I>(
        name: impl Into<String>,
        grading_bits: usize,
        pairing: PairingKind,
        basis: Vec<BasisElement>,
        entries: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Element)>,
    {
        pairing.validate(grading_bits)?;
        let mut index = HashMap::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            if b.grade.len() != grading_bits {
                return Err(Error::DimensionMismatch {
                    left: b.grade.len(),
                    right: grading_bits,
                });
            }
            if index.insert(b.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(b.label.clone()));
            }
        }
        let dim = basis.len();
        let mut odd = Vec::with_capacity(dim * dim);
        for a in &basis {
            for b in &basis {
                odd.push(pairing_parity(pairing, a.grade, b.grade)?.is_odd());
            }
        }
        let mut alg = Self {
            name: name.into(),
            grading_bits,
            pairing,
            basis,
            index,
            table: vec![Element::zero(); dim * dim],
            odd,
        };
        for ((i, j), e) in entries {
            alg.check_element(&e)?;
            alg.check_index(i)?;
            alg.check_index(j)?;
            alg.table[i * dim + j].add_scaled(&e, &Scalar::one());
        }
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn grading_bits(&self) -> usize {
        self.grading_bits
    }

    pub fn pairing(&self) -> PairingKind {
        self.pairing
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn grade(&self, i: usize) -> GradeVec {
        self.basis[i].grade
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `⟦e_i, e_j⟧`.
    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.table[i * self.dim() + j]
    }

    /// Overwrites one table entry without checking closure. Meant for
    /// building tables incrementally and for fault injection.
    pub fn set_entry(&mut self, i: usize, j: usize, e: Element) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.check_element(&e)?;
        let dim = self.dim();
        self.table[i * dim + j] = e;
        Ok(())
    }

    /// Whether `⟦e_i, e_j⟧` is an anticommutator.
    pub fn is_anticommutator(&self, i: usize, j: usize) -> bool {
        self.odd[i * self.dim() + j]
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = ((usize, usize), &Element)> {
        let dim = self.dim();
        self.table
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(n, e)| ((n / dim, n % dim), e))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::MalformedElement {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    fn check_element(&self, e: &Element) -> Result<()> {
        e.support().try_for_each(|i| self.check_index(i))
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = Element::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(self.entry(i, j), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn bracket_labels(&self, left: &str, right: &str) -> Result<Element> {
        Ok(self
            .entry(self.index_of(left)?, self.index_of(right)?)
            .clone())
    }

    pub fn format_element(&self, e: &Element) -> String {
        scalar::render_sum(e.iter().map(|(i, c)| (c, self.basis[i].label.clone())))
    }

    /// Element built from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, Scalar)]) -> Result<Element> {
        let mut e = Element::zero();
        for (label, c) in terms {
            e.add_term(self.index_of(label)?, c.clone());
        }
        Ok(e)
    }

    /// Every term of `⟦e_i, e_j⟧` must sit in grade `grade(i) + grade(j)`.
    pub fn check_closure(&self) -> Report {
        let dim = self.dim();
        let mut violations = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let expected = self.grade(i) + self.grade(j);
                let stray = Element::from_terms(
                    self.entry(i, j)
                        .iter()
                        .filter(|(k, _)| self.grade(*k) != expected)
                        .map(|(k, c)| (k, c.clone())),
                );
                if !stray.is_zero() {
                    violations.push(Violation {
                        lhs: self.pair_label(i, j),
                        rhs: expected.to_string(),
                        residual: self.format_element(&stray),
                        location: vec![i, j],
                    });
                }
            }
        }
        Report::new(dim * dim, violations)
    }

    /// `⟦e_i, e_j⟧ + (-1)^{p(i,j)} ⟦e_j, e_i⟧ = 0` for every unordered pair `i <= j`.
    pub fn check_antisymmetry(&self) -> Report {
        let dim = self.dim();
        let mut violations = Vec::new();
        let mut checked = 0;
        for i in 0..dim {
            for j in i..dim {
                checked += 1;
                let mut residual = self.entry(i, j).clone();
                let s = scalar::sign(self.is_anticommutator(i, j));
                residual.add_scaled(self.entry(j, i), &s);
                if !residual.is_zero() {
                    violations.push(Violation {
                        lhs: format!(
                            "{} = {}",
                            self.pair_label(i, j),
                            self.format_element(self.entry(i, j))
                        ),
                        rhs: format!(
                            "{}{} = {}",
                            if self.is_anticommutator(i, j) {
                                ""
                            } else {
                                "-"
                            },
                            self.pair_label(j, i),
                            self.format_element(&self.entry(j, i).scaled(&-s))
                        ),
                        residual: self.format_element(&residual),
                        location: vec![i, j],
                    });
                }
            }
        }
        Report::new(checked, violations)
    }

    /// For every ordered triple `(x, y, z)`:
    /// `⟦x,⟦y,z⟧⟧(-1)^{p(x,z)} + ⟦y,⟦z,x⟧⟧(-1)^{p(y,x)} + ⟦z,⟦x,y⟧⟧(-1)^{p(z,y)} = 0`.
    pub fn check_jacobi(&self) -> Report {
        let dim = self.dim();
        let violations: Vec<Violation> = (0..dim)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut found = Vec::new();
                let mut acc: Vec<(usize, Scalar)> = Vec::new();
                for y in 0..dim {
                    for z in 0..dim {
                        if self.jacobi_residual(x, y, z, &mut acc) {
                            let residual = Element::from_terms(acc.drain(..));
                            found.push(Violation {
                                lhs: format!(
                                    "[{},[{},{}]] + cyclic",
                                    self.label(x),
                                    self.label(y),
                                    self.label(z)
                                ),
                                rhs: "0".to_string(),
                                residual: self.format_element(&residual),
                                location: vec![x, y, z],
                            });
                        }
                    }
                }
                found
            })
            .collect();
        Report::new(dim * dim * dim, violations)
    }

    /// Accumulates the Jacobi sum into `acc` (cleared first); true when it is nonzero.
    fn jacobi_residual(
        &self,
        x: usize,
        y: usize,
        z: usize,
        acc: &mut Vec<(usize, Scalar)>,
    ) -> bool {
        acc.clear();
        let terms = [
            (x, self.entry(y, z), self.is_anticommutator(x, z)),
            (y, self.entry(z, x), self.is_anticommutator(y, x)),
            (z, self.entry(x, y), self.is_anticommutator(z, y)),
        ];
        if terms.iter().all(|(_, inner, _)| inner.is_zero()) {
            return false;
        }
        for (outer, inner, negate) in terms {
            for (k, c) in inner.iter() {
                for (t, d) in self.entry(outer, k).iter() {
                    let v = c * d;
                    let v = if negate { -v } else { v };
                    match acc.iter_mut().find(|(s, _)| *s == t) {
                        Some((_, slot)) => *slot += v,
                        None => acc.push((t, v)),
                    }
                }
            }
        }
        acc.retain(|(_, c)| !c.is_zero());
        !acc.is_empty()
    }

    /// Runs closure, antisymmetry and graded Jacobi.
    pub fn audit(&self) -> Audit {
        Audit {
            closure: self.check_closure(),
            antisymmetry: self.check_antisymmetry(),
            jacobi: self.check_jacobi(),
        }
    }

    fn pair_label(&self, i: usize, j: usize) -> String {
        format!("[{},{}]", self.label(i), self.label(j))
    }
}

impl fmt::Display for ColorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (dim {}, Z2^{}, {} pairing)",
            self.name,
            self.dim(),
            self.grading_bits,
            self.pairing.name()
        )?;
        for ((i, j), e) in self.nonzero_entries() {
            writeln!(
                f,
                "  {} = {}",
                self.pair_label(i, j),
                self.format_element(e)
            )?;
        }
        Ok(())
    }
}

/// Label of the blade basis element `γ_α`: `1`, `g1`, `g1g3`.
pub fn blade_label(a: GradeVec) -> String {
    let s = gamma_of_grade(a).to_string();
    s[1..].to_string()
}

/// Cl(p,q) on its blade basis, graded by `α ↦ γ_α`, with bracket
/// `⟦γ_α, γ_β⟧ = (1 - (-1)^e) κ(α,β) γ_{α+β}` where `e = σ(α)σ(β)` for the dot
/// pairing and `e = σ(α)σ(β) + Σ_k σ(α_k)σ(β_k)` for the symplectic one.
pub fn clifford_as_color_algebra(sig: Signature, pairing: PairingKind) -> Result<ColorAlgebra> {
    let n = sig.dim();
    pairing.validate(n)?;
    let grades: Vec<GradeVec> = GradeVec::all(n)?.collect();
    let mut position = vec![0usize; 1 << n];
    for (i, g) in grades.iter().enumerate() {
        position[g.bits() as usize] = i;
    }
    let basis = grades
        .iter()
        .map(|&g| BasisElement::new(blade_label(g), g))
        .collect();
    let two = scalar::int(2);
    let mut entries = Vec::new();
    for (i, &a) in grades.iter().enumerate() {
        for (j, &b) in grades.iter().enumerate() {
            let mut e = a.sigma() * b.sigma();
            if pairing == PairingKind::Symplectic {
                for k in 1..=n / 2 {
                    let (a1, a2) = a.block(k);
                    let (b1, b2) = b.block(k);
                    e += u32::from(a1 + a2) * u32::from(b1 + b2);
                }
            }
            if e % 2 == 1 {
                let c = if kappa(a, b, sig).is_minus() {
                    -two.clone()
                } else {
                    two.clone()
                };
                let target = position[(a + b).bits() as usize];
                entries.push(((i, j), Element::term(target, c)));
            }
        }
    }
    let name = format!("Cl({},{})/{}", sig.p(), sig.q(), pairing.name());
    ColorAlgebra::new(name, n, pairing, basis, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::blade_mul;
    use crate::scalar::int;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn cl(p: usize, q: usize, pairing: PairingKind) -> ColorAlgebra {
        clifford_as_color_algebra(sig(p, q), pairing).unwrap()
    }

    /// ⟦γ_a, γ_b⟧ computed from two blade products, independent of the closed form.
    fn direct_bracket(alg: &ColorAlgebra, s: Signature, i: usize, j: usize) -> Element {
        let (a, b) = (alg.grade(i), alg.grade(j));
        let ab = blade_mul(gamma_of_grade(a), gamma_of_grade(b), s);
        let ba = blade_mul(gamma_of_grade(b), gamma_of_grade(a), s);
        let target = alg.index_of(&blade_label(a + b)).unwrap();
        let mut out = Element::term(target, int(ab.sign.to_i64()));
        let factor = if alg.is_anticommutator(i, j) { 1 } else { -1 };
        out.add_term(target, int(factor * ba.sign.to_i64()));
        out
    }

    #[test]
    fn closed_form_matches_blade_products() {
        for n in 1..=4 {
            for s in Signature::splits(n).unwrap() {
                let mut kinds = vec![PairingKind::Dot];
                if n % 2 == 0 {
                    kinds.push(PairingKind::Symplectic);
                }
                for kind in kinds {
                    let alg = clifford_as_color_algebra(s, kind).unwrap();
                    for i in 0..alg.dim() {
                        for j in 0..alg.dim() {
                            assert_eq!(alg.entry(i, j), &direct_bracket(&alg, s, i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_examples_cl20() {
        let alg = cl(2, 0, PairingKind::Dot);
        let g1 = alg.element(&[("g1", int(1))]).unwrap();
        let g2 = alg.element(&[("g2", int(1))]).unwrap();
        let g12 = alg.element(&[("g1g2", int(1))]).unwrap();
        assert!(alg.bracket(&g1, &Element::zero()).unwrap().is_zero());
        // (1,0)·(0,1) = 0: commutator of anticommuting generators
        assert_eq!(alg.bracket(&g1, &g2).unwrap(), g12.scaled(&int(2)));
        // (1,0)·(1,1) = 1: anticommutator, γ1γ1γ2 + γ1γ2γ1 = 0
        assert!(alg.bracket(&g1, &g12).unwrap().is_zero());
        assert!(alg.bracket(&g12, &g12).unwrap().is_zero());

        let sym = cl(2, 0, PairingKind::Symplectic);
        assert_eq!(sym.nonzero_entries().count(), 0);
        let sym4 = cl(4, 0, PairingKind::Symplectic);
        let g13 = sym4.element(&[("g1g3", int(2))]).unwrap();
        assert_eq!(sym4.bracket_labels("g1", "g3").unwrap(), g13);
        assert!(sym4.bracket_labels("g1", "g2").unwrap().is_zero());
    }

    #[test]
    fn cl10_anticommutator() {
        let alg = cl(1, 0, PairingKind::Dot);
        assert_eq!(
            alg.bracket_labels("g1", "g1").unwrap(),
            Element::term(0, int(2))
        );
    }

    #[test]
    fn out_of_range_element_is_rejected() {
        let alg = cl(1, 0, PairingKind::Dot);
        assert!(matches!(
            alg.bracket(&Element::basis(7), &Element::basis(0)),
            Err(Error::MalformedElement { index: 7, dim: 2 })
        ));
    }

    #[test]
    fn bracket_vanishes_iff_exponent_even() {
        for s in Signature::splits(3).unwrap() {
            let alg = clifford_as_color_algebra(s, PairingKind::Dot).unwrap();
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let e = alg.grade(i).sigma() * alg.grade(j).sigma();
                    assert_eq!(alg.entry(i, j).is_zero(), e.is_multiple_of(2));
                }
            }
        }
    }

    #[test]
    fn auditors_pass_on_small_cliffords() {
        for n in 1..=3 {
            for s in Signature::splits(n).unwrap() {
                assert!(clifford_as_color_algebra(s, PairingKind::Dot)
                    .unwrap()
                    .audit()
                    .passed());
            }
        }
        for s in Signature::splits(2).unwrap() {
            assert!(clifford_as_color_algebra(s, PairingKind::Symplectic)
                .unwrap()
                .audit()
                .passed());
        }
        let r = cl(2, 1, PairingKind::Dot).check_antisymmetry();
        assert_eq!((r.checked_count, r.violations.len()), (36, 0));
    }

    #[test]
    fn flipped_sign_is_localized_by_antisymmetry() {
        let mut alg = cl(2, 1, PairingKind::Dot);
        let (i, j) = (alg.index_of("g1").unwrap(), alg.index_of("g2").unwrap());
        let flipped = alg.entry(i, j).scaled(&int(-1));
        alg.set_entry(i, j, flipped).unwrap();
        let r = alg.check_antisymmetry();
        assert_eq!(r.locations(), vec![&[i.min(j), i.max(j)][..]]);
        assert!(alg.check_closure().passed());
    }

    #[test]
    fn closure_is_enforced_by_new() {
        let g = |s: &str| s.parse::<GradeVec>().unwrap();
        let basis = vec![
            BasisElement::new("a", g("1")),
            BasisElement::new("b", g("0")),
        ];
        let bad = vec![((0, 0), Element::basis(0))];
        assert!(matches!(
            ColorAlgebra::new("bad", 1, PairingKind::Dot, basis.clone(), bad.clone()),
            Err(Error::Closure { .. })
        ));
        let raw = ColorAlgebra::from_parts("bad", 1, PairingKind::Dot, basis, bad).unwrap();
        assert_eq!(raw.check_closure().locations(), vec![&[0, 0][..]]);
    }

    #[test]
    fn structural_validation() {
        let g = |s: &str| s.parse::<GradeVec>().unwrap();
        let dup = vec![
            BasisElement::new("a", g("1")),
            BasisElement::new("a", g("0")),
        ];
        assert!(matches!(
            ColorAlgebra::from_parts("d", 1, PairingKind::Dot, dup, vec![]),
            Err(Error::DuplicateLabel(_))
        ));
        let odd = vec![BasisElement::new("a", g("101"))];
        assert!(matches!(
            ColorAlgebra::from_parts("o", 3, PairingKind::Symplectic, odd, vec![]),
            Err(Error::OddPairing(3))
        ));
        let short = vec![BasisElement::new("a", g("10"))];
        assert!(ColorAlgebra::from_parts("s", 3, PairingKind::Dot, short, vec![]).is_err());
    }

    #[test]
    fn homogeneous_brackets_stay_in_sum_grade() {
        let alg = cl(2, 2, PairingKind::Dot);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let target = alg.grade(i) + alg.grade(j);
                let b = alg.bracket(&Element::basis(i), &Element::basis(j)).unwrap();
                assert!(b.support().all(|k| alg.grade(k) == target));
            }
        }
    }
}
