//! Z2⊗Z2 graded polynomials in `x, ψ, θ1, θ2` and differential operators
//! acting on them by left derivatives.
//!
//! Grades are `x: (0,0)`, `ψ: (0,1)`, `θ1, θ2: (1,0)`, and variables reorder
//! as `ζ_a ζ_b = (-1)^{a·b} ζ_b ζ_a`. So `ψ` commutes with both `θ`s, the `θ`s
//! anticommute, and `ψ² = θ_i² = 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::ColorAlgebra;
use crate::clifford::{blade_mul, gamma_of_grade, Blade, Signature};
use crate::envelope::{export_bf, BfGenerator};
use crate::error::{Error, Result};
use crate::grading::{dot, GradeVec};
use crate::report::{Report, Violation};
use crate::scalar::{self, int, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Psi,
    Theta1,
    Theta2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Psi, Var::Theta1, Var::Theta2];
    const ODD: [Var; 3] = [Var::Psi, Var::Theta1, Var::Theta2];

    pub fn grade(self) -> GradeVec {
        let bits = match self {
            Var::X => 0b00,
            Var::Psi => 0b10,
            Var::Theta1 | Var::Theta2 => 0b01,
        };
        GradeVec::from_bits(bits, 2).unwrap()
    }

    fn bit(self) -> u8 {
        match self {
            Var::X => 0,
            Var::Psi => 1,
            Var::Theta1 => 2,
            Var::Theta2 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Psi => "psi",
            Var::Theta1 => "theta1",
            Var::Theta2 => "theta2",
        }
    }
}

fn swap_sign(u: Var, v: Var) -> bool {
    dot(u.grade(), v.grade()).unwrap() % 2 == 1
}

/// `x^k ψ^e1 θ1^e2 θ2^e3` in that order. Also used for derivative words
/// `∂x^k ∂ψ^e1 ∂θ1^e2 ∂θ2^e3`, which reorder with the same signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub x: u32,
    odd: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, odd: 0 };

    pub fn new(x: u32, psi: bool, theta1: bool, theta2: bool) -> Self {
        let odd = u8::from(psi) | u8::from(theta1) << 1 | u8::from(theta2) << 2;
        Self { x, odd }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self { x: 1, odd: 0 },
            v => Self { x: 0, odd: v.bit() },
        }
    }

    pub fn has(self, v: Var) -> bool {
        match v {
            Var::X => self.x > 0,
            v => self.odd & v.bit() != 0,
        }
    }

    fn odd_vars(self) -> impl Iterator<Item = Var> {
        Var::ODD
            .into_iter()
            .filter(move |v| self.odd & v.bit() != 0)
    }

    pub fn grade(self) -> GradeVec {
        self.odd_vars()
            .fold(GradeVec::zero(2).unwrap(), |acc, v| acc + v.grade())
    }

    /// Every monomial with x-degree at most `max_x`, in a fixed order.
    pub fn all(max_x: u32) -> Vec<Monomial> {
        (0..=max_x)
            .flat_map(|x| (0..8u8).map(move |odd| Monomial { x, odd }))
            .collect()
    }

    /// Graded product; `None` when a nilpotent variable repeats.
    pub fn mul(self, other: Monomial) -> Option<(bool, Monomial)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut negative = false;
        for v in other.odd_vars() {
            for u in self.odd_vars().filter(|&u| u > v) {
                negative ^= swap_sign(u, v);
            }
        }
        Some((
            negative,
            Monomial {
                x: self.x + other.x,
                odd: self.odd | other.odd,
            },
        ))
    }

    /// Left derivative: the coefficient and the remaining monomial.
    pub fn derive(self, v: Var) -> Option<(Scalar, Monomial)> {
        match v {
            Var::X => (self.x > 0).then(|| {
                (
                    int(i64::from(self.x)),
                    Monomial {
                        x: self.x - 1,
                        odd: self.odd,
                    },
                )
            }),
            v => {
                if !self.has(v) {
                    return None;
                }
                let negative = self
                    .odd_vars()
                    .filter(|&u| u < v)
                    .fold(false, |acc, u| acc ^ swap_sign(u, v));
                Some((
                    scalar::sign(negative),
                    Monomial {
                        x: self.x,
                        odd: self.odd & !v.bit(),
                    },
                ))
            }
        }
    }

    /// Leftmost letter and the rest.
    fn split_first(self) -> Option<(Var, Monomial)> {
        if self.x > 0 {
            return Some((
                Var::X,
                Monomial {
                    x: self.x - 1,
                    odd: self.odd,
                },
            ));
        }
        let v = self.odd_vars().next()?;
        Some((
            v,
            Monomial {
                x: 0,
                odd: self.odd & !v.bit(),
            },
        ))
    }

    fn render(self, prefix: &str) -> String {
        let mut parts = Vec::new();
        match self.x {
            0 => {}
            1 => parts.push(format!("{prefix}x")),
            k => parts.push(format!("{prefix}x^{k}")),
        }
        parts.extend(self.odd_vars().map(|v| format!("{prefix}{}", v.name())));
        parts.join(" ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            f.write_str("1")
        } else {
            f.write_str(&self.render(""))
        }
    }
}

/// Sparse polynomial; no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedPoly(BTreeMap<Monomial, Scalar>);

impl GradedPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &GradedPoly, c: &Scalar) {
        for (m, d) in other.iter() {
            self.add_term(*m, c * d);
        }
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn mul(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (a, c) in self.iter() {
            for (b, d) in other.iter() {
                if let Some((neg, m)) = a.mul(*b) {
                    out.add_term(m, scalar::sign(neg) * c * d);
                }
            }
        }
        out
    }

    pub fn left_derive(&self, v: Var) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in self.iter() {
            if let Some((k, rest)) = m.derive(v) {
                out.add_term(rest, k * c);
            }
        }
        out
    }

    /// Grades present among the terms.
    pub fn grades(&self) -> Vec<GradeVec> {
        let mut g: Vec<GradeVec> = self.0.keys().map(|m| m.grade()).collect();
        g.sort();
        g.dedup();
        g
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&scalar::render_sum(
            self.iter().map(|(m, c)| (c, m.to_string())),
        ))
    }
}

/// `Σ c · m ∂^d`: multiplication by `m` after the derivative word `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOperator {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
    grade: GradeVec,
}

impl DiffOperator {
    pub fn zero(grade: GradeVec) -> Self {
        Self {
            terms: BTreeMap::new(),
            grade,
        }
    }

    pub fn identity() -> Self {
        let mut op = Self::zero(GradeVec::zero(2).unwrap());
        op.add_term(Monomial::ONE, Monomial::ONE, Scalar::one());
        op
    }

    /// Builds from `(coefficient, [coefficient vars], [derivative vars])`
    /// and checks that every term has the same grade.
    pub fn from_terms(terms: &[(i64, &[Var], &[Var])]) -> Result<Self> {
        let word = |vs: &[Var]| -> Result<(bool, Monomial)> {
            vs.iter()
                .try_fold((false, Monomial::ONE), |(neg, acc), &v| {
                    acc.mul(Monomial::var(v))
                        .map(|(n, m)| (neg ^ n, m))
                        .ok_or_else(|| Error::Parse(format!("repeated odd variable {}", v.name())))
                })
        };
        let mut op: Option<DiffOperator> = None;
        for &(c, coeff, deriv) in terms {
            let (n1, m) = word(coeff)?;
            let (n2, d) = word(deriv)?;
            let g = m.grade() + d.grade();
            let op = op.get_or_insert_with(|| DiffOperator::zero(g));
            if op.grade != g {
                return Err(Error::Parse(format!(
                    "inhomogeneous operator: {} vs {}",
                    op.grade, g
                )));
            }
            op.add_term(m, d, scalar::sign(n1 ^ n2) * int(c));
        }
        Ok(op.unwrap_or_else(|| DiffOperator::zero(GradeVec::zero(2).unwrap())))
    }

    pub fn grade(&self) -> GradeVec {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, d: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((m, d)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(m, d));
        }
    }

    pub fn add_scaled(&mut self, other: &DiffOperator, c: &Scalar) {
        for (&(m, d), v) in &other.terms {
            self.add_term(m, d, c * v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> DiffOperator {
        let mut out = DiffOperator::zero(self.grade);
        out.add_scaled(self, c);
        out
    }

    fn apply_word(d: Monomial, p: &GradedPoly) -> GradedPoly {
        match d.split_first() {
            None => p.clone(),
            Some((v, rest)) => Self::apply_word(rest, p).left_derive(v),
        }
    }

    pub fn apply(&self, p: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (&(m, d), c) in &self.terms {
            let dp = Self::apply_word(d, p);
            out.add_scaled(&GradedPoly::monomial(m).mul(&dp), c);
        }
        out
    }

    /// `∂^d ∘ m` rewritten as `Σ c · m' ∂^{d'}`.
    fn push_through(d: Monomial, m: Monomial) -> Vec<(Scalar, Monomial, Monomial)> {
        let Some((v, rest)) = d.split_first() else {
            return vec![(Scalar::one(), m, Monomial::ONE)];
        };
        let mut out = Vec::new();
        for (c, mi, ei) in Self::push_through(rest, m) {
            // ∂v ∘ (mi ∂^ei) = (∂v mi) ∂^ei + (-1)^{v·mi} mi ∂v ∂^ei
            if let Some((k, dm)) = mi.derive(v) {
                out.push((&c * k, dm, ei));
            }
            if let Some((neg, word)) = Monomial::var(v).mul(ei) {
                let s = dot(v.grade(), mi.grade()).unwrap() % 2 == 1;
                out.push((c * scalar::sign(neg ^ s), mi, word));
            }
        }
        out
    }

    /// Operator composition `self ∘ other`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        let mut out = DiffOperator::zero(self.grade + other.grade);
        for (&(m1, d1), c1) in &self.terms {
            for (&(m2, d2), c2) in &other.terms {
                for (c, mi, ei) in Self::push_through(d1, m2) {
                    let (Some((n1, m)), Some((n2, d))) = (m1.mul(mi), ei.mul(d2)) else {
                        continue;
                    };
                    out.add_term(m, d, scalar::sign(n1 ^ n2) * c * c1 * c2);
                }
            }
        }
        out
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(&(m, d), c)| {
            let mut parts = Vec::new();
            if m != Monomial::ONE {
                parts.push(m.render(""));
            }
            if d != Monomial::ONE {
                parts.push(d.render("d/d"));
            }
            let label = if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            };
            (c, label)
        });
        f.write_str(&scalar::render_sum(terms))
    }
}

/// `XY - (-1)^{grade(X)·grade(Y)} YX`.
pub fn op_bracket(x: &DiffOperator, y: &DiffOperator) -> DiffOperator {
    let anticommute = dot(x.grade(), y.grade()).unwrap() % 2 == 1;
    let mut out = x.compose(y);
    out.add_scaled(&y.compose(x), &scalar::sign(!anticommute));
    out
}

/// The vector field of a single-mode bf generator; `1` is the identity.
pub fn vector_field(g: BfGenerator) -> Result<DiffOperator> {
    use BfGenerator::*;
    use Var::*;
    if g.indices().iter().any(|&i| i != 1) {
        return Err(Error::ModeIndex {
            index: g.indices().into_iter().max().unwrap_or(0),
            modes: 1,
        });
    }
    match g {
        One => Ok(DiffOperator::identity()),
        Adag(..) => DiffOperator::from_terms(&[(-1, &[], &[X])]),
        BosonDag(_) => DiffOperator::from_terms(&[(-1, &[], &[Psi]), (1, &[Psi], &[X])]),
        AlphaDag(_) => DiffOperator::from_terms(&[(-1, &[], &[Theta2])]),
        BetaDag(_) => DiffOperator::from_terms(&[(-1, &[], &[Theta1]), (1, &[Theta1], &[X])]),
        N(..) => DiffOperator::from_terms(&[
            (-2, &[X], &[X]),
            (-1, &[Psi], &[Psi]),
            (-1, &[Theta1], &[Theta1]),
        ]),
        F => DiffOperator::from_terms(&[(2, &[Theta1], &[Psi]), (2, &[Psi], &[Theta1])]),
        A(..) => DiffOperator::from_terms(&[
            (-4, &[X, X], &[X]),
            (-4, &[X, Psi], &[Psi]),
            (-4, &[X, Theta1], &[Theta1]),
        ]),
        Boson(_) => DiffOperator::from_terms(&[
            (-2, &[X], &[Psi]),
            (2, &[X, Psi], &[X]),
            (2, &[Psi, Theta1], &[Theta1]),
        ]),
        Alpha(_) => DiffOperator::from_terms(&[(-1, &[Theta2], &[])]),
        Beta(_) => DiffOperator::from_terms(&[
            (2, &[X, Theta1], &[X]),
            (2, &[Psi, Theta1], &[Psi]),
            (-2, &[X], &[Theta1]),
        ]),
    }
}

/// Vector fields for the eleven basis elements of `bf(1)`, in export order.
pub fn bf_vector_fields() -> Result<Vec<(BfGenerator, DiffOperator)>> {
    BfGenerator::basis(1)
        .into_iter()
        .map(|g| Ok((g, vector_field(g)?)))
        .collect()
}

/// Checks every ordered pair of `bf(1)` basis elements: the operator
/// bracket of their vector fields must act on each monomial of x-degree at
/// most `max_x_degree` like the vector field of the structure-constant
/// right-hand side.
pub fn verify_representation(max_x_degree: u32) -> Result<Report> {
    if max_x_degree < 2 {
        return Err(Error::Unsupported(format!(
            "max x-degree must be at least 2, got {max_x_degree}"
        )));
    }
    let bf = export_bf(1)?;
    verify_representation_against(&bf, max_x_degree)
}

/// [`verify_representation`] with caller-supplied structure constants, whose
/// labels must be bf(1) generator labels.
pub fn verify_representation_against(bf: &ColorAlgebra, max_x_degree: u32) -> Result<Report> {
    let gens = (0..bf.dim())
        .map(|i| bf.label(i).parse::<BfGenerator>())
        .collect::<Result<Vec<_>>>()?;
    let fields = gens
        .iter()
        .map(|&g| vector_field(g))
        .collect::<Result<Vec<_>>>()?;
    let monomials = Monomial::all(max_x_degree);
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|i| (0..gens.len()).map(move |j| (i, j)))
        .collect();
    let violations: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let lhs = op_bracket(&fields[i], &fields[j]);
            let mut rhs = DiffOperator::zero(lhs.grade());
            for (k, c) in bf.entry(i, j).iter() {
                rhs.add_scaled(&fields[k], c);
            }
            let claimed = bf.format_element(bf.entry(i, j));
            let mut out = Vec::new();
            for (mi, &m) in monomials.iter().enumerate() {
                let p = GradedPoly::monomial(m);
                let diff = lhs.apply(&p).sub(&rhs.apply(&p));
                if !diff.is_zero() {
                    out.push(Violation {
                        lhs: format!("[{}, {}]({m})", gens[i], gens[j]),
                        rhs: format!("({claimed})({m})"),
                        residual: diff.to_string(),
                        location: vec![i, j, mi],
                    });
                }
            }
            out
        })
        .collect();
    Ok(Report::new(pairs.len(), violations))
}

/// A realization `b ⊗ f` of an extended Grassmann number: a signed blade,
/// a product of distinct anticommuting `ξ`s and commuting reals.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Realized {
    blade: Blade,
    xi: u16,
    reals: [u8; 8],
}

impl Realized {
    fn mul(&self, other: &Realized, sig: Signature) -> Option<Realized> {
        if self.xi & other.xi != 0 {
            return None;
        }
        let mut negative = false;
        for j in 0..16 {
            if other.xi >> j & 1 == 1 {
                negative ^= (self.xi >> (j + 1)).count_ones() % 2 == 1;
            }
        }
        let mut blade = blade_mul(self.blade, other.blade, sig);
        if negative {
            blade = -blade;
        }
        let mut reals = self.reals;
        for (r, o) in reals.iter_mut().zip(other.reals) {
            *r += o;
        }
        Some(Realized {
            blade,
            xi: self.xi | other.xi,
            reals,
        })
    }
}

/// Realizes two copies of each Z2⊗Z2 grade of extended Grassmann numbers as
/// `1 ⊗ x`, `γ1 ⊗ ξ`, `γ2 ⊗ ξ`, `γ1γ2 ⊗ x` with a distinct `ξ` or `x` per
/// copy, and checks `ζ_a ζ_b = (-1)^{a·b} ζ_b ζ_a` for every ordered pair.
pub fn check_zeta_realization(sig: Signature) -> Result<Report> {
    if sig.dim() != 2 {
        return Err(Error::Signature {
            p: sig.p(),
            q: sig.q(),
            max: 2,
        });
    }
    let mut zetas: Vec<(GradeVec, String, Realized)> = Vec::new();
    let (mut next_xi, mut next_real) = (0, 0);
    for bits in [0b00u16, 0b01, 0b10, 0b11] {
        let grade = GradeVec::from_bits(bits, 2)?;
        for copy in 1..=2 {
            let mut z = Realized {
                blade: gamma_of_grade(grade),
                xi: 0,
                reals: [0; 8],
            };
            if grade.sigma() % 2 == 1 {
                z.xi = 1 << next_xi;
                next_xi += 1;
            } else {
                z.reals[next_real] = 1;
                next_real += 1;
            }
            zetas.push((grade, format!("zeta{grade}_{copy}"), z));
        }
    }
    let mut violations = Vec::new();
    for (i, (ga, la, za)) in zetas.iter().enumerate() {
        for (j, (gb, lb, zb)) in zetas.iter().enumerate() {
            let ab = za.mul(zb, sig);
            let ba = zb.mul(za, sig);
            let anticommute = dot(*ga, *gb)? % 2 == 1;
            let expected = ba.map(|mut r| {
                if anticommute {
                    r.blade = -r.blade;
                }
                r
            });
            if ab != expected {
                let show = |r: &Option<Realized>| match r {
                    None => "0".to_string(),
                    Some(r) => format!("{} xi{:04b} x{:?}", r.blade, r.xi, r.reals),
                };
                violations.push(Violation {
                    lhs: format!("{la} {lb} = {}", show(&ab)),
                    rhs: format!("{}{lb} {la}", if anticommute { "-" } else { "" }),
                    residual: show(&expected),
                    location: vec![i, j],
                });
            }
        }
    }
    Ok(Report::new(zetas.len() * zetas.len(), violations))
}

/// Number of monomials [`verify_representation`] applies each identity to.
pub fn monomial_count(max_x_degree: u32) -> usize {
    Monomial::all(max_x_degree).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use BfGenerator as G;
    use Var::*;

    fn mono(x: u32, psi: bool, t1: bool, t2: bool) -> GradedPoly {
        GradedPoly::monomial(Monomial::new(x, psi, t1, t2))
    }

    #[test]
    fn products() {
        let psi = GradedPoly::var(Psi);
        let t1 = GradedPoly::var(Theta1);
        let t2 = GradedPoly::var(Theta2);
        assert!(psi.mul(&psi).is_zero());
        let mut neg = mono(0, false, true, true);
        neg = GradedPoly::zero().sub(&neg);
        assert_eq!(t2.mul(&t1), neg);
        assert_eq!(psi.mul(&t1), mono(0, true, true, false));
        assert_eq!(t1.mul(&psi), mono(0, true, true, false));
    }

    #[test]
    fn worked_derivatives() {
        // ∂/∂θ2 (x θ1 θ2) = -x θ1
        let p = mono(1, false, true, true);
        assert_eq!(
            p.left_derive(Theta2),
            GradedPoly::term(Monomial::new(1, false, true, false), int(-1))
        );
        // ∂/∂ψ (θ1 ψ) = θ1
        let p = GradedPoly::var(Theta1).mul(&GradedPoly::var(Psi));
        assert_eq!(p.left_derive(Psi), GradedPoly::var(Theta1));
        // ∂/∂x (x² ψ) = 2xψ
        assert_eq!(
            mono(2, true, false, false).left_derive(X),
            GradedPoly::term(Monomial::new(1, true, false, false), int(2))
        );
        assert!(mono(2, true, false, false).left_derive(Theta1).is_zero());
    }

    #[test]
    fn operator_examples() {
        let f = vector_field(G::F).unwrap();
        assert_eq!(
            f.apply(&GradedPoly::var(Psi)),
            GradedPoly::term(Monomial::var(Theta1), int(2))
        );
        let ad = vector_field(G::AlphaDag(1)).unwrap();
        assert_eq!(
            ad.apply(&GradedPoly::var(Theta2)),
            GradedPoly::term(Monomial::ONE, int(-1))
        );
        let n = vector_field(G::N(1, 1)).unwrap();
        assert_eq!(
            n.apply(&mono(1, true, false, false)),
            GradedPoly::term(Monomial::new(1, true, false, false), int(-3))
        );
        assert_eq!(f.to_string(), "2*psi d/dtheta1 + 2*theta1 d/dpsi");
    }

    #[test]
    fn operator_brackets() {
        let v = |g| vector_field(g).unwrap();
        assert_eq!(
            op_bracket(&v(G::Alpha(1)), &v(G::AlphaDag(1))),
            DiffOperator::identity()
        );
        assert_eq!(
            op_bracket(&v(G::Boson(1)), &v(G::BosonDag(1))),
            v(G::N(1, 1)).scaled(&int(2))
        );
        assert!(op_bracket(&v(G::Adag(1, 1)), &v(G::F)).is_zero());
        assert_eq!(
            op_bracket(&v(G::Beta(1)), &v(G::Beta(1))),
            v(G::A(1, 1)).scaled(&int(2))
        );
        assert_eq!(
            op_bracket(&v(G::BetaDag(1)), &v(G::BetaDag(1))),
            v(G::Adag(1, 1)).scaled(&int(2))
        );
        assert!(op_bracket(&v(G::Alpha(1)), &v(G::Alpha(1))).is_zero());
        assert!(op_bracket(&v(G::Alpha(1)), &v(G::Boson(1))).is_zero());
    }

    #[test]
    fn leibniz_consistency() {
        let fields = bf_vector_fields().unwrap();
        let monomials = Monomial::all(4);
        for (_, x) in &fields {
            for (_, y) in &fields {
                let b = op_bracket(x, y);
                let s = scalar::sign(dot(x.grade(), y.grade()).unwrap().is_multiple_of(2));
                for &m in &monomials {
                    let p = GradedPoly::monomial(m);
                    let mut direct = x.apply(&y.apply(&p));
                    direct.add_scaled(&y.apply(&x.apply(&p)), &s);
                    assert_eq!(b.apply(&p), direct);
                }
            }
        }
    }

    #[test]
    fn derivatives_anticommute() {
        let d = |v| DiffOperator::from_terms(&[(1, &[], &[v])]).unwrap();
        let (d1, d2) = (d(Theta1), d(Theta2));
        for m in Monomial::all(2) {
            let p = GradedPoly::monomial(m);
            let mut sum = d1.apply(&d2.apply(&p));
            sum.add_scaled(&d2.apply(&d1.apply(&p)), &Scalar::one());
            assert!(sum.is_zero());
        }
        assert!(op_bracket(&d1, &d2).is_zero());
    }

    #[test]
    fn grade_additivity() {
        for (g, op) in bf_vector_fields().unwrap() {
            assert_eq!(op.grade(), g.grade(), "{g}");
            for m in Monomial::all(3) {
                for h in op.apply(&GradedPoly::monomial(m)).grades() {
                    assert_eq!(h, g.grade() + m.grade());
                }
            }
        }
    }

    #[test]
    fn representation_holds() {
        let r = verify_representation(4).unwrap();
        assert_eq!(r.checked_count, 121);
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(matches!(
            verify_representation(1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn corrupted_constants_are_caught() {
        let mut bf = export_bf(1).unwrap();
        let (b, f) = (bf.index_of("beta1").unwrap(), bf.index_of("F").unwrap());
        let wrong = bf.entry(b, f).scaled(&frac(1, 2));
        bf.set_entry(b, f, wrong).unwrap();
        let r = verify_representation_against(&bf, 2).unwrap();
        assert!(!r.passed());
        assert!(r.locations().iter().all(|l| l[..2] == [b, f]));
    }

    #[test]
    fn zeta_realization() {
        for s in Signature::splits(2).unwrap() {
            let r = check_zeta_realization(s).unwrap();
            assert_eq!(r.checked_count, 64);
            assert!(r.passed(), "{:?}", r.violations.first());
        }
        assert!(check_zeta_realization(Signature::new(3, 0).unwrap()).is_err());
    }

    #[test]
    fn inhomogeneous_operator_rejected() {
        assert!(DiffOperator::from_terms(&[(1, &[Psi], &[]), (1, &[Theta1], &[])]).is_err());
    }
}
