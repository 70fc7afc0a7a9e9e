//! Superalgebra ⊗ Clifford.
//!
//! Given a Lie superalgebra `g` with constants `C` and a signature (p, q),
//! the elements `X_{α,a} = γ_α ⊗ T_a` with `σ(α) ≡ |a| (mod 2)` span a
//! Z2^N color superalgebra with
//!
//! ```text
//! ⟦X_{α,a}, X_{β,b}⟧ = κ(α,β) C^c_{ab} X_{α+β,c}
//! ```
//!
//! and conversely `T_{α,a} = γ_α ⊗ X_{α,a}` turns a color superalgebra into
//! an ordinary one with parity `σ(α) mod 2`.

use crate::algebra::{blade_label, BasisElement, ColorAlgebra, Element};
use crate::clifford::{kappa, Sign, Signature};
use crate::error::{Error, Result};
use crate::grading::{GradeVec, PairingKind};
use crate::scalar::{self, Scalar};
use crate::superalgebra::Superalgebra;

fn kappa_scalar(sig: Signature, a: GradeVec, b: GradeVec) -> Scalar {
    scalar::sign(kappa(a, b, sig) == Sign::Minus)
}

/// Basis `(α, a)` in lexicographic order, `α` over [`GradeVec::all`].
pub fn build_color_super(g: &Superalgebra, sig: Signature) -> Result<ColorAlgebra> {
    let n = sig.dim();
    let src = g.algebra();
    let mut pairs: Vec<(GradeVec, usize)> = Vec::new();
    for alpha in GradeVec::all(n)? {
        for a in 0..src.dim() {
            if (alpha.sigma() % 2 == 1) == g.is_odd(a) {
                pairs.push((alpha, a));
            }
        }
    }
    let index_of = |alpha: GradeVec, a: usize| pairs.binary_search(&(alpha, a)).ok();
    let basis = pairs
        .iter()
        .map(|&(alpha, a)| {
            BasisElement::new(format!("{}*{}", blade_label(alpha), src.label(a)), alpha)
        })
        .collect::<Vec<_>>();
    let mut entries = Vec::new();
    for (i, &(alpha, a)) in pairs.iter().enumerate() {
        for (j, &(beta, b)) in pairs.iter().enumerate() {
            let c = src.entry(a, b);
            if c.is_zero() {
                continue;
            }
            let k = kappa_scalar(sig, alpha, beta);
            let target = alpha + beta;
            let mut e = Element::zero();
            for (t, coeff) in c.iter() {
                let idx = index_of(target, t).ok_or_else(|| {
                    Error::Unsupported(format!(
                        "[{}, {}] reaches {} of the wrong parity",
                        src.label(a),
                        src.label(b),
                        src.label(t)
                    ))
                })?;
                e.add_term(idx, coeff * &k);
            }
            entries.push(((i, j), e));
        }
    }
    ColorAlgebra::new(
        format!("{}(x)Cl({},{})", src.name(), sig.p(), sig.q()),
        n,
        PairingKind::Dot,
        basis,
        entries,
    )
}

/// Collapses a dot-paired color superalgebra with `N = p + q` grading bits
/// to a Lie superalgebra; the result is validated.
pub fn reverse_build(alg: &ColorAlgebra, sig: Signature) -> Result<Superalgebra> {
    if alg.pairing() != PairingKind::Dot {
        return Err(Error::Unsupported(
            "reverse build needs the dot pairing".into(),
        ));
    }
    if alg.grading_bits() != sig.dim() {
        return Err(Error::DimensionMismatch {
            left: alg.grading_bits(),
            right: sig.dim(),
        });
    }
    let basis = alg
        .basis()
        .iter()
        .map(|b| {
            let parity = GradeVec::from_bits((b.grade.sigma() % 2) as u16, 1).unwrap();
            BasisElement::new(format!("{}*{}", blade_label(b.grade), b.label), parity)
        })
        .collect::<Vec<_>>();
    let mut entries = Vec::new();
    for ((i, j), e) in alg.nonzero_entries() {
        let k = kappa_scalar(sig, alg.grade(i), alg.grade(j));
        entries.push(((i, j), e.scaled(&k)));
    }
    let out = ColorAlgebra::new(
        format!("rev[{}]", alg.name()),
        1,
        PairingKind::Dot,
        basis,
        entries,
    )?;
    Superalgebra::try_from(out)
}

/// Expected dimension of [`build_color_super`].
pub fn expected_dim(g: &Superalgebra, sig: Signature) -> usize {
    (1usize << (sig.dim() - 1)) * g.dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::export_bf;
    use crate::scalar::int;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn dimensions() {
        let fh = Superalgebra::builtin("fermionic_heisenberg").unwrap();
        assert_eq!(build_color_super(&fh, sig(1, 0)).unwrap().dim(), 3);
        assert_eq!(build_color_super(&fh, sig(2, 0)).unwrap().dim(), 6);
        let osp = Superalgebra::builtin("osp(1|2)").unwrap();
        let a = build_color_super(&osp, sig(1, 1)).unwrap();
        assert_eq!(a.dim(), 10);
        assert!(a.audit().passed());
    }

    #[test]
    fn heisenberg_example() {
        let fh = Superalgebra::builtin("fermionic_heisenberg").unwrap();
        let a = build_color_super(&fh, sig(2, 0)).unwrap();
        let got = a.bracket_labels("g1*Q", "g2*Qdag").unwrap();
        assert_eq!(got, Element::basis(a.index_of("g1g2*Z").unwrap()));
        let got = a.bracket_labels("g2*Q", "g1*Qdag").unwrap();
        assert_eq!(got, Element::term(a.index_of("g1g2*Z").unwrap(), int(-1)));
        for b in a.basis() {
            assert_eq!(b.grade.sigma() % 2 == 1, !b.label.ends_with('Z'));
        }
    }

    #[test]
    fn every_split_up_to_three() {
        for name in ["fermionic_heisenberg", "osp(1|2)"] {
            let g = Superalgebra::builtin(name).unwrap();
            for s in (1..=3).flat_map(|n| Signature::splits(n).unwrap()) {
                let a = build_color_super(&g, s).unwrap();
                assert_eq!(a.dim(), expected_dim(&g, s));
                assert!(a.audit().passed(), "{name} {s:?}");
                let back = reverse_build(&a, s).unwrap();
                assert_eq!(back.dim(), a.dim());
            }
        }
    }

    #[test]
    fn reverse_of_bf() {
        let bf = export_bf(1).unwrap();
        let s = reverse_build(&bf, sig(2, 0)).unwrap();
        assert_eq!(s.dim(), 11);
        let one = bf.index_of("1").unwrap();
        assert!(!s.is_odd(one));
        assert!(s.is_odd(bf.index_of("a1").unwrap()));
        assert!(!s.is_odd(bf.index_of("F").unwrap()));
    }

    #[test]
    fn reverse_input_checks() {
        let bf = export_bf(1).unwrap();
        assert!(matches!(
            reverse_build(&bf, sig(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
        let cl =
            crate::algebra::clifford_as_color_algebra(sig(2, 0), PairingKind::Symplectic).unwrap();
        assert!(matches!(
            reverse_build(&cl, sig(2, 0)),
            Err(Error::Unsupported(_))
        ));
    }
}
