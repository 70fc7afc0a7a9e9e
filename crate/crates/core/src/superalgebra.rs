//! Ordinary Lie superalgebras: the one-bit case of [`ColorAlgebra`] with the
//! dot pairing, so `[x, y] = xy - (-1)^{|x||y|} yx`.

use std::path::Path;

use crate::algebra::{BasisElement, ColorAlgebra, Element};
use crate::envelope::{export_algebra, BfGrading};
use crate::error::{Error, Result};
use crate::grading::{GradeVec, PairingKind};
use crate::json;
use crate::scalar::int;

/// A validated Lie superalgebra. Construction runs closure, antisymmetry
/// and super-Jacobi, and fails on the first defect found.
#[derive(Debug, Clone)]
pub struct Superalgebra {
    inner: ColorAlgebra,
}

impl Superalgebra {
    /// `basis` is `(label, odd)`; brackets are `(left, right, [(target, coeff)])`
    /// with absent pairs zero. Only the listed orientation is required when
    /// `complete_antisymmetric` is set; the reverse one is filled in.
    pub fn from_relations(
        name: impl Into<String>,
        basis: &[(&str, bool)],
        brackets: &[(&str, &str, &[(&str, i64)])],
        complete_antisymmetric: bool,
    ) -> Result<Self> {
        let elems = basis
            .iter()
            .map(|&(l, odd)| BasisElement::new(l, GradeVec::from_bits(u16::from(odd), 1).unwrap()))
            .collect();
        let mut alg =
            ColorAlgebra::from_parts(name, 1, PairingKind::Dot, elems, std::iter::empty())?;
        for &(l, r, terms) in brackets {
            let (i, j) = (alg.index_of(l)?, alg.index_of(r)?);
            let mut e = Element::zero();
            for &(t, c) in terms {
                e.add_term(alg.index_of(t)?, int(c));
            }
            if complete_antisymmetric && i != j {
                let s = if alg.is_anticommutator(i, j) {
                    int(1)
                } else {
                    int(-1)
                };
                alg.set_entry(j, i, e.scaled(&s))?;
            }
            alg.set_entry(i, j, e)?;
        }
        Self::try_from(alg)
    }

    pub fn algebra(&self) -> &ColorAlgebra {
        &self.inner
    }

    pub fn into_algebra(self) -> ColorAlgebra {
        self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.inner.grade(i).bits() == 1
    }

    pub fn label(&self, i: usize) -> &str {
        self.inner.label(i)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::try_from(json::read_algebra(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        json::write_algebra(path, &self.inner)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::try_from(json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        json::to_string(&self.inner)
    }

    /// Catalog lookup: `fermionic_heisenberg`, `osp(1|2)`, `bf_source(n)`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name.trim() {
            "fermionic_heisenberg" => fermionic_heisenberg(),
            "osp(1|2)" => osp12(),
            other => {
                let n = other
                    .strip_prefix("bf_source(")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnknownAlgebra(other.to_string()))?;
                Self::try_from(export_algebra(n, BfGrading::Super)?)
            }
        }
    }

    pub const CATALOG: [&'static str; 3] = ["fermionic_heisenberg", "osp(1|2)", "bf_source(1)"];
}

impl TryFrom<ColorAlgebra> for Superalgebra {
    type Error = Error;

    fn try_from(alg: ColorAlgebra) -> Result<Self> {
        if alg.grading_bits() != 1 || alg.pairing() != PairingKind::Dot {
            return Err(Error::Unsupported(format!(
                "a superalgebra needs one grading bit and the dot pairing, got {} bit(s), {}",
                alg.grading_bits(),
                alg.pairing().name()
            )));
        }
        if let Some(v) = alg.check_closure().violations.first() {
            return Err(Error::Closure {
                left: alg.label(v.location[0]).to_string(),
                right: alg.label(v.location[1]).to_string(),
                target: v.residual.clone(),
                expected: v.rhs.clone(),
            });
        }
        alg.audit().into_result()?;
        Ok(Self { inner: alg })
    }
}

impl From<Superalgebra> for ColorAlgebra {
    fn from(s: Superalgebra) -> Self {
        s.inner
    }
}

fn fermionic_heisenberg() -> Result<Superalgebra> {
    Superalgebra::from_relations(
        "fermionic_heisenberg",
        &[("Q", true), ("Qdag", true), ("Z", false)],
        &[("Q", "Qdag", &[("Z", 1)])],
        true,
    )
}

fn osp12() -> Result<Superalgebra> {
    Superalgebra::from_relations(
        "osp(1|2)",
        &[
            ("h", false),
            ("e", false),
            ("f", false),
            ("qp", true),
            ("qm", true),
        ],
        &[
            ("h", "e", &[("e", 2)]),
            ("h", "f", &[("f", -2)]),
            ("e", "f", &[("h", 1)]),
            ("h", "qp", &[("qp", 1)]),
            ("h", "qm", &[("qm", -1)]),
            ("e", "qm", &[("qp", -1)]),
            ("f", "qp", &[("qm", -1)]),
            ("qp", "qp", &[("e", 2)]),
            ("qm", "qm", &[("f", -2)]),
            ("qp", "qm", &[("h", 1)]),
        ],
        true,
    )
}

/// Structure constants of `s` restricted to a subset of labels; entries
/// leaving the subset are dropped. Used to compare catalog pieces.
pub fn restricted_entries(
    s: &Superalgebra,
    labels: &[&str],
) -> Result<Vec<(String, String, Element)>> {
    let alg = s.algebra();
    let idx = labels
        .iter()
        .map(|l| alg.index_of(l))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for &i in &idx {
        for &j in &idx {
            let e = alg.entry(i, j);
            let kept = Element::from_terms(
                e.iter()
                    .filter(|(k, _)| idx.contains(k))
                    .map(|(k, c)| (k, c.clone())),
            );
            if !kept.is_zero() {
                out.push((alg.label(i).to_string(), alg.label(j).to_string(), kept));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{BfGenerator, Envelope};
    use crate::scalar::Scalar;

    #[test]
    fn catalog_passes_auditors() {
        for name in Superalgebra::CATALOG
            .iter()
            .copied()
            .chain(["bf_source(2)"])
        {
            let s = Superalgebra::builtin(name).unwrap();
            assert!(s.algebra().audit().passed(), "{name}");
        }
        assert_eq!(Superalgebra::builtin("osp(1|2)").unwrap().dim(), 5);
        assert_eq!(Superalgebra::builtin("bf_source(1)").unwrap().dim(), 11);
    }

    #[test]
    fn defining_relations() {
        let fh = Superalgebra::builtin("fermionic_heisenberg").unwrap();
        let z = fh.algebra().index_of("Z").unwrap();
        assert_eq!(
            fh.algebra().bracket_labels("Q", "Qdag").unwrap(),
            Element::basis(z)
        );
        assert_eq!(
            fh.algebra().bracket_labels("Qdag", "Q").unwrap(),
            Element::basis(z)
        );
        assert!(fh.is_odd(0) && !fh.is_odd(z));

        let bf = Superalgebra::builtin("bf_source(1)").unwrap();
        let one = bf.algebra().index_of("1").unwrap();
        assert_eq!(
            bf.algebra().bracket_labels("F", "F").unwrap(),
            Element::term(one, int(2))
        );
        assert_eq!(
            bf.algebra().bracket_labels("a1", "adag1").unwrap(),
            Element::basis(one)
        );

        let osp = Superalgebra::builtin("osp(1|2)").unwrap();
        let h = osp.algebra().index_of("h").unwrap();
        assert_eq!(
            osp.algebra().bracket_labels("qm", "qp").unwrap(),
            Element::basis(h)
        );
        assert_eq!(
            osp.algebra().bracket_labels("f", "e").unwrap(),
            Element::term(h, int(-1))
        );
    }

    #[test]
    fn unknown_builtin() {
        for bad in ["so(3)", "bf_source(x)", "bf_source(", ""] {
            assert!(
                matches!(Superalgebra::builtin(bad), Err(Error::UnknownAlgebra(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            Superalgebra::builtin("bf_source(0)"),
            Err(Error::ModeIndex { .. })
        ));
    }

    #[test]
    fn bf_source_matches_envelope() {
        let env = Envelope::new(1).unwrap();
        let s = Superalgebra::builtin("bf_source(1)").unwrap();
        let alg = s.algebra();
        let labels = ["1", "a1", "adag1", "alpha1", "alphadag1", "F"];
        for l in labels {
            for r in labels {
                let (x, y): (BfGenerator, BfGenerator) = (l.parse().unwrap(), r.parse().unwrap());
                let direct = env.super_bracket(x, y).unwrap();
                let mut rebuilt = crate::envelope::EnvElement::zero();
                for (k, c) in alg.bracket_labels(l, r).unwrap().iter() {
                    let g: BfGenerator = alg.label(k).parse().unwrap();
                    rebuilt.add_scaled(&env.realize(g).unwrap(), c);
                }
                assert_eq!(direct, rebuilt, "[{l},{r}]");
            }
        }
    }

    #[test]
    fn round_trip_and_faults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fh.json");
        let fh = Superalgebra::builtin("fermionic_heisenberg").unwrap();
        fh.save(&path).unwrap();
        let back = Superalgebra::load(&path).unwrap();
        assert_eq!(back.to_json().unwrap(), fh.to_json().unwrap());

        let parity = r#"{"name":"bad","grading_bits":1,"pairing":"dot",
            "basis":[{"label":"Q","grade":"1"},{"label":"T","grade":"1"}],
            "brackets":[{"left":"Q","right":"Q","terms":[{"target":"T","coeff":"1"}]}]}"#;
        assert!(matches!(
            Superalgebra::from_json(parity),
            Err(Error::Closure { .. })
        ));

        let sym = r#"{"name":"bad","grading_bits":1,"pairing":"dot",
            "basis":[{"label":"h","grade":"0"},{"label":"e","grade":"0"}],
            "brackets":[{"left":"h","right":"e","terms":[{"target":"e","coeff":"1"}]}]}"#;
        match Superalgebra::from_json(sym) {
            Err(Error::Audit { check, .. }) => assert_eq!(check, "antisymmetry"),
            other => panic!("{other:?}"),
        }

        // osp(1|2) with one constant off: antisymmetric but not super-Jacobi
        let osp = Superalgebra::builtin("osp(1|2)").unwrap().into_algebra();
        let mut broken = osp.clone();
        let (h, e) = (osp.index_of("h").unwrap(), osp.index_of("e").unwrap());
        broken.set_entry(h, e, Element::term(e, int(3))).unwrap();
        broken.set_entry(e, h, Element::term(e, int(-3))).unwrap();
        match Superalgebra::try_from(broken) {
            Err(Error::Audit { check, .. }) => assert_eq!(check, "jacobi"),
            other => panic!("{other:?}"),
        }

        let two_bits = crate::envelope::export_bf(1).unwrap();
        assert!(matches!(
            Superalgebra::try_from(two_bits),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn restriction() {
        let s = Superalgebra::builtin("bf_source(1)").unwrap();
        let r = restricted_entries(&s, &["1", "F"]).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].2.coeff(0), Scalar::from_integer(2.into()));
    }
}
