//! End-to-end acceptance run. Prints one line per criterion and exits
//! nonzero if any fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use colorsuper_core::algebra::clifford_as_color_algebra;
use colorsuper_core::clifford::check_sign_law;
use colorsuper_core::envelope::{export_bf, verify_bf_relations};
use colorsuper_core::grading::check_maprel;
use colorsuper_core::grassmann::{
    check_zeta_realization, verify_representation, GradedPoly, Monomial, Var,
};
use colorsuper_core::oracle::{check_bf_on_fock, check_kappa_against_matrices};
use colorsuper_core::scalar::int;
use colorsuper_core::tensor::{build_color_super, expected_dim, reverse_build};
use colorsuper_core::{ColorAlgebra, PairingKind, Report, Signature, Superalgebra};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &Report, what: impl Fn() -> String) -> Result<(), String> {
    ensure(r.passed(), || {
        let v = &r.violations[0];
        format!(
            "{}: {} violation(s), first {} vs {} ({})",
            what(),
            r.violations.len(),
            v.lhs,
            v.rhs,
            v.residual
        )
    })
}

fn splits(range: impl IntoIterator<Item = usize>) -> Vec<Signature> {
    range
        .into_iter()
        .flat_map(|n| Signature::splits(n).unwrap())
        .collect()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sign_law() -> Outcome {
    let mut pairs = 0;
    for s in splits(1..=6) {
        let r = check_sign_law(s);
        clean(&r, || format!("Cl({},{})", s.p(), s.q()))?;
        pairs += r.checked_count;
    }
    Ok(format!("{pairs} ordered blade pairs"))
}

fn audit_cliffords(sigs: &[Signature], pairing: PairingKind) -> Outcome {
    let mut triples = 0;
    for &s in sigs {
        let alg = clifford_as_color_algebra(s, pairing).map_err(err)?;
        let audit = alg.audit();
        for (name, r) in audit.reports() {
            clean(r, || format!("Cl({},{}) {name}", s.p(), s.q()))?;
        }
        triples += audit.jacobi.checked_count;
    }
    Ok(format!("{} algebras, {triples} Jacobi triples", sigs.len()))
}

fn maprel() -> Outcome {
    let mut total = 0;
    for n in [2, 4, 6] {
        let r = check_maprel(n).map_err(err)?;
        clean(&r, || format!("N={n}"))?;
        total += r.checked_count;
    }
    Ok(format!("{total} cases"))
}

fn theorem_builds() -> Result<Vec<(Signature, ColorAlgebra)>, String> {
    let mut out = Vec::new();
    for name in Superalgebra::CATALOG {
        let g = Superalgebra::builtin(name).map_err(err)?;
        for s in splits(1..=4) {
            let a = build_color_super(&g, s).map_err(err)?;
            ensure(a.dim() == expected_dim(&g, s), || {
                format!(
                    "{name} Cl({},{}): dim {} != {}",
                    s.p(),
                    s.q(),
                    a.dim(),
                    expected_dim(&g, s)
                )
            })?;
            out.push((s, a));
        }
    }
    Ok(out)
}

fn tensor_construction() -> Outcome {
    let builds = theorem_builds()?;
    for (s, a) in &builds {
        for (name, r) in a.audit().reports() {
            clean(r, || format!("{} Cl({},{}) {name}", a.name(), s.p(), s.q()))?;
        }
    }
    Ok(format!("{} builds", builds.len()))
}

fn reverse_construction() -> Outcome {
    let builds = theorem_builds()?;
    for (s, a) in &builds {
        let back = reverse_build(a, *s).map_err(|e| format!("{}: {e}", a.name()))?;
        clean(&back.algebra().check_jacobi(), || {
            format!("rev {}", a.name())
        })?;
        ensure(back.dim() == a.dim(), || {
            format!("rev {} changed dimension", a.name())
        })?;
    }
    Ok(format!("{} reverse builds", builds.len()))
}

fn bf_relations() -> Outcome {
    let mut pairs = 0;
    for n in 1..=3 {
        let r = verify_bf_relations(n).map_err(err)?;
        clean(&r, || format!("n={n}"))?;
        pairs += r.checked_count;
    }
    Ok(format!("{pairs} ordered generator pairs"))
}

fn bf_export() -> Outcome {
    for n in [1, 2] {
        let bf = export_bf(n).map_err(err)?;
        for (name, r) in bf.audit().reports() {
            clean(r, || format!("bf({n}) {name}"))?;
        }
    }
    let bf = export_bf(1).map_err(err)?;
    let labels: Vec<&str> = bf.basis().iter().map(|b| b.label.as_str()).collect();
    let expected = [
        "1",
        "A11",
        "Adag11",
        "N11",
        "alpha1",
        "alphadag1",
        "beta1",
        "betadag1",
        "a1",
        "adag1",
        "F",
    ];
    ensure(labels == expected, || format!("bf(1) basis {labels:?}"))?;
    let sub: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.starts_with("alpha"))
        .map(|(i, _)| i)
        .collect();
    ensure(sub.len() == 9, || {
        "alpha-free part should have 9 elements".into()
    })?;
    for &i in &sub {
        for &j in &sub {
            let e = bf.entry(i, j);
            ensure(e.support().all(|k| sub.contains(&k)), || {
                format!(
                    "[{}, {}] leaves the alpha-free part",
                    bf.label(i),
                    bf.label(j)
                )
            })?;
        }
    }
    Ok("bf(1), bf(2) audited; alpha-free subalgebra closed".into())
}

fn vector_fields() -> Outcome {
    let r = verify_representation(4).map_err(err)?;
    clean(&r, || "representation".into())?;
    ensure(r.checked_count == 121, || {
        format!("{} pairs", r.checked_count)
    })?;
    let x_t1_t2 = GradedPoly::monomial(Monomial::new(1, false, true, true));
    let minus_x_t1 = GradedPoly::term(Monomial::new(1, false, true, false), int(-1));
    ensure(x_t1_t2.left_derive(Var::Theta2) == minus_x_t1, || {
        "d/dtheta2 (x theta1 theta2)".into()
    })?;
    let t1_psi = GradedPoly::var(Var::Theta1).mul(&GradedPoly::var(Var::Psi));
    ensure(
        t1_psi.left_derive(Var::Psi) == GradedPoly::var(Var::Theta1),
        || "d/dpsi (theta1 psi)".into(),
    )?;
    Ok("121 pairs on 40 monomials, worked derivatives hold".into())
}

fn zeta() -> Outcome {
    let mut pairs = 0;
    for s in splits([2]) {
        let r = check_zeta_realization(s).map_err(err)?;
        clean(&r, || format!("Cl({},{})", s.p(), s.q()))?;
        pairs += r.checked_count;
    }
    Ok(format!("{pairs} ordered pairs over 3 signatures"))
}

fn cross_oracle() -> Outcome {
    let mut pairs = 0;
    for s in splits(1..=6) {
        let r = check_kappa_against_matrices(s).map_err(err)?;
        clean(&r, || format!("kappa Cl({},{})", s.p(), s.q()))?;
        pairs += r.checked_count;
    }
    let mut checks = 0;
    for n in [1, 2] {
        let r = check_bf_on_fock(n, 8, 3).map_err(err)?;
        clean(&r, || format!("Fock n={n}"))?;
        checks += r.checked_count;
    }
    Ok(format!("{pairs} blade pairs, {checks} Fock checks"))
}

/// Jacobi violations must involve one of the corrupted indices.
fn touches(loc: &[usize], i: usize, j: usize) -> bool {
    loc.contains(&i) || loc.contains(&j)
}

fn fault_injection() -> Outcome {
    let mut injected = [0; 3];

    // closure: a term on the wrong grade
    let bf = export_bf(1).map_err(err)?;
    let faults = [
        ("a1", "adag1", "F"),
        ("F", "F", "a1"),
        ("beta1", "F", "N11"),
        ("A11", "Adag11", "alpha1"),
        ("alpha1", "alphadag1", "beta1"),
        ("1", "1", "F"),
    ];
    for (l, r, t) in faults {
        let mut alg = bf.clone();
        let (i, j, k) = (
            alg.index_of(l).unwrap(),
            alg.index_of(r).unwrap(),
            alg.index_of(t).unwrap(),
        );
        let mut e = alg.entry(i, j).clone();
        e.add_term(k, int(1));
        alg.set_entry(i, j, e).map_err(err)?;
        let rep = alg.check_closure();
        ensure(rep.locations() == vec![&[i, j][..]], || {
            format!("closure fault [{l},{r}] -> {t}: {:?}", rep.locations())
        })?;
        injected[0] += 1;
    }

    // antisymmetry: one off-diagonal entry changed
    let cl =
        clifford_as_color_algebra(Signature::new(2, 1).unwrap(), PairingKind::Dot).map_err(err)?;
    let faults = [
        ("g1", "g2"),
        ("g1", "g3"),
        ("g2", "g1g3"),
        ("g1g2", "g1g2g3"),
        ("1", "g1g2"),
        ("g3", "g1g2g3"),
    ];
    for (l, r) in faults {
        let mut alg = cl.clone();
        let (i, j) = (alg.index_of(l).unwrap(), alg.index_of(r).unwrap());
        let target = alg.grade(i) + alg.grade(j);
        let k = (0..alg.dim()).find(|&k| alg.grade(k) == target).unwrap();
        let mut e = alg.entry(i, j).clone();
        e.add_term(k, int(3));
        alg.set_entry(i, j, e).map_err(err)?;
        let rep = alg.check_antisymmetry();
        let expected = [i.min(j), i.max(j)];
        ensure(rep.locations() == vec![&expected[..]], || {
            format!("antisymmetry fault [{l},{r}]: {:?}", rep.locations())
        })?;
        ensure(alg.check_closure().passed(), || {
            "antisymmetry fault broke closure".into()
        })?;
        injected[1] += 1;
    }

    // Jacobi: a consistent rescaling of one bracket pair in osp(1|2)
    let osp = Superalgebra::builtin("osp(1|2)")
        .map_err(err)?
        .into_algebra();
    let faults = [
        ("h", "e"),
        ("h", "f"),
        ("e", "f"),
        ("h", "qp"),
        ("e", "qm"),
        ("qp", "qm"),
        ("qp", "qp"),
    ];
    for (l, r) in faults {
        let mut alg = osp.clone();
        let (i, j) = (alg.index_of(l).unwrap(), alg.index_of(r).unwrap());
        let ij = alg.entry(i, j).scaled(&int(2));
        let ji = alg.entry(j, i).scaled(&int(2));
        alg.set_entry(i, j, ij).map_err(err)?;
        alg.set_entry(j, i, ji).map_err(err)?;
        ensure(alg.check_antisymmetry().passed(), || {
            "Jacobi fault broke antisymmetry".into()
        })?;
        let rep = alg.check_jacobi();
        ensure(!rep.passed(), || {
            format!("Jacobi fault [{l},{r}] undetected")
        })?;
        ensure(rep.locations().iter().all(|loc| touches(loc, i, j)), || {
            format!("Jacobi fault [{l},{r}] reported away from the pair")
        })?;
        injected[2] += 1;
    }
    ensure(injected.iter().all(|&n| n >= 5), || format!("{injected:?}"))?;
    Ok(format!(
        "closure {}, antisymmetry {}, jacobi {} faults localized",
        injected[0], injected[1], injected[2]
    ))
}

fn main() -> ExitCode {
    let criteria: Vec<(u32, &str, Option<u64>, fn() -> Outcome)> = vec![
        (1, "Clifford sign law, p+q <= 6", Some(5), sign_law),
        (
            2,
            "Clifford color superalgebras, p+q <= 5",
            Some(60),
            || audit_cliffords(&splits(1..=5), PairingKind::Dot),
        ),
        (3, "Clifford color algebras, p+q in {2,4}", None, || {
            audit_cliffords(&splits([2, 4]), PairingKind::Symplectic)
        }),
        (4, "pairing identity, N in {2,4,6}", Some(1), maprel),
        (
            5,
            "superalgebra x Clifford, p+q <= 4",
            Some(60),
            tensor_construction,
        ),
        (6, "reverse construction", None, reverse_construction),
        (7, "bf relation table, n <= 3", Some(30), bf_relations),
        (8, "bf export", None, bf_export),
        (
            9,
            "vector field representation of bf(1)",
            Some(10),
            vector_fields,
        ),
        (10, "extended Grassmann realization", None, zeta),
        (11, "matrix oracles", None, cross_oracle),
        (12, "auditor fault injection", None, fault_injection),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(secs)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(secs) {
                outcome = Err(format!("took {elapsed:.2?}, budget {secs}s"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} [{elapsed:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{elapsed:.2?}] {why}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
