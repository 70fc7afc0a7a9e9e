//! Brute-force ground truth with explicit matrices over `Q(i)`.
//!
//! Gamma matrices for Cl(p,q) come from the Jordan-Wigner pattern
//! `Z⊗…⊗Z⊗X⊗I⊗…` / `Z⊗…⊗Z⊗Y⊗I⊗…`, with a factor `i` on generators that
//! square to `-1`. Fock matrices use the weighted shift `a|k⟩ = k|k-1⟩`,
//! `a†|k⟩ = |k+1⟩`, which keeps every entry rational.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::clifford::{blade_mul, gamma_of_grade, Blade, Sign, Signature};
use crate::envelope::{claimed_bracket, BfGenerator, MAX_MODES};
use crate::error::{Error, Result};
use crate::grading::{dot, GradeVec};
use crate::report::{Report, Violation};
use crate::scalar::{self, Scalar};

pub type GaussianRational = Complex<Scalar>;

pub const MAX_GAMMA_GENERATORS: usize = 8;

fn gr(re: Scalar) -> GaussianRational {
    Complex::new(re, Scalar::zero())
}

fn gi() -> GaussianRational {
    Complex::new(Scalar::zero(), Scalar::one())
}

/// Exact square matrix, stored as sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, GaussianRational>>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, gr(Scalar::one()));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianRational {
        self.rows[i].get(&j).cloned().unwrap_or_else(Complex::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    fn add_at(&mut self, i: usize, j: usize, v: GaussianRational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn scaled(&self, c: &GaussianRational) -> Matrix {
        let mut out = Matrix::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                out.set(i, j, v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (&j, v) in row {
                out.add_at(i, j, v.clone());
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scaled(&gr(-Scalar::one())))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.rows[k] {
                    out.add_at(i, j, a * b);
                }
            }
        }
        out
    }

    /// `self · e_col`, as a sparse column.
    pub fn column(&self, col: usize) -> BTreeMap<usize, GaussianRational> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| row.get(&col).map(|v| (i, v.clone())))
            .collect()
    }

    /// `self · v` for a sparse vector.
    pub fn apply(
        &self,
        v: &BTreeMap<usize, GaussianRational>,
    ) -> BTreeMap<usize, GaussianRational> {
        let mut out = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = GaussianRational::zero();
            for (j, x) in v {
                if let Some(a) = row.get(j) {
                    acc += a * x;
                }
            }
            if !acc.is_zero() {
                out.insert(i, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                out.rows[j].insert(i, v.clone());
            }
        }
        out
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let d = other.dim;
        let mut out = Matrix::zero(self.dim * d);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, a) in row {
                for (k, orow) in other.rows.iter().enumerate() {
                    for (&l, b) in orow {
                        out.set(i * d + k, j * d + l, a * b);
                    }
                }
            }
        }
        out
    }

    /// Entries as `[re, im]` pairs of `num/den` strings, row by row.
    pub fn to_string_rows(&self) -> Vec<Vec<[String; 2]>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let v = self.get(i, j);
                        [scalar::format(&v.re), scalar::format(&v.im)]
                    })
                    .collect()
            })
            .collect()
    }
}

fn format_gaussian(v: &GaussianRational) -> String {
    match (v.re.is_zero(), v.im.is_zero()) {
        (_, true) => scalar::display(&v.re),
        (true, false) => format!("{}i", scalar::display(&v.im)),
        _ => format!("{}+{}i", scalar::display(&v.re), scalar::display(&v.im)),
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format_gaussian(&self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn pauli(which: char) -> Matrix {
    let mut m = Matrix::zero(2);
    let one = gr(Scalar::one());
    match which {
        'I' => return Matrix::identity(2),
        'X' => {
            m.set(0, 1, one.clone());
            m.set(1, 0, one);
        }
        'Y' => {
            m.set(0, 1, -gi());
            m.set(1, 0, gi());
        }
        'Z' => {
            m.set(0, 0, one.clone());
            m.set(1, 1, -one);
        }
        _ => unreachable!(),
    }
    m
}

/// `γ_1 … γ_{p+q}` of size `2^⌈N/2⌉`.
pub fn gamma_matrices(sig: Signature) -> Result<Vec<Matrix>> {
    let n = sig.dim();
    if n > MAX_GAMMA_GENERATORS {
        return Err(Error::Signature {
            p: sig.p(),
            q: sig.q(),
            max: MAX_GAMMA_GENERATORS,
        });
    }
    let qubits = n.div_ceil(2);
    let mut out = Vec::with_capacity(n);
    for g in 0..n {
        let site = g / 2;
        let mut m = Matrix::identity(1);
        for s in 0..qubits {
            let factor = match s.cmp(&site) {
                std::cmp::Ordering::Less => 'Z',
                std::cmp::Ordering::Equal if g % 2 == 0 => 'X',
                std::cmp::Ordering::Equal => 'Y',
                std::cmp::Ordering::Greater => 'I',
            };
            m = m.kron(&pauli(factor));
        }
        if g >= sig.p() {
            m = m.scaled(&gi());
        }
        out.push(m);
    }
    Ok(out)
}

/// `γ_i γ_j + γ_j γ_i = 2 η_ij` for every ordered pair.
pub fn check_gamma_relations(sig: Signature) -> Result<Report> {
    let gammas = gamma_matrices(sig)?;
    let n = gammas.len();
    let dim = gammas.first().map_or(1, Matrix::dim);
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = gammas[i].mul(&gammas[j]).add(&gammas[j].mul(&gammas[i]));
            let eta = match (i == j, i < sig.p()) {
                (false, _) => Scalar::zero(),
                (true, true) => scalar::int(2),
                (true, false) => scalar::int(-2),
            };
            let rhs = Matrix::identity(dim).scaled(&gr(eta.clone()));
            if lhs != rhs {
                violations.push(Violation {
                    lhs: format!("{{g{}, g{}}}", i + 1, j + 1),
                    rhs: format!("{}*1", scalar::display(&eta)),
                    residual: format!("{} nonzero entries", lhs.sub(&rhs).nonzero_count()),
                    location: vec![i, j],
                });
            }
        }
    }
    Ok(Report::new(n * n, violations))
}

/// Matrix of `γ_α`, the ascending product of its generators.
pub fn blade_matrix(gammas: &[Matrix], a: GradeVec) -> Matrix {
    let dim = gammas.first().map_or(1, Matrix::dim);
    let mut m = Matrix::identity(dim);
    for (i, g) in gammas.iter().enumerate() {
        if a.bits() >> i & 1 == 1 {
            m = m.mul(g);
        }
    }
    m
}

/// `γ_a γ_b = κ(a,b) γ_{a+b}` as matrices, for one pair.
pub fn kappa_matches(sig: Signature, gammas: &[Matrix], a: GradeVec, b: GradeVec) -> bool {
    let lhs = blade_matrix(gammas, a).mul(&blade_matrix(gammas, b));
    let Blade { mask, sign } = blade_mul(gamma_of_grade(a), gamma_of_grade(b), sig);
    let target = blade_matrix(gammas, GradeVec::from_bits(mask, sig.dim()).unwrap());
    let expected = match sign {
        Sign::Plus => target,
        Sign::Minus => target.scaled(&gr(-Scalar::one())),
    };
    lhs == expected
}

/// The blade sign of every ordered pair of blades against matrix products.
pub fn check_kappa_against_matrices(sig: Signature) -> Result<Report> {
    let gammas = gamma_matrices(sig)?;
    let grades: Vec<GradeVec> = GradeVec::all(sig.dim())?.collect();
    let blades: Vec<Matrix> = grades.iter().map(|&a| blade_matrix(&gammas, a)).collect();
    let index = |g: GradeVec| grades.iter().position(|&h| h == g).unwrap();
    let violations: Vec<Violation> = (0..grades.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (grades, blades) = (&grades, &blades);
            (0..grades.len()).filter_map(move |j| {
                let (a, b) = (grades[i], grades[j]);
                let lhs = blades[i].mul(&blades[j]);
                let blade = blade_mul(gamma_of_grade(a), gamma_of_grade(b), sig);
                let target = &blades[index(a + b)];
                let expected = match blade.sign {
                    Sign::Plus => target.clone(),
                    Sign::Minus => target.scaled(&gr(-Scalar::one())),
                };
                (lhs != expected).then(|| Violation {
                    lhs: format!("{} {}", gamma_of_grade(a), gamma_of_grade(b)),
                    rhs: blade.to_string(),
                    residual: format!("{} nonzero entries", lhs.sub(&expected).nonzero_count()),
                    location: vec![i, j],
                })
            })
        })
        .collect();
    Ok(Report::new(grades.len() * grades.len(), violations))
}

/// Basis states of the truncated Fock space: per mode a boson occupation
/// below the cutoff and a fermion occupation bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    modes: usize,
    cutoff: usize,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 || modes > MAX_MODES {
            return Err(Error::ModeIndex {
                index: modes,
                modes: MAX_MODES,
            });
        }
        if cutoff < 4 {
            return Err(Error::Unsupported(format!(
                "Fock cutoff must be at least 4, got {cutoff}"
            )));
        }
        Ok(Self { modes, cutoff })
    }

    pub fn modes(self) -> usize {
        self.modes
    }

    pub fn cutoff(self) -> usize {
        self.cutoff
    }

    pub fn dim(self) -> usize {
        (2 * self.cutoff).pow(self.modes as u32)
    }

    /// `(boson occupations, fermion bits)` of a basis index; mode 1 is the
    /// most significant digit.
    pub fn state(self, mut idx: usize) -> (Vec<usize>, Vec<bool>) {
        let mut bos = vec![0; self.modes];
        let mut fer = vec![false; self.modes];
        for m in (0..self.modes).rev() {
            fer[m] = idx % 2 == 1;
            idx /= 2;
            bos[m] = idx % self.cutoff;
            idx /= self.cutoff;
        }
        (bos, fer)
    }

    /// Inverse of [`FockSpace::state`]; `None` if an occupation is out of range.
    pub fn index(self, bos: &[usize], fer: &[bool]) -> Option<usize> {
        let mut idx = 0;
        for m in 0..self.modes {
            if bos[m] >= self.cutoff {
                return None;
            }
            idx = (idx * self.cutoff + bos[m]) * 2 + usize::from(fer[m]);
        }
        Some(idx)
    }

    fn operator(self, f: impl Fn(&mut Vec<usize>, &mut Vec<bool>) -> Option<Scalar>) -> Matrix {
        let mut m = Matrix::zero(self.dim());
        for col in 0..self.dim() {
            let (mut bos, mut fer) = self.state(col);
            if let Some(c) = f(&mut bos, &mut fer) {
                if let Some(row) = self.index(&bos, &fer) {
                    m.set(row, col, gr(c));
                }
            }
        }
        m
    }

    fn jw_sign(fer: &[bool], i: usize) -> Scalar {
        scalar::sign(fer[..i].iter().filter(|&&b| b).count() % 2 == 1)
    }

    /// `a_i`, `a_i†`, `α_i`, `α_i†` or `F` at this cutoff.
    pub fn letter(self, g: BfGenerator) -> Result<Matrix> {
        use BfGenerator::*;
        for i in g.indices() {
            if i == 0 || i > self.modes {
                return Err(Error::ModeIndex {
                    index: i,
                    modes: self.modes,
                });
            }
        }
        Ok(match g {
            Boson(i) => self.operator(|b, _| {
                let k = b[i - 1];
                (k > 0).then(|| {
                    b[i - 1] -= 1;
                    scalar::int(k as i64)
                })
            }),
            BosonDag(i) => self.operator(|b, _| {
                b[i - 1] += 1;
                Some(Scalar::one())
            }),
            Alpha(i) => self.operator(|_, f| {
                f[i - 1].then(|| {
                    f[i - 1] = false;
                    Self::jw_sign(f, i - 1)
                })
            }),
            AlphaDag(i) => self.operator(|_, f| {
                (!f[i - 1]).then(|| {
                    f[i - 1] = true;
                    Self::jw_sign(f, i - 1)
                })
            }),
            F => self.operator(|_, f| Some(Self::jw_sign(f, f.len()))),
            One => Matrix::identity(self.dim()),
            other => {
                return Err(Error::Unsupported(format!(
                    "{other} is not a single letter"
                )))
            }
        })
    }

    /// Restriction to the states of a smaller cutoff.
    fn project(self, m: &Matrix, target: FockSpace) -> Matrix {
        let map: Vec<Option<usize>> = (0..self.dim())
            .map(|idx| {
                let (b, f) = self.state(idx);
                target.index(&b, &f)
            })
            .collect();
        let mut out = Matrix::zero(target.dim());
        for (i, row) in m.rows.iter().enumerate() {
            let Some(ti) = map[i] else { continue };
            for (&j, v) in row {
                if let Some(tj) = map[j] {
                    out.set(ti, tj, v.clone());
                }
            }
        }
        out
    }

    /// Matrices of every `bf(n)` basis element. Composites are multiplied
    /// out at cutoff `D+2` and then restricted, so their entries are exact on
    /// all states of cutoff `D`.
    pub fn bf_matrices(self) -> Result<BTreeMap<BfGenerator, Matrix>> {
        use BfGenerator::*;
        let big = FockSpace::new(self.modes, self.cutoff + 2)?;
        let half = gr(scalar::frac(1, 2));
        let sym = |x: &Matrix, y: &Matrix| x.mul(y).add(&y.mul(x)).scaled(&half);
        let mut out = BTreeMap::new();
        for g in BfGenerator::basis(self.modes) {
            let l = |h| big.letter(h);
            let m = match g {
                A(i, j) => sym(&l(Boson(i))?, &l(Boson(j))?),
                Adag(i, j) => sym(&l(BosonDag(i))?, &l(BosonDag(j))?),
                N(i, j) => sym(&l(BosonDag(i))?, &l(Boson(j))?),
                Beta(i) => sym(&l(Boson(i))?, &l(F)?),
                BetaDag(i) => sym(&l(BosonDag(i))?, &l(F)?),
                g => l(g)?,
            };
            out.insert(g, big.project(&m, self));
        }
        Ok(out)
    }

    /// Basis indices whose boson occupations are all at most `max_occupation`.
    pub fn interior(self, max_occupation: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.state(i).0.iter().all(|&k| k <= max_occupation))
            .collect()
    }
}

/// Matrices of the `bf(n)` basis on Fock space with cutoff `D`.
pub fn fock_matrices(modes: usize, cutoff: usize) -> Result<BTreeMap<BfGenerator, Matrix>> {
    FockSpace::new(modes, cutoff)?.bf_matrices()
}

/// Every claimed `bf(n)` relation as a matrix identity, applied to basis
/// states with all boson occupations at most `cutoff - margin`.
pub fn check_bf_on_fock(modes: usize, cutoff: usize, margin: usize) -> Result<Report> {
    let space = FockSpace::new(modes, cutoff)?;
    let mats = space.bf_matrices()?;
    let gens = BfGenerator::basis(modes);
    let cols: Vec<Matrix> = gens.iter().map(|g| mats[g].transpose()).collect();
    let states = space.interior(cutoff.saturating_sub(margin));
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|i| (0..gens.len()).map(move |j| (i, j)))
        .collect();
    let violations: Vec<Violation> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (x, y) = (gens[i], gens[j]);
            let (mx, my) = (&cols[i], &cols[j]);
            let anticommute = dot(x.grade(), y.grade()).unwrap() % 2 == 1;
            let s = gr(scalar::sign(!anticommute));
            let claimed = claimed_bracket(x, y);
            let mut rhs = Matrix::zero(space.dim());
            for (g, c) in &claimed {
                rhs = rhs.add(&mats[g].scaled(&gr(c.clone())));
            }
            let rhs = rhs.transpose();
            let mut out = Vec::new();
            for &st in &states {
                let e: BTreeMap<usize, GaussianRational> = [(st, gr(Scalar::one()))].into();
                let mut lhs = apply_columns(mx, &apply_columns(my, &e));
                for (k, v) in apply_columns(my, &apply_columns(mx, &e)) {
                    let cur = lhs.remove(&k).unwrap_or_else(Complex::zero) + v * &s;
                    if !cur.is_zero() {
                        lhs.insert(k, cur);
                    }
                }
                let expected = rhs.rows[st].clone();
                if lhs != expected {
                    let (b, f) = space.state(st);
                    out.push(Violation {
                        lhs: format!("[{x},{y}] on |{b:?},{f:?}>"),
                        rhs: crate::envelope::render_combination(&claimed),
                        residual: format!("{} differing components", differing(&lhs, &expected)),
                        location: vec![i, j, st],
                    });
                }
            }
            out
        })
        .collect();
    Ok(Report::new(pairs.len() * states.len(), violations))
}

/// `M v` given the transpose of `M`.
fn apply_columns(
    cols: &Matrix,
    v: &BTreeMap<usize, GaussianRational>,
) -> BTreeMap<usize, GaussianRational> {
    let mut out: BTreeMap<usize, GaussianRational> = BTreeMap::new();
    for (&j, x) in v {
        for (&i, a) in &cols.rows[j] {
            let slot = out.entry(i).or_insert_with(Complex::zero);
            *slot += a * x;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn differing(
    a: &BTreeMap<usize, GaussianRational>,
    b: &BTreeMap<usize, GaussianRational>,
) -> usize {
    let keys: std::collections::BTreeSet<&usize> = a.keys().chain(b.keys()).collect();
    keys.into_iter().filter(|k| a.get(k) != b.get(k)).count()
}
