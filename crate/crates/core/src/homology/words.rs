//! Complexes whose degree-n basis is a set of words in some letters:
//! Hochschild (plain, with bimodule coefficients, cyclic nerve), bar, and the
//! cyclic bicomplex.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use equihom_linalg::{universal_coefficients_zmod, Accumulator, ChainComplexZ, FGAbelianGroup, ZMatrix, ZVec, Z};
use num_traits::One;

use super::{check_cap, matrix, HomologyError, BAR_MAX_DEGREE, HC_MAX_DEGREE, WORD_CAP};
use crate::groups::{Elem, GroupRef};
use crate::lincat::LinCat;
use crate::polyfun::PolyLattice;
use crate::rings::{twisted_bimodule, unitalize, BasedRing, Bimodule};

/// Basis elements with a product, the letters of tensor words.
pub trait Letters {
    fn count(&self) -> usize;
    /// `a·b` (for categories `a∘b`).
    fn product(&self, a: usize, b: usize) -> &ZVec;
    /// Whether `a` may stand directly left of `b` in a word.
    fn follows(&self, _a: usize, _b: usize) -> bool {
        true
    }
    fn level(&self, _a: usize) -> u32 {
        0
    }
    /// Bound on the total level of a word, for filtered algebras.
    fn bound(&self) -> Option<u32> {
        None
    }
}

impl Letters for BasedRing {
    fn count(&self) -> usize {
        self.rank()
    }

    fn product(&self, a: usize, b: usize) -> &ZVec {
        self.basis_mul(a, b)
    }
}

impl Letters for LinCat {
    fn count(&self) -> usize {
        self.arrow_count()
    }

    fn product(&self, a: usize, b: usize) -> &ZVec {
        self.basis_compose(a, b)
    }

    fn follows(&self, a: usize, b: usize) -> bool {
        self.composable(a, b)
    }
}

/// The filtered piece of total degree `≤ D` of an algebra with a
/// degree-adapted basis, such as polynomial functions of degree `≤ D`.
#[derive(Clone, Debug)]
pub struct FilteredAlgebra {
    levels: Vec<u32>,
    bound: u32,
    table: Vec<Vec<ZVec>>,
}

impl FilteredAlgebra {
    /// `table[a][b] = a·b`, required only when `levels[a] + levels[b] ≤ bound`.
    pub fn new(levels: Vec<u32>, bound: u32, table: Vec<Vec<ZVec>>) -> Result<Self, HomologyError> {
        let n = levels.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(HomologyError::Inconsistent("product table does not match the basis".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let lab = levels[a] + levels[b];
                if lab <= bound && table[a][b].iter().any(|(k, _)| k >= n || levels[k] > lab) {
                    return Err(HomologyError::Inconsistent(format!("product {a}·{b} raises the filtration")));
                }
            }
        }
        Ok(FilteredAlgebra { levels, bound, table })
    }

    pub fn from_lattice(lattice: &PolyLattice) -> Result<Self, HomologyError> {
        let basis = lattice.basis();
        let levels = lattice.levels().to_vec();
        let bound = lattice.degree();
        let mut table = vec![vec![ZVec::zero(); basis.len()]; basis.len()];
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                if levels[a] + levels[b] > bound {
                    continue;
                }
                let p = basis[a].mul(&basis[b])?;
                table[a][b] = lattice
                    .coordinates(&p)
                    .ok_or_else(|| HomologyError::Inconsistent(format!("product {a}·{b} leaves the lattice")))?;
            }
        }
        Self::new(levels, bound, table)
    }

    pub fn rank(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }
}

impl Letters for FilteredAlgebra {
    fn count(&self) -> usize {
        self.levels.len()
    }

    fn product(&self, a: usize, b: usize) -> &ZVec {
        &self.table[a][b]
    }

    fn level(&self, a: usize) -> u32 {
        self.levels[a]
    }

    fn bound(&self) -> Option<u32> {
        Some(self.bound)
    }
}

/// The words spanning one degree, with their positions.
#[derive(Clone, Debug, Default)]
pub struct WordBasis {
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WordBasis {
    pub(crate) fn new(words: Vec<Vec<usize>>) -> Self {
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        WordBasis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn position(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

struct Enumeration<'a> {
    letters: &'a dyn Letters,
    len: usize,
    cyclic: bool,
    out: Vec<Vec<usize>>,
}

impl Enumeration<'_> {
    fn extend(&mut self, prefix: &mut Vec<usize>, weight: u32) -> Result<(), HomologyError> {
        if prefix.len() == self.len {
            if self.cyclic && !self.letters.follows(prefix[self.len - 1], prefix[0]) {
                return Ok(());
            }
            self.out.push(prefix.clone());
            return check_cap(format!("degree {} of a tensor complex", self.len - 1), self.out.len(), WORD_CAP);
        }
        for b in 0..self.letters.count() {
            if prefix.last().is_some_and(|&a| !self.letters.follows(a, b)) {
                continue;
            }
            let w = weight + self.letters.level(b);
            if self.letters.bound().is_some_and(|d| w > d) {
                continue;
            }
            prefix.push(b);
            self.extend(prefix, w)?;
            prefix.pop();
        }
        Ok(())
    }
}

fn enumerate(letters: &dyn Letters, len: usize, cyclic: bool) -> Result<WordBasis, HomologyError> {
    let mut e = Enumeration { letters, len, cyclic, out: Vec::new() };
    e.extend(&mut Vec::with_capacity(len), 0)?;
    Ok(WordBasis::new(e.out))
}

type Terms = Vec<(Vec<usize>, Z)>;

/// `d_i` of a word `w_0 ⊗ … ⊗ w_n`: merge positions `i, i+1`, or for `i = n`
/// bring the last letter around to the front.
fn letter_face(letters: &dyn Letters, w: &[usize], i: usize, out: &mut Terms) {
    let n = w.len() - 1;
    let (a, b) = if i < n { (w[i], w[i + 1]) } else { (w[n], w[0]) };
    for (k, c) in letters.product(a, b).iter() {
        let mut v = Vec::with_capacity(n);
        if i < n {
            v.extend_from_slice(&w[..i]);
            v.push(k);
            v.extend_from_slice(&w[i + 2..]);
        } else {
            v.push(k);
            v.extend_from_slice(&w[1..n]);
        }
        out.push((v, c.clone()));
    }
}

/// `d_i` on `m ⊗ a_1 ⊗ … ⊗ a_n` with `m` a bimodule basis element.
fn bimodule_face(m: &dyn Bimodule, w: &[usize], i: usize, out: &mut Terms) {
    let n = w.len() - 1;
    let (head, rest): (ZVec, Vec<usize>) = if i == 0 {
        (m.right(w[0], w[1]), w[2..].to_vec())
    } else if i == n {
        (m.left(w[n], w[0]), w[1..n].to_vec())
    } else {
        for (k, c) in m.ring().basis_mul(w[i], w[i + 1]).iter() {
            let mut v = w[..i].to_vec();
            v.push(k);
            v.extend_from_slice(&w[i + 2..]);
            out.push((v, c.clone()));
        }
        return;
    };
    for (k, c) in head.iter() {
        let mut v = Vec::with_capacity(n);
        v.push(k);
        v.extend_from_slice(&rest);
        out.push((v, c.clone()));
    }
}

/// `Σ_{i<faces} (-1)^i d_i` as a matrix, where `faces(len)` is the number of faces used.
fn alternating(
    source: &WordBasis,
    target: &WordBasis,
    faces: impl Fn(usize) -> usize,
    face: impl Fn(&[usize], usize, &mut Terms),
) -> Result<ZMatrix, HomologyError> {
    let mut buf = Vec::new();
    let mut cols = Vec::with_capacity(source.len());
    for w in source.words() {
        let mut acc = Accumulator::new();
        for i in 0..faces(w.len()) {
            buf.clear();
            face(w, i, &mut buf);
            for (v, c) in buf.drain(..) {
                let idx = target
                    .position(&v)
                    .ok_or_else(|| HomologyError::Inconsistent(format!("face {i} of {w:?} leaves the word basis")))?;
                acc.add(idx, if i % 2 == 0 { c } else { -c });
            }
        }
        cols.push(acc.finish());
    }
    matrix(target.len(), cols)
}

/// A Hochschild-type complex `C_0 ← C_1 ← … ← C_top` on words, with `b`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    complex: ChainComplexZ,
    bases: Vec<WordBasis>,
    grading: Option<(GroupRef, Vec<Elem>)>,
    cyclic: bool,
}

/// Coefficients of the Hochschild complex of a ring.
#[derive(Clone, Copy)]
pub enum Coefficients<'a> {
    Ring,
    Bimodule(&'a dyn Bimodule),
    /// `R_g`, with right action `x·r = x·g(r)`.
    Twisted(Elem),
}

impl fmt::Debug for Coefficients<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Ring => write!(f, "Ring"),
            Coefficients::Bimodule(m) => write!(f, "Bimodule(rank {})", m.rank()),
            Coefficients::Twisted(g) => write!(f, "Twisted({g})"),
        }
    }
}

impl HochschildComplex {
    pub fn complex(&self) -> &ChainComplexZ {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &WordBasis {
        &self.bases[n]
    }

    /// `H_0 … H_{top-1}`, the degrees the truncation leaves exact.
    pub fn homology(&self) -> Vec<FGAbelianGroup> {
        let top = self.top() as i64;
        self.complex.homology_upto(top - 1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Group element `g_0⋯g_n` of a word, for graded letters.
    pub fn word_grade(&self, w: &[usize]) -> Option<Elem> {
        let (group, grades) = self.grading.as_ref()?;
        Some(group.product(w.iter().map(|&l| grades[l])))
    }

    /// `t(x_0 ⊗ … ⊗ x_n) = (-1)^n x_n ⊗ x_0 ⊗ … ⊗ x_{n-1}` on basis word `j` of degree `n`.
    pub fn rotate(&self, n: usize, j: usize) -> Option<(usize, bool)> {
        let w = self.bases[n].word(j);
        let mut v = Vec::with_capacity(w.len());
        v.push(w[n]);
        v.extend_from_slice(&w[..n]);
        self.bases[n].position(&v).map(|k| (k, n % 2 == 1))
    }

    /// The splitting `C = ⊕_{(g)} C_{(g)}` over conjugacy classes of `g_0⋯g_n`,
    /// checked closed under `b` and `t`.
    pub fn conjugacy_split(&self) -> Result<Vec<ConjugacySummand>, HomologyError> {
        let (group, _) = self.grading.as_ref().ok_or(HomologyError::NotGraded)?;
        if !self.cyclic {
            return Err(HomologyError::NotGraded);
        }
        let classes = group.conjugacy_classes();
        let class_of = group.class_index();
        let top = self.top();
        // class and local position of each word, per degree
        let mut local: Vec<Vec<(usize, usize)>> = Vec::with_capacity(top + 1);
        let mut ranks = vec![vec![0usize; top + 1]; classes.len()];
        for n in 0..=top {
            let row = self.bases[n]
                .words()
                .iter()
                .map(|w| {
                    let c = class_of[self.word_grade(w).expect("graded")];
                    let k = ranks[c][n];
                    ranks[c][n] += 1;
                    (c, k)
                })
                .collect();
            local.push(row);
        }
        for n in 0..=top {
            for j in 0..self.bases[n].len() {
                let Some((k, _)) = self.rotate(n, j) else {
                    return Err(HomologyError::Inconsistent(format!("rotation leaves degree {n}")));
                };
                if local[n][k].0 != local[n][j].0 {
                    return Err(HomologyError::Inconsistent(format!("t moves word {j} of degree {n} across classes")));
                }
            }
        }
        let mut cols: Vec<Vec<Vec<ZVec>>> = vec![vec![Vec::new(); top + 1]; classes.len()];
        for n in 1..=top {
            let d = self.complex.boundary(n as i64).expect("in range");
            for (j, col) in d.columns().iter().enumerate() {
                let (c, _) = local[n][j];
                let mut entries = Vec::with_capacity(col.nnz());
                for (i, x) in col.iter() {
                    let (ci, li) = local[n - 1][i];
                    if ci != c {
                        return Err(HomologyError::Inconsistent(format!("b moves word {j} of degree {n} across classes")));
                    }
                    entries.push((li, x.clone()));
                }
                cols[c][n].push(ZVec::from_entries(entries));
            }
        }
        classes
            .into_iter()
            .zip(ranks)
            .zip(cols)
            .map(|((class, ranks), cols)| {
                let boundaries = (1..=top)
                    .map(|n| matrix(ranks[n - 1], cols[n].clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                let complex = ChainComplexZ::new(0, ranks.clone(), boundaries)?;
                Ok(ConjugacySummand { class, ranks, complex })
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacySummand {
    pub class: Vec<Elem>,
    pub ranks: Vec<usize>,
    pub complex: ChainComplexZ,
}

fn cyclic_words(
    letters: &dyn Letters,
    top: usize,
    drop_letter: Option<usize>,
    grading: Option<(GroupRef, Vec<Elem>)>,
) -> Result<HochschildComplex, HomologyError> {
    let mut bases = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut b = enumerate(letters, n + 1, true)?;
        if let Some(u) = drop_letter {
            b = WordBasis::new(b.words.into_iter().filter(|w| w.iter().any(|&l| l != u)).collect());
        }
        bases.push(b);
    }
    let boundaries = (1..=top)
        .map(|n| alternating(&bases[n], &bases[n - 1], |len| len, |w, i, out| letter_face(letters, w, i, out)))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = ChainComplexZ::new_checked(0, bases.iter().map(WordBasis::len).collect(), boundaries)?;
    Ok(HochschildComplex { complex, bases, grading, cyclic: true })
}

/// The Hochschild complex of `r` in degrees `0..=top`. A nonunital ring goes
/// through `ker(C(Ã) → C(ℤ))`.
pub fn hochschild_complex(r: &BasedRing, coeff: Coefficients<'_>, top: usize) -> Result<HochschildComplex, HomologyError> {
    match coeff {
        Coefficients::Ring => {
            let grading = r.grading().map(|(g, v)| (g.clone(), v.to_vec()));
            if r.is_unital() {
                cyclic_words(r, top, None, grading)
            } else {
                let u = unitalize(r);
                let grading = u.grading().map(|(g, v)| (g.clone(), v.to_vec()));
                cyclic_words(&u, top, Some(r.rank()), grading)
            }
        }
        Coefficients::Twisted(g) => {
            let m = twisted_bimodule(Arc::new(r.clone()), g)?;
            bimodule_complex(&m, top)
        }
        Coefficients::Bimodule(m) => bimodule_complex(m, top),
    }
}

/// `H_0 … H_n` of the Hochschild complex, built through degree `n+1`.
pub fn hochschild_homology(r: &BasedRing, coeff: Coefficients<'_>, n: usize) -> Result<Vec<FGAbelianGroup>, HomologyError> {
    Ok(hochschild_complex(r, coeff, n + 1)?.homology())
}

fn bimodule_complex(m: &dyn Bimodule, top: usize) -> Result<HochschildComplex, HomologyError> {
    let r = m.ring().rank();
    let mut bases = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let size = r.checked_pow(n as u32).and_then(|p| p.checked_mul(m.rank())).unwrap_or(usize::MAX);
        check_cap(format!("degree {n} of a Hochschild complex"), size, WORD_CAP)?;
        let mut words = Vec::with_capacity(size);
        for idx in 0..size {
            let mut w = vec![0; n + 1];
            let mut rest = idx;
            for p in (1..=n).rev() {
                w[p] = rest % r;
                rest /= r;
            }
            w[0] = rest;
            words.push(w);
        }
        bases.push(WordBasis::new(words));
    }
    let boundaries = (1..=top)
        .map(|n| alternating(&bases[n], &bases[n - 1], |len| len, |w, i, out| bimodule_face(m, w, i, out)))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = ChainComplexZ::new_checked(0, bases.iter().map(WordBasis::len).collect(), boundaries)?;
    Ok(HochschildComplex { complex, bases, grading: None, cyclic: false })
}

/// The ℤ-linear cyclic nerve: `C_n = ⊕ hom(c_1,c_0) ⊗ hom(c_2,c_1) ⊗ … ⊗ hom(c_0,c_n)`.
pub fn cyclic_nerve_complex(c: &LinCat, top: usize) -> Result<HochschildComplex, HomologyError> {
    let grading = c.grading().map(|(g, v)| (g.clone(), v.to_vec()));
    cyclic_words(c, top, None, grading)
}

/// `C^bar` with `b' = Σ_{i<n} (-1)^i d_i`, in degrees `0..=top`.
pub fn bar_complex(letters: &dyn Letters, top: usize) -> Result<(ChainComplexZ, Vec<WordBasis>), HomologyError> {
    let bases = (0..=top).map(|n| enumerate(letters, n + 1, false)).collect::<Result<Vec<_>, _>>()?;
    let boundaries = (1..=top)
        .map(|n| alternating(&bases[n], &bases[n - 1], |len| len - 1, |w, i, out| letter_face(letters, w, i, out)))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = ChainComplexZ::new_checked(0, bases.iter().map(WordBasis::len).collect(), boundaries)?;
    Ok((complex, bases))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientGroup {
    Integers,
    Cyclic(Z),
    Sum(Vec<CoefficientGroup>),
}

impl CoefficientGroup {
    pub fn validate(&self) -> Result<(), HomologyError> {
        match self {
            CoefficientGroup::Integers => Ok(()),
            CoefficientGroup::Cyclic(m) if *m >= Z::from(2) => Ok(()),
            CoefficientGroup::Cyclic(m) => Err(HomologyError::Inconsistent(format!("ℤ/{m} needs m ≥ 2"))),
            CoefficientGroup::Sum(parts) => parts.iter().try_for_each(CoefficientGroup::validate),
        }
    }

    /// `H_*(C ⊗ M)` from the integral homology of a free complex.
    pub fn apply(&self, integral: &[FGAbelianGroup]) -> Vec<FGAbelianGroup> {
        match self {
            CoefficientGroup::Integers => integral.to_vec(),
            CoefficientGroup::Cyclic(m) => universal_coefficients_zmod(integral, m),
            CoefficientGroup::Sum(parts) => parts.iter().fold(vec![FGAbelianGroup::zero(); integral.len()], |acc, p| {
                acc.iter().zip(p.apply(integral)).map(|(a, b)| a.direct_sum(&b)).collect()
            }),
        }
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Integers => write!(f, "Z"),
            CoefficientGroup::Cyclic(m) => write!(f, "Z/{m}"),
            CoefficientGroup::Sum(parts) if parts.is_empty() => write!(f, "0"),
            CoefficientGroup::Sum(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// `H_0 … H_N` of `M ⊗ C^bar(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarProbe {
    pub n: usize,
    pub coefficients: CoefficientGroup,
    pub homology: Vec<FGAbelianGroup>,
}

impl BarProbe {
    /// Excision-consistent up to `n`.
    pub fn vanishes(&self) -> bool {
        self.homology.iter().all(FGAbelianGroup::is_zero)
    }
}

pub fn bar_tor_probe(a: &dyn Letters, m: &CoefficientGroup, n: usize) -> Result<BarProbe, HomologyError> {
    if n > BAR_MAX_DEGREE {
        return Err(HomologyError::DegreeTooLarge { degree: n, bound: BAR_MAX_DEGREE });
    }
    m.validate()?;
    if a.bound().is_none() {
        let size = a.count().checked_pow(n as u32 + 2).unwrap_or(usize::MAX);
        check_cap("bar complex", size, WORD_CAP)?;
    }
    let (c, _) = bar_complex(a, n + 1)?;
    let integral = c.homology_upto(n as i64);
    Ok(BarProbe { n, coefficients: m.clone(), homology: m.apply(&integral) })
}

/// `HC_0 … HC_n` from the first-quadrant cyclic bicomplex: columns alternate
/// `b` and `-b'`, rows are joined by `1 - t` and the norm.
pub fn cyclic_homology(r: &BasedRing, n: usize) -> Result<Vec<FGAbelianGroup>, HomologyError> {
    if n > HC_MAX_DEGREE {
        return Err(HomologyError::DegreeTooLarge { degree: n, bound: HC_MAX_DEGREE });
    }
    if !r.is_unital() {
        return Err(HomologyError::NonUnital);
    }
    let top = n + 1;
    let hh = cyclic_words(r, top, None, None)?;
    let bar = (1..=top)
        .map(|q| alternating(&hh.bases[q], &hh.bases[q - 1], |len| len - 1, |w, i, out| letter_face(r, w, i, out)))
        .collect::<Result<Vec<_>, _>>()?;
    let rank = |q: usize| hh.bases[q].len();
    let offset = |k: usize, p: usize| (0..p).map(|pp| rank(k - pp)).sum::<usize>();
    let total = |k: usize| offset(k, k + 1);
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut cols = Vec::with_capacity(total(k));
        for p in 0..=k {
            let q = k - p;
            for j in 0..rank(q) {
                let mut acc = Accumulator::new();
                if q >= 1 {
                    let base = offset(k - 1, p);
                    if p % 2 == 0 {
                        acc.add_vec(&hh.complex.boundary(q as i64).expect("in range").column(j).map_indices(|i| i + base), &Z::one());
                    } else {
                        acc.add_vec(&bar[q - 1].column(j).map_indices(|i| i + base), &-Z::one());
                    }
                }
                if p >= 1 {
                    let base = offset(k - 1, p - 1);
                    if p % 2 == 1 {
                        acc.add(base + j, Z::one());
                        let (t, neg) = hh.rotate(q, j).expect("rings have all words");
                        acc.add(base + t, if neg { Z::one() } else { -Z::one() });
                    } else {
                        let (mut cur, mut sign) = (j, Z::one());
                        for _ in 0..=q {
                            acc.add(base + cur, sign.clone());
                            let (t, neg) = hh.rotate(q, cur).expect("rings have all words");
                            cur = t;
                            if neg {
                                sign = -sign;
                            }
                        }
                    }
                }
                cols.push(acc.finish());
            }
        }
        boundaries.push(matrix(total(k - 1), cols)?);
    }
    let c = ChainComplexZ::new_checked(0, (0..=top).map(total).collect(), boundaries)?;
    Ok(c.homology_upto(n as i64))
}

pub fn cyclic_hc(r: &BasedRing, n: usize) -> Result<FGAbelianGroup, HomologyError> {
    Ok(cyclic_homology(r, n)?.pop().expect("n + 1 degrees"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::lincat::LinCat;
    use crate::polyfun::PolyLattice;
    use crate::rings::{crossed_product, direct_sum, dual_numbers, gaussian, group_ring, integers, matrix_ring, RingAction};
    use crate::groups::Action;
    use num_traits::Zero;
    use crate::simplicial::GSimplicialComplex;

    fn g(rank: usize, torsion: &[u64]) -> FGAbelianGroup {
        FGAbelianGroup::from_small(rank, torsion)
    }

    fn c2() -> GroupRef {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn hochschild_of_integers() {
        let h = hochschild_homology(&integers(), Coefficients::Ring, 4).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[]), g(0, &[]), g(0, &[]), g(0, &[])]);
    }

    #[test]
    fn hochschild_of_group_ring_c2() {
        let h = hochschild_homology(&group_ring(&c2()), Coefficients::Ring, 4).unwrap();
        assert_eq!(h, vec![g(2, &[]), g(0, &[2, 2]), g(0, &[]), g(0, &[2, 2]), g(0, &[])]);
    }

    #[test]
    fn hochschild_of_matrices_is_morita_invariant() {
        let h = hochschild_homology(&matrix_ring(2), Coefficients::Ring, 2).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[]), g(0, &[])]);
    }

    #[test]
    fn twisted_coefficients() {
        // HH(ℤ[C₂], ℤ[C₂]_σ) with σ acting by conjugation, which is trivial here
        let r = group_ring(&c2());
        let plain = hochschild_homology(&r, Coefficients::Ring, 3).unwrap();
        let twisted = hochschild_homology(&r, Coefficients::Twisted(1), 3).unwrap();
        assert_eq!(plain, twisted);
        // ℤ[i] twisted by conjugation: HH₀ = ℤ[i]/(x·σ(r) - r·x) = ℤ[i]/(2, 2i)
        let gi = gaussian();
        let conj = ZMatrix::from_dense_rows(&[vec![Z::one(), Z::zero()], vec![Z::zero(), -Z::one()]]);
        let action: RingAction = Action::whole(c2(), vec![ZMatrix::identity(2), conj]).unwrap();
        let gi = gi.with_action(action).unwrap();
        let h = hochschild_homology(&gi, Coefficients::Twisted(1), 1).unwrap();
        assert_eq!(h[0], g(0, &[2, 2]));
    }

    #[test]
    fn nonunital_route_drops_the_unit_word() {
        let a = dual_numbers();
        let c = hochschild_complex(&a, Coefficients::Ring, 3).unwrap();
        // Ã has rank 2; all words but 1⊗…⊗1 survive
        assert_eq!(c.complex().ranks(), &[1, 3, 7, 15]);
    }

    #[test]
    fn conjugacy_split_of_c2() {
        let c = hochschild_complex(&group_ring(&c2()), Coefficients::Ring, 4).unwrap();
        let parts = c.conjugacy_split().unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert_eq!(p.ranks, vec![1, 2, 4, 8, 16]);
        }
        let h: Vec<_> = parts.iter().map(|p| p.complex.homology_upto(3)).collect();
        assert_eq!(h[0], h[1]);
        assert_eq!(h[0], vec![g(1, &[]), g(0, &[2]), g(0, &[]), g(0, &[2])]);
    }

    #[test]
    fn conjugacy_split_of_s3_sums_to_total() {
        let c = hochschild_complex(&group_ring(&s3()), Coefficients::Ring, 3).unwrap();
        let parts = c.conjugacy_split().unwrap();
        assert_eq!(parts.len(), 3);
        for n in 0..=3 {
            let sum: usize = parts.iter().map(|p| p.ranks[n]).sum();
            assert_eq!(sum, c.complex().ranks()[n]);
        }
        // class sizes 1, 3, 2 times 6^n
        assert_eq!(parts.iter().map(|p| p.ranks[1]).collect::<Vec<_>>(), vec![6, 18, 12]);
    }

    #[test]
    fn split_needs_a_grading() {
        let c = hochschild_complex(&matrix_ring(2), Coefficients::Ring, 1).unwrap();
        assert!(matches!(c.conjugacy_split(), Err(HomologyError::NotGraded)));
    }

    #[test]
    fn cyclic_nerve_of_a_ring_is_its_hochschild_complex() {
        let r = group_ring(&c2());
        let nerve = cyclic_nerve_complex(&LinCat::from_ring(&r).unwrap(), 3).unwrap();
        assert_eq!(nerve.homology(), hochschild_complex(&r, Coefficients::Ring, 3).unwrap().homology());
    }

    #[test]
    fn cyclic_nerve_of_path_category() {
        // the arrow ring of 0 → 1 is upper triangular 2×2, with HH = ℤ² in degree 0
        let nerve = cyclic_nerve_complex(&LinCat::path(1), 3).unwrap();
        assert_eq!(nerve.homology(), vec![g(2, &[]), g(0, &[]), g(0, &[])]);
    }

    #[test]
    fn bar_probe_examples() {
        let z = CoefficientGroup::Integers;
        assert!(bar_tor_probe(&matrix_ring(2), &z, 3).unwrap().vanishes());
        let t = bar_tor_probe(&dual_numbers(), &z, 3).unwrap();
        assert_eq!(t.homology[0], g(1, &[]));
        let sum = direct_sum(&matrix_ring(2), &dual_numbers()).unwrap();
        let p = bar_tor_probe(&sum, &z, 2).unwrap();
        assert_eq!(p.homology[0], g(1, &[]));
        let mod2 = bar_tor_probe(&dual_numbers(), &CoefficientGroup::Cyclic(Z::from(2)), 2).unwrap();
        assert_eq!(mod2.homology, vec![g(0, &[2]); 3]);
        assert!(bar_tor_probe(&matrix_ring(2), &z, 7).is_err());
    }

    #[test]
    fn bar_probe_on_crossed_product_and_polynomials() {
        let z = CoefficientGroup::Integers;
        let conj = ZMatrix::from_dense_rows(&[vec![Z::one(), Z::zero()], vec![Z::zero(), -Z::one()]]);
        let gi = gaussian().with_action(Action::whole(c2(), vec![ZMatrix::identity(2), conj]).unwrap()).unwrap();
        assert!(bar_tor_probe(&crossed_product(&gi).unwrap(), &z, 3).unwrap().vanishes());
        let tri = Arc::new(GSimplicialComplex::simplicial(3, &[vec![0, 1, 2]], None).unwrap());
        let alg = FilteredAlgebra::from_lattice(&PolyLattice::new(tri, 2)).unwrap();
        assert_eq!(alg.rank(), 6);
        assert!(bar_tor_probe(&alg, &z, 3).unwrap().vanishes());
    }

    #[test]
    fn bar_probe_detects_summands() {
        let rings = [integers(), group_ring(&c2()).without_action(), dual_numbers()];
        let z = CoefficientGroup::Integers;
        let single: Vec<bool> = rings.iter().map(|r| bar_tor_probe(r, &z, 3).unwrap().vanishes()).collect();
        for (i, a) in rings.iter().enumerate() {
            for (j, b) in rings.iter().enumerate() {
                let sum = direct_sum(a, b).unwrap();
                assert_eq!(bar_tor_probe(&sum, &z, 3).unwrap().vanishes(), single[i] && single[j], "summands {i}, {j}");
            }
        }
    }

    #[test]
    fn cyclic_homology_examples() {
        assert_eq!(cyclic_homology(&integers(), 4).unwrap(), vec![g(1, &[]), g(0, &[]), g(1, &[]), g(0, &[]), g(1, &[])]);
        assert_eq!(cyclic_hc(&matrix_ring(2), 0).unwrap(), g(1, &[]));
        // HC₀(R) = R/[R,R]
        assert_eq!(cyclic_hc(&group_ring(&s3()), 0).unwrap(), g(3, &[]));
        assert!(matches!(cyclic_hc(&dual_numbers(), 0), Err(HomologyError::NonUnital)));
    }

    #[test]
    fn truncation_is_sound() {
        let r = group_ring(&c2());
        for n in 2..=4 {
            let a = hochschild_complex(&r, Coefficients::Ring, n).unwrap().complex().homology_upto(n as i64);
            let b = hochschild_complex(&r, Coefficients::Ring, n + 1).unwrap().complex().homology_upto(n as i64);
            assert_eq!(a[..n], b[..n]);
        }
    }
}
