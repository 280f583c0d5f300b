use std::collections::BTreeMap;
use std::fmt;

use equihom_linalg::{Accumulator, ZVec, Z};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groups::{Elem, GroupRef, TransportGroupoid};
use crate::rings::{BasedRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("arrow {0} has an unknown endpoint")]
    UnknownObject(usize),
    #[error("composition {0} ∘ {1} is not composable")]
    NotComposable(String, String),
    #[error("composition {0} ∘ {1} leaves hom({2}, {3})")]
    WrongHom(String, String, String, String),
    #[error("composition not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("identity of {0} is not neutral for {1}")]
    BadIdentity(String, String),
    #[error("ring needs a unit to be a one-object category")]
    NonUnital,
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowData {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A finite ℤ-linear category: each hom-module is free on the arrows with that source and target.
#[derive(Clone, Debug)]
pub struct LinCat {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    /// `comp[g]` lists `(f, g∘f)` for composable basis arrows, sorted by `f`.
    comp: Vec<Vec<(usize, ZVec)>>,
    identities: Vec<ZVec>,
    grading: Option<(GroupRef, Vec<Elem>)>,
    zero: ZVec,
}

impl LinCat {
    /// `compositions` lists nonzero `g∘f` as `(g, f, g∘f)`; validates everything.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        compositions: impl IntoIterator<Item = (usize, usize, ZVec)>,
        identities: Vec<ZVec>,
    ) -> Result<Self, CatError> {
        let c = Self::new_unchecked(objects, arrows, compositions, identities)?;
        c.validate()?;
        Ok(c)
    }

    fn new_unchecked(
        objects: Vec<String>,
        arrows: Vec<ArrowData>,
        compositions: impl IntoIterator<Item = (usize, usize, ZVec)>,
        identities: Vec<ZVec>,
    ) -> Result<Self, CatError> {
        let n = objects.len();
        if let Some(i) = arrows.iter().position(|a| a.source >= n || a.target >= n) {
            return Err(CatError::UnknownObject(i));
        }
        if identities.len() != n {
            return Err(CatError::BadIdentity("?".into(), "identity list has the wrong length".into()));
        }
        let mut comp = vec![Vec::new(); arrows.len()];
        for (g, f, v) in compositions {
            if g >= arrows.len() || f >= arrows.len() {
                return Err(CatError::UnknownObject(g.max(f)));
            }
            if arrows[g].source != arrows[f].target {
                return Err(CatError::NotComposable(arrows[g].label.clone(), arrows[f].label.clone()));
            }
            if !v.is_zero() {
                comp[g].push((f, v));
            }
        }
        for row in &mut comp {
            row.sort_by_key(|e| e.0);
        }
        Ok(LinCat { objects, arrows, comp, identities, grading: None, zero: ZVec::zero() })
    }

    pub fn validate(&self) -> Result<(), CatError> {
        let m = self.arrows.len();
        for g in 0..m {
            for (f, v) in &self.comp[g] {
                let (s, t) = (self.arrows[*f].source, self.arrows[g].target);
                if v.iter().any(|(h, _)| h >= m || self.arrows[h].source != s || self.arrows[h].target != t) {
                    return Err(CatError::WrongHom(
                        self.arrows[g].label.clone(),
                        self.arrows[*f].label.clone(),
                        self.objects[s].clone(),
                        self.objects[t].clone(),
                    ));
                }
            }
        }
        for (a, id) in self.identities.iter().enumerate() {
            if id.iter().any(|(h, _)| self.arrows[h].source != a || self.arrows[h].target != a) {
                return Err(CatError::BadIdentity(self.objects[a].clone(), "identity outside hom(a, a)".into()));
            }
        }
        for f in 0..m {
            let fv = ZVec::unit(f);
            let (s, t) = (self.arrows[f].source, self.arrows[f].target);
            if self.compose(&self.identities[t], &fv) != fv || self.compose(&fv, &self.identities[s]) != fv {
                return Err(CatError::BadIdentity(self.objects[t].clone(), self.arrows[f].label.clone()));
            }
        }
        for h in 0..m {
            for (g, hg) in &self.comp[h] {
                for (f, gf) in &self.comp[*g] {
                    if self.compose(hg, &ZVec::unit(*f)) != self.compose(&ZVec::unit(h), gf) {
                        return Err(CatError::NotAssociative(
                            self.arrows[h].label.clone(),
                            self.arrows[*g].label.clone(),
                            self.arrows[*f].label.clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &ArrowData {
        &self.arrows[i]
    }

    pub fn arrows(&self) -> &[ArrowData] {
        &self.arrows
    }

    pub fn identity(&self, a: usize) -> &ZVec {
        &self.identities[a]
    }

    pub fn grading(&self) -> Option<(&GroupRef, &[Elem])> {
        self.grading.as_ref().map(|(g, v)| (g, v.as_slice()))
    }

    pub fn with_grading(mut self, group: GroupRef, grades: Vec<Elem>) -> Self {
        assert_eq!(grades.len(), self.arrow_count());
        self.grading = Some((group, grades));
        self
    }

    pub fn composable(&self, g: usize, f: usize) -> bool {
        self.arrows[g].source == self.arrows[f].target
    }

    /// `g∘f` for basis arrows (zero if not composable).
    pub fn basis_compose(&self, g: usize, f: usize) -> &ZVec {
        let row = &self.comp[g];
        match row.binary_search_by_key(&f, |e| e.0) {
            Ok(k) => &row[k].1,
            Err(_) => &self.zero,
        }
    }

    /// Nonzero `g∘f` for fixed `g`.
    pub fn compositions_after(&self, g: usize) -> &[(usize, ZVec)] {
        &self.comp[g]
    }

    /// Bilinear extension of composition, with non-composable pairs contributing 0.
    pub fn compose(&self, g: &ZVec, f: &ZVec) -> ZVec {
        let mut acc = Accumulator::new();
        for (i, x) in g.iter() {
            for (j, y) in f.iter() {
                let p = self.basis_compose(i, j);
                if !p.is_zero() {
                    acc.add_vec(p, &(x * y));
                }
            }
        }
        acc.finish()
    }

    /// `hom(a, b)` basis arrows.
    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == a && self.arrows[i].target == b)
    }

    /// A unital ring as a one-object category.
    pub fn from_ring(ring: &BasedRing) -> Result<Self, CatError> {
        let unit = ring.unit().ok_or(CatError::NonUnital)?.clone();
        let arrows = ring.labels().iter().map(|l| ArrowData { source: 0, target: 0, label: l.clone() }).collect();
        let comp = (0..ring.rank()).flat_map(|i| ring.row(i).iter().map(move |(j, v)| (i, *j, v.clone())));
        let mut c = Self::new_unchecked(vec!["*".into()], arrows, comp, vec![unit])?;
        if let Some((g, v)) = ring.grading() {
            c.grading = Some((g.clone(), v.to_vec()));
        }
        Ok(c)
    }

    /// Objects `0..=n`, hom(i, j) = ℤ for `i ≤ j`.
    pub fn path(n: usize) -> Self {
        let mut arrows = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                let label = if i == j { format!("1_{i}") } else { format!("{i}→{j}") };
                arrows.push(ArrowData { source: i, target: j, label });
            }
        }
        let mut comp = Vec::new();
        for (&(j, k), &g) in &index {
            for (&(i, j2), &f) in &index {
                if j2 == j {
                    comp.push((g, f, ZVec::unit(index[&(i, k)])));
                }
            }
        }
        let ids = (0..=n).map(|i| ZVec::unit(index[&(i, i)])).collect();
        Self::new_unchecked((0..=n).map(|i| i.to_string()).collect(), arrows, comp, ids).expect("valid")
    }

    /// One object per ring, no arrows between distinct objects.
    pub fn discrete(rings: &[BasedRing]) -> Result<Self, CatError> {
        let parts = rings.iter().map(Self::from_ring).collect::<Result<Vec<_>, _>>()?;
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut comp = Vec::new();
        let mut ids = Vec::new();
        for (k, c) in parts.iter().enumerate() {
            let off = arrows.len();
            objects.push(format!("o{k}"));
            for a in &c.arrows {
                arrows.push(ArrowData { source: k, target: k, label: a.label.clone() });
            }
            for g in 0..c.arrow_count() {
                for (f, v) in &c.comp[g] {
                    comp.push((g + off, f + off, v.map_indices(|i| i + off)));
                }
            }
            ids.push(c.identities[0].map_indices(|i| i + off));
        }
        Self::new_unchecked(objects, arrows, comp, ids)
    }

    /// A⋊𝒢^G(S) for unital `A`: arrows `(i, γ)` at `i·#arrows(𝒢) + γ`,
    /// `(r⋊f)∘(s⋊g) = r·f(s) ⋊ fg`.
    pub fn crossed_groupoid(ring: &BasedRing, groupoid: &TransportGroupoid) -> Result<Self, CatError> {
        let unit = ring.unit().ok_or(CatError::NonUnital)?;
        let big = crate::rings::groupoid_crossed(ring, groupoid)?;
        let na = groupoid.arrow_count();
        let arrows = (0..big.rank())
            .map(|k| {
                let ar = groupoid.arrow(k % na);
                ArrowData { source: ar.source, target: ar.target, label: big.label(k).to_string() }
            })
            .collect();
        let comp = (0..big.rank()).flat_map(|i| big.row(i).iter().map(move |(j, v)| (i, *j, v.clone())));
        let ids = (0..groupoid.object_count())
            .map(|s| ZVec::from_entries(unit.iter().map(|(k, x)| (k * na + groupoid.arrow_index(s, 0), x.clone()))))
            .collect();
        let mut c = Self::new_unchecked((0..groupoid.object_count()).map(|s| format!("s{s}")).collect(), arrows, comp, ids)?;
        let (g, v) = big.grading().expect("graded");
        c.grading = Some((g.clone(), v.to_vec()));
        Ok(c)
    }

    /// 𝒞 ⊗ 𝒟: objects and arrows are pairs, composed componentwise.
    pub fn tensor(&self, other: &LinCat) -> LinCat {
        let (m, no) = (other.arrow_count(), other.object_count());
        let objects = self.objects.iter().flat_map(|a| other.objects.iter().map(move |b| format!("({a},{b})"))).collect();
        let arrows = self
            .arrows
            .iter()
            .flat_map(|f| {
                other.arrows.iter().map(move |g| ArrowData {
                    source: f.source * no + g.source,
                    target: f.target * no + g.target,
                    label: format!("{}⊗{}", f.label, g.label),
                })
            })
            .collect();
        let mut comp = Vec::new();
        for g in 0..self.arrow_count() {
            for (f, gf) in &self.comp[g] {
                for g2 in 0..m {
                    for (f2, gf2) in &other.comp[g2] {
                        comp.push((g * m + g2, f * m + f2, crate::rings::kron_vec(gf, gf2, m)));
                    }
                }
            }
        }
        let ids = (0..self.object_count())
            .flat_map(|a| (0..no).map(move |b| (a, b)))
            .map(|(a, b)| crate::rings::kron_vec(&self.identities[a], &other.identities[b], m))
            .collect();
        Self::new_unchecked(objects, arrows, comp, ids).expect("tensor of valid categories")
    }
}

/// 𝒜(𝒞): arrows as basis, composition as product when composable, unit `Σ 1ₐ`.
pub fn arrow_ring(c: &LinCat) -> BasedRing {
    let labels = c.arrows.iter().map(|a| a.label.clone()).collect();
    let products = (0..c.arrow_count()).flat_map(|g| c.comp[g].iter().map(move |(f, v)| (g, *f, v.clone())));
    let mut unit = Accumulator::new();
    for id in &c.identities {
        unit.add_vec(id, &Z::one());
    }
    let ring = BasedRing::new(labels, products, Some(unit.finish())).expect("composition data is in range");
    match &c.grading {
        Some((g, v)) => ring.with_grading(g.clone(), v.clone()),
        None => ring,
    }
}

/// A ℤ-combination of words `f₁⊗…⊗f_k` of basis arrows in ℛ(𝒞), kept in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeWord {
    terms: BTreeMap<Vec<usize>, Z>,
}

impl ConeWord {
    pub fn zero() -> Self {
        ConeWord::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Z)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, w: Vec<usize>, c: Z) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ConeWord, c: &Z) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Z) -> ConeWord {
        let mut out = ConeWord::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn display(&self, c: &LinCat) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, x)| {
                let word = w.iter().map(|&a| c.arrow(a).label.as_str()).collect::<Vec<_>>().join("⊗");
                format!("{x}*[{word}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for ConeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.terms.iter().map(|(w, x)| format!("{x}*{w:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

impl LinCat {
    /// A single letter.
    pub fn letter(&self, f: usize) -> ConeWord {
        let mut w = ConeWord::zero();
        w.add_term(vec![f], Z::one());
        w
    }

    /// A combination of letters.
    pub fn letters(&self, v: &ZVec) -> ConeWord {
        let mut w = ConeWord::zero();
        for (f, x) in v.iter() {
            w.add_term(vec![f], x.clone());
        }
        w
    }

    /// Positions `i` with `word[i] ⊗ word[i+1]` composable.
    pub fn redexes(&self, word: &[usize]) -> Vec<usize> {
        (0..word.len().saturating_sub(1)).filter(|&i| self.composable(word[i], word[i + 1])).collect()
    }

    /// Rewrites `g⊗f → g∘f` leftmost first until no adjacent pair composes.
    pub fn cone_normal_form(&self, word: &[usize]) -> ConeWord {
        self.normal_form_with(word, &mut |r: &[usize]| r[0])
    }

    /// As [`cone_normal_form`](Self::cone_normal_form), with `choose` picking among the redex positions.
    pub fn normal_form_with(&self, word: &[usize], choose: &mut dyn FnMut(&[usize]) -> usize) -> ConeWord {
        let mut out = ConeWord::zero();
        let mut stack = vec![(word.to_vec(), Z::one())];
        while let Some((w, c)) = stack.pop() {
            let redexes = self.redexes(&w);
            if redexes.is_empty() {
                out.add_term(w, c);
                continue;
            }
            let i = choose(&redexes);
            debug_assert!(redexes.contains(&i));
            for (h, x) in self.basis_compose(w[i], w[i + 1]).iter() {
                let mut next = Vec::with_capacity(w.len() - 1);
                next.extend_from_slice(&w[..i]);
                next.push(h);
                next.extend_from_slice(&w[i + 2..]);
                stack.push((next, &c * x));
            }
        }
        out
    }

    /// Product in ℛ(𝒞) of normal forms.
    pub fn cone_mul(&self, a: &ConeWord, b: &ConeWord) -> ConeWord {
        let mut out = ConeWord::zero();
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_scaled(&self.cone_normal_form(&w), &(x * y));
            }
        }
        out
    }

    /// p: ℛ(𝒞) → 𝒜(𝒞), multiplying the letters of each word in 𝒜(𝒞).
    pub fn projection_p(&self, w: &ConeWord) -> ZVec {
        let mut acc = Accumulator::new();
        for (word, c) in &w.terms {
            let mut prod = ZVec::unit(word[0]);
            for &f in &word[1..] {
                prod = self.compose(&prod, &ZVec::unit(f));
            }
            acc.add_vec(&prod, c);
        }
        acc.finish()
    }
}

/// Polynomial in `t` with integer coefficients, dense from degree 0.
fn poly(c: &[i64]) -> Vec<Z> {
    c.iter().map(|&x| Z::from(x)).collect()
}

/// Coefficients of the homotopy, as polynomials in `t`:
/// `P = -t(t³-2t)`, `Q = t(t²-1)`, `S = (1-t²)(t³-2t)`, `U = (1-t²)²`.
pub fn homotopy_coefficients() -> [Vec<Z>; 4] {
    [
        poly(&[0, 0, 2, 0, -1]),
        poly(&[0, -1, 0, 1]),
        poly(&[0, -2, 0, 3, 0, -1]),
        poly(&[1, 0, -2, 0, 1]),
    ]
}

/// Polynomials in `t` over ℛ(𝒞), dense by degree.
pub type ConePoly = Vec<ConeWord>;

/// Square matrices over ℛ(𝒞)[t] indexed by `ob₊𝒞`, where `+` is index `#objects`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeMatrix {
    entries: BTreeMap<(usize, usize), ConePoly>,
}

fn trim(p: &mut ConePoly) {
    while p.last().is_some_and(ConeWord::is_zero) {
        p.pop();
    }
}

impl ConeMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Option<&ConePoly> {
        self.entries.get(&(row, col))
    }

    fn add_entry(&mut self, row: usize, col: usize, p: ConePoly) {
        let e = self.entries.entry((row, col)).or_default();
        if e.len() < p.len() {
            e.resize(p.len(), ConeWord::zero());
        }
        for (k, w) in p.into_iter().enumerate() {
            e[k].add_scaled(&w, &Z::one());
        }
        trim(e);
        if e.is_empty() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn degree(&self) -> usize {
        self.entries.values().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    /// Evaluates `t` at an integer.
    pub fn eval(&self, t: i64) -> BTreeMap<(usize, usize), ConeWord> {
        let t = Z::from(t);
        let mut out = BTreeMap::new();
        for (&k, p) in &self.entries {
            let mut acc = ConeWord::zero();
            let mut pow = Z::one();
            for w in p {
                acc.add_scaled(w, &pow);
                pow *= &t;
            }
            if !acc.is_zero() {
                out.insert(k, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &ConeMatrix, c: &LinCat) -> ConeMatrix {
        let mut out = ConeMatrix::default();
        for (&(i, k), p) in &self.entries {
            for (&(k2, j), q) in other.entries.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                let mut r = vec![ConeWord::zero(); p.len() + q.len() - 1];
                for (a, x) in p.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (b, y) in q.iter().enumerate() {
                        if !y.is_zero() {
                            r[a + b].add_scaled(&c.cone_mul(x, y), &Z::one());
                        }
                    }
                }
                out.add_entry(i, j, r);
            }
        }
        out
    }
}

impl LinCat {
    /// `H(f) = f ⊗ (P e₊₊ + Q e₊ₐ + S e_{b+} + U e_{ba})` for `f: a → b`, extended linearly.
    pub fn cone_homotopy(&self, f: &ZVec) -> ConeMatrix {
        let plus = self.object_count();
        let [p, q, s, u] = homotopy_coefficients();
        let mut m = ConeMatrix::default();
        for (k, x) in f.iter() {
            let ArrowData { source: a, target: b, .. } = self.arrows[k];
            let w = self.letter(k).scaled(x);
            for (row, col, coeff) in [(plus, plus, &p), (plus, a, &q), (b, plus, &s), (b, a, &u)] {
                m.add_entry(row, col, coeff.iter().map(|c| w.scaled(c)).collect());
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeFailure {
    #[error("ev0 H({0}) differs from r({0})")]
    EvZero(String),
    #[error("ev1 H({0}) differs from ι({0})")]
    EvOne(String),
    #[error("H({0}∘{1}) differs from H({0})H({1})")]
    Multiplicative(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub arrows_checked: usize,
    pub pairs_checked: usize,
}

/// Checks `ev₀H(f) = f⊗e_{b,a}`, `ev₁H(f) = f⊗e₊₊` for every basis arrow and
/// `H(g∘f) = H(g)H(f)` for every composable pair.
pub fn verify_cone_homotopy(c: &LinCat) -> Result<ConeReport, ConeFailure> {
    let plus = c.object_count();
    for k in 0..c.arrow_count() {
        let h = c.cone_homotopy(&ZVec::unit(k));
        let ArrowData { source: a, target: b, ref label } = c.arrows[k];
        let r: BTreeMap<_, _> = [((b, a), c.letter(k))].into();
        if h.eval(0) != r {
            return Err(ConeFailure::EvZero(label.clone()));
        }
        let iota: BTreeMap<_, _> = [((plus, plus), c.letter(k))].into();
        if h.eval(1) != iota {
            return Err(ConeFailure::EvOne(label.clone()));
        }
    }
    let mut pairs = 0;
    for g in 0..c.arrow_count() {
        let hg = c.cone_homotopy(&ZVec::unit(g));
        for f in 0..c.arrow_count() {
            if !c.composable(g, f) {
                continue;
            }
            pairs += 1;
            let lhs = c.cone_homotopy(c.basis_compose(g, f));
            let rhs = hg.mul(&c.cone_homotopy(&ZVec::unit(f)), c);
            if lhs != rhs {
                return Err(ConeFailure::Multiplicative(c.arrows[g].label.clone(), c.arrows[f].label.clone()));
            }
        }
    }
    Ok(ConeReport { arrows_checked: c.arrow_count(), pairs_checked: pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::rings::{gaussian, group_ring, integers, matrix_ring, unitalize, truncated, GSetSpec};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn arrow_ring_examples() {
        let c = LinCat::discrete(&[integers(), integers()]).unwrap();
        let a = arrow_ring(&c);
        a.validate().unwrap();
        assert_eq!(a.rank(), 2);
        assert!(a.basis_mul(0, 1).is_zero());
        let one = LinCat::from_ring(&gaussian()).unwrap();
        assert!(arrow_ring(&one).structure_eq(&gaussian()));
        let p = LinCat::path(1);
        let r = arrow_ring(&p);
        r.validate().unwrap();
        assert_eq!(r.rank(), 3);
        let f = p.arrows().iter().position(|a| a.source != a.target).unwrap();
        assert!(r.basis_mul(f, f).is_zero());
    }

    #[test]
    fn arrow_ring_of_crossed_groupoid_matches_ring_construction() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let tg = TransportGroupoid::new(GSetSpec::Cosets(g.generated([1]).elements().to_vec()).build(&g).unwrap());
        let c = LinCat::crossed_groupoid(&integers(), &tg).unwrap();
        c.validate().unwrap();
        let a = arrow_ring(&c);
        assert!(a.structure_eq(&crate::rings::groupoid_crossed(&integers(), &tg).unwrap()));
    }

    #[test]
    fn normal_form_examples() {
        let p = LinCat::path(2);
        let f = p.hom(0, 1).next().unwrap();
        let g = p.hom(1, 2).next().unwrap();
        let gf = p.hom(0, 2).next().unwrap();
        assert_eq!(p.cone_normal_form(&[g, f]), p.letter(gf));
        let i0 = p.hom(0, 0).next().unwrap();
        let i1 = p.hom(1, 1).next().unwrap();
        let w = p.cone_normal_form(&[i0, i1]);
        assert_eq!(w.max_length(), 2);
        assert!(p.projection_p(&w).is_zero());
        let id2 = p.hom(2, 2).next().unwrap();
        assert_eq!(p.cone_normal_form(&[id2, g, f]), p.letter(gf));
        assert_eq!(p.normal_form_with(&[id2, g, f], &mut |r| *r.last().unwrap()), p.letter(gf));
        let mut combo = p.letter(f).scaled(&Z::from(2));
        combo.add_scaled(&w, &Z::one());
        assert_eq!(p.projection_p(&combo), ZVec::single(f, Z::from(2)));
    }

    #[test]
    fn one_object_words_collapse() {
        let c = LinCat::from_ring(&matrix_ring(2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!(c.cone_normal_form(&[i, j]).max_length() <= 1);
            }
        }
    }

    #[test]
    fn cone_homotopy_on_path_and_others() {
        let r = verify_cone_homotopy(&LinCat::path(2)).unwrap();
        assert_eq!(r.arrows_checked, 6);
        verify_cone_homotopy(&LinCat::from_ring(&gaussian()).unwrap()).unwrap();
        verify_cone_homotopy(&LinCat::discrete(&[integers(), matrix_ring(2)]).unwrap()).unwrap();
    }

    #[test]
    fn homotopy_coefficients_satisfy_the_idempotent_relations() {
        // H(g)H(f) = H(gf) reduces to P²+QS = P, Q(P+U) = Q, S(P+U) = S, SQ+U² = U
        let [p, q, s, u] = homotopy_coefficients();
        let mul = |a: &[Z], b: &[Z]| {
            let mut r = vec![Z::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    r[i + j] += x * y;
                }
            }
            while r.last().is_some_and(Z::is_zero) {
                r.pop();
            }
            r
        };
        let add = |a: &[Z], b: &[Z]| {
            let mut r = vec![Z::zero(); a.len().max(b.len())];
            for (i, x) in a.iter().enumerate() {
                r[i] += x;
            }
            for (i, x) in b.iter().enumerate() {
                r[i] += x;
            }
            while r.last().is_some_and(Z::is_zero) {
                r.pop();
            }
            r
        };
        assert_eq!(add(&p, &u), vec![Z::one()]);
        assert_eq!(add(&mul(&p, &p), &mul(&q, &s)), p);
        assert_eq!(add(&mul(&s, &q), &mul(&u, &u)), u);
    }

    fn random_category(rng: &mut ChaCha8Rng) -> LinCat {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        match rng.gen_range(0..5) {
            0 => LinCat::path(rng.gen_range(1..4)),
            1 => LinCat::path(1).tensor(&LinCat::from_ring(&gaussian()).unwrap()),
            2 => LinCat::crossed_groupoid(&integers(), &TransportGroupoid::new(GSetSpec::Cosets(vec![0, 1]).build(&g).unwrap())).unwrap(),
            3 => LinCat::discrete(&[unitalize(&truncated(3).unwrap()), matrix_ring(2)]).unwrap(),
            _ => LinCat::path(2).tensor(&LinCat::from_ring(&group_ring(&Arc::new(FiniteGroup::cyclic(2).unwrap()))).unwrap()),
        }
    }

    #[test]
    fn confluence_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let c = random_category(&mut rng);
            let len = rng.gen_range(1..7);
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..c.arrow_count())).collect();
            let left = c.cone_normal_form(&word);
            let right = c.normal_form_with(&word, &mut |r| *r.last().unwrap());
            let mut r2 = ChaCha8Rng::seed_from_u64(rng.gen());
            let random = c.normal_form_with(&word, &mut |r| r[r2.gen_range(0..r.len())]);
            assert_eq!(left, right, "{word:?}");
            assert_eq!(left, random, "{word:?}");
            for (w, _) in left.terms() {
                assert!(c.redexes(w).is_empty());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn p_is_multiplicative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_category(&mut rng);
            let word = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(1..4);
                let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..c.arrow_count())).collect();
                c.cone_normal_form(&w)
            };
            let a = word(&mut rng);
            let b = word(&mut rng);
            let lhs = c.projection_p(&c.cone_mul(&a, &b));
            let rhs = c.compose(&c.projection_p(&a), &c.projection_p(&b));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn p_fixes_letters(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_category(&mut rng);
            for f in 0..c.arrow_count() {
                prop_assert_eq!(c.projection_p(&c.letter(f)), ZVec::unit(f));
            }
        }
    }
}
