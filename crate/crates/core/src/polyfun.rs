use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use equihom_linalg::{smith_summary, DenseMatrix, Solve, SparseVec, ZMatrix, ZVec, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::groups::Elem;
use crate::rings::BasedRing;
use crate::simplicial::{generate, is_subcomplex, subcomplex_ops, GSimplicialComplex, SimplexSet};

pub const DEFAULT_DEGREE_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeExceeded { degree: u32, bound: u32 },
    #[error("operands live over different complexes or domains")]
    SpaceMismatch,
    #[error("simplex set is not a subcomplex")]
    NotASubcomplex,
    #[error("value on {face:?} is not the restriction of the value on {simplex:?}")]
    NotCompatible { simplex: Vec<usize>, face: Vec<usize> },
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(Vec<usize>),
    #[error("malformed polynomial literal: {0}")]
    BadLiteral(String),
    #[error("compatibility identity fails: {0}")]
    Identity(String),
    #[error("element lies outside the degree-{0} lattice")]
    OutsideLattice(u32),
}

/// Integer polynomial in the free barycentric coordinates `t₀…t_{n-1}` of Δⁿ
/// (`t_n = 1 - Σ tᵢ` is eliminated).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Z>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Z) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Z::one())
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Z::one());
        p
    }

    /// Barycentric coordinate `t_i` of Δⁿ, where `n = nvars`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        if i < nvars {
            return Poly::var(nvars, i);
        }
        let mut p = Poly::one(nvars);
        for k in 0..nvars {
            p = &p - &Poly::var(nvars, k);
        }
        p
    }

    /// Terms over the free coordinates (length `n`) or over all `n + 1` coordinates.
    pub fn from_exponents(nvars: usize, terms: &[(Vec<u32>, Z)]) -> Result<Self, PolyError> {
        let mut out = Poly::zero(nvars);
        let coords: Vec<Poly> = (0..=nvars).map(|i| Poly::coordinate(nvars, i)).collect();
        for (e, c) in terms {
            if e.len() == nvars {
                out.add_term(e.clone(), c.clone());
            } else if e.len() == nvars + 1 {
                let mut m = Poly::constant(nvars, c.clone());
                for (i, &k) in e.iter().enumerate() {
                    m = &m * &coords[i].pow(k);
                }
                out = &out + &m;
            } else {
                return Err(PolyError::BadLiteral(format!("exponent vector {e:?} for a {nvars}-simplex")));
            }
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Z)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Z) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Z) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Substitutes `images[k]` for `t_k`.
    pub fn substitute(&self, images: &[Poly], nvars_out: usize) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(nvars_out), p.clone()]).collect();
        let mut out = Poly::zero(nvars_out);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(nvars_out, c.clone());
            for (k, &x) in e.iter().enumerate() {
                while cache[k].len() <= x as usize {
                    let next = &cache[k][cache[k].len() - 1] * &images[k];
                    cache[k].push(next);
                }
                m = &m * &cache[k][x as usize];
            }
            out = &out + &m;
        }
        out
    }

    /// Pullback along the affine map Δⁿ → Δᵐ sending vertex `i` to `map[i]`,
    /// where `self` lives on Δᵐ and `n = map.len() - 1`.
    pub fn pull(&self, map: &[usize]) -> Poly {
        let n = map.len() - 1;
        let coords: Vec<Poly> = (0..=n).map(|i| Poly::coordinate(n, i)).collect();
        let images: Vec<Poly> = (0..self.nvars)
            .map(|k| map.iter().enumerate().filter(|(_, &m)| m == k).fold(Poly::zero(n), |acc, (i, _)| &acc + &coords[i]))
            .collect();
        self.substitute(&images, n)
    }

    /// `d_i`: restriction to the face opposite vertex `i`.
    pub fn face(&self, i: usize) -> Poly {
        let n = self.nvars;
        let map: Vec<usize> = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        self.pull(&map)
    }

    /// `s_j`: pullback along the degeneracy Δⁿ⁺¹ → Δⁿ hitting `j` twice.
    pub fn degeneracy(&self, j: usize) -> Poly {
        let n = self.nvars;
        let map: Vec<usize> = (0..n + 2).map(|i| if i <= j { i } else { i - 1 }).collect();
        self.pull(&map)
    }

    fn div_var(&self, k: usize) -> Option<Poly> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] == 0 {
                return None;
            }
            let mut e = e.clone();
            e[k] -= 1;
            out.add_term(e, c.clone());
        }
        Some(out)
    }

    /// Exact division by `1 - Σ t_k`, by long division in `t₀`.
    fn div_last_coordinate(&self) -> Option<Poly> {
        let n = self.nvars;
        let l = Poly::coordinate(n, n);
        let mut rest = self.clone();
        let mut q = Poly::zero(n);
        loop {
            let top = rest.terms.keys().map(|e| e[0]).max();
            match top {
                None => return Some(q),
                Some(0) => return None,
                Some(a) => {
                    let mut lead = Poly::zero(n);
                    for (e, c) in &rest.terms {
                        if e[0] == a {
                            let mut e = e.clone();
                            e[0] -= 1;
                            lead.add_term(e, -c.clone());
                        }
                    }
                    q = &q + &lead;
                    rest = &rest - &(&lead * &l);
                }
            }
        }
    }

    /// Evaluates at a point given by its free coordinates.
    pub fn eval(&self, point: &[num_rational::BigRational]) -> num_rational::BigRational {
        use num_rational::BigRational;
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (k, &x) in e.iter().enumerate() {
                for _ in 0..x {
                    m *= &point[k];
                }
            }
            acc += m;
        }
        acc
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&-Z::one())
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Z::one())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then_with(|| b.0.cmp(a.0)));
        for (e, c) in terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(k, &x)| if x == 1 { format!("t{k}") } else { format!("t{k}^{x}") })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if !first {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            first = false;
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `x ∈ ℤ[Δⁿ]` with `d_i x = ys[i]` for a compatible family `ys` on ∂Δⁿ (`n ≥ 1`).
/// Fills the horn Λⁿₙ by degeneracies, then the remaining normalized class on the
/// last face by `t₀⋯t_{n-1} · c / (t₀⋯t_{n-2}(1 - Σ))`.
pub fn fill_boundary(ys: &[Poly]) -> Poly {
    let n = ys.len() - 1;
    assert!(n >= 1);
    let mut w = ys[0].degeneracy(0);
    for (i, y) in ys.iter().enumerate().take(n).skip(1) {
        w = &w + &(y - &w.face(i)).degeneracy(i);
    }
    let c = &ys[n] - &w.face(n);
    let mut quotient = c;
    for k in 0..n - 1 {
        quotient = quotient.div_var(k).expect("normalized class vanishes on the coordinate faces");
    }
    if n >= 2 {
        quotient = quotient.div_last_coordinate().expect("normalized class vanishes on the last face");
    }
    // quotient lives on Δⁿ⁻¹ with free variables t₀…t_{n-2}; embed and multiply
    let mut q = Poly::zero(n);
    for (e, x) in &quotient.terms {
        let mut e2 = e.clone();
        e2.push(0);
        q.add_term(e2, x.clone());
    }
    for k in 0..n {
        q = &q * &Poly::var(n, k);
    }
    &w + &q
}

/// A face-compatible family of polynomials on a downward-closed set of simplices.
/// Equality ignores the degree bound.
#[derive(Clone, Debug)]
pub struct PolyFun {
    space: Arc<GSimplicialComplex>,
    domain: SimplexSet,
    values: BTreeMap<usize, Poly>,
    bound: u32,
}

impl PartialEq for PolyFun {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.values == other.values && *self.space == *other.space
    }
}

impl Eq for PolyFun {}

impl PolyFun {
    pub fn zero(space: Arc<GSimplicialComplex>, domain: SimplexSet, bound: u32) -> Self {
        PolyFun { space, domain, values: BTreeMap::new(), bound }
    }

    pub fn one(space: Arc<GSimplicialComplex>, domain: SimplexSet, bound: u32) -> Self {
        let values = domain.iter().map(|&i| (i, Poly::one(space.dim_of(i)))).collect();
        PolyFun { space, domain, values, bound }
    }

    /// The barycentric coordinate of vertex `v`, as a function on the domain.
    pub fn vertex_coordinate(space: Arc<GSimplicialComplex>, domain: SimplexSet, v: usize, bound: u32) -> Self {
        let values = domain
            .iter()
            .filter_map(|&i| {
                let s = space.simplex(i);
                s.iter().position(|&w| w == v).map(|k| (i, Poly::coordinate(s.len() - 1, k)))
            })
            .collect();
        PolyFun { space, domain, values, bound }
    }

    /// Values on listed simplices, propagated to their faces; other simplices get 0.
    pub fn from_values(
        space: Arc<GSimplicialComplex>,
        domain: SimplexSet,
        entries: Vec<(Vec<usize>, Poly)>,
        bound: u32,
    ) -> Result<Self, PolyError> {
        if !is_subcomplex(&space, &domain) {
            return Err(PolyError::NotASubcomplex);
        }
        let mut values: BTreeMap<usize, Poly> = BTreeMap::new();
        let mut entries = entries;
        entries.sort_by_key(|(s, _)| std::cmp::Reverse(s.len()));
        for (s, p) in entries {
            let i = space.index_of(&s).filter(|i| domain.binary_search(i).is_ok()).ok_or_else(|| PolyError::UnknownSimplex(s.clone()))?;
            if p.nvars() != s.len() - 1 {
                return Err(PolyError::BadLiteral(format!("polynomial for {s:?} has {} variables", p.nvars())));
            }
            match values.get(&i) {
                Some(q) if *q != p => return Err(PolyError::NotCompatible { simplex: s.clone(), face: s }),
                _ => {}
            }
            let mut stack = vec![(i, p)];
            while let Some((j, q)) = stack.pop() {
                let faces = space.faces(j);
                for (k, f) in faces.into_iter().enumerate() {
                    let r = q.face(k);
                    match values.get(&f) {
                        Some(old) if *old != r => {
                            return Err(PolyError::NotCompatible { simplex: space.simplex(j).to_vec(), face: space.simplex(f).to_vec() })
                        }
                        Some(_) => {}
                        None => stack.push((f, r)),
                    }
                }
                values.insert(j, q);
            }
        }
        values.retain(|_, p| !p.is_zero());
        let f = PolyFun { space, domain, values, bound };
        f.check_bound()?;
        f.validate()?;
        Ok(f)
    }

    pub fn space(&self) -> &Arc<GSimplicialComplex> {
        &self.space
    }

    pub fn domain(&self) -> &SimplexSet {
        &self.domain
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn with_bound(mut self, bound: u32) -> Result<Self, PolyError> {
        self.bound = bound;
        self.check_bound()?;
        Ok(self)
    }

    pub fn value(&self, i: usize) -> Poly {
        self.values.get(&i).cloned().unwrap_or_else(|| Poly::zero(self.space.dim_of(i)))
    }

    /// Simplices with a nonzero value.
    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.values.values().map(Poly::degree).max().unwrap_or(0)
    }

    fn check_bound(&self) -> Result<(), PolyError> {
        let d = self.degree();
        if d > self.bound {
            return Err(PolyError::DegreeExceeded { degree: d, bound: self.bound });
        }
        Ok(())
    }

    /// Face compatibility on every codimension-one face.
    pub fn validate(&self) -> Result<(), PolyError> {
        for &i in &self.domain {
            let v = self.value(i);
            for (k, f) in self.space.faces(i).into_iter().enumerate() {
                if v.face(k) != self.value(f) {
                    return Err(PolyError::NotCompatible { simplex: self.space.simplex(i).to_vec(), face: self.space.simplex(f).to_vec() });
                }
            }
        }
        Ok(())
    }

    fn same(&self, other: &PolyFun) -> Result<(), PolyError> {
        if !Arc::ptr_eq(&self.space, &other.space) && *self.space != *other.space || self.domain != other.domain {
            return Err(PolyError::SpaceMismatch);
        }
        Ok(())
    }

    fn zip(&self, other: &PolyFun, op: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyFun, PolyError> {
        self.same(other)?;
        let mut values = BTreeMap::new();
        for &i in &self.domain {
            let p = op(&self.value(i), &other.value(i));
            if !p.is_zero() {
                values.insert(i, p);
            }
        }
        let out = PolyFun { space: self.space.clone(), domain: self.domain.clone(), values, bound: self.bound.max(other.bound) };
        out.check_bound()?;
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    pub fn add(&self, other: &PolyFun) -> Result<PolyFun, PolyError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyFun) -> Result<PolyFun, PolyError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &PolyFun) -> Result<PolyFun, PolyError> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &Z) -> PolyFun {
        let values = self.values.iter().map(|(&i, p)| (i, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect();
        PolyFun { values, ..self.clone() }
    }

    /// Restriction to a subcomplex of the domain.
    pub fn restrict(&self, sub: &[usize]) -> Result<PolyFun, PolyError> {
        if !is_subcomplex(&self.space, sub) || sub.iter().any(|i| self.domain.binary_search(i).is_err()) {
            return Err(PolyError::NotASubcomplex);
        }
        let values = sub.iter().filter_map(|&i| self.values.get(&i).map(|p| (i, p.clone()))).collect();
        Ok(PolyFun { space: self.space.clone(), domain: sub.to_vec(), values, bound: self.bound })
    }

    /// `f*` along a simplicial vertex map `f: source → space`, defined on all of `source`.
    pub fn pullback(&self, source: Arc<GSimplicialComplex>, f: &[usize]) -> Result<PolyFun, PolyError> {
        let mut values = BTreeMap::new();
        for i in 0..source.len() {
            let s = source.simplex(i);
            let mut img: Vec<usize> = s.iter().map(|&v| f[v]).collect();
            img.sort_unstable();
            img.dedup();
            let j = self.space.index_of(&img).filter(|j| self.domain.binary_search(j).is_ok()).ok_or(PolyError::UnknownSimplex(img.clone()))?;
            let map: Vec<usize> = s.iter().map(|&v| img.binary_search(&f[v]).expect("present")).collect();
            let p = self.value(j).pull(&map);
            if !p.is_zero() {
                values.insert(i, p);
            }
        }
        let domain = source.all();
        Ok(PolyFun { space: source, domain, values, bound: self.bound })
    }

    /// `g·φ = (g⁻¹)*φ` for the vertex action of the space.
    pub fn translate(&self, g: Elem) -> Result<PolyFun, PolyError> {
        let act = self.space.action().expect("space carries an action");
        let ginv = act.group().inv(g);
        let out = self.pullback(self.space.clone(), act.at(ginv))?;
        Ok(PolyFun { domain: self.domain.clone(), ..out.restrict(&self.domain)? })
    }

    /// supp φ = ⟨{σ : φ(σ) ≠ 0}⟩.
    pub fn support(&self) -> SimplexSet {
        generate(&self.space, self.nonzero())
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|(&i, p)| format!("{:?}: {p}", self.space.simplex(i))).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Extends `phi` (defined on a subcomplex `Y`) to all of its complex: zero on the
/// link of `K = supp φ`, filled on `cSt(K)` by increasing dimension, zero elsewhere.
pub fn extend(phi: &PolyFun) -> Result<PolyFun, PolyError> {
    let x = phi.space.clone();
    if !is_subcomplex(&x, &phi.domain) {
        return Err(PolyError::NotASubcomplex);
    }
    let k = phi.support();
    let ops = subcomplex_ops(&x, &k).expect("support lies in the complex");
    let mut values: BTreeMap<usize, Poly> = phi.values.clone();
    let mut known: Vec<bool> = vec![false; x.len()];
    for &i in phi.domain.iter().chain(&ops.link) {
        known[i] = true;
    }
    for &s in &ops.closed_star {
        if known[s] {
            continue;
        }
        let faces = x.faces(s);
        let v = if faces.is_empty() {
            Poly::zero(0)
        } else {
            let ys: Vec<Poly> = faces.iter().map(|&f| values.get(&f).cloned().unwrap_or_else(|| Poly::zero(x.dim_of(f)))).collect();
            fill_boundary(&ys)
        };
        known[s] = true;
        if !v.is_zero() {
            values.insert(s, v);
        }
    }
    let out = PolyFun { space: x.clone(), domain: x.all(), values, bound: phi.bound };
    out.check_bound()?;
    out.validate()?;
    Ok(out)
}

/// Checks the postconditions of an extension: `ψ|_Y = φ`, `supp ψ ⊂ cSt(supp φ)`, `ψ|_li = 0`.
pub fn check_extension(phi: &PolyFun, psi: &PolyFun) -> Result<(), String> {
    let x = &psi.space;
    if psi.restrict(&phi.domain).map_err(|e| e.to_string())?.values != phi.values {
        return Err("restriction to Y differs from φ".into());
    }
    let ops = subcomplex_ops(x, &phi.support()).map_err(|e| e.to_string())?;
    if let Some(s) = psi.support().iter().find(|s| ops.closed_star.binary_search(s).is_err()) {
        return Err(format!("support leaves the closed star at {:?}", x.simplex(*s)));
    }
    if let Some(s) = ops.link.iter().find(|s| psi.values.contains_key(s)) {
        return Err(format!("nonzero on the link at {:?}", x.simplex(*s)));
    }
    psi.validate().map_err(|e| e.to_string())
}

/// μ with μ·φᵢ = φᵢ: the extension of the constant 1 on the union of supports.
pub fn s_unit_witness(space: &Arc<GSimplicialComplex>, elems: &[PolyFun], bound: u32) -> Result<PolyFun, PolyError> {
    let k = generate(space, elems.iter().flat_map(|e| e.support()));
    let one = PolyFun::one(space.clone(), k, bound);
    let mu = extend(&one)?;
    for e in elems {
        if mu.mul(e)? != *e {
            return Err(PolyError::Identity("μ·φ ≠ φ".into()));
        }
    }
    Ok(mu)
}

/// The product of the barycentric coordinates of `σ`, extended from ⟨σ⟩.
pub fn separating_function(space: &Arc<GSimplicialComplex>, sigma: usize, bound: u32) -> Result<PolyFun, PolyError> {
    let n = space.dim_of(sigma);
    let prod = (0..=n).fold(Poly::one(n), |acc, i| &acc * &Poly::coordinate(n, i));
    let closure = space.closure_of(sigma);
    let phi = PolyFun::from_values(space.clone(), closure, vec![(space.simplex(sigma).to_vec(), prod)], bound)?;
    let psi = extend(&phi)?;
    debug_assert!(!psi.value(sigma).is_zero());
    Ok(psi)
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=degree {
        for mut rest in monomials(nvars - 1, degree - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A lattice basis of ℤ^(X) within degree `d`, optionally restricted to functions
/// supported in a subcomplex. The basis is in echelon form over unknowns ordered by
/// descending degree, so `F_k = span{basis elements of level ≤ k}` for every `k ≤ d`.
#[derive(Clone, Debug)]
pub struct PolyLattice {
    space: Arc<GSimplicialComplex>,
    domain: SimplexSet,
    degree: u32,
    unknowns: Vec<(usize, Vec<u32>)>,
    unknown_index: BTreeMap<(usize, Vec<u32>), usize>,
    columns: Vec<ZVec>,
    pivots: Vec<usize>,
    basis: Vec<PolyFun>,
    levels: Vec<u32>,
}

impl PolyLattice {
    pub fn new(space: Arc<GSimplicialComplex>, degree: u32) -> Self {
        let all = space.all();
        Self::build(space, all, None, degree)
    }

    /// `I(Y)` within degree `d`: functions on `space` supported in `y`.
    pub fn supported_in(space: Arc<GSimplicialComplex>, y: &[usize], degree: u32) -> Self {
        let all = space.all();
        Self::build(space, all, Some(y), degree)
    }

    pub fn on_domain(space: Arc<GSimplicialComplex>, domain: SimplexSet, degree: u32) -> Self {
        Self::build(space, domain, None, degree)
    }

    fn build(space: Arc<GSimplicialComplex>, domain: SimplexSet, support: Option<&[usize]>, degree: u32) -> Self {
        let allowed = |i: usize| support.is_none_or(|y| y.binary_search(&i).is_ok());
        let mut unknowns: Vec<(usize, Vec<u32>)> = domain
            .iter()
            .filter(|&&i| allowed(i))
            .flat_map(|&i| monomials(space.dim_of(i), degree).into_iter().map(move |m| (i, m)))
            .collect();
        unknowns.sort_by(|a, b| b.1.iter().sum::<u32>().cmp(&a.1.iter().sum::<u32>()).then_with(|| a.cmp(b)));
        let unknown_index: BTreeMap<(usize, Vec<u32>), usize> = unknowns.iter().cloned().enumerate().map(|(k, u)| (u, k)).collect();
        let mut rows: BTreeMap<(usize, usize, Vec<u32>), usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, Z)> = Vec::new();
        let mut row_of = |key: (usize, usize, Vec<u32>)| {
            let n = rows.len();
            *rows.entry(key).or_insert(n)
        };
        for &s in &domain {
            let faces = space.faces(s);
            for (k, &f) in faces.iter().enumerate() {
                if allowed(s) {
                    for m in monomials(space.dim_of(s), degree) {
                        let mono = Poly::from_exponents(space.dim_of(s), &[(m.clone(), Z::one())]).expect("sized");
                        for (e, c) in mono.face(k).terms() {
                            let r = row_of((s, k, e.to_vec()));
                            entries.push((r, unknown_index[&(s, m.clone())], c.clone()));
                        }
                    }
                }
                if allowed(f) {
                    for m in monomials(space.dim_of(f), degree) {
                        let r = row_of((s, k, m.clone()));
                        entries.push((r, unknown_index[&(f, m)], -Z::one()));
                    }
                }
            }
        }
        let mut dense: DenseMatrix<Z> = DenseMatrix::zeros(rows.len(), unknowns.len());
        for (r, c, x) in entries {
            let old = dense.get(r, c).clone();
            dense.set(r, c, old + x);
        }
        let kernel = if rows.is_empty() {
            (0..unknowns.len()).map(ZVec::unit).collect()
        } else {
            dense.kernel()
        };
        let columns = if kernel.is_empty() {
            Vec::new()
        } else {
            DenseMatrix::from_columns(unknowns.len(), &kernel).image()
        };
        let pivots: Vec<usize> = columns.iter().map(|c| c.iter().next().expect("nonzero").0).collect();
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        let levels = pivots.iter().map(|&p| unknowns[p].1.iter().sum()).collect();
        let mut lat = PolyLattice {
            space,
            domain,
            degree,
            unknowns,
            unknown_index,
            columns,
            pivots,
            basis: Vec::new(),
            levels,
        };
        lat.basis = lat.columns.iter().map(|c| lat.decode(c)).collect();
        lat
    }

    fn decode(&self, v: &ZVec) -> PolyFun {
        let mut values: BTreeMap<usize, Poly> = BTreeMap::new();
        for (k, x) in v.iter() {
            let (s, e) = &self.unknowns[k];
            let p = values.entry(*s).or_insert_with(|| Poly::zero(self.space.dim_of(*s)));
            p.add_term(e.clone(), x.clone());
        }
        values.retain(|_, p| !p.is_zero());
        PolyFun { space: self.space.clone(), domain: self.domain.clone(), values, bound: self.degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[PolyFun] {
        &self.basis
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn space(&self) -> &Arc<GSimplicialComplex> {
        &self.space
    }

    /// Coordinates in the basis, by back substitution; `None` outside the lattice.
    pub fn coordinates(&self, f: &PolyFun) -> Option<ZVec> {
        let mut v: BTreeMap<usize, Z> = BTreeMap::new();
        for (&s, p) in &f.values {
            for (e, c) in p.terms() {
                let k = *self.unknown_index.get(&(s, e.to_vec()))?;
                v.insert(k, c.clone());
            }
        }
        let mut coords = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let p = self.pivots[j];
            let Some(x) = v.get(&p).cloned() else { continue };
            let lead = col.get(p);
            let (q, r) = x.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (k, y) in col.iter() {
                let e = v.entry(k).or_insert_with(Z::zero);
                *e -= &q * y;
                if e.is_zero() {
                    v.remove(&k);
                }
            }
            coords.push((j, q));
        }
        v.is_empty().then(|| ZVec::from_entries(coords))
    }

    pub fn element(&self, coords: &ZVec) -> PolyFun {
        let acc = coords.iter().fold(ZVec::zero(), |acc, (j, x)| acc.add_scaled(&self.columns[j], x));
        self.decode(&acc)
    }
}

/// A based ring with a compatible ℤ^(X)-action, given by one matrix per lattice
/// basis element of ℤ^(X) within degree `d`.
#[derive(Clone, Debug)]
pub struct ProperStructure {
    ring: Arc<BasedRing>,
    lattice: PolyLattice,
    act: Vec<ZMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub within_degree: u32,
    pub rank: usize,
    pub invariants: Vec<Z>,
    /// The span is all of A.
    pub full: bool,
}

impl ProperStructure {
    /// Validates `c·(ab) = (c·a)b = a(c·b)`, module associativity on products of
    /// generators that stay in the lattice, and equivariance when both sides carry actions.
    pub fn new(ring: Arc<BasedRing>, lattice: PolyLattice, act: Vec<ZMatrix>) -> Result<Self, PolyError> {
        let n = ring.rank();
        if act.len() != lattice.rank() || act.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(PolyError::Identity(format!("need {} matrices of size {n}", lattice.rank())));
        }
        let p = ProperStructure { ring, lattice, act };
        p.check_bimodule()?;
        p.check_associative()?;
        p.check_equivariant()?;
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<BasedRing> {
        &self.ring
    }

    pub fn lattice(&self) -> &PolyLattice {
        &self.lattice
    }

    pub fn act_matrix(&self, k: usize) -> &ZMatrix {
        &self.act[k]
    }

    /// Matrix of `a ↦ c·a` for any `c` in the lattice.
    pub fn act_by(&self, c: &PolyFun) -> Result<ZMatrix, PolyError> {
        let coords = self.lattice.coordinates(c).ok_or(PolyError::OutsideLattice(self.lattice.degree))?;
        let n = self.ring.rank();
        let cols = (0..n)
            .map(|j| coords.iter().fold(ZVec::zero(), |acc, (k, x)| acc.add_scaled(self.act[k].column(j), x)))
            .collect();
        Ok(ZMatrix::from_columns(n, cols).expect("square"))
    }

    fn check_bimodule(&self) -> Result<(), PolyError> {
        let r = &self.ring;
        for (k, m) in self.act.iter().enumerate() {
            for a in 0..r.rank() {
                for b in 0..r.rank() {
                    let c_ab = m.apply(r.basis_mul(a, b));
                    let ca_b = r.mul(m.column(a), &ZVec::unit(b));
                    let a_cb = r.mul(&ZVec::unit(a), m.column(b));
                    if c_ab != ca_b || c_ab != a_cb {
                        return Err(PolyError::Identity(format!(
                            "generator {k} on ({}, {}): c·(ab), (c·a)b, a(c·b) disagree",
                            r.label(a),
                            r.label(b)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), PolyError> {
        let basis = self.lattice.basis();
        for k in 0..basis.len() {
            for l in k..basis.len() {
                let Ok(prod) = basis[k].mul(&basis[l]) else { continue };
                let Ok(m) = self.act_by(&prod) else { continue };
                if self.act[k].mul(&self.act[l]).expect("square") != m {
                    return Err(PolyError::Identity(format!("(c{k}·c{l})·a ≠ c{k}·(c{l}·a)")));
                }
            }
        }
        Ok(())
    }

    fn check_equivariant(&self) -> Result<(), PolyError> {
        let (Some(ra), Some(xa)) = (self.ring.action(), self.lattice.space.action()) else { return Ok(()) };
        for (g, mg) in ra.iter() {
            if xa.get(g).is_none() {
                continue;
            }
            for (k, c) in self.lattice.basis().iter().enumerate() {
                let gc = c.translate(g)?;
                let lhs = mg.mul(&self.act[k]).expect("square");
                let rhs = self.act_by(&gc)?.mul(mg).expect("square");
                if lhs != rhs {
                    return Err(PolyError::Identity(format!("g(c{k}·a) ≠ g(c{k})·g(a) for g = {}", ra.group().label(g))));
                }
            }
        }
        Ok(())
    }

    fn span(&self, mats: &[ZMatrix]) -> SpanReport {
        let n = self.ring.rank();
        let cols: Vec<ZVec> = mats.iter().flat_map(|m| m.columns().iter().cloned()).collect();
        let big = ZMatrix::from_columns(n, cols).expect("rows agree");
        let s = smith_summary(&big);
        SpanReport { within_degree: self.lattice.degree, rank: s.rank, full: s.rank == n && s.invariants.is_empty(), invariants: s.invariants }
    }

    /// Whether the ℤ-span of all `c·a` is `A`.
    pub fn fullness(&self) -> SpanReport {
        self.span(&self.act)
    }

    /// `I(Y)` within the lattice degree.
    pub fn ideal(&self, y: &[usize]) -> PolyLattice {
        PolyLattice::supported_in(self.lattice.space.clone(), y, self.lattice.degree)
    }

    /// `A(Y) = I(Y)·A`.
    pub fn a_of(&self, y: &[usize]) -> Result<SpanReport, PolyError> {
        let ideal = self.ideal(y);
        let mats = ideal.basis().iter().map(|c| self.act_by(&c.clone().with_domain(self.lattice.domain.clone()))).collect::<Result<Vec<_>, _>>()?;
        Ok(self.span(&mats))
    }

    /// The induced ℤ^(Y)-structure along a simplicial vertex map `f: X → Y`.
    pub fn pushforward(&self, target: Arc<GSimplicialComplex>, f: &[usize]) -> Result<ProperStructure, PolyError> {
        let lat = PolyLattice::new(target, self.lattice.degree);
        let act = lat
            .basis()
            .iter()
            .map(|c| self.act_by(&c.pullback(self.lattice.space.clone(), f)?))
            .collect::<Result<Vec<_>, _>>()?;
        ProperStructure::new(self.ring.clone(), lat, act)
    }
}

impl PolyFun {
    fn with_domain(mut self, domain: SimplexSet) -> Self {
        self.domain = domain;
        self
    }
}

/// ℤ^(X)·ℤ^(X) = ℤ^(X) within degree `d`, witnessed by s-units on each lattice generator.
pub fn self_proper(space: &Arc<GSimplicialComplex>, degree: u32) -> Result<bool, PolyError> {
    let lat = PolyLattice::new(space.clone(), degree);
    for c in lat.basis() {
        let mu = s_unit_witness(space, std::slice::from_ref(c), degree.max(DEFAULT_DEGREE_BOUND))?;
        if mu.mul(c)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A seeded complex with at most `max_vertices` vertices and dimension at most `max_dim`.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize, max_dim: usize) -> GSimplicialComplex {
    let nv = rng.gen_range(1..=max_vertices);
    let nf = rng.gen_range(1..=5);
    let mut facets: Vec<Vec<usize>> = (0..nf)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(nv));
            let mut verts: Vec<usize> = (0..nv).collect();
            for i in 0..size {
                let j = rng.gen_range(i..nv);
                verts.swap(i, j);
            }
            verts.truncate(size);
            verts
        })
        .collect();
    for v in 0..nv {
        facets.push(vec![v]);
    }
    GSimplicialComplex::build(nv, &facets, None).expect("random facets are valid")
}

/// Random subcomplex `Y ⊂ X` and a random φ on `Y` of degree ≤ `degree`, built from
/// products of vertex coordinates.
pub fn random_function(rng: &mut impl Rng, space: &Arc<GSimplicialComplex>, degree: u32) -> PolyFun {
    let picks: Vec<usize> = (0..space.len()).filter(|_| rng.gen_bool(0.3)).collect();
    let mut y = generate(space, picks);
    if y.is_empty() {
        y = space.closure_of(rng.gen_range(0..space.len()));
    }
    let verts: Vec<usize> = y.iter().filter(|&&i| space.dim_of(i) == 0).map(|&i| space.simplex(i)[0]).collect();
    let bound = DEFAULT_DEGREE_BOUND.max(degree);
    let mut phi = PolyFun::zero(space.clone(), y.clone(), bound);
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(0..=degree);
        let mut term = PolyFun::one(space.clone(), y.clone(), bound).scale(&Z::from(rng.gen_range(-3i64..=3)));
        for _ in 0..d {
            let v = verts[rng.gen_range(0..verts.len())];
            term = term.mul(&PolyFun::vertex_coordinate(space.clone(), y.clone(), v, bound)).expect("degree within bound");
        }
        phi = phi.add(&term).expect("same domain");
    }
    phi
}

/// Solves for integer coordinates of `target` in the span of `gens` (columns).
pub fn solve_in_span(gens: &[ZVec], rows: usize, target: &ZVec) -> Option<ZVec> {
    let m = DenseMatrix::from_columns(rows, gens);
    match m.solve(&target.to_dense(rows)) {
        Solve::Solution(x) => Some(SparseVec::from_dense(&x)),
        _ => None,
    }
}
