use std::collections::{BTreeMap, BTreeSet, HashMap};

use equihom_linalg::{ChainComplexZ, ZMatrix, ZVec, Z};
use num_traits::One;
use thiserror::Error;

use crate::groups::{Action, Elem, GroupError, GroupRef, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet {0:?} is empty or references an unknown vertex")]
    BadFacet(Vec<usize>),
    #[error("action of {0} is not a permutation of the vertices")]
    NotAPermutation(String),
    #[error("action of {element} does not map simplex {simplex:?} to a simplex")]
    NotSimplicial { element: String, simplex: Vec<usize> },
    #[error("action is not admissible: {element} stabilizes {simplex:?} without fixing it; subdivide first")]
    NotAdmissible { element: String, simplex: Vec<usize> },
    #[error("unknown simplex {0:?}")]
    UnknownSimplex(Vec<usize>),
    #[error("not a family of subgroups: {0}")]
    NotAFamily(String),
    #[error("generator images are inconsistent with the group law")]
    InconsistentGenerators,
    #[error("complex has no group action")]
    MissingAction,
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type VertexAction = Action<Vec<usize>>;
/// Sorted simplex indices of a complex.
pub type SimplexSet = Vec<usize>;

/// A finite ordered simplicial complex, optionally with a group acting by vertex permutations.
/// Simplices are sorted vertex lists, enumerated by dimension and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    action: Option<VertexAction>,
}

impl GSimplicialComplex {
    /// Validated complex; a non-admissible action is rejected.
    pub fn build(vertex_count: usize, facets: &[Vec<usize>], action: Option<VertexAction>) -> Result<Self, ComplexError> {
        let x = Self::simplicial(vertex_count, facets, action)?;
        x.check_admissible()?;
        Ok(x)
    }

    /// As [`build`](Self::build) but only requires the action to be simplicial.
    pub fn simplicial(vertex_count: usize, facets: &[Vec<usize>], action: Option<VertexAction>) -> Result<Self, ComplexError> {
        let mut all = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::BadFacet(f));
            }
            let k = f.len();
            for mask in 1u32..(1 << k) {
                all.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
            }
        }
        let x = Self::from_simplex_set(vertex_count, all, None);
        if let Some(a) = &action {
            x.check_simplicial(a)?;
        }
        Ok(GSimplicialComplex { action, ..x })
    }

    fn from_simplex_set(vertex_count: usize, all: BTreeSet<Vec<usize>>, action: Option<VertexAction>) -> Self {
        let mut simplices: Vec<Vec<usize>> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        GSimplicialComplex { vertex_count, simplices, index, action }
    }

    fn check_simplicial(&self, a: &VertexAction) -> Result<(), ComplexError> {
        let group = a.group();
        for (g, p) in a.iter() {
            let mut seen = vec![false; self.vertex_count];
            if p.len() != self.vertex_count || p.iter().any(|&v| v >= self.vertex_count || std::mem::replace(&mut seen[v], true)) {
                return Err(ComplexError::NotAPermutation(group.label(g).into()));
            }
            for s in &self.simplices {
                let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
                img.sort_unstable();
                if !self.index.contains_key(&img) {
                    return Err(ComplexError::NotSimplicial { element: group.label(g).into(), simplex: s.clone() });
                }
            }
        }
        for (g, pg) in a.iter() {
            for (h, ph) in a.iter() {
                let gh = a.at(group.mul(g, h));
                if (0..self.vertex_count).any(|v| gh[v] != pg[ph[v]]) {
                    return Err(ComplexError::InconsistentGenerators);
                }
            }
        }
        Ok(())
    }

    pub fn check_admissible(&self) -> Result<(), ComplexError> {
        let Some(a) = &self.action else { return Ok(()) };
        for (g, p) in a.iter() {
            for s in &self.simplices {
                let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
                img.sort_unstable();
                if img == *s && s.iter().any(|&v| p[v] != v) {
                    return Err(ComplexError::NotAdmissible { element: a.group().label(g).into(), simplex: s.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    /// -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.last().map_or(-1, |s| s.len() as isize - 1)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn action(&self) -> Option<&VertexAction> {
        self.action.as_ref()
    }

    pub fn with_action(self, action: Option<VertexAction>) -> Result<Self, ComplexError> {
        if let Some(a) = &action {
            self.check_simplicial(a)?;
        }
        let x = GSimplicialComplex { action, ..self };
        x.check_admissible()?;
        Ok(x)
    }

    /// Simplices of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in &self.simplices {
            if f.len() < s.len() {
                f.resize(s.len(), 0);
            }
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn facets(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let s = &self.simplices[i];
                !(0..self.vertex_count).any(|v| {
                    if s.binary_search(&v).is_ok() {
                        return false;
                    }
                    let mut t = s.clone();
                    t.push(v);
                    t.sort_unstable();
                    self.index.contains_key(&t)
                })
            })
            .collect()
    }

    /// `d_0, …, d_n` of simplex `i` as simplex indices (empty for vertices).
    pub fn faces(&self, i: usize) -> Vec<usize> {
        let s = &self.simplices[i];
        if s.len() == 1 {
            return Vec::new();
        }
        (0..s.len())
            .map(|k| {
                let mut t = s.clone();
                t.remove(k);
                self.index[&t]
            })
            .collect()
    }

    /// All simplices of `⟨σ⟩`.
    pub fn closure_of(&self, i: usize) -> SimplexSet {
        let s = &self.simplices[i];
        let k = s.len();
        let mut out: Vec<usize> = (1u32..(1 << k))
            .map(|mask| self.index[&s.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>()])
            .collect();
        out.sort_unstable();
        out
    }

    /// Image of a simplex together with the sign of the permutation that re-sorts it.
    pub fn act_simplex(&self, g: Elem, i: usize) -> (usize, i8) {
        let p = self.action.as_ref().expect("complex carries an action").at(g);
        self.map_simplex(|v| p[v], i)
    }

    fn map_simplex(&self, f: impl Fn(usize) -> usize, i: usize) -> (usize, i8) {
        let img: Vec<usize> = self.simplices[i].iter().map(|&v| f(v)).collect();
        let mut sorted = img.clone();
        sorted.sort_unstable();
        let mut sign = 1i8;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] > img[b] {
                    sign = -sign;
                }
            }
        }
        (self.index[&sorted], sign)
    }

    /// Setwise stabilizer of a simplex.
    pub fn stabilizer(&self, i: usize) -> Result<Subgroup, ComplexError> {
        let a = self.action.as_ref().ok_or(ComplexError::MissingAction)?;
        let elems: Vec<Elem> = a.domain().elements().iter().copied().filter(|&g| self.act_simplex(g, i).0 == i).collect();
        Ok(a.group().subgroup(elems)?)
    }

    /// Oriented simplicial chains on a downward-closed simplex set.
    pub fn chain_complex(&self, sub: &[usize]) -> ChainComplexZ {
        let pos: HashMap<usize, usize> = sub.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let top = sub.iter().map(|&i| self.dim_of(i)).max();
        let Some(top) = top else { return ChainComplexZ::new(0, vec![0], vec![]).expect("empty") };
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for &i in sub {
            by_dim[self.dim_of(i)].push(i);
        }
        let local: Vec<HashMap<usize, usize>> = by_dim.iter().map(|d| d.iter().enumerate().map(|(k, &i)| (i, k)).collect()).collect();
        let ranks = by_dim.iter().map(Vec::len).collect();
        let boundaries = (1..=top)
            .map(|n| {
                let cols = by_dim[n]
                    .iter()
                    .map(|&i| {
                        ZVec::from_entries(self.faces(i).into_iter().enumerate().map(|(k, f)| {
                            debug_assert!(pos.contains_key(&f));
                            (local[n - 1][&f], Z::from(if k % 2 == 0 { 1 } else { -1 }))
                        }))
                    })
                    .collect();
                ZMatrix::from_columns(by_dim[n - 1].len(), cols).expect("faces in range")
            })
            .collect();
        ChainComplexZ::new(0, ranks, boundaries).expect("shapes agree")
    }

    pub fn all(&self) -> SimplexSet {
        (0..self.len()).collect()
    }

    /// The complex spanned by a downward-closed simplex set, vertices renumbered in order.
    pub fn restrict_to(&self, sub: &[usize]) -> GSimplicialComplex {
        let verts: Vec<usize> = sub.iter().filter(|&&i| self.dim_of(i) == 0).map(|&i| self.simplices[i][0]).collect();
        let renum: HashMap<usize, usize> = verts.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let all = sub.iter().map(|&i| self.simplices[i].iter().map(|v| renum[v]).collect()).collect();
        Self::from_simplex_set(verts.len(), all, None)
    }
}

/// Vertex permutations for every group element from images of `group.standard_generators()`.
pub fn action_from_generators(group: &GroupRef, images: &[Vec<usize>], vertex_count: usize) -> Result<VertexAction, ComplexError> {
    let gens = group.standard_generators();
    if gens.len() != images.len() {
        return Err(ComplexError::Group(GroupError::InvalidAction(format!(
            "{} has {} standard generators, got {} permutations",
            group.name(),
            gens.len(),
            images.len()
        ))));
    }
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; group.order()];
    perms[0] = Some((0..vertex_count).collect());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let px = perms[x].clone().expect("visited");
        for (&g, pg) in gens.iter().zip(images) {
            if pg.len() != vertex_count || pg.iter().any(|&v| v >= vertex_count) {
                return Err(ComplexError::NotAPermutation(group.label(g).into()));
            }
            let y = group.mul(g, x);
            let py: Vec<usize> = px.iter().map(|&v| pg[v]).collect();
            match &perms[y] {
                Some(existing) if *existing != py => return Err(ComplexError::InconsistentGenerators),
                Some(_) => {}
                None => {
                    perms[y] = Some(py);
                    queue.push_back(y);
                }
            }
        }
    }
    let perms = perms.into_iter().collect::<Option<Vec<_>>>().ok_or(ComplexError::InconsistentGenerators)?;
    Ok(Action::whole(group.clone(), perms)?)
}

/// Barycentric subdivision: vertices are the simplices of `x` (in its order),
/// simplices are chains of proper faces.
pub fn subdivide(x: &GSimplicialComplex) -> GSimplicialComplex {
    let n = x.len();
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for f in x.faces(i) {
            up[f].push(i);
        }
    }
    let mut chains = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        for &j in &up[last] {
            let mut d = c.clone();
            d.push(j);
            stack.push(d);
        }
        chains.insert(c);
    }
    let action = x.action.as_ref().map(|a| a.map(|g, _| (0..n).map(|i| x.act_simplex(g, i).0).collect()));
    GSimplicialComplex::from_simplex_set(n, chains, action)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexOps {
    pub generated: SimplexSet,
    pub star: SimplexSet,
    pub closed_star: SimplexSet,
    pub link: SimplexSet,
}

/// ⟨M⟩, St(M), cSt(M) = ⟨St(M)⟩ and li(M) = cSt(M) \ St(M).
pub fn subcomplex_ops(x: &GSimplicialComplex, m: &[usize]) -> Result<SubcomplexOps, ComplexError> {
    if let Some(&bad) = m.iter().find(|&&i| i >= x.len()) {
        return Err(ComplexError::UnknownSimplex(vec![bad]));
    }
    let generated = generate(x, m.iter().copied());
    let gen_set: BTreeSet<usize> = generated.iter().copied().collect();
    let star: SimplexSet = (0..x.len()).filter(|&t| x.closure_of(t).iter().any(|f| gen_set.contains(f))).collect();
    let closed_star = generate(x, star.iter().copied());
    let star_set: BTreeSet<usize> = star.iter().copied().collect();
    let link = closed_star.iter().copied().filter(|i| !star_set.contains(i)).collect();
    Ok(SubcomplexOps { generated, star, closed_star, link })
}

/// ⟨M⟩
pub fn generate(x: &GSimplicialComplex, m: impl IntoIterator<Item = usize>) -> SimplexSet {
    let set: BTreeSet<usize> = m.into_iter().flat_map(|i| x.closure_of(i)).collect();
    set.into_iter().collect()
}

pub fn is_subcomplex(x: &GSimplicialComplex, m: &[usize]) -> bool {
    let set: BTreeSet<usize> = m.iter().copied().collect();
    m.iter().all(|&i| x.faces(i).iter().all(|f| set.contains(f)))
}

/// Simplices fixed pointwise by every element of `h`.
pub fn fixed_subcomplex(x: &GSimplicialComplex, h: &Subgroup) -> Result<SimplexSet, ComplexError> {
    let a = x.action.as_ref().ok_or(ComplexError::MissingAction)?;
    if !h.is_subset_of(a.domain()) {
        return Err(ComplexError::Group(GroupError::NotASubgroup("subgroup does not act".into())));
    }
    Ok((0..x.len()).filter(|&i| h.elements().iter().all(|&g| x.simplex(i).iter().all(|&v| a.at(g)[v] == v))).collect())
}

/// X^H as a complex in its own right.
pub fn fixed_points(x: &GSimplicialComplex, h: &Subgroup) -> Result<GSimplicialComplex, ComplexError> {
    Ok(x.restrict_to(&fixed_subcomplex(x, h)?))
}

/// G ×_H X: `|G/H|` tagged copies of `x` with vertex `(coset c, v)` at `c·n + v`.
/// `x` carries an action of `h` (as an action of the ambient group restricted to `h`) or none (trivial).
pub fn induce_space(group: &GroupRef, h: &Subgroup, x: &GSimplicialComplex) -> Result<GSimplicialComplex, ComplexError> {
    let nv = x.vertex_count;
    let hact: VertexAction = match &x.action {
        Some(a) => {
            if !a.same_group(group) || a.domain() != h {
                return Err(ComplexError::Group(GroupError::InvalidAction("space must carry an action of the subgroup".into())));
            }
            a.clone()
        }
        None => Action::new(group.clone(), h.clone(), vec![(0..nv).collect(); h.order()])?,
    };
    let cosets = group.cosets(h);
    let k = cosets.len();
    let all: BTreeSet<Vec<usize>> = (0..k).flat_map(|c| x.simplices.iter().map(move |s| s.iter().map(|v| c * nv + v).collect())).collect();
    let perms = group
        .elements()
        .map(|g| {
            let mut p = vec![0; k * nv];
            for c in 0..k {
                let (c2, hh) = cosets.decompose(group, group.mul(g, cosets.rep(c)));
                for v in 0..nv {
                    p[c * nv + v] = c2 * nv + hact.at(hh)[v];
                }
            }
            p
        })
        .collect();
    let out = GSimplicialComplex::from_simplex_set(k * nv, all, Some(Action::whole(group.clone(), perms)?));
    out.check_admissible()?;
    Ok(out)
}

/// Checks closure under conjugation and subgroups, then that every simplex stabilizer is in `family`.
pub fn family_check(x: &GSimplicialComplex, family: &[Subgroup]) -> Result<bool, ComplexError> {
    let a = x.action.as_ref().ok_or(ComplexError::MissingAction)?;
    let group = a.group();
    validate_family(group, family)?;
    for i in 0..x.len() {
        if !family.contains(&x.stabilizer(i)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn validate_family(group: &GroupRef, family: &[Subgroup]) -> Result<(), ComplexError> {
    if family.is_empty() {
        return Err(ComplexError::NotAFamily("empty".into()));
    }
    let all = group.all_subgroups();
    for h in family {
        for g in group.elements() {
            if !family.contains(&group.conjugate_subgroup(g, h)) {
                return Err(ComplexError::NotAFamily(format!("not closed under conjugation by {}", group.label(g))));
            }
        }
        for k in &all {
            if k.is_subset_of(h) && !family.contains(k) {
                return Err(ComplexError::NotAFamily("not closed under subgroups".into()));
            }
        }
    }
    Ok(())
}

/// Smallest family containing the given subgroups.
pub fn family_generated(group: &GroupRef, gens: &[Subgroup]) -> Vec<Subgroup> {
    let conj: Vec<Subgroup> = gens.iter().flat_map(|h| group.elements().map(move |g| group.conjugate_subgroup(g, h))).collect();
    group.all_subgroups().into_iter().filter(|k| conj.iter().any(|h| k.is_subset_of(h))).collect()
}

/// Pushout of finite G-sets `B ← A → X` along an injective `i`, as `X ⊔ (B \ i(A))`.
/// Returns the pushout action and the maps from `X` and `B`.
pub fn pushout_gsets(
    group: &GroupRef,
    b_act: &[Vec<usize>],
    x_act: &[Vec<usize>],
    i: &[usize],
    f: &[usize],
) -> (Vec<Vec<usize>>, Vec<usize>, Vec<usize>) {
    let nx = x_act.first().map_or(0, Vec::len);
    let nb = b_act.first().map_or(0, Vec::len);
    let mut pre: BTreeMap<usize, usize> = BTreeMap::new();
    for (ai, &bi) in i.iter().enumerate() {
        pre.insert(bi, ai);
    }
    let mut b_map = vec![0; nb];
    let mut next = nx;
    for (b, slot) in b_map.iter_mut().enumerate() {
        *slot = match pre.get(&b) {
            Some(&a) => f[a],
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let x_map: Vec<usize> = (0..nx).collect();
    let act = group
        .elements()
        .map(|g| {
            let mut p = vec![0; next];
            p[..nx].copy_from_slice(&x_act[g][..nx]);
            for b in 0..nb {
                if !pre.contains_key(&b) {
                    p[b_map[b]] = b_map[b_act[g][b]];
                }
            }
            p
        })
        .collect();
    (act, x_map, b_map)
}

/// Points fixed by the whole group.
pub fn fixed_set(act: &[Vec<usize>]) -> Vec<usize> {
    let n = act.first().map_or(0, Vec::len);
    (0..n).filter(|&s| act.iter().all(|p| p[s] == s)).collect()
}

/// Euler characteristic from the f-vector.
pub fn euler_characteristic(x: &GSimplicialComplex) -> i64 {
    x.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Chain map `C(X^K) → C(X^H)` induced by `v ↦ a·v`; oriented signs account for reordering.
pub fn translation_chain_map(x: &GSimplicialComplex, a: Elem, from: &[usize], to: &[usize]) -> Vec<ZMatrix> {
    let top = from.iter().chain(to).map(|&i| x.dim_of(i)).max().unwrap_or(0);
    let by_dim = |s: &[usize]| {
        let mut v: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for &i in s {
            v[x.dim_of(i)].push(i);
        }
        v
    };
    let (fd, td) = (by_dim(from), by_dim(to));
    (0..=top)
        .map(|n| {
            let pos: HashMap<usize, usize> = td[n].iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let cols = fd[n]
                .iter()
                .map(|&i| {
                    let (j, s) = x.act_simplex(a, i);
                    ZVec::single(pos[&j], if s > 0 { Z::one() } else { -Z::one() })
                })
                .collect();
            ZMatrix::from_columns(td[n].len(), cols).expect("image lies in target")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, GSet};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn c2() -> GroupRef {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    fn boundary_tetrahedron() -> GSimplicialComplex {
        GSimplicialComplex::build(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], None).unwrap()
    }

    fn hexagon_with_swap() -> GSimplicialComplex {
        let g = c2();
        let tri = GSimplicialComplex::simplicial(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], Some(action_from_generators(&g, &[vec![1, 0, 2]], 3).unwrap()))
            .unwrap();
        assert!(!tri.is_admissible());
        subdivide(&tri)
    }

    #[test]
    fn build_examples() {
        let x = boundary_tetrahedron();
        assert_eq!(x.len(), 14);
        assert_eq!(x.f_vector(), vec![4, 6, 4]);
        let g = c2();
        let swap = action_from_generators(&g, &[vec![1, 0]], 2).unwrap();
        assert!(matches!(
            GSimplicialComplex::build(2, &[vec![0, 1]], Some(swap.clone())),
            Err(ComplexError::NotAdmissible { .. })
        ));
        GSimplicialComplex::build(2, &[vec![0], vec![1]], Some(swap)).unwrap();
        assert!(matches!(GSimplicialComplex::build(2, &[vec![0, 2]], None), Err(ComplexError::BadFacet(_))));
    }

    #[test]
    fn subdivision_examples() {
        let edge = GSimplicialComplex::build(2, &[vec![0, 1]], None).unwrap();
        let s = subdivide(&edge);
        assert_eq!(s.f_vector(), vec![3, 2]);
        let hex = hexagon_with_swap();
        assert_eq!(hex.f_vector(), vec![6, 6]);
        assert!(hex.is_admissible());
        let point = GSimplicialComplex::build(1, &[vec![0]], None).unwrap();
        assert_eq!(subdivide(&point).f_vector(), vec![1]);
    }

    #[test]
    fn star_link_examples() {
        let path = GSimplicialComplex::build(3, &[vec![0, 1], vec![1, 2]], None).unwrap();
        let v1 = path.index_of(&[1]).unwrap();
        let ops = subcomplex_ops(&path, &[v1]).unwrap();
        let names = |s: &[usize]| s.iter().map(|&i| path.simplex(i).to_vec()).collect::<Vec<_>>();
        assert_eq!(names(&ops.star), vec![vec![1], vec![0, 1], vec![1, 2]]);
        assert_eq!(ops.closed_star, path.all());
        assert_eq!(names(&ops.link), vec![vec![0], vec![2]]);
        let all = subcomplex_ops(&path, &path.all()).unwrap();
        assert_eq!(all.star, path.all());
        assert!(all.link.is_empty());
        let edge = GSimplicialComplex::build(2, &[vec![0, 1]], None).unwrap();
        let e = subcomplex_ops(&edge, &[0]).unwrap();
        assert_eq!(e.closed_star, edge.all());
        assert_eq!(e.link, vec![1]);
    }

    #[test]
    fn fixed_point_examples() {
        let hex = hexagon_with_swap();
        let g = c2();
        let fixed = fixed_subcomplex(&hex, &g.whole()).unwrap();
        // vertex 2 is v2 and vertex 3 is the barycenter of the edge {v0, v1}
        let verts: Vec<_> = fixed.iter().map(|&i| hex.simplex(i).to_vec()).collect();
        assert_eq!(verts, vec![vec![2], vec![3]]);
        assert_eq!(fixed_points(&hex, &g.trivial_subgroup()).unwrap().len(), hex.len());
        let free = GSimplicialComplex::build(2, &[vec![0], vec![1]], Some(action_from_generators(&g, &[vec![1, 0]], 2).unwrap())).unwrap();
        assert!(fixed_points(&free, &g.whole()).unwrap().is_empty());
    }

    #[test]
    fn induction_examples() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = s3.generated([1]);
        let point = GSimplicialComplex::build(1, &[vec![0]], None).unwrap();
        let ind = induce_space(&s3, &h, &point).unwrap();
        assert_eq!(ind.vertex_count(), 3);
        assert_eq!(ind.action().unwrap().at(1)[0], 0);
        let g = c2();
        let edge = GSimplicialComplex::build(2, &[vec![0, 1]], None).unwrap();
        let two = induce_space(&g, &g.trivial_subgroup(), &edge).unwrap();
        assert_eq!(two.f_vector(), vec![4, 2]);
        assert_eq!(two.act_simplex(1, two.index_of(&[0, 1]).unwrap()).0, two.index_of(&[2, 3]).unwrap());
    }

    #[test]
    fn family_examples() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let h = s3.generated([1]);
        let orbit = induce_space(&s3, &h, &GSimplicialComplex::build(1, &[vec![0]], None).unwrap()).unwrap();
        assert!(family_check(&orbit, &family_generated(&s3, std::slice::from_ref(&h))).unwrap());
        let point =
            GSimplicialComplex::build(1, &[vec![0]], Some(Action::whole(s3.clone(), vec![vec![0]; 6]).unwrap())).unwrap();
        let trivial = vec![s3.trivial_subgroup()];
        assert!(!family_check(&point, &trivial).unwrap());
        let free = induce_space(&s3, &s3.trivial_subgroup(), &GSimplicialComplex::build(1, &[vec![0]], None).unwrap()).unwrap();
        assert!(family_check(&free, &trivial).unwrap());
        assert!(validate_family(&s3, &[h]).is_err());
    }

    #[test]
    fn boundary_tetrahedron_homology() {
        let x = boundary_tetrahedron();
        let c = x.chain_complex(&x.all());
        let h: Vec<String> = (0..3).map(|n| c.homology(n).to_string()).collect();
        assert_eq!(h, vec!["Z", "0", "Z"]);
        assert_eq!(euler_characteristic(&x), 2);
    }

    #[test]
    fn conjugate_fixed_points_agree() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let tri = GSimplicialComplex::simplicial(3, &[vec![0, 1, 2]], Some(Action::whole(s3.clone(), s3.elements().map(|g| s3.permutation(g).unwrap().to_vec()).collect()).unwrap())).unwrap();
        let x = subdivide(&tri);
        for h in s3.all_subgroups() {
            let base = fixed_subcomplex(&x, &h).unwrap();
            for g in s3.elements() {
                let conj = fixed_subcomplex(&x, &s3.conjugate_subgroup(g, &h)).unwrap();
                let mut moved: Vec<usize> = base.iter().map(|&i| x.act_simplex(g, i).0).collect();
                moved.sort_unstable();
                assert_eq!(moved, conj);
            }
        }
    }

    /// Disjoint union of coset spaces.
    fn orbit_gset(group: &GroupRef, orbits: &[Subgroup]) -> Vec<Vec<usize>> {
        let mut acts: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
        let mut off = 0;
        for h in orbits {
            let gs: GSet = group.cosets(h).gset(group);
            for g in group.elements() {
                acts[g].extend((0..gs.len()).map(|s| off + gs.act(g, s)));
            }
            off += gs.len();
        }
        acts
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn fixed_points_preserve_pushouts(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let group: GroupRef = Arc::new(if rng.gen_bool(0.5) { FiniteGroup::cyclic(rng.gen_range(1..5)).unwrap() } else { FiniteGroup::symmetric(3).unwrap() });
            let subs = group.all_subgroups();
            let pick = |rng: &mut rand_chacha::ChaCha8Rng, budget: usize| {
                let mut out = Vec::new();
                let mut size = 0;
                for _ in 0..3 {
                    let h = subs[rng.gen_range(0..subs.len())].clone();
                    let len = group.order() / h.order();
                    if size + len <= budget {
                        size += len;
                        out.push(h);
                    }
                }
                (out, size)
            };
            let (a_orbits, a_size) = pick(&mut rng, 4);
            let (extra, _) = pick(&mut rng, 8 - a_size);
            let (x_orbits, _) = pick(&mut rng, 8);
            let a_act = orbit_gset(&group, &a_orbits);
            let b_orbits: Vec<Subgroup> = a_orbits.iter().chain(&extra).cloned().collect();
            let b_act = orbit_gset(&group, &b_orbits);
            let x_act = orbit_gset(&group, &x_orbits);
            let na = a_act[0].len();
            let nx = x_act[0].len();
            let i: Vec<usize> = (0..na).collect();
            // equivariant f: each orbit G/K of A goes to the orbit of a K-fixed point of X
            let mut f = vec![0; na];
            let mut off = 0;
            let mut ok = true;
            for h in &a_orbits {
                let cs = group.cosets(h);
                let targets: Vec<usize> = (0..nx).filter(|&y| h.elements().iter().all(|&k| x_act[k][y] == y)).collect();
                if targets.is_empty() { ok = false; break; }
                let y = targets[rng.gen_range(0..targets.len())];
                for c in 0..cs.len() {
                    f[off + c] = x_act[cs.rep(c)][y];
                }
                off += cs.len();
            }
            prop_assume!(ok);
            let (y_act, x_map, b_map) = pushout_gsets(&group, &b_act, &x_act, &i, &f);
            // the pushout of fixed sets, compared through the canonical map into Y^G
            let xg = fixed_set(&x_act);
            let bg = fixed_set(&b_act);
            let ag: BTreeSet<usize> = fixed_set(&a_act).into_iter().collect();
            let mut image: BTreeSet<usize> = xg.iter().map(|&y| x_map[y]).collect();
            let mut count = xg.len();
            for &b in &bg {
                if !ag.contains(&b) {
                    count += 1;
                    image.insert(b_map[b]);
                }
            }
            let yg: BTreeSet<usize> = fixed_set(&y_act).into_iter().collect();
            prop_assert_eq!(image.len(), count);
            prop_assert_eq!(image, yg);
        }
    }

    #[test]
    fn standard_generators_generate() {
        for g in [FiniteGroup::cyclic(1).unwrap(), FiniteGroup::cyclic(4).unwrap(), FiniteGroup::symmetric(4).unwrap()] {
            let gens = g.standard_generators();
            assert_eq!(g.generated(gens).order(), g.order());
        }
    }
}
