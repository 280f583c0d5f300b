//! `H^G(X, HH(R))` as a coend over the orbit category, and its comparison
//! with the sum of twisted hyperhomologies over conjugacy classes.

use std::collections::HashMap;

use equihom_linalg::{Accumulator, ChainComplexZ, FGAbelianGroup, ZVec, Z};
use num_traits::One;

use super::words::{cyclic_nerve_complex, hochschild_complex, Coefficients, HochschildComplex};
use super::{check_cap, group_hyperhomology, matrix, EquivariantComplex, HomologyError, WORD_CAP};
use crate::groups::{Action, CosetSpace, Elem, GroupRef, Subgroup, TransportGroupoid};
use crate::lincat::LinCat;
use crate::rings::BasedRing;
use crate::simplicial::{fixed_subcomplex, GSimplicialComplex};

/// `G/H` as a discrete `G`-complex.
pub fn orbit_complex(group: &GroupRef, h: &Subgroup) -> Result<GSimplicialComplex, HomologyError> {
    let cosets = group.cosets(h);
    let n = cosets.len();
    let perms = group.elements().map(|g| (0..n).map(|x| cosets.act(group, g, x)).collect()).collect();
    let action = Action::whole(group.clone(), perms)?;
    let facets: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    Ok(GSimplicialComplex::simplicial(n, &facets, Some(action))?)
}

/// Union-find where each element is `±` its parent.
struct SignedUnionFind {
    parent: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedUnionFind {
    fn new(n: usize) -> Self {
        SignedUnionFind { parent: (0..n).collect(), sign: vec![1; n] }
    }

    fn find(&mut self, i: usize) -> (usize, i8) {
        let mut path = Vec::new();
        let mut cur = i;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the top down so each sign is relative to the root
        for &p in path.iter().rev() {
            let par = self.parent[p];
            if par != root {
                self.sign[p] *= self.sign[par];
            }
            self.parent[p] = root;
        }
        (root, if i == root { 1 } else { self.sign[i] })
    }

    /// Imposes `a = s·b`; false if that identifies an element with its negative.
    fn union(&mut self, a: usize, b: usize, s: i8) -> bool {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        let rel = sa * s * sb;
        if ra == rb {
            return rel == 1;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.sign[hi] = rel;
        true
    }
}

/// Per-subgroup data of the orbit-category diagram.
struct Orbit {
    subgroup: Subgroup,
    cosets: CosetSpace,
    groupoid: TransportGroupoid,
    nerve: HochschildComplex,
    fixed: Vec<usize>,
}

fn orbit_data(group: &GroupRef, r: &BasedRing, h: &Subgroup, x: &GSimplicialComplex, top: usize) -> Result<Orbit, HomologyError> {
    let cosets = group.cosets(h);
    let groupoid = TransportGroupoid::new(cosets.gset(group));
    let cat = LinCat::crossed_groupoid(r, &groupoid)?;
    let nerve = cyclic_nerve_complex(&cat, top)?;
    let fixed = fixed_subcomplex(x, h)?;
    Ok(Orbit { subgroup: h.clone(), cosets, groupoid, nerve, fixed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendReport {
    /// Homology is exact in degrees `0..=n`.
    pub n: usize,
    /// Rank of the coend complex in degrees `0..=n+1`.
    pub ranks: Vec<usize>,
    pub homology: Vec<FGAbelianGroup>,
}

/// `∫^{OrG} C(X^H) ⊗ C(G/H)` over all subgroups, where `C(G/H)` is the cyclic
/// nerve of `R⋊𝒢^G(G/H)`, as a quotient of `⊕_H C(X^H) ⊗ C(G/H)` by the
/// relations `f^*x ⊗ c ~ x ⊗ f_*c`.
pub fn equivariant_coend(group: &GroupRef, x: &GSimplicialComplex, r: &BasedRing, n: usize) -> Result<CoendReport, HomologyError> {
    if !r.is_unital() {
        return Err(HomologyError::NonUnital);
    }
    let top = n + 1;
    let orbits = group
        .all_subgroups()
        .iter()
        .map(|h| orbit_data(group, r, h, x, top))
        .collect::<Result<Vec<_>, _>>()?;

    // generators (orbit, simplex, word) per total degree
    let mut gens: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
    let mut index: Vec<HashMap<(usize, usize, usize), usize>> = vec![HashMap::new(); top + 1];
    for (o, orb) in orbits.iter().enumerate() {
        for &s in &orb.fixed {
            let a = x.dim_of(s);
            for k in a..=top {
                for w in 0..orb.nerve.basis(k - a).len() {
                    index[k].insert((o, s, w), gens[k].len());
                    gens[k].push((o, s, w));
                }
            }
        }
    }
    for (k, g) in gens.iter().enumerate() {
        check_cap(format!("degree {k} of the coend"), g.len(), WORD_CAP)?;
    }

    let mut finds: Vec<SignedUnionFind> = gens.iter().map(|g| SignedUnionFind::new(g.len())).collect();
    for (hi, oh) in orbits.iter().enumerate() {
        for (ki, ok) in orbits.iter().enumerate() {
            for y in 0..ok.cosets.len() {
                // G/H → G/K, gH ↦ g·aK, exists when H fixes aK
                if !oh.subgroup.elements().iter().all(|&h| ok.cosets.act(group, h, y) == y) {
                    continue;
                }
                let a = ok.cosets.rep(y);
                let on_objects: Vec<usize> =
                    (0..oh.cosets.len()).map(|z| ok.cosets.coset_of(group.mul(oh.cosets.rep(z), a))).collect();
                let (nah, nak) = (oh.groupoid.arrow_count(), ok.groupoid.arrow_count());
                let letter = |l: usize| {
                    let (i, ar) = (l / nah, oh.groupoid.arrow(l % nah));
                    i * nak + ok.groupoid.arrow_index(on_objects[ar.source], ar.element)
                };
                for &s in &ok.fixed {
                    let (as_, sign) = x.act_simplex(a, s);
                    let dim = x.dim_of(s);
                    for k in dim..=top {
                        let words = oh.nerve.basis(k - dim);
                        for w in 0..words.len() {
                            let image: Vec<usize> = words.word(w).iter().map(|&l| letter(l)).collect();
                            let fw = ok.nerve.basis(k - dim).position(&image).ok_or_else(|| {
                                HomologyError::Inconsistent("orbit map leaves the cyclic nerve".into())
                            })?;
                            let g1 = index[k][&(hi, as_, w)];
                            let g2 = index[k][&(ki, s, fw)];
                            if !finds[k].union(g1, g2, sign) {
                                return Err(HomologyError::Inconsistent(format!(
                                    "the coend identifies a degree-{k} generator with its negative"
                                )));
                            }
                        }
                    }
                }
            }
        }
    }

    // classes numbered by their smallest generator
    let mut class_of: Vec<Vec<(usize, i8)>> = Vec::with_capacity(top + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut number = HashMap::new();
        let mut row = Vec::with_capacity(gens[k].len());
        let mut r = Vec::new();
        for i in 0..gens[k].len() {
            let (root, s) = finds[k].find(i);
            let next = number.len();
            let c = *number.entry(root).or_insert(next);
            if c == r.len() {
                r.push(root);
            }
            row.push((c, s));
        }
        class_of.push(row);
        reps.push(r);
    }
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let mut cols = Vec::with_capacity(reps[k].len());
        for &root in &reps[k] {
            let (o, s, w) = gens[k][root];
            let orb = &orbits[o];
            let dim = x.dim_of(s);
            let mut acc = Accumulator::new();
            if dim >= 1 {
                for (j, f) in x.faces(s).into_iter().enumerate() {
                    let (c, sg) = class_of[k - 1][index[k - 1][&(o, f, w)]];
                    let sign = if j % 2 == 0 { sg } else { -sg };
                    acc.add(c, Z::from(sign));
                }
            }
            if k - dim >= 1 {
                let d = orb.nerve.complex().boundary((k - dim) as i64).expect("in range");
                for (w2, c) in d.column(w).iter() {
                    let (cl, sg) = class_of[k - 1][index[k - 1][&(o, s, w2)]];
                    let sign = if dim.is_multiple_of(2) { sg } else { -sg };
                    acc.add(cl, c * Z::from(sign));
                }
            }
            cols.push(acc.finish());
        }
        boundaries.push(matrix(reps[k - 1].len(), cols)?);
    }
    let ranks: Vec<usize> = reps.iter().map(Vec::len).collect();
    let complex = ChainComplexZ::new_checked(0, ranks.clone(), boundaries)?;
    Ok(CoendReport { n, ranks, homology: complex.homology_upto(n as i64) })
}

/// One conjugacy class's contribution `H(Z_g; C(X^g) ⊗ HH(R, R_g))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReiluSummand {
    pub representative: Elem,
    pub centralizer_order: usize,
    pub homology: Vec<FGAbelianGroup>,
}

/// Chain-map check of the comparison map `α` for one orbit and representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCheck {
    pub subgroup: Vec<Elem>,
    pub representative: Elem,
    pub generators: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReiluReport {
    pub n: usize,
    pub representatives: Vec<Elem>,
    pub lhs: Vec<FGAbelianGroup>,
    pub rhs: Vec<FGAbelianGroup>,
    pub summands: Vec<ReiluSummand>,
    pub alpha: Vec<AlphaCheck>,
}

impl ReiluReport {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn alpha_is_chain_map(&self) -> bool {
        self.alpha.iter().all(|a| a.failures == 0)
    }

    pub fn passed(&self) -> bool {
        self.agrees() && self.alpha_is_chain_map()
    }
}

fn default_representatives(group: &GroupRef) -> Vec<Elem> {
    group.conjugacy_classes().iter().map(|c| *c.iter().min().expect("nonempty")).collect()
}

fn check_representatives(group: &GroupRef, reps: &[Elem]) -> Result<(), HomologyError> {
    let class_of = group.class_index();
    let mut seen = vec![false; group.conjugacy_classes().len()];
    for &g in reps {
        if g >= group.order() || std::mem::replace(&mut seen[class_of[g]], true) {
            return Err(HomologyError::Inconsistent("representatives must pick one element per conjugacy class".into()));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(HomologyError::Inconsistent("a conjugacy class has no representative".into()));
    }
    Ok(())
}

/// `C(X^g)` with its `Z_g`-action.
fn fixed_chains(group: &GroupRef, x: &GSimplicialComplex, g: Elem, z: &Subgroup) -> Result<EquivariantComplex, HomologyError> {
    let sub = fixed_subcomplex(x, &group.generated([g]))?;
    EquivariantComplex::simplicial(group, x, &sub, z)
}

/// `HH(R, R_g)` with the diagonal `Z_g`-action.
fn twisted_hochschild(group: &GroupRef, r: &BasedRing, g: Elem, z: &Subgroup, top: usize) -> Result<EquivariantComplex, HomologyError> {
    let action = r.action().ok_or(crate::rings::RingError::MissingAction)?;
    if z.elements().iter().chain([&g]).any(|&h| action.get(h).is_none()) {
        return Err(HomologyError::NotEquivariant("the ring must carry an action of the centralizer".into()));
    }
    let hh = hochschild_complex(r, Coefficients::Twisted(g), top)?;
    let actions = (0..=top)
        .map(|n| {
            let basis = hh.basis(n);
            z.elements()
                .iter()
                .map(|&h| {
                    let m = action.at(h);
                    let cols = basis
                        .words()
                        .iter()
                        .map(|w| {
                            let parts: Vec<&ZVec> = w.iter().map(|&l| m.column(l)).collect();
                            let mut acc = Accumulator::new();
                            for (word, c) in expand(&parts) {
                                let idx = basis.position(&word).expect("all words present");
                                acc.add(idx, c);
                            }
                            acc.finish()
                        })
                        .collect();
                    matrix(basis.len(), cols)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    EquivariantComplex::new(group.clone(), z.clone(), hh.complex().clone(), actions)
}

/// Expands `v_0 ⊗ … ⊗ v_n` into basis words.
fn expand(parts: &[&ZVec]) -> Vec<(Vec<usize>, Z)> {
    let mut out = vec![(Vec::with_capacity(parts.len()), Z::one())];
    for v in parts {
        let mut next = Vec::with_capacity(out.len() * v.nnz());
        for (w, c) in &out {
            for (k, x) in v.iter() {
                let mut w2 = w.clone();
                w2.push(k);
                next.push((w2, c * x));
            }
        }
        out = next;
    }
    out
}

pub fn reilu_rhs_summand(
    group: &GroupRef,
    x: &GSimplicialComplex,
    r: &BasedRing,
    g: Elem,
    n: usize,
) -> Result<ReiluSummand, HomologyError> {
    let z = group.centralizer(g);
    let top = n as i64 + 1;
    let chains = fixed_chains(group, x, g, &z)?;
    let hh = twisted_hochschild(group, r, g, &z, n + 1)?;
    let both = chains.tensor(&hh, top)?;
    Ok(ReiluSummand { representative: g, centralizer_order: z.order(), homology: group_hyperhomology(&both, n)? })
}

/// Compares the coend with `⊕_ξ H(Z_g; C(X^g) ⊗ HH(R, R_g))` degree by degree,
/// and checks the comparison map `α` on every orbit.
pub fn verify_reilu(
    group: &GroupRef,
    x: &GSimplicialComplex,
    r: &BasedRing,
    n: usize,
    representatives: Option<&[Elem]>,
) -> Result<ReiluReport, HomologyError> {
    let reps = match representatives {
        Some(v) => {
            check_representatives(group, v)?;
            v.to_vec()
        }
        None => default_representatives(group),
    };
    let lhs = equivariant_coend(group, x, r, n)?.homology;
    let summands = reps.iter().map(|&g| reilu_rhs_summand(group, x, r, g, n)).collect::<Result<Vec<_>, _>>()?;
    let rhs = summands.iter().fold(vec![FGAbelianGroup::zero(); n + 1], |acc, s| {
        acc.iter().zip(&s.homology).map(|(a, b)| a.direct_sum(b)).collect()
    });
    let mut alpha = Vec::new();
    for h in group.all_subgroups() {
        for &g in &reps {
            alpha.push(alpha_check(group, &h, r, g, n)?);
        }
    }
    Ok(ReiluReport { n, representatives: reps, lhs, rhs, summands, alpha })
}

pub const ALPHA_CAP: usize = 200_000;

/// Checks `∂α = α∂` on every generator `z_1…z_n ⊗ s ⊗ x_0 ⊗ … ⊗ x_n` of
/// `ℤ[EZ_g] ⊗_{Z_g} (ℤ[S^g] ⊗ HH(R, R_g))` for `S = G/H`, in degrees `1..=n`, where
/// `α = x_0⋊(z_1⋯z_n)⁻¹g ⊗ (z_1⋯z_n)(x_1)⋊z_1 ⊗ (z_2⋯z_n)(x_2)⋊z_2 ⊗ … ⊗ z_n(x_n)⋊z_n`.
pub fn alpha_check(group: &GroupRef, h: &Subgroup, r: &BasedRing, g: Elem, n: usize) -> Result<AlphaCheck, HomologyError> {
    let action = r.action().ok_or(crate::rings::RingError::MissingAction)?;
    let cosets = group.cosets(h);
    let groupoid = TransportGroupoid::new(cosets.gset(group));
    let cat = LinCat::crossed_groupoid(r, &groupoid)?;
    let nerve = cyclic_nerve_complex(&cat, n)?;
    let z = group.centralizer(g);
    let zs = z.elements();
    let fixed: Vec<usize> = (0..cosets.len()).filter(|&s| cosets.act(group, g, s) == s).collect();
    let rank = r.rank();
    let na = groupoid.arrow_count();
    let act = |e: Elem, v: &ZVec| action.at(e).apply(v);
    let mul = |a: &ZVec, b: &ZVec| r.mul(a, b);

    // α of a simple tensor, in the nerve basis of degree zs.len()
    let alpha = |zw: &[Elem], s: usize, xs: &[ZVec]| -> Result<ZVec, HomologyError> {
        let m = zw.len();
        // objects c_0 = s, c_i = z_i·c_{i+1}
        let mut objects = vec![s; m + 1];
        for i in (1..=m).rev() {
            let next = if i == m { s } else { objects[i + 1] };
            objects[i] = cosets.act(group, zw[i - 1], next);
        }
        let mut suffix = vec![group.identity(); m + 2];
        for i in (1..=m).rev() {
            suffix[i] = group.mul(zw[i - 1], suffix[i + 1]);
        }
        let w = suffix[1];
        let mut letters: Vec<ZVec> = Vec::with_capacity(m + 1);
        let source0 = if m == 0 { s } else { objects[1] };
        let arrow0 = groupoid.arrow_index(source0, group.mul(group.inv(w), g));
        letters.push(xs[0].map_indices(|k| k * na + arrow0));
        for i in 1..=m {
            let source = if i == m { s } else { objects[i + 1] };
            let arrow = groupoid.arrow_index(source, zw[i - 1]);
            letters.push(act(suffix[i], &xs[i]).map_indices(|k| k * na + arrow));
        }
        let parts: Vec<&ZVec> = letters.iter().collect();
        let basis = nerve.basis(m);
        let mut acc = Accumulator::new();
        for (word, c) in expand(&parts) {
            let idx = basis
                .position(&word)
                .ok_or_else(|| HomologyError::Inconsistent(format!("α leaves the cyclic nerve in degree {m}")))?;
            acc.add(idx, c);
        }
        Ok(acc.finish())
    };

    let mut generators = 0usize;
    let mut failures = 0usize;
    for m in 1..=n {
        let count = zs.len().pow(m as u32) * fixed.len() * rank.pow(m as u32 + 1);
        check_cap(format!("α check in degree {m}"), count, ALPHA_CAP)?;
        let d = nerve.complex().boundary(m as i64).expect("in range");
        for zt in 0..zs.len().pow(m as u32) {
            let mut zw = vec![0; m];
            let mut t = zt;
            for slot in zw.iter_mut().rev() {
                *slot = zs[t % zs.len()];
                t /= zs.len();
            }
            for &s in &fixed {
                for xt in 0..rank.pow(m as u32 + 1) {
                    let mut xs = vec![ZVec::zero(); m + 1];
                    let mut t = xt;
                    for slot in xs.iter_mut().rev() {
                        *slot = ZVec::unit(t % rank);
                        t /= rank;
                    }
                    generators += 1;
                    let lhs = d.apply(&alpha(&zw, s, &xs)?);
                    let mut rhs = Accumulator::new();
                    // d_0
                    {
                        let mut ys = vec![mul(&xs[0], &act(g, &xs[1]))];
                        ys.extend_from_slice(&xs[2..]);
                        rhs.add_vec(&alpha(&zw[1..], s, &ys)?, &Z::one());
                    }
                    for i in 1..m {
                        let mut zv = zw[..i - 1].to_vec();
                        zv.push(group.mul(zw[i - 1], zw[i]));
                        zv.extend_from_slice(&zw[i + 1..]);
                        let mut ys = xs[..i].to_vec();
                        ys.push(mul(&xs[i], &xs[i + 1]));
                        ys.extend_from_slice(&xs[i + 2..]);
                        rhs.add_vec(&alpha(&zv, s, &ys)?, &Z::from(if i % 2 == 0 { 1 } else { -1 }));
                    }
                    // d_m moves z_m across the tensor sign
                    {
                        let zm = zw[m - 1];
                        let s2 = cosets.act(group, zm, s);
                        let mut ys = vec![act(zm, &mul(&xs[m], &xs[0]))];
                        ys.extend(xs[1..m].iter().map(|v| act(zm, v)));
                        rhs.add_vec(&alpha(&zw[..m - 1], s2, &ys)?, &Z::from(if m % 2 == 0 { 1 } else { -1 }));
                    }
                    if lhs != rhs.finish() {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok(AlphaCheck { subgroup: h.elements().to_vec(), representative: g, generators, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use std::sync::Arc;
    use crate::rings::{crossed_product, group_ring, integers, trivial_action};
    use crate::simplicial::GSimplicialComplex;
    use super::super::words::hochschild_homology;

    fn g(rank: usize, torsion: &[u64]) -> FGAbelianGroup {
        FGAbelianGroup::from_small(rank, torsion)
    }

    fn trivial_z(group: &GroupRef) -> BasedRing {
        trivial_action(integers(), group, &group.whole()).unwrap()
    }

    #[test]
    fn coend_of_a_point_is_hh_of_the_group_ring() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let pt = orbit_complex(&c2, &c2.whole()).unwrap();
        let rep = equivariant_coend(&c2, &pt, &trivial_z(&c2), 3).unwrap();
        assert_eq!(rep.homology, hochschild_homology(&group_ring(&c2), Coefficients::Ring, 3).unwrap());
    }

    #[test]
    fn yoneda_for_subgroups_of_c2_and_s3() {
        for group in [FiniteGroup::cyclic(2).unwrap(), FiniteGroup::symmetric(3).unwrap()] {
            let group: GroupRef = Arc::new(group);
            let r = trivial_z(&group);
            for h in group.all_subgroups() {
                let x = orbit_complex(&group, &h).unwrap();
                let lhs = equivariant_coend(&group, &x, &r, 2).unwrap().homology;
                let rh = crossed_product(&trivial_action(integers(), &group, &h).unwrap()).unwrap();
                let rhs = hochschild_homology(&rh, Coefficients::Ring, 2).unwrap();
                assert_eq!(lhs, rhs, "H = {:?}", h.elements());
            }
        }
    }

    #[test]
    fn reilu_on_a_point() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let pt = orbit_complex(&c2, &c2.whole()).unwrap();
        let rep = verify_reilu(&c2, &pt, &trivial_z(&c2), 4, None).unwrap();
        assert_eq!(rep.lhs, vec![g(2, &[]), g(0, &[2, 2]), g(0, &[]), g(0, &[2, 2]), g(0, &[])]);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn reilu_on_a_free_orbit() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let free = orbit_complex(&c2, &c2.trivial_subgroup()).unwrap();
        let rep = verify_reilu(&c2, &free, &trivial_z(&c2), 2, None).unwrap();
        assert_eq!(rep.lhs, vec![g(1, &[]), g(0, &[]), g(0, &[])]);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.summands[1].homology.iter().all(FGAbelianGroup::is_zero));
    }

    #[test]
    fn reilu_for_the_trivial_group() {
        let e: GroupRef = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let seg = GSimplicialComplex::simplicial(2, &[vec![0, 1]], Some(Action::whole(e.clone(), vec![vec![0, 1]]).unwrap())).unwrap();
        let r = trivial_action(crate::rings::matrix_ring(2), &e, &e.whole()).unwrap();
        let rep = verify_reilu(&e, &seg, &r, 2, None).unwrap();
        assert_eq!(rep.lhs, hochschild_homology(&r, Coefficients::Ring, 2).unwrap());
        assert!(rep.passed());
    }

    #[test]
    fn reilu_on_s3_acting_on_a_triangle_boundary() {
        let s3: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let perms: Vec<Vec<usize>> = s3.elements().map(|x| s3.permutation(x).unwrap().to_vec()).collect();
        // the barycentric subdivision of ∂Δ² is admissible
        let tri = GSimplicialComplex::simplicial(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], Some(Action::whole(s3.clone(), perms).unwrap()))
            .unwrap();
        let x = crate::simplicial::subdivide(&tri);
        let rep = verify_reilu(&s3, &x, &trivial_z(&s3), 1, None).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn wrong_representatives_are_rejected() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let pt = orbit_complex(&c2, &c2.whole()).unwrap();
        assert!(verify_reilu(&c2, &pt, &trivial_z(&c2), 1, Some(&[0, 0])).is_err());
    }

    #[test]
    fn alpha_with_a_nontrivial_action() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let r = group_ring(&c2);
        for h in c2.all_subgroups() {
            for g in c2.elements() {
                let a = alpha_check(&c2, &h, &r, g, 3).unwrap();
                assert_eq!(a.failures, 0, "{a:?}");
            }
        }
    }
}
