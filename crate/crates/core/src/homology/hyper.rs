//! Complexes of `ℤK`-modules and their group hyperhomology.

use std::collections::HashMap;

use equihom_linalg::{Accumulator, ChainComplexZ, FGAbelianGroup, ZMatrix, ZVec, Z};

use super::{check_cap, matrix, HomologyError, WORD_CAP};
use crate::groups::{Elem, GroupRef, Subgroup};
use crate::simplicial::GSimplicialComplex;

/// A bounded complex of free abelian groups with a `K`-action per degree
/// commuting with the boundaries.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    group: GroupRef,
    subgroup: Subgroup,
    complex: ChainComplexZ,
    /// `actions[k][i]` acts on `C_{lo+k}` for the `i`-th element of the subgroup.
    actions: Vec<Vec<ZMatrix>>,
}

impl EquivariantComplex {
    pub fn new(group: GroupRef, subgroup: Subgroup, complex: ChainComplexZ, actions: Vec<Vec<ZMatrix>>) -> Result<Self, HomologyError> {
        let c = EquivariantComplex { group, subgroup, complex, actions };
        c.validate()?;
        Ok(c)
    }

    /// `K` acting trivially.
    pub fn trivial(group: GroupRef, subgroup: Subgroup, complex: ChainComplexZ) -> Self {
        let actions = complex.ranks().iter().map(|&r| vec![ZMatrix::identity(r); subgroup.order()]).collect();
        EquivariantComplex { group, subgroup, complex, actions }
    }

    pub(crate) fn new_unchecked(group: GroupRef, subgroup: Subgroup, complex: ChainComplexZ, actions: Vec<Vec<ZMatrix>>) -> Self {
        EquivariantComplex { group, subgroup, complex, actions }
    }

    fn validate(&self) -> Result<(), HomologyError> {
        self.complex.validate()?;
        let ranks = self.complex.ranks();
        if self.actions.len() != ranks.len() {
            return Err(HomologyError::NotEquivariant("one list of matrices per degree is needed".into()));
        }
        let elems = self.subgroup.elements();
        for (k, mats) in self.actions.iter().enumerate() {
            if mats.len() != elems.len() || mats.iter().any(|m| m.nrows() != ranks[k] || m.ncols() != ranks[k]) {
                return Err(HomologyError::NotEquivariant(format!("matrices of degree {} have the wrong shape", self.lo() + k as i64)));
            }
            for (i, &a) in elems.iter().enumerate() {
                if a == self.group.identity() && mats[i] != ZMatrix::identity(ranks[k]) {
                    return Err(HomologyError::NotEquivariant("the identity does not act trivially".into()));
                }
                for (j, &b) in elems.iter().enumerate() {
                    let ab = self.subgroup.position(self.group.mul(a, b)).expect("closed");
                    if mats[i].mul(&mats[j])? != mats[ab] {
                        return Err(HomologyError::NotEquivariant(format!(
                            "not an action in degree {} at ({}, {})",
                            self.lo() + k as i64,
                            self.group.label(a),
                            self.group.label(b)
                        )));
                    }
                }
            }
        }
        for n in self.lo() + 1..=self.complex.hi() {
            let d = self.complex.boundary(n).expect("in range");
            let k = (n - self.lo()) as usize;
            for (i, &a) in elems.iter().enumerate() {
                if d.mul(&self.actions[k][i])? != self.actions[k - 1][i].mul(d)? {
                    return Err(HomologyError::NotEquivariant(format!(
                        "{} does not commute with d_{n}",
                        self.group.label(a)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Oriented chains of a `subgroup`-stable subcomplex `sub` of `x`.
    pub fn simplicial(group: &GroupRef, x: &GSimplicialComplex, sub: &[usize], subgroup: &Subgroup) -> Result<Self, HomologyError> {
        let complex = x.chain_complex(sub);
        let top = sub.iter().map(|&s| x.dim_of(s)).max();
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top.map_or(1, |t| t + 1)];
        for &s in sub {
            by_dim[x.dim_of(s)].push(s);
        }
        let local: Vec<HashMap<usize, usize>> = by_dim.iter().map(|d| d.iter().enumerate().map(|(k, &s)| (s, k)).collect()).collect();
        let actions = by_dim
            .iter()
            .enumerate()
            .map(|(dim, simplices)| {
                subgroup
                    .elements()
                    .iter()
                    .map(|&h| {
                        signed_permutation(simplices.len(), |i| {
                            let (j, s) = x.act_simplex(h, simplices[i]);
                            let k = local[dim].get(&j).copied().ok_or_else(|| {
                                HomologyError::NotEquivariant(format!("the subcomplex is not stable under {}", group.label(h)))
                            })?;
                            Ok((k, s))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        EquivariantComplex::new(group.clone(), subgroup.clone(), complex, actions)
    }

    pub fn complex(&self) -> &ChainComplexZ {
        &self.complex
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn lo(&self) -> i64 {
        self.complex.lo()
    }

    pub fn action(&self, n: i64, g: Elem) -> &ZMatrix {
        let i = self.subgroup.position(g).expect("element of the acting subgroup");
        &self.actions[(n - self.lo()) as usize][i]
    }

    /// `A ⊗ B` with `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy` and the diagonal
    /// action, in total degrees up to `top`.
    pub fn tensor(&self, other: &EquivariantComplex, top: i64) -> Result<EquivariantComplex, HomologyError> {
        if self.subgroup != other.subgroup || self.group.order() != other.group.order() {
            return Err(HomologyError::NotEquivariant("tensor factors carry different actions".into()));
        }
        let (a, b) = (&self.complex, &other.complex);
        let lo = a.lo() + b.lo();
        let top = top.min(a.hi() + b.hi());
        if top < lo {
            let c = ChainComplexZ::new(lo, vec![0], vec![])?;
            return Ok(EquivariantComplex::trivial(self.group.clone(), self.subgroup.clone(), c));
        }
        // blocks of total degree k, ordered by the degree i of the first factor
        let blocks = |k: i64| -> Vec<(i64, usize)> {
            let mut off = 0;
            let mut out = Vec::new();
            for i in a.lo()..=a.hi() {
                let j = k - i;
                if j < b.lo() || j > b.hi() {
                    continue;
                }
                out.push((i, off));
                off += a.rank_at(i) * b.rank_at(j);
            }
            out
        };
        let total = |k: i64| -> usize { blocks(k).iter().map(|&(i, _)| a.rank_at(i) * b.rank_at(k - i)).sum() };
        let ranks: Vec<usize> = (lo..=top).map(total).collect();
        for &r in &ranks {
            check_cap("tensor product complex", r, WORD_CAP)?;
        }
        let find = |k: i64, i: i64| blocks(k).into_iter().find(|&(ii, _)| ii == i).map(|(_, o)| o);
        let mut boundaries = Vec::new();
        for k in lo + 1..=top {
            let mut cols = Vec::with_capacity(total(k));
            for (i, _) in blocks(k) {
                let j = k - i;
                let (ra, rb) = (a.rank_at(i), b.rank_at(j));
                for x in 0..ra {
                    for y in 0..rb {
                        let mut acc = Accumulator::new();
                        if let (Some(d), Some(off)) = (a.boundary(i), find(k - 1, i - 1)) {
                            for (xx, c) in d.column(x).iter() {
                                acc.add(off + xx * rb + y, c.clone());
                            }
                        }
                        if let (Some(d), Some(off)) = (b.boundary(j), find(k - 1, i)) {
                            let rb1 = b.rank_at(j - 1);
                            for (yy, c) in d.column(y).iter() {
                                acc.add(off + x * rb1 + yy, if i % 2 == 0 { c.clone() } else { -c });
                            }
                        }
                        cols.push(acc.finish());
                    }
                }
            }
            boundaries.push(matrix(total(k - 1), cols)?);
        }
        let complex = ChainComplexZ::new(lo, ranks.clone(), boundaries)?;
        let actions = (lo..=top)
            .map(|k| {
                self.subgroup
                    .elements()
                    .iter()
                    .map(|&g| {
                        let mut cols = Vec::with_capacity(total(k));
                        for (i, off) in blocks(k) {
                            let j = k - i;
                            let (ma, mb) = (self.action(i, g), other.action(j, g));
                            let rb = b.rank_at(j);
                            for x in 0..a.rank_at(i) {
                                for y in 0..rb {
                                    let mut acc = Accumulator::new();
                                    for (xx, c) in ma.column(x).iter() {
                                        for (yy, e) in mb.column(y).iter() {
                                            acc.add(off + xx * rb + yy, c * e);
                                        }
                                    }
                                    cols.push(acc.finish());
                                }
                            }
                        }
                        matrix(total(k), cols)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EquivariantComplex::new_unchecked(self.group.clone(), self.subgroup.clone(), complex, actions))
    }
}

/// `H_0 … H_N` of `K` with coefficients in the complex, from the total complex
/// of the bar resolution `E(K, −) ⊗_{ℤK} C` cut at total degree `N+1`.
pub fn group_hyperhomology(c: &EquivariantComplex, n: usize) -> Result<Vec<FGAbelianGroup>, HomologyError> {
    let cx = &c.complex;
    if cx.lo() < 0 {
        return Err(HomologyError::Inconsistent("hyperhomology needs a complex in nonnegative degrees".into()));
    }
    let elems = c.subgroup.elements();
    let order = elems.len();
    let top = n as i64 + 1;
    let group = &c.group;
    let pow = |p: i64| -> usize { order.checked_pow(p as u32).unwrap_or(usize::MAX) };
    // blocks (p, q) of total degree k ordered by p; basis index tuple·rank_q + m
    let blocks = |k: i64| -> Vec<(i64, usize)> {
        let mut off = 0usize;
        let mut out = Vec::new();
        for p in 0..=k {
            let q = k - p;
            if q < cx.lo() || q > cx.hi() {
                continue;
            }
            out.push((p, off));
            off = off.saturating_add(pow(p).saturating_mul(cx.rank_at(q)));
        }
        out
    };
    let total = |k: i64| -> usize { blocks(k).iter().map(|&(p, _)| pow(p).saturating_mul(cx.rank_at(k - p))).sum() };
    for k in 0..=top {
        check_cap("hyperhomology total complex", total(k), WORD_CAP)?;
    }
    let find = |k: i64, p: i64| blocks(k).into_iter().find(|&(pp, _)| pp == p).map(|(_, o)| o);
    let digits = |mut t: usize, p: i64| -> Vec<usize> {
        let mut d = vec![0; p as usize];
        for slot in d.iter_mut().rev() {
            *slot = t % order;
            t /= order;
        }
        d
    };
    let encode = |d: &[usize]| d.iter().fold(0usize, |acc, &x| acc * order + x);
    let mut boundaries = Vec::new();
    for k in 1..=top {
        let mut cols = Vec::with_capacity(total(k));
        for (p, _) in blocks(k) {
            let q = k - p;
            let rq = cx.rank_at(q);
            for t in 0..pow(p) {
                let ks = digits(t, p);
                for m in 0..rq {
                    let mut acc = Accumulator::new();
                    if p >= 1 {
                        let off = find(k - 1, p - 1).expect("same q");
                        // d_0: k_1⁻¹·m
                        let rest = encode(&ks[1..]);
                        let inv = group.inv(elems[ks[0]]);
                        for (mm, c) in c.action(q, inv).column(m).iter() {
                            acc.add(off + rest * rq + mm, c.clone());
                        }
                        for i in 1..p as usize {
                            let mut v = ks[..i - 1].to_vec();
                            let prod = group.mul(elems[ks[i - 1]], elems[ks[i]]);
                            v.push(c.subgroup.position(prod).expect("closed"));
                            v.extend_from_slice(&ks[i + 1..]);
                            acc.add(off + encode(&v) * rq + m, if i % 2 == 0 { Z::from(1) } else { Z::from(-1) });
                        }
                        let last = encode(&ks[..p as usize - 1]);
                        acc.add(off + last * rq + m, if p % 2 == 0 { Z::from(1) } else { Z::from(-1) });
                    }
                    if let (Some(d), Some(off)) = (cx.boundary(q), find(k - 1, p)) {
                        let rq1 = cx.rank_at(q - 1);
                        for (mm, x) in d.column(m).iter() {
                            acc.add(off + t * rq1 + mm, if p % 2 == 0 { x.clone() } else { -x });
                        }
                    }
                    cols.push(acc.finish());
                }
            }
        }
        boundaries.push(matrix(total(k - 1), cols)?);
    }
    let ranks = (0..=top).map(total).collect();
    let tot = ChainComplexZ::new_checked(0, ranks, boundaries)?;
    Ok(tot.homology_upto(n as i64))
}

/// The permutation action of `K` on a basis, with signs.
fn signed_permutation(rank: usize, image: impl Fn(usize) -> Result<(usize, i8), HomologyError>) -> Result<ZMatrix, HomologyError> {
    let cols = (0..rank)
        .map(|i| {
            let (j, s) = image(i)?;
            Ok(ZVec::single(j, Z::from(s)))
        })
        .collect::<Result<_, HomologyError>>()?;
    matrix(rank, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use std::sync::Arc;

    fn point(group: &GroupRef, k: &Subgroup) -> EquivariantComplex {
        EquivariantComplex::trivial(group.clone(), k.clone(), ChainComplexZ::new(0, vec![1], vec![]).unwrap())
    }

    fn g(rank: usize, torsion: &[u64]) -> FGAbelianGroup {
        FGAbelianGroup::from_small(rank, torsion)
    }

    #[test]
    fn cyclic_group_homology() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let h = group_hyperhomology(&point(&c2, &c2.whole()), 4).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[2]), g(0, &[]), g(0, &[2]), g(0, &[])]);
        let c3: GroupRef = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let h = group_hyperhomology(&point(&c3, &c3.whole()), 3).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[3]), g(0, &[]), g(0, &[3])]);
    }

    #[test]
    fn subgroup_of_s3() {
        let s3: GroupRef = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let c3 = s3.subgroup(s3.elements().filter(|&x| s3.sign(x).unwrap() == 1)).unwrap();
        let h = group_hyperhomology(&point(&s3, &c3), 2).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[3]), g(0, &[])]);
        // H₁(S₃) = ℤ/2, H₂(S₃) = 0, H₃(S₃) = ℤ/6
        let h = group_hyperhomology(&point(&s3, &s3.whole()), 3).unwrap();
        assert_eq!(h, vec![g(1, &[]), g(0, &[2]), g(0, &[]), g(0, &[6])]);
    }

    #[test]
    fn coinvariants_in_degree_zero() {
        // C₂ swapping two points: H₀ = ℤ, and the free module is acyclic above 0
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let swap = signed_permutation(2, |i| Ok((1 - i, 1))).unwrap();
        let c = EquivariantComplex::new(
            c2.clone(),
            c2.whole(),
            ChainComplexZ::new(0, vec![2], vec![]).unwrap(),
            vec![vec![ZMatrix::identity(2), swap]],
        )
        .unwrap();
        assert_eq!(group_hyperhomology(&c, 3).unwrap(), vec![g(1, &[]), g(0, &[]), g(0, &[]), g(0, &[])]);
        // sign representation: H₀ = ℤ/2
        let sign = ZMatrix::from_dense_rows(&[vec![Z::from(-1)]]);
        let c = EquivariantComplex::new(
            c2.clone(),
            c2.whole(),
            ChainComplexZ::new(0, vec![1], vec![]).unwrap(),
            vec![vec![ZMatrix::identity(1), sign]],
        )
        .unwrap();
        assert_eq!(group_hyperhomology(&c, 2).unwrap(), vec![g(0, &[2]), g(0, &[]), g(0, &[2])]);
    }

    #[test]
    fn non_equivariant_is_rejected() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let twice = ZMatrix::from_dense_rows(&[vec![Z::from(2)]]);
        let r = EquivariantComplex::new(c2.clone(), c2.whole(), ChainComplexZ::new(0, vec![1], vec![]).unwrap(), vec![vec![ZMatrix::identity(1), twice]]);
        assert!(matches!(r, Err(HomologyError::NotEquivariant(_))));
    }

    #[test]
    fn tensor_with_a_point_changes_nothing() {
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let swap = signed_permutation(2, |i| Ok((1 - i, 1))).unwrap();
        let d = ZMatrix::from_dense_rows(&[vec![Z::from(1)], vec![Z::from(-1)]]);
        let arc = EquivariantComplex::new(
            c2.clone(),
            c2.whole(),
            ChainComplexZ::new(0, vec![2, 1], vec![d]).unwrap(),
            vec![vec![ZMatrix::identity(2), swap], vec![ZMatrix::identity(1), ZMatrix::from_dense_rows(&[vec![Z::from(-1)]])]],
        )
        .unwrap();
        let t = point(&c2, &c2.whole()).tensor(&arc, 5).unwrap();
        assert_eq!(t.complex().ranks(), arc.complex().ranks());
        assert_eq!(group_hyperhomology(&t, 3).unwrap(), group_hyperhomology(&arc, 3).unwrap());
    }

    #[test]
    fn simplicial_chains() {
        use crate::groups::Action;
        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let swap = || Action::whole(c2.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let pts = GSimplicialComplex::simplicial(2, &[vec![0], vec![1]], Some(swap())).unwrap();
        let free = EquivariantComplex::simplicial(&c2, &pts, &pts.all(), &c2.whole()).unwrap();
        assert_eq!(group_hyperhomology(&free, 3).unwrap(), vec![g(1, &[]), g(0, &[]), g(0, &[]), g(0, &[])]);
        let edge = GSimplicialComplex::simplicial(2, &[vec![0, 1]], Some(swap())).unwrap();
        let flip = EquivariantComplex::simplicial(&c2, &edge, &edge.all(), &c2.whole()).unwrap();
        assert_eq!(group_hyperhomology(&flip, 3).unwrap(), vec![g(1, &[]), g(0, &[2]), g(0, &[]), g(0, &[2])]);
        let one = edge.index_of(&[0]).unwrap();
        assert!(matches!(
            EquivariantComplex::simplicial(&c2, &edge, &[one], &c2.whole()),
            Err(HomologyError::NotEquivariant(_))
        ));
    }
}
