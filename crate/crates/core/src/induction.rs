use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use equihom_linalg::{smith_summary, DenseMatrix, Solve, ZMatrix, ZVec, Z};
use num_traits::Zero;
use thiserror::Error;

use crate::groups::{Action, CosetSpace, Elem, GSet, GroupError, GroupRef, Subgroup, TransportGroupoid};
use crate::polyfun::{PolyError, PolyFun, PolyLattice, ProperStructure};
use crate::rings::{
    check_hom, crossed_product, functions_on, groupoid_crossed, matrices, matrices_over, tensor, BasedRing, Counterexample,
    HomFlag, HomVerdict, RingError, RingHom, RingRef,
};
use crate::simplicial::{induce_space, ComplexError, GSimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InductionError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("the ring carries no action of {0}")]
    MissingAction(String),
    #[error("not proper over G/H: {0}")]
    NotProper(String),
    #[error("{0}")]
    Relation(String),
}

/// Left cosets `L/M` for subgroups `M ≤ L` of an ambient group, ordered by minimal
/// element, with a pointed section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCosets {
    group: GroupRef,
    big: Subgroup,
    small: Subgroup,
    reps: Vec<Elem>,
    coset_of: Vec<Option<usize>>,
}

impl LocalCosets {
    pub fn new(group: &GroupRef, big: &Subgroup, small: &Subgroup) -> Result<Self, GroupError> {
        if !small.is_subset_of(big) {
            return Err(GroupError::NotASubgroup("coset subgroup is not contained in the ambient subgroup".into()));
        }
        let mut coset_of = vec![None; group.order()];
        let mut reps = Vec::new();
        for &x in big.elements() {
            if coset_of[x].is_some() {
                continue;
            }
            for &m in small.elements() {
                coset_of[group.mul(x, m)] = Some(reps.len());
            }
            reps.push(x);
        }
        Ok(LocalCosets { group: group.clone(), big: big.clone(), small: small.clone(), reps, coset_of })
    }

    pub fn from_coset_space(group: &GroupRef, cosets: &CosetSpace) -> Self {
        let mut out = Self::new(group, &group.whole(), cosets.subgroup()).expect("subgroup of the whole group");
        out.reps = cosets.section().to_vec();
        out.coset_of = group.elements().map(|g| Some(cosets.coset_of(g))).collect();
        out
    }

    /// Replaces the pointed section.
    pub fn with_section(mut self, reps: Vec<Elem>) -> Result<Self, GroupError> {
        if reps.len() != self.reps.len() || reps.iter().enumerate().any(|(i, &r)| self.coset_of[r] != Some(i)) || reps[0] != 0 {
            return Err(GroupError::InvalidAction("section must be pointed and pick one element per coset".into()));
        }
        self.reps = reps;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn big(&self) -> &Subgroup {
        &self.big
    }

    pub fn small(&self) -> &Subgroup {
        &self.small
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn rep(&self, x: usize) -> Elem {
        self.reps[x]
    }

    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g].expect("element of the ambient subgroup")
    }

    /// `g = r(x)·m`; returns `(x, m)`.
    pub fn decompose(&self, g: Elem) -> (usize, Elem) {
        let x = self.coset_of(g);
        (x, self.group.mul(self.group.inv(self.reps[x]), g))
    }

    pub fn act(&self, g: Elem, x: usize) -> usize {
        self.coset_of(self.group.mul(g, self.reps[x]))
    }

    /// `L/M` as an `L`-set when `L` is the whole group.
    pub fn gset(&self) -> Result<GSet, GroupError> {
        if self.big.order() != self.group.order() {
            return Err(GroupError::InvalidAction("cosets of a proper subgroup form no G-set".into()));
        }
        GSet::new(self.group.clone(), self.group.elements().map(|g| (0..self.len()).map(|x| self.act(g, x)).collect()).collect())
    }
}

/// ind_M^L(A) on the basis `ξ_M(r(x), a)` at `x·rank(A) + a`, with the `L`-action
/// `g·ξ(r(x), a) = ξ(r(gx), m·a)` where `g·r(x) = r(gx)·m`.
#[derive(Clone, Debug)]
pub struct InducedRing {
    cosets: LocalCosets,
    base: RingRef,
    carrier: RingRef,
}

impl InducedRing {
    pub fn new(cosets: LocalCosets, base: RingRef) -> Result<Self, InductionError> {
        let group = cosets.group.clone();
        let action = base.action().ok_or_else(|| InductionError::MissingAction(format!("{:?}", cosets.small.elements())))?;
        if !action.same_group(&group) || action.domain() != &cosets.small {
            return Err(InductionError::MissingAction("the subgroup being induced from".into()));
        }
        let m = base.rank();
        let k = cosets.len();
        let labels = (0..k)
            .flat_map(|x| base.labels().iter().map(move |a| (x, a)))
            .map(|(x, a)| format!("ξ({},{a})", group.label(cosets.rep(x))))
            .collect();
        let mut products = Vec::new();
        for x in 0..k {
            for i in 0..m {
                for (j, v) in base.row(i) {
                    products.push((x * m + i, x * m + j, v.map_indices(|c| x * m + c)));
                }
            }
        }
        let unit = base.unit().map(|u| ZVec::from_entries((0..k).flat_map(|x| u.iter().map(move |(c, v)| (x * m + c, v.clone())))));
        let ring = BasedRing::new(labels, products, unit)?;
        let mats = cosets
            .big
            .elements()
            .iter()
            .map(|&g| {
                let cols = (0..k)
                    .flat_map(|x| (0..m).map(move |a| (x, a)))
                    .map(|(x, a)| {
                        let (y, h) = cosets.decompose(group.mul(g, cosets.rep(x)));
                        action.at(h).column(a).map_indices(|c| y * m + c)
                    })
                    .collect();
                ZMatrix::from_columns(k * m, cols).expect("square")
            })
            .collect();
        let carrier = ring.with_action(Action::new(group, cosets.big.clone(), mats)?)?;
        let out = InducedRing { cosets, base, carrier: Arc::new(carrier) };
        out.verify_relations()?;
        Ok(out)
    }

    /// Induction from `H ≤ G` to `G` along a coset space (and its section).
    pub fn over(group: &GroupRef, cosets: &CosetSpace, base: RingRef) -> Result<Self, InductionError> {
        Self::new(LocalCosets::from_coset_space(group, cosets), base)
    }

    pub fn cosets(&self) -> &LocalCosets {
        &self.cosets
    }

    pub fn base(&self) -> &RingRef {
        &self.base
    }

    pub fn carrier(&self) -> &RingRef {
        &self.carrier
    }

    pub fn group(&self) -> &GroupRef {
        &self.cosets.group
    }

    /// ξ_M(s, a) for any `s ∈ L`.
    pub fn xi(&self, s: Elem, a: &ZVec) -> ZVec {
        let (x, h) = self.cosets.decompose(s);
        let m = self.base.rank();
        self.base.act(h, a).map_indices(|c| x * m + c)
    }

    /// The relations g·ξ(s,a) = ξ(gs,a), ξ(sh,a) = ξ(s,h·a) and the product rule, on all basis data.
    pub fn verify_relations(&self) -> Result<(), InductionError> {
        let group = self.group().clone();
        let big = self.cosets.big.elements();
        let small = self.cosets.small.elements();
        let r = &self.carrier;
        let m = self.base.rank();
        for &s in big {
            for a in 0..m {
                let ea = ZVec::unit(a);
                let xi = self.xi(s, &ea);
                for &g in big {
                    if r.act(g, &xi) != self.xi(group.mul(g, s), &ea) {
                        return Err(InductionError::Relation(format!("g·ξ(s,a) ≠ ξ(gs,a) at g={}, s={}", group.label(g), group.label(s))));
                    }
                }
                for &h in small {
                    if self.xi(group.mul(s, h), &ea) != self.xi(s, &self.base.act(h, &ea)) {
                        return Err(InductionError::Relation(format!("ξ(sh,a) ≠ ξ(s,ha) at s={}, h={}", group.label(s), group.label(h))));
                    }
                }
                for &t in big {
                    for b in 0..m {
                        let p = r.mul(&xi, &self.xi(t, &ZVec::unit(b)));
                        let expected = if self.cosets.coset_of(s) != self.cosets.coset_of(t) {
                            ZVec::zero()
                        } else if s == t {
                            self.xi(s, self.base.basis_mul(a, b))
                        } else {
                            continue;
                        };
                        if p != expected {
                            return Err(InductionError::Relation(format!("product rule fails at s={}, t={}", group.label(s), group.label(t))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Values of an element viewed as a function `L → A` (indexed by position in `L`).
    pub fn as_function(&self, v: &ZVec) -> Vec<ZVec> {
        let group = self.group();
        let big = &self.cosets.big;
        let m = self.base.rank();
        let mut out = vec![ZVec::zero(); big.order()];
        for (i, c) in v.iter() {
            let (x, a) = (i / m, i % m);
            for &h in self.cosets.small.elements() {
                let t = group.mul(self.cosets.rep(x), h);
                let val = self.base.act(group.inv(h), &ZVec::unit(a)).scale(c);
                let p = big.position(t).expect("in L");
                out[p] = &out[p] + &val;
            }
        }
        out
    }

    /// The proper ℤ^(G/H)-structure, χ_x acting as the projection onto the `x` block.
    pub fn proper_structure(&self) -> Result<ProperStructure, InductionError> {
        let space = Arc::new(points_space(&self.cosets)?);
        let lattice = PolyLattice::new(space.clone(), 0);
        let m = self.base.rank();
        let n = self.carrier.rank();
        let act = lattice
            .basis()
            .iter()
            .map(|c| {
                let cols = (0..n)
                    .map(|i| {
                        let w = constant_value(c, i / m);
                        ZVec::unit(i).scale(&w)
                    })
                    .collect();
                ZMatrix::from_columns(n, cols).expect("square")
            })
            .collect();
        Ok(ProperStructure::new(self.carrier.clone(), lattice, act)?)
    }
}

fn constant_value(c: &PolyFun, vertex: usize) -> Z {
    c.value(vertex).terms().next().map_or_else(Z::zero, |t| t.1.clone())
}

/// The 0-dimensional complex `G/H` with its translation action.
pub fn points_space(cosets: &LocalCosets) -> Result<GSimplicialComplex, InductionError> {
    let gs = cosets.gset()?;
    let k = cosets.len();
    let perms = cosets.group.elements().map(|g| (0..k).map(|x| gs.act(g, x)).collect()).collect();
    let act = Action::whole(cosets.group.clone(), perms)?;
    let facets: Vec<Vec<usize>> = (0..k).map(|x| vec![x]).collect();
    Ok(GSimplicialComplex::build(k, &facets, Some(act))?)
}

/// χ_H·A as a based ring with the restricted `H`-action, and its basis inside `A`.
#[derive(Clone, Debug)]
pub struct Compression {
    pub ring: RingRef,
    pub basis: Vec<ZVec>,
}

/// comp_H^G(A) = χ_H·A for `A` proper over the 0-dimensional complex `G/H`.
pub fn compress(cosets: &LocalCosets, proper: &ProperStructure) -> Result<Compression, InductionError> {
    let space = proper.lattice().space();
    let expected = points_space(cosets)?;
    if space.dim() > 0 || space.vertex_count() != cosets.len() || space.action().map(|a| a.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>())
        != expected.action().map(|a| a.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>())
    {
        return Err(InductionError::NotProper("the structure is not over the G-set G/H".into()));
    }
    let full = proper.fullness();
    if !full.full {
        return Err(InductionError::NotProper(format!("ℤ^(G/H)·A has rank {} with invariants {:?}", full.rank, full.invariants)));
    }
    let a = proper.ring();
    a.action().ok_or_else(|| InductionError::MissingAction("G".into()))?;
    let chi = PolyFun::vertex_coordinate(space.clone(), space.all(), 0, proper.lattice().degree());
    let p = proper.act_by(&chi)?;
    let basis = DenseMatrix::from_sparse(&p).image();
    let unit = a.unit().map(|u| p.apply(u));
    let ring = span_subring(a, &basis, "χH·", Some(cosets.small()), unit)?;
    Ok(Compression { ring: Arc::new(ring), basis })
}

fn coordinates(basis: &[ZVec], rows: usize, v: &ZVec) -> Option<ZVec> {
    if basis.is_empty() {
        return v.is_zero().then(ZVec::zero);
    }
    match DenseMatrix::from_columns(rows, basis).solve(&v.to_dense(rows)) {
        Solve::Solution(x) => Some(ZVec::from_dense(&x)),
        _ => None,
    }
}

/// The subring of `a` with the given ℤ-basis; fails when products or the action leave the span.
fn span_subring(a: &BasedRing, basis: &[ZVec], prefix: &str, domain: Option<&Subgroup>, unit: Option<ZVec>) -> Result<BasedRing, InductionError> {
    let n = a.rank();
    let coords = |v: &ZVec| coordinates(basis, n, v).ok_or_else(|| InductionError::Relation("span is not closed".into()));
    let labels = basis.iter().map(|b| format!("{prefix}({})", a.element_label(b))).collect();
    let mut products = Vec::new();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let c = coords(&a.mul(x, y))?;
            if !c.is_zero() {
                products.push((i, j, c));
            }
        }
    }
    let unit = unit.and_then(|u| coordinates(basis, n, &u));
    let mut ring = BasedRing::new(labels, products, None)?;
    if let Some(u) = unit {
        let trial = ring.clone().with_unit(Some(u));
        if trial.check_unit().is_ok() {
            ring = trial;
        }
    }
    if let (Some(dom), Some(act)) = (domain, a.action()) {
        let group = act.group().clone();
        let mats = dom
            .elements()
            .iter()
            .map(|&h| {
                let cols = basis.iter().map(|b| coords(&a.act(h, b))).collect::<Result<Vec<_>, _>>()?;
                Ok(ZMatrix::from_columns(basis.len(), cols).expect("square"))
            })
            .collect::<Result<Vec<_>, InductionError>>()?;
        ring = ring.with_action(Action::new(group, dom.clone(), mats)?)?;
    }
    Ok(ring)
}

/// The subring spanned by a set of basis vectors of `a`.
fn coordinate_subring(a: &BasedRing, indices: &[usize], domain: &Subgroup) -> Result<BasedRing, InductionError> {
    let basis: Vec<ZVec> = indices.iter().map(|&i| ZVec::unit(i)).collect();
    // a corner e·A·e has unit e·1·e
    let unit = a.unit().map(|u| ZVec::from_entries(indices.iter().map(|&i| (i, u.get(i)))));
    span_subring(a, &basis, "", Some(domain), unit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IsoName {
    Across,
    Green,
    Mxg,
    Indtriv,
    IndcompI,
    IndcompII,
    Indx,
    Indxtheta,
}

impl IsoName {
    pub const ALL: [IsoName; 8] = [
        IsoName::Across,
        IsoName::Green,
        IsoName::Mxg,
        IsoName::Indtriv,
        IsoName::IndcompI,
        IsoName::IndcompII,
        IsoName::Indx,
        IsoName::Indxtheta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IsoName::Across => "across",
            IsoName::Green => "green",
            IsoName::Mxg => "mxg",
            IsoName::Indtriv => "indtriv",
            IsoName::IndcompI => "indcomp_i",
            IsoName::IndcompII => "indcomp_ii",
            IsoName::Indx => "indx",
            IsoName::Indxtheta => "indxtheta",
        }
    }
}

impl fmt::Display for IsoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IsoName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        IsoName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| format!("unknown isomorphism {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramCheck {
    pub name: String,
    pub result: Result<(), String>,
}

#[derive(Clone, Debug)]
pub struct IsoReport {
    pub name: IsoName,
    /// Absent when the two sides are lattices rather than rings (`indx` in positive dimension).
    pub hom: Option<RingHom>,
    pub matrix: ZMatrix,
    pub verdict: HomVerdict,
    pub diagram_checks: Vec<DiagramCheck>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed() && self.diagram_checks.iter().all(|d| d.result.is_ok())
    }

    pub fn summary(&self) -> String {
        let mut parts: Vec<String> = self
            .verdict
            .results
            .iter()
            .map(|(f, r)| match r {
                Ok(()) => format!("{}: ok", f.name()),
                Err(c) => format!("{}: {c}", f.name()),
            })
            .collect();
        for d in &self.diagram_checks {
            parts.push(match &d.result {
                Ok(()) => format!("{}: ok", d.name),
                Err(e) => format!("{}: {e}", d.name),
            });
        }
        format!("{} (rank {}): {}", self.name, self.matrix.ncols(), parts.join(", "))
    }
}

fn report(name: IsoName, hom: RingHom, flags: &[HomFlag], diagram_checks: Vec<DiagramCheck>) -> IsoReport {
    let verdict = check_hom(&hom, flags);
    IsoReport { name, matrix: hom.matrix.clone(), hom: Some(hom), verdict, diagram_checks }
}

fn ring_flags(source: &BasedRing, equivariant: bool) -> Vec<HomFlag> {
    let mut flags = vec![HomFlag::Multiplicative];
    if source.is_unital() {
        flags.push(HomFlag::Unital);
    }
    if equivariant {
        flags.push(HomFlag::Equivariant);
    }
    flags.push(HomFlag::Bijective);
    flags
}

fn hom(source: &RingRef, target: &RingRef, cols: Vec<ZVec>) -> RingHom {
    let m = ZMatrix::from_columns(target.rank(), cols).expect("images fit the target");
    RingHom::new(source.clone(), target.clone(), m).expect("shape")
}

fn restricted(a: &BasedRing, h: &Subgroup) -> Result<BasedRing, InductionError> {
    let act = a.action().ok_or_else(|| InductionError::MissingAction("G".into()))?;
    let r = act.restrict(h)?;
    Ok(a.clone().with_action_unchecked(Some(r)))
}

fn compare_maps(name: &str, n: usize, f: impl Fn(usize) -> ZVec, g: impl Fn(usize) -> ZVec, label: impl Fn(usize) -> String) -> DiagramCheck {
    let result = (0..n).find(|&i| f(i) != g(i)).map_or(Ok(()), |i| Err(format!("differs on {}", label(i))));
    DiagramCheck { name: name.into(), result }
}

fn check_is_hom(name: &str, source: &RingRef, target: &RingRef, cols: Vec<ZVec>) -> DiagramCheck {
    let v = check_hom(&hom(source, target, cols), &[HomFlag::Multiplicative]);
    DiagramCheck { name: name.into(), result: v.first_failure().map_or(Ok(()), |(_, c)| Err(c.to_string())) }
}

/// 𝒜(A⋊𝒢^G(G/H)) ≅ M_{G/H}(A⋊H), `b⋊g ↦ e_{tH,sH} ⊗ t̂⁻¹(b) ⋊ t̂⁻¹gŝ`, with `α∘ȷ = ι`.
pub fn across(cosets: &LocalCosets, a: &RingRef) -> Result<IsoReport, InductionError> {
    let group = cosets.group.clone();
    let act = a.action().ok_or_else(|| InductionError::MissingAction("G".into()))?;
    let h = cosets.small.clone();
    let tg = TransportGroupoid::new(cosets.gset()?);
    let source: RingRef = Arc::new(groupoid_crossed(a, &tg)?);
    let axh: RingRef = Arc::new(crossed_product(&restricted(a, &h)?)?);
    let k = cosets.len();
    let target: RingRef = Arc::new(matrices(k, &axh)?);
    let na = tg.arrow_count();
    let ho = h.order();
    let cross_idx = |i: usize, e: Elem| i * ho + h.position(e).expect("in H");
    let mat_idx = |row: usize, col: usize, v: &ZVec| v.map_indices(|c| (row * k + col) * axh.rank() + c);
    let cols = (0..source.rank())
        .map(|idx| {
            let (b, ar) = (idx / na, tg.arrow(idx % na));
            let (s, t) = (cosets.rep(ar.source), cosets.rep(ar.target));
            let tinv = group.inv(t);
            let hh = group.product([tinv, ar.element, s]);
            let inner = act.at(tinv).column(b).map_indices(|c| cross_idx(c, hh));
            mat_idx(ar.target, ar.source, &inner)
        })
        .collect();
    let f = hom(&source, &target, cols);
    let j = |idx: usize| {
        let (b, p) = (idx / ho, idx % ho);
        ZVec::unit(b * na + tg.arrow_index(0, h.elements()[p]))
    };
    let iota = |idx: usize| mat_idx(0, 0, &ZVec::unit(idx));
    let jcols: Vec<ZVec> = (0..axh.rank()).map(j).collect();
    let diagrams = vec![
        check_is_hom("j multiplicative", &axh, &source, jcols.clone()),
        compare_maps("alpha∘j = iota", axh.rank(), |i| f.apply(&jcols[i]), iota, |i| axh.label(i).to_string()),
    ];
    let flags = ring_flags(&source, false);
    Ok(report(IsoName::Across, f, &flags, diagrams))
}

/// ind_H^G(A)⋊G ≅ M_{G/H}(A⋊H),
/// `ξ(s,a)⋊g ↦ e_{sH,g⁻¹sH} ⊗ φ(s)(a) ⋊ φ(s)φ(g⁻¹s)⁻¹` with `φ(s) = ŝ⁻¹s`.
pub fn green(cosets: &LocalCosets, a: &RingRef) -> Result<IsoReport, InductionError> {
    let group = cosets.group.clone();
    let ind = InducedRing::new(cosets.clone(), a.clone())?;
    let h = cosets.small.clone();
    let ho = h.order();
    let source: RingRef = Arc::new(crossed_product(ind.carrier())?);
    let axh: RingRef = Arc::new(crossed_product(a)?);
    let k = cosets.len();
    let target: RingRef = Arc::new(matrices(k, &axh)?);
    let m = a.rank();
    let go = group.order();
    let phi = |s: Elem| cosets.decompose(s).1;
    let cross_idx = |i: usize, e: Elem| i * ho + h.position(e).expect("in H");
    let mat_idx = |row: usize, col: usize, v: &ZVec| v.map_indices(|c| (row * k + col) * axh.rank() + c);
    let alpha = |s: Elem, av: &ZVec, g: Elem| -> ZVec {
        let ginv_s = group.mul(group.inv(g), s);
        let x = cosets.coset_of(s);
        let y = cosets.coset_of(ginv_s);
        let hh = group.mul(phi(s), group.inv(phi(ginv_s)));
        let inner = a.act(phi(s), av);
        let inner = ZVec::from_entries(inner.iter().map(|(c, v)| (cross_idx(c, hh), v.clone())));
        mat_idx(x, y, &inner)
    };
    let cols = (0..source.rank())
        .map(|idx| {
            let (i, g) = (idx / go, idx % go);
            let (x, av) = (i / m, ZVec::unit(i % m));
            alpha(cosets.rep(x), &av, g)
        })
        .collect();
    let f = hom(&source, &target, cols);
    // second triangle: ξ(1,-)⋊id followed by α is e_{H,H} ⊗ -
    let jcols: Vec<ZVec> = (0..axh.rank())
        .map(|idx| {
            let (b, e) = (idx / ho, h.elements()[idx % ho]);
            ind.xi(0, &ZVec::unit(b)).map_indices(|c| c * go + e)
        })
        .collect();
    let diagrams = vec![
        check_is_hom("xi(1,-)⋊id multiplicative", &axh, &source, jcols.clone()),
        compare_maps("alpha∘(xi(1,-)⋊id) = e_HH⊗-", axh.rank(), |i| f.apply(&jcols[i]), |i| mat_idx(0, 0, &ZVec::unit(i)), |i| {
            axh.label(i).to_string()
        }),
        green_representation_triangle(&ind, &f, &axh),
    ];
    let flags = ring_flags(&source, false);
    Ok(report(IsoName::Green, f, &flags, diagrams))
}

/// The first triangle: both routes into End_{A⋊H}(A^(G)) agree on every basis pair.
fn green_representation_triangle(ind: &InducedRing, f: &RingHom, axh: &BasedRing) -> DiagramCheck {
    let cosets = &ind.cosets;
    let group = ind.group().clone();
    let a = ind.base();
    let h = &cosets.small;
    let ho = h.order();
    let m = a.rank();
    let k = cosets.len();
    let go = group.order();
    // A^(G) has basis (t, b) at t·m + b
    let left = |u: usize, t: Elem, b: usize| -> ZVec {
        let (i, g) = (u / go, u % go);
        let fvals = ind.as_function(&ZVec::unit(i));
        let gt = group.mul(g, t);
        a.mul(&fvals[gt], &ZVec::unit(b)).map_indices(|c| gt * m + c)
    };
    let to_blocks = |t: Elem, b: &ZVec| -> (usize, ZVec) {
        // χ_t·b = χ_ŷ·(k(b) ⋊ k) with t = ŷk
        let (y, kk) = cosets.decompose(t);
        let kb = a.act(kk, b);
        (y, ZVec::from_entries(kb.iter().map(|(c, v)| (c * ho + h.position(kk).expect("in H"), v.clone()))))
    };
    let from_block = |x: usize, v: &ZVec| -> ZVec {
        // χ_x̂·(c⋊k) = k⁻¹(c) at x̂k
        let mut out = ZVec::zero();
        for (idx, coef) in v.iter() {
            let (c, kk) = (idx / ho, h.elements()[idx % ho]);
            let t = group.mul(cosets.rep(x), kk);
            let val = a.act(group.inv(kk), &ZVec::unit(c)).scale(coef);
            out = &out + &val.map_indices(|j| t * m + j);
        }
        out
    };
    let right = |u: usize, t: Elem, b: usize| -> ZVec {
        let (y, alpha_y) = to_blocks(t, &ZVec::unit(b));
        let image = f.matrix.column(u);
        let mut out = ZVec::zero();
        for (idx, coef) in image.iter() {
            let (cell, e) = (idx / axh.rank(), idx % axh.rank());
            let (row, col) = (cell / k, cell % k);
            if col != y {
                continue;
            }
            let prod = axh.mul(&ZVec::unit(e), &alpha_y).scale(coef);
            out = &out + &from_block(row, &prod);
        }
        out
    };
    for u in 0..f.source.rank() {
        for t in group.elements() {
            for b in 0..m {
                if left(u, t, b) != right(u, t, b) {
                    return DiagramCheck {
                        name: "representation on A^(G)".into(),
                        result: Err(format!("differs on {} acting on χ_{}·{}", f.source.label(u), group.label(t), a.label(b))),
                    };
                }
            }
        }
    }
    DiagramCheck { name: "representation on A^(G)".into(), result: Ok(()) }
}

/// (M_X̲ A)⋊G ≅ M_X̲(A⋊G), `(e_{x,y}⊗a)⋊g ↦ e_{x,g⁻¹y}⊗(a⋊g)`.
pub fn mxg(x: &GSet, a: &RingRef) -> Result<IsoReport, InductionError> {
    let group = x.group().clone();
    let act = a.action().ok_or_else(|| InductionError::MissingAction("G".into()))?;
    if act.domain().order() != group.order() {
        return Err(InductionError::MissingAction("the whole group".into()));
    }
    let source: RingRef = Arc::new(crossed_product(&matrices_over(x, a)?)?);
    let axg = crossed_product(a)?;
    let target: RingRef = Arc::new(matrices_over(x, &axg)?);
    let n = x.len();
    let (m, go) = (a.rank(), group.order());
    let cols = (0..source.rank())
        .map(|idx| {
            let (i, g) = (idx / go, idx % go);
            let (cell, b) = (i / m, i % m);
            let (r, c) = (cell / n, cell % n);
            let c2 = x.act(group.inv(g), c);
            ZVec::unit((r * n + c2) * axg.rank() + b * go + g)
        })
        .collect();
    let flags = ring_flags(&source, true);
    Ok(report(IsoName::Mxg, hom(&source, &target, cols), &flags, vec![]))
}

/// ind_H^G res B ≅ ℤ^(G/H) ⊗ B, `ξ(s,b) ↦ χ_{sH} ⊗ s(b)`.
pub fn indtriv(cosets: &LocalCosets, b: &RingRef) -> Result<IsoReport, InductionError> {
    let res = Arc::new(restricted(b, &cosets.small)?);
    let ind = InducedRing::new(cosets.clone(), res)?;
    let target: RingRef = Arc::new(tensor(&functions_on(&cosets.gset()?), b)?);
    let m = b.rank();
    let cols = (0..ind.carrier.rank())
        .map(|i| {
            let x = i / m;
            b.act(cosets.rep(x), &ZVec::unit(i % m)).map_indices(|c| x * m + c)
        })
        .collect();
    let flags = ring_flags(ind.carrier(), true);
    Ok(report(IsoName::Indtriv, hom(ind.carrier(), &target, cols), &flags, vec![]))
}

/// B ≅ comp_H^G ind_H^G B, `b ↦ ξ(1,b)`.
pub fn indcomp_i(cosets: &LocalCosets, b: &RingRef) -> Result<IsoReport, InductionError> {
    let ind = InducedRing::new(cosets.clone(), b.clone())?;
    let proper = ind.proper_structure()?;
    let comp = compress(cosets, &proper)?;
    let n = ind.carrier.rank();
    let cols = (0..b.rank())
        .map(|i| coordinates(&comp.basis, n, &ind.xi(0, &ZVec::unit(i))).ok_or_else(|| InductionError::Relation("ξ(1,b) outside χ_H·A".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let flags = ring_flags(b, true);
    Ok(report(IsoName::IndcompI, hom(b, &comp.ring, cols), &flags, vec![]))
}

/// ind_H^G comp_H^G A ≅ A, `ξ(s, χ_H a) ↦ χ_{sH} s(a)`.
pub fn indcomp_ii(cosets: &LocalCosets, proper: &ProperStructure) -> Result<IsoReport, InductionError> {
    let comp = compress(cosets, proper)?;
    let ind = InducedRing::new(cosets.clone(), comp.ring.clone())?;
    let a = proper.ring();
    let m = comp.ring.rank();
    let cols = (0..ind.carrier.rank()).map(|i| a.act(cosets.rep(i / m), &comp.basis[i % m])).collect();
    let flags = ring_flags(ind.carrier(), true);
    Ok(report(IsoName::IndcompII, hom(ind.carrier(), a, cols), &flags, vec![]))
}

/// ℤ^(G×_H X) ≅ ind_H^G ℤ^(X) within polynomial degree `degree`: θ places
/// `ξ(r(c), φ)` on the copy of `X` over the coset `c`.
pub fn indx(group: &GroupRef, h: &Subgroup, x: &Arc<GSimplicialComplex>, degree: u32) -> Result<IsoReport, InductionError> {
    let cosets = group.cosets(h);
    let local = LocalCosets::from_coset_space(group, &cosets);
    let ind_space = Arc::new(induce_space(group, h, x)?);
    let lat_x = PolyLattice::new(x.clone(), degree);
    let lat_ind = PolyLattice::new(ind_space.clone(), degree);
    let r = lat_x.rank();
    let k = local.len();
    let nv = x.vertex_count();
    let h_coords = |e: Elem, v: &ZVec| -> Result<ZVec, InductionError> {
        if x.action().is_none() {
            return Ok(v.clone());
        }
        let f = lat_x.element(v).translate(e)?;
        lat_x.coordinates(&f).ok_or(InductionError::Poly(PolyError::OutsideLattice(degree)))
    };
    let copy = |c: usize, f: &PolyFun| -> Result<PolyFun, InductionError> {
        let entries = f.nonzero().map(|s| (x.simplex(s).iter().map(|v| c * nv + v).collect(), f.value(s))).collect();
        Ok(PolyFun::from_values(ind_space.clone(), ind_space.all(), entries, f.bound())?)
    };
    let theta_fun = |i: usize| copy(i / r, &lat_x.basis()[i % r]);
    let funs = (0..k * r).map(theta_fun).collect::<Result<Vec<_>, _>>()?;
    let cols = funs
        .iter()
        .map(|f| lat_ind.coordinates(f).ok_or(InductionError::Poly(PolyError::OutsideLattice(degree))))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = ZMatrix::from_columns(lat_ind.rank(), cols).expect("fits");
    let mut results = Vec::new();
    // multiplicative wherever the product stays within the degree bound
    let mut mult = Ok(());
    'outer: for i in 0..k * r {
        for j in 0..k * r {
            let expected = if i / r == j / r {
                let p = lat_x.basis()[i % r].mul(&lat_x.basis()[j % r]).ok();
                match p {
                    Some(p) if p.degree() <= degree => copy(i / r, &p)?,
                    _ => continue,
                }
            } else {
                PolyFun::zero(ind_space.clone(), ind_space.all(), degree)
            };
            if funs[i].mul(&funs[j])? != expected {
                mult = Err(Counterexample::Multiplicative { left: format!("basis {i}"), right: format!("basis {j}") });
                break 'outer;
            }
        }
    }
    results.push((HomFlag::Multiplicative, mult));
    let mut equi = Ok(());
    'eq: for g in group.elements() {
        for i in 0..k * r {
            let (c, kk) = (i / r, i % r);
            let (c2, hh) = local.decompose(group.mul(g, local.rep(c)));
            let moved = h_coords(hh, &ZVec::unit(kk))?.map_indices(|t| c2 * r + t);
            let lhs = matrix.apply(&moved);
            let rhs_fun = lat_ind.element(matrix.column(i)).translate(g)?;
            let rhs = lat_ind.coordinates(&rhs_fun).ok_or(InductionError::Poly(PolyError::OutsideLattice(degree)))?;
            if lhs != rhs {
                equi = Err(Counterexample::Equivariant { element: group.label(g).into(), basis: format!("basis {i}") });
                break 'eq;
            }
        }
    }
    results.push((HomFlag::Equivariant, equi));
    let s = smith_summary(&matrix);
    let bij = if matrix.nrows() == matrix.ncols() && s.rank == matrix.ncols() && s.invariants.is_empty() {
        Ok(())
    } else {
        Err(Counterexample::Bijective(format!("{}x{} of rank {}", matrix.nrows(), matrix.ncols(), s.rank)))
    };
    results.push((HomFlag::Bijective, bij));
    Ok(IsoReport { name: IsoName::Indx, hom: None, matrix, verdict: HomVerdict { results }, diagram_checks: vec![] })
}

/// One summand `res_G^H ind_K^G(A)[HθK]` and its comparison with ind_{H_θ}^H.
#[derive(Clone, Debug)]
pub struct ResIndSummand {
    pub theta: Elem,
    pub rank: usize,
    pub h_theta: Subgroup,
    pub report: IsoReport,
}

/// res_G^H ind_K^G(A)[HθK] ≅ ind_{H_θ}^H(c*_{θ⁻¹} res A), `ξ_K(hθ, a) ↦ ξ_{H_θ}(h, a)`.
pub fn indxtheta(ind: &InducedRing, h: &Subgroup, theta: Elem) -> Result<(IsoReport, usize), InductionError> {
    let group = ind.group().clone();
    let kgrp = ind.cosets.small.clone();
    let a = ind.base();
    let m = a.rank();
    let k_act = a.action().expect("induced from an acted ring");
    let in_double = |s: Elem| h.elements().iter().any(|&x| kgrp.elements().iter().any(|&y| group.product([x, theta, y]) == s));
    let xs: Vec<usize> = (0..ind.cosets.len()).filter(|&x| in_double(ind.cosets.rep(x))).collect();
    let indices: Vec<usize> = xs.iter().flat_map(|&x| (0..m).map(move |c| x * m + c)).collect();
    let source: RingRef = Arc::new(coordinate_subring(ind.carrier(), &indices, h)?);
    let ti = group.inv(theta);
    let h_theta = group.intersect(h, &group.conjugate_subgroup(theta, &kgrp));
    let mats = h_theta.elements().iter().map(|&e| k_act.at(group.product([ti, e, theta])).clone()).collect();
    let twisted = a.as_ref().clone().with_action(Action::new(group.clone(), h_theta.clone(), mats)?)?;
    let target = InducedRing::new(LocalCosets::new(&group, h, &h_theta)?, Arc::new(twisted))?;
    let cols = xs
        .iter()
        .flat_map(|&x| (0..m).map(move |c| (x, c)))
        .map(|(x, c)| {
            let s = ind.cosets.rep(x);
            let (hh, kk) = h
                .elements()
                .iter()
                .find_map(|&e| {
                    let kk = group.product([ti, group.inv(e), s]);
                    kgrp.contains(kk).then_some((e, kk))
                })
                .expect("s lies in HθK");
            target.xi(hh, &a.act(kk, &ZVec::unit(c)))
        })
        .collect();
    let flags = ring_flags(&source, true);
    Ok((report(IsoName::Indxtheta, hom(&source, target.carrier(), cols), &flags, vec![]), indices.len()))
}

/// Splits res_G^H ind_K^G(A) over `H\G/K`, checks it is a direct sum of `H`-rings,
/// and compares each summand with the induced ring from `H_θ`.
pub fn decompose_res_ind(ind: &InducedRing, h: &Subgroup) -> Result<Vec<ResIndSummand>, InductionError> {
    let group = ind.group().clone();
    if !h.is_subset_of(&group.whole()) {
        return Err(InductionError::Group(GroupError::NotASubgroup("H".into())));
    }
    let kgrp = ind.cosets.small.clone();
    let m = ind.base.rank();
    let dcs = group.double_cosets(h, &kgrp);
    let block_of: Vec<usize> = (0..ind.carrier.rank())
        .map(|i| {
            let s = ind.cosets.rep(i / m);
            dcs.iter().position(|d| d.elements.binary_search(&s).is_ok()).expect("double cosets cover G")
        })
        .collect();
    let r = ind.carrier();
    let act = r.action().expect("induced action");
    for i in 0..r.rank() {
        for &e in h.elements() {
            if act.at(e).column(i).iter().any(|(j, _)| block_of[j] != block_of[i]) {
                return Err(InductionError::Relation(format!("{} moves a summand", group.label(e))));
            }
        }
        for j in 0..r.rank() {
            if block_of[i] != block_of[j] && !r.basis_mul(i, j).is_zero() {
                return Err(InductionError::Relation("summands do not annihilate each other".into()));
            }
        }
    }
    let mut out = Vec::new();
    let mut total = 0;
    for d in &dcs {
        let (report, rank) = indxtheta(ind, h, d.representative)?;
        total += rank;
        out.push(ResIndSummand { theta: d.representative, rank, h_theta: d.h_theta.clone(), report });
    }
    if total != r.rank() {
        return Err(InductionError::Relation(format!("summand ranks add to {total}, not {}", r.rank())));
    }
    Ok(out)
}

/// A group ring `ℤ[H]` viewed as an `H`-ring by conjugation, for `H ≤ G` given by elements of `G`.
pub fn subgroup_ring(group: &GroupRef, h: &Subgroup) -> Result<BasedRing, InductionError> {
    let els = h.elements();
    let n = els.len();
    let labels = els.iter().map(|&e| group.label(e).to_string()).collect();
    let products: Vec<_> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, ZVec::unit(h.position(group.mul(els[i], els[j])).expect("closed")))).collect();
    let ring = BasedRing::new(labels, products, Some(ZVec::unit(0)))?;
    let mats = els
        .iter()
        .map(|&k| ZMatrix::from_columns(n, els.iter().map(|&x| ZVec::unit(h.position(group.conj(k, x)).expect("normal in itself"))).collect()).expect("square"))
        .collect();
    Ok(ring.with_action(Action::new(group.clone(), h.clone(), mats)?)?)
}

/// The trivial `H`-action on `a`.
pub fn with_trivial_action(a: &BasedRing, group: &GroupRef, h: &Subgroup) -> Result<BasedRing, InductionError> {
    let mats = vec![ZMatrix::identity(a.rank()); h.order()];
    Ok(a.clone().without_action().with_action(Action::new(group.clone(), h.clone(), mats)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::rings::integers;

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn subgroup_of_order(g: &GroupRef, n: usize) -> Subgroup {
        g.all_subgroups().into_iter().find(|s| s.order() == n).unwrap()
    }

    fn z_over(g: &GroupRef, h: &Subgroup) -> RingRef {
        Arc::new(with_trivial_action(&integers(), g, h).unwrap())
    }

    fn cosets(g: &GroupRef, h: &Subgroup) -> LocalCosets {
        LocalCosets::new(g, &g.whole(), h).unwrap()
    }

    fn other_section(c: &LocalCosets) -> LocalCosets {
        let g = c.group().clone();
        let reps: Vec<Elem> = (0..c.len())
            .map(|x| if x == 0 { 0 } else { *c.small().elements().iter().map(|&m| g.mul(c.rep(x), m)).collect::<Vec<_>>().last().unwrap() })
            .collect();
        c.clone().with_section(reps).unwrap()
    }

    /// Independent model: ind_H^G(A) as functions f: G → A with f(sh) = h⁻¹f(s).
    struct FunctionModel<'a> {
        g: &'a GroupRef,
        h: &'a Subgroup,
        a: &'a BasedRing,
    }

    impl FunctionModel<'_> {
        fn xi(&self, s: Elem, a: &ZVec) -> Vec<ZVec> {
            let mut out = vec![ZVec::zero(); self.g.order()];
            for &e in self.h.elements() {
                out[self.g.mul(s, e)] = self.a.act(self.g.inv(e), a);
            }
            out
        }

        fn mul(&self, f: &[ZVec], k: &[ZVec]) -> Vec<ZVec> {
            f.iter().zip(k).map(|(x, y)| self.a.mul(x, y)).collect()
        }

        fn act(&self, g: Elem, f: &[ZVec]) -> Vec<ZVec> {
            (0..self.g.order()).map(|t| f[self.g.mul(self.g.inv(g), t)].clone()).collect()
        }
    }

    #[test]
    fn carrier_matches_the_function_model() {
        let g = s3();
        let h = subgroup_of_order(&g, 2);
        let a = Arc::new(subgroup_ring(&g, &h).unwrap());
        for c in [cosets(&g, &h), other_section(&cosets(&g, &h))] {
            let ind = InducedRing::new(c.clone(), a.clone()).unwrap();
            let model = FunctionModel { g: &g, h: &h, a: &a };
            let n = ind.carrier().rank();
            assert_eq!(n, 6);
            for i in 0..n {
                let fi = ind.as_function(&ZVec::unit(i));
                assert_eq!(fi, model.xi(c.rep(i / 2), &ZVec::unit(i % 2)));
                for j in 0..n {
                    let fj = ind.as_function(&ZVec::unit(j));
                    assert_eq!(ind.as_function(ind.carrier().basis_mul(i, j)), model.mul(&fi, &fj));
                }
                for e in g.elements() {
                    assert_eq!(ind.as_function(&ind.carrier().act(e, &ZVec::unit(i))), model.act(e, &fi));
                }
            }
        }
    }

    #[test]
    fn induced_examples() {
        let g = s3();
        let h = subgroup_of_order(&g, 2);
        let ind = InducedRing::new(cosets(&g, &h), z_over(&g, &h)).unwrap();
        assert_eq!(ind.carrier().rank(), 3);
        let one = ZVec::unit(0);
        let t = g.elements().find(|&t| !h.contains(t)).unwrap();
        assert!(ind.carrier().mul(&ind.xi(0, &one), &ind.xi(t, &one)).is_zero());
        assert!(InducedRing::new(cosets(&g, &h), Arc::new(integers())).is_err());
    }

    #[test]
    fn green_and_across_examples() {
        let g = s3();
        let c3 = subgroup_of_order(&g, 3);
        let c2 = subgroup_of_order(&g, 2);
        let r = green(&cosets(&g, &c3), &z_over(&g, &c3)).unwrap();
        assert_eq!(r.matrix.ncols(), 12);
        assert!(r.passed(), "{}", r.summary());
        let zc2 = Arc::new(subgroup_ring(&g, &c2).unwrap());
        let r2 = green(&cosets(&g, &c2), &zc2).unwrap();
        assert!(r2.passed(), "{}", r2.summary());
        let zg = z_over(&g, &g.whole());
        let a = across(&cosets(&g, &c2), &zg).unwrap();
        assert_eq!(a.matrix.ncols(), 18);
        assert!(a.passed(), "{}", a.summary());
    }

    #[test]
    fn verdicts_do_not_depend_on_the_section() {
        let g = s3();
        let c2 = subgroup_of_order(&g, 2);
        let base = cosets(&g, &c2);
        let alt = other_section(&base);
        assert_ne!(base.rep(1), alt.rep(1));
        let zc2 = Arc::new(subgroup_ring(&g, &c2).unwrap());
        let zg = Arc::new(crate::rings::group_ring(&g));
        for c in [&base, &alt] {
            assert!(green(c, &zc2).unwrap().passed());
            assert!(across(c, &zg).unwrap().passed());
            assert!(indtriv(c, &zg).unwrap().passed());
            assert!(indcomp_i(c, &zc2).unwrap().passed());
        }
        let m1 = green(&base, &zc2).unwrap().matrix;
        let m2 = green(&alt, &zc2).unwrap().matrix;
        assert_ne!(m1, m2);
    }

    #[test]
    fn a_broken_map_is_caught() {
        let g = s3();
        let c2 = subgroup_of_order(&g, 2);
        let zg = z_over(&g, &g.whole());
        let mut r = across(&cosets(&g, &c2), &zg).unwrap();
        let h = r.hom.take().unwrap();
        let mut cols: Vec<ZVec> = h.matrix.columns().to_vec();
        cols.swap(1, 2);
        let broken = RingHom::new(h.source.clone(), h.target.clone(), ZMatrix::from_columns(h.target.rank(), cols).unwrap()).unwrap();
        assert!(!check_hom(&broken, &[HomFlag::Multiplicative]).passed());
    }

    #[test]
    fn mxg_example() {
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let x = crate::rings::GSetSpec::Regular.build(&g).unwrap();
        let r = mxg(&x, &z_over(&g, &g.whole())).unwrap();
        assert_eq!(r.matrix.ncols(), 8);
        assert!(r.passed(), "{}", r.summary());
        let s = s3();
        let xs = crate::rings::GSetSpec::Regular.build(&s).unwrap();
        assert!(mxg(&xs, &Arc::new(crate::rings::group_ring(&s))).unwrap().passed());
    }

    #[test]
    fn compression_examples() {
        let g = s3();
        let c2 = subgroup_of_order(&g, 2);
        let c = cosets(&g, &c2);
        let ind = InducedRing::new(c.clone(), z_over(&g, &c2)).unwrap();
        let comp = compress(&c, &ind.proper_structure().unwrap()).unwrap();
        assert_eq!(comp.ring.rank(), 1);
        assert!(comp.ring.is_unital());
        let whole = cosets(&g, &g.whole());
        let zg = Arc::new(crate::rings::group_ring(&g));
        let ind_g = InducedRing::new(whole.clone(), zg.clone()).unwrap();
        assert_eq!(compress(&whole, &ind_g.proper_structure().unwrap()).unwrap().ring.rank(), 6);
        let ii = indcomp_ii(&c, &ind.proper_structure().unwrap()).unwrap();
        assert!(ii.passed(), "{}", ii.summary());
    }

    #[test]
    fn not_proper_is_reported() {
        let g: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let one = g.trivial_subgroup();
        let c = cosets(&g, &one);
        let space = Arc::new(points_space(&c).unwrap());
        let zg = Arc::new(crate::rings::group_ring(&g));
        let zero = ProperStructure::new(zg, PolyLattice::new(space, 0), vec![ZMatrix::zero(2, 2); 2]).unwrap();
        assert!(matches!(indcomp_ii(&c, &zero), Err(InductionError::NotProper(_))));
    }

    #[test]
    fn res_ind_decomposition() {
        let g = s3();
        let c2 = subgroup_of_order(&g, 2);
        let ind = InducedRing::new(cosets(&g, &c2), z_over(&g, &c2)).unwrap();
        let parts = decompose_res_ind(&ind, &c2).unwrap();
        let mut ranks: Vec<usize> = parts.iter().map(|p| p.rank).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![1, 2]);
        assert!(parts.iter().all(|p| p.report.passed()));
        let two = parts.iter().find(|p| p.rank == 2).unwrap();
        assert_eq!(two.h_theta.order(), 1);
        let triv = g.trivial_subgroup();
        let free = InducedRing::new(cosets(&g, &triv), z_over(&g, &triv)).unwrap();
        let parts = decompose_res_ind(&free, &triv).unwrap();
        assert_eq!(parts.len(), 6);
        assert!(parts.iter().all(|p| p.rank == 1 && p.report.passed()));
        let whole = g.whole();
        let zg = Arc::new(crate::rings::group_ring(&g));
        let top = InducedRing::new(cosets(&g, &whole), zg).unwrap();
        let parts = decompose_res_ind(&top, &whole).unwrap();
        assert_eq!(parts.len(), 1);
        assert!(parts[0].report.passed());
    }

    #[test]
    fn indtriv_ranks_add_up() {
        let g = s3();
        let zg = Arc::new(crate::rings::group_ring(&g));
        for h in g.all_subgroups() {
            let c = cosets(&g, &h);
            let r = indtriv(&c, &zg).unwrap();
            assert!(r.passed(), "{}", r.summary());
            let ind = InducedRing::new(c.clone(), Arc::new(restricted(&zg, &h).unwrap())).unwrap();
            let total: usize = decompose_res_ind(&ind, &h).unwrap().iter().map(|p| p.rank).sum();
            assert_eq!(total, c.len() * 6);
        }
    }

    #[test]
    fn indx_on_points_and_edges() {
        let g = s3();
        let c2 = subgroup_of_order(&g, 2);
        let flip = Action::new(g.clone(), c2.clone(), vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        let path = Arc::new(GSimplicialComplex::build(3, &[vec![0, 1], vec![1, 2]], Some(flip)).unwrap());
        let r = indx(&g, &c2, &path, 2).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let act = Action::new(g.clone(), c2.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let pts = Arc::new(GSimplicialComplex::build(2, &[vec![0], vec![1]], Some(act)).unwrap());
        assert!(indx(&g, &c2, &pts, 0).unwrap().passed());
    }
}
