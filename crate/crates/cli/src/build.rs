//! Scenario arguments to core objects.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use equihom_core::groups::{Action, Elem, FiniteGroup, GSet, GroupRef, Subgroup, TransportGroupoid};
use equihom_core::homology::orbit_complex;
use equihom_core::lincat::{ArrowData, LinCat};
use equihom_core::polyfun::{Poly, PolyFun};
use equihom_core::rings::{build_ring, ActionSpec, BasedRing, GSetSpec, RingExpr};
use equihom_core::simplicial::{action_from_generators, generate, subdivide, GSimplicialComplex};
use equihom_linalg::{ChainComplexZ, ZMatrix, ZVec, Z};

use crate::scenario::{
    ActionArg, CategoryArg, ChainComplexDef, ComplexArg, ElemArg, GSetArg, GroupArg, PolyValue, RingArg, RingNode, Sparse, SubgroupArg,
    VertexActionArg,
};

pub fn group(a: &GroupArg) -> Result<GroupRef> {
    Ok(Arc::new(FiniteGroup::from_spec(&a.0)?))
}

pub fn element(g: &FiniteGroup, e: &ElemArg) -> Result<Elem> {
    match e {
        ElemArg::Index(i) if *i < g.order() => Ok(*i),
        ElemArg::Index(i) => bail!("element {i} is out of range for {}", g.name()),
        ElemArg::Label(l) => g.element_by_label(l).ok_or_else(|| anyhow!("{} has no element labelled {l:?}", g.name())),
    }
}

fn elements(g: &FiniteGroup, es: &[ElemArg]) -> Result<Vec<Elem>> {
    es.iter().map(|e| element(g, e)).collect()
}

pub fn subgroup(g: &GroupRef, s: &SubgroupArg) -> Result<Subgroup> {
    Ok(match s {
        SubgroupArg::Whole => g.whole(),
        SubgroupArg::Trivial => g.trivial_subgroup(),
        SubgroupArg::Elements(es) => g.subgroup(elements(g, es)?)?,
        SubgroupArg::Generated(es) => g.generated(elements(g, es)?),
        SubgroupArg::Order(k) => {
            let mut subs = g.all_subgroups();
            subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
            subs.into_iter().find(|h| h.order() == *k).ok_or_else(|| anyhow!("{} has no subgroup of order {k}", g.name()))?
        }
    })
}

fn action_spec(a: &ActionArg) -> Result<ActionSpec> {
    Ok(match a {
        ActionArg::Named(s) => s.parse()?,
        ActionArg::Permutations { permutations } => ActionSpec::Permutations(permutations.clone()),
        ActionArg::Matrices { matrices } => ActionSpec::Matrices(matrices.clone()),
    })
}

fn gset_spec(g: &GroupRef, a: &GSetArg) -> Result<GSetSpec> {
    Ok(match a {
        GSetArg::Point => GSetSpec::Point,
        GSetArg::Regular => GSetSpec::Regular,
        GSetArg::Cosets(h) => GSetSpec::Cosets(subgroup(g, h)?.elements().to_vec()),
    })
}

pub fn gset(g: &GroupRef, a: &GSetArg) -> Result<GSet> {
    Ok(gset_spec(g, a)?.build(g)?)
}

fn with_action(ring: &RingArg, group: &GroupArg, sub: Option<&SubgroupArg>, action: &ActionArg) -> Result<RingExpr> {
    let subgroup = match sub {
        Some(s) => Some(subgroup(&self::group(group)?, s)?.elements().to_vec()),
        None => None,
    };
    Ok(RingExpr::WithAction { ring: Box::new(ring_expr(ring)?), group: group.0.clone(), subgroup, action: action_spec(action)? })
}

fn fold(rings: &[RingArg], op: fn(Box<RingExpr>, Box<RingExpr>) -> RingExpr) -> Result<RingExpr> {
    let mut it = rings.iter();
    let first = ring_expr(it.next().ok_or_else(|| anyhow!("empty ring list"))?)?;
    it.try_fold(first, |acc, r| Ok(op(Box::new(acc), Box::new(ring_expr(r)?))))
}

pub fn ring_expr(r: &RingArg) -> Result<RingExpr> {
    Ok(match r {
        RingArg::Integers => RingExpr::Integers,
        RingArg::DualNumbers => RingExpr::DualNumbers,
        RingArg::Gaussian => RingExpr::Gaussian,
        RingArg::MatrixInt(n) => RingExpr::MatrixInt(*n),
        RingArg::Truncated(k) => RingExpr::Truncated(*k),
        RingArg::GroupRing(g) => RingExpr::GroupRing(g.0.clone()),
        RingArg::Node(node) => match node.as_ref() {
            RingNode::Integers => RingExpr::Integers,
            RingNode::DualNumbers => RingExpr::DualNumbers,
            RingNode::Gaussian => RingExpr::Gaussian,
            RingNode::GroupRing { group } => RingExpr::GroupRing(group.0.clone()),
            RingNode::Matrix { n, ring: None } => RingExpr::MatrixInt(*n),
            RingNode::Matrix { n, ring: Some(a) } => RingExpr::Matrices(*n, Box::new(ring_expr(a)?)),
            RingNode::Truncated { k } => RingExpr::Truncated(*k),
            RingNode::Table { labels, products, unit } => {
                RingExpr::Table { labels: labels.clone(), products: products.clone(), unit: unit.clone() }
            }
            RingNode::Unitalize { ring } => RingExpr::Unitalize(Box::new(ring_expr(ring)?)),
            RingNode::Sum { rings } => fold(rings, RingExpr::Sum)?,
            RingNode::Tensor { rings } => fold(rings, RingExpr::Tensor)?,
            RingNode::WithAction { ring, group, subgroup, action } => with_action(ring, group, subgroup.as_ref(), action)?,
            RingNode::Crossed { ring, group, subgroup, action } => match action {
                Some(act) => {
                    let g = group.as_ref().ok_or_else(|| anyhow!("an action needs a group"))?;
                    RingExpr::Crossed { ring: Box::new(with_action(ring, g, subgroup.as_ref(), act)?), group: None }
                }
                None if subgroup.is_some() => bail!("a subgroup only makes sense together with an action"),
                None => RingExpr::Crossed { ring: Box::new(ring_expr(ring)?), group: group.as_ref().map(|g| g.0.clone()) },
            },
            RingNode::GroupoidCrossed { ring, group, gset, action } => {
                let inner = match action {
                    Some(act) => with_action(ring, group, None, act)?,
                    None => ring_expr(ring)?,
                };
                RingExpr::GroupoidCrossed { ring: Box::new(inner), group: group.0.clone(), gset: gset_spec(&self::group(group)?, gset)? }
            }
        },
    })
}

pub fn ring(r: &RingArg) -> Result<BasedRing> {
    Ok(build_ring(&ring_expr(r)?)?)
}

/// `ring` as an `H`-ring: trivial action if it has none, restricted if it is
/// acted on by a larger subgroup of `group`.
pub fn acted_by(ring: BasedRing, group: &GroupRef, h: &Subgroup) -> Result<BasedRing> {
    let Some(act) = ring.action() else {
        let mats = vec![ZMatrix::identity(ring.rank()); h.order()];
        return Ok(ring.with_action(Action::new(group.clone(), h.clone(), mats)?)?);
    };
    if !act.same_group(group) {
        bail!("the ring is acted on by {}, not {}", act.group().name(), group.name());
    }
    if act.domain() == h {
        return Ok(ring);
    }
    if !h.is_subset_of(act.domain()) {
        bail!("the ring action is only defined on a subgroup of order {}", act.domain().order());
    }
    let restricted = act.restrict(h)?;
    Ok(ring.without_action().with_action(restricted)?)
}

fn sparse(v: &Sparse) -> ZVec {
    ZVec::from_entries(v.iter().map(|&(k, c)| (k, Z::from(c))))
}

fn trivial_vertex_action(g: &GroupRef, n: usize) -> Result<Action<Vec<usize>>> {
    Ok(Action::whole(g.clone(), vec![(0..n).collect(); g.order()])?)
}

/// Builds a complex; actions are read relative to `group`, and a complex
/// without one gets the trivial action when a group is present.
pub fn complex(c: &ComplexArg, group: Option<&GroupRef>) -> Result<GSimplicialComplex> {
    match c {
        ComplexArg::Point => {
            let action = group.map(|g| trivial_vertex_action(g, 1)).transpose()?;
            Ok(GSimplicialComplex::simplicial(1, &[vec![0]], action)?)
        }
        ComplexArg::Orbit(h) => {
            let g = group.ok_or_else(|| anyhow!("an orbit needs a group"))?;
            Ok(orbit_complex(g, &subgroup(g, h)?)?)
        }
        ComplexArg::Explicit(def) => {
            let n = def.vertices;
            let action = match (&def.action, group) {
                (None, None) => None,
                (None, Some(g)) => Some(trivial_vertex_action(g, n)?),
                (Some(_), None) => bail!("a vertex action needs a group"),
                (Some(VertexActionArg::Generators { generators }), Some(g)) => Some(action_from_generators(g, generators, n)?),
                (Some(VertexActionArg::Elements { subgroup: s, elements }), Some(g)) => {
                    Some(Action::new(g.clone(), subgroup(g, s)?, elements.clone())?)
                }
            };
            let x = GSimplicialComplex::simplicial(n, &def.facets, action)?;
            Ok(if def.subdivide { subdivide(&x) } else { x })
        }
    }
}

pub fn chain_complex(def: &ChainComplexDef) -> Result<ChainComplexZ> {
    if def.boundaries.len() + 1 != def.ranks.len().max(1) {
        bail!("{} ranks need {} boundaries", def.ranks.len(), def.ranks.len().saturating_sub(1));
    }
    let boundaries = def
        .boundaries
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let (r, c) = (def.ranks[k], def.ranks[k + 1]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                bail!("boundary {} must be {r}x{c}", k + 1);
            }
            Ok(if r == 0 {
                ZMatrix::zero(0, c)
            } else {
                ZMatrix::from_dense_rows(&rows.iter().map(|row| row.iter().map(|&x| Z::from(x)).collect()).collect::<Vec<_>>())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainComplexZ::new(def.lo, def.ranks.clone(), boundaries)?)
}

pub fn category(c: &CategoryArg) -> Result<LinCat> {
    Ok(match c {
        CategoryArg::Path(n) => LinCat::path(*n),
        CategoryArg::Ring(r) => LinCat::from_ring(&ring(r)?)?,
        CategoryArg::CrossedGroupoid { ring: r, group: g, gset: s, action } => {
            let grp = group(g)?;
            let base = match action {
                Some(act) => build_ring(&with_action(r, g, None, act)?)?,
                None => acted_by(ring(r)?, &grp, &grp.whole())?,
            };
            LinCat::crossed_groupoid(&base, &TransportGroupoid::new(gset(&grp, s)?))?
        }
        CategoryArg::Explicit(def) => {
            let arrows = def.arrows.iter().map(|(s, t, l)| ArrowData { source: *s, target: *t, label: l.clone() }).collect();
            let compositions: Vec<_> = def.compose.iter().map(|(g, f, v)| (*g, *f, sparse(v))).collect();
            LinCat::new(def.objects.clone(), arrows, compositions, def.identities.iter().map(sparse).collect())?
        }
    })
}

/// A function on the subcomplex generated by `domain`, from per-simplex values.
pub fn polyfun(space: &Arc<GSimplicialComplex>, domain: &[Vec<usize>], values: &[PolyValue], bound: u32) -> Result<PolyFun> {
    let picks = domain
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            space.index_of(&s).ok_or_else(|| anyhow!("{s:?} is not a simplex"))
        })
        .collect::<Result<Vec<_>>>()?;
    let y = generate(space, picks);
    let entries = values
        .iter()
        .map(|v| {
            let nvars = v.simplex.len().checked_sub(1).ok_or_else(|| anyhow!("empty simplex"))?;
            let terms: Vec<(Vec<u32>, Z)> = v.poly.iter().map(|m| (m.exps.clone(), Z::from(m.coef))).collect();
            let p = Poly::from_exponents(nvars, &terms).with_context(|| format!("polynomial on {:?}", v.simplex))?;
            Ok((v.simplex.clone(), p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyFun::from_values(space.clone(), y, entries, bound)?)
}
