use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use equihom_linalg::{Accumulator, DenseMatrix, Solve, ZMatrix, ZVec, Z};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groups::{Action, Elem, FiniteGroup, GSet, GroupError, GroupRef, GroupSpec, Subgroup, TransportGroupoid};

pub const DEFAULT_RANK_CAP: usize = 4096;
/// Rings up to this rank get an exhaustive associativity check when built
/// from an expression; larger ones come only from structural constructions.
pub const VALIDATE_LIMIT: usize = 128;

pub type RingAction = Action<ZMatrix>;
pub type RingRef = Arc<BasedRing>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring rank {rank} exceeds the cap {cap}")]
    CapExceeded { rank: usize, cap: usize },
    #[error("not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("unit fails: {0}")]
    BadUnit(String),
    #[error("action is not by ring automorphisms: {0}")]
    BadAction(String),
    #[error("malformed structure constants: {0}")]
    BadTable(String),
    #[error("ring has no group action")]
    MissingAction,
    #[error("incompatible operands: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn zi(x: i64) -> Z {
    Z::from(x)
}

/// A ring that is free as an abelian group on a finite labeled basis.
#[derive(Clone, Debug)]
pub struct BasedRing {
    labels: Vec<String>,
    products: Vec<Vec<(usize, ZVec)>>,
    unit: Option<ZVec>,
    action: Option<RingAction>,
    grading: Option<(GroupRef, Vec<Elem>)>,
    zero: ZVec,
}

impl BasedRing {
    /// `products` lists nonzero basis products `b_i b_j`; checks shape only.
    pub fn new(
        labels: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, ZVec)>,
        unit: Option<ZVec>,
    ) -> Result<Self, RingError> {
        let n = labels.len();
        if n > DEFAULT_RANK_CAP {
            return Err(RingError::CapExceeded { rank: n, cap: DEFAULT_RANK_CAP });
        }
        let mut rows: Vec<Vec<(usize, ZVec)>> = vec![Vec::new(); n];
        for (i, j, v) in products {
            if i >= n || j >= n || v.max_index().is_some_and(|m| m >= n) {
                return Err(RingError::BadTable(format!("index out of range in product ({i}, {j})")));
            }
            if !v.is_zero() {
                rows[i].push((j, v));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|e| e.0);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(RingError::BadTable("repeated basis product".into()));
            }
        }
        if unit.as_ref().is_some_and(|u| u.max_index().is_some_and(|m| m >= n)) {
            return Err(RingError::BadUnit("unit has an out-of-range index".into()));
        }
        Ok(BasedRing { labels, products: rows, unit, action: None, grading: None, zero: ZVec::zero() })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> Option<&ZVec> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn action(&self) -> Option<&RingAction> {
        self.action.as_ref()
    }

    /// Group component of each basis element, for crossed-product-like rings.
    pub fn grading(&self) -> Option<(&GroupRef, &[Elem])> {
        self.grading.as_ref().map(|(g, v)| (g, v.as_slice()))
    }

    pub fn basis_mul(&self, i: usize, j: usize) -> &ZVec {
        let row = &self.products[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => &row[k].1,
            Err(_) => &self.zero,
        }
    }

    /// Nonzero products `b_i b_j` for fixed `i`.
    pub fn row(&self, i: usize) -> &[(usize, ZVec)] {
        &self.products[i]
    }

    pub fn mul(&self, a: &ZVec, b: &ZVec) -> ZVec {
        let mut acc = Accumulator::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                let p = self.basis_mul(i, j);
                if !p.is_zero() {
                    acc.add_vec(p, &(x * y));
                }
            }
        }
        acc.finish()
    }

    /// `g(v)`; panics when `g` does not act.
    pub fn act(&self, g: Elem, v: &ZVec) -> ZVec {
        self.action.as_ref().expect("ring carries an action").at(g).apply(v)
    }

    pub fn with_unit(mut self, unit: Option<ZVec>) -> Self {
        self.unit = unit;
        self
    }

    pub fn with_grading(mut self, group: GroupRef, grades: Vec<Elem>) -> Self {
        assert_eq!(grades.len(), self.rank());
        self.grading = Some((group, grades));
        self
    }

    pub fn without_action(mut self) -> Self {
        self.action = None;
        self
    }

    /// Attaches an action after checking it is a homomorphism into ring automorphisms.
    pub fn with_action(mut self, action: RingAction) -> Result<Self, RingError> {
        self.check_action(&action)?;
        self.action = Some(action);
        Ok(self)
    }

    pub(crate) fn with_action_unchecked(mut self, action: Option<RingAction>) -> Self {
        self.action = action;
        self
    }

    fn check_action(&self, action: &RingAction) -> Result<(), RingError> {
        let n = self.rank();
        let group = action.group().clone();
        for (g, m) in action.iter() {
            if m.nrows() != n || m.ncols() != n {
                return Err(RingError::BadAction(format!("matrix of {} is not {n}x{n}", group.label(g))));
            }
        }
        if *action.at(0) != ZMatrix::identity(n) {
            return Err(RingError::BadAction("identity does not act trivially".into()));
        }
        for (g, mg) in action.iter() {
            for (h, mh) in action.iter() {
                let gh = group.mul(g, h);
                if *action.at(gh) != mg.mul(mh).expect("square matrices") {
                    return Err(RingError::BadAction(format!(
                        "action({}) != action({})·action({})",
                        group.label(gh),
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let lhs = mg.apply(self.basis_mul(i, j));
                    let rhs = self.mul(mg.column(i), mg.column(j));
                    if lhs != rhs {
                        return Err(RingError::BadAction(format!(
                            "{} is not multiplicative on ({}, {})",
                            group.label(g),
                            self.labels[i],
                            self.labels[j]
                        )));
                    }
                }
            }
            if let Some(u) = &self.unit {
                if mg.apply(u) != *u {
                    return Err(RingError::BadAction(format!("{} moves the unit", group.label(g))));
                }
            }
        }
        Ok(())
    }

    pub fn check_associative(&self) -> Result<(), RingError> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_mul(i, j);
                for k in 0..n {
                    let left = self.mul(ij, &ZVec::unit(k));
                    let right = self.mul(&ZVec::unit(i), self.basis_mul(j, k));
                    if left != right {
                        return Err(RingError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<(), RingError> {
        let Some(u) = &self.unit else { return Ok(()) };
        for i in 0..self.rank() {
            let b = ZVec::unit(i);
            if self.mul(u, &b) != b || self.mul(&b, u) != b {
                return Err(RingError::BadUnit(format!("fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    /// Exhaustive associativity, unit and action checks.
    pub fn validate(&self) -> Result<(), RingError> {
        self.check_associative()?;
        self.check_unit()?;
        if let Some(a) = &self.action {
            self.check_action(a)?;
        }
        Ok(())
    }

    /// Same rank, structure constants and unit; labels are ignored.
    pub fn structure_eq(&self, other: &BasedRing) -> bool {
        self.rank() == other.rank()
            && self.unit == other.unit
            && (0..self.rank()).all(|i| {
                self.products[i].len() == other.products[i].len()
                    && self.products[i].iter().zip(&other.products[i]).all(|(a, b)| a == b)
            })
    }

    pub fn element_label(&self, v: &ZVec) -> String {
        format_combination(v, |i| self.labels[i].clone())
    }
}

impl fmt::Display for BasedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring of rank {}", self.rank())
    }
}

pub fn format_combination(v: &ZVec, label: impl Fn(usize) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, x)) in v.iter().enumerate() {
        let sign = if x < &Z::zero() { "-" } else if k > 0 { "+" } else { "" };
        let mag = if x < &Z::zero() { -x.clone() } else { x.clone() };
        if k > 0 {
            out.push(' ');
        }
        out.push_str(sign);
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&label(i));
    }
    out
}

/// ℤ
pub fn integers() -> BasedRing {
    BasedRing::new(vec!["1".into()], [(0, 0, ZVec::unit(0))], Some(ZVec::unit(0))).expect("valid")
}

/// ℤ[G] with `G` acting by conjugation and graded by group elements.
pub fn group_ring(group: &GroupRef) -> BasedRing {
    let n = group.order();
    let labels = group.elements().map(|g| group.label(g).to_string()).collect();
    let products = group.elements().flat_map(|a| group.elements().map(move |b| (a, b, ZVec::unit(group.mul(a, b)))));
    let ring = BasedRing::new(labels, products, Some(ZVec::unit(0))).expect("valid");
    let mats = group
        .elements()
        .map(|g| ZMatrix::from_columns(n, group.elements().map(|x| ZVec::unit(group.conj(g, x))).collect()).expect("square"))
        .collect();
    let action = Action::whole(group.clone(), mats).expect("one matrix per element");
    ring.with_action_unchecked(Some(action)).with_grading(group.clone(), group.elements().collect())
}

/// M_n(ℤ) on matrix units `e_ij` (index `i·n + j`).
pub fn matrix_ring(n: usize) -> BasedRing {
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{}{}", i + 1, j + 1))).collect();
    let products = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i * n + j, j * n + k, ZVec::unit(i * n + k)))));
    let unit = ZVec::from_entries((0..n).map(|i| (i * n + i, Z::one())));
    BasedRing::new(labels, products, Some(unit)).expect("valid")
}

/// tℤ[t]/(tᵏ) on `t, t², …, t^{k-1}`; nonunital.
pub fn truncated(k: usize) -> Result<BasedRing, RingError> {
    if k < 2 {
        return Err(RingError::BadTable("truncation degree must be at least 2".into()));
    }
    let labels = (1..k).map(|e| if e == 1 { "t".to_string() } else { format!("t^{e}") }).collect();
    let products = (1..k).flat_map(|a| (1..k).filter(move |b| a + b < k).map(move |b| (a - 1, b - 1, ZVec::unit(a + b - 1))));
    BasedRing::new(labels, products, None)
}

/// tℤ[t]/(t²)
pub fn dual_numbers() -> BasedRing {
    truncated(2).expect("valid")
}

/// ℤ[i] on `1, i`.
pub fn gaussian() -> BasedRing {
    let products = [
        (0, 0, ZVec::unit(0)),
        (0, 1, ZVec::unit(1)),
        (1, 0, ZVec::unit(1)),
        (1, 1, ZVec::single(0, zi(-1))),
    ];
    BasedRing::new(vec!["1".into(), "i".into()], products, Some(ZVec::unit(0))).expect("valid")
}

/// ℤ^S: pointwise functions on a finite G-set, with `G` permuting the idempotents.
pub fn functions_on(gset: &GSet) -> BasedRing {
    let n = gset.len();
    let labels = (0..n).map(|s| format!("χ{s}")).collect();
    let ring = BasedRing::new(labels, (0..n).map(|s| (s, s, ZVec::unit(s))), Some(ZVec::from_entries((0..n).map(|s| (s, Z::one())))))
        .expect("valid");
    let group = gset.group().clone();
    let mats = group
        .elements()
        .map(|g| ZMatrix::from_columns(n, (0..n).map(|s| ZVec::unit(gset.act(g, s))).collect()).expect("square"))
        .collect();
    ring.with_action_unchecked(Some(Action::whole(group, mats).expect("sized")))
}

/// Ã = A ⊕ ℤ with `(a,λ)(b,μ) = (ab + λb + aμ, λμ)`; the adjoined unit is the last basis element.
pub fn unitalize(a: &BasedRing) -> BasedRing {
    let n = a.rank();
    let mut labels = a.labels.clone();
    labels.push("1~".into());
    let mut products: Vec<(usize, usize, ZVec)> =
        (0..n).flat_map(|i| a.products[i].iter().map(move |(j, v)| (i, *j, v.clone()))).collect();
    for i in 0..n {
        products.push((n, i, ZVec::unit(i)));
        products.push((i, n, ZVec::unit(i)));
    }
    products.push((n, n, ZVec::unit(n)));
    let ring = BasedRing::new(labels, products, Some(ZVec::unit(n))).expect("valid");
    let action = a.action.as_ref().map(|act| act.map(|_, m| block_diag(m, &ZMatrix::identity(1))));
    let grading = a.grading.as_ref().map(|(g, v)| (g.clone(), v.iter().copied().chain([0]).collect()));
    let mut ring = ring.with_action_unchecked(action);
    ring.grading = grading;
    ring
}

pub(crate) fn block_diag(a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
    let off = a.nrows();
    let cols = a.columns().iter().cloned().chain(b.columns().iter().map(|c| c.map_indices(|i| i + off))).collect();
    ZMatrix::from_columns(a.nrows() + b.nrows(), cols).expect("shapes add")
}

fn merge_actions(
    a: Option<&RingAction>,
    b: Option<&RingAction>,
    rank_a: usize,
    rank_b: usize,
    combine: impl Fn(&ZMatrix, &ZMatrix) -> ZMatrix,
    missing_is_trivial: bool,
) -> Result<Option<RingAction>, RingError> {
    match (a, b) {
        (None, None) => Ok(None),
        (Some(x), Some(y)) => {
            if !x.same_group(y.group()) || x.domain() != y.domain() {
                return Err(RingError::Mismatch("actions by different groups".into()));
            }
            let images = x.iter().map(|(g, m)| combine(m, y.at(g))).collect();
            Ok(Some(Action::new(x.group().clone(), x.domain().clone(), images)?))
        }
        (Some(x), None) if missing_is_trivial => Ok(Some(x.map(|_, m| combine(m, &ZMatrix::identity(rank_b))))),
        (None, Some(y)) if missing_is_trivial => Ok(Some(y.map(|_, m| combine(&ZMatrix::identity(rank_a), m)))),
        _ => Err(RingError::Mismatch("only one summand carries an action".into())),
    }
}

pub fn direct_sum(a: &BasedRing, b: &BasedRing) -> Result<BasedRing, RingError> {
    let (n, m) = (a.rank(), b.rank());
    let labels = a.labels.iter().map(|l| format!("({l},0)")).chain(b.labels.iter().map(|l| format!("(0,{l})"))).collect();
    let products = (0..n)
        .flat_map(|i| a.products[i].iter().map(move |(j, v)| (i, *j, v.clone())))
        .chain((0..m).flat_map(|i| b.products[i].iter().map(move |(j, v)| (i + n, j + n, v.map_indices(|k| k + n)))));
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => Some(&u.clone() + &v.map_indices(|k| k + n)),
        _ => None,
    };
    let ring = BasedRing::new(labels, products, unit)?;
    let action = merge_actions(a.action.as_ref(), b.action.as_ref(), n, m, block_diag, false)?;
    Ok(ring.with_action_unchecked(action))
}

/// A ⊗ B on pairs `(i, j)` at index `i·rank(B) + j`, with the diagonal action.
/// A factor without an action is treated as trivially acted on.
pub fn tensor(a: &BasedRing, b: &BasedRing) -> Result<BasedRing, RingError> {
    let m = b.rank();
    let rank = a.rank() * m;
    if rank > DEFAULT_RANK_CAP {
        return Err(RingError::CapExceeded { rank, cap: DEFAULT_RANK_CAP });
    }
    let labels = a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect();
    let mut products = Vec::new();
    for i in 0..a.rank() {
        for (i2, va) in &a.products[i] {
            for j in 0..m {
                for (j2, vb) in &b.products[j] {
                    products.push((i * m + j, i2 * m + j2, kron_vec(va, vb, m)));
                }
            }
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => Some(kron_vec(u, v, m)),
        _ => None,
    };
    let ring = BasedRing::new(labels, products, unit)?;
    let action = merge_actions(a.action.as_ref(), b.action.as_ref(), a.rank(), m, |x, y| x.kron(y), true)?;
    let grading = match (&a.grading, &b.grading) {
        (None, None) => None,
        (Some((g, ga)), None) => Some((g.clone(), ga.iter().flat_map(|&x| std::iter::repeat_n(x, m)).collect())),
        (None, Some((g, gb))) => Some((g.clone(), (0..a.rank()).flat_map(|_| gb.iter().copied()).collect())),
        (Some((g, ga)), Some((h, gb))) => {
            if **g != **h {
                return Err(RingError::Mismatch("gradings by different groups".into()));
            }
            Some((g.clone(), ga.iter().flat_map(|&x| gb.iter().map(move |&y| g.mul(x, y))).collect()))
        }
    };
    let mut ring = ring.with_action_unchecked(action);
    ring.grading = grading;
    Ok(ring)
}

pub(crate) fn kron_vec(a: &ZVec, b: &ZVec, m: usize) -> ZVec {
    ZVec::from_sorted_unchecked(a.iter().flat_map(|(i, x)| b.iter().map(move |(j, y)| (i * m + j, x * y))).collect())
}

/// M_n(A) = M_n(ℤ) ⊗ A.
pub fn matrices(n: usize, a: &BasedRing) -> Result<BasedRing, RingError> {
    tensor(&matrix_ring(n), a)
}

/// M_X̲(A): matrices indexed by a G-set with `g(e_{x,y} ⊗ a) = e_{gx,gy} ⊗ g(a)`.
pub fn matrices_over(gset: &GSet, a: &BasedRing) -> Result<BasedRing, RingError> {
    let n = gset.len();
    let group = gset.group().clone();
    let perm = group
        .elements()
        .map(|g| {
            let cols = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| ZVec::unit(gset.act(g, x) * n + gset.act(g, y)));
            ZMatrix::from_columns(n * n, cols.collect()).expect("square")
        })
        .collect();
    let mx = matrix_ring(n).with_action_unchecked(Some(Action::whole(group, perm)?));
    tensor(&mx, a)
}

/// A⋊H for the subgroup `H` on which `a` carries an action: basis `(i, h)` at
/// `i·|H| + pos(h)`, product `(r⋊f)(s⋊g) = r·f(s) ⋊ fg`. The result carries
/// the conjugation action `k(r⋊h) = k(r) ⋊ khk⁻¹` and is graded by `H`.
pub fn crossed_product(a: &BasedRing) -> Result<BasedRing, RingError> {
    let action = a.action.as_ref().ok_or(RingError::MissingAction)?;
    let group = action.group().clone();
    let dom = action.domain().clone();
    let hs = dom.elements().to_vec();
    let m = hs.len();
    let rank = a.rank() * m;
    if rank > DEFAULT_RANK_CAP {
        return Err(RingError::CapExceeded { rank, cap: DEFAULT_RANK_CAP });
    }
    let labels = a.labels.iter().flat_map(|x| hs.iter().map(|&h| format!("{x}⋊{}", group.label(h))).collect::<Vec<_>>()).collect();
    let idx = |i: usize, h: Elem| i * m + dom.position(h).expect("in subgroup");
    let mut products = Vec::new();
    for i in 0..a.rank() {
        for (fp, &f) in hs.iter().enumerate() {
            let af = action.at(f);
            for j in 0..a.rank() {
                let fs = af.column(j);
                let prod = a.mul(&ZVec::unit(i), fs);
                if prod.is_zero() {
                    continue;
                }
                for (gp, &g) in hs.iter().enumerate() {
                    let fg = group.mul(f, g);
                    products.push((i * m + fp, j * m + gp, prod.map_indices(|k| idx(k, fg))));
                }
            }
        }
    }
    let unit = a.unit.as_ref().map(|u| u.map_indices(|k| idx(k, 0)));
    let ring = BasedRing::new(labels, products, unit)?;
    let conj = hs
        .iter()
        .map(|&k| {
            let ak = action.at(k);
            let cols = (0..a.rank())
                .flat_map(|i| hs.iter().map(move |&h| (i, h)))
                .map(|(i, h)| ak.column(i).map_indices(|r| idx(r, group.conj(k, h))))
                .collect();
            ZMatrix::from_columns(rank, cols).expect("square")
        })
        .collect();
    let grading = (0..a.rank()).flat_map(|_| hs.iter().copied()).collect();
    Ok(ring.with_action_unchecked(Some(Action::new(group.clone(), dom, conj)?)).with_grading(group, grading))
}

/// A⋊G where `a` carries no action: the trivial action of `group` is attached first.
pub fn crossed_product_trivial(a: &BasedRing, group: &GroupRef) -> Result<BasedRing, RingError> {
    let acted = trivial_action(a.clone(), group, &group.whole())?;
    crossed_product(&acted)
}

pub fn trivial_action(a: BasedRing, group: &GroupRef, domain: &Subgroup) -> Result<BasedRing, RingError> {
    let images = vec![ZMatrix::identity(a.rank()); domain.order()];
    let action = Action::new(group.clone(), domain.clone(), images)?;
    Ok(a.with_action_unchecked(Some(action)))
}

/// 𝒜(A⋊𝒢^G(S)): basis `(i, arrow)` at `i·#arrows + arrow`, with
/// `(r⋊f)(s⋊g) = r·f(s) ⋊ f∘g` when `source(f) = target(g)` and 0 otherwise.
/// Unital (unit `Σ_s 1⋊id_s`) exactly when `A` is. Graded by the group element of the arrow.
pub fn groupoid_crossed(a: &BasedRing, groupoid: &TransportGroupoid) -> Result<BasedRing, RingError> {
    let group = groupoid.group().clone();
    let action = match a.action.as_ref() {
        Some(act) => {
            if !act.same_group(&group) || act.domain().order() != group.order() {
                return Err(RingError::Mismatch("the ring must carry an action of the whole groupoid group".into()));
            }
            act.clone()
        }
        None => Action::whole(group.clone(), vec![ZMatrix::identity(a.rank()); group.order()])?,
    };
    let na = groupoid.arrow_count();
    let rank = a.rank() * na;
    if rank > DEFAULT_RANK_CAP {
        return Err(RingError::CapExceeded { rank, cap: DEFAULT_RANK_CAP });
    }
    let arrows: Vec<_> = groupoid.arrows().collect();
    let labels = a
        .labels
        .iter()
        .flat_map(|x| arrows.iter().map(|ar| format!("{x}⋊{}:{}→{}", group.label(ar.element), ar.source, ar.target)).collect::<Vec<_>>())
        .collect();
    let mut products = Vec::new();
    for i in 0..a.rank() {
        for (fi, f) in arrows.iter().enumerate() {
            let af = action.at(f.element);
            for j in 0..a.rank() {
                let prod = a.mul(&ZVec::unit(i), af.column(j));
                if prod.is_zero() {
                    continue;
                }
                for t in 0..groupoid.object_count() {
                    if t != f.source {
                        continue;
                    }
                    for s in 0..groupoid.object_count() {
                        for gi in groupoid.hom(s, t) {
                            let fg = groupoid.compose(fi, gi).expect("composable");
                            products.push((i * na + fi, j * na + gi, prod.map_indices(|k| k * na + fg)));
                        }
                    }
                }
            }
        }
    }
    let unit = a.unit.as_ref().map(|u| {
        ZVec::from_entries(
            (0..groupoid.object_count())
                .flat_map(|s| u.iter().map(move |(k, x)| (k * na + groupoid.arrow_index(s, 0), x.clone()))),
        )
    });
    let grading = (0..a.rank()).flat_map(|_| arrows.iter().map(|ar| ar.element)).collect();
    Ok(BasedRing::new(labels, products, unit)?.with_grading(group, grading))
}

/// Automorphisms attached to a ring from an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Trivial,
    /// Through the sign character of the group, acting by the canonical involution of the ring.
    Sign,
    /// Conjugation, for a group ring of the acting group.
    Conjugation,
    /// Signed basis permutations, one per acting element in element order;
    /// entry `k` is the 1-based image of basis element `k`, negative for a sign flip.
    Permutations(Vec<Vec<i64>>),
    /// Integer matrices (rows) per acting element in element order.
    Matrices(Vec<Vec<Vec<i64>>>),
}

impl FromStr for ActionSpec {
    type Err = RingError;
    /// `trivial`, `sign`, `conjugation`, or `perm:` followed by `;`-separated
    /// signed permutations such as `perm:1,2;1,-2`.
    fn from_str(s: &str) -> Result<Self, RingError> {
        match s.trim() {
            "trivial" => Ok(ActionSpec::Trivial),
            "sign" => Ok(ActionSpec::Sign),
            "conjugation" | "conj" => Ok(ActionSpec::Conjugation),
            other => {
                let body = other.strip_prefix("perm:").ok_or_else(|| RingError::BadAction(format!("unknown action {other:?}")))?;
                let perms = body
                    .split(';')
                    .map(|p| p.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| RingError::BadAction(format!("cannot parse {other:?}")))?;
                Ok(ActionSpec::Permutations(perms))
            }
        }
    }
}

/// Which G-set a transport groupoid is built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GSetSpec {
    Point,
    Regular,
    Cosets(Vec<Elem>),
}

impl GSetSpec {
    pub fn build(&self, group: &GroupRef) -> Result<GSet, GroupError> {
        match self {
            GSetSpec::Point => Ok(GSet::point(group)),
            GSetSpec::Regular => Ok(group.cosets(&group.trivial_subgroup()).gset(group)),
            GSetSpec::Cosets(h) => Ok(group.cosets(&group.subgroup(h.iter().copied())?).gset(group)),
        }
    }
}

/// A ring construction tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Integers,
    GroupRing(GroupSpec),
    MatrixInt(usize),
    Matrices(usize, Box<RingExpr>),
    DualNumbers,
    Truncated(usize),
    Gaussian,
    /// Labels, nonzero products `(i, j, [(k, coefficient)])`, optional unit.
    Table { labels: Vec<String>, products: Vec<(usize, usize, Vec<(usize, i64)>)>, unit: Option<Vec<(usize, i64)>> },
    Unitalize(Box<RingExpr>),
    Sum(Box<RingExpr>, Box<RingExpr>),
    Tensor(Box<RingExpr>, Box<RingExpr>),
    /// Attach an action of `group` (restricted to `subgroup` if given).
    WithAction { ring: Box<RingExpr>, group: GroupSpec, subgroup: Option<Vec<Elem>>, action: ActionSpec },
    /// Crossed product by the acting subgroup; a ring without action gets the trivial action of `group`.
    Crossed { ring: Box<RingExpr>, group: Option<GroupSpec> },
    GroupoidCrossed { ring: Box<RingExpr>, group: GroupSpec, gset: GSetSpec },
}

/// Evaluates a construction tree; rings up to [`VALIDATE_LIMIT`] are checked exhaustively.
pub fn build_ring(expr: &RingExpr) -> Result<BasedRing, RingError> {
    let ring = eval(expr)?;
    if ring.rank() <= VALIDATE_LIMIT {
        ring.validate()?;
    }
    Ok(ring)
}

fn eval(expr: &RingExpr) -> Result<BasedRing, RingError> {
    Ok(match expr {
        RingExpr::Integers => integers(),
        RingExpr::GroupRing(g) => group_ring(&Arc::new(FiniteGroup::from_spec(g)?)),
        RingExpr::MatrixInt(n) => matrix_ring(*n),
        RingExpr::Matrices(n, a) => matrices(*n, &eval(a)?)?,
        RingExpr::DualNumbers => dual_numbers(),
        RingExpr::Truncated(k) => truncated(*k)?,
        RingExpr::Gaussian => gaussian(),
        RingExpr::Table { labels, products, unit } => {
            let to_vec = |v: &Vec<(usize, i64)>| ZVec::from_entries(v.iter().map(|&(k, c)| (k, zi(c))));
            let ring = BasedRing::new(labels.clone(), products.iter().map(|(i, j, v)| (*i, *j, to_vec(v))), unit.as_ref().map(to_vec))?;
            ring.validate()?;
            ring
        }
        RingExpr::Unitalize(a) => unitalize(&eval(a)?),
        RingExpr::Sum(a, b) => direct_sum(&eval(a)?, &eval(b)?)?,
        RingExpr::Tensor(a, b) => tensor(&eval(a)?, &eval(b)?)?,
        RingExpr::WithAction { ring, group, subgroup, action } => {
            let g = Arc::new(FiniteGroup::from_spec(group)?);
            let dom = match subgroup {
                Some(h) => g.subgroup(h.iter().copied())?,
                None => g.whole(),
            };
            let base = eval(ring)?;
            let mats = action_matrices(ring, &base, &g, &dom, action)?;
            base.with_action(Action::new(g, dom, mats)?)?
        }
        RingExpr::Crossed { ring, group } => {
            let base = eval(ring)?;
            match (base.action(), group) {
                (Some(act), Some(spec)) => {
                    let g = FiniteGroup::from_spec(spec)?;
                    if **act.group() != g {
                        return Err(RingError::Mismatch(format!("ring is acted on by {}, not {g}", act.group())));
                    }
                    crossed_product(&base)?
                }
                (Some(_), None) => crossed_product(&base)?,
                (None, Some(spec)) => crossed_product_trivial(&base, &Arc::new(FiniteGroup::from_spec(spec)?))?,
                (None, None) => return Err(RingError::MissingAction),
            }
        }
        RingExpr::GroupoidCrossed { ring, group, gset } => {
            let base = eval(ring)?;
            let g = match base.action() {
                Some(act) => {
                    if **act.group() != FiniteGroup::from_spec(group)? {
                        return Err(RingError::Mismatch("ring action and groupoid group differ".into()));
                    }
                    act.group().clone()
                }
                None => Arc::new(FiniteGroup::from_spec(group)?),
            };
            groupoid_crossed(&base, &TransportGroupoid::new(gset.build(&g)?))?
        }
    })
}

fn action_matrices(
    expr: &RingExpr,
    ring: &BasedRing,
    group: &GroupRef,
    dom: &Subgroup,
    spec: &ActionSpec,
) -> Result<Vec<ZMatrix>, RingError> {
    let n = ring.rank();
    match spec {
        ActionSpec::Trivial => Ok(vec![ZMatrix::identity(n); dom.order()]),
        ActionSpec::Sign => {
            let inv = canonical_involution(expr)?;
            dom.elements()
                .iter()
                .map(|&g| Ok(if group.sign(g)? < 0 { inv.clone() } else { ZMatrix::identity(n) }))
                .collect()
        }
        ActionSpec::Conjugation => {
            let RingExpr::GroupRing(spec) = expr else {
                return Err(RingError::BadAction("conjugation needs a group ring".into()));
            };
            if FiniteGroup::from_spec(spec)? != **group {
                return Err(RingError::BadAction("conjugation needs the group ring of the acting group".into()));
            }
            Ok(dom.elements().iter().map(|&g| ring.action().expect("group rings carry conjugation").at(g).clone()).collect())
        }
        ActionSpec::Permutations(perms) => {
            if perms.len() != dom.order() {
                return Err(RingError::BadAction(format!("need {} permutations, got {}", dom.order(), perms.len())));
            }
            perms
                .iter()
                .map(|p| {
                    if p.len() != n || p.iter().any(|&x| x == 0 || x.unsigned_abs() as usize > n) {
                        return Err(RingError::BadAction("signed permutation entries must be ±1..=rank".into()));
                    }
                    let cols = p.iter().map(|&x| ZVec::single(x.unsigned_abs() as usize - 1, zi(x.signum()))).collect();
                    Ok(ZMatrix::from_columns(n, cols).expect("in range"))
                })
                .collect()
        }
        ActionSpec::Matrices(ms) => {
            if ms.len() != dom.order() {
                return Err(RingError::BadAction(format!("need {} matrices, got {}", dom.order(), ms.len())));
            }
            ms.iter()
                .map(|rows| {
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(RingError::BadAction(format!("matrices must be {n}x{n}")));
                    }
                    Ok(ZMatrix::from_dense_rows(&rows.iter().map(|r| r.iter().map(|&x| zi(x)).collect()).collect::<Vec<_>>()))
                })
                .collect()
        }
    }
}

/// The involution used by [`ActionSpec::Sign`]: `i ↦ -i` on ℤ[i], `tʲ ↦ (-t)ʲ`
/// on truncated rings, `k ↦ sign(k)·k` on ℤ[K], `e_ij ↦ (-1)^{i+j} e_ij` on matrices.
pub fn canonical_involution(expr: &RingExpr) -> Result<ZMatrix, RingError> {
    let diag = |signs: Vec<i64>| {
        let n = signs.len();
        ZMatrix::from_columns(n, signs.into_iter().enumerate().map(|(i, s)| ZVec::single(i, zi(s))).collect()).expect("square")
    };
    match expr {
        RingExpr::Integers => Ok(diag(vec![1])),
        RingExpr::Gaussian => Ok(diag(vec![1, -1])),
        RingExpr::DualNumbers => Ok(diag(vec![-1])),
        RingExpr::Truncated(k) => Ok(diag((1..*k).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect())),
        RingExpr::GroupRing(spec) => {
            let k = FiniteGroup::from_spec(spec)?;
            Ok(diag(k.elements().map(|x| k.sign(x).map(i64::from)).collect::<Result<_, _>>()?))
        }
        RingExpr::MatrixInt(n) => Ok(diag((0..n * n).map(|k| if (k / n + k % n) % 2 == 0 { 1 } else { -1 }).collect())),
        RingExpr::Matrices(n, inner) => Ok(canonical_involution(&RingExpr::MatrixInt(*n))?.kron(&canonical_involution(inner)?)),
        other => Err(RingError::BadAction(format!("no canonical involution for {other:?}"))),
    }
}

/// An additive map between based rings, as the matrix of images of source basis elements.
#[derive(Clone, Debug)]
pub struct RingHom {
    pub source: RingRef,
    pub target: RingRef,
    pub matrix: ZMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomFlag {
    Multiplicative,
    Unital,
    Equivariant,
    Bijective,
}

impl HomFlag {
    pub const ALL: [HomFlag; 4] = [HomFlag::Multiplicative, HomFlag::Unital, HomFlag::Equivariant, HomFlag::Bijective];

    pub fn name(self) -> &'static str {
        match self {
            HomFlag::Multiplicative => "multiplicative",
            HomFlag::Unital => "unital",
            HomFlag::Equivariant => "equivariant",
            HomFlag::Bijective => "bijective",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    Multiplicative { left: String, right: String },
    Unital(String),
    Equivariant { element: String, basis: String },
    Bijective(String),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Counterexample::Multiplicative { left, right } => write!(f, "f({left}·{right}) != f({left})·f({right})"),
            Counterexample::Unital(s) => write!(f, "unit: {s}"),
            Counterexample::Equivariant { element, basis } => write!(f, "f({element}·{basis}) != {element}·f({basis})"),
            Counterexample::Bijective(s) => write!(f, "not invertible over Z: {s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVerdict {
    pub results: Vec<(HomFlag, Result<(), Counterexample>)>,
}

impl HomVerdict {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.1.is_ok())
    }

    pub fn first_failure(&self) -> Option<(HomFlag, &Counterexample)> {
        self.results.iter().find_map(|(f, r)| r.as_ref().err().map(|c| (*f, c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("hom matrix is {rows}x{cols}, rings have ranks {source_rank} -> {target_rank}")]
pub struct ShapeError {
    pub rows: usize,
    pub cols: usize,
    pub source_rank: usize,
    pub target_rank: usize,
}

impl RingHom {
    pub fn new(source: RingRef, target: RingRef, matrix: ZMatrix) -> Result<Self, ShapeError> {
        if matrix.ncols() != source.rank() || matrix.nrows() != target.rank() {
            return Err(ShapeError {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                source_rank: source.rank(),
                target_rank: target.rank(),
            });
        }
        Ok(RingHom { source, target, matrix })
    }

    pub fn apply(&self, v: &ZVec) -> ZVec {
        self.matrix.apply(v)
    }

    pub fn check(&self, flags: &[HomFlag]) -> HomVerdict {
        check_hom(self, flags)
    }
}

/// Checks the requested properties exhaustively, reporting the first counterexample of each.
pub fn check_hom(f: &RingHom, flags: &[HomFlag]) -> HomVerdict {
    let results = flags
        .iter()
        .map(|&flag| {
            let r = match flag {
                HomFlag::Multiplicative => check_multiplicative(f),
                HomFlag::Unital => check_unital(f),
                HomFlag::Equivariant => check_equivariant(f),
                HomFlag::Bijective => check_bijective(f),
            };
            (flag, r)
        })
        .collect();
    HomVerdict { results }
}

fn check_multiplicative(f: &RingHom) -> Result<(), Counterexample> {
    let (s, t) = (&f.source, &f.target);
    for i in 0..s.rank() {
        for j in 0..s.rank() {
            let lhs = f.apply(s.basis_mul(i, j));
            let rhs = t.mul(f.matrix.column(i), f.matrix.column(j));
            if lhs != rhs {
                return Err(Counterexample::Multiplicative { left: s.label(i).into(), right: s.label(j).into() });
            }
        }
    }
    Ok(())
}

fn check_unital(f: &RingHom) -> Result<(), Counterexample> {
    match (f.source.unit(), f.target.unit()) {
        (Some(u), Some(v)) => {
            let image = f.apply(u);
            if image == *v {
                Ok(())
            } else {
                Err(Counterexample::Unital(format!("f(1) = {}", f.target.element_label(&image))))
            }
        }
        (None, _) => Err(Counterexample::Unital("source has no unit".into())),
        (_, None) => Err(Counterexample::Unital("target has no unit".into())),
    }
}

fn check_equivariant(f: &RingHom) -> Result<(), Counterexample> {
    let (Some(a), Some(b)) = (f.source.action(), f.target.action()) else {
        return Err(Counterexample::Equivariant { element: "-".into(), basis: "missing action".into() });
    };
    let group = a.group();
    for (g, mg) in a.iter() {
        let Some(ng) = b.get(g) else {
            return Err(Counterexample::Equivariant { element: group.label(g).into(), basis: "target lacks this element".into() });
        };
        for i in 0..f.source.rank() {
            if f.apply(mg.column(i)) != ng.apply(f.matrix.column(i)) {
                return Err(Counterexample::Equivariant { element: group.label(g).into(), basis: f.source.label(i).into() });
            }
        }
    }
    Ok(())
}

fn check_bijective(f: &RingHom) -> Result<(), Counterexample> {
    if f.matrix.nrows() != f.matrix.ncols() {
        return Err(Counterexample::Bijective(format!("matrix is {}x{}", f.matrix.nrows(), f.matrix.ncols())));
    }
    let s = equihom_linalg::smith_summary(&f.matrix);
    if s.rank == f.matrix.ncols() && s.invariants.is_empty() {
        Ok(())
    } else {
        Err(Counterexample::Bijective(format!(
            "rank {} of {}, invariant factors {:?}",
            s.rank,
            f.matrix.ncols(),
            s.invariants.iter().map(ToString::to_string).collect::<Vec<_>>()
        )))
    }
}

/// A bimodule over a based ring, free on a finite basis.
pub trait Bimodule {
    fn ring(&self) -> &BasedRing;
    fn rank(&self) -> usize;
    /// `b_i · m_k`
    fn left(&self, i: usize, k: usize) -> ZVec;
    /// `m_k · b_i`
    fn right(&self, k: usize, i: usize) -> ZVec;
}

impl Bimodule for BasedRing {
    fn ring(&self) -> &BasedRing {
        self
    }

    fn rank(&self) -> usize {
        BasedRing::rank(self)
    }

    fn left(&self, i: usize, k: usize) -> ZVec {
        self.basis_mul(i, k).clone()
    }

    fn right(&self, k: usize, i: usize) -> ZVec {
        self.basis_mul(k, i).clone()
    }
}

/// `R_g`: `R` with left multiplication and right action `x·r = x·g(r)`.
#[derive(Clone, Debug)]
pub struct TwistedBimodule {
    ring: RingRef,
    twist: Elem,
    twist_matrix: ZMatrix,
}

impl TwistedBimodule {
    pub fn twist(&self) -> Elem {
        self.twist
    }

    pub fn ring_ref(&self) -> &RingRef {
        &self.ring
    }

    /// Checks `(a·m)·b = a·(m·b)` and `(m·b)·c = m·(bc)` on all basis triples.
    pub fn verify(&self) -> Result<(), RingError> {
        let n = self.ring.rank();
        let mul_left = |v: &ZVec, i: usize| -> ZVec {
            let mut acc = Accumulator::new();
            for (k, x) in v.iter() {
                acc.add_vec(&self.left(i, k), x);
            }
            acc.finish()
        };
        let mul_right = |v: &ZVec, i: usize| -> ZVec {
            let mut acc = Accumulator::new();
            for (k, x) in v.iter() {
                acc.add_vec(&self.right(k, i), x);
            }
            acc.finish()
        };
        for a in 0..n {
            for m in 0..n {
                for b in 0..n {
                    if mul_right(&self.left(a, m), b) != mul_left(&self.right(m, b), a) {
                        return Err(RingError::BadAction(format!("left and right actions do not commute at ({a}, {m}, {b})")));
                    }
                    let bc = self.ring.basis_mul(m, b);
                    let lhs = mul_right(&self.right(a, m), b);
                    let mut rhs = Accumulator::new();
                    for (k, x) in bc.iter() {
                        rhs.add_vec(&self.right(a, k), x);
                    }
                    if lhs != rhs.finish() {
                        return Err(RingError::BadAction(format!("right action is not associative at ({a}, {m}, {b})")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Bimodule for TwistedBimodule {
    fn ring(&self) -> &BasedRing {
        &self.ring
    }

    fn rank(&self) -> usize {
        self.ring.rank()
    }

    fn left(&self, i: usize, k: usize) -> ZVec {
        self.ring.basis_mul(i, k).clone()
    }

    fn right(&self, k: usize, i: usize) -> ZVec {
        self.ring.mul(&ZVec::unit(k), self.twist_matrix.column(i))
    }
}

pub fn twisted_bimodule(ring: RingRef, g: Elem) -> Result<TwistedBimodule, RingError> {
    let action = ring.action().ok_or(RingError::MissingAction)?;
    let twist_matrix = action
        .get(g)
        .ok_or_else(|| RingError::BadAction(format!("{} does not act", action.group().label(g))))?
        .clone();
    let m = TwistedBimodule { ring, twist: g, twist_matrix };
    m.verify()?;
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SUnitalVerdict {
    /// `e` with `e·aᵢ = aᵢ = aᵢ·e` for every listed element.
    Witness(ZVec),
    /// No solution even over ℚ.
    RefutedOverQ,
    /// Rational solutions only.
    RefutedOverZ,
}

/// Solves the linear system `e·aᵢ = aᵢ = aᵢ·e` over ℤ.
pub fn s_unital_probe(ring: &BasedRing, elems: &[ZVec]) -> SUnitalVerdict {
    let n = ring.rank();
    let rows = 2 * elems.len() * n;
    let mut m = DenseMatrix::zeros(rows, n);
    let mut rhs = vec![Z::zero(); rows];
    for (k, a) in elems.iter().enumerate() {
        for j in 0..n {
            let ej = ZVec::unit(j);
            for (i, x) in ring.mul(&ej, a).iter() {
                m.set(2 * k * n + i, j, x.clone());
            }
            for (i, x) in ring.mul(a, &ej).iter() {
                m.set((2 * k + 1) * n + i, j, x.clone());
            }
        }
        for (i, x) in a.iter() {
            rhs[2 * k * n + i] = x.clone();
            rhs[(2 * k + 1) * n + i] = x.clone();
        }
    }
    match m.solve(&rhs) {
        Solve::Solution(e) => SUnitalVerdict::Witness(ZVec::from_dense(&e)),
        Solve::InconsistentOverQ => SUnitalVerdict::RefutedOverQ,
        Solve::InconsistentOverZ => SUnitalVerdict::RefutedOverZ,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> GroupRef {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    fn s3() -> GroupRef {
        Arc::new(FiniteGroup::symmetric(3).unwrap())
    }

    fn v(e: &[(usize, i64)]) -> ZVec {
        ZVec::from_entries(e.iter().map(|&(i, x)| (i, zi(x))))
    }

    fn gaussian_conj() -> BasedRing {
        build_ring(&RingExpr::WithAction {
            ring: Box::new(RingExpr::Gaussian),
            group: GroupSpec::Cyclic(2),
            subgroup: None,
            action: ActionSpec::Sign,
        })
        .unwrap()
    }

    #[test]
    fn leaves_are_valid() {
        for r in [integers(), group_ring(&s3()), matrix_ring(3), truncated(4).unwrap(), dual_numbers(), gaussian()] {
            r.validate().unwrap();
        }
    }

    #[test]
    fn crossed_gaussian_by_conjugation() {
        let a = crossed_product(&gaussian_conj()).unwrap();
        a.validate().unwrap();
        // basis (i, h) at i*2 + h: i⋊σ is index 3
        assert_eq!(a.label(3), "i⋊g");
        assert_eq!(a.basis_mul(3, 3), &ZVec::unit(0));
    }

    #[test]
    fn unitalized_dual_numbers() {
        let a = unitalize(&dual_numbers());
        a.validate().unwrap();
        assert_eq!(a.rank(), 2);
        assert!(a.basis_mul(0, 0).is_zero());
    }

    #[test]
    fn unitalization_maps() {
        let a = dual_numbers();
        let at = Arc::new(unitalize(&a));
        let incl = RingHom::new(Arc::new(a.clone()), at.clone(), ZMatrix::from_columns(2, vec![ZVec::unit(0)]).unwrap()).unwrap();
        let proj = RingHom::new(at, Arc::new(integers()), ZMatrix::from_columns(1, vec![ZVec::zero(), ZVec::unit(0)]).unwrap()).unwrap();
        assert!(check_hom(&incl, &[HomFlag::Multiplicative]).passed());
        assert!(check_hom(&proj, &[HomFlag::Multiplicative, HomFlag::Unital]).passed());
        assert!(proj.matrix.mul(&incl.matrix).unwrap().is_zero());
    }

    #[test]
    fn groupoid_crossed_rank() {
        let g = s3();
        let h = g.generated([g.element_by_label("(1 2)").unwrap()]);
        let tg = TransportGroupoid::new(g.cosets(&h).gset(&g));
        let a = groupoid_crossed(&integers(), &tg).unwrap();
        assert_eq!(a.rank(), 18);
        a.validate().unwrap();
    }

    #[test]
    fn trivial_crossed_product_is_tensor_with_group_ring() {
        let g = s3();
        let a = crossed_product_trivial(&gaussian(), &g).unwrap();
        let b = tensor(&gaussian(), &group_ring(&g)).unwrap();
        assert!(a.structure_eq(&b));
    }

    #[test]
    fn one_point_groupoid_crossed_is_crossed() {
        let a = gaussian_conj();
        let g = a.action().unwrap().group().clone();
        let x = groupoid_crossed(&a, &TransportGroupoid::new(GSet::point(&g))).unwrap();
        let y = crossed_product(&a).unwrap();
        assert!(x.structure_eq(&y));
    }

    #[test]
    fn nonunital_groupoid_crossed_is_the_kernel_part_of_the_unitalized_one() {
        let g = c2();
        let tg = TransportGroupoid::new(GSetSpec::Regular.build(&g).unwrap());
        let a = dual_numbers();
        let small = groupoid_crossed(&a, &tg).unwrap();
        let big = groupoid_crossed(&unitalize(&a), &tg).unwrap();
        assert!(small.unit().is_none());
        // the ring-basis index 0 block of the unitalized version is the t-block
        let na = tg.arrow_count();
        for i in 0..na {
            for j in 0..na {
                assert_eq!(small.basis_mul(i, j), big.basis_mul(i, j));
            }
        }
        // the projection to 𝒜(ℤ[𝒢]) kills exactly that block
        for i in 0..na {
            for j in 0..na {
                assert!(big.basis_mul(i, na + j).iter().all(|(k, _)| k < na));
            }
        }
    }

    #[test]
    fn action_homomorphism_on_group_ring() {
        group_ring(&s3()).validate().unwrap();
        assert!(build_ring(&RingExpr::WithAction {
            ring: Box::new(RingExpr::Gaussian),
            group: GroupSpec::Cyclic(2),
            subgroup: None,
            action: ActionSpec::Permutations(vec![vec![1, 2], vec![2, 1]]),
        })
        .is_err());
    }

    #[test]
    fn check_hom_examples() {
        let zc2 = Arc::new(group_ring(&c2()));
        let id = RingHom::new(zc2.clone(), zc2.clone(), ZMatrix::identity(2)).unwrap();
        assert!(check_hom(&id, &HomFlag::ALL).passed());
        let z = Arc::new(integers());
        let two = RingHom::new(z.clone(), z, ZMatrix::from_columns(1, vec![ZVec::single(0, zi(2))]).unwrap()).unwrap();
        let v = check_hom(&two, &[HomFlag::Multiplicative, HomFlag::Bijective]);
        assert_eq!(
            v.first_failure(),
            Some((HomFlag::Multiplicative, &Counterexample::Multiplicative { left: "1".into(), right: "1".into() }))
        );
        assert!(v.results[1].1.is_err());
    }

    #[test]
    fn twisted_gaussian() {
        let r = Arc::new(gaussian_conj());
        let m = twisted_bimodule(r.clone(), 1).unwrap();
        assert_eq!(m.right(1, 1), ZVec::unit(0));
        let e = twisted_bimodule(r, 0).unwrap();
        assert_eq!(e.right(1, 1), v(&[(0, -1)]));
        let zc2 = build_ring(&RingExpr::WithAction {
            ring: Box::new(RingExpr::GroupRing(GroupSpec::Cyclic(2))),
            group: GroupSpec::Cyclic(2),
            subgroup: None,
            action: ActionSpec::Trivial,
        })
        .unwrap();
        let zc2 = Arc::new(zc2);
        let t = twisted_bimodule(zc2.clone(), 1).unwrap();
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(&t.right(k, i), zc2.basis_mul(k, i));
            }
        }
    }

    #[test]
    fn s_unital_examples() {
        let m2 = matrix_ring(2);
        match s_unital_probe(&m2, &[ZVec::unit(0)]) {
            SUnitalVerdict::Witness(e) => {
                assert_eq!(m2.mul(&e, &ZVec::unit(0)), ZVec::unit(0));
                assert_eq!(m2.mul(&ZVec::unit(0), &e), ZVec::unit(0));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(s_unital_probe(&dual_numbers(), &[ZVec::unit(0)]), SUnitalVerdict::RefutedOverQ);
        let sum = direct_sum(&integers(), &dual_numbers()).unwrap();
        assert_eq!(s_unital_probe(&sum, &[ZVec::unit(0)]), SUnitalVerdict::Witness(ZVec::unit(0)));
    }

    #[test]
    fn twice_t_needs_a_half() {
        // in 2ℤ ⊂ ℤ-like ring: basis x with x² = 2x; e·x = x forces e = x/2
        let r = BasedRing::new(vec!["x".into()], [(0, 0, ZVec::single(0, zi(2)))], None).unwrap();
        assert_eq!(s_unital_probe(&r, &[ZVec::unit(0)]), SUnitalVerdict::RefutedOverZ);
    }

    #[test]
    fn mxg_ring_has_valid_action() {
        let g = c2();
        let x = GSetSpec::Regular.build(&g).unwrap();
        let r = matrices_over(&x, &integers()).unwrap();
        r.validate().unwrap();
        let c = crossed_product(&r).unwrap();
        c.validate().unwrap();
        assert_eq!(c.rank(), 8);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        let e = RingExpr::Table {
            labels: vec!["a".into(), "b".into()],
            products: vec![(0, 0, vec![(1, 1)]), (0, 1, vec![(0, 1)])],
            unit: None,
        };
        assert!(matches!(build_ring(&e), Err(RingError::NotAssociative(..))));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn leaf() -> impl Strategy<Value = RingExpr> {
            prop_oneof![
                Just(RingExpr::Integers),
                Just(RingExpr::DualNumbers),
                Just(RingExpr::Gaussian),
                Just(RingExpr::Truncated(3)),
                Just(RingExpr::MatrixInt(2)),
                Just(RingExpr::GroupRing(GroupSpec::Cyclic(2))),
            ]
        }

        fn signed_crossed() -> impl Strategy<Value = RingExpr> {
            (leaf(), prop_oneof![Just(GroupSpec::Cyclic(2)), Just(GroupSpec::Symmetric(3))]).prop_map(|(ring, group)| {
                RingExpr::Crossed {
                    ring: Box::new(RingExpr::WithAction { ring: Box::new(ring), group, subgroup: None, action: ActionSpec::Sign }),
                    group: None,
                }
            })
        }

        fn expr() -> impl Strategy<Value = RingExpr> {
            prop_oneof![leaf(), signed_crossed()].prop_recursive(2, 8, 2, |inner| {
                prop_oneof![
                    inner.clone().prop_map(|a| RingExpr::Unitalize(Box::new(a))),
                    (inner.clone(), inner.clone()).prop_map(|(a, b)| RingExpr::Sum(Box::new(a), Box::new(b))),
                    (inner.clone(), inner).prop_map(|(a, b)| RingExpr::Tensor(Box::new(a), Box::new(b))),
                ]
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn constructions_satisfy_the_ring_axioms(e in expr()) {
                let r = match eval(&e) {
                    Err(RingError::Mismatch(_)) => return Err(TestCaseError::reject("summands act through different groups")),
                    r => r.unwrap(),
                };
                prop_assume!(r.rank() <= 48);
                r.validate().unwrap();
                let u = unitalize(&r);
                prop_assert_eq!(u.rank(), r.rank() + 1);
                prop_assert!(u.unit().is_some());
                u.validate().unwrap();
            }

            #[test]
            fn trivial_crossed_product_is_a_tensor(
                e in leaf().prop_filter("graded by another group", |e| !matches!(e, RingExpr::GroupRing(_))),
                m in 2usize..=4,
            ) {
                let a = build_ring(&e).unwrap().without_action();
                let g: GroupRef = Arc::new(FiniteGroup::cyclic(m).unwrap());
                let crossed = crossed_product_trivial(&a, &g).unwrap();
                prop_assert!(crossed.structure_eq(&tensor(&a, &group_ring(&g).without_action()).unwrap()));
            }
        }
    }
}
