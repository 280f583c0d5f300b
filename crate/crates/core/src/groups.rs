use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub type Elem = usize;
pub type GroupRef = Arc<FiniteGroup>;

pub const MAX_ORDER: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group spec out of range: {0}")]
    OutOfRange(String),
    #[error("malformed multiplication table: {0}")]
    BadTable(String),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(Elem),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("cannot parse group spec {0:?}")]
    Parse(String),
    #[error("group {0} has no sign character")]
    NoSign(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Table(Vec<Vec<usize>>),
}

impl FromStr for GroupSpec {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let (kind, n) = s.split_once(':').ok_or_else(|| GroupError::Parse(s.into()))?;
        let n: usize = n.trim().parse().map_err(|_| GroupError::Parse(s.into()))?;
        match kind.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "symmetric" => Ok(GroupSpec::Symmetric(n)),
            _ => Err(GroupError::Parse(s.into())),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Table(t) => write!(f, "table:{}", t.len()),
        }
    }
}

/// A sorted set of group elements closed under products and inverses.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    /// Position of `g` in the sorted element list.
    pub fn position(&self, g: Elem) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

/// A finite group on the elements `0..order`, identity first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    perms: Option<Vec<Vec<usize>>>,
    sign: Option<Vec<i8>>,
}

impl FiniteGroup {
    pub fn from_spec(spec: &GroupSpec) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Cyclic(n) => Self::cyclic(*n),
            GroupSpec::Symmetric(n) => Self::symmetric(*n),
            GroupSpec::Table(t) => Self::from_table(t.clone(), None),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::OutOfRange(format!("cyclic order {n} not in 1..={MAX_ORDER}")));
        }
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let sign = n.is_multiple_of(2).then(|| (0..n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect());
        Ok(Self::assemble(format!("C{n}"), labels, table, None, sign))
    }

    /// Permutations of `{0..n}` in lexicographic one-line order, composed as
    /// `(στ)(i) = σ(τ(i))`, labeled in 1-based cycle notation.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 6 {
            return Err(GroupError::OutOfRange(format!("symmetric degree {n} not in 1..=6")));
        }
        let perms = permutations(n);
        let index: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let m = perms.len();
        let mut table = vec![0; m * m];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let c: Vec<usize> = (0..n).map(|i| pa[pb[i]]).collect();
                table[a * m + b] = index[&c];
            }
        }
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        let sign = perms.iter().map(|p| parity(p)).collect();
        Ok(Self::assemble(format!("S{n}"), labels, table, Some(perms), Some(sign)))
    }

    /// Validates an explicit table and relabels so the identity is element 0
    /// (other elements keep their relative order).
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::OutOfRange(format!("table order {n} not in 1..={MAX_ORDER}")));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::BadTable("rows must have length n with entries < n".into()));
        }
        let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)).ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return Err(GroupError::MissingInverse(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let order: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&x| x != e)).collect();
        let mut new_index = vec![0; n];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[new_index[a] * n + new_index[b]] = new_index[table[a][b]];
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => order.iter().map(|&o| l[o].clone()).collect(),
            _ => order.iter().map(|o| format!("x{o}")).collect(),
        };
        Ok(Self::assemble(format!("T{n}"), labels, flat, None, None))
    }

    fn assemble(
        name: String,
        labels: Vec<String>,
        table: Vec<Elem>,
        perms: Option<Vec<Vec<usize>>>,
        sign: Option<Vec<i8>>,
    ) -> Self {
        let n = labels.len();
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("validated group")).collect();
        FiniteGroup { name, labels, table, inverses, perms, sign }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn label(&self, g: Elem) -> &str {
        &self.labels[g]
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn product(&self, elems: impl IntoIterator<Item = Elem>) -> Elem {
        elems.into_iter().fold(0, |acc, g| self.mul(acc, g))
    }

    /// `g h g⁻¹`
    pub fn conj(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn permutation(&self, g: Elem) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[g].as_slice())
    }

    /// The sign character, for symmetric groups and cyclic groups of even order.
    pub fn sign(&self, g: Elem) -> Result<i8, GroupError> {
        self.sign.as_ref().map(|s| s[g]).ok_or_else(|| GroupError::NoSign(self.name.clone()))
    }

    pub fn element_by_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[g]` for cyclic groups, `[(1 2), (1 2 … n)]` for symmetric groups,
    /// otherwise a greedy generating set in element order.
    pub fn standard_generators(&self) -> Vec<Elem> {
        if self.order() == 1 {
            return Vec::new();
        }
        if let Some(perms) = &self.perms {
            let n = perms[0].len();
            let find = |target: Vec<usize>| perms.iter().position(|p| *p == target).expect("present");
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let mut gens = vec![find(swap)];
            if n > 2 {
                gens.push(find(cycle));
            }
            return gens;
        }
        if self.name.starts_with('C') {
            return vec![1];
        }
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        for g in self.elements() {
            if !span.contains(g) {
                gens.push(g);
                span = self.generated(gens.iter().copied());
            }
        }
        gens
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    pub fn subgroup(&self, elems: impl IntoIterator<Item = Elem>) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<Elem> = elems.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&g| g >= self.order()) {
            return Err(GroupError::NotASubgroup(format!("element {bad} out of range")));
        }
        if !set.contains(&0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("not closed under inverse at {}", self.label(a))));
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!(
                        "not closed under product {}*{}",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(Subgroup { elements: set.into_iter().collect() })
    }

    pub fn generated(&self, gens: impl IntoIterator<Item = Elem>) -> Subgroup {
        let gens: Vec<Elem> = gens.into_iter().collect();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { elements: (0..self.order()).filter(|&g| seen[g]).collect() }
    }

    /// Every subgroup, sorted by order and then by element list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Subgroup> = self.elements().map(|g| self.generated([g])).collect();
        let mut all: BTreeSet<Subgroup> = cyclic.clone();
        let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for c in &cyclic {
                if c.is_subset_of(&a) {
                    continue;
                }
                let joined = self.generated(a.elements.iter().chain(&c.elements).copied());
                if all.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut out: Vec<Subgroup> = all.into_iter().collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        out
    }

    pub fn conjugate_subgroup(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<Elem> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { elements: a.elements.iter().copied().filter(|&g| b.contains(g)).collect() }
    }

    /// Conjugacy classes, each sorted, ordered by their minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<Elem> = self.elements().map(|x| self.conj(x, g)).collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    /// Index of the conjugacy class of each element, in the order of [`Self::conjugacy_classes`].
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (k, class) in self.conjugacy_classes().iter().enumerate() {
            for &g in class {
                idx[g] = k;
            }
        }
        idx
    }

    pub fn centralizer(&self, g: Elem) -> Subgroup {
        Subgroup { elements: self.elements().filter(|&x| self.mul(x, g) == self.mul(g, x)).collect() }
    }

    pub fn cosets(&self, h: &Subgroup) -> CosetSpace {
        CosetSpace::new(self, h)
    }

    /// The double cosets `H\G/K`, ordered by their minimal element.
    pub fn double_cosets(&self, h: &Subgroup, k: &Subgroup) -> Vec<DoubleCoset> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for theta in self.elements() {
            if seen[theta] {
                continue;
            }
            let mut elements: Vec<Elem> = h
                .elements
                .iter()
                .flat_map(|&a| k.elements.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(self.mul(a, theta), b))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            elements.sort_unstable();
            for &x in &elements {
                seen[x] = true;
            }
            let h_theta = self.intersect(h, &self.conjugate_subgroup(theta, k));
            let k_theta_inv = self.intersect(&self.conjugate_subgroup(self.inv(theta), h), k);
            out.push(DoubleCoset { representative: theta, elements, h_theta, k_theta_inv });
        }
        out
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cycle.push(i + 1);
            i = p[i];
        }
        out.push_str(&format!("({})", cycle.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

fn parity(p: &[usize]) -> i8 {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Left cosets `gH` with a pointed section (the class of `H` is represented by the identity).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpace {
    subgroup: Subgroup,
    cosets: Vec<Vec<Elem>>,
    section: Vec<Elem>,
    coset_of: Vec<usize>,
}

impl CosetSpace {
    /// Cosets ordered by minimal element (so `H` comes first); representatives
    /// are minimal elements.
    fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut cosets = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<Elem> = h.elements.iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            for &y in &c {
                coset_of[y] = cosets.len();
            }
            cosets.push(c);
        }
        let section = cosets.iter().map(|c| c[0]).collect();
        CosetSpace { subgroup: h.clone(), cosets, section, coset_of }
    }

    /// Replaces the section; it must pick one element per coset and be pointed.
    pub fn with_section(mut self, section: Vec<Elem>) -> Result<Self, GroupError> {
        if section.len() != self.cosets.len()
            || section.iter().enumerate().any(|(i, &s)| self.coset_of.get(s) != Some(&i))
        {
            return Err(GroupError::InvalidAction("section must pick one element in each coset".into()));
        }
        if section[0] != 0 {
            return Err(GroupError::InvalidAction("section must send the class of H to the identity".into()));
        }
        self.section = section;
        Ok(self)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn cosets(&self) -> &[Vec<Elem>] {
        &self.cosets
    }

    pub fn section(&self) -> &[Elem] {
        &self.section
    }

    pub fn rep(&self, x: usize) -> Elem {
        self.section[x]
    }

    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g]
    }

    /// `g · xH`
    pub fn act(&self, group: &FiniteGroup, g: Elem, x: usize) -> usize {
        self.coset_of[group.mul(g, self.section[x])]
    }

    /// Writes `g = ŝ h` with `ŝ` the representative of `gH`; returns `(gH, h)`.
    pub fn decompose(&self, group: &FiniteGroup, g: Elem) -> (usize, Elem) {
        let x = self.coset_of[g];
        (x, group.mul(group.inv(self.section[x]), g))
    }

    /// The finite G-set `G/H`.
    pub fn gset(&self, group: &GroupRef) -> GSet {
        let act = group.elements().map(|g| (0..self.len()).map(|x| self.act(group, g, x)).collect()).collect();
        GSet { group: group.clone(), act }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: Elem,
    pub elements: Vec<Elem>,
    /// `H ∩ θKθ⁻¹`
    pub h_theta: Subgroup,
    /// `θ⁻¹Hθ ∩ K`
    pub k_theta_inv: Subgroup,
}

/// A finite left G-set on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: GroupRef,
    act: Vec<Vec<usize>>,
}

impl GSet {
    /// `act[g][s] = g·s`; checks the action axioms.
    pub fn new(group: GroupRef, act: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if act.len() != group.order() {
            return Err(GroupError::InvalidAction("need one permutation per group element".into()));
        }
        let n = act[0].len();
        if act.iter().any(|p| p.len() != n || p.iter().any(|&s| s >= n)) {
            return Err(GroupError::InvalidAction("ragged or out-of-range permutation".into()));
        }
        if act[0].iter().enumerate().any(|(s, &t)| s != t) {
            return Err(GroupError::InvalidAction("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|s| act[gh][s] != act[g][act[h][s]]) {
                    return Err(GroupError::InvalidAction(format!(
                        "action of {}*{} is not the composite",
                        group.label(g),
                        group.label(h)
                    )));
                }
            }
        }
        Ok(GSet { group, act })
    }

    pub fn point(group: &GroupRef) -> Self {
        GSet { group: group.clone(), act: vec![vec![0]; group.order()] }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.act[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn act(&self, g: Elem, s: usize) -> usize {
        self.act[g][s]
    }

    pub fn stabilizer(&self, s: usize) -> Subgroup {
        Subgroup { elements: self.group.elements().filter(|&g| self.act[g][s] == s).collect() }
    }

    pub fn fixed_points(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.len()).filter(|&s| h.elements().iter().all(|&g| self.act[g][s] == s)).collect()
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.group.elements().map(|g| self.act[g][s]).collect();
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub element: Elem,
}

/// `𝒢^G(S)`: objects the points of `S`, arrows `g: s → g·s`.
///
/// Arrow `(s, g)` has index `s·|G| + g`.
#[derive(Clone, Debug)]
pub struct TransportGroupoid {
    gset: GSet,
}

impl TransportGroupoid {
    pub fn new(gset: GSet) -> Self {
        TransportGroupoid { gset }
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &GroupRef {
        self.gset.group()
    }

    pub fn object_count(&self) -> usize {
        self.gset.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.gset.len() * self.group().order()
    }

    pub fn arrow_index(&self, source: usize, g: Elem) -> usize {
        source * self.group().order() + g
    }

    pub fn arrow(&self, i: usize) -> Arrow {
        let n = self.group().order();
        let (source, element) = (i / n, i % n);
        Arrow { source, target: self.gset.act(element, source), element }
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.arrow_count()).map(|i| self.arrow(i))
    }

    /// Arrows `s → t`, in increasing group element order.
    pub fn hom(&self, s: usize, t: usize) -> Vec<usize> {
        self.group().elements().filter(|&g| self.gset.act(g, s) == t).map(|g| self.arrow_index(s, g)).collect()
    }

    /// `b ∘ a`, defined when `target(a) = source(b)`.
    pub fn compose(&self, b: usize, a: usize) -> Option<usize> {
        let (x, y) = (self.arrow(a), self.arrow(b));
        (x.target == y.source).then(|| self.arrow_index(x.source, self.group().mul(y.element, x.element)))
    }
}

/// Values attached to the elements of a subgroup of an ambient group, such as
/// the matrices or permutations of an action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action<T> {
    group: GroupRef,
    domain: Subgroup,
    images: Vec<T>,
}

impl<T: Clone> Action<T> {
    pub fn new(group: GroupRef, domain: Subgroup, images: Vec<T>) -> Result<Self, GroupError> {
        if images.len() != domain.order() {
            return Err(GroupError::InvalidAction(format!(
                "{} images for a subgroup of order {}",
                images.len(),
                domain.order()
            )));
        }
        Ok(Action { group, domain, images })
    }

    pub fn whole(group: GroupRef, images: Vec<T>) -> Result<Self, GroupError> {
        let domain = group.whole();
        Self::new(group, domain, images)
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn get(&self, g: Elem) -> Option<&T> {
        self.domain.position(g).map(|i| &self.images[i])
    }

    pub fn at(&self, g: Elem) -> &T {
        self.get(g).unwrap_or_else(|| panic!("element {} is outside the acting subgroup", self.group.label(g)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, &T)> + '_ {
        self.domain.elements().iter().copied().zip(&self.images)
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<Self, GroupError> {
        if !sub.is_subset_of(&self.domain) {
            return Err(GroupError::NotASubgroup("restriction target is not inside the acting subgroup".into()));
        }
        let images = sub.elements().iter().map(|&g| self.at(g).clone()).collect();
        Ok(Action { group: self.group.clone(), domain: sub.clone(), images })
    }

    pub fn map<U: Clone>(&self, f: impl Fn(Elem, &T) -> U) -> Action<U> {
        Action {
            group: self.group.clone(),
            domain: self.domain.clone(),
            images: self.iter().map(|(g, t)| f(g, t)).collect(),
        }
    }

    pub fn same_group(&self, other: &GroupRef) -> bool {
        Arc::ptr_eq(&self.group, other) || *self.group == **other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    fn el(g: &FiniteGroup, label: &str) -> Elem {
        g.element_by_label(label).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes(), vec![vec![0]]);
    }

    #[test]
    fn s3_classes() {
        let g = s3();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        for c in g.conjugacy_classes() {
            assert_eq!(c.len() * g.centralizer(c[0]).order(), g.order());
        }
    }

    #[test]
    fn permutation_composition_convention() {
        let g = s3();
        // (12)(23): apply (23) first. 1→1→2, 2→3→3, 3→2→1, so (1 2 3).
        assert_eq!(g.label(g.mul(el(&g, "(1 2)"), el(&g, "(2 3)"))), "(1 2 3)");
    }

    #[test]
    fn bad_tables() {
        assert_eq!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]], None), Err(GroupError::NoIdentity));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::symmetric(7).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn table_with_identity_elsewhere_is_relabeled() {
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.label(0), "x1");
        assert_eq!(g.mul(1, 1), 0);
    }

    #[test]
    fn cosets_of_transposition_subgroup() {
        let g = s3();
        let h = g.generated([el(&g, "(1 2)")]);
        let cs = g.cosets(&h);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs.rep(0), 0);
        assert!(cs.cosets().iter().all(|c| c.len() == 2));
        for x in 0..3 {
            assert_eq!(cs.coset_of(cs.rep(x)), x);
        }
        let whole = g.cosets(&g.whole());
        assert_eq!(whole.section(), &[0]);
    }

    #[test]
    fn double_cosets_of_transposition_subgroup() {
        let g = s3();
        let h = g.generated([el(&g, "(1 2)")]);
        let dc = g.double_cosets(&h, &h);
        let mut sizes: Vec<usize> = dc.iter().map(|d| d.elements.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let theta = el(&g, "(1 3)");
        let big = dc.iter().find(|d| d.elements.contains(&theta)).unwrap();
        assert_eq!(big.h_theta.order(), 1);
        for d in &dc {
            assert_eq!(d.elements.len() * d.h_theta.order(), h.order() * h.order());
        }
    }

    #[test]
    fn transport_groupoid_sizes() {
        let g: GroupRef = Arc::new(s3());
        let h = g.generated([el(&g, "(1 2)")]);
        let tg = TransportGroupoid::new(g.cosets(&h).gset(&g));
        assert_eq!(tg.object_count(), 3);
        assert_eq!(tg.arrow_count(), 18);
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(tg.hom(s, t).len(), 2);
            }
        }
        let self_hom: Vec<Elem> = tg.hom(0, 0).iter().map(|&a| tg.arrow(a).element).collect();
        assert_eq!(self_hom, h.elements());

        let c2: GroupRef = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let regular = c2.cosets(&c2.trivial_subgroup()).gset(&c2);
        assert_eq!(TransportGroupoid::new(regular).arrow_count(), 4);
        assert_eq!(TransportGroupoid::new(GSet::point(&c2)).hom(0, 0).len(), 2);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(s3().all_subgroups().len(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().all_subgroups().len(), 30);
        assert_eq!(FiniteGroup::cyclic(12).unwrap().all_subgroups().len(), 6);
    }

    #[test]
    fn non_subgroup_rejected() {
        let g = s3();
        assert!(g.subgroup([0, el(&g, "(1 2)"), el(&g, "(2 3)")]).is_err());
    }

    fn groups() -> impl Strategy<Value = FiniteGroup> {
        prop_oneof![
            (1usize..=12).prop_map(|n| FiniteGroup::cyclic(n).unwrap()),
            (1usize..=4).prop_map(|n| FiniteGroup::symmetric(n).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn group_axioms(g in groups()) {
            for a in g.elements() {
                prop_assert_eq!(g.mul(a, g.inv(a)), 0);
                prop_assert_eq!(g.mul(0, a), a);
                for b in g.elements() {
                    for c in g.elements() {
                        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }

        #[test]
        fn coset_and_double_coset_counts(g in groups(), seed in 0usize..1000) {
            let subs = g.all_subgroups();
            let h = &subs[seed % subs.len()];
            let k = &subs[(seed / 7) % subs.len()];
            let cs = g.cosets(h);
            prop_assert_eq!(cs.len() * h.order(), g.order());
            prop_assert_eq!(cs.cosets().iter().map(Vec::len).sum::<usize>(), g.order());
            let dc = g.double_cosets(h, k);
            prop_assert_eq!(dc.iter().map(|d| d.elements.len()).sum::<usize>(), g.order());
            for d in dc {
                prop_assert_eq!(d.elements.len() * d.h_theta.order(), h.order() * k.order());
                prop_assert_eq!(d.h_theta.order(), d.k_theta_inv.order());
            }
            for x in g.elements() {
                let z = g.centralizer(x);
                prop_assert!(z.contains(x));
                prop_assert!(g.generated([x]).is_subset_of(&z));
            }
        }
    }
}
