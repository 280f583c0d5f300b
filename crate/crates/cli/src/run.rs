//! Executes checks and assembles the report.

use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Result};
use equihom_core::groups::GroupRef;
use equihom_core::homology::{
    bar_tor_probe, cyclic_homology, cyclic_nerve_complex, equivariant_coend, group_hyperhomology, hochschild_complex, hochschild_homology,
    l_ladder, snf_homology, verify_reilu, Coefficients, EquivariantComplex, FilteredAlgebra, Letters,
};
use equihom_core::induction::{self, InducedRing, IsoName, IsoReport, LocalCosets};
use equihom_core::lincat::verify_cone_homotopy;
use equihom_core::polyfun::{check_extension, extend, random_complex, random_function, PolyLattice, DEFAULT_DEGREE_BOUND};
use equihom_core::rings::{crossed_product, direct_sum, groupoid_crossed, BasedRing};
use equihom_linalg::reference::{brute_homology, random_small_complex};
use equihom_linalg::{ChainComplexZ, FGAbelianGroup, ZMatrix, Z};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::build;
use crate::scenario::{CheckSpec, Expectation, HochschildCoefficients, IsoArgs, Scenario, Task, SCHEMA_VERSION};

/// Literal `HH(𝒜(R⋊𝒢^G(G/H)))` in the Yoneda check is skipped past this many top-degree words.
pub const LITERAL_WORD_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub jobs: Option<usize>,
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub details: Value,
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub environment: Environment,
    pub seed: u64,
    pub max_degree: usize,
    pub summary: Summary,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.error == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// What a check computed, before any expectation is applied.
struct Outcome {
    passed: bool,
    values: Option<Vec<FGAbelianGroup>>,
    details: Map<String, Value>,
    witness: Option<String>,
}

impl Outcome {
    fn new(passed: bool) -> Self {
        Outcome { passed, values: None, details: Map::new(), witness: None }
    }

    fn values(values: Vec<FGAbelianGroup>) -> Self {
        Outcome { values: Some(values), ..Outcome::new(true) }
    }

    fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.details.insert(key.into(), v.into());
        self
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        if !self.passed {
            self.witness = Some(w.into());
        }
        self
    }
}

fn groups(v: &[FGAbelianGroup]) -> Value {
    Value::Array(v.iter().map(|g| Value::String(g.to_string())).collect())
}

fn first_nonzero(v: &[FGAbelianGroup]) -> Option<String> {
    v.iter().position(|g| !g.is_zero()).map(|n| format!("H_{n} = {}", v[n]))
}

struct Ctx {
    seed: u64,
    max_degree: usize,
}

impl Ctx {
    fn degree(&self, d: Option<usize>) -> usize {
        d.unwrap_or(self.max_degree)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

pub fn run(scenario: &Scenario, options: RunOptions) -> Report {
    let ctx = Ctx { seed: scenario.seed, max_degree: scenario.max_degree };
    let exec = |c: &CheckSpec| execute(c, &ctx, options.timings);
    let checks: Vec<CheckResult> = match options.jobs {
        Some(1) => scenario.checks.iter().map(exec).collect(),
        jobs => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build().expect("thread pool");
            pool.install(|| scenario.checks.par_iter().map(exec).collect())
        }
    };
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Error => summary.error += 1,
        }
    }
    Report {
        environment: Environment { tool: "equihom", version: env!("CARGO_PKG_VERSION"), schema_version: SCHEMA_VERSION },
        seed: scenario.seed,
        max_degree: scenario.max_degree,
        summary,
        checks,
    }
}

fn execute(check: &CheckSpec, ctx: &Ctx, timings: bool) -> CheckResult {
    let start = Instant::now();
    let outcome = perform(&check.task, ctx);
    let ms = timings.then(|| start.elapsed().as_millis() as u64);
    let (status, details) = match outcome {
        Err(e) => (Status::Error, json!({ "error": format!("{e:#}") })),
        Ok(o) => judge(o, check.expect.as_ref()),
    };
    CheckResult { id: check.id.clone(), status, details, ms }
}

fn judge(o: Outcome, expect: Option<&Expectation>) -> (Status, Value) {
    let mut details = o.details;
    if let Some(v) = &o.values {
        details.insert("values".into(), groups(v));
    }
    let (passed, witness) = match expect {
        None | Some(Expectation::Pass) => (o.passed, o.witness),
        Some(Expectation::Fail) => (!o.passed, o.passed.then(|| "the check passed".to_string())),
        Some(Expectation::Zero) => match &o.values {
            None => return (Status::Error, json!({ "error": "this check computes no homology values" })),
            Some(v) => {
                details.insert("expected".into(), "zero".into());
                let w = first_nonzero(v);
                (w.is_none(), w)
            }
        },
        Some(Expectation::Values(want)) => match &o.values {
            None => return (Status::Error, json!({ "error": "this check computes no homology values" })),
            Some(v) => {
                details.insert("expected".into(), groups(want));
                let w = if v.len() != want.len() {
                    Some(format!("computed {} degrees, expected {}", v.len(), want.len()))
                } else {
                    v.iter().zip(want).position(|(a, b)| a != b).map(|n| format!("H_{n} = {}, expected {}", v[n], want[n]))
                };
                (w.is_none(), w)
            }
        },
    };
    if let (false, Some(w)) = (passed, &witness) {
        details.insert("witness".into(), w.clone().into());
    }
    (if passed { Status::Pass } else { Status::Fail }, Value::Object(details))
}

fn perform(task: &Task, ctx: &Ctx) -> Result<Outcome> {
    match task {
        Task::Iso(name, a) => iso(*name, a),
        Task::ResInd(a) => {
            let g = build::group(&a.group)?;
            let h = build::subgroup(&g, &a.subgroup)?;
            let k = build::subgroup(&g, &a.inner)?;
            let base = build::acted_by(build::ring(&a.ring)?, &g, &k)?;
            let ind = InducedRing::new(LocalCosets::new(&g, &g.whole(), &k)?, Arc::new(base))?;
            let parts = induction::decompose_res_ind(&ind, &h)?;
            let bad = parts.iter().find(|p| !p.report.passed());
            let ranks: Vec<usize> = parts.iter().map(|p| p.rank).collect();
            Ok(Outcome::new(bad.is_none())
                .with("summands", parts.len())
                .with("ranks", ranks)
                .with("carrier_rank", ind.carrier().rank())
                .witness(bad.map(|p| p.report.summary()).unwrap_or_default()))
        }
        Task::Extend(a) => {
            let space = Arc::new(build::complex(&a.complex, None)?);
            let phi = build::polyfun(&space, &a.domain, &a.values, a.bound.unwrap_or(DEFAULT_DEGREE_BOUND))?;
            let psi = extend(&phi)?;
            let verdict = check_extension(&phi, &psi);
            Ok(Outcome::new(verdict.is_ok())
                .with("phi", phi.describe())
                .with("psi", psi.describe())
                .with("support", psi.support().len())
                .witness(verdict.err().unwrap_or_default()))
        }
        Task::ExtendRoundtrip(a) => {
            let mut rng = ctx.rng();
            let mut largest = 0;
            for i in 0..a.instances {
                let x = Arc::new(random_complex(&mut rng, a.max_vertices, a.max_dim));
                let phi = random_function(&mut rng, &x, a.degree);
                let psi = extend(&phi)?;
                let failure = check_extension(&phi, &psi).err().or_else(|| {
                    // restriction hits φ, so every φ lies in the image of restriction
                    match psi.restrict(phi.domain()) {
                        Ok(back) if back == phi => None,
                        Ok(_) => Some("restriction of the extension differs from φ".into()),
                        Err(e) => Some(e.to_string()),
                    }
                });
                if let Some(f) = failure {
                    return Ok(Outcome::new(false).with("instance", i).witness(format!("instance {i}: {f}; φ = {}", phi.describe())));
                }
                largest = largest.max(x.len());
            }
            Ok(Outcome::new(true).with("instances", a.instances).with("largest_complex", largest))
        }
        Task::Cone(a) => {
            let c = build::category(&a.category)?;
            Ok(match verify_cone_homotopy(&c) {
                Ok(r) => Outcome::new(true).with("arrows", r.arrows_checked).with("pairs", r.pairs_checked),
                Err(e) => Outcome::new(false).witness(e.to_string()),
            })
        }
        Task::Snf(a) => {
            let c = match (&a.chain_complex, &a.complex) {
                (Some(def), _) => build::chain_complex(def)?,
                (_, Some(x)) => {
                    let x = build::complex(x, None)?;
                    x.chain_complex(&x.all())
                }
                _ => unreachable!("shape checked"),
            };
            let values = (c.lo()..=c.hi()).map(|n| snf_homology(&c, n)).collect::<Result<Vec<_>, _>>()?;
            Ok(Outcome::values(values).with("lo", c.lo()).with("ranks", c.ranks().to_vec()))
        }
        Task::SnfOracle(a) => snf_oracle(a.instances, ctx),
        Task::Bar(a) => {
            let n = ctx.degree(a.degree);
            let (probe, filtered) = match (&a.ring, &a.polyfun) {
                (Some(r), _) => (bar_tor_probe(&build::ring(r)?, &a.coefficients.0, n)?, None),
                (_, Some(p)) => {
                    let space = Arc::new(build::complex(&p.complex, None)?);
                    let alg = FilteredAlgebra::from_lattice(&PolyLattice::new(space, p.degree))?;
                    (bar_tor_probe(&alg as &dyn Letters, &a.coefficients.0, n)?, Some(p.degree))
                }
                _ => unreachable!("shape checked"),
            };
            let mut o = Outcome::values(probe.homology.clone()).with("degree", n).with("coefficients", a.coefficients.0.to_string());
            if let Some(d) = filtered {
                o = o.with("polynomial_degree", d);
            }
            o.passed = probe.vanishes();
            Ok(o.witness(first_nonzero(&probe.homology).unwrap_or_default()))
        }
        Task::BarSum(a) => {
            let n = a.degree.unwrap_or(3);
            let rings = a.rings.iter().map(|r| Ok(build::ring(r)?.without_action())).collect::<Result<Vec<_>>>()?;
            let vanishes = |r: &BasedRing| -> Result<bool> { Ok(bar_tor_probe(r, &a.coefficients.0, n)?.vanishes()) };
            let single = rings.iter().map(vanishes).collect::<Result<Vec<_>>>()?;
            let mut matrix = Vec::new();
            let mut witness = None;
            for (i, ri) in rings.iter().enumerate() {
                let mut row = Vec::new();
                for (j, rj) in rings.iter().enumerate() {
                    let sum = vanishes(&direct_sum(ri, rj)?)?;
                    if sum != (single[i] && single[j]) && witness.is_none() {
                        witness = Some(format!("rings {i} and {j}: sum {sum}, parts {} and {}", single[i], single[j]));
                    }
                    row.push(sum);
                }
                matrix.push(row);
            }
            Ok(Outcome::new(witness.is_none()).with("degree", n).with("parts", single).with("sums", json!(matrix)).witness(witness.unwrap_or_default()))
        }
        Task::Hochschild(a) => {
            let n = ctx.degree(a.degree);
            let r = build::ring(&a.ring)?;
            let values = match &a.coefficients {
                None | Some(HochschildCoefficients::Ring) => hochschild_homology(&r, Coefficients::Ring, n)?,
                Some(HochschildCoefficients::Twisted(e)) => {
                    let act = r.action().ok_or_else(|| anyhow!("twisted coefficients need a ring with action"))?;
                    let g = build::element(act.group(), e)?;
                    hochschild_homology(&r, Coefficients::Twisted(g), n)?
                }
            };
            Ok(Outcome::values(values).with("degree", n).with("rank", r.rank()))
        }
        Task::CyclicNerve(a) => {
            let n = ctx.degree(a.degree);
            let c = build::category(&a.category)?;
            let values = cyclic_nerve_complex(&c, n + 1)?.homology();
            Ok(Outcome::values(values).with("degree", n).with("arrows", c.arrow_count()))
        }
        Task::Cyclic(a) => {
            let n = ctx.degree(a.degree);
            Ok(Outcome::values(cyclic_homology(&build::ring(&a.ring)?, n)?).with("degree", n))
        }
        Task::Split(a) => conjugacy_split(&build::ring(&a.ring)?, ctx.degree(a.degree)),
        Task::Ladder(a) => {
            let l = l_ladder(&build::ring(&a.ring)?, a.n)?;
            Ok(Outcome::values(vec![l.group()]).with("n", a.n).with("rank", l.rank()).with("ambient", l.ambient))
        }
        Task::Hyper(a) => {
            let n = ctx.degree(a.degree);
            let g = build::group(&a.group)?;
            let k = a.subgroup.as_ref().map_or_else(|| Ok(g.whole()), |s| build::subgroup(&g, s))?;
            let x = build::complex(a.complex.as_ref().expect("shape checked"), Some(&g))?;
            let c = EquivariantComplex::simplicial(&g, &x, &x.all(), &k)?;
            Ok(Outcome::values(group_hyperhomology(&c, n)?).with("degree", n).with("acting_order", k.order()))
        }
        Task::Coend(a) => {
            let n = ctx.degree(a.degree);
            let (g, r) = group_and_ring(&a.group, a.ring.as_ref())?;
            let x = build::complex(a.complex.as_ref().expect("shape checked"), Some(&g))?;
            let rep = equivariant_coend(&g, &x, &r, n)?;
            Ok(Outcome::values(rep.homology).with("degree", n).with("ranks", rep.ranks))
        }
        Task::Yoneda(a) => yoneda(a, ctx),
        Task::Reilu(a) => {
            let n = ctx.degree(a.degree);
            let (g, r) = group_and_ring(&a.group, a.ring.as_ref())?;
            let x = build::complex(a.complex.as_ref().expect("shape checked"), Some(&g))?;
            let reps = a.representatives.as_ref().map(|rs| rs.iter().map(|e| build::element(&g, e)).collect::<Result<Vec<_>>>()).transpose()?;
            let rep = verify_reilu(&g, &x, &r, n, reps.as_deref())?;
            let summands: Vec<Value> = rep
                .summands
                .iter()
                .map(|s| json!({ "representative": g.label(s.representative), "centralizer_order": s.centralizer_order, "homology": groups(&s.homology) }))
                .collect();
            let generators: usize = rep.alpha.iter().map(|c| c.generators).sum();
            let failures: usize = rep.alpha.iter().map(|c| c.failures).sum();
            let witness = if !rep.agrees() {
                let d = rep.lhs.iter().zip(&rep.rhs).position(|(l, r)| l != r).unwrap_or(0);
                format!("degree {d}: coend {} vs conjugacy sum {}", rep.lhs[d], rep.rhs[d])
            } else {
                format!("α fails to commute with the boundary on {failures} generators")
            };
            let mut o = Outcome::values(rep.lhs.clone())
                .with("degree", n)
                .with("conjugacy_sum", groups(&rep.rhs))
                .with("summands", summands)
                .with("alpha_generators", generators)
                .with("alpha_failures", failures);
            o.passed = rep.passed();
            Ok(o.witness(witness))
        }
    }
}

/// The group and the ring as a `G`-ring (trivial action when none is given); ℤ by default.
fn group_and_ring(group: &crate::scenario::GroupArg, ring: Option<&crate::scenario::RingArg>) -> Result<(GroupRef, BasedRing)> {
    let g = build::group(group)?;
    let base = match ring {
        Some(r) => build::ring(r)?,
        None => equihom_core::rings::integers(),
    };
    let r = build::acted_by(base, &g, &g.whole())?;
    Ok((g, r))
}

fn iso(name: IsoName, a: &IsoArgs) -> Result<Outcome> {
    let g = build::group(&a.group)?;
    let sub = |s: &Option<crate::scenario::SubgroupArg>, what: &str| -> Result<_> {
        build::subgroup(&g, s.as_ref().ok_or_else(|| anyhow!("{name} needs \"{what}\""))?)
    };
    let ring = || build::ring(a.ring.as_ref().ok_or_else(|| anyhow!("{name} needs \"ring\""))?);
    let cosets = |h: &equihom_core::groups::Subgroup| -> Result<LocalCosets> {
        let c = LocalCosets::new(&g, &g.whole(), h)?;
        Ok(match &a.section {
            Some(reps) => c.with_section(reps.iter().map(|e| build::element(&g, e)).collect::<Result<_>>()?)?,
            None => c,
        })
    };
    let report: IsoReport = match name {
        IsoName::Across => induction::across(&cosets(&sub(&a.subgroup, "subgroup")?)?, &Arc::new(build::acted_by(ring()?, &g, &g.whole())?))?,
        IsoName::Indtriv => induction::indtriv(&cosets(&sub(&a.subgroup, "subgroup")?)?, &Arc::new(build::acted_by(ring()?, &g, &g.whole())?))?,
        IsoName::Green | IsoName::IndcompI | IsoName::IndcompII => {
            let h = sub(&a.subgroup, "subgroup")?;
            let c = cosets(&h)?;
            let base = Arc::new(build::acted_by(ring()?, &g, &h)?);
            match name {
                IsoName::Green => induction::green(&c, &base)?,
                IsoName::IndcompI => induction::indcomp_i(&c, &base)?,
                _ => {
                    let ind = InducedRing::new(c.clone(), base)?;
                    induction::indcomp_ii(&c, &ind.proper_structure()?)?
                }
            }
        }
        IsoName::Mxg => {
            let x = build::gset(&g, a.gset.as_ref().ok_or_else(|| anyhow!("mxg needs \"gset\""))?)?;
            induction::mxg(&x, &Arc::new(build::acted_by(ring()?, &g, &g.whole())?))?
        }
        IsoName::Indx => {
            let h = sub(&a.subgroup, "subgroup")?;
            let x = build::complex(a.complex.as_ref().ok_or_else(|| anyhow!("indx needs \"complex\""))?, Some(&g))?;
            let x = match x.action() {
                Some(act) if act.domain() != &h => {
                    let restricted = act.restrict(&h)?;
                    x.with_action(Some(restricted))?
                }
                _ => x,
            };
            induction::indx(&g, &h, &Arc::new(x), a.degree.unwrap_or(1))?
        }
        IsoName::Indxtheta => {
            let h = sub(&a.subgroup, "subgroup")?;
            let k = sub(&a.inner, "inner")?;
            let theta = build::element(&g, a.theta.as_ref().ok_or_else(|| anyhow!("indxtheta needs \"theta\""))?)?;
            let ind = InducedRing::new(cosets(&k)?, Arc::new(build::acted_by(ring()?, &g, &k)?))?;
            let (report, rank) = induction::indxtheta(&ind, &h, theta)?;
            let passed = report.passed();
            return Ok(Outcome::new(passed).with("summand_rank", rank).with("summary", report.summary()).witness(report.summary()));
        }
    };
    let passed = report.passed();
    Ok(Outcome::new(passed)
        .with("rank", report.matrix.ncols())
        .with("summary", report.summary())
        .witness(report.summary()))
}

fn snf_oracle(instances: usize, ctx: &Ctx) -> Result<Outcome> {
    let mut rng = ctx.rng();
    let mut degrees = 0;
    for i in 0..instances {
        let mut next = |m: u32| rng.gen_range(0..m);
        let (ranks, rows) = random_small_complex(&mut next);
        let boundaries: Vec<ZMatrix> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| {
                if r.is_empty() {
                    ZMatrix::zero(ranks[k], ranks[k + 1])
                } else {
                    ZMatrix::from_dense_rows(&r.iter().map(|row| row.iter().map(|&x| Z::from(x)).collect()).collect::<Vec<_>>())
                }
            })
            .collect();
        let c = ChainComplexZ::new(0, ranks.clone(), boundaries)?;
        for n in 0..ranks.len() {
            let expected = brute_homology(ranks[n], if n > 0 { Some(&rows[n - 1]) } else { None }, rows.get(n));
            let got = snf_homology(&c, n as i64)?;
            if got != expected {
                return Ok(Outcome::new(false).witness(format!("instance {i}, ranks {ranks:?}, degree {n}: SNF {got}, oracle {expected}")));
            }
            degrees += 1;
        }
    }
    Ok(Outcome::new(true).with("instances", instances).with("degrees_compared", degrees))
}

fn conjugacy_split(r: &BasedRing, n: usize) -> Result<Outcome> {
    let hh = hochschild_complex(r, Coefficients::Ring, n)?;
    let parts = hh.conjugacy_split()?;
    let total = hh.complex().ranks().to_vec();
    let mut sums = vec![0; total.len()];
    for p in &parts {
        for (s, k) in sums.iter_mut().zip(&p.ranks) {
            *s += k;
        }
    }
    let homology = hh.homology();
    let mut direct = vec![FGAbelianGroup::zero(); homology.len()];
    for p in &parts {
        for (d, h) in direct.iter_mut().zip(p.complex.homology_upto(homology.len() as i64 - 1)) {
            *d = d.direct_sum(&h);
        }
    }
    let (grp, _) = r.grading().ok_or_else(|| anyhow!("the ring carries no grading"))?;
    let classes: Vec<Value> =
        parts.iter().map(|p| json!({ "class": p.class.iter().map(|&e| grp.label(e)).collect::<Vec<_>>(), "ranks": p.ranks })).collect();
    let witness = if sums != total {
        format!("summand ranks {sums:?} vs total {total:?}")
    } else {
        let d = homology.iter().zip(&direct).position(|(a, b)| a != b).unwrap_or(0);
        format!("degree {d}: total {} vs summands {}", homology.get(d).map_or(String::new(), |g| g.to_string()), direct.get(d).map_or(String::new(), |g| g.to_string()))
    };
    let mut o = Outcome::values(homology.clone()).with("degree", n).with("ranks", total.clone()).with("classes", classes);
    o.passed = sums == total && homology == direct;
    Ok(o.witness(witness))
}

fn yoneda(a: &crate::scenario::EquivariantArgs, ctx: &Ctx) -> Result<Outcome> {
    let n = ctx.degree(a.degree);
    let (g, r) = group_and_ring(&a.group, a.ring.as_ref())?;
    let h = build::subgroup(&g, a.subgroup.as_ref().expect("shape checked"))?;
    let orbit = equihom_core::homology::orbit_complex(&g, &h)?;
    let lhs = equivariant_coend(&g, &orbit, &r, n)?.homology;
    let act = r.action().expect("acted_by attaches one");
    let rh = r.clone().without_action().with_action(act.restrict(&h)?)?;
    let crossed = crossed_product(&rh)?;
    let rhs = hochschild_homology(&crossed, Coefficients::Ring, n)?;
    let mut ok = lhs == rhs;
    let mut o = Outcome::values(lhs.clone()).with("degree", n).with("subgroup_order", h.order()).with("crossed_product", groups(&rhs));
    let mut witness = (!ok).then(|| {
        let d = lhs.iter().zip(&rhs).position(|(x, y)| x != y).unwrap_or(0);
        format!("degree {d}: coend {} vs HH(R⋊H) {}", lhs[d], rhs[d])
    });
    let groupoid = equihom_core::groups::TransportGroupoid::new(g.cosets(&h).gset(&g));
    let arrow = groupoid_crossed(&r, &groupoid)?;
    let words = (arrow.rank() as f64).powi(n as i32 + 2);
    if words <= LITERAL_WORD_CAP as f64 {
        let literal = hochschild_homology(&arrow, Coefficients::Ring, n)?;
        if literal != lhs && witness.is_none() {
            let d = lhs.iter().zip(&literal).position(|(x, y)| x != y).unwrap_or(0);
            witness = Some(format!("degree {d}: coend {} vs arrow ring {}", lhs[d], literal[d]));
        }
        ok &= literal == lhs;
        o = o.with("arrow_ring", groups(&literal));
    } else {
        o = o.with("arrow_ring", format!("skipped: rank {} gives {} top-degree words", arrow.rank(), words as u64));
    }
    o.passed = ok;
    Ok(o.witness(witness.unwrap_or_default()))
}

/// Parses and runs a scenario; `Err` is an input error (exit 2).
pub fn run_text(text: &str, overrides: crate::scenario::Overrides, options: RunOptions) -> Result<Report, crate::scenario::InputError> {
    let scenario = crate::scenario::parse(text, overrides)?;
    Ok(run(&scenario, options))
}
