//! Named verification suites and their reports.
//!
//! A suite is a manifest of checks; each check applies one property to every
//! subject a generator produces and states the expected verdict.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{braid, random_rank3, Arrangement, Chamber};
use crate::catalog::{self, CatalogObject};
use crate::congruence::all_congruences;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::sb::SbOptions;
use crate::theorems as th;

pub const SUITES: &[&str] = &["crosscut", "semidistributive", "arrangements", "congruences", "doubling", "sb", "all"];

/// Number of random rank-3 arrangements in the arrangement suite.
pub const RANDOM_ARRANGEMENTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub subject: String,
    pub property: String,
    pub expected: Verdict,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub matched: usize,
    pub mismatched: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub summary: Summary,
    pub reports: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_match(&self) -> bool {
        self.summary.mismatched == 0
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &PropertyReport> {
        self.reports.iter().filter(|r| r.verdict != r.expected)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub timings: bool,
}

/// Where the subjects of a check come from.
#[derive(Debug, Clone)]
pub enum Subjects {
    /// Catalog lattices from [`catalog::fixture_lattices`] with at most this
    /// many elements.
    Fixtures {
        max_len: usize,
    },
    /// Every lattice with `1..=max` elements, up to isomorphism.
    Enumerated {
        max: usize,
    },
    Catalog {
        name: &'static str,
        param: Option<usize>,
    },
    /// Every nonempty subarrangement of `braid(4)`.
    BraidSubarrangements,
    /// Seeded random rank-3 arrangements with 3 to 6 planes.
    RandomArrangements {
        count: usize,
    },
    /// Properties that generate their own objects.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    CrosscutSimplicial,
    MeetSemidistributive,
    JoinSemidistributive,
    Semidistributive,
    CongruenceNormal,
    CrosscutTheorem,
    MeetSdImpliesCrosscutSimplicial,
    JoinSdCrosscutShape,
    SdMobiusRange,
    QuotientIntervals,
    CongruenceNormalMobiusRange,
    CongruenceCount(usize),
    DoublingClassification,
    DoublingPreservation,
    PrincipalFilterDoublings(usize),
    ConvexDoublings(usize),
    SbImpliesCrosscutSimplicial(usize),
    NoSbLabelling(usize),
    ChamberPosetAxioms,
    BineighborlyEquivalence,
    Bineighborly(&'static str),
    FundamentalChamberWeakOrder(usize),
}

impl Property {
    pub fn name(&self) -> String {
        match self {
            Property::CrosscutSimplicial => "crosscut-simplicial".into(),
            Property::MeetSemidistributive => "meet-sd".into(),
            Property::JoinSemidistributive => "join-sd".into(),
            Property::Semidistributive => "sd".into(),
            Property::CongruenceNormal => "congruence-normal".into(),
            Property::CrosscutTheorem => "crosscut-theorem".into(),
            Property::MeetSdImpliesCrosscutSimplicial => "meet-sd-implies-crosscut-simplicial".into(),
            Property::JoinSdCrosscutShape => "join-sd-crosscut-shape".into(),
            Property::SdMobiusRange => "sd-mobius-range".into(),
            Property::QuotientIntervals => "quotient-intervals".into(),
            Property::CongruenceNormalMobiusRange => "congruence-normal-mobius-range".into(),
            Property::CongruenceCount(k) => format!("congruence-count({k})"),
            Property::DoublingClassification => "doubling-classification".into(),
            Property::DoublingPreservation => "doubling-preservation".into(),
            Property::PrincipalFilterDoublings(d) => format!("principal-filter-doublings-distributive(depth={d})"),
            Property::ConvexDoublings(d) => format!("convex-doublings-congruence-normal(depth={d})"),
            Property::SbImpliesCrosscutSimplicial(k) => format!("sb-implies-crosscut-simplicial(labels<={k})"),
            Property::NoSbLabelling(k) => format!("no-sb-labelling(labels<={k})"),
            Property::ChamberPosetAxioms => "chamber-poset-axioms".into(),
            Property::BineighborlyEquivalence => "bineighborly-equivalence".into(),
            Property::Bineighborly(base) => format!("bineighborly(base={base})"),
            Property::FundamentalChamberWeakOrder(n) => format!("fundamental-chamber-weak-order({n})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub subjects: Subjects,
    pub property: Property,
    pub expect: Verdict,
}

fn check(subjects: Subjects, property: Property, expect: Verdict) -> Check {
    Check { subjects, property, expect }
}

fn lattice_universe(property: Property) -> Vec<Check> {
    vec![
        check(Subjects::Fixtures { max_len: usize::MAX }, property.clone(), Verdict::Holds),
        check(Subjects::Enumerated { max: 6 }, property, Verdict::Holds),
    ]
}

/// The checks making up a named suite.
pub fn manifest(suite: &str) -> Result<Vec<Check>> {
    use Property as P;
    use Subjects as S;
    use Verdict::{Fails, Holds};
    let lat = |name| S::Catalog { name, param: None };
    let fam = |name, n| S::Catalog { name, param: Some(n) };
    Ok(match suite {
        "crosscut" => lattice_universe(P::CrosscutTheorem),
        "semidistributive" => {
            let mut checks = Vec::new();
            for p in [P::MeetSdImpliesCrosscutSimplicial, P::JoinSdCrosscutShape, P::SdMobiusRange] {
                checks.extend(lattice_universe(p));
            }
            checks.extend([
                check(lat("fig1_left"), P::CrosscutSimplicial, Holds),
                check(lat("fig1_right"), P::CrosscutSimplicial, Fails),
                check(lat("fig1_right"), P::MeetSemidistributive, Fails),
                check(lat("fig1_right"), P::JoinSemidistributive, Holds),
                check(lat("M3"), P::Semidistributive, Fails),
                check(lat("N5"), P::Semidistributive, Holds),
                check(fam("weak_order", 4), P::Semidistributive, Holds),
                check(fam("weak_order", 4), P::CrosscutSimplicial, Holds),
                check(fam("tamari", 5), P::Semidistributive, Holds),
                check(fam("tamari", 5), P::CrosscutSimplicial, Holds),
            ]);
            checks
        }
        "arrangements" => {
            let mut checks = Vec::new();
            let sets = [
                lat("three_lines"),
                lat("prism4"),
                fam("braid", 3),
                S::BraidSubarrangements,
                S::RandomArrangements { count: RANDOM_ARRANGEMENTS },
            ];
            for p in [P::ChamberPosetAxioms, P::BineighborlyEquivalence] {
                checks.extend(sets.iter().map(|s| check(s.clone(), p.clone(), Holds)));
            }
            checks.extend([
                check(lat("prism4"), P::Bineighborly("++++"), Fails),
                check(fam("braid", 4), P::Bineighborly("------"), Holds),
                check(fam("braid", 3), P::FundamentalChamberWeakOrder(3), Holds),
                check(fam("braid", 4), P::FundamentalChamberWeakOrder(4), Holds),
            ]);
            checks
        }
        "congruences" => {
            let mut checks = lattice_universe(P::QuotientIntervals);
            checks.extend(lattice_universe(P::CongruenceNormalMobiusRange));
            checks.extend([
                check(lat("N5"), P::CongruenceCount(5), Holds),
                check(fam("boolean", 2), P::CongruenceCount(4), Holds),
                check(lat("M3"), P::CongruenceNormal, Fails),
                check(lat("N5"), P::CongruenceNormal, Holds),
            ]);
            for n in 1..=4 {
                checks.push(check(fam("weak_order", n), P::CongruenceNormal, Holds));
                checks.push(check(fam("tamari", n), P::CongruenceNormal, Holds));
            }
            checks
        }
        "doubling" => vec![
            check(S::Enumerated { max: 5 }, P::DoublingClassification, Holds),
            check(S::Fixtures { max_len: 7 }, P::DoublingPreservation, Holds),
            check(S::Enumerated { max: 6 }, P::DoublingPreservation, Holds),
            check(S::None, P::PrincipalFilterDoublings(4), Holds),
            check(S::None, P::ConvexDoublings(3), Holds),
        ],
        "sb" => vec![
            check(S::Fixtures { max_len: 7 }, P::SbImpliesCrosscutSimplicial(4), Holds),
            check(S::Enumerated { max: 6 }, P::SbImpliesCrosscutSimplicial(4), Holds),
            check(lat("M3"), P::NoSbLabelling(3), Holds),
            check(fam("boolean", 2), P::NoSbLabelling(2), Fails),
            check(lat("N5"), P::NoSbLabelling(2), Fails),
        ],
        "all" => {
            let mut checks = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "all") {
                checks.extend(manifest(s)?);
            }
            checks
        }
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

enum Object {
    Lattice(Lattice),
    Arrangement(Arrangement),
    None,
}

fn expand(subjects: &Subjects, seed: u64) -> Result<Vec<(String, Arc<Object>)>> {
    let wrap = |name: String, obj: Object| (name, Arc::new(obj));
    Ok(match subjects {
        Subjects::Fixtures { max_len } => catalog::fixture_lattices()
            .into_iter()
            .filter(|(_, l)| l.len() <= *max_len)
            .map(|(n, l)| wrap(format!("catalog:{n}"), Object::Lattice(l)))
            .collect(),
        Subjects::Enumerated { max } => {
            let mut out = Vec::new();
            for n in 1..=*max {
                for (i, l) in catalog::enumerate_lattices(n)?.into_iter().enumerate() {
                    out.push(wrap(format!("lattices:{n}#{i}"), Object::Lattice(l)));
                }
            }
            out
        }
        Subjects::Catalog { name, param } => {
            let label = match param {
                Some(p) => format!("catalog:{name} {p}"),
                None => format!("catalog:{name}"),
            };
            let obj = match catalog::named(name, *param)? {
                CatalogObject::Lattice(l) => Object::Lattice(l),
                CatalogObject::Arrangement(a) => Object::Arrangement(a),
            };
            vec![wrap(label, obj)]
        }
        Subjects::BraidSubarrangements => {
            let full = braid(4)?;
            (1..1usize << full.len())
                .map(|mask| {
                    let kept: Vec<usize> = (0..full.len()).filter(|h| mask & (1 << h) != 0).collect();
                    let sub = full.subarrangement(&kept)?;
                    Ok(wrap(format!("braid 4 [{}]", sub.labels().join(",")), Object::Arrangement(sub)))
                })
                .collect::<Result<_>>()?
        }
        Subjects::RandomArrangements { count } => (0..*count)
            .map(|i| {
                let arr = random_rank3(seed.wrapping_mul(1_000_003).wrapping_add(i as u64), 3 + i % 4)?;
                Ok(wrap(format!("random seed={seed} #{i} [{}]", arr.labels().join(",")), Object::Arrangement(arr)))
            })
            .collect::<Result<_>>()?,
        Subjects::None => vec![wrap("generated".into(), Object::None)],
    })
}

fn evaluate(object: &Object, property: &Property) -> Result<Option<Value>> {
    let sb_options = SbOptions::default();
    let opt = |o: Option<Value>| Ok(o);
    match (object, property) {
        (Object::Lattice(l), p) => match p {
            Property::CrosscutSimplicial => opt(th::crosscut_simplicial(l)),
            Property::MeetSemidistributive => opt(th::meet_semidistributive(l)),
            Property::JoinSemidistributive => opt(th::join_semidistributive(l)),
            Property::Semidistributive => opt(th::semidistributive(l)),
            Property::CongruenceNormal => opt(th::congruence_normal(l)),
            Property::CrosscutTheorem => th::crosscut_theorem(l),
            Property::MeetSdImpliesCrosscutSimplicial => opt(th::meet_sd_implies_crosscut_simplicial(l)),
            Property::JoinSdCrosscutShape => th::join_sd_crosscut_shape(l),
            Property::SdMobiusRange => opt(th::sd_mobius_range(l)),
            Property::QuotientIntervals => th::quotient_intervals(l),
            Property::CongruenceNormalMobiusRange => opt(th::congruence_normal_mobius_range(l)),
            Property::CongruenceCount(k) => {
                let found = all_congruences(l).len();
                opt((found != *k).then(|| json!({"congruences": found})))
            }
            Property::DoublingClassification => th::doubling_classification(l),
            Property::DoublingPreservation => th::doubling_preservation(l),
            Property::SbImpliesCrosscutSimplicial(k) => th::sb_implies_crosscut_simplicial(l, *k, sb_options),
            Property::NoSbLabelling(k) => th::no_sb_labelling(l, *k, sb_options),
            _ => Err(Error::Parse(format!("{} does not apply to a lattice", p.name()))),
        },
        (Object::Arrangement(a), p) => match p {
            Property::ChamberPosetAxioms => th::chamber_poset_axioms(a),
            Property::BineighborlyEquivalence => th::bineighborly_equivalence(a),
            Property::Bineighborly(base) => {
                let cs = a.chambers()?;
                let base = cs.index_of(&base.parse::<Chamber>()?)?;
                opt(th::bineighborly_at(&cs, base))
            }
            Property::FundamentalChamberWeakOrder(n) => {
                let cs = a.chambers()?;
                let base = cs.index_of(&Chamber::new(vec![false; a.len()]))?;
                let poset = cs.poset(base)?;
                let weak = catalog::weak_order(*n);
                opt((!poset.is_isomorphic(&weak)).then(|| json!({"chambers": poset.len(), "weak_order": weak.len()})))
            }
            _ => Err(Error::Parse(format!("{} does not apply to an arrangement", p.name()))),
        },
        (Object::None, Property::PrincipalFilterDoublings(d)) => th::principal_filter_doublings_distributive(*d),
        (Object::None, Property::ConvexDoublings(d)) => th::convex_doublings_congruence_normal(*d),
        (Object::None, p) => Err(Error::Parse(format!("{} needs a subject", p.name()))),
    }
}

/// Runs a suite; jobs are evaluated in parallel on the current rayon pool
/// and reported in manifest order.
pub fn run_suite(suite: &str, options: &RunOptions) -> Result<SuiteReport> {
    let mut jobs = Vec::new();
    for c in manifest(suite)? {
        for (name, object) in expand(&c.subjects, options.seed)? {
            jobs.push((name, object, c.property.clone(), c.expect));
        }
    }
    let reports: Vec<PropertyReport> = jobs
        .par_iter()
        .map(|(subject, object, property, expected)| {
            let start = Instant::now();
            let outcome = evaluate(object, property);
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            let (verdict, witness) = match outcome {
                Ok(None) => (Verdict::Holds, None),
                Ok(Some(w)) if w.get("unverified") == Some(&Value::Bool(true)) => (Verdict::Unverified, Some(w)),
                Ok(Some(w)) => (Verdict::Fails, Some(w)),
                Err(e) => (Verdict::Unverified, Some(json!({"error": e.to_string()}))),
            };
            PropertyReport {
                subject: subject.clone(),
                property: property.name(),
                expected: *expected,
                verdict,
                witness,
                timing_ms: options.timings.then_some(elapsed),
            }
        })
        .collect();
    let matched = reports.iter().filter(|r| r.verdict == r.expected).count();
    Ok(SuiteReport {
        suite: suite.to_string(),
        seed: options.seed,
        summary: Summary { total: reports.len(), matched, mismatched: reports.len() - matched },
        reports,
    })
}
