//! Acceptance criteria, one line of output per criterion.

use std::process::ExitCode;
use std::time::Instant;

use crosscut::arrangement::{braid, random_rank3, Arrangement, Chamber};
use crosscut::catalog::{self, enumerate_lattices, fixture_lattices};
use crosscut::congruence::all_congruences;
use crosscut::doubling::double;
use crosscut::sb::{check_sb, search_sb, EdgeLabelling, SbOptions, SbVariant};
use crosscut::suite::{run_suite, RunOptions};
use crosscut::theorems as th;
use crosscut::Lattice;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn universe(max: usize) -> Vec<(String, Lattice)> {
    let mut out = fixture_lattices();
    for n in 1..=max {
        for (i, l) in enumerate_lattices(n).unwrap().into_iter().enumerate() {
            out.push((format!("lattices:{n}#{i}"), l));
        }
    }
    out
}

fn small_universe(max: usize) -> Vec<(String, Lattice)> {
    let mut out = Vec::new();
    for n in 1..=max {
        for (i, l) in enumerate_lattices(n).unwrap().into_iter().enumerate() {
            out.push((format!("lattices:{n}#{i}"), l));
        }
    }
    out
}

fn intervals(l: &Lattice) -> Vec<(usize, usize)> {
    (0..l.len()).flat_map(|x| l.up_set(x).ones().filter(move |&y| y != x).map(move |y| (x, y))).collect()
}

/// Hall's theorem: μ(x, y) = Σ_k (−1)^k · #{chains x = x₀ < ⋯ < x_k = y}.
fn hall_mobius(l: &Lattice, x: usize, y: usize) -> i64 {
    let members: Vec<usize> = (0..l.len()).filter(|&z| l.leq(x, z) && l.leq(z, y)).collect();
    // chains[k][z] = number of strict chains of length k from x to z
    let mut current: Vec<i64> = vec![0; l.len()];
    current[x] = 1;
    let mut total = if x == y { 1 } else { 0 };
    for k in 1..members.len() {
        let mut next = vec![0i64; l.len()];
        for &a in &members {
            if current[a] == 0 {
                continue;
            }
            for &b in &members {
                if a != b && l.leq(a, b) {
                    next[b] += current[a];
                }
            }
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        total += sign * next[y];
        current = next;
    }
    total
}

fn first_failure(
    subjects: &[(String, Lattice)],
    f: impl Fn(&Lattice) -> crosscut::Result<Option<serde_json::Value>>,
) -> Result<(), String> {
    for (name, l) in subjects {
        match f(l) {
            Ok(None) => {}
            Ok(Some(w)) => return Err(format!("{name}: {w}")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let subjects = universe(6);
    let mut count = 0;
    for (name, l) in &subjects {
        for (x, y) in intervals(l) {
            let hall = hall_mobius(l, x, y);
            let mu = l.mobius(x, y).map_err(|e| e.to_string())?;
            if hall != mu {
                return Err(format!("{name} [{}, {}]: recursion {mu}, chain count {hall}", l.name(x), l.name(y)));
            }
            count += 1;
        }
    }
    first_failure(&subjects, th::crosscut_theorem)?;
    Ok(format!("{} lattices, {count} intervals, chi(crosscut) = mu = chi(order complex)", subjects.len()))
}

fn criterion_2() -> Outcome {
    let subjects = universe(6);
    first_failure(&subjects, |l| Ok(th::meet_sd_implies_crosscut_simplicial(l)))?;
    let msd = subjects.iter().filter(|(_, l)| l.is_meet_semidistributive()).count();
    if !catalog::fig1_left().is_crosscut_simplicial() {
        return Err("fig1_left is not crosscut-simplicial".into());
    }
    let right = catalog::fig1_right();
    let v = right.crosscut_simplicial_violation().ok_or("fig1_right passes")?;
    let names: Vec<&str> = v.subset.iter().map(|&a| right.name(a)).collect();
    if (right.name(v.bottom), right.name(v.top), names.as_slice()) != ("0", "1", &["a", "b"][..]) {
        return Err(format!("unexpected fig1_right witness {v:?}"));
    }
    Ok(format!("{msd} meet-SD lattices all crosscut-simplicial; fig1_right fails on [0,1] with {{a,b}}"))
}

fn criterion_3() -> Outcome {
    let subjects = universe(6);
    first_failure(&subjects, th::join_sd_crosscut_shape)?;
    let right = catalog::fig1_right();
    let gamma = right.crosscut_complex(right.bottom(), right.top()).map_err(|e| e.to_string())?;
    let facets = gamma.named_facets();
    let path = facets == vec![vec!["a", "m"], vec!["m", "b"]];
    if !right.is_join_semidistributive() || !path || !gamma.is_pure(1) || gamma.is_simplex_boundary() {
        return Err(format!("fig1_right [0,1] complex {facets:?}"));
    }
    let jsd = subjects.iter().filter(|(_, l)| l.is_join_semidistributive()).count();
    Ok(format!("{jsd} join-SD lattices pure or simplex; fig1_right [0,1] is the path a-m-b"))
}

fn criterion_4() -> Outcome {
    let subjects = universe(6);
    first_failure(&subjects, |l| Ok(th::sd_mobius_range(l)))?;
    let one_sided =
        subjects.iter().filter(|(_, l)| l.is_meet_semidistributive() || l.is_join_semidistributive()).count();
    Ok(format!("{one_sided} one-sided SD lattices with mu in {{-1,0,1}}"))
}

fn arrangement_set() -> Vec<(String, Arrangement)> {
    let mut out = vec![("three_lines".to_string(), catalog::three_lines()), ("prism4".to_string(), catalog::prism4())];
    let full = braid(4).unwrap();
    for mask in 1usize..1 << full.len() {
        let kept: Vec<usize> = (0..full.len()).filter(|h| mask & (1 << h) != 0).collect();
        out.push((format!("braid 4 {kept:?}"), full.subarrangement(&kept).unwrap()));
    }
    for i in 0..24u64 {
        let planes = 3 + (i as usize) % 4;
        out.push((format!("random #{i}"), random_rank3(7_000 + i, planes).unwrap()));
    }
    out
}

fn criterion_5() -> Outcome {
    let set = arrangement_set();
    let mut bases = 0;
    let mut non_lattice = 0;
    for (name, arr) in &set {
        let cs = arr.chambers().map_err(|e| format!("{name}: {e}"))?;
        for base in 0..cs.len() {
            let v = th::chamber_verdicts(&cs, base).map_err(|e| e.to_string())?;
            if v.crosscut_simplicial != v.semidistributive || v.semidistributive != v.bineighborly {
                return Err(format!("{name} base {}: {v:?}", cs.chamber(base)));
            }
            if !v.lattice {
                non_lattice += 1;
            }
            bases += 1;
        }
        if let Some(w) = th::bineighborly_equivalence(arr).map_err(|e| e.to_string())? {
            return Err(format!("{name}: {w}"));
        }
    }
    let prism = catalog::prism4();
    let cs = prism.chambers().map_err(|e| e.to_string())?;
    let base = cs.index_of(&"++++".parse::<Chamber>().unwrap()).map_err(|e| e.to_string())?;
    let violations: Vec<_> = cs.bineighborly_violations(base).iter().map(|v| cs.name_violation(v)).collect();
    if !violations.iter().any(|v| v.chamber == "++++" && v.hyperplanes == ["x+y+z", "x+y-z"]) {
        return Err(format!("prism witness missing from {violations:?}"));
    }
    Ok(format!(
        "{} arrangements, {bases} base chambers ({non_lattice} non-lattice) agree; prism ++++ fails at (x+y+z, x+y-z)",
        set.len()
    ))
}

fn criterion_6() -> Outcome {
    let set = arrangement_set();
    for (name, arr) in &set {
        if let Some(w) = th::chamber_poset_axioms(arr).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: {w}"));
        }
    }
    let b4 = braid(4).unwrap();
    let cs = b4.chambers().map_err(|e| e.to_string())?;
    let fundamental = cs.index_of(&Chamber::new(vec![false; 6])).map_err(|e| e.to_string())?;
    let poset = cs.poset(fundamental).map_err(|e| e.to_string())?;
    if poset.len() != 24 || !poset.is_isomorphic(&catalog::weak_order(4)) {
        return Err("braid(4) chamber poset differs from weak_order(4)".into());
    }
    Ok(format!("{} arrangements satisfy all five properties; braid(4) fundamental poset is weak_order(4)", set.len()))
}

fn criterion_7() -> Outcome {
    let mut subjects = small_universe(6);
    subjects.extend(fixture_lattices().into_iter().filter(|(_, l)| l.len() <= 14));
    first_failure(&subjects, th::quotient_intervals)?;
    let n5 = all_congruences(&catalog::n5()).len();
    let b2 = all_congruences(&catalog::boolean(2)).len();
    if (n5, b2) != (5, 4) {
        return Err(format!("|Con(N5)| = {n5}, |Con(B2)| = {b2}"));
    }
    let total: usize = subjects.iter().map(|(_, l)| all_congruences(l).len()).sum();
    Ok(format!("{} lattices, {total} congruences; |Con(N5)| = 5, |Con(B2)| = 4", subjects.len()))
}

fn criterion_8() -> Outcome {
    let subjects = small_universe(5);
    first_failure(&subjects, th::doubling_classification)?;
    Ok(format!("{} lattices: every convex doubling matches the four-case classifier and join formula", subjects.len()))
}

fn doubling_sequence() -> Result<Lattice, String> {
    let err = |e: crosscut::Error| e.to_string();
    let two = double(&catalog::chain(1), &[0]).map_err(err)?.into_lattice();
    let b2 = double(&two, &[0, 1]).map_err(err)?.into_lattice();
    let (a, b) = (1, 2);
    if !b2.is_isomorphic(&catalog::boolean(2)) || b2.upper_covers(b2.bottom()) != [a, b] {
        return Err("second doubling is not B2".into());
    }
    let hex = double(&b2, &[a, b]).map_err(err)?.into_lattice();
    if !hex.is_isomorphic(&catalog::hexagon()) {
        return Err("third doubling is not the hexagon".into());
    }
    let h = catalog::hexagon();
    let all: Vec<usize> = (0..h.len()).collect();
    let twice = double(&h, &all).map_err(err)?.into_lattice();
    let chain: Vec<usize> = ["a.0", "A.0", "1.0"].iter().map(|n| twice.index_of(n).unwrap()).collect();
    Ok(double(&twice, &chain).map_err(err)?.into_lattice())
}

fn criterion_9() -> Outcome {
    let mut subjects = small_universe(6);
    subjects.extend(fixture_lattices().into_iter().filter(|(_, l)| l.len() <= 8));
    first_failure(&subjects, th::doubling_preservation)?;
    if let Some(w) = th::principal_filter_doublings_distributive(4).map_err(|e| e.to_string())? {
        return Err(format!("principal filter chain: {w}"));
    }
    if let Some(w) = th::convex_doublings_congruence_normal(3).map_err(|e| e.to_string())? {
        return Err(format!("convex chain: {w}"));
    }
    let seq = doubling_sequence()?;
    if seq.len() != 15 || seq.cover_count() != 23 || th::congruence_normal(&seq).is_some() {
        return Err(format!("doubling sequence: {} elements, {} covers", seq.len(), seq.cover_count()));
    }
    Ok(format!(
        "{} lattices preserve |mu|<=1 and filter doublings; doubling chains distributive / congruence-normal; 15-element chain result congruence-normal",
        subjects.len()
    ))
}

fn criterion_10() -> Outcome {
    let b2 = catalog::boolean(2);
    let labelling =
        EdgeLabelling::from_named(&b2, &[(("0", "a"), "x"), (("0", "b"), "y"), (("a", "ab"), "y"), (("b", "ab"), "x")])
            .map_err(|e| e.to_string())?;
    if let Some(v) = check_sb(&b2, &labelling, SbVariant::Sb).map_err(|e| e.to_string())? {
        return Err(format!("B2 labelling rejected: {v:?}"));
    }
    let options = SbOptions::default();
    for k in 1..=3 {
        if search_sb(&catalog::m3(), k, SbVariant::Sb, options).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("M3 has an SB-labelling with {k} labels"));
        }
    }
    let mut subjects = small_universe(6);
    subjects.extend(fixture_lattices().into_iter().filter(|(_, l)| l.len() <= 8));
    let mut labelled = 0;
    for (name, l) in &subjects {
        if search_sb(l, 4, SbVariant::Sb, options).map_err(|e| format!("{name}: {e}"))?.is_some() {
            labelled += 1;
            if !l.is_crosscut_simplicial() {
                return Err(format!("{name} is SB-labelled but not crosscut-simplicial"));
            }
        }
    }
    Ok(format!(
        "B2 labelling valid; M3 exhausted for k<=3; {labelled}/{} labelled lattices crosscut-simplicial",
        subjects.len()
    ))
}

fn criterion_11() -> Outcome {
    let options = RunOptions { seed: 7, timings: false };
    let first = run_suite("all", &options).map_err(|e| e.to_string())?;
    let second = run_suite("all", &options).map_err(|e| e.to_string())?;
    let (a, b) = (serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    if a != b {
        return Err("reports differ".into());
    }
    if !first.all_match() {
        let bad: Vec<String> = first.mismatches().map(|r| format!("{} {}", r.subject, r.property)).collect();
        return Err(format!("suite mismatches: {bad:?}"));
    }
    Ok(format!("verify all --seed 7: {} checks, {} bytes, identical twice", first.summary.total, a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("crosscut theorem consistency", criterion_1),
        ("meet-SD implies crosscut-simplicial", criterion_2),
        ("join-SD crosscut complexes pure or simplex", criterion_3),
        ("one-sided SD Mobius range", criterion_4),
        ("bineighborly equivalence", criterion_5),
        ("chamber poset properties", criterion_6),
        ("quotients and congruence lattices", criterion_7),
        ("doubling interval classification", criterion_8),
        ("doubling preservation and normality", criterion_9),
        ("SB-labellings", criterion_10),
        ("determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {title}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {title}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
