//! Property checks over lattices and arrangements.
//!
//! Each check returns `Ok(None)` when the property holds and `Ok(Some(w))`
//! with a witness, written with element display names, when it fails.

use serde_json::{json, Value};

use crate::arrangement::{Arrangement, ChamberSet};
use crate::congruence::{all_congruences, congruence_lattice, congruence_normality_violation, Congruence};
use crate::doubling::{convex_subsets, double, principal_filter};
use crate::error::Result;
use crate::lattice::{is_lattice_bez, Lattice};
use crate::sb::{search_sb, SbOptions, SbVariant};

pub type Witness = Value;

fn names(l: &Lattice, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| l.name(x).to_string()).collect()
}

fn intervals(l: &Lattice) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..l.len()).flat_map(move |x| l.up_set(x).ones().filter(move |&y| y != x).map(move |y| (x, y)))
}

pub fn crosscut_simplicial(l: &Lattice) -> Option<Witness> {
    l.crosscut_simplicial_violation().map(|v| {
        json!({
            "interval": [l.name(v.bottom), l.name(v.top)],
            "subset": names(l, &v.subset),
        })
    })
}

fn sd_witness(l: &Lattice, v: Option<crate::lattice::SdViolation>) -> Option<Witness> {
    v.map(|v| json!({"x": l.name(v.x), "y": l.name(v.y), "z": l.name(v.z)}))
}

pub fn meet_semidistributive(l: &Lattice) -> Option<Witness> {
    sd_witness(l, l.meet_semidistributive_violation())
}

pub fn join_semidistributive(l: &Lattice) -> Option<Witness> {
    sd_witness(l, l.join_semidistributive_violation())
}

pub fn semidistributive(l: &Lattice) -> Option<Witness> {
    meet_semidistributive(l).or_else(|| join_semidistributive(l))
}

pub fn distributive(l: &Lattice) -> Option<Witness> {
    sd_witness(l, l.distributive_violation())
}

pub fn congruence_normal(l: &Lattice) -> Option<Witness> {
    congruence_normality_violation(l).map(|v| {
        json!({
            "meet_irreducible": l.name(v.meet_irreducible),
            "join_irreducible": l.name(v.join_irreducible),
        })
    })
}

pub fn mobius_range(l: &Lattice) -> Option<Witness> {
    l.mobius_range_violation().map(|(x, y, m)| json!({"interval": [l.name(x), l.name(y)], "mobius": m}))
}

/// `χ̃(Γ(x, y)) = μ(x, y) = χ̃(Δ((x, y)))` and the rational Betti numbers of
/// the two complexes agree, on every interval.
pub fn crosscut_theorem(l: &Lattice) -> Result<Option<Witness>> {
    for (x, y) in intervals(l) {
        let gamma = l.crosscut_complex(x, y)?;
        let delta = l.order_complex_on(&l.open_interval(x, y)?)?;
        let mu = l.mobius(x, y)?;
        let (eg, ed) = (gamma.reduced_euler(), delta.reduced_euler());
        let betti = |c: &crate::SimplicialComplex| {
            let mut b = vec![c.reduced_betti_minus_one()];
            b.extend(c.betti_rational());
            while b.last() == Some(&0) {
                b.pop();
            }
            b
        };
        if eg != mu || ed != mu || betti(&gamma) != betti(&delta) {
            return Ok(Some(json!({
                "interval": [l.name(x), l.name(y)],
                "mobius": mu,
                "crosscut_euler": eg,
                "order_complex_euler": ed,
            })));
        }
    }
    Ok(None)
}

/// Meet-semidistributive lattices are crosscut-simplicial.
pub fn meet_sd_implies_crosscut_simplicial(l: &Lattice) -> Option<Witness> {
    if l.is_meet_semidistributive() {
        crosscut_simplicial(l)
    } else {
        None
    }
}

/// In a join-semidistributive lattice every crosscut complex is a full
/// simplex or pure of dimension `|A| − 2`.
pub fn join_sd_crosscut_shape(l: &Lattice) -> Result<Option<Witness>> {
    if !l.is_join_semidistributive() {
        return Ok(None);
    }
    for (x, y) in intervals(l) {
        let gamma = l.crosscut_complex(x, y)?;
        let k = gamma.vertex_count() as i64;
        if !gamma.is_full_simplex() && !gamma.is_pure(k - 2) {
            return Ok(Some(json!({
                "interval": [l.name(x), l.name(y)],
                "facets": gamma.named_facets(),
            })));
        }
    }
    Ok(None)
}

/// One-sided semidistributive lattices have `μ ∈ {−1, 0, 1}`.
pub fn sd_mobius_range(l: &Lattice) -> Option<Witness> {
    if l.is_meet_semidistributive() || l.is_join_semidistributive() {
        mobius_range(l)
    } else {
        None
    }
}

/// Quotient intervals, for every congruence: interval quotients match
/// restricted quotients, atoms of the quotient match covers of `π↑(0̂)`,
/// every open quotient interval has the crosscut complex of some interval of
/// `L`, and crosscut-simpliciality passes to quotients. Also `Con(L)` is
/// distributive.
pub fn quotient_intervals(l: &Lattice) -> Result<Option<Witness>> {
    let (con, cons) = congruence_lattice(l)?;
    if let Some(v) = con.distributive_violation() {
        return Ok(Some(json!({
            "property": "congruence-lattice-distributive",
            "congruences": [con.name(v.x), con.name(v.y), con.name(v.z)],
        })));
    }
    let simplicial = l.is_crosscut_simplicial();
    let all_gammas: Vec<crate::SimplicialComplex> =
        intervals(l).map(|(x, y)| l.crosscut_complex(x, y)).collect::<Result<_>>()?;
    for theta in &cons {
        let (q, map) = theta.quotient(l)?;
        let display = theta.display(l);
        if simplicial && !q.is_crosscut_simplicial() {
            return Ok(Some(json!({"property": "quotient-crosscut-simplicial", "congruence": display})));
        }
        let up0 = theta.project_up(l, l.bottom());
        let mut images: Vec<usize> = l.upper_covers(up0).iter().map(|&a| map[a]).collect();
        images.sort_unstable();
        images.dedup();
        let mut atoms = q.atoms(q.bottom(), q.top())?;
        atoms.sort_unstable();
        if images.len() != l.upper_covers(up0).len() || (q.len() > 1 && images != atoms) {
            return Ok(Some(json!({"property": "quotient-atoms", "congruence": display})));
        }
        for (bx, by) in intervals(&q) {
            let (rep_x, rep_y) = (theta.blocks()[bx][0], theta.blocks()[by][0]);
            let (lo, hi_down) = (theta.project_up(l, rep_x), theta.project_down(l, rep_y));
            let (sub, restricted) = theta.restrict(l, theta.project_down(l, rep_x), theta.project_up(l, rep_y))?;
            let (sub_q, _) = restricted.quotient(&sub)?;
            let (q_interval, _) = q.interval(bx, by)?;
            if !sub_q.is_isomorphic(&q_interval) {
                return Ok(Some(json!({
                    "property": "interval-quotient",
                    "congruence": display,
                    "interval": [q.name(bx), q.name(by)],
                })));
            }
            let gamma = q.crosscut_complex(bx, by)?;
            let candidate_hi = l.join(lo, hi_down);
            let mut matched = l.lt(lo, candidate_hi) && gamma.isomorphic(&l.crosscut_complex(lo, candidate_hi)?)?;
            for g in &all_gammas {
                if matched {
                    break;
                }
                matched = gamma.isomorphic(g)?;
            }
            if !matched {
                return Ok(Some(json!({
                    "property": "quotient-crosscut-complex",
                    "unverified": true,
                    "congruence": display,
                    "interval": [q.name(bx), q.name(by)],
                })));
            }
        }
    }
    Ok(None)
}

/// For every convex subset: the doubled join table matches the join formula
/// and every interval's crosscut complex matches its classified prediction.
pub fn doubling_classification(l: &Lattice) -> Result<Option<Witness>> {
    for subset in convex_subsets(l, true)? {
        let d = double(l, &subset)?;
        let lat = d.lattice();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                if d.doubled_join(a, b) != lat.join(a, b) {
                    return Ok(Some(json!({
                        "subset": names(l, &subset),
                        "join": [lat.name(a), lat.name(b)],
                    })));
                }
            }
        }
        for (lo, hi) in intervals(lat) {
            let (case, predicted) = d.classify_interval(lo, hi)?;
            if !lat.crosscut_complex(lo, hi)?.isomorphic(&predicted)? {
                return Ok(Some(json!({
                    "subset": names(l, &subset),
                    "interval": [lat.name(lo), lat.name(hi)],
                    "case": case.number(),
                })));
            }
        }
    }
    Ok(None)
}

/// Doubling keeps `|μ| ≤ 1`, and doubling a crosscut-simplicial lattice at
/// an order filter keeps it crosscut-simplicial.
pub fn doubling_preservation(l: &Lattice) -> Result<Option<Witness>> {
    let bounded = l.mobius_range_violation().is_none();
    let simplicial = l.is_crosscut_simplicial();
    for subset in convex_subsets(l, true)? {
        let d = double(l, &subset)?;
        if bounded {
            if let Some(w) = mobius_range(d.lattice()) {
                return Ok(Some(json!({"subset": names(l, &subset), "doubled": w})));
            }
        }
        if simplicial && l.is_order_filter(&subset) {
            if let Some(w) = crosscut_simplicial(d.lattice()) {
                return Ok(Some(json!({"subset": names(l, &subset), "doubled": w})));
            }
        }
    }
    Ok(None)
}

/// Any SB-labelling found with at most `max_labels` labels comes from a
/// crosscut-simplicial lattice.
pub fn sb_implies_crosscut_simplicial(l: &Lattice, max_labels: usize, options: SbOptions) -> Result<Option<Witness>> {
    match search_sb(l, max_labels, SbVariant::Sb, options)? {
        Some(_) => Ok(crosscut_simplicial(l)),
        None => Ok(None),
    }
}

/// No SB-labelling uses at most `max_labels` labels.
pub fn no_sb_labelling(l: &Lattice, max_labels: usize, options: SbOptions) -> Result<Option<Witness>> {
    Ok(search_sb(l, max_labels, SbVariant::Sb, options)?.map(|lab| {
        let labels: Vec<_> = lab.iter().map(|((x, y), s)| json!([[l.name(x), l.name(y)], s])).collect();
        json!({"labels": labels})
    }))
}

fn dedupe(lattices: Vec<Lattice>) -> Vec<Lattice> {
    let mut out: Vec<Lattice> = Vec::new();
    for l in lattices {
        if !out.iter().any(|m| m.len() == l.len() && m.cover_count() == l.cover_count() && m.is_isomorphic(&l)) {
            out.push(l);
        }
    }
    out
}

/// Lattices reachable from the one-element lattice by `depth` doublings,
/// each at a set chosen by `choices`, up to isomorphism.
pub fn doubling_tree(depth: usize, choices: impl Fn(&Lattice) -> Result<Vec<Vec<usize>>>) -> Result<Vec<Lattice>> {
    let mut level = vec![crate::catalog::chain(1)];
    let mut all = level.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for l in &level {
            for subset in choices(l)? {
                next.push(double(l, &subset)?.into_lattice());
            }
        }
        level = dedupe(next);
        all.extend(level.iter().cloned());
    }
    Ok(dedupe(all))
}

/// Iterated doublings at principal order filters yield distributive
/// lattices.
pub fn principal_filter_doublings_distributive(depth: usize) -> Result<Option<Witness>> {
    let tree = doubling_tree(depth, |l| Ok((0..l.len()).map(|x| principal_filter(l, x)).collect()))?;
    Ok(tree.iter().find_map(|l| {
        distributive(l).map(|w| json!({"lattice": crate::json::PosetJson::from_poset(l), "violation": w}))
    }))
}

/// Iterated doublings at arbitrary nonempty convex sets yield
/// congruence-normal lattices.
pub fn convex_doublings_congruence_normal(depth: usize) -> Result<Option<Witness>> {
    let tree = doubling_tree(depth, |l| convex_subsets(l, false))?;
    Ok(tree.iter().find_map(|l| {
        congruence_normal(l).map(|w| json!({"lattice": crate::json::PosetJson::from_poset(l), "violation": w}))
    }))
}

/// Congruence-normal lattices have `|μ| ≤ 1`.
pub fn congruence_normal_mobius_range(l: &Lattice) -> Option<Witness> {
    if congruence_normality_violation(l).is_none() {
        mobius_range(l)
    } else {
        None
    }
}

/// Structural properties of chamber posets at every base chamber, including
/// order-preservation of restriction to each one-hyperplane deletion.
pub fn chamber_poset_axioms(arr: &Arrangement) -> Result<Option<Witness>> {
    let cs = arr.chambers()?;
    if let Some(v) = cs.base_free_axiom_violation()? {
        return Ok(Some(serde_json::to_value(v).expect("plain data serializes")));
    }
    let deletions: Vec<(Vec<usize>, ChamberSet)> = if arr.len() > 1 {
        (0..arr.len())
            .map(|h| {
                let kept: Vec<usize> = (0..arr.len()).filter(|&k| k != h).collect();
                let sub = arr.subarrangement(&kept)?.chambers()?;
                Ok((kept, sub))
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    for base in 0..cs.len() {
        let mut violation = cs.base_axiom_violation(base)?;
        for (kept, sub) in &deletions {
            if violation.is_some() {
                break;
            }
            violation = cs.restriction_violation(sub, kept, base)?;
        }
        if let Some(v) = violation {
            let mut w = serde_json::to_value(v).expect("plain data serializes");
            w["base"] = json!(cs.chamber(base).to_string());
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Verdicts of the chamber poset at one base chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ChamberVerdicts {
    pub lattice: bool,
    pub crosscut_simplicial: bool,
    pub semidistributive: bool,
    pub bineighborly: bool,
}

pub fn chamber_verdicts(cs: &ChamberSet, base: usize) -> Result<ChamberVerdicts> {
    let poset = cs.poset(base)?;
    let lattice = Lattice::new(poset).ok();
    Ok(ChamberVerdicts {
        lattice: lattice.is_some(),
        crosscut_simplicial: lattice.as_ref().is_some_and(Lattice::is_crosscut_simplicial),
        semidistributive: lattice.as_ref().is_some_and(Lattice::is_semidistributive),
        bineighborly: cs.is_bineighborly(base),
    })
}

/// At every base chamber the chamber poset is a crosscut-simplicial lattice
/// iff it is a semidistributive lattice iff the base is bineighborly. The
/// local lattice test agrees with the full one, and arrangements with only
/// simplicial chambers give semidistributive lattices.
pub fn bineighborly_equivalence(arr: &Arrangement) -> Result<Option<Witness>> {
    let cs = arr.chambers()?;
    let all_simplicial = cs.all_simplicial();
    for base in 0..cs.len() {
        let v = chamber_verdicts(&cs, base)?;
        let local = is_lattice_bez(&cs.poset(base)?)?;
        let agree = v.crosscut_simplicial == v.semidistributive && v.semidistributive == v.bineighborly;
        if !agree || local != v.lattice || (all_simplicial && !v.semidistributive) {
            let mut w = serde_json::to_value(v).expect("plain data serializes");
            w["base"] = json!(cs.chamber(base).to_string());
            w["local_lattice_test"] = json!(local);
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Bineighborliness at a single base chamber.
pub fn bineighborly_at(cs: &ChamberSet, base: usize) -> Option<Witness> {
    cs.bineighborly_violation(base).map(|v| serde_json::to_value(cs.name_violation(&v)).expect("plain data serializes"))
}

/// Counts of congruences, handy for reports.
pub fn congruence_count(l: &Lattice) -> usize {
    all_congruences(l).len()
}

/// Identity and full partitions are congruences of every lattice.
pub fn trivial_congruences(l: &Lattice) -> bool {
    Congruence::identity(l.len()).is_congruence(l) && Congruence::full(l.len()).is_congruence(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn figure_one_verdicts() {
        assert_eq!(crosscut_simplicial(&catalog::fig1_left()), None);
        let w = crosscut_simplicial(&catalog::fig1_right()).unwrap();
        assert_eq!(w, json!({"interval": ["0", "1"], "subset": ["a", "b"]}));
    }

    #[test]
    fn theorems_on_small_fixtures() {
        for l in [catalog::n5(), catalog::m3(), catalog::hexagon(), catalog::boolean(2)] {
            assert_eq!(crosscut_theorem(&l).unwrap(), None);
            assert_eq!(meet_sd_implies_crosscut_simplicial(&l), None);
            assert_eq!(join_sd_crosscut_shape(&l).unwrap(), None);
            assert_eq!(sd_mobius_range(&l), None);
            assert_eq!(quotient_intervals(&l).unwrap(), None);
        }
    }

    #[test]
    fn m3_mobius_is_out_of_range() {
        assert_eq!(mobius_range(&catalog::m3()), Some(json!({"interval": ["0", "1"], "mobius": 2})));
    }

    #[test]
    fn doubling_checks_on_n5() {
        assert_eq!(doubling_classification(&catalog::n5()).unwrap(), None);
        assert_eq!(doubling_preservation(&catalog::n5()).unwrap(), None);
    }

    #[test]
    fn small_doubling_trees() {
        assert_eq!(principal_filter_doublings_distributive(3).unwrap(), None);
        assert_eq!(convex_doublings_congruence_normal(2).unwrap(), None);
        let sizes: Vec<usize> = doubling_tree(2, |l| Ok((0..l.len()).map(|x| principal_filter(l, x)).collect()))
            .unwrap()
            .iter()
            .map(|l| l.len())
            .collect();
        assert_eq!(sizes, vec![1, 2, 4, 3]);
    }

    #[test]
    fn arrangement_checks() {
        let lines = catalog::three_lines();
        assert_eq!(chamber_poset_axioms(&lines).unwrap(), None);
        assert_eq!(bineighborly_equivalence(&lines).unwrap(), None);
        let prism = catalog::prism4();
        assert_eq!(bineighborly_equivalence(&prism).unwrap(), None);
        let cs = prism.chambers().unwrap();
        let base = cs.index_of(&"++++".parse().unwrap()).unwrap();
        let v = chamber_verdicts(&cs, base).unwrap();
        assert!(!v.bineighborly && !v.semidistributive);
    }
}
