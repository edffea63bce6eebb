//! SB-labellings of lattices: verification of (SB1)/(SB2) and the relaxed
//! (SB2′), plus an exhaustive backtracking search.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SbVariant {
    /// (SB1) and (SB2).
    Sb,
    /// (SB1) and (SB2′).
    SbPrime,
}

/// Labels on the cover relations of a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeLabelling {
    labels: BTreeMap<(usize, usize), String>,
}

impl EdgeLabelling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lower: usize, upper: usize, label: impl Into<String>) {
        self.labels.insert((lower, upper), label.into());
    }

    /// Builds a labelling from element names.
    pub fn from_named<S: AsRef<str>>(lattice: &Lattice, entries: &[((S, S), S)]) -> Result<Self> {
        let mut out = Self::new();
        for ((lo, hi), label) in entries {
            let (lo, hi) = (lattice.index_of(lo.as_ref())?, lattice.index_of(hi.as_ref())?);
            if !lattice.covers(lo, hi) {
                return Err(Error::Parse(format!("({}, {}) is not a cover", lattice.name(lo), lattice.name(hi))));
            }
            out.insert(lo, hi, label.as_ref());
        }
        Ok(out)
    }

    pub fn get(&self, lower: usize, upper: usize) -> Option<&str> {
        self.labels.get(&(lower, upper)).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &str)> {
        self.labels.iter().map(|(&k, v)| (k, v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Why a labelling fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum SbViolation {
    /// Two covers `x ⋖ y`, `x ⋖ z` carry the same label.
    Sb1 { x: usize, y: usize, z: usize },
    /// A saturated chain from `x` to the join of `subset` has the wrong labels.
    Sb2 { x: usize, subset: Vec<usize>, chain: Vec<usize> },
}

#[derive(Debug, Clone, Copy)]
pub struct SbOptions {
    /// Above this many saturated chains, the per-chain inspection is replaced
    /// by a reachability argument on the interval's Hasse diagram.
    pub chain_threshold: u128,
    /// Backtracking node limit for [`search_sb`].
    pub node_limit: u64,
}

impl Default for SbOptions {
    fn default() -> Self {
        SbOptions { chain_threshold: 100_000, node_limit: 10_000_000 }
    }
}

/// Checks a labelling with default options; `Ok(None)` means it is valid.
pub fn check_sb(lattice: &Lattice, labelling: &EdgeLabelling, variant: SbVariant) -> Result<Option<SbViolation>> {
    check_sb_with(lattice, labelling, variant, SbOptions::default())
}

pub fn check_sb_with(
    lattice: &Lattice,
    labelling: &EdgeLabelling,
    variant: SbVariant,
    options: SbOptions,
) -> Result<Option<SbViolation>> {
    let mut interned: HashMap<&str, u32> = HashMap::new();
    let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
    for (x, y) in lattice.cover_pairs() {
        let label = labelling
            .get(x, y)
            .ok_or_else(|| Error::IncompleteLabelling(lattice.name(x).into(), lattice.name(y).into()))?;
        let next = interned.len() as u32;
        let id = *interned.entry(label).or_insert(next);
        ids.insert((x, y), id);
    }
    let label = |u: usize, v: usize| ids[&(u, v)];
    for x in 0..lattice.len() {
        if let Some(v) = check_at(lattice, x, &label, variant, options.chain_threshold) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// (SB1) and the chain condition for every subset of covers of `x`. Only
/// labels of covers inside `[x, 1̂]` are read.
fn check_at<F>(lattice: &Lattice, x: usize, label: &F, variant: SbVariant, threshold: u128) -> Option<SbViolation>
where
    F: Fn(usize, usize) -> u32,
{
    let covers = lattice.upper_covers(x);
    for (i, &y) in covers.iter().enumerate() {
        for &z in &covers[i + 1..] {
            if label(x, y) == label(x, z) {
                return Some(SbViolation::Sb1 { x, y, z });
            }
        }
    }
    let k = covers.len();
    for mask in 1usize..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| covers[i]).collect();
        let top = lattice.join_all(subset.iter().copied().chain([x]));
        let allowed: Vec<u32> = subset.iter().map(|&b| label(x, b)).collect();
        let forbidden: Vec<u32> = (0..k).filter(|i| mask & (1 << i) == 0).map(|i| label(x, covers[i])).collect();
        let edge_ok = |l: u32| match variant {
            SbVariant::Sb => allowed.contains(&l),
            SbVariant::SbPrime => !forbidden.contains(&l),
        };
        let chains = lattice.count_saturated_chains(x, top).expect("x <= join");
        let bad_chain = if chains <= threshold {
            lattice.saturated_chains(x, top).expect("x <= join").find_map(|chain| {
                let labels: Vec<u32> = chain.windows(2).map(|w| label(w[0], w[1])).collect();
                let fine = labels.iter().all(|&l| edge_ok(l)) && allowed.iter().all(|a| labels.contains(a));
                (!fine).then(|| chain.into_inner())
            })
        } else {
            chain_by_reachability(lattice, x, top, label, &allowed, &edge_ok)
        };
        if let Some(chain) = bad_chain {
            return Some(SbViolation::Sb2 { x, subset, chain });
        }
    }
    None
}

/// Finds a saturated chain `x → top` that uses a disallowed label or misses
/// a required one, without listing all chains. Every cover inside `[x, top]`
/// lies on some saturated chain, and a required label `l` is missed by some
/// chain iff `top` is reachable from `x` avoiding `l`-edges.
fn chain_by_reachability<F, G>(
    lattice: &Lattice,
    x: usize,
    top: usize,
    label: &F,
    required: &[u32],
    edge_ok: &G,
) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> u32,
    G: Fn(u32) -> bool,
{
    let inside = |z: usize| lattice.leq(x, z) && lattice.leq(z, top);
    for u in lattice.interval_elements(x, top).expect("x <= top") {
        for &v in lattice.upper_covers(u) {
            if inside(v) && !edge_ok(label(u, v)) {
                let mut chain = hasse_path(lattice, x, u, &inside, &|_, _| true)?;
                let rest = hasse_path(lattice, v, top, &inside, &|_, _| true)?;
                chain.extend(rest);
                return Some(chain);
            }
        }
    }
    for &l in required {
        if let Some(chain) = hasse_path(lattice, x, top, &inside, &|a, b| label(a, b) != l) {
            return Some(chain);
        }
    }
    None
}

/// Breadth-first path along upper covers from `from` to `to`.
fn hasse_path<I, E>(lattice: &Lattice, from: usize, to: usize, inside: &I, edge: &E) -> Option<Vec<usize>>
where
    I: Fn(usize) -> bool,
    E: Fn(usize, usize) -> bool,
{
    let mut parent = vec![usize::MAX; lattice.len()];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &v in lattice.upper_covers(u) {
            if parent[v] == usize::MAX && inside(v) && edge(u, v) {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Backtracking search for a labelling with at most `max_labels` labels.
///
/// Labels are `"0"`, `"1"`, ... in order of first use. Covers are assigned
/// element by element from the top of a linear extension downwards, so once
/// all upper covers of `x` are labelled every cover in `[x, 1̂]` is, and the
/// conditions at `x` can be checked immediately.
pub fn search_sb(
    lattice: &Lattice,
    max_labels: usize,
    variant: SbVariant,
    options: SbOptions,
) -> Result<Option<EdgeLabelling>> {
    let pairs = lattice.cover_pairs();
    let cover_ix: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut slots = Vec::new();
    let mut finishes = Vec::new();
    for x in lattice.linear_extension().into_iter().rev() {
        let covers = lattice.upper_covers(x);
        for (i, &y) in covers.iter().enumerate() {
            slots.push(cover_ix[&(x, y)]);
            finishes.push((i + 1 == covers.len()).then_some(x));
        }
    }
    let mut search = Search {
        lattice,
        pairs: &pairs,
        cover_ix: &cover_ix,
        slots: &slots,
        finishes: &finishes,
        assigned: vec![u32::MAX; pairs.len()],
        max_labels: max_labels as u32,
        variant,
        options,
        nodes: 0,
    };
    if search.extend(0, 0)? {
        let mut out = EdgeLabelling::new();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            out.insert(x, y, search.assigned[i].to_string());
        }
        Ok(Some(out))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    lattice: &'a Lattice,
    pairs: &'a [(usize, usize)],
    cover_ix: &'a HashMap<(usize, usize), usize>,
    slots: &'a [usize],
    finishes: &'a [Option<usize>],
    assigned: Vec<u32>,
    max_labels: u32,
    variant: SbVariant,
    options: SbOptions,
    nodes: u64,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize, used: u32) -> Result<bool> {
        if pos == self.slots.len() {
            return Ok(true);
        }
        let slot = self.slots[pos];
        let (x, _) = self.pairs[slot];
        let siblings: Vec<u32> = self
            .lattice
            .upper_covers(x)
            .iter()
            .map(|&y| self.assigned[self.cover_ix[&(x, y)]])
            .filter(|&l| l != u32::MAX)
            .collect();
        let ceiling = (used + 1).min(self.max_labels);
        for l in 0..ceiling {
            if siblings.contains(&l) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.options.node_limit {
                return Err(Error::SearchBudgetExceeded(self.options.node_limit));
            }
            self.assigned[slot] = l;
            let ok = match self.finishes[pos] {
                Some(done) => {
                    let assigned = &self.assigned;
                    let ix = self.cover_ix;
                    let label = |u: usize, v: usize| assigned[ix[&(u, v)]];
                    check_at(self.lattice, done, &label, self.variant, 0).is_none()
                }
                None => true,
            };
            if ok && self.extend(pos + 1, used.max(l + 1))? {
                return Ok(true);
            }
            self.assigned[slot] = u32::MAX;
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> Lattice {
        Lattice::from_covers(["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
    }

    fn m3() -> Lattice {
        Lattice::from_covers(
            ["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    #[test]
    fn single_cover_is_sb() {
        let chain = Lattice::from_covers(["0", "1"], &[("0", "1")]).unwrap();
        let lab = EdgeLabelling::from_named(&chain, &[(("0", "1"), "x")]).unwrap();
        assert_eq!(check_sb(&chain, &lab, SbVariant::Sb).unwrap(), None);
    }

    #[test]
    fn boolean_square_labelling() {
        let l = b2();
        let lab = EdgeLabelling::from_named(
            &l,
            &[(("0", "a"), "1"), (("0", "b"), "2"), (("a", "1"), "2"), (("b", "1"), "1")],
        )
        .unwrap();
        assert_eq!(check_sb(&l, &lab, SbVariant::Sb).unwrap(), None);
        assert_eq!(check_sb(&l, &lab, SbVariant::SbPrime).unwrap(), None);
        let bad = EdgeLabelling::from_named(
            &l,
            &[(("0", "a"), "1"), (("0", "b"), "1"), (("a", "1"), "2"), (("b", "1"), "1")],
        )
        .unwrap();
        assert_eq!(check_sb(&l, &bad, SbVariant::Sb).unwrap(), Some(SbViolation::Sb1 { x: 0, y: 1, z: 2 }));
        let wrong = EdgeLabelling::from_named(
            &l,
            &[(("0", "a"), "1"), (("0", "b"), "2"), (("a", "1"), "3"), (("b", "1"), "1")],
        )
        .unwrap();
        assert!(matches!(check_sb(&l, &wrong, SbVariant::Sb).unwrap(), Some(SbViolation::Sb2 { .. })));
    }

    #[test]
    fn missing_label_is_an_error() {
        let l = b2();
        let lab = EdgeLabelling::from_named(&l, &[(("0", "a"), "1")]).unwrap();
        assert!(matches!(check_sb(&l, &lab, SbVariant::Sb), Err(Error::IncompleteLabelling(_, _))));
    }

    #[test]
    fn both_chain_strategies_agree_on_violations() {
        let l = b2();
        let wrong = EdgeLabelling::from_named(
            &l,
            &[(("0", "a"), "1"), (("0", "b"), "2"), (("a", "1"), "3"), (("b", "1"), "1")],
        )
        .unwrap();
        let by_chain = check_sb_with(&l, &wrong, SbVariant::Sb, SbOptions::default()).unwrap();
        let by_reach =
            check_sb_with(&l, &wrong, SbVariant::Sb, SbOptions { chain_threshold: 0, ..SbOptions::default() }).unwrap();
        assert!(by_chain.is_some() && by_reach.is_some());
    }

    #[test]
    fn m3_has_no_sb_labelling() {
        for k in 1..=3 {
            assert_eq!(search_sb(&m3(), k, SbVariant::Sb, SbOptions::default()).unwrap(), None);
        }
    }

    #[test]
    fn search_finds_b2_labelling() {
        let l = b2();
        let found = search_sb(&l, 2, SbVariant::Sb, SbOptions::default()).unwrap().unwrap();
        assert_eq!(check_sb(&l, &found, SbVariant::Sb).unwrap(), None);
        assert_eq!(search_sb(&l, 1, SbVariant::Sb, SbOptions::default()).unwrap(), None);
    }

    #[test]
    fn node_limit_is_enforced() {
        let options = SbOptions { node_limit: 2, ..SbOptions::default() };
        assert_eq!(search_sb(&m3(), 3, SbVariant::Sb, options).unwrap_err(), Error::SearchBudgetExceeded(2));
    }
}
