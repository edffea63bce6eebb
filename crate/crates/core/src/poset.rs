//! Finite posets presented by their Hasse diagrams.
//!
//! Elements are dense indices `0..n` with a table of display names. The
//! order relation is stored twice as rows of bitsets (principal filters and
//! principal ideals), so `leq` is a single bit probe and interval
//! computations are word-parallel intersections.

use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

/// A strictly increasing sequence of elements `x0 < x1 < ... < xd`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain(Vec<usize>);

impl Chain {
    /// Returns `None` unless consecutive elements are strictly increasing.
    pub fn new(poset: &FinitePoset, elements: Vec<usize>) -> Option<Self> {
        let ok = elements.windows(2).all(|w| poset.lt(w[0], w[1]));
        ok.then_some(Chain(elements))
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

impl Deref for Chain {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

fn name_table(names: Vec<String>) -> Result<(Vec<String>, HashMap<String, usize>)> {
    if names.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok((names, index))
}

impl FinitePoset {
    /// Builds a poset from its cover relation.
    ///
    /// Every pair must be a genuine cover: a pair implied by a longer chain of
    /// the given pairs is rejected, as is any cycle.
    pub fn from_covers<N, S>(names: N, covers: &[(S, S)]) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        S: AsRef<str>,
    {
        let (names, index) = name_table(names.into_iter().map(Into::into).collect())?;
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_index_covers(names, index, pairs)
    }

    pub(crate) fn from_index_covers(
        names: Vec<String>,
        index: HashMap<String, usize>,
        mut pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        pairs.sort_unstable();
        pairs.dedup();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(a, b) in &pairs {
            if a == b {
                return Err(Error::CycleDetected(names[a].clone()));
            }
            upper[a].push(b);
            lower[b].push(a);
        }

        // Kahn's algorithm; anything left over sits on a cycle.
        let mut indegree: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &upper[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
            return Err(Error::CycleDetected(names[stuck].clone()));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in order.iter().rev() {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(v);
            for &w in &upper[v] {
                row.union_with(&up[w]);
            }
            up[v] = row;
        }
        for &(a, b) in &pairs {
            if upper[a].iter().any(|&c| c != b && up[c].contains(b)) {
                return Err(Error::NonHasseCover(names[a].clone(), names[b].clone()));
            }
        }
        let down = transpose(&up);
        Ok(FinitePoset { names, index, upper, lower, up, down })
    }

    /// Builds a poset from an order predicate, validating the partial order
    /// axioms and deriving the covers.
    pub fn from_relation<N, F>(names: N, leq: F) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        F: Fn(usize, usize) -> bool,
    {
        let (names, index) = name_table(names.into_iter().map(Into::into).collect())?;
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if leq(x, y) {
                    row.insert(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotAPartialOrder(format!("{} is not reflexive", names[x])));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "{} and {} are mutually below each other",
                        names[x], names[y]
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "transitivity fails through {} <= {}",
                        names[x], names[y]
                    )));
                }
            }
        }
        Ok(Self::from_order_rows(names, index, up))
    }

    fn from_order_rows(names: Vec<String>, index: HashMap<String, usize>, up: Vec<FixedBitSet>) -> Self {
        let n = names.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for x in 0..n {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                let between = up[x].ones().any(|z| z != x && z != y && up[z].contains(y));
                if !between {
                    upper[x].push(y);
                    lower[y].push(x);
                }
            }
        }
        let down = transpose(&up);
        FinitePoset { names, index, upper, lower, up, down }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// All cover pairs `(lower, upper)` in lexicographic index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.upper.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y))).collect()
    }

    /// Principal order filter of `x` as a bitset.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Principal order ideal of `x` as a bitset.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            names: self.names.clone(),
            index: self.index.clone(),
            upper: self.lower.clone(),
            lower: self.upper.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count_ones(..) == self.len())
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.down[x].count_ones(..) == self.len())
    }

    pub fn bounds(&self) -> Option<(usize, usize)> {
        Some((self.bottom()?, self.top()?))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    fn require_leq(&self, x: usize, y: usize) -> Result<()> {
        if self.leq(x, y) {
            Ok(())
        } else {
            Err(Error::NotComparable(self.names[x].clone(), self.names[y].clone()))
        }
    }

    /// Elements of `[x, y]` in increasing index order.
    pub fn interval_elements(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.require_leq(x, y)?;
        let mut set = self.up[x].clone();
        set.intersect_with(&self.down[y]);
        Ok(set.ones().collect())
    }

    /// The closed interval `[x, y]` as a poset, with the embedding of its
    /// elements into `self`.
    pub fn closed_interval(&self, x: usize, y: usize) -> Result<(FinitePoset, Vec<usize>)> {
        let elements = self.interval_elements(x, y)?;
        Ok((self.induced(&elements), elements))
    }

    /// Elements strictly between `x` and `y`.
    pub fn open_interval(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let mut elements = self.interval_elements(x, y)?;
        elements.retain(|&z| z != x && z != y);
        Ok(elements)
    }

    /// Induced subposet on `elements` (kept in the given order).
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let names: Vec<String> = elements.iter().map(|&e| self.names[e].clone()).collect();
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let m = elements.len();
        let mut up = vec![FixedBitSet::with_capacity(m); m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                if self.leq(a, b) {
                    up[i].insert(j);
                }
            }
        }
        Self::from_order_rows(names, index, up)
    }

    fn membership(&self, subset: &[usize]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for &s in subset {
            set.insert(s);
        }
        set
    }

    /// First triple `(x, y, z)` with `x <= z <= y`, `x, y` in the subset and
    /// `z` outside it.
    pub fn convexity_violation(&self, subset: &[usize]) -> Option<(usize, usize, usize)> {
        let member = self.membership(subset);
        for x in member.ones() {
            for y in member.ones() {
                if !self.leq(x, y) {
                    continue;
                }
                let mut between = self.up[x].clone();
                between.intersect_with(&self.down[y]);
                if let Some(z) = between.ones().find(|&z| !member.contains(z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn is_order_convex(&self, subset: &[usize]) -> bool {
        self.convexity_violation(subset).is_none()
    }

    /// Upward closed.
    pub fn is_order_filter(&self, subset: &[usize]) -> bool {
        let member = self.membership(subset);
        member.ones().all(|x| self.up[x].is_subset(&member))
    }

    /// Downward closed.
    pub fn is_order_ideal(&self, subset: &[usize]) -> bool {
        let member = self.membership(subset);
        member.ones().all(|x| self.down[x].is_subset(&member))
    }

    /// A linear extension; ties are broken by smallest index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = self.lower.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &self.upper[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        order
    }

    /// Möbius values `mu(x, z)` for every `z`; `None` where `x` is not below `z`.
    pub fn mobius_row(&self, x: usize) -> Vec<Option<i64>> {
        let mut row = vec![None; self.len()];
        for z in self.linear_extension() {
            if !self.leq(x, z) {
                continue;
            }
            if z == x {
                row[z] = Some(1);
                continue;
            }
            let sum: i64 = self.down[z]
                .ones()
                .filter(|&w| w != z && self.leq(x, w))
                .map(|w| row[w].expect("lower elements come first"))
                .sum();
            row[z] = Some(-sum);
        }
        row
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        self.require_leq(x, y)?;
        Ok(self.mobius_row(x)[y].expect("x <= y"))
    }

    /// The full Möbius table as `(x, y, mu(x, y))` for every `x <= y`.
    pub fn mobius_table(&self) -> Vec<(usize, usize, i64)> {
        (0..self.len())
            .flat_map(|x| self.mobius_row(x).into_iter().enumerate().filter_map(move |(y, m)| m.map(|m| (x, y, m))))
            .collect()
    }

    /// Order complex of the whole poset.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        let all: Vec<usize> = (0..self.len()).collect();
        self.order_complex_on(&all)
    }

    /// Order complex of the induced subposet on `elements`; `{∅}` when
    /// `elements` is empty.
    pub fn order_complex_on(&self, elements: &[usize]) -> Result<SimplicialComplex> {
        let sub = self.induced(elements);
        let mut facets = Vec::new();
        for start in sub.minimal_elements() {
            let mut stack = vec![start];
            sub.maximal_chains_from(&mut stack, &mut facets);
        }
        if facets.is_empty() {
            facets.push(Vec::new());
        }
        SimplicialComplex::from_facets(sub.names.clone(), facets)
    }

    fn maximal_chains_from(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *stack.last().expect("nonempty chain");
        if self.upper[last].is_empty() {
            out.push(stack.clone());
            return;
        }
        for &next in &self.upper[last] {
            stack.push(next);
            self.maximal_chains_from(stack, out);
            stack.pop();
        }
    }

    /// Lazily enumerates the saturated chains from `x` to `y`, following
    /// upper covers in increasing index order.
    pub fn saturated_chains(&self, x: usize, y: usize) -> Result<SaturatedChains<'_>> {
        self.require_leq(x, y)?;
        Ok(SaturatedChains { poset: self, target: y, path: vec![x], cursor: vec![0] })
    }

    /// Number of saturated chains from `x` to `y` (saturating at `u128::MAX`).
    pub fn count_saturated_chains(&self, x: usize, y: usize) -> Result<u128> {
        self.require_leq(x, y)?;
        let mut count = vec![0u128; self.len()];
        for z in self.linear_extension() {
            if !self.leq(x, z) || !self.leq(z, y) {
                continue;
            }
            count[z] = if z == x {
                1
            } else {
                self.lower[z].iter().filter(|&&w| self.leq(x, w)).fold(0u128, |acc, &w| acc.saturating_add(count[w]))
            };
        }
        Ok(count[y])
    }

    /// An order isomorphism `self -> other` as an index map, if one exists.
    pub fn isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.cover_count() != other.cover_count() {
            return None;
        }
        let sig = |p: &FinitePoset, x: usize| {
            (p.down[x].count_ones(..), p.up[x].count_ones(..), p.lower[x].len(), p.upper[x].len())
        };
        let mine: Vec<_> = (0..self.len()).map(|x| sig(self, x)).collect();
        let theirs: Vec<_> = (0..other.len()).map(|x| sig(other, x)).collect();
        let mut a = mine.clone();
        let mut b = theirs.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let order = self.linear_extension();
        let mut image = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        let found = self.extend_isomorphism(other, &order, 0, &mine, &theirs, &mut image, &mut used);
        found.then_some(image)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_isomorphism(
        &self,
        other: &FinitePoset,
        order: &[usize],
        depth: usize,
        mine: &[(usize, usize, usize, usize)],
        theirs: &[(usize, usize, usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for cand in 0..other.len() {
            if used[cand] || theirs[cand] != mine[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let fu = image[u];
                self.leq(u, x) == other.leq(fu, cand) && self.leq(x, u) == other.leq(cand, fu)
            });
            if !consistent {
                continue;
            }
            image[x] = cand;
            used[cand] = true;
            if self.extend_isomorphism(other, order, depth + 1, mine, theirs, image, used) {
                return true;
            }
            used[cand] = false;
            image[x] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.isomorphism(other).is_some()
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    /// Length of the longest chain from a minimal element ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut height = vec![0; self.len()];
        for z in self.linear_extension() {
            height[z] = self.lower[z].iter().map(|&w| height[w] + 1).max().unwrap_or(0);
        }
        height
    }
}

impl PartialEq for FinitePoset {
    /// Equal names in the same positions with the same order relation.
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.up == other.up
    }
}

impl Eq for FinitePoset {}

fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut cols = vec![FixedBitSet::with_capacity(n); n];
    for (x, row) in rows.iter().enumerate() {
        for y in row.ones() {
            cols[y].insert(x);
        }
    }
    cols
}

/// Iterator over saturated chains, see [`FinitePoset::saturated_chains`].
pub struct SaturatedChains<'a> {
    poset: &'a FinitePoset,
    target: usize,
    path: Vec<usize>,
    cursor: Vec<usize>,
}

impl Iterator for SaturatedChains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        while let Some(&current) = self.path.last() {
            if current == self.target {
                let chain = Chain(self.path.clone());
                self.path.pop();
                self.cursor.pop();
                return Some(chain);
            }
            let covers = &self.poset.upper[current];
            let pos = self.cursor.last_mut().expect("cursor tracks path");
            let next = covers[*pos..].iter().position(|&c| self.poset.leq(c, self.target)).map(|offset| *pos + offset);
            match next {
                Some(i) => {
                    *pos = i + 1;
                    self.path.push(covers[i]);
                    self.cursor.push(0);
                }
                None => {
                    self.path.pop();
                    self.cursor.pop();
                }
            }
        }
        None
    }
}
