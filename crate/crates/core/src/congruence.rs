//! Lattice congruences, quotients and congruence-normality.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;

/// A partition of a lattice's elements, kept in canonical form: each block
/// sorted, blocks ordered by their least index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

/// A pair `(x, y)` of a meet-irreducible `x` and join-irreducible `y` with
/// `Cg(x, x*) = Cg(y_*, y)` and `x >= y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalityViolation {
    pub meet_irreducible: usize,
    pub join_irreducible: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

impl Congruence {
    /// Canonical partition from any per-element class label.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            let b = *first.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
            block_of[x] = b;
        }
        Congruence { blocks, block_of }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Self {
        Self::from_labels(&vec![0; n])
    }

    /// Validates that `blocks` partition `0..lattice.len()`. Compatibility is
    /// not checked; see [`Congruence::is_congruence`].
    pub fn from_blocks(lattice: &Lattice, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = lattice.len();
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::NotAPartition(format!("element #{x} out of range")));
                }
                if labels[x] != usize::MAX {
                    return Err(Error::NotAPartition(format!("{} appears twice", lattice.name(x))));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition(format!("{} is in no block", lattice.name(x))));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn from_named_blocks<S: AsRef<str>>(lattice: &Lattice, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|s| lattice.index_of(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(lattice, &blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn named_blocks(&self, lattice: &Lattice) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| b.iter().map(|&x| lattice.name(x).to_string()).collect()).collect()
    }

    /// First `(x, y, z)` with `x ≡ y` but `x ∨ z ≢ y ∨ z` or `x ∧ z ≢ y ∧ z`.
    pub fn compatibility_violation(&self, lattice: &Lattice) -> Option<(usize, usize, usize)> {
        for block in &self.blocks {
            for (i, &x) in block.iter().enumerate() {
                for &y in &block[i + 1..] {
                    for z in 0..lattice.len() {
                        if !self.equivalent(lattice.join(x, z), lattice.join(y, z))
                            || !self.equivalent(lattice.meet(x, z), lattice.meet(y, z))
                        {
                            return Some((x, y, z));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, lattice: &Lattice) -> bool {
        self.block_of.len() == lattice.len() && self.compatibility_violation(lattice).is_none()
    }

    /// Every block is a closed interval of the lattice.
    pub fn blocks_are_intervals(&self, lattice: &Lattice) -> bool {
        self.blocks.iter().all(|block| {
            let lo = lattice.meet_all(block.iter().copied());
            let hi = lattice.join_all(block.iter().copied());
            block.contains(&lo)
                && block.contains(&hi)
                && lattice.interval_elements(lo, hi).map(|iv| iv == *block).unwrap_or(false)
        })
    }

    /// Least congruence identifying `x` and `y`.
    pub fn principal(lattice: &Lattice, x: usize, y: usize) -> Self {
        Self::generated(lattice, &[(x, y)])
    }

    /// Least congruence identifying every given pair.
    pub fn generated(lattice: &Lattice, pairs: &[(usize, usize)]) -> Self {
        let n = lattice.len();
        let mut uf = UnionFind::new(n);
        let mut work: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in pairs {
            if uf.union(a, b) {
                work.push((a, b));
            }
        }
        // Each pair that caused a merge is translated by every z; the
        // equivalence they generate is then closed under ∨ z and ∧ z.
        while let Some((a, b)) = work.pop() {
            for z in 0..n {
                let (j1, j2) = (lattice.join(a, z), lattice.join(b, z));
                if uf.union(j1, j2) {
                    work.push((j1, j2));
                }
                let (m1, m2) = (lattice.meet(a, z), lattice.meet(b, z));
                if uf.union(m1, m2) {
                    work.push((m1, m2));
                }
            }
        }
        Self::from_labels(&uf.labels())
    }

    /// Join in the congruence lattice.
    pub fn join(&self, other: &Congruence, lattice: &Lattice) -> Self {
        let mut pairs = Vec::new();
        for c in [self, other] {
            for block in &c.blocks {
                pairs.extend(block.windows(2).map(|w| (w[0], w[1])));
            }
        }
        Self::generated(lattice, &pairs)
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| other.equivalent(x, b[0])))
    }

    /// Largest element of the block of `x`.
    pub fn project_up(&self, lattice: &Lattice, x: usize) -> usize {
        lattice.join_all(self.blocks[self.block_of[x]].iter().copied())
    }

    /// Smallest element of the block of `x`.
    pub fn project_down(&self, lattice: &Lattice, x: usize) -> usize {
        lattice.meet_all(self.blocks[self.block_of[x]].iter().copied())
    }

    /// The quotient lattice on blocks and the quotient map. Blocks are named
    /// after their least element.
    pub fn quotient(&self, lattice: &Lattice) -> Result<(Lattice, Vec<usize>)> {
        let names: Vec<String> =
            self.blocks.iter().map(|b| lattice.name(lattice.meet_all(b.iter().copied())).to_string()).collect();
        let blocks = &self.blocks;
        let poset = FinitePoset::from_relation(names, |i, j| {
            blocks[i].iter().any(|&a| blocks[j].iter().any(|&b| lattice.leq(a, b)))
        })?;
        Ok((Lattice::new(poset)?, self.block_of.clone()))
    }

    /// Restriction to the closed interval `[x, y]`, returned together with
    /// the interval as a lattice (indices local to the interval).
    pub fn restrict(&self, lattice: &Lattice, x: usize, y: usize) -> Result<(Lattice, Congruence)> {
        let (interval, map) = lattice.interval(x, y)?;
        let labels: Vec<usize> = map.iter().map(|&e| self.block_of[e]).collect();
        Ok((interval, Congruence::from_labels(&labels)))
    }

    /// Blocks written as `a,b|c`.
    pub fn display(&self, lattice: &Lattice) -> String {
        self.named_blocks(lattice).iter().map(|b| b.join(",")).collect::<Vec<_>>().join("|")
    }
}

/// All congruences of `lattice`, sorted canonically (identity first).
///
/// Every congruence is a join of principal congruences of covers, so the
/// set is the closure of those under join.
pub fn all_congruences(lattice: &Lattice) -> Vec<Congruence> {
    let principals: BTreeSet<Congruence> =
        lattice.cover_pairs().into_iter().map(|(x, y)| Congruence::principal(lattice, x, y)).collect();
    let mut all: BTreeSet<Congruence> = principals.clone();
    all.insert(Congruence::identity(lattice.len()));
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(theta) = frontier.pop() {
        for p in &principals {
            let joined = theta.join(p, lattice);
            if all.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Congruence> = all.into_iter().collect();
    out.sort_by_key(|c| std::cmp::Reverse(c.block_count()));
    out
}

/// `Con(L)` ordered by refinement, with elements named by their blocks.
pub fn congruence_lattice(lattice: &Lattice) -> Result<(Lattice, Vec<Congruence>)> {
    let cons = all_congruences(lattice);
    let names: Vec<String> = cons.iter().map(|c| c.display(lattice)).collect();
    let poset = FinitePoset::from_relation(names, |i, j| cons[i].refines(&cons[j]))?;
    Ok((Lattice::new(poset)?, cons))
}

/// Checks `Cg(x, x*) = Cg(y_*, y) ⇒ x ≱ y` for all meet-irreducible `x` and
/// join-irreducible `y`; returns the first violation.
pub fn congruence_normality_violation(lattice: &Lattice) -> Option<NormalityViolation> {
    let irr = lattice.irreducibles();
    let mut cache: HashMap<(usize, usize), Congruence> = HashMap::new();
    let mut cg =
        |a: usize, b: usize| cache.entry((a, b)).or_insert_with(|| Congruence::principal(lattice, a, b)).clone();
    for &(x, x_up) in &irr.meet {
        let upper = cg(x, x_up);
        for &(y, y_down) in &irr.join {
            if lattice.leq(y, x) && cg(y_down, y) == upper {
                return Some(NormalityViolation { meet_irreducible: x, join_irreducible: y });
            }
        }
    }
    None
}

pub fn is_congruence_normal(lattice: &Lattice) -> bool {
    congruence_normality_violation(lattice).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n5() -> Lattice {
        Lattice::from_covers(["0", "a", "b", "c", "1"], &[("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")])
            .unwrap()
    }

    fn b2() -> Lattice {
        Lattice::from_covers(["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
    }

    fn hexagon() -> Lattice {
        Lattice::from_covers(
            ["0", "a", "b", "A", "B", "1"],
            &[("0", "a"), ("0", "b"), ("a", "A"), ("b", "B"), ("A", "1"), ("B", "1")],
        )
        .unwrap()
    }

    fn m3() -> Lattice {
        Lattice::from_covers(
            ["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap()
    }

    fn named(l: &Lattice, c: &Congruence) -> Vec<Vec<String>> {
        c.named_blocks(l)
    }

    #[test]
    fn principal_congruences_of_n5() {
        let l = n5();
        let cg = Congruence::principal(&l, 2, 3);
        assert_eq!(named(&l, &cg), vec![vec!["0"], vec!["a"], vec!["b", "c"], vec!["1"]]);
        let cg = Congruence::principal(&l, 1, 4);
        assert_eq!(named(&l, &cg), vec![vec!["0", "b", "c"], vec!["a", "1"]]);
        assert!(cg.is_congruence(&l));
        assert!(cg.blocks_are_intervals(&l));
        assert_eq!(cg.project_up(&l, 0), 3);
        assert_eq!(cg.project_down(&l, 4), 1);
    }

    #[test]
    fn principal_congruence_of_hexagon_side() {
        let l = hexagon();
        let cg = Congruence::principal(&l, 1, 3);
        assert_eq!(cg.block_count(), 5);
        assert!(cg.equivalent(1, 3));
        let (q, _) = cg.quotient(&l).unwrap();
        assert!(q.is_isomorphic(&n5()));
    }

    #[test]
    fn congruence_counts() {
        let chain = Lattice::from_covers(["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(all_congruences(&chain).len(), 2);
        let (con_b2, _) = congruence_lattice(&b2()).unwrap();
        assert_eq!(con_b2.len(), 4);
        assert!(con_b2.is_isomorphic(&b2()));
        assert_eq!(all_congruences(&n5()).len(), 5);
        assert_eq!(all_congruences(&m3()).len(), 2);
    }

    #[test]
    fn partition_validation() {
        let l = b2();
        assert!(matches!(Congruence::from_blocks(&l, &[vec![0, 1], vec![2]]), Err(Error::NotAPartition(_))));
        assert!(matches!(Congruence::from_blocks(&l, &[vec![0, 1], vec![1, 2, 3]]), Err(Error::NotAPartition(_))));
        let not_cong = Congruence::from_blocks(&l, &[vec![0, 3], vec![1], vec![2]]).unwrap();
        assert!(!not_cong.is_congruence(&l));
    }

    #[test]
    fn projections_of_trivial_congruences() {
        let l = n5();
        let id = Congruence::identity(l.len());
        let full = Congruence::full(l.len());
        for x in 0..l.len() {
            assert_eq!(id.project_up(&l, x), x);
            assert_eq!(id.project_down(&l, x), x);
            assert_eq!(full.project_up(&l, x), l.top());
        }
        assert!(id.quotient(&l).unwrap().0.is_isomorphic(&l));
        assert_eq!(full.quotient(&l).unwrap().0.len(), 1);
    }

    #[test]
    fn congruence_normality() {
        assert!(is_congruence_normal(&n5()));
        let v = congruence_normality_violation(&m3()).unwrap();
        assert_eq!((v.meet_irreducible, v.join_irreducible), (1, 1));
        let chain = Lattice::from_covers(["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3")]).unwrap();
        assert!(is_congruence_normal(&chain));
    }
}
