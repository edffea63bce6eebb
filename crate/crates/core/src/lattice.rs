//! Finite lattices: join/meet tables, atoms, crosscut complexes,
//! semidistributivity and irreducibles.

use std::ops::Deref;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;
use crate::simplicial::{SimplicialComplex, MAX_VERTICES};

/// A bounded poset in which every pair has a join and a meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
}

/// An interval `[bottom, top]` together with a proper subset of its atoms
/// whose join is already `top`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscutViolation {
    pub bottom: usize,
    pub top: usize,
    pub subset: Vec<usize>,
}

/// A triple violating a semidistributive law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SdViolation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Join- and meet-irreducible elements with their unique lower/upper covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducibles {
    /// `(x, x_*)` for every join-irreducible `x`.
    pub join: Vec<(usize, usize)>,
    /// `(x, x^*)` for every meet-irreducible `x`.
    pub meet: Vec<(usize, usize)>,
}

fn minimal_in(poset: &FinitePoset, set: &FixedBitSet) -> Vec<usize> {
    set.ones().filter(|&z| !set.ones().any(|w| w != z && poset.leq(w, z))).collect()
}

impl Lattice {
    /// Validates that `poset` is a lattice and tabulates joins and meets.
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let bottom = poset.bottom().ok_or(Error::NotBounded("least element"))?;
        let top = poset.top().ok_or(Error::NotBounded("greatest element"))?;
        let n = poset.len();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let mut ub = poset.up_set(x).clone();
                ub.intersect_with(poset.up_set(y));
                let mins = minimal_in(&poset, &ub);
                if mins.len() != 1 {
                    return Err(Error::NotALattice {
                        x: poset.name(x).to_string(),
                        y: poset.name(y).to_string(),
                        bounds: mins.iter().map(|&m| poset.name(m).to_string()).collect(),
                    });
                }
                let mut lb = poset.down_set(x).clone();
                lb.intersect_with(poset.down_set(y));
                let maxs: Vec<usize> = lb.ones().filter(|&z| !lb.ones().any(|w| w != z && poset.leq(z, w))).collect();
                if maxs.len() != 1 {
                    // Unreachable for bounded posets with all joins.
                    return Err(Error::NotALattice {
                        x: poset.name(x).to_string(),
                        y: poset.name(y).to_string(),
                        bounds: maxs.iter().map(|&m| poset.name(m).to_string()).collect(),
                    });
                }
                join[x * n + y] = mins[0];
                join[y * n + x] = mins[0];
                meet[x * n + y] = maxs[0];
                meet[y * n + x] = maxs[0];
            }
        }
        Ok(Lattice { poset, bottom, top, join, meet })
    }

    /// Builds a lattice directly from cover pairs.
    pub fn from_covers<N, S>(names: N, covers: &[(S, S)]) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        S: AsRef<str>,
    {
        Self::new(FinitePoset::from_covers(names, covers)?)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.poset.len() + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.poset.len() + y]
    }

    /// Join of a set; the empty join is the bottom element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a set; the empty meet is the top element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Elements covering `x` and lying below `y`.
    pub fn atoms(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if !self.poset.leq(x, y) {
            return Err(Error::NotComparable(self.name(x).into(), self.name(y).into()));
        }
        Ok(self.poset.upper_covers(x).iter().copied().filter(|&a| self.poset.leq(a, y)).collect())
    }

    /// Atoms of the open interval `(x, y)`: covers of `x` strictly below `y`.
    pub fn open_atoms(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let mut atoms = self.atoms(x, y)?;
        atoms.retain(|&a| a != y);
        Ok(atoms)
    }

    /// The atoms of `[x, y]` join to `y`.
    pub fn is_atomic(&self, x: usize, y: usize) -> Result<bool> {
        let atoms = self.atoms(x, y)?;
        Ok(atoms.into_iter().fold(x, |acc, a| self.join(acc, a)) == y)
    }

    /// Crosscut complex of the open interval `(x, y)` on its atoms.
    ///
    /// A nonempty subset of atoms is a face iff its join lies strictly below
    /// `y`; a meet of two or more distinct atoms is `x`, which is outside the
    /// open interval. When `y` covers `x` the open interval is empty and the
    /// complex is `{∅}`.
    pub fn crosscut_complex(&self, x: usize, y: usize) -> Result<SimplicialComplex> {
        if x == y {
            return Err(Error::TrivialInterval(self.name(x).into()));
        }
        let atoms = self.open_atoms(x, y)?;
        if atoms.len() > MAX_VERTICES.min(24) {
            return Err(Error::TooLarge { what: "crosscut atom set", size: atoms.len(), limit: 24 });
        }
        let k = atoms.len();
        // Joins of all subsets by dynamic programming over the lowest bit.
        let mut joins = vec![x; 1 << k];
        let mut faces = Vec::new();
        for mask in 1usize..(1 << k) {
            let low = mask.trailing_zeros() as usize;
            joins[mask] = self.join(joins[mask & (mask - 1)], atoms[low]);
            if joins[mask] != y {
                faces.push(mask as u128);
            }
        }
        if faces.is_empty() {
            faces.push(0);
        }
        let names = atoms.iter().map(|&a| self.name(a).to_string()).collect();
        Ok(SimplicialComplex::from_masks(names, faces))
    }

    /// First interval (in lexicographic order of `(x, y)`) where a proper
    /// subset of atoms joins to the top, with an inclusion-minimal such subset.
    pub fn crosscut_simplicial_violation(&self) -> Option<CrosscutViolation> {
        let n = self.poset.len();
        for x in 0..n {
            for y in self.poset.up_set(x).ones() {
                if let Some(v) = self.interval_violation(x, y) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// Violation of the crosscut-simplicial condition inside `[x, y]` itself.
    pub fn interval_violation(&self, x: usize, y: usize) -> Option<CrosscutViolation> {
        if x == y {
            return None;
        }
        let atoms = self.atoms(x, y).ok()?;
        for skip in 0..atoms.len() {
            let rest: Vec<usize> = atoms.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &a)| a).collect();
            if rest.is_empty() || self.join_all(rest.iter().copied().chain([x])) != y {
                continue;
            }
            let mut subset = rest;
            let mut i = 0;
            while i < subset.len() {
                let without: Vec<usize> = subset.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a).collect();
                if !without.is_empty() && self.join_all(without.iter().copied().chain([x])) == y {
                    subset = without;
                } else {
                    i += 1;
                }
            }
            return Some(CrosscutViolation { bottom: x, top: y, subset });
        }
        None
    }

    pub fn is_crosscut_simplicial(&self) -> bool {
        self.crosscut_simplicial_violation().is_none()
    }

    /// First `(x, y, z)` with `x ∧ z = y ∧ z` but `(x ∨ y) ∧ z ≠ x ∧ z`.
    pub fn meet_semidistributive_violation(&self) -> Option<SdViolation> {
        let n = self.poset.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xz = self.meet(x, z);
                    if xz == self.meet(y, z) && self.meet(self.join(x, y), z) != xz {
                        return Some(SdViolation { x, y, z });
                    }
                }
            }
        }
        None
    }

    /// First `(x, y, z)` with `x ∨ z = y ∨ z` but `(x ∧ y) ∨ z ≠ x ∨ z`.
    pub fn join_semidistributive_violation(&self) -> Option<SdViolation> {
        let n = self.poset.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let xz = self.join(x, z);
                    if xz == self.join(y, z) && self.join(self.meet(x, y), z) != xz {
                        return Some(SdViolation { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn is_meet_semidistributive(&self) -> bool {
        self.meet_semidistributive_violation().is_none()
    }

    pub fn is_join_semidistributive(&self) -> bool {
        self.join_semidistributive_violation().is_none()
    }

    pub fn is_semidistributive(&self) -> bool {
        self.is_meet_semidistributive() && self.is_join_semidistributive()
    }

    /// First `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributive_violation(&self) -> Option<SdViolation> {
        let n = self.poset.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some(SdViolation { x, y, z });
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive_violation().is_none()
    }

    pub fn irreducibles(&self) -> Irreducibles {
        let n = self.poset.len();
        let join = (0..n)
            .filter_map(|x| match self.poset.lower_covers(x) {
                [below] => Some((x, *below)),
                _ => None,
            })
            .collect();
        let meet = (0..n)
            .filter_map(|x| match self.poset.upper_covers(x) {
                [above] => Some((x, *above)),
                _ => None,
            })
            .collect();
        Irreducibles { join, meet }
    }

    /// The closed interval `[x, y]` as a lattice, with its embedding.
    pub fn interval(&self, x: usize, y: usize) -> Result<(Lattice, Vec<usize>)> {
        let (sub, map) = self.poset.closed_interval(x, y)?;
        Ok((Lattice::new(sub)?, map))
    }

    pub fn dual(&self) -> Lattice {
        Lattice {
            poset: self.poset.dual(),
            bottom: self.top,
            top: self.bottom,
            join: self.meet.clone(),
            meet: self.join.clone(),
        }
    }

    /// `|mu(x, y)| <= 1` on every interval; returns the first offender.
    pub fn mobius_range_violation(&self) -> Option<(usize, usize, i64)> {
        (0..self.poset.len()).find_map(|x| {
            self.poset
                .mobius_row(x)
                .into_iter()
                .enumerate()
                .find_map(|(y, m)| m.filter(|m| m.abs() > 1).map(|m| (x, y, m)))
        })
    }
}

impl Deref for Lattice {
    type Target = FinitePoset;

    fn deref(&self) -> &FinitePoset {
        &self.poset
    }
}

/// Bounded-poset lattice test that only inspects pairs covering a common
/// element.
pub fn is_lattice_bez(poset: &FinitePoset) -> Result<bool> {
    poset.bottom().ok_or(Error::NotBounded("least element"))?;
    poset.top().ok_or(Error::NotBounded("greatest element"))?;
    for z in 0..poset.len() {
        let covers = poset.upper_covers(z);
        for (i, &x) in covers.iter().enumerate() {
            for &y in &covers[i + 1..] {
                let mut ub = poset.up_set(x).clone();
                ub.intersect_with(poset.up_set(y));
                if minimal_in(poset, &ub).len() != 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
