//! Doubling a lattice at an order-convex subset.
//!
//! `L[C]` is the induced subposet of `L × {0, 1}` on
//! `((L − L≥C) ∪ C) × {0}  ∪  L≥C × {1}`; its elements are named `x.0` and
//! `x.1`.

use std::collections::HashMap;

use serde::Serialize;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;
use crate::simplicial::SimplicialComplex;

/// Largest ground set for which all subsets are scanned for convexity.
pub const CONVEX_SUBSET_CUTOFF: usize = 16;

#[derive(Debug, Clone)]
pub struct DoubledLattice {
    base: Lattice,
    subset: Vec<usize>,
    in_subset: Vec<bool>,
    above_subset: Vec<bool>,
    points: Vec<(usize, u8)>,
    lookup: HashMap<(usize, u8), usize>,
    lattice: Lattice,
}

/// The four interval types of a doubled lattice, keyed by the levels and
/// subset membership of the interval's endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DoublingCase {
    /// Same level, or neither endpoint in `C`: same complex as the projection.
    Projection,
    /// Bottom level outside `C`, top in `C`: a full simplex.
    Simplex,
    /// Bottom in `C`, top outside `C`: a cone over a restriction.
    Cone,
    /// Both endpoints in `C`: a simplex glued to a cone.
    SimplexUnionCone,
}

impl DoublingCase {
    /// Case number, 1 through 4.
    pub fn number(self) -> u8 {
        match self {
            DoublingCase::Projection => 1,
            DoublingCase::Simplex => 2,
            DoublingCase::Cone => 3,
            DoublingCase::SimplexUnionCone => 4,
        }
    }
}

/// Doubles `base` at the order-convex set `subset`.
pub fn double(base: &Lattice, subset: &[usize]) -> Result<DoubledLattice> {
    if let Some((x, y, z)) = base.convexity_violation(subset) {
        return Err(Error::NotOrderConvex(base.name(x).into(), base.name(y).into(), base.name(z).into()));
    }
    let n = base.len();
    let mut in_subset = vec![false; n];
    for &c in subset {
        in_subset[c] = true;
    }
    let above_subset: Vec<bool> = (0..n).map(|x| subset.iter().any(|&c| base.leq(c, x))).collect();
    let mut points = Vec::new();
    for x in 0..n {
        if !above_subset[x] || in_subset[x] {
            points.push((x, 0));
        }
        if above_subset[x] {
            points.push((x, 1));
        }
    }
    let lookup = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let names: Vec<String> = points.iter().map(|&(x, e)| format!("{}.{}", base.name(x), e)).collect();
    let poset = FinitePoset::from_relation(names, |i, j| {
        let ((x, e), (y, f)) = (points[i], points[j]);
        base.leq(x, y) && e <= f
    })?;
    let lattice = Lattice::new(poset)?;
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(DoubledLattice { base: base.clone(), subset: sorted, in_subset, above_subset, points, lookup, lattice })
}

impl DoubledLattice {
    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// `(x, ε)` for an element of the doubled lattice.
    pub fn point(&self, element: usize) -> (usize, u8) {
        self.points[element]
    }

    pub fn element(&self, x: usize, level: u8) -> Option<usize> {
        self.lookup.get(&(x, level)).copied()
    }

    /// `π(x, ε) = x`.
    pub fn project(&self, element: usize) -> usize {
        self.points[element].0
    }

    /// Join computed from the formula `(x ∨ y, max(ε, ε′))`, lifted to level 1
    /// when `x ∨ y` lies in `L≥C − C`.
    pub fn doubled_join(&self, a: usize, b: usize) -> usize {
        let ((x, e), (y, f)) = (self.points[a], self.points[b]);
        let j = self.base.join(x, y);
        let level = if !self.above_subset[j] || self.in_subset[j] { e.max(f) } else { 1 };
        self.lookup[&(j, level)]
    }

    /// Fibers of `π` as a partition of the doubled lattice.
    pub fn fibers(&self) -> Congruence {
        let labels: Vec<usize> = self.points.iter().map(|&(x, _)| x).collect();
        Congruence::from_labels(&labels)
    }

    /// Classifies the open interval `(lo, hi)` and builds the complex its
    /// case predicts from crosscut data of the base lattice.
    pub fn classify_interval(&self, lo: usize, hi: usize) -> Result<(DoublingCase, SimplicialComplex)> {
        if lo == hi || !self.lattice.leq(lo, hi) {
            return Err(Error::NotComparable(self.lattice.name(lo).into(), self.lattice.name(hi).into()));
        }
        let ((x, e), (y, f)) = (self.points[lo], self.points[hi]);
        let (x_in, y_in) = (self.in_subset[x], self.in_subset[y]);
        let case = if e == f || (!x_in && !y_in) {
            DoublingCase::Projection
        } else if !x_in {
            DoublingCase::Simplex
        } else if !y_in {
            DoublingCase::Cone
        } else {
            DoublingCase::SimplexUnionCone
        };
        let base = &self.base;
        // Crosscut complex of the projected open interval (x, y); `{∅}` when
        // the interval is degenerate.
        let projected =
            if x == y { SimplicialComplex::from_masks(Vec::new(), vec![0]) } else { base.crosscut_complex(x, y)? };
        let atoms = base.atoms(x, y)?;
        let atom_names: Vec<String> = atoms.iter().map(|&a| base.name(a).to_string()).collect();
        let apex = fresh_name(&atom_names);
        let predicted = match case {
            DoublingCase::Projection => projected,
            DoublingCase::Simplex => SimplicialComplex::full_simplex(atom_names)?,
            DoublingCase::Cone => {
                let keep: Vec<usize> = atoms
                    .iter()
                    .filter(|&&a| self.in_subset[a])
                    .map(|&a| projected.vertex_index(base.name(a)))
                    .collect::<Result<_>>()?;
                projected.induced(&keep)?.cone(&apex)?
            }
            DoublingCase::SimplexUnionCone if x == y => SimplicialComplex::from_masks(Vec::new(), vec![0]),
            DoublingCase::SimplexUnionCone => {
                let k = atom_names.len();
                let mut facets: Vec<Vec<usize>> = vec![(0..k).collect()];
                for facet in projected.named_facets() {
                    let mut mapped: Vec<usize> = facet
                        .iter()
                        .map(|v| atom_names.iter().position(|a| a == v).expect("open atoms are atoms"))
                        .collect();
                    mapped.push(k);
                    facets.push(mapped);
                }
                let mut ground = atom_names;
                ground.push(apex);
                SimplicialComplex::from_facets(ground, facets)?
            }
        };
        Ok((case, predicted))
    }
}

fn fresh_name(taken: &[String]) -> String {
    let mut name = String::from("v");
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// All order-convex subsets, by filtering every subset of the ground set.
pub fn convex_subsets(poset: &FinitePoset, include_empty: bool) -> Result<Vec<Vec<usize>>> {
    let n = poset.len();
    if n > CONVEX_SUBSET_CUTOFF {
        return Err(Error::TooLarge { what: "convex subset enumeration", size: n, limit: CONVEX_SUBSET_CUTOFF });
    }
    let start = if include_empty { 0 } else { 1 };
    Ok((start..1usize << n)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| poset.is_order_convex(s))
        .collect())
}

/// Principal order filter `{y : y >= x}`.
pub fn principal_filter(poset: &FinitePoset, x: usize) -> Vec<usize> {
    poset.up_set(x).ones().collect()
}

/// For `x ∈ C`, `y ∉ C`, `x <= y`, the interval `[x, y]` has an atom outside
/// `C`. Returns the first `(x, y)` where this fails.
pub fn outside_atom_violation(lattice: &Lattice, subset: &[usize]) -> Option<(usize, usize)> {
    for &x in subset {
        for y in lattice.up_set(x).ones() {
            if subset.contains(&y) {
                continue;
            }
            let atoms = lattice.atoms(x, y).expect("x <= y");
            if atoms.iter().all(|a| subset.contains(a)) {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Lattice {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
        Lattice::from_covers(names, &covers).unwrap()
    }

    fn n5() -> Lattice {
        Lattice::from_covers(["0", "a", "b", "c", "1"], &[("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")])
            .unwrap()
    }

    fn hexagon() -> Lattice {
        Lattice::from_covers(
            ["0", "a", "b", "A", "B", "1"],
            &[("0", "a"), ("0", "b"), ("a", "A"), ("b", "B"), ("A", "1"), ("B", "1")],
        )
        .unwrap()
    }

    #[test]
    fn doubling_the_top_of_a_two_chain() {
        let d = double(&chain(2), &[1]).unwrap();
        assert_eq!(d.lattice().names(), &["0.0", "1.0", "1.1"]);
        assert!(d.lattice().is_isomorphic(&chain(3)));
        let (p00, p10, p11) = (d.element(0, 0).unwrap(), d.element(1, 0).unwrap(), d.element(1, 1).unwrap());
        assert_eq!(d.doubled_join(p00, p10), p10);
        assert_eq!(d.doubled_join(p00, p11), p11);
        let (case, predicted) = d.classify_interval(p00, p11).unwrap();
        assert_eq!(case, DoublingCase::Simplex);
        assert!(predicted.is_full_simplex());
        let direct = d.lattice().crosscut_complex(p00, p11).unwrap();
        assert!(direct.isomorphic(&predicted).unwrap());
    }

    #[test]
    fn doubling_everything_gives_a_product() {
        let b2 = Lattice::from_covers(["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap();
        let d = double(&chain(2), &[0, 1]).unwrap();
        assert!(d.lattice().is_isomorphic(&b2));
    }

    #[test]
    fn join_formula_lifts_above_the_subset() {
        let l = n5();
        let d = double(&l, &[2]).unwrap();
        let a0 = d.element(1, 0).unwrap();
        let b0 = d.element(2, 0).unwrap();
        assert_eq!(d.point(d.doubled_join(a0, b0)), (4, 1));
        for i in 0..d.lattice().len() {
            for j in 0..d.lattice().len() {
                assert_eq!(d.doubled_join(i, j), d.lattice().join(i, j));
            }
        }
    }

    #[test]
    fn non_convex_subset_is_rejected() {
        assert!(matches!(double(&n5(), &[0, 3]), Err(Error::NotOrderConvex(_, _, _))));
    }

    #[test]
    fn cone_case_on_the_hexagon() {
        let d = double(&hexagon(), &[1]).unwrap();
        let lat = d.lattice();
        let mut seen_cone = false;
        for lo in 0..lat.len() {
            for hi in lat.up_set(lo).ones().filter(|&h| h != lo) {
                let (case, predicted) = d.classify_interval(lo, hi).unwrap();
                let direct = lat.crosscut_complex(lo, hi).unwrap();
                assert!(direct.isomorphic(&predicted).unwrap(), "{} {}", lat.name(lo), lat.name(hi));
                if case == DoublingCase::Cone {
                    assert_eq!(d.point(lo), (1, 0));
                    seen_cone = true;
                }
            }
        }
        assert!(seen_cone);
    }

    #[test]
    fn fibers_form_a_congruence_with_quotient_the_base() {
        let l = hexagon();
        let d = double(&l, &[1, 3]).unwrap();
        let fibers = d.fibers();
        assert!(fibers.is_congruence(d.lattice()));
        let (q, _) = fibers.quotient(d.lattice()).unwrap();
        assert!(q.is_isomorphic(&l));
    }

    #[test]
    fn convex_subsets_and_filters() {
        let l = chain(3);
        assert_eq!(convex_subsets(&l, false).unwrap().len(), 6);
        assert_eq!(principal_filter(&l, 1), vec![1, 2]);
        assert_eq!(outside_atom_violation(&l, &[1, 2]), None);
        assert_eq!(outside_atom_violation(&l, &[0, 1]), Some((0, 2)));
    }
}
