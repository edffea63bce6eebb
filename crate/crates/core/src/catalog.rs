//! Named fixtures and exhaustive enumeration of small lattices.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arrangement::{self, Arrangement};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;

/// Largest `n` accepted by [`enumerate_lattices`].
pub const MAX_ENUMERATION: usize = 7;

#[derive(Debug, Clone)]
pub enum CatalogObject {
    Lattice(Lattice),
    Arrangement(Arrangement),
}

/// Every name understood by [`named`], with its parameter range if any.
pub const NAMES: &[(&str, Option<(usize, usize)>)] = &[
    ("boolean", Some((0, 6))),
    ("chain", Some((1, 64))),
    ("M3", None),
    ("N5", None),
    ("hexagon", None),
    ("fig1_left", None),
    ("fig1_right", None),
    ("weak_order", Some((1, 4))),
    ("tamari", Some((1, 5))),
    ("braid", Some((2, 4))),
    ("prism4", None),
    ("three_lines", None),
];

pub fn named(name: &str, param: Option<usize>) -> Result<CatalogObject> {
    let (_, range) = NAMES.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let n = match (range, param) {
        (Some((lo, hi)), Some(p)) if p < *lo || p > *hi => {
            return Err(Error::ParamOutOfRange { name: name.to_string(), param: p, allowed: format!("{lo}..={hi}") })
        }
        (Some(_), Some(p)) => p,
        (Some((lo, hi)), None) => {
            return Err(Error::ParamOutOfRange {
                name: name.to_string(),
                param: 0,
                allowed: format!("a parameter in {lo}..={hi}"),
            })
        }
        (None, Some(p)) => {
            return Err(Error::ParamOutOfRange { name: name.to_string(), param: p, allowed: "no parameter".into() })
        }
        (None, None) => 0,
    };
    Ok(match name {
        "boolean" => CatalogObject::Lattice(boolean(n)),
        "chain" => CatalogObject::Lattice(chain(n)),
        "M3" => CatalogObject::Lattice(m3()),
        "N5" => CatalogObject::Lattice(n5()),
        "hexagon" => CatalogObject::Lattice(hexagon()),
        "fig1_left" => CatalogObject::Lattice(fig1_left()),
        "fig1_right" => CatalogObject::Lattice(fig1_right()),
        "weak_order" => CatalogObject::Lattice(weak_order(n)),
        "tamari" => CatalogObject::Lattice(tamari(n)),
        "braid" => CatalogObject::Arrangement(arrangement::braid(n)?),
        "prism4" => CatalogObject::Arrangement(prism4()),
        _ => CatalogObject::Arrangement(three_lines()),
    })
}

fn lattice<const N: usize, const M: usize>(names: [&str; N], covers: [(&str, &str); M]) -> Lattice {
    Lattice::from_covers(names, &covers).expect("fixture is a lattice")
}

/// Subsets of an `n`-set, named by their letters with `0` for the empty set.
pub fn boolean(n: usize) -> Lattice {
    let name = |mask: usize| {
        if mask == 0 {
            "0".to_string()
        } else {
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| (b'a' + i as u8) as char).collect()
        }
    };
    let names: Vec<String> = (0..1usize << n).map(name).collect();
    let poset = FinitePoset::from_relation(names, |x, y| x & !y == 0).expect("subset order");
    Lattice::new(poset).expect("subset lattice")
}

pub fn chain(n: usize) -> Lattice {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let poset = FinitePoset::from_relation(names, |x, y| x <= y).expect("total order");
    Lattice::new(poset).expect("chain")
}

pub fn m3() -> Lattice {
    lattice(["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
}

pub fn n5() -> Lattice {
    lattice(["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")])
}

pub fn hexagon() -> Lattice {
    lattice(["0", "a", "b", "A", "B", "1"], [("0", "a"), ("0", "b"), ("a", "A"), ("b", "B"), ("A", "1"), ("B", "1")])
}

pub fn fig1_left() -> Lattice {
    lattice(
        ["0", "a", "b", "l", "m", "r", "1"],
        [("0", "a"), ("0", "b"), ("a", "l"), ("a", "m"), ("b", "m"), ("b", "r"), ("l", "1"), ("m", "1"), ("r", "1")],
    )
}

pub fn fig1_right() -> Lattice {
    lattice(
        ["0", "a", "m", "b", "L", "R", "1"],
        [("0", "a"), ("0", "m"), ("0", "b"), ("a", "L"), ("m", "L"), ("m", "R"), ("b", "R"), ("L", "1"), ("R", "1")],
    )
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// Permutations of `1..=n` in one-line notation; covers swap an adjacent
/// ascent.
pub fn weak_order(n: usize) -> Lattice {
    let perms = permutations(n);
    let name = |w: &[usize]| w.iter().map(|&x| (x + 1).to_string()).collect::<String>();
    let names: Vec<String> = perms.iter().map(|w| name(w)).collect();
    let mut covers = Vec::new();
    for w in &perms {
        for i in 0..n.saturating_sub(1) {
            if w[i] < w[i + 1] {
                let mut v = w.clone();
                v.swap(i, i + 1);
                debug_assert_eq!(inversions(&v), inversions(w) + 1);
                covers.push((name(w), name(&v)));
            }
        }
    }
    Lattice::from_covers(names, &covers).expect("weak order is a lattice")
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn all(n: usize) -> Vec<Tree> {
        if n == 0 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for k in 0..n {
            for l in Tree::all(k) {
                for r in Tree::all(n - 1 - k) {
                    out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }

    fn render(&self) -> String {
        match self {
            Tree::Leaf => ".".into(),
            Tree::Node(l, r) => format!("({}{})", l.render(), r.render()),
        }
    }

    /// Every tree reachable by one right rotation `((A B) C) → (A (B C))`.
    fn rotations(&self) -> Vec<Tree> {
        let Tree::Node(l, r) = self else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let Tree::Node(a, b) = l.as_ref() {
            out.push(Tree::Node(a.clone(), Box::new(Tree::Node(b.clone(), r.clone()))));
        }
        out.extend(l.rotations().into_iter().map(|t| Tree::Node(Box::new(t), r.clone())));
        out.extend(r.rotations().into_iter().map(|t| Tree::Node(l.clone(), Box::new(t))));
        out
    }
}

/// Binary trees with `n` internal nodes; covers are right rotations.
pub fn tamari(n: usize) -> Lattice {
    let trees = Tree::all(n);
    let names: Vec<String> = trees.iter().map(Tree::render).collect();
    let covers: Vec<(String, String)> =
        trees.iter().flat_map(|t| t.rotations().into_iter().map(move |u| (t.render(), u.render()))).collect();
    Lattice::from_covers(names, &covers).expect("tamari is a lattice")
}

/// Planes `x, y, x+y+z, x+y−z`; the chamber `++++` has four walls.
pub fn prism4() -> Arrangement {
    Arrangement::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1], vec![1, 1, -1]])
        .expect("valid arrangement")
}

/// Three lines through the origin in the plane.
pub fn three_lines() -> Arrangement {
    Arrangement::from_integers(2, &[vec![0, 1], vec![4, -3], vec![4, 3]]).expect("valid arrangement")
}

/// Every named lattice fixture, with parameterized families at all sizes up
/// to the given caps.
pub fn fixture_lattices() -> Vec<(String, Lattice)> {
    let mut out = vec![
        ("M3".to_string(), m3()),
        ("N5".to_string(), n5()),
        ("hexagon".to_string(), hexagon()),
        ("fig1_left".to_string(), fig1_left()),
        ("fig1_right".to_string(), fig1_right()),
    ];
    for n in 0..=3 {
        out.push((format!("boolean {n}"), boolean(n)));
    }
    for n in 1..=4 {
        out.push((format!("chain {n}"), chain(n)));
        out.push((format!("weak_order {n}"), weak_order(n)));
    }
    for n in 1..=4 {
        out.push((format!("tamari {n}"), tamari(n)));
    }
    out
}

/// Lattices with `n` elements, one per isomorphism class, in a fixed order.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::ParamOutOfRange {
            name: "enumerate_lattices".into(),
            param: n,
            allowed: format!("1..={MAX_ENUMERATION}"),
        });
    }
    if n == 1 {
        return Ok(vec![chain(1)]);
    }
    let m = n - 2;
    // Naturally labelled posets on the interior: each new element sits above
    // a down-closed set of earlier ones. `below[k]` is that set as a mask.
    let mut posets: Vec<Vec<u8>> = vec![Vec::new()];
    for k in 0..m {
        let mut next = Vec::new();
        for below in &posets {
            for d in 0u8..(1 << k) {
                if (0..k).all(|j| d & (1 << j) == 0 || below[j] & !d == 0) {
                    let mut b = below.clone();
                    b.push(d);
                    next.push(b);
                }
            }
        }
        posets = next;
    }
    let perms = permutations(m);
    let classes: BTreeMap<u32, Vec<u8>> = posets
        .par_iter()
        .filter_map(|below| {
            let (code, relabelled) = canonical(below, &perms);
            bounded_lattice(&relabelled).map(|_| (code, relabelled))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(classes.values().map(|b| bounded_lattice(b).expect("filtered")).collect())
}

fn canonical(below: &[u8], perms: &[Vec<usize>]) -> (u32, Vec<u8>) {
    let m = below.len();
    let mut best: Option<(u32, Vec<u8>)> = None;
    for p in perms {
        // Element i moves to position p[i].
        let mut relabelled = vec![0u8; m];
        for i in 0..m {
            for j in 0..m {
                if below[i] & (1 << j) != 0 {
                    relabelled[p[i]] |= 1 << p[j];
                }
            }
        }
        let code = relabelled.iter().enumerate().fold(0u32, |acc, (i, &r)| acc | (r as u32) << (i * m));
        if best.as_ref().is_none_or(|(c, _)| code < *c) {
            best = Some((code, relabelled));
        }
    }
    best.expect("at least one permutation")
}

fn bounded_lattice(below: &[u8]) -> Option<Lattice> {
    let m = below.len();
    let mut names = vec!["0".to_string()];
    names.extend((0..m).map(|i| ((b'a' + i as u8) as char).to_string()));
    names.push("1".to_string());
    let top = m + 1;
    let poset = FinitePoset::from_relation(names, |x, y| {
        x == y || x == 0 || y == top || (x != top && y != 0 && below[y - 1] & (1 << (x - 1)) != 0)
    })
    .ok()?;
    Lattice::new(poset).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixtures() {
        assert_eq!(boolean(2).names(), &["0", "a", "b", "ab"]);
        assert_eq!(boolean(3).len(), 8);
        assert_eq!(chain(4).cover_count(), 3);
        assert_eq!(weak_order(3).len(), 6);
        assert_eq!(weak_order(4).len(), 24);
        assert_eq!(tamari(4).len(), 14);
        assert_eq!(tamari(5).len(), 42);
    }

    #[test]
    fn tamari_three_is_the_pentagon() {
        assert!(tamari(3).is_isomorphic(&n5()));
        let t = tamari(3);
        assert_eq!(t.name(t.bottom()), "(((..).).)");
        assert_eq!(t.name(t.top()), "(.(.(..)))");
    }

    #[test]
    fn weak_order_three_is_the_hexagon() {
        assert!(weak_order(3).is_isomorphic(&hexagon()));
        let w = weak_order(3);
        assert_eq!(w.name(w.bottom()), "123");
        assert_eq!(w.name(w.top()), "321");
    }

    #[test]
    fn figure_one_left_shape() {
        let l = fig1_left();
        assert_eq!(l.len(), 7);
        assert_eq!(l.cover_count(), 9);
        assert_eq!(l.upper_covers(l.index_of("a").unwrap()).len(), 2);
    }

    #[test]
    fn named_lookup_errors() {
        assert!(matches!(named("nope", None), Err(Error::UnknownName(_))));
        assert!(matches!(named("tamari", Some(6)), Err(Error::ParamOutOfRange { .. })));
        assert!(matches!(named("M3", Some(1)), Err(Error::ParamOutOfRange { .. })));
        assert!(matches!(named("braid", Some(3)), Ok(CatalogObject::Arrangement(_))));
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        let five = enumerate_lattices(5).unwrap();
        assert!(five.iter().any(|l| l.is_isomorphic(&n5())));
        assert!(five.iter().any(|l| l.is_isomorphic(&m3())));
        assert!(enumerate_lattices(8).is_err());
    }
}
