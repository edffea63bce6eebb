//! Abstract simplicial complexes on small ground sets.
//!
//! A complex is stored by its facets, each a bitmask over the ground set.
//! Faces are generated on demand. An empty facet list is the void complex;
//! the facet list `[∅]` is the complex `{∅}`.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub};

use crate::error::{Error, Result};

/// A face as a bitmask over vertex indices.
pub type Face = u128;

/// Largest ground set a complex may have.
pub const MAX_VERTICES: usize = 128;

/// Default vertex bound for [`SimplicialComplex::isomorphic`].
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

/// Rational homology summary used as evidence for a homotopy type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomologyType {
    /// All reduced Betti numbers vanish (as for a cone or a simplex).
    Acyclic,
    /// A single reduced Betti number equal to 1, in the given degree.
    Sphere(i64),
    Other,
}

fn mask_of(indices: &[usize]) -> Face {
    indices.iter().fold(0, |m, &i| m | (1u128 << i))
}

fn indices_of(mut mask: Face) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        out.push(i);
        mask &= mask - 1;
    }
    out
}

fn full_mask(n: usize) -> Face {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Keeps the inclusion-maximal masks, sorted by (size, value).
fn maximal(mut masks: Vec<Face>) -> Vec<Face> {
    masks.sort_unstable_by_key(|&m| (std::cmp::Reverse(m.count_ones()), m));
    masks.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| m & k == m) {
            kept.push(m);
        }
    }
    kept.sort_unstable_by_key(|&m| (m.count_ones(), m));
    kept
}

impl SimplicialComplex {
    /// Builds a complex from facet vertex lists; non-maximal entries are
    /// absorbed.
    pub fn from_facets(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "simplicial complex ground set", size: n, limit: MAX_VERTICES });
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateElement(v.clone()));
            }
        }
        let mut masks = Vec::with_capacity(facets.len());
        for facet in &facets {
            if let Some(&bad) = facet.iter().find(|&&i| i >= n) {
                return Err(Error::UnknownElement(format!("vertex #{bad}")));
            }
            masks.push(mask_of(facet));
        }
        Ok(Self::from_masks(vertices, masks))
    }

    pub(crate) fn from_masks(vertices: Vec<String>, masks: Vec<Face>) -> Self {
        debug_assert!(vertices.len() <= MAX_VERTICES);
        SimplicialComplex { vertices, facets: maximal(masks) }
    }

    /// All subsets of the ground set.
    pub fn full_simplex(vertices: Vec<String>) -> Result<Self> {
        let n = vertices.len();
        Self::from_facets(vertices, vec![(0..n).collect()])
    }

    /// All proper subsets of the ground set; requires a nonempty ground set.
    pub fn simplex_boundary(vertices: Vec<String>) -> Result<Self> {
        let n = vertices.len();
        let facets = (0..n).map(|skip| (0..n).filter(|&i| i != skip).collect()).collect();
        Self::from_facets(vertices, facets)
    }

    /// Ground set with no faces at all.
    pub fn void(vertices: Vec<String>) -> Result<Self> {
        Self::from_facets(vertices, Vec::new())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn facet_masks(&self) -> &[Face] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| indices_of(m)).collect()
    }

    /// Facets as lists of vertex names.
    pub fn named_facets(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|&m| indices_of(m).into_iter().map(|i| self.vertices[i].clone()).collect()).collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains_mask(&self, face: Face) -> bool {
        self.facets.iter().any(|&f| face & f == face)
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        face.iter().all(|&i| i < self.vertex_count()) && self.contains_mask(mask_of(face))
    }

    /// Every face, including ∅ when nonvoid, ordered by (size, mask).
    pub fn faces(&self) -> Vec<Face> {
        let mut all: HashSet<Face> = HashSet::new();
        for &facet in &self.facets {
            // Enumerate submasks of the facet.
            let mut sub = facet;
            loop {
                all.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        let mut faces: Vec<Face> = all.into_iter().collect();
        faces.sort_unstable_by_key(|&m| (m.count_ones(), m));
        faces
    }

    /// Dimension of the largest face; `None` for the void complex.
    pub fn dimension(&self) -> Option<i64> {
        self.facets.iter().map(|f| f.count_ones() as i64 - 1).max()
    }

    /// `f_vector()[d]` counts faces of dimension `d >= 0`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        let mut f = vec![0; (dim + 1).max(0) as usize];
        for face in self.faces() {
            let size = face.count_ones() as usize;
            if size > 0 {
                f[size - 1] += 1;
            }
        }
        f
    }

    /// `-1 + Σ (-1)^d f_d`; zero for the void complex.
    pub fn reduced_euler(&self) -> i64 {
        if self.is_void() {
            return 0;
        }
        self.f_vector()
            .iter()
            .enumerate()
            .fold(-1i64, |acc, (d, &f)| if d % 2 == 0 { acc + f as i64 } else { acc - f as i64 })
    }

    fn require_face(&self, face: &[usize]) -> Result<Face> {
        if self.contains(face) {
            Ok(mask_of(face))
        } else {
            Err(Error::NotAFace)
        }
    }

    fn sub_ground(&self, keep: Face) -> (Vec<String>, impl Fn(Face) -> Face) {
        let kept = indices_of(keep);
        let names = kept.iter().map(|&i| self.vertices[i].clone()).collect();
        let remap = move |mask: Face| {
            kept.iter()
                .enumerate()
                .filter(|(_, &old)| mask & (1u128 << old) != 0)
                .fold(0, |m, (new, _)| m | (1u128 << new))
        };
        (names, remap)
    }

    /// Faces disjoint from `face`, on the ground set minus `face`.
    pub fn deletion(&self, face: &[usize]) -> Result<Self> {
        let f = self.require_face(face)?;
        let keep = full_mask(self.vertex_count()) & !f;
        let (names, remap) = self.sub_ground(keep);
        let masks = self.facets.iter().map(|&g| remap(g & !f)).collect();
        Ok(Self::from_masks(names, masks))
    }

    /// Faces `G` with `face ∪ G` a face; same ground set.
    pub fn star(&self, face: &[usize]) -> Result<Self> {
        let f = self.require_face(face)?;
        let masks = self.facets.iter().copied().filter(|&g| g & f == f).collect();
        Ok(Self::from_masks(self.vertices.clone(), masks))
    }

    /// Faces of the star disjoint from `face`, on the ground set minus `face`.
    pub fn link(&self, face: &[usize]) -> Result<Self> {
        let f = self.require_face(face)?;
        let keep = full_mask(self.vertex_count()) & !f;
        let (names, remap) = self.sub_ground(keep);
        let masks = self.facets.iter().filter(|&&g| g & f == f).map(|&g| remap(g & !f)).collect();
        Ok(Self::from_masks(names, masks))
    }

    /// Induced subcomplex on the given vertices.
    pub fn induced(&self, subset: &[usize]) -> Result<Self> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.vertex_count()) {
            return Err(Error::UnknownElement(format!("vertex #{bad}")));
        }
        let keep = mask_of(subset);
        let (names, remap) = self.sub_ground(keep);
        let masks = self.facets.iter().map(|&g| remap(g & keep)).collect();
        Ok(Self::from_masks(names, masks))
    }

    /// Join on the disjoint union of the ground sets.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        let mine: HashSet<&str> = self.vertices.iter().map(String::as_str).collect();
        if let Some(shared) = other.vertices.iter().find(|v| mine.contains(v.as_str())) {
            return Err(Error::GroundSetOverlap(shared.clone()));
        }
        let n = self.vertex_count();
        let total = n + other.vertex_count();
        if total > MAX_VERTICES {
            return Err(Error::TooLarge { what: "simplicial complex ground set", size: total, limit: MAX_VERTICES });
        }
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let masks = self.facets.iter().flat_map(|&f| other.facets.iter().map(move |&g| f | (g << n))).collect();
        Ok(Self::from_masks(vertices, masks))
    }

    /// `{apex} * self`.
    pub fn cone(&self, apex: &str) -> Result<Self> {
        self.join(&Self::full_simplex(vec![apex.to_string()])?)
    }

    /// `{north, south} * self` with the two new points discrete.
    pub fn suspension(&self, north: &str, south: &str) -> Result<Self> {
        let poles = Self::from_facets(vec![north.to_string(), south.to_string()], vec![vec![0], vec![1]])?;
        self.join(&poles)
    }

    /// Every subset of the ground set is a face.
    pub fn is_full_simplex(&self) -> bool {
        self.facets == [full_mask(self.vertex_count())]
    }

    /// Faces are exactly the proper subsets of a nonempty ground set.
    pub fn is_simplex_boundary(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.facets.len() != n {
            return false;
        }
        let full = full_mask(n);
        self.facets.iter().all(|&f| f.count_ones() as usize == n - 1 && f & full == f)
    }

    /// Every facet has dimension `d`; false for the void complex.
    pub fn is_pure(&self, d: i64) -> bool {
        !self.is_void() && self.facets.iter().all(|f| f.count_ones() as i64 - 1 == d)
    }

    /// Reduced Betti number in degree -1 (nonzero only for `{∅}`).
    pub fn reduced_betti_minus_one(&self) -> u64 {
        u64::from(self.facets == [0])
    }

    /// Reduced rational Betti numbers in degrees `0..=dim`.
    pub fn betti_rational(&self) -> Vec<u64> {
        let Some(dim) = self.dimension() else {
            return Vec::new();
        };
        if dim < 0 {
            return Vec::new();
        }
        let dim = dim as usize;
        // faces_by_size[k] = faces with k vertices, k = 0 ..= dim + 1.
        let mut faces_by_size: Vec<Vec<Face>> = vec![Vec::new(); dim + 2];
        for face in self.faces() {
            faces_by_size[face.count_ones() as usize].push(face);
        }
        // rank of the boundary from size-k faces to size-(k-1) faces; the
        // k = 1 map is the augmentation onto the empty face.
        let mut ranks = vec![0usize; dim + 3];
        for k in 1..=dim + 1 {
            ranks[k] = boundary_rank(&faces_by_size[k], &faces_by_size[k - 1]);
        }
        (0..=dim)
            .map(|d| {
                let chains = faces_by_size[d + 1].len();
                (chains - ranks[d + 1] - ranks[d + 2]) as u64
            })
            .collect()
    }

    /// Summary of reduced rational homology.
    pub fn homology_type(&self) -> HomologyType {
        if self.is_void() {
            return HomologyType::Acyclic;
        }
        let mut betti: Vec<(i64, u64)> = vec![(-1, self.reduced_betti_minus_one())];
        betti.extend(self.betti_rational().into_iter().enumerate().map(|(d, b)| (d as i64, b)));
        let nonzero: Vec<(i64, u64)> = betti.into_iter().filter(|&(_, b)| b != 0).collect();
        match nonzero.as_slice() {
            [] => HomologyType::Acyclic,
            [(d, 1)] => HomologyType::Sphere(*d),
            _ => HomologyType::Other,
        }
    }

    /// Isomorphism test with the default vertex bound.
    pub fn isomorphic(&self, other: &SimplicialComplex) -> Result<bool> {
        self.isomorphic_within(other, DEFAULT_ISOMORPHISM_BOUND)
    }

    /// True iff some bijection of ground sets maps faces onto faces.
    pub fn isomorphic_within(&self, other: &SimplicialComplex, bound: usize) -> Result<bool> {
        let n = self.vertex_count();
        for size in [n, other.vertex_count()] {
            if size > bound {
                return Err(Error::TooLarge { what: "isomorphism ground set", size, limit: bound });
            }
        }
        if n != other.vertex_count() || self.facets.len() != other.facets.len() {
            return Ok(false);
        }
        let sizes = |c: &SimplicialComplex| {
            let mut s: Vec<u32> = c.facets.iter().map(|f| f.count_ones()).collect();
            s.sort_unstable();
            s
        };
        if sizes(self) != sizes(other) {
            return Ok(false);
        }
        let signature = |c: &SimplicialComplex, v: usize| {
            let mut s: Vec<u32> = c.facets.iter().filter(|&&f| f & (1u128 << v) != 0).map(|f| f.count_ones()).collect();
            s.sort_unstable();
            s
        };
        let mine: Vec<Vec<u32>> = (0..n).map(|v| signature(self, v)).collect();
        let theirs: Vec<Vec<u32>> = (0..n).map(|v| signature(other, v)).collect();
        let mut a = mine.clone();
        let mut b = theirs.clone();
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
        let adjacency = |c: &SimplicialComplex| -> Vec<Face> {
            (0..n).map(|v| c.facets.iter().filter(|&&f| f & (1u128 << v) != 0).fold(0, |m, &f| m | f)).collect()
        };
        let search = IsoSearch {
            source: self,
            target: other,
            mine,
            theirs,
            adj_source: adjacency(self),
            adj_target: adjacency(other),
            target_facets: other.facets.iter().copied().collect(),
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(search.mine[v].len()));
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        Ok(search.extend(&order, 0, &mut image, &mut used))
    }
}

struct IsoSearch<'a> {
    source: &'a SimplicialComplex,
    target: &'a SimplicialComplex,
    mine: Vec<Vec<u32>>,
    theirs: Vec<Vec<u32>>,
    adj_source: Vec<Face>,
    adj_target: Vec<Face>,
    target_facets: BTreeSet<Face>,
}

impl IsoSearch<'_> {
    fn extend(&self, order: &[usize], depth: usize, image: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&v) = order.get(depth) else {
            return self.source.facets.iter().all(|&f| {
                let mapped = indices_of(f).into_iter().fold(0u128, |m, i| m | (1u128 << image[i]));
                self.target_facets.contains(&mapped)
            });
        };
        for cand in 0..self.target.vertex_count() {
            if used[cand] || self.theirs[cand] != self.mine[v] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let here = self.adj_source[v] & (1u128 << u) != 0;
                let there = self.adj_target[cand] & (1u128 << image[u]) != 0;
                here == there
            });
            if !consistent {
                continue;
            }
            image[v] = cand;
            used[cand] = true;
            if self.extend(order, depth + 1, image, used) {
                return true;
            }
            used[cand] = false;
        }
        false
    }
}

/// Rank over the rationals of the simplicial boundary map from `faces` to
/// `facets_below` (faces one vertex smaller).
fn boundary_rank(faces: &[Face], below: &[Face]) -> usize {
    if faces.is_empty() || below.is_empty() {
        return 0;
    }
    let row_of: std::collections::HashMap<Face, usize> = below.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut matrix = vec![vec![0i64; faces.len()]; below.len()];
    for (col, &face) in faces.iter().enumerate() {
        for (pos, v) in indices_of(face).into_iter().enumerate() {
            let row = row_of[&(face & !(1u128 << v))];
            matrix[row][col] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    match bareiss_rank(matrix.clone()) {
        Some(rank) => rank,
        None => {
            let big = matrix.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect();
            bareiss_rank(big).expect("arbitrary precision never overflows")
        }
    }
}

/// Fraction-free Gaussian elimination; `None` if an intermediate value
/// overflows `T`.
pub(crate) fn bareiss_rank<T>(mut m: Vec<Vec<T>>) -> Option<usize>
where
    T: Integer + Clone + CheckedMul + CheckedSub,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = T::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let lhs = m[rank][col].checked_mul(&m[r][c])?;
                let rhs = m[r][col].checked_mul(&m[rank][c])?;
                let num = lhs.checked_sub(&rhs)?;
                m[r][c] = num.div_floor(&prev);
            }
            m[r][col] = T::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}
