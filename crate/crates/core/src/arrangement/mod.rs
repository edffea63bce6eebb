//! Central hyperplane arrangements over the rationals and their chamber
//! posets.
//!
//! Normals are stored as primitive integer vectors. A positive rescaling does
//! not change any hyperplane or half-space, so sign vectors are unaffected.

mod exact;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use exact::{feasible, parse_rational, MAX_CONSTRAINTS, MAX_DIM};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<BigInt>>,
    labels: Vec<String>,
}

/// Serialized form: rationals as decimal integers or `p/q` strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrangementSpec {
    pub dim: usize,
    pub normals: Vec<Vec<String>>,
}

/// A realizable sign vector, `true` for the positive side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chamber(Vec<bool>);

impl Chamber {
    pub fn new(signs: Vec<bool>) -> Self {
        Chamber(signs)
    }

    pub fn signs(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negate(&self) -> Chamber {
        Chamber(self.0.iter().map(|s| !s).collect())
    }

    /// Hyperplanes on which the two sign vectors differ.
    pub fn separation(&self, other: &Chamber) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != other.0[i]).collect()
    }

    pub fn flip(&self, hyperplanes: &[usize]) -> Chamber {
        let mut signs = self.0.clone();
        for &h in hyperplanes {
            signs[h] = !signs[h];
        }
        Chamber(signs)
    }

    fn mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &s)| !s).fold(0, |m, (i, _)| m | 1 << i)
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Chamber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' | '−' => Ok(false),
                _ => Err(Error::Parse(format!("bad sign {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Chamber)
    }
}

fn render_form(normal: &[BigInt]) -> String {
    let var = |i: usize| {
        if normal.len() <= 3 {
            ["x", "y", "z"][i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    };
    let mut out = String::new();
    for (i, c) in normal.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        let coeff = if mag == BigInt::from(1) { String::new() } else { mag.to_string() };
        out.push_str(&format!("{sign}{coeff}{}", var(i)));
    }
    out
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<BigRational>>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::TooLarge { what: "arrangement dimension", size: dim, limit: MAX_DIM });
        }
        if normals.len() > MAX_CONSTRAINTS {
            return Err(Error::TooLarge { what: "hyperplanes", size: normals.len(), limit: MAX_CONSTRAINTS });
        }
        let mut ints = Vec::with_capacity(normals.len());
        for v in &normals {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::InvalidArrangement("zero normal vector".into()));
            }
            ints.push(exact::primitive(v));
        }
        for i in 0..ints.len() {
            for j in i + 1..ints.len() {
                if exact::rank(&[ints[i].clone(), ints[j].clone()]) < 2 {
                    return Err(Error::InvalidArrangement(format!(
                        "normals {} and {} are parallel",
                        render_form(&ints[i]),
                        render_form(&ints[j])
                    )));
                }
            }
        }
        let labels = ints.iter().map(|v| render_form(v)).collect();
        Ok(Arrangement { dim, normals: ints, labels })
    }

    pub fn from_integers(dim: usize, normals: &[Vec<i64>]) -> Result<Self> {
        let rows = normals.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        Arrangement::new(dim, rows)
    }

    pub fn from_spec(spec: &ArrangementSpec) -> Result<Self> {
        let rows = spec
            .normals
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(spec.dim, rows)
    }

    pub fn to_spec(&self) -> ArrangementSpec {
        ArrangementSpec {
            dim: self.dim,
            normals: self.normals.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    /// Hyperplane rendered as its linear form, e.g. `x+y-z`.
    pub fn label(&self, h: usize) -> &str {
        &self.labels[h]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn hyperplane_index(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn rank(&self) -> usize {
        exact::rank(&self.normals)
    }

    fn check_chamber_len(&self, c: &Chamber) -> Result<()> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: c.len() });
        }
        Ok(())
    }

    fn oriented(&self, c: &Chamber, h: usize) -> Vec<BigInt> {
        if c.0[h] {
            self.normals[h].clone()
        } else {
            self.normals[h].iter().map(|x| -x).collect()
        }
    }

    /// Whether the face with zero signs on `zero` and the signs of `c`
    /// elsewhere is nonempty.
    fn face_feasible(&self, c: &Chamber, zero: &[usize]) -> Result<bool> {
        let strict: Vec<Vec<BigInt>> =
            (0..self.len()).filter(|h| !zero.contains(h)).map(|h| self.oriented(c, h)).collect();
        let eqs: Vec<Vec<BigInt>> = zero.iter().map(|&h| self.normals[h].clone()).collect();
        feasible(&strict, &eqs, self.dim)
    }

    pub fn is_chamber(&self, c: &Chamber) -> Result<bool> {
        self.check_chamber_len(c)?;
        self.face_feasible(c, &[])
    }

    /// Chamber containing the first point `(1, t, t², …)`, `t = 2, 3, …`,
    /// that lies on no hyperplane.
    pub fn initial_chamber(&self) -> Chamber {
        let mut t = BigInt::from(2);
        loop {
            let point: Vec<BigInt> =
                std::iter::successors(Some(BigInt::from(1)), |p| Some(p * &t)).take(self.dim).collect();
            let values: Vec<BigInt> = self.normals.iter().map(|n| exact::dot(n, &point)).collect();
            if values.iter().all(|v| !v.is_zero()) {
                return Chamber(values.iter().map(Signed::is_positive).collect());
            }
            t += 1;
        }
    }

    /// Hyperplanes supporting a facet of `c`.
    pub fn walls(&self, c: &Chamber) -> Result<Vec<usize>> {
        self.check_chamber_len(c)?;
        let mut walls = Vec::new();
        for h in 0..self.len() {
            if self.face_feasible(c, &[h])? {
                walls.push(h);
            }
        }
        Ok(walls)
    }

    /// `𝒜_X` for `X` the intersection of the given hyperplanes: every
    /// hyperplane whose normal lies in the span of theirs.
    pub fn localization(&self, subset: &[usize]) -> Vec<usize> {
        let span: Vec<Vec<BigInt>> = subset.iter().map(|&h| self.normals[h].clone()).collect();
        let r = exact::rank(&span);
        (0..self.len())
            .filter(|&h| {
                let mut rows = span.clone();
                rows.push(self.normals[h].clone());
                exact::rank(&rows) == r
            })
            .collect()
    }

    /// Whether `c` is incident to the intersection of the given hyperplanes.
    pub fn incident(&self, c: &Chamber, subset: &[usize]) -> Result<bool> {
        self.check_chamber_len(c)?;
        self.face_feasible(c, &self.localization(subset))
    }

    pub fn subarrangement(&self, kept: &[usize]) -> Result<Arrangement> {
        if let Some(&h) = kept.iter().find(|&&h| h >= self.len()) {
            return Err(Error::NotSubarrangement(h));
        }
        Ok(Arrangement {
            dim: self.dim,
            normals: kept.iter().map(|&h| self.normals[h].clone()).collect(),
            labels: kept.iter().map(|&h| self.labels[h].clone()).collect(),
        })
    }

    /// The chamber of the subarrangement on `kept` containing `c`.
    pub fn restrict(&self, kept: &[usize], c: &Chamber) -> Result<Chamber> {
        self.check_chamber_len(c)?;
        if let Some(&h) = kept.iter().find(|&&h| h >= self.len()) {
            return Err(Error::NotSubarrangement(h));
        }
        Ok(Chamber(kept.iter().map(|&h| c.0[h]).collect()))
    }

    /// Wall count equals the rank and the wall normals are independent.
    pub fn is_simplicial_chamber(&self, c: &Chamber) -> Result<bool> {
        let walls = self.walls(c)?;
        let rank = self.rank();
        let rows: Vec<Vec<BigInt>> = walls.iter().map(|&h| self.normals[h].clone()).collect();
        Ok(walls.len() == rank && exact::rank(&rows) == rank)
    }

    /// All chambers, by wall-flipping search from the initial chamber.
    pub fn chambers(&self) -> Result<ChamberSet> {
        let start = self.initial_chamber();
        let mut chambers = vec![start.clone()];
        let mut walls = Vec::new();
        let mut index = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            let w = self.walls(&chambers[i])?;
            for &h in &w {
                let next = chambers[i].flip(&[h]);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), chambers.len());
                    queue.push_back(chambers.len());
                    chambers.push(next);
                }
            }
            walls.push((i, w));
        }
        walls.sort();
        let mut order: Vec<usize> = (0..chambers.len()).collect();
        order.sort_by(|&a, &b| chambers[a].cmp(&chambers[b]).reverse());
        let sorted: Vec<Chamber> = order.iter().map(|&i| chambers[i].clone()).collect();
        let walls: Vec<Vec<usize>> = order.iter().map(|&i| walls[i].1.clone()).collect();
        ChamberSet::build(self.clone(), sorted, walls)
    }
}

/// The chambers of an arrangement with their walls and the incidence of each
/// chamber with every pairwise intersection of its walls.
#[derive(Debug, Clone)]
pub struct ChamberSet {
    arrangement: Arrangement,
    chambers: Vec<Chamber>,
    masks: Vec<u64>,
    index: HashMap<Chamber, usize>,
    walls: Vec<Vec<usize>>,
    pair_incidence: Vec<HashMap<(usize, usize), bool>>,
}

/// A chamber not incident to the intersection of two of its upper walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BineighborlyViolation {
    pub chamber: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedBineighborlyViolation {
    pub chamber: String,
    pub hyperplanes: [String; 2],
}

/// A failure of one of the structural properties of chamber posets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum ChamberAxiomViolation {
    NegationFixesChamber { chamber: String },
    NegationNotOrderReversing { lower: String, upper: String },
    NotGraded { lower: String, upper: String },
    MissingFlip { chamber: String, hyperplanes: Vec<String> },
    WallsSeparatedNotOpposite { chamber: String, other: String },
    RestrictionNotMonotone { lower: String, upper: String },
}

impl ChamberSet {
    fn build(arrangement: Arrangement, chambers: Vec<Chamber>, walls: Vec<Vec<usize>>) -> Result<Self> {
        let index = chambers.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let masks = chambers.iter().map(Chamber::mask).collect();
        let pair_incidence = chambers
            .par_iter()
            .zip(walls.par_iter())
            .map(|(c, w)| {
                let mut table = HashMap::new();
                for (a, &h) in w.iter().enumerate() {
                    for &k in &w[a + 1..] {
                        table.insert((h, k), arrangement.incident(c, &[h, k])?);
                    }
                }
                Ok(table)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChamberSet { arrangement, chambers, masks, index, walls, pair_incidence })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chamber(&self, i: usize) -> &Chamber {
        &self.chambers[i]
    }

    pub fn index_of(&self, c: &Chamber) -> Result<usize> {
        self.index.get(c).copied().ok_or_else(|| Error::NotAChamber(c.to_string()))
    }

    pub fn walls(&self, i: usize) -> &[usize] {
        &self.walls[i]
    }

    pub fn negate(&self, i: usize) -> usize {
        self.index[&self.chambers[i].negate()]
    }

    pub fn separation(&self, i: usize, j: usize) -> Vec<usize> {
        self.chambers[i].separation(&self.chambers[j])
    }

    fn separation_mask(&self, i: usize, j: usize) -> u64 {
        self.masks[i] ^ self.masks[j]
    }

    /// `|S(c₀, c)|` for every chamber `c`.
    pub fn ranks(&self, base: usize) -> Vec<usize> {
        (0..self.len()).map(|i| self.separation_mask(base, i).count_ones() as usize).collect()
    }

    /// Chambers ordered by inclusion of separation sets from `base`, named by
    /// sign vector.
    pub fn poset(&self, base: usize) -> Result<FinitePoset> {
        let names: Vec<String> = self.chambers.iter().map(ToString::to_string).collect();
        let sep: Vec<u64> = (0..self.len()).map(|i| self.separation_mask(base, i)).collect();
        FinitePoset::from_relation(names, |i, j| sep[i] & !sep[j] == 0)
    }

    pub fn upper_walls(&self, base: usize, i: usize) -> Vec<usize> {
        let sep = self.separation_mask(base, i);
        self.walls[i].iter().copied().filter(|&h| sep & (1 << h) == 0).collect()
    }

    pub fn incident(&self, i: usize, subset: &[usize]) -> Result<bool> {
        if let [h, k] = subset {
            let key = if h < k { (*h, *k) } else { (*k, *h) };
            if let Some(&v) = self.pair_incidence[i].get(&key) {
                return Ok(v);
            }
        }
        self.arrangement.incident(&self.chambers[i], subset)
    }

    pub fn bineighborly_violations(&self, base: usize) -> Vec<BineighborlyViolation> {
        let mut out = Vec::new();
        for c in 0..self.len() {
            let upper = self.upper_walls(base, c);
            for (a, &h) in upper.iter().enumerate() {
                for &k in &upper[a + 1..] {
                    if !self.pair_incidence[c][&(h, k)] {
                        out.push(BineighborlyViolation { chamber: c, first: h, second: k });
                    }
                }
            }
        }
        out
    }

    pub fn bineighborly_violation(&self, base: usize) -> Option<BineighborlyViolation> {
        self.bineighborly_violations(base).into_iter().next()
    }

    pub fn is_bineighborly(&self, base: usize) -> bool {
        self.bineighborly_violation(base).is_none()
    }

    pub fn name_violation(&self, v: &BineighborlyViolation) -> NamedBineighborlyViolation {
        NamedBineighborlyViolation {
            chamber: self.chambers[v.chamber].to_string(),
            hyperplanes: [self.arrangement.label(v.first).into(), self.arrangement.label(v.second).into()],
        }
    }

    pub fn is_simplicial(&self, i: usize) -> bool {
        let rank = self.arrangement.rank();
        let rows: Vec<Vec<BigInt>> = self.walls[i].iter().map(|&h| self.arrangement.normals[h].clone()).collect();
        self.walls[i].len() == rank && exact::rank(&rows) == rank
    }

    pub fn all_simplicial(&self) -> bool {
        (0..self.len()).all(|i| self.is_simplicial(i))
    }

    /// Negation is a free order-reversing involution and covers raise
    /// `|S(c₀, ·)|` by one.
    pub fn base_axiom_violation(&self, base: usize) -> Result<Option<ChamberAxiomViolation>> {
        let name = |i: usize| self.chambers[i].to_string();
        let poset = self.poset(base)?;
        let ranks = self.ranks(base);
        for i in 0..self.len() {
            let ni = self.negate(i);
            if ni == i || self.negate(ni) != i {
                return Ok(Some(ChamberAxiomViolation::NegationFixesChamber { chamber: name(i) }));
            }
            for j in poset.up_set(i).ones() {
                if !poset.leq(self.negate(j), ni) {
                    return Ok(Some(ChamberAxiomViolation::NegationNotOrderReversing {
                        lower: name(i),
                        upper: name(j),
                    }));
                }
            }
            for &j in poset.upper_covers(i) {
                if ranks[j] != ranks[i] + 1 {
                    return Ok(Some(ChamberAxiomViolation::NotGraded { lower: name(i), upper: name(j) }));
                }
            }
        }
        Ok(None)
    }

    /// Incidence with `X` yields the chamber flipped on `𝒜_X` (tested for
    /// every `X` cut out by at most two hyperplanes), and walls contained in a
    /// separation set force the opposite chamber.
    pub fn base_free_axiom_violation(&self) -> Result<Option<ChamberAxiomViolation>> {
        let arr = &self.arrangement;
        let n = arr.len();
        let mut subsets: Vec<Vec<usize>> = (0..n).map(|h| vec![h]).collect();
        for h in 0..n {
            for k in h + 1..n {
                subsets.push(vec![h, k]);
            }
        }
        for i in 0..self.len() {
            for s in &subsets {
                if self.incident(i, s)? {
                    let local = arr.localization(s);
                    if !self.index.contains_key(&self.chambers[i].flip(&local)) {
                        return Ok(Some(ChamberAxiomViolation::MissingFlip {
                            chamber: self.chambers[i].to_string(),
                            hyperplanes: local.iter().map(|&h| arr.label(h).to_string()).collect(),
                        }));
                    }
                }
            }
            let wall_mask = self.walls[i].iter().fold(0u64, |m, &h| m | 1 << h);
            for j in 0..self.len() {
                if self.separation_mask(i, j) & wall_mask == wall_mask && j != self.negate(i) {
                    return Ok(Some(ChamberAxiomViolation::WallsSeparatedNotOpposite {
                        chamber: self.chambers[i].to_string(),
                        other: self.chambers[j].to_string(),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Restriction to the subarrangement on `kept` (with chamber set `sub`)
    /// is order-preserving from the poset based at `base`.
    pub fn restriction_violation(
        &self,
        sub: &ChamberSet,
        kept: &[usize],
        base: usize,
    ) -> Result<Option<ChamberAxiomViolation>> {
        let restrict =
            |i: usize| -> Result<usize> { sub.index_of(&self.arrangement.restrict(kept, &self.chambers[i])?) };
        let images: Vec<usize> = (0..self.len()).map(restrict).collect::<Result<_>>()?;
        let sub_base = images[base];
        let poset = self.poset(base)?;
        for i in 0..self.len() {
            for j in poset.up_set(i).ones() {
                let (a, b) = (images[i], images[j]);
                let sa = sub.separation_mask(sub_base, a);
                let sb = sub.separation_mask(sub_base, b);
                if sa & !sb != 0 {
                    return Ok(Some(ChamberAxiomViolation::RestrictionNotMonotone {
                        lower: self.chambers[i].to_string(),
                        upper: self.chambers[j].to_string(),
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// `{x_i − x_j : 1 ≤ i < j ≤ n}` in `n` coordinates.
pub fn braid(n: usize) -> Result<Arrangement> {
    let mut normals = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[j] = -1;
            normals.push(v);
        }
    }
    Arrangement::from_integers(n, &normals)
}

/// Random central arrangement of `count` planes in three coordinates with
/// rank 3 and small integer normals.
pub fn random_rank3(seed: u64, count: usize) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut normals: Vec<Vec<i64>> = Vec::new();
        let mut attempts = 0;
        while normals.len() < count && attempts < 1000 {
            attempts += 1;
            let v: Vec<i64> = (0..3).map(|_| rng.random_range(-2..=2)).collect();
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            let parallel = normals.iter().any(|w| {
                let rows = [w.iter().map(|&x| BigInt::from(x)).collect(), v.iter().map(|&x| BigInt::from(x)).collect()];
                exact::rank(&rows) < 2
            });
            if !parallel {
                normals.push(v);
            }
        }
        let arr = Arrangement::from_integers(3, &normals)?;
        if arr.len() == count && arr.rank() == 3 {
            return Ok(arr);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_lines() -> Arrangement {
        Arrangement::from_integers(2, &[vec![0, 1], vec![4, -3], vec![4, 3]]).unwrap()
    }

    fn prism() -> Arrangement {
        Arrangement::from_integers(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1], vec![1, 1, -1]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(Arrangement::from_integers(2, &[vec![0, 0]]), Err(Error::InvalidArrangement(_))));
        assert!(matches!(
            Arrangement::from_integers(2, &[vec![1, 2], vec![-2, -4]]),
            Err(Error::InvalidArrangement(_))
        ));
        assert!(matches!(Arrangement::from_integers(2, &[vec![1, 2, 3]]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn labels_render_linear_forms() {
        assert_eq!(prism().labels(), &["x", "y", "x+y+z", "x+y-z"]);
        assert_eq!(braid(4).unwrap().label(0), "x1-x2");
        let half =
            Arrangement::new(2, vec![vec![parse_rational("1/2").unwrap(), parse_rational("-3").unwrap()]]).unwrap();
        assert_eq!(half.label(0), "x-6y");
    }

    #[test]
    fn chamber_counts() {
        let one = Arrangement::from_integers(3, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(one.chambers().unwrap().len(), 2);
        assert_eq!(three_lines().chambers().unwrap().len(), 6);
        assert_eq!(braid(4).unwrap().chambers().unwrap().len(), 24);
        assert_eq!(prism().chambers().unwrap().len(), 14);
    }

    #[test]
    fn separation_and_negation() {
        let cs = three_lines().chambers().unwrap();
        for i in 0..cs.len() {
            assert!(cs.separation(i, i).is_empty());
            assert_eq!(cs.separation(i, cs.negate(i)).len(), 3);
            for &h in cs.walls(i) {
                let j = cs.index_of(&cs.chamber(i).flip(&[h])).unwrap();
                assert_eq!(cs.separation(i, j), vec![h]);
            }
        }
    }

    #[test]
    fn planar_chamber_posets_are_hexagons() {
        let cs = three_lines().chambers().unwrap();
        for base in 0..cs.len() {
            let p = cs.poset(base).unwrap();
            assert_eq!(p.len(), 6);
            assert_eq!(p.cover_count(), 6);
            assert_eq!(cs.walls(base).len(), 2);
            assert_eq!(cs.upper_walls(base, base), cs.walls(base));
            assert!(cs.is_bineighborly(base));
            assert_eq!(cs.base_axiom_violation(base).unwrap(), None);
        }
        assert_eq!(cs.base_free_axiom_violation().unwrap(), None);
    }

    #[test]
    fn prism_chamber_fails_bineighborliness() {
        let arr = prism();
        let c: Chamber = "++++".parse().unwrap();
        assert_eq!(arr.walls(&c).unwrap(), vec![0, 1, 2, 3]);
        assert!(!arr.incident(&c, &[2, 3]).unwrap());
        assert!(arr.incident(&c, &[0, 2]).unwrap());
        assert!(!arr.is_simplicial_chamber(&c).unwrap());
        let cs = arr.chambers().unwrap();
        let base = cs.index_of(&c).unwrap();
        let named: Vec<_> = cs.bineighborly_violations(base).iter().map(|v| cs.name_violation(v)).collect();
        assert!(named.iter().any(|v| v.chamber == "++++" && v.hyperplanes == ["x+y+z", "x+y-z"]));
        assert_eq!(cs.base_free_axiom_violation().unwrap(), None);
    }

    #[test]
    fn restriction_is_identity_on_the_whole_arrangement() {
        let arr = three_lines();
        let c = arr.initial_chamber();
        assert_eq!(arr.restrict(&[0, 1, 2], &c).unwrap(), c);
        assert!(matches!(arr.restrict(&[5], &c), Err(Error::NotSubarrangement(5))));
        let full = arr.chambers().unwrap();
        let sub = arr.subarrangement(&[0, 2]).unwrap().chambers().unwrap();
        for base in 0..full.len() {
            assert_eq!(full.restriction_violation(&sub, &[0, 2], base).unwrap(), None);
        }
    }

    #[test]
    fn random_arrangements_are_reproducible() {
        let a = random_rank3(11, 5).unwrap();
        assert_eq!(a, random_rank3(11, 5).unwrap());
        assert_eq!(a.rank(), 3);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn spec_round_trip() {
        let spec = ArrangementSpec {
            dim: 3,
            normals: vec![vec!["1".into(), "0".into(), "0".into()], vec!["2/3".into(), "1".into(), "0".into()]],
        };
        let arr = Arrangement::from_spec(&spec).unwrap();
        assert_eq!(arr.to_spec().normals[1], vec!["2", "3", "0"]);
        assert_eq!(Arrangement::from_spec(&arr.to_spec()).unwrap(), arr);
    }
}
