//! Exact rational linear algebra and strict homogeneous feasibility.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::simplicial::bareiss_rank;

/// Largest ambient dimension accepted by the feasibility oracle.
pub const MAX_DIM: usize = 5;
/// Largest number of constraints accepted by the feasibility oracle.
pub const MAX_CONSTRAINTS: usize = 12;

/// Parses a decimal integer or a `p/q` fraction.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => text.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
    }
}

/// Positive rescaling of a rational vector to a primitive integer vector.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    normalize(ints)
}

fn normalize(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    bareiss_rank(rows.to_vec()).expect("arbitrary precision never overflows")
}

/// Integer basis of `{x : <b, x> = 0 for every row b}`.
pub fn nullspace(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for cell in m[row].iter_mut() {
            *cell = &*cell * &inv;
        }
        let pivot_row = m[row].clone();
        for (r, target) in m.iter_mut().enumerate() {
            if r != row && !target[col].is_zero() {
                let f = target[col].clone();
                for (cell, p) in target.iter_mut().zip(&pivot_row) {
                    *cell -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); dim];
            v[free] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Whether some `x` has `<a, x> > 0` for every strict row and `<b, x> = 0`
/// for every equality row.
pub fn feasible(strict: &[Vec<BigInt>], equalities: &[Vec<BigInt>], dim: usize) -> Result<bool> {
    if dim > MAX_DIM {
        return Err(Error::TooLarge { what: "feasibility dimension", size: dim, limit: MAX_DIM });
    }
    if strict.len() > MAX_CONSTRAINTS {
        return Err(Error::TooLarge { what: "strict constraints", size: strict.len(), limit: MAX_CONSTRAINTS });
    }
    for row in strict.iter().chain(equalities) {
        if row.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
    }
    let basis = nullspace(equalities, dim);
    let rows: Vec<Vec<BigInt>> = strict.iter().map(|a| normalize(basis.iter().map(|b| dot(a, b)).collect())).collect();
    Ok(fourier_motzkin(rows, basis.len()))
}

fn fourier_motzkin(mut rows: Vec<Vec<BigInt>>, vars: usize) -> bool {
    for var in 0..vars {
        rows.sort();
        rows.dedup();
        if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r[var].is_positive() {
                pos.push(r);
            } else if r[var].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (q[var].abs(), p[var].clone());
                let combined: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &a * x + &b * y).collect();
                rest.push(normalize(combined));
            }
        }
        rows = rest;
    }
    rows.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn opposite_halfspaces_are_infeasible() {
        assert!(!feasible(&[v(&[1]), v(&[-1])], &[], 1).unwrap());
    }

    #[test]
    fn quadrant_is_feasible() {
        assert!(feasible(&[v(&[1, 0]), v(&[0, 1])], &[], 2).unwrap());
    }

    #[test]
    fn prism_face_on_diagonal_is_empty() {
        let strict = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 1]), v(&[1, 1, -1])];
        assert!(!feasible(&strict, &[v(&[1, 1, 0])], 3).unwrap());
        assert!(feasible(&strict, &[], 3).unwrap());
    }

    #[test]
    fn equality_alone_forcing_zero() {
        assert!(!feasible(&[v(&[1, 1])], &[v(&[1, 0]), v(&[0, 1])], 2).unwrap());
        assert!(feasible(&[], &[v(&[1, 0]), v(&[0, 1])], 2).unwrap());
    }

    #[test]
    fn three_variable_cone_needs_elimination() {
        // x > 0, y > 0, z > 0, z > x + y, 2x + 2y > z
        let strict = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[-1, -1, 1]), v(&[2, 2, -1])];
        assert!(feasible(&strict, &[], 3).unwrap());
        let tight = [v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[-1, -1, 1]), v(&[1, 1, -1])];
        assert!(!feasible(&tight, &[], 3).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(feasible(&[v(&[1, 0])], &[], 3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn parsing_and_primitive_scaling() {
        let r = parse_rational(" -3/6 ").unwrap();
        assert_eq!(r, BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let p = primitive(&[parse_rational("1/2").unwrap(), parse_rational("-3/4").unwrap()]);
        assert_eq!(p, v(&[2, -3]));
    }

    #[test]
    fn nullspace_and_rank() {
        let rows = [v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0])];
        let ns = nullspace(&rows, 4);
        assert_eq!(ns.len(), 2);
        for b in &ns {
            for r in &rows {
                assert!(dot(r, b).is_zero());
            }
        }
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[v(&[1, 2]), v(&[2, 4])]), 1);
    }
}
