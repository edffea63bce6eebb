use std::collections::BTreeSet;

use crosscut::catalog::enumerate_lattices;

/// Counts lattices on `n` labelled points up to isomorphism by trying every
/// relation on the off-diagonal pairs.
fn brute_force_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if rel[j][i] {
                    break;
                }
                rel[i][j] = true;
            }
        }
        if !is_partial_order(&rel) || !is_lattice(&rel) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][j] {
                            bits |= 1 << (p[i] * n + p[j]);
                        }
                    }
                }
                bits
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_partial_order(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                return false;
            }
            for k in 0..n {
                if rel[i][j] && rel[j][k] && !rel[i][k] {
                    return false;
                }
            }
        }
    }
    true
}

fn is_lattice(rel: &[Vec<bool>]) -> bool {
    let n = rel.len();
    let least_upper = |a: usize, b: usize| {
        let ub: Vec<usize> = (0..n).filter(|&z| rel[a][z] && rel[b][z]).collect();
        ub.iter().any(|&z| ub.iter().all(|&w| rel[z][w]))
    };
    let greatest_lower = |a: usize, b: usize| {
        let lb: Vec<usize> = (0..n).filter(|&z| rel[z][a] && rel[z][b]).collect();
        lb.iter().any(|&z| lb.iter().all(|&w| rel[w][z]))
    };
    (0..n).all(|a| (0..n).all(|b| least_upper(a, b) && greatest_lower(a, b)))
}

#[test]
fn small_counts_match_brute_force() {
    for n in 1..=4 {
        assert_eq!(enumerate_lattices(n).unwrap().len(), brute_force_count(n), "n = {n}");
    }
}

#[test]
fn five_element_count_matches_brute_force() {
    assert_eq!(brute_force_count(5), 5);
    assert_eq!(enumerate_lattices(5).unwrap().len(), 5);
}

#[test]
fn enumerated_lattices_are_pairwise_non_isomorphic() {
    for n in 1..=6 {
        let all = enumerate_lattices(n).unwrap();
        for (i, a) in all.iter().enumerate() {
            assert_eq!(a.len(), n);
            for b in &all[i + 1..] {
                assert!(!a.is_isomorphic(b));
            }
        }
    }
}

#[test]
fn seven_element_count() {
    assert_eq!(enumerate_lattices(7).unwrap().len(), 53);
}

#[test]
fn oversized_request_is_rejected() {
    assert!(enumerate_lattices(8).is_err());
}
