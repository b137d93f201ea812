//! Backtracking isomorphism search over finite relational structures.
//!
//! A structure is a carrier `0..n` with unary colours, binary relations and
//! partial binary operations. Algebras and residuated spaces are both encoded
//! this way so that every isomorphism check shares one engine.

use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Structure {
    pub size: usize,
    pub colors: Vec<u64>,
    /// Each relation is a flat `size * size` table.
    pub relations: Vec<Vec<bool>>,
    /// Each operation is a flat `size * size` table of optional results.
    pub operations: Vec<Vec<Option<usize>>>,
}

impl Structure {
    pub fn new(size: usize) -> Self {
        Structure {
            size,
            colors: vec![0; size],
            relations: Vec::new(),
            operations: Vec::new(),
        }
    }

    /// Folds relation degrees and operation statistics into the colours.
    fn refined_colors(&self) -> Vec<u64> {
        let n = self.size;
        (0..n)
            .map(|i| {
                let mut h = self.colors[i].wrapping_mul(0x9E37_79B9_7F4A_7C15);
                for r in &self.relations {
                    let out = (0..n).filter(|&j| r[i * n + j]).count() as u64;
                    let inc = (0..n).filter(|&j| r[j * n + i]).count() as u64;
                    h = mix(h, out);
                    h = mix(h, inc);
                    h = mix(h, r[i * n + i] as u64);
                }
                for op in &self.operations {
                    let defined = (0..n).filter(|&j| op[i * n + j].is_some()).count() as u64;
                    let hits = (0..n * n).filter(|&k| op[k] == Some(i)).count() as u64;
                    let square = match op[i * n + i] {
                        Some(j) if j == i => 2,
                        Some(_) => 1,
                        None => 0,
                    };
                    h = mix(h, defined);
                    h = mix(h, hits);
                    h = mix(h, square);
                }
                h
            })
            .collect()
    }
}

fn mix(h: u64, v: u64) -> u64 {
    (h ^ v.wrapping_add(0x51_7CC1_B727_220A))
        .rotate_left(23)
        .wrapping_mul(0x2545_F491_4F6C_DD1D)
}

/// Returns some isomorphism `a -> b` as an index map, if one exists.
pub fn find(a: &Structure, b: &Structure) -> Option<Vec<usize>> {
    let mut found = None;
    search(a, b, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

/// Returns every isomorphism `a -> b`.
pub fn find_all(a: &Structure, b: &Structure) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    search(a, b, &mut |m| {
        all.push(m.to_vec());
        false
    });
    all
}

fn compatible_shapes(a: &Structure, b: &Structure) -> bool {
    a.size == b.size
        && a.relations.len() == b.relations.len()
        && a.operations.len() == b.operations.len()
}

/// Calls `visit` on each isomorphism until it returns `true`.
fn search(a: &Structure, b: &Structure, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if !compatible_shapes(a, b) {
        return;
    }
    let ca = a.refined_colors();
    let cb = b.refined_colors();
    let mut hist: HashMap<u64, isize> = HashMap::new();
    for &c in &ca {
        *hist.entry(c).or_default() += 1;
    }
    for &c in &cb {
        *hist.entry(c).or_default() -= 1;
    }
    if hist.values().any(|&v| v != 0) {
        return;
    }
    let n = a.size;
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| ca[i] == cb[j]).collect())
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    step(a, b, &candidates, 0, &mut map, &mut used, visit);
}

fn step(
    a: &Structure,
    b: &Structure,
    candidates: &[Vec<usize>],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = a.size;
    if i == n {
        return full_check(a, b, map) && visit(map);
    }
    for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        map[i] = j;
        if consistent(a, b, map, i) {
            used[j] = true;
            if step(a, b, candidates, i + 1, map, used, visit) {
                return true;
            }
            used[j] = false;
        }
        map[i] = usize::MAX;
    }
    false
}

/// Checks all facts involving `i` and already-mapped indices.
fn consistent(a: &Structure, b: &Structure, map: &[usize], i: usize) -> bool {
    let n = a.size;
    let image = |x: Option<usize>| x.map(|k| map[k]);
    for k in 0..=i {
        let (fi, fk) = (map[i], map[k]);
        for (ra, rb) in a.relations.iter().zip(&b.relations) {
            if ra[i * n + k] != rb[fi * n + fk] || ra[k * n + i] != rb[fk * n + fi] {
                return false;
            }
        }
        for (oa, ob) in a.operations.iter().zip(&b.operations) {
            for (x, y, fx, fy) in [(i, k, fi, fk), (k, i, fk, fi)] {
                match (oa[x * n + y], ob[fx * n + fy]) {
                    (None, None) => {}
                    (Some(r), Some(s)) => {
                        if r <= i && image(Some(r)) != Some(s) {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
    }
    true
}

fn full_check(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    let n = a.size;
    for x in 0..n {
        for y in 0..n {
            let (fx, fy) = (map[x], map[y]);
            for (ra, rb) in a.relations.iter().zip(&b.relations) {
                if ra[x * n + y] != rb[fx * n + fy] {
                    return false;
                }
            }
            for (oa, ob) in a.operations.iter().zip(&b.operations) {
                if oa[x * n + y].map(|r| map[r]) != ob[fx * n + fy] {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Structure {
        let mut s = Structure::new(n);
        s.relations
            .push((0..n * n).map(|k| k / n <= k % n).collect());
        s
    }

    #[test]
    fn chains_are_rigid() {
        let all = find_all(&chain(4), &chain(4));
        assert_eq!(all, vec![vec![0, 1, 2, 3]]);
        assert!(find(&chain(3), &chain(4)).is_none());
    }

    #[test]
    fn antichain_has_all_permutations() {
        let mut s = Structure::new(3);
        s.relations.push((0..9).map(|k| k / 3 == k % 3).collect());
        assert_eq!(find_all(&s, &s).len(), 6);
    }
}
