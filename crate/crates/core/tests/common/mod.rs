//! Helpers shared by the integration tests, including an oracle for MTL-chain
//! counts that shares no code with the library.

#![allow(dead_code)]

use rldual::algebra::{enumerate_mtl_chains, require_sbp};
use rldual::{fixtures, Algebra};

/// Product tables of every MTL-chain on `0 < … < n-1`, found by trying every
/// symmetric table below the meet with unit `n-1` and keeping the monotone,
/// associative ones.
pub fn naive_mtl_chains(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return Vec::new();
    }
    let top = n - 1;
    let cells: Vec<(usize, usize)> = (0..top)
        .flat_map(|i| (i..top).map(move |j| (i, j)))
        .collect();
    let mut choice = vec![0usize; cells.len()];
    let mut out = Vec::new();
    loop {
        let mut t = vec![vec![0; n]; n];
        t[top] = (0..n).collect();
        for (x, row) in t.iter_mut().enumerate() {
            row[top] = x;
        }
        for (&(i, j), &v) in cells.iter().zip(&choice) {
            t[i][j] = v;
            t[j][i] = v;
        }
        let monotone = (0..n).all(|x| (x..n).all(|y| (0..n).all(|z| t[x][z] <= t[y][z])));
        let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[x][t[y][z]])));
        if monotone && assoc {
            out.push(t);
        }
        // Odometer over values 0..=i for cell (i, j).
        let mut k = 0;
        loop {
            if k == cells.len() {
                return out;
            }
            if choice[k] < cells[k].0 {
                choice[k] += 1;
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Whether a chain product table satisfies `¬(x²) → (¬¬x → x) = 1` and
/// `(2x)² = 2(x²)`.
pub fn naive_is_sbp(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    let top = n - 1;
    let imp = |x: usize, y: usize| (0..n).rev().find(|&z| t[z][x] <= y).expect("0 qualifies");
    let neg = |x: usize| imp(x, 0);
    let two = |x: usize| neg(t[neg(x)][neg(x)]);
    (0..n).all(|x| {
        imp(neg(t[x][x]), imp(neg(neg(x)), x)) == top && {
            let s = two(x);
            t[s][s] == two(t[x][x])
        }
    })
}

/// Built-in fixtures followed by every MTL-chain with at most `max` elements.
pub fn corpus(max: usize) -> Vec<Algebra> {
    let mut out = fixtures::all();
    for n in 1..=max {
        out.extend(enumerate_mtl_chains(n, max).expect("within bound"));
    }
    out
}

pub fn sbp_corpus(max: usize) -> Vec<Algebra> {
    corpus(max)
        .into_iter()
        .filter(|a| require_sbp(a).is_ok())
        .collect()
}
