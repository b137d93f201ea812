//! Enumeration of all MTL-chains on a finite chain.

use super::{Algebra, AlgebraError};

pub const DEFAULT_CHAIN_BOUND: usize = 6;

/// Every commutative, associative, monotone, integral product on the chain
/// `0 < 1 < … < n-1` with unit `n-1`, in lexicographic order of the tables.
pub fn enumerate_mtl_chains(n: usize, bound: usize) -> Result<Vec<Algebra>, AlgebraError> {
    if n > bound {
        return Err(AlgebraError::BoundExceeded {
            requested: n,
            bound,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let top = n - 1;
    // Free entries are (i, j) with 1 <= i <= j < top; the rest is forced.
    let cells: Vec<(usize, usize)> = (1..top)
        .flat_map(|i| (i..top).map(move |j| (i, j)))
        .collect();
    let mut table = vec![vec![0usize; n]; n];
    for (x, row) in table.iter_mut().enumerate() {
        row[top] = x;
    }
    table[top] = (0..n).collect();
    let mut out = Vec::new();
    fill(&cells, 0, &mut table, &mut |t| {
        if associative(t) {
            let name = format!("chain{n}_{}", out.len() + 1);
            let alg = Algebra::from_fn(name, n, |x, y| x <= y, |x, y| t[x][y], top, Some(0))
                .expect("enumerated chain tables are valid");
            out.push(alg);
        }
    });
    Ok(out)
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    t: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&Vec<Vec<usize>>),
) {
    let Some(&(i, j)) = cells.get(k) else {
        emit(t);
        return;
    };
    // Monotone in both arguments: at least the entries to the left and below.
    let lo = t[i - 1][j].max(t[i][j - 1]);
    for v in lo..=i {
        t[i][j] = v;
        t[j][i] = v;
        fill(cells, k + 1, t, emit);
    }
}

fn associative(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
}
