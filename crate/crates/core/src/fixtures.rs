//! Built-in algebras.
//!
//! Chains use their natural order on `0..n`, with `0` as bottom and `n-1` as
//! the unit. In `nm4` the elements are `0 < a < b < 1` at indices `0..4`.

use crate::algebra::{product, Algebra};

/// Names accepted by [`by_name`], in corpus order.
pub const NAMES: [&str; 8] = [
    "g3", "g4", "nm4", "nm6", "g3xg3", "nm4xg3", "bool2", "bool4",
];

/// Gödel chain: product is the minimum.
pub fn goedel_chain(n: usize) -> Algebra {
    Algebra::from_fn(
        format!("g{n}"),
        n,
        |x, y| x <= y,
        |x, y| x.min(y),
        n - 1,
        Some(0),
    )
    .expect("Gödel chain")
}

/// Gödel hoop on `n` elements (GMTL mode).
pub fn goedel_hoop(n: usize) -> Algebra {
    Algebra::from_fn(
        format!("hoop{n}"),
        n,
        |x, y| x <= y,
        |x, y| x.min(y),
        n - 1,
        None,
    )
    .expect("Gödel hoop")
}

/// Nilpotent minimum chain with involution `¬x = n-1-x`:
/// `x·y = min(x, y)` when `y > ¬x`, else `0`.
pub fn nilpotent_minimum(n: usize) -> Algebra {
    Algebra::from_fn(
        format!("nm{n}"),
        n,
        |x, y| x <= y,
        |x, y| if x + y > n - 1 { x.min(y) } else { 0 },
        n - 1,
        Some(0),
    )
    .expect("nilpotent minimum chain")
}

pub fn g3() -> Algebra {
    goedel_chain(3)
}

pub fn g4() -> Algebra {
    goedel_chain(4)
}

pub fn nm4() -> Algebra {
    nilpotent_minimum(4)
}

pub fn nm6() -> Algebra {
    nilpotent_minimum(6)
}

pub fn g3xg3() -> Algebra {
    product(&g3(), &g3()).expect("product")
}

pub fn nm4xg3() -> Algebra {
    product(&nm4(), &g3()).expect("product")
}

pub fn bool2() -> Algebra {
    goedel_chain(2).with_name("bool2")
}

pub fn bool4() -> Algebra {
    product(&bool2(), &bool2())
        .expect("product")
        .with_name("bool4")
}

/// The Heyting algebra on `0 < a, b < c < 1` (indices `0..5`, `c = a ∨ b`).
/// Distributive, bounded and integral, but not prelinear.
pub fn heyting5() -> Algebra {
    let up: [&[usize]; 5] = [&[0, 1, 2, 3, 4], &[1, 3, 4], &[2, 3, 4], &[3, 4], &[4]];
    let le = |x: usize, y: usize| up[x].contains(&y);
    let meet = |x: usize, y: usize| {
        (0..5)
            .filter(|&m| le(m, x) && le(m, y))
            .min_by_key(|&m| up[m].len())
            .expect("lower bound")
    };
    Algebra::from_fn("heyting5", 5, le, meet, 4, Some(0)).expect("Heyting algebra")
}

pub fn by_name(name: &str) -> Option<Algebra> {
    Some(match name {
        "g3" => g3(),
        "g4" => g4(),
        "nm4" => nm4(),
        "nm6" => nm6(),
        "g3xg3" => g3xg3(),
        "nm4xg3" => nm4xg3(),
        "bool2" => bool2(),
        "bool4" => bool4(),
        _ => return None,
    })
}

/// Every built-in fixture, in [`NAMES`] order.
pub fn all() -> Vec<Algebra> {
    NAMES
        .iter()
        .map(|n| by_name(n).expect("known fixture"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::classify;

    #[test]
    fn fixture_names_round_trip() {
        for (name, a) in NAMES.iter().zip(all()) {
            assert_eq!(a.name(), *name);
        }
        assert!(by_name("g5").is_none());
    }

    #[test]
    fn all_fixtures_are_sbp() {
        for a in all() {
            assert!(classify(&a).sbp.holds, "{}", a.name());
        }
    }

    #[test]
    fn odd_nilpotent_minimum_is_not_sbp() {
        let c = classify(&nilpotent_minimum(5));
        assert!(c.mtl.holds);
        assert!(!c.sbp.holds);
    }

    #[test]
    fn heyting5_meets() {
        let h = heyting5();
        assert_eq!(h.meet(1, 2), 0);
        assert_eq!(h.join(1, 2), 3);
        assert_eq!(h.residuum(1, 2), 2);
    }
}
