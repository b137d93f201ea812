//! Subalgebras, the radical, nuclei and the bottom/product constructions.

use std::fmt;

use super::classify::{sbp_cx, semilinear_cx};
use super::{Algebra, AlgebraError, AlgebraSpec, Mode, UnaryTable, MAX_ELEMENTS};
use crate::subset::Subset;

/// A subalgebra together with its embedding into the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub algebra: Algebra,
    /// `embedding[i]` is the ambient index of element `i`.
    pub embedding: Vec<usize>,
}

impl Subalgebra {
    pub fn carrier(&self) -> Subset {
        self.embedding.iter().copied().collect()
    }

    /// Position of an ambient element inside the subalgebra.
    pub fn index_of(&self, ambient: usize) -> Option<usize> {
        self.embedding.iter().position(|&e| e == ambient)
    }

    /// Ambient image of a set of subalgebra elements.
    pub fn lift(&self, s: Subset) -> Subset {
        s.map(|i| self.embedding[i])
    }

    /// Subalgebra elements whose ambient images lie in `s`.
    pub fn pull(&self, s: Subset) -> Subset {
        (0..self.embedding.len())
            .filter(|&i| s.contains(self.embedding[i]))
            .collect()
    }
}

fn closure_failure(a: &Algebra, detail: String) -> AlgebraError {
    AlgebraError::ClosureFailure {
        name: a.name().to_string(),
        detail,
    }
}

/// Restricts `a` to `members`, inheriting ·, ∧, ∨, → and 1; `zero` selects the
/// bottom constant of the result (absent for GMTL mode).
pub fn restrict(
    a: &Algebra,
    members: Subset,
    name: impl Into<String>,
    zero: Option<usize>,
) -> Result<Subalgebra, AlgebraError> {
    let emb = members.to_vec();
    if !members.contains(a.one()) {
        return Err(closure_failure(a, "one is missing".into()));
    }
    if let Some(z) = zero.filter(|&z| !members.contains(z)) {
        return Err(closure_failure(a, format!("bottom {z} is missing")));
    }
    for &x in &emb {
        for &y in &emb {
            for (op, v) in [
                ("·", a.mul(x, y)),
                ("∧", a.meet(x, y)),
                ("∨", a.join(x, y)),
                ("→", a.residuum(x, y)),
            ] {
                if !members.contains(v) {
                    return Err(closure_failure(
                        a,
                        format!("{x}{op}{y} = {v} leaves the subset"),
                    ));
                }
            }
        }
    }
    let pos = |v: usize| emb.iter().position(|&e| e == v).expect("closed");
    let spec = AlgebraSpec {
        name: name.into(),
        leq: emb
            .iter()
            .map(|&x| emb.iter().map(|&y| a.le(x, y)).collect())
            .collect(),
        mul: emb
            .iter()
            .map(|&x| emb.iter().map(|&y| pos(a.mul(x, y))).collect())
            .collect(),
        one: pos(a.one()),
        zero: zero.map(pos),
    };
    let sub = Algebra::new(spec).map_err(|e| closure_failure(a, e.to_string()))?;
    for (i, &x) in emb.iter().enumerate() {
        for (j, &y) in emb.iter().enumerate() {
            if emb[sub.residuum(i, j)] != a.residuum(x, y)
                || emb[sub.meet(i, j)] != a.meet(x, y)
                || emb[sub.join(i, j)] != a.join(x, y)
            {
                return Err(closure_failure(
                    a,
                    format!("derived operations differ at ({x},{y})"),
                ));
            }
        }
    }
    Ok(Subalgebra {
        algebra: sub,
        embedding: emb,
    })
}

/// Succeeds when `a` is an sbp-algebra with at least two elements.
pub fn require_sbp(a: &Algebra) -> Result<(), AlgebraError> {
    let fail = |reason: String| {
        Err(AlgebraError::NotSbp {
            name: a.name().to_string(),
            reason,
        })
    };
    if !a.is_bounded() {
        return fail("no bottom constant".into());
    }
    if a.size() < 2 {
        return fail("one-element algebra".into());
    }
    if let Some(w) = semilinear_cx(a) {
        return fail(format!("prelinearity fails at {w:?}"));
    }
    if let Some(w) = sbp_cx(a) {
        return fail(format!("sbp identities fail at {w:?}"));
    }
    Ok(())
}

/// The Boolean skeleton `{u : u ∨ ¬u = 1}`.
pub fn boolean_skeleton(a: &Algebra) -> Result<Subalgebra, AlgebraError> {
    let z = a
        .zero()
        .ok_or_else(|| AlgebraError::NotBounded(a.name().to_string()))?;
    let members: Subset = a
        .elements()
        .filter(|&u| a.join(u, a.neg(u)) == a.one())
        .collect();
    let sub = restrict(a, members, format!("B({})", a.name()), Some(z))?;
    let b = &sub.algebra;
    for u in b.elements() {
        for v in b.elements() {
            if b.mul(u, v) != b.meet(u, v) {
                return Err(closure_failure(
                    a,
                    format!("skeleton product differs from meet at ({u},{v})"),
                ));
            }
        }
    }
    Ok(sub)
}

/// `{x : ¬x < x}`.
pub fn radical(a: &Algebra) -> Result<Subset, AlgebraError> {
    require_sbp(a)?;
    Ok(a.elements().filter(|&x| a.lt(a.neg(x), x)).collect())
}

/// `{x : x < ¬x}`.
pub fn coradical(a: &Algebra) -> Result<Subset, AlgebraError> {
    require_sbp(a)?;
    Ok(a.elements().filter(|&x| a.lt(x, a.neg(x))).collect())
}

/// The radical as a GMTL-mode algebra with the inherited operations.
pub fn radical_algebra(a: &Algebra) -> Result<Subalgebra, AlgebraError> {
    let r = radical(a)?;
    restrict(a, r, format!("R({})", a.name()), None)
}

/// `x ↦ ¬¬x` on the radical, indexed by [`radical_algebra`] positions.
pub fn double_negation_nucleus(a: &Algebra) -> Result<UnaryTable, AlgebraError> {
    let rad = radical_algebra(a)?;
    let delta: UnaryTable = rad
        .embedding
        .iter()
        .map(|&x| {
            let y = a.neg(a.neg(x));
            rad.index_of(y)
                .ok_or_else(|| closure_failure(a, format!("¬¬{x} leaves the radical")))
        })
        .collect::<Result<_, _>>()?;
    is_wdl_admissible(&rad.algebra, &delta)
        .map_err(|v| closure_failure(a, format!("double negation is not wdl-admissible: {v}")))?;
    Ok(delta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WdlViolation {
    WrongLength(usize),
    NotExpanding(usize),
    NotMonotone(usize, usize),
    NotIdempotent(usize),
    NotNucleus(usize, usize),
    MeetNotPreserved(usize, usize),
    JoinNotPreserved(usize, usize),
}

impl fmt::Display for WdlViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WdlViolation::WrongLength(n) => write!(f, "table has {n} entries"),
            WdlViolation::NotExpanding(x) => write!(f, "not expanding at {x}"),
            WdlViolation::NotMonotone(x, y) => write!(f, "not monotone at ({x},{y})"),
            WdlViolation::NotIdempotent(x) => write!(f, "not idempotent at {x}"),
            WdlViolation::NotNucleus(x, y) => write!(f, "δ{x}·δ{y} is not below δ({x}·{y})"),
            WdlViolation::MeetNotPreserved(x, y) => write!(f, "∧ not preserved at ({x},{y})"),
            WdlViolation::JoinNotPreserved(x, y) => write!(f, "∨ not preserved at ({x},{y})"),
        }
    }
}

/// Checks that `d` is a nucleus on `a` preserving binary meets and joins.
pub fn is_wdl_admissible(a: &Algebra, d: &[usize]) -> Result<(), WdlViolation> {
    if d.len() != a.size() || d.iter().any(|&v| v >= a.size()) {
        return Err(WdlViolation::WrongLength(d.len()));
    }
    for x in a.elements() {
        if !a.le(x, d[x]) {
            return Err(WdlViolation::NotExpanding(x));
        }
        if d[d[x]] != d[x] {
            return Err(WdlViolation::NotIdempotent(x));
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if a.le(x, y) && !a.le(d[x], d[y]) {
                return Err(WdlViolation::NotMonotone(x, y));
            }
        }
    }
    for x in a.elements() {
        for y in a.elements() {
            if !a.le(a.mul(d[x], d[y]), d[a.mul(x, y)]) {
                return Err(WdlViolation::NotNucleus(x, y));
            }
            if d[a.meet(x, y)] != a.meet(d[x], d[y]) {
                return Err(WdlViolation::MeetNotPreserved(x, y));
            }
            if d[a.join(x, y)] != a.join(d[x], d[y]) {
                return Err(WdlViolation::JoinNotPreserved(x, y));
            }
        }
    }
    Ok(())
}

/// The nuclear image `δ[A]` with `x ·_δ y = δ(x·y)` and `x ∨_δ y = δ(x∨y)`.
pub fn nuclear_image(a: &Algebra, d: &[usize]) -> Result<Subalgebra, AlgebraError> {
    is_wdl_admissible(a, d).map_err(|v| closure_failure(a, v.to_string()))?;
    let emb: Vec<usize> = a.elements().filter(|&x| d[x] == x).collect();
    let pos = |v: usize| emb.iter().position(|&e| e == v);
    let spec = AlgebraSpec {
        name: format!("δ[{}]", a.name()),
        leq: emb
            .iter()
            .map(|&x| emb.iter().map(|&y| a.le(x, y)).collect())
            .collect(),
        mul: emb
            .iter()
            .map(|&x| {
                emb.iter()
                    .map(|&y| pos(d[a.mul(x, y)]).expect("image"))
                    .collect()
            })
            .collect(),
        one: pos(d[a.one()]).expect("image"),
        zero: a.zero().map(|z| pos(d[z]).expect("image")),
    };
    let img = Algebra::new(spec).map_err(|e| closure_failure(a, e.to_string()))?;
    for (i, &x) in emb.iter().enumerate() {
        for (j, &y) in emb.iter().enumerate() {
            if emb[img.join(i, j)] != d[a.join(x, y)]
                || emb[img.meet(i, j)] != a.meet(x, y)
                || emb[img.residuum(i, j)] != a.residuum(x, y)
            {
                return Err(closure_failure(
                    a,
                    format!("nuclear image operations differ at ({x},{y})"),
                ));
            }
        }
    }
    Ok(Subalgebra {
        algebra: img,
        embedding: emb,
    })
}

fn require_mode(a: &Algebra, mode: Mode) -> Result<(), AlgebraError> {
    if a.mode() == mode {
        Ok(())
    } else {
        Err(AlgebraError::ModeMismatch(
            a.name().to_string(),
            mode.keyword().to_string(),
        ))
    }
}

/// `2 ⊕ H`: adjoins an absorbing bottom, placed at index 0.
pub fn add_bottom(h: &Algebra) -> Result<Algebra, AlgebraError> {
    require_mode(h, Mode::Gmtl)?;
    let n = h.size() + 1;
    if n > MAX_ELEMENTS {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{n} elements exceed the limit"
        )));
    }
    Algebra::from_fn(
        format!("2+{}", h.name()),
        n,
        |x, y| x == 0 || (y > 0 && h.le(x - 1, y - 1)),
        |x, y| {
            if x == 0 || y == 0 {
                0
            } else {
                h.mul(x - 1, y - 1) + 1
            }
        },
        h.one() + 1,
        Some(0),
    )
}

/// Alias of [`add_bottom`].
pub fn ordinal_sum_2_h(h: &Algebra) -> Result<Algebra, AlgebraError> {
    add_bottom(h)
}

/// Removes the bottom of a bounded algebra without zero divisors.
pub fn strip_bottom(a: &Algebra) -> Result<Algebra, AlgebraError> {
    let z = a
        .zero()
        .ok_or_else(|| AlgebraError::NotBounded(a.name().to_string()))?;
    if let Some((x, y)) = super::zero_divisor_witness(a)? {
        return Err(AlgebraError::HasZeroDivisors {
            name: a.name().to_string(),
            a: x,
            b: y,
        });
    }
    let mut rest = a.all();
    rest.remove(z);
    Ok(restrict(a, rest, format!("{}^0", a.name()), None)?.algebra)
}

/// Componentwise product; element `(i, j)` has index `i * |b| + j`.
pub fn product(a: &Algebra, b: &Algebra) -> Result<Algebra, AlgebraError> {
    if a.mode() != b.mode() {
        return Err(AlgebraError::ModeMismatch(
            a.name().to_string(),
            b.name().to_string(),
        ));
    }
    let m = b.size();
    let n = a.size() * m;
    if n > MAX_ELEMENTS {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{n} elements exceed the limit"
        )));
    }
    let zero = a.zero().zip(b.zero()).map(|(x, y)| x * m + y);
    Algebra::from_fn(
        format!("{}x{}", a.name(), b.name()),
        n,
        |x, y| a.le(x / m, y / m) && b.le(x % m, y % m),
        |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m),
        a.one() * m + b.one(),
        zero,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{classify, find_isomorphism};
    use crate::fixtures;

    #[test]
    fn skeletons() {
        assert_eq!(
            boolean_skeleton(&fixtures::g3()).unwrap().embedding,
            vec![0, 2]
        );
        assert_eq!(
            boolean_skeleton(&fixtures::g3xg3()).unwrap().algebra.size(),
            4
        );
        let b4 = fixtures::bool4();
        assert_eq!(boolean_skeleton(&b4).unwrap().embedding, vec![0, 1, 2, 3]);
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&fixtures::g3()).unwrap().to_vec(), vec![1, 2]);
        assert_eq!(coradical(&fixtures::g3()).unwrap().to_vec(), vec![0]);
        assert_eq!(radical(&fixtures::nm4()).unwrap().to_vec(), vec![2, 3]);
        assert_eq!(coradical(&fixtures::nm4()).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(radical(&fixtures::bool2()).unwrap().to_vec(), vec![1]);
        assert_eq!(coradical(&fixtures::bool2()).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn radical_algebras_are_goedel_hoops() {
        let hoop = fixtures::goedel_hoop(2);
        for a in [fixtures::g3(), fixtures::nm4()] {
            let r = radical_algebra(&a).unwrap().algebra;
            assert_eq!(r.mode(), Mode::Gmtl);
            assert!(find_isomorphism(&r, &hoop).is_some());
        }
        let r = radical_algebra(&fixtures::bool2()).unwrap().algebra;
        assert_eq!(r.size(), 1);
    }

    #[test]
    fn one_element_algebra_is_not_sbp() {
        let t = Algebra::from_fn("t", 1, |_, _| true, |_, _| 0, 0, Some(0)).unwrap();
        assert!(matches!(radical(&t), Err(AlgebraError::NotSbp { .. })));
    }

    #[test]
    fn double_negation() {
        assert_eq!(
            double_negation_nucleus(&fixtures::nm4()).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            double_negation_nucleus(&fixtures::g3()).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            double_negation_nucleus(&fixtures::nm6()).unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn wdl_examples() {
        let h = fixtures::goedel_hoop(3);
        assert!(is_wdl_admissible(&h, &[0, 1, 2]).is_ok());
        assert!(is_wdl_admissible(&h, &[2, 2, 2]).is_ok());
        assert!(is_wdl_admissible(&h, &[1, 1, 2]).is_ok());
        assert_eq!(
            is_wdl_admissible(&h, &[1, 2, 2]),
            Err(WdlViolation::NotIdempotent(0))
        );
        assert_eq!(
            is_wdl_admissible(&h, &[0, 0, 2]),
            Err(WdlViolation::NotExpanding(1))
        );
    }

    #[test]
    fn bottom_round_trips() {
        let h = fixtures::goedel_hoop(2);
        let g3 = add_bottom(&h).unwrap();
        assert_eq!(g3.spec().leq, fixtures::g3().spec().leq);
        assert_eq!(g3.spec().mul, fixtures::g3().spec().mul);
        let back = strip_bottom(&fixtures::g3()).unwrap();
        assert!(find_isomorphism(&back, &h).is_some());
        assert!(matches!(
            strip_bottom(&fixtures::g3xg3()),
            Err(AlgebraError::HasZeroDivisors { .. })
        ));
        let trivial = fixtures::goedel_hoop(1);
        let b2 = ordinal_sum_2_h(&trivial).unwrap();
        assert!(find_isomorphism(&b2, &fixtures::bool2()).is_some());
    }

    #[test]
    fn products() {
        assert_eq!(product(&fixtures::g3(), &fixtures::g3()).unwrap().size(), 9);
        let a = product(&fixtures::nm4(), &fixtures::g3()).unwrap();
        assert_eq!(a.size(), 12);
        assert!(classify(&a).sbp.holds);
        let r = radical(&a).unwrap();
        let expected: Subset = [2, 3]
            .iter()
            .flat_map(|&x| [1, 2].iter().map(move |&y| x * 3 + y))
            .collect();
        assert_eq!(r, expected);
        assert!(product(&fixtures::g3(), &fixtures::goedel_hoop(2)).is_err());
    }

    #[test]
    fn nuclear_image_of_constant_one() {
        let h = fixtures::goedel_hoop(2);
        let img = nuclear_image(&h, &[1, 1]).unwrap();
        assert_eq!(img.embedding, vec![1]);
    }
}
