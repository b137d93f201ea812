//! Algebraic quadruples `(B, A, ∨_e, δ)` and the composition `B ⊗_e^δ A`.
//!
//! `B` and `A` live on separate index spaces; their units are identified,
//! which is how `B ∩ A = {1}` is realized. The external join is stored as the
//! table `ext_join[u][x] = ν_u(x)`.

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

use crate::algebra::text::read_algebra;
use crate::algebra::{
    all_isomorphisms, boolean_skeleton, double_negation_nucleus, find_isomorphism, is_homomorphism,
    is_wdl_admissible, radical_algebra, require_sbp, semilinear_cx, Algebra, AlgebraError, Mode,
    UnaryTable,
};
use crate::parse::{Cursor, ParseError};
use crate::report::{Check, Tally};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadrupleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("quadruple violates `{check}`: {detail}")]
    Invalid { check: String, detail: String },
    #[error("{op} depends on representatives: {detail}")]
    WellDefinedness { op: &'static str, detail: String },
    #[error("element {0} has no decomposition (u ∨ ¬x) ∧ (¬u ∨ x)")]
    NoDecomposition(usize),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicQuadruple {
    pub boolean: Algebra,
    pub radical: Algebra,
    /// `ext_join[u][x] = ν_u(x)`.
    pub ext_join: Vec<Vec<usize>>,
    pub delta: UnaryTable,
}

impl AlgebraicQuadruple {
    pub fn nu(&self, u: usize, x: usize) -> usize {
        self.ext_join[u][x]
    }

    fn b_neg(&self, u: usize) -> usize {
        self.boolean.neg(u)
    }
}

fn shape_ok(q: &AlgebraicQuadruple) -> Result<(), String> {
    let (nb, na) = (q.boolean.size(), q.radical.size());
    if q.ext_join.len() != nb
        || q.ext_join
            .iter()
            .any(|r| r.len() != na || r.iter().any(|&v| v >= na))
    {
        return Err(format!(
            "ext_join must be a {nb}x{na} table into the radical"
        ));
    }
    if q.delta.len() != na || q.delta.iter().any(|&v| v >= na) {
        return Err(format!("delta must have {na} entries"));
    }
    Ok(())
}

/// Exhaustive check of the quadruple conditions.
pub fn validate_quadruple(q: &AlgebraicQuadruple) -> Vec<Check> {
    let b = &q.boolean;
    let a = &q.radical;
    let mut out = Vec::new();

    let mut t = Tally::new("tables have matching shapes");
    if let Err(e) = shape_ok(q) {
        t.fail(e);
        return vec![t.finish()];
    }
    t.case(true, String::new);
    out.push(t.finish());

    let mut t = Tally::new("B is a Boolean algebra");
    t.case(b.is_bounded(), || "B has no bottom".into());
    if b.is_bounded() {
        for u in b.elements() {
            t.case(b.join(u, b.neg(u)) == b.one(), || format!("u = {u}"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("A is a GMTL-algebra");
    t.case(a.mode() == Mode::Gmtl, || "A has a bottom constant".into());
    t.case(semilinear_cx(a).is_none(), || {
        format!("prelinearity fails at {:?}", semilinear_cx(a))
    });
    out.push(t.finish());
    if !b.is_bounded() {
        return out;
    }

    let mut t = Tally::new("(V1) each ν_u is an endomorphism");
    for u in b.elements() {
        let r = is_homomorphism(a, a, &q.ext_join[u]);
        t.case(r.is_ok(), || format!("ν_{u}: {}", r.clone().unwrap_err()));
    }
    out.push(t.finish());

    let mut t = Tally::new("(V1) each λ_x is a lattice homomorphism");
    for x in a.elements() {
        for u in b.elements() {
            for v in b.elements() {
                t.case(
                    q.nu(b.meet(u, v), x) == a.meet(q.nu(u, x), q.nu(v, x)),
                    || format!("λ_{x} on {u}∧{v}"),
                );
                t.case(
                    q.nu(b.join(u, v), x) == a.join(q.nu(u, x), q.nu(v, x)),
                    || format!("λ_{x} on {u}∨{v}"),
                );
            }
        }
    }
    out.push(t.finish());

    let (b0, b1) = (b.bottom(), b.one());
    let mut t = Tally::new("(V2) ν_0 is the identity");
    for x in a.elements() {
        t.case(q.nu(b0, x) == x, || format!("x = {x}"));
    }
    out.push(t.finish());
    let mut t = Tally::new("(V2) ν_1 is constantly 1");
    for x in a.elements() {
        t.case(q.nu(b1, x) == a.one(), || format!("x = {x}"));
    }
    out.push(t.finish());

    let mut t = Tally::new("(V3) ν_u(x) ∨ ν_v(y) = ν_{u∨v}(x∨y) = ν_u(ν_v(x∨y))");
    for u in b.elements() {
        for v in b.elements() {
            for x in a.elements() {
                for y in a.elements() {
                    let l = a.join(q.nu(u, x), q.nu(v, y));
                    let m = q.nu(b.join(u, v), a.join(x, y));
                    let r = q.nu(u, q.nu(v, a.join(x, y)));
                    t.case(l == m && m == r, || format!("u={u} v={v} x={x} y={y}"));
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("δ is wdl-admissible");
    if let Err(v) = is_wdl_admissible(a, &q.delta) {
        t.fail(v.to_string());
    } else {
        t.case(true, String::new);
    }
    out.push(t.finish());
    out
}

fn require_valid(q: &AlgebraicQuadruple) -> Result<(), QuadrupleError> {
    match validate_quadruple(q).into_iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(QuadrupleError::Invalid {
            check: c.name,
            detail: c.detail,
        }),
    }
}

/// `(B(A), R(A), ∨, ¬¬)`, with `ν_u(x) = u ∨ x` computed in `a`.
pub fn extract_quadruple(a: &Algebra) -> Result<AlgebraicQuadruple, QuadrupleError> {
    require_sbp(a)?;
    let bs = boolean_skeleton(a)?;
    let rs = radical_algebra(a)?;
    let delta = double_negation_nucleus(a)?;
    let ext_join = bs
        .embedding
        .iter()
        .map(|&u| {
            rs.embedding
                .iter()
                .map(|&x| {
                    rs.index_of(a.join(u, x)).ok_or_else(|| {
                        QuadrupleError::AssertionFailed(format!("{u} ∨ {x} leaves the radical"))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let q = AlgebraicQuadruple {
        boolean: bs.algebra,
        radical: rs.algebra,
        ext_join,
        delta,
    };
    require_valid(&q)?;
    Ok(q)
}

/// `B ⊗_e^δ A` together with its class structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub algebra: Algebra,
    /// Least representative `(u, x)` of each class.
    pub representatives: Vec<(usize, usize)>,
    class: Vec<usize>,
    radical_size: usize,
}

impl Composition {
    /// The class `[u, x]`.
    pub fn class_of(&self, u: usize, x: usize) -> usize {
        self.class[u * self.radical_size + x]
    }

    /// Every representative of class `c`.
    pub fn members(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.radical_size;
        self.class
            .iter()
            .enumerate()
            .filter(move |(_, &k)| k == c)
            .map(move |(i, _)| (i / m, i % m))
    }
}

/// How the mixed terms of `[u,x] ⊙ [v,y]` are read.
///
/// `Literal` uses `ν_{u∨¬v}(y→x) ∧ ν_{¬u∨v}(x→y)`. That is well defined only
/// when `δ(y→x) = y→δx` on the radical, which fails on some sbp-chains with
/// five elements. `ClosedMixedTerms` uses `y→δx` and `x→δy`, matching
/// `¬x·y = ¬(y→¬¬x)` in every MTL-algebra; both readings agree whenever the
/// literal one is well defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductReading {
    Literal,
    ClosedMixedTerms,
}

type PairOp<'a> = Box<dyn Fn((usize, usize), (usize, usize)) -> (usize, usize) + 'a>;

/// The four operations on representatives.
fn pair_ops(q: &AlgebraicQuadruple, reading: ProductReading) -> [(&'static str, PairOp<'_>); 4] {
    let b = &q.boolean;
    let a = &q.radical;
    let nu = move |u: usize, x: usize| q.nu(u, x);
    let nb = move |u: usize| q.b_neg(u);
    let d = move |x: usize| q.delta[x];
    let meet3 = move |p: usize, r: usize, s: usize| a.meet(a.meet(p, r), s);
    [
        (
            "⊙",
            Box::new(move |(u, x), (v, y)| {
                let (dx, dy) = match reading {
                    ProductReading::Literal => (x, y),
                    ProductReading::ClosedMixedTerms => (d(x), d(y)),
                };
                let z = meet3(
                    nu(b.join(u, nb(v)), a.residuum(y, dx)),
                    nu(b.join(nb(u), v), a.residuum(x, dy)),
                    nu(b.join(nb(u), nb(v)), a.mul(x, y)),
                );
                (b.meet(u, v), z)
            }),
        ),
        (
            "⇒",
            Box::new(move |(u, x), (v, y)| {
                let z = meet3(
                    nu(b.join(u, v), a.residuum(d(y), d(x))),
                    nu(b.join(nb(u), v), d(a.mul(x, y))),
                    nu(b.join(nb(u), nb(v)), a.residuum(x, y)),
                );
                (b.residuum(u, v), z)
            }),
        ),
        (
            "⊓",
            Box::new(move |(u, x), (v, y)| {
                let z = a.meet(
                    meet3(
                        nu(b.join(u, v), a.join(x, y)),
                        nu(b.join(u, nb(v)), x),
                        nu(b.join(nb(u), v), y),
                    ),
                    nu(b.join(nb(u), nb(v)), a.meet(x, y)),
                );
                (b.meet(u, v), z)
            }),
        ),
        (
            "⊔",
            Box::new(move |(u, x), (v, y)| {
                let z = a.meet(
                    meet3(
                        nu(b.join(u, v), a.meet(x, y)),
                        nu(b.join(u, nb(v)), y),
                        nu(b.join(nb(u), v), x),
                    ),
                    nu(b.join(nb(u), nb(v)), a.join(x, y)),
                );
                (b.join(u, v), z)
            }),
        ),
    ]
}

/// Classes of `B × A` keyed by `(u, ν_{¬u}(x), ν_u(δx))`, numbered in order of
/// their least representative.
fn classes(q: &AlgebraicQuadruple) -> (Vec<usize>, Vec<(usize, usize)>) {
    let (nb, na) = (q.boolean.size(), q.radical.size());
    let mut keys = HashMap::new();
    let mut class = Vec::with_capacity(nb * na);
    let mut reps = Vec::new();
    for u in 0..nb {
        for x in 0..na {
            let key = (u, q.nu(q.b_neg(u), x), q.nu(u, q.delta[x]));
            let c = *keys.entry(key).or_insert_with(|| {
                reps.push((u, x));
                reps.len() - 1
            });
            class.push(c);
        }
    }
    (class, reps)
}

/// Builds `B ⊗_e^δ A`. Each operation is evaluated on every pair of
/// representatives and must land in one class; the result is checked to be
/// an sbp-algebra whose derived meet, join and residuum match `⊓`, `⊔`, `⇒`.
pub fn compose(q: &AlgebraicQuadruple) -> Result<Composition, QuadrupleError> {
    compose_with(q, ProductReading::ClosedMixedTerms)
}

/// [`compose`] with a chosen reading of the `⊙` formula.
pub fn compose_with(
    q: &AlgebraicQuadruple,
    reading: ProductReading,
) -> Result<Composition, QuadrupleError> {
    require_valid(q)?;
    let (class, reps) = classes(q);
    let na = q.radical.size();
    let cls = |(u, x): (usize, usize)| class[u * na + x];
    let k = reps.len();
    let members: Vec<Vec<(usize, usize)>> = (0..k)
        .map(|c| {
            (0..class.len())
                .filter(|&i| class[i] == c)
                .map(|i| (i / na, i % na))
                .collect()
        })
        .collect();
    let mut tables = Vec::new();
    for (op, f) in pair_ops(q, reading) {
        let mut table = vec![vec![0; k]; k];
        for c in 0..k {
            for e in 0..k {
                let r = cls(f(reps[c], reps[e]));
                for &p in &members[c] {
                    for &s in &members[e] {
                        let other = cls(f(p, s));
                        if other != r {
                            return Err(QuadrupleError::WellDefinedness {
                                op,
                                detail: format!(
                                    "{p:?}, {s:?} against {:?}, {:?}",
                                    reps[c], reps[e]
                                ),
                            });
                        }
                    }
                }
                table[c][e] = r;
            }
        }
        tables.push(table);
    }
    let (mul, imp, meet, join) = (&tables[0], &tables[1], &tables[2], &tables[3]);
    let b = &q.boolean;
    let one = cls((b.one(), q.radical.one()));
    let zero = cls((b.bottom(), q.radical.one()));
    let alg = Algebra::from_fn(
        format!("{}⊗{}", b.name(), q.radical.name()),
        k,
        |x, y| meet[x][y] == x,
        |x, y| mul[x][y],
        one,
        Some(zero),
    )?;
    for x in 0..k {
        for y in 0..k {
            for (op, got, want) in [
                ("⇒", alg.residuum(x, y), imp[x][y]),
                ("⊓", alg.meet(x, y), meet[x][y]),
                ("⊔", alg.join(x, y), join[x][y]),
            ] {
                if got != want {
                    return Err(QuadrupleError::AssertionFailed(format!(
                        "{op} at ({x},{y}) differs from the operation derived from the order"
                    )));
                }
            }
        }
    }
    require_sbp(&alg)?;
    Ok(Composition {
        algebra: alg,
        representatives: reps,
        class,
        radical_size: na,
    })
}

/// The least `(u, x)` in `B(A) × R(A)` (ambient indices) with
/// `a = (u ∨ ¬x) ∧ (¬u ∨ x)`.
pub fn decompose_element(a: &Algebra, e: usize) -> Result<(usize, usize), QuadrupleError> {
    require_sbp(a)?;
    let bs = boolean_skeleton(a)?;
    let rs = radical_algebra(a)?;
    for &u in &bs.embedding {
        for &x in &rs.embedding {
            if a.meet(a.join(u, a.neg(x)), a.join(a.neg(u), x)) == e {
                return Ok((u, x));
            }
        }
    }
    Err(QuadrupleError::NoDecomposition(e))
}

/// `a ↦ [u, x]` into `compose(extract_quadruple(a))`, asserted to be an
/// isomorphism.
pub fn decomposition_map(a: &Algebra) -> Result<(Composition, Vec<usize>), QuadrupleError> {
    let q = extract_quadruple(a)?;
    let comp = compose(&q)?;
    let bs = boolean_skeleton(a)?;
    let rs = radical_algebra(a)?;
    let map = a
        .elements()
        .map(|e| {
            let (u, x) = decompose_element(a, e)?;
            Ok(comp.class_of(
                bs.index_of(u).expect("skeleton"),
                rs.index_of(x).expect("radical"),
            ))
        })
        .collect::<Result<Vec<_>, QuadrupleError>>()?;
    let mut seen = vec![false; comp.algebra.size()];
    for &c in &map {
        seen[c] = true;
    }
    if map.len() != comp.algebra.size() || seen.contains(&false) {
        return Err(QuadrupleError::AssertionFailed(format!(
            "decomposition of `{}` is not bijective",
            a.name()
        )));
    }
    is_homomorphism(a, &comp.algebra, &map).map_err(|e| {
        QuadrupleError::AssertionFailed(format!("decomposition of `{}`: {e}", a.name()))
    })?;
    Ok((comp, map))
}

/// Checks `g(ν_u x) = ν'_{f(u)}(g x)` and `g ∘ δ = δ' ∘ g` for homomorphisms
/// `f: B → B'` and `g: A → A'`.
pub fn check_good_morphism_pair(
    q: &AlgebraicQuadruple,
    q2: &AlgebraicQuadruple,
    f: &[usize],
    g: &[usize],
) -> Result<Vec<Check>, QuadrupleError> {
    is_homomorphism(&q.boolean, &q2.boolean, f)
        .map_err(|e| QuadrupleError::NotHomomorphism(format!("f: {e}")))?;
    is_homomorphism(&q.radical, &q2.radical, g)
        .map_err(|e| QuadrupleError::NotHomomorphism(format!("g: {e}")))?;
    let mut t = Tally::new("g(u ∨_e x) = f(u) ∨_e' g(x)");
    for u in q.boolean.elements() {
        for x in q.radical.elements() {
            t.case(g[q.nu(u, x)] == q2.nu(f[u], g[x]), || {
                format!("u={u} x={x}")
            });
        }
    }
    let mut d = Tally::new("g ∘ δ = δ' ∘ g");
    for x in q.radical.elements() {
        d.case(g[q.delta[x]] == q2.delta[g[x]], || format!("x={x}"));
    }
    Ok(vec![t.finish(), d.finish()])
}

/// A pair of isomorphisms `(B → B', A → A')` forming a good morphism pair.
pub fn find_quadruple_isomorphism(
    q: &AlgebraicQuadruple,
    q2: &AlgebraicQuadruple,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let bs = all_isomorphisms(&q.boolean, &q2.boolean);
    let as_ = all_isomorphisms(&q.radical, &q2.radical);
    for f in &bs {
        for g in &as_ {
            let ok = q.boolean.elements().all(|u| {
                q.radical
                    .elements()
                    .all(|x| g[q.nu(u, x)] == q2.nu(f[u], g[x]))
            }) && q
                .radical
                .elements()
                .all(|x| g[q.delta[x]] == q2.delta[g[x]]);
            if ok {
                return Some((f.clone(), g.clone()));
            }
        }
    }
    None
}

/// Equivalence checks for one sbp-algebra: the decomposition is an
/// isomorphism onto `Ξ(Φ(a))`, and the skeleton and radical are recovered.
pub fn battery(a: &Algebra) -> Vec<Check> {
    let mut out = Vec::new();
    let q = match extract_quadruple(a) {
        Ok(q) => q,
        Err(e) => {
            let mut t = Tally::new("quadruple extraction");
            t.fail(e.to_string());
            return vec![t.finish()];
        }
    };
    let mut t = Tally::new("extracted quadruple is valid");
    let vs = validate_quadruple(&q);
    for c in &vs {
        t.case(c.passed, || format!("{}: {}", c.name, c.detail));
    }
    out.push(t.finish());

    let mut t = Tally::new("composition is well defined and recovers the algebra");
    let comp = match decomposition_map(a) {
        Ok((comp, _)) => {
            t.case(true, String::new);
            Some(comp)
        }
        Err(e) => {
            t.fail(e.to_string());
            None
        }
    };
    out.push(t.finish());
    let Some(comp) = comp else { return out };
    let c = &comp.algebra;

    let mut t = Tally::new("skeleton and radical of the composition are recovered");
    let sk = boolean_skeleton(c).map(|s| find_isomorphism(&s.algebra, &q.boolean).is_some());
    t.case(sk == Ok(true), || "skeleton".into());
    let rad = radical_algebra(c).map(|s| find_isomorphism(&s.algebra, &q.radical).is_some());
    t.case(rad == Ok(true), || "radical".into());
    match extract_quadruple(c) {
        Ok(q2) => t.case(find_quadruple_isomorphism(&q, &q2).is_some(), || {
            "quadruple".into()
        }),
        Err(e) => t.fail(e.to_string()),
    }
    out.push(t.finish());

    let mut t = Tally::new("(u ∨ ¬x) ∧ (¬u ∨ x) = (u ∧ x) ∨ (¬u ∧ ¬x)");
    if let (Ok(bs), Ok(rs)) = (boolean_skeleton(c), radical_algebra(c)) {
        for &u in &bs.embedding {
            for &x in &rs.embedding {
                let l = c.meet(c.join(u, c.neg(x)), c.join(c.neg(u), x));
                let r = c.join(c.meet(u, x), c.meet(c.neg(u), c.neg(x)));
                t.case(l == r, || format!("u={u} x={x}"));
            }
        }
    }
    out.push(t.finish());
    out
}

/// Text form: two algebra records followed by the `ν` rows and `δ`.
pub fn print_quadruple(q: &AlgebraicQuadruple) -> String {
    let mut s = String::from("boolean:\n");
    s += &crate::algebra::print_algebra(&q.boolean.spec());
    s += "radical:\n";
    s += &crate::algebra::print_algebra(&q.radical.spec());
    s += "ext_join:\n";
    for row in &q.ext_join {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    let line: Vec<String> = q.delta.iter().map(usize::to_string).collect();
    writeln!(s, "delta:\n{}", line.join(" ")).unwrap();
    s
}

#[derive(Debug, Error)]
pub enum QuadrupleParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Quadruple(#[from] QuadrupleError),
}

/// Parses and validates a quadruple.
pub fn parse_quadruple(text: &str) -> Result<AlgebraicQuadruple, QuadrupleParseError> {
    let mut cur = Cursor::new(text);
    cur.header("boolean")?;
    let bspec = read_algebra(&mut cur)?;
    cur.header("radical")?;
    let aspec = read_algebra(&mut cur)?;
    let (nb, na) = (bspec.size(), aspec.size());
    cur.header("ext_join")?;
    let mut ext_join = Vec::with_capacity(nb);
    for _ in 0..nb {
        let row = cur.indices()?;
        if row.len() != na {
            return Err(cur
                .error(format!("ext_join rows must have {na} entries"))
                .into());
        }
        ext_join.push(row);
    }
    cur.header("delta")?;
    let delta = cur.indices()?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after quadruple").into());
    }
    let q = AlgebraicQuadruple {
        boolean: Algebra::new(bspec).map_err(QuadrupleError::from)?,
        radical: Algebra::new(aspec).map_err(QuadrupleError::from)?,
        ext_join,
        delta,
    };
    require_valid(&q)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{enumerate_mtl_chains, product, DEFAULT_CHAIN_BOUND};
    use crate::fixtures;
    use crate::report::all_passed;

    fn trivial_quadruple(radical: Algebra, delta: UnaryTable) -> AlgebraicQuadruple {
        let n = radical.size();
        let one = radical.one();
        AlgebraicQuadruple {
            boolean: fixtures::bool2(),
            ext_join: vec![(0..n).collect(), vec![one; n]],
            radical,
            delta,
        }
    }

    #[test]
    fn nm4_and_g3_extractions() {
        let q = extract_quadruple(&fixtures::nm4()).unwrap();
        assert_eq!((q.boolean.size(), q.radical.size()), (2, 2));
        assert_eq!(q.ext_join, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(q.delta, vec![0, 1]);
        let q = extract_quadruple(&fixtures::g3()).unwrap();
        assert_eq!(q.delta, vec![1, 1]);
        let q = extract_quadruple(&fixtures::g3xg3()).unwrap();
        assert_eq!((q.boolean.size(), q.radical.size()), (4, 4));
        assert_eq!(q.delta, vec![3; 4]);
        let atoms: Vec<usize> = (1..3).collect();
        for u in atoms {
            assert!((0..4).any(|x| q.nu(u, x) != x && q.nu(u, x) != 3));
        }
    }

    #[test]
    fn constructed_violations() {
        let hoop = fixtures::goedel_hoop(2);
        let mut q = trivial_quadruple(hoop.clone(), vec![0, 1]);
        q.ext_join[1] = vec![0, 1];
        let failed: Vec<String> = validate_quadruple(&q)
            .into_iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect();
        assert!(failed.contains(&"(V2) ν_1 is constantly 1".to_string()));

        let hoop3 = fixtures::goedel_hoop(3);
        let q = trivial_quadruple(hoop3, vec![1, 0, 2]);
        let bad = validate_quadruple(&q)
            .into_iter()
            .find(|c| c.name == "δ is wdl-admissible")
            .unwrap();
        assert!(!bad.passed);
    }

    #[test]
    fn small_compositions() {
        let c = compose(&trivial_quadruple(fixtures::goedel_hoop(2), vec![1, 1])).unwrap();
        assert_eq!(c.algebra.size(), 3);
        assert!(find_isomorphism(&c.algebra, &fixtures::g3()).is_some());
        let c = compose(&trivial_quadruple(fixtures::goedel_hoop(1), vec![0])).unwrap();
        assert!(find_isomorphism(&c.algebra, &fixtures::bool2()).is_some());
        let c = compose(&extract_quadruple(&fixtures::nm4()).unwrap()).unwrap();
        assert!(find_isomorphism(&c.algebra, &fixtures::nm4()).is_some());
    }

    #[test]
    fn literal_product_reading_breaks_on_two_chains() {
        let mut broken = Vec::new();
        let chains = (2..=5).flat_map(|n| enumerate_mtl_chains(n, DEFAULT_CHAIN_BOUND).unwrap());
        for a in fixtures::all()
            .into_iter()
            .chain(chains.filter(|c| require_sbp(c).is_ok()))
        {
            let q = extract_quadruple(&a).unwrap();
            match compose_with(&q, ProductReading::Literal) {
                Ok(lit) => assert_eq!(lit, compose(&q).unwrap(), "{}", a.name()),
                Err(QuadrupleError::WellDefinedness { op: "⊙", .. }) => {
                    broken.push(a.name().to_string())
                }
                Err(e) => panic!("{}: {e}", a.name()),
            }
        }
        assert_eq!(broken, ["chain5_9", "chain5_10"]);
        // On chain5_9 the radical is {2,3,4} and ¬¬(3→2) = 3 while ¬¬3→¬¬2 = 4.
        let a = &enumerate_mtl_chains(5, DEFAULT_CHAIN_BOUND).unwrap()[8];
        assert_eq!(a.neg(a.neg(a.residuum(3, 2))), 3);
        assert_eq!(a.residuum(a.neg(a.neg(3)), a.neg(a.neg(2))), 4);
    }

    #[test]
    fn decompositions() {
        let nm4 = fixtures::nm4();
        assert_eq!(decompose_element(&nm4, 1).unwrap(), (0, 2));
        assert_eq!(decompose_element(&nm4, 3).unwrap(), (3, 3));
        assert_eq!(decompose_element(&fixtures::g3(), 1).unwrap(), (2, 1));
    }

    #[test]
    fn equivalence_on_fixtures_and_chains() {
        let chains = (2..=5).flat_map(|n| enumerate_mtl_chains(n, DEFAULT_CHAIN_BOUND).unwrap());
        for a in fixtures::all()
            .into_iter()
            .chain(chains.filter(|c| require_sbp(c).is_ok()))
        {
            let checks = battery(&a);
            assert!(all_passed(&checks), "{}: {checks:?}", a.name());
        }
    }

    #[test]
    fn good_morphism_pairs() {
        let q = extract_quadruple(&fixtures::nm4()).unwrap();
        let ids = (vec![0, 1], vec![0, 1]);
        assert!(all_passed(
            &check_good_morphism_pair(&q, &q, &ids.0, &ids.1).unwrap()
        ));

        // Projection onto the first factor, restricted to skeleton and radical.
        let g3 = fixtures::g3();
        let g9 = product(&g3, &g3).unwrap();
        let (qa, qb) = (
            extract_quadruple(&g9).unwrap(),
            extract_quadruple(&g3).unwrap(),
        );
        let proj =
            |sub: &crate::algebra::Subalgebra, target: &crate::algebra::Subalgebra| -> Vec<usize> {
                sub.embedding
                    .iter()
                    .map(|&e| target.index_of(e / 3).unwrap())
                    .collect()
            };
        let f = proj(
            &boolean_skeleton(&g9).unwrap(),
            &boolean_skeleton(&g3).unwrap(),
        );
        let g = proj(
            &radical_algebra(&g9).unwrap(),
            &radical_algebra(&g3).unwrap(),
        );
        assert!(all_passed(
            &check_good_morphism_pair(&qa, &qb, &f, &g).unwrap()
        ));

        // The Gödel and nilpotent minimum radicals agree but their nuclei do not.
        let (q1, q2) = (
            extract_quadruple(&g3).unwrap(),
            extract_quadruple(&fixtures::nm4()).unwrap(),
        );
        let checks = check_good_morphism_pair(&q1, &q2, &[0, 1], &[0, 1]).unwrap();
        assert!(checks[0].passed);
        assert!(!checks[1].passed);
        assert_eq!(checks[1].detail, "x=0");
    }

    #[test]
    fn text_round_trip() {
        let q = extract_quadruple(&fixtures::nm4xg3()).unwrap();
        let text = print_quadruple(&q);
        let back = parse_quadruple(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(print_quadruple(&back), text);
        assert!(parse_quadruple(&text.replace("delta:", "nabla:")).is_err());
    }
}
