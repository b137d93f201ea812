//! Dual quadruples `(S, X, Υ, Δ)` and the rotation `S ⊗_Υ^Δ X`.
//!
//! `S` is a finite discrete space, so every subset of it is clopen and `Υ`
//! is stored for every subset, indexed by its bitmask. `X` is a space with a
//! top and a total product.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{find_isomorphism, require_sbp, Algebra, AlgebraError};
use crate::duality::{
    check_bounded_morphism, check_residuated_space, find_space_isomorphism, spectrum,
    upset_algebra, ResiduatedSpace, SpaceError, UpSetAlgebra,
};
use crate::filter_pairs::{big_delta_table, build_bowtie, mu, BowtiePoint, PairError, SbpParts};
use crate::quadruple::{
    compose, extract_quadruple, validate_quadruple, AlgebraicQuadruple, QuadrupleError,
};
use crate::report::{all_passed, Check, Tally};
use crate::subset::Subset;

/// Largest `S` accepted; `Υ` has `2^|S|` entries.
pub const MAX_STONE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error(transparent)]
    Quadruple(#[from] QuadrupleError),
    #[error("dual quadruple `{name}` violates `{check}`: {detail}")]
    Invalid {
        name: String,
        check: String,
        detail: String,
    },
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualQuadruple {
    pub name: String,
    /// Labels of the points of `S`.
    pub stone: Vec<String>,
    pub space: ResiduatedSpace,
    /// `upsilon[U][x] = υ_U(x)`, with `U` a bitmask over `S`.
    pub upsilon: Vec<Vec<usize>>,
    pub delta: Vec<usize>,
}

impl DualQuadruple {
    pub fn stone_size(&self) -> usize {
        self.stone.len()
    }

    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..1u64 << self.stone.len()).map(Subset::from_bits)
    }

    pub fn upsilon(&self, u: Subset, x: usize) -> usize {
        self.upsilon[u.bits() as usize][x]
    }

    fn shape(&self) -> Result<(), String> {
        let (s, n) = (self.stone.len(), self.space.len());
        if s > MAX_STONE {
            return Err(format!("S has {s} points, more than {MAX_STONE}"));
        }
        if self.upsilon.len() != 1 << s
            || self
                .upsilon
                .iter()
                .any(|m| m.len() != n || m.iter().any(|&p| p >= n))
        {
            return Err(format!("upsilon must have {} maps on {n} points", 1 << s));
        }
        if self.delta.len() != n || self.delta.iter().any(|&p| p >= n) {
            return Err(format!("delta must map {n} points into X"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Collapses several checks into one, keeping the first failure.
fn merge(name: &str, checks: impl IntoIterator<Item = (String, Check)>) -> Check {
    let mut t = Tally::new(name);
    for (scope, c) in checks {
        if c.passed {
            for _ in 0..c.cases.max(1) {
                t.case(true, String::new);
            }
        } else {
            t.fail(format!("{scope}{}: {}", c.name, c.detail));
        }
    }
    t.finish()
}

/// The algebraic side `(A(S), A(X), (U, V) ↦ υ_U⁻¹[V], Δ⁻¹)`.
pub fn dual_to_algebraic(
    dq: &DualQuadruple,
) -> Result<(AlgebraicQuadruple, UpSetAlgebra), DualError> {
    let x = &dq.space;
    let ups = upset_algebra(x)?;
    let s = dq.stone_size();
    let full = (1usize << s) - 1;
    let boolean = Algebra::from_fn(
        format!("A(S_{})", dq.name),
        1 << s,
        |i, j| i & !j == 0,
        |i, j| i & j,
        full,
        Some(0),
    )?;
    let pre = |f: &dyn Fn(usize) -> usize, v: Subset, what: &str| -> Result<usize, DualError> {
        let p: Subset = x.points().filter(|&p| v.contains(f(p))).collect();
        ups.index_of(p).ok_or_else(|| {
            DualError::AssertionFailed(format!("{what}⁻¹[{v}] = {p} is not an up-set"))
        })
    };
    let ext_join = dq
        .subsets()
        .map(|u| {
            ups.up_sets
                .iter()
                .map(|&v| pre(&|p| dq.upsilon(u, p), v, &format!("υ_{u}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let delta = ups
        .up_sets
        .iter()
        .map(|&v| pre(&|p| dq.delta[p], v, "Δ"))
        .collect::<Result<Vec<_>, _>>()?;
    let q = AlgebraicQuadruple {
        boolean,
        radical: ups.algebra.clone(),
        ext_join,
        delta,
    };
    Ok((q, ups))
}

/// Exhaustive check of the dual quadruple conditions.
pub fn validate_dual_quadruple(dq: &DualQuadruple) -> Vec<Check> {
    let x = &dq.space;
    let mut out = Vec::new();
    let mut t = Tally::new("tables have matching shapes");
    if let Err(e) = dq.shape() {
        t.fail(e);
        return vec![t.finish()];
    }
    t.case(true, String::new);
    out.push(t.finish());

    let mut t = Tally::new("X has a top and a total product");
    t.case(x.top().is_some(), || "X has no top".into());
    for p in x.points() {
        for q in x.points() {
            t.case(x.product(p, q).is_some(), || {
                format!("{}•{} is undefined", x.label(p), x.label(q))
            });
        }
    }
    out.push(t.finish());
    let space_checks = check_residuated_space(x);
    let x_ok = all_passed(&space_checks);
    out.push(merge(
        "X is a residuated space",
        space_checks.into_iter().map(|c| (String::new(), c)),
    ));
    if !x_ok || x.top().is_none() {
        return out;
    }

    let mut morphisms = Vec::new();
    for u in dq.subsets() {
        match check_bounded_morphism(x, x, &dq.upsilon[u.bits() as usize]) {
            Ok(cs) => morphisms.extend(cs.into_iter().map(|c| (format!("υ_{u} "), c))),
            Err(e) => {
                let mut t = Tally::new("bounded morphism");
                t.fail(e.to_string());
                morphisms.push((format!("υ_{u} "), t.finish()));
            }
        }
    }
    out.push(merge(
        "each υ_U is a morphism preserving the top",
        morphisms,
    ));

    match dual_to_algebraic(dq) {
        Err(e) => {
            let mut t = Tally::new("U, V ↦ υ_U⁻¹[V] is an external join");
            t.fail(e.to_string());
            out.push(t.finish());
        }
        Ok((q, _)) => {
            let checks = validate_quadruple(&q);
            let (wdl, rest): (Vec<Check>, Vec<Check>) = checks
                .into_iter()
                .partition(|c| c.name == "δ is wdl-admissible");
            out.push(merge(
                "U, V ↦ υ_U⁻¹[V] is an external join",
                rest.into_iter().map(|c| (String::new(), c)),
            ));
            out.push(merge(
                "Δ⁻¹ is wdl-admissible on A(X)",
                wdl.into_iter().map(|c| (String::new(), c)),
            ));
        }
    }

    let d = &dq.delta;
    let mut t = Tally::new("Δ is a closure operator");
    for p in x.points() {
        t.case(x.le(p, d[p]), || format!("{} ≰ Δ of it", x.label(p)));
        t.case(d[d[p]] == d[p], || {
            format!("Δ is not idempotent at {}", x.label(p))
        });
        for q in x.points().filter(|&q| x.le(p, q)) {
            t.case(x.le(d[p], d[q]), || {
                format!("Δ is not isotone at {} ≤ {}", x.label(p), x.label(q))
            });
        }
    }
    out.push(t.finish());
    let mut t = Tally::new("R(x,y,z) implies R(Δx,Δy,Δz)");
    for p in x.points() {
        for q in x.points() {
            for r in x.points().filter(|&r| x.r(p, q, r)) {
                t.case(x.r(d[p], d[q], d[r]), || {
                    format!("R({},{},{})", x.label(p), x.label(q), x.label(r))
                });
            }
        }
    }
    out.push(t.finish());
    out
}

fn require_valid(dq: &DualQuadruple) -> Result<(), DualError> {
    match validate_dual_quadruple(dq).into_iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(DualError::Invalid {
            name: dq.name.clone(),
            check: c.name,
            detail: c.detail,
        }),
    }
}

/// `u` fixes `x` when `υ_U(x) = x` for every `U ∌ u`.
pub fn dual_fixes(dq: &DualQuadruple, u: usize, x: usize) -> bool {
    dq.subsets()
        .filter(|s| !s.contains(u))
        .all(|s| dq.upsilon(s, x) == x)
}

/// Which `(u, x) ∈ D` contribute an Upper point `+(u, Δx)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UpperPoints {
    /// Those with `Δx ≠ ⊤`, matching the condition `δ⁻¹[𝔶] ≠ R(A)` on the
    /// filter-pair side.
    #[default]
    NonTopImage,
    /// Those with `x ≠ ⊤`, as the carrier is literally displayed.
    NonTopArgument,
}

/// `S ⊗_Υ^Δ X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSpace {
    name: String,
    stone: Vec<String>,
    x_labels: Vec<String>,
    points: Vec<BowtiePoint>,
    leq: Vec<bool>,
    compose: Vec<Option<usize>>,
    delta: Vec<usize>,
}

pub fn rotate(dq: &DualQuadruple) -> Result<RotationSpace, DualError> {
    rotate_with(dq, UpperPoints::default())
}

pub fn rotate_with(dq: &DualQuadruple, reading: UpperPoints) -> Result<RotationSpace, DualError> {
    require_valid(dq)?;
    let x = &dq.space;
    let top = x.top().expect("validated");
    let d = &dq.delta;
    let mut points = Vec::new();
    for u in 0..dq.stone_size() {
        points.extend(
            x.points()
                .filter(|&p| dual_fixes(dq, u, p))
                .map(|p| BowtiePoint::Lower { u, x: p }),
        );
    }
    for u in 0..dq.stone_size() {
        for p in x.points().filter(|&p| dual_fixes(dq, u, p)) {
            let keep = match reading {
                UpperPoints::NonTopImage => d[p] != top,
                UpperPoints::NonTopArgument => p != top,
            };
            let q = BowtiePoint::Upper { u, y: d[p] };
            if keep && !points.contains(&q) {
                points.push(q);
            }
        }
    }
    let n = points.len();
    let mut rot = RotationSpace {
        name: format!("S⊗X({})", dq.name),
        stone: dq.stone.clone(),
        x_labels: x.labels().to_vec(),
        points,
        leq: Vec::with_capacity(n * n),
        compose: Vec::with_capacity(n * n),
        delta: d.clone(),
    };
    use BowtiePoint::{Lower, Upper};
    for i in 0..n {
        for j in 0..n {
            let le = match (rot.points[i], rot.points[j]) {
                (Lower { u, x: a }, Lower { u: v, x: b }) => u == v && x.le(a, b),
                (Upper { u, y: a }, Upper { u: v, y: b }) => u == v && x.le(b, a),
                (Lower { u, .. }, Upper { u: v, .. }) => u == v,
                (Upper { .. }, Lower { .. }) => false,
            };
            rot.leq.push(le);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = match (rot.points[i], rot.points[j]) {
                (Lower { u, x: a }, Lower { u: v, x: b }) if u == v => {
                    let p = x.product(a, b).expect("total product");
                    Some(Lower { u, x: p })
                }
                (Lower { u, x: a }, Upper { u: v, y }) | (Upper { u: v, y }, Lower { u, x: a })
                    if u == v =>
                {
                    if x.le(a, d[y]) {
                        let z = x.arrow_point(a, d[y])?.ok_or_else(|| {
                            DualError::AssertionFailed(format!(
                                "{} ⇒ {} is empty",
                                x.label(a),
                                x.label(d[y])
                            ))
                        })?;
                        Some(Upper { u, y: z })
                    } else {
                        None
                    }
                }
                _ => None,
            };
            let c = match c {
                None => None,
                Some(p) => Some(rot.points.iter().position(|&q| q == p).ok_or_else(|| {
                    DualError::AssertionFailed(format!(
                        "{}∘{} = {} is not a point",
                        rot.label(i),
                        rot.label(j),
                        rot.point_label(p)
                    ))
                })?),
            };
            rot.compose.push(c);
        }
    }
    Ok(rot)
}

impl RotationSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[BowtiePoint] {
        &self.points
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        self.compose[i * self.len() + j]
    }

    fn point_label(&self, p: BowtiePoint) -> String {
        match p {
            BowtiePoint::Lower { u, x } => format!("({}, {})", self.stone[u], self.x_labels[x]),
            BowtiePoint::Upper { u, y } => format!("+({}, {})", self.stone[u], self.x_labels[y]),
        }
    }

    pub fn label(&self, i: usize) -> String {
        self.point_label(self.points[i])
    }

    /// `W_(U,V)` for `U ⊆ S` and an up-set `V` of `X`.
    pub fn w_set(&self, u_set: Subset, v_set: Subset) -> Subset {
        let dv: Subset = v_set.map(|p| self.delta[p]);
        (0..self.len())
            .filter(|&i| match self.points[i] {
                BowtiePoint::Lower { u, x } => u_set.contains(u) && v_set.contains(x),
                BowtiePoint::Upper { u, y } => u_set.contains(u) || !dv.contains(y),
            })
            .collect()
    }

    /// The space with every point a unit and no top.
    pub fn to_space(&self) -> ResiduatedSpace {
        ResiduatedSpace::from_fn(
            self.name.clone(),
            (0..self.len()).map(|i| self.label(i)).collect(),
            |i, j| self.le(i, j),
            |i, j| self.compose(i, j),
            Subset::full(self.len()),
            None,
        )
        .expect("rotation tables are well formed")
    }

    /// Graphviz rendering with Lower points ranked below Upper points.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", self.name);
        if self.points.iter().any(|p| p.is_upper()) {
            for (rank, upper) in [("min", false), ("max", true)] {
                let members: Vec<String> = (0..self.len())
                    .filter(|&i| self.points[i].is_upper() == upper)
                    .map(|i| format!("t{i}"))
                    .collect();
                writeln!(s, "  {{ rank={rank}; {}; }}", members.join("; ")).unwrap();
            }
        }
        for i in 0..self.len() {
            let shape = if self.points[i].is_upper() {
                "box"
            } else {
                "ellipse"
            };
            writeln!(s, "  t{i} [label=\"{}\", shape={shape}];", self.label(i)).unwrap();
        }
        for (i, j) in self.to_space().covers() {
            writeln!(s, "  t{i} -> t{j};").unwrap();
        }
        s + "}\n"
    }
}

/// `(S(B(A)), S(R(A)), μ, Δ)`, asserted to be a dual quadruple.
pub fn extract_dual_quadruple(a: &Algebra) -> Result<DualQuadruple, DualError> {
    let parts = SbpParts::new(a)?;
    let uf = &parts.ultrafilters;
    let rf = &parts.radical_filters;
    if uf.len() > MAX_STONE {
        return Err(AlgebraError::BoundExceeded {
            requested: uf.len(),
            bound: MAX_STONE,
        }
        .into());
    }
    let space = ResiduatedSpace::from_spectrum(rf).with_name(format!("S(R({}))", a.name()));
    let mut upsilon = Vec::new();
    for bits in 0..1u64 << uf.len() {
        let u_set = Subset::from_bits(bits);
        let b = parts
            .skeleton
            .algebra
            .elements()
            .find(|&b| uf.containing(b) == u_set)
            .ok_or_else(|| {
                DualError::AssertionFailed(format!("{u_set} is not φ of a Boolean element"))
            })?;
        upsilon.push(
            rf.ids()
                .map(|x| mu(&parts, b, x))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let dq = DualQuadruple {
        name: a.name().to_string(),
        stone: uf.ids().map(|u| parts.ultra_set(u).to_string()).collect(),
        space,
        upsilon,
        delta: big_delta_table(&parts)?,
    };
    require_valid(&dq)?;
    Ok(dq)
}

/// The five splitting clauses for `μ` over every `u, v ∈ B(A)` and every
/// generalized prime radical filter.
pub fn check_mu_splitting(a: &Algebra) -> Result<Vec<Check>, DualError> {
    let parts = SbpParts::new(a)?;
    let b = &parts.skeleton.algebra;
    let rf = &parts.radical_filters;
    let whole = rf
        .whole()
        .expect("radical spectra include the whole radical");
    let mut t = [
        Tally::new("μ_{u∨v} is μ_u or μ_v"),
        Tally::new("μ_{u∧v} is μ_u or μ_v"),
        Tally::new("μ_u or μ_¬u fixes 𝔵"),
        Tally::new("μ_u(𝔵) is 𝔵 or the whole radical"),
        Tally::new("μ_u is idempotent"),
    ];
    for x in rf.ids() {
        let m = b
            .elements()
            .map(|u| mu(&parts, u, x))
            .collect::<Result<Vec<_>, _>>()?;
        let show = |u: usize| {
            format!(
                "u = {}, 𝔵 = {}",
                parts.skeleton.embedding[u],
                parts.rad_set(x)
            )
        };
        for u in b.elements() {
            for v in b.elements() {
                let w = || format!("{}, v = {}", show(u), parts.skeleton.embedding[v]);
                let j = m[b.join(u, v)];
                t[0].case(j == m[u] || j == m[v], w);
                let k = m[b.meet(u, v)];
                t[1].case(k == m[u] || k == m[v], w);
            }
            t[2].case(m[u] == x || m[b.neg(u)] == x, || show(u));
            t[3].case(m[u] == x || m[u] == whole, || show(u));
            t[4].case(mu(&parts, u, m[u])? == m[u], || show(u));
        }
    }
    Ok(t.into_iter().map(Tally::finish).collect())
}

/// The four legs of the square relating an sbp-algebra to its rotation,
/// its spectrum, its filter-pair space and its quadruple composition.
pub fn commute_square(a: &Algebra) -> Result<Vec<Check>, DualError> {
    require_sbp(a)?;
    let leg = |name: &str, r: Result<bool, DualError>| {
        let mut t = Tally::new(name);
        match r {
            Ok(ok) => t.case(ok, || "no isomorphism".into()),
            Err(e) => t.fail(e.to_string()),
        }
        t.finish()
    };
    let rot = extract_dual_quadruple(a)
        .and_then(|dq| rotate(&dq))
        .map(|r| r.to_space());
    let sa = spectrum(a).map_err(DualError::from);
    let both = |f: &dyn Fn(&ResiduatedSpace, &ResiduatedSpace) -> Result<bool, DualError>| match (
        &rot, &sa,
    ) {
        (Ok(r), Ok(s)) => f(r, s),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    Ok(vec![
        leg(
            "rotate(extract_dual_quadruple(A)) ≅ S(A)",
            both(&|r, s| Ok(find_space_isomorphism(r, s).is_some())),
        ),
        leg(
            "S(A) ≅ F⋈(A)",
            both(&|_, s| Ok(find_space_isomorphism(s, &build_bowtie(a)?.to_space()).is_some())),
        ),
        leg(
            "A(rotate(extract_dual_quadruple(A))) ≅ A",
            both(&|r, _| Ok(find_isomorphism(&upset_algebra(r)?.algebra, a).is_some())),
        ),
        leg(
            "A ≅ compose(extract_quadruple(A))",
            extract_quadruple(a)
                .and_then(|q| compose(&q))
                .map(|c| find_isomorphism(&c.algebra, a).is_some())
                .map_err(DualError::from),
        ),
    ])
}

/// Small dual quadruples built by hand rather than from an algebra.
pub mod hand {
    use super::*;

    /// A space with points `0 < 1`, `1` the top, `0•0 = 0` and everything
    /// else `1`.
    pub fn two_chain() -> ResiduatedSpace {
        ResiduatedSpace::from_fn(
            "c2",
            vec!["x0".into(), "x1".into()],
            |p, q| p <= q,
            |p, q| Some(p.max(q)),
            Subset::full(2),
            Some(1),
        )
        .expect("two-point chain")
    }

    pub fn one_point() -> ResiduatedSpace {
        ResiduatedSpace::from_fn(
            "c1",
            vec!["x0".into()],
            |_, _| true,
            |_, _| Some(0),
            Subset::full(1),
            Some(0),
        )
        .expect("one-point space")
    }

    /// One point over one point: the dual of the two-element Boolean algebra.
    pub fn point() -> DualQuadruple {
        DualQuadruple {
            name: "point".into(),
            stone: vec!["s0".into()],
            space: one_point(),
            upsilon: vec![vec![0], vec![0]],
            delta: vec![0],
        }
    }

    /// One point over the two-chain with `Δ` the identity.
    pub fn chain_identity() -> DualQuadruple {
        DualQuadruple {
            name: "chain_identity".into(),
            stone: vec!["s0".into()],
            space: two_chain(),
            upsilon: vec![vec![0, 1], vec![1, 1]],
            delta: vec![0, 1],
        }
    }

    /// Two points over the two-chain: `s0` fixes only the top, `s1` fixes
    /// both points, and `Δ` sends everything to the top.
    pub fn split() -> DualQuadruple {
        DualQuadruple {
            name: "split".into(),
            stone: vec!["s0".into(), "s1".into()],
            space: two_chain(),
            upsilon: vec![vec![0, 1], vec![0, 1], vec![1, 1], vec![1, 1]],
            delta: vec![1, 1],
        }
    }

    /// Like [`split`] with `Δ` the identity.
    pub fn split_identity() -> DualQuadruple {
        DualQuadruple {
            name: "split_identity".into(),
            delta: vec![0, 1],
            ..split()
        }
    }

    pub fn all() -> Vec<DualQuadruple> {
        vec![point(), chain_identity(), split(), split_identity()]
    }
}

/// For a hand-built dual quadruple: the rotation's up-set algebra is sbp and
/// its extracted quadruple matches `(A(S), A(X), υ⁻¹, Δ⁻¹)`.
pub fn check_reconstruction(dq: &DualQuadruple) -> Result<Vec<Check>, DualError> {
    let rot = rotate(dq)?;
    let a = upset_algebra(&rot.to_space())?.algebra;
    let mut t = Tally::new("A(S ⊗ X) is an sbp-algebra");
    let sbp = require_sbp(&a);
    t.case(sbp.is_ok(), || sbp.clone().unwrap_err().to_string());
    let mut out = vec![t.finish()];
    let mut t = Tally::new("extract_quadruple(A(S ⊗ X)) ≅ (A(S), A(X), υ⁻¹, Δ⁻¹)");
    if sbp.is_ok() {
        let (expected, _) = dual_to_algebraic(dq)?;
        let got = extract_quadruple(&a)?;
        t.case(
            crate::quadruple::find_quadruple_isomorphism(&got, &expected).is_some(),
            || "no good isomorphism pair".into(),
        );
    } else {
        t.fail("skipped: not sbp");
    }
    out.push(t.finish());
    Ok(out)
}
