//! Filter pairs of an sbp-algebra and the space `F_A^⋈` they form.
//!
//! A filter pair `(𝔲, 𝔵)` couples an ultrafilter of the Boolean skeleton with
//! a generalized prime filter of the radical. The pairs satisfying external
//! primality make up `F_A`; the decorated copies `+(𝔲, 𝔶)`, with `𝔶` a prime
//! filter of the nuclear image `δ[R(A)]`, make up `F_A^∂`. Together, ordered
//! by `⊑` and multiplied by `∘`, they reproduce the spectrum of the algebra
//! through the map `α`.
//!
//! Ultrafilters, radical filters and image filters are referred to by their
//! positions in the respective [`Spectrum`] lists.

use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    boolean_skeleton, coradical, double_negation_nucleus, nuclear_image, radical_algebra,
    require_sbp, Algebra, AlgebraError, Subalgebra, UnaryTable,
};
use crate::duality::ResiduatedSpace;
use crate::filters::{generated_filter, Bullet, FilterError, Spectrum};
use crate::report::{Check, Tally};
use crate::subset::Subset;

/// Largest spectrum whose up-sets are enumerated by brute force.
const MAX_ENUMERATED_POINTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error("the two readings of `fixes` disagree on `{algebra}`: {detail}")]
    Disagreement { algebra: String, detail: String },
    #[error("{0} is not an up-set")]
    NotUpSet(String),
    #[error("assertion failed on `{algebra}`: {detail}")]
    AssertionFailed { algebra: String, detail: String },
}

/// The spectra an sbp-algebra is taken apart into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbpParts {
    pub algebra: Algebra,
    /// `S(A)`.
    pub spectrum: Spectrum,
    pub skeleton: Subalgebra,
    /// `S(B(A))`.
    pub ultrafilters: Spectrum,
    pub radical: Subalgebra,
    /// `S(R(A))`, including the whole radical.
    pub radical_filters: Spectrum,
    /// `δ = ¬¬` on radical positions.
    pub delta: UnaryTable,
    /// `δ[R(A)]`, embedded into radical positions.
    pub image: Subalgebra,
    /// `S(δ[R(A)])`, including the whole image.
    pub image_filters: Spectrum,
}

impl SbpParts {
    pub fn new(a: &Algebra) -> Result<Self, PairError> {
        require_sbp(a)?;
        let skeleton = boolean_skeleton(a)?;
        let radical = radical_algebra(a)?;
        let delta = double_negation_nucleus(a)?;
        let image = nuclear_image(&radical.algebra, &delta)?;
        Ok(SbpParts {
            algebra: a.clone(),
            spectrum: Spectrum::new(a)?,
            ultrafilters: Spectrum::new(&skeleton.algebra)?,
            radical_filters: Spectrum::new(&radical.algebra)?,
            image_filters: Spectrum::new(&image.algebra)?,
            skeleton,
            radical,
            delta,
            image,
        })
    }

    fn assertion(&self, detail: String) -> PairError {
        PairError::AssertionFailed {
            algebra: self.algebra.name().to_string(),
            detail,
        }
    }

    /// Ultrafilter `u` as a set of elements of `A`.
    pub fn ultra_set(&self, u: usize) -> Subset {
        self.skeleton.lift(self.ultrafilters.filter(u))
    }

    /// Radical filter `x` as a set of elements of `A`.
    pub fn rad_set(&self, x: usize) -> Subset {
        self.radical.lift(self.radical_filters.filter(x))
    }

    /// Image filter `y` as a set of elements of `A`.
    pub fn image_set(&self, y: usize) -> Subset {
        self.radical
            .lift(self.image.lift(self.image_filters.filter(y)))
    }

    /// `𝔲_𝔞`: the ultrafilter inside a prime filter of `A`.
    pub fn ultrafilter_of(&self, s: Subset) -> Result<usize, PairError> {
        Ok(self.ultrafilters.require(self.skeleton.pull(s))?)
    }

    /// `𝔞 ∩ R(A)` as a radical filter.
    pub fn radical_trace(&self, s: Subset) -> Result<usize, PairError> {
        Ok(self.radical_filters.require(self.radical.pull(s))?)
    }

    /// `δ[𝔵]` as a filter of the image.
    pub fn delta_image(&self, x: usize) -> Result<usize, PairError> {
        let img: Subset = self.radical_filters.filter(x).map(|r| self.delta[r]);
        Ok(self.image_filters.require(self.image.pull(img))?)
    }

    /// `δ⁻¹[𝔶]` as a radical filter.
    pub fn delta_preimage(&self, y: usize) -> Result<usize, PairError> {
        let ys = self.image.lift(self.image_filters.filter(y));
        let pre: Subset = self
            .radical
            .algebra
            .elements()
            .filter(|&r| ys.contains(self.delta[r]))
            .collect();
        Ok(self.radical_filters.require(pre)?)
    }

    /// `Δ(𝔵) = {x ∈ R(A) : ¬¬x ∈ 𝔵}`.
    pub fn big_delta(&self, x: usize) -> Result<usize, PairError> {
        let xs = self.radical_filters.filter(x);
        let pre: Subset = self
            .radical
            .algebra
            .elements()
            .filter(|&r| xs.contains(self.delta[r]))
            .collect();
        Ok(self.radical_filters.require(pre)?)
    }

    /// `⟨𝔲 ∪ R(A)⟩`.
    pub fn r_u(&self, u: usize) -> Subset {
        self.generated(self.ultra_set(u), self.radical.carrier())
    }

    /// The filter of `A` generated by two nonempty sets.
    pub fn generated(&self, s: Subset, t: Subset) -> Subset {
        generated_filter(&self.algebra, s.union(t)).expect("nonempty generators")
    }

    /// `{x ∈ A : ¬¬x : x ∈ s}`.
    fn delta_set(&self, s: Subset) -> Subset {
        let a = &self.algebra;
        s.map(|x| a.neg(a.neg(x)))
    }
}

/// `μ_u(𝔵) = {x ∈ R(A) : u ∨ x ∈ 𝔵}` for a skeleton element `u` (by position).
pub fn mu(parts: &SbpParts, u: usize, x: usize) -> Result<usize, PairError> {
    let a = &parts.algebra;
    let ub = parts.skeleton.embedding[u];
    let xs = parts.rad_set(x);
    let pre: Subset = parts
        .radical
        .algebra
        .elements()
        .filter(|&r| xs.contains(a.join(ub, parts.radical.embedding[r])))
        .collect();
    Ok(parts.radical_filters.require(pre)?)
}

/// `Δ` on every radical filter.
pub fn big_delta_table(parts: &SbpParts) -> Result<Vec<usize>, PairError> {
    parts
        .radical_filters
        .ids()
        .map(|x| parts.big_delta(x))
        .collect()
}

/// Whether ultrafilter `u` fixes radical filter `x`. Decided by searching for
/// a prime `𝔞 ⊇ 𝔲` with `𝔞 ∩ R(A) = 𝔵`, and independently by external
/// primality; the two answers must agree.
pub fn fixes(parts: &SbpParts, u: usize, x: usize) -> Result<bool, PairError> {
    let us = parts.ultra_set(u);
    let xs = parts.rad_set(x);
    let rad = parts.radical.carrier();
    let by_search = parts
        .spectrum
        .filters()
        .iter()
        .any(|&f| us.is_subset(f) && f.intersection(rad) == xs);
    let a = &parts.algebra;
    let by_primality = parts.skeleton.embedding.iter().all(|&b| {
        parts
            .radical
            .embedding
            .iter()
            .all(|&r| !xs.contains(a.join(b, r)) || us.contains(b) || xs.contains(r))
    });
    if by_search != by_primality {
        return Err(PairError::Disagreement {
            algebra: a.name().to_string(),
            detail: format!("𝔲 = {us}, 𝔵 = {xs}: search says {by_search}, external primality says {by_primality}"),
        });
    }
    Ok(by_search)
}

/// `𝔣_𝔵`, the intersection of the ultrafilters fixing `x`, in skeleton
/// positions. Asserts that some ultrafilter fixes `x` and that exactly the
/// ultrafilters above `𝔣_𝔵` do.
pub fn f_filter(parts: &SbpParts, x: usize) -> Result<Subset, PairError> {
    let uf = &parts.ultrafilters;
    let fixing: Vec<usize> = uf
        .ids()
        .map(|u| Ok((u, fixes(parts, u, x)?)))
        .filter(|r| !matches!(r, Ok((_, false))))
        .map(|r| r.map(|(u, _)| u))
        .collect::<Result<_, PairError>>()?;
    let Some(&first) = fixing.first() else {
        return Err(parts.assertion(format!("no ultrafilter fixes {}", parts.rad_set(x))));
    };
    let f = fixing
        .iter()
        .fold(uf.filter(first), |acc, &u| acc.intersection(uf.filter(u)));
    if let Some(u) = uf
        .ids()
        .find(|&u| fixing.contains(&u) != f.is_subset(uf.filter(u)))
    {
        return Err(parts.assertion(format!(
            "fixing {} is not equivalent to containing 𝔣_𝔵 for {}",
            parts.rad_set(x),
            parts.ultra_set(u)
        )));
    }
    Ok(f)
}

/// A point of `F_A^⋈`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BowtiePoint {
    /// `(𝔲, 𝔵)` with `x` a radical filter.
    Lower { u: usize, x: usize },
    /// `+(𝔲, 𝔶)` with `y` a filter of the image.
    Upper { u: usize, y: usize },
}

impl BowtiePoint {
    pub fn ultrafilter(self) -> usize {
        match self {
            BowtiePoint::Lower { u, .. } | BowtiePoint::Upper { u, .. } => u,
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, BowtiePoint::Upper { .. })
    }
}

/// `F_A^⋈` with its order and partial product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BowtieSpace {
    parts: SbpParts,
    points: Vec<BowtiePoint>,
    index: HashMap<BowtiePoint, usize>,
    leq: Vec<bool>,
    compose: Vec<Option<usize>>,
}

/// Enumerates `F_A` and `F_A^∂` and tabulates `⊑` and `∘`.
pub fn build_bowtie(a: &Algebra) -> Result<BowtieSpace, PairError> {
    let parts = SbpParts::new(a)?;
    let mut points = Vec::new();
    for u in parts.ultrafilters.ids() {
        for x in parts.radical_filters.ids() {
            if fixes(&parts, u, x)? {
                points.push(BowtiePoint::Lower { u, x });
            }
        }
    }
    for u in parts.ultrafilters.ids() {
        for y in parts.image_filters.ids() {
            let x = parts.delta_preimage(y)?;
            if !parts.radical_filters.is_whole(x) && fixes(&parts, u, x)? {
                points.push(BowtiePoint::Upper { u, y });
            }
        }
    }
    let index: HashMap<BowtiePoint, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let n = points.len();
    let mut x = BowtieSpace {
        parts,
        points,
        index,
        leq: Vec::with_capacity(n * n),
        compose: Vec::with_capacity(n * n),
    };
    for i in 0..n {
        for j in 0..n {
            let le = x.order(x.points[i], x.points[j]);
            x.leq.push(le);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = match compose_points(&x.parts, x.points[i], x.points[j])? {
                None => None,
                Some(p) => Some(*x.index.get(&p).ok_or_else(|| {
                    x.parts.assertion(format!(
                        "{}∘{} is not a point of F⋈",
                        x.label(i),
                        x.label(j)
                    ))
                })?),
            };
            x.compose.push(c);
        }
    }
    Ok(x)
}

/// The partial operation `∘` on points, before lookup in a space.
///
/// In the mixed cases the radical filter `𝔵 ⇒ δ⁻¹[𝔶]` is fixed by `Δ`, so it
/// is stored through its image filter `δ[𝔵 ⇒ δ⁻¹[𝔶]]`.
pub fn compose_points(
    parts: &SbpParts,
    p: BowtiePoint,
    q: BowtiePoint,
) -> Result<Option<BowtiePoint>, PairError> {
    use BowtiePoint::{Lower, Upper};
    let rf = &parts.radical_filters;
    match (p, q) {
        (Lower { u, x }, Lower { u: v, x: y }) if u == v => match rf.bullet(x, y) {
            Bullet::Defined(z) => Ok(Some(Lower { u, x: z })),
            Bullet::Whole => Err(parts.assertion("a radical product is the whole algebra".into())),
        },
        (Lower { u, x }, Upper { u: v, y }) | (Upper { u: v, y }, Lower { u, x }) if u == v => {
            let dy = parts.delta_preimage(y)?;
            if !rf.le(x, dy) {
                return Ok(None);
            }
            let z = rf.arrow(x, dy)?.ok_or_else(|| {
                parts.assertion(format!(
                    "{} ⇒ {} is empty",
                    parts.rad_set(x),
                    parts.rad_set(dy)
                ))
            })?;
            Ok(Some(Upper {
                u,
                y: parts.delta_image(z)?,
            }))
        }
        _ => Ok(None),
    }
}

impl BowtieSpace {
    pub fn parts(&self) -> &SbpParts {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[BowtiePoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> BowtiePoint {
        self.points[i]
    }

    pub fn index_of(&self, p: BowtiePoint) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        self.compose[i * self.len() + j]
    }

    fn order(&self, p: BowtiePoint, q: BowtiePoint) -> bool {
        use BowtiePoint::{Lower, Upper};
        let uf = &self.parts.ultrafilters;
        match (p, q) {
            (Lower { u, x }, Lower { u: v, x: y }) => {
                uf.le(u, v) && self.parts.radical_filters.le(x, y)
            }
            (Upper { u, y: y1 }, Upper { u: v, y: y2 }) => {
                uf.le(v, u) && self.parts.image_filters.le(y2, y1)
            }
            (Lower { u, .. }, Upper { u: v, .. }) => u == v,
            (Upper { .. }, Lower { .. }) => false,
        }
    }

    /// `(𝔲, 𝔵)` or `+(𝔲, 𝔶)` with the filters written as subsets of `A`.
    pub fn label(&self, i: usize) -> String {
        match self.points[i] {
            BowtiePoint::Lower { u, x } => {
                format!("({}, {})", self.parts.ultra_set(u), self.parts.rad_set(x))
            }
            BowtiePoint::Upper { u, y } => format!(
                "+({}, {})",
                self.parts.ultra_set(u),
                self.parts.image_set(y)
            ),
        }
    }

    /// `W_(U,V)` for up-sets `U` of ultrafilters and `V` of radical filters.
    pub fn w_set(&self, u_set: Subset, v_set: Subset) -> Result<Subset, PairError> {
        let uf = &self.parts.ultrafilters;
        let rf = &self.parts.radical_filters;
        if !is_up_set(uf, u_set) {
            return Err(PairError::NotUpSet(format!("{u_set} in the ultrafilters")));
        }
        if !is_up_set(rf, v_set) {
            return Err(PairError::NotUpSet(format!(
                "{v_set} in the radical filters"
            )));
        }
        let dv = v_set
            .iter()
            .map(|x| self.parts.delta_image(x))
            .collect::<Result<Subset, _>>()?;
        Ok((0..self.len())
            .filter(|&i| match self.points[i] {
                BowtiePoint::Lower { u, x } => u_set.contains(u) && v_set.contains(x),
                BowtiePoint::Upper { u, y } => u_set.contains(u) || !dv.contains(y),
            })
            .collect())
    }

    /// The space with every point a unit and no top.
    pub fn to_space(&self) -> ResiduatedSpace {
        let labels = (0..self.len()).map(|i| self.label(i)).collect();
        ResiduatedSpace::from_fn(
            format!("F⋈({})", self.parts.algebra.name()),
            labels,
            |i, j| self.le(i, j),
            |i, j| self.compose(i, j),
            Subset::full(self.len()),
            None,
        )
        .expect("bowtie tables are well formed")
    }

    pub fn to_json(&self) -> Result<BowtieJson, PairError> {
        let n = self.len();
        let points = (0..n)
            .map(|i| {
                let (kind, u, f) = match self.points[i] {
                    BowtiePoint::Lower { u, x } => ("lower", u, self.parts.rad_set(x)),
                    BowtiePoint::Upper { u, y } => ("upper", u, self.parts.image_set(y)),
                };
                PointJson {
                    kind,
                    label: self.label(i),
                    ultrafilter: self.parts.ultra_set(u).to_vec(),
                    filter: f.to_vec(),
                }
            })
            .collect();
        Ok(BowtieJson {
            algebra: self.parts.algebra.name().to_string(),
            points,
            leq: (0..n)
                .map(|i| (0..n).map(|j| self.le(i, j)).collect())
                .collect(),
            compose: (0..n)
                .map(|i| (0..n).map(|j| self.compose(i, j)).collect())
                .collect(),
            alpha: alpha(self)?,
        })
    }

    /// Graphviz rendering: Hasse diagram with Lower points as ellipses below
    /// Upper points as boxes, each annotated with its preimage under `α`.
    pub fn to_dot(&self) -> Result<String, PairError> {
        let al = alpha(self)?;
        let mut pre = vec![0; self.len()];
        for (f, &p) in al.iter().enumerate() {
            pre[p] = f;
        }
        let mut s = format!(
            "digraph \"F⋈({})\" {{\n  rankdir=BT;\n",
            self.parts.algebra.name()
        );
        for (rank, upper) in [("min", false), ("max", true)] {
            let members: Vec<String> = (0..self.len())
                .filter(|&i| self.points[i].is_upper() == upper)
                .map(|i| format!("q{i}"))
                .collect();
            if !members.is_empty() && self.points.iter().any(|p| p.is_upper()) {
                writeln!(s, "  {{ rank={rank}; {}; }}", members.join("; ")).unwrap();
            }
        }
        for (i, &f) in pre.iter().enumerate() {
            let shape = if self.points[i].is_upper() {
                "box"
            } else {
                "ellipse"
            };
            writeln!(
                s,
                "  q{i} [label=\"{}\", shape={shape}, xlabel=\"α⁻¹: {}\"];",
                self.label(i),
                self.parts.spectrum.filter(f)
            )
            .unwrap();
        }
        for (i, j) in self.to_space().covers() {
            writeln!(s, "  q{i} -> q{j};").unwrap();
        }
        Ok(s + "}\n")
    }
}

fn is_up_set(sp: &Spectrum, s: Subset) -> bool {
    s.iter()
        .all(|i| sp.ids().filter(|&j| sp.le(i, j)).all(|j| s.contains(j)))
}

/// Every up-set of a spectrum under inclusion, by brute force.
fn up_sets(sp: &Spectrum) -> Vec<Subset> {
    assert!(
        sp.len() <= MAX_ENUMERATED_POINTS,
        "spectrum too large to enumerate"
    );
    (0..1u64 << sp.len())
        .map(Subset::from_bits)
        .filter(|&s| is_up_set(sp, s))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointJson {
    pub kind: &'static str,
    pub label: String,
    pub ultrafilter: Vec<usize>,
    pub filter: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BowtieJson {
    pub algebra: String,
    pub points: Vec<PointJson>,
    pub leq: Vec<Vec<bool>>,
    pub compose: Vec<Vec<Option<usize>>>,
    /// `alpha[i]` is the point assigned to prime filter `i` of `A`.
    pub alpha: Vec<usize>,
}

/// `α(𝔞)`: `(𝔞 ∩ B, 𝔞 ∩ R)` when `𝔞 ⊆ 𝔞*`, else `+(𝔞* ∩ B, δ[𝔞* ∩ R])`.
pub fn alpha_point(parts: &SbpParts, f: usize) -> Result<BowtiePoint, PairError> {
    let sp = &parts.spectrum;
    let s = sp.star(f)?;
    Ok(if sp.le(f, s) {
        let fs = sp.filter(f);
        BowtiePoint::Lower {
            u: parts.ultrafilter_of(fs)?,
            x: parts.radical_trace(fs)?,
        }
    } else {
        let ss = sp.filter(s);
        BowtiePoint::Upper {
            u: parts.ultrafilter_of(ss)?,
            y: parts.delta_image(parts.radical_trace(ss)?)?,
        }
    })
}

/// `α` as a map from prime filters of `A` to points, asserted to be a
/// bijection that preserves and reflects the order.
pub fn alpha(x: &BowtieSpace) -> Result<Vec<usize>, PairError> {
    let parts = &x.parts;
    let sp = &parts.spectrum;
    let map = sp
        .ids()
        .map(|f| {
            let p = alpha_point(parts, f)?;
            x.index_of(p).ok_or_else(|| {
                parts.assertion(format!("α({}) = {p:?} is not a point", sp.filter(f)))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let image: Subset = map.iter().copied().collect();
    if map.len() != x.len() || image.len() != x.len() {
        return Err(parts.assertion(format!(
            "α is not bijective: {} prime filters, {} points",
            sp.len(),
            x.len()
        )));
    }
    for f in sp.ids() {
        for g in sp.ids() {
            if sp.le(f, g) != x.le(map[f], map[g]) {
                return Err(parts.assertion(format!(
                    "α does not preserve and reflect order at {} and {}",
                    sp.filter(f),
                    sp.filter(g)
                )));
            }
        }
    }
    Ok(map)
}

fn as_check(name: &str, r: Result<(), PairError>) -> Check {
    let mut t = Tally::new(name);
    match r {
        Ok(()) => t.case(true, String::new),
        Err(e) => t.fail(e.to_string()),
    }
    t.finish()
}

/// `α(𝔞 • 𝔟) = α(𝔞) ∘ α(𝔟)` over all pairs, with undefined products on both
/// sides agreeing.
pub fn check_transport(x: &BowtieSpace, map: &[usize]) -> Check {
    let sp = &x.parts.spectrum;
    let mut t = Tally::new("α transports • to ∘");
    for f in sp.ids() {
        for g in sp.ids() {
            let left = sp.bullet(f, g).defined().map(|h| map[h]);
            let right = x.compose(map[f], map[g]);
            t.case(left == right, || {
                format!("{}•{}", sp.filter(f), sp.filter(g))
            });
        }
    }
    t.finish()
}

/// The shape of `𝔞 • 𝔟` in terms of the radical operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductCase {
    DifferentUltrafilters,
    BothBelowRu,
    BelowStarOfOther,
    Whole,
}

/// Classifies `𝔞 • 𝔟` and returns the product the classification predicts.
pub fn predicted_product(
    parts: &SbpParts,
    f: usize,
    g: usize,
) -> Result<(ProductCase, Option<Subset>), PairError> {
    let sp = &parts.spectrum;
    let (fs, gs) = (sp.filter(f), sp.filter(g));
    let u = parts.ultrafilter_of(fs)?;
    if u != parts.ultrafilter_of(gs)? {
        return Ok((ProductCase::DifferentUltrafilters, None));
    }
    let ru = parts.r_u(u);
    let us = parts.ultra_set(u);
    let rf = &parts.radical_filters;
    if fs.is_subset(ru) && gs.is_subset(ru) {
        let z = rf
            .bullet(parts.radical_trace(fs)?, parts.radical_trace(gs)?)
            .defined();
        let z =
            z.ok_or_else(|| parts.assertion("a radical product is the whole algebra".into()))?;
        return Ok((
            ProductCase::BothBelowRu,
            Some(parts.generated(us, parts.rad_set(z))),
        ));
    }
    for (p, q) in [(f, g), (g, f)] {
        let (ps, qs) = (sp.filter(p), sp.filter(q));
        let qstar = sp.filter(sp.star(q)?);
        if ps.is_subset(qstar) && qstar.is_subset(ru) && ru.is_subset(qs) {
            let z = rf.arrow(parts.radical_trace(ps)?, parts.radical_trace(qstar)?)?;
            let z = z.ok_or_else(|| parts.assertion(format!("{ps} ∩ R ⇒ {qstar} ∩ R is empty")))?;
            let star = sp.star_set(parts.generated(us, parts.rad_set(z)))?;
            return Ok((ProductCase::BelowStarOfOther, Some(star)));
        }
    }
    Ok((ProductCase::Whole, None))
}

/// Exhaustive checks of the filter-pair lemmas, `α` and the `W` sets.
pub fn battery(a: &Algebra) -> Result<Vec<Check>, PairError> {
    let x = build_bowtie(a)?;
    let parts = &x.parts;
    let alg = &parts.algebra;
    let sp = &parts.spectrum;
    let rf = &parts.radical_filters;
    let uf = &parts.ultrafilters;
    let rad = parts.radical.carrier();
    let show = |f: usize| sp.filter(f).to_string();
    let mut out = Vec::new();

    let stars = sp
        .ids()
        .map(|f| sp.star(f))
        .collect::<Result<Vec<_>, _>>()?;
    let ultras = sp
        .ids()
        .map(|f| parts.ultrafilter_of(sp.filter(f)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut t = Tally::new("filters with different ultrafilters multiply to the whole algebra");
    for f in sp.ids() {
        for g in sp.ids().filter(|&g| ultras[g] != ultras[f]) {
            t.case(sp.bullet(f, g) == Bullet::Whole, || {
                format!("{}•{}", show(f), show(g))
            });
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("𝔞 and 𝔞* are comparable");
    for f in sp.ids() {
        t.case(sp.le(f, stars[f]) || sp.le(stars[f], f), || show(f));
    }
    out.push(t.finish());

    let mut t = Tally::new("𝔞 and 𝔞* share their ultrafilter");
    for f in sp.ids() {
        t.case(ultras[f] == ultras[stars[f]], || show(f));
    }
    out.push(t.finish());

    let mut t = Tally::new("𝔞 or 𝔞* contains the radical");
    for f in sp.ids() {
        t.case(
            rad.is_subset(sp.filter(f)) || rad.is_subset(sp.filter(stars[f])),
            || show(f),
        );
    }
    out.push(t.finish());

    let mut t = Tally::new("R_𝔲 lies between 𝔞 and 𝔞*");
    for f in sp.ids() {
        let (fs, ss, ru) = (sp.filter(f), sp.filter(stars[f]), parts.r_u(ultras[f]));
        let ok = (fs.is_subset(ru) && ru.is_subset(ss)) || (ss.is_subset(ru) && ru.is_subset(fs));
        t.case(ok, || show(f));
    }
    out.push(t.finish());

    let mut t = Tally::new("R_𝔲 is prime and equal to its star");
    for u in uf.ids() {
        let ru = parts.r_u(u);
        t.case(sp.id_of(ru).is_some(), || {
            format!("R_𝔲 = {ru} is not prime")
        });
        t.case(sp.star_set(ru) == Ok(ru), || {
            format!("R_𝔲 = {ru} differs from its star")
        });
    }
    out.push(t.finish());

    let mut t = Tally::new("𝔞 ⊇ R(A) implies 𝔞 = 𝔞**");
    for f in sp.ids().filter(|&f| rad.is_subset(sp.filter(f))) {
        t.case(stars[stars[f]] == f, || show(f));
    }
    out.push(t.finish());

    let mut t = Tally::new("δ[𝔞* ∩ R] = ¬(C(A) ∖ 𝔞)");
    let corad = coradical(alg)?;
    for f in sp.ids() {
        let left = parts.delta_set(sp.filter(stars[f]).intersection(rad));
        let right = corad.difference(sp.filter(f)).map(|c| alg.neg(c));
        t.case(left == right, || show(f));
    }
    out.push(t.finish());

    let mut t = Tally::new("μ_u fixes 𝔞 ∩ R for u ∉ 𝔲_𝔞");
    let mut t2 = Tally::new("a proper trace fixed by every μ_u, u ∉ 𝔲, lies above 𝔲");
    for f in sp.ids() {
        let fs = sp.filter(f);
        let xr = parts.radical_trace(fs)?;
        let us = parts.ultra_set(ultras[f]);
        for (i, &b) in parts.skeleton.embedding.iter().enumerate() {
            if !us.contains(b) {
                t.case(mu(parts, i, xr)? == xr, || {
                    format!("u = {b}, 𝔞 = {}", show(f))
                });
            }
        }
        if rf.is_whole(xr) {
            continue;
        }
        for v in uf.ids() {
            let vs = parts.ultra_set(v);
            let all_fix = parts
                .skeleton
                .embedding
                .iter()
                .enumerate()
                .filter(|(_, b)| !vs.contains(**b))
                .map(|(i, _)| mu(parts, i, xr).map(|m| m == xr))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .all(|b| b);
            if all_fix {
                t2.case(vs.is_subset(fs), || format!("𝔲 = {vs}, 𝔞 = {}", show(f)));
            }
        }
    }
    out.push(t.finish());
    out.push(t2.finish());

    let mut t = Tally::new("every ultrafilter fixes the whole radical");
    let mut t2 = Tally::new("𝔲 fixes 𝔵 iff 𝔣_𝔵 ⊆ 𝔲, with 𝔣_𝔵 nonempty");
    for xr in rf.ids() {
        if rf.is_whole(xr) {
            for u in uf.ids() {
                t.case(fixes(parts, u, xr)?, || parts.ultra_set(u).to_string());
            }
        }
        let r = f_filter(parts, xr);
        t2.case(r.is_ok(), || r.clone().unwrap_err().to_string());
    }
    out.push(t.finish());
    out.push(t2.finish());

    let mut t = Tally::new("⟨𝔲 ∪ 𝔵⟩ is prime with traces 𝔲 and 𝔵");
    let mut t2 = Tally::new("star of ⟨𝔲 ∪ 𝔵⟩ has the generator description");
    let delta_rad = parts.delta_set(rad);
    for p in x.points() {
        let BowtiePoint::Lower { u, x: xr } = *p else {
            continue;
        };
        let (us, xs) = (parts.ultra_set(u), parts.rad_set(xr));
        let gen = parts.generated(us, xs);
        let prime = sp.id_of(gen).is_some();
        t.case(
            prime
                && gen.intersection(parts.skeleton.carrier()) == us
                && gen.intersection(rad) == xs,
            || format!("({us}, {xs})"),
        );
        if !prime {
            continue;
        }
        let star = sp.star_set(gen)?;
        let dx = parts.delta_set(xs);
        if dx == delta_rad {
            t2.case(star == parts.r_u(u), || {
                format!("({us}, {xs}): star is not R_𝔲")
            });
            continue;
        }
        let outside: Vec<usize> = rad
            .iter()
            .filter(|&r| !dx.contains(alg.neg(alg.neg(r))))
            .collect();
        let mut lows = Subset::EMPTY;
        for b in us {
            for &r in &outside {
                lows.insert(alg.meet(b, alg.neg(r)));
            }
        }
        let described = alg.up_closure(lows);
        let corad_part: Subset = outside.iter().map(|&r| alg.neg(r)).collect();
        t2.case(star == described, || {
            format!("({us}, {xs}): {star} against {described}")
        });
        t2.case(star.intersection(corad) == corad_part, || {
            format!("({us}, {xs}): coradical part")
        });
        t2.case(gen.is_subset(star), || {
            format!("({us}, {xs}): not below its star")
        });
    }
    out.push(t.finish());
    out.push(t2.finish());

    let mut t = Tally::new("Δ is a closure operator whose fixed points match S(δ[R])");
    let mut fixed = Vec::new();
    for xr in rf.ids() {
        let d = parts.big_delta(xr)?;
        t.case(rf.le(xr, d), || {
            format!("Δ{} is not above it", parts.rad_set(xr))
        });
        t.case(parts.big_delta(d)? == d, || {
            format!("Δ is not idempotent at {}", parts.rad_set(xr))
        });
        for yr in rf.ids().filter(|&yr| rf.le(xr, yr)) {
            t.case(rf.le(d, parts.big_delta(yr)?), || {
                format!("Δ is not monotone at {}", parts.rad_set(xr))
            });
        }
        if d == xr {
            fixed.push(xr);
        }
    }
    let beta = fixed
        .iter()
        .map(|&xr| parts.image_filters.id_of(parts.image.pull(rf.filter(xr))))
        .collect::<Vec<_>>();
    t.case(beta.iter().all(Option::is_some), || {
        "some 𝔵 ∩ δ[R] is not prime".into()
    });
    let beta: Vec<usize> = beta.into_iter().flatten().collect();
    let image: Subset = beta.iter().copied().collect();
    t.case(
        image.len() == parts.image_filters.len() && beta.len() == fixed.len(),
        || "β is not bijective".into(),
    );
    for (i, &xr) in fixed.iter().enumerate() {
        if let Some(&b) = beta.get(i) {
            t.case(parts.delta_preimage(b)? == xr, || {
                format!("Δ does not invert β at {}", parts.rad_set(xr))
            });
            for (j, &yr) in fixed.iter().enumerate() {
                if let Some(&c) = beta.get(j) {
                    t.case(rf.le(xr, yr) == parts.image_filters.le(b, c), || {
                        "β is not an order isomorphism".into()
                    });
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("δ[φ(x)] = φ(δx)");
    for r in parts.radical.algebra.elements() {
        let left = rf
            .containing(r)
            .iter()
            .map(|xr| parts.delta_image(xr))
            .collect::<Result<Subset, _>>()?;
        let dr = parts
            .image
            .index_of(parts.delta[r])
            .expect("δ lands in its image");
        let right = parts.image_filters.containing(dr);
        t.case(left == right, || {
            format!("x = {}", parts.radical.embedding[r])
        });
    }
    out.push(t.finish());

    let mut t = Tally::new("• follows the three-case description");
    for f in sp.ids() {
        for g in sp.ids() {
            let (case, predicted) = predicted_product(parts, f, g)?;
            let actual = sp.bullet(f, g).defined().map(|h| sp.filter(h));
            t.case(predicted == actual, || {
                format!("{}•{} ({case:?})", show(f), show(g))
            });
        }
    }
    out.push(t.finish());

    let map = match alpha(&x) {
        Ok(m) => m,
        Err(e) => {
            out.push(as_check("α is a bijective order isomorphism", Err(e)));
            return Ok(out);
        }
    };
    out.push(as_check("α is a bijective order isomorphism", Ok(())));
    out.push(check_transport(&x, &map));
    out.extend(check_w_sets(&x, &map)?);
    Ok(out)
}

/// `α⁻¹[W_(φ(u),φ(x))] = φ((u ∨ ¬x) ∧ (¬u ∨ x))`, and the `W` sets with their
/// complements separate points.
pub fn check_w_sets(x: &BowtieSpace, map: &[usize]) -> Result<Vec<Check>, PairError> {
    let parts = &x.parts;
    let alg = &parts.algebra;
    let sp = &parts.spectrum;
    let mut out = Vec::new();
    let mut t = Tally::new("α⁻¹[W_(φu,φx)] = φ((u ∨ ¬x) ∧ (¬u ∨ x))");
    for (i, &u) in parts.skeleton.embedding.iter().enumerate() {
        for (j, &r) in parts.radical.embedding.iter().enumerate() {
            let w = x.w_set(
                parts.ultrafilters.containing(i),
                parts.radical_filters.containing(j),
            )?;
            let pre: Subset = sp.ids().filter(|&f| w.contains(map[f])).collect();
            let e = alg.meet(alg.join(u, alg.neg(r)), alg.join(alg.neg(u), r));
            t.case(pre == sp.containing(e), || format!("u = {u}, x = {r}"));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("W sets separate points");
    let mut ws = Vec::new();
    for us in up_sets(&parts.ultrafilters) {
        for vs in up_sets(&parts.radical_filters) {
            ws.push(x.w_set(us, vs)?);
        }
    }
    for p in 0..x.len() {
        for q in (p + 1)..x.len() {
            let ok = ws.iter().any(|w| w.contains(p) != w.contains(q));
            t.case(ok, || format!("{} and {}", x.label(p), x.label(q)));
        }
    }
    out.push(t.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::{find_space_isomorphism, spectrum};
    use crate::fixtures;
    use crate::report::all_passed;

    fn nm4_bowtie() -> BowtieSpace {
        build_bowtie(&fixtures::nm4()).unwrap()
    }

    fn labels(x: &BowtieSpace) -> Vec<String> {
        (0..x.len()).map(|i| x.label(i)).collect()
    }

    #[test]
    fn nm4_has_three_points_in_a_chain() {
        let x = nm4_bowtie();
        assert_eq!(labels(&x), ["({3}, {3})", "({3}, {2,3})", "+({3}, {3})"]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(x.le(i, j), i <= j);
            }
        }
    }

    #[test]
    fn g3_has_no_upper_points() {
        let x = build_bowtie(&fixtures::g3()).unwrap();
        assert_eq!(labels(&x), ["({2}, {2})", "({2}, {1,2})"]);
    }

    #[test]
    fn nm4_mu_is_identity_at_zero_and_constant_at_one() {
        let parts = SbpParts::new(&fixtures::nm4()).unwrap();
        let b_one = parts.skeleton.index_of(3).unwrap();
        let b_zero = parts.skeleton.index_of(0).unwrap();
        let x = parts
            .radical_filters
            .id_of(parts.radical.pull(Subset::from_iter([2, 3])))
            .unwrap();
        assert_eq!(mu(&parts, b_zero, x).unwrap(), x);
        let whole = parts.radical_filters.whole().unwrap();
        assert_eq!(mu(&parts, b_one, x).unwrap(), whole);
    }

    #[test]
    fn nm4_fixing_and_f_filter() {
        let parts = SbpParts::new(&fixtures::nm4()).unwrap();
        for x in parts.radical_filters.ids() {
            assert!(fixes(&parts, 0, x).unwrap());
            assert_eq!(
                parts.skeleton.lift(f_filter(&parts, x).unwrap()),
                Subset::singleton(3)
            );
        }
    }

    #[test]
    fn g3xg3_atom_does_not_fix_the_other_factor() {
        let a = fixtures::g3xg3();
        let parts = SbpParts::new(&a).unwrap();
        let mut fixing = 0;
        let mut refused = 0;
        for u in parts.ultrafilters.ids() {
            for x in parts.radical_filters.ids() {
                if parts.radical_filters.is_whole(x) {
                    assert!(fixes(&parts, u, x).unwrap());
                } else if fixes(&parts, u, x).unwrap() {
                    fixing += 1;
                } else {
                    refused += 1;
                }
            }
        }
        assert!(fixing > 0 && refused > 0);
        for x in parts
            .radical_filters
            .ids()
            .filter(|&x| !parts.radical_filters.is_whole(x))
        {
            let f = f_filter(&parts, x).unwrap();
            assert!(
                parts.ultrafilters.id_of(f).is_some(),
                "a proper radical filter is fixed by a single ultrafilter"
            );
        }
        let whole = parts.radical_filters.whole().unwrap();
        assert_eq!(
            f_filter(&parts, whole).unwrap(),
            Subset::singleton(parts.skeleton.index_of(a.one()).unwrap())
        );
    }

    #[test]
    fn nm4_alpha_values() {
        let x = nm4_bowtie();
        let map = alpha(&x).unwrap();
        let sp = &x.parts().spectrum;
        let got: Vec<(String, String)> = sp
            .ids()
            .map(|f| (sp.filter(f).to_string(), x.label(map[f])))
            .collect();
        assert_eq!(
            got,
            [
                ("{3}".to_string(), "({3}, {3})".to_string()),
                ("{2,3}".into(), "({3}, {2,3})".into()),
                ("{1,2,3}".into(), "+({3}, {3})".into()),
            ]
        );
    }

    #[test]
    fn nm4_compositions() {
        let x = nm4_bowtie();
        assert_eq!(x.compose(1, 1), Some(1));
        assert_eq!(x.compose(0, 2), Some(2));
        assert_eq!(x.compose(2, 0), Some(2));
        assert_eq!(x.compose(1, 2), None);
        assert_eq!(x.compose(2, 2), None);
    }

    #[test]
    fn nm4_w_sets() {
        let x = nm4_bowtie();
        let parts = x.parts();
        let all_u = Subset::full(parts.ultrafilters.len());
        let b = parts.radical.index_of(2).unwrap();
        let w = x.w_set(all_u, parts.radical_filters.containing(b)).unwrap();
        assert_eq!(w, Subset::from_iter([1, 2]));
        let all_v = Subset::full(parts.radical_filters.len());
        assert_eq!(x.w_set(Subset::EMPTY, all_v).unwrap(), Subset::EMPTY);
        let not_up = Subset::singleton(
            parts
                .radical_filters
                .id_of(parts.radical.pull(Subset::singleton(3)))
                .unwrap(),
        );
        assert!(matches!(
            x.w_set(all_u, not_up),
            Err(PairError::NotUpSet(_))
        ));
    }

    #[test]
    fn g3_w_set() {
        let x = build_bowtie(&fixtures::g3()).unwrap();
        let parts = x.parts();
        let half = parts.radical.index_of(1).unwrap();
        let w = x
            .w_set(Subset::full(1), parts.radical_filters.containing(half))
            .unwrap();
        assert_eq!(w, Subset::singleton(1));
    }

    #[test]
    fn point_counts_match_spectra() {
        for a in fixtures::all() {
            let x = build_bowtie(&a).unwrap();
            assert_eq!(x.len(), spectrum(&a).unwrap().len(), "{}", a.name());
            assert!(find_space_isomorphism(&x.to_space(), &spectrum(&a).unwrap()).is_some());
        }
    }

    #[test]
    fn batteries_pass_on_fixtures() {
        for a in fixtures::all() {
            let checks = battery(&a).unwrap();
            assert!(
                all_passed(&checks),
                "{}: {:?}",
                a.name(),
                checks.iter().find(|c| !c.passed)
            );
        }
    }

    #[test]
    fn non_sbp_algebras_are_rejected() {
        let e = build_bowtie(&fixtures::nilpotent_minimum(5)).unwrap_err();
        assert!(matches!(e, PairError::Algebra(AlgebraError::NotSbp { .. })));
    }

    #[test]
    fn json_and_dot() {
        let x = nm4_bowtie();
        let j = serde_json::to_value(x.to_json().unwrap()).unwrap();
        assert_eq!(j["points"][2]["kind"], "upper");
        assert_eq!(j["compose"][2][2], serde_json::Value::Null);
        assert_eq!(j["alpha"], serde_json::json!([0, 1, 2]));
        let dot = x.to_dot().unwrap();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("rank=max; q2;"));
        assert!(dot.contains("shape=box"));
    }
}
