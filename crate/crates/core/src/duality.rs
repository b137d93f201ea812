//! Finite residuated spaces and the duality with finite MTL- and
//! GMTL-algebras.
//!
//! A space is stored by its order and its partial product `•`; the ternary
//! relation is derived as `R(x,y,z) ⇔ x•y defined and x•y ≤ z`. Every subset
//! of a finite space is clopen, so "clopen up-set" reads as "up-set".

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{is_homomorphism, Algebra, AlgebraError, MAX_ELEMENTS};
use crate::filters::{complex_product, Bullet, FilterError, Spectrum};
use crate::iso::{self, Structure};
use crate::report::{Check, Tally};
use crate::subset::{Subset, CAPACITY};

/// Largest space accepted by [`ResiduatedSpace::up_sets`].
pub const MAX_POINTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("space `{name}`: {detail}")]
    Shape { name: String, detail: String },
    #[error("space `{name}` violates `{check}`: {detail}")]
    Invalid {
        name: String,
        check: String,
        detail: String,
    },
    #[error("space has {points} points, more than the bound {bound}")]
    TooLarge { points: usize, bound: usize },
    #[error("space `{name}` has more than {bound} up-sets")]
    TooManyUpSets { name: String, bound: usize },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("point {point} of `{name}` has no star")]
    NoStar { name: String, point: usize },
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
}

/// Serialized form of a [`ResiduatedSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceRecord {
    pub name: String,
    pub labels: Vec<String>,
    /// `leq[x][y]` when `x ≤ y`.
    pub leq: Vec<Vec<bool>>,
    /// `product[x][y]` is `x•y`, or null when undefined.
    pub product: Vec<Vec<Option<usize>>>,
    pub units: Vec<usize>,
    pub top: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpaceRecord", into = "SpaceRecord")]
pub struct ResiduatedSpace {
    name: String,
    labels: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    product: Vec<Option<usize>>,
    units: Subset,
    top: Option<usize>,
}

impl TryFrom<SpaceRecord> for ResiduatedSpace {
    type Error = SpaceError;

    fn try_from(r: SpaceRecord) -> Result<Self, SpaceError> {
        let n = r.labels.len();
        let shape = |detail: String| SpaceError::Shape {
            name: r.name.clone(),
            detail,
        };
        if n > CAPACITY {
            return Err(SpaceError::TooLarge {
                points: n,
                bound: CAPACITY,
            });
        }
        if r.leq.len() != n || r.leq.iter().any(|row| row.len() != n) {
            return Err(shape(format!("leq must be {n}x{n}")));
        }
        if r.product.len() != n || r.product.iter().any(|row| row.len() != n) {
            return Err(shape(format!("product must be {n}x{n}")));
        }
        if r.product.iter().flatten().flatten().any(|&p| p >= n) {
            return Err(shape("product refers to a missing point".into()));
        }
        if r.units.iter().chain(&r.top).any(|&p| p >= n) {
            return Err(shape("unit or top refers to a missing point".into()));
        }
        Ok(ResiduatedSpace {
            n,
            leq: r.leq.concat(),
            product: r.product.concat(),
            units: r.units.iter().copied().collect(),
            top: r.top,
            name: r.name,
            labels: r.labels,
        })
    }
}

impl From<ResiduatedSpace> for SpaceRecord {
    fn from(s: ResiduatedSpace) -> Self {
        let n = s.n;
        SpaceRecord {
            leq: s
                .leq
                .chunks(n.max(1))
                .map(<[bool]>::to_vec)
                .take(n)
                .collect(),
            product: s
                .product
                .chunks(n.max(1))
                .map(<[Option<usize>]>::to_vec)
                .take(n)
                .collect(),
            units: s.units.to_vec(),
            top: s.top,
            name: s.name,
            labels: s.labels,
        }
    }
}

impl ResiduatedSpace {
    pub fn new(record: SpaceRecord) -> Result<Self, SpaceError> {
        record.try_into()
    }

    /// Builds a space from closures over `0..n`.
    pub fn from_fn(
        name: impl Into<String>,
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        product: impl Fn(usize, usize) -> Option<usize>,
        units: Subset,
        top: Option<usize>,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        Self::new(SpaceRecord {
            name: name.into(),
            leq: (0..n)
                .map(|x| (0..n).map(|y| leq(x, y)).collect())
                .collect(),
            product: (0..n)
                .map(|x| (0..n).map(|y| product(x, y)).collect())
                .collect(),
            units: units.to_vec(),
            top,
            labels,
        })
    }

    /// The spectrum of an algebra: prime filters under inclusion and `•`.
    pub fn from_spectrum(sp: &Spectrum) -> Self {
        let labels = sp.filters().iter().map(Subset::to_string).collect();
        Self::from_fn(
            format!("S({})", sp.algebra().name()),
            labels,
            |x, y| sp.le(x, y),
            |x, y| sp.bullet(x, y).defined(),
            Subset::full(sp.len()),
            sp.whole(),
        )
        .expect("spectrum tables are well formed")
    }

    pub fn record(&self) -> SpaceRecord {
        self.clone().into()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn units(&self) -> Subset {
        self.units
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn product(&self, x: usize, y: usize) -> Option<usize> {
        self.product[x * self.n + y]
    }

    /// `R(x,y,z)`.
    pub fn r(&self, x: usize, y: usize, z: usize) -> bool {
        self.product(x, y).is_some_and(|p| self.le(p, z))
    }

    pub fn up(&self, x: usize) -> Subset {
        self.points().filter(|&y| self.le(x, y)).collect()
    }

    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, x| acc.union(self.up(x)))
    }

    pub fn is_up_set(&self, s: Subset) -> bool {
        self.up_closure(s) == s
    }

    /// `R[U,V,−]`.
    pub fn product_sets(&self, u: Subset, v: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for x in u {
            for y in v {
                if let Some(p) = self.product(x, y) {
                    out.insert(p);
                }
            }
        }
        self.up_closure(out)
    }

    /// `U → V = {x : y ∈ U and R(x,y,z) imply z ∈ V}`.
    pub fn residual_sets(&self, u: Subset, v: Subset) -> Subset {
        self.points()
            .filter(|&x| {
                u.iter()
                    .all(|y| self.points().all(|z| !self.r(x, y, z) || v.contains(z)))
            })
            .collect()
    }

    /// Every up-set, sorted by size then mask; empty one omitted when the
    /// space has a top.
    pub fn up_sets(&self) -> Result<Vec<Subset>, SpaceError> {
        if self.n > MAX_POINTS {
            return Err(SpaceError::TooLarge {
                points: self.n,
                bound: MAX_POINTS,
            });
        }
        let mut seen = std::collections::HashSet::from([Subset::EMPTY]);
        let mut queue = vec![Subset::EMPTY];
        while let Some(u) = queue.pop() {
            for x in self.points().filter(|&x| !u.contains(x)) {
                let w = u.union(self.up(x));
                if seen.insert(w) {
                    if seen.len() > MAX_ELEMENTS + 1 {
                        return Err(SpaceError::TooManyUpSets {
                            name: self.name.clone(),
                            bound: MAX_ELEMENTS,
                        });
                    }
                    queue.push(w);
                }
            }
        }
        let mut out: Vec<Subset> = seen.into_iter().collect();
        if self.top.is_some() {
            out.retain(|u| !u.is_empty());
        }
        if out.len() > MAX_ELEMENTS {
            return Err(SpaceError::TooManyUpSets {
                name: self.name.clone(),
                bound: MAX_ELEMENTS,
            });
        }
        out.sort_by_key(|u| (u.len(), u.bits()));
        Ok(out)
    }

    /// `x* = max{y : x•y defined}`.
    pub fn star_point(&self, x: usize) -> Result<usize, SpaceError> {
        let cands: Vec<usize> = self
            .points()
            .filter(|&y| self.product(x, y).is_some())
            .collect();
        self.greatest(&cands).ok_or_else(|| SpaceError::NoStar {
            name: self.name.clone(),
            point: x,
        })
    }

    /// `y ⇒ z = max{x : x•y ≤ z}`, absent when no `x` qualifies.
    pub fn arrow_point(&self, y: usize, z: usize) -> Result<Option<usize>, SpaceError> {
        let cands: Vec<usize> = self.points().filter(|&x| self.r(x, y, z)).collect();
        if cands.is_empty() {
            return Ok(None);
        }
        self.greatest(&cands).map(Some).ok_or_else(|| {
            SpaceError::AssertionFailed(format!(
                "no greatest x with x•{} ≤ {} in `{}`",
                self.labels[y], self.labels[z], self.name
            ))
        })
    }

    fn greatest(&self, cands: &[usize]) -> Option<usize> {
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&c| self.le(c, m)))
    }

    /// Pairs `(x, y)` where `y` covers `x`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.points() {
            for y in self.points() {
                if x != y
                    && self.le(x, y)
                    && !self
                        .points()
                        .any(|z| z != x && z != y && self.le(x, z) && self.le(z, y))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub(crate) fn structure(&self) -> Structure {
        let mut s = Structure::new(self.n);
        s.colors = self
            .points()
            .map(|x| self.units.contains(x) as u64 | ((self.top == Some(x)) as u64) << 1)
            .collect();
        s.relations.push(self.leq.clone());
        s.operations.push(self.product.clone());
        s
    }

    /// Graphviz rendering: the Hasse diagram, with stars as point annotations.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph \"{}\" {{\n  rankdir=BT;\n", escape(&self.name));
        for x in self.points() {
            let star = match self.star_point(x) {
                Ok(y) => format!(", xlabel=\"*: p{y}\""),
                Err(_) => String::new(),
            };
            let shape = if self.top == Some(x) {
                ", shape=box"
            } else {
                ""
            };
            s += &format!(
                "  p{x} [label=\"{}\"{shape}{star}];\n",
                escape(&self.labels[x])
            );
        }
        for (x, y) in self.covers() {
            s += &format!("  p{x} -> p{y};\n");
        }
        s + "}\n"
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Some isomorphism of spaces preserving order, `•`, units and top.
pub fn find_space_isomorphism(a: &ResiduatedSpace, b: &ResiduatedSpace) -> Option<Vec<usize>> {
    iso::find(&a.structure(), &b.structure())
}

/// The spectrum of an algebra as a space.
pub fn spectrum(a: &Algebra) -> Result<ResiduatedSpace, SpaceError> {
    Ok(ResiduatedSpace::from_spectrum(&Spectrum::new(a)?))
}

/// Exhaustive check of the residuated-space axioms and the MTL-space
/// conditions. Separation and the unit law are checked on principal up-sets,
/// which is equivalent because `R[−,−,−]` distributes over unions.
pub fn check_residuated_space(x: &ResiduatedSpace) -> Vec<Check> {
    let pts: Vec<usize> = x.points().collect();
    let lbl = |p: usize| x.label(p).to_string();
    let mut out = Vec::new();

    let mut t = Tally::new("order is a partial order");
    for &a in &pts {
        t.case(x.le(a, a), || format!("{} ≰ itself", lbl(a)));
        for &b in &pts {
            if a != b {
                t.case(!(x.le(a, b) && x.le(b, a)), || {
                    format!("{} and {}", lbl(a), lbl(b))
                });
            }
            for &c in &pts {
                if x.le(a, b) && x.le(b, c) {
                    t.case(x.le(a, c), || {
                        format!("{} ≤ {} ≤ {}", lbl(a), lbl(b), lbl(c))
                    });
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("associativity through intermediaries");
    for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                for &w in &pts {
                    let left = pts.iter().any(|&u| x.r(a, b, u) && x.r(u, c, w));
                    let right = pts.iter().any(|&v| x.r(b, c, v) && x.r(a, v, w));
                    t.case(left == right, || {
                        format!("({},{},{},{})", lbl(a), lbl(b), lbl(c), lbl(w))
                    });
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("R is antitone, antitone, isotone");
    for &a in &pts {
        for &b in &pts {
            for &c in pts.iter().filter(|&&c| x.r(a, b, c)) {
                for &a2 in pts.iter().filter(|&&p| x.le(p, a)) {
                    for &b2 in pts.iter().filter(|&&p| x.le(p, b)) {
                        for &c2 in pts.iter().filter(|&&p| x.le(c, p)) {
                            t.case(x.r(a2, b2, c2), || {
                                format!(
                                    "R({},{},{}) but not R({},{},{})",
                                    lbl(a),
                                    lbl(b),
                                    lbl(c),
                                    lbl(a2),
                                    lbl(b2),
                                    lbl(c2)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("separation by up-sets");
    for &a in &pts {
        for &b in &pts {
            for &c in pts.iter().filter(|&&c| !x.r(a, b, c)) {
                let ok = !x.product_sets(x.up(a), x.up(b)).contains(c);
                t.case(ok, || format!("({},{},{})", lbl(a), lbl(b), lbl(c)));
            }
        }
    }
    out.push(t.finish());

    out.push(Check {
        name: "derived sets are clopen".into(),
        passed: true,
        cases: 0,
        detail: "every subset of a finite discrete space is clopen".into(),
    });

    let mut t = Tally::new("E is a two-sided unit");
    t.case(x.is_up_set(x.units()), || "E is not an up-set".into());
    for &a in &pts {
        let u = x.up(a);
        t.case(x.product_sets(u, x.units()) == u, || {
            format!("R[↑{},E,−]", lbl(a))
        });
        t.case(x.product_sets(x.units(), u) == u, || {
            format!("R[E,↑{},−]", lbl(a))
        });
    }
    out.push(t.finish());

    let mut t = Tally::new("• is commutative");
    for &a in &pts {
        for &b in &pts {
            t.case(x.product(a, b) == x.product(b, a), || {
                format!("{}•{}", lbl(a), lbl(b))
            });
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("E is every point");
    t.case(x.units() == x.all(), || format!("E = {}", x.units()));
    out.push(t.finish());

    let mut t = Tally::new("linearity");
    for &a in &pts {
        for &b in &pts {
            for &c in pts.iter().filter(|&&c| x.r(a, b, c)) {
                for &v in &pts {
                    for &w in pts.iter().filter(|&&w| x.r(a, v, w)) {
                        t.case(x.le(b, w) || x.le(v, c), || {
                            format!(
                                "R({0},{1},{2}) and R({0},{3},{4})",
                                lbl(a),
                                lbl(b),
                                lbl(c),
                                lbl(v),
                                lbl(w)
                            )
                        });
                    }
                }
            }
        }
    }
    out.push(t.finish());

    if let Some(top) = x.top() {
        let mut t = Tally::new("top is greatest and • is total");
        for &a in &pts {
            t.case(x.le(a, top), || format!("{} ≰ top", lbl(a)));
            for &b in &pts {
                t.case(x.product(a, b).is_some(), || {
                    format!("{}•{} undefined", lbl(a), lbl(b))
                });
            }
        }
        out.push(t.finish());
    }
    out
}

fn require_valid(x: &ResiduatedSpace) -> Result<(), SpaceError> {
    match check_residuated_space(x).into_iter().find(|c| !c.passed) {
        None => Ok(()),
        Some(c) => Err(SpaceError::Invalid {
            name: x.name.clone(),
            check: c.name,
            detail: c.detail,
        }),
    }
}

/// The algebra of up-sets of a space, with its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpSetAlgebra {
    pub algebra: Algebra,
    /// `up_sets[i]` is the up-set represented by element `i`.
    pub up_sets: Vec<Subset>,
}

impl UpSetAlgebra {
    pub fn index_of(&self, u: Subset) -> Option<usize> {
        self.up_sets.iter().position(|&v| v == u)
    }
}

/// Up-sets under `∩`, `∪`, `R[U,V,−]` and unit `E`; nonempty up-sets when the
/// space has a top. The derived residual is compared with the set formula.
pub fn upset_algebra(x: &ResiduatedSpace) -> Result<UpSetAlgebra, SpaceError> {
    require_valid(x)?;
    let ups = x.up_sets()?;
    let pos = |u: Subset| ups.iter().position(|&v| v == u);
    let missing = |what: &str, u: Subset| {
        SpaceError::AssertionFailed(format!("{what} {u} is not an up-set of `{}`", x.name))
    };
    let mut mul = vec![vec![0; ups.len()]; ups.len()];
    for (i, &u) in ups.iter().enumerate() {
        for (j, &v) in ups.iter().enumerate() {
            let p = x.product_sets(u, v);
            mul[i][j] = pos(p).ok_or_else(|| missing("product", p))?;
        }
    }
    let one = pos(x.units()).ok_or_else(|| missing("unit", x.units()))?;
    let zero = if x.top.is_some() {
        None
    } else {
        pos(Subset::EMPTY)
    };
    let alg = Algebra::from_fn(
        format!("A({})", x.name),
        ups.len(),
        |i, j| ups[i].is_subset(ups[j]),
        |i, j| mul[i][j],
        one,
        zero,
    )?;
    for (i, &u) in ups.iter().enumerate() {
        for (j, &v) in ups.iter().enumerate() {
            if ups[alg.residuum(i, j)] != x.residual_sets(u, v) {
                return Err(SpaceError::AssertionFailed(format!(
                    "residual {u} → {v} in `{}` disagrees with the set formula",
                    x.name
                )));
            }
        }
    }
    Ok(UpSetAlgebra {
        algebra: alg,
        up_sets: ups,
    })
}

/// `φ(a) = {𝔞 : a ∈ 𝔞}` into the up-set algebra of the spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitMap {
    pub space: ResiduatedSpace,
    pub dual: UpSetAlgebra,
    /// `map[a]` is the element of `dual` representing `φ(a)`.
    pub map: Vec<usize>,
}

impl UnitMap {
    pub fn phi(&self, a: usize) -> Subset {
        self.dual.up_sets[self.map[a]]
    }
}

/// The unit map, asserted to be an isomorphism.
pub fn unit_map(a: &Algebra) -> Result<UnitMap, SpaceError> {
    let sp = Spectrum::new(a)?;
    let space = ResiduatedSpace::from_spectrum(&sp);
    let dual = upset_algebra(&space)?;
    let map = a
        .elements()
        .map(|x| {
            let u = sp.containing(x);
            dual.index_of(u).ok_or_else(|| {
                SpaceError::AssertionFailed(format!("φ({x}) = {u} is not an element of the dual"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let image: Subset = map.iter().copied().collect();
    if image.len() != a.size() || a.size() != dual.algebra.size() {
        return Err(SpaceError::AssertionFailed(format!(
            "φ is not bijective on `{}`",
            a.name()
        )));
    }
    is_homomorphism(a, &dual.algebra, &map)
        .map_err(|e| SpaceError::AssertionFailed(format!("φ on `{}`: {e}", a.name())))?;
    Ok(UnitMap { space, dual, map })
}

/// Checks that `m: x1 → x2` is a bounded morphism, and top-preserving when
/// both spaces have tops. Reflection of residuals is checked over all pairs of up-sets.
pub fn check_bounded_morphism(
    x1: &ResiduatedSpace,
    x2: &ResiduatedSpace,
    m: &[usize],
) -> Result<Vec<Check>, SpaceError> {
    if m.len() != x1.len() || m.iter().any(|&p| p >= x2.len()) {
        return Err(SpaceError::AssertionFailed(format!(
            "map does not send `{}` into `{}`",
            x1.name, x2.name
        )));
    }
    let p1: Vec<usize> = x1.points().collect();
    let p2: Vec<usize> = x2.points().collect();
    let mut out = Vec::new();

    let mut t = Tally::new("isotone");
    for &a in &p1 {
        for &b in p1.iter().filter(|&&b| x1.le(a, b)) {
            t.case(x2.le(m[a], m[b]), || {
                format!("{} ≤ {}", x1.label(a), x1.label(b))
            });
        }
    }
    if let (Some(t1), Some(t2)) = (x1.top(), x2.top()) {
        t.case(m[t1] == t2, || "top is not preserved".into());
    }
    out.push(t.finish());

    let mut t = Tally::new("R is preserved");
    for &a in &p1 {
        for &b in &p1 {
            for &c in p1.iter().filter(|&&c| x1.r(a, b, c)) {
                t.case(x2.r(m[a], m[b], m[c]), || {
                    format!("R({},{},{})", x1.label(a), x1.label(b), x1.label(c))
                });
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("R is reflected up to order");
    for &u in &p2 {
        for &v in &p2 {
            for &c in p1.iter().filter(|&&c| x2.r(u, v, m[c])) {
                let ok = p1.iter().any(|&a| {
                    x2.le(u, m[a]) && p1.iter().any(|&b| x2.le(v, m[b]) && x1.r(a, b, c))
                });
                t.case(ok, || {
                    format!("R({},{},α({}))", x2.label(u), x2.label(v), x1.label(c))
                });
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("residuals are reflected");
    let ups = x2.up_sets()?;
    let pre = |u: Subset| -> Subset { p1.iter().copied().filter(|&a| u.contains(m[a])).collect() };
    for &u in &ups {
        for &v in &ups {
            for &a in &p1 {
                let hyp = x1
                    .product_sets(Subset::singleton(a), pre(u))
                    .is_subset(pre(v));
                if hyp {
                    let ok = x2.product_sets(Subset::singleton(m[a]), u).is_subset(v);
                    t.case(ok, || format!("U={u} V={v} x={}", x1.label(a)));
                }
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("preimage of E lies in E");
    t.case(pre(x2.units()).is_subset(x1.units()), || "units".into());
    out.push(t.finish());
    Ok(out)
}

/// The dual of a homomorphism `f: a → b`: `𝔟 ↦ f⁻¹[𝔟]` from the spectrum of
/// `b` to that of `a`, asserted to be a bounded morphism.
pub fn dualize_hom(a: &Algebra, b: &Algebra, f: &[usize]) -> Result<Vec<usize>, SpaceError> {
    is_homomorphism(a, b, f).map_err(SpaceError::NotHomomorphism)?;
    let sa = Spectrum::new(a)?;
    let sb = Spectrum::new(b)?;
    let m = sb
        .ids()
        .map(|j| {
            let pre: Subset = a
                .elements()
                .filter(|&x| sb.filter(j).contains(f[x]))
                .collect();
            sa.id_of(pre).ok_or_else(|| {
                SpaceError::AssertionFailed(format!(
                    "preimage {pre} of {} is not prime",
                    sb.filter(j)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let x1 = ResiduatedSpace::from_spectrum(&sb);
    let x2 = ResiduatedSpace::from_spectrum(&sa);
    if let Some(c) = check_bounded_morphism(&x1, &x2, &m)?
        .into_iter()
        .find(|c| !c.passed)
    {
        return Err(SpaceError::Invalid {
            name: x1.name,
            check: c.name,
            detail: c.detail,
        });
    }
    Ok(m)
}

/// Checks that the space-level star, arrow and `R` agree with the filter
/// calculus they were built from.
pub fn spectrum_agreement(sp: &Spectrum) -> Vec<Check> {
    let x = ResiduatedSpace::from_spectrum(sp);
    let a = sp.algebra();
    let mut out = Vec::new();

    let mut t = Tally::new("R(x,y,z) iff x•y ≤ z");
    for p in sp.ids() {
        for q in sp.ids() {
            let prod = complex_product(a, sp.filter(p), sp.filter(q));
            for r in sp.ids() {
                let by_sets = prod.is_subset(sp.filter(r));
                t.case(by_sets == x.r(p, q, r), || format!("({p},{q},{r})"));
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("space arrow agrees with filter arrow");
    for q in sp.ids() {
        for r in sp.ids() {
            match (x.arrow_point(q, r), sp.arrow(q, r)) {
                (Ok(s), Ok(f)) => t.case(s == f, || format!("{q}⇒{r}")),
                (Err(e), _) => t.fail(e.to_string()),
                (_, Err(e)) => t.fail(e.to_string()),
            }
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("space star agrees with the Routley star");
    for p in sp.ids() {
        let expected = if a.is_bounded() {
            sp.star(p).ok()
        } else {
            sp.whole()
        };
        match x.star_point(p) {
            Ok(s) => t.case(Some(s) == expected, || format!("{p}*")),
            Err(e) => t.fail(e.to_string()),
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("• is undefined exactly on whole products");
    for p in sp.ids() {
        for q in sp.ids() {
            t.case(
                (sp.bullet(p, q) == Bullet::Whole) == x.product(p, q).is_none(),
                || format!("({p},{q})"),
            );
        }
    }
    out.push(t.finish());
    out
}

/// Space axioms, agreement with the filter calculus and the round trip
/// through the up-set algebra.
pub fn battery(a: &Algebra) -> Result<Vec<Check>, SpaceError> {
    let sp = Spectrum::new(a)?;
    let x = ResiduatedSpace::from_spectrum(&sp);
    let mut out = check_residuated_space(&x);
    out.extend(spectrum_agreement(&sp));
    let mut t = Tally::new("φ is an isomorphism onto the up-set algebra");
    match unit_map(a) {
        Ok(_) => t.case(true, String::new),
        Err(e) => t.fail(e.to_string()),
    }
    out.push(t.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_isomorphism, product};
    use crate::fixtures;
    use crate::report::all_passed;

    fn set(xs: &[usize]) -> Subset {
        xs.iter().copied().collect()
    }

    #[test]
    fn nm4_spectrum_shape() {
        let x = spectrum(&fixtures::nm4()).unwrap();
        assert_eq!(x.len(), 3);
        assert_eq!(x.product(1, 1), Some(1));
        assert_eq!(x.product(2, 1), None);
        for p in x.points() {
            assert_eq!(x.product(0, p), Some(p));
        }
        assert_eq!(x.covers(), vec![(0, 1), (1, 2)]);
        assert_eq!(x.star_point(1).unwrap(), 1);
        assert_eq!(x.star_point(2).unwrap(), 0);
    }

    #[test]
    fn bool2_dual_is_one_point() {
        let x = spectrum(&fixtures::bool2()).unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.product(0, 0), Some(0));
        let d = upset_algebra(&x).unwrap();
        assert!(find_isomorphism(&d.algebra, &fixtures::bool2()).is_some());
    }

    #[test]
    fn round_trips() {
        for a in fixtures::all()
            .into_iter()
            .chain([fixtures::goedel_hoop(3)])
        {
            let u = unit_map(&a).unwrap();
            assert!(
                find_isomorphism(&u.dual.algebra, &a).is_some(),
                "{}",
                a.name()
            );
        }
    }

    #[test]
    fn unit_map_values() {
        let g3 = unit_map(&fixtures::g3()).unwrap();
        assert_eq!(g3.phi(1), set(&[1]));
        assert_eq!(g3.phi(2), set(&[0, 1]));
        let nm4 = unit_map(&fixtures::nm4()).unwrap();
        assert_eq!(nm4.phi(1), set(&[2]));
    }

    #[test]
    fn non_commutative_antichain_is_flagged() {
        let x = ResiduatedSpace::from_fn(
            "bad",
            vec!["x".into(), "y".into()],
            |a, b| a == b,
            |a, b| Some(if (a, b) == (0, 1) { 0 } else { 1 }),
            Subset::full(2),
            None,
        )
        .unwrap();
        let checks = check_residuated_space(&x);
        let comm = checks
            .iter()
            .find(|c| c.name == "• is commutative")
            .unwrap();
        assert!(!comm.passed);
        assert_eq!(comm.detail, "x•y");
        assert!(upset_algebra(&x).is_err());
    }

    #[test]
    fn linearity_fails_off_semilinear_algebras() {
        let checks = check_residuated_space(&spectrum(&fixtures::heyting5()).unwrap());
        let lin = checks.iter().find(|c| c.name == "linearity").unwrap();
        assert!(!lin.passed);
        assert!(checks
            .iter()
            .filter(|c| c.name != "linearity")
            .all(|c| c.passed));
    }

    #[test]
    fn batteries_pass() {
        for a in fixtures::all()
            .into_iter()
            .chain([fixtures::goedel_hoop(3)])
        {
            let checks = battery(&a).unwrap();
            assert!(all_passed(&checks), "{}: {checks:?}", a.name());
        }
    }

    #[test]
    fn gmtl_space_has_top_and_total_product() {
        let x = spectrum(&fixtures::goedel_hoop(3)).unwrap();
        let top = x.top().unwrap();
        for p in x.points() {
            assert_eq!(x.star_point(p).unwrap(), top);
        }
    }

    #[test]
    fn dual_of_inclusion_of_two_into_g3() {
        let m = dualize_hom(&fixtures::bool2(), &fixtures::g3(), &[0, 2]).unwrap();
        assert_eq!(m, vec![0, 0]);
    }

    #[test]
    fn dual_of_projection_is_injective() {
        let g3 = fixtures::g3();
        let g9 = product(&g3, &g3).unwrap();
        let proj: Vec<usize> = g9.elements().map(|i| i / 3).collect();
        let m = dualize_hom(&g9, &g3, &proj).unwrap();
        assert_eq!(m.len(), 2);
        assert_ne!(m[0], m[1]);
        let nm4 = fixtures::nm4();
        let id: Vec<usize> = nm4.elements().collect();
        assert_eq!(dualize_hom(&nm4, &nm4, &id).unwrap(), vec![0, 1, 2]);
        assert!(matches!(
            dualize_hom(&g3, &g3, &[0, 0, 2]),
            Err(SpaceError::NotHomomorphism(_))
        ));
    }

    #[test]
    fn json_round_trip_and_dot() {
        let x = spectrum(&fixtures::nm4()).unwrap();
        let text = serde_json::to_string(&x).unwrap();
        let back: ResiduatedSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
        let dot = spectrum(&fixtures::g3()).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(dot.matches("[label=").count(), 2);
    }
}
