//! Prime filters, the complex product `•`, its partial residual `⇒` and the
//! Routley star.
//!
//! Prime filters of an algebra are interned once, in a canonical order: by
//! cardinality, then by bitmask. In GMTL mode the whole carrier is admitted as
//! a generalized prime filter and comes last. All later modules refer to
//! filters by their position in this list.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::report::{Check, Tally};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("{set} is not a prime filter of `{algebra}`")]
    NotPrime { algebra: String, set: Subset },
    #[error("algebra `{0}` has no bottom constant")]
    NotBounded(String),
    #[error("cannot generate a filter from the empty set")]
    EmptySubset,
    #[error("assertion failed on `{algebra}`: {detail}")]
    AssertionFailed { algebra: String, detail: String },
}

/// Outcome of a filter product: a prime filter, or the whole carrier of a
/// bounded algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bullet {
    Defined(usize),
    Whole,
}

impl Bullet {
    pub fn defined(self) -> Option<usize> {
        match self {
            Bullet::Defined(i) => Some(i),
            Bullet::Whole => None,
        }
    }
}

/// Whether `s` is nonempty, upward closed and closed under meets.
pub fn is_filter(a: &Algebra, s: Subset) -> bool {
    !s.is_empty() && a.is_up_set(s) && s.iter().all(|x| s.iter().all(|y| s.contains(a.meet(x, y))))
}

/// A proper prime filter, or in GMTL mode also the whole carrier.
pub fn is_generalized_prime(a: &Algebra, s: Subset) -> bool {
    if !is_filter(a, s) {
        return false;
    }
    if s == a.all() {
        return !a.is_bounded();
    }
    a.elements().all(|x| {
        a.elements()
            .all(|y| !s.contains(a.join(x, y)) || s.contains(x) || s.contains(y))
    })
}

fn join_irreducible(a: &Algebra, j: usize) -> bool {
    j != a.bottom()
        && !a
            .elements()
            .any(|x| a.lt(x, j) && a.elements().any(|y| a.lt(y, j) && a.join(x, y) == j))
}

/// The canonical list of (generalized) prime filters.
pub fn list_prime_filters(a: &Algebra) -> Vec<Subset> {
    let mut out: Vec<Subset> = a
        .elements()
        .filter(|&j| join_irreducible(a, j))
        .map(|j| a.up_set(j))
        .collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    if !a.is_bounded() {
        out.push(a.all());
    }
    out
}

/// The smallest filter containing a nonempty set: the up-set of its meet.
pub fn generated_filter(a: &Algebra, s: Subset) -> Result<Subset, FilterError> {
    let m = a.meet_all(s).ok_or(FilterError::EmptySubset)?;
    Ok(a.up_set(m))
}

/// `↑{x·y : x ∈ f, y ∈ g}`.
pub fn complex_product(a: &Algebra, f: Subset, g: Subset) -> Subset {
    let mut prods = Subset::EMPTY;
    for x in f {
        for y in g {
            prods.insert(a.mul(x, y));
        }
    }
    a.up_closure(prods)
}

/// Every filter of a finite algebra, one principal filter per element.
pub fn all_filters(a: &Algebra) -> Vec<Subset> {
    let mut out: Vec<Subset> = a.elements().map(|m| a.up_set(m)).collect();
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

/// The interned prime filters of an algebra with their product table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    algebra: Algebra,
    filters: Vec<Subset>,
    bullet: Vec<Bullet>,
}

impl Spectrum {
    /// Interns the prime filters and tabulates `•`, asserting that every
    /// product is prime or the whole carrier.
    pub fn new(a: &Algebra) -> Result<Self, FilterError> {
        let filters = list_prime_filters(a);
        let k = filters.len();
        let mut sp = Spectrum {
            algebra: a.clone(),
            filters,
            bullet: Vec::with_capacity(k * k),
        };
        for i in 0..k {
            for j in 0..k {
                let p = complex_product(a, sp.filters[i], sp.filters[j]);
                let b = if p == a.all() && a.is_bounded() {
                    Bullet::Whole
                } else {
                    match sp.id_of(p) {
                        Some(id) => Bullet::Defined(id),
                        None => {
                            return Err(sp.assertion(format!(
                                "{}•{} = {p} is neither prime nor the whole algebra",
                                sp.filters[i], sp.filters[j]
                            )))
                        }
                    }
                };
                sp.bullet.push(b);
            }
        }
        Ok(sp)
    }

    fn assertion(&self, detail: String) -> FilterError {
        FilterError::AssertionFailed {
            algebra: self.algebra.name().to_string(),
            detail,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.filters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filters.is_empty()
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.filters.len()
    }

    pub fn filters(&self) -> &[Subset] {
        &self.filters
    }

    pub fn filter(&self, id: usize) -> Subset {
        self.filters[id]
    }

    /// The whole carrier as a generalized prime filter (GMTL mode only).
    pub fn whole(&self) -> Option<usize> {
        (!self.algebra.is_bounded()).then(|| self.filters.len() - 1)
    }

    pub fn is_whole(&self, id: usize) -> bool {
        self.whole() == Some(id)
    }

    pub fn id_of(&self, s: Subset) -> Option<usize> {
        self.filters.iter().position(|&f| f == s)
    }

    /// Looks up a set that must be a generalized prime filter.
    pub fn require(&self, s: Subset) -> Result<usize, FilterError> {
        self.id_of(s).ok_or_else(|| FilterError::NotPrime {
            algebra: self.algebra.name().to_string(),
            set: s,
        })
    }

    /// `φ(x)`: the prime filters containing `x`.
    pub fn containing(&self, x: usize) -> Subset {
        self.ids()
            .filter(|&i| self.filters[i].contains(x))
            .collect()
    }

    /// Whether filter `i` is contained in filter `j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.filters[i].is_subset(self.filters[j])
    }

    pub fn bullet(&self, i: usize, j: usize) -> Bullet {
        self.bullet[i * self.len() + j]
    }

    /// `•` on arbitrary sets, which must be prime filters.
    pub fn bullet_sets(&self, f: Subset, g: Subset) -> Result<Bullet, FilterError> {
        Ok(self.bullet(self.require(f)?, self.require(g)?))
    }

    /// `b ⇒ c`: the union of all prime `a` with `a • b ⊆ c`, or `None` when
    /// there is no such `a`. The union is asserted to be prime, to be the
    /// greatest such filter, and to satisfy the adjunction.
    pub fn arrow(&self, b: usize, c: usize) -> Result<Option<usize>, FilterError> {
        let fits = |a: usize| match self.bullet(a, b) {
            Bullet::Defined(d) => self.le(d, c),
            Bullet::Whole => false,
        };
        let cands: Vec<usize> = self.ids().filter(|&a| fits(a)).collect();
        if cands.is_empty() {
            return Ok(None);
        }
        let union = cands
            .iter()
            .fold(Subset::EMPTY, |acc, &a| acc.union(self.filters[a]));
        let r = self.id_of(union).ok_or_else(|| {
            self.assertion(format!(
                "{}⇒{} = {union} is not prime",
                self.filters[b], self.filters[c]
            ))
        })?;
        if !fits(r) {
            return Err(self.assertion(format!(
                "{}⇒{} is not itself below the bound",
                self.filters[b], self.filters[c]
            )));
        }
        if let Some(a) = self.ids().find(|&a| fits(a) != self.le(a, r)) {
            return Err(self.assertion(format!(
                "adjunction fails for {} against {}⇒{}",
                self.filters[a], self.filters[b], self.filters[c]
            )));
        }
        Ok(Some(r))
    }

    /// The star set `{x : ¬x ∉ a}`, which need not be prime for arbitrary `a`.
    pub fn star_set(&self, a: Subset) -> Result<Subset, FilterError> {
        let alg = &self.algebra;
        if !alg.is_bounded() {
            return Err(FilterError::NotBounded(alg.name().to_string()));
        }
        Ok(alg
            .elements()
            .filter(|&x| !a.contains(alg.neg(x)))
            .collect())
    }

    /// The Routley star `a* = {x : ¬x ∉ a}`, asserted prime and equal to the
    /// greatest prime `b` with `a • b` proper.
    pub fn star(&self, a: usize) -> Result<usize, FilterError> {
        let s = self.star_set(self.filters[a])?;
        let id = self.id_of(s).ok_or_else(|| {
            self.assertion(format!("star of {} is {s}, not prime", self.filters[a]))
        })?;
        let proper: Vec<usize> = self
            .ids()
            .filter(|&b| self.bullet(a, b) != Bullet::Whole)
            .collect();
        let greatest = proper
            .iter()
            .copied()
            .find(|&m| proper.iter().all(|&b| self.le(b, m)));
        if greatest != Some(id) {
            return Err(self.assertion(format!(
                "star of {} is not the greatest filter with a proper product",
                self.filters[a]
            )));
        }
        Ok(id)
    }

    pub fn to_json(&self) -> Result<SpectrumJson, FilterError> {
        let k = self.len();
        let bullet = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match self.bullet(i, j) {
                        Bullet::Defined(d) => Cell::Index(d),
                        Bullet::Whole => Cell::Tag("whole"),
                    })
                    .collect()
            })
            .collect();
        let arrow = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| Ok(self.arrow(i, j)?.map_or(Cell::Tag("none"), Cell::Index)))
                    .collect::<Result<_, FilterError>>()
            })
            .collect::<Result<_, _>>()?;
        let star = if self.algebra.is_bounded() {
            Some(self.ids().map(|i| self.star(i)).collect::<Result<_, _>>()?)
        } else {
            None
        };
        Ok(SpectrumJson {
            algebra: self.algebra.name().to_string(),
            filters: self.filters.iter().map(|f| f.to_vec()).collect(),
            whole: self.whole(),
            bullet,
            arrow,
            star,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Index(usize),
    Tag(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumJson {
    pub algebra: String,
    pub filters: Vec<Vec<usize>>,
    pub whole: Option<usize>,
    pub bullet: Vec<Vec<Cell>>,
    pub arrow: Vec<Vec<Cell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<usize>>,
}

/// Exhaustive checks of the filter calculus on one spectrum.
pub fn battery(sp: &Spectrum) -> Vec<Check> {
    let a = sp.algebra();
    let show = |i: usize| sp.filter(i).to_string();
    let mut out = Vec::new();

    // Products of a prime and an arbitrary filter are prime or the whole carrier.
    let mut t = Tally::new("product with a prime is prime or whole");
    for f in all_filters(a) {
        for p in sp.ids() {
            let q = complex_product(a, f, sp.filter(p));
            let ok = q == a.all() || is_generalized_prime(a, q);
            t.case(ok, || format!("{f}•{} = {q}", show(p)));
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("filters below a prime extend to primes");
    let filters = all_filters(a);
    for &f in &filters {
        for &g in &filters {
            let fg = complex_product(a, f, g);
            for c in sp
                .ids()
                .filter(|&c| fg.is_subset(sp.filter(c)) && fg != a.all())
            {
                let c_set = sp.filter(c);
                let left = sp.ids().any(|p| {
                    f.is_subset(sp.filter(p))
                        && complex_product(a, sp.filter(p), g).is_subset(c_set)
                });
                let right = sp.ids().any(|p| {
                    g.is_subset(sp.filter(p))
                        && complex_product(a, f, sp.filter(p)).is_subset(c_set)
                });
                t.case(left && right, || format!("f={f} g={g} c={c_set}"));
            }
        }
    }
    out.push(t.finish());

    let lift = |b: Bullet| b.defined().map(|d| sp.filter(d)).unwrap_or(a.all());
    let mut comm = Tally::new("• is commutative");
    let mut assoc = Tally::new("• is associative");
    let mut mono = Tally::new("• is monotone");
    let mut unit = Tally::new("{1}, when prime, is •-neutral");
    let unit_id = sp.id_of(Subset::singleton(a.one()));
    for x in sp.ids() {
        if let Some(u) = unit_id {
            unit.case(sp.bullet(u, x) == Bullet::Defined(x), || show(x));
        }
        for y in sp.ids() {
            comm.case(sp.bullet(x, y) == sp.bullet(y, x), || {
                format!("({},{})", show(x), show(y))
            });
            for z in sp.ids() {
                let left = match sp.bullet(x, y) {
                    Bullet::Defined(d) => sp.bullet(d, z),
                    Bullet::Whole => Bullet::Whole,
                };
                let right = match sp.bullet(y, z) {
                    Bullet::Defined(d) => sp.bullet(x, d),
                    Bullet::Whole => Bullet::Whole,
                };
                assoc.case(left == right, || {
                    format!("({},{},{})", show(x), show(y), show(z))
                });
                if sp.le(x, y) {
                    let ok = lift(sp.bullet(x, z)).is_subset(lift(sp.bullet(y, z)));
                    mono.case(ok, || {
                        format!("{} ⊆ {} against {}", show(x), show(y), show(z))
                    });
                }
            }
        }
    }
    out.extend([comm.finish(), assoc.finish(), mono.finish(), unit.finish()]);

    let mut t = Tally::new("whole exactly when the product meets 0");
    for x in sp.ids() {
        for y in sp.ids() {
            let p = complex_product(a, sp.filter(x), sp.filter(y));
            let expect_whole = a.zero().is_some_and(|z| p.contains(z));
            t.case((sp.bullet(x, y) == Bullet::Whole) == expect_whole, || {
                format!("({},{})", show(x), show(y))
            });
        }
    }
    out.push(t.finish());

    let mut t = Tally::new("⇒ is the greatest residual and satisfies the adjunction");
    for b in sp.ids() {
        for c in sp.ids() {
            match sp.arrow(b, c) {
                Ok(_) => t.case(true, String::new),
                Err(e) => t.fail(e.to_string()),
            }
        }
    }
    out.push(t.finish());

    if a.is_bounded() {
        let mut def = Tally::new("star is the greatest prime with a proper product");
        let mut rev = Tally::new("star reverses inclusion");
        let stars: Vec<Option<usize>> = sp
            .ids()
            .map(|x| match sp.star(x) {
                Ok(s) => {
                    def.case(true, String::new);
                    Some(s)
                }
                Err(e) => {
                    def.fail(e.to_string());
                    None
                }
            })
            .collect();
        for x in sp.ids() {
            for y in sp.ids().filter(|&y| sp.le(x, y)) {
                if let (Some(sx), Some(sy)) = (stars[x], stars[y]) {
                    rev.case(sp.le(sy, sx), || format!("{} ⊆ {}", show(x), show(y)));
                }
            }
        }
        out.extend([def.finish(), rev.finish()]);
    }
    out
}
