//! Finite commutative integral distributive residuated lattices.
//!
//! An algebra is given by its order table, its monoid table, the unit and an
//! optional bottom constant. Meets, joins and the residuum are derived from
//! those tables once validation has shown that they exist.

mod classify;
mod construct;
mod enumerate;
pub(crate) mod text;

use std::fmt;

use thiserror::Error;

use crate::iso::{self, Structure};
use crate::subset::{Subset, CAPACITY};

pub(crate) use classify::semilinear_cx;
pub use classify::{
    check_cidrl_identities, classify, zero_divisor_witness, ClassificationReport, Flag,
    IdentityCheck,
};
pub use construct::{
    add_bottom, boolean_skeleton, coradical, double_negation_nucleus, is_wdl_admissible,
    nuclear_image, ordinal_sum_2_h, product, radical, radical_algebra, require_sbp, restrict,
    strip_bottom, Subalgebra, WdlViolation,
};
pub use enumerate::{enumerate_mtl_chains, DEFAULT_CHAIN_BOUND};
pub use text::{parse_algebra, print_algebra};

/// Largest carrier an algebra may have.
pub const MAX_ELEMENTS: usize = CAPACITY;

/// A map from element indices to element indices.
pub type UnaryTable = Vec<usize>;

/// Bounded algebras carry a bottom constant; GMTL-mode algebras do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Bounded,
    Gmtl,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Bounded => "bounded",
            Mode::Gmtl => "gmtl",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra `{name}` is invalid: {report}")]
    Invalid {
        name: String,
        report: ValidationReport,
    },
    #[error("algebra `{0}` has no bottom constant")]
    NotBounded(String),
    #[error("algebra `{name}` is not an sbp-algebra: {reason}")]
    NotSbp { name: String, reason: String },
    #[error("subset of `{name}` is not closed: {detail}")]
    ClosureFailure { name: String, detail: String },
    #[error("algebra `{name}` has zero divisors {a}·{b} = 0")]
    HasZeroDivisors { name: String, a: usize, b: usize },
    #[error("requested size {requested} exceeds bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("modes of `{0}` and `{1}` are incompatible")]
    ModeMismatch(String, String),
}

/// The stored presentation of an algebra, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub leq: Vec<Vec<bool>>,
    pub mul: Vec<Vec<usize>>,
    pub one: usize,
    pub zero: Option<usize>,
}

impl AlgebraSpec {
    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn mode(&self) -> Mode {
        if self.zero.is_some() {
            Mode::Bounded
        } else {
            Mode::Gmtl
        }
    }

    fn check_dimensions(&self) -> Result<(), AlgebraError> {
        let n = self.size();
        let bad = |msg: String| Err(AlgebraError::DimensionMismatch(msg));
        if n == 0 {
            return bad("an algebra needs at least one element".into());
        }
        if n > MAX_ELEMENTS {
            return bad(format!("{n} elements exceed the limit of {MAX_ELEMENTS}"));
        }
        if self.mul.len() != n {
            return bad(format!("mul has {} rows, expected {n}", self.mul.len()));
        }
        for (i, row) in self.leq.iter().enumerate() {
            if row.len() != n {
                return bad(format!(
                    "leq row {i} has {} entries, expected {n}",
                    row.len()
                ));
            }
        }
        for (i, row) in self.mul.iter().enumerate() {
            if row.len() != n {
                return bad(format!(
                    "mul row {i} has {} entries, expected {n}",
                    row.len()
                ));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return bad(format!("mul row {i} mentions element {v}"));
            }
        }
        if self.one >= n {
            return bad(format!("one = {} is out of range", self.one));
        }
        if let Some(z) = self.zero.filter(|&z| z >= n) {
            return bad(format!("zero = {z} is out of range"));
        }
        Ok(())
    }
}

/// One violated axiom together with a witnessing tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive(usize),
    NotAntisymmetric(usize, usize),
    NotTransitive(usize, usize, usize),
    NoMeet(usize, usize),
    NoJoin(usize, usize),
    NotDistributive(usize, usize, usize),
    NotAssociative(usize, usize, usize),
    NotCommutative(usize, usize),
    NotUnit(usize),
    NotMonotone(usize, usize, usize),
    NotIntegral(usize),
    ProductAboveMeet(usize, usize),
    NoResiduum(usize, usize),
    ZeroNotBottom(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotReflexive(a) => write!(f, "order not reflexive at {a}"),
            Violation::NotAntisymmetric(a, b) => write!(f, "order not antisymmetric at ({a},{b})"),
            Violation::NotTransitive(a, b, c) => write!(f, "order not transitive at ({a},{b},{c})"),
            Violation::NoMeet(a, b) => write!(f, "no meet of ({a},{b})"),
            Violation::NoJoin(a, b) => write!(f, "no join of ({a},{b})"),
            Violation::NotDistributive(a, b, c) => {
                write!(f, "lattice not distributive at ({a},{b},{c})")
            }
            Violation::NotAssociative(a, b, c) => write!(f, "mul not associative at ({a},{b},{c})"),
            Violation::NotCommutative(a, b) => write!(f, "mul not commutative at ({a},{b})"),
            Violation::NotUnit(a) => write!(f, "one is not a unit for {a}"),
            Violation::NotMonotone(a, b, c) => {
                write!(
                    f,
                    "mul not order-preserving: {a} <= {b} but {a}·{c} not <= {b}·{c}"
                )
            }
            Violation::NotIntegral(a) => write!(f, "not integral: {a} is not below one"),
            Violation::ProductAboveMeet(a, b) => write!(f, "product {a}·{b} exceeds {a}∧{b}"),
            Violation::NoResiduum(a, c) => write!(f, "no residuum {a}→{c}"),
            Violation::ZeroNotBottom(a) => write!(f, "zero is not below {a}"),
        }
    }
}

/// Every axiom violated by an [`AlgebraSpec`], one witness per axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

struct Order {
    n: usize,
    leq: Vec<bool>,
    down: Vec<Subset>,
    up: Vec<Subset>,
}

impl Order {
    fn new(spec: &AlgebraSpec) -> Self {
        let n = spec.size();
        let leq: Vec<bool> = spec.leq.iter().flatten().copied().collect();
        let down = (0..n)
            .map(|b| (0..n).filter(|&a| leq[a * n + b]).collect())
            .collect();
        let up = (0..n)
            .map(|a| (0..n).filter(|&b| leq[a * n + b]).collect())
            .collect();
        Order { n, leq, down, up }
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// Greatest element of `set`, if any.
    fn greatest(&self, set: Subset) -> Option<usize> {
        set.iter().find(|&m| set.is_subset(self.down[m]))
    }

    fn least(&self, set: Subset) -> Option<usize> {
        set.iter().find(|&m| set.is_subset(self.up[m]))
    }
}

fn first<T>(n: usize, arity: usize, mut test: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    let mut t = vec![0; arity];
    loop {
        if let Some(v) = test(&t) {
            return Some(v);
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < n {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Checks every axiom of a bounded or GMTL-mode CIDRL.
pub fn validate(spec: &AlgebraSpec) -> Result<ValidationReport, AlgebraError> {
    spec.check_dimensions()?;
    let n = spec.size();
    let ord = Order::new(spec);
    let m = |a: usize, b: usize| spec.mul[a][b];
    let mut out = Vec::new();

    if let Some(a) = (0..n).find(|&a| !ord.le(a, a)) {
        out.push(Violation::NotReflexive(a));
    }
    if let Some(w) = first(n, 2, |t| {
        (t[0] != t[1] && ord.le(t[0], t[1]) && ord.le(t[1], t[0]))
            .then_some(Violation::NotAntisymmetric(t[0], t[1]))
    }) {
        out.push(w);
    }
    if let Some(w) = first(n, 3, |t| {
        (ord.le(t[0], t[1]) && ord.le(t[1], t[2]) && !ord.le(t[0], t[2]))
            .then_some(Violation::NotTransitive(t[0], t[1], t[2]))
    }) {
        out.push(w);
    }
    let order_ok = out.is_empty();

    let mut lattice_ok = order_ok;
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    if order_ok {
        'outer: for a in 0..n {
            for b in 0..n {
                match ord.greatest(ord.down[a].intersection(ord.down[b])) {
                    Some(x) => meet[a * n + b] = x,
                    None => {
                        out.push(Violation::NoMeet(a, b));
                        lattice_ok = false;
                        break 'outer;
                    }
                }
            }
        }
        'outer: for a in 0..n {
            for b in 0..n {
                match ord.least(ord.up[a].intersection(ord.up[b])) {
                    Some(x) => join[a * n + b] = x,
                    None => {
                        out.push(Violation::NoJoin(a, b));
                        lattice_ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }
    if lattice_ok {
        let me = |a: usize, b: usize| meet[a * n + b];
        let jo = |a: usize, b: usize| join[a * n + b];
        if let Some(w) = first(n, 3, |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            (me(a, jo(b, c)) != jo(me(a, b), me(a, c)))
                .then_some(Violation::NotDistributive(a, b, c))
        }) {
            out.push(w);
        }
    }

    if let Some(w) = first(n, 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        (m(m(a, b), c) != m(a, m(b, c))).then_some(Violation::NotAssociative(a, b, c))
    }) {
        out.push(w);
    }
    if let Some(w) = first(n, 2, |t| {
        (m(t[0], t[1]) != m(t[1], t[0])).then_some(Violation::NotCommutative(t[0], t[1]))
    }) {
        out.push(w);
    }
    if let Some(a) = (0..n).find(|&a| m(spec.one, a) != a || m(a, spec.one) != a) {
        out.push(Violation::NotUnit(a));
    }
    if order_ok {
        if let Some(w) = first(n, 3, |t| {
            let (a, b, c) = (t[0], t[1], t[2]);
            (ord.le(a, b) && !ord.le(m(a, c), m(b, c))).then_some(Violation::NotMonotone(a, b, c))
        }) {
            out.push(w);
        }
        if let Some(a) = (0..n).find(|&a| !ord.le(a, spec.one)) {
            out.push(Violation::NotIntegral(a));
        }
        if let Some(z) = spec.zero {
            if let Some(a) = (0..n).find(|&a| !ord.le(z, a)) {
                out.push(Violation::ZeroNotBottom(a));
            }
        }
        if lattice_ok {
            if let Some(w) = first(n, 2, |t| {
                let (a, b) = (t[0], t[1]);
                (!ord.le(m(a, b), meet[a * n + b])).then_some(Violation::ProductAboveMeet(a, b))
            }) {
                out.push(w);
            }
        }
        if let Some(w) = first(n, 2, |t| {
            let (a, c) = (t[0], t[1]);
            let below: Subset = (0..n).filter(|&d| ord.le(m(a, d), c)).collect();
            ord.greatest(below)
                .is_none()
                .then_some(Violation::NoResiduum(a, c))
        }) {
            out.push(w);
        }
    }
    Ok(ValidationReport { violations: out })
}

/// A validated finite CIDRL with its derived operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    n: usize,
    leq: Vec<bool>,
    mul: Vec<usize>,
    one: usize,
    zero: Option<usize>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    up: Vec<Subset>,
    down: Vec<Subset>,
    bottom: usize,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("size", &self.n)
            .field("mode", &self.mode())
            .finish_non_exhaustive()
    }
}

impl Algebra {
    /// Validates `spec` and derives meet, join and residuum tables.
    pub fn new(spec: AlgebraSpec) -> Result<Self, AlgebraError> {
        let report = validate(&spec)?;
        if !report.passed() {
            return Err(AlgebraError::Invalid {
                name: spec.name,
                report,
            });
        }
        let n = spec.size();
        let ord = Order::new(&spec);
        let mul: Vec<usize> = spec.mul.iter().flatten().copied().collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = ord
                    .greatest(ord.down[a].intersection(ord.down[b]))
                    .expect("meet");
                join[a * n + b] = ord.least(ord.up[a].intersection(ord.up[b])).expect("join");
                let below: Subset = (0..n).filter(|&d| ord.le(mul[a * n + d], b)).collect();
                imp[a * n + b] = ord.greatest(below).expect("residuum");
            }
        }
        let bottom = ord
            .least(Subset::full(n))
            .expect("finite lattice has a bottom");
        Ok(Algebra {
            name: spec.name,
            n,
            leq: ord.leq,
            mul,
            one: spec.one,
            zero: spec.zero,
            meet,
            join,
            imp,
            up: ord.up,
            down: ord.down,
            bottom,
        })
    }

    /// Builds an algebra from a ranked order, a product function and constants.
    pub fn from_fn(
        name: impl Into<String>,
        n: usize,
        leq: impl Fn(usize, usize) -> bool,
        mul: impl Fn(usize, usize) -> usize,
        one: usize,
        zero: Option<usize>,
    ) -> Result<Self, AlgebraError> {
        Algebra::new(AlgebraSpec {
            name: name.into(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| leq(a, b)).collect())
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| mul(a, b)).collect())
                .collect(),
            one,
            zero,
        })
    }

    pub fn spec(&self) -> AlgebraSpec {
        let n = self.n;
        AlgebraSpec {
            name: self.name.clone(),
            leq: (0..n)
                .map(|a| (0..n).map(|b| self.le(a, b)).collect())
                .collect(),
            mul: (0..n)
                .map(|a| (0..n).map(|b| self.mul(a, b)).collect())
                .collect(),
            one: self.one,
            zero: self.zero,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn mode(&self) -> Mode {
        if self.zero.is_some() {
            Mode::Bounded
        } else {
            Mode::Gmtl
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.zero.is_some()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    /// Least element of the lattice (exists in either mode).
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    /// The residuum `a → b = max{d : a·d ≤ b}`.
    pub fn residuum(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.n + b]
    }

    /// Negation `¬a = a → 0`.
    ///
    /// # Panics
    ///
    /// Panics on a GMTL-mode algebra, which has no bottom constant.
    pub fn neg(&self, a: usize) -> usize {
        let z = self
            .zero
            .unwrap_or_else(|| panic!("negation in GMTL-mode algebra `{}`", self.name));
        self.residuum(a, z)
    }

    /// `a ⊕ b = ¬(¬a·¬b)`.
    pub fn oplus(&self, a: usize, b: usize) -> usize {
        self.neg(self.mul(self.neg(a), self.neg(b)))
    }

    pub fn up_set(&self, a: usize) -> Subset {
        self.up[a]
    }

    pub fn down_set(&self, a: usize) -> Subset {
        self.down[a]
    }

    /// Upward closure of a set of elements.
    pub fn up_closure(&self, s: Subset) -> Subset {
        s.iter().fold(Subset::EMPTY, |acc, a| acc.union(self.up[a]))
    }

    pub fn is_up_set(&self, s: Subset) -> bool {
        self.up_closure(s) == s
    }

    /// Meet of a nonempty set.
    pub fn meet_all(&self, s: Subset) -> Option<usize> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, a| self.meet(acc, a)))
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.n)
    }

    pub(crate) fn structure(&self) -> Structure {
        let n = self.n;
        let mut s = Structure::new(n);
        s.colors = (0..n)
            .map(|a| (a == self.one) as u64 | ((Some(a) == self.zero) as u64) << 1)
            .collect();
        s.relations.push(self.leq.clone());
        s.operations
            .push(self.mul.iter().map(|&v| Some(v)).collect());
        s
    }
}

/// An isomorphism `a → b` preserving order, product, one and zero.
pub fn find_isomorphism(a: &Algebra, b: &Algebra) -> Option<Vec<usize>> {
    if a.mode() != b.mode() {
        return None;
    }
    iso::find(&a.structure(), &b.structure())
}

/// Every isomorphism `a → b`.
pub fn all_isomorphisms(a: &Algebra, b: &Algebra) -> Vec<Vec<usize>> {
    if a.mode() != b.mode() {
        return Vec::new();
    }
    iso::find_all(&a.structure(), &b.structure())
}

/// Whether `f: a → b` preserves ·, →, ∧, ∨, 1 and (in bounded mode) 0.
pub fn is_homomorphism(a: &Algebra, b: &Algebra, f: &[usize]) -> Result<(), String> {
    if f.len() != a.size() || f.iter().any(|&v| v >= b.size()) {
        return Err(format!(
            "table of length {} does not map {} into {}",
            f.len(),
            a.name(),
            b.name()
        ));
    }
    if f[a.one()] != b.one() {
        return Err("one is not preserved".into());
    }
    match (a.zero(), b.zero()) {
        (Some(z), Some(w)) if f[z] != w => return Err("zero is not preserved".into()),
        (Some(_), None) | (None, Some(_)) => return Err("modes differ".into()),
        _ => {}
    }
    for x in a.elements() {
        for y in a.elements() {
            let checks = [
                ("·", f[a.mul(x, y)], b.mul(f[x], f[y])),
                ("→", f[a.residuum(x, y)], b.residuum(f[x], f[y])),
                ("∧", f[a.meet(x, y)], b.meet(f[x], f[y])),
                ("∨", f[a.join(x, y)], b.join(f[x], f[y])),
            ];
            for (op, lhs, rhs) in checks {
                if lhs != rhs {
                    return Err(format!("{op} is not preserved at ({x},{y})"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn max_scan_residuum(a: &Algebra, x: usize, y: usize) -> usize {
        let cands: Vec<usize> = a.elements().filter(|&d| a.le(a.mul(x, d), y)).collect();
        *cands
            .iter()
            .find(|&&m| cands.iter().all(|&d| a.le(d, m)))
            .unwrap()
    }

    #[test]
    fn g3_validates() {
        assert!(validate(&fixtures::g3().spec()).unwrap().passed());
    }

    #[test]
    fn one_element_algebra_validates() {
        let spec = AlgebraSpec {
            name: "trivial".into(),
            leq: vec![vec![true]],
            mul: vec![vec![0]],
            one: 0,
            zero: Some(0),
        };
        assert!(validate(&spec).unwrap().passed());
    }

    #[test]
    fn broken_g3_reports_monotonicity_and_integrality() {
        let mut spec = fixtures::g3().spec();
        spec.mul[1][1] = 2;
        let report = validate(&spec).unwrap();
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotMonotone(..))));
        assert!(report
            .violations
            .contains(&Violation::ProductAboveMeet(1, 1)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut spec = fixtures::g3().spec();
        spec.mul.pop();
        assert!(matches!(
            validate(&spec),
            Err(AlgebraError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn residuum_matches_max_scan() {
        let g3 = fixtures::g3();
        assert_eq!(g3.residuum(1, 0), 0);
        assert_eq!(g3.neg(1), 0);
        let nm4 = fixtures::nm4();
        assert_eq!(nm4.residuum(2, 1), 1);
        for a in fixtures::all() {
            for x in a.elements() {
                assert_eq!(a.residuum(a.one(), x), x);
                for y in a.elements() {
                    assert_eq!(a.residuum(x, y), max_scan_residuum(&a, x, y));
                }
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let g3 = fixtures::g3();
        assert_eq!(find_isomorphism(&g3, &g3), Some(vec![0, 1, 2]));
        assert!(find_isomorphism(&g3, &fixtures::nm4()).is_none());
        assert_eq!(
            all_isomorphisms(&fixtures::bool4(), &fixtures::bool4()).len(),
            2
        );
    }

    #[test]
    fn homomorphism_check() {
        let g3 = fixtures::g3();
        assert!(is_homomorphism(&fixtures::bool2(), &g3, &[0, 2]).is_ok());
        assert!(is_homomorphism(&fixtures::bool2(), &g3, &[0, 1]).is_err());
    }
}
