//! Exhaustive classification by identities.

use std::fmt;

use super::{first, Algebra, AlgebraError};

/// A property together with a tuple that refutes it (when it fails) or
/// establishes it (for existential properties such as zero divisors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Flag {
    fn from_counterexample(cx: Option<Vec<usize>>) -> Self {
        Flag {
            holds: cx.is_none(),
            witness: cx,
        }
    }

    fn yes() -> Self {
        Flag {
            holds: true,
            witness: None,
        }
    }

    fn no(witness: Option<Vec<usize>>) -> Self {
        Flag {
            holds: false,
            witness,
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.holds { "yes" } else { "no" })?;
        if let Some(w) = &self.witness {
            write!(f, " {w:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub commutative: Flag,
    pub integral: Flag,
    pub distributive: Flag,
    pub semilinear: Flag,
    pub bounded: Flag,
    pub mtl: Flag,
    pub smtl: Flag,
    pub sbp: Flag,
    pub ibp: Flag,
    /// `None` in GMTL mode.
    pub has_zero_divisors: Option<Flag>,
    /// `None` in GMTL mode.
    pub directly_indecomposable: Option<Flag>,
}

impl ClassificationReport {
    pub fn rows(&self) -> Vec<(&'static str, Option<&Flag>)> {
        vec![
            ("commutative", Some(&self.commutative)),
            ("integral", Some(&self.integral)),
            ("distributive", Some(&self.distributive)),
            ("semilinear", Some(&self.semilinear)),
            ("bounded", Some(&self.bounded)),
            ("mtl", Some(&self.mtl)),
            ("smtl", Some(&self.smtl)),
            ("sbp", Some(&self.sbp)),
            ("ibp", Some(&self.ibp)),
            ("zero_divisors", self.has_zero_divisors.as_ref()),
            (
                "directly_indecomposable",
                self.directly_indecomposable.as_ref(),
            ),
        ]
    }

    /// No zero divisors exactly when the algebra is a directly indecomposable
    /// SMTL-algebra. `None` when undecided (GMTL mode or a one-element carrier).
    pub fn zero_divisor_equivalence(&self) -> Option<bool> {
        let zd = self.has_zero_divisors.as_ref()?;
        let di = self.directly_indecomposable.as_ref()?;
        if di.witness.as_deref() == Some(&[]) {
            return None;
        }
        Some(!zd.holds == (self.smtl.holds && di.holds))
    }
}

fn cx1(a: &Algebra, p: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    a.elements().find(|&x| !p(x)).map(|x| vec![x])
}

fn cx2(a: &Algebra, p: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    first(a.size(), 2, |t| (!p(t[0], t[1])).then(|| t.to_vec()))
}

fn cx3(a: &Algebra, p: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    first(a.size(), 3, |t| (!p(t[0], t[1], t[2])).then(|| t.to_vec()))
}

/// `(a, b)` with `a, b ≠ 0` and `a·b = 0`, if any.
pub fn zero_divisor_witness(a: &Algebra) -> Result<Option<(usize, usize)>, AlgebraError> {
    let z = a
        .zero()
        .ok_or_else(|| AlgebraError::NotBounded(a.name().to_string()))?;
    Ok(a.elements()
        .flat_map(|x| a.elements().map(move |y| (x, y)))
        .find(|&(x, y)| x != z && y != z && a.mul(x, y) == z))
}

pub(crate) fn semilinear_cx(a: &Algebra) -> Option<Vec<usize>> {
    cx2(a, |x, y| {
        a.join(a.residuum(x, y), a.residuum(y, x)) == a.one()
    })
}

pub(crate) fn sbp_cx(a: &Algebra) -> Option<Vec<usize>> {
    let sq = |x| a.mul(x, x);
    let two = |x| a.oplus(x, x);
    cx1(a, |x| {
        a.residuum(a.neg(sq(x)), a.residuum(a.neg(a.neg(x)), x)) == a.one()
    })
    .or_else(|| cx1(a, |x| sq(two(x)) == two(sq(x))))
}

pub fn classify(a: &Algebra) -> ClassificationReport {
    let commutative = Flag::from_counterexample(cx2(a, |x, y| a.mul(x, y) == a.mul(y, x)));
    let integral = Flag::from_counterexample(cx1(a, |x| a.le(x, a.one())));
    let distributive = Flag::from_counterexample(cx3(a, |x, y, z| {
        a.meet(x, a.join(y, z)) == a.join(a.meet(x, y), a.meet(x, z))
    }));
    let semilinear = Flag::from_counterexample(semilinear_cx(a));
    let bounded = if a.is_bounded() {
        Flag::yes()
    } else {
        Flag::no(None)
    };
    let mtl = match (&bounded.holds, &semilinear.holds) {
        (true, true) => Flag::yes(),
        (false, _) => Flag::no(None),
        (true, false) => Flag::no(semilinear.witness.clone()),
    };
    let smtl = if !mtl.holds {
        mtl.clone()
    } else {
        let z = a.zero().expect("bounded");
        Flag::from_counterexample(cx1(a, |x| a.meet(x, a.neg(x)) == z))
    };
    let sbp = if !mtl.holds {
        mtl.clone()
    } else {
        Flag::from_counterexample(sbp_cx(a))
    };
    let ibp = if !sbp.holds {
        sbp.clone()
    } else {
        Flag::from_counterexample(cx1(a, |x| a.neg(a.neg(x)) == x))
    };
    let (has_zero_divisors, directly_indecomposable) = if a.is_bounded() {
        let zd = zero_divisor_witness(a).expect("bounded");
        let zd = Flag {
            holds: zd.is_some(),
            witness: zd.map(|(x, y)| vec![x, y]),
        };
        let boolean: Vec<usize> = a
            .elements()
            .filter(|&u| a.join(u, a.neg(u)) == a.one())
            .collect();
        let di = if a.size() == 1 {
            Flag::no(Some(Vec::new()))
        } else if boolean.len() == 2 {
            Flag::yes()
        } else {
            let z = a.zero().expect("bounded");
            let u = boolean.iter().copied().find(|&u| u != z && u != a.one());
            Flag::no(u.map(|u| vec![u]))
        };
        (Some(zd), Some(di))
    } else {
        (None, None)
    };
    ClassificationReport {
        commutative,
        integral,
        distributive,
        semilinear,
        bounded,
        mtl,
        smtl,
        sbp,
        ibp,
        has_zero_divisors,
        directly_indecomposable,
    }
}

/// One item of the basic identity battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: u8,
    pub statement: &'static str,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

/// Evaluates the fourteen basic (in)equalities of GMTL/MTL-algebras over all
/// tuples. Items 11 to 14 involve negation and are skipped in GMTL mode.
pub fn check_cidrl_identities(a: &Algebra) -> Vec<IdentityCheck> {
    let (m, r, me, jo) = (
        |x, y| a.mul(x, y),
        |x, y| a.residuum(x, y),
        |x, y| a.meet(x, y),
        |x, y| a.join(x, y),
    );
    let le = |x, y| a.le(x, y);
    let mut out = Vec::new();
    let mut push = |id: u8, statement: &'static str, cx: Option<Vec<usize>>| {
        out.push(IdentityCheck {
            id,
            statement,
            holds: cx.is_none(),
            witness: cx,
        });
    };
    push(1, "a·(a→b) ≤ b", cx2(a, |x, y| le(m(x, r(x, y)), y)));
    push(
        2,
        "a ≤ b implies a·c ≤ b·c, c→a ≤ c→b and b→c ≤ a→c",
        cx3(a, |x, y, z| {
            !le(x, y) || (le(m(x, z), m(y, z)) && le(r(z, x), r(z, y)) && le(r(y, z), r(x, z)))
        }),
    );
    push(
        3,
        "a·(b∨c) = a·b ∨ a·c",
        cx3(a, |x, y, z| m(x, jo(y, z)) == jo(m(x, y), m(x, z))),
    );
    push(
        4,
        "a·(b∧c) = a·b ∧ a·c",
        cx3(a, |x, y, z| m(x, me(y, z)) == me(m(x, y), m(x, z))),
    );
    push(
        5,
        "a→(b∨c) = (a→b) ∨ (a→c)",
        cx3(a, |x, y, z| r(x, jo(y, z)) == jo(r(x, y), r(x, z))),
    );
    push(
        6,
        "a→(b∧c) = (a→b) ∧ (a→c)",
        cx3(a, |x, y, z| r(x, me(y, z)) == me(r(x, y), r(x, z))),
    );
    push(
        7,
        "(a∨b)→c = (a→c) ∧ (b→c)",
        cx3(a, |x, y, z| r(jo(x, y), z) == me(r(x, z), r(y, z))),
    );
    push(
        8,
        "(a∧b)→c = (a→c) ∨ (b→c)",
        cx3(a, |x, y, z| r(me(x, y), z) == jo(r(x, z), r(y, z))),
    );
    push(
        9,
        "(a·b)→c = a→(b→c)",
        cx3(a, |x, y, z| r(m(x, y), z) == r(x, r(y, z))),
    );
    push(10, "a·b ≤ a∧b", cx2(a, |x, y| le(m(x, y), me(x, y))));
    if a.is_bounded() {
        let n = |x| a.neg(x);
        push(
            11,
            "¬(a∧b) = ¬a ∨ ¬b",
            cx2(a, |x, y| n(me(x, y)) == jo(n(x), n(y))),
        );
        push(
            12,
            "¬(a∨b) = ¬a ∧ ¬b",
            cx2(a, |x, y| n(jo(x, y)) == me(n(x), n(y))),
        );
        push(
            13,
            "a∧¬a ≤ b∨¬b",
            cx2(a, |x, y| le(me(x, n(x)), jo(y, n(y)))),
        );
        push(14, "a ≤ ¬¬a", cx1(a, |x| le(x, n(n(x)))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn g3_classification() {
        let c = classify(&fixtures::g3());
        assert!(c.mtl.holds && c.smtl.holds && c.sbp.holds);
        assert!(!c.ibp.holds);
        assert!(!c.has_zero_divisors.as_ref().unwrap().holds);
        assert!(c.directly_indecomposable.as_ref().unwrap().holds);
        assert_eq!(c.zero_divisor_equivalence(), Some(true));
    }

    #[test]
    fn g3xg3_has_zero_divisors() {
        let a = fixtures::g3xg3();
        let c = classify(&a);
        let zd = c.has_zero_divisors.as_ref().unwrap();
        assert!(zd.holds);
        let w = zd.witness.as_ref().unwrap();
        assert_eq!(a.mul(w[0], w[1]), a.zero().unwrap());
        assert!(!c.directly_indecomposable.as_ref().unwrap().holds);
        assert_eq!(c.zero_divisor_equivalence(), Some(true));
    }

    #[test]
    fn nm4_classification() {
        let c = classify(&fixtures::nm4());
        assert!(c.mtl.holds && c.sbp.holds && c.ibp.holds);
        // b ∧ ¬b = a
        assert!(!c.smtl.holds);
        assert_eq!(c.smtl.witness, Some(vec![1]));
    }

    #[test]
    fn gmtl_mode_has_no_zero_divisor_flag() {
        let h = fixtures::goedel_hoop(2);
        assert!(classify(&h).has_zero_divisors.is_none());
        assert!(matches!(
            zero_divisor_witness(&h),
            Err(AlgebraError::NotBounded(_))
        ));
    }

    #[test]
    fn identity_battery_on_fixtures() {
        for a in fixtures::all() {
            let checks = check_cidrl_identities(&a);
            assert_eq!(checks.len(), 14);
            for c in checks {
                assert!(
                    c.holds,
                    "{} fails identity {} at {:?}",
                    a.name(),
                    c.id,
                    c.witness
                );
            }
        }
    }

    #[test]
    fn literal_reading_of_item_two_fails_on_nm4() {
        // The misprinted form a ≤ b ⇒ a·c ≤ a·b is refuted by a ≤ b, c = 1 in NM4.
        let a = fixtures::nm4();
        let cx = cx3(&a, |x, y, z| !a.le(x, y) || a.le(a.mul(x, z), a.mul(x, y)));
        assert!(cx.is_some());
    }

    #[test]
    fn non_semilinear_heyting_algebra_fails_prelinearity() {
        let h = fixtures::heyting5();
        let c = classify(&h);
        assert!(!c.semilinear.holds);
        assert!(!c.mtl.holds);
    }
}
