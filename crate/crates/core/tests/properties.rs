mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::{select, Index};

use rldual::algebra::{
    check_cidrl_identities, classify, find_isomorphism, parse_algebra, print_algebra, validate,
    Algebra, AlgebraSpec,
};
use rldual::filter_pairs::{alpha, build_bowtie};
use rldual::filters::{complex_product, generated_filter, is_filter, Spectrum};
use rldual::subset::Subset;

use common::{corpus, sbp_corpus};

fn algebras() -> impl Strategy<Value = Algebra> {
    select(corpus(5))
}

fn sbp_algebras() -> impl Strategy<Value = Algebra> {
    select(sbp_corpus(5))
}

/// Relabels the carrier of `a` along the permutation `p`.
fn relabel(a: &Algebra, p: &[usize]) -> AlgebraSpec {
    let s = a.spec();
    let n = s.size();
    let mut inv = vec![0; n];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    AlgebraSpec {
        name: format!("{}_relabelled", s.name),
        leq: (0..n)
            .map(|x| (0..n).map(|y| s.leq[inv[x]][inv[y]]).collect())
            .collect(),
        mul: (0..n)
            .map(|x| (0..n).map(|y| p[s.mul[inv[x]][inv[y]]]).collect())
            .collect(),
        one: p[s.one],
        zero: s.zero.map(|z| p[z]),
    }
}

fn with_permutation() -> impl Strategy<Value = (Algebra, Vec<usize>)> {
    algebras().prop_flat_map(|a| {
        let n = a.size();
        (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn subset_ops_match_btreeset(x in any::<u64>(), y in any::<u64>(), n in 0usize..=64) {
        let (a, b) = (Subset::from_bits(x), Subset::from_bits(y));
        let sa: BTreeSet<usize> = a.iter().collect();
        let sb: BTreeSet<usize> = b.iter().collect();
        prop_assert_eq!(a.len(), sa.len());
        prop_assert_eq!(a.union(b).to_vec(), sa.union(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.intersection(b).to_vec(), sa.intersection(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.difference(b).to_vec(), sa.difference(&sb).copied().collect::<Vec<_>>());
        prop_assert_eq!(a.is_subset(b), sa.is_subset(&sb));
        prop_assert_eq!(a.iter().collect::<Subset>(), a);
        let c = a.complement(n);
        prop_assert!(c.intersection(a).is_empty());
        prop_assert_eq!(c.union(a).intersection(Subset::full(n)), Subset::full(n));
    }

    #[test]
    fn print_then_parse_is_identity(a in algebras()) {
        let spec = a.spec();
        prop_assert_eq!(parse_algebra(&print_algebra(&spec)).unwrap(), spec);
    }

    #[test]
    fn relabelling_preserves_structure((a, p) in with_permutation()) {
        let spec = relabel(&a, &p);
        prop_assert!(validate(&spec).unwrap().passed());
        let b = Algebra::new(spec).unwrap();
        prop_assert!(find_isomorphism(&a, &b).is_some());
        let (ra, rb) = (classify(&a), classify(&b));
        prop_assert_eq!(ra.sbp.holds, rb.sbp.holds);
        prop_assert_eq!(ra.has_zero_divisors.map(|f| f.holds), rb.has_zero_divisors.map(|f| f.holds));
        prop_assert_eq!(
            Spectrum::new(&a).unwrap().len(),
            Spectrum::new(&b).unwrap().len()
        );
    }

    #[test]
    fn residuation_and_identities(a in algebras(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let n = a.size();
        let (x, y, z) = (i.index(n), j.index(n), k.index(n));
        prop_assert_eq!(a.le(a.mul(x, y), z), a.le(x, a.residuum(y, z)));
        prop_assert_eq!(a.mul(x, y), a.mul(y, x));
        prop_assert!(a.le(a.mul(x, y), a.meet(x, y)));
        prop_assert!(check_cidrl_identities(&a).iter().all(|c| c.holds));
    }

    #[test]
    fn generated_filters_are_filters(a in algebras(), bits in any::<u64>()) {
        let s = Subset::from_bits(bits).intersection(a.all()).with(a.one());
        let f = generated_filter(&a, s).unwrap();
        prop_assert!(is_filter(&a, f));
        prop_assert!(s.is_subset(f));
        prop_assert_eq!(generated_filter(&a, f).unwrap(), f);
    }

    #[test]
    fn filter_products_contain_both_factors(a in algebras(), x in any::<u64>(), y in any::<u64>()) {
        let f = generated_filter(&a, Subset::from_bits(x).intersection(a.all()).with(a.one())).unwrap();
        let g = generated_filter(&a, Subset::from_bits(y).intersection(a.all()).with(a.one())).unwrap();
        let fg = complex_product(&a, f, g);
        prop_assert!(f.is_subset(fg) && g.is_subset(fg));
        prop_assert_eq!(fg, complex_product(&a, g, f));
        prop_assert!(is_filter(&a, fg));
    }

    #[test]
    fn alpha_transports_random_pairs(a in sbp_algebras(), i in any::<Index>(), j in any::<Index>()) {
        let x = build_bowtie(&a).unwrap();
        let map = alpha(&x).unwrap();
        let sp = Spectrum::new(&a).unwrap();
        let (f, g) = (i.index(sp.len()), j.index(sp.len()));
        let expected = sp.bullet(f, g).defined().map(|h| map[h]);
        prop_assert_eq!(x.compose(map[f], map[g]), expected);
        prop_assert_eq!(sp.le(f, g), x.le(map[f], map[g]));
    }
}
