//! Acceptance run: one line per criterion, exit status nonzero on any failure.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use rldual::algebra::{
    check_cidrl_identities, classify, enumerate_mtl_chains, radical_algebra, Algebra,
};
use rldual::dual_quadruple::{check_mu_splitting, commute_square};
use rldual::duality::unit_map;
use rldual::filter_pairs::{
    alpha, battery as pair_battery, build_bowtie, check_transport, check_w_sets, predicted_product,
};
use rldual::filters::{battery as filter_battery, Spectrum};
use rldual::fixtures;
use rldual::quadruple::battery as quadruple_battery;
use rldual::report::Check;

use common::{corpus, naive_is_sbp, naive_mtl_chains, sbp_corpus};

const MAX_CHAIN: usize = 5;
const FROZEN_UP_TO: usize = 6;

struct Outcome {
    cases: usize,
    failure: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            failure: None,
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    fn checks(&mut self, algebra: &str, checks: &[Check]) {
        for c in checks {
            self.case(c.passed, || format!("{algebra}: {c}"));
        }
    }
}

fn criterion(n: usize, name: &str, limit: Duration, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut o = Outcome::new();
    body(&mut o);
    let took = start.elapsed();
    if took > limit && o.failure.is_none() {
        o.failure = Some(format!("took {took:.2?}, limit {limit:?}"));
    }
    let ok = o.failure.is_none() && o.cases > 0;
    let verdict = if ok { "PASS" } else { "FAIL" };
    let detail = o.failure.unwrap_or_else(|| {
        if o.cases == 0 {
            "no cases".into()
        } else {
            String::new()
        }
    });
    println!(
        "criterion {n} [{name}]: {verdict} ({} cases, {took:.2?}) {detail}",
        o.cases
    );
    ok
}

fn frozen_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/chain_counts.json")
}

fn oracle_counts() -> Value {
    let mut mtl = Vec::new();
    let mut sbp = Vec::new();
    for n in 1..=FROZEN_UP_TO {
        let chains = naive_mtl_chains(n);
        mtl.push(chains.len());
        sbp.push(chains.iter().filter(|t| naive_is_sbp(t)).count());
    }
    json!({ "sizes": (1..=FROZEN_UP_TO).collect::<Vec<_>>(), "mtl": mtl, "sbp": sbp })
}

/// The frozen counts, written from the oracle when the file does not exist.
fn frozen_counts() -> Value {
    let path = frozen_path();
    match std::fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text).expect("frozen counts are valid JSON"),
        Err(_) => {
            let v = oracle_counts();
            std::fs::create_dir_all(path.parent().unwrap()).expect("data directory");
            std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap() + "\n")
                .expect("write frozen counts");
            println!("froze oracle chain counts into {}", path.display());
            v
        }
    }
}

fn main() {
    let all = corpus(MAX_CHAIN);
    let sbp = sbp_corpus(MAX_CHAIN);
    let sbp_fixtures: Vec<Algebra> = fixtures::all();
    let mut results = Vec::new();

    results.push(criterion(
        1,
        "duality round trip",
        Duration::from_secs(10),
        |o| {
            for a in &all {
                let r = unit_map(a);
                o.case(r.is_ok(), || {
                    format!("{}: {}", a.name(), r.as_ref().unwrap_err())
                });
            }
        },
    ));

    results.push(criterion(
        2,
        "identity battery and zero divisors",
        Duration::from_secs(5),
        |o| {
            let radicals = sbp.iter().map(|a| radical_algebra(a).expect("sbp").algebra);
            let gmtl = [fixtures::goedel_hoop(2), fixtures::goedel_hoop(4)];
            for a in all.iter().cloned().chain(radicals).chain(gmtl) {
                for c in check_cidrl_identities(&a) {
                    o.case(c.holds, || {
                        format!(
                            "{}: ({}) {} at {:?}",
                            a.name(),
                            c.id,
                            c.statement,
                            c.witness
                        )
                    });
                }
                if let Some(eq) = classify(&a).zero_divisor_equivalence() {
                    o.case(eq, || format!("{}: zero-divisor equivalence", a.name()));
                }
            }
        },
    ));

    results.push(criterion(
        3,
        "quadruple equivalence",
        Duration::from_secs(30),
        |o| {
            for a in &sbp {
                o.checks(a.name(), &quadruple_battery(a));
            }
        },
    ));

    results.push(criterion(
        4,
        "alpha is an order isomorphism",
        Duration::from_secs(10),
        |o| {
            for a in &sbp_fixtures {
                let points = build_bowtie(a).and_then(|x| alpha(&x).map(|m| (x.len(), m.len())));
                let primes = Spectrum::new(a).map(|sp| sp.len());
                o.case(
                    matches!((&points, &primes), (Ok((p, m)), Ok(s)) if p == s && m == s),
                    || format!("{}: {points:?} against {primes:?}", a.name()),
                );
            }
            for (name, expected) in [("nm4", 3), ("g3", 2)] {
                let x = build_bowtie(&fixtures::by_name(name).unwrap()).expect("sbp fixture");
                o.case(x.len() == expected, || {
                    format!("{name}: {} points", x.len())
                });
            }
        },
    ));

    results.push(criterion(
        5,
        "α transports • to ∘",
        Duration::from_secs(10),
        |o| {
            for a in &sbp_fixtures {
                let x = build_bowtie(a).expect("sbp fixture");
                let map = alpha(&x).expect("α is bijective");
                o.checks(a.name(), &[check_transport(&x, &map)]);
                let sp = &x.parts().spectrum;
                for f in sp.ids() {
                    for g in sp.ids() {
                        let (case, predicted) =
                            predicted_product(x.parts(), f, g).expect("classifiable");
                        let actual = sp.bullet(f, g).defined().map(|h| sp.filter(h));
                        o.case(predicted == actual, || {
                            format!("{}: {case:?} at ({f}, {g})", a.name())
                        });
                    }
                }
            }
        },
    ));

    results.push(criterion(
        6,
        "rotation square",
        Duration::from_secs(30),
        |o| {
            for a in sbp_fixtures.iter().chain(&sbp) {
                match commute_square(a) {
                    Ok(checks) => o.checks(a.name(), &checks),
                    Err(e) => o.case(false, || format!("{}: {e}", a.name())),
                }
            }
        },
    ));

    results.push(criterion(
        7,
        "filter calculus",
        Duration::from_secs(60),
        |o| {
            for a in &all {
                match Spectrum::new(a) {
                    Ok(sp) => o.checks(a.name(), &filter_battery(&sp)),
                    Err(e) => o.case(false, || format!("{}: {e}", a.name())),
                }
            }
            for a in &sbp {
                match pair_battery(a) {
                    Ok(checks) => o.checks(a.name(), &checks),
                    Err(e) => o.case(false, || format!("{}: {e}", a.name())),
                }
                match check_mu_splitting(a) {
                    Ok(checks) => o.checks(a.name(), &checks),
                    Err(e) => o.case(false, || format!("{}: {e}", a.name())),
                }
            }
        },
    ));

    results.push(criterion(
        8,
        "W sets pull back to φ",
        Duration::from_secs(10),
        |o| {
            for a in &sbp_fixtures {
                let x = build_bowtie(a).expect("sbp fixture");
                let map = alpha(&x).expect("α is bijective");
                match check_w_sets(&x, &map) {
                    Ok(checks) => o.checks(a.name(), &checks[..1]),
                    Err(e) => o.case(false, || format!("{}: {e}", a.name())),
                }
            }
        },
    ));

    results.push(criterion(
        9,
        "chain counts against the oracle",
        Duration::from_secs(60),
        |o| {
            let frozen = frozen_counts();
            let oracle = oracle_counts();
            o.case(frozen == oracle, || {
                format!("oracle {oracle} differs from frozen {frozen}")
            });
            for n in 1..=MAX_CHAIN {
                let chains = enumerate_mtl_chains(n, MAX_CHAIN).expect("within bound");
                let want = frozen["mtl"][n - 1].as_u64().unwrap() as usize;
                o.case(chains.len() == want, || {
                    format!("n = {n}: {} chains, frozen {want}", chains.len())
                });
                let sbp_count = chains.iter().filter(|a| classify(a).sbp.holds).count();
                let want = frozen["sbp"][n - 1].as_u64().unwrap() as usize;
                o.case(sbp_count == want, || {
                    format!("n = {n}: {sbp_count} sbp chains, frozen {want}")
                });
            }
        },
    ));

    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
