//! Acceptance suite: one test per criterion, each printing a PASS line
//! when it completes. Run with `cargo test --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

use grouplab_core::catalog::{builtin_catalog, catalog_find, CatalogEntry};
use grouplab_core::config::Config;
use grouplab_core::harness::{run_suite, Status, SuiteId, SuiteReport};
use grouplab_core::lattice::all_subgroups;
use grouplab_core::perm::Subgroup;
use grouplab_core::props;
use grouplab_core::report::{render_reports, strip_timestamps};
use grouplab_core::structure::{self, Formation};

fn catalog() -> Vec<CatalogEntry> {
    builtin_catalog(&Config::default()).expect("builtin catalog must load")
}

fn pass(n: u32, what: &str) {
    println!("acceptance criterion {n}: PASS — {what}");
}

fn assert_clean(report: &SuiteReport, min_confirmed: usize) {
    assert_eq!(
        report.tallies.violation, 0,
        "suite {} produced violations",
        report.suite
    );
    assert!(
        report.tallies.confirmed >= min_confirmed,
        "suite {} confirmed only {} records (need {min_confirmed})",
        report.suite,
        report.tallies.confirmed
    );
}

#[test]
fn criterion_01_intro_example() {
    let started = Instant::now();
    let cat = catalog();
    let f20 = catalog_find(&cat, "F20").unwrap();
    assert_eq!(f20.group.order(), 20);
    let b = f20.group.generators()[1].clone();
    let h = Subgroup::from_generators(&f20.group, &[b.compose(&b)]).unwrap();
    assert_eq!(h.order(), 2);
    let pi = props::is_pi_supplemented(&f20.group, &h).unwrap();
    let c = props::check_property(&f20.group, &h, &props::PropertyId::CSupplemented).unwrap();
    assert!(pi.holds, "H = <b^2> must be Π-supplemented in F20");
    assert!(!c.holds, "H = <b^2> must not be c-supplemented in F20");
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "intro example took {elapsed:?}, budget is 1 s"
    );
    pass(
        1,
        "F20 intro example: Π-supplemented and not c-supplemented",
    );
}

#[test]
fn criterion_02_prop_41_suite() {
    let started = Instant::now();
    let report = run_suite(SuiteId::Prop41, &catalog(), &Config::default()).unwrap();
    assert_clean(&report, 50);
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "prop-4.1 took {elapsed:?}, budget is 10 min"
    );
    pass(
        2,
        "Proposition 4.1: all six conditions imply Π-property, zero violations",
    );
}

#[test]
fn criterion_03_prop_42_suite() {
    let started = Instant::now();
    let report = run_suite(SuiteId::Prop42, &catalog(), &Config::default()).unwrap();
    assert_clean(&report, 50);
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "prop-4.2 took {elapsed:?}, budget is 10 min"
    );
    pass(
        3,
        "Proposition 4.2: all six conditions imply Π-supplemented, zero violations",
    );
}

#[test]
fn criterion_04_thm_b_suite() {
    let report = run_suite(SuiteId::ThmB, &catalog(), &Config::default()).unwrap();
    assert_clean(&report, 1);
    let confirmed = |group: &str, p: u64| {
        report
            .records
            .iter()
            .any(|r| r.group == group && r.params["p"] == json!(p) && r.status == Status::Confirmed)
    };
    assert!(confirmed("S3", 3), "(S3, C3) instance must confirm");
    assert!(confirmed("F20", 5), "(F20, <a>) instance must confirm");
    let a4_records: Vec<_> = report.records.iter().filter(|r| r.group == "A4").collect();
    assert!(!a4_records.is_empty());
    assert!(
        a4_records.iter().all(|r| r.status == Status::Vacuous),
        "every (A4, V4) instance must be vacuous"
    );
    pass(
        4,
        "Theorem B: zero violations, required instances confirmed",
    );
}

#[test]
fn criterion_05_thm_c_suite() {
    let report = run_suite(SuiteId::ThmC, &catalog(), &Config::default()).unwrap();
    assert_clean(&report, 1);
    assert!(
        report.records.iter().any(|r| {
            r.group == "D10" && r.params["p"] == json!(2) && r.status == Status::Confirmed
        }),
        "(D10, p = 2) instance must confirm"
    );
    let s4_p2: Vec<_> = report
        .records
        .iter()
        .filter(|r| r.group == "S4" && r.params["p"] == json!(2))
        .collect();
    assert!(!s4_p2.is_empty());
    assert!(
        s4_p2.iter().all(|r| r.status == Status::Vacuous),
        "every (S4, p = 2) instance must be vacuous: S4 is not 2-nilpotent"
    );
    pass(5, "Theorem C: zero violations, D10 confirmed, S4 vacuous");
}

#[test]
fn criterion_06_thm_a_suite_both_formations() {
    let mut config = Config {
        max_order: Some(120),
        ..Config::default()
    };
    for formation in [Formation::Supersoluble, Formation::Soluble] {
        config.formations = vec![formation];
        let report = run_suite(SuiteId::ThmA, &catalog(), &config).unwrap();
        assert_eq!(
            report.tallies.violation,
            0,
            "thm-a violations with formation {}",
            formation.tag()
        );
        assert!(report.tallies.confirmed > 0);
    }
    pass(6, "Theorem A: zero violations for formations U and S");
}

#[test]
fn criterion_07_lemma_21_transfer_suite() {
    let config = Config {
        max_order: Some(60),
        ..Config::default()
    };
    let report = run_suite(SuiteId::Lemma21, &catalog(), &config).unwrap();
    assert_clean(&report, 1);
    pass(
        7,
        "Lemma 2.1 quotient transfer: both parts hold on all groups of order <= 60",
    );
}

#[test]
fn criterion_08_structural_oracles() {
    let cat = catalog();

    // Definitional vs greedy U-hypercentre.
    for entry in &cat {
        let definitional = structure::hypercentre(&entry.group, Formation::Supersoluble).unwrap();
        let greedy = structure::hypercentre_greedy_u(&entry.group).unwrap();
        assert_eq!(
            definitional.members(),
            greedy.members(),
            "hypercentre routes disagree on {}",
            entry.name
        );
    }

    // C_G(F*(G)) <= F*(G).
    for entry in &cat {
        let fstar = structure::generalized_fitting(&entry.group).unwrap();
        assert!(
            fstar.centralizer().is_subset_of(&fstar),
            "centralizer of F* escapes F* on {}",
            entry.name
        );
    }

    // Sylow counts: congruent to 1 mod p and divide the p'-part.
    for entry in &cat {
        let lat = all_subgroups(&entry.group).unwrap();
        let order = entry.group.order() as u64;
        for p in structure::primes_of(order) {
            let sylows = lat.sylow_subgroups(p);
            assert!(!sylows.is_empty());
            let count = sylows.len() as u64;
            assert_eq!(count % p, 1, "Sylow count mod {p} on {}", entry.name);
            let p_prime_part = order / structure::p_part(order, p);
            assert_eq!(
                p_prime_part % count,
                0,
                "Sylow count does not divide p'-part on {}",
                entry.name
            );
        }
    }

    // Jordan–Hölder: identical factor-order multisets on every maximal
    // chain of the normal lattice.
    for entry in &cat {
        let lat = all_subgroups(&entry.group).unwrap();
        let normals: Vec<Subgroup> = lat.normals().collect();
        let covers = |a: &Subgroup, b: &Subgroup| {
            a.is_subset_of(b)
                && a.order() < b.order()
                && !normals.iter().any(|m| {
                    m.order() > a.order()
                        && m.order() < b.order()
                        && a.is_subset_of(m)
                        && m.is_subset_of(b)
                })
        };
        let mut chains: Vec<Vec<u64>> = Vec::new();
        let mut stack: Vec<(Subgroup, Vec<u64>)> =
            vec![(Subgroup::trivial(&entry.group), Vec::new())];
        while let Some((current, factors)) = stack.pop() {
            if current.is_full() {
                let mut sorted = factors.clone();
                sorted.sort_unstable();
                chains.push(sorted);
                continue;
            }
            for m in normals.iter().filter(|m| covers(&current, m)) {
                let mut next = factors.clone();
                next.push((m.order() / current.order()) as u64);
                stack.push((m.clone(), next));
            }
        }
        assert!(!chains.is_empty());
        assert!(
            chains.windows(2).all(|w| w[0] == w[1]),
            "Jordan–Hölder multisets differ on {}",
            entry.name
        );
    }

    // Product formula on 1000 random subgroup pairs.
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let lattices: Vec<_> = cat
        .iter()
        .map(|e| all_subgroups(&e.group).unwrap())
        .collect();
    for _ in 0..1000 {
        let lat = &lattices[rng.random_range(0..lattices.len())];
        let h = lat.subgroup(rng.random_range(0..lat.len()));
        let k = lat.subgroup(rng.random_range(0..lat.len()));
        let product = h.product(&k).unwrap();
        let inter = h.intersect(&k).unwrap();
        assert_eq!(
            product.elements.len() * inter.order(),
            h.order() * k.order()
        );
    }

    pass(
        8,
        "structural oracles: hypercentre routes, F* centralizer, Sylow counts, Jordan–Hölder, product formula",
    );
}

#[test]
fn criterion_09_lemma_sanity_suites() {
    let config = Config::default();
    let cat = catalog();
    let l213 = run_suite(SuiteId::Lemma213, &cat, &config).unwrap();
    assert_eq!(l213.tallies.violation, 0, "lemma-2.13 violations");
    let l215 = run_suite(SuiteId::Lemma215, &cat, &config).unwrap();
    assert_eq!(l215.tallies.violation, 0, "lemma-2.15 violations");
    pass(
        9,
        "Lemma 2.13 and Lemma 2.15 sanity suites: zero violations",
    );
}

#[test]
fn criterion_10_determinism() {
    let config = Config::default();
    let render_all = || {
        let cat = catalog(); // fresh groups, fresh memo tables
        let reports: Vec<SuiteReport> = SuiteId::all()
            .into_iter()
            .map(|id| run_suite(id, &cat, &config).unwrap())
            .collect();
        let mut doc = render_reports(&reports);
        strip_timestamps(&mut doc);
        serde_json::to_string_pretty(&doc).unwrap()
    };
    let first = render_all();
    let second = render_all();
    assert_eq!(first, second, "reports differ after timestamp stripping");
    pass(
        10,
        "two full verify runs are byte-identical modulo timestamps",
    );
}
