//! Machine verification of the main theorems, the corollaries, the
//! sufficient-condition propositions and the lemma sanity suites over a
//! group catalog, plus a property-separation miner.
//!
//! Every suite enumerates instances in deterministic catalog/lattice
//! order, evaluates the hypothesis and conclusion of each instance, and
//! reports one record per instance. A passing suite has zero VIOLATION
//! records; a VIOLATION indicates an implementation bug somewhere in the
//! stack and is surfaced loudly, never suppressed.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{catalog_find, CatalogEntry, CATALOG_VERSION};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::lattice::all_subgroups;
use crate::perm::{quotient, Group, Subgroup};
use crate::props::{self, PropertyId};
use crate::report::subgroup_value;
use crate::structure::{self, Formation, GroupClass};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteId {
    ExampleIntro,
    Prop41,
    Prop42,
    ThmA,
    ThmB,
    ThmC,
    Cor13,
    Cor14,
    Lemma21,
    Lemma213,
    Lemma215,
}

impl SuiteId {
    pub fn all() -> Vec<SuiteId> {
        use SuiteId::*;
        vec![
            ExampleIntro,
            Prop41,
            Prop42,
            ThmA,
            ThmB,
            ThmC,
            Cor13,
            Cor14,
            Lemma21,
            Lemma213,
            Lemma215,
        ]
    }

    pub fn name(self) -> &'static str {
        use SuiteId::*;
        match self {
            ExampleIntro => "example-intro",
            Prop41 => "prop-4.1",
            Prop42 => "prop-4.2",
            ThmA => "thm-a",
            ThmB => "thm-b",
            ThmC => "thm-c",
            Cor13 => "cor-1.3",
            Cor14 => "cor-1.4",
            Lemma21 => "lemma-2.1",
            Lemma213 => "lemma-2.13",
            Lemma215 => "lemma-2.15",
        }
    }
}

impl std::str::FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl Status {
    fn of(hypothesis: bool, conclusion: bool) -> Status {
        match (hypothesis, conclusion) {
            (true, true) => Status::Confirmed,
            (true, false) => Status::Violation,
            (false, _) => Status::Vacuous,
        }
    }
}

/// Outcome of one theorem-instance check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub group: String,
    pub params: Value,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Tallies {
    pub confirmed: usize,
    pub vacuous: usize,
    pub violation: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub tallies: Tallies,
    /// Records where the all-covering-pairs and fixed-series readings of
    /// "every chief factor" disagreed for the Π-property (reported, never
    /// silently merged).
    pub pi_interpretation_disagreements: usize,
    /// Catalog groups excluded because a cap made their checks
    /// unevaluable (lattice cap, or the ccp cap for condition 6).
    pub skipped_groups: Vec<String>,
}

impl SuiteReport {
    pub fn passes(&self) -> bool {
        self.tallies.violation == 0 && self.tallies.confirmed > 0
    }
}

/// One instance of a theorem or corollary: the group, the parameters the
/// statement quantifies over, and (for Theorem A and its corollaries)
/// the formation.
#[derive(Clone, Debug)]
pub enum TheoremInstance {
    A {
        group: Group,
        formation: Formation,
        e: Subgroup,
        x: Subgroup,
    },
    B {
        group: Group,
        p_subgroup: Subgroup,
        p: u64,
        d_order: u64,
    },
    C {
        group: Group,
        e: Subgroup,
        sylow: Subgroup,
        p: u64,
        d_order: u64,
    },
    Cor13 {
        group: Group,
        formation: Formation,
        e: Subgroup,
        x: Subgroup,
    },
    Cor14 {
        group: Group,
        formation: Formation,
        e: Subgroup,
        x: Subgroup,
    },
}

/// The shared subgroup condition: every proper subgroup H of P with
/// |H| = d or p*d is Π-supplemented in G or has a p-supersoluble
/// supplement in G; when p = 2, d = 1 and P is not quaternion-free, the
/// same must hold for every cyclic subgroup of P of order 4.
fn subgroup_condition(g: &Group, p_sub: &Subgroup, p: u64, d_order: u64) -> Result<bool> {
    let lat = all_subgroups(g)?;
    let inside = lat.indices_inside(p_sub);
    let wanted = [d_order, p * d_order];
    for &i in &inside {
        let h = lat.subgroup(i);
        let order = h.order() as u64;
        if order as usize >= p_sub.order() || !wanted.contains(&order) {
            continue;
        }
        if !supplemented_or_class(g, &h, p)? {
            return Ok(false);
        }
    }
    if p == 2 && d_order == 1 && !structure::is_quaternion_free(p_sub)? {
        for &i in &inside {
            let h = lat.subgroup(i);
            if h.order() == 4
                && structure::is_cyclic_subgroup(&h)
                && !supplemented_or_class(g, &h, 2)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn supplemented_or_class(g: &Group, h: &Subgroup, p: u64) -> Result<bool> {
    Ok(props::holds(g, h, &PropertyId::PiSupplemented)?
        || props::holds(
            g,
            h,
            &PropertyId::HasSupplementIn(GroupClass::PSupersoluble(p)),
        )?)
}

/// Non-cyclic Sylow subgroups of X per prime, lifted into G. Primes with
/// cyclic Sylow subgroups are skipped (cyclicity is conjugation
/// invariant, so checking the first representative suffices).
fn noncyclic_sylows(g: &Group, x: &Subgroup) -> Result<Vec<(u64, Subgroup)>> {
    let xg = x.as_group();
    let xlat = all_subgroups(&xg)?;
    let mut out = Vec::new();
    for p in structure::pi_of(x) {
        let sylows = xlat.sylow_subgroups(p);
        if sylows.is_empty() || structure::is_cyclic_subgroup(&sylows[0]) {
            continue;
        }
        for s in sylows {
            out.push((p, Subgroup::lift_to(&s, g)?));
        }
    }
    Ok(out)
}

/// Powers of p strictly below |P| (candidate |D| values).
fn d_candidates(p: u64, p_order: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d < p_order {
        out.push(d);
        d *= p;
    }
    out
}

pub fn hypothesis_holds(instance: &TheoremInstance) -> Result<bool> {
    match instance {
        TheoremInstance::B {
            group,
            p_subgroup,
            p,
            d_order,
        } => subgroup_condition(group, p_subgroup, *p, *d_order),
        TheoremInstance::C {
            group,
            sylow,
            p,
            d_order,
            ..
        } => subgroup_condition(group, sylow, *p, *d_order),
        TheoremInstance::A { group, x, .. } => {
            for (p, sylow) in noncyclic_sylows(group, x)? {
                let mut some_d_works = false;
                for d in d_candidates(p, sylow.order() as u64) {
                    if subgroup_condition(group, &sylow, p, d)? {
                        some_d_works = true;
                        break;
                    }
                }
                if !some_d_works {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        TheoremInstance::Cor13 { group, x, .. } => {
            for (p, sylow) in noncyclic_sylows(group, x)? {
                let d = sylow.order() as u64 / p;
                if !subgroup_condition(group, &sylow, p, d)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        TheoremInstance::Cor14 { group, x, .. } => {
            for (p, sylow) in noncyclic_sylows(group, x)? {
                if !subgroup_condition(group, &sylow, p, 1)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

pub fn conclusion_holds(instance: &TheoremInstance) -> Result<bool> {
    match instance {
        TheoremInstance::A {
            group, formation, ..
        }
        | TheoremInstance::Cor13 {
            group, formation, ..
        }
        | TheoremInstance::Cor14 {
            group, formation, ..
        } => match formation {
            Formation::Supersoluble => structure::is_supersoluble(group),
            Formation::Soluble => structure::is_soluble(group),
        },
        TheoremInstance::B {
            group, p_subgroup, ..
        } => {
            let z = structure::hypercentre(group, Formation::Supersoluble)?;
            Ok(p_subgroup.is_subset_of(&z))
        }
        TheoremInstance::C { e, p, .. } => structure::is_p_nilpotent(&e.as_group(), *p),
    }
}

fn instance_params(instance: &TheoremInstance) -> Value {
    match instance {
        TheoremInstance::A {
            formation, e, x, ..
        } => json!({
            "formation": formation.tag(),
            "e": subgroup_value(e),
            "x": subgroup_value(x),
        }),
        TheoremInstance::B {
            p_subgroup,
            p,
            d_order,
            ..
        } => json!({
            "p": p,
            "d_order": d_order,
            "p_subgroup": subgroup_value(p_subgroup),
        }),
        TheoremInstance::C {
            e,
            sylow,
            p,
            d_order,
            ..
        } => json!({
            "p": p,
            "d_order": d_order,
            "e": subgroup_value(e),
            "sylow": subgroup_value(sylow),
        }),
        TheoremInstance::Cor13 {
            formation, e, x, ..
        } => json!({
            "formation": formation.tag(),
            "e": subgroup_value(e),
            "x": subgroup_value(x),
        }),
        TheoremInstance::Cor14 {
            formation, e, x, ..
        } => json!({
            "formation": formation.tag(),
            "e": subgroup_value(e),
            "x": subgroup_value(x),
        }),
    }
}

/// A unit of suite work: evaluates to (hypothesis, conclusion, witness,
/// interpretation-disagreement flag).
enum Work {
    Theorem(TheoremInstance),
    /// Condition `index` of Proposition 4.1 (`pi_supplemented = false`) or
    /// 4.2 (`pi_supplemented = true`) for subgroup `h`.
    Implication {
        group: Group,
        h: Subgroup,
        index: u8,
        pi_supplemented: bool,
    },
    Lemma21 {
        group: Group,
        n: Subgroup,
        h: Subgroup,
        part: u8,
    },
    Lemma213Cyclic {
        group: Group,
        p: u64,
    },
    Lemma213Index {
        h: Subgroup,
    },
    Lemma215 {
        group: Group,
        p: u64,
        sylow: Subgroup,
    },
    ExampleIntro {
        group: Group,
        h: Subgroup,
    },
}

struct Pending {
    group_name: String,
    params: Value,
    work: Work,
}

struct Evaluated {
    hypothesis: bool,
    conclusion: bool,
    witness: Option<Value>,
    disagreement: bool,
    note: Option<String>,
}

fn prop_condition(g: &Group, h: &Subgroup, index: u8, pi_supplemented: bool) -> Result<bool> {
    use PropertyId::*;
    let soluble_closure =
        |h: &Subgroup| -> Result<bool> { structure::is_soluble(&h.normal_closure().as_group()) };
    if pi_supplemented {
        match index {
            1 => props::holds(g, h, &Cas),
            2 => props::holds(g, h, &USupplemented),
            3 => props::holds(g, h, &WeaklySSupplemented),
            4 => Ok(h.p_group_prime().is_some() && props::holds(g, h, &WeaklySbarSupplemented)?),
            5 => Ok(soluble_closure(h)? && props::holds(g, h, &WeaklySSuppEmbedded)?),
            6 => Ok(soluble_closure(h)? && props::holds(g, h, &WeaklyCPermutable)?),
            _ => unreachable!(),
        }
    } else {
        match index {
            1 => props::holds(g, h, &Cap),
            2 => props::holds(g, h, &UHypercentrallyEmbedded),
            3 => props::holds(g, h, &SQuasinormal),
            4 => Ok(h.p_group_prime().is_some() && props::holds(g, h, &SSemipermutable)?),
            5 => Ok(soluble_closure(h)? && props::holds(g, h, &SQnEmbedded)?),
            6 => Ok(soluble_closure(h)? && props::holds(g, h, &SConditionallyPermutable)?),
            _ => unreachable!(),
        }
    }
}

fn evaluate(work: &Work) -> Result<Evaluated> {
    match work {
        Work::Theorem(instance) => {
            let hypothesis = hypothesis_holds(instance)?;
            let conclusion = conclusion_holds(instance)?;
            Ok(Evaluated {
                hypothesis,
                conclusion,
                witness: None,
                disagreement: false,
                note: None,
            })
        }
        Work::Implication {
            group,
            h,
            index,
            pi_supplemented,
        } => {
            let hypothesis = prop_condition(group, h, *index, *pi_supplemented)?;
            let (conclusion, witness) = if *pi_supplemented {
                let v = props::is_pi_supplemented(group, h)?;
                let w = v.witness.as_ref().and_then(|w| match w {
                    props::Witness::Supplement { t, i } => Some(json!({
                        "t": subgroup_value(t),
                        "i": i.as_ref().map(subgroup_value),
                    })),
                    _ => None,
                });
                (v.holds, w)
            } else {
                let v = props::satisfies_pi_property(group, h)?;
                let w = v.witness.as_ref().and_then(|w| match w {
                    props::Witness::FactorViolation {
                        k,
                        l,
                        index,
                        primes,
                        ..
                    } => Some(json!({
                        "violating_factor": {
                            "k_order": k.order(),
                            "l_order": l.order(),
                            "normalizer_index": index,
                            "primes": primes,
                        }
                    })),
                    _ => None,
                });
                (v.holds, w)
            };
            let disagreement = !props::pi_property_interpretations_agree(group, h)?;
            Ok(Evaluated {
                hypothesis,
                conclusion,
                witness,
                disagreement,
                note: disagreement
                    .then(|| "series and covering-pair readings disagree".to_string()),
            })
        }
        Work::Lemma21 { group, n, h, part } => {
            let q = quotient(group, n)?;
            let qg = q.image().clone();
            let h_img = q.project_subgroup(h)?;
            match part {
                1 => {
                    let hypothesis = props::holds(group, h, &PropertyId::PiProperty)?;
                    let conclusion =
                        hypothesis && props::holds(&qg, &h_img, &PropertyId::PiProperty)?;
                    Ok(Evaluated {
                        hypothesis,
                        conclusion,
                        witness: None,
                        disagreement: false,
                        note: None,
                    })
                }
                _ => {
                    let precondition =
                        n.is_subset_of(h) || structure::coprime(h.order() as u64, n.order() as u64);
                    let hypothesis =
                        precondition && props::holds(group, h, &PropertyId::PiSupplemented)?;
                    let conclusion =
                        hypothesis && props::holds(&qg, &h_img, &PropertyId::PiSupplemented)?;
                    Ok(Evaluated {
                        hypothesis,
                        conclusion,
                        witness: None,
                        disagreement: false,
                        note: None,
                    })
                }
            }
        }
        Work::Lemma213Cyclic { group, p } => {
            let lat = all_subgroups(group)?;
            let sylows = lat.sylow_subgroups(*p);
            let hypothesis = structure::is_cyclic_subgroup(&sylows[0]);
            let conclusion = hypothesis && structure::is_p_nilpotent(group, *p)?;
            Ok(Evaluated {
                hypothesis,
                conclusion,
                witness: None,
                disagreement: false,
                note: None,
            })
        }
        Work::Lemma213Index { h } => Ok(Evaluated {
            hypothesis: true,
            conclusion: h.is_normal(),
            witness: None,
            disagreement: false,
            note: None,
        }),
        Work::Lemma215 { group, p, sylow } => {
            let lat = all_subgroups(group)?;
            let mut hypothesis = true;
            for i in lat.indices_inside(sylow) {
                let h = lat.subgroup(i);
                if h.order() as u64 == *p && !props::holds(group, &h, &PropertyId::Complemented)? {
                    hypothesis = false;
                    break;
                }
            }
            let conclusion = hypothesis && structure::is_p_nilpotent(group, *p)?;
            Ok(Evaluated {
                hypothesis,
                conclusion,
                witness: None,
                disagreement: false,
                note: None,
            })
        }
        Work::ExampleIntro { group, h } => {
            let pi = props::is_pi_supplemented(group, h)?;
            let c = props::holds(group, h, &PropertyId::CSupplemented)?;
            let witness = pi.witness.as_ref().and_then(|w| match w {
                props::Witness::Supplement { t, i } => Some(json!({
                    "pi_supplemented": pi.holds,
                    "c_supplemented": c,
                    "t": subgroup_value(t),
                    "i": i.as_ref().map(subgroup_value),
                })),
                _ => None,
            });
            Ok(Evaluated {
                hypothesis: true,
                conclusion: pi.holds && !c,
                witness,
                disagreement: false,
                note: None,
            })
        }
    }
}

fn theorem_tasks_a_like(
    suite: SuiteId,
    entry: &CatalogEntry,
    config: &Config,
    tasks: &mut Vec<Pending>,
) -> Result<()> {
    let g = &entry.group;
    let lat = all_subgroups(g)?;
    for formation in &config.formations {
        for e in lat.normals() {
            let q = quotient(g, &e)?;
            let in_formation = match formation {
                Formation::Supersoluble => structure::is_supersoluble(q.image())?,
                Formation::Soluble => structure::is_soluble(q.image())?,
            };
            if !in_formation {
                continue;
            }
            let fstar = Subgroup::lift_to(&structure::generalized_fitting(&e.as_group())?, g)?;
            for x in lat.normals() {
                if !fstar.is_subset_of(&x) || !x.is_subset_of(&e) {
                    continue;
                }
                let instance = match suite {
                    SuiteId::ThmA => TheoremInstance::A {
                        group: g.clone(),
                        formation: *formation,
                        e: e.clone(),
                        x: x.clone(),
                    },
                    SuiteId::Cor13 => TheoremInstance::Cor13 {
                        group: g.clone(),
                        formation: *formation,
                        e: e.clone(),
                        x: x.clone(),
                    },
                    _ => TheoremInstance::Cor14 {
                        group: g.clone(),
                        formation: *formation,
                        e: e.clone(),
                        x: x.clone(),
                    },
                };
                tasks.push(Pending {
                    group_name: entry.name.clone(),
                    params: instance_params(&instance),
                    work: Work::Theorem(instance),
                });
            }
        }
    }
    Ok(())
}

fn build_tasks(id: SuiteId, catalog: &[CatalogEntry], config: &Config) -> Result<Vec<Pending>> {
    let mut tasks = Vec::new();
    match id {
        SuiteId::ExampleIntro => {
            let entry = catalog_find(catalog, "F20")?;
            let b = entry.group.generators()[1].clone();
            let h = Subgroup::from_generators(&entry.group, &[b.compose(&b)])?;
            tasks.push(Pending {
                group_name: entry.name.clone(),
                params: json!({ "subgroup": subgroup_value(&h) }),
                work: Work::ExampleIntro {
                    group: entry.group.clone(),
                    h,
                },
            });
        }
        SuiteId::Prop41 | SuiteId::Prop42 => {
            let pi_supplemented = id == SuiteId::Prop42;
            for entry in catalog {
                let g = &entry.group;
                let lat = all_subgroups(g)?;
                for h in lat.iter() {
                    for index in 1..=6u8 {
                        // Condition 6 of prop-4.2 needs the ccp checker.
                        if pi_supplemented && index == 6 && g.order() > g.caps().ccp_cap {
                            continue;
                        }
                        tasks.push(Pending {
                            group_name: entry.name.clone(),
                            params: json!({
                                "subgroup": subgroup_value(&h),
                                "condition": index,
                            }),
                            work: Work::Implication {
                                group: g.clone(),
                                h: h.clone(),
                                index,
                                pi_supplemented,
                            },
                        });
                    }
                }
            }
        }
        SuiteId::ThmA | SuiteId::Cor13 | SuiteId::Cor14 => {
            for entry in catalog {
                theorem_tasks_a_like(id, entry, config, &mut tasks)?;
            }
        }
        SuiteId::ThmB => {
            for entry in catalog {
                let g = &entry.group;
                let lat = all_subgroups(g)?;
                for n in lat.normals() {
                    let Some(p) = n.p_group_prime() else {
                        continue;
                    };
                    for d_order in d_candidates(p, n.order() as u64) {
                        let instance = TheoremInstance::B {
                            group: g.clone(),
                            p_subgroup: n.clone(),
                            p,
                            d_order,
                        };
                        tasks.push(Pending {
                            group_name: entry.name.clone(),
                            params: instance_params(&instance),
                            work: Work::Theorem(instance),
                        });
                    }
                }
            }
        }
        SuiteId::ThmC => {
            for entry in catalog {
                let g = &entry.group;
                let lat = all_subgroups(g)?;
                for e in lat.normals() {
                    let eg = e.as_group();
                    let e_order = e.order() as u64;
                    for p in structure::pi_of(&e) {
                        if !structure::coprime(e_order, p - 1) {
                            continue;
                        }
                        let elat = all_subgroups(&eg)?;
                        for sylow in elat.sylow_subgroups(p) {
                            if sylow.order() == 1 {
                                continue;
                            }
                            let lifted = Subgroup::lift_to(&sylow, g)?;
                            for d_order in d_candidates(p, lifted.order() as u64) {
                                let instance = TheoremInstance::C {
                                    group: g.clone(),
                                    e: e.clone(),
                                    sylow: lifted.clone(),
                                    p,
                                    d_order,
                                };
                                tasks.push(Pending {
                                    group_name: entry.name.clone(),
                                    params: instance_params(&instance),
                                    work: Work::Theorem(instance),
                                });
                            }
                        }
                    }
                }
            }
        }
        SuiteId::Lemma21 => {
            for entry in catalog {
                let g = &entry.group;
                let lat = all_subgroups(g)?;
                for n in lat.normals() {
                    for h in lat.iter() {
                        for part in [1u8, 2] {
                            tasks.push(Pending {
                                group_name: entry.name.clone(),
                                params: json!({
                                    "n": subgroup_value(&n),
                                    "h": subgroup_value(&h),
                                    "part": part,
                                }),
                                work: Work::Lemma21 {
                                    group: g.clone(),
                                    n: n.clone(),
                                    h: h.clone(),
                                    part,
                                },
                            });
                        }
                    }
                }
            }
        }
        SuiteId::Lemma213 => {
            for entry in catalog {
                let g = &entry.group;
                let order = g.order() as u64;
                for p in structure::primes_of(order) {
                    if !structure::coprime(order, p - 1) {
                        continue;
                    }
                    tasks.push(Pending {
                        group_name: entry.name.clone(),
                        params: json!({ "p": p, "part": 1 }),
                        work: Work::Lemma213Cyclic {
                            group: g.clone(),
                            p,
                        },
                    });
                    let lat = all_subgroups(g)?;
                    for h in lat.iter() {
                        if h.order() as u64 * p == order {
                            tasks.push(Pending {
                                group_name: entry.name.clone(),
                                params: json!({
                                    "p": p,
                                    "part": 3,
                                    "h": subgroup_value(&h),
                                }),
                                work: Work::Lemma213Index { h },
                            });
                        }
                    }
                }
            }
        }
        SuiteId::Lemma215 => {
            for entry in catalog {
                let g = &entry.group;
                let order = g.order() as u64;
                let lat = all_subgroups(g)?;
                for p in structure::primes_of(order) {
                    if !structure::coprime(order, p - 1) {
                        continue;
                    }
                    for sylow in lat.sylow_subgroups(p) {
                        tasks.push(Pending {
                            group_name: entry.name.clone(),
                            params: json!({ "p": p, "sylow": subgroup_value(&sylow) }),
                            work: Work::Lemma215 {
                                group: g.clone(),
                                p,
                                sylow,
                            },
                        });
                    }
                }
            }
        }
    }
    Ok(tasks)
}

/// Runs one suite over the catalog. Groups beyond the lattice cap are
/// excluded up front and listed in the report; the lemma-2.1 suite
/// defaults to groups of order at most 60 unless `max_order` overrides.
pub fn run_suite(id: SuiteId, catalog: &[CatalogEntry], config: &Config) -> Result<SuiteReport> {
    let order_limit = match (id, config.max_order) {
        (_, Some(limit)) => limit,
        (SuiteId::Lemma21, None) => 60,
        _ => usize::MAX,
    };
    let mut skipped_groups: Vec<String> = Vec::new();
    let usable: Vec<CatalogEntry> = catalog
        .iter()
        .filter(|e| e.group.order() <= order_limit)
        .filter(|e| {
            if e.group.order() > config.max_lattice_order {
                skipped_groups.push(e.name.clone());
                false
            } else {
                true
            }
        })
        .cloned()
        .collect();

    let tasks = build_tasks(id, &usable, config)?;
    let evaluated: Vec<Result<Evaluated>> = tasks.par_iter().map(|t| evaluate(&t.work)).collect();

    let mut records = Vec::with_capacity(tasks.len());
    let mut tallies = Tallies::default();
    let mut disagreements = 0usize;
    for (task, outcome) in tasks.into_iter().zip(evaluated) {
        let out = outcome?;
        let status = Status::of(out.hypothesis, out.conclusion);
        match status {
            Status::Confirmed => tallies.confirmed += 1,
            Status::Vacuous => tallies.vacuous += 1,
            Status::Violation => tallies.violation += 1,
        }
        if out.disagreement {
            disagreements += 1;
        }
        records.push(CheckRecord {
            group: task.group_name,
            params: task.params,
            hypothesis: out.hypothesis,
            conclusion: out.conclusion,
            status,
            witness: out.witness,
            note: out.note,
        });
    }

    Ok(SuiteReport {
        suite: id.name().to_string(),
        config: json!({
            "max_group_order": config.max_group_order,
            "max_lattice_order": config.max_lattice_order,
            "max_ccp_order": config.max_ccp_order,
            "jobs": config.jobs,
            "formations": config.formations.iter().map(|f| f.tag()).collect::<Vec<_>>(),
            "max_order": config.max_order,
            "catalog_version": CATALOG_VERSION,
        }),
        records,
        tallies,
        pi_interpretation_disagreements: disagreements,
        skipped_groups,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishReport {
    pub prop_a: String,
    pub prop_b: String,
    /// Pairs (group, subgroup) with property a but not property b.
    pub witnesses: Vec<Value>,
    pub skipped_groups: Vec<String>,
}

/// Mines the catalog for subgroups separating two properties.
pub fn distinguish(
    a: &PropertyId,
    b: &PropertyId,
    catalog: &[CatalogEntry],
    config: &Config,
) -> Result<DistinguishReport> {
    let needs_ccp = a.needs_ccp_cap() || b.needs_ccp_cap();
    let mut witnesses = Vec::new();
    let mut skipped_groups = Vec::new();
    for entry in catalog {
        let g = &entry.group;
        if g.order() > config.max_lattice_order || (needs_ccp && g.order() > config.max_ccp_order) {
            skipped_groups.push(entry.name.clone());
            continue;
        }
        let lat = all_subgroups(g)?;
        for h in lat.iter() {
            if props::holds(g, &h, a)? && !props::holds(g, &h, b)? {
                witnesses.push(json!({
                    "group": entry.name,
                    "subgroup": subgroup_value(&h),
                }));
            }
        }
    }
    Ok(DistinguishReport {
        prop_a: a.to_string(),
        prop_b: b.to_string(),
        witnesses,
        skipped_groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::perm::FiniteGroup;
    use crate::perm::Permutation;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn entry(name: &str, degree: usize, gens: &[&[usize]]) -> CatalogEntry {
        CatalogEntry {
            name: name.into(),
            group: FiniteGroup::from_generators(degree, gens.iter().map(|v| perm(v)).collect())
                .unwrap(),
        }
    }

    fn s3_entry() -> CatalogEntry {
        entry("S3", 3, &[&[1, 2, 0], &[1, 0, 2]])
    }

    fn a4_entry() -> CatalogEntry {
        entry("A4", 4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
    }

    fn f20_entry() -> CatalogEntry {
        entry("F20", 5, &[&[1, 2, 3, 4, 0], &[0, 2, 4, 1, 3]])
    }

    fn d10_entry() -> CatalogEntry {
        entry("D10", 5, &[&[1, 2, 3, 4, 0], &[0, 4, 3, 2, 1]])
    }

    fn s4_entry() -> CatalogEntry {
        entry("S4", 4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
    }

    #[test]
    fn thm_b_on_s3_and_f20_confirms() {
        let cfg = Config::default();
        let report = run_suite(SuiteId::ThmB, &[s3_entry(), f20_entry()], &cfg).unwrap();
        assert_eq!(report.tallies.violation, 0);
        // (S3, C3, d=1) and (F20, C5, d=1) both confirmed.
        let confirmed: Vec<&CheckRecord> = report
            .records
            .iter()
            .filter(|r| r.status == Status::Confirmed)
            .collect();
        assert!(confirmed
            .iter()
            .any(|r| r.group == "S3" && r.params["p"] == json!(3)));
        assert!(confirmed
            .iter()
            .any(|r| r.group == "F20" && r.params["p"] == json!(5)));
    }

    #[test]
    fn thm_b_on_a4_is_all_vacuous() {
        let cfg = Config::default();
        let report = run_suite(SuiteId::ThmB, &[a4_entry()], &cfg).unwrap();
        assert_eq!(report.records.len(), 2); // V4 with d = 1, 2
        assert!(report.records.iter().all(|r| r.status == Status::Vacuous));
    }

    #[test]
    fn thm_c_on_d10_confirms_and_s4_p2_is_vacuous() {
        let cfg = Config::default();
        let report = run_suite(SuiteId::ThmC, &[d10_entry(), s4_entry()], &cfg).unwrap();
        assert_eq!(report.tallies.violation, 0);
        assert!(report.records.iter().any(|r| r.group == "D10"
            && r.params["p"] == json!(2)
            && r.status == Status::Confirmed));
        for r in report.records.iter().filter(|r| r.group == "S4") {
            assert_eq!(r.params["p"], json!(2));
            assert_eq!(r.status, Status::Vacuous);
        }
    }

    #[test]
    fn thm_b_on_sl23_needs_the_quaternion_side_condition() {
        // SL(2,3) has a normal quaternion Sylow 2-subgroup whose order-4
        // cyclic subgroups are neither Π-supplemented nor 2-supersolubly
        // supplemented, while its unique involution is central. Without
        // the order-4 side condition the d = 1 instance would claim a
        // true hypothesis against Z_U(SL(2,3)) = Z, a false conclusion.
        let cfg = Config::default();
        let catalog = builtin_catalog(&cfg).unwrap();
        let sl23: Vec<CatalogEntry> = catalog
            .into_iter()
            .filter(|e| e.name == "SL(2,3)")
            .collect();
        let report = run_suite(SuiteId::ThmB, &sl23, &cfg).unwrap();
        assert_eq!(report.tallies.violation, 0);
        for r in &report.records {
            let p_order = r.params["p_subgroup"]["order"].as_u64().unwrap();
            if p_order == 8 {
                assert_eq!(r.status, Status::Vacuous, "d={}", r.params["d_order"]);
            }
            if p_order == 2 {
                assert_eq!(r.status, Status::Confirmed);
            }
        }
    }

    #[test]
    fn example_intro_suite_confirms() {
        let cfg = Config::default();
        let catalog = builtin_catalog(&cfg).unwrap();
        let report = run_suite(SuiteId::ExampleIntro, &catalog, &cfg).unwrap();
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.records[0].status, Status::Confirmed);
        assert!(report.passes());
    }

    #[test]
    fn prop41_on_s4_has_no_violations() {
        let cfg = Config::default();
        let report = run_suite(SuiteId::Prop41, &[s4_entry()], &cfg).unwrap();
        assert_eq!(report.records.len(), 30 * 6);
        assert_eq!(report.tallies.violation, 0);
        assert!(report.tallies.confirmed > 0);
        assert_eq!(report.pi_interpretation_disagreements, 0);
    }

    #[test]
    fn distinguish_finds_the_intro_separation() {
        let cfg = Config::default();
        let catalog = vec![f20_entry()];
        let report = distinguish(
            &PropertyId::PiSupplemented,
            &PropertyId::CSupplemented,
            &catalog,
            &cfg,
        )
        .unwrap();
        assert!(report
            .witnesses
            .iter()
            .any(|w| w["group"] == json!("F20") && w["subgroup"]["order"] == json!(2)));
        // The reverse direction is empty: c-supplemented implies pi-supplemented.
        let rev = distinguish(
            &PropertyId::CSupplemented,
            &PropertyId::PiSupplemented,
            &catalog,
            &cfg,
        )
        .unwrap();
        assert!(rev.witnesses.is_empty());
    }

    #[test]
    fn distinguish_s_quasinormal_vs_complemented() {
        let cfg = Config::default();
        let c4 = entry("C4", 4, &[&[1, 2, 3, 0]]);
        let report = distinguish(
            &PropertyId::SQuasinormal,
            &PropertyId::Complemented,
            &[c4],
            &cfg,
        )
        .unwrap();
        assert!(report
            .witnesses
            .iter()
            .any(|w| w["subgroup"]["order"] == json!(2)));
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::all() {
            let back: SuiteId = id.name().parse().unwrap();
            assert_eq!(back, id);
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }
}
