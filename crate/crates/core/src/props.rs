//! The two central predicates (Π-property, Π-supplemented) and the
//! classical embedding property zoo, each returning a re-checkable
//! witness.
//!
//! Π-property of H in G: for every chief factor L/K, the index
//! |G/K : N_{G/K}(HK/K ∩ L/K)| is a π(HK/K ∩ L/K)-number. Since π of
//! the trivial group is empty, a trivial intersection passes exactly
//! because its normalizer is the whole quotient.
//!
//! Π-supplemented: some T ≤ G has G = HT and H ∩ T ≤ I ≤ H where I
//! satisfies Π-property. Witness search is deterministic: T by
//! decreasing order, I by increasing order, first hit returned.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{all_subgroups, SubgroupLattice};
use crate::memo::{FlagKey, PiOutcome, PiSupOutcome, PiViolation, SetKey};
use crate::perm::{product_set, quotient, Group, Subgroup};
use crate::structure::{self, GroupClass};

/// Closed vocabulary of checkable embedding properties.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PropertyId {
    PiProperty,
    PiSupplemented,
    HasSupplementIn(GroupClass),
    Complemented,
    CSupplemented,
    Cap,
    Cas,
    UHypercentrallyEmbedded,
    USupplemented,
    SQuasinormal,
    SSemipermutable,
    SQnEmbedded,
    SConditionallyPermutable,
    CompletelyCPermutable,
    WeaklySSupplemented,
    WeaklySbarSupplemented,
    WeaklySSuppEmbedded,
    WeaklyCPermutable,
}

impl PropertyId {
    /// Every non-parameterized property, in presentation order.
    pub fn all_fixed() -> Vec<PropertyId> {
        use PropertyId::*;
        vec![
            PiProperty,
            PiSupplemented,
            Complemented,
            CSupplemented,
            Cap,
            Cas,
            UHypercentrallyEmbedded,
            USupplemented,
            SQuasinormal,
            SSemipermutable,
            SQnEmbedded,
            SConditionallyPermutable,
            CompletelyCPermutable,
            WeaklySSupplemented,
            WeaklySbarSupplemented,
            WeaklySSuppEmbedded,
            WeaklyCPermutable,
        ]
    }

    /// Whether the checker is subject to the ccp order cap.
    pub fn needs_ccp_cap(&self) -> bool {
        matches!(
            self,
            PropertyId::CompletelyCPermutable | PropertyId::WeaklyCPermutable
        )
    }
}

impl std::fmt::Display for PropertyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use PropertyId::*;
        match self {
            PiProperty => write!(f, "pi-property"),
            PiSupplemented => write!(f, "pi-supplemented"),
            HasSupplementIn(c) => write!(f, "has-supplement-in:{c}"),
            Complemented => write!(f, "complemented"),
            CSupplemented => write!(f, "c-supplemented"),
            Cap => write!(f, "cap"),
            Cas => write!(f, "cas"),
            UHypercentrallyEmbedded => write!(f, "u-hypercentrally-embedded"),
            USupplemented => write!(f, "u-supplemented"),
            SQuasinormal => write!(f, "s-quasinormal"),
            SSemipermutable => write!(f, "s-semipermutable"),
            SQnEmbedded => write!(f, "s-qn-embedded"),
            SConditionallyPermutable => write!(f, "s-conditionally-permutable"),
            CompletelyCPermutable => write!(f, "completely-c-permutable"),
            WeaklySSupplemented => write!(f, "weakly-s-supplemented"),
            WeaklySbarSupplemented => write!(f, "weakly-sbar-supplemented"),
            WeaklySSuppEmbedded => write!(f, "weakly-s-supp-embedded"),
            WeaklyCPermutable => write!(f, "weakly-c-permutable"),
        }
    }
}

impl std::str::FromStr for PropertyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use PropertyId::*;
        if let Some(rest) = s.strip_prefix("has-supplement-in:") {
            return Ok(HasSupplementIn(rest.parse()?));
        }
        match s {
            "pi-property" => Ok(PiProperty),
            "pi-supplemented" => Ok(PiSupplemented),
            "complemented" => Ok(Complemented),
            "c-supplemented" => Ok(CSupplemented),
            "cap" => Ok(Cap),
            "cas" => Ok(Cas),
            "u-hypercentrally-embedded" => Ok(UHypercentrallyEmbedded),
            "u-supplemented" => Ok(USupplemented),
            "s-quasinormal" => Ok(SQuasinormal),
            "s-semipermutable" => Ok(SSemipermutable),
            "s-qn-embedded" => Ok(SQnEmbedded),
            "s-conditionally-permutable" => Ok(SConditionallyPermutable),
            "completely-c-permutable" => Ok(CompletelyCPermutable),
            "weakly-s-supplemented" => Ok(WeaklySSupplemented),
            "weakly-sbar-supplemented" => Ok(WeaklySbarSupplemented),
            "weakly-s-supp-embedded" => Ok(WeaklySSuppEmbedded),
            "weakly-c-permutable" => Ok(WeaklyCPermutable),
            other => Err(Error::UnknownProperty(other.to_string())),
        }
    }
}

/// Certifying objects for a verdict. Positive existential verdicts carry
/// the found objects; failed universal verdicts carry a violation.
#[derive(Clone, Debug)]
pub enum Witness {
    /// T with G = HT; `i` is the intermediate subgroup for Π-supplemented.
    Supplement { t: Subgroup, i: Option<Subgroup> },
    /// T with G = HT, where H ∩ T lands under `via` (H_sG, H_s̄G, H_se,
    /// or the CAP/ccp-checked intersection itself).
    SupplementVia { t: Subgroup, via: Subgroup },
    /// Per Sylow subgroup of H, the S-quasinormal host it is Sylow in.
    Hosts(Vec<(Subgroup, Subgroup)>),
    /// For each prime, one permuting Sylow subgroup.
    PermutingSylows(Vec<(u64, Subgroup)>),
    /// Chief factor where the Π-property index test fails.
    FactorViolation {
        k: Subgroup,
        l: Subgroup,
        index: u64,
        primes: Vec<u64>,
    },
    /// Chief factor neither covered nor avoided.
    CoverAvoidViolation { k: Subgroup, l: Subgroup },
    /// A Sylow subgroup that fails to permute (or to embed).
    SylowViolation { p: u64, sylow: Subgroup },
    /// No Sylow p-subgroup permutes with H.
    NoPermutingSylow { p: u64 },
    /// A subgroup T admitting no x in ⟨H,T⟩ with H T^x = T^x H.
    CcpViolation { t: Subgroup },
}

#[derive(Clone, Debug)]
pub struct PropertyVerdict {
    pub property: PropertyId,
    pub holds: bool,
    pub witness: Option<Witness>,
}

fn subgroup_from_members(g: &Group, members: &[u32]) -> Subgroup {
    Subgroup::from_members_unchecked(g, members.to_vec())
}

fn flag_cache_get(g: &Group, key: &FlagKey) -> Option<bool> {
    g.memo.flags.lock().unwrap().get(key).copied()
}

fn flag_cache_put(g: &Group, key: FlagKey, v: bool) {
    g.memo.flags.lock().unwrap().insert(key, v);
}

/// Memoized boolean form of any property check.
pub fn holds(g: &Group, h: &Subgroup, prop: &PropertyId) -> Result<bool> {
    match prop {
        PropertyId::PiProperty => Ok(pi_property_outcome(g, h)?.holds),
        PropertyId::PiSupplemented => Ok(pi_supplemented_outcome(g, h)?.holds),
        _ => {
            let key = FlagKey::Prop(prop.clone(), h.members().to_vec());
            if let Some(v) = flag_cache_get(g, &key) {
                return Ok(v);
            }
            let v = check_property(g, h, prop)?.holds;
            Ok(v)
        }
    }
}

/// Full verdict with witness for any property id.
pub fn check_property(g: &Group, h: &Subgroup, prop: &PropertyId) -> Result<PropertyVerdict> {
    if !h.parent().same_group(g) {
        return Err(Error::ParentMismatch);
    }
    let verdict = match prop {
        PropertyId::PiProperty => satisfies_pi_property(g, h)?,
        PropertyId::PiSupplemented => is_pi_supplemented(g, h)?,
        PropertyId::HasSupplementIn(class) => has_supplement_in_class(g, h, class)?,
        _ => check_classical(g, h, prop)?,
    };
    flag_cache_put(
        g,
        FlagKey::Prop(prop.clone(), h.members().to_vec()),
        verdict.holds,
    );
    Ok(verdict)
}

/// The Π-property check over every chief factor pair, together with the
/// restriction to one fixed chief series (the two readings of "every
/// chief factor" — reported side by side, never silently merged).
pub(crate) fn pi_property_outcome(g: &Group, h: &Subgroup) -> Result<PiOutcome> {
    let key = h.members().to_vec();
    if let Some(out) = g.memo.pi.lock().unwrap().get(&key) {
        return Ok(out.clone());
    }
    let lat = all_subgroups(g)?;
    let pairs = lat.chief_factor_pairs();
    let series = lat.chief_series();
    let in_series = |k: &Subgroup, l: &Subgroup| {
        series
            .windows(2)
            .any(|w| w[0].members() == k.members() && w[1].members() == l.members())
    };
    let mut all_ok = true;
    let mut series_ok = true;
    let mut violation = None;
    for cf in &pairs {
        let q = quotient(g, &cf.k)?;
        let hk = product_set(g, h.members(), cf.k.members());
        let hk_img = q.project_subgroup(&subgroup_from_members(g, &hk))?;
        let l_img = q.project_subgroup(&cf.l)?;
        let a = hk_img.intersect(&l_img)?;
        let normalizer = a.normalizer();
        let index = (q.image().order() / normalizer.order()) as u64;
        let primes = structure::pi_of(&a);
        if !structure::is_pi_number(index, &primes) {
            if all_ok {
                violation = Some(PiViolation {
                    k: cf.k.members().to_vec(),
                    l: cf.l.members().to_vec(),
                    index,
                    primes: primes.iter().copied().collect(),
                });
            }
            all_ok = false;
            if in_series(&cf.k, &cf.l) {
                series_ok = false;
            }
        }
    }
    let out = PiOutcome {
        holds: all_ok,
        series_holds: series_ok,
        violation,
    };
    g.memo.pi.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

pub fn satisfies_pi_property(g: &Group, h: &Subgroup) -> Result<PropertyVerdict> {
    let out = pi_property_outcome(g, h)?;
    let witness = out.violation.as_ref().map(|v| Witness::FactorViolation {
        k: subgroup_from_members(g, &v.k),
        l: subgroup_from_members(g, &v.l),
        index: v.index,
        primes: v.primes.clone(),
    });
    Ok(PropertyVerdict {
        property: PropertyId::PiProperty,
        holds: out.holds,
        witness,
    })
}

/// True when the two readings of "every chief factor" agree for this
/// subgroup (they can only differ when a non-series covering pair fails).
pub fn pi_property_interpretations_agree(g: &Group, h: &Subgroup) -> Result<bool> {
    let out = pi_property_outcome(g, h)?;
    Ok(out.holds == out.series_holds)
}

/// Supplement candidates: lattice indices ordered by decreasing order,
/// lexicographic member list as tie break.
fn descending_indices(lat: &SubgroupLattice) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..lat.len()).collect();
    idx.sort_by(|&a, &b| {
        let sa = lat.subgroup(a);
        let sb = lat.subgroup(b);
        sb.order()
            .cmp(&sa.order())
            .then_with(|| sa.members().cmp(sb.members()))
    });
    idx
}

/// HT = G as sets iff |H| |T| = |G| |H∩T| (the product count is exact).
fn is_supplement(g: &Group, h: &Subgroup, t: &Subgroup, inter: &Subgroup) -> bool {
    h.order() * t.order() == g.order() * inter.order()
}

pub(crate) fn pi_supplemented_outcome(g: &Group, h: &Subgroup) -> Result<PiSupOutcome> {
    let key = h.members().to_vec();
    if let Some(out) = g.memo.pisup.lock().unwrap().get(&key) {
        return Ok(out.clone());
    }
    let lat = all_subgroups(g)?;
    let inside_h: Vec<usize> = lat.indices_inside(h);
    let mut found: Option<(Vec<u32>, Vec<u32>)> = None;
    'outer: for ti in descending_indices(&lat) {
        let t = lat.subgroup(ti);
        let inter = h.intersect(&t)?;
        if !is_supplement(g, h, &t, &inter) {
            continue;
        }
        for &ii in &inside_h {
            let i_sub = lat.subgroup(ii);
            if !inter.is_subset_of(&i_sub) {
                continue;
            }
            if pi_property_outcome(g, &i_sub)?.holds {
                found = Some((t.members().to_vec(), i_sub.members().to_vec()));
                break 'outer;
            }
        }
    }
    let out = PiSupOutcome {
        holds: found.is_some(),
        t: found.as_ref().map(|f| f.0.clone()),
        i: found.map(|f| f.1),
    };
    g.memo.pisup.lock().unwrap().insert(key, out.clone());
    Ok(out)
}

pub fn is_pi_supplemented(g: &Group, h: &Subgroup) -> Result<PropertyVerdict> {
    let out = pi_supplemented_outcome(g, h)?;
    let witness = match (&out.t, &out.i) {
        (Some(t), Some(i)) => Some(Witness::Supplement {
            t: subgroup_from_members(g, t),
            i: Some(subgroup_from_members(g, i)),
        }),
        _ => None,
    };
    Ok(PropertyVerdict {
        property: PropertyId::PiSupplemented,
        holds: out.holds,
        witness,
    })
}

/// ∃ T ≤ G with HT = G and T in the given class.
pub fn has_supplement_in_class(
    g: &Group,
    h: &Subgroup,
    class: &GroupClass,
) -> Result<PropertyVerdict> {
    let lat = all_subgroups(g)?;
    let mut witness = None;
    for ti in descending_indices(&lat) {
        let t = lat.subgroup(ti);
        let inter = h.intersect(&t)?;
        if !is_supplement(g, h, &t, &inter) {
            continue;
        }
        if structure::is_in_class(&t.as_group(), class)? {
            witness = Some(Witness::Supplement { t, i: None });
            break;
        }
    }
    Ok(PropertyVerdict {
        property: PropertyId::HasSupplementIn(class.clone()),
        holds: witness.is_some(),
        witness,
    })
}

/// All S-quasinormal subgroups of G (memoized per subgroup flag).
fn s_quasinormal_members(g: &Group, lat: &SubgroupLattice) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..lat.len() {
        let s = lat.subgroup(i);
        if holds(g, &s, &PropertyId::SQuasinormal)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Join of all S-quasinormal (resp. S-semipermutable) subgroups of G
/// contained in H.
fn permutable_join(g: &Group, h: &Subgroup, semis: bool) -> Result<Subgroup> {
    let key = if semis {
        SetKey::SbarJoin(h.members().to_vec())
    } else {
        SetKey::SqnJoin(h.members().to_vec())
    };
    let cached = g.memo.sets.lock().unwrap().get(&key).cloned();
    if let Some(members) = cached {
        return Ok(subgroup_from_members(g, &members?));
    }
    let lat = all_subgroups(g)?;
    let prop = if semis {
        PropertyId::SSemipermutable
    } else {
        PropertyId::SQuasinormal
    };
    let mut join = Subgroup::trivial(g);
    for i in lat.indices_inside(h) {
        let s = lat.subgroup(i);
        if holds(g, &s, &prop)? {
            join = join.join(&s)?;
        }
    }
    g.memo
        .sets
        .lock()
        .unwrap()
        .insert(key, Ok(join.members().to_vec()));
    Ok(join)
}

/// H permutes with every listed Sylow subgroup.
fn permutes_with_sylows(
    h: &Subgroup,
    primes: impl Iterator<Item = u64>,
    lat: &SubgroupLattice,
) -> Result<Option<(u64, Subgroup)>> {
    for p in primes {
        for s in lat.sylow_subgroups(p) {
            if !h.product(&s)?.permutes {
                return Ok(Some((p, s)));
            }
        }
    }
    Ok(None)
}

fn completely_c_permutable(g: &Group, h: &Subgroup) -> Result<PropertyVerdict> {
    if g.order() > g.caps().ccp_cap {
        return Err(Error::CapExceeded {
            what: "completely-c-permutable order",
            cap: g.caps().ccp_cap,
        });
    }
    let lat = all_subgroups(g)?;
    for ti in 0..lat.len() {
        let t = lat.subgroup(ti);
        let join = h.join(&t)?;
        let mut permuted = false;
        for &x in join.members() {
            let tx = t.conjugate_by_index(x);
            if h.product(&tx)?.permutes {
                permuted = true;
                break;
            }
        }
        if !permuted {
            return Ok(PropertyVerdict {
                property: PropertyId::CompletelyCPermutable,
                holds: false,
                witness: Some(Witness::CcpViolation { t }),
            });
        }
    }
    Ok(PropertyVerdict {
        property: PropertyId::CompletelyCPermutable,
        holds: true,
        witness: None,
    })
}

/// Dispatch for the classical property zoo; each arm follows the quoted
/// definition literally.
pub fn check_classical(g: &Group, h: &Subgroup, prop: &PropertyId) -> Result<PropertyVerdict> {
    use PropertyId::*;
    let lat = all_subgroups(g)?;
    let mk = |holds: bool, witness: Option<Witness>| PropertyVerdict {
        property: prop.clone(),
        holds,
        witness,
    };
    match prop {
        Complemented => {
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if inter.is_trivial() && is_supplement(g, h, &t, &inter) {
                    return Ok(mk(true, Some(Witness::Supplement { t, i: None })));
                }
            }
            Ok(mk(false, None))
        }
        CSupplemented => {
            let core = h.core();
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if is_supplement(g, h, &t, &inter) && inter.is_subset_of(&core) {
                    return Ok(mk(true, Some(Witness::Supplement { t, i: None })));
                }
            }
            Ok(mk(false, None))
        }
        Cap => {
            for cf in lat.chief_factor_pairs() {
                let hk = product_set(g, h.members(), cf.k.members());
                let covers = cf.l.members().iter().all(|m| hk.binary_search(m).is_ok());
                let avoids = h.intersect(&cf.l)?.is_subset_of(&cf.k);
                if !covers && !avoids {
                    return Ok(mk(
                        false,
                        Some(Witness::CoverAvoidViolation { k: cf.k, l: cf.l }),
                    ));
                }
            }
            Ok(mk(true, None))
        }
        Cas => {
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if is_supplement(g, h, &t, &inter) && holds(g, &inter, &Cap)? {
                    return Ok(mk(true, Some(Witness::SupplementVia { t, via: inter })));
                }
            }
            Ok(mk(false, None))
        }
        UHypercentrallyEmbedded => {
            let core = h.core();
            let q = quotient(g, &core)?;
            let z = structure::hypercentre(q.image(), structure::Formation::Supersoluble)?;
            let closure_img = q.project_subgroup(&h.normal_closure())?;
            Ok(mk(closure_img.is_subset_of(&z), None))
        }
        USupplemented => {
            let core = h.core();
            let q = quotient(g, &core)?;
            let z = structure::hypercentre(q.image(), structure::Formation::Supersoluble)?;
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if is_supplement(g, h, &t, &inter) && q.project_subgroup(&inter)?.is_subset_of(&z) {
                    return Ok(mk(true, Some(Witness::Supplement { t, i: None })));
                }
            }
            Ok(mk(false, None))
        }
        SQuasinormal => {
            let primes = structure::primes_of(g.order() as u64);
            match permutes_with_sylows(h, primes.into_iter(), &lat)? {
                Some((p, sylow)) => Ok(mk(false, Some(Witness::SylowViolation { p, sylow }))),
                None => Ok(mk(true, None)),
            }
        }
        SSemipermutable => {
            let horder = h.order() as u64;
            let primes = structure::primes_of(g.order() as u64)
                .into_iter()
                .filter(|&p| !horder.is_multiple_of(p));
            match permutes_with_sylows(h, primes, &lat)? {
                Some((p, sylow)) => Ok(mk(false, Some(Witness::SylowViolation { p, sylow }))),
                None => Ok(mk(true, None)),
            }
        }
        SQnEmbedded => {
            let hosts_pool = s_quasinormal_members(g, &lat)?;
            let hg = h.as_group();
            let hlat = all_subgroups(&hg)?;
            let mut hosts = Vec::new();
            for p in structure::pi_of(h) {
                for syl in hlat.sylow_subgroups(p) {
                    let lifted = Subgroup::lift_to(&syl, g)?;
                    let target = lifted.order() as u64;
                    let host = hosts_pool.iter().map(|&i| lat.subgroup(i)).find(|w| {
                        lifted.is_subset_of(w) && structure::p_part(w.order() as u64, p) == target
                    });
                    match host {
                        Some(w) => hosts.push((lifted, w)),
                        None => {
                            return Ok(mk(
                                false,
                                Some(Witness::SylowViolation { p, sylow: lifted }),
                            ))
                        }
                    }
                }
            }
            Ok(mk(true, Some(Witness::Hosts(hosts))))
        }
        SConditionallyPermutable => {
            let mut picks = Vec::new();
            for p in structure::primes_of(g.order() as u64) {
                let found = lat
                    .sylow_subgroups(p)
                    .into_iter()
                    .find(|s| h.product(s).map(|pr| pr.permutes).unwrap_or(false));
                match found {
                    Some(s) => picks.push((p, s)),
                    None => return Ok(mk(false, Some(Witness::NoPermutingSylow { p }))),
                }
            }
            Ok(mk(true, Some(Witness::PermutingSylows(picks))))
        }
        CompletelyCPermutable => completely_c_permutable(g, h),
        WeaklySSupplemented | WeaklySbarSupplemented => {
            let semis = matches!(prop, WeaklySbarSupplemented);
            let bound = permutable_join(g, h, semis)?;
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if is_supplement(g, h, &t, &inter) && inter.is_subset_of(&bound) {
                    return Ok(mk(true, Some(Witness::SupplementVia { t, via: bound })));
                }
            }
            Ok(mk(false, None))
        }
        WeaklySSuppEmbedded => {
            let inside: Vec<usize> = lat.indices_inside(h);
            let mut embedded: Vec<Subgroup> = Vec::new();
            for &i in &inside {
                let s = lat.subgroup(i);
                if holds(g, &s, &SQnEmbedded)? {
                    embedded.push(s);
                }
            }
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if !is_supplement(g, h, &t, &inter) {
                    continue;
                }
                if let Some(se) = embedded.iter().find(|se| inter.is_subset_of(se)) {
                    return Ok(mk(
                        true,
                        Some(Witness::SupplementVia { t, via: se.clone() }),
                    ));
                }
            }
            Ok(mk(false, None))
        }
        WeaklyCPermutable => {
            for ti in descending_indices(&lat) {
                let t = lat.subgroup(ti);
                let inter = h.intersect(&t)?;
                if !is_supplement(g, h, &t, &inter) {
                    continue;
                }
                let key = FlagKey::Prop(CompletelyCPermutable, inter.members().to_vec());
                let ccp = match flag_cache_get(g, &key) {
                    Some(v) => v,
                    None => {
                        let v = completely_c_permutable(g, &inter)?.holds;
                        flag_cache_put(g, key, v);
                        v
                    }
                };
                if ccp {
                    return Ok(mk(true, Some(Witness::SupplementVia { t, via: inter })));
                }
            }
            Ok(mk(false, None))
        }
        PiProperty | PiSupplemented | HasSupplementIn(_) => check_property(g, h, prop),
    }
}

/// Independent witness re-validation: rebuilds every claimed fact from
/// raw permutation arithmetic (set products over `HashSet<Permutation>`,
/// closure checks) rather than the searcher's index machinery.
pub fn witness_is_sound(g: &Group, h: &Subgroup, verdict: &PropertyVerdict) -> Result<bool> {
    use std::collections::HashSet;
    if !verdict.holds {
        return Ok(true);
    }
    let Some(witness) = &verdict.witness else {
        return Ok(true);
    };
    let is_subgroup = |s: &Subgroup| -> bool {
        let set: HashSet<_> = s.elements().cloned().collect();
        set.contains(&crate::perm::Permutation::identity(g.degree()))
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(&a.compose(b))))
    };
    let product_is_g = |a: &Subgroup, b: &Subgroup| -> bool {
        let mut set: HashSet<crate::perm::Permutation> = HashSet::new();
        for x in a.elements() {
            for y in b.elements() {
                set.insert(x.compose(y));
            }
        }
        set.len() == g.order()
    };
    match witness {
        Witness::Supplement { t, i } => {
            if !is_subgroup(t) || !product_is_g(h, t) {
                return Ok(false);
            }
            let inter_set: Vec<&crate::perm::Permutation> =
                h.elements().filter(|p| t.contains(p)).collect();
            match (&verdict.property, i) {
                (PropertyId::PiSupplemented, Some(i_sub)) => {
                    let chain_ok = inter_set.iter().all(|p| i_sub.contains(p))
                        && i_sub.elements().all(|p| h.contains(p));
                    Ok(chain_ok && satisfies_pi_property(g, i_sub)?.holds)
                }
                (PropertyId::Complemented, _) => Ok(inter_set.len() == 1),
                (PropertyId::CSupplemented, _) => {
                    let core = h.core();
                    Ok(inter_set.iter().all(|p| core.contains(p)))
                }
                _ => Ok(true),
            }
        }
        Witness::SupplementVia { t, via } => {
            if !is_subgroup(t) || !product_is_g(h, t) {
                return Ok(false);
            }
            Ok(h.elements()
                .filter(|p| t.contains(p))
                .all(|p| via.contains(p)))
        }
        Witness::Hosts(hosts) => {
            for (syl, host) in hosts {
                if !is_subgroup(host) || !syl.elements().all(|p| host.contains(p)) {
                    return Ok(false);
                }
                let p = syl.p_group_prime().unwrap_or(0);
                if p == 0
                    || structure::p_part(host.order() as u64, p) != syl.order() as u64
                    || !holds(g, host, &PropertyId::SQuasinormal)?
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Witness::PermutingSylows(picks) => {
            for (_, s) in picks {
                let mut hs: HashSet<crate::perm::Permutation> = HashSet::new();
                let mut sh: HashSet<crate::perm::Permutation> = HashSet::new();
                for a in h.elements() {
                    for b in s.elements() {
                        hs.insert(a.compose(b));
                        sh.insert(b.compose(a));
                    }
                }
                if hs != sh {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(true),
    }
}

/// π(H) helper re-exported for harness reporting.
pub fn pi_of_members(g: &Group, members: &[u32]) -> BTreeSet<u64> {
    structure::pi_of(&subgroup_from_members(g, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{FiniteGroup, Permutation};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    fn group(degree: usize, gens: &[&[usize]]) -> Group {
        FiniteGroup::from_generators(degree, gens.iter().map(|v| perm(v)).collect()).unwrap()
    }

    fn s3() -> Group {
        group(3, &[&[1, 2, 0], &[1, 0, 2]])
    }

    fn s4() -> Group {
        group(4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
    }

    fn a4() -> Group {
        group(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
    }

    fn f20() -> Group {
        group(5, &[&[1, 2, 3, 4, 0], &[0, 2, 4, 1, 3]])
    }

    fn f20_b2(g: &Group) -> Subgroup {
        let b = g.generators()[1].clone();
        Subgroup::from_generators(g, &[b.compose(&b)]).unwrap()
    }

    #[test]
    fn intro_example_pi_supplemented_but_not_c_supplemented() {
        let g = f20();
        let h = f20_b2(&g);
        let pi = is_pi_supplemented(&g, &h).unwrap();
        assert!(pi.holds);
        // Deterministic witness: T = G (largest first), I = H.
        match pi.witness.as_ref().unwrap() {
            Witness::Supplement { t, i } => {
                assert!(t.is_full());
                assert_eq!(i.as_ref().unwrap().members(), h.members());
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let c = check_classical(&g, &h, &PropertyId::CSupplemented).unwrap();
        assert!(!c.holds);
    }

    #[test]
    fn pi_property_of_trivial_and_full_subgroups() {
        for g in [s4(), f20(), a4()] {
            assert!(
                satisfies_pi_property(&g, &Subgroup::trivial(&g))
                    .unwrap()
                    .holds
            );
            assert!(
                satisfies_pi_property(&g, &Subgroup::full(&g))
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn a4_double_transposition_fails_pi_property_at_bottom_factor() {
        let g = a4();
        let h = Subgroup::from_generators(&g, &[perm(&[1, 0, 3, 2])]).unwrap();
        let v = satisfies_pi_property(&g, &h).unwrap();
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::FactorViolation { k, l, index, .. } => {
                assert!(k.is_trivial());
                assert_eq!(l.order(), 4);
                assert_eq!(index, 3);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(!is_pi_supplemented(&g, &h).unwrap().holds);
    }

    #[test]
    fn full_subgroup_is_pi_supplemented_with_t_equal_g() {
        let g = s4();
        let v = is_pi_supplemented(&g, &Subgroup::full(&g)).unwrap();
        assert!(v.holds);
        match v.witness.unwrap() {
            Witness::Supplement { t, i } => {
                assert!(t.is_full());
                assert!(i.unwrap().is_full());
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn supplement_class_searches() {
        let g = a4();
        let h = Subgroup::from_generators(&g, &[perm(&[1, 0, 3, 2])]).unwrap();
        let v = has_supplement_in_class(&g, &h, &GroupClass::PSupersoluble(2)).unwrap();
        assert!(!v.holds);
        let any = has_supplement_in_class(&g, &h, &GroupClass::Soluble).unwrap();
        assert!(any.holds); // T = A4 itself is soluble.

        // The Sylow 2-subgroup of S4 does have a 2-supersoluble supplement:
        // a point stabilizer S3 meets D8 in order 2, so D8 * S3 = S4.
        let s4 = s4();
        let lat = all_subgroups(&s4).unwrap();
        let d8 = lat.sylow_subgroups(2).into_iter().next().unwrap();
        let v = has_supplement_in_class(&s4, &d8, &GroupClass::PSupersoluble(2)).unwrap();
        assert!(v.holds);
        match v.witness.as_ref().unwrap() {
            Witness::Supplement { t, .. } => {
                assert_eq!(t.order(), 6);
                assert!(structure::is_p_supersoluble(&t.as_group(), 2).unwrap());
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn normal_subgroups_are_s_quasinormal() {
        let g = s4();
        let lat = all_subgroups(&g).unwrap();
        for n in lat.normals() {
            assert!(holds(&g, &n, &PropertyId::SQuasinormal).unwrap());
        }
    }

    #[test]
    fn transposition_in_s3_is_not_s_quasinormal() {
        let g = s3();
        let h = Subgroup::from_generators(&g, &[perm(&[1, 0, 2])]).unwrap();
        let v = check_classical(&g, &h, &PropertyId::SQuasinormal).unwrap();
        assert!(!v.holds);
        match v.witness.unwrap() {
            Witness::SylowViolation { p: 2, sylow } => assert_eq!(sylow.order(), 2),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn implication_chain_from_s_quasinormal() {
        for g in [s3(), a4(), f20()] {
            let lat = all_subgroups(&g).unwrap();
            for h in lat.iter() {
                if holds(&g, &h, &PropertyId::SQuasinormal).unwrap() {
                    assert!(holds(&g, &h, &PropertyId::SSemipermutable).unwrap());
                    assert!(holds(&g, &h, &PropertyId::SQnEmbedded).unwrap());
                    assert!(holds(&g, &h, &PropertyId::SConditionallyPermutable).unwrap());
                }
            }
        }
    }

    #[test]
    fn c_supplemented_implies_pi_supplemented_on_s4() {
        let g = s4();
        let lat = all_subgroups(&g).unwrap();
        for h in lat.iter() {
            if holds(&g, &h, &PropertyId::CSupplemented).unwrap() {
                assert!(holds(&g, &h, &PropertyId::PiSupplemented).unwrap());
            }
        }
    }

    #[test]
    fn ccp_cap_is_enforced() {
        let caps = crate::perm::Caps {
            ccp_cap: 10,
            ..Default::default()
        };
        let g = FiniteGroup::from_generators_capped(
            4,
            vec![perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])],
            caps,
        )
        .unwrap();
        let h = Subgroup::from_generators(&g, &[perm(&[1, 0, 2, 3])]).unwrap();
        assert!(matches!(
            check_classical(&g, &h, &PropertyId::CompletelyCPermutable),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn conjugation_invariance_of_verdicts() {
        let g = s4();
        let lat = all_subgroups(&g).unwrap();
        let props = [
            PropertyId::PiProperty,
            PropertyId::PiSupplemented,
            PropertyId::SQuasinormal,
            PropertyId::Cap,
            PropertyId::CSupplemented,
            PropertyId::Complemented,
        ];
        for (idx, h) in lat.iter().enumerate() {
            if idx % 3 != 0 {
                continue;
            }
            for gen in g.generators() {
                let hc = h.conjugate_by(gen).unwrap();
                for prop in &props {
                    assert_eq!(
                        holds(&g, &h, prop).unwrap(),
                        holds(&g, &hc, prop).unwrap(),
                        "property {prop} not conjugation invariant"
                    );
                }
            }
        }
    }

    #[test]
    fn witnesses_revalidate_independently() {
        let g = f20();
        let lat = all_subgroups(&g).unwrap();
        for h in lat.iter() {
            for prop in [
                PropertyId::PiSupplemented,
                PropertyId::Complemented,
                PropertyId::CSupplemented,
                PropertyId::Cas,
                PropertyId::SQnEmbedded,
                PropertyId::SConditionallyPermutable,
                PropertyId::WeaklySSupplemented,
            ] {
                let v = check_property(&g, &h, &prop).unwrap();
                assert!(
                    witness_is_sound(&g, &h, &v).unwrap(),
                    "unsound witness for {prop} on subgroup of order {}",
                    h.order()
                );
            }
        }
    }

    #[test]
    fn chief_factor_readings_diverge_on_a4_times_c2() {
        // Three twisted Klein subgroups of A4 x C2 fail the Π-property on
        // the covering pair (1, V4 x 1) — normalizer index 3 against
        // π = {2} — while every pair of the canonical chief series
        // passes. The strict all-pairs reading is the verdict; the
        // divergence is surfaced, never merged.
        let a4 = group(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]]);
        let c2 = group(2, &[&[1, 0]]);
        let g = crate::perm::direct_product(&a4, &c2).unwrap();
        let lat = all_subgroups(&g).unwrap();
        let mut disagreeing = Vec::new();
        for h in lat.iter() {
            if !pi_property_interpretations_agree(&g, &h).unwrap() {
                let out = pi_property_outcome(&g, &h).unwrap();
                assert!(!out.holds && out.series_holds);
                disagreeing.push(h);
            }
        }
        assert_eq!(disagreeing.len(), 3);
        assert!(disagreeing.iter().all(|h| h.order() == 4));
    }

    #[test]
    fn property_id_round_trips_through_strings() {
        for p in PropertyId::all_fixed() {
            let s = p.to_string();
            let back: PropertyId = s.parse().unwrap();
            assert_eq!(p, back);
        }
        let p: PropertyId = "has-supplement-in:p-supersoluble:2".parse().unwrap();
        assert_eq!(p, PropertyId::HasSupplementIn(GroupClass::PSupersoluble(2)));
    }
}
