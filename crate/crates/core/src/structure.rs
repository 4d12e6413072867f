//! Class predicates (abelian, nilpotent, soluble, supersoluble,
//! p-supersoluble, p-nilpotent, quasinilpotent, quaternion-free),
//! radicals F(G) and F*(G), and the hypercentres Z_U, Z_S.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{all_subgroups, ChiefFactor};
use crate::memo::{FlagKey, SetKey};
use crate::perm::{quotient, Group, Subgroup};

/// The two formations the artifact instantiates: U (supersoluble) and
/// S (soluble). Both are solubly saturated and contain U, so each is a
/// valid instance of the theorems' formation parameter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Formation {
    #[serde(rename = "U")]
    Supersoluble,
    #[serde(rename = "S")]
    Soluble,
}

impl Formation {
    pub fn tag(self) -> &'static str {
        match self {
            Formation::Supersoluble => "U",
            Formation::Soluble => "S",
        }
    }
}

impl std::str::FromStr for Formation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(Formation::Supersoluble),
            "S" | "s" => Ok(Formation::Soluble),
            other => Err(Error::Parse(format!("unknown formation {other:?}"))),
        }
    }
}

/// Group classes usable as supplement conditions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupClass {
    Abelian,
    Cyclic,
    Nilpotent,
    Soluble,
    Supersoluble,
    PSupersoluble(u64),
    PNilpotent(u64),
    PiClosed(Vec<u64>),
}

impl std::fmt::Display for GroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupClass::Abelian => write!(f, "abelian"),
            GroupClass::Cyclic => write!(f, "cyclic"),
            GroupClass::Nilpotent => write!(f, "nilpotent"),
            GroupClass::Soluble => write!(f, "soluble"),
            GroupClass::Supersoluble => write!(f, "supersoluble"),
            GroupClass::PSupersoluble(p) => write!(f, "p-supersoluble:{p}"),
            GroupClass::PNilpotent(p) => write!(f, "p-nilpotent:{p}"),
            GroupClass::PiClosed(pi) => {
                let parts: Vec<String> = pi.iter().map(|p| p.to_string()).collect();
                write!(f, "pi-closed:{}", parts.join(","))
            }
        }
    }
}

impl std::str::FromStr for GroupClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let parse_prime = |a: Option<&str>| -> Result<u64> {
            a.and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("class {s:?} needs a prime argument")))
        };
        match name {
            "abelian" => Ok(GroupClass::Abelian),
            "cyclic" => Ok(GroupClass::Cyclic),
            "nilpotent" => Ok(GroupClass::Nilpotent),
            "soluble" => Ok(GroupClass::Soluble),
            "supersoluble" => Ok(GroupClass::Supersoluble),
            "p-supersoluble" => Ok(GroupClass::PSupersoluble(parse_prime(arg)?)),
            "p-nilpotent" => Ok(GroupClass::PNilpotent(parse_prime(arg)?)),
            "pi-closed" => {
                let primes: Vec<u64> = arg
                    .unwrap_or("")
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad prime {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                Ok(GroupClass::PiClosed(primes))
            }
            other => Err(Error::Parse(format!("unknown group class {other:?}"))),
        }
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_of(n: u64) -> BTreeSet<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// π(H): the exact prime divisors of |H|; empty for the trivial group.
pub fn pi_of(h: &Subgroup) -> BTreeSet<u64> {
    primes_of(h.order() as u64)
}

/// n is a π-number when all its prime divisors lie in π; 1 is a π-number
/// for every π including the empty set.
pub fn is_pi_number(n: u64, pi: &BTreeSet<u64>) -> bool {
    primes_of(n).is_subset(pi)
}

/// The p-part of n.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut part = 1;
    let mut n = n;
    while n.is_multiple_of(p) {
        part *= p;
        n /= p;
    }
    part
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn coprime(a: u64, b: u64) -> bool {
    gcd(a, b) == 1
}

fn memo_flag<F>(g: &Group, key: FlagKey, compute: F) -> Result<bool>
where
    F: FnOnce() -> Result<bool>,
{
    if let Some(&v) = g.memo.flags.lock().unwrap().get(&key) {
        return Ok(v);
    }
    let v = compute()?;
    g.memo.flags.lock().unwrap().insert(key, v);
    Ok(v)
}

pub fn is_abelian(g: &Group) -> bool {
    let gens = g.generators();
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
}

pub fn is_cyclic(g: &Group) -> bool {
    let n = g.order() as u64;
    g.elements().iter().any(|p| p.order() == n)
}

pub fn is_cyclic_subgroup(h: &Subgroup) -> bool {
    let n = h.order() as u64;
    h.elements().any(|p| p.order() == n)
}

/// Nilpotent ⟺ every Sylow subgroup is normal (hence unique).
pub fn is_nilpotent(g: &Group) -> Result<bool> {
    memo_flag(g, FlagKey::Class(GroupClass::Nilpotent), || {
        let lat = all_subgroups(g)?;
        for p in primes_of(g.order() as u64) {
            if lat.sylow_subgroups(p).len() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Soluble ⟺ every chief factor is abelian.
pub fn is_soluble(g: &Group) -> Result<bool> {
    memo_flag(g, FlagKey::Class(GroupClass::Soluble), || {
        Ok(all_subgroups(g)?
            .chief_factor_pairs()
            .iter()
            .all(|cf| cf.is_abelian))
    })
}

/// Supersoluble ⟺ every chief factor has prime order.
pub fn is_supersoluble(g: &Group) -> Result<bool> {
    memo_flag(g, FlagKey::Class(GroupClass::Supersoluble), || {
        Ok(all_subgroups(g)?
            .chief_factor_pairs()
            .iter()
            .all(|cf| cf.prime == Some(cf.factor_order)))
    })
}

/// p-supersoluble ⟺ every chief factor is a p'-group or has order p.
pub fn is_p_supersoluble(g: &Group, p: u64) -> Result<bool> {
    memo_flag(g, FlagKey::Class(GroupClass::PSupersoluble(p)), || {
        Ok(all_subgroups(g)?
            .chief_factor_pairs()
            .iter()
            .all(|cf| cf.factor_order % p != 0 || cf.factor_order == p))
    })
}

/// p-nilpotent ⟺ G has a normal subgroup of order |G| / |G|_p
/// (a normal Hall p'-subgroup).
pub fn is_p_nilpotent(g: &Group, p: u64) -> Result<bool> {
    memo_flag(g, FlagKey::Class(GroupClass::PNilpotent(p)), || {
        let n = g.order() as u64;
        let target = (n / p_part(n, p)) as usize;
        Ok(all_subgroups(g)?.normals().any(|s| s.order() == target))
    })
}

/// π-closed ⟺ G has a normal Hall π-subgroup.
pub fn is_pi_closed(g: &Group, pi: &BTreeSet<u64>) -> Result<bool> {
    let key: Vec<u64> = pi.iter().copied().collect();
    memo_flag(g, FlagKey::Class(GroupClass::PiClosed(key)), || {
        let mut target = 1u64;
        for &p in pi {
            target *= p_part(g.order() as u64, p);
        }
        Ok(all_subgroups(g)?
            .normals()
            .any(|s| s.order() as u64 == target))
    })
}

pub fn is_in_class(g: &Group, class: &GroupClass) -> Result<bool> {
    match class {
        GroupClass::Abelian => Ok(is_abelian(g)),
        GroupClass::Cyclic => Ok(is_cyclic(g)),
        GroupClass::Nilpotent => is_nilpotent(g),
        GroupClass::Soluble => is_soluble(g),
        GroupClass::Supersoluble => is_supersoluble(g),
        GroupClass::PSupersoluble(p) => is_p_supersoluble(g, *p),
        GroupClass::PNilpotent(p) => is_p_nilpotent(g, *p),
        GroupClass::PiClosed(pi) => is_pi_closed(g, &pi.iter().copied().collect()),
    }
}

/// Quasinilpotent ⟺ for every chief factor L/K and every x in G, x
/// induces an inner automorphism on L/K: some y in L conjugates every
/// coset the same way x does.
pub fn is_quasinilpotent(g: &Group) -> Result<bool> {
    memo_flag(g, FlagKey::Quasinilpotent, || {
        for cf in all_subgroups(g)?.chief_factor_pairs() {
            let q = quotient(g, &cf.k)?;
            let qg = q.image().clone();
            let a = q.project_subgroup(&cf.l)?;
            for x in 0..qg.order() as u32 {
                let inner = a
                    .members()
                    .iter()
                    .any(|&y| a.members().iter().all(|&l| qg.conj(l, x) == qg.conj(l, y)));
                if !inner {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

fn memo_set<F>(g: &Group, key: SetKey, compute: F) -> Result<Subgroup>
where
    F: FnOnce() -> Result<Vec<u32>>,
{
    let cached = g.memo.sets.lock().unwrap().get(&key).cloned();
    let members = match cached {
        Some(r) => r?,
        None => {
            let r = compute();
            g.memo.sets.lock().unwrap().insert(key, r.clone());
            r?
        }
    };
    Ok(Subgroup::from_members_unchecked(g, members))
}

/// Largest normal subgroup in `candidates`; errors if the maximal-order
/// candidate fails to contain some other candidate.
fn unique_maximum(g: &Group, candidates: Vec<Subgroup>, what: &'static str) -> Result<Vec<u32>> {
    let best = candidates
        .iter()
        .max_by_key(|s| s.order())
        .cloned()
        .unwrap_or_else(|| Subgroup::trivial(g));
    for c in &candidates {
        if !c.is_subset_of(&best) {
            return Err(Error::RadicalNotUnique(what));
        }
    }
    Ok(best.members().to_vec())
}

/// Fitting subgroup F(G): the largest normal nilpotent subgroup.
pub fn fitting(g: &Group) -> Result<Subgroup> {
    memo_set(g, SetKey::Fitting, || {
        let lat = all_subgroups(g)?;
        let mut candidates = Vec::new();
        for n in lat.normals() {
            if is_nilpotent(&n.as_group())? {
                candidates.push(n);
            }
        }
        unique_maximum(g, candidates, "Fitting")
    })
}

/// Generalized Fitting subgroup F*(G): the largest normal quasinilpotent
/// subgroup (the quasinilpotent radical).
pub fn generalized_fitting(g: &Group) -> Result<Subgroup> {
    memo_set(g, SetKey::GeneralizedFitting, || {
        let lat = all_subgroups(g)?;
        let mut candidates = Vec::new();
        for n in lat.normals() {
            if is_quasinilpotent(&n.as_group())? {
                candidates.push(n);
            }
        }
        unique_maximum(g, candidates, "generalized Fitting")
    })
}

/// Order 8, non-abelian, exactly one involution — the Q8 fingerprint.
fn is_quaternion8(g: &Group) -> bool {
    g.order() == 8 && !is_abelian(g) && g.elements().iter().filter(|p| p.order() == 2).count() == 1
}

/// Quaternion-free: no section S/N of the 2-group P is isomorphic to Q8.
/// Odd-order p-groups and the trivial group are quaternion-free.
pub fn is_quaternion_free(p_sub: &Subgroup) -> Result<bool> {
    if p_sub.is_trivial() {
        return Ok(true);
    }
    let p = p_sub.p_group_prime().ok_or(Error::NotPGroup)?;
    if p != 2 {
        return Ok(true);
    }
    let pg = p_sub.as_group();
    memo_flag(&pg, FlagKey::QuaternionFree, || {
        let lat = all_subgroups(&pg)?;
        for s in lat.iter() {
            if s.order() % 8 != 0 {
                continue;
            }
            let sg = s.as_group();
            let slat = all_subgroups(&sg)?;
            for n in slat.normals() {
                if s.order() / n.order() != 8 {
                    continue;
                }
                let q = quotient(&sg, &n)?;
                if is_quaternion8(q.image()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })
}

/// C_G(L/K) = {g : [g, l] ∈ K for all l ∈ L}, the preimage of the
/// centralizer of the chief factor; always normal in G.
pub fn chief_centralizer(cf: &ChiefFactor) -> Subgroup {
    let g = cf.k.parent();
    let t = g.tables();
    let kmask = cf.k.member_mask();
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| {
            cf.l.members().iter().all(|&l| {
                let comm = t.mult(t.mult(t.inv(x), t.inv(l)), t.mult(x, l));
                kmask[comm as usize]
            })
        })
        .collect();
    Subgroup::from_members_unchecked(g, members)
}

/// F-centrality of a chief factor, specialized per formation.
///
/// For U the semidirect product (L/K) ⋊ (G/C) is supersoluble exactly
/// when the factor has prime order: the automizer then embeds in the
/// cyclic group of order p-1, while a non-prime or non-abelian minimal
/// normal subgroup blocks supersolubility. For S the product is soluble
/// exactly when the factor is abelian and the automizer is soluble.
pub fn f_central(cf: &ChiefFactor, formation: Formation) -> Result<bool> {
    match formation {
        Formation::Supersoluble => Ok(cf.prime == Some(cf.factor_order)),
        Formation::Soluble => {
            if !cf.is_abelian {
                return Ok(false);
            }
            let c = chief_centralizer(cf);
            let q = quotient(cf.k.parent(), &c)?;
            is_soluble(q.image())
        }
    }
}

/// Z_F(G): the largest normal subgroup all of whose G-chief factors are
/// F-central, computed definitionally over the covering pairs with a
/// uniqueness assertion.
pub fn hypercentre(g: &Group, formation: Formation) -> Result<Subgroup> {
    memo_set(g, SetKey::Hypercentre(formation), || {
        let lat = all_subgroups(g)?;
        let pairs = lat.chief_factor_pairs();
        let mut central = Vec::with_capacity(pairs.len());
        for cf in &pairs {
            central.push(f_central(cf, formation)?);
        }
        let mut candidates = Vec::new();
        for z in lat.normals() {
            let ok = pairs
                .iter()
                .zip(&central)
                .filter(|(cf, _)| cf.l.is_subset_of(&z))
                .all(|(_, &c)| c);
            if ok {
                candidates.push(z);
            }
        }
        unique_maximum(g, candidates, "hypercentre")
    })
}

/// Independent route to Z_U(G): repeatedly absorb a prime-order minimal
/// normal subgroup of G/Z. Cross-checked against the definitional
/// hypercentre on the whole catalog.
pub fn hypercentre_greedy_u(g: &Group) -> Result<Subgroup> {
    let mut z = Subgroup::trivial(g);
    loop {
        let q = quotient(g, &z)?;
        let qlat = all_subgroups(q.image())?;
        let next = qlat
            .minimal_normal_subgroups()
            .into_iter()
            .find(|m| crate::perm::prime_power_base(m.order() as u64) == Some(m.order() as u64));
        match next {
            Some(m) => {
                z = q.preimage_subgroup(&m)?;
            }
            None => return Ok(z),
        }
    }
}
