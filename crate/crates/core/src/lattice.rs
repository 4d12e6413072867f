//! Exhaustive subgroup enumeration and the normal-subgroup lattice.
//!
//! Chief factors are read off as covering pairs of the normal lattice,
//! which is the series-independent meaning of "every chief factor":
//! every covering pair (K, L) has L/K minimal normal in G/K, and every
//! such factor appears in some chief series.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{mask_of, Group, Subgroup};
use crate::structure;

pub(crate) struct LatticeData {
    /// Member lists in canonical order: ascending (order, lexicographic).
    pub subgroups: Vec<Arc<Vec<u32>>>,
    pub index_of: HashMap<Vec<u32>, usize>,
    pub normal: Vec<bool>,
    pub normal_indices: Vec<usize>,
    /// Conjugacy class id per subgroup, classes numbered in first-seen order.
    pub class_of: Vec<usize>,
}

/// The complete subgroup lattice of a group, cheap to clone.
#[derive(Clone)]
pub struct SubgroupLattice {
    group: Group,
    data: Arc<LatticeData>,
}

/// Enumerates all subgroups: seed with cyclic subgroups, then close the
/// set under joins ⟨S ∪ {g}⟩ until a fixed point. Complete because each
/// subgroup is reachable one generator at a time from a cyclic seed.
pub fn all_subgroups(g: &Group) -> Result<SubgroupLattice> {
    let cached = g
        .memo
        .lattice
        .get_or_init(|| build_lattice(g).map(Arc::new))
        .clone()?;
    Ok(SubgroupLattice {
        group: g.clone(),
        data: cached,
    })
}

fn build_lattice(g: &Group) -> Result<LatticeData> {
    let n = g.order();
    if n > g.caps().lattice_cap {
        return Err(Error::CapExceeded {
            what: "lattice order",
            cap: g.caps().lattice_cap,
        });
    }
    let mut index_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new(); // (members, build generators)

    let push = |members: Vec<u32>,
                gens: Vec<u32>,
                index_of: &mut HashMap<Vec<u32>, usize>,
                found: &mut Vec<(Vec<u32>, Vec<u32>)>| {
        if !index_of.contains_key(&members) {
            index_of.insert(members.clone(), found.len());
            found.push((members, gens));
        }
    };

    push(vec![g.identity_index()], vec![], &mut index_of, &mut found);
    for i in 1..n as u32 {
        let members = g.close_indices(&[i]);
        push(members, vec![i], &mut index_of, &mut found);
    }
    let mut next = 0usize;
    while next < found.len() {
        let (members, gens) = found[next].clone();
        next += 1;
        if members.len() == n {
            continue;
        }
        let mask = mask_of(n, &members);
        for i in 1..n as u32 {
            if mask[i as usize] {
                continue;
            }
            let mut joined_gens = gens.clone();
            joined_gens.push(i);
            let joined = g.close_indices(&joined_gens);
            push(joined, joined_gens, &mut index_of, &mut found);
        }
    }

    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by(|&a, &b| (found[a].0.len(), &found[a].0).cmp(&(found[b].0.len(), &found[b].0)));
    let subgroups: Vec<Arc<Vec<u32>>> = order
        .iter()
        .map(|&i| Arc::new(found[i].0.clone()))
        .collect();
    let mut index_of: HashMap<Vec<u32>, usize> = HashMap::new();
    for (i, m) in subgroups.iter().enumerate() {
        index_of.insert(m.as_ref().clone(), i);
    }

    let conj_members = |members: &[u32], gi: u32| -> Vec<u32> {
        let mut out: Vec<u32> = members.iter().map(|&m| g.conj(m, gi)).collect();
        out.sort_unstable();
        out
    };

    let normal: Vec<bool> = subgroups
        .iter()
        .map(|m| {
            g.generator_indices()
                .iter()
                .all(|&gi| conj_members(m, gi) == **m)
        })
        .collect();
    let normal_indices: Vec<usize> = (0..subgroups.len()).filter(|&i| normal[i]).collect();

    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut class_count = 0usize;
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = class_count;
        class_count += 1;
        let mut stack = vec![start];
        class_of[start] = cid;
        while let Some(i) = stack.pop() {
            for &gi in g.generator_indices() {
                let image = conj_members(&subgroups[i], gi);
                let j = *index_of.get(&image).expect("conjugate subgroup missing");
                if class_of[j] == usize::MAX {
                    class_of[j] = cid;
                    stack.push(j);
                }
            }
        }
    }

    Ok(LatticeData {
        subgroups,
        index_of,
        normal,
        normal_indices,
        class_of,
    })
}

/// A covering pair (K, L) of the normal lattice: L/K is a chief factor
/// of G, i.e. minimal normal in G/K.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub k: Subgroup,
    pub l: Subgroup,
    pub factor_order: u64,
    pub is_abelian: bool,
    /// The prime when the factor order is a prime power.
    pub prime: Option<u64>,
}

impl SubgroupLattice {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.data.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subgroup(&self, i: usize) -> Subgroup {
        Subgroup::from_members_unchecked(&self.group, self.data.subgroups[i].as_ref().clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = Subgroup> + '_ {
        (0..self.len()).map(move |i| self.subgroup(i))
    }

    pub fn is_normal_index(&self, i: usize) -> bool {
        self.data.normal[i]
    }

    pub fn normals(&self) -> impl Iterator<Item = Subgroup> + '_ {
        self.data
            .normal_indices
            .iter()
            .map(move |&i| self.subgroup(i))
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.data.class_of[i]
    }

    pub fn position_of_members(&self, members: &[u32]) -> Option<usize> {
        self.data.index_of.get(members).copied()
    }

    pub fn position_of(&self, sub: &Subgroup) -> Option<usize> {
        self.position_of_members(sub.members())
    }

    /// Indices of all subgroups contained in `sub`, canonical order.
    pub fn indices_inside(&self, sub: &Subgroup) -> Vec<usize> {
        let mask = mask_of(self.group.order(), sub.members());
        (0..self.len())
            .filter(|&i| {
                self.data.subgroups[i].len() <= sub.order()
                    && self.data.subgroups[i].iter().all(|&m| mask[m as usize])
            })
            .collect()
    }

    fn normal_pairs_subset(&self, a: usize, b: usize) -> bool {
        let (small, big) = (&self.data.subgroups[a], &self.data.subgroups[b]);
        small.len() < big.len() && {
            let mask = mask_of(self.group.order(), big);
            small.iter().all(|&m| mask[m as usize])
        }
    }

    /// All covering pairs of the normal lattice — the literal quantifier
    /// domain for "every chief factor of G".
    pub fn chief_factor_pairs(&self) -> Vec<ChiefFactor> {
        let normals = &self.data.normal_indices;
        let mut pairs = Vec::new();
        for &ki in normals {
            for &li in normals {
                if !self.normal_pairs_subset(ki, li) {
                    continue;
                }
                let covering = !normals.iter().any(|&mi| {
                    mi != ki
                        && mi != li
                        && self.normal_pairs_subset(ki, mi)
                        && self.normal_pairs_subset(mi, li)
                });
                if covering {
                    pairs.push(self.make_chief_factor(ki, li));
                }
            }
        }
        pairs
    }

    fn make_chief_factor(&self, ki: usize, li: usize) -> ChiefFactor {
        let g = &self.group;
        let k = self.subgroup(ki);
        let l = self.subgroup(li);
        let factor_order = (l.order() / k.order()) as u64;
        // L/K abelian iff every commutator of L lands in K.
        let kmask = k.member_mask();
        let t = g.tables();
        let mut is_abelian = true;
        'outer: for &a in l.members() {
            for &b in l.members() {
                let comm = t.mult(t.mult(t.inv(a), t.inv(b)), t.mult(a, b));
                if !kmask[comm as usize] {
                    is_abelian = false;
                    break 'outer;
                }
            }
        }
        let prime = crate::perm::prime_power_base(factor_order);
        ChiefFactor {
            k,
            l,
            factor_order,
            is_abelian,
            prime,
        }
    }

    /// One maximal chain 1 = N_0 < … < N_k = G of the normal lattice,
    /// chosen deterministically (smallest cover first).
    pub fn chief_series(&self) -> Vec<Subgroup> {
        let normals = &self.data.normal_indices;
        let mut chain = vec![0usize]; // trivial subgroup is always index 0
        let mut current = 0usize;
        while self.data.subgroups[current].len() < self.group.order() {
            let next = normals
                .iter()
                .copied()
                .filter(|&mi| self.normal_pairs_subset(current, mi))
                .find(|&mi| {
                    !normals.iter().any(|&x| {
                        x != current
                            && x != mi
                            && self.normal_pairs_subset(current, x)
                            && self.normal_pairs_subset(x, mi)
                    })
                })
                .expect("normal lattice chain must reach the full group");
            chain.push(next);
            current = next;
        }
        chain.into_iter().map(|i| self.subgroup(i)).collect()
    }

    /// Atoms of the normal lattice.
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        self.chief_factor_pairs()
            .into_iter()
            .filter(|cf| cf.k.is_trivial())
            .map(|cf| cf.l)
            .collect()
    }

    /// Co-atoms of the full subgroup lattice.
    pub fn maximal_subgroups(&self) -> Vec<Subgroup> {
        let n = self.len();
        let full = n - 1; // canonical order puts G last
        debug_assert_eq!(self.data.subgroups[full].len(), self.group.order());
        (0..n)
            .filter(|&i| {
                i != full
                    && !(0..n).any(|j| {
                        j != i
                            && j != full
                            && self.subset_indices(i, j)
                            && self.data.subgroups[j].len() < self.group.order()
                    })
            })
            .map(|i| self.subgroup(i))
            .collect()
    }

    fn subset_indices(&self, a: usize, b: usize) -> bool {
        let (sa, sb) = (&self.data.subgroups[a], &self.data.subgroups[b]);
        sa.len() < sb.len() && {
            let mask = mask_of(self.group.order(), sb);
            sa.iter().all(|&m| mask[m as usize])
        }
    }

    /// All subgroups of order |G|_p (the trivial subgroup when p ∤ |G|).
    pub fn sylow_subgroups(&self, p: u64) -> Vec<Subgroup> {
        let mut part = 1usize;
        let mut n = self.group.order();
        while n.is_multiple_of(p as usize) {
            part *= p as usize;
            n /= p as usize;
        }
        self.subgroups_of_order(part)
    }

    pub fn subgroups_of_order(&self, order: usize) -> Vec<Subgroup> {
        (0..self.len())
            .filter(|&i| self.data.subgroups[i].len() == order)
            .map(|i| self.subgroup(i))
            .collect()
    }

    /// All subgroups whose order is the full π-part of |G|.
    pub fn hall_subgroups(&self, pi: &BTreeSet<u64>) -> Vec<Subgroup> {
        let mut part = 1usize;
        for &p in pi {
            let mut n = self.group.order();
            while n.is_multiple_of(p as usize) {
                part *= p as usize;
                n /= p as usize;
            }
        }
        self.subgroups_of_order(part)
    }

    /// Hall π-subgroups exist and form a single conjugacy class.
    pub fn is_c_pi(&self, pi: &BTreeSet<u64>) -> bool {
        let halls = self.hall_subgroups(pi);
        if halls.is_empty() {
            return false;
        }
        let classes: BTreeSet<usize> = halls
            .iter()
            .map(|h| self.data.class_of[self.position_of(h).unwrap()])
            .collect();
        classes.len() == 1
    }

    /// Frattini subgroup: intersection of all maximal subgroups, the whole
    /// group when there are none.
    pub fn frattini(&self) -> Subgroup {
        let maximals = self.maximal_subgroups();
        if maximals.is_empty() {
            return Subgroup::full(&self.group);
        }
        let mut members: Vec<u32> = maximals[0].members().to_vec();
        for m in &maximals[1..] {
            let mask = m.member_mask();
            members.retain(|&x| mask[x as usize]);
        }
        Subgroup::from_members_unchecked(&self.group, members)
    }
}

/// Ω_k(P) for a p-group P: the subgroup generated by elements x with
/// x^(p^k) = 1.
pub fn omega(p_sub: &Subgroup, k: u32) -> Result<Subgroup> {
    if p_sub.is_trivial() {
        return Ok(p_sub.clone());
    }
    let p = p_sub.p_group_prime().ok_or(Error::NotPGroup)?;
    let bound = p.pow(k);
    let seeds: Vec<u32> = p_sub
        .members()
        .iter()
        .copied()
        .filter(|&m| bound % p_sub.parent().element(m).order() == 0)
        .collect();
    let members = p_sub.parent().close_indices(&seeds);
    Ok(Subgroup::from_members_unchecked(p_sub.parent(), members))
}

/// The Ω(P) convention: Ω_1 for odd p or quaternion-free 2-groups,
/// otherwise Ω_2.
pub fn omega_paper(p_sub: &Subgroup) -> Result<Subgroup> {
    if p_sub.is_trivial() {
        return Ok(p_sub.clone());
    }
    let p = p_sub.p_group_prime().ok_or(Error::NotPGroup)?;
    if p != 2 || structure::is_quaternion_free(p_sub)? {
        omega(p_sub, 1)
    } else {
        omega(p_sub, 2)
    }
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

    fn c6() -> Group {
        group(6, &[&[1, 2, 3, 4, 5, 0]])
    }

    #[test]
    fn counts_for_small_groups() {
        assert_eq!(all_subgroups(&s3()).unwrap().len(), 6);
        assert_eq!(all_subgroups(&s4()).unwrap().len(), 30);
        let trivial = group(3, &[]);
        assert_eq!(all_subgroups(&trivial).unwrap().len(), 1);
        // 1 + 15 C2 + 10 C3 + 5 V4 + 6 C5 + 10 S3 + 6 D10 + 5 A4 + A5.
        let a5 = group(5, &[&[1, 2, 0, 3, 4], &[1, 2, 3, 4, 0]]);
        assert_eq!(all_subgroups(&a5).unwrap().len(), 59);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let caps = crate::perm::Caps {
            lattice_cap: 10,
            ..Default::default()
        };
        let g = FiniteGroup::from_generators_capped(
            4,
            vec![perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])],
            caps,
        )
        .unwrap();
        assert!(matches!(all_subgroups(&g), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn lagrange_for_every_enumerated_subgroup() {
        for g in [s3(), s4(), c6()] {
            let lat = all_subgroups(&g).unwrap();
            for sub in lat.iter() {
                assert_eq!(g.order() % sub.order(), 0);
            }
        }
    }

    #[test]
    fn chief_pairs_of_s4_form_a_chain() {
        let lat = all_subgroups(&s4()).unwrap();
        let pairs = lat.chief_factor_pairs();
        assert_eq!(pairs.len(), 3);
        let mut orders: Vec<(usize, usize, u64)> = pairs
            .iter()
            .map(|cf| (cf.k.order(), cf.l.order(), cf.factor_order))
            .collect();
        orders.sort();
        assert_eq!(orders, vec![(1, 4, 4), (4, 12, 3), (12, 24, 2)]);
        assert!(pairs.iter().all(|cf| cf.is_abelian));
    }

    #[test]
    fn chief_pairs_of_c6() {
        let lat = all_subgroups(&c6()).unwrap();
        let pairs = lat.chief_factor_pairs();
        assert_eq!(pairs.len(), 4);
        let trivial_pairs: Vec<u64> = pairs
            .iter()
            .filter(|cf| cf.k.is_trivial())
            .map(|cf| cf.factor_order)
            .collect();
        assert_eq!(trivial_pairs.len(), 2);
        assert!(trivial_pairs.contains(&2) && trivial_pairs.contains(&3));
    }

    #[test]
    fn trivial_group_has_no_chief_pairs() {
        let lat = all_subgroups(&group(2, &[])).unwrap();
        assert!(lat.chief_factor_pairs().is_empty());
        assert_eq!(lat.chief_series().len(), 1);
    }

    #[test]
    fn chief_series_pairs_appear_in_chief_factor_pairs() {
        for g in [s3(), s4(), c6()] {
            let lat = all_subgroups(&g).unwrap();
            let series = lat.chief_series();
            let pairs = lat.chief_factor_pairs();
            for w in series.windows(2) {
                assert!(pairs.iter().any(|cf| cf.k == w[0] && cf.l == w[1]));
            }
        }
    }

    #[test]
    fn minimal_normals_and_maximals() {
        let lat4 = all_subgroups(&s4()).unwrap();
        let mins = lat4.minimal_normal_subgroups();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].order(), 4);

        let lat6 = all_subgroups(&c6()).unwrap();
        let mut min_orders: Vec<usize> = lat6
            .minimal_normal_subgroups()
            .iter()
            .map(|s| s.order())
            .collect();
        min_orders.sort();
        assert_eq!(min_orders, vec![2, 3]);

        let c4 = group(4, &[&[1, 2, 3, 0]]);
        let lat = all_subgroups(&c4).unwrap();
        let maxes = lat.maximal_subgroups();
        assert_eq!(maxes.len(), 1);
        assert_eq!(maxes[0].order(), 2);
    }

    #[test]
    fn sylow_counts_in_s4() {
        let lat = all_subgroups(&s4()).unwrap();
        let syl2 = lat.sylow_subgroups(2);
        assert_eq!(syl2.len(), 3);
        assert!(syl2.iter().all(|s| s.order() == 8));
        let syl3 = lat.sylow_subgroups(3);
        assert_eq!(syl3.len(), 4);
        assert!(syl3.iter().all(|s| s.order() == 3));
    }

    #[test]
    fn hall_subgroups_of_a5() {
        let a5 = group(5, &[&[1, 2, 0, 3, 4], &[1, 2, 3, 4, 0]]);
        assert_eq!(a5.order(), 60);
        let lat = all_subgroups(&a5).unwrap();
        let pi: BTreeSet<u64> = [2u64, 3].into_iter().collect();
        let halls = lat.hall_subgroups(&pi);
        assert_eq!(halls.len(), 5);
        assert!(halls.iter().all(|h| h.order() == 12));
        assert!(lat.is_c_pi(&pi));
        let pi25: BTreeSet<u64> = [2u64, 5].into_iter().collect();
        assert!(lat.hall_subgroups(&pi25).is_empty());
        assert!(!lat.is_c_pi(&pi25));
    }

    #[test]
    fn frattini_of_c4_and_v4() {
        let c4 = group(4, &[&[1, 2, 3, 0]]);
        assert_eq!(all_subgroups(&c4).unwrap().frattini().order(), 2);
        let v4 = group(4, &[&[1, 0, 2, 3], &[0, 1, 3, 2]]);
        assert!(all_subgroups(&v4).unwrap().frattini().is_trivial());
    }

    #[test]
    fn omega_of_quaternion_and_dihedral() {
        // Q8 in its regular representation.
        let q8 = group(8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]]);
        assert_eq!(q8.order(), 8);
        let full = Subgroup::full(&q8);
        let om = omega(&full, 1).unwrap();
        assert_eq!(om.order(), 2);
        // D8: reflections generate the whole group.
        let d8 = group(4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]]);
        let om8 = omega(&Subgroup::full(&d8), 1).unwrap();
        assert_eq!(om8.order(), 8);
    }

    #[test]
    fn omega_paper_convention_switches_on_quaternion_sections() {
        // Q8 is not quaternion-free, so Ω(P) means Ω_2: all of Q8.
        let q8 = group(8, &[&[2, 3, 1, 0, 6, 7, 5, 4], &[4, 5, 7, 6, 1, 0, 2, 3]]);
        assert_eq!(omega_paper(&Subgroup::full(&q8)).unwrap().order(), 8);
        // D8 is quaternion-free: Ω_1 already generates everything.
        let d8 = group(4, &[&[1, 2, 3, 0], &[3, 2, 1, 0]]);
        assert_eq!(omega_paper(&Subgroup::full(&d8)).unwrap().order(), 8);
        // C4 is quaternion-free: Ω_1 is the unique C2.
        let c4 = group(4, &[&[1, 2, 3, 0]]);
        assert_eq!(omega_paper(&Subgroup::full(&c4)).unwrap().order(), 2);
        // Odd p-groups always take Ω_1.
        let c9 = group(9, &[&[1, 2, 3, 4, 5, 6, 7, 8, 0]]);
        assert_eq!(omega_paper(&Subgroup::full(&c9)).unwrap().order(), 3);
    }

    #[test]
    fn omega_rejects_non_p_groups() {
        let g = s3();
        assert!(matches!(
            omega(&Subgroup::full(&g), 1),
            Err(Error::NotPGroup)
        ));
    }

    #[test]
    fn conjugacy_classes_partition_the_lattice() {
        let lat = all_subgroups(&s4()).unwrap();
        // Normal subgroups are singleton classes; Sylow 2-subgroups share one.
        let syl2 = lat.sylow_subgroups(2);
        let cls: BTreeSet<usize> = syl2
            .iter()
            .map(|s| lat.class_of(lat.position_of(s).unwrap()))
            .collect();
        assert_eq!(cls.len(), 1);
        for nrm in lat.normals() {
            let i = lat.position_of(&nrm).unwrap();
            let count = (0..lat.len())
                .filter(|&j| lat.class_of(j) == lat.class_of(i))
                .count();
            assert_eq!(count, 1);
        }
    }
}
