//! Permutations on finite point sets and the groups they generate.
//!
//! Groups materialize their full element list at construction; every
//! downstream predicate quantifies exhaustively over elements and
//! subgroups, so membership is plain lookup and all higher operations
//! stay index-based. Elements are kept in lexicographic order on image
//! arrays, which makes element-set equality, hashing and report output
//! deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::memo::{Memo, QuotientData};

/// A permutation of `{0, …, degree-1}` stored as its image array:
/// `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection on `{0, …, len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::BadPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` followed by `other` (right-action convention: the product
    /// `ab` moves a point first by `a`, then by `b`).
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord: u64 = 1;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Cycle decomposition, fixed points omitted; empty for the identity.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (i, p) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Resource limits attached to a group at construction time and inherited
/// by every group derived from it (subgroup materializations, quotients,
/// direct products). Exceeding a cap is a distinct error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of elements materialized by a generator closure.
    pub element_cap: usize,
    /// Maximum group order for exhaustive subgroup enumeration.
    pub lattice_cap: usize,
    /// Maximum group order for the complete-c-permutability double loop.
    pub ccp_cap: usize,
}

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;
pub const DEFAULT_LATTICE_CAP: usize = 400;
pub const DEFAULT_CCP_CAP: usize = 100;

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: DEFAULT_ELEMENT_CAP,
            lattice_cap: DEFAULT_LATTICE_CAP,
            ccp_cap: DEFAULT_CCP_CAP,
        }
    }
}

/// A finite permutation group with its element list fully materialized.
///
/// Values are immutable after construction; internal memo tables are
/// invisible to callers, so groups are safe to share across threads.
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    gen_indices: Vec<u32>,
    elements: Vec<Permutation>,
    caps: Caps,
    pub(crate) memo: Memo,
}

pub type Group = Arc<FiniteGroup>;

/// Index-based multiplication and inverse tables, built lazily.
pub(crate) struct Tables {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
}

impl Tables {
    #[inline]
    pub fn mult(&self, i: u32, j: u32) -> u32 {
        self.mult[i as usize * self.n + j as usize]
    }

    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(degree {}, order {})",
            self.degree,
            self.order()
        )
    }
}

impl FiniteGroup {
    /// Builds the group generated by `gens` via breadth-first closure.
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Group> {
        Self::from_generators_capped(degree, gens, Caps::default())
    }

    pub fn from_generators_capped(
        degree: usize,
        gens: Vec<Permutation>,
        caps: Caps,
    ) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        let id = Permutation::identity(degree);
        set.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = p.compose(g);
                if set.insert(q.clone()) {
                    if set.len() > caps.element_cap {
                        return Err(Error::CapExceeded {
                            what: "element closure",
                            cap: caps.element_cap,
                        });
                    }
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Permutation> = set.into_iter().collect();
        Ok(Self::from_sorted_elements(degree, gens, elements, caps))
    }

    /// Trusted constructor: `elements` must be sorted, deduplicated and
    /// closed under composition and inverse.
    pub(crate) fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        caps: Caps,
    ) -> Group {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!elements.is_empty() && elements[0].is_identity());
        let gen_indices = generators
            .iter()
            .map(|g| {
                elements
                    .binary_search(g)
                    .expect("generator not in element list") as u32
            })
            .collect();
        Arc::new(FiniteGroup {
            degree,
            generators,
            gen_indices,
            elements,
            caps,
            memo: Memo::default(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub(crate) fn generator_indices(&self) -> &[u32] {
        &self.gen_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: u32) -> &Permutation {
        &self.elements[index as usize]
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn position(&self, p: &Permutation) -> Option<u32> {
        self.elements.binary_search(p).ok().map(|i| i as u32)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.position(p).is_some()
    }

    /// The identity is lexicographically minimal among the elements, so it
    /// always sits at index 0.
    pub fn identity_index(&self) -> u32 {
        0
    }

    /// Same group as a value: either the same allocation or an equal
    /// element list on the same degree.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        std::ptr::eq(self, other)
            || (self.degree == other.degree && self.elements == other.elements)
    }

    pub(crate) fn tables(&self) -> &Tables {
        self.memo.tables.get_or_init(|| {
            let n = self.elements.len();
            let mut mult = vec![0u32; n * n];
            let mut inv = vec![0u32; n];
            for i in 0..n {
                let pi = &self.elements[i];
                for j in 0..n {
                    let prod = pi.compose(&self.elements[j]);
                    mult[i * n + j] = self
                        .elements
                        .binary_search(&prod)
                        .expect("group not closed under composition")
                        as u32;
                }
                inv[i] = self
                    .elements
                    .binary_search(&pi.inverse())
                    .expect("group not closed under inverse") as u32;
            }
            Tables { n, mult, inv }
        })
    }

    /// g^-1 * x * g by table lookups.
    #[inline]
    pub(crate) fn conj(&self, x: u32, g: u32) -> u32 {
        let t = self.tables();
        t.mult(t.mult(t.inv(g), x), g)
    }

    /// Closure of `seeds` (element indices) under right multiplication;
    /// in a finite group this is the generated subgroup. Result is sorted.
    pub(crate) fn close_indices(&self, seeds: &[u32]) -> Vec<u32> {
        let n = self.elements.len();
        let t = self.tables();
        let mut member = vec![false; n];
        member[0] = true;
        let mut frontier: Vec<u32> = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in seeds {
                let y = t.mult(x, s);
                if !member[y as usize] {
                    member[y as usize] = true;
                    frontier.push(y);
                }
            }
        }
        (0..n as u32).filter(|&i| member[i as usize]).collect()
    }
}

/// A subgroup of a parent group, stored as a sorted list of element
/// indices into the parent's canonical element list. This is the
/// universal carrier for every H, K, L, N, P, T, I, D in the predicates.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Arc<Vec<u32>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same_group(&other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subgroup(order {} of {:?})",
            self.members.len(),
            self.parent
        )
    }
}

/// The product set HK together with the permutability flag (HK = KH).
pub struct SubsetProduct {
    pub elements: Vec<u32>,
    pub permutes: bool,
}

impl Subgroup {
    pub fn trivial(parent: &Group) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: Arc::new(vec![parent.identity_index()]),
        }
    }

    pub fn full(parent: &Group) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: Arc::new((0..parent.order() as u32).collect()),
        }
    }

    /// Subgroup generated by `gens`, all of which must lie in `parent`.
    pub fn from_generators(parent: &Group, gens: &[Permutation]) -> Result<Self> {
        let mut seeds = Vec::with_capacity(gens.len());
        for g in gens {
            match parent.position(g) {
                Some(i) => seeds.push(i),
                None => {
                    return Err(Error::Parse(format!(
                        "generator {g} is not an element of the parent group"
                    )))
                }
            }
        }
        let members = parent.close_indices(&seeds);
        Ok(Subgroup {
            parent: parent.clone(),
            members: Arc::new(members),
        })
    }

    pub(crate) fn from_members_unchecked(parent: &Group, members: Vec<u32>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            parent: parent.clone(),
            members: Arc::new(members),
        }
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.members.iter().map(move |&i| self.parent.element(i))
    }

    pub fn contains_index(&self, i: u32) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        match self.parent.position(p) {
            Some(i) => self.contains_index(i),
            None => false,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        sorted_subset(&self.members, &other.members)
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent.same_group(&other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Normality is stable under generator conjugation, which suffices.
    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generator_indices().iter().all(|&gi| {
            self.members
                .iter()
                .all(|&m| self.contains_index(g.conj(m, gi)))
        })
    }

    /// The product set HK, plus whether HK = KH. The cardinality always
    /// satisfies |HK| * |H∩K| = |H| * |K| whether or not HK is a subgroup.
    pub fn product(&self, other: &Subgroup) -> Result<SubsetProduct> {
        self.check_parent(other)?;
        let hk = product_set(&self.parent, &self.members, &other.members);
        let kh = product_set(&self.parent, &other.members, &self.members);
        Ok(SubsetProduct {
            permutes: hk == kh,
            elements: hk,
        })
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let members = sorted_intersection(&self.members, &other.members);
        Ok(Subgroup::from_members_unchecked(&self.parent, members))
    }

    /// Join ⟨H ∪ K⟩.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut seeds: Vec<u32> = self.members.to_vec();
        seeds.extend_from_slice(&other.members);
        Ok(Subgroup::from_members_unchecked(
            &self.parent,
            self.parent.close_indices(&seeds),
        ))
    }

    pub fn conjugate_by(&self, g: &Permutation) -> Result<Subgroup> {
        match self.parent.position(g) {
            Some(gi) => Ok(self.conjugate_by_index(gi)),
            None => Err(Error::Parse(format!(
                "conjugating element {g} is not in the parent group"
            ))),
        }
    }

    pub(crate) fn conjugate_by_index(&self, gi: u32) -> Subgroup {
        let g = &self.parent;
        let mut members: Vec<u32> = self.members.iter().map(|&m| g.conj(m, gi)).collect();
        members.sort_unstable();
        Subgroup::from_members_unchecked(g, members)
    }

    /// N_G(H) = {g : H^g = H}.
    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let n = g.order() as u32;
        let inside = self.member_mask();
        let members: Vec<u32> = (0..n)
            .filter(|&gi| self.members.iter().all(|&m| inside[g.conj(m, gi) as usize]))
            .collect();
        Subgroup::from_members_unchecked(g, members)
    }

    /// C_G(H) = {g : gh = hg for all h in H}.
    pub fn centralizer(&self) -> Subgroup {
        centralizer_of(&self.parent, &self.members)
    }

    /// Core H_G: the largest normal subgroup of G contained in H, obtained
    /// by intersecting with generator conjugates until stable.
    pub fn core(&self) -> Subgroup {
        let g = &self.parent;
        let mut current: Vec<u32> = self.members.to_vec();
        loop {
            let mut next = current.clone();
            for &gi in g.generator_indices() {
                let mut conj: Vec<u32> = current.iter().map(|&m| g.conj(m, gi)).collect();
                conj.sort_unstable();
                next = sorted_intersection(&next, &conj);
            }
            if next == current {
                return Subgroup::from_members_unchecked(g, current);
            }
            current = next;
        }
    }

    /// Normal closure H^G: the smallest normal subgroup of G containing H.
    pub fn normal_closure(&self) -> Subgroup {
        let g = &self.parent;
        let mut seeds: Vec<u32> = self.members.to_vec();
        loop {
            let closed = g.close_indices(&seeds);
            let mask = mask_of(g.order(), &closed);
            let mut grew = false;
            let mut next = closed.clone();
            for &gi in g.generator_indices() {
                for &m in &closed {
                    let c = g.conj(m, gi);
                    if !mask[c as usize] {
                        next.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return Subgroup::from_members_unchecked(g, closed);
            }
            next.sort_unstable();
            next.dedup();
            seeds = next;
        }
    }

    /// Materializes this subgroup as a standalone group (memoized per
    /// member set), so the whole machinery applies to it recursively.
    pub fn as_group(&self) -> Group {
        if self.is_full() {
            return self.parent.clone();
        }
        let key: Vec<u32> = self.members.to_vec();
        if let Some(g) = self.parent.memo.groups.lock().unwrap().get(&key) {
            return g.clone();
        }
        let elements: Vec<Permutation> = self.elements().cloned().collect();
        let generators = self.generating_set();
        let built = FiniteGroup::from_sorted_elements(
            self.parent.degree(),
            generators,
            elements,
            self.parent.caps(),
        );
        let mut map = self.parent.memo.groups.lock().unwrap();
        map.entry(key).or_insert_with(|| built.clone());
        map.get(self.members.as_ref()).unwrap().clone()
    }

    /// A small deterministic generating set: greedily absorb the first
    /// member outside the span until the subgroup is covered.
    pub fn generating_set(&self) -> Vec<Permutation> {
        let g = &self.parent;
        let mut gens: Vec<u32> = Vec::new();
        let mut span_len = 1usize;
        let mut span_mask = mask_of(g.order(), &[g.identity_index()]);
        for &m in self.members.iter() {
            if span_mask[m as usize] {
                continue;
            }
            gens.push(m);
            let span = g.close_indices(&gens);
            span_len = span.len();
            span_mask = mask_of(g.order(), &span);
            if span_len == self.members.len() {
                break;
            }
        }
        debug_assert_eq!(span_len, self.members.len());
        gens.iter().map(|&i| g.element(i).clone()).collect()
    }

    /// Some(p) when the order is a nontrivial power of the prime p.
    pub fn p_group_prime(&self) -> Option<u64> {
        prime_power_base(self.members.len() as u64)
    }

    pub(crate) fn member_mask(&self) -> Vec<bool> {
        mask_of(self.parent.order(), &self.members)
    }

    /// Lifts a subgroup of a materialized subgroup-group back into `parent`.
    pub fn lift_to(child_sub: &Subgroup, parent: &Group) -> Result<Subgroup> {
        let mut members = Vec::with_capacity(child_sub.order());
        for p in child_sub.elements() {
            match parent.position(p) {
                Some(i) => members.push(i),
                None => return Err(Error::ParentMismatch),
            }
        }
        members.sort_unstable();
        Ok(Subgroup::from_members_unchecked(parent, members))
    }
}

/// Some(p) when n = p^k with k >= 1.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return if n == 1 { Some(p) } else { None };
        }
        p += 1;
    }
    Some(n)
}

pub(crate) fn mask_of(n: usize, members: &[u32]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &m in members {
        mask[m as usize] = true;
    }
    mask
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn sorted_subset(a: &[u32], b: &[u32]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// The product set {ab : a in A, b in B}, sorted.
pub(crate) fn product_set(g: &Group, a: &[u32], b: &[u32]) -> Vec<u32> {
    let t = g.tables();
    let mut mask = vec![false; g.order()];
    for &x in a {
        for &y in b {
            mask[t.mult(x, y) as usize] = true;
        }
    }
    (0..g.order() as u32)
        .filter(|&i| mask[i as usize])
        .collect()
}

pub fn centralizer_of(g: &Group, set: &[u32]) -> Subgroup {
    let t = g.tables();
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| set.iter().all(|&s| t.mult(x, s) == t.mult(s, x)))
        .collect();
    Subgroup::from_members_unchecked(g, members)
}

/// The quotient map G -> G/N realized as the permutation action of G on
/// the right cosets of N; the image is a faithful permutation group of
/// degree |G|/|N|.
#[derive(Clone)]
pub struct QuotientMap {
    source: Group,
    kernel: Subgroup,
    image: Group,
    proj: Arc<Vec<u32>>,
}

pub fn quotient(g: &Group, kernel: &Subgroup) -> Result<QuotientMap> {
    if !kernel.parent().same_group(g) {
        return Err(Error::ParentMismatch);
    }
    if !kernel.is_normal() {
        return Err(Error::NotNormal);
    }
    let key: Vec<u32> = kernel.members().to_vec();
    let cached = g.memo.quotients.lock().unwrap().get(&key).cloned();
    let data = match cached {
        Some(d) => d,
        None => {
            let built = build_quotient(g, kernel.members());
            let mut map = g.memo.quotients.lock().unwrap();
            map.entry(key.clone()).or_insert_with(|| built.clone());
            map.get(&key).unwrap().clone()
        }
    };
    Ok(QuotientMap {
        source: g.clone(),
        kernel: kernel.clone(),
        image: data.image,
        proj: data.proj,
    })
}

fn build_quotient(g: &Group, kernel: &[u32]) -> QuotientData {
    let n = g.order();
    let t = g.tables();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps: Vec<u32> = Vec::new();
    for i in 0..n as u32 {
        if coset_of[i as usize] != u32::MAX {
            continue;
        }
        let cid = reps.len() as u32;
        reps.push(i);
        for &m in kernel {
            coset_of[t.mult(m, i) as usize] = cid;
        }
    }
    let q = reps.len();
    // The permutation each x induces on cosets by right multiplication.
    let mut image_set: BTreeSet<Permutation> = BTreeSet::new();
    let mut induced: Vec<Permutation> = Vec::with_capacity(n);
    for x in 0..n as u32 {
        let images: Vec<usize> = reps
            .iter()
            .map(|&r| coset_of[t.mult(r, x) as usize] as usize)
            .collect();
        let p = Permutation { images };
        image_set.insert(p.clone());
        induced.push(p);
    }
    debug_assert_eq!(image_set.len(), q);
    let elements: Vec<Permutation> = image_set.into_iter().collect();
    let mut generators: Vec<Permutation> = Vec::new();
    for &gi in g.generator_indices() {
        let p = &induced[gi as usize];
        if !p.is_identity() && !generators.contains(p) {
            generators.push(p.clone());
        }
    }
    let image = FiniteGroup::from_sorted_elements(q, generators, elements, g.caps());
    let proj: Vec<u32> = induced
        .iter()
        .map(|p| image.position(p).expect("induced permutation missing"))
        .collect();
    QuotientData {
        image,
        proj: Arc::new(proj),
    }
}

impl QuotientMap {
    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn image(&self) -> &Group {
        &self.image
    }

    pub fn project_index(&self, i: u32) -> u32 {
        self.proj[i as usize]
    }

    pub fn project(&self, p: &Permutation) -> Result<Permutation> {
        match self.source.position(p) {
            Some(i) => Ok(self.image.element(self.proj[i as usize]).clone()),
            None => Err(Error::ParentMismatch),
        }
    }

    pub fn project_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.parent().same_group(&self.source) {
            return Err(Error::ParentMismatch);
        }
        let mut members: Vec<u32> = h.members().iter().map(|&m| self.proj[m as usize]).collect();
        members.sort_unstable();
        members.dedup();
        Ok(Subgroup::from_members_unchecked(&self.image, members))
    }

    pub fn preimage_subgroup(&self, h: &Subgroup) -> Result<Subgroup> {
        if !h.parent().same_group(&self.image) {
            return Err(Error::ParentMismatch);
        }
        let mask = h.member_mask();
        let members: Vec<u32> = (0..self.source.order() as u32)
            .filter(|&i| mask[self.proj[i as usize] as usize])
            .collect();
        Ok(Subgroup::from_members_unchecked(&self.source, members))
    }
}

/// Direct product on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let caps = a.caps();
    let order = a.order() * b.order();
    if order > caps.element_cap {
        return Err(Error::CapExceeded {
            what: "direct product order",
            cap: caps.element_cap,
        });
    }
    let degree = a.degree() + b.degree();
    let paste = |pa: &Permutation, pb: &Permutation| -> Permutation {
        let mut images = Vec::with_capacity(degree);
        images.extend_from_slice(pa.images());
        images.extend(pb.images().iter().map(|&x| x + a.degree()));
        Permutation { images }
    };
    // Nested iteration over sorted factors yields sorted concatenations.
    let mut elements = Vec::with_capacity(order);
    for pa in a.elements() {
        for pb in b.elements() {
            elements.push(paste(pa, pb));
        }
    }
    let ida = Permutation::identity(a.degree());
    let idb = Permutation::identity(b.degree());
    let mut generators = Vec::new();
    for ga in a.generators() {
        generators.push(paste(ga, &idb));
    }
    for gb in b.generators() {
        generators.push(paste(&ida, gb));
    }
    Ok(FiniteGroup::from_sorted_elements(
        degree, generators, elements, caps,
    ))
}
