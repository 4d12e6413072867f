//! Per-group memo tables. Everything here is invisible to callers: the
//! public operations stay pure functions of immutable inputs, memoization
//! only avoids recomputing identical exhaustive searches.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;
use crate::lattice::LatticeData;
use crate::perm::{Group, Tables};
use crate::props::PropertyId;
use crate::structure::{Formation, GroupClass};

#[derive(Clone)]
pub(crate) struct QuotientData {
    pub image: Group,
    pub proj: Arc<Vec<u32>>,
}

/// Boolean facts about the group itself or about one of its subgroups
/// (keyed by the subgroup's member list).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum FlagKey {
    Class(GroupClass),
    Quasinilpotent,
    QuaternionFree,
    Prop(PropertyId, Vec<u32>),
}

/// Distinguished subgroups computed by filtering (radicals, hypercentres,
/// joins); values keep the Result so a failed uniqueness assertion is
/// remembered too.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum SetKey {
    Fitting,
    GeneralizedFitting,
    Hypercentre(Formation),
    SqnJoin(Vec<u32>),
    SbarJoin(Vec<u32>),
}

/// Outcome of the Π-property check for one subgroup: the verdict over all
/// chief factor pairs, the verdict restricted to one chief series (the
/// two readings of "every chief factor"), and the first violating factor.
#[derive(Clone, Debug)]
pub(crate) struct PiOutcome {
    pub holds: bool,
    pub series_holds: bool,
    pub violation: Option<PiViolation>,
}

#[derive(Clone, Debug)]
pub(crate) struct PiViolation {
    pub k: Vec<u32>,
    pub l: Vec<u32>,
    pub index: u64,
    pub primes: Vec<u64>,
}

/// Outcome of the Π-supplemented search: the witness pair when it exists.
#[derive(Clone, Debug)]
pub(crate) struct PiSupOutcome {
    pub holds: bool,
    pub t: Option<Vec<u32>>,
    pub i: Option<Vec<u32>>,
}

#[derive(Default)]
pub(crate) struct Memo {
    pub tables: OnceLock<Tables>,
    pub lattice: OnceLock<Result<Arc<LatticeData>, Error>>,
    pub quotients: Mutex<HashMap<Vec<u32>, QuotientData>>,
    pub groups: Mutex<HashMap<Vec<u32>, Group>>,
    pub flags: Mutex<HashMap<FlagKey, bool>>,
    pub sets: Mutex<HashMap<SetKey, Result<Vec<u32>, Error>>>,
    pub pi: Mutex<HashMap<Vec<u32>, PiOutcome>>,
    pub pisup: Mutex<HashMap<Vec<u32>, PiSupOutcome>>,
}
