//! Set algebra over specified, programmed, and tested behaviors.
//!
//! A model is an explicit universe of behavior ids plus three subsets: `S`
//! (specified), `P` (programmed), and `T` (tested), optionally backed by a
//! map from test-case names to the behaviors they cover. The three subsets
//! carve the universe into eight disjoint regions:
//!
//! | region | membership            |
//! |--------|-----------------------|
//! | 1      | S ∩ P ∩ T             |
//! | 2      | (S ∩ P) \ T           |
//! | 3      | (P ∩ T) \ S           |
//! | 4      | (S ∩ T) \ P           |
//! | 5      | S \ (P ∪ T)           |
//! | 6      | P \ (S ∪ T)           |
//! | 7      | T \ (S ∪ P)           |
//! | 8      | outside S ∪ P ∪ T     |
//!
//! Faults of omission are `S \ P` (specified, never programmed); faults of
//! commission are `P \ S`; their complement `S ∩ P` is the correct portion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

mod function;
mod json;
mod methods;

pub use function::FunctionSpec;
pub use json::{spt_from_json, SptJsonError};
pub use methods::{
    compare_methods, validate_method, MethodComparison, MethodKind, MethodProfile,
    MethodValidation,
};

/// Behavior ids are opaque nonempty tokens; sets of them are kept ordered so
/// reports come out sorted.
pub type BehaviorSet = BTreeSet<String>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BehaviorError {
    #[error("{set} contains ids outside the universe: {}", ids.join(", "))]
    UniverseViolation { set: String, ids: Vec<String> },
    #[error("test map covers different behaviors than T (missing: [{}], extra: [{}])",
            missing.join(", "), extra.join(", "))]
    InconsistentTestMap {
        missing: Vec<String>,
        extra: Vec<String>,
    },
    #[error("duplicate id `{id}` in {list}")]
    DuplicateId { list: String, id: String },
    #[error("empty id in {list}")]
    EmptyId { list: String },
    #[error("pairs are not a function: input `{input}` maps to both `{first}` and `{second}`")]
    NotAFunction {
        input: String,
        first: String,
        second: String,
    },
    #[error("subset contains ids outside the domain: {}", ids.join(", "))]
    OutOfDomain { ids: Vec<String> },
    #[error("pair ({input}, {output}) has an endpoint outside the domain or codomain")]
    PairOutsideSets { input: String, output: String },
}

fn check_subset(name: &str, subset: &BehaviorSet, universe: &BehaviorSet) -> Result<(), BehaviorError> {
    let outside: Vec<String> = subset.difference(universe).cloned().collect();
    if outside.is_empty() {
        Ok(())
    } else {
        Err(BehaviorError::UniverseViolation {
            set: name.to_string(),
            ids: outside,
        })
    }
}

fn intersect(a: &BehaviorSet, b: &BehaviorSet) -> BehaviorSet {
    a.intersection(b).cloned().collect()
}

fn subtract(a: &BehaviorSet, b: &BehaviorSet) -> BehaviorSet {
    a.difference(b).cloned().collect()
}

/// The specified/programmed/tested model over an explicit universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SptModel {
    universe: BehaviorSet,
    specified: BehaviorSet,
    programmed: BehaviorSet,
    tested: BehaviorSet,
    tests: Option<BTreeMap<String, BehaviorSet>>,
}

impl SptModel {
    /// Builds a model, checking that S, P, and T are subsets of the universe.
    pub fn new(
        universe: BehaviorSet,
        specified: BehaviorSet,
        programmed: BehaviorSet,
        tested: BehaviorSet,
    ) -> Result<Self, BehaviorError> {
        check_subset("S", &specified, &universe)?;
        check_subset("P", &programmed, &universe)?;
        check_subset("T", &tested, &universe)?;
        Ok(Self {
            universe,
            specified,
            programmed,
            tested,
            tests: None,
        })
    }

    /// Like [`SptModel::new`] but with a test-case map whose union must be
    /// exactly `T`.
    pub fn with_tests(
        universe: BehaviorSet,
        specified: BehaviorSet,
        programmed: BehaviorSet,
        tested: BehaviorSet,
        tests: BTreeMap<String, BehaviorSet>,
    ) -> Result<Self, BehaviorError> {
        let mut model = Self::new(universe, specified, programmed, tested)?;
        let covered: BehaviorSet = tests.values().flatten().cloned().collect();
        if covered != model.tested {
            return Err(BehaviorError::InconsistentTestMap {
                missing: subtract(&model.tested, &covered).into_iter().collect(),
                extra: subtract(&covered, &model.tested).into_iter().collect(),
            });
        }
        model.tests = Some(tests);
        Ok(model)
    }

    pub fn universe(&self) -> &BehaviorSet {
        &self.universe
    }

    pub fn specified(&self) -> &BehaviorSet {
        &self.specified
    }

    pub fn programmed(&self) -> &BehaviorSet {
        &self.programmed
    }

    pub fn tested(&self) -> &BehaviorSet {
        &self.tested
    }

    pub fn tests(&self) -> Option<&BTreeMap<String, BehaviorSet>> {
        self.tests.as_ref()
    }

    /// Splits the universe into the eight regions. Pure set algebra; the
    /// result partitions the universe by construction.
    pub fn classify(&self) -> RegionReport {
        let (s, p, t) = (&self.specified, &self.programmed, &self.tested);
        let sp = intersect(s, p);
        let st = intersect(s, t);
        let pt = intersect(p, t);
        let s_p_t = intersect(&sp, t);
        let union_all: BehaviorSet = s.union(p).cloned().chain(t.iter().cloned()).collect();
        RegionReport {
            regions: [
                s_p_t.clone(),
                subtract(&sp, t),
                subtract(&pt, s),
                subtract(&st, p),
                subtract(&subtract(s, p), t),
                subtract(&subtract(p, s), t),
                subtract(&subtract(t, s), p),
                subtract(&self.universe, &union_all),
            ],
        }
    }

    /// Specified behaviors that were never programmed: `S \ P`.
    pub fn faults_of_omission(&self) -> BehaviorSet {
        subtract(&self.specified, &self.programmed)
    }

    /// Programmed behaviors that were never specified: `P \ S`.
    pub fn faults_of_commission(&self) -> BehaviorSet {
        subtract(&self.programmed, &self.specified)
    }

    /// Behaviors both specified and implemented: `S ∩ P`.
    pub fn correct_portion(&self) -> BehaviorSet {
        intersect(&self.specified, &self.programmed)
    }
}

/// The eight disjoint regions, 1-indexed as in the table on the module page.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionReport {
    regions: [BehaviorSet; 8],
}

impl RegionReport {
    /// `number` must be in `1..=8`.
    pub fn region(&self, number: usize) -> &BehaviorSet {
        &self.regions[number - 1]
    }

    /// Regions 1 through 8, in order.
    pub fn regions(&self) -> impl Iterator<Item = (usize, &BehaviorSet)> {
        self.regions.iter().enumerate().map(|(i, r)| (i + 1, r))
    }
}

impl Serialize for RegionReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(8))?;
        for (number, ids) in self.regions() {
            map.serialize_entry(&format!("region{number}"), ids)?;
        }
        map.end()
    }
}

impl fmt::Display for RegionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (number, ids) in self.regions() {
            write!(f, "region{number}:")?;
            for id in ids {
                write!(f, " {id}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[&str]) -> BehaviorSet {
        ids.iter().map(|s| s.to_string()).collect()
    }

    /// Universe {1..6}, S = {1,2,3}, P = {2,3,4}, T = {3,4,5}.
    pub(crate) fn worked_model() -> SptModel {
        SptModel::new(
            set(&["1", "2", "3", "4", "5", "6"]),
            set(&["1", "2", "3"]),
            set(&["2", "3", "4"]),
            set(&["3", "4", "5"]),
        )
        .unwrap()
    }

    #[test]
    fn worked_model_regions() {
        let r = worked_model().classify();
        assert_eq!(r.region(1), &set(&["3"]));
        assert_eq!(r.region(2), &set(&["2"]));
        assert_eq!(r.region(3), &set(&["4"]));
        assert_eq!(r.region(4), &set(&[]));
        assert_eq!(r.region(5), &set(&["1"]));
        assert_eq!(r.region(6), &set(&[]));
        assert_eq!(r.region(7), &set(&["5"]));
        assert_eq!(r.region(8), &set(&["6"]));
    }

    #[test]
    fn identical_sets_fill_region_one_only() {
        let u = set(&["a", "b"]);
        let m = SptModel::new(u.clone(), u.clone(), u.clone(), u.clone()).unwrap();
        let r = m.classify();
        assert_eq!(r.region(1), &u);
        for n in 2..=8 {
            assert!(r.region(n).is_empty(), "region {n} should be empty");
        }
    }

    #[test]
    fn empty_sets_fill_region_eight() {
        let u = set(&["a", "b"]);
        let m = SptModel::new(u.clone(), set(&[]), set(&[]), set(&[])).unwrap();
        assert_eq!(m.classify().region(8), &u);
    }

    #[test]
    fn omission_and_commission() {
        let m = worked_model();
        assert_eq!(m.faults_of_omission(), set(&["1"]));
        assert_eq!(m.faults_of_commission(), set(&["4"]));
        assert_eq!(m.correct_portion(), set(&["2", "3"]));
    }

    #[test]
    fn equal_s_and_p_have_no_faults() {
        let u = set(&["a", "b", "c"]);
        let sp = set(&["a", "b"]);
        let m = SptModel::new(u, sp.clone(), sp.clone(), set(&[])).unwrap();
        assert!(m.faults_of_omission().is_empty());
        assert!(m.faults_of_commission().is_empty());
        assert_eq!(m.correct_portion(), sp);
    }

    #[test]
    fn disjoint_s_and_p() {
        let u = set(&["a", "b"]);
        let m = SptModel::new(u, set(&["a"]), set(&["b"]), set(&[])).unwrap();
        assert_eq!(m.faults_of_omission(), set(&["a"]));
        assert_eq!(m.faults_of_commission(), set(&["b"]));
        assert!(m.correct_portion().is_empty());
    }

    #[test]
    fn subset_s_correct_portion_is_s() {
        let u = set(&["a", "b", "c"]);
        let m = SptModel::new(u, set(&["a"]), set(&["a", "b"]), set(&[])).unwrap();
        assert_eq!(m.correct_portion(), set(&["a"]));
    }

    #[test]
    fn ids_outside_the_universe_are_rejected() {
        let err = SptModel::new(set(&["1"]), set(&["1", "9"]), set(&[]), set(&[])).unwrap_err();
        assert_eq!(
            err,
            BehaviorError::UniverseViolation {
                set: "S".into(),
                ids: vec!["9".into()],
            }
        );
    }

    #[test]
    fn test_map_union_must_equal_t() {
        let u = set(&["1", "2"]);
        let err = SptModel::with_tests(
            u.clone(),
            set(&[]),
            set(&[]),
            set(&["1", "2"]),
            BTreeMap::from([("t1".to_string(), set(&["1"]))]),
        )
        .unwrap_err();
        assert!(matches!(err, BehaviorError::InconsistentTestMap { .. }));
        assert!(SptModel::with_tests(
            u,
            set(&[]),
            set(&[]),
            set(&["1", "2"]),
            BTreeMap::from([
                ("t1".to_string(), set(&["1"])),
                ("t2".to_string(), set(&["1", "2"])),
            ]),
        )
        .is_ok());
    }
}
