//! Validation and comparison of test-case identification methods.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_subset, intersect, subtract, BehaviorError, BehaviorSet, SptModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    /// Derives tests from the specification; passes when `T ⊆ S`.
    Functional,
    /// Derives tests from the implementation; passes when `T ⊆ P`.
    Structural,
}

impl MethodKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Functional => "functional",
            MethodKind::Structural => "structural",
        }
    }
}

/// A named method together with the behaviors each of its test cases covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodProfile {
    pub name: String,
    pub kind: MethodKind,
    pub tests: BTreeMap<String, BehaviorSet>,
}

impl MethodProfile {
    pub fn new(
        name: impl Into<String>,
        kind: MethodKind,
        tests: BTreeMap<String, BehaviorSet>,
    ) -> Self {
        Self {
            name: name.into(),
            kind,
            tests,
        }
    }

    /// Union of all covered behaviors.
    pub fn covered(&self) -> BehaviorSet {
        self.tests.values().flatten().cloned().collect()
    }

    /// Behaviors covered by two or more test cases.
    pub fn redundancy(&self) -> BehaviorSet {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for ids in self.tests.values() {
            for id in ids {
                *counts.entry(id).or_default() += 1;
            }
        }
        counts
            .into_iter()
            .filter(|&(_, n)| n >= 2)
            .map(|(id, _)| id.to_string())
            .collect()
    }
}

/// Containment verdict for one method against a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodValidation {
    pub method: String,
    pub kind: MethodKind,
    pub passed: bool,
    /// Tested behaviors outside the containing set (S or P by kind).
    pub violations: BehaviorSet,
    /// Untested remainder of the containing set.
    pub gaps: BehaviorSet,
    /// Behaviors covered by two or more test cases.
    pub redundancy: BehaviorSet,
    pub test_cases: usize,
    pub covered: usize,
}

/// Checks the containment law for `profile` against `model`.
///
/// The profile's union of covered behaviors must equal the model's `T`.
/// Functional methods must stay inside `S`, structural ones inside `P`;
/// `violations` lists the escapees and `gaps` the untested remainder.
pub fn validate_method(
    profile: &MethodProfile,
    model: &SptModel,
) -> Result<MethodValidation, BehaviorError> {
    let covered = profile.covered();
    if &covered != model.tested() {
        return Err(BehaviorError::InconsistentTestMap {
            missing: subtract(model.tested(), &covered).into_iter().collect(),
            extra: subtract(&covered, model.tested()).into_iter().collect(),
        });
    }
    let container = match profile.kind {
        MethodKind::Functional => model.specified(),
        MethodKind::Structural => model.programmed(),
    };
    let violations = subtract(&covered, container);
    Ok(MethodValidation {
        method: profile.name.clone(),
        kind: profile.kind,
        passed: violations.is_empty(),
        violations,
        gaps: subtract(container, &covered),
        redundancy: profile.redundancy(),
        test_cases: profile.tests.len(),
        covered: covered.len(),
    })
}

/// Side-by-side coverage comparison of two methods on one model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MethodComparison {
    pub name_a: String,
    pub name_b: String,
    pub covered_a: usize,
    pub covered_b: usize,
    pub test_cases_a: usize,
    pub test_cases_b: usize,
    pub only_a: BehaviorSet,
    pub only_b: BehaviorSet,
    pub common: BehaviorSet,
    /// Each method's contribution to region 1: its coverage inside `S ∩ P`.
    pub region1_a: BehaviorSet,
    pub region1_b: BehaviorSet,
}

/// Compares two profiles by the behaviors they cover. Each profile carries
/// its own tested set here; both must stay inside the model's universe.
pub fn compare_methods(
    a: &MethodProfile,
    b: &MethodProfile,
    model: &SptModel,
) -> Result<MethodComparison, BehaviorError> {
    let covered_a = a.covered();
    let covered_b = b.covered();
    check_subset(&a.name, &covered_a, model.universe())?;
    check_subset(&b.name, &covered_b, model.universe())?;
    let correct = model.correct_portion();
    Ok(MethodComparison {
        name_a: a.name.clone(),
        name_b: b.name.clone(),
        covered_a: covered_a.len(),
        covered_b: covered_b.len(),
        test_cases_a: a.tests.len(),
        test_cases_b: b.tests.len(),
        only_a: subtract(&covered_a, &covered_b),
        only_b: subtract(&covered_b, &covered_a),
        common: intersect(&covered_a, &covered_b),
        region1_a: intersect(&covered_a, &correct),
        region1_b: intersect(&covered_b, &correct),
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::worked_model;
    use super::*;

    fn set(ids: &[&str]) -> BehaviorSet {
        ids.iter().map(|s| s.to_string()).collect()
    }

    fn profile(name: &str, kind: MethodKind, tests: &[(&str, &[&str])]) -> MethodProfile {
        MethodProfile::new(
            name,
            kind,
            tests
                .iter()
                .map(|(n, ids)| (n.to_string(), set(ids)))
                .collect(),
        )
    }

    #[test]
    fn functional_profile_fails_outside_s() {
        // T = {3,4,5} but S = {1,2,3}
        let p = profile(
            "boundary",
            MethodKind::Functional,
            &[("t1", &["3"]), ("t2", &["4", "5"])],
        );
        let v = validate_method(&p, &worked_model()).unwrap();
        assert!(!v.passed);
        assert_eq!(v.violations, set(&["4", "5"]));
        assert_eq!(v.gaps, set(&["1", "2"]));
    }

    #[test]
    fn structural_profile_inside_p_passes() {
        let u = set(&["1", "2", "3"]);
        let model = SptModel::new(u.clone(), set(&[]), u, set(&["1", "2"])).unwrap();
        let p = profile(
            "branch",
            MethodKind::Structural,
            &[("t1", &["1"]), ("t2", &["2"])],
        );
        let v = validate_method(&p, &model).unwrap();
        assert!(v.passed);
        assert!(v.violations.is_empty());
        assert_eq!(v.gaps, set(&["3"]));
    }

    #[test]
    fn redundancy_lists_doubly_covered_behaviors() {
        let u = set(&["3"]);
        let model = SptModel::new(u.clone(), u.clone(), u.clone(), u).unwrap();
        let p = profile(
            "dup",
            MethodKind::Functional,
            &[("t1", &["3"]), ("t2", &["3"])],
        );
        let v = validate_method(&p, &model).unwrap();
        assert_eq!(v.redundancy, set(&["3"]));
        assert!(v.passed);
    }

    #[test]
    fn mismatched_test_map_is_rejected() {
        let p = profile("short", MethodKind::Functional, &[("t1", &["3"])]);
        assert!(matches!(
            validate_method(&p, &worked_model()),
            Err(BehaviorError::InconsistentTestMap { .. })
        ));
    }

    #[test]
    fn comparison_reports_region1_contributions() {
        let a = profile("A", MethodKind::Functional, &[("a1", &["2", "3"])]);
        let b = profile("B", MethodKind::Functional, &[("b1", &["3", "4"])]);
        let c = compare_methods(&a, &b, &worked_model()).unwrap();
        assert_eq!(c.region1_a.len(), 2);
        assert_eq!(c.region1_b.len(), 1);
        assert_eq!(c.only_a, set(&["2"]));
        assert_eq!(c.only_b, set(&["4"]));
        assert_eq!(c.common, set(&["3"]));
    }

    #[test]
    fn superset_comparison_has_empty_difference() {
        let a = profile("A", MethodKind::Structural, &[("a1", &["2", "3", "4"])]);
        let b = profile("B", MethodKind::Structural, &[("b1", &["3"])]);
        let c = compare_methods(&a, &b, &worked_model()).unwrap();
        assert!(c.only_b.is_empty());
        assert_eq!(c.covered_a, 3);
        assert_eq!(c.covered_b, 1);
    }

    #[test]
    fn identical_profiles_compare_symmetric() {
        let a = profile("A", MethodKind::Functional, &[("t", &["2"])]);
        let c = compare_methods(&a, &a, &worked_model()).unwrap();
        assert!(c.only_a.is_empty() && c.only_b.is_empty());
        assert_eq!(c.common, set(&["2"]));
    }

    #[test]
    fn comparison_rejects_ids_outside_universe() {
        let a = profile("A", MethodKind::Functional, &[("t", &["99"])]);
        let b = profile("B", MethodKind::Functional, &[]);
        assert!(matches!(
            compare_methods(&a, &b, &worked_model()),
            Err(BehaviorError::UniverseViolation { .. })
        ));
    }
}
