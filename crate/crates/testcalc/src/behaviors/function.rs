//! Finite functions as ordered-pair sets.

use std::collections::BTreeSet;

use super::{BehaviorError, BehaviorSet};

/// A finite relation `pairs ⊆ A × B` intended to be a function from the
/// domain `A` to the codomain `B`.
///
/// Construction only checks that endpoints live in the right sets; whether
/// the pairs really are single-valued is a separate question answered by
/// [`FunctionSpec::is_well_defined`], so counterexamples stay representable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpec {
    domain: BehaviorSet,
    codomain: BehaviorSet,
    pairs: BTreeSet<(String, String)>,
}

impl FunctionSpec {
    pub fn new(
        domain: BehaviorSet,
        codomain: BehaviorSet,
        pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, BehaviorError> {
        let pairs: BTreeSet<(String, String)> = pairs.into_iter().collect();
        for (input, output) in &pairs {
            if !domain.contains(input) || !codomain.contains(output) {
                return Err(BehaviorError::PairOutsideSets {
                    input: input.clone(),
                    output: output.clone(),
                });
            }
        }
        Ok(Self {
            domain,
            codomain,
            pairs,
        })
    }

    pub fn domain(&self) -> &BehaviorSet {
        &self.domain
    }

    pub fn codomain(&self) -> &BehaviorSet {
        &self.codomain
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    /// The smallest input mapped to two distinct outputs, with both outputs,
    /// or `None` when the pairs are single-valued.
    pub fn well_definedness_witness(&self) -> Option<(String, String, String)> {
        let mut pairs = self.pairs.iter();
        let mut previous = pairs.next()?;
        for pair in pairs {
            if pair.0 == previous.0 && pair.1 != previous.1 {
                return Some((pair.0.clone(), previous.1.clone(), pair.1.clone()));
            }
            previous = pair;
        }
        None
    }

    /// One input, at most one output. Many-to-one is fine; the empty pair
    /// set is vacuously a function.
    pub fn is_well_defined(&self) -> bool {
        self.well_definedness_witness().is_none()
    }

    /// Outputs attained on `subset`: `{ f(a) : a ∈ subset }`.
    ///
    /// Requires a well-defined function and `subset ⊆ domain`. Inputs without
    /// a pair contribute nothing.
    pub fn image(&self, subset: &BehaviorSet) -> Result<BehaviorSet, BehaviorError> {
        if let Some((input, first, second)) = self.well_definedness_witness() {
            return Err(BehaviorError::NotAFunction {
                input,
                first,
                second,
            });
        }
        let outside: Vec<String> = subset.difference(&self.domain).cloned().collect();
        if !outside.is_empty() {
            return Err(BehaviorError::OutOfDomain { ids: outside });
        }
        Ok(self
            .pairs
            .iter()
            .filter(|(input, _)| subset.contains(input))
            .map(|(_, output)| output.clone())
            .collect())
    }
}
