//! Truth tables and table-based queries.

use std::collections::HashMap;

use super::{BoolExpr, LogicError};

/// Largest variable count a table query accepts unless a caller raises it.
pub const DEFAULT_VARIABLE_CAP: usize = 24;

/// A complete truth table: `2^n` rows over the first-occurrence variable
/// order with one result column.
///
/// Assignments are derived from the row index (first variable = most
/// significant bit, false before true), so only the result column is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    variables: Vec<String>,
    results: Vec<bool>,
}

impl TruthTable {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn row_count(&self) -> usize {
        self.results.len()
    }

    pub fn results(&self) -> &[bool] {
        &self.results
    }

    pub fn result(&self, row: usize) -> bool {
        self.results[row]
    }

    /// The variable values of one row, in variable order.
    pub fn assignment(&self, row: usize) -> Vec<bool> {
        let n = self.variables.len();
        (0..n).map(|k| row >> (n - 1 - k) & 1 == 1).collect()
    }

    /// `(assignment, result)` pairs in row order.
    pub fn rows(&self) -> impl Iterator<Item = (Vec<bool>, bool)> + '_ {
        (0..self.row_count()).map(|row| (self.assignment(row), self.result(row)))
    }
}

/// Expression with variables resolved to slots, so row evaluation skips the
/// name lookups.
enum Compiled {
    Slot(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Iff(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn build(expr: &BoolExpr, slots: &HashMap<&str, usize>) -> Self {
        match expr {
            BoolExpr::Var(name) => Compiled::Slot(slots[name.as_str()]),
            BoolExpr::Not(e) => Compiled::Not(Box::new(Self::build(e, slots))),
            BoolExpr::And(l, r) => Compiled::And(
                Box::new(Self::build(l, slots)),
                Box::new(Self::build(r, slots)),
            ),
            BoolExpr::Or(l, r) => Compiled::Or(
                Box::new(Self::build(l, slots)),
                Box::new(Self::build(r, slots)),
            ),
            BoolExpr::Implies(l, r) => Compiled::Implies(
                Box::new(Self::build(l, slots)),
                Box::new(Self::build(r, slots)),
            ),
            BoolExpr::Iff(l, r) => Compiled::Iff(
                Box::new(Self::build(l, slots)),
                Box::new(Self::build(r, slots)),
            ),
        }
    }

    fn eval(&self, values: &[bool]) -> bool {
        match self {
            Compiled::Slot(k) => values[*k],
            Compiled::Not(e) => !e.eval(values),
            Compiled::And(l, r) => l.eval(values) && r.eval(values),
            Compiled::Or(l, r) => l.eval(values) || r.eval(values),
            Compiled::Implies(l, r) => !l.eval(values) || r.eval(values),
            Compiled::Iff(l, r) => l.eval(values) == r.eval(values),
        }
    }
}

fn check_cap(variables: usize, cap: usize) -> Result<(), LogicError> {
    if variables > cap {
        return Err(LogicError::VariableLimitExceeded { variables, cap });
    }
    Ok(())
}

fn fill_assignment(row: usize, values: &mut [bool]) {
    let n = values.len();
    for (k, value) in values.iter_mut().enumerate() {
        *value = row >> (n - 1 - k) & 1 == 1;
    }
}

pub fn truth_table(expr: &BoolExpr) -> Result<TruthTable, LogicError> {
    truth_table_with_cap(expr, DEFAULT_VARIABLE_CAP)
}

pub fn truth_table_with_cap(expr: &BoolExpr, cap: usize) -> Result<TruthTable, LogicError> {
    let variables = expr.variables();
    check_cap(variables.len(), cap)?;
    let slots: HashMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let compiled = Compiled::build(expr, &slots);
    let n = variables.len();
    let mut values = vec![false; n];
    let mut results = Vec::with_capacity(1 << n);
    for row in 0..1usize << n {
        fill_assignment(row, &mut values);
        results.push(compiled.eval(&values));
    }
    Ok(TruthTable { variables, results })
}

/// True when every row of the table is true.
pub fn is_tautology(expr: &BoolExpr) -> Result<bool, LogicError> {
    Ok(truth_table(expr)?.results().iter().all(|&r| r))
}

/// True when some row of the table is true.
pub fn is_satisfiable(expr: &BoolExpr) -> Result<bool, LogicError> {
    Ok(truth_table(expr)?.results().iter().any(|&r| r))
}

pub fn entails(premises: &[BoolExpr], conclusion: &BoolExpr) -> Result<bool, LogicError> {
    entails_with_cap(premises, conclusion, DEFAULT_VARIABLE_CAP)
}

/// Truth-preservation over the joint table: every assignment satisfying all
/// premises must satisfy the conclusion. With no premises this is a
/// tautology check.
pub fn entails_with_cap(
    premises: &[BoolExpr],
    conclusion: &BoolExpr,
    cap: usize,
) -> Result<bool, LogicError> {
    let mut variables: Vec<String> = Vec::new();
    for premise in premises {
        for v in premise.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
    }
    for v in conclusion.variables() {
        if !variables.contains(&v) {
            variables.push(v);
        }
    }
    check_cap(variables.len(), cap)?;
    let slots: HashMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let compiled_premises: Vec<Compiled> =
        premises.iter().map(|p| Compiled::build(p, &slots)).collect();
    let compiled_conclusion = Compiled::build(conclusion, &slots);
    let n = variables.len();
    let mut values = vec![false; n];
    for row in 0..1usize << n {
        fill_assignment(row, &mut values);
        if compiled_premises.iter().all(|p| p.eval(&values))
            && !compiled_conclusion.eval(&values)
        {
            return Ok(false);
        }
    }
    Ok(true)
}
