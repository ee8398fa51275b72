//! Propositional expressions, truth tables, and entailment.
//!
//! Operator syntax: `~` (not), `&` (and), `|` (or), `==>` (implies),
//! `<==>` (iff), binding in that order from tightest to loosest. `&` and
//! `|` associate to the left, `==>` and `<==>` to the right. There are no
//! truth constants; formulas are built from variables only.
//!
//! Variable order everywhere (tables, placeholder numbering) is first
//! occurrence in the expression, and table rows count in binary with the
//! first variable as the most significant bit, false before true.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

mod decompose;
mod parse;
mod table;

pub use decompose::{decompose, Decomposition};
pub use parse::parse_expr;
pub use table::{
    entails, entails_with_cap, is_satisfiable, is_tautology, truth_table, truth_table_with_cap,
    TruthTable, DEFAULT_VARIABLE_CAP,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("{variables} variables exceed the table cap of {cap}")]
    VariableLimitExceeded { variables: usize, cap: usize },
}

/// Propositional formula over named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Var(String),
    Not(Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
    Iff(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn var(name: impl Into<String>) -> Self {
        BoolExpr::Var(name.into())
    }

    pub fn not(e: BoolExpr) -> Self {
        BoolExpr::Not(Box::new(e))
    }

    pub fn and(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: BoolExpr, r: BoolExpr) -> Self {
        BoolExpr::Iff(Box::new(l), Box::new(r))
    }

    /// Variable names in first-occurrence order, without duplicates.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            BoolExpr::Var(name) => {
                if !out.iter().any(|v| v == name) {
                    out.push(name.clone());
                }
            }
            BoolExpr::Not(e) => e.collect_variables(out),
            BoolExpr::And(l, r)
            | BoolExpr::Or(l, r)
            | BoolExpr::Implies(l, r)
            | BoolExpr::Iff(l, r) => {
                l.collect_variables(out);
                r.collect_variables(out);
            }
        }
    }

    /// Standard two-valued semantics; `==>` is false only for true-then-false
    /// and `<==>` is equality.
    pub fn evaluate(&self, assignment: &HashMap<String, bool>) -> Result<bool, LogicError> {
        match self {
            BoolExpr::Var(name) => assignment
                .get(name)
                .copied()
                .ok_or_else(|| LogicError::UnboundVariable(name.clone())),
            BoolExpr::Not(e) => Ok(!e.evaluate(assignment)?),
            BoolExpr::And(l, r) => Ok(l.evaluate(assignment)? && r.evaluate(assignment)?),
            BoolExpr::Or(l, r) => Ok(l.evaluate(assignment)? || r.evaluate(assignment)?),
            BoolExpr::Implies(l, r) => Ok(!l.evaluate(assignment)? || r.evaluate(assignment)?),
            BoolExpr::Iff(l, r) => Ok(l.evaluate(assignment)? == r.evaluate(assignment)?),
        }
    }

    /// Rewrites every variable through `map`; names missing from the map are
    /// kept as they are.
    pub fn rename_variables(&self, map: &HashMap<String, String>) -> BoolExpr {
        match self {
            BoolExpr::Var(name) => {
                BoolExpr::Var(map.get(name).cloned().unwrap_or_else(|| name.clone()))
            }
            BoolExpr::Not(e) => BoolExpr::not(e.rename_variables(map)),
            BoolExpr::And(l, r) => {
                BoolExpr::and(l.rename_variables(map), r.rename_variables(map))
            }
            BoolExpr::Or(l, r) => BoolExpr::or(l.rename_variables(map), r.rename_variables(map)),
            BoolExpr::Implies(l, r) => {
                BoolExpr::implies(l.rename_variables(map), r.rename_variables(map))
            }
            BoolExpr::Iff(l, r) => {
                BoolExpr::iff(l.rename_variables(map), r.rename_variables(map))
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Iff(..) => 1,
            BoolExpr::Implies(..) => 2,
            BoolExpr::Or(..) => 3,
            BoolExpr::And(..) => 4,
            BoolExpr::Not(..) => 5,
            BoolExpr::Var(..) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            BoolExpr::Var(name) => write!(f, "{name}")?,
            BoolExpr::Not(e) => {
                write!(f, "~")?;
                e.fmt_prec(f, prec)?;
            }
            BoolExpr::And(l, r) | BoolExpr::Or(l, r) => {
                let op = if matches!(self, BoolExpr::And(..)) { "&" } else { "|" };
                l.fmt_prec(f, prec)?;
                write!(f, " {op} ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            BoolExpr::Implies(l, r) | BoolExpr::Iff(l, r) => {
                let op = if matches!(self, BoolExpr::Implies(..)) { "==>" } else { "<==>" };
                l.fmt_prec(f, prec + 1)?;
                write!(f, " {op} ")?;
                r.fmt_prec(f, prec)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Prints with the minimum parentheses the grammar needs to re-read the
/// same tree.
impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, bool)]) -> HashMap<String, bool> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    /// `((a & c) | (b & ~e)) ==> ((c | m) <==> (m & e))`
    pub(crate) fn worked_expr() -> BoolExpr {
        parse_expr("((a & c) | (b & ~e)) ==> ((c | m) <==> (m & e))").unwrap()
    }

    #[test]
    fn evaluate_all_true_and_all_false() {
        let e = worked_expr();
        let all = |value| env(&[("a", value), ("b", value), ("c", value), ("e", value), ("m", value)]);
        assert_eq!(e.evaluate(&all(true)), Ok(true));
        assert_eq!(e.evaluate(&all(false)), Ok(true));
    }

    #[test]
    fn evaluate_not() {
        let e = BoolExpr::not(BoolExpr::var("a"));
        assert_eq!(e.evaluate(&env(&[("a", true)])), Ok(false));
    }

    #[test]
    fn unbound_variable_is_reported() {
        let e = BoolExpr::var("q");
        assert_eq!(
            e.evaluate(&env(&[])),
            Err(LogicError::UnboundVariable("q".into()))
        );
    }

    #[test]
    fn variables_in_first_occurrence_order() {
        assert_eq!(worked_expr().variables(), ["a", "c", "b", "e", "m"]);
    }

    #[test]
    fn display_round_trips_the_worked_expression() {
        let e = worked_expr();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn display_keeps_association_explicit() {
        // (a ==> b) ==> c must not print as the right-associative default
        let e = BoolExpr::implies(
            BoolExpr::implies(BoolExpr::var("a"), BoolExpr::var("b")),
            BoolExpr::var("c"),
        );
        assert_eq!(e.to_string(), "(a ==> b) ==> c");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }
}
