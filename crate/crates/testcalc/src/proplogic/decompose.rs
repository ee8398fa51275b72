//! The element-set / truth-function / correspondence view of an expression.

use std::collections::HashMap;

use super::BoolExpr;

/// An expression split into its variable set, a truth function over the
/// placeholders `x1..xN`, and the one-to-one correspondence between the two.
///
/// The k-th variable to occur maps to `x{k}`, so re-substituting the
/// correspondence into the truth function rebuilds an expression with the
/// original's truth table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    elements: Vec<String>,
    truth_function: BoolExpr,
}

impl Decomposition {
    /// Variable names in first-occurrence order.
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    /// The expression rewritten over `x1..xN`.
    pub fn truth_function(&self) -> &BoolExpr {
        &self.truth_function
    }

    pub fn placeholder(index: usize) -> String {
        format!("x{index}")
    }

    /// `(element, placeholder index)` pairs; indexes are 1-based and cover
    /// `1..=N` exactly once each.
    pub fn correspondence(&self) -> Vec<(String, usize)> {
        self.elements
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i + 1))
            .collect()
    }

    /// Replaces each placeholder with its element again.
    pub fn resubstitute(&self) -> BoolExpr {
        let map: HashMap<String, String> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, name)| (Self::placeholder(i + 1), name.clone()))
            .collect();
        self.truth_function.rename_variables(&map)
    }
}

pub fn decompose(expr: &BoolExpr) -> Decomposition {
    let elements = expr.variables();
    let map: HashMap<String, String> = elements
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), Decomposition::placeholder(i + 1)))
        .collect();
    Decomposition {
        truth_function: expr.rename_variables(&map),
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_expr, truth_table};
    use super::*;

    #[test]
    fn worked_expression_decomposes_to_the_expected_function() {
        let e = parse_expr("((a & c) | (b & ~e)) ==> ((c | m) <==> (m & e))").unwrap();
        let d = decompose(&e);
        assert_eq!(d.elements(), ["a", "c", "b", "e", "m"]);
        assert_eq!(
            d.correspondence(),
            [
                ("a".to_string(), 1),
                ("c".to_string(), 2),
                ("b".to_string(), 3),
                ("e".to_string(), 4),
                ("m".to_string(), 5),
            ]
        );
        let expected =
            parse_expr("((x1 & x2) | (x3 & ~x4)) ==> ((x2 | x5) <==> (x5 & x4))").unwrap();
        assert_eq!(d.truth_function(), &expected);
    }

    #[test]
    fn correspondence_is_a_bijection_onto_indexes() {
        let e = parse_expr("p & q | p ==> r").unwrap();
        let d = decompose(&e);
        let mut indexes: Vec<usize> = d.correspondence().iter().map(|(_, i)| *i).collect();
        indexes.sort_unstable();
        assert_eq!(indexes, (1..=d.elements().len()).collect::<Vec<_>>());
    }

    #[test]
    fn single_variable() {
        let d = decompose(&parse_expr("q").unwrap());
        assert_eq!(d.elements(), ["q"]);
        assert_eq!(d.truth_function(), &BoolExpr::var("x1"));
        assert_eq!(d.resubstitute(), BoolExpr::var("q"));
    }

    #[test]
    fn resubstitution_restores_the_truth_table() {
        let e = parse_expr("((a & c) | (b & ~e)) ==> ((c | m) <==> (m & e))").unwrap();
        let back = decompose(&e).resubstitute();
        assert_eq!(
            truth_table(&back).unwrap(),
            truth_table(&e).unwrap()
        );
    }

    #[test]
    fn placeholder_collisions_do_not_cross_contaminate() {
        // `x2` is an ordinary variable name here; renaming is simultaneous.
        let e = parse_expr("x2 & a").unwrap();
        let d = decompose(&e);
        assert_eq!(d.elements(), ["x2", "a"]);
        assert_eq!(
            d.truth_function(),
            &BoolExpr::and(BoolExpr::var("x1"), BoolExpr::var("x2"))
        );
        assert_eq!(d.resubstitute(), e);
    }
}
