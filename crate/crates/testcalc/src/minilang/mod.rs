//! A tiny imperative language for manufacturing program graphs.
//!
//! ```text
//! program := stmt*
//! stmt    := ASSIGN ';'
//!          | 'if' '(' COND ')' block ('else' block)?
//!          | 'while' '(' COND ')' block
//!          | 'goto' NAME ';'
//!          | NAME ':'
//! block   := '{' stmt* '}'
//! ```
//!
//! `ASSIGN` is `NAME '=' <anything up to the ';' on the same line>`; `COND`
//! is balanced-parenthesis text. Both are opaque: the language has no
//! expression semantics, it exists to give control flow a concrete syntax.
//! `//` starts a comment. Label names are unique per program and every goto
//! must target an existing label.

use thiserror::Error;

mod cfg;
mod parse;

pub use cfg::{build_program_graph, analyze_source, SourceReport, SourceStats};
pub use parse::{parse_program, pretty_print};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("duplicate label `{name}` at {line}:{col}")]
    DuplicateLabel {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("goto at {line}:{col} targets undefined label `{name}`")]
    UndefinedGotoTarget {
        name: String,
        line: usize,
        col: usize,
    },
}

/// 1-based source position of a statement's first token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    /// Raw statement text, e.g. `x = y + 1`.
    Assign { text: String },
    If {
        cond: String,
        then_branch: Vec<Stmt>,
        else_branch: Option<Vec<Stmt>>,
    },
    While { cond: String, body: Vec<Stmt> },
    Goto { label: String },
    Label { name: String },
}

/// A parsed program: the statement tree plus one [`Span`] per statement in
/// preorder (the order [`Program::stmts`] would be visited depth-first).
#[derive(Debug, Clone)]
pub struct Program {
    stmts: Vec<Stmt>,
    spans: Vec<Span>,
}

impl Program {
    pub fn stmts(&self) -> &[Stmt] {
        &self.stmts
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    /// Structural equality, ignoring source positions.
    pub fn same_structure(&self, other: &Program) -> bool {
        self.stmts == other.stmts
    }
}
