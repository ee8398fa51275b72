//! Hand-rolled scanner and parser with line/column tracking.

use std::collections::HashMap;

use super::{ParseError, Program, Span, Stmt};

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    spans: Vec<Span>,
}

impl Parser {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            spans: Vec::new(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col,
            expected: expected.to_string(),
        }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') if self.chars.get(self.pos + 1) == Some(&'/') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn at_name(&self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
    }

    fn name(&mut self) -> String {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_trivia();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    /// Balanced-parenthesis text after an opening `(` that has already been
    /// consumed; the closing `)` is consumed but not included.
    fn balanced_text(&mut self) -> Result<String, ParseError> {
        let mut depth = 1usize;
        let mut text = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error("`)`")),
                Some('(') => {
                    depth += 1;
                    text.push('(');
                    self.bump();
                }
                Some(')') => {
                    depth -= 1;
                    self.bump();
                    if depth == 0 {
                        return Ok(text.trim().to_string());
                    }
                    text.push(')');
                }
                Some(c) => {
                    text.push(c);
                    self.bump();
                }
            }
        }
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect('{')?;
        let stmts = self.stmt_list(true)?;
        self.expect('}')?;
        Ok(stmts)
    }

    /// Tries to consume the keyword `else`; restores the position otherwise.
    fn eat_else(&mut self) -> bool {
        self.skip_trivia();
        let saved = (self.pos, self.line, self.col);
        if self.at_name() && self.name() == "else" {
            return true;
        }
        (self.pos, self.line, self.col) = saved;
        false
    }

    fn stmt_list(&mut self, in_block: bool) -> Result<Vec<Stmt>, ParseError> {
        let mut stmts = Vec::new();
        loop {
            self.skip_trivia();
            match self.peek() {
                None => {
                    if in_block {
                        return Err(self.error("`}`"));
                    }
                    return Ok(stmts);
                }
                Some('}') if in_block => return Ok(stmts),
                _ => stmts.push(self.stmt()?),
            }
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        self.skip_trivia();
        let span = Span {
            line: self.line,
            col: self.col,
        };
        if !self.at_name() {
            return Err(self.error("a statement"));
        }
        self.spans.push(span);
        let stmt_start = self.pos;
        let name = self.name();
        let stmt = match name.as_str() {
            "if" => {
                self.expect('(')?;
                let cond = self.balanced_text()?;
                let then_branch = self.block()?;
                let else_branch = if self.eat_else() {
                    Some(self.block()?)
                } else {
                    None
                };
                Stmt::If {
                    cond,
                    then_branch,
                    else_branch,
                }
            }
            "while" => {
                self.expect('(')?;
                let cond = self.balanced_text()?;
                let body = self.block()?;
                Stmt::While { cond, body }
            }
            "goto" => {
                self.skip_trivia();
                if !self.at_name() {
                    return Err(self.error("a label name"));
                }
                let label = self.name();
                self.expect(';')?;
                Stmt::Goto { label }
            }
            "else" => return Err(self.error("a statement (stray `else`)")),
            _ => {
                self.skip_trivia();
                match self.peek() {
                    Some(':') => {
                        self.bump();
                        Stmt::Label { name }
                    }
                    Some('=') => {
                        // capture the raw statement text verbatim, from the
                        // name through the character before the `;`
                        loop {
                            match self.peek() {
                                None | Some('\n') => return Err(self.error("`;`")),
                                Some(';') => break,
                                Some(_) => {
                                    self.bump();
                                }
                            }
                        }
                        let text: String =
                            self.chars[stmt_start..self.pos].iter().collect();
                        self.bump(); // the `;`
                        Stmt::Assign {
                            text: text.trim().to_string(),
                        }
                    }
                    _ => return Err(self.error("`=` or `:`")),
                }
            }
        };
        Ok(stmt)
    }
}

fn check_labels(stmts: &[Stmt], spans: &[Span]) -> Result<(), ParseError> {
    fn walk<'a>(
        stmts: &'a [Stmt],
        index: &mut usize,
        labels: &mut HashMap<&'a str, Span>,
        gotos: &mut Vec<(&'a str, Span)>,
        spans: &[Span],
    ) -> Result<(), ParseError> {
        for stmt in stmts {
            let span = spans[*index];
            *index += 1;
            match stmt {
                Stmt::Label { name } => {
                    if labels.insert(name, span).is_some() {
                        return Err(ParseError::DuplicateLabel {
                            name: name.clone(),
                            line: span.line,
                            col: span.col,
                        });
                    }
                }
                Stmt::Goto { label } => gotos.push((label, span)),
                Stmt::If {
                    then_branch,
                    else_branch,
                    ..
                } => {
                    walk(then_branch, index, labels, gotos, spans)?;
                    if let Some(else_branch) = else_branch {
                        walk(else_branch, index, labels, gotos, spans)?;
                    }
                }
                Stmt::While { body, .. } => walk(body, index, labels, gotos, spans)?,
                Stmt::Assign { .. } => {}
            }
        }
        Ok(())
    }

    let mut labels = HashMap::new();
    let mut gotos = Vec::new();
    walk(stmts, &mut 0, &mut labels, &mut gotos, spans)?;
    for (label, span) in gotos {
        if !labels.contains_key(label) {
            return Err(ParseError::UndefinedGotoTarget {
                name: label.to_string(),
                line: span.line,
                col: span.col,
            });
        }
    }
    Ok(())
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut parser = Parser::new(src);
    let stmts = parser.stmt_list(false)?;
    check_labels(&stmts, &parser.spans)?;
    Ok(Program {
        stmts,
        spans: parser.spans,
    })
}

fn write_stmts(stmts: &[Stmt], indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    for stmt in stmts {
        match stmt {
            Stmt::Assign { text } => {
                out.push_str(&format!("{pad}{text};\n"));
            }
            Stmt::If {
                cond,
                then_branch,
                else_branch,
            } => {
                out.push_str(&format!("{pad}if ({cond}) {{\n"));
                write_stmts(then_branch, indent + 1, out);
                match else_branch {
                    Some(else_branch) => {
                        out.push_str(&format!("{pad}}} else {{\n"));
                        write_stmts(else_branch, indent + 1, out);
                        out.push_str(&format!("{pad}}}\n"));
                    }
                    None => out.push_str(&format!("{pad}}}\n")),
                }
            }
            Stmt::While { cond, body } => {
                out.push_str(&format!("{pad}while ({cond}) {{\n"));
                write_stmts(body, indent + 1, out);
                out.push_str(&format!("{pad}}}\n"));
            }
            Stmt::Goto { label } => out.push_str(&format!("{pad}goto {label};\n")),
            Stmt::Label { name } => out.push_str(&format!("{pad}{name}:\n")),
        }
    }
}

/// Regenerates source text; reparsing it gives a structurally equal program.
pub fn pretty_print(program: &Program) -> String {
    let mut out = String::new();
    write_stmts(program.stmts(), 0, &mut out);
    out
}
