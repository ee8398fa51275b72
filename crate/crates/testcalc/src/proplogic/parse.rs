//! Recursive-descent parser for the expression syntax.

use super::{BoolExpr, LogicError};

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, expected: &str) -> LogicError {
        LogicError::Syntax {
            position: self.pos + 1,
            expected: expected.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat_symbol(&mut self, symbol: &str) -> bool {
        self.skip_ws();
        let len = symbol.chars().count();
        if self.pos + len <= self.chars.len()
            && self.chars[self.pos..self.pos + len].iter().collect::<String>() == symbol
        {
            self.pos += len;
            return true;
        }
        false
    }

    // iff := imp ('<==>' iff)?   (right-associative)
    fn iff(&mut self) -> Result<BoolExpr, LogicError> {
        let left = self.imp()?;
        if self.eat_symbol("<==>") {
            return Ok(BoolExpr::iff(left, self.iff()?));
        }
        Ok(left)
    }

    // imp := or ('==>' imp)?   (right-associative)
    fn imp(&mut self) -> Result<BoolExpr, LogicError> {
        let left = self.or()?;
        if self.eat_symbol("==>") {
            return Ok(BoolExpr::implies(left, self.imp()?));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<BoolExpr, LogicError> {
        let mut left = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            left = BoolExpr::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<BoolExpr, LogicError> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            left = BoolExpr::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<BoolExpr, LogicError> {
        if self.peek() == Some('~') {
            self.pos += 1;
            return Ok(BoolExpr::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BoolExpr, LogicError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.iff()?;
                if self.peek() != Some(')') {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() || c == '_' => Ok(BoolExpr::Var(self.name())),
            _ => Err(self.error("a variable, `~`, or `(`")),
        }
    }

    fn name(&mut self) -> String {
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

/// Parses an expression, rejecting trailing input.
pub fn parse_expr(src: &str) -> Result<BoolExpr, LogicError> {
    let mut parser = Parser::new(src);
    let expr = parser.iff()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of input"));
    }
    Ok(expr)
}
