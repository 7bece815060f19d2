//! Character scanner shared by the block and session readers.

use crate::error::{Error, Result};

pub(crate) struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Scanner {
    pub fn new(src: &str) -> Self {
        Scanner::at(src, 1, 1)
    }

    /// Starts scanning `src` as if it began at `line`, `col`.
    pub fn at(src: &str, line: usize, col: usize) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col,
        }
    }

    pub fn line(&self) -> usize {
        self.line
    }

    pub fn col(&self) -> usize {
        self.col
    }

    pub fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col, msg))
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<char> {
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

    /// Skips whitespace, newlines and `#` comments.
    pub fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Skips spaces and tabs on the current line.
    pub fn skip_inline_ws(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t' || c == '\r') {
            self.bump();
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    pub fn expect_str(&mut self, s: &str) -> Result<()> {
        self.skip_ws();
        let save = (self.pos, self.line, self.col);
        for c in s.chars() {
            if self.peek() != Some(c) {
                (self.pos, self.line, self.col) = save;
                return self.err(format!("expected `{s}`"));
            }
            self.bump();
        }
        Ok(())
    }

    /// Identifier made of letters, digits, `_` and `'`.
    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return self.err("expected a name");
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(s)
    }

    pub fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest: String = self.chars[self.pos..].iter().take(kw.len() + 1).collect();
        if rest.starts_with(kw)
            && !rest[kw.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            for _ in 0..kw.chars().count() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    pub fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut s = String::new();
        if self.peek() == Some('-') || self.peek() == Some('+') {
            s.push(self.bump().expect("sign"));
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().or_else(|_| self.err("expected an integer"))
    }

    /// Raw expression text up to a top-level `,`, `]`, `;`, or end of line.
    /// Returns the text with its starting line and column.
    pub fn expr(&mut self) -> Result<(String, usize, usize)> {
        self.skip_inline_ws();
        let (line, col) = (self.line, self.col);
        let mut depth = 0i32;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            match c {
                '(' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ',' | ']' | ';' | '\n' | '#' | '}' if depth == 0 => break,
                '\n' => return self.err("unbalanced parenthesis"),
                _ => {}
            }
            s.push(c);
            self.bump();
        }
        let trimmed = s.trim_end().to_string();
        if trimmed.is_empty() {
            return Err(Error::parse(line, col, "expected an expression"));
        }
        Ok((trimmed, line, col))
    }

    /// Whether the next word is `kw`, without consuming it.
    pub fn peek_keyword(&mut self, kw: &str) -> bool {
        let save = (self.pos, self.line, self.col);
        let found = self.keyword(kw);
        (self.pos, self.line, self.col) = save;
        found
    }
}
