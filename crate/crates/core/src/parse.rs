//! Line-oriented reader shared by the text formats.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Iterates over significant lines, skipping blanks and `#` comments.
pub(crate) struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let line = self
            .lines
            .get(self.pos)
            .or(self.lines.last())
            .map_or(0, |l| l.0);
        ParseError {
            line,
            message: message.into(),
        }
    }

    pub fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    pub fn next_line(&mut self) -> Result<&'a str, ParseError> {
        let l = self
            .peek()
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        Ok(l)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    /// Reads `key: value` and returns the value.
    pub fn field(&mut self, key: &str) -> Result<&'a str, ParseError> {
        let l = self
            .peek()
            .ok_or_else(|| self.error(format!("expected `{key}:`")))?;
        match l.split_once(':') {
            Some((k, v)) if k.trim() == key => {
                self.pos += 1;
                Ok(v.trim())
            }
            _ => Err(self.error(format!("expected `{key}:`, found `{l}`"))),
        }
    }

    /// Reads a header line `key:` with nothing after the colon.
    pub fn header(&mut self, key: &str) -> Result<(), ParseError> {
        let v = self.field(key)?;
        if v.is_empty() {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.error(format!("`{key}:` must stand alone")))
        }
    }

    pub fn number(&mut self, key: &str) -> Result<usize, ParseError> {
        let v = self.field(key)?;
        v.parse().map_err(|_| {
            self.pos -= 1;
            self.error(format!("`{key}` must be a number, found `{v}`"))
        })
    }

    /// Reads a line of whitespace-separated indices.
    pub fn indices(&mut self) -> Result<Vec<usize>, ParseError> {
        let l = self.next_line()?;
        l.split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| {
                    self.pos -= 1;
                    self.error(format!("`{t}` is not an index"))
                })
            })
            .collect()
    }
}
