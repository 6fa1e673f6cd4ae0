//! Root-list parsing.
//!
//! Grammar: comma-separated rationals "p/q" (or bare "p"), each with an
//! optional "^m" multiplicity suffix. Whitespace is ignored everywhere.
//! Errors carry the byte position in the original input.

use std::fmt;

use yangian::scalar::rat;
use yangian::strings::RootMultiset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a str) -> Self {
        Scanner {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self, what: &str) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError {
                position: self.pos,
                message: format!("expected {}", what),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError {
                position: start,
                message: format!("{} out of range", what),
            })
    }
}

/// Parses lists like "0, 1, 1, 2" or "1/2^3, -7/3" into a root multiset.
/// Repeated roots accumulate multiplicity.
pub fn parse_roots(input: &str) -> Result<RootMultiset, ParseError> {
    let mut scanner = Scanner::new(input);
    let mut multiset = RootMultiset::new();
    if scanner.peek().is_none() {
        return Err(scanner.error_here("empty root list"));
    }
    loop {
        let numer = scanner.integer("a rational root")?;
        let denom = if scanner.peek() == Some(b'/') {
            scanner.bump();
            let at = scanner.pos;
            let d = scanner.integer("a denominator")?;
            if d == 0 {
                return Err(ParseError {
                    position: at,
                    message: "denominator is zero".into(),
                });
            }
            d
        } else {
            1
        };
        let mult = if scanner.peek() == Some(b'^') {
            scanner.bump();
            let at = scanner.pos;
            let m = scanner.integer("a multiplicity")?;
            if m <= 0 {
                return Err(ParseError {
                    position: at,
                    message: "multiplicity must be positive".into(),
                });
            }
            m as usize
        } else {
            1
        };
        multiset.insert(rat(numer, denom), mult);
        match scanner.peek() {
            None => break,
            Some(b',') => {
                scanner.bump();
                if scanner.peek().is_none() {
                    return Err(scanner.error_here("trailing comma"));
                }
            }
            Some(c) => {
                return Err(scanner.error_here(format!("unexpected character '{}'", c as char)));
            }
        }
    }
    Ok(multiset)
}
