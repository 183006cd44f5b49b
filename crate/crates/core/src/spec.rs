//! The ring-spec mini-language.
//!
//! ```text
//! spec   := factor ('x' factor)*
//! factor := 'Z' int
//!         | 'T' int '(' spec ')'
//!         | 'Id' '(' int ',' int ')'
//!         | 'MZ' '(' int ',' int ',' int ')'
//!         | 'Q' '(' spec ';' '[' [int (',' int)*] ']' ')'
//!         | 'C' '(' spec ';' int ')'
//!         | '(' spec ')'
//! ```
//!
//! Whitespace between tokens is ignored. Printing is canonical (no spaces,
//! nested products parenthesized) and parses back to the same value.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zmod(usize),
    Product(Vec<RingSpec>),
    Tri(usize, Box<RingSpec>),
    Idealization(usize, usize),
    MoritaZero(usize, usize, usize),
    Quotient(Box<RingSpec>, Vec<usize>),
    Corner(Box<RingSpec>, usize),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<RingSpec> {
        let mut p = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            len: text.len(),
        };
        let spec = p.spec()?;
        p.skip_ws();
        if let Some(&(at, c)) = p.chars.get(p.pos) {
            return Err(Error::Parse {
                position: at,
                message: format!("unexpected '{c}'"),
            });
        }
        Ok(spec)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z{n}"),
            RingSpec::Product(parts) => {
                for (k, p) in parts.iter().enumerate() {
                    if k > 0 {
                        f.write_str("x")?;
                    }
                    if matches!(p, RingSpec::Product(_)) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            RingSpec::Tri(n, base) => write!(f, "T{n}({base})"),
            RingSpec::Idealization(n, m) => write!(f, "Id({n},{m})"),
            RingSpec::MoritaZero(a, b, g) => write!(f, "MZ({a},{b},{g})"),
            RingSpec::Quotient(base, gens) => {
                let g: Vec<String> = gens.iter().map(|x| x.to_string()).collect();
                write!(f, "Q({base};[{}])", g.join(","))
            }
            RingSpec::Corner(base, e) => write!(f, "C({base};{e})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RingSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(at, _)| at)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.chars.get(self.pos), Some((_, c)) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let digits: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        match digits.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.error("integer too large")
            }
        }
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let first = self.factor()?;
        let mut parts = vec![first];
        while self.eat('x') {
            parts.push(self.factor()?);
        }
        if parts.len() == 1 {
            Ok(parts.pop().unwrap())
        } else {
            Ok(RingSpec::Product(parts))
        }
    }

    fn factor(&mut self) -> Result<RingSpec> {
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                Ok(RingSpec::Zmod(self.int()?))
            }
            Some('T') => {
                self.pos += 1;
                let n = self.int()?;
                self.expect('(')?;
                let base = self.spec()?;
                self.expect(')')?;
                Ok(RingSpec::Tri(n, Box::new(base)))
            }
            Some('I') => {
                self.pos += 1;
                self.expect('d')?;
                self.expect('(')?;
                let n = self.int()?;
                self.expect(',')?;
                let m = self.int()?;
                self.expect(')')?;
                Ok(RingSpec::Idealization(n, m))
            }
            Some('M') => {
                self.pos += 1;
                self.expect('Z')?;
                self.expect('(')?;
                let a = self.int()?;
                self.expect(',')?;
                let b = self.int()?;
                self.expect(',')?;
                let g = self.int()?;
                self.expect(')')?;
                Ok(RingSpec::MoritaZero(a, b, g))
            }
            Some('Q') => {
                self.pos += 1;
                self.expect('(')?;
                let base = self.spec()?;
                self.expect(';')?;
                self.expect('[')?;
                let mut gens = Vec::new();
                if !self.eat(']') {
                    loop {
                        gens.push(self.int()?);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                self.expect(')')?;
                Ok(RingSpec::Quotient(Box::new(base), gens))
            }
            Some('C') => {
                self.pos += 1;
                self.expect('(')?;
                let base = self.spec()?;
                self.expect(';')?;
                let e = self.int()?;
                self.expect(')')?;
                Ok(RingSpec::Corner(Box::new(base), e))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.spec()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }
}
