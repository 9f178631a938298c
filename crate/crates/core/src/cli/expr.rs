//! Expression syntax for modules and functors: `name` or `head(arg, ...)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub head: String,
    pub args: Vec<Expr>,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn is_atom(&self) -> bool {
        self.args.is_empty()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && !b"(), \t\n".contains(&self.s[self.pos]) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a name"));
        }
        let head = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
        self.skip_ws();
        let mut args = Vec::new();
        if self.s.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            loop {
                args.push(self.expr()?);
                self.skip_ws();
                match self.s.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        Ok(Expr { head, args })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested() {
        let e = Expr::parse("w2( ext(Tr(op(S))) )").unwrap();
        assert_eq!(e.to_string(), "w2(ext(Tr(op(S))))");
        let c = Expr::parse("cok(S, L, 0)").unwrap();
        assert_eq!(c.args.len(), 3);
        assert!(c.args[2].is_atom());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "f(", "f(a,)", "f(a) b", "(a)"] {
            assert!(Expr::parse(bad).is_err(), "{bad}");
        }
    }
}
