//! Ideal-expression parsing and printing.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! ideal  := '(' term (',' term)* ')'
//! term   := '1' | factor (('*')? factor)*
//! factor := var ('^' positive-integer)?
//! ```
//!
//! `1` denotes the unit generator, so the unit ideal round-trips as
//! `(1)`. Unknown identifiers are rejected with their position.

use std::fmt;

use monofilt_core::{ExponentVector, MonomialIdeal};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A parsed expression together with its source and variable frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealExpression {
    pub source: String,
    pub vars: Vec<String>,
    pub ideal: MonomialIdeal,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, column: 1 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: self.column, message: message.into() }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.src.get(self.pos) {
            if c == b'\n' {
                self.line += 1;
                self.column = 1;
                self.pos += 1;
            } else if c.is_ascii_whitespace() {
                self.column += 1;
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        self.column += 1;
        Some(c)
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{}', found '{}'", want as char, c as char))),
            None => Err(self.error(format!("expected '{}', found end of input", want as char))),
        }
    }

    fn identifier(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphabetic() || c == b'_' || (self.pos > start && c.is_ascii_digit()) {
                self.pos += 1;
                self.column += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.error("expected a variable name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
            self.column += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| self.error(format!("exponent '{text}' overflows")))
    }
}

/// Parses `text` against the declared variable frame.
pub fn parse_ideal(text: &str, vars: &[String]) -> Result<MonomialIdeal, ParseError> {
    if vars.is_empty() {
        return Err(ParseError { line: 1, column: 1, message: "no variables declared".into() });
    }
    {
        let mut sorted = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(ParseError { line: 1, column: 1, message: "duplicate variable names".into() });
        }
    }
    let dim = vars.len();
    let mut lx = Lexer::new(text);
    lx.expect(b'(')?;
    let mut gens = Vec::new();
    loop {
        gens.push(parse_term(&mut lx, vars)?);
        match lx.peek() {
            Some(b',') => {
                lx.bump();
            }
            Some(b')') => {
                lx.bump();
                break;
            }
            Some(c) => return Err(lx.error(format!("expected ',' or ')', found '{}'", c as char))),
            None => return Err(lx.error("expected ',' or ')', found end of input")),
        }
    }
    if lx.peek().is_some() {
        return Err(lx.error("trailing input after closing ')'"));
    }
    MonomialIdeal::minimalize(gens, dim)
        .map_err(|e| ParseError { line: 1, column: 1, message: e.to_string() })
}

fn parse_term(lx: &mut Lexer<'_>, vars: &[String]) -> Result<ExponentVector, ParseError> {
    let mut exps = vec![0u64; vars.len()];
    // A bare `1` is the unit generator and takes no factors.
    if lx.peek() == Some(b'1') {
        lx.bump();
        return Ok(ExponentVector::new(exps));
    }
    loop {
        let (line, column) = {
            lx.skip_ws();
            (lx.line, lx.column)
        };
        let name = lx.identifier()?;
        let idx = vars.iter().position(|v| *v == name).ok_or(ParseError {
            line,
            column,
            message: format!("unknown variable '{name}'"),
        })?;
        let exp = if lx.peek() == Some(b'^') {
            lx.bump();
            let e = lx.number()?;
            if e == 0 {
                return Err(lx.error("exponent must be positive"));
            }
            e
        } else {
            1
        };
        exps[idx] = exps[idx]
            .checked_add(exp)
            .ok_or_else(|| lx.error("exponent overflows"))?;
        match lx.peek() {
            Some(b'*') => {
                lx.bump();
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
            _ => break,
        }
    }
    Ok(ExponentVector::new(exps))
}

/// Renders one exponent vector in the grammar, e.g. `x^2*y`.
pub fn print_monomial(e: &ExponentVector, vars: &[String]) -> String {
    let factors: Vec<String> = e
        .coords()
        .iter()
        .zip(vars)
        .filter(|(&c, _)| c > 0)
        .map(|(&c, v)| if c == 1 { v.clone() } else { format!("{v}^{c}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// Renders an ideal so that reparsing yields an identical value.
pub fn print_ideal(ideal: &MonomialIdeal, vars: &[String]) -> String {
    if ideal.is_zero() {
        return "(0)".to_string();
    }
    let terms: Vec<String> = ideal.gens().iter().map(|g| print_monomial(g, vars)).collect();
    format!("({})", terms.join(", "))
}

/// Variable frame inferred from the identifiers of an expression, in
/// order of first appearance.
pub fn infer_vars(text: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = String::from_utf8_lossy(&bytes[start..i]).into_owned();
            if !vars.contains(&name) {
                vars.push(name);
            }
        } else {
            i += 1;
        }
    }
    vars
}

pub fn default_vars(dim: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
    (0..dim)
        .map(|i| NAMES.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn ev(coords: &[u64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    #[test]
    fn parses_fixture_inputs() {
        let i = parse_ideal("(x^2, y^2)", &vars(&["x", "y"])).unwrap();
        assert_eq!(i.gens(), &[ev(&[0, 2]), ev(&[2, 0])]);

        let i = parse_ideal("(x^3, x^2*y, y^3)", &vars(&["x", "y"])).unwrap();
        assert_eq!(i.gens(), &[ev(&[0, 3]), ev(&[2, 1]), ev(&[3, 0])]);

        // '*' is optional between factors.
        let j = parse_ideal("( x^3 , x^2 y , y^3 )", &vars(&["x", "y"])).unwrap();
        assert_eq!(i, j);
    }

    #[test]
    fn minimalizes_on_parse() {
        let i = parse_ideal("(x, x^2)", &vars(&["x", "y"])).unwrap();
        assert_eq!(i.gens(), &[ev(&[1, 0])]);
    }

    #[test]
    fn repeated_variables_multiply() {
        let i = parse_ideal("(x*y*x)", &vars(&["x", "y"])).unwrap();
        assert_eq!(i.gens(), &[ev(&[2, 1])]);
    }

    #[test]
    fn unit_generator() {
        let i = parse_ideal("(1)", &vars(&["x", "y"])).unwrap();
        assert!(i.is_unit());
        assert_eq!(print_ideal(&i, &vars(&["x", "y"])), "(1)");
    }

    #[test]
    fn error_positions() {
        let e = parse_ideal("(x^2, z)", &vars(&["x", "y"])).unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        assert!(e.message.contains("unknown variable 'z'"));

        let e = parse_ideal("(x^0)", &vars(&["x", "y"])).unwrap_err();
        assert!(e.message.contains("positive"));

        let e = parse_ideal("(x^2", &vars(&["x", "y"])).unwrap_err();
        assert!(e.message.contains("end of input"));

        let e = parse_ideal("(x^99999999999999999999)", &vars(&["x"])).unwrap_err();
        assert!(e.message.contains("overflow"));

        let e = parse_ideal("(x,\n  q^2)", &vars(&["x", "y"])).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn print_parse_round_trip() {
        let frame = vars(&["x", "y", "z"]);
        for src in ["(x^2, y^2)", "(x^3, x^2*y, y^3)", "(x*y*z)", "(x^4, x^3*y, x*y^3, y^4)"] {
            let i = parse_ideal(src, &frame).unwrap();
            let printed = print_ideal(&i, &frame);
            assert_eq!(parse_ideal(&printed, &frame).unwrap(), i, "{src} -> {printed}");
        }
    }

    #[test]
    fn infers_vars_in_order() {
        assert_eq!(infer_vars("(y^2, x*y)"), vars(&["y", "x"]));
    }
}
