//! Algebraic normal forms and the expression grammar for entering them.
//!
//! An expression is an XOR of terms; a term is the constant `0`, the
//! constant `1`, or a product of factors `vN` / `~vN` joined by `*`, `·`
//! or plain juxtaposition.  XOR may be written `^`, `⊕` or `+`, and
//! whitespace is ignored: `"v1*v2 ^ ~v3 v4 + 1"` is a valid expression.
//! Digits after `v` are read greedily, so `v12` is variable twelve.

use std::collections::BTreeSet;
use std::fmt;

/// A syntax error, with the byte offset it occurred at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseAnfError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseAnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expression parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseAnfError {}

/// One parsed term; variables are 1-based indices, range-checked by the
/// caller against its variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Term {
    Zero,
    One,
    Product { pos: Vec<u32>, neg: Vec<u32> },
}

pub(crate) fn parse_expression(src: &str) -> Result<Vec<Term>, ParseAnfError> {
    Parser { chars: src.char_indices().collect(), len: src.len(), i: 0 }.parse()
}

struct Parser {
    chars: Vec<(usize, char)>,
    len: usize,
    i: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.i).map_or(self.len, |&(p, _)| p)
    }

    fn bump(&mut self) {
        self.i += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseAnfError {
        ParseAnfError { pos: self.pos(), msg: msg.into() }
    }

    fn parse(mut self) -> Result<Vec<Term>, ParseAnfError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        let mut terms = vec![self.term()?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some('^') | Some('⊕') | Some('+') => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Some(c) => {
                    return Err(self.error(format!("expected '^', '⊕' or '+', found {c:?}")))
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseAnfError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("expected a term")),
            Some('0') => {
                self.bump();
                Ok(Term::Zero)
            }
            Some('1') => {
                self.bump();
                Ok(Term::One)
            }
            Some('~') | Some('¬') | Some('v') => {
                let mut pos = Vec::new();
                let mut neg = Vec::new();
                self.factor(&mut pos, &mut neg)?;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some('*') | Some('·') => {
                            self.bump();
                            self.factor(&mut pos, &mut neg)?;
                        }
                        Some('~') | Some('¬') | Some('v') => {
                            self.factor(&mut pos, &mut neg)?;
                        }
                        _ => return Ok(Term::Product { pos, neg }),
                    }
                }
            }
            Some(c) => Err(self.error(format!("expected a term, found {c:?}"))),
        }
    }

    fn factor(&mut self, pos: &mut Vec<u32>, neg: &mut Vec<u32>) -> Result<(), ParseAnfError> {
        self.skip_ws();
        let negated = matches!(self.peek(), Some('~') | Some('¬'));
        if negated {
            self.bump();
            self.skip_ws();
        }
        if self.peek() != Some('v') {
            return Err(self.error("expected a variable 'vN'"));
        }
        self.bump();
        let mut value: u64 = 0;
        let mut digits = 0usize;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = value * 10 + d as u64;
            if value > 10_000 {
                return Err(self.error("variable index too large"));
            }
            digits += 1;
            self.bump();
        }
        if digits == 0 {
            return Err(self.error("expected digits after 'v'"));
        }
        if negated { neg } else { pos }.push(value as u32);
        Ok(())
    }
}

/// The algebraic normal form of a Boolean function: the set of monomials
/// (as variable bitmasks, bit `i - 1` for `v_i`) whose XOR equals the
/// function.  The mask 0 is the constant-1 term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnfPolynomial {
    m: u32,
    masks: Vec<u32>, // ascending
}

impl AnfPolynomial {
    pub(crate) fn from_masks(m: u32, masks: Vec<u32>) -> Self {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        AnfPolynomial { m, masks }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Monomial masks in ascending order.
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    /// Number of monomials.
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// The algebraic degree (largest monomial size; 0 for constants).
    pub fn degree(&self) -> u32 {
        self.masks.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// `Some(sorted variable list)` when the form is exactly one monomial;
    /// the constant 1 yields an empty list, the zero function `None`.
    pub fn as_monomial(&self) -> Option<Vec<u32>> {
        if self.masks.len() != 1 {
            return None;
        }
        let mask = self.masks[0];
        Some((1..=self.m).filter(|i| (mask >> (i - 1)) & 1 == 1).collect())
    }

    /// The variables each monomial uses, as a set union.
    pub fn variables(&self) -> BTreeSet<u32> {
        let union = self.masks.iter().fold(0u32, |acc, m| acc | m);
        (1..=self.m).filter(|i| (union >> (i - 1)) & 1 == 1).collect()
    }
}

impl fmt::Display for AnfPolynomial {
    /// Prints a form that [`super::BooleanFunction::from_anf`] parses back:
    /// `"v1 ^ v1*v2 ^ v3"`, with `"0"` and `"1"` for the constants.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.masks.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &mask in &self.masks {
            if !first {
                write!(f, " ^ ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "1")?;
            } else {
                let mut sep = "";
                for i in 1..=self.m {
                    if (mask >> (i - 1)) & 1 == 1 {
                        write!(f, "{sep}v{i}")?;
                        sep = "*";
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(pos: &[u32], neg: &[u32]) -> Term {
        Term::Product { pos: pos.to_vec(), neg: neg.to_vec() }
    }

    #[test]
    fn parses_terms_and_operators() {
        assert_eq!(
            parse_expression("v1*v2 ^ ~v3 v4 + 1").unwrap(),
            vec![product(&[1, 2], &[]), product(&[4], &[3]), Term::One]
        );
        assert_eq!(parse_expression(" 0 ").unwrap(), vec![Term::Zero]);
        assert_eq!(
            parse_expression("v2·¬v10 ⊕ v1").unwrap(),
            vec![product(&[2], &[10]), product(&[1], &[])]
        );
    }

    #[test]
    fn greedy_digits() {
        assert_eq!(parse_expression("v12").unwrap(), vec![product(&[12], &[])]);
        assert_eq!(parse_expression("v1 v2").unwrap(), vec![product(&[1, 2], &[])]);
    }

    #[test]
    fn reports_positions() {
        let e = parse_expression("v1 & v2").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(e.msg.contains("expected '^'"));
        let e = parse_expression("v1 ^ ").unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_expression("v1 * 2").unwrap_err();
        assert!(e.msg.contains("expected a variable"));
        let e = parse_expression("vx").unwrap_err();
        assert!(e.msg.contains("digits"));
        let e = parse_expression("").unwrap_err();
        assert!(e.msg.contains("empty"));
        let e = parse_expression("~1").unwrap_err();
        assert!(e.msg.contains("variable"));
    }

    #[test]
    fn polynomial_display() {
        let p = AnfPolynomial::from_masks(3, vec![0b001, 0b011, 0b100]);
        assert_eq!(p.to_string(), "v1 ^ v1*v2 ^ v3");
        assert_eq!(p.degree(), 2);
        assert_eq!(AnfPolynomial::from_masks(3, vec![]).to_string(), "0");
        assert_eq!(AnfPolynomial::from_masks(3, vec![0]).to_string(), "1");
        assert_eq!(
            AnfPolynomial::from_masks(3, vec![0]).as_monomial(),
            Some(vec![])
        );
        assert_eq!(
            AnfPolynomial::from_masks(3, vec![0b110]).as_monomial(),
            Some(vec![2, 3])
        );
        assert_eq!(AnfPolynomial::from_masks(3, vec![0b1, 0b10]).as_monomial(), None);
    }
}
