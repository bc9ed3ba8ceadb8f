//! Expressions for polynomial forms and multivector fields: `x1`, `dx1` or
//! `@1` (for `∂₁`), rational literals, `+ - * ^` and parentheses. `^` followed
//! by an integer is a power, otherwise it is the wedge product.

use bvinf::polygeom::SuperPoly;
use bvinf::Rational;

use crate::schema::parse_rational;
use crate::CliError;

/// Which token names the odd generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddSymbol {
    /// `dx1, dx2, …`: differential forms.
    Differential,
    /// `@1, @2, …`: multivector fields.
    Partial,
}

impl OddSymbol {
    pub fn prefix(self) -> &'static str {
        match self {
            OddSymbol::Differential => "dx",
            OddSymbol::Partial => "@",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Even(usize),
    Odd(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Open,
    Close,
}

fn tokenize(s: &str, odd: OddSymbol) -> Result<Vec<Token>, CliError> {
    let err = |msg: String| CliError::Input(format!("in expression {s:?}: {msg}"));
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let index = |i: &mut usize| -> Result<usize, CliError> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        let digits: String = chars[start..*i].iter().collect();
        match digits.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(err(format!(
                "expected a coordinate index ≥ 1 at position {start}"
            ))),
        }
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '^' => Token::Caret,
                    '/' => Token::Slash,
                    '(' => Token::Open,
                    _ => Token::Close,
                });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Number(chars[start..i].iter().collect()));
            }
            'x' => {
                i += 1;
                out.push(Token::Even(index(&mut i)?));
            }
            'd' if odd == OddSymbol::Differential && chars.get(i + 1) == Some(&'x') => {
                i += 2;
                out.push(Token::Odd(index(&mut i)?));
            }
            '@' if odd == OddSymbol::Partial => {
                i += 1;
                out.push(Token::Odd(index(&mut i)?));
            }
            _ => return Err(err(format!("unexpected character {c:?} at position {i}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    nvars: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CliError {
        CliError::Input(format!("in expression {:?}: {msg}", self.source))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<SuperPoly<Rational>, CliError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                self.product()?.neg()
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<SuperPoly<Rational>, CliError> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Token::Star | Token::Caret)) {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SuperPoly<Rational>, CliError> {
        let mut out = self.atom()?;
        while self.peek() == Some(&Token::Caret)
            && matches!(self.tokens.get(self.pos + 1), Some(Token::Number(_)))
        {
            let Some(Token::Number(e)) = self.tokens.get(self.pos + 1).cloned() else {
                unreachable!()
            };
            self.pos += 2;
            let e: u32 = e.parse().map_err(|_| self.err("exponent too large"))?;
            if e > 64 {
                return Err(self.err("exponent too large"));
            }
            let base = out;
            out = (0..e).fold(SuperPoly::one(self.nvars), |acc, _| acc.mul(&base));
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<SuperPoly<Rational>, CliError> {
        match self.next() {
            Some(Token::Number(n)) => {
                let mut text = n;
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(d)) => text = format!("{text}/{d}"),
                        _ => return Err(self.err("expected a denominator after '/'")),
                    }
                }
                Ok(SuperPoly::constant(self.nvars, parse_rational(&text)?))
            }
            Some(Token::Even(i)) if i < self.nvars => Ok(SuperPoly::x(self.nvars, i)),
            Some(Token::Odd(i)) if i < self.nvars => Ok(SuperPoly::theta(self.nvars, i)),
            Some(Token::Even(i) | Token::Odd(i)) => Err(self.err(&format!(
                "coordinate {} exceeds the dimension {}",
                i + 1,
                self.nvars
            ))),
            Some(Token::Minus) => Ok(self.power()?.neg()),
            Some(Token::Open) => {
                let inner = self.sum()?;
                match self.next() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(self.err("unbalanced parentheses")),
                }
            }
            _ => Err(self.err("unexpected end or operator")),
        }
    }
}

pub fn parse_expression(
    s: &str,
    nvars: usize,
    odd: OddSymbol,
) -> Result<SuperPoly<Rational>, CliError> {
    let tokens = tokenize(s, odd)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        nvars,
        source: s,
    };
    let out = p.sum()?;
    if p.pos != tokens.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub fn render(p: &SuperPoly<Rational>, odd: OddSymbol) -> String {
    p.render(odd.prefix())
}
