//! A small arithmetic expression language for endpoint functions of `x` and
//! `alpha`.
//!
//! Grammar (standard precedence, `^` right-associative and binding tighter
//! than unary minus):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | 'x' | 'alpha' | func '(' expr ')' | '(' expr ')'
//! func   := sin | cos | ln | exp | sqrt | abs
//! ```

use std::fmt;

/// Syntax error with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Domain error during evaluation, reported with the offending subexpression.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("domain error in `{subexpr}`: {reason}")]
pub struct EvalError {
    pub subexpr: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Alpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Ln,
    Exp,
    Sqrt,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Ln => "ln",
            Func::Exp => "exp",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "ln" => Func::Ln,
            "exp" => Func::Exp,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Abstract syntax tree of an endpoint expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                let tok = match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                toks.push(Token { tok, offset: i });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let span = &text[start..i];
                let value: f64 = span.parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("invalid number literal `{span}`"),
                })?;
                toks.push(Token { tok: Tok::Num(value), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(ParseError {
                    offset: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// parser

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        // Offset reported for "ran out of input": the start of the last token
        // seen, so `(` alone reports offset 0.
        match self.toks.get(self.pos) {
            Some(t) => t.offset,
            None => self.toks.last().map_or(0, |t| t.offset),
        }
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(ParseError {
                offset: self.offset(),
                message: format!("expected {what}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            // right-associative; the exponent may carry a unary minus
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.bump().cloned() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var(Var::X)),
                "alpha" => Ok(Expr::Var(Var::Alpha)),
                _ => {
                    if let Some(func) = Func::from_name(&name) {
                        self.expect(Tok::LParen, &format!("`(` after function `{name}`"))?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "closing `)`")?;
                        Ok(Expr::Call(func, Box::new(arg)))
                    } else {
                        Err(ParseError {
                            offset,
                            message: format!("unknown identifier `{name}`"),
                        })
                    }
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            Some(other) => Err(ParseError {
                offset,
                message: format!("expected a value, found `{}`", tok_text(&other)),
            }),
            None => Err(ParseError {
                offset,
                message: "unexpected end of input".to_string(),
            }),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("{v}"),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Caret => "^".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

/// Parses an expression over `x` and `alpha`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError {
            offset: p.offset(),
            message: format!("unexpected trailing `{}`", tok_text(p.peek().unwrap())),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// evaluation

fn domain_error(e: &Expr, reason: String) -> EvalError {
    EvalError { subexpr: e.to_string(), reason }
}

/// IEEE double evaluation. Deterministic; domain problems (log/sqrt of a
/// negative, division by zero, fractional power of a negative base) are
/// reported with the offending subexpression.
pub fn eval(e: &Expr, x: f64, alpha: f64) -> Result<f64, EvalError> {
    match e {
        Expr::Num(v) => Ok(*v),
        Expr::Var(Var::X) => Ok(x),
        Expr::Var(Var::Alpha) => Ok(alpha),
        Expr::Neg(inner) => Ok(-eval(inner, x, alpha)?),
        Expr::Bin(op, a, b) => {
            let va = eval(a, x, alpha)?;
            let vb = eval(b, x, alpha)?;
            match op {
                BinOp::Add => Ok(va + vb),
                BinOp::Sub => Ok(va - vb),
                BinOp::Mul => Ok(va * vb),
                BinOp::Div => {
                    if vb == 0.0 {
                        Err(domain_error(e, "division by zero".into()))
                    } else {
                        Ok(va / vb)
                    }
                }
                BinOp::Pow => {
                    if va < 0.0 && vb.fract() != 0.0 {
                        Err(domain_error(
                            e,
                            format!("negative base {va} with non-integer exponent {vb}"),
                        ))
                    } else if va == 0.0 && vb < 0.0 {
                        Err(domain_error(e, format!("zero raised to negative power {vb}")))
                    } else {
                        Ok(va.powf(vb))
                    }
                }
            }
        }
        Expr::Call(func, arg) => {
            let v = eval(arg, x, alpha)?;
            match func {
                Func::Sin => Ok(v.sin()),
                Func::Cos => Ok(v.cos()),
                Func::Ln => {
                    if v <= 0.0 {
                        Err(domain_error(e, format!("ln of non-positive value {v}")))
                    } else {
                        Ok(v.ln())
                    }
                }
                Func::Exp => Ok(v.exp()),
                Func::Sqrt => {
                    if v < 0.0 {
                        Err(domain_error(e, format!("sqrt of negative value {v}")))
                    } else {
                        Ok(v.sqrt())
                    }
                }
                Func::Abs => Ok(v.abs()),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// printing

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(..) => 3,
        Expr::Bin(BinOp::Pow, ..) => 4,
        Expr::Num(..) | Expr::Var(..) | Expr::Call(..) => 5,
    }
}

fn fmt_prec(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let needs_parens = prec(e) < min;
    if needs_parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Num(v) => write!(f, "{v}")?,
        Expr::Var(Var::X) => write!(f, "x")?,
        Expr::Var(Var::Alpha) => write!(f, "alpha")?,
        Expr::Neg(inner) => {
            write!(f, "-")?;
            fmt_prec(inner, 3, f)?;
        }
        Expr::Bin(op, a, b) => {
            let (sym, lp, rp) = match op {
                BinOp::Add => ("+", 1, 2),
                BinOp::Sub => ("-", 1, 2),
                BinOp::Mul => ("*", 2, 3),
                BinOp::Div => ("/", 2, 3),
                BinOp::Pow => ("^", 5, 3),
            };
            fmt_prec(a, lp, f)?;
            write!(f, "{sym}")?;
            fmt_prec(b, rp, f)?;
        }
        Expr::Call(func, arg) => {
            write!(f, "{}(", func.name())?;
            fmt_prec(arg, 1, f)?;
            write!(f, ")")?;
        }
    }
    if needs_parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, 1, f)
    }
}
