use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};

pub const FUNCS: [&str; 8] = ["exp", "log", "diff", "int", "truncate", "solve", "shift", "splits"];

/// Abstract syntax of the expression language.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Q),
    /// `x`, `t` or `lN`.
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Q),
    Call(String, Vec<Expr>),
    Set(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let cs: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].1.is_ascii_digit() {
                i += 1;
            }
            out.push((pos, Tok::Num(cs[start..i].iter().map(|p| p.1).collect())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].1.is_alphanumeric() || cs[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(cs[start..i].iter().map(|p| p.1).collect())));
        } else if "+-*/^(),{}".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let a = self.atom()?;
        if self.eat('^') {
            let r = self.exponent()?;
            return Ok(Expr::Pow(Box::new(a), r));
        }
        Ok(a)
    }

    /// `-? n`, or `(-? n (/ n)?)` for a fractional exponent.
    fn exponent(&mut self) -> Result<Q> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let mut text = match self.peek() {
            Some(Tok::Num(n)) => n.clone(),
            _ => return self.err("expected a rational exponent"),
        };
        self.i += 1;
        if paren {
            if self.eat('/') {
                match self.peek() {
                    Some(Tok::Num(d)) => text = format!("{text}/{d}"),
                    _ => return self.err("expected a denominator"),
                }
                self.i += 1;
            }
            self.expect(')')?;
        }
        match parse_q(&text) {
            Some(r) if neg => Ok(-r),
            Some(r) => Ok(r),
            None => self.err("zero denominator"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(parse_q(&n).unwrap()))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('{')) => {
                self.i += 1;
                let items = self.list('}')?;
                Ok(Expr::Set(items))
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                self.i += 1;
                if FUNCS.contains(&name.as_str()) {
                    self.expect('(')?;
                    let args = self.list(')')?;
                    return Ok(Expr::Call(name, args));
                }
                if is_var(&name) {
                    Ok(Expr::Var(name))
                } else {
                    Err(Error::Syntax { pos, msg: format!("unknown name '{name}'") })
                }
            }
            Some(_) => self.err("expected an operand"),
            None => self.err("unexpected end of input"),
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<Expr>> {
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(',')?;
        }
    }
}

fn is_var(name: &str) -> bool {
    name == "x" || name == "t" || name.strip_prefix('l').is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

/// Parses a whole expression.
pub fn parse_expr(input: &str) -> Result<Expr> {
    let toks = lex(input)?;
    let mut p = Parser { toks, i: 0, end: input.len() };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses comma-separated expressions, as in command arguments.
pub fn parse_args(input: &str) -> Result<Vec<Expr>> {
    let toks = lex(input)?;
    let mut p = Parser { toks, i: 0, end: input.len() };
    let mut items = vec![p.expr()?];
    while p.eat(',') {
        items.push(p.expr()?);
    }
    if p.i < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(items)
}
