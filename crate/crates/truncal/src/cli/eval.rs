use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::parse::Expr;
use crate::error::{Error, Result};
use crate::operators::solve_linear;
use crate::rational::{qi, Q};
use crate::texp::{
    antiderivative, derive_exact, shift, splits, texp_derive, texp_exp, texp_log, SplitReport, TSeries, TowerConfig,
    TowerDerivation, TransMonomial, Transseries,
};

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Series(Transseries),
    Splits(SplitReport),
    Set(Vec<Transseries>),
}

fn xp(k: i64) -> Transseries {
    Transseries::x().monomial_pow(&qi(k)).unwrap()
}

fn inv(m: &Transseries) -> Transseries {
    m.monomial_pow(&-Q::one()).expect("monomial")
}

fn div(a: &Transseries, b: &Transseries) -> Transseries {
    a.mul(&inv(b))
}

fn min(a: Transseries, b: Transseries) -> Transseries {
    if a.dominance(&b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn max(a: Transseries, b: Transseries) -> Transseries {
    if a.dominance(&b) == Ordering::Less {
        b
    } else {
        a
    }
}

/// `max(1, 𝔡(v))`.
fn big(v: &Transseries) -> Transseries {
    v.dominant().map_or(Transseries::one(), |d| max(d, Transseries::one()))
}

fn integer_arg(e: &Expr) -> Result<i32> {
    let q = match e {
        Expr::Num(q) => q.clone(),
        Expr::Neg(inner) => match &**inner {
            Expr::Num(q) => -q.clone(),
            _ => return Err(Error::domain("expected an integer")),
        },
        _ => return Err(Error::domain("expected an integer")),
    };
    if !q.is_integer() {
        return Err(Error::domain("expected an integer"));
    }
    q.to_integer().to_i32().ok_or_else(|| Error::domain("integer out of range"))
}

/// Evaluates expressions so that every term `≽` the requested cutoff is exact.
pub struct Evaluator {
    pub tower: TowerConfig,
}

impl Evaluator {
    pub fn value(&self, e: &Expr, cut: &Transseries) -> Result<Value> {
        match e {
            Expr::Call(f, args) if f == "splits" => {
                let [Expr::Set(items)] = args.as_slice() else {
                    return Err(Error::domain("splits takes one set {m, ...}"));
                };
                let ms = items.iter().map(|i| self.series(i, cut)).collect::<Result<Vec<_>>>()?;
                Ok(Value::Splits(splits(&ms)?))
            }
            Expr::Set(items) => Ok(Value::Set(items.iter().map(|i| self.series(i, cut)).collect::<Result<_>>()?)),
            _ => Ok(Value::Series(self.series(e, cut)?)),
        }
    }

    /// The value of `e`, exact above `cut`; terms below `cut` may be missing or wrong.
    pub fn series(&self, e: &Expr, cut: &Transseries) -> Result<Transseries> {
        let coarse = min(cut.clone(), Transseries::one());
        let at = |p: Transseries| min(p, coarse.clone());
        match e {
            Expr::Num(q) => Ok(Transseries::constant(q.clone())),
            Expr::Var(v) => self.var(v),
            Expr::Neg(a) => Ok(self.series(a, cut)?.neg()),
            Expr::Add(a, b) => Ok(self.series(a, cut)?.add(&self.series(b, cut)?)),
            Expr::Sub(a, b) => Ok(self.series(a, cut)?.sub(&self.series(b, cut)?)),
            Expr::Mul(a, b) => {
                let (ga, gb) = (big(&self.series(a, &coarse)?), big(&self.series(b, &coarse)?));
                let va = self.series(a, &at(div(cut, &gb)))?;
                let vb = self.series(b, &at(div(cut, &ga)))?;
                va.mul(&vb).above(cut)
            }
            Expr::Div(a, b) => {
                let db = self.dominant(b, &coarse)?.ok_or(Error::DivisionByZero)?;
                let va = self.series(a, &at(cut.mul(&db)))?;
                let Some(da) = va.dominant() else { return Ok(Transseries::zero()) };
                let vb = self.series(b, &at(div(&cut.mul(&db).mul(&db), &da)))?;
                va.divide(&vb, cut)?.above(cut)
            }
            Expr::Pow(a, r) => self.pow(a, r, cut),
            Expr::Call(f, args) => self.call(f, args, cut),
            Expr::Set(_) => Err(Error::domain("a set is not a series")),
        }
    }

    /// Dominant monomial of `e`, looking below `coarse` when nothing lies above it.
    fn dominant(&self, e: &Expr, coarse: &Transseries) -> Result<Option<Transseries>> {
        let far = |a: TSeries| Transseries::monomial(TransMonomial::exp_of(a.neg()));
        let x16 = TSeries::monomial(TransMonomial::x_pow(qi(16)));
        let probes = [coarse.clone(), far(x16.clone()), far(TSeries::monomial(TransMonomial::exp_of(x16)))];
        for p in &probes {
            if let Some(d) = self.series(e, p)?.dominant() {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    fn var(&self, v: &str) -> Result<Transseries> {
        match v {
            "x" => Ok(Transseries::x()),
            "t" => Ok(Transseries::t()),
            _ => {
                let n: u32 = v[1..].parse().map_err(|_| Error::domain(format!("bad name {v}")))?;
                if n > self.tower.max_depth {
                    return Err(Error::budget(format!("ℓ{n} exceeds depth {}", self.tower.max_depth)));
                }
                Ok(Transseries::ell(n))
            }
        }
    }

    fn pow(&self, a: &Expr, r: &Q, cut: &Transseries) -> Result<Transseries> {
        let coarse = min(cut.clone(), Transseries::one());
        let at = |p: Transseries| min(p, coarse.clone());
        if r.is_zero() {
            return Ok(Transseries::one());
        }
        if r.is_integer() && r.is_negative() {
            let e = Expr::Div(Box::new(Expr::Num(Q::one())), Box::new(Expr::Pow(Box::new(a.clone()), -r.clone())));
            return self.series(&e, cut);
        }
        let Some(d) = self.dominant(a, &coarse)? else {
            return if r.is_positive() { Ok(Transseries::zero()) } else { Err(Error::DivisionByZero) };
        };
        let v0 = self.series(a, &min(d.clone(), coarse.clone()))?;
        if r.is_integer() {
            let k = r.to_integer().to_u32().ok_or_else(|| Error::budget("exponent too large"))?;
            let dk = |j: u32| d.monomial_pow(&qi(j as i64));
            let v = self.series(a, &at(div(cut, &dk(k - 1)?)))?;
            let mut acc = v.clone();
            for i in 1..k {
                acc = acc.mul_cut(&v, &at(div(cut, &dk(k - 1 - i)?)))?;
            }
            return acc.above(cut);
        }
        if !v0.leading_coefficient().unwrap().is_one() {
            return Err(Error::domain("fractional power of a series with leading coefficient other than 1"));
        }
        let dr = d.monomial_pow(r)?;
        let p = div(cut, &dr);
        let v = self.series(a, &at(p.mul(&d)))?;
        let one_eps = div(&v, &d);
        let l = texp_log(&one_eps, &p, &self.tower)?;
        let e = texp_exp(&l.scale(r), &p, &self.tower)?;
        e.mul(&dr).above(cut)
    }

    fn arity(f: &str, args: &[Expr], n: usize) -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Syntax { pos: 0, msg: format!("{f} takes {n} argument(s), got {}", args.len()) })
        }
    }

    fn call(&self, f: &str, args: &[Expr], cut: &Transseries) -> Result<Transseries> {
        let coarse = min(cut.clone(), Transseries::one());
        let at = |p: Transseries| min(p, coarse.clone());
        let cfg = &self.tower;
        match f {
            "exp" => {
                Self::arity(f, args, 1)?;
                let (large, _, _) = self.series(&args[0], &coarse)?.decompose();
                let m = Transseries::new(large.depth(), TSeries::monomial(TransMonomial::exp_of(large.body().clone())));
                let v = self.series(&args[0], &at(div(cut, &m)))?;
                texp_exp(&v, cut, cfg)?.above(cut)
            }
            "log" => {
                Self::arity(f, args, 1)?;
                let d = self.dominant(&args[0], &coarse)?.ok_or_else(|| Error::domain("log of 0"))?;
                let v = self.series(&args[0], &at(cut.mul(&d)))?;
                texp_log(&v, cut, cfg)?.above(cut)
            }
            "diff" => {
                Self::arity(f, args, 1)?;
                let v0 = self.series(&args[0], &coarse)?;
                let b = v0.support().iter().fold(Transseries::one(), |acc, m| {
                    let c = div(&derive_exact(m), m);
                    max(acc, big(&c))
                });
                let v = self.series(&args[0], &at(div(cut, &b.mul(&xp(1)))))?;
                texp_derive(&v, cut)
            }
            "int" => {
                Self::arity(f, args, 1)?;
                let v = self.series(&args[0], &at(cut.mul(&xp(-2))))?;
                antiderivative(&v, cut, cfg)?.above(cut)
            }
            "truncate" => {
                Self::arity(f, args, 2)?;
                let m = self.series(&args[1], &coarse)?;
                if !m.is_monomial() {
                    return Err(Error::domain(format!("truncation point {m} is not a monomial")));
                }
                self.series(&args[0], cut)?.truncate(&m)
            }
            "solve" => {
                Self::arity(f, args, 2)?;
                let f0 = self.series(&args[1], &coarse)?;
                let b = f0.support().iter().fold(Transseries::one(), |acc, m| max(acc, big(&div(&derive_exact(m), m))));
                let fd = f0.dominant().unwrap_or_else(Transseries::one);
                let a = self.series(&args[0], &at(div(cut, &fd.mul(&b).mul(&xp(1)))))?;
                let fv = self.series(&args[1], cut)?;
                let n = a.depth().max(fv.depth()).max(cut.depth());
                let y = solve_linear(&a.body_at(n), &fv.body_at(n), &TowerDerivation { depth: n }, &cut.monomial_at(n)?)?;
                Ok(Transseries::new(n, y))
            }
            "shift" => {
                Self::arity(f, args, 2)?;
                let k = integer_arg(&args[1])?;
                let wide = TowerConfig { max_height: u32::MAX, max_depth: u32::MAX };
                let c = shift(cut, -k, &wide)?;
                let v = self.series(&args[0], &c)?;
                shift(&v, k, cfg)?.above(cut)
            }
            "splits" => Err(Error::domain("splits is a predicate, not a series")),
            _ => Err(Error::Syntax { pos: 0, msg: format!("unknown function {f}") }),
        }
    }
}
