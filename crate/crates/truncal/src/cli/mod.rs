//! Expression language, formatting, dumps and the command surface of the `truncal` binary.

mod dump;
mod eval;
mod parse;

pub use dump::{dump, load};
pub use eval::{Evaluator, Value};
pub use parse::{parse_args, parse_expr, Expr, FUNCS};

use crate::closure::{
    differential_closure, liouville_close, truncation_closure, verify_truncation_closed, ClosureBudget, GeneratorSet,
    Kind,
};
use crate::error::{Error, Result};
use crate::rational::qi;
use crate::texp::{TSeries, TowerConfig, TransMonomial, Transseries};

pub const DEFAULT_CUTOFF: &str = "x^-6";

/// Words accepted at the start of a command line.
pub const COMMANDS: [&str; 11] = ["diff", "int", "exp", "log", "solve", "trunc", "truncate", "splits", "close", "verify", "shift"];

/// Closure limits as given on the command line, e.g. `rounds=2,generators=100`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetSpec {
    pub rounds: u32,
    pub generators: usize,
    pub solver_calls: usize,
    pub degree: u32,
    pub samples: usize,
    pub roots: u32,
}

impl Default for BudgetSpec {
    fn default() -> Self {
        BudgetSpec { rounds: 1, generators: 200, solver_calls: 200, degree: 2, samples: 60, roots: 1 }
    }
}

impl std::str::FromStr for BudgetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut b = BudgetSpec::default();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::Syntax { pos: 0, msg: format!("expected key=value in '{item}'") })?;
            let n: usize = v.trim().parse().map_err(|_| Error::Syntax { pos: 0, msg: format!("bad number in '{item}'") })?;
            if n == 0 {
                return Err(Error::Precondition(format!("budget '{k}' must be positive")));
            }
            match k.trim() {
                "rounds" => b.rounds = n as u32,
                "generators" => b.generators = n,
                "solver" => b.solver_calls = n,
                "degree" => b.degree = n as u32,
                "samples" => b.samples = n,
                "roots" => b.roots = n as u32,
                other => return Err(Error::Syntax { pos: 0, msg: format!("unknown budget key '{other}'") }),
            }
        }
        Ok(b)
    }
}

/// Everything a command needs besides its own text.
#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub cutoff: Transseries,
    pub tower: TowerConfig,
    pub budget: BudgetSpec,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { cutoff: parse_cutoff(DEFAULT_CUTOFF).unwrap(), tower: TowerConfig::default(), budget: BudgetSpec::default() }
    }
}

impl SessionConfig {
    pub fn new(cutoff: &str, height: u32, depth: u32) -> Result<Self> {
        if height == 0 {
            return Err(Error::Precondition("height budget must be positive".into()));
        }
        let tower = TowerConfig { max_height: height, max_depth: depth };
        Ok(SessionConfig { cutoff: parse_cutoff(cutoff)?, tower, budget: BudgetSpec::default() })
    }

    pub fn evaluator(&self) -> Evaluator {
        Evaluator { tower: self.tower }
    }

    pub fn closure_budget(&self) -> ClosureBudget {
        let mut b = ClosureBudget::new(self.cutoff.clone());
        b.max_depth = self.tower.max_depth;
        b.max_height = self.tower.max_height;
        b.rounds = self.budget.rounds;
        b.max_generators = self.budget.generators;
        b.max_solver_calls = self.budget.solver_calls;
        b.verify_degree = self.budget.degree;
        b.verify_samples = self.budget.samples;
        b.root_degree = self.budget.roots;
        b
    }
}

/// A cutoff must evaluate exactly to a monomial.
pub fn parse_cutoff(s: &str) -> Result<Transseries> {
    let e = parse_expr(s)?;
    let fine = Transseries::monomial(TransMonomial::exp_of(TSeries::term(qi(-1), TransMonomial::x_pow(qi(16)))));
    let v = Evaluator { tower: TowerConfig { max_height: u32::MAX, max_depth: u32::MAX } }.series(&e, &fine)?;
    if v.is_monomial() && v.leading_coefficient().is_some_and(|c| c == num_traits::One::one()) {
        Ok(v)
    } else {
        Err(Error::domain(format!("cutoff {s} is not a monomial")))
    }
}

/// Canonical text of a series: `≻`-descending, parseable back.
pub fn format_value(v: &Transseries) -> String {
    v.to_string()
}

fn format_result(v: &Value) -> String {
    match v {
        Value::Series(s) => format_value(s),
        Value::Splits(r) => match &r.witness {
            None => "true".into(),
            Some(w) => format!("false (witness: {w})"),
        },
        Value::Set(items) => {
            let parts: Vec<String> = items.iter().map(format_value).collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

/// Evaluates `e` at the session cutoff and notes whether anything was cut off.
pub fn evaluate(cfg: &SessionConfig, e: &Expr) -> Result<(Value, bool)> {
    let ev = cfg.evaluator();
    let v = ev.value(e, &cfg.cutoff)?;
    let Value::Series(s) = &v else { return Ok((v, false)) };
    let s = s.above(&cfg.cutoff)?;
    let finer = cfg.cutoff.mul(&Transseries::t());
    let tail = match ev.series(e, &finer) {
        Ok(f) => f.above(&finer)? != s,
        Err(_) => true,
    };
    Ok((Value::Series(s), tail))
}

fn generator_set(cfg: &SessionConfig, arg: &Expr) -> Result<GeneratorSet> {
    let Expr::Set(items) = arg else {
        return Err(Error::Syntax { pos: 0, msg: "expected a set {g, ...}".into() });
    };
    let ev = cfg.evaluator();
    let gens = items.iter().map(|i| ev.series(i, &cfg.cutoff)?.above(&cfg.cutoff)).collect::<Result<Vec<_>>>()?;
    Ok(GeneratorSet::new(Kind::Field, cfg.tower, gens))
}

/// Reads generators from a dump or from one expression per line.
///
/// A dump carries its own cutoff, which replaces the session cutoff.
pub fn load_generators(cfg: &mut SessionConfig, text: &str) -> Result<GeneratorSet> {
    if text.trim_start().starts_with("TRUNCAL-DUMP") {
        let (values, cutoff) = load(text)?;
        cfg.cutoff = cutoff;
        return Ok(GeneratorSet::new(Kind::Field, cfg.tower, values));
    }
    let ev = cfg.evaluator();
    let mut gens = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let e = parse_expr(line).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos, msg: format!("line {}: {msg}", i + 1) },
            other => other,
        })?;
        gens.push(ev.series(&e, &cfg.cutoff)?.above(&cfg.cutoff)?);
    }
    Ok(GeneratorSet::new(Kind::Field, cfg.tower, gens))
}

/// Truncation closure, derivatives, then the Liouville schedule.
pub fn close(cfg: &SessionConfig, e: &GeneratorSet) -> Result<GeneratorSet> {
    let b = cfg.closure_budget();
    let e = truncation_closure(e, &b)?;
    let e = differential_closure(&e, &b)?;
    liouville_close(&e, &b)
}

/// Fails with a verification error carrying the report when any truncation is missed.
pub fn verify(cfg: &SessionConfig, e: &GeneratorSet) -> Result<String> {
    let b = cfg.closure_budget();
    let r = verify_truncation_closed(e, &b, b.verify_samples);
    if r.passed() {
        Ok(r.to_string())
    } else {
        Err(Error::Verification(r.to_string()))
    }
}

fn single(name: &str, args: Vec<Expr>) -> Result<Expr> {
    let [a] = <[Expr; 1]>::try_from(args).map_err(|a| Error::Syntax { pos: 0, msg: format!("{name} takes one argument, got {}", a.len()) })?;
    Ok(a)
}

/// Runs one command line: either `<command> <args>` or a bare expression.
pub fn run_command(cfg: &SessionConfig, line: &str) -> Result<String> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(String::new());
    }
    let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    let expr = if COMMANDS.contains(&word) && !rest.trim_start().starts_with('(') && !rest.trim().is_empty() {
        let offset = line.len() - rest.len();
        let args = parse_args(rest).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
            other => other,
        })?;
        match word {
            "close" => {
                let out = close(cfg, &generator_set(cfg, &single(word, args)?)?)?;
                return Ok(out.to_string());
            }
            "verify" => return verify(cfg, &generator_set(cfg, &single(word, args)?)?),
            "trunc" => Expr::Call("truncate".into(), args),
            _ => Expr::Call(word.into(), args),
        }
    } else {
        parse_expr(line)?
    };
    let (v, tail) = evaluate(cfg, &expr)?;
    let mut out = format_result(&v);
    if tail {
        out.push_str(&format!("\n# truncated below {}", cfg.cutoff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cut: &str, line: &str) -> Result<String> {
        let cfg = SessionConfig::new(cut, 4, 3).unwrap();
        run_command(&cfg, line)
    }

    fn first(s: Result<String>) -> String {
        s.unwrap().lines().next().unwrap().to_string()
    }

    #[test]
    fn command_examples() {
        assert_eq!(run("x^-6", "diff x^2").unwrap(), "2*x^2");
        assert_eq!(first(run("x^-4*exp(x)", "int exp(x)")), "(x^-1 + x^-2 + 2*x^-3 + 6*x^-4)*exp(x)");
        assert_eq!(run("x^-6", "splits {x*exp(x)}").unwrap(), "false (witness: x)");
        assert_eq!(run("x^-6", "splits {1, x, exp(x), x*exp(x)}").unwrap(), "true");
        assert_eq!(run("x^-6", "1 - t^3").unwrap(), "1 - x^-3");
        assert_eq!(run("x^-6", "exp(x)*x^2").unwrap(), "x^2*exp(x)");
        assert_eq!(run("x^-6", "x - x").unwrap(), "0");
        assert_eq!(run("x^-6", "log(x)").unwrap(), "l1");
        assert_eq!(run("x^-6", "shift(l1, 1)").unwrap(), "x");
        assert_eq!(run("x^-6", "diff(l1)").unwrap(), "1");
        assert_eq!(first(run("x^-3", "exp(t)")), "1 + x^-1 + 1/2*x^-2 + 1/6*x^-3");
        assert!(run("x^-3", "exp(t)").unwrap().ends_with("# truncated below x^-3"));
        assert_eq!(first(run("x^-4", "solve(t, t)")), "x^-1 - x^-2 + 2*x^-3 - 6*x^-4");
        assert_eq!(run("x^-6", "trunc x^2 + x + 1, x").unwrap(), "x^2");
    }

    #[test]
    fn lazy_precision_propagates() {
        // the x^3 factor lifts terms of exp(t) from below the cutoff
        let cut = "x^-2";
        assert_eq!(first(run(cut, "exp(t)*x^3")), "x^3 + x^2 + 1/2*x + 1/6 + 1/24*x^-1 + 1/120*x^-2");
        assert_eq!(first(run(cut, "x^3/(x - 1)")), "x^2 + x + 1 + x^-1 + x^-2");
        assert_eq!(first(run(cut, "(1 + t)^(1/2)")), "1 + 1/2*x^-1 - 1/8*x^-2");
        assert_eq!(first(run(cut, "(x + 1)^-1")), "x^-1 - x^-2");
        assert_eq!(run("x^-6", "x/exp(-x)").unwrap(), "x*exp(x)");
        assert_eq!(run("x^-6", "(x^-8)^(1/4)").unwrap(), "x^-2");
        assert_eq!(run("x^-6", "log(exp(-x))").unwrap(), "-x");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run("x^-6", "x +").unwrap_err().exit_code(), 2);
        assert_eq!(run("x^-6", "log(-x)").unwrap_err().exit_code(), 3);
        assert_eq!(run("x^-6", "exp(1)").unwrap_err().exit_code(), 3);
        assert_eq!(SessionConfig::new("x^-6", 4, 0).map(|c| run_command(&c, "log(x)")).unwrap().unwrap_err().exit_code(), 4);
        assert_eq!(run("x^-12", "verify {t + t^2}").unwrap_err().exit_code(), 5);
        assert!(run("x^-12", "verify {t + t^2, t}").is_ok());
    }

    #[test]
    fn budget_spec() {
        let b: BudgetSpec = "rounds=2, generators=10".parse().unwrap();
        assert_eq!((b.rounds, b.generators, b.degree), (2, 10, 2));
        assert!("rounds=0".parse::<BudgetSpec>().is_err());
        assert!("bogus=1".parse::<BudgetSpec>().is_err());
    }

    #[test]
    fn generators_from_text_and_dump() {
        let mut cfg = SessionConfig::new("x^-6", 4, 3).unwrap();
        let e = load_generators(&mut cfg, "# comment\nx\n\nexp(t)\n").unwrap();
        assert_eq!(e.len(), 2);
        let text = dump(e.generators(), &parse_cutoff("x^-3").unwrap());
        let again = load_generators(&mut cfg, &text).unwrap();
        assert_eq!(cfg.cutoff, parse_cutoff("x^-3").unwrap());
        assert_eq!(again.generators(), e.generators());
        assert!(matches!(load_generators(&mut cfg, "x\nx +"), Err(Error::Syntax { .. })));
    }
}
