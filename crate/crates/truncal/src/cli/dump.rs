//! Line-oriented structured dump of transseries.
//!
//! ```text
//! TRUNCAL-DUMP 1
//! BASIS x
//! DEPTH 0
//! HEIGHT 1
//! CUTOFF [-4/1] | E1
//! EXP E1
//! MON [1/1] | - ; COEF 1/1
//! END
//! VALUE
//! MON [-1/1] | E1 ; COEF 1/1
//! END
//! ```
//!
//! Bodies are written at depth `DEPTH` in the variable named by `BASIS`.
//! `EXP` blocks define exponential parts before they are referenced; `-` is the empty part.


use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};
use crate::texp::{TSeries, TransMonomial, Transseries};

const MAGIC: &str = "TRUNCAL-DUMP 1";

fn exact(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

struct Writer {
    parts: Vec<TSeries>,
    lines: Vec<String>,
}

impl Writer {
    fn part_ref(&mut self, e: &TSeries) -> String {
        if e.is_zero() {
            return "-".into();
        }
        if let Some(i) = self.parts.iter().position(|p| p == e) {
            return format!("E{}", i + 1);
        }
        let body: Vec<String> = e.iter().map(|(m, c)| self.mon_line(m, c)).collect();
        self.parts.push(e.clone());
        let name = format!("E{}", self.parts.len());
        self.lines.push(format!("EXP {name}"));
        self.lines.extend(body);
        self.lines.push("END".into());
        name
    }

    fn mon(&mut self, m: &TransMonomial) -> String {
        format!("[{}] | {}", exact(m.q()), self.part_ref(m.exp_part()))
    }

    fn mon_line(&mut self, m: &TransMonomial, c: &Q) -> String {
        format!("MON {} ; COEF {}", self.mon(m), exact(c))
    }
}

fn basis(n: u32) -> String {
    if n == 0 {
        "x".into()
    } else {
        format!("l{n}")
    }
}

/// Dumps values together with the cutoff they were materialized at.
pub fn dump(values: &[Transseries], cutoff: &Transseries) -> String {
    let n = values.iter().map(|v| v.depth()).max().unwrap_or(0).max(cutoff.depth());
    let mut w = Writer { parts: Vec::new(), lines: Vec::new() };
    let cut = w.mon(&cutoff.monomial_at(n).expect("cutoff must be a monomial"));
    let mut blocks = Vec::new();
    for v in values {
        let body = v.body_at(n);
        let mut b = vec!["VALUE".to_string()];
        for (m, c) in body.iter() {
            b.push(w.mon_line(m, c));
        }
        b.push("END".into());
        blocks.push(b);
    }
    let height = values.iter().map(|v| v.height()).max().unwrap_or(0);
    let mut out = vec![MAGIC.to_string(), format!("BASIS {}", basis(n)), format!("DEPTH {n}"), format!("HEIGHT {height}")];
    out.push(format!("CUTOFF {cut}"));
    out.extend(w.lines);
    for b in blocks {
        out.extend(b);
    }
    out.join("\n") + "\n"
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos: line, msg: format!("dump line {}: {}", line + 1, msg.into()) }
}

fn parse_mon(s: &str, parts: &[TSeries], line: usize) -> Result<TransMonomial> {
    let (v, r) = s.split_once('|').ok_or_else(|| bad(line, "expected '|'"))?;
    let v = v.trim().strip_prefix('[').and_then(|v| v.strip_suffix(']')).ok_or_else(|| bad(line, "expected [q]"))?;
    let q = parse_q(v).ok_or_else(|| bad(line, "bad exponent"))?;
    let r = r.trim();
    let e = if r == "-" {
        TSeries::zero(&())
    } else {
        let i: usize = r.strip_prefix('E').and_then(|i| i.parse().ok()).ok_or_else(|| bad(line, "bad reference"))?;
        parts.get(i.wrapping_sub(1)).cloned().ok_or_else(|| bad(line, format!("undefined {r}")))?
    };
    Ok(TransMonomial::new(q, e))
}

fn parse_term(s: &str, parts: &[TSeries], line: usize) -> Result<(TransMonomial, Q)> {
    let rest = s.strip_prefix("MON ").ok_or_else(|| bad(line, "expected MON"))?;
    let (m, c) = rest.split_once(';').ok_or_else(|| bad(line, "expected ';'"))?;
    let c = c.trim().strip_prefix("COEF ").ok_or_else(|| bad(line, "expected COEF"))?;
    Ok((parse_mon(m, parts, line)?, parse_q(c).ok_or_else(|| bad(line, "bad coefficient"))?))
}

/// Reads back the values and the cutoff of [`dump`].
pub fn load(text: &str) -> Result<(Vec<Transseries>, Transseries)> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if lines.first() != Some(&MAGIC) {
        return Err(bad(0, "missing header"));
    }
    let field = |i: usize, key: &str| -> Result<String> {
        lines.get(i).and_then(|l| l.strip_prefix(key)).map(|s| s.trim().to_string()).ok_or_else(|| bad(i, format!("expected {key}")))
    };
    field(1, "BASIS")?;
    let n: u32 = field(2, "DEPTH")?.parse().map_err(|_| bad(2, "bad depth"))?;
    field(3, "HEIGHT")?;
    let cut_text = field(4, "CUTOFF")?;
    let mut parts: Vec<TSeries> = Vec::new();
    let mut values = Vec::new();
    let mut i = 5;
    while i < lines.len() {
        let head = lines[i];
        let start = i;
        i += 1;
        let mut body = TSeries::zero(&());
        while i < lines.len() && lines[i] != "END" {
            let (m, c) = parse_term(lines[i], &parts, i)?;
            body.add_term(m, c);
            i += 1;
        }
        if i == lines.len() {
            return Err(bad(start, "unterminated block"));
        }
        i += 1;
        if let Some(name) = head.strip_prefix("EXP ") {
            if name != format!("E{}", parts.len() + 1) {
                return Err(bad(start, format!("out of order {name}")));
            }
            parts.push(body);
        } else if head == "VALUE" {
            values.push(Transseries::new(n, body));
        } else {
            return Err(bad(start, "expected EXP or VALUE"));
        }
    }
    let cut = parse_mon(&cut_text, &parts, 4)?;
    Ok((values, Transseries::new(n, TSeries::monomial(cut))))
}
