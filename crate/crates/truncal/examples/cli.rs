//! Parsing, evaluating and printing expressions as the command line does.

use truncal::cli::{run_command, SessionConfig};

fn main() {
    let cfg = SessionConfig::new("x^-6", 4, 3).unwrap();
    let wide = SessionConfig::new("x^-5*exp(x)", 4, 3).unwrap();
    let lines = ["1/(1 - t)", "exp(t)", "log(x + 1)", "diff(x*l1)", "truncate(x^2 + x + 1 + t, 1)", "splits({1, x, exp(x)})", "int(exp(x))"];
    for line in lines {
        match run_command(&cfg, line) {
            Ok(out) => println!("> {line}\n{out}"),
            Err(e) => println!("> {line}\nerror: {e}"),
        }
    }
    println!("> int(exp(x))  [cutoff x^-5*exp(x)]\n{}", run_command(&wide, "int(exp(x))").unwrap());
}
