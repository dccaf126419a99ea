//! Output envelope, exit codes and text rendering.

use std::io::Write;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::Value;

use entrodist::bounds::{BoundReport, BoundValue};
use entrodist::codes::WeightDistribution;
use entrodist::encoders::EncoderDistance;
use entrodist::gf::Elem;
use entrodist::{Error, LogQValue, Matrix};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
/// A self-check against reference values failed.
pub const EXIT_CHECK: u8 = 4;

#[derive(Serialize)]
struct Envelope<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    parameters: &'a Value,
    results: &'a Value,
}

pub struct Report {
    command: &'static str,
    parameters: Value,
    results: Value,
    text: String,
}

impl Report {
    pub fn new(command: &'static str, parameters: Value, results: Value, text: String) -> Self {
        Report {
            command,
            parameters,
            results,
            text,
        }
    }

    fn render(&self, json: bool) -> String {
        if json {
            let env = Envelope {
                tool: "entrodist",
                version: env!("CARGO_PKG_VERSION"),
                command: self.command,
                parameters: &self.parameters,
                results: &self.results,
            };
            serde_json::to_string_pretty(&env).expect("serializable") + "\n"
        } else {
            self.text.clone()
        }
    }

    /// Writes the whole report in one call.
    pub fn emit(&self, json: bool) {
        let out = self.render(json);
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.as_bytes());
        let _ = stdout.flush();
    }
}

pub struct Failure {
    code: u8,
    message: String,
    report: Option<Box<Report>>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            report: None,
        }
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INFEASIBLE,
            message: message.into(),
            report: None,
        }
    }

    /// The report is still printed; the exit code flags the mismatch.
    pub fn check(report: Report) -> Self {
        Failure {
            code: EXIT_CHECK,
            message: "result disagrees with reference values".into(),
            report: Some(Box::new(report)),
        }
    }

    pub fn emit(self, json: bool) -> u8 {
        if let Some(r) = &self.report {
            r.emit(json);
        }
        eprintln!("error: {}", self.message);
        self.code
    }
}

pub fn fail(e: Error) -> Failure {
    match e {
        Error::BudgetExceeded { needed, budget } => Failure {
            code: EXIT_BUDGET,
            message: format!(
                "needs {needed} enumeration steps but the budget is {budget}; raise it with --budget or ENTRODIST_BUDGET"
            ),
            report: None,
        },
        Error::Parse { .. } => Failure::usage(e.to_string()),
        other => Failure::infeasible(other.to_string()),
    }
}

pub fn approx(v: &BigUint) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::INFINITY)
}

pub fn opt(v: &Option<LogQValue>) -> String {
    v.as_ref()
        .map_or_else(|| "undefined (zero code)".into(), |x| x.to_string())
}

pub fn distribution(wd: &WeightDistribution) -> String {
    wd.counts()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != BigUint::from(0u32))
        .map(|(i, a)| format!("  A_{i:<3} = {a}\n"))
        .collect()
}

pub fn matrix_text(m: &Matrix) -> String {
    m.row_iter().map(|r| format!("  {}\n", join(r))).collect()
}

fn join(r: &[Elem]) -> String {
    r.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn grid(op: &str, els: &[Elem], t: &[Vec<Elem>]) -> String {
    let w = els.iter().map(|e| e.to_string().len()).max().unwrap_or(1);
    let mut s = format!("{op:>w$} |");
    for e in els {
        s += &format!(" {e:>w$}");
    }
    s += &format!("\n{}\n", "-".repeat((w + 1) * (els.len() + 1) + 1));
    for (a, row) in els.iter().zip(t) {
        s += &format!("{a:>w$} |");
        for x in row {
            s += &format!(" {x:>w$}");
        }
        s.push('\n');
    }
    s
}

fn value_text(v: &BoundValue) -> String {
    match v {
        BoundValue::Size(s) => s.to_string(),
        BoundValue::Entropy(h) => h.to_string(),
    }
}

pub fn bounds_text(r: &BoundReport) -> String {
    let mut s = match (r.k, &r.h) {
        (_, Some(h)) => format!("bounds on D_{}({}, {h})\n", r.q, r.n),
        (Some(k), None) if r.h0.is_some() => format!("bounds on E_{}({k}, {})\n", r.q, r.n),
        (Some(k), None) => format!(
            "bounds on the largest entropy distance of [{}, {k}] codes over GF({})\n",
            r.n, r.q
        ),
        (None, None) => String::new(),
    };
    let width = r.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in &r.entries {
        s += &format!(
            "  {:<width$}  {:<5}  {}\n",
            e.name,
            format!("{:?}", e.kind).to_lowercase(),
            value_text(&e.value)
        );
    }
    if let Some(h0) = &r.h0 {
        s += &format!(
            "  cumulative weight below h0 {}, through h0 {}, threshold {}{}\n",
            h0.below,
            h0.through,
            h0.threshold,
            if h0.saturated { " (saturated)" } else { "" }
        );
    }
    if let (Some(lo), Some(up)) = (&r.lower, &r.upper) {
        s += &format!("  range: [{}, {}]\n", value_text(lo), value_text(up));
    }
    s
}

pub fn encoder_text(d: &EncoderDistance) -> String {
    format!(
        "entropy distance {}\n  witness x = ({}) of weight {}, xG = ({}) of weight {}\n",
        d.value,
        join(&d.witness_input),
        d.input_weight,
        join(&d.witness_output),
        d.output_weight
    )
}

pub fn packing_text(v: &Value) -> String {
    let r = v.get("best").unwrap_or(v);
    let mut s = format!(
        "|S| = {}, |B| = {}{}\n",
        r["s_size"],
        r["b_size"],
        r.get("s0_size")
            .map_or(String::new(), |x| format!(", |S0| = {x}"))
    );
    s += &format!(
        "size bound |B| > {}\n",
        r["size_bound"].as_str().unwrap_or("?")
    );
    s += &format!(
        "hypothesis: {}, conditions: {} {} {}\n",
        r["hypothesis"], r["condition1"], r["condition2"], r["condition3"]
    );
    if let Some(t) = v.get("trials") {
        s += &format!(
            "{} of {} monomial maps satisfied every condition\n",
            v["successes"], t
        );
    }
    s
}
