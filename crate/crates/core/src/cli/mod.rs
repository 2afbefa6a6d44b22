//! Command-line surface of `folcalc`.

pub mod document;
pub mod json;
pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::exterior::DiffForm;
use crate::foliation::examples::{corpus_member, dulac};
use crate::foliation::random::{random_foliation, Family};
use crate::foliation::{pullback_foliation, Foliation, FoliationReport};
use crate::graded::{GradedError, DEFAULT_SLACK};
use crate::polyring::Rational;
use document::InputDocument;
use parse::Vars;

/// Environment variable overriding the default degree bound `2e`.
pub const MAX_DEGREE_ENV: &str = "FOLCALC_MAX_DEGREE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_STABILIZATION: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "CdOmega", alias = "cdomega")]
    CdOmega,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quotient {
    #[value(name = "I/J")]
    IJ,
    #[value(name = "S/L")]
    SL,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    Dulac,
    Sl2,
    P2a,
    P2b,
    P2c,
    Transverse,
}

#[derive(Parser, Debug)]
#[command(name = "folcalc", version, about = "Singular, unfolding, Kupka and non-Kupka ideals of foliations on projective space")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a foliation.
    Check { file: PathBuf },
    /// Print one ideal as its reduced Gröbner basis.
    Ideal {
        #[arg(long, value_enum)]
        which: Which,
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Full report: ideals, predicates, Hilbert polynomials.
    Report {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Hilbert polynomial of I/J or S/L in the basis P_r.
    Hilbert {
        #[arg(long = "of", value_enum)]
        of: Quotient,
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Report on a corpus example (or print its input document).
    Example {
        #[arg(value_enum)]
        name: ExampleName,
        /// Dulac exponent p.
        #[arg(long, default_value_t = 1)]
        p: u32,
        /// Dulac exponent q.
        #[arg(long, default_value_t = 1)]
        q: u32,
        /// Dulac weight α (integer or a/b).
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Dulac weight β (integer or a/b).
        #[arg(long, default_value = "2")]
        beta: String,
        /// Only print the input document.
        #[arg(long)]
        input_only: bool,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Pull back a foliation of P² and compare I with (A₀(F), A₁(F), A₂(F)).
    Pullback {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Test √I = √K on random integrable families.
    Batch {
        #[arg(long, default_value = "plane")]
        family: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree parameter of the family.
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
}

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
    json: Value,
}

fn usage(msg: impl Into<String>) -> Failure {
    let message = msg.into();
    Failure { code: EXIT_USAGE, json: json!({"error": "input", "message": message}), message }
}

fn rejected(invariant: &str, message: String) -> Failure {
    Failure {
        code: EXIT_REJECTED,
        json: json!({"valid": false, "invariant": invariant, "message": message}),
        message: format!("rejected ({invariant}): {message}"),
    }
}

fn graded_failure(e: GradedError) -> Failure {
    if let GradedError::DegreeBoundTooSmall { .. } = e {
        return usage(e.to_string());
    }
    let degree = match &e {
        GradedError::IncreaseDegree { degree, .. } => json!(degree),
        _ => Value::Null,
    };
    Failure {
        code: EXIT_STABILIZATION,
        json: json!({"error": "stabilization", "message": e.to_string(), "degree": degree}),
        message: e.to_string(),
    }
}

fn read_doc(path: &PathBuf) -> Result<InputDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// A validated foliation with the display names of its variables.
struct Loaded {
    foliation: Foliation,
    names: Vec<String>,
}

impl Loaded {
    fn omega_text(&self) -> String {
        self.foliation.omega().display_with(&self.names).to_string()
    }
}

fn load(doc: &InputDocument) -> Result<Loaded, Failure> {
    let w = doc.form().map_err(|e| usage(e.to_string()))?;
    let foliation = Foliation::new(w).map_err(|e| rejected(e.invariant(), e.to_string()))?;
    Ok(Loaded { foliation, names: doc.vars.clone() })
}

fn example_foliation(name: ExampleName, p: u32, q: u32, alpha: &str, beta: &str) -> Result<Foliation, Failure> {
    let key = match name {
        ExampleName::Dulac => {
            let a: Rational = alpha.parse().map_err(|_| usage(format!("invalid α: {alpha}")))?;
            let b: Rational = beta.parse().map_err(|_| usage(format!("invalid β: {beta}")))?;
            return dulac(p, q, &a, &b).map_err(|e| rejected(e.invariant(), e.to_string()));
        }
        ExampleName::Sl2 => "sl2",
        ExampleName::P2a => "p2a",
        ExampleName::P2b => "p2b",
        ExampleName::P2c => "p2c",
        ExampleName::Transverse => "transverse",
    };
    Ok(corpus_member(key).expect("known corpus member"))
}

/// Degree bound: flag, then environment, then the default `2e`.
fn max_degree(flag: Option<u32>) -> Result<Option<u32>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| usage(format!("{MAX_DEGREE_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => json::to_text(v),
    }
}

fn report(loaded: &Loaded, d_max: Option<u32>) -> Result<Value, Failure> {
    let r = FoliationReport::compute(&loaded.foliation, d_max).map_err(graded_failure)?;
    Ok(json::report_json(&r, &loaded.names, &loaded.omega_text()))
}

fn run_command(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Check { file } => {
            let l = load(&read_doc(file)?)?;
            Ok(json!({
                "valid": true,
                "n": l.foliation.n(),
                "e": l.foliation.e(),
                "omega": l.omega_text(),
            }))
        }
        Command::Ideal { which, file, max_degree: md } => {
            let l = load(&read_doc(file)?)?;
            let f = &l.foliation;
            let (name, ideal) = match which {
                Which::J => ("J", f.singular_ideal().clone()),
                Which::K => ("K", f.kupka_ideal().clone()),
                Which::L => ("L", f.non_kupka_ideal().clone()),
                Which::CdOmega => ("CdOmega", f.cdomega_ideal().clone()),
                Which::I => {
                    let u = f.unfolding_ideal_with(max_degree(*md)?, DEFAULT_SLACK).map_err(graded_failure)?;
                    ("I", u.ideal)
                }
            };
            Ok(json!({ "ideal": name, "generators": json::ideal_json(&ideal, &l.names) }))
        }
        Command::Report { file, max_degree: md } => {
            let l = load(&read_doc(file)?)?;
            report(&l, max_degree(*md)?)
        }
        Command::Hilbert { of, file, max_degree: md } => {
            let l = load(&read_doc(file)?)?;
            let f = &l.foliation;
            let (name, p) = match of {
                Quotient::SL => ("S/L", f.non_kupka_ideal().hilbert_polynomial().expect("homogeneous")),
                Quotient::IJ => {
                    let u = f.unfolding_ideal_with(max_degree(*md)?, DEFAULT_SLACK).map_err(graded_failure)?;
                    let pj = f.singular_ideal().hilbert_polynomial().expect("homogeneous");
                    ("I/J", pj.sub(&u.ideal.hilbert_polynomial().expect("homogeneous")))
                }
            };
            if cli.format == Format::Text {
                return Ok(Value::String(format!("{p}\n")));
            }
            let mut v = json::hilbert_json(&p);
            v["of"] = json!(name);
            Ok(v)
        }
        Command::Example { name, p, q, alpha, beta, input_only, max_degree: md } => {
            let f = example_foliation(*name, *p, *q, alpha, beta)?;
            let names = Vars::indexed(f.nvars()).names().to_vec();
            let loaded = Loaded { foliation: f, names };
            if *input_only {
                let doc = InputDocument {
                    name: Some(format!("{name:?}").to_lowercase()),
                    vars: loaded.names.clone(),
                    omega: Some(loaded.omega_text()),
                    ..Default::default()
                };
                return Ok(Value::String(doc.to_text()));
            }
            report(&loaded, max_degree(*md)?)
        }
        Command::Pullback { map, form, max_degree: md } => {
            let mdoc = read_doc(map)?;
            let comps = mdoc.map_components().map_err(|e| usage(e.to_string()))?;
            let w2 = load(&read_doc(form)?)?;
            let res = pullback_foliation(&comps, &w2.foliation).map_err(|e| rejected(e.invariant(), e.to_string()))?;
            let names = mdoc.vars.clone();
            let u = res.foliation.unfolding_ideal_with(max_degree(*md)?, DEFAULT_SLACK).map_err(graded_failure)?;
            let agrees = u.ideal.equals(&res.predicted);
            Ok(json!({
                "omega": res.foliation.omega().display_with(&names).to_string(),
                "n": res.foliation.n(),
                "e": res.foliation.e(),
                "genericity": {
                    "label": res.genericity.label(),
                    "singular_set_reduced": res.genericity.singular_set_reduced,
                    "singular_points": res.genericity.singular_points,
                    "expected_points": res.genericity.expected_points,
                    "all_kupka": res.genericity.all_kupka,
                    "critical_locus_disjoint": res.genericity.critical_locus_disjoint,
                },
                "predicted": json::ideal_json(&res.predicted, &names),
                "I": json::ideal_json(&u.ideal, &names),
                "I_equals_prediction": agrees,
            }))
        }
        Command::Batch { family, count, seed, degree } => {
            let fam = Family::parse(family).ok_or_else(|| usage(format!("unknown family {family:?} (plane, rational, pullback)")))?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut members = Vec::new();
            let mut in_u_count = 0;
            for _ in 0..*count {
                let Some(f) = random_foliation(&mut rng, fam, *degree, 50) else {
                    members.push(json!({"omega": Value::Null, "error": "no valid member drawn"}));
                    continue;
                };
                let names = Vars::indexed(f.nvars()).names().to_vec();
                let omega = f.omega().display_with(&names).to_string();
                match f.in_u() {
                    Ok(b) => {
                        in_u_count += b as usize;
                        members.push(json!({
                            "omega": omega,
                            "e": f.e(),
                            "in_U": b,
                            "I_equals_K": f.unfolding_ideal().map(|u| u.ideal.equals(f.kupka_ideal())).unwrap_or(false),
                        }));
                    }
                    Err(e) => members.push(json!({"omega": omega, "e": f.e(), "error": e.to_string()})),
                }
            }
            Ok(json!({
                "family": fam.name(),
                "seed": seed,
                "count": count,
                "in_U": in_u_count,
                "members": members,
            }))
        }
    }
}

/// Run `folcalc` on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match run_command(&cli) {
        Ok(Value::String(s)) if cli.format == Format::Text => Outcome { code: EXIT_OK, stdout: s, stderr: String::new() },
        Ok(v) => Outcome { code: EXIT_OK, stdout: render(&v, cli.format), stderr: String::new() },
        Err(f) => Outcome {
            code: f.code,
            stdout: if cli.format == Format::Json { render(&f.json, Format::Json) } else { String::new() },
            stderr: format!("folcalc: {}\n", f.message),
        },
    }
}

/// Convenience for rendering a form with indexed names.
pub fn indexed_form_text(w: &DiffForm) -> String {
    w.display_with(Vars::indexed(w.nvars()).names()).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stabilization_failure_maps_to_exit_three() {
        let f = graded_failure(GradedError::IncreaseDegree { degree: 9, d_max: 6 });
        assert_eq!(f.code, EXIT_STABILIZATION);
        assert_eq!(f.json["error"], "stabilization");
        assert_eq!(f.json["degree"], 9);
        assert!(f.message.contains("increase d_max"));
    }

    #[test]
    fn a_bound_below_the_twist_is_a_usage_error() {
        let f = graded_failure(GradedError::DegreeBoundTooSmall { d_max: 2, e: 3 });
        assert_eq!(f.code, EXIT_USAGE);
        assert_eq!(f.json["error"], "input");
    }
}
