//! Command-line front end: argument model, dispatch and output rendering.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::calculus::{graded_commutator, StarVariant};
use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::integration;
use crate::poisson;
use crate::rewrite::{Replacement, Strategy};
use crate::sample::DEFAULT_SEED;
use crate::smash::{normalize_smash, star_word, Letter, SmashElement};
use crate::verify::{self, VerifyConfig};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Sphere,
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StarChoice {
    Sphere,
    Plane,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatchTarget {
    W,
}

#[derive(Parser, Debug)]
#[command(name = "podles", version, about = "Exact computations on the quantum sphere at c = 0")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for randomized property checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = 6, global = true)]
    pub max_degree: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    /// Normal form of a product.
    Mul { a: String, b: String },
    /// Graded commutator `ab ∓ ba`.
    Comm { a: String, b: String },
    /// Star of an expression.
    Star {
        expr: String,
        /// Star structure used on derivatives.
        #[arg(long, value_enum, default_value = "sphere")]
        variant: StarChoice,
    },
    /// Exterior derivative of a form.
    D { expr: String },
    /// Action of a vector field or differential operator on a form.
    Act { op: String, target: String },
    /// Invariant integral of a function.
    Integrate {
        #[arg(long, value_enum, default_value = "sphere")]
        domain: Domain,
        expr: String,
    },
    /// Poisson bracket as the classical limit of the graded commutator.
    Pb { a: String, b: String },
    /// Rewrite an expression in the chart around the north pole.
    Patch {
        #[arg(long, value_enum, default_value = "w")]
        to: PatchTarget,
        expr: String,
    },
    /// Value at q = 1.
    LimitClassical { expr: String },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Mul { .. } => "mul",
            Command::Comm { .. } => "comm",
            Command::Star { .. } => "star",
            Command::D { .. } => "d",
            Command::Act { .. } => "act",
            Command::Integrate { .. } => "integrate",
            Command::Pb { .. } => "pb",
            Command::Patch { .. } => "patch",
            Command::LimitClassical { .. } => "limit-classical",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Result of a command: rendered value plus the exit code it implies.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, exit_code: 0 }
    }
}

fn words(text: &str) -> Result<Replacement<Letter>> {
    expr::eval_words(&expr::parse(text)?)
}

fn normalize(w: Replacement<Letter>) -> Result<SmashElement> {
    Ok(normalize_smash(w, Strategy::Leftmost)?.canonical())
}

fn product(a: &Replacement<Letter>, b: &Replacement<Letter>) -> Replacement<Letter> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (c, x) in a {
        for (d, y) in b {
            out.push((c * d, [x.as_slice(), y.as_slice()].concat()));
        }
    }
    out
}

fn smash_outcome(v: &SmashElement) -> Outcome {
    Outcome::ok(v.to_string(), json!({"text": v.to_string(), "value": v.to_json()}))
}

fn form_of(v: SmashElement, what: &str) -> Result<crate::calculus::FormElement> {
    match v {
        SmashElement::Form(w) => Ok(w),
        _ => Err(Error::Domain(format!("{what} needs a function or form"))),
    }
}

fn parsed(text: &str) -> Result<Expr> {
    expr::parse(text)
}

pub fn run_command(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Normalize { expr } => Ok(smash_outcome(&normalize(words(expr)?)?)),
        Command::Mul { a, b } => Ok(smash_outcome(&normalize(product(&words(a)?, &words(b)?))?)),
        Command::Comm { a, b } => {
            let (wa, wb) = (words(a)?, words(b)?);
            let v = match (normalize(wa.clone())?, normalize(wb.clone())?) {
                (SmashElement::Form(x), SmashElement::Form(y)) => SmashElement::Form(graded_commutator(&x, &y)),
                _ => {
                    let mut w = product(&wa, &wb);
                    w.extend(product(&wb, &wa).into_iter().map(|(c, x)| (-c, x)));
                    normalize(w)?
                }
            };
            Ok(smash_outcome(&v))
        }
        Command::Star { expr, variant } => {
            let w = words(expr)?;
            let v = match normalize(w.clone())? {
                SmashElement::Diff(d) => {
                    let variant = match variant {
                        StarChoice::Sphere => StarVariant::Sphere,
                        StarChoice::Plane => StarVariant::Plane,
                    };
                    SmashElement::Diff(d.star(variant)).canonical()
                }
                _ => {
                    let starred: Option<Replacement<Letter>> =
                        w.into_iter().map(|(c, x)| star_word(&x).map(|y| (c, y))).collect();
                    normalize(starred.expect("words without derivatives have letter stars"))?
                }
            };
            Ok(smash_outcome(&v))
        }
        Command::D { expr } => {
            let w = form_of(normalize(words(expr)?)?, "d")?;
            Ok(smash_outcome(&SmashElement::Form(w.d())))
        }
        Command::Act { op, target } => {
            // the target must itself be a form
            form_of(normalize(words(target)?)?, "act")?;
            let w = product(&words(op)?, &words(target)?);
            let v = match normalize_smash(w, Strategy::Leftmost)? {
                SmashElement::Vector(v) => v.counit_part(),
                SmashElement::Diff(d) => crate::calculus::FormElement::from_func(d.coefficient(0, 0)),
                SmashElement::Form(f) => f,
            };
            Ok(smash_outcome(&SmashElement::Form(v)))
        }
        Command::Integrate { domain, expr } => {
            let w = form_of(normalize(words(expr)?)?, "integrate")?;
            let f = w.as_func().ok_or_else(|| Error::Domain("only functions can be integrated".into()))?;
            let v = match domain {
                Domain::Sphere => integration::integrate_sphere(&f)?,
                Domain::Plane => integration::integrate_plane(&f)?,
            };
            Ok(Outcome::ok(v.to_string(), json!({"value": v.value.to_string(), "status": v.status.as_str()})))
        }
        Command::Pb { a, b } => {
            let (ea, eb) = (parsed(a)?, parsed(b)?);
            if ea.uses_patch_atoms() || eb.uses_patch_atoms() {
                let v = poisson::poisson_bracket_w(&expr::eval_local(&ea)?, &expr::eval_local(&eb)?)?;
                return Ok(Outcome::ok(v.to_string(), json!({"text": v.to_string(), "value": v.to_json()})));
            }
            let x = form_of(normalize(expr::eval_words(&ea)?)?, "pb")?;
            let y = form_of(normalize(expr::eval_words(&eb)?)?, "pb")?;
            let v = poisson::poisson_bracket(&x, &y)?;
            Ok(Outcome::ok(v.to_string(), json!({"text": v.to_string(), "value": v.to_json()})))
        }
        Command::Patch { to: PatchTarget::W, expr } => {
            let v = expr::eval_local(&parsed(expr)?)?;
            let mut j = json!({"text": v.to_string(), "value": v.to_json()});
            let mut text = v.to_string();
            if let Ok(c) = v.classical(0) {
                text.push_str(&format!("\nat q = 1: {c}"));
                j["classical"] = c.to_json();
            }
            Ok(Outcome::ok(text, j))
        }
        Command::LimitClassical { expr } => {
            let e = parsed(expr)?;
            if e.uses_patch_atoms() {
                let v = expr::eval_local(&e)?.classical(0)?;
                return Ok(Outcome::ok(v.to_string(), json!({"text": v.to_string(), "value": v.to_json()})));
            }
            let w = form_of(normalize(expr::eval_words(&e)?)?, "limit-classical")?;
            let v = poisson::classical_limit_elem(&w)?;
            Ok(Outcome::ok(v.to_string(), json!({"text": v.to_string(), "value": v.to_json()})))
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig { seed: cli.seed, max_degree: cli.max_degree };
            let rep = verify::run(suite, &cfg)?;
            Ok(Outcome { text: rep.to_string(), json: rep.to_json(), exit_code: if rep.passed() { 0 } else { 3 } })
        }
    }
}

fn error_json(e: &Error) -> Value {
    let mut j = json!({"code": e.code(), "message": e.to_string()});
    match e {
        Error::Parse { offset, .. } => j["offset"] = json!(offset),
        Error::NotIntegrable(m) => j["monomial"] = json!(m),
        _ => {}
    }
    j
}

/// Rendered output and exit code for parsed arguments.
pub fn execute(cli: &Cli) -> (String, i32) {
    let outcome = run_command(cli);
    match cli.format {
        Format::Text => match outcome {
            Ok(o) => (o.text, o.exit_code),
            Err(e) => (format!("error [{}]: {e}", e.code()), e.exit_code()),
        },
        Format::Json => {
            let mut j = json!({"version": SCHEMA_VERSION, "command": cli.command.name()});
            let code = match outcome {
                Ok(o) => {
                    j["result"] = o.json;
                    o.exit_code
                }
                Err(e) => {
                    j["error"] = error_json(&e);
                    e.exit_code()
                }
            };
            (serde_json::to_string_pretty(&j).expect("json values serialize"), code)
        }
    }
}

/// Parse `args` (including the program name) and execute; usage errors exit 2.
pub fn main_with<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (e.render().to_string(), code)
        }
    }
}
