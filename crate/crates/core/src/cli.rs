//! Command-line front end.
//!
//! Inputs use the textual grammar of [`crate::expr`]: polynomials such as
//! `x^2 - 1/2*y`, derivations as `dx=1; dy=x*y+1` or `shamsuddin a=x; b=1`,
//! maps as `(x+y^2, y)`. A grid is a comma-separated list of rationals,
//! e.g. `-1,0,1/2`.
//!
//! Exit codes: 0 when a verdict was produced (whatever it says), 1 when the
//! input parsed but the operation failed, 2 for parse and usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::derivation::{invariant_check, DarbouxWitness, ShamsuddinForm};
use crate::dynamics::{
    degree_sequence, fixed_points, order_detect, validate_automorphism, DegreeEvidence, PolyMap,
};
use crate::expr::{parse_derivation, parse_map, parse_poly, parse_upoly, ParseError};
use crate::isotropy::{
    brute_force_isotropy, commutes, shamsuddin_isotropy, Fact, IsotropyError, DEFAULT_PAIR_BUDGET,
};
use crate::polyring::BigRat;
use crate::simplicity::{shamsuddin_is_simple, solve_linear_ode, OdeVerdict};

pub const EXIT_VERDICT: i32 = 0;
pub const EXIT_OPERATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "shamsuddin",
    version,
    about = "Simplicity, isotropy and dynamics of Shamsuddin derivations of k[x,y]"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Recompute every witness identity and report the outcome.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct FormArgs {
    /// Coefficient a(x) in D(y) = a*y + b.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Coefficient b(x) in D(y) = a*y + b.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide whether d/dx + (a y + b) d/dy is simple.
    SimpleCheck(FormArgs),
    /// Certify that a simple Shamsuddin derivation commutes only with the identity.
    Isotropy(FormArgs),
    /// Enumerate commuting automorphism candidates in a finite box.
    IsotropyBrute {
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
        /// Largest total degree of each component.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=4))]
        deg_bound: u32,
        /// Comma-separated rational coefficients.
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        grid: String,
    },
    /// Test whether a map commutes with a derivation.
    CommuteCheck {
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Test whether (f) is a stable ideal and report the cofactor.
    InvariantCheck {
        #[arg(long, allow_hyphen_values = true)]
        derivation: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Degrees of the iterates of a map.
    DynDegree {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=64))]
        n_max: u64,
    },
    /// Rational fixed points and existence over the algebraic closure.
    FixedPoints {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
    /// Smallest n <= n_max with rho^n = id.
    Order {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=1000))]
        n_max: u64,
    },
    /// Check the Jacobian condition and try to build an inverse.
    ValidateAut {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
    },
}

/// Exit code plus everything written to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Operation { message: String, payload: Value },
}

struct Report {
    text: String,
    json: Value,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => execute(&config),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_VERDICT
            };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            CliOutput {
                code,
                stdout,
                stderr,
            }
        }
    }
}

/// Runs an already-parsed configuration.
pub fn execute(config: &CliConfig) -> CliOutput {
    let json = config.format == Format::Json;
    match dispatch(&config.command, config.verify || json) {
        Ok(report) => CliOutput {
            code: EXIT_VERDICT,
            stdout: if json {
                format!("{}\n", pretty(&report.json))
            } else {
                with_newline(report.text)
            },
            stderr: String::new(),
        },
        Err(Failure::Usage(message)) => CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("{message}\n"),
        },
        Err(Failure::Operation { message, payload }) => CliOutput {
            code: EXIT_OPERATION,
            stdout: if json {
                format!(
                    "{}\n",
                    pretty(&json!({ "error": message, "payload": payload }))
                )
            } else {
                String::new()
            },
            stderr: format!("error: {message}\n"),
        },
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn with_newline(mut text: String) -> String {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    text
}

fn parse_with<T>(
    flag: &str,
    input: &str,
    parse: impl Fn(&str) -> Result<T, ParseError>,
) -> Result<T, Failure> {
    parse(input).map_err(|e| Failure::Usage(format!("in --{flag}: {}", e.render(input))))
}

fn parse_form(args: &FormArgs) -> Result<ShamsuddinForm, Failure> {
    let a = parse_with("a", &args.a, parse_upoly)?;
    let b = parse_with("b", &args.b, parse_upoly)?;
    Ok(ShamsuddinForm::new(a, b))
}

fn parse_grid(text: &str) -> Result<Vec<BigRat>, Failure> {
    let grid = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<BigRat>()
                .map_err(|_| Failure::Usage(format!("in --grid: '{s}' is not a rational number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(grid)
}

fn witness_json(w: &DarbouxWitness) -> Value {
    json!({ "f": w.f().to_string(), "cofactor": w.cofactor().to_string() })
}

fn map_json(m: &PolyMap) -> Value {
    json!([m.f.to_string(), m.g.to_string()])
}

fn ode_json(v: &OdeVerdict) -> Value {
    match v {
        OdeVerdict::Solution(r) => json!({ "solution": r.to_string() }),
        OdeVerdict::NoSolution => json!("NoSolution"),
    }
}

fn verified_line(text: &mut String, verify: bool, label: &str, ok: bool) {
    if verify {
        text.push_str(&format!("\nverified {label}: {ok}"));
    }
}

fn dispatch(command: &Command, verify: bool) -> Result<Report, Failure> {
    match command {
        Command::SimpleCheck(args) => {
            let sf = parse_form(args)?;
            let d = sf.to_derivation();
            let verdict = shamsuddin_is_simple(&sf);
            let ode = solve_linear_ode(&sf.a, &sf.b);
            let ode_ok = ode.verify(&sf.a, &sf.b);
            let witness_ok = verdict.witness().is_none_or(|w| w.verify(&d));
            let mut text = verdict.to_string();
            verified_line(&mut text, verify, "ode", ode_ok);
            if verdict.witness().is_some() {
                verified_line(&mut text, verify, "witness", witness_ok);
            }
            let json = json!({
                "verdict": if verdict.is_simple() { "Simple" } else { "NotSimple" },
                "form": { "a": sf.a.to_string(), "b": sf.b.to_string() },
                "ode": ode_json(&ode),
                "witness": verdict.witness().map(witness_json),
                "verified": { "ode": ode_ok, "witness": witness_ok },
            });
            Ok(Report { text, json })
        }
        Command::Isotropy(args) => {
            let sf = parse_form(args)?;
            let cert = shamsuddin_isotropy(&sf).map_err(isotropy_failure)?;
            let ok = verify && cert.verify();
            let mut text = cert.to_string();
            verified_line(&mut text, verify, "certificate", ok);
            let steps: Vec<Value> = cert
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "id": s.id.to_string(),
                        "claim": s.claim,
                        "facts": s.facts.iter().map(fact_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let json = json!({
                "verdict": cert.conclusion(),
                "conclusion": cert.conclusion(),
                "form": { "a": sf.a.to_string(), "b": sf.b.to_string() },
                "complete": cert.is_complete(),
                "steps": steps,
                "verified": { "certificate": ok },
            });
            Ok(Report { text, json })
        }
        Command::IsotropyBrute {
            derivation,
            deg_bound,
            grid,
        } => {
            let d = parse_with("derivation", derivation, parse_derivation)?;
            let grid = parse_grid(grid)?;
            let found = brute_force_isotropy(&d, *deg_bound, &grid, DEFAULT_PAIR_BUDGET)
                .map_err(isotropy_failure)?;
            let ok = verify && found.verify(&d);
            let verdict = if found.is_only_identity() {
                "trivial"
            } else if found.found.is_empty() {
                "none"
            } else {
                "nontrivial"
            };
            let mut text = format!(
                "{verdict}: {} maps ({} pairs examined)",
                found.found.len(),
                found.pairs_examined
            );
            for m in &found.found {
                text.push_str(&format!("\n{m}"));
            }
            verified_line(&mut text, verify, "maps", ok);
            let json = json!({
                "verdict": verdict,
                "count": found.found.len(),
                "pairs_examined": found.pairs_examined,
                "maps": found.found.iter().map(map_json).collect::<Vec<_>>(),
                "verified": { "maps": ok },
            });
            Ok(Report { text, json })
        }
        Command::CommuteCheck { derivation, map } => {
            let d = parse_with("derivation", derivation, parse_derivation)?;
            let rho = parse_with("map", map, parse_map)?;
            let on_x = rho.apply(&d.dx) == d.apply(&rho.f);
            let on_y = rho.apply(&d.dy) == d.apply(&rho.g);
            let verdict = commutes(&d, &rho);
            let json = json!({ "verdict": verdict, "on_x": on_x, "on_y": on_y });
            Ok(Report {
                text: verdict.to_string(),
                json,
            })
        }
        Command::InvariantCheck { derivation, poly } => {
            let d = parse_with("derivation", derivation, parse_derivation)?;
            let f = parse_with("poly", poly, parse_poly)?;
            let result = invariant_check(&d, &f).map_err(|e| Failure::Operation {
                message: e.to_string(),
                payload: json!({ "poly": f.to_string() }),
            })?;
            let ok = result.as_ref().is_none_or(|w| w.verify(&d));
            let mut text = match &result {
                Some(w) => format!("invariant\ncofactor: {}", w.cofactor()),
                None => "not invariant".to_string(),
            };
            if result.is_some() {
                verified_line(&mut text, verify, "witness", ok);
            }
            let json = json!({
                "verdict": if result.is_some() { "invariant" } else { "not_invariant" },
                "witness": result.as_ref().map(witness_json),
                "verified": { "witness": ok },
            });
            Ok(Report { text, json })
        }
        Command::DynDegree { map, n_max } => {
            let rho = parse_with("map", map, parse_map)?;
            let est = degree_sequence(&rho, *n_max as usize).map_err(|e| Failure::Operation {
                message: e.to_string(),
                payload: json!({ "map": map_json(&rho) }),
            })?;
            let evidence: Vec<&str> = est
                .evidence
                .iter()
                .map(|e| match e {
                    DegreeEvidence::MatchingBounds => "MatchingBounds",
                    DegreeEvidence::ExactComposition => "ExactComposition",
                })
                .collect();
            let json = json!({
                "verdict": if est.bounded { "bounded" } else { "growing" },
                "degree_sequence": est.degree_sequence,
                "per_step_roots": est.per_step_roots,
                "bounded": est.bounded,
                "delta_estimate": est.delta_estimate(),
                "evidence": evidence,
            });
            Ok(Report {
                text: est.to_string(),
                json,
            })
        }
        Command::FixedPoints { map } => {
            let rho = parse_with("map", map, parse_map)?;
            let report = fixed_points(&rho).map_err(|e| Failure::Operation {
                message: e.to_string(),
                payload: json!({ "map": map_json(&rho) }),
            })?;
            let ok = report.verify(&rho);
            let mut text = report.to_string();
            verified_line(&mut text, verify, "points", ok);
            let points: Vec<Value> = report
                .rational_points
                .iter()
                .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                .collect();
            let json = json!({
                "verdict": report.closure_verdict.to_string(),
                "rational_points": points,
                "closure_verdict": report.closure_verdict.to_string(),
                "verified": { "points": ok },
            });
            Ok(Report { text, json })
        }
        Command::Order { map, n_max } => {
            let rho = parse_with("map", map, parse_map)?;
            let order = order_detect(&rho, *n_max as usize);
            let ok = order.is_none_or(|n| rho.iterate(n).is_identity());
            let mut text = match order {
                Some(n) => format!("order {n}"),
                None => format!("no finite order up to {n_max}"),
            };
            if order.is_some() {
                verified_line(&mut text, verify, "order", ok);
            }
            let json = json!({
                "verdict": order,
                "n_max": n_max,
                "verified": { "order": ok },
            });
            Ok(Report { text, json })
        }
        Command::ValidateAut { map } => {
            let rho = parse_with("map", map, parse_map)?;
            match validate_automorphism(&rho) {
                Ok(cert) => {
                    let ok = cert.verify();
                    let mut text =
                        format!("automorphism candidate: Jacobian {}", cert.jacobian_det);
                    match &cert.inverse {
                        Some(inv) => text.push_str(&format!("\ninverse: {inv}")),
                        None => text.push_str("\nnecessary condition only"),
                    }
                    verified_line(&mut text, verify, "certificate", ok);
                    let json = json!({
                        "verdict": "accepted",
                        "jacobian_det": cert.jacobian_det.to_string(),
                        "inverse": cert.inverse.as_ref().map(map_json),
                        "necessary_condition_only": cert.necessary_condition_only(),
                        "verified": { "certificate": ok },
                    });
                    Ok(Report { text, json })
                }
                Err(rejection) => {
                    let json = json!({
                        "verdict": "rejected",
                        "determinant": rejection.determinant.to_string(),
                    });
                    Ok(Report {
                        text: format!("rejected: {rejection}"),
                        json,
                    })
                }
            }
        }
    }
}

fn fact_json(fact: &Fact) -> Value {
    let kind = match fact {
        Fact::Identity { .. } => "identity",
        Fact::Ode { .. } => "ode",
        Fact::Nonconstant { .. } => "nonconstant",
    };
    json!({
        "kind": kind,
        "label": fact.label(),
        "statement": fact.to_string(),
        "holds": fact.holds(),
    })
}

fn isotropy_failure(e: IsotropyError) -> Failure {
    let payload = match &e {
        IsotropyError::NotSimple(w) => json!({ "witness": witness_json(w) }),
        IsotropyError::StepFailed { step, label } => {
            json!({ "step": step.to_string(), "label": label })
        }
        IsotropyError::SearchBoxTooLarge { candidates, budget } => {
            json!({ "candidates": candidates, "budget": budget })
        }
        IsotropyError::InvalidBox(reason) => json!({ "reason": reason }),
    };
    Failure::Operation {
        message: e.to_string(),
        payload,
    }
}
