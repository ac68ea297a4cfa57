//! Command dispatch for the `dmod` binary.
//!
//! [`run_command`] is the whole process boundary: it takes `argv`, returns
//! the exit status and the rendered stdout/stderr, and holds no state
//! between calls. Exit status 0 is success, 1 a domain error (for example an
//! order bound violated), 2 a usage or parse error.

use std::collections::BTreeSet;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dmod_core::dmodule::{
    ideal_member_bounded, poly_solutions, window_generates, Membership, OpMatrix, PolyVec,
    WeightWindow,
};
use dmod_core::p1::{global_sections_basis, is_global, GlobalSection};
use dmod_core::sl2::{ad_matrix, casimir, pbw_mul, phi_to_p1, PBWElem, Sl2Basis};
use dmod_core::symbol::{char_ideal_gens, sym_p, SymPoly};
use dmod_core::syntax::{self, Renamed, Signature};
use dmod_core::{Poly, Rational, WeylOp};

/// Name of the term order used by every printed and serialized operator.
pub const TERM_ORDER: &str = "graded-lex (|I|+|J|, I, J), descending";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dmod",
    version,
    about = "Exact arithmetic with polynomial differential operators"
)]
pub struct Cli {
    /// Number of variables.
    #[arg(short = 'n', long = "nvars", global = true, default_value_t = 1)]
    pub nvars: usize,

    /// Allow negative powers of the coordinates.
    #[arg(long, global = true)]
    pub laurent: bool,

    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an operator in normal order.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print [a, b] = ab - ba.
    Commutator {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Print the filtration order.
    Order {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the p-symbol.
    Symbol {
        #[arg(long)]
        p: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the top symbols of the generators of a left ideal.
    CharIdeal {
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// Polynomial solutions of a system; each argument is one row, entries
    /// separated by `;`.
    Solve {
        #[arg(long)]
        degree: usize,
        #[arg(required = true, allow_hyphen_values = true)]
        rows: Vec<String>,
    },
    /// Degree-bounded left-ideal membership.
    Member {
        #[arg(long)]
        degree: usize,
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[arg(required = true, allow_hyphen_values = true)]
        generators: Vec<String>,
    },
    /// The weight ladder of D/D(z*dz - lambda) on a finite window.
    Mlambda {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        halfwidth: i64,
    },
    /// Global differential operators on the projective line.
    #[command(name = "p1-global", subcommand)]
    P1Global(P1Command),
    /// sl2 and its enveloping algebra.
    #[command(subcommand)]
    Sl2(Sl2Command),
}

#[derive(Subcommand, Debug)]
pub enum P1Command {
    /// Basis of the global sections of order <= max-order.
    Basis(MaxOrder),
    /// Is a chart-0 operator global? Searches chart-1 partners of order and
    /// coefficient degree <= max-order.
    IsGlobal {
        #[command(flatten)]
        bound: MaxOrder,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Args, Debug)]
pub struct MaxOrder {
    #[arg(long = "max-order")]
    pub max_order: usize,
}

#[derive(Subcommand, Debug)]
pub enum Sl2Command {
    /// Matrix of ad_X in the ordered basis (E, H, F).
    Ad { element: String },
    /// Product in PBW order F^i H^j E^k.
    PbwMul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// The Casimir element H^2 + 2EF + 2FE.
    Casimir {
        /// Print its image among differential operators on P^1 instead.
        #[arg(long)]
        phi: bool,
    },
    /// Image of an element under E -> -dz, H -> -2*z*dz, F -> z^2*dz.
    Phi {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// Exit status and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<dmod_core::Error> for Failure {
    fn from(e: dmod_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// What a command produced: text lines, the JSON `result`, the JSON `bounds`,
/// and any warnings.
struct Report {
    text: Vec<String>,
    result: Value,
    bounds: Value,
    warnings: Vec<String>,
}

impl Report {
    fn new(text: Vec<String>, result: Value) -> Self {
        Report {
            text,
            result,
            bounds: json!({}),
            warnings: Vec::new(),
        }
    }

    fn with_bounds(mut self, bounds: Value) -> Self {
        self.bounds = bounds;
        self
    }

    fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    if cli.nvars == 0 {
        return Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: "error: -n must be at least 1\n".into(),
        };
    }
    match dispatch(&cli) {
        Ok(report) => {
            let mut stderr = String::new();
            let stdout = if cli.json {
                let obj = json!({
                    "command": command_name(&cli.command),
                    "input": input_of(&cli),
                    "result": report.result,
                    "bounds": report.bounds,
                    "warnings": report.warnings,
                    "term_order": TERM_ORDER,
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&obj).expect("json values serialize")
                )
            } else {
                for w in &report.warnings {
                    stderr.push_str(&format!("warning: {w}\n"));
                }
                let mut s = report.text.join("\n");
                s.push('\n');
                s
            };
            Outcome {
                code: EXIT_OK,
                stdout,
                stderr,
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Normalize { .. } => "normalize",
        Command::Commutator { .. } => "commutator",
        Command::Order { .. } => "order",
        Command::Symbol { .. } => "symbol",
        Command::CharIdeal { .. } => "char-ideal",
        Command::Solve { .. } => "solve",
        Command::Member { .. } => "member",
        Command::Mlambda { .. } => "mlambda",
        Command::P1Global(P1Command::Basis(_)) => "p1-global basis",
        Command::P1Global(P1Command::IsGlobal { .. }) => "p1-global is-global",
        Command::Sl2(Sl2Command::Ad { .. }) => "sl2 ad",
        Command::Sl2(Sl2Command::PbwMul { .. }) => "sl2 pbw-mul",
        Command::Sl2(Sl2Command::Casimir { .. }) => "sl2 casimir",
        Command::Sl2(Sl2Command::Phi { .. }) => "sl2 phi",
    }
}

fn input_of(cli: &Cli) -> Value {
    let exprs: Vec<String> = match &cli.command {
        Command::Normalize { expr }
        | Command::Order { expr }
        | Command::Symbol { expr, .. }
        | Command::P1Global(P1Command::IsGlobal { expr, .. })
        | Command::Sl2(Sl2Command::Phi { expr }) => vec![expr.clone()],
        Command::Commutator { a, b } | Command::Sl2(Sl2Command::PbwMul { a, b }) => {
            vec![a.clone(), b.clone()]
        }
        Command::CharIdeal { generators } => generators.clone(),
        Command::Solve { rows, .. } => rows.clone(),
        Command::Member {
            target, generators, ..
        } => std::iter::once(target.clone())
            .chain(generators.iter().cloned())
            .collect(),
        Command::Mlambda { lambda, halfwidth } => vec![lambda.clone(), halfwidth.to_string()],
        Command::Sl2(Sl2Command::Ad { element }) => vec![element.clone()],
        Command::P1Global(P1Command::Basis(_)) | Command::Sl2(Sl2Command::Casimir { .. }) => {
            Vec::new()
        }
    };
    json!({
        "expressions": exprs,
        "nvars": cli.nvars,
        "laurent": cli.laurent,
    })
}

fn parse_op(src: &str, cli: &Cli) -> Result<WeylOp, Failure> {
    parse_op_in(src, cli.nvars, cli.laurent)
}

fn parse_op_in(src: &str, nvars: usize, laurent: bool) -> Result<WeylOp, Failure> {
    let ast = syntax::parse(src, &Signature::Weyl { nvars, laurent })
        .map_err(|e| Failure::Usage(format!("in `{src}`: {e}")))?;
    Ok(syntax::eval(&ast, nvars, laurent)?)
}

fn parse_pbw(src: &str) -> Result<PBWElem, Failure> {
    let ast = syntax::parse_pbw(src).map_err(|e| Failure::Usage(format!("in `{src}`: {e}")))?;
    Ok(syntax::eval_pbw(&ast)?)
}

/// A rational literal such as `5/2` or `-7/3`, read with the expression
/// grammar and required to be constant.
fn parse_rational(src: &str) -> Result<Rational, Failure> {
    let op = parse_op_in(src, 1, false)?;
    op.as_poly()
        .filter(|p| p.degree().unwrap_or(0) == 0)
        .map(|p| p.coefficient(&dmod_core::MultiIndex::zeros(1)))
        .ok_or_else(|| Failure::Usage(format!("`{src}` is not a rational number p/q")))
}

fn op_json(op: &WeylOp) -> Value {
    Value::Array(
        op.terms()
            .rev()
            .map(|(k, c)| {
                json!({
                    "coefficient": c.to_string(),
                    "x_exponents": k.x.as_slice(),
                    "d_exponents": k.d.as_slice(),
                })
            })
            .collect(),
    )
}

fn poly_json(p: &Poly) -> Value {
    op_json(&p.to_op())
}

fn sym_json(s: &SymPoly) -> Value {
    Value::Array(
        s.terms()
            .rev()
            .map(|(k, c)| {
                json!({
                    "coefficient": c.to_string(),
                    "x_exponents": k.x.as_slice(),
                    "xi_exponents": k.d.as_slice(),
                })
            })
            .collect(),
    )
}

fn pbw_json(e: &PBWElem) -> Value {
    let mut terms: Vec<_> = e.terms().collect();
    terms.sort_by_key(|(&(i, j, k), _)| std::cmp::Reverse((i + j + k, i, j, k)));
    Value::Array(
        terms
            .into_iter()
            .map(|(&(i, j, k), c)| {
                json!({
                    "coefficient": c.to_string(),
                    "fhe_exponents": [i, j, k],
                })
            })
            .collect(),
    )
}

fn zeta_text(op: &WeylOp) -> String {
    Renamed {
        op,
        coordinate: |_| "zeta".to_string(),
        derivation: |_| "dzeta".to_string(),
    }
    .to_string()
}

fn vector_text(v: &PolyVec) -> String {
    if v.len() == 1 {
        v.entries()[0].to_string()
    } else {
        let parts: Vec<String> = v.entries().iter().map(Poly::to_string).collect();
        format!("({})", parts.join(", "))
    }
}

fn interval_text(set: &BTreeSet<i64>) -> String {
    match (set.first(), set.last()) {
        (Some(a), Some(b)) if (b - a + 1) as usize == set.len() => format!("[{a}, {b}]"),
        _ => {
            let items: Vec<String> = set.iter().map(i64::to_string).collect();
            format!("{{{}}}", items.join(", "))
        }
    }
}

fn section_json(s: &GlobalSection) -> Value {
    json!({ "u0": op_json(&s.u0_form), "u1": op_json(&s.u1_form) })
}

fn plain_one_variable(cli: &Cli) -> Result<(), Failure> {
    if cli.nvars != 1 || cli.laurent {
        return Err(Failure::Usage(
            "this command works on the projective line: use -n 1 without --laurent".into(),
        ));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Normalize { expr } => {
            let op = parse_op(expr, cli)?;
            Ok(Report::new(vec![op.to_string()], op_json(&op)))
        }
        Command::Commutator { a, b } => {
            let c = parse_op(a, cli)?.commutator(&parse_op(b, cli)?)?;
            Ok(Report::new(vec![c.to_string()], op_json(&c)))
        }
        Command::Order { expr } => {
            let order = parse_op(expr, cli)?.order();
            let result = order.finite().map_or(Value::Null, |p| json!(p));
            Ok(Report::new(vec![order.to_string()], result))
        }
        Command::Symbol { p, expr } => {
            let s = sym_p(&parse_op(expr, cli)?, *p)?;
            Ok(Report::new(vec![s.to_string()], sym_json(&s)).with_bounds(json!({ "p": p })))
        }
        Command::CharIdeal { generators } => {
            let ops = generators
                .iter()
                .map(|g| parse_op(g, cli))
                .collect::<Result<Vec<_>, _>>()?;
            let gens = char_ideal_gens(&ops)?;
            Ok(Report::new(
                gens.generators.iter().map(SymPoly::to_string).collect(),
                Value::Array(gens.generators.iter().map(sym_json).collect()),
            ))
        }
        Command::Solve { degree, rows } => {
            let entries = rows
                .iter()
                .map(|row| {
                    row.split(';')
                        .map(|e| parse_op(e, cli))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let sys = OpMatrix::new(entries)?;
            let sol = poly_solutions(&sys, *degree)?;
            let text = if sol.basis.is_empty() {
                vec![format!("no polynomial solutions of degree <= {degree}")]
            } else {
                sol.basis.iter().map(vector_text).collect()
            };
            let result = Value::Array(
                sol.basis
                    .iter()
                    .map(|v| {
                        if v.len() == 1 {
                            poly_json(&v.entries()[0])
                        } else {
                            Value::Array(v.entries().iter().map(poly_json).collect())
                        }
                    })
                    .collect(),
            );
            Ok(Report::new(text, result).with_bounds(json!({ "degree": degree })))
        }
        Command::Member {
            degree,
            target,
            generators,
        } => {
            let t = parse_op(target, cli)?;
            let gens = generators
                .iter()
                .map(|g| parse_op(g, cli))
                .collect::<Result<Vec<_>, _>>()?;
            let bounds = json!({ "degree": degree });
            match ideal_member_bounded(&t, &gens, *degree)? {
                Membership::Member { cofactors } => {
                    let mut text = vec![format!("member (certificate at degree <= {degree})")];
                    for (k, u) in cofactors.iter().enumerate() {
                        text.push(format!("cofactor {}: {}", k + 1, u));
                    }
                    Ok(Report::new(
                        text,
                        json!({
                            "member": true,
                            "cofactors": cofactors.iter().map(op_json).collect::<Vec<_>>(),
                        }),
                    )
                    .with_bounds(bounds))
                }
                Membership::NotFound { degree_bound } => Ok(Report::new(
                    vec![format!("not found at degree <= {degree_bound}")],
                    json!({ "member": false, "cofactors": [] }),
                )
                .with_bounds(bounds)
                .warn(format!(
                    "a negative answer only covers certificates of degree <= {degree_bound}"
                ))),
            }
        }
        Command::Mlambda { lambda, halfwidth } => {
            let lambda = parse_rational(lambda)?;
            let w = WeightWindow::new(lambda.clone(), *halfwidth)?;
            let mut text = vec![
                format!("lambda = {lambda}, halfwidth = {halfwidth}"),
                "k: dz-coefficient (lambda+k), reachable from v_k".to_string(),
            ];
            let mut rows = Vec::new();
            let mut all_full = true;
            for k in w.indices() {
                let reach = window_generates(&w, k)?;
                let full = reach.len() as i64 == 2 * halfwidth + 1;
                all_full &= full;
                text.push(format!(
                    "{k}: {}, {}",
                    w.d_coefficient(k),
                    interval_text(&reach)
                ));
                rows.push(json!({
                    "k": k,
                    "d_coefficient": w.d_coefficient(k).to_string(),
                    "reachable": reach.iter().collect::<Vec<_>>(),
                    "full": full,
                }));
            }
            text.push(format!(
                "every generator reaches the whole window: {}",
                if all_full { "yes" } else { "no" }
            ));
            let mut report = Report::new(
                text,
                json!({ "ladder": rows, "irreducible_in_window": all_full }),
            )
            .with_bounds(json!({ "halfwidth": halfwidth }));
            if lambda.is_integer() && all_full {
                report = report.warn(format!(
                    "lambda is an integer but the blocking index -lambda = {} lies outside the window",
                    -&lambda
                ));
            }
            Ok(report)
        }
        Command::P1Global(P1Command::Basis(MaxOrder { max_order })) => {
            plain_one_variable(cli)?;
            let basis = global_sections_basis(*max_order)?;
            let mut text = vec![format!(
                "global sections of order <= {} (coefficient degree <= {}): dimension {}",
                basis.max_order,
                basis.coefficient_degree_bound,
                basis.sections.len()
            )];
            for s in &basis.sections {
                text.push(format!("U0: {} | U1: {}", s.u0_form, zeta_text(&s.u1_form)));
            }
            Ok(Report::new(
                text,
                json!({ "sections": basis.sections.iter().map(section_json).collect::<Vec<_>>() }),
            )
            .with_bounds(json!({
                "max_order": basis.max_order,
                "coefficient_degree": basis.coefficient_degree_bound,
            })))
        }
        Command::P1Global(P1Command::IsGlobal {
            bound: MaxOrder { max_order },
            expr,
        }) => {
            plain_one_variable(cli)?;
            let op = parse_op(expr, cli)?;
            let bounds = json!({ "max_search_degree": max_order });
            Ok(match is_global(&op, *max_order)? {
                Some(s) => Report::new(
                    vec![format!("global: U1 form {}", zeta_text(&s.u1_form))],
                    json!({ "global": true, "section": section_json(&s) }),
                )
                .with_bounds(bounds),
                None => Report::new(
                    vec![format!("not global within search degree {max_order}")],
                    json!({ "global": false, "section": null }),
                )
                .with_bounds(bounds),
            })
        }
        Command::Sl2(Sl2Command::Ad { element }) => {
            let b = Sl2Basis::parse(element)
                .ok_or_else(|| Failure::Usage(format!("`{element}` is not one of E, F, H")))?;
            let m = ad_matrix(b);
            let text = m
                .iter()
                .map(|row| {
                    let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            let result = Value::Array(
                m.iter()
                    .map(|row| Value::Array(row.iter().map(|c| json!(c.to_string())).collect()))
                    .collect(),
            );
            Ok(Report::new(text, result).with_bounds(json!({ "basis_order": ["E", "H", "F"] })))
        }
        Command::Sl2(Sl2Command::PbwMul { a, b }) => {
            let p = pbw_mul(&parse_pbw(a)?, &parse_pbw(b)?);
            Ok(Report::new(vec![p.to_string()], pbw_json(&p)))
        }
        Command::Sl2(Sl2Command::Casimir { phi }) => {
            let c = casimir();
            if *phi {
                let img = phi_to_p1(&c);
                Ok(Report::new(vec![img.to_string()], op_json(&img)))
            } else {
                Ok(Report::new(vec![c.to_string()], pbw_json(&c)))
            }
        }
        Command::Sl2(Sl2Command::Phi { expr }) => {
            let img = phi_to_p1(&parse_pbw(expr)?);
            Ok(Report::new(vec![img.to_string()], op_json(&img)))
        }
    }
}
