//! `sharpnum` — command-line front end for the generalized-number library.
//!
//! One subcommand per library operation plus seeded demonstration suites.
//! Machine reports go to stdout (plain text, JSON, or CSV), human-readable
//! error messages to stderr. Exit codes: 0 success, 1 a verification suite
//! ran but failed its own checks, 2 parse/usage error, 3 domain error
//! (not near-standard, not invertible, outside a domain), 4 a verdict came
//! back UNKNOWN because the truth is hidden behind the working tail order.

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sharpnum::parse::{parse_expr, parse_fermat, parse_gennum, parse_openset};
use sharpnum::suites::{self, scale, SuiteResult};
use sharpnum::{
    fermat, fermat_reyes, Config, Exponent, GenFunExpr, GenNum, LittleOhPoly, OrderVerdict,
    ProbeOutcome, Result, SharpDist, VerdictReport,
};

#[derive(Parser)]
#[command(
    name = "sharpnum",
    version,
    about = "Computable generalized numbers: branched eps-series, Fermat reals, \
             sharp/Fermat/omega metrics, and the Fermat-Reyes incremental ratio",
    after_help = "Literal grammars:\n  \
        generalized number   1 - 2*eps^(1/2) + O(eps^7) || 3/4*eps\n  \
        Fermat real          1/2 + t^(2/3) - 0.25*t\n  \
        expression           sin(x)*exp(-x^2) + eps\n  \
        open set             (-10, 10) u (12, inf)\n\n\
        Exit codes: 0 ok, 1 suite verdict FAIL, 2 parse error, 3 domain error, 4 UNKNOWN verdict."
)]
struct Cli {
    /// Output format for the machine report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Working tail order Q for truncating operations.
    #[arg(long = "tail-q", global = true, default_value_t = 40,
          value_parser = clap::value_parser!(i64).range(1..=10_000))]
    tail_q: i64,

    /// Seed for the randomized demo suites (recorded in every report).
    #[arg(long, global = true, default_value_t = scale::SEED)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression at a generalized point (Taylor mode), or at
    /// a Fermat real with --fermat.
    Eval {
        /// Extend the function to a Fermat-real argument instead (the
        /// point literal then uses the variable `t`).
        #[arg(long)]
        fermat: bool,
        /// Domain of the function (default: the whole line).
        #[arg(long = "U", allow_hyphen_values = true)]
        domain: Option<String>,
        /// Expression in x (and eps outside --fermat mode).
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Point literal: a generalized number, or a Fermat real with --fermat.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },

    /// Distance between two generalized numbers in a chosen metric.
    #[command(group(ArgGroup::new("metric").required(true).args(["sharp", "fermat", "omega"])))]
    Dist {
        /// Sharp ultrametric d_s = e^(-v(a-b)).
        #[arg(long)]
        sharp: bool,
        /// Fermat pseudometric d_F = |st a - st b| (near-standard points).
        #[arg(long)]
        fermat: bool,
        /// Omega metric d_w = d_F + d_s(delta a, delta b).
        #[arg(long)]
        omega: bool,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },

    /// Valuation v(a): the leading eps-order, or its bounds when a finite
    /// tail hides the leading term.
    Valuation {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },

    /// Generalized absolute value |a| (branchwise leading-sign flip).
    Abs {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },

    /// Compare two generalized numbers in the partial order.
    Order {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },

    /// Invert a generalized number to the working tail order.
    Invert {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },

    /// Split a near-standard number into standard part and infinitesimal.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },

    /// Verify the Fermat-Reyes identity f(X+H) = f(X) + H*r(X,H) and
    /// print the incremental ratio r(X,H).
    Fr {
        /// Expression in x.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Domain of f.
        #[arg(long = "U", allow_hyphen_values = true)]
        domain: String,
        /// Base point X (generalized-number literal).
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Increment H (generalized-number literal).
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },

    /// Test whether (X, H) lies in the near-standard thickening of U and
    /// report the openness margin.
    Thicken {
        #[arg(long = "U", allow_hyphen_values = true)]
        domain: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },

    /// Probe a generalized function for a non-vanishing invertible witness.
    Probe {
        /// Domain (default: the whole line).
        #[arg(long = "U", allow_hyphen_values = true)]
        domain: Option<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },

    /// Run a seeded demonstration suite and print its verdict table.
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// The net x_k with d_w(x_k, 0) = 1/k whose image under u = exp never
    /// sharp-converges to u(0).
    ConvEx {
        #[arg(long, default_value_t = scale::CONV_EX_KMAX)]
        kmax: u32,
    },
    /// Distinct standard reals sit at sharp distance exactly 1.
    Discreteness {
        #[arg(long, default_value_t = scale::DISCRETENESS_PAIRS)]
        n: usize,
    },
    /// Ultrametric inequality, Krull sharpening, and valuation laws.
    Ultrametric {
        #[arg(long, default_value_t = scale::ULTRAMETRIC_TRIPLES)]
        n: usize,
    },
    /// Sharp balls to gabs balls and back, certificates checked on members.
    BallConvert {
        #[arg(long, default_value_t = scale::BALL_CERTS)]
        certs: usize,
        #[arg(long, default_value_t = scale::BALL_MEMBERS)]
        members: usize,
    },
    /// The Fermat-Reyes corpus: six function families, per-instance checks.
    FrCorpus {
        #[arg(long = "per-family", default_value_t = scale::FR_PER_FAMILY)]
        per_family: usize,
    },
    /// First-order tangency: f(x+h) = f(x) + h*f'(st x) for h in D.
    Tangent {
        #[arg(long, default_value_t = scale::TANGENT_INSTANCES)]
        n: usize,
    },
    /// Points on a sharp sphere stay on it under small perturbations.
    Sphere {
        #[arg(long, default_value_t = scale::SPHERE_INSTANCES)]
        n: usize,
    },
    /// The non-vanishing probe harness: witnesses and honest exhaustion.
    ProbeDemo,
    /// The six generalized-absolute-value laws.
    Gabs {
        #[arg(long, default_value_t = scale::GABS_VALUES)]
        n: usize,
    },
}

/// What a command produced: ordered key/value fields, or a verdict table.
enum CmdResult {
    Value { fields: Vec<(String, Value)>, exit: i32 },
    Table(VerdictReport, i32),
}

fn main() {
    let cli = Cli::parse();
    let config = Config::with_tail_order(Exponent::new(cli.tail_q, 1));
    let (label, inputs) = describe(&cli.cmd);
    match execute(&cli.cmd, &config, cli.seed) {
        Ok(result) => {
            let (text, exit) = render_result(&cli, &config, &label, &inputs, &result);
            write_stdout(&text);
            std::process::exit(exit);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            if cli.format == Format::Json {
                let envelope = envelope(
                    &label,
                    &config,
                    cli.seed,
                    &inputs,
                    Value::Null,
                    vec![e.to_string()],
                );
                write_stdout(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&envelope).expect("serializes")
                ));
            }
            std::process::exit(e.exit_code());
        }
    }
}

/// Write to stdout, exiting quietly when the reader hung up (e.g. `| head`).
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let outcome = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    if let Err(e) = outcome {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write to stdout: {}", e);
            std::process::exit(3);
        }
        std::process::exit(0);
    }
}

/// Command label and raw input echo, available even when execution fails.
fn describe(cmd: &Cmd) -> (String, Vec<(String, String)>) {
    fn pairs(kv: &[(&str, &str)]) -> Vec<(String, String)> {
        kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }
    match cmd {
        Cmd::Eval { fermat, domain, f, x } => {
            let label = if *fermat { "eval --fermat" } else { "eval" };
            let mut inputs = pairs(&[("f", f), ("x", x)]);
            if let Some(u) = domain {
                inputs.push(("U".into(), u.clone()));
            }
            (label.into(), inputs)
        }
        Cmd::Dist { sharp, fermat, a, b, .. } => {
            let metric = if *sharp {
                "--sharp"
            } else if *fermat {
                "--fermat"
            } else {
                "--omega"
            };
            (format!("dist {}", metric), pairs(&[("a", a), ("b", b)]))
        }
        Cmd::Valuation { a } => ("valuation".into(), pairs(&[("a", a)])),
        Cmd::Abs { a } => ("abs".into(), pairs(&[("a", a)])),
        Cmd::Order { a, b } => ("order".into(), pairs(&[("a", a), ("b", b)])),
        Cmd::Invert { a } => ("invert".into(), pairs(&[("a", a)])),
        Cmd::Decompose { a } => ("decompose".into(), pairs(&[("a", a)])),
        Cmd::Fr { f, domain, x, h } => {
            ("fr".into(), pairs(&[("f", f), ("U", domain), ("x", x), ("h", h)]))
        }
        Cmd::Thicken { domain, x, h } => {
            ("thicken".into(), pairs(&[("U", domain), ("x", x), ("h", h)]))
        }
        Cmd::Probe { domain, f } => {
            let mut inputs = pairs(&[("f", f)]);
            if let Some(u) = domain {
                inputs.push(("U".into(), u.clone()));
            }
            ("probe".into(), inputs)
        }
        Cmd::Demo { which } => {
            let (name, inputs): (&str, Vec<(String, String)>) = match which {
                DemoCmd::ConvEx { kmax } => ("conv-ex", vec![("kmax".into(), kmax.to_string())]),
                DemoCmd::Discreteness { n } => ("discreteness", vec![("n".into(), n.to_string())]),
                DemoCmd::Ultrametric { n } => ("ultrametric", vec![("n".into(), n.to_string())]),
                DemoCmd::BallConvert { certs, members } => (
                    "ball-convert",
                    vec![
                        ("certs".into(), certs.to_string()),
                        ("members".into(), members.to_string()),
                    ],
                ),
                DemoCmd::FrCorpus { per_family } => {
                    ("fr-corpus", vec![("per-family".into(), per_family.to_string())])
                }
                DemoCmd::Tangent { n } => ("tangent", vec![("n".into(), n.to_string())]),
                DemoCmd::Sphere { n } => ("sphere", vec![("n".into(), n.to_string())]),
                DemoCmd::ProbeDemo => ("probe-demo", Vec::new()),
                DemoCmd::Gabs { n } => ("gabs", vec![("n".into(), n.to_string())]),
            };
            (format!("demo {}", name), inputs)
        }
    }
}

fn execute(cmd: &Cmd, config: &Config, seed: u64) -> Result<CmdResult> {
    match cmd {
        Cmd::Eval { fermat: true, f, x, .. } => {
            let f = parse_expr(f)?;
            let x: LittleOhPoly<f64> = parse_fermat(x)?;
            let v = fermat::extend(&f, &x)?;
            Ok(value(vec![("value", text(v))]))
        }
        Cmd::Eval { fermat: false, domain, f, x } => {
            let gf = genfun(f, domain.as_deref())?;
            let x: GenNum = parse_gennum(x)?;
            let v = gf.eval_gen(&x, config)?;
            Ok(value(vec![("value", text(v))]))
        }
        Cmd::Dist { sharp: true, a, b, .. } => {
            let (a, b) = (parse_gennum::<f64>(a)?, parse_gennum::<f64>(b)?);
            Ok(value(sharp_dist_fields("d_sharp", a.sharp_dist(&b))))
        }
        Cmd::Dist { fermat: true, a, b, .. } => {
            let (a, b) = (parse_gennum::<f64>(a)?, parse_gennum::<f64>(b)?);
            let d = a.fermat_dist(&b)?;
            Ok(value(vec![("d_fermat", metric(d))]))
        }
        Cmd::Dist { a, b, .. } => {
            let (a, b) = (parse_gennum::<f64>(a)?, parse_gennum::<f64>(b)?);
            Ok(value(sharp_dist_fields("d_omega", a.omega_dist(&b)?)))
        }
        Cmd::Valuation { a } => {
            let a: GenNum = parse_gennum(a)?;
            let v = a.valuation();
            Ok(value(match v.value() {
                Some(exact) => vec![("valuation", text(exact))],
                None => vec![("valuation_lo", text(v.lo)), ("valuation_hi", text(v.hi))],
            }))
        }
        Cmd::Abs { a } => {
            let a: GenNum = parse_gennum(a)?;
            Ok(value(vec![("abs", text(a.gen_abs()?))]))
        }
        Cmd::Order { a, b } => {
            let (a, b) = (parse_gennum::<f64>(a)?, parse_gennum::<f64>(b)?);
            let (fields, exit) = match a.order_compare(&b) {
                OrderVerdict::LE => (vec![("order", text("le"))], 0),
                OrderVerdict::GE => (vec![("order", text("ge"))], 0),
                OrderVerdict::EQ => (vec![("order", text("eq"))], 0),
                OrderVerdict::Incomparable => (vec![("order", text("incomparable"))], 0),
                OrderVerdict::Unknown(t) => (
                    vec![("order", text("unknown")), ("undecided_at_tail", text(t))],
                    4,
                ),
            };
            Ok(CmdResult::Value { fields: own(fields), exit })
        }
        Cmd::Invert { a } => {
            let a: GenNum = parse_gennum(a)?;
            Ok(value(vec![("inverse", text(a.invert(config.tail_order)?))]))
        }
        Cmd::Decompose { a } => {
            let a: GenNum = parse_gennum(a)?;
            let (st, delta) = a.near_standard_decompose()?;
            Ok(value(vec![
                ("standard_part", text(st)),
                ("infinitesimal_part", text(delta)),
            ]))
        }
        Cmd::Fr { f, domain, x, h } => {
            let gf = genfun(f, Some(domain))?;
            let x: GenNum = parse_gennum(x)?;
            let h: GenNum = parse_gennum(h)?;
            let v = fermat_reyes::verify_fr(&gf, &x, &h, config)?;
            let mut fields = vec![("ratio".to_string(), text(&v.ratio))];
            for (name, measured, tol, ok) in v.rows() {
                let shown = match measured {
                    Some(g) => format!("{:e}", g),
                    None => "n/a".to_string(),
                };
                fields.push((name.to_string(), text(shown)));
                fields.push((format!("{}_tol", name), text(format!("{:e}", tol))));
                fields.push((format!("{}_ok", name), Value::Bool(ok)));
            }
            let passed = v.passed();
            fields.push(("passed".to_string(), Value::Bool(passed)));
            Ok(CmdResult::Value { fields, exit: i32::from(!passed) })
        }
        Cmd::Thicken { domain, x, h } => {
            let u = parse_openset(domain)?;
            let x: GenNum = parse_gennum(x)?;
            let h: GenNum = parse_gennum(h)?;
            let (contained, margin) = fermat_reyes::near_std_thickening(&u, &x, &h)?;
            let mut fields = vec![("contained", Value::Bool(contained))];
            if let Some(m) = margin {
                fields.push(("margin", metric(m)));
            }
            Ok(value(fields))
        }
        Cmd::Probe { domain, f } => {
            let gf = genfun(f, domain.as_deref())?;
            Ok(value(match gf.probe_nonzero(config)? {
                ProbeOutcome::Witness { x, value: v, probes } => vec![
                    ("outcome", text("witness")),
                    ("x", text(x)),
                    ("value", text(v)),
                    ("probes", text(probes)),
                ],
                ProbeOutcome::Exhausted { probes } => {
                    vec![("outcome", text("exhausted")), ("probes", text(probes))]
                }
            }))
        }
        Cmd::Demo { which } => {
            let run: SuiteResult = match which {
                DemoCmd::ConvEx { kmax } => suites::suite_conv_ex(*kmax, config)?,
                DemoCmd::Discreteness { n } => suites::suite_discreteness(seed, *n, config)?,
                DemoCmd::Ultrametric { n } => suites::suite_ultrametric(seed, *n, config)?,
                DemoCmd::BallConvert { certs, members } => {
                    suites::suite_ball_convert(seed, *certs, *members, config)?
                }
                DemoCmd::FrCorpus { per_family } => {
                    suites::suite_fr_corpus(seed, *per_family, config)?
                }
                DemoCmd::Tangent { n } => suites::suite_tangent(seed, *n, config)?,
                DemoCmd::Sphere { n } => suites::suite_sphere(seed, *n, config)?,
                DemoCmd::ProbeDemo => suites::suite_probe(config)?,
                DemoCmd::Gabs { n } => suites::suite_gabs(seed, *n, config)?,
            };
            Ok(CmdResult::Table(run.report, i32::from(!run.passed)))
        }
    }
}

/// Expression plus optional domain literal as a generalized function.
fn genfun(f: &str, domain: Option<&str>) -> Result<GenFunExpr> {
    let expr = parse_expr(f)?;
    Ok(match domain {
        Some(u) => GenFunExpr::new(expr, parse_openset(u)?),
        None => GenFunExpr::on_line(expr),
    })
}

fn text(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

/// Metric values print with nine decimals everywhere.
fn metric(d: f64) -> Value {
    Value::String(format!("{:.9}", d))
}

fn sharp_dist_fields(name: &str, d: SharpDist) -> Vec<(&str, Value)> {
    match d {
        SharpDist::Point(p) => vec![(name, metric(p))],
        SharpDist::Interval { lower, upper } => {
            // Two names distinguish the honest-interval case; plain mode
            // then labels both lines.
            vec![("lower", metric(lower)), ("upper", metric(upper))]
        }
    }
}

fn own(fields: Vec<(&str, Value)>) -> Vec<(String, Value)> {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn value(fields: Vec<(&str, Value)>) -> CmdResult {
    CmdResult::Value { fields: own(fields), exit: 0 }
}

/// The JSON envelope every json-mode invocation prints.
fn envelope(
    command: &str,
    config: &Config,
    seed: u64,
    inputs: &[(String, String)],
    result: Value,
    diagnostics: Vec<String>,
) -> Value {
    let inputs: Vec<Value> = inputs
        .iter()
        .map(|(n, v)| json!({ "name": n, "value": v }))
        .collect();
    json!({
        "command": command,
        "config": {
            "Q": config.tail_order.to_string(),
            "tolerances": {
                "residual_tol": config.residual_tol,
                "oracle_rel_tol": config.oracle_rel_tol,
                "oracle_j_range": [config.oracle_j_range.0, config.oracle_j_range.1],
                "witness_threshold": config.witness_threshold,
                "negligible_threshold": config.negligible_threshold,
                "quad_tol": config.quad_tol,
                "quad_max_depth": config.quad_max_depth,
                "fit_margin": config.fit_margin,
                "grid_points": config.grid_points,
                "fr_tail_order": config.fr_tail_order.to_string(),
            },
            "seed": seed,
        },
        "inputs": inputs,
        "result": result,
        "diagnostics": diagnostics,
    })
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Null => "n/a".into(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render the result in the chosen format, with the process exit code.
fn render_result(
    cli: &Cli,
    config: &Config,
    label: &str,
    inputs: &[(String, String)],
    result: &CmdResult,
) -> (String, i32) {
    match (cli.format, result) {
        (Format::Plain, CmdResult::Value { fields, exit }) => {
            let text = if let [(_, only)] = fields.as_slice() {
                format!("{}\n", plain_value(only))
            } else {
                fields
                    .iter()
                    .map(|(name, v)| format!("{}: {}\n", name, plain_value(v)))
                    .collect()
            };
            (text, *exit)
        }
        (Format::Plain, CmdResult::Table(report, exit)) => (report.to_string(), *exit),
        (Format::Csv, CmdResult::Value { fields, exit }) => {
            let mut text = String::from("name,value\n");
            for (name, v) in fields {
                text.push_str(&format!(
                    "{},{}\n",
                    csv_field(name),
                    csv_field(&plain_value(v))
                ));
            }
            (text, *exit)
        }
        (Format::Csv, CmdResult::Table(report, exit)) => (report.to_csv(), *exit),
        (Format::Json, CmdResult::Value { fields, exit }) => {
            let obj: serde_json::Map<String, Value> =
                fields.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            let env = envelope(label, config, cli.seed, inputs, Value::Object(obj), Vec::new());
            let text = format!("{}\n", serde_json::to_string_pretty(&env).expect("serializes"));
            (text, *exit)
        }
        (Format::Json, CmdResult::Table(report, exit)) => {
            let env = envelope(
                label,
                config,
                cli.seed,
                inputs,
                report.to_json(),
                report.diagnostics.clone(),
            );
            let text = format!("{}\n", serde_json::to_string_pretty(&env).expect("serializes"));
            (text, *exit)
        }
    }
}
