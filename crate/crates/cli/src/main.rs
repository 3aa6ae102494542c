//! `metinv`: finite generation, Hilbert series, invariance checks and the
//! generator catalog for `SL_2`-actions on free metabelian Lie algebras.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 usage or parse error.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use metabelian_sl2::catalog::{catalog, find_case, verify_catalog, CatalogReport};
use metabelian_sl2::invariants::{decide_finite_generation, infinite_family_witness, pi};
use metabelian_sl2::series::{hilbert_series, Target, DEFAULT_BOUND};
use metabelian_sl2::sl2::delta_images;
use metabelian_sl2::{is_invariant, Error, LieExpr, Metabelian, ModuleSpec, Poly, WreathElement};
use serde::Serialize;
use serde_json::json;

const MAX_BOUND: u32 = 64;

#[derive(Parser)]
#[command(
    name = "metinv",
    version,
    about = "SL2-invariants of free metabelian Lie algebras"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the invariants of F_d are finitely generated.
    Decide {
        /// Module decomposition as a comma list of block degrees, e.g. `2,1`.
        spec: String,
    },
    /// Truncated Hilbert series of a graded object.
    Hilbert {
        spec: String,
        /// polyring, metabelian, invariant-ring or invariant-module.
        target: String,
        /// Truncation degree.
        #[arg(short = 'N', default_value_t = DEFAULT_BOUND)]
        bound: u32,
    },
    /// Check whether a polynomial or Lie element (read from a file, `-` for stdin) is invariant.
    Check { spec: String, file: String },
    /// Expand pi(f1, f2) = [f1(ad), f2(ad)] in the commutator basis.
    Pi {
        spec: String,
        #[arg(allow_hyphen_values = true)]
        f1: String,
        #[arg(allow_hyphen_values = true)]
        f2: String,
    },
    /// Invariants u, u.f, u.f^2, ... of strictly increasing degree.
    Witness {
        spec: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// List or verify the bundled generator catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Parse an expression and print it in canonical form.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        case: Option<String>,
    },
    Verify {
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        degree: u32,
    },
}

/// Outcome of a command: the text to print and whether a check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: impl Into<String>) -> Self {
        Output {
            text: text.into(),
            failed: false,
        }
    }
}

enum Element {
    Poly(Poly),
    Lie(WreathElement),
}

fn parse_spec(s: &str) -> Result<ModuleSpec, Error> {
    s.parse()
}

fn parse_element(text: &str, alg: &Metabelian) -> Result<Element, Error> {
    if text.contains('[') {
        let e: LieExpr = text.parse()?;
        Ok(Element::Lie(alg.eval(&e)?))
    } else {
        let p: Poly = text.parse()?;
        alg.x_to_y(&p)?;
        Ok(Element::Poly(p))
    }
}

fn lie_string(alg: &Metabelian, u: &WreathElement) -> Result<String, Error> {
    Ok(alg.to_lie_basis(u)?.to_string())
}

fn series_text(coefficients: &[i64]) -> String {
    let terms: Vec<String> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(n, c)| format!("{c} * z^{n}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("\n")
    }
}

fn render<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string(value).expect("serializable output")
    } else {
        text()
    }
}

fn report_text(r: &CatalogReport) -> String {
    let mut lines = vec![format!(
        "case {} (spec {}, degree <= {})",
        r.case, r.spec, r.bound
    )];
    for c in &r.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        if c.detail.is_empty() {
            lines.push(format!("  {mark} {}", c.name));
        } else {
            lines.push(format!("  {mark} {}: {}", c.name, c.detail));
        }
    }
    lines.join("\n")
}

fn run(cli: Cli) -> Result<Output, Error> {
    let json = cli.json;
    match cli.command {
        Command::Decide { spec } => {
            let verdict = decide_finite_generation(&parse_spec(&spec)?);
            Ok(Output::ok(render(json, &verdict, || {
                let mut s = format!(
                    "finitely generated: {}",
                    if verdict.finitely_generated {
                        "yes"
                    } else {
                        "no"
                    }
                );
                if let Some(g) = &verdict.generators {
                    s += &format!(
                        "\ngenerators: {}",
                        if g.is_empty() {
                            "none (the invariants are zero)".into()
                        } else {
                            g.join(", ")
                        }
                    );
                }
                s + &format!(
                    "\nreason: {}",
                    serde_json::to_value(verdict.reason)
                        .expect("enum")
                        .as_str()
                        .unwrap_or("")
                )
            })))
        }
        Command::Hilbert {
            spec,
            target,
            bound,
        } => {
            if bound > MAX_BOUND {
                return Err(Error::InvalidArgument(format!(
                    "-N {bound} exceeds the limit {MAX_BOUND}"
                )));
            }
            let spec = parse_spec(&spec)?;
            let target: Target = target.parse()?;
            let coefficients = hilbert_series(&spec, target, bound)?
                .integer_coefficients()
                .ok_or_else(|| {
                    Error::InvalidArgument("series coefficients exceed 64 bits".into())
                })?;
            Ok(Output::ok(render(json, &coefficients, || {
                series_text(&coefficients)
            })))
        }
        Command::Check { spec, file } => {
            let spec = parse_spec(&spec)?;
            let alg = Metabelian::new(spec.dim())?;
            let text = if file == "-" {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
                s
            } else {
                fs::read_to_string(&file)
                    .map_err(|e| Error::InvalidArgument(format!("{file}: {e}")))?
            };
            let (invariant, kind, d1, d2) = match parse_element(text.trim(), &alg)? {
                Element::Poly(p) => {
                    let (a, b) = delta_images(&spec, &p)?;
                    (
                        is_invariant(&spec, &p)?,
                        "polynomial",
                        a.to_string(),
                        b.to_string(),
                    )
                }
                Element::Lie(u) => {
                    let (a, b) = delta_images(&spec, &u)?;
                    (
                        is_invariant(&spec, &u)?,
                        "lie",
                        lie_string(&alg, &a)?,
                        lie_string(&alg, &b)?,
                    )
                }
            };
            let value = json!({ "invariant": invariant, "kind": kind, "delta1": d1, "delta2": d2 });
            let text = render(json, &value, || {
                if invariant {
                    "invariant".into()
                } else {
                    format!("not invariant\ndelta1: {d1}\ndelta2: {d2}")
                }
            });
            Ok(Output {
                text,
                failed: !invariant,
            })
        }
        Command::Pi { spec, f1, f2 } => {
            let spec = parse_spec(&spec)?;
            let alg = Metabelian::new(spec.dim())?;
            let u = pi(&f1.parse()?, &f2.parse()?, &alg)?;
            let expansion = alg.to_lie_basis(&u)?;
            let terms: Vec<_> = expansion
                .words
                .iter()
                .map(|(c, w)| json!({ "coefficient": c.to_string(), "word": w.to_string() }))
                .collect();
            let value =
                json!({ "expansion": expansion.to_string(), "zero": u.is_zero(), "terms": terms });
            Ok(Output::ok(render(json, &value, || {
                if u.is_zero() {
                    "0 (the polynomials are algebraically dependent)".into()
                } else {
                    expansion.to_string()
                }
            })))
        }
        Command::Witness { spec, count } => {
            let spec = parse_spec(&spec)?;
            let alg = Metabelian::new(spec.dim())?;
            let family = infinite_family_witness(&spec)?;
            let f = family.f.to_string();
            let mut items = Vec::new();
            for u in family.take(count) {
                items.push(json!({ "degree": u.degree(), "element": lie_string(&alg, &u)? }));
            }
            let value = json!({ "multiplier": f, "invariants": items });
            Ok(Output::ok(render(json, &value, || {
                let mut lines = vec![format!("multiplier f = {f}")];
                for it in &items {
                    lines.push(format!(
                        "degree {}: {}",
                        it["degree"],
                        it["element"].as_str().unwrap_or("")
                    ));
                }
                lines.join("\n")
            })))
        }
        Command::Catalog { action } => {
            let select = |case: &Option<String>| -> Result<Vec<_>, Error> {
                match case {
                    None => Ok(catalog().iter().collect()),
                    Some(id) => find_case(id)
                        .map(|e| vec![e])
                        .ok_or_else(|| Error::InvalidArgument(format!("unknown case {id}"))),
                }
            };
            match action {
                CatalogAction::List { case } => {
                    let entries = select(&case)?;
                    let value: Vec<_> = entries
                        .iter()
                        .map(|e| {
                            json!({
                                "case": e.id,
                                "spec": e.spec.to_string(),
                                "hilbertModule": e.hilbert_module,
                                "hilbertRing": e.hilbert_ring,
                                "moduleGenerators": e.module_generator_text,
                                "ringGenerators": e.ring_generators.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                                "relations": e.relation_text,
                            })
                        })
                        .collect();
                    Ok(Output::ok(render(json, &value, || {
                        let mut lines = Vec::new();
                        for e in &entries {
                            lines.push(format!("case {} (spec {})", e.id, e.spec));
                            lines.push(format!("  module series: {}", e.hilbert_module));
                            lines.push(format!("  ring series:   {}", e.hilbert_ring));
                            for (i, v) in e.module_generator_text.iter().enumerate() {
                                lines.push(format!("  v{} = {v}", i + 1));
                            }
                            for (j, f) in e.ring_generators.iter().enumerate() {
                                lines.push(format!("  f{} = {f}", j + 1));
                            }
                            for r in &e.relation_text {
                                lines.push(format!("  relation: {r} = 0"));
                            }
                        }
                        lines.join("\n")
                    })))
                }
                CatalogAction::Verify { case, degree } => {
                    if degree > MAX_BOUND {
                        return Err(Error::InvalidArgument(format!(
                            "--degree {degree} exceeds the limit {MAX_BOUND}"
                        )));
                    }
                    let reports = select(&case)?
                        .into_iter()
                        .map(|e| verify_catalog(e, degree))
                        .collect::<Result<Vec<_>, _>>()?;
                    let failed = reports.iter().any(|r| !r.passed());
                    let text = render(json, &reports, || {
                        reports
                            .iter()
                            .map(report_text)
                            .collect::<Vec<_>>()
                            .join("\n")
                    });
                    Ok(Output { text, failed })
                }
            }
        }
        Command::Normalize { expr } => {
            let canonical = if expr.contains('[') {
                let e: LieExpr = expr.parse()?;
                let alg = Metabelian::new(e.max_index().max(1))?;
                lie_string(&alg, &alg.eval(&e)?)?
            } else {
                expr.parse::<Poly>()?.to_string()
            };
            Ok(Output::ok(render(
                json,
                &json!({ "normalized": canonical }),
                || canonical.clone(),
            )))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::NoWitness(spec)) => {
            if json {
                println!("{}", json!({ "error": "no-witness", "spec": spec }));
            } else {
                eprintln!("error: the invariants for {spec} are finitely generated; there is no infinite family");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            if json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
