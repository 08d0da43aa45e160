//! Command dispatch: argument types, the cache file, and one `run` entry
//! point that returns the rendered output (or an error carrying its exit
//! code).

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use grassfree::decomp::{self, FIndex, Freeness, GeneratorCombo};
use grassfree::invariants::SigmaPolynomial;
use grassfree::oracle::{self, TruncatedAlgebra};
use grassfree::poly::Rational;
use grassfree::symmetry;
use grassfree::{Error, ErrorKind};

use crate::eval::{evaluate, evaluate_words, EvalOptions};
use crate::parser::{parse, ParseError};
use crate::render::{combo_json, combo_rendering, sigma_display, sigma_json};

#[derive(Parser)]
#[command(
    name = "grassfree",
    version,
    about = "Exact computer algebra in the relatively free algebras of the variety [[z1,z2],z3] = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a machine-readable JSON record instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Render power sums (nu_k) where that makes sigma-polynomials shorter.
    #[arg(long, global = true)]
    pub nu_rendering: bool,
    /// Directory for the serialized reduction memo table.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the canonical normal form of an expression.
    Normalize {
        expr: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Test whether an element is fixed by every generator permutation.
    IsSymmetric {
        expr: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Average an element over the symmetric group.
    Symmetrize {
        expr: String,
        #[arg(long, default_value_t = 3)]
        arity: usize,
    },
    /// Expand a symmetric module element over the f(a,b,c) family.
    Expand { expr: String },
    /// Decompose a symmetric module element over f(0,1,0), f(0,2,0), f(1,2,0).
    Reduce { expr: String },
    /// Decompose a symmetric arity-2 module element over `(x2 - x1)[x2,x1]`.
    ReduceN2 { expr: String },
    /// Certify freeness of the three generators degree by degree.
    CheckFreeness {
        #[arg(long)]
        degree: u32,
    },
    /// Certify that no generator lies in the submodule of the other two.
    CheckMinimality,
    /// Build the truncated quotient and report per-degree dimensions.
    OracleBuild {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Compare two expressions in the truncated quotient, or run the
    /// arity-4 non-module witness.
    OracleCheck {
        expr1: Option<String>,
        expr2: Option<String>,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        non_module_witness: bool,
    },
    /// Re-derive the reduction of f(2,4,5) and verify it end to end.
    VerifyExample,
}

#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: i32,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Domain => 1,
            ErrorKind::Usage => 2,
            ErrorKind::Internal => 3,
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError { message: e.to_string(), code: 2 }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), code: 2 }
}

fn internal(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), code: 3 }
}

struct Output {
    human: String,
    record: Value,
}

fn record(command: &str, input_normal_form: Option<String>, result: Value, sigma: Value) -> Value {
    json!({
        "command": command,
        "input_normal_form": input_normal_form,
        "result": result,
        "sigma_rendering": sigma,
    })
}

/// Runs a parsed invocation and renders its output.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let json_mode = cli.json;
    let out = dispatch(cli)?;
    if json_mode {
        Ok(serde_json::to_string_pretty(&out.record).expect("serializable record"))
    } else {
        Ok(out.human)
    }
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let opts = EvalOptions::default();
    let nu = cli.nu_rendering;
    match cli.command {
        Command::Normalize { expr, arity } => {
            let element = evaluate(&parse(&expr)?, arity, &opts)?;
            let rendered = element.to_string();
            Ok(Output {
                human: rendered.clone(),
                record: record("normalize", Some(rendered.clone()), json!(rendered), Value::Null),
            })
        }
        Command::IsSymmetric { expr, arity } => {
            let element = evaluate(&parse(&expr)?, arity, &opts)?;
            let verdict = symmetry::is_symmetric(&element);
            Ok(Output {
                human: verdict.to_string(),
                record: record(
                    "is-symmetric",
                    Some(element.to_string()),
                    json!(verdict),
                    Value::Null,
                ),
            })
        }
        Command::Symmetrize { expr, arity } => {
            let element = evaluate(&parse(&expr)?, arity, &opts)?;
            let averaged = symmetry::symmetrize(&element);
            let rendered = averaged.to_string();
            Ok(Output {
                human: rendered.clone(),
                record: record(
                    "symmetrize",
                    Some(element.to_string()),
                    json!(rendered),
                    Value::Null,
                ),
            })
        }
        Command::Expand { expr } => {
            let element = evaluate(&parse(&expr)?, 3, &opts)?;
            let expansion = decomp::expand_in_fbasis(&element)?;
            let mut result = Vec::new();
            let mut renderings = Vec::new();
            let mut lines = Vec::new();
            for (idx, coeff) in expansion.coefficients() {
                result.push(json!({
                    "index": [idx.a, idx.b, idx.c],
                    "coefficient": sigma_json(coeff),
                }));
                let shown = sigma_display(coeff, nu);
                renderings.push(json!({
                    "index": [idx.a, idx.b, idx.c],
                    "rendering": shown,
                }));
                lines.push(format!("{idx}: {shown}"));
            }
            if lines.is_empty() {
                lines.push("0".into());
            }
            Ok(Output {
                human: lines.join("\n"),
                record: record(
                    "expand",
                    Some(element.to_string()),
                    Value::Array(result),
                    Value::Array(renderings),
                ),
            })
        }
        Command::Reduce { expr } => {
            load_cache(cli.cache_dir.as_deref())?;
            let element = evaluate(&parse(&expr)?, 3, &opts)?;
            let combo = decomp::reduce_symmetric(&element)?;
            save_cache(cli.cache_dir.as_deref())?;
            Ok(Output {
                human: combo_human(&combo, nu),
                record: record(
                    "reduce",
                    Some(element.to_string()),
                    combo_json(&combo),
                    combo_rendering(&combo, nu),
                ),
            })
        }
        Command::ReduceN2 { expr } => {
            let element = evaluate(&parse(&expr)?, 2, &opts)?;
            let q = decomp::decompose_n2(&element)?;
            let shown = sigma_display(&q, false);
            Ok(Output {
                human: format!("q(e1, e2) = {shown}"),
                record: record(
                    "reduce-n2",
                    Some(element.to_string()),
                    sigma_json(&q),
                    json!(shown),
                ),
            })
        }
        Command::CheckFreeness { degree } => {
            let verdict = decomp::check_freeness(degree)?;
            match verdict {
                Freeness::Independent => Ok(Output {
                    human: format!("independent up to degree {degree}: only the trivial combination vanishes"),
                    record: record(
                        "check-freeness",
                        None,
                        json!({ "verdict": "independent", "degree": degree }),
                        Value::Null,
                    ),
                }),
                Freeness::Dependent(witness) => {
                    let combo = GeneratorCombo::new(
                        witness[0].clone(),
                        witness[1].clone(),
                        witness[2].clone(),
                    );
                    Ok(Output {
                        human: format!("dependent: {}", combo_human(&combo, nu)),
                        record: record(
                            "check-freeness",
                            None,
                            json!({ "verdict": "dependent", "witness": combo_json(&combo) }),
                            combo_rendering(&combo, nu),
                        ),
                    })
                }
            }
        }
        Command::CheckMinimality => {
            let verdict = decomp::check_minimality();
            Ok(Output {
                human: format!("minimal: {verdict}"),
                record: record("check-minimality", None, json!(verdict), Value::Null),
            })
        }
        Command::OracleBuild { arity, degree } => {
            let t = oracle::build(arity, degree)?;
            let mut lines = Vec::new();
            let mut result = Vec::new();
            for d in 0..=degree {
                let dim = t.dimension(d);
                let expected = TruncatedAlgebra::basis_count(arity, d);
                if let Some(count) = expected {
                    if count != dim {
                        return Err(internal(format!(
                            "quotient dimension {dim} at degree {d} disagrees with the \
                             normal-form basis count {count}"
                        )));
                    }
                }
                let note = match expected {
                    Some(_) => " [matches normal-form basis count]",
                    None => "",
                };
                lines.push(format!("degree {d}: dimension {dim}{note}"));
                result.push(json!({
                    "degree": d,
                    "dimension": dim,
                    "basis_count": expected,
                }));
            }
            Ok(Output {
                human: lines.join("\n"),
                record: record("oracle-build", None, Value::Array(result), Value::Null),
            })
        }
        Command::OracleCheck { expr1, expr2, arity, degree, non_module_witness } => {
            let t = oracle::build(arity, degree)?;
            if non_module_witness {
                if arity != 4 {
                    return Err(usage("--non-module-witness needs --arity 4"));
                }
                let witness = t.witness_non_module_n4()?;
                let product = bracket_product_words();
                let nonzero = !t.project_words(&product)?.is_zero();
                if !witness || !nonzero {
                    return Err(internal(
                        "the arity-4 witness failed; this contradicts the module structure analysis",
                    ));
                }
                return Ok(Output {
                    human: "witness confirmed: x1 x2 [x3,x4] != x2 x1 [x3,x4] and [x1,x2][x3,x4] != 0"
                        .into(),
                    record: record(
                        "oracle-check",
                        None,
                        json!({ "witness_confirmed": true, "bracket_product_nonzero": true }),
                        Value::Null,
                    ),
                });
            }
            let (Some(expr1), Some(expr2)) = (expr1, expr2) else {
                return Err(usage("oracle-check needs two expressions or --non-module-witness"));
            };
            let opts = EvalOptions { max_degree: degree };
            if arity <= 3 {
                let u = evaluate(&parse(&expr1)?, arity, &opts)?;
                let v = evaluate(&parse(&expr2)?, arity, &opts)?;
                let oracle_equal = t.oracle_equal(&u, &v)?;
                let normal_form_equal = u == v;
                if oracle_equal != normal_form_equal {
                    return Err(internal(
                        "normal-form equality disagrees with the truncated quotient",
                    ));
                }
                Ok(Output {
                    human: format!("equal: {oracle_equal} (normal form and quotient agree)"),
                    record: record(
                        "oracle-check",
                        Some(u.to_string()),
                        json!({ "equal": oracle_equal, "normal_form_equal": normal_form_equal }),
                        Value::Null,
                    ),
                })
            } else {
                let u = evaluate_words(&parse(&expr1)?, arity, &opts)?;
                let v = evaluate_words(&parse(&expr2)?, arity, &opts)?;
                let equal = t.project_words(&u)? == t.project_words(&v)?;
                Ok(Output {
                    human: format!("equal: {equal}"),
                    record: record(
                        "oracle-check",
                        None,
                        json!({ "equal": equal, "normal_form_equal": Value::Null }),
                        Value::Null,
                    ),
                })
            }
        }
        Command::VerifyExample => {
            load_cache(cli.cache_dir.as_deref())?;
            let idx = FIndex::new(2, 4, 5);
            let combo = decomp::reduce_f(idx);
            save_cache(cli.cache_dir.as_deref())?;
            let expected = expected_worked_example();
            if combo != expected {
                return Err(internal("the reduction of f(2,4,5) differs from the recorded result"));
            }
            if combo.evaluate() != decomp::make_f(idx) {
                return Err(internal("the reduction of f(2,4,5) fails to evaluate back"));
            }
            Ok(Output {
                human: format!(
                    "f(2,4,5) =\n{}\nverified: evaluation matches the direct construction",
                    combo_human(&combo, nu)
                ),
                record: record(
                    "verify-example",
                    Some(decomp::make_f(idx).to_string()),
                    json!({ "combo": combo_json(&combo), "matches": true }),
                    combo_rendering(&combo, nu),
                ),
            })
        }
    }
}

fn combo_human(combo: &GeneratorCombo, nu: bool) -> String {
    format!(
        "f(0,1,0): {}\nf(0,2,0): {}\nf(1,2,0): {}",
        sigma_display(&combo.c010, nu),
        sigma_display(&combo.c020, nu),
        sigma_display(&combo.c120, nu),
    )
}

fn bracket_product_words() -> oracle::WordSum {
    use grassfree::poly::rat;
    vec![
        (vec![0, 1, 2, 3], rat(1)),
        (vec![0, 1, 3, 2], rat(-1)),
        (vec![1, 0, 2, 3], rat(-1)),
        (vec![1, 0, 3, 2], rat(1)),
    ]
}

fn expected_worked_example() -> GeneratorCombo {
    let sp = |terms: &[(&[u32; 3], i64)]| {
        SigmaPolynomial::from_terms(
            3,
            terms.iter().map(|(e, c)| (e.to_vec(), grassfree::poly::rat(*c))),
        )
    };
    GeneratorCombo::new(
        sp(&[(&[1, 0, 3], -1), (&[2, 1, 2], 1), (&[0, 2, 2], -1)]),
        sp(&[(&[0, 0, 3], 1), (&[1, 1, 2], -1)]),
        sp(&[(&[0, 1, 2], 1)]),
    )
}

const CACHE_FILE: &str = "reduce_cache.json";

fn load_cache(dir: Option<&Path>) -> Result<(), CliError> {
    let Some(dir) = dir else { return Ok(()) };
    let path = dir.join(CACHE_FILE);
    if !path.exists() {
        return Ok(());
    }
    let text = std::fs::read_to_string(&path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("malformed cache file {}: {e}", path.display())))?;
    let entries = cache_entries_from_json(&value)
        .map_err(|e| usage(format!("malformed cache file {}: {e}", path.display())))?;
    decomp::preload_reduce_cache(entries).map_err(CliError::from)?;
    Ok(())
}

fn save_cache(dir: Option<&Path>) -> Result<(), CliError> {
    let Some(dir) = dir else { return Ok(()) };
    std::fs::create_dir_all(dir)
        .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let entries = decomp::reduce_cache_entries();
    let array: Vec<Value> = entries
        .iter()
        .map(|(idx, combo)| {
            json!({
                "index": [idx.a, idx.b, idx.c],
                "combo": combo_json(combo),
            })
        })
        .collect();
    let path = dir.join(CACHE_FILE);
    std::fs::write(&path, serde_json::to_string_pretty(&Value::Array(array)).expect("serializable"))
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn cache_entries_from_json(value: &Value) -> Result<Vec<(FIndex, GeneratorCombo)>, String> {
    let array = value.as_array().ok_or("expected a top-level array")?;
    let mut out = Vec::with_capacity(array.len());
    for entry in array {
        let index = entry.get("index").and_then(Value::as_array).ok_or("missing index")?;
        if index.len() != 3 {
            return Err("index must have three entries".into());
        }
        let nums: Vec<u32> = index
            .iter()
            .map(|v| v.as_u64().map(|n| n as u32).ok_or("index entries must be integers"))
            .collect::<Result<_, _>>()?;
        let combo = entry.get("combo").ok_or("missing combo")?;
        let combo = GeneratorCombo::new(
            sigma_from_json(combo.get("c010").ok_or("missing c010")?)?,
            sigma_from_json(combo.get("c020").ok_or("missing c020")?)?,
            sigma_from_json(combo.get("c120").ok_or("missing c120")?)?,
        );
        out.push((FIndex::new(nums[0], nums[1], nums[2]), combo));
    }
    Ok(out)
}

fn sigma_from_json(value: &Value) -> Result<SigmaPolynomial, String> {
    let array = value.as_array().ok_or("sigma polynomial must be an array")?;
    let mut terms = Vec::with_capacity(array.len());
    for term in array {
        let exp = term.get("exp").and_then(Value::as_array).ok_or("missing exp")?;
        if exp.len() != 3 {
            return Err("exp must have three entries".into());
        }
        let exps: Vec<u32> = exp
            .iter()
            .map(|v| v.as_u64().map(|n| n as u32).ok_or("exp entries must be integers"))
            .collect::<Result<_, _>>()?;
        let coeff = term.get("coeff").and_then(Value::as_str).ok_or("missing coeff")?;
        let coeff = Rational::from_str(coeff).map_err(|e| format!("bad coefficient: {e}"))?;
        terms.push((exps, coeff));
    }
    Ok(SigmaPolynomial::from_terms(3, terms))
}
