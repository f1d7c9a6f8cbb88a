mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dessin_core::format::{write_dessin, write_pattern};
use dessin_core::pattern::{default_pattern_names, validate_pattern, BUILTIN_NAMES};
use dessin_core::{
    apply_sequence, distinguish, report, Dessin, ExtendingPattern, PatternError, Permutation,
};

use input::{
    load_dessin, looks_like_pattern, parse_dessin_text, parse_pattern_text, read_text,
    resolve_patterns, InputError,
};

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "dessin", version, about = "Invariants of dessins d'enfants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Comma-separated patterns: builtin names (optionally `name@roles`), pattern files,
    /// or names found as `<name>.pattern` in $DESSIN_PATTERN_PATH.
    #[arg(long, global = true)]
    patterns: Option<String>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random trials per pattern validation.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON envelope: {"command", "exit_code", "results": [{"inputs", "status", "error", "data"}]}.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Check dessin or pattern files.
    Validate { files: Vec<String> },
    /// Compute all invariants of each dessin.
    Report { files: Vec<String> },
    /// Compare two dessins invariant by invariant (exit 3 when nothing separates them).
    Distinguish { a: String, b: String },
    /// Apply a comma-separated pattern sequence (rightmost first) and print the result.
    Apply {
        sequence: String,
        files: Vec<String>,
    },
    /// List the available patterns.
    Patterns,
    /// Print the canonical form of each dessin.
    Canon { files: Vec<String> },
    /// Decide isomorphism of two dessins (exit 3 when not isomorphic).
    Iso { a: String, b: String },
    /// Print the automorphism group of each dessin.
    Aut { files: Vec<String> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Report { .. } => "report",
            Command::Distinguish { .. } => "distinguish",
            Command::Apply { .. } => "apply",
            Command::Patterns => "patterns",
            Command::Canon { .. } => "canon",
            Command::Iso { .. } => "iso",
            Command::Aut { .. } => "aut",
        }
    }
}

/// One result of a command: the structured payload and its text rendering.
struct Item {
    inputs: Vec<String>,
    code: u8,
    error: Option<String>,
    data: Value,
    text: String,
}

impl Item {
    fn ok(inputs: Vec<String>, data: Value, text: String) -> Self {
        Item {
            inputs,
            code: EXIT_OK,
            error: None,
            data,
            text,
        }
    }

    fn failed(inputs: Vec<String>, e: InputError) -> Self {
        let code = match e {
            InputError::Parse(_) => EXIT_PARSE,
            InputError::Invalid(_) => EXIT_INVALID,
        };
        Item {
            inputs,
            code,
            error: Some(e.message().to_string()),
            data: Value::Null,
            text: String::new(),
        }
    }

    fn status(&self) -> &'static str {
        match self.code {
            EXIT_OK => "ok",
            EXIT_INVALID => "invalid",
            EXIT_PARSE => "parse_error",
            EXIT_NEGATIVE => "negative",
            _ => "internal_error",
        }
    }
}

/// Cycle notation with `()` for the identity.
fn cycle_text(p: &Permutation) -> String {
    if p.is_identity() {
        "()".to_string()
    } else {
        p.to_cycle_string()
    }
}

fn dessin_json(d: &Dessin) -> Value {
    json!({
        "degree": d.degree(),
        "x": d.x().to_cycle_string(),
        "y": d.y().to_cycle_string(),
    })
}

fn pattern_json(p: &ExtendingPattern) -> Value {
    json!({
        "name": p.name,
        "degree": p.degree(),
        "role": p.role().to_string(),
        "text": write_pattern(p),
    })
}

fn for_each_file(
    files: &[String],
    f: impl Fn(&str) -> Result<(Value, String), InputError>,
) -> Vec<Item> {
    files
        .iter()
        .map(|path| match f(path) {
            Ok((data, text)) => Item::ok(vec![path.clone()], data, text),
            Err(e) => Item::failed(vec![path.clone()], e),
        })
        .collect()
}

fn validate_one(path: &str, seed: u64, trials: usize) -> Result<(Value, String, bool), InputError> {
    let text = read_text(path)?;
    if looks_like_pattern(path, &text) {
        let pattern = parse_pattern_text(path, &text)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = validate_pattern(&pattern, trials, &mut rng);
        let mut out = if r.is_ok() {
            format!("{path}: pattern `{}` ok ({trials} trials)\n", pattern.name)
        } else {
            format!("{path}: pattern `{}` INVALID\n", pattern.name)
        };
        for v in &r.violations {
            out.push_str(&format!("  violation: {v}\n"));
        }
        for w in &r.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        let data = json!({
            "kind": "pattern",
            "pattern": pattern_json(&pattern),
            "trials": trials,
            "seed": seed,
            "violations": r.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "warnings": r.warnings,
        });
        Ok((data, out, r.is_ok()))
    } else {
        let d = parse_dessin_text(path, &text)?;
        let genus = d
            .genus()
            .map_err(|e| InputError::Invalid(format!("{path}: {e}")))?;
        let out = format!(
            "{path}: dessin ok (degree {}, genus {genus}, valency {})\n",
            d.degree(),
            d.valency_list()
        );
        let data = json!({
            "kind": "dessin",
            "dessin": dessin_json(&d),
            "genus": genus,
            "valency": d.valency_list().to_string(),
        });
        Ok((data, out, true))
    }
}

fn run(cli: &Cli) -> Vec<Item> {
    match &cli.command {
        Command::Validate { files } => files
            .iter()
            .map(|path| match validate_one(path, cli.seed, cli.trials) {
                Ok((data, text, true)) => Item::ok(vec![path.clone()], data, text),
                Ok((data, text, false)) => Item {
                    inputs: vec![path.clone()],
                    code: EXIT_INVALID,
                    error: Some(format!("{path}: pattern failed validation")),
                    data,
                    text,
                },
                Err(e) => Item::failed(vec![path.clone()], e),
            })
            .collect(),
        Command::Report { files } => match resolve_patterns(cli.patterns.as_deref()) {
            Err(e) => vec![Item::failed(files.clone(), e)],
            Ok(patterns) => for_each_file(files, |path| {
                let d = load_dessin(path)?;
                let r = report(path, &d, &patterns);
                Ok((
                    serde_json::to_value(&r).expect("report serializes"),
                    r.to_text(),
                ))
            }),
        },
        Command::Distinguish { a, b } => {
            let inputs = vec![a.clone(), b.clone()];
            let loaded = resolve_patterns(cli.patterns.as_deref())
                .and_then(|p| Ok((p, load_dessin(a)?, load_dessin(b)?)));
            match loaded {
                Err(e) => vec![Item::failed(inputs, e)],
                Ok((patterns, da, db)) => {
                    let v = distinguish(&da, &db, &patterns);
                    let mut text = format!("{}\n", v.summary());
                    for c in &v.comparisons {
                        let s = serde_json::to_value(c.status).expect("status serializes");
                        text.push_str(&format!(
                            "  {}: {}\n",
                            c.invariant,
                            s.as_str().unwrap_or("?")
                        ));
                    }
                    let mut item = Item::ok(
                        inputs,
                        json!({ "summary": v.summary(), "verdict": v }),
                        text,
                    );
                    if !v.separated {
                        item.code = EXIT_NEGATIVE;
                    }
                    vec![item]
                }
            }
        }
        Command::Apply { sequence, files } => match resolve_patterns(Some(sequence)) {
            Err(e) => vec![Item::failed(files.clone(), e)],
            Ok(patterns) => for_each_file(files, |path| {
                let d = load_dessin(path)?;
                let out = apply_sequence(&patterns, &d).map_err(|e| match e {
                    PatternError::EmptySequence => InputError::Parse(e.to_string()),
                    _ => InputError::Invalid(format!("{path}: {e}")),
                })?;
                Ok((dessin_json(&out), write_dessin(&out)))
            }),
        },
        Command::Patterns => {
            let names: Vec<String> = BUILTIN_NAMES.iter().map(|s| s.to_string()).collect();
            match resolve_patterns(Some(&names.join(","))) {
                Err(e) => vec![Item::failed(vec![], e)],
                Ok(builtins) => {
                    let mut text = String::new();
                    for p in &builtins {
                        text.push_str(&write_pattern(p));
                        text.push('\n');
                    }
                    text.push_str(&format!(
                        "default set: {}\n",
                        default_pattern_names().join(",")
                    ));
                    let data = json!({
                        "builtins": builtins.iter().map(pattern_json).collect::<Vec<_>>(),
                        "default_set": default_pattern_names(),
                    });
                    vec![Item::ok(vec![], data, text)]
                }
            }
        }
        Command::Canon { files } => for_each_file(files, |path| {
            let c = load_dessin(path)?.canonical_form();
            Ok((dessin_json(&c), write_dessin(&c)))
        }),
        Command::Iso { a, b } => {
            let inputs = vec![a.clone(), b.clone()];
            match load_dessin(a).and_then(|da| Ok((da, load_dessin(b)?))) {
                Err(e) => vec![Item::failed(inputs, e)],
                Ok((da, db)) => {
                    let iso = da.is_isomorphic(&db);
                    let map = iso.then(|| {
                        da.canonical_labeling()
                            .then(&db.canonical_labeling().inverse())
                    });
                    let text = match &map {
                        Some(m) => format!("isomorphic via {}\n", cycle_text(m)),
                        None => "not isomorphic\n".to_string(),
                    };
                    let data = json!({
                        "isomorphic": iso,
                        "relabeling": map.as_ref().map(cycle_text),
                    });
                    let mut item = Item::ok(inputs, data, text);
                    if !iso {
                        item.code = EXIT_NEGATIVE;
                    }
                    vec![item]
                }
            }
        }
        Command::Aut { files } => for_each_file(files, |path| {
            let aut = load_dessin(path)?.automorphism_group();
            let elements: Vec<String> = aut.iter().map(cycle_text).collect();
            let mut text = format!("order: {}\n", aut.len());
            for e in &elements {
                text.push_str(&format!("  {e}\n"));
            }
            Ok((json!({ "order": aut.len(), "elements": elements }), text))
        }),
    }
}

fn emit(cli: &Cli, items: &[Item], code: u8) {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.format {
        Format::Structured => {
            let results: Vec<Value> = items
                .iter()
                .map(|i| {
                    json!({
                        "inputs": i.inputs,
                        "status": i.status(),
                        "error": i.error,
                        "data": i.data,
                    })
                })
                .collect();
            let envelope = json!({
                "command": cli.command.name(),
                "exit_code": code,
                "results": results,
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&envelope).expect("json")
            );
        }
        Format::Text => {
            let headed = items.len() > 1;
            for (n, item) in items.iter().enumerate() {
                if let Some(e) = &item.error {
                    eprintln!("error: {e}");
                }
                if item.text.is_empty() {
                    continue;
                }
                if headed {
                    if n > 0 {
                        let _ = writeln!(out);
                    }
                    let _ = writeln!(out, "# {}", item.inputs.join(" "));
                }
                let _ = write!(out, "{}", item.text);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let needs_files = matches!(
        &cli.command,
        Command::Validate { files } | Command::Report { files } | Command::Canon { files }
            | Command::Aut { files } | Command::Apply { files, .. } if files.is_empty()
    );
    if needs_files {
        eprintln!("error: no input files");
        return ExitCode::from(EXIT_PARSE);
    }
    let items = match std::panic::catch_unwind(|| run(&cli)) {
        Ok(items) => items,
        Err(_) => {
            eprintln!("error: internal failure");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let code = items.iter().map(|i| i.code).max().unwrap_or(EXIT_OK);
    emit(&cli, &items, code);
    ExitCode::from(code)
}
