use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use etale::functors::{transformation_groupoid, universal_groupoid};
use etale::groupoid::{compose_couples, open_bisections, slice_action, to_dot, TopGroupoid};
use etale::json::{self, Document};
use etale::laws::{try_catalog, Check, Mutation, Pool};
use etale::semigroup::{compose_action_morphisms, spectral_action, Action, InverseSemigroup};
use etale::star_algebra::paterson_iso;
use etale::{Error, Guards};

/// Finite inverse semigroups, étale groupoids and the functors between them.
///
/// Inputs are JSON files, or `-` for stdin. Data goes to stdout and
/// diagnostics to stderr. Exit codes: 0 success, 1 invalid input, 2 law-check
/// failure, 3 guard exceeded.
#[derive(Parser, Debug)]
#[command(name = "etale", version)]
struct Cli {
    /// Guard limits as a JSON object, e.g. '{"max_items": 5000}'. Overrides
    /// the ETALE_GUARDS environment variable.
    #[arg(long, global = true)]
    guards: Option<String>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Parse and validate a document; prints its kind.
    Validate { input: String },
    /// The spectral action of a semigroup on its characters.
    Spectral { semigroup: String },
    /// The universal groupoid of a semigroup.
    Universal { semigroup: String },
    /// The transformation groupoid of an action.
    Transform { action: String },
    /// The slice action of an étale groupoid.
    Slice { groupoid: String },
    /// The inverse semigroup of open bisections, with the arrow set of each.
    Bis { groupoid: String },
    /// `second ∘ first` for two action morphisms or two couple morphisms.
    Compose { category: Cat, first: String, second: String },
    /// Run a law-check suite over the catalog pool; prints the report.
    Check {
        suite: Check,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run with a deliberate defect; the report should show failures.
        #[arg(long)]
        mutation: Option<Mutation>,
    },
    /// The Paterson matrix of a semigroup.
    Paterson { semigroup: String },
    /// Graphviz rendering of a groupoid.
    ExportDot { groupoid: String },
    /// List or emit the built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogVerb,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogVerb {
    List,
    Emit { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Cat {
    Isa,
    Eg,
}

enum Failure {
    Input(String),
    Laws(Value),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_input(path: &str) -> Result<(Value, Option<PathBuf>), Failure> {
    let (text, base) = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        (s, None)
    } else {
        let p = Path::new(path);
        let s = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        (s, p.parent().map(Path::to_path_buf))
    };
    let v = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok((v, base))
}

fn load(path: &str) -> Result<Document, Failure> {
    let (v, base) = read_input(path)?;
    Ok(json::parse_document(&v, base.as_deref())?)
}

fn wrong_kind(path: &str, want: &str, got: &Document) -> Failure {
    Failure::Input(format!("{path}: expected a {want}, got a {}", got.kind()))
}

fn load_semigroup(path: &str) -> Result<Arc<InverseSemigroup>, Failure> {
    match load(path)? {
        Document::Semigroup(s) => Ok(Arc::new(s)),
        other => Err(wrong_kind(path, "semigroup", &other)),
    }
}

fn load_action(path: &str) -> Result<Action, Failure> {
    match load(path)? {
        Document::Action(a) => Ok(a),
        other => Err(wrong_kind(path, "action", &other)),
    }
}

fn load_groupoid(path: &str) -> Result<Arc<TopGroupoid>, Failure> {
    match load(path)? {
        Document::Groupoid(g) => Ok(Arc::new(g)),
        other => Err(wrong_kind(path, "groupoid", &other)),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn install_guards(flag: Option<&str>) -> Result<(), Failure> {
    let env = std::env::var("ETALE_GUARDS").ok();
    let Some(text) = flag.or(env.as_deref()) else { return Ok(()) };
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::Input(format!("guards: {e}")))?;
    let obj = v.as_object().ok_or_else(|| Failure::Input("guards must be a JSON object".into()))?;
    let mut g = Guards::default();
    for (k, val) in obj {
        let n = val.as_u64().ok_or_else(|| Failure::Input(format!("guard {k} must be a natural number")))? as usize;
        match k.as_str() {
            "max_items" => g.max_items = n,
            "max_bisection_arrows" => g.max_bisection_arrows = n,
            "max_adjunction_arrows" => g.max_adjunction_arrows = n,
            "max_enumeration_order" => g.max_enumeration_order = n,
            "max_subset_points" => g.max_subset_points = n,
            _ => return Err(Failure::Input(format!("unknown guard {k}"))),
        }
    }
    Guards::install(g);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    install_guards(cli.guards.as_deref())?;
    match cli.verb {
        Verb::Validate { input } => {
            let doc = load(&input)?;
            Ok(pretty(&json!({"kind": doc.kind(), "valid": true})))
        }
        Verb::Spectral { semigroup } => {
            let s = load_semigroup(&semigroup)?;
            Ok(pretty(&json::action_to_json(&spectral_action(&s)?)?))
        }
        Verb::Universal { semigroup } => {
            let s = load_semigroup(&semigroup)?;
            Ok(pretty(&json::groupoid_to_json(&universal_groupoid(&s)?.groupoid)?))
        }
        Verb::Transform { action } => {
            let a = load_action(&action)?;
            Ok(pretty(&json::groupoid_to_json(&transformation_groupoid(&a)?.groupoid)?))
        }
        Verb::Slice { groupoid } => {
            let g = load_groupoid(&groupoid)?;
            Ok(pretty(&json::action_to_json(&slice_action(&g)?)?))
        }
        Verb::Bis { groupoid } => {
            let g = load_groupoid(&groupoid)?;
            let b = open_bisections(&g)?;
            let mut v = json::semigroup_to_json(&b.semigroup);
            v["bisections"] = json!(b.sets.iter().map(|u| u.to_vec()).collect::<Vec<_>>());
            Ok(pretty(&v))
        }
        Verb::Compose { category, first, second } => {
            let (d1, d2) = (load(&first)?, load(&second)?);
            match (category, d1, d2) {
                (Cat::Isa, Document::ActionMorphism(m1), Document::ActionMorphism(m2)) => {
                    Ok(pretty(&json::action_morphism_to_json(&compose_action_morphisms(&m2, &m1)?)?))
                }
                (Cat::Eg, Document::Couple(c1), Document::Couple(c2)) => {
                    Ok(pretty(&json::couple_to_json(&compose_couples(&c2, &c1)?)?))
                }
                (Cat::Isa, a, b) | (Cat::Eg, a, b) => Err(Failure::Input(format!(
                    "cannot compose a {} with a {} in this category",
                    a.kind(),
                    b.kind()
                ))),
            }
        }
        Verb::Check { suite, seed, mutation } => {
            let pool = Pool::from_catalog(&try_catalog()?, seed)?;
            let report = suite.run(&pool, mutation)?;
            let v = report.to_json();
            if report.passed() {
                Ok(pretty(&v))
            } else {
                Err(Failure::Laws(v))
            }
        }
        Verb::Paterson { semigroup } => {
            let s = load_semigroup(&semigroup)?;
            let (iota, _) = paterson_iso(&s)?;
            Ok(pretty(&json::matrix_to_json(&iota.matrix)))
        }
        Verb::ExportDot { groupoid } => Ok(to_dot(&*load_groupoid(&groupoid)?)),
        Verb::Catalog { action: CatalogVerb::List } => {
            let c = try_catalog()?;
            Ok(c.entries().iter().map(|(name, item)| format!("{name}\t{}\n", item.kind())).collect())
        }
        Verb::Catalog { action: CatalogVerb::Emit { name } } => {
            let c = try_catalog()?;
            let item = c.get(&name).ok_or_else(|| Failure::Input(format!("no catalog entry named {name}")))?;
            Ok(pretty(&item.to_document().to_json()?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Laws(report)) => {
            let _ = io::stdout().write_all(pretty(&report).as_bytes());
            eprintln!("error: law check failed");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
