//! `coiso`: classify, decompose and dualize relations stored as JSON documents.
//!
//! Exit codes: 0 success, 1 malformed input (or any other error),
//! 2 relation not isotropic / coisotropic, 3 verification failure.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use coiso_core::catalog::{canonical_sum, random_instance};
use coiso_core::decompose::{decompose, is_isomorphic, verify_certificate};
use coiso_core::document::{certificate_to_json, parse_certificate, Generator, RelationDocument};
use coiso_core::duality::annihilator;
use coiso_core::invariants::{compute_invariants, multiplicities};
use coiso_core::{Error, Flavor, InvariantVector, LinearRelation, MultiplicityVector};

#[derive(Parser)]
#[command(name = "coiso", version, about = "Normal forms for isotropic and coisotropic linear relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document and report whether the relation is (co)isotropic.
    Validate {
        doc: PathBuf,
        /// Exit with code 2 unless the relation is isotropic (presymplectic) or coisotropic (poisson).
        #[arg(long)]
        require: bool,
    },
    /// Print the invariants k1..k13 (of the annihilator for poisson input).
    Invariants {
        doc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the multiplicities of the thirteen indecomposable types.
    Multiplicities {
        doc: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decompose one or more documents into certificates.
    Decompose {
        #[arg(required = true)]
        docs: Vec<PathBuf>,
        /// Output file for a single document, output directory for several.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads used when several documents are given.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a certificate against a document.
    Verify { doc: PathBuf, cert: PathBuf },
    /// Print the annihilator of the relation, of the dual kind.
    Dualize {
        doc: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two documents describe isomorphic relations.
    Isomorphic { a: PathBuf, b: PathBuf },
    /// Print the canonical sum for a multiplicity vector.
    Canonical {
        /// Thirteen comma-separated counts, or tagged counts such as `I2:1,I9:2`.
        n: String,
        #[arg(long, default_value = "presymplectic")]
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a randomly conjugated copy of the canonical sum.
    Random {
        n: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "presymplectic")]
        kind: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Structure(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Structure(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Structure(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotIsotropic | Error::NotCoisotropic => Failure::Structure(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<RelationDocument, Failure> {
    RelationDocument::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn kind(text: &str) -> Result<Flavor, Failure> {
    match text {
        "presymplectic" => Ok(Flavor::Presymplectic),
        "poisson" => Ok(Flavor::Poisson),
        _ => Err(Failure::Input(format!("--kind must be presymplectic or poisson, not {text:?}"))),
    }
}

fn n_vector(text: &str) -> Result<MultiplicityVector, Failure> {
    text.parse().map_err(|e: Error| Failure::Input(e.to_string()))
}

/// Invariants of the isotropic relation attached to `f`.
fn invariants_of(f: &LinearRelation) -> Result<InvariantVector, Failure> {
    match f.flavor() {
        Flavor::Presymplectic => Ok(compute_invariants(f)?),
        Flavor::Poisson => {
            if !f.is_coisotropic()? {
                return Err(Error::NotCoisotropic.into());
            }
            Ok(compute_invariants(&annihilator(f))?)
        }
    }
}

fn validate(path: &Path, require: bool) -> Outcome {
    let f = load(path)?.relation;
    let (word, ok) = match f.flavor() {
        Flavor::Presymplectic => ("isotropic", f.is_isotropic()?),
        Flavor::Poisson => ("coisotropic", f.is_coisotropic()?),
    };
    println!("kind: {}", f.flavor().as_str());
    println!("target dim: {}", f.target_dim());
    println!("source dim: {}", f.source_dim());
    println!("graph dim: {}", f.graph().dim());
    println!("{word}: {ok}");
    if require && !ok {
        return Err(Failure::Structure(format!("relation is not {word}")));
    }
    Ok(())
}

fn print_invariants(path: &Path, json: bool) -> Outcome {
    let k = invariants_of(&load(path)?.relation)?;
    if json {
        println!("{}", serde_json::to_string(&k).expect("serializable"));
    } else {
        for (i, v) in k.0.iter().enumerate() {
            println!("k{}: {v}", i + 1);
        }
    }
    Ok(())
}

fn print_multiplicities(path: &Path, json: bool) -> Outcome {
    let f = load(path)?.relation;
    let n = multiplicities(&invariants_of(&f)?)?;
    if json {
        println!("{}", serde_json::to_string(&n).expect("serializable"));
    } else {
        for (t, count) in n.iter() {
            println!("{:<4} {count}  {}", format!("{}:", t.label()), t.description(f.flavor()));
        }
    }
    Ok(())
}

fn decompose_one(path: &Path) -> Result<String, Failure> {
    let cert = decompose(&load(path)?.relation)?;
    Ok(certificate_to_json(&cert))
}

fn cert_path(dir: &Path, doc: &Path) -> PathBuf {
    let stem = doc.file_stem().map_or_else(|| "stdin".into(), |s| s.to_string_lossy().into_owned());
    dir.join(format!("{stem}.cert.json"))
}

fn decompose_many(docs: &[PathBuf], out: Option<&Path>, jobs: usize) -> Outcome {
    if let [doc] = docs {
        return emit(&decompose_one(doc)?, out);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let results: Vec<Result<String, Failure>> = pool.install(|| docs.par_iter().map(|d| decompose_one(d)).collect());
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    }
    // Report every document, then fail with the most severe code seen.
    let mut worst: Option<Failure> = None;
    for (doc, res) in docs.iter().zip(results) {
        match (res, out) {
            (Ok(text), Some(dir)) => emit(&text, Some(&cert_path(dir, doc)))?,
            (Ok(text), None) => println!("{text}"),
            (Err(e), _) => {
                eprintln!("{}: {}", doc.display(), e.message());
                if worst.as_ref().is_none_or(|w| e.code() > w.code()) {
                    worst = Some(e);
                }
            }
        }
    }
    worst.map_or(Ok(()), Err)
}

fn verify(doc: &Path, cert: &Path) -> Outcome {
    let f = load(doc)?.relation;
    let cert = parse_certificate(&read(cert)?).map_err(|e| Failure::Input(format!("{}: {e}", cert.display())))?;
    if verify_certificate(&f, &cert) {
        println!("verified: true");
        Ok(())
    } else {
        println!("verified: false");
        Err(Failure::Verification("certificate does not transform the relation into its normal form".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { doc, require } => validate(&doc, require),
        Command::Invariants { doc, json } => print_invariants(&doc, json),
        Command::Multiplicities { doc, json } => print_multiplicities(&doc, json),
        Command::Decompose { docs, out, jobs } => decompose_many(&docs, out.as_deref(), jobs),
        Command::Verify { doc, cert } => verify(&doc, &cert),
        Command::Dualize { doc, out } => {
            let dual = RelationDocument::from(annihilator(&load(&doc)?.relation));
            emit(&dual.to_json(), out.as_deref())
        }
        Command::Isomorphic { a, b } => {
            let (f, g) = (load(&a)?.relation, load(&b)?.relation);
            for h in [&f, &g] {
                invariants_of(h)?;
            }
            println!("isomorphic: {}", is_isomorphic(&f, &g)?);
            Ok(())
        }
        Command::Canonical { n, kind: k, out } => {
            let doc = RelationDocument::from(canonical_sum(&n_vector(&n)?, kind(&k)?));
            emit(&doc.to_json(), out.as_deref())
        }
        Command::Random { n, seed, kind: k, out } => {
            let n = n_vector(&n)?;
            let doc = RelationDocument {
                relation: random_instance(&n, kind(&k)?, seed).relation,
                generator: Some(Generator { seed, multiplicities: n }),
            };
            emit(&doc.to_json(), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    // clap's own usage errors exit with 2, which is reserved here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
