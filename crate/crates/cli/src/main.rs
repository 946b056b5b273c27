//! Command line front end: verdicts, enumeration, constructions,
//! decompositions, and certificates for panmagic and panstochastic
//! matrices, all in exact rational arithmetic.
//!
//! Exit codes: 0 for an affirmative verdict or successful construction,
//! 1 for a negative verdict (not panmagic, not panstochastic, infeasible,
//! or a non-decomposability certificate was found), 2 for usage and input
//! errors. Output is deterministic: identical arguments and input files
//! produce byte-identical output.

mod format;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::exit;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::json;

use panmagic::decomp::{decompose5, membership, non_decomp_certificate, DecompError, Membership};
use panmagic::gallery::{counterexample, fixture, Fixture};
use panmagic::perm::{
    affine_perm, enumerate_affine_panmagic, enumerate_panmagic, enumerate_panmagic_uncapped,
    nonaffine_piecewise, Permutation, ENUMERATION_CAP,
};
use panmagic::products::{kronecker, wreath_matrices};
use panmagic::{AffineSpec, MagicReport, SquareMatrix, StochasticReport};

use format::{
    parse_matrix, render_matrix_json, render_matrix_text, render_perm_json, render_perm_text,
};

#[derive(Parser)]
#[command(
    name = "panmagic",
    version,
    about = "Exact verdicts, enumeration, constructions, and decompositions \
             for panmagic and panstochastic matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verdict on a matrix: panstochastic by default, or panmagic with --panmagic
    Check {
        /// Matrix file, or - for stdin
        #[arg(long, default_value = "-")]
        input: String,
        /// Only require all 4n line sums to be equal
        #[arg(long)]
        panmagic: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// List or count the panmagic permutations of one degree
    Enumerate {
        /// Degree of the permutations
        #[arg(long)]
        n: usize,
        /// Restrict to the affine ones
        #[arg(long)]
        affine_only: bool,
        /// Print only how many there are
        #[arg(long)]
        count_only: bool,
        /// Search degrees above the built-in cap
        #[arg(long)]
        allow_large: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Build permutations and product matrices
    #[command(subcommand)]
    Construct(Construct),
    /// Write a 5x5 panstochastic matrix as a convex combination of
    /// panmagic permutation matrices
    Decompose {
        /// Matrix file, or - for stdin
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Exact membership test in the convex hull of a vertex set
    Membership {
        /// Matrix file, or - for stdin
        #[arg(long, default_value = "-")]
        input: String,
        /// Directory of vertex matrix files, used in filename order
        #[arg(long, required_unless_present = "panmagic_n", conflicts_with = "panmagic_n")]
        vertices: Option<PathBuf>,
        /// Use the panmagic permutation matrices of this degree as vertices
        #[arg(long)]
        panmagic_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Search for a positive entry no support-compatible panmagic
    /// permutation covers
    Certify {
        /// Matrix file, or - for stdin
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Print one of the stored example matrices
    Fixture {
        /// uniform5, perm2x_5, magic60, lemma41_7, or thm12_25
        #[arg(long)]
        name: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Construct a panstochastic matrix that is not a convex combination
    /// of panmagic permutation matrices
    Counterexample {
        /// Matrix order; any n > 1 except 5
        #[arg(long)]
        n: usize,
        /// Append a non-decomposability certificate as JSON
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The affine permutation j -> a*j + b (mod n)
    Affine {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// The non-affine piecewise panmagic permutation of composite degree
    Piecewise {
        /// Degree; composite, coprime to 6
        #[arg(long)]
        n: usize,
        /// Prime divisor of n steering the two pieces
        #[arg(long)]
        p: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Wreath product: block s of the outer matrix scales block matrix s
    Wreath {
        /// Comma-separated block matrix files, one per outer column
        #[arg(long, value_delimiter = ',', required = true)]
        blocks: Vec<String>,
        /// Outer matrix file
        #[arg(long)]
        outer: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Kronecker product of two matrices
    Kron {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

fn main() {
    // Die quietly on a closed pipe (e.g. `panmagic enumerate ... | head`)
    // instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => exit(code),
        Err(err) => {
            eprintln!("error: {:#}", err);
            exit(2);
        }
    }
}

fn read_input(path: &str) -> Result<(String, String)> {
    if path == "-" {
        let mut payload = String::new();
        std::io::stdin().read_to_string(&mut payload).context("cannot read stdin")?;
        Ok((payload, "<stdin>".to_string()))
    } else {
        let payload = fs::read_to_string(path).with_context(|| format!("cannot read {}", path))?;
        Ok((payload, path.to_string()))
    }
}

fn load_matrix(path: &str) -> Result<SquareMatrix> {
    let (payload, source) = read_input(path)?;
    Ok(parse_matrix(&payload, &source)?)
}

fn emit_matrix(a: &SquareMatrix, format: OutputFormat) {
    let rendered = match format {
        OutputFormat::Text => render_matrix_text(a),
        OutputFormat::Json => render_matrix_json(a),
    };
    print!("{}", rendered);
}

fn emit_perm(pi: &Permutation, format: OutputFormat) {
    let rendered = match format {
        OutputFormat::Text => render_perm_text(pi),
        OutputFormat::Json => render_perm_json(pi),
    };
    print!("{}", rendered);
}

fn emit_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON trees built here always serialize")
    );
}

fn images(pi: &Permutation) -> Vec<usize> {
    pi.images().to_vec()
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check { input, panmagic, format } => {
            let a = load_matrix(&input)?;
            if panmagic {
                match a.check_panmagic() {
                    MagicReport::Panmagic { mu } => {
                        match format {
                            OutputFormat::Text => println!("panmagic, mu = {}", mu),
                            OutputFormat::Json => emit_json(&json!({
                                "verdict": "panmagic",
                                "mu": mu.to_string(),
                            })),
                        }
                        Ok(0)
                    }
                    MagicReport::Violation(v) => {
                        match format {
                            OutputFormat::Text => println!("not panmagic: {}", v),
                            OutputFormat::Json => emit_json(&json!({
                                "verdict": "not panmagic",
                                "reason": v.to_string(),
                            })),
                        }
                        Ok(1)
                    }
                }
            } else {
                match a.check_panstochastic() {
                    StochasticReport::Panstochastic => {
                        match format {
                            OutputFormat::Text => println!("panstochastic, mu = 1"),
                            OutputFormat::Json => emit_json(&json!({
                                "verdict": "panstochastic",
                                "mu": "1",
                            })),
                        }
                        Ok(0)
                    }
                    report => {
                        match format {
                            OutputFormat::Text => println!("not panstochastic: {}", report),
                            OutputFormat::Json => emit_json(&json!({
                                "verdict": "not panstochastic",
                                "reason": report.to_string(),
                            })),
                        }
                        Ok(1)
                    }
                }
            }
        }

        Command::Enumerate { n, affine_only, count_only, allow_large, format } => {
            let perms: Vec<Permutation> = if affine_only {
                // The listing contract is lexicographic by image sequence,
                // not the (a, b) order the affine enumeration returns.
                let mut mapped: Vec<Permutation> = enumerate_affine_panmagic(n)
                    .into_iter()
                    .map(|spec| affine_perm(spec, n).expect("enumerated multipliers are units"))
                    .collect();
                mapped.sort();
                mapped
            } else if n <= ENUMERATION_CAP {
                enumerate_panmagic(n).expect("degree is within the cap")
            } else if allow_large {
                enumerate_panmagic_uncapped(n)
            } else {
                bail!(
                    "degree {} exceeds the enumeration cap {}; pass --allow-large to search anyway",
                    n,
                    ENUMERATION_CAP
                );
            };
            match (count_only, format) {
                (true, OutputFormat::Text) => println!("{}", perms.len()),
                (true, OutputFormat::Json) => emit_json(&json!({ "n": n, "count": perms.len() })),
                (false, OutputFormat::Text) => {
                    for pi in &perms {
                        let line: Vec<String> = pi.images().iter().map(usize::to_string).collect();
                        println!("{}", line.join(" "));
                    }
                }
                (false, OutputFormat::Json) => {
                    let lists: Vec<Vec<usize>> = perms.iter().map(images).collect();
                    emit_json(&json!({ "n": n, "count": perms.len(), "perms": lists }));
                }
            }
            Ok(0)
        }

        Command::Construct(what) => match what {
            Construct::Affine { n, a, b, format } => {
                let pi = affine_perm(AffineSpec { a, b }, n)?;
                emit_perm(&pi, format);
                Ok(0)
            }
            Construct::Piecewise { n, p, format } => {
                let pi = nonaffine_piecewise(n, p)?;
                emit_perm(&pi, format);
                Ok(0)
            }
            Construct::Wreath { blocks, outer, format } => {
                let blocks: Vec<SquareMatrix> =
                    blocks.iter().map(|f| load_matrix(f)).collect::<Result<_>>()?;
                let outer = load_matrix(&outer)?;
                let w = wreath_matrices(&blocks, &outer)?;
                emit_matrix(&w, format);
                Ok(0)
            }
            Construct::Kron { left, right, format } => {
                let product = kronecker(&load_matrix(&left)?, &load_matrix(&right)?);
                emit_matrix(&product, format);
                Ok(0)
            }
        },

        Command::Decompose { input, format } => {
            let a = load_matrix(&input)?;
            match decompose5(&a) {
                Ok(decomp) => {
                    match format {
                        OutputFormat::Text => {
                            for term in &decomp.terms {
                                let imgs: Vec<String> =
                                    term.perm.images().iter().map(usize::to_string).collect();
                                println!("{} {}", term.coeff, imgs.join(" "));
                            }
                        }
                        OutputFormat::Json => {
                            let terms: Vec<serde_json::Value> = decomp
                                .terms
                                .iter()
                                .map(|t| {
                                    json!({
                                        "perm": images(&t.perm),
                                        "coeff": t.coeff.to_string(),
                                    })
                                })
                                .collect();
                            emit_json(&serde_json::Value::Array(terms));
                        }
                    }
                    Ok(0)
                }
                Err(DecompError::NotPanstochastic(report)) => {
                    match format {
                        OutputFormat::Text => println!("not panstochastic: {}", report),
                        OutputFormat::Json => emit_json(&json!({
                            "verdict": "not panstochastic",
                            "reason": report.to_string(),
                        })),
                    }
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::Membership { input, vertices, panmagic_n, format } => {
            let a = load_matrix(&input)?;
            let vertex_matrices: Vec<SquareMatrix> = if let Some(dir) = vertices {
                let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                    .with_context(|| format!("cannot read directory {}", dir.display()))?
                    .collect::<std::io::Result<Vec<_>>>()?
                    .into_iter()
                    .map(|entry| entry.path())
                    .filter(|p| p.is_file())
                    .collect();
                paths.sort();
                paths
                    .iter()
                    .map(|p| load_matrix(&p.display().to_string()))
                    .collect::<Result<_>>()?
            } else {
                let n = panmagic_n.expect("clap requires one vertex source");
                let perms = enumerate_panmagic(n).map_err(|e| anyhow!("{}", e))?;
                perms.iter().map(SquareMatrix::from_permutation).collect()
            };
            match membership(&a, &vertex_matrices)? {
                Membership::Feasible(coefficients) => {
                    match format {
                        OutputFormat::Text => {
                            println!("feasible");
                            for (i, c) in coefficients.iter().enumerate() {
                                println!("{} {}", i, c);
                            }
                        }
                        OutputFormat::Json => {
                            let strings: Vec<String> =
                                coefficients.iter().map(|c| c.to_string()).collect();
                            emit_json(&json!({ "feasible": true, "coefficients": strings }));
                        }
                    }
                    Ok(0)
                }
                Membership::Infeasible => {
                    match format {
                        OutputFormat::Text => println!("infeasible"),
                        OutputFormat::Json => emit_json(&json!({ "feasible": false })),
                    }
                    Ok(1)
                }
            }
        }

        Command::Certify { input, format } => {
            let a = load_matrix(&input)?;
            match non_decomp_certificate(&a) {
                Ok(Some(cert)) => {
                    let (i, j) = cert.entry;
                    match format {
                        OutputFormat::Text => println!(
                            "certificate: entry ({}, {}), search exhausted after {} nodes",
                            i, j, cert.search_exhausted
                        ),
                        OutputFormat::Json => emit_json(&json!({
                            "entry": [i, j],
                            "search_exhausted": cert.search_exhausted,
                        })),
                    }
                    Ok(1)
                }
                Ok(None) => {
                    match format {
                        OutputFormat::Text => println!("no certificate found"),
                        OutputFormat::Json => emit_json(&json!({ "entry": null })),
                    }
                    Ok(0)
                }
                Err(DecompError::NotPanstochastic(report)) => {
                    match format {
                        OutputFormat::Text => println!("not panstochastic: {}", report),
                        OutputFormat::Json => emit_json(&json!({
                            "verdict": "not panstochastic",
                            "reason": report.to_string(),
                        })),
                    }
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }

        Command::Fixture { name, format } => {
            let Some(which) = Fixture::from_name(&name) else {
                let names: Vec<&str> = Fixture::ALL.iter().map(|f| f.name()).collect();
                bail!("unknown fixture '{}'; expected one of: {}", name, names.join(", "));
            };
            emit_matrix(&fixture(which), format);
            Ok(0)
        }

        Command::Counterexample { n, certify, format } => {
            let a = counterexample(n)?;
            emit_matrix(&a, format);
            if !certify {
                return Ok(0);
            }
            if n.gcd(&6) > 1 {
                // No panmagic permutations exist at this order, so the hull
                // of panmagic vertices is empty and any panstochastic
                // matrix lies outside it; an entry-level search is neither
                // needed nor tractable on a full-support matrix.
                emit_json(&json!({
                    "entry": null,
                    "note": format!(
                        "no panmagic permutations of degree {} exist; the vertex set is empty",
                        n
                    ),
                }));
                return Ok(1);
            }
            match non_decomp_certificate(&a)? {
                Some(cert) => {
                    emit_json(&json!({
                        "entry": [cert.entry.0, cert.entry.1],
                        "search_exhausted": cert.search_exhausted,
                    }));
                    Ok(1)
                }
                None => {
                    emit_json(&json!({ "entry": null }));
                    Ok(0)
                }
            }
        }
    }
}
