//! Command-line frontend: exact edge chromatic numbers, witness colorings,
//! drawings, pasting-family certificates, generators, and oracle sweeps.
//!
//! Exit codes: 0 success, 1 bad input or failed verification, 2 not
//! outer-1-planar, 3 undecided within the search budget.

mod doc;
mod sweep;

use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use doc::GraphDocument;
use o1p::chroma::{
    chromatic_index, chromatic_index_with_order, ChromaError, ChromaOptions, ChromaResult,
    Class2Reason, Classification,
};
use o1p::classp::{generate_p_bounded, recognize_p, Recognition};
use o1p::drawing::{find_embedding, random_outer1, DEFAULT_EMBED_BUDGET};

#[derive(Parser)]
#[command(
    name = "o1p",
    version,
    about = "Exact edge chromatic numbers for outer-1-planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chromatic index and class of a graph file
    Chi {
        file: PathBuf,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
        /// Include the witness coloring
        #[arg(long)]
        witness: bool,
    },
    /// Witness coloring as sorted [u, v, color] triples
    Color {
        file: PathBuf,
        /// DOT output with edges colored by class
        #[arg(long)]
        dot: bool,
    },
    /// Minimum-crossing outer drawing
    Embed { file: PathBuf },
    /// Pasting-family membership with a replayable certificate
    Classp { file: PathBuf },
    /// Seeded random graph document on stdout
    Gen {
        /// Vertex count (bound for --class-p)
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Paste operations attempted with --class-p
        #[arg(long, default_value_t = 4)]
        ops: usize,
        /// Paste configurations onto the base graph instead
        #[arg(long)]
        class_p: bool,
    },
    /// Check a coloring file against a graph file
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Re-run the oracle sweeps and print a summary table
    Sweep {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
}

pub struct Failure {
    code: i32,
    message: String,
}

pub fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().expect("writing a clap message");
            process::exit(code);
        }
    };
    if let Err(f) = run(cli) {
        eprintln!("error: {}", f.message);
        process::exit(f.code);
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Chi {
            file,
            json,
            witness,
        } => cmd_chi(&file, json, witness),
        Cmd::Color { file, dot } => cmd_color(&file, dot),
        Cmd::Embed { file } => cmd_embed(&file),
        Cmd::Classp { file } => cmd_classp(&file),
        Cmd::Gen {
            n,
            seed,
            ops,
            class_p,
        } => cmd_gen(n, seed, ops, class_p),
        Cmd::Verify { graph, coloring } => cmd_verify(&graph, &coloring),
        Cmd::Sweep { max_n } => sweep::run(max_n),
    }
}

fn read_to_string(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<GraphDocument, Failure> {
    GraphDocument::parse(&read_to_string(path)?)
        .map_err(|e| fail(1, format!("{}: {e}", path.display())))
}

fn solve(doc: &GraphDocument) -> Result<ChromaResult, Failure> {
    let g = doc.graph().map_err(|e| fail(1, e.to_string()))?;
    let opts = ChromaOptions::default();
    let r = match &doc.order {
        Some(order) => chromatic_index_with_order(&g, order, &opts),
        None => chromatic_index(&g),
    };
    r.map_err(|e| {
        let code = match e {
            ChromaError::NotOuter1Planar { .. } | ChromaError::InvalidDrawing(_) => 2,
            ChromaError::UndecidedEmbeddability | ChromaError::AnalysisIncomplete { .. } => 3,
        };
        fail(code, e.to_string())
    })
}

fn class_label(c: Classification) -> usize {
    match c {
        Classification::ClassOne => 1,
        Classification::ClassTwo => 2,
    }
}

fn reason_label(r: &Class2Reason) -> &'static str {
    match r {
        Class2Reason::OddCycle { .. } => "odd cycle",
        Class2Reason::UncolorableBlock { .. } => "class P",
    }
}

fn cmd_chi(file: &Path, json: bool, witness: bool) -> Result<(), Failure> {
    let document = load_document(file)?;
    let r = solve(&document)?;
    if json {
        let mut out = serde_json::json!({
            "chi": r.chi,
            "class": class_label(r.classification),
            "reason": r.class2_reason.as_ref().map(reason_label),
            "witness_optimal": r.witness_optimal,
            "fallback_used": r.fallback_used,
        });
        if witness {
            out["coloring"] = serde_json::json!(doc::coloring_triples(&r.coloring));
        }
        println!("{out}");
    } else {
        let suffix = match &r.class2_reason {
            Some(reason) => format!(" ({})", reason_label(reason)),
            None => String::new(),
        };
        println!(
            "chi={} class={}{}",
            r.chi,
            class_label(r.classification),
            suffix
        );
        if witness {
            print!("{}", doc::emit_coloring(&r.coloring));
        }
    }
    Ok(())
}

fn cmd_color(file: &Path, dot: bool) -> Result<(), Failure> {
    let document = load_document(file)?;
    let r = solve(&document)?;
    if dot {
        let g = document.graph().expect("validated by solve");
        let name = document.name.as_deref().unwrap_or("o1p");
        print!("{}", doc::emit_dot(&g, &r.coloring, name));
    } else {
        print!("{}", doc::emit_coloring(&r.coloring));
    }
    Ok(())
}

fn cmd_embed(file: &Path) -> Result<(), Failure> {
    let document = load_document(file)?;
    let g = document.graph().map_err(|e| fail(1, e.to_string()))?;
    let emb = find_embedding(&g, DEFAULT_EMBED_BUDGET);
    match emb.drawing {
        Some(d) => {
            println!(
                "order={:?} crossings={} optimal={}",
                d.order(),
                d.crossing_count(),
                emb.optimal
            );
            Ok(())
        }
        None if emb.optimal => Err(fail(
            2,
            "not outer-1-planar: exhaustive search found no valid drawing",
        )),
        None => Err(fail(
            3,
            "undecided: embedding search budget exhausted before a verdict",
        )),
    }
}

fn cmd_classp(file: &Path) -> Result<(), Failure> {
    let document = load_document(file)?;
    let g = document.graph().map_err(|e| fail(1, e.to_string()))?;
    match recognize_p(&g) {
        Recognition::Member(ops) => {
            println!(
                "member: rebuilt from the base graph by {} pastes",
                ops.len()
            );
            for op in ops {
                println!("  {op:?}");
            }
        }
        Recognition::NotMember(reason) => println!("not a member: {reason}"),
    }
    Ok(())
}

fn cmd_gen(n: usize, seed: u64, ops: usize, class_p: bool) -> Result<(), Failure> {
    let document = if class_p {
        if n < 5 {
            return Err(fail(1, "--class-p needs --n of at least 5"));
        }
        let (g, applied) = generate_p_bounded(seed, ops, n);
        let mut d = GraphDocument::new(&g);
        d.name = Some("pasted".to_string());
        d.comment = Some(format!("seed={seed} ops={}", applied.len()));
        d
    } else {
        if n < 3 {
            return Err(fail(1, "--n must be at least 3"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let drawing = random_outer1(n, 4, 0.5, &mut rng);
        let mut d = GraphDocument::new(drawing.graph());
        d.order = Some(drawing.order().to_vec());
        d.name = Some("random-o1p".to_string());
        d.comment = Some(format!("seed={seed}"));
        d
    };
    print!("{}", document.emit());
    Ok(())
}

fn cmd_verify(graph: &Path, coloring: &Path) -> Result<(), Failure> {
    let document = load_document(graph)?;
    let g = document.graph().map_err(|e| fail(1, e.to_string()))?;
    let text = read_to_string(coloring)?;
    let c = doc::parse_coloring(&g, &text)
        .map_err(|e| fail(1, format!("{}: {e}", coloring.display())))?;
    println!("ok: proper with {} colors", c.max_color_used());
    Ok(())
}
