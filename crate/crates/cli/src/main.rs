//! `confspace`: homology of two-point configuration spaces of graphs from the
//! command line.

mod dot;
mod pipeline;
mod report;

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use confspace::corpus;
use confspace::io::{Direction, GraphDocument, OuterFace};
use sha2::{Digest, Sha256};

use pipeline::{Basis, Context, Malformed};
use report::RunReport;

#[derive(Parser, Debug)]
#[command(name = "confspace", version, about = "Homology of two-point configuration spaces of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// emit the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// outer face marker, `EDGE` or `EDGE:reverse`; overrides the file
    #[arg(long, global = true, value_name = "EDGE[:reverse]")]
    outer_face: Option<String>,
    /// cycle basis for the intersection form
    #[arg(long, global = true, value_enum, default_value = "tree")]
    basis: Basis,
    /// print Graphviz DOT instead of a report (`info`: the graph, `homology`: D(G,2))
    #[arg(long, global = true)]
    dot: bool,
    /// add a timestamp to the report
    #[arg(long, global = true)]
    timestamp: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// classification of the graph
    Info { graph: PathBuf },
    /// Euler characteristic of D(G,2), by cells and by formula
    Euler { graph: PathBuf },
    /// homology of D(G,2) by Smith normal form
    Homology { graph: PathBuf },
    /// H_2 of the pair (N, dN) and the rank formula
    Nform { graph: PathBuf },
    /// the intersection form and the Betti numbers it gives
    Iform { graph: PathBuf },
    /// faces, disjoint pairs, hypotheses and Betti formulas of an embedded graph
    Planar { graph: PathBuf },
    /// cup product table of an embedded graph
    Cup { graph: PathBuf },
    /// subdivide every edge into K parts
    Subdivide {
        graph: PathBuf,
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
        parts: u32,
        /// write the subdivided graph here
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// run every applicable computation and cross-check
    Check { graph: PathBuf },
    /// list the bundled examples, or write them as graph files into DIR
    Corpus { dir: Option<PathBuf> },
}

fn read_input(path: &Path) -> Result<Vec<u8>, Malformed> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Malformed(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read(path).map_err(|e| Malformed(format!("{}: {e}", path.display())))
}

fn parse_outer(spec: &str) -> Result<OuterFace, Malformed> {
    let (edge, direction) = match spec.split_once(':') {
        None => (spec, Direction::Forward),
        Some((e, "reverse")) => (e, Direction::Reverse),
        Some((e, "forward")) => (e, Direction::Forward),
        Some(_) => return Err(Malformed(format!("bad --outer-face `{spec}`"))),
    };
    if edge.is_empty() {
        return Err(Malformed("empty edge in --outer-face".into()));
    }
    Ok(OuterFace { edge: edge.to_string(), direction })
}

fn load(cli: &Cli, path: &Path) -> Result<(Context, String), Malformed> {
    let bytes = read_input(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Malformed("input is not UTF-8".into()))?;
    let doc = GraphDocument::parse(&text)?;
    let graph = doc.graph()?;
    let outer = cli.outer_face.as_deref().map(parse_outer).transpose()?;
    let embedding = doc.embedding(&graph, outer.as_ref())?;
    Ok((Context::new(graph, embedding), digest))
}

fn corpus_command(dir: Option<&Path>) -> Result<(), Malformed> {
    for (name, graph, emb) in corpus::bundled() {
        match dir {
            Some(dir) => {
                let doc = GraphDocument::from_graph(&graph, emb.as_ref());
                let path = dir.join(format!("{name}.json"));
                std::fs::write(&path, doc.to_json() + "\n")
                    .map_err(|e| Malformed(format!("{}: {e}", path.display())))?;
            }
            None => emit(&format!(
                "{name:<14}{:>4} vertices{:>4} edges{}\n",
                graph.vertex_count(),
                graph.edge_count(),
                if emb.is_some() { "  embedded" } else { "" }
            )),
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Option<RunReport>, Malformed> {
    let (name, path) = match &cli.command {
        Command::Corpus { dir } => {
            corpus_command(dir.as_deref())?;
            return Ok(None);
        }
        Command::Info { graph } => ("info", graph),
        Command::Euler { graph } => ("euler", graph),
        Command::Homology { graph } => ("homology", graph),
        Command::Nform { graph } => ("nform", graph),
        Command::Iform { graph } => ("iform", graph),
        Command::Planar { graph } => ("planar", graph),
        Command::Cup { graph } => ("cup", graph),
        Command::Subdivide { graph, .. } => ("subdivide", graph),
        Command::Check { graph } => ("check", graph),
    };
    let (cx, digest) = load(cli, path)?;

    if cli.dot {
        match name {
            "info" => emit(&dot::graph(&cx.graph)),
            "homology" => emit(&dot::one_skeleton(&confspace::discrete_config::build_discrete_config(&cx.graph))),
            _ => return Err(Malformed("--dot applies to `info` and `homology`".into())),
        }
        return Ok(None);
    }

    let mut r = RunReport::new(name);
    r.input_digest = Some(digest);
    if cli.timestamp {
        r.timestamp = Some(SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    }
    pipeline::classify(&mut r, &cx);
    match &cli.command {
        Command::Info { .. } | Command::Corpus { .. } => {}
        Command::Euler { .. } => pipeline::euler(&mut r, &cx, false),
        Command::Homology { .. } => {
            pipeline::homology(&mut r, &cx);
            pipeline::euler(&mut r, &cx, true);
        }
        Command::Nform { .. } => pipeline::nform(&mut r, &cx),
        Command::Iform { .. } => pipeline::iform(&mut r, &cx, cli.basis)?,
        Command::Planar { .. } => pipeline::planar(&mut r, &cx)?,
        Command::Cup { .. } => pipeline::cup(&mut r, &cx)?,
        Command::Subdivide { parts, output, .. } => {
            let doc = pipeline::subdivide_graph(&mut r, &cx, *parts as usize)?;
            if let Some(out) = output {
                std::fs::write(out, doc.to_json() + "\n")
                    .map_err(|e| Malformed(format!("{}: {e}", out.display())))?;
            }
        }
        Command::Check { .. } => {
            pipeline::homology(&mut r, &cx);
            pipeline::euler(&mut r, &cx, true);
            pipeline::nform(&mut r, &cx);
            let basis = if cx.embedding.is_some() { cli.basis } else { Basis::Tree };
            pipeline::iform(&mut r, &cx, basis)?;
            if cx.embedding.is_some() {
                pipeline::planar(&mut r, &cx)?;
                pipeline::cup(&mut r, &cx)?;
            }
        }
    }
    Ok(Some(r))
}

/// Writes to stdout, giving up quietly if the reader has gone away.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(r)) => {
            if cli.json {
                emit(&(r.to_json() + "\n"));
            } else {
                emit(&r.to_text());
            }
            let failed = r.failed();
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("failed checks: {}", failed.join(", "));
                ExitCode::from(1)
            }
        }
    }
}
