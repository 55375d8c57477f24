use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lowdist::hardness::{generate, parse_coloring};
use lowdist::line::{check_line_embedding, embed_line, embed_line_weighted, LineEmbedding};
use lowdist::oracle::{brute_force_line_capped, brute_force_tree_capped, min_distortion_line_capped, OracleCaps};
use lowdist::tree::{check_tree_embedding, embed_tree_with, RootedTree, TreeDpConfig, TreeEmbedding};
use lowdist::{format_rational, local_density, parse_rational, shortest_path_metric, Rational, Verdict, WeightedGraph};

/// Low-distortion embeddings of graph metrics into the line and into trees.
///
/// Exit codes: 0 success, 1 negative answer (no embedding, failed check),
/// 2 bad input or usage.
#[derive(Parser, Debug)]
#[command(name = "lowdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the local density of the graph metric, a lower bound on line
    /// distortion.
    Density { graph: PathBuf },

    /// Decide whether the unit-weight graph embeds into the line.
    EmbedLine {
        graph: PathBuf,
        #[arg(short, long)]
        d: u64,
        /// Allow arbitrary positive integer weights.
        #[arg(long)]
        weighted: bool,
        /// Write the embedding here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Decide whether the weighted graph embeds into the line.
    EmbedLineWeighted {
        graph: PathBuf,
        #[arg(short, long)]
        d: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Decide whether the unit-weight graph embeds into the tree.
    EmbedTree {
        graph: PathBuf,
        tree: PathBuf,
        #[arg(short, long)]
        d: u64,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Abort once this many partial embeddings and states are built.
        #[arg(long, default_value_t = TreeDpConfig::default().state_budget)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Check an embedding file against the graph metric at rational
    /// distortion `d`.
    Check {
        graph: PathBuf,
        embedding: PathBuf,
        /// `a/b` or an integer.
        #[arg(short, long)]
        d: String,
        /// Read the embedding as `vertex tree-vertex` pairs into this tree.
        #[arg(long)]
        tree: Option<PathBuf>,
    },

    /// Exhaustive search: minimum line distortion, or a decision when `d`
    /// or a tree is given.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        tree: Option<PathBuf>,
        /// `a/b` or an integer; must be an integer with --tree.
        #[arg(short, long)]
        d: Option<String>,
        /// Largest graph accepted.
        #[arg(long)]
        cap: Option<usize>,
        /// Largest tree accepted.
        #[arg(long)]
        tree_cap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },

    /// Build the weighted instance encoding 3-coloring of the graph at
    /// distortion `a/b`.
    GenHardness {
        graph: PathBuf,
        #[arg(short, long)]
        a: u64,
        #[arg(short, long)]
        b: u64,
        /// Writes `<out>.graph`, `<out>.roles` and, with a coloring,
        /// `<out>.embedding`.
        #[arg(long)]
        out: PathBuf,
        /// A proper 3-coloring: one color (1-3) per line, or `vertex color`.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}

type CmdResult = Result<bool, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<WeightedGraph, String> {
    WeightedGraph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_tree(path: &Path, root: usize) -> Result<RootedTree, String> {
    RootedTree::new(load_graph(path)?, root).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn found_line(e: Option<LineEmbedding>, d: u64, output: Option<&Path>) -> CmdResult {
    match e {
        Some(e) => emit(&e.normalized().to_text(), output).map(|_| true),
        None => {
            println!("no embedding with distortion at most {d}");
            Ok(false)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let err = |e: lowdist::Error| e.to_string();
    match cli.command {
        Command::Density { graph } => {
            let m = shortest_path_metric(&load_graph(&graph)?).map_err(err)?;
            let delta = local_density(&m);
            println!(
                "{} ({:.6})",
                format_rational(&delta),
                *delta.numer() as f64 / *delta.denom() as f64
            );
            Ok(true)
        }
        Command::EmbedLine {
            graph,
            d,
            weighted,
            output,
        } => {
            let g = load_graph(&graph)?;
            let e = if weighted {
                embed_line_weighted(&g, d)
            } else {
                embed_line(&g, d)
            }
            .map_err(err)?;
            found_line(e, d, output.as_deref())
        }
        Command::EmbedLineWeighted { graph, d, output } => {
            let e = embed_line_weighted(&load_graph(&graph)?, d).map_err(err)?;
            found_line(e, d, output.as_deref())
        }
        Command::EmbedTree {
            graph,
            tree,
            d,
            root,
            budget,
            output,
        } => {
            let g = load_graph(&graph)?;
            let t = load_tree(&tree, root)?;
            let config = TreeDpConfig { state_budget: budget };
            let (e, stats) = embed_tree_with(&g, &t, d, &config).map_err(err)?;
            match e {
                Some(e) => emit(&e.to_text(), output.as_deref()).map(|_| true),
                None if stats.degree_pruned => {
                    println!(
                        "no embedding with distortion at most {d} (maximum degree exceeds the tree's to the power d)"
                    );
                    Ok(false)
                }
                None => {
                    println!("no embedding with distortion at most {d}");
                    Ok(false)
                }
            }
        }
        Command::Check {
            graph,
            embedding,
            d,
            tree,
        } => {
            let m = shortest_path_metric(&load_graph(&graph)?).map_err(err)?;
            let d = parse_rational(&d).map_err(err)?;
            let text = read(&embedding)?;
            let verdict = match tree {
                Some(path) => {
                    let t = load_tree(&path, 0)?;
                    let e = TreeEmbedding::parse(&text, m.size(), t.size()).map_err(err)?;
                    if !e.is_injective() {
                        return Err("tree embedding is not injective".into());
                    }
                    check_tree_embedding(&m, &t, &e, &d)
                }
                None => {
                    let e = LineEmbedding::parse(&text, m.size()).map_err(err)?;
                    if !e.is_injective() {
                        return Err("line embedding is not injective".into());
                    }
                    check_line_embedding(&m, &e, &d)
                }
            };
            println!("{verdict}");
            Ok(verdict == Verdict::Ok)
        }
        Command::Oracle {
            graph,
            tree,
            d,
            cap,
            tree_cap,
            root,
        } => {
            let m = shortest_path_metric(&load_graph(&graph)?).map_err(err)?;
            let defaults = OracleCaps::default();
            match tree {
                Some(path) => {
                    let t = load_tree(&path, root)?;
                    let d = d.ok_or("--d is required with --tree")?;
                    let d: u64 = d
                        .parse()
                        .map_err(|_| format!("--d must be a positive integer with --tree, got `{d}`"))?;
                    let caps = OracleCaps {
                        tree_graph: cap.unwrap_or(defaults.tree_graph),
                        tree_host: tree_cap.unwrap_or(defaults.tree_host),
                        ..defaults
                    };
                    match brute_force_tree_capped(&m, &t, d, &caps).map_err(err)? {
                        Some(e) => emit(&e.to_text(), None).map(|_| true),
                        None => {
                            println!("no embedding with distortion at most {d}");
                            Ok(false)
                        }
                    }
                }
                None => {
                    let cap = cap.unwrap_or(defaults.line);
                    match d {
                        Some(d) => {
                            let d: Rational = parse_rational(&d).map_err(err)?;
                            match brute_force_line_capped(&m, &d, cap).map_err(err)? {
                                Some(e) => emit(&e.to_text(), None).map(|_| true),
                                None => {
                                    println!("no embedding with distortion at most {}", format_rational(&d));
                                    Ok(false)
                                }
                            }
                        }
                        None => {
                            println!(
                                "{}",
                                format_rational(&min_distortion_line_capped(&m, cap).map_err(err)?)
                            );
                            Ok(true)
                        }
                    }
                }
            }
        }
        Command::GenHardness {
            graph,
            a,
            b,
            out,
            coloring,
        } => {
            let g = load_graph(&graph)?;
            let psi = coloring
                .map(|path| parse_coloring(&read(&path)?, g.vertex_count()).map_err(err))
                .transpose()?;
            let inst = generate(&g, a, b).map_err(err)?;
            let witness = psi.map(|psi| inst.witness_embedding(&psi)).transpose().map_err(err)?;
            let with_ext = |ext: &str| {
                let mut name = out.clone().into_os_string();
                name.push(ext);
                PathBuf::from(name)
            };
            emit(&inst.graph.to_text(), Some(&with_ext(".graph")))?;
            emit(&inst.roles_text(), Some(&with_ext(".roles")))?;
            if let Some(f) = witness {
                emit(&f.to_text(), Some(&with_ext(".embedding")))?;
            }
            let p = inst.params;
            println!(
                "a={} b={} g={} r={} q={} L={} t={} vertices={} edges={}",
                p.a,
                p.b,
                p.g,
                p.r,
                p.q,
                p.l,
                p.t,
                inst.graph.vertex_count(),
                inst.graph.edge_count()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
