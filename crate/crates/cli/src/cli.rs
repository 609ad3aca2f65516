//! Command-line grammar and dispatch.

use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use untangle_core::bounds::{certified_fixed_upper_bound, bound_table, verify_redrawing, BoundMethod};
use untangle_core::construction::{standard_instance, ClusterStyle, Family};
use untangle_core::embed::{barycentric_embed, extract_moves, untangle_fixing_face};
use untangle_core::geometry::parabola_points;
use untangle_core::graph::planar_embedding;
use untangle_core::interchange::{read_session_log, write_session_log, InstanceDoc};
use untangle_core::sequences::{lemma_table, DEFAULT_CAP};
use untangle_core::{count_crossings, is_plane_drawing};

use crate::api;

#[derive(Parser, Debug)]
#[command(name = "untangle", version, about = "Untangling lab for planar graph drawings")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum FamilyArg {
    Chain,
    Square,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum StyleArg {
    Stacked,
    Strip,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum MethodArg {
    Circle,
    Persistence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a clustered instance with its tangled drawing.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        /// Number of extra clusters (chain family only).
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum, default_value = "stacked")]
        style: StyleArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check the xyxy-free subsequence bound.
    LemmaCheck {
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 4)]
        smax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print the certificate for an instance file.
    Bound {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Bound formulas for a range of parameters.
    BoundTable {
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 5)]
        smax: usize,
    },
    /// Check a redrawing against an instance's certificate.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        redraw: PathBuf,
    },
    /// Produce a crossing-free redrawing.
    Untangle {
        #[arg(long)]
        instance: PathBuf,
        /// Keep a facial triangle of the input drawing in place.
        #[arg(long)]
        fix_face: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the moves as a session log.
        #[arg(long)]
        moves: Option<PathBuf>,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory of static files served under `/`.
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Mirror every session's move log to this directory.
        #[arg(long)]
        log_dir: Option<PathBuf>,
    },
    /// Replay a session log and report the final state.
    PlayLog {
        #[arg(long, conflicts_with = "preset")]
        instance: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        log: PathBuf,
    },
}

fn read_doc(path: &Path) -> anyhow::Result<InstanceDoc> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceDoc::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: &mut dyn Write, path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn emit(out: &mut dyn Write, json_mode: bool, value: &Value, text: impl FnOnce() -> String) -> anyhow::Result<()> {
    if json_mode {
        writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

/// Runs a parsed command, writing output to `out`. Returns the exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    let json_mode = cli.json;
    match cli.command {
        Command::Construct {
            family,
            k,
            s,
            style,
            out: path,
        } => {
            let style = match style {
                StyleArg::Stacked => ClusterStyle::Stacked,
                StyleArg::Strip => ClusterStyle::Strip,
            };
            let family = match family {
                FamilyArg::Chain => Family::Chain {
                    k,
                    s: s.ok_or_else(|| anyhow!("--s is required for the chain family"))?,
                    style,
                },
                FamilyArg::Square => {
                    if s.is_some() {
                        bail!("--s only applies to the chain family");
                    }
                    Family::Square { k, style }
                }
            };
            let inst = standard_instance(family)?;
            let doc = InstanceDoc::from(&inst).to_string_pretty();
            match path {
                Some(p) => {
                    std::fs::write(&p, &doc)?;
                    let crossings = count_crossings(&inst.graph, inst.bad_drawing()?);
                    let summary = json!({
                        "family": family,
                        "n": inst.vertex_count(),
                        "edges": inst.graph.edge_count(),
                        "clusters": inst.cluster_count(),
                        "crossings": crossings,
                        "out": p,
                    });
                    emit(out, json_mode, &summary, || {
                        format!(
                            "{}: n={} edges={} clusters={} crossings={} -> {}",
                            family.label(),
                            inst.vertex_count(),
                            inst.graph.edge_count(),
                            inst.cluster_count(),
                            crossings,
                            p.display()
                        )
                    })?;
                }
                None => writeln!(out, "{doc}")?,
            }
            Ok(0)
        }
        Command::LemmaCheck { kmax, smax, cap } => {
            let rows = lemma_table(kmax, smax, cap)?;
            let all = rows.iter().all(|r| r.pass);
            emit(out, json_mode, &json!({"rows": rows, "all_pass": all}), || {
                let mut t = String::from("   k    s  max  k+s  result\n");
                for r in &rows {
                    t += &format!(
                        "{:>4} {:>4} {:>4} {:>4}  {}\n",
                        r.k,
                        r.s,
                        r.max_length,
                        r.bound,
                        if r.pass { "pass" } else { "FAIL" }
                    );
                }
                t.trim_end().to_string()
            })?;
            Ok(if all { 0 } else { 1 })
        }
        Command::Bound { instance, method } => {
            let doc = read_doc(&instance)?;
            let inst = doc
                .to_instance()
                .ok_or_else(|| anyhow!("instance file needs \"clusters\" and \"family\" for a certificate"))?;
            let method = match method {
                Some(MethodArg::Circle) | None => BoundMethod::CircleLemma,
                Some(MethodArg::Persistence) => BoundMethod::Persistence,
            };
            let cert = certified_fixed_upper_bound(&inst, method)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&cert)?)?;
            Ok(0)
        }
        Command::BoundTable { kmax, smax } => {
            let rows = bound_table(kmax, smax);
            emit(out, json_mode, &json!(rows), || {
                let mut t = String::from("   k    s     n  moved>=  fixed<=\n");
                for r in &rows {
                    t += &format!("{:>4} {:>4} {:>5} {:>8} {:>8}\n", r.k, r.s, r.n, r.moved_lower, r.fixed_upper);
                }
                t.trim_end().to_string()
            })?;
            Ok(0)
        }
        Command::Verify { instance, redraw } => {
            let doc = read_doc(&instance)?;
            let inst = doc
                .to_instance()
                .ok_or_else(|| anyhow!("instance file needs \"clusters\" and \"family\""))?;
            let redraw_doc = read_doc(&redraw)?;
            if redraw_doc.graph.edges() != inst.graph.edges() {
                bail!("redrawing is of a different graph");
            }
            let drawing = redraw_doc.drawing.ok_or_else(|| anyhow!("redraw file has no drawing"))?;
            let report = verify_redrawing(&inst, &drawing)?;
            emit(out, json_mode, &serde_json::to_value(&report)?, || {
                format!(
                    "fixed={} moved={} plane={} fixed_upper={} persistent={:?} {}",
                    report.fix.fixed_count,
                    report.fix.moved_count,
                    report.plane,
                    report.certificate.certified_fixed_upper,
                    report.persistent_clusters,
                    if report.pass { "PASS" } else { "FAIL" }
                )
            })?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Untangle {
            instance,
            fix_face,
            out: path,
            moves,
        } => {
            let doc = read_doc(&instance)?;
            let bad = doc.drawing.clone().ok_or_else(|| anyhow!("instance has no drawing to untangle"))?;
            let (drawing, fallback) = if fix_face {
                let u = untangle_fixing_face(&doc.graph, &bad)?;
                (u.drawing, u.fallback)
            } else {
                let faces = planar_embedding(&doc.graph)?.faces()?;
                let face = faces.iter().max_by_key(|f| f.len()).unwrap();
                (barycentric_embed(&doc.graph, face, &parabola_points(face.len()))?, false)
            };
            let plan = extract_moves(&bad, &drawing)?;
            if let Some(p) = moves {
                std::fs::write(&p, write_session_log(&plan))?;
            }
            let crossings = count_crossings(&doc.graph, &drawing);
            let fixed = (0..bad.len()).filter(|&v| bad.position(v) == drawing.position(v)).count();
            let result = InstanceDoc {
                drawing: Some(drawing),
                ..doc
            };
            let text = result.to_string_pretty();
            match path {
                Some(p) => {
                    std::fs::write(&p, &text)?;
                    let summary = json!({
                        "crossings": crossings,
                        "fixed": fixed,
                        "moves": plan.len(),
                        "fallback": fallback,
                        "out": p,
                    });
                    emit(out, json_mode, &summary, || {
                        format!(
                            "crossings={crossings} fixed={fixed} moves={}{} -> {}",
                            plan.len(),
                            if fallback { " (kept one edge only)" } else { "" },
                            p.display()
                        )
                    })?;
                }
                None => write_or_print(out, None, &text)?,
            }
            Ok(0)
        }
        Command::Serve {
            port,
            host,
            static_dir,
            log_dir,
        } => {
            let addr: SocketAddr = format!("{host}:{port}").parse().context("bad --host/--port")?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(crate::server::serve(addr, static_dir, log_dir))?;
            Ok(0)
        }
        Command::PlayLog { instance, preset, log } => {
            let source = match (instance, preset) {
                (Some(p), None) => api::source_from_doc(read_doc(&p)?)?,
                (None, Some(id)) => api::preset(&id).ok_or_else(|| anyhow!("unknown preset {id:?}"))?,
                _ => bail!("give --instance or --preset"),
            };
            let text = std::fs::read_to_string(&log).with_context(|| format!("reading {}", log.display()))?;
            read_session_log(&text)?;
            let game = api::start_game(source, Some(&text))?;
            let score = game.score();
            let value = json!({
                "label": game.label(),
                "crossings": game.crossings(),
                "plane": is_plane_drawing(game.graph(), game.current()),
                "score": score,
            });
            emit(out, json_mode, &value, || {
                format!(
                    "{}: moves={} crossings={} solved={} moved_lower={}",
                    game.label(),
                    score.moves_used,
                    game.crossings(),
                    score.solved,
                    score
                        .certified_moved_lower
                        .map_or("-".to_string(), |b| b.to_string())
                )
            })?;
            Ok(0)
        }
    }
}
