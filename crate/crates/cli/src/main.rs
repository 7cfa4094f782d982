use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geonet::io::{save, to_json};
use geonet::irreducible::witness_net;
use geonet::{
    build_default_overlay_net, build_fermat_tripod, build_paper_net, fermat_point,
    find_proper_subnet_with, relax, render_svg, verify, Error, Net, Point, RelaxParams,
    RenderOptions, SearchOptions, SubnetCertificate, Topology, Triangle, VerifyReport, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "geonet",
    version,
    about = "Build, verify, relax and render planar geodesic nets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    /// The irreducible net with 16 balanced and 4 unbalanced vertices.
    Paper16,
    /// The reducible union of seven trees on four terminals.
    Overlay,
    /// Fermat tripod on the triangle (0,0), (1,0), (0,1).
    FermatTripod,
}

#[derive(Subcommand)]
enum Command {
    /// Write a built-in net as a JSON document.
    Build {
        fixture: Fixture,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check balance, degrees, crossings and connectivity. Exit 0 iff valid.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Search for a proper geodesic subnet. Exit 0 if irreducible, 2 if
    /// reducible, 3 if the search budget runs out.
    Irreducible {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write the witness subnet (if any) as a net document.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long, default_value_t = geonet::irreducible::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Relax the balanced vertices to a critical point of total length.
    Relax {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Output file; defaults to `<FILE stem>.relaxed.json` beside the input.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the per-step length trace as JSON.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Print the Fermat point of a triangle.
    #[command(allow_negative_numbers = true)]
    Fermat {
        x1: f64,
        y1: f64,
        x2: f64,
        y2: f64,
        x3: f64,
        y3: f64,
    },
    /// Draw a net as SVG.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        labels: bool,
        #[arg(long, default_value_t = 800.0)]
        width: f64,
        /// Net document whose edges are drawn highlighted, e.g. a witness.
        #[arg(long)]
        highlight: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e);
            ExitCode::from(match e {
                Error::SearchBudgetExceeded(_) => 3,
                _ => 1,
            })
        }
    }
}

fn load(path: &Path) -> geonet::Result<Net> {
    geonet::io::load(path).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        )),
        e => e,
    })
}

fn write_text(path: Option<&Path>, text: &str) -> geonet::Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn run(command: Command) -> geonet::Result<u8> {
    match command {
        Command::Build { fixture, out } => {
            let net = match fixture {
                Fixture::Paper16 => build_paper_net()?,
                Fixture::Overlay => build_default_overlay_net()?,
                Fixture::FermatTripod => build_fermat_tripod(&Triangle::new(
                    Point::new(0.0, 0.0),
                    Point::new(1.0, 0.0),
                    Point::new(0.0, 1.0),
                )?)?,
            };
            write_text(out.as_deref(), &to_json(&net))?;
            Ok(0)
        }
        Command::Verify {
            file,
            tol,
            json: as_json,
        } => {
            let net = load(&file)?;
            let report = verify(&net, tol);
            if as_json {
                print!("{}", json(&report));
            } else {
                print_report(&report);
            }
            Ok(if report.passed { 0 } else { 2 })
        }
        Command::Irreducible {
            file,
            tol,
            witness_out,
            budget,
            json: as_json,
        } => {
            let net = load(&file)?;
            let search = find_proper_subnet_with(
                &net,
                &SearchOptions {
                    tol,
                    node_budget: budget,
                },
            )?;
            for w in &search.warnings {
                eprintln!("warning: {w}");
            }
            if let (Some(path), Some(w)) = (&witness_out, search.certificate.witness()) {
                save(&witness_net(&net, w, tol), path)?;
            }
            if as_json {
                print!(
                    "{}",
                    json(&serde_json::json!({
                        "certificate": &search.certificate,
                        "witness_edges": search.certificate.witness().map(|w| {
                            w.iter().map(|&e| net.edge_ids(e)).collect::<Vec<_>>()
                        }),
                        "nodes": search.nodes,
                    }))
                );
            } else {
                print_certificate(&net, &search.certificate, search.nodes);
            }
            Ok(if search.certificate.is_irreducible() {
                0
            } else {
                2
            })
        }
        Command::Relax {
            file,
            step,
            tol,
            max_iter,
            out,
            trace_out,
        } => {
            let net = load(&file)?;
            let result = relax(
                &Topology::new(net),
                RelaxParams {
                    step,
                    max_iter,
                    tol,
                },
            )?;
            let out = out.unwrap_or_else(|| {
                let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("net");
                file.with_file_name(format!("{stem}.relaxed.json"))
            });
            save(&result.net, &out)?;
            if let Some(path) = trace_out {
                fs::write(
                    path,
                    json(&serde_json::json!({
                        "iterations": result.iterations,
                        "final_residual": result.final_residual,
                        "converged": result.converged,
                        "length_trace": &result.length_trace,
                    })),
                )?;
            }
            let first = result.length_trace.first().copied().unwrap_or(0.0);
            let last = result.length_trace.last().copied().unwrap_or(0.0);
            println!("iterations: {}", result.iterations);
            println!("converged: {}", result.converged);
            println!("final residual: {:.3e}", result.final_residual);
            println!("length: {first:.12} -> {last:.12}");
            println!("written: {}", out.display());
            Ok(0)
        }
        Command::Fermat {
            x1,
            y1,
            x2,
            y2,
            x3,
            y3,
        } => {
            let t = Triangle::new(Point::new(x1, y1), Point::new(x2, y2), Point::new(x3, y3))?;
            let f = fermat_point(&t)?;
            println!("{} {}", f.x, f.y);
            Ok(0)
        }
        Command::Render {
            file,
            out,
            labels,
            width,
            highlight,
        } => {
            let net = load(&file)?;
            let highlight = match highlight {
                Some(path) => Some(highlighted_edges(&net, &load(&path)?)?),
                None => None,
            };
            let svg = render_svg(
                &net,
                &RenderOptions {
                    width,
                    show_labels: labels,
                    highlight,
                },
            );
            fs::write(out, svg)?;
            Ok(0)
        }
    }
}

/// Edges of `net` whose endpoint ids form an edge of `marked`, or that lie on
/// an edge of `marked` (a witness with pass-through points suppressed).
fn highlighted_edges(net: &Net, marked: &Net) -> geonet::Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for e in 0..net.edge_count() {
        let [p, q] = net.segment(e).endpoints();
        let on = (0..marked.edge_count()).any(|f| {
            let s = marked.segment(f);
            [p, q].iter().all(|&r| {
                let t = s.project(r);
                s.line_distance(r) < 1e-9 && (-1e-9..=1.0 + 1e-9).contains(&t)
            })
        });
        if on {
            set.insert(e);
        }
    }
    if set.is_empty() && marked.edge_count() > 0 {
        return Err(Error::InvariantViolation(
            "highlight net shares no edges with the rendered net".into(),
        ));
    }
    Ok(set)
}

fn print_report(r: &VerifyReport) {
    println!("passed: {}", r.passed);
    println!("tolerance: {:e}", r.tolerance);
    println!("max residual: {:.3e}", r.max_residual);
    println!("connected: {}", r.connected);
    for id in r.out_of_balance_ids() {
        println!("out of balance: {id} (residual {:.3e})", r.residuals[id]);
    }
    for (id, d) in &r.degree_violations {
        println!("degree violation: {id} has degree {d}");
    }
    for f in &r.overlay_findings {
        println!(
            "overlapping edges: {} and {}",
            f.first.join("-"),
            f.second.join("-")
        );
    }
    for c in &r.unplanarized_crossings {
        println!(
            "unplanarized crossing: {} and {} at {}",
            c.first.join("-"),
            c.second.join("-"),
            c.at
        );
    }
    for e in &r.unbalanced_to_unbalanced_edges {
        println!("edge between unbalanced vertices: {}", e.join("-"));
    }
}

fn print_certificate(net: &Net, cert: &SubnetCertificate, nodes: u64) {
    match cert {
        SubnetCertificate::Irreducible {
            seed,
            trace,
            seeds_checked,
        } => {
            println!("irreducible");
            println!("seeds checked: {seeds_checked}, search nodes: {nodes}");
            println!("propagation from seed edge {}:", seed.join("-"));
            for step in trace {
                let names =
                    |v: &[[String; 2]]| v.iter().map(|e| e.join("-")).collect::<Vec<_>>().join(" ");
                print!("  {} forces in: {}", step.vertex, names(&step.forced_in));
                if !step.forced_out.is_empty() {
                    print!("; out: {}", names(&step.forced_out));
                }
                println!();
            }
        }
        SubnetCertificate::Reducible { witness } => {
            println!("reducible");
            println!("search nodes: {nodes}");
            println!("witness ({} of {} edges):", witness.len(), net.edge_count());
            for &e in witness {
                println!("  {}", net.edge_name(e));
            }
        }
    }
}
