//! `smartpath plan | rates | validate`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use smartpath::geometry::build_region_graph;
use smartpath::planner::{plan, PlanError};

use smartpath_cli::scene::{Mode, Scene};
use smartpath_cli::{artifacts, rates};

const EXIT_SCENE: u8 = 2;
const EXIT_PLAN: u8 = 3;
const EXIT_CERT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "smartpath",
    version,
    about = "Certified polynomial paths through unions of convex polyhedra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan, certify and write path.json, cert.json, samples.csv and plot.svg.
    Plan {
        scene: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        nu_cap: Option<usize>,
        /// Dense samples for the containment check.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write rates.csv for the built-in convergence suite.
    Rates {
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check a scene and report region connectivity.
    Validate { scene: PathBuf },
}

fn load(path: &Path) -> Result<Scene, ExitCode> {
    Scene::load(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_SCENE)
    })
}

fn cmd_plan(
    path: PathBuf,
    out: PathBuf,
    mode: Option<Mode>,
    nu_cap: Option<usize>,
    samples: Option<usize>,
    seed: Option<u64>,
) -> ExitCode {
    let mut scene = match load(&path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let o = &mut scene.file.options;
    o.mode = mode.unwrap_or(o.mode);
    o.nu_cap = nu_cap.unwrap_or(o.nu_cap);
    o.cert_samples = samples.unwrap_or(o.cert_samples);
    o.seed = seed.unwrap_or(o.seed);
    let (csv_rows, seed) = (o.csv_samples, o.seed);
    let (result, code) = match plan(&scene.regions, &scene.waypoints, &scene.plan_options()) {
        Ok(r) => (r, ExitCode::SUCCESS),
        Err(PlanError::Certification { nu, result }) => {
            eprintln!("error: certification failed at degree {nu}");
            for f in result.cert.failures().iter().take(10) {
                eprintln!(
                    "  condition {}: {} ({} >= {})",
                    f.condition, f.label, f.value, f.limit
                );
            }
            (*result, ExitCode::from(EXIT_CERT))
        }
        Err(PlanError::InvalidScene(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_SCENE);
        }
        Err(e) => {
            eprintln!("error: stage {}: {e}", e.stage());
            return ExitCode::from(EXIT_PLAN);
        }
    };
    match artifacts::write_all(&out, &scene.regions, &result, csv_rows, seed) {
        Ok(files) => {
            println!(
                "degree {} (tried {:?}), all_pass {}",
                result.nu, result.tried, result.cert.all_pass
            );
            println!("wrote {} to {}", files.join(", "), out.display());
            code
        }
        Err(e) => {
            eprintln!("error: cannot write to {}: {e}", out.display());
            ExitCode::FAILURE
        }
    }
}

fn cmd_rates(out: PathBuf) -> ExitCode {
    let rows = match rates::rate_table() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let target = out.join("rates.csv");
    let written = std::fs::create_dir_all(&out)
        .and_then(|_| std::fs::write(&target, rates::rates_csv(&rows)));
    match written {
        Ok(()) => {
            println!("wrote {} rows to {}", rows.len(), target.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", target.display());
            ExitCode::FAILURE
        }
    }
}

fn cmd_validate(path: PathBuf) -> ExitCode {
    let scene = match load(&path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    let graph = match build_region_graph(&scene.regions, &scene.hints) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_SCENE);
        }
    };
    println!(
        "{} regions, {} waypoints",
        scene.regions.len(),
        scene.waypoints.len()
    );
    for e in &graph.edges {
        println!(
            "edge {} -> {}: {:?} bridge of degree {}",
            e.i, e.j, e.bridge.kind, e.bridge.degree
        );
    }
    for (i, j) in &graph.unknown {
        println!("regions {i} and {j} touch but no bridge was certified");
    }
    let mut component = vec![usize::MAX; graph.regions.len()];
    let mut count = 0;
    for start in 0..component.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = count;
        while let Some(v) = stack.pop() {
            for u in graph.neighbors(v) {
                if component[u] == usize::MAX {
                    component[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    println!("{count} connected component(s)");
    let regions: Vec<usize> = scene.waypoints.iter().map(|w| w.region).collect();
    if regions
        .windows(2)
        .any(|w| component[w[0]] != component[w[1]])
    {
        println!("warning: consecutive waypoints lie in different components");
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Plan {
            scene,
            out,
            mode,
            nu_cap,
            samples,
            seed,
        } => cmd_plan(scene, out, mode, nu_cap, samples, seed),
        Command::Rates { out } => cmd_rates(out),
        Command::Validate { scene } => cmd_validate(scene),
    }
}
