use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cga::Signature;
use cga_cli::bench::{self, Kernel};
use cga_cli::{parse_scene, run_query, CliError, DEFAULT_EPS};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cga-cli",
    version,
    about = "Query scenes of points, lines, circles, planes and spheres"
)]
struct Cli {
    /// Print one JSON object per result instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Default tolerance for `collinear` and `coplanar`.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    eps: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run queries against a scene file.
    Eval {
        scene: PathBuf,
        #[arg(long = "query", short = 'q', required = true)]
        queries: Vec<String>,
    },
    /// Time the geometric product against the direct double sum.
    Bench {
        /// Signature as `p,q`; both G(3,1) and G(4,1) when omitted.
        #[arg(long, value_parser = parse_signature)]
        sig: Option<Signature>,
        #[arg(long)]
        iters: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    let (p, q) = s.split_once(',').ok_or("expected `p,q`")?;
    let p: usize = p
        .trim()
        .parse()
        .map_err(|_| format!("invalid p in `{s}`"))?;
    let q: usize = q
        .trim()
        .parse()
        .map_err(|_| format!("invalid q in `{s}`"))?;
    Signature::new(p, q).map_err(|e| e.to_string())
}

fn eval(
    scene_path: &PathBuf,
    queries: &[String],
    eps: f64,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(scene_path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", scene_path.display())))?;
    let scene = parse_scene(&text)?;
    for q in queries {
        let result = run_query(&scene, q, eps)?;
        if as_json {
            writeln!(out, "{}", result.json).ok();
        } else {
            writeln!(out, "{}", result.text).ok();
        }
    }
    Ok(())
}

fn run_bench(
    sig: Option<Signature>,
    iters: usize,
    fault: bool,
    as_json: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let kernel: Kernel = if fault {
        bench::faulty_product
    } else {
        bench::engine_product
    };
    let sigs = match sig {
        Some(s) => vec![s],
        None => vec![Signature::new(3, 1).unwrap(), Signature::new(4, 1).unwrap()],
    };
    for sig in sigs {
        let Some(r) = bench::run(sig, iters, kernel).map_err(|e| CliError::Bench(e.to_string()))?
        else {
            continue;
        };
        if as_json {
            let j = json!({
                "signature": sig.to_string(),
                "iterations": r.iterations,
                "cross_check": "pass",
                "samples": r.samples,
                "engine_seconds": r.engine_time.as_secs_f64(),
                "engine_products_per_second": r.engine_rate(),
                "oracle_iterations": r.oracle_iterations,
                "oracle_products_per_second": r.oracle_rate(),
                "speedup": r.speedup(),
            });
            writeln!(out, "{j}").ok();
        } else {
            writeln!(out, "{sig}: cross-check pass ({} samples)", r.samples).ok();
            writeln!(
                out,
                "{sig}: engine {} products in {:.3} s, {:.3e} products/s",
                r.iterations,
                r.engine_time.as_secs_f64(),
                r.engine_rate()
            )
            .ok();
            writeln!(
                out,
                "{sig}: oracle {} products in {:.3} s, {:.3e} products/s",
                r.oracle_iterations,
                r.oracle_time.as_secs_f64(),
                r.oracle_rate()
            )
            .ok();
            writeln!(out, "{sig}: speedup {:.2}", r.speedup()).ok();
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = if !(cli.eps.is_finite() && cli.eps > 0.0) {
        Err(CliError::Usage(format!(
            "--eps must be a positive number, got {}",
            cli.eps
        )))
    } else {
        match &cli.command {
            Command::Eval { scene, queries } => eval(scene, queries, cli.eps, cli.json, &mut out),
            Command::Bench {
                sig,
                iters,
                inject_fault,
            } => run_bench(*sig, *iters, *inject_fault, cli.json, &mut out),
        }
    };
    out.flush().ok();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
