use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use superk::arith::DEFAULT_SEED;
use superk::verify::{self, Side, UsageError, VerifyOptions};

#[derive(Parser)]
#[command(name = "superk", version, about = "Exact checks of U_q(gl(1|1)) on V^(x)N against localized K-theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the relation, localization, intertwiner and Koszul batteries.
    Verify {
        #[arg(long)]
        n: usize,
        /// Seed for random evaluation points (decimal or 0x-prefixed hex).
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Restrict per-weight geometric checks to |lambda| <= this.
        #[arg(long)]
        max_weight: Option<i32>,
        #[arg(long)]
        json: bool,
    },
    /// Print the E, F, K, H blocks at one weight.
    Matrices {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: i32,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        json: bool,
    },
    /// Koszul endpoint, cone-add and iterated-cone identities.
    Koszul {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Algebra,
    Geometry,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| e.to_string())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn usage(e: UsageError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn print_blocks(v: &Value) {
    let Some(blocks) = v["blocks"].as_object() else { return };
    println!("n = {}, lambda = {}, side = {}", v["n"], v["lambda"], v["side"].as_str().unwrap_or(""));
    for (name, b) in blocks {
        let src = b.get("domain_weight").or_else(|| b.get("source_weight")).cloned().unwrap_or(Value::Null);
        let tgt = b.get("codomain_weight").or_else(|| b.get("target_weight")).cloned().unwrap_or(Value::Null);
        println!("{name}({src} -> {tgt})");
        let cols: Vec<String> = b["cols"].as_array().into_iter().flatten().map(|c| c.as_str().unwrap_or("").to_string()).collect();
        println!("  cols: {}", cols.join(" "));
        let rows = b["rows"].as_array().cloned().unwrap_or_default();
        let entries = b["entries"].as_array().cloned().unwrap_or_default();
        if rows.is_empty() {
            println!("  (zero map to an empty block)");
        }
        for (r, e) in rows.iter().zip(entries) {
            let cells: Vec<String> = e.as_array().into_iter().flatten().map(|c| c.as_str().unwrap_or("").to_string()).collect();
            println!("  {}: [{}]", r.as_str().unwrap_or(""), cells.join(", "));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { n, seed, max_weight, json } => {
            let report = match verify::run_verify(&VerifyOptions { n, seed, max_weight }) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Matrices { n, weight, side, json } => {
            let side = match side {
                SideArg::Algebra => Side::Algebra,
                SideArg::Geometry => Side::Geometry,
            };
            let v = match verify::matrices(n, weight, side) {
                Ok(v) => v,
                Err(e) => return usage(e),
            };
            if json {
                let mut v = v;
                v["schema"] = Value::from(1);
                print_json(&v);
            } else {
                print_blocks(&v);
            }
            ExitCode::SUCCESS
        }
        Command::Koszul { rank, k, json } => {
            let (report, dump) = match verify::run_koszul(rank, k) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            if json {
                let mut v = report.to_json();
                v["complexes"] = dump;
                print_json(&v);
            } else {
                print!("{}", report.to_text());
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
