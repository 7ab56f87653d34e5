use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use unitgraph::codes::{
    code_from_incidence, dual_code, incidence_matrix, DecodeFlag, SingleErrorDecoder,
    DEFAULT_DISTANCE_BUDGET,
};
use unitgraph::graph::UnitGraph;
use unitgraph::ring::RingSpec;
use unitgraph::verify::{crt_isomorphism_check, report, sweep};
use unitgraph::{Error, Result};

#[derive(Parser)]
#[command(
    name = "unitgraph",
    version,
    about = "Unit graphs of Z_n: invariants, incidence-matrix codes, verification against closed forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full verification report for a single n
    Report {
        #[arg(long)]
        n: u64,
        /// Odd prime for the q-ary code when n is even (odd n uses F_2)
        #[arg(long, default_value_t = 3)]
        q: u8,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// One CSV row per n in [from, to]; exit status 1 iff any mismatch
    Sweep {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 3)]
        q: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check that the CRT bijection carries adjacency exactly
    CheckCrt {
        #[arg(long)]
        n: u64,
    },
    /// Write the |V| x |E| incidence matrix in the `rows cols q` text format
    ExportMatrix {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        q: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the edge list: `p <vertices> <edges>` header, one `i j` per line
    ExportGraph {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded error-injection trials against the dual code of G(Z_n)
    DecodeDemo {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        q: u8,
        /// Errors injected per trial
        #[arg(long, default_value_t = 1)]
        errors: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// UNITGRAPH_BUDGET overrides the distance enumeration budget.
fn distance_budget() -> Result<u64> {
    match std::env::var("UNITGRAPH_BUDGET") {
        Ok(s) => s
            .parse()
            .map_err(|_| Error::Domain(format!("UNITGRAPH_BUDGET must be an integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_DISTANCE_BUDGET),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = distance_budget()?;
    match cli.command {
        Command::Report { n, q, format } => {
            let r = report(n, q, budget)?;
            match format {
                OutputFormat::Json => print!("{}", r.to_json()),
                OutputFormat::Text => print!("{}", r.to_text()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep { from, to, q, out } => {
            let mut w = BufWriter::new(File::create(&out)?);
            let summary = sweep(from, to, q, budget, &mut w)?;
            w.flush()?;
            println!(
                "sweep {from}..{to}: {} rows, {} mismatch(es) -> {}",
                summary.rows,
                summary.mismatches,
                out.display()
            );
            Ok(if summary.mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::CheckCrt { n } => {
            if crt_isomorphism_check(n)? {
                println!("crt isomorphism holds for n = {n}");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("crt isomorphism FAILS for n = {n}");
                Ok(ExitCode::from(1))
            }
        }
        Command::ExportMatrix { n, q, out } => {
            let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
            let h = incidence_matrix(&g, q)?;
            File::create(&out)?.write_all(h.to_text().as_bytes())?;
            println!("wrote {} x {} matrix over F_{q} -> {}", h.rows(), h.cols(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportGraph { n, out } => {
            let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
            let mut w = BufWriter::new(File::create(&out)?);
            g.write_edge_list(&mut w)?;
            w.flush()?;
            println!(
                "wrote {} vertices, {} edges -> {}",
                g.vertex_count(),
                g.edge_count(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::DecodeDemo { n, q, errors, trials, seed } => {
            decode_demo(n, q, errors, trials, seed, budget)
        }
    }
}

fn decode_demo(n: u64, q: u8, errors: usize, trials: u64, seed: u64, budget: u64) -> Result<ExitCode> {
    if n < 2 {
        return Err(Error::Domain("decode-demo needs n >= 2".into()));
    }
    let used_q = if n % 2 == 1 { 2 } else { q };
    let g = UnitGraph::build(&RingSpec::new(vec![n])?)?;
    let code = code_from_incidence(&g, used_q, budget)?;
    let dual = dual_code(&code, budget);
    if errors > dual.length() {
        return Err(Error::Domain(format!(
            "{errors} errors do not fit a length-{} word",
            dual.length()
        )));
    }
    let decoder = SingleErrorDecoder::new(&dual)?;
    println!(
        "decode-demo n={n} q={used_q} dual=[{}, {}, {}] errors={errors} trials={trials} seed={seed}",
        dual.length(),
        dual.dimension(),
        dual.distance()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut clean, mut corrected, mut miscorrected, mut uncorrectable) = (0u64, 0u64, 0u64, 0u64);
    for _ in 0..trials {
        let message: Vec<u8> =
            (0..dual.dimension()).map(|_| rng.gen_range(0..used_q)).collect();
        let word = dual.encode(&message)?;
        let mut received = word.clone();
        let mut positions = Vec::with_capacity(errors);
        while positions.len() < errors {
            let pos = rng.gen_range(0..dual.length());
            if !positions.contains(&pos) {
                positions.push(pos);
            }
        }
        for &pos in &positions {
            let offset = rng.gen_range(1..used_q);
            received[pos] = ((received[pos] as u16 + offset as u16) % used_q as u16) as u8;
        }
        let (out, flag) = decoder.decode(&received)?;
        match flag {
            DecodeFlag::Clean => clean += 1,
            DecodeFlag::Corrected if out == word => corrected += 1,
            DecodeFlag::Corrected => miscorrected += 1,
            DecodeFlag::Uncorrectable => uncorrectable += 1,
        }
    }
    println!(
        "clean={clean} corrected={corrected} miscorrected={miscorrected} uncorrectable={uncorrectable}"
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
