//! Command-line front end: encode, corrupt, decode, self-test and the
//! operation-count bench that reproduces the reference complexity tables.
//!
//! Exit codes: 0 success (decode: corrected), 2 uncorrectable word,
//! 1 usage or i/o error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rsfc::baseline::{ClassicCodeParams, ClassicCodec};
use rsfc::basis::{build_basis, polynomial_basis, BasisContext};
use rsfc::bench::{collect_stats, reference_for, StageTrace, COUNTING_NOTES, STAGE_NAMES};
use rsfc::codec::{CodeParams, Codec, DecodeOutcome, Solver};
use rsfc::gf::{build_field, Field, FieldContext, FieldElement, FieldSpec, OpCounter};
use rsfc::io::{self, FileHeader};
use serde::Serialize;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "rsfc",
    version,
    about = "Reed-Solomon codec over GF(2^m) with an FFT decoding pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a raw message file into a codeword file
    Encode(EncodeArgs),
    /// Inject symbol errors into a codeword file
    Corrupt(CorruptArgs),
    /// Decode a received file back to a codeword
    Decode(DecodeArgs),
    /// Count field operations per decoding stage against the reference tables
    Bench(BenchArgs),
    /// Run the reduced invariant suite
    Selftest,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Fdma,
    Fma,
    Ribm,
}

impl SolverArg {
    fn as_str(self) -> &'static str {
        match self {
            SolverArg::Fdma => "fdma",
            SolverArg::Fma => "fma",
            SolverArg::Ribm => "ribm",
        }
    }
}

#[derive(Args)]
struct EncodeArgs {
    /// Field degree (default: smallest m with 2^m >= n)
    #[arg(long)]
    m: Option<u32>,
    /// Code length
    #[arg(long)]
    n: usize,
    /// Code dimension
    #[arg(long)]
    k: usize,
    /// Code construction: fdma/fma produce the transform-domain code
    /// (interchangeable at encode time), ribm the classical one
    #[arg(long, value_enum, default_value_t = SolverArg::Fdma)]
    solver: SolverArg,
    /// Input message file (raw symbols, k of them)
    input: PathBuf,
    /// Output codeword file
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct CorruptArgs {
    /// Number of symbol errors to inject (distinct positions)
    #[arg(long)]
    errors: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restrict error positions to message locations
    #[arg(long)]
    message_only: bool,
    /// Input codeword file
    input: PathBuf,
    /// Output received file
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct DecodeArgs {
    /// Key-equation solver
    #[arg(long, value_enum, default_value_t = SolverArg::Fdma)]
    solver: SolverArg,
    /// Input received file
    input: PathBuf,
    /// Output corrected codeword file
    #[arg(short, long)]
    output: PathBuf,
    /// Verify the corrected word by re-encoding before accepting it
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Code as "n,k" (e.g. 256,224 / 1024,896 / 4096,3584, or custom)
    #[arg(long, default_value = "256,224")]
    code: String,
    /// Key-equation solver (ribm selects the conventional baseline decoder)
    #[arg(long, value_enum, default_value_t = SolverArg::Fdma)]
    solver: SolverArg,
    /// Decode trials to run (per-stage counts are checked for determinism)
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// RNG seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output format
    #[arg(long, default_value = "text")]
    format: String,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(1);
        }
    };
    let code = match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Corrupt(args) => cmd_corrupt(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Selftest => cmd_selftest(),
    };
    std::process::exit(match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}", msg);
            1
        }
    });
}

/// Field tables for a degree, honoring the RSFC_FIELD_POLY override.
fn field_for(m: u32) -> Result<FieldContext, String> {
    let mut spec = FieldSpec::for_degree(m).ok_or_else(|| format!("unsupported degree m={}", m))?;
    if let Ok(hex) = std::env::var("RSFC_FIELD_POLY") {
        let cleaned = hex.trim().trim_start_matches("0x");
        let poly = u32::from_str_radix(cleaned, 16)
            .map_err(|_| format!("RSFC_FIELD_POLY is not valid hex: {}", hex))?;
        spec.reduction_poly = poly;
    }
    build_field(spec).map_err(|e| e.to_string())
}

fn smallest_degree(n: usize) -> u32 {
    let mut m = 2u32;
    while (1usize << m) < n {
        m += 1;
    }
    m
}

fn cmd_encode(args: EncodeArgs) -> Result<i32, String> {
    let m = args.m.unwrap_or_else(|| smallest_degree(args.n));
    let ctx = field_for(m)?;
    let bytes = fs::read(&args.input).map_err(|e| format!("{}: {}", args.input.display(), e))?;
    let msg = io::symbols_from_bytes(&bytes, m, args.k).map_err(|e| e.to_string())?;
    let ops = OpCounter::new();
    let gf = Field::new(&ctx, &ops);

    let cw = if args.solver == SolverArg::Ribm {
        let params = ClassicCodeParams::new(m, args.n, args.k).map_err(|e| e.to_string())?;
        let codec = ClassicCodec::new(&ctx, params).map_err(|e| e.to_string())?;
        codec.encode(&gf, &msg).map_err(|e| e.to_string())?
    } else {
        let basis = build_basis(&ctx, &polynomial_basis(&ctx)).map_err(|e| e.to_string())?;
        let params = CodeParams::new(m, args.n, args.k).map_err(|e| e.to_string())?;
        let codec = Codec::new(&ctx, &basis, params).map_err(|e| e.to_string())?;
        codec.encode(&gf, &msg).map_err(|e| e.to_string())?
    };

    let mut out = Vec::new();
    io::write_codeword(
        &mut out,
        FileHeader {
            m,
            n: args.n,
            k: args.k,
        },
        &cw,
    )
    .map_err(|e| e.to_string())?;
    fs::write(&args.output, out).map_err(|e| format!("{}: {}", args.output.display(), e))?;
    println!(
        "encoded ({}, {}) over GF(2^{}): {} parity + {} message symbols",
        args.n,
        args.k,
        m,
        args.n - args.k,
        args.k
    );
    Ok(0)
}

fn cmd_corrupt(args: CorruptArgs) -> Result<i32, String> {
    let bytes = fs::read(&args.input).map_err(|e| format!("{}: {}", args.input.display(), e))?;
    let (header, mut symbols) =
        io::read_codeword(&mut bytes.as_slice()).map_err(|e| e.to_string())?;
    let eps = header.n - header.k;
    let positions: Vec<usize> = if args.message_only {
        (eps..header.n).collect()
    } else {
        (0..header.n).collect()
    };
    if args.errors > positions.len() {
        return Err(format!(
            "cannot place {} errors in {} positions",
            args.errors,
            positions.len()
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let mut picks = positions;
    picks.shuffle(&mut rng);
    let size = 1u16 << header.m;
    for &pos in picks.iter().take(args.errors) {
        let e = rng.gen_range(1..size);
        symbols[pos] = FieldElement(symbols[pos].0 ^ e);
    }
    let mut out = Vec::new();
    io::write_codeword(&mut out, header, &symbols).map_err(|e| e.to_string())?;
    fs::write(&args.output, out).map_err(|e| format!("{}: {}", args.output.display(), e))?;
    println!("injected {} errors (seed {})", args.errors, args.seed);
    Ok(0)
}

fn cmd_decode(args: DecodeArgs) -> Result<i32, String> {
    let bytes = fs::read(&args.input).map_err(|e| format!("{}: {}", args.input.display(), e))?;
    let (header, received) = io::read_codeword(&mut bytes.as_slice()).map_err(|e| e.to_string())?;
    let ctx = field_for(header.m)?;
    let ops = OpCounter::new();
    let gf = Field::new(&ctx, &ops);

    let outcome = match args.solver {
        SolverArg::Ribm => {
            let params =
                ClassicCodeParams::new(header.m, header.n, header.k).map_err(|e| e.to_string())?;
            let codec = ClassicCodec::new(&ctx, params).map_err(|e| e.to_string())?;
            codec.decode(&gf, &received).map_err(|e| e.to_string())?.0
        }
        fft_solver => {
            let basis = build_basis(&ctx, &polynomial_basis(&ctx)).map_err(|e| e.to_string())?;
            let params =
                CodeParams::new(header.m, header.n, header.k).map_err(|e| e.to_string())?;
            let codec = Codec::new(&ctx, &basis, params).map_err(|e| e.to_string())?;
            let solver = if fft_solver == SolverArg::Fma {
                Solver::Fma
            } else {
                Solver::Fdma
            };
            codec
                .decode_with(&gf, &received, solver, args.strict)
                .map_err(|e| e.to_string())?
                .0
        }
    };

    match outcome {
        DecodeOutcome::Corrected { codeword, errors } => {
            let mut out = Vec::new();
            io::write_codeword(&mut out, header, &codeword).map_err(|e| e.to_string())?;
            fs::write(&args.output, out)
                .map_err(|e| format!("{}: {}", args.output.display(), e))?;
            println!("corrected {} symbol error(s)", errors.len());
            Ok(0)
        }
        DecodeOutcome::Uncorrectable(reason) => {
            eprintln!("uncorrectable: {:?}", reason);
            Ok(2)
        }
    }
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct JsonStage {
    name: &'static str,
    mul: u64,
    add: u64,
    div: u64,
    reference: Option<(u64, u64, u64)>,
}

#[derive(Serialize)]
struct JsonReport {
    schema_version: u32,
    code: (usize, usize),
    field_degree: u32,
    solver: &'static str,
    trials: usize,
    error_weight: usize,
    counts_varied: bool,
    stages: Vec<JsonStage>,
    total: (u64, u64, u64),
    reference_total: Option<(u64, u64, u64)>,
    wall_time_ms: f64,
    notes: Vec<&'static str>,
}

fn parse_code(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("--code wants \"n,k\", got {:?}", s));
    }
    let n = parts[0].trim().parse().map_err(|_| "bad n".to_string())?;
    let k = parts[1].trim().parse().map_err(|_| "bad k".to_string())?;
    Ok((n, k))
}

struct BenchRun {
    traces: Vec<StageTrace>,
    weight: usize,
    wall: f64,
}

fn bench_fft(
    ctx: &FieldContext,
    basis: &BasisContext,
    n: usize,
    k: usize,
    solver: Solver,
    trials: usize,
    seed: u64,
) -> Result<BenchRun, String> {
    let params = CodeParams::new(ctx.m(), n, k).map_err(|e| e.to_string())?;
    let codec = Codec::new(ctx, basis, params).map_err(|e| e.to_string())?;
    let t = codec.params().t;
    let eps = codec.params().eps;
    let size = 1u16 << ctx.m();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut traces = Vec::with_capacity(trials);
    let positions: Vec<usize> = (eps..n).collect();
    let start = Instant::now();
    for _ in 0..trials {
        let msg: Vec<FieldElement> = (0..k)
            .map(|_| FieldElement(rng.gen_range(0..size)))
            .collect();
        let ops = OpCounter::new();
        let gf = Field::new(ctx, &ops);
        let cw = codec.encode(&gf, &msg).map_err(|e| e.to_string())?;
        let mut r = cw.clone();
        let mut picks = positions.clone();
        picks.shuffle(&mut rng);
        for &pos in picks.iter().take(t) {
            r[pos] = FieldElement(r[pos].0 ^ rng.gen_range(1..size));
        }
        let (out, trace) = codec.decode(&gf, &r, solver).map_err(|e| e.to_string())?;
        match out {
            DecodeOutcome::Corrected { codeword, .. } if codeword == cw => {}
            _ => return Err("bench trial failed to decode".into()),
        }
        traces.push(trace);
    }
    Ok(BenchRun {
        traces,
        weight: t,
        wall: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn bench_ribm(
    ctx: &FieldContext,
    n: usize,
    k: usize,
    trials: usize,
    seed: u64,
) -> Result<BenchRun, String> {
    let params = ClassicCodeParams::new(ctx.m(), n, k).map_err(|e| e.to_string())?;
    let codec = ClassicCodec::new(ctx, params).map_err(|e| e.to_string())?;
    let t = codec.params().t;
    let size = 1u16 << ctx.m();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut traces = Vec::with_capacity(trials);
    let positions: Vec<usize> = (2 * t..n).collect();
    let start = Instant::now();
    for _ in 0..trials {
        let msg: Vec<FieldElement> = (0..k)
            .map(|_| FieldElement(rng.gen_range(0..size)))
            .collect();
        let ops = OpCounter::new();
        let gf = Field::new(ctx, &ops);
        let cw = codec.encode(&gf, &msg).map_err(|e| e.to_string())?;
        let mut r = cw.clone();
        let mut picks = positions.clone();
        picks.shuffle(&mut rng);
        for &pos in picks.iter().take(t) {
            r[pos] = FieldElement(r[pos].0 ^ rng.gen_range(1..size));
        }
        let (out, trace) = codec.decode(&gf, &r).map_err(|e| e.to_string())?;
        match out {
            DecodeOutcome::Corrected { codeword, .. } if codeword == cw => {}
            _ => return Err("bench trial failed to decode".into()),
        }
        traces.push(trace);
    }
    Ok(BenchRun {
        traces,
        weight: t,
        wall: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn cmd_bench(args: BenchArgs) -> Result<i32, String> {
    let (n, k) = parse_code(&args.code)?;
    if args.trials == 0 {
        return Err("--trials must be positive".into());
    }
    let pow2 = n.is_power_of_two();
    // the conventional decoder runs the matching classical construction
    let (bn, bk) = if args.solver == SolverArg::Ribm && pow2 {
        (n - 1, k - 1)
    } else {
        (n, k)
    };
    let m = smallest_degree(bn.max(n));
    let ctx = field_for(m)?;

    let run = match args.solver {
        SolverArg::Ribm => bench_ribm(&ctx, bn, bk, args.trials, args.seed)?,
        s => {
            let basis = build_basis(&ctx, &polynomial_basis(&ctx)).map_err(|e| e.to_string())?;
            let solver = if s == SolverArg::Fma {
                Solver::Fma
            } else {
                Solver::Fdma
            };
            bench_fft(&ctx, &basis, n, k, solver, args.trials, args.seed)?
        }
    };

    let stats = collect_stats(&run.traces);
    let reference = reference_for(args.solver.as_str(), n, k);
    let mode = stats.mode;
    let total = mode.total();

    if args.format == "json" {
        let stages = STAGE_NAMES
            .iter()
            .zip(mode.stages())
            .enumerate()
            .map(|(i, (name, s))| JsonStage {
                name,
                mul: s.mul,
                add: s.add,
                div: s.div,
                reference: reference.map(|r| r.stages[i]),
            })
            .collect();
        let report = JsonReport {
            schema_version: 1,
            code: (bn, bk),
            field_degree: ctx.m(),
            solver: args.solver.as_str(),
            trials: args.trials,
            error_weight: run.weight,
            counts_varied: stats.varied,
            stages,
            total: (total.mul, total.add, total.div),
            reference_total: reference.map(|r| r.total),
            wall_time_ms: run.wall,
            notes: COUNTING_NOTES.to_vec(),
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
        );
        return Ok(0);
    }

    println!(
        "({}, {}) over GF(2^{}), solver {}, {} trials at weight {}",
        bn,
        bk,
        ctx.m(),
        args.solver.as_str(),
        args.trials,
        run.weight
    );
    if stats.varied {
        println!(
            "note: per-stage counts varied across trials; showing the mode \
             (total mul spread {}..{})",
            stats.min_total.mul, stats.max_total.mul
        );
    } else {
        println!("per-stage counts identical across all trials");
    }
    println!(
        "{:<18} {:>10} {:>10} {:>6}   {:>10} {:>10} {:>6}",
        "Component", "Mul.", "Add.", "Div.", "ref Mul.", "ref Add.", "ref Div."
    );
    for (i, (name, s)) in STAGE_NAMES.iter().zip(mode.stages()).enumerate() {
        match reference {
            Some(r) => {
                let (rm, ra, rd) = r.stages[i];
                println!(
                    "{:<18} {:>10} {:>10} {:>6}   {:>10} {:>10} {:>6}",
                    name, s.mul, s.add, s.div, rm, ra, rd
                );
            }
            None => println!(
                "{:<18} {:>10} {:>10} {:>6}   {:>10} {:>10} {:>6}",
                name, s.mul, s.add, s.div, "-", "-", "-"
            ),
        }
    }
    match reference {
        Some(r) => println!(
            "{:<18} {:>10} {:>10} {:>6}   {:>10} {:>10} {:>6}",
            "Total", total.mul, total.add, total.div, r.total.0, r.total.1, r.total.2
        ),
        None => println!(
            "{:<18} {:>10} {:>10} {:>6}",
            "Total", total.mul, total.add, total.div
        ),
    }
    println!("wall time: {:.2} ms for {} decodes", run.wall, args.trials);
    println!("counting conventions:");
    for note in COUNTING_NOTES {
        println!("  - {}", note);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

fn cmd_selftest() -> Result<i32, String> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, name);
        if !ok {
            failures += 1;
        }
    };

    let ctx = field_for(8)?;
    let basis = build_basis(&ctx, &polynomial_basis(&ctx)).map_err(|e| e.to_string())?;
    let ops = OpCounter::new();
    let gf = Field::new(&ctx, &ops);
    let mut rng = ChaCha12Rng::seed_from_u64(0x5E1F);

    // field axioms on a sample
    let mut ok = true;
    for _ in 0..2_000 {
        let a = FieldElement(rng.gen_range(0..256));
        let b = FieldElement(rng.gen_range(0..256));
        let c = FieldElement(rng.gen_range(0..256));
        if gf.mul(a, gf.add(b, c)) != gf.add(gf.mul(a, b), gf.mul(a, c)) {
            ok = false;
        }
    }
    check("field distributivity (sampled)", ok);

    // transform round trip and structural counts
    let mut ok = true;
    for tau in 0..=8usize {
        let data: Vec<FieldElement> = (0..1usize << tau)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let beta = FieldElement(rng.gen_range(0..256));
        let before = ops.snapshot();
        let mut work = data.clone();
        rsfc::transforms::fft_in_place(&gf, &basis, &mut work, beta);
        let d = ops.snapshot().delta(before);
        if d.mul != (tau as u64) * (1u64 << tau) / 2 || d.add != (tau as u64) * (1u64 << tau) {
            ok = false;
        }
        rsfc::transforms::ifft_in_place(&gf, &basis, &mut work, beta);
        if work != data {
            ok = false;
        }
    }
    check("transform round trip + structural counts", ok);

    // solver agreement at 16 constraints
    let mut ok = true;
    for _ in 0..50 {
        let u: Vec<FieldElement> = (0..16)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let fd = rsfc::keysolver::fdma_solve(&gf, &basis, &u);
        let fm = rsfc::keysolver::fma_solve(&gf, &basis, &u);
        if fd.rank != fm.rank
            || fd.lambda.padded(17) != fm.lambda.padded(17)
            || fd.z.padded(17) != fm.z.padded(17)
        {
            ok = false;
        }
    }
    check("solver agreement (fdma vs fma)", ok);

    // decode round trips on both paths
    for (n, k) in [(256usize, 224usize), (255, 223)] {
        let codec = Codec::new(
            &ctx,
            &basis,
            CodeParams::new(8, n, k).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let t = codec.params().t;
        let mut ok = true;
        for _ in 0..25 {
            let msg: Vec<FieldElement> = (0..k)
                .map(|_| FieldElement(rng.gen_range(0..256)))
                .collect();
            let cw = codec.encode(&gf, &msg).map_err(|e| e.to_string())?;
            let mut r = cw.clone();
            let mut picks: Vec<usize> = (0..n).collect();
            picks.shuffle(&mut rng);
            for &pos in picks.iter().take(t) {
                r[pos] = FieldElement(r[pos].0 ^ rng.gen_range(1..256));
            }
            let (out, _) = codec
                .decode(&gf, &r, Solver::Fdma)
                .map_err(|e| e.to_string())?;
            match out {
                DecodeOutcome::Corrected { codeword, .. } if codeword == cw => {}
                _ => ok = false,
            }
        }
        check(&format!("decode round trip ({}, {})", n, k), ok);
    }

    // baseline agreement
    let classic = ClassicCodec::new(
        &ctx,
        ClassicCodeParams::new(8, 255, 223).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let mut ok = true;
    for _ in 0..25 {
        let msg: Vec<FieldElement> = (0..223)
            .map(|_| FieldElement(rng.gen_range(0..256)))
            .collect();
        let cw = classic.encode(&gf, &msg).map_err(|e| e.to_string())?;
        let mut r = cw.clone();
        let mut picks: Vec<usize> = (0..255).collect();
        picks.shuffle(&mut rng);
        for &pos in picks.iter().take(16) {
            r[pos] = FieldElement(r[pos].0 ^ rng.gen_range(1..256));
        }
        let (out, _) = classic.decode(&gf, &r).map_err(|e| e.to_string())?;
        match out {
            DecodeOutcome::Corrected { codeword, .. } if codeword == cw => {}
            _ => ok = false,
        }
    }
    check("conventional baseline round trip", ok);

    if failures == 0 {
        println!("selftest: all checks passed");
        Ok(0)
    } else {
        println!("selftest: {} check(s) failed", failures);
        Ok(1)
    }
}
