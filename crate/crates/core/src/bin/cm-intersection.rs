use std::fs::File;
use std::io::{self, BufWriter, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cm_intersection::cm_field::build_cm_field;
use cm_intersection::formulas::{compare, verify_lemmas, ComparisonReport, FieldContext};
use cm_intersection::scan::{record_json, run_scan, scan_fields, summary_json, ScanConfig};
use cm_intersection::verify::{run_verification, OracleBounds};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "cm-intersection", version, about = "Compare both formulas for (CM(K).G1)_l over quartic CM fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan (D, 2A, 2B) and compare both totals for every prime l
    Scan(ScanArgs),
    /// Report on a single field
    Field(FieldArgs),
    /// Run the full property suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 41)]
    d_max: u64,
    #[arg(long, default_value_t = 40)]
    coeff_max: i64,
    #[arg(long, default_value_t = 50)]
    ell_max: u64,
    /// Include fields failing the theorem's assumptions
    #[arg(long)]
    permissive: bool,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write records here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human table as well, even when not attached to a terminal
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long = "D", allow_hyphen_values = true)]
    d: i64,
    #[arg(long, allow_hyphen_values = true)]
    a2: i64,
    #[arg(long, allow_hyphen_values = true)]
    b2: i64,
    #[arg(long)]
    ell: u64,
    /// Print only the JSON record
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 41)]
    d_max: u64,
    #[arg(long, default_value_t = 40)]
    coeff_max: i64,
    #[arg(long, default_value_t = 50)]
    ell_max: u64,
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Field(args) => cmd_field(args),
        Command::Verify(args) => cmd_verify(args),
    };
    ExitCode::from(code)
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn print_table(out: &mut dyn Write, report: &ComparisonReport) -> io::Result<()> {
    let show = |q: &Option<cm_intersection::Rational>| q.map_or("-".to_string(), |q| q.to_string());
    writeln!(
        out,
        "D={} 2A={} 2B={} D~={} l={} {}",
        report.d,
        report.a2,
        report.b2,
        report.dt,
        report.ell,
        if report.in_theorem { "" } else { "(outside theorem)" }
    )?;
    writeln!(out, "{:>6} {:>8} {:>10} {:>8} {:>8} {:>6} {:>6} {}", "delta", "n", "N", "du", "dx", "by", "lv", "eq")?;
    for r in &report.rows {
        writeln!(
            out,
            "{:>6} {:>8} {:>10} {:>8} {:>8} {:>6} {:>6} {}",
            r.delta,
            r.n,
            r.norm,
            r.du,
            r.dx,
            show(&r.by),
            show(&r.lv),
            r.equal
        )?;
    }
    writeln!(
        out,
        "totals: by={} lv={} equal={}",
        show(&report.by_total),
        show(&report.lv_total),
        report.totals_equal
    )
}

fn cmd_scan(args: ScanArgs) -> u8 {
    let config = ScanConfig {
        d_max: args.d_max,
        coeff_max: args.coeff_max,
        ell_max: args.ell_max,
        permissive: args.permissive,
        jobs: args.jobs,
    };
    if let Err(e) = config.validate() {
        return usage(e);
    }
    let contexts = match scan_fields(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    let outcome = match run_scan(&config, &contexts) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return EXIT_IO;
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let table = args.table || (args.out.is_some() && io::stdout().is_terminal());
    let written = (|| -> io::Result<()> {
        for report in &outcome.reports {
            let ctx = contexts
                .iter()
                .find(|c| (c.field().d(), c.field().a2(), c.field().b2()) == (report.d, report.a2, report.b2))
                .expect("report belongs to a scanned field");
            writeln!(sink, "{}", record_json(ctx, report))?;
        }
        writeln!(sink, "{}", summary_json(&outcome.summary))?;
        sink.flush()?;
        if table {
            let mut stdout = io::stdout().lock();
            for report in outcome.reports.iter().filter(|r| !r.rows.is_empty()) {
                print_table(&mut stdout, report)?;
            }
        }
        Ok(())
    })();
    if let Err(e) = written {
        eprintln!("error: write failed: {e}");
        return EXIT_IO;
    }
    for (d, a2, b2, ell, msg) in &outcome.errors {
        eprintln!("evaluation error at D={d} 2A={a2} 2B={b2} l={ell}: {msg}");
    }
    let s = &outcome.summary;
    eprintln!(
        "fields {} (in theorem {}), comparisons {}, equalities {}, failures {}",
        s.fields_found, s.fields_in_theorem, s.comparisons, s.equalities, s.failures
    );
    if s.failures == 0 {
        0
    } else {
        EXIT_FAILURE
    }
}

fn cmd_field(args: FieldArgs) -> u8 {
    if !cm_intersection::arith::is_prime(args.ell) {
        return usage(format!("--ell {} is not prime", args.ell));
    }
    let field = match build_cm_field(args.d, args.a2, args.b2) {
        Ok(f) => f,
        Err(report) => {
            eprintln!("rejected: {report}");
            return EXIT_FAILURE;
        }
    };
    let result = FieldContext::new(field).and_then(|ctx| {
        let report = compare(&ctx, args.ell)?;
        let lemmas = ctx.in_theorem().then(|| verify_lemmas(&ctx)).transpose()?;
        Ok((ctx, report, lemmas))
    });
    let (ctx, report, lemmas) = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    let printed = (|| -> io::Result<()> {
        let mut out = io::stdout().lock();
        if !args.json {
            writeln!(out, "{}", ctx.field())?;
            let a = ctx.assumptions();
            writeln!(
                out,
                "c_K = {}, different = {} (norm {}), d_u fundamental: {}, assumptions {}",
                ctx.field().c_k(),
                a.different.ideal,
                a.different.norm,
                a.du_fundamental,
                if a.passed() { "passed" } else { "failed" }
            )?;
            print_table(&mut out, &report)?;
            if let Some(l) = &lemmas {
                for c in &l.checks {
                    writeln!(out, "  {:<32} {:>5} checked, {} failed", c.name, c.checked, c.failures)?;
                }
            }
        }
        writeln!(out, "{}", record_json(&ctx, &report))
    })();
    if let Err(e) = printed {
        eprintln!("error: write failed: {e}");
        return EXIT_IO;
    }
    let consistent = !report.in_theorem
        || (report.totals_equal && report.rows.iter().all(|r| r.equal) && lemmas.is_some_and(|l| l.passed()));
    if consistent {
        0
    } else {
        EXIT_FAILURE
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let config = ScanConfig {
        d_max: args.d_max,
        coeff_max: args.coeff_max,
        ell_max: args.ell_max,
        permissive: false,
        jobs: args.jobs,
    };
    if let Err(e) = config.validate() {
        return usage(e);
    }
    let report = scan_fields(&config)
        .and_then(|contexts| run_verification(&contexts, &config.ells(), &OracleBounds::default()));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    for p in &report.properties {
        println!(
            "{} {:<32} {:>9} checked {:>4} failed",
            if p.passed() { "PASS" } else { "FAIL" },
            p.name,
            p.checked,
            p.failures
        );
        if let Some(w) = &p.witness {
            println!("     first counterexample: {w}");
        }
    }
    if report.passed() {
        0
    } else {
        EXIT_FAILURE
    }
}
