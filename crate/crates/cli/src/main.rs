//! `latcover`: verify, combine, search and draw covering certificates.
//!
//! Exit codes: `verify` returns 0 when verified, 1 when falsified and 2 on
//! unreadable input; `union` returns 1 if any certificate fails; `search`
//! returns 0 found, 3 exhausted, 4 budget exceeded, 5 infeasible by density.

mod output;
mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use lattice_cover::bounds::{density_verdict, threshold_scan};
use lattice_cover::certificate::{self, builtin, target_from_interval, CoveringCertificate, CATALOG};
use lattice_cover::search::{search_certificate, SearchOutcome, SearchParams, DEFAULT_NODE_BUDGET};
use lattice_cover::verifier::{strict_check, verify};
use lattice_cover::{interval_union, Rational, SqrtRational};

use render::{render_svg, RenderOptions};

#[derive(Parser)]
#[command(
    name = "latcover",
    version,
    about = "Unit-disk coverings of dilated integer lattices"
)]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a certificate and report its covered interval.
    Verify {
        /// Certificate file, or `builtin:NAME`.
        cert: String,
        /// Also require congruent clusters, disjointness and a transitive symmetry.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Union of the intervals covered by several certificates.
    Union {
        /// Certificate files, or `builtin:NAME`.
        certs: Vec<String>,
        /// Include the whole built-in catalog.
        #[arg(long)]
        catalog: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for a certificate covering a value or interval of d.
    Search(SearchArgs),
    /// Density-based uncoverability verdicts.
    Bounds {
        /// A single rational d.
        #[arg(long, conflicts_with = "scan")]
        d: Option<Rational>,
        /// `LO HI STEPS`: rational grid of STEPS values from LO to HI.
        #[arg(long, num_args = 3, value_names = ["LO", "HI", "STEPS"])]
        scan: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Draw a certificate dilated by d as SVG.
    Render {
        /// Certificate file, or `builtin:NAME`.
        cert: String,
        /// Rational d, or `sqrt(p/q)` (rounded down to a multiple of 1/1000).
        #[arg(long)]
        d: SqrtRational,
        /// Lattice points are drawn for coordinates in [-window, window].
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_points: bool,
        #[arg(long)]
        no_disks: bool,
        #[arg(long)]
        no_centers: bool,
        #[arg(long)]
        no_domain: bool,
    },
    /// List or print the built-in certificates.
    Builtin {
        #[command(subcommand)]
        action: BuiltinAction,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// A single d, rational or `sqrt(p/q)`.
    #[arg(long, conflicts_with = "interval", required_unless_present = "interval")]
    d: Option<SqrtRational>,
    /// `LO,HI`, each rational or `sqrt(p/q)`.
    #[arg(long)]
    interval: Option<String>,
    #[arg(long, default_value_t = certificate::DEFAULT_MAX_INDEX)]
    max_index: u64,
    #[arg(long, default_value_t = certificate::DEFAULT_MAX_ORBITS)]
    max_orbits: usize,
    /// Placement attempts allowed per lattice.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Wall-clock limit in seconds (results near the limit are not reproducible).
    #[arg(long)]
    time_limit: Option<u64>,
    /// Where to write a found certificate (stdout when absent).
    #[arg(long, short)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum BuiltinAction {
    List,
    Emit {
        name: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Verify { cert, strict, json } => cmd_verify(&cert, strict, json),
        Command::Union { certs, catalog, json } => cmd_union(&certs, catalog, json),
        Command::Search(args) => cmd_search(args),
        Command::Bounds { d, scan, json } => cmd_bounds(d, scan, json),
        Command::Render {
            cert,
            d,
            window,
            out,
            no_points,
            no_disks,
            no_centers,
            no_domain,
        } => {
            let opts = RenderOptions {
                window,
                points: !no_points,
                disks: !no_disks,
                centers: !no_centers,
                domain: !no_domain,
            };
            cmd_render(&cert, &d, &opts, out.as_deref())
        }
        Command::Builtin { action } => cmd_builtin(action),
    }
}

fn load(source: &str) -> Result<CoveringCertificate> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let text = fs::read_to_string(source).with_context(|| format!("cannot read `{source}`"))?;
    certificate::parse(&text).with_context(|| format!("cannot parse `{source}`"))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write `{}`", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(source: &str, strict: bool, json: bool) -> Result<u8> {
    let cert = match load(source) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(2);
        }
    };
    let report = verify(&cert);
    let strict_report = strict.then(|| strict_check(&cert));
    if json {
        let value = serde_json::json!({ "report": report, "strict": strict_report });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print!("{}", output::verification(&report));
        if let Some(s) = &strict_report {
            print!("{}", output::strict(s));
        }
    }
    let ok = report.is_verified() && strict_report.as_ref().is_none_or(|s| s.passed());
    Ok(if ok { 0 } else { 1 })
}

fn cmd_union(specs: &[String], with_catalog: bool, json: bool) -> Result<u8> {
    let mut certs = Vec::new();
    if with_catalog {
        certs.extend(
            CATALOG
                .iter()
                .map(|(id, _)| (format!("builtin:{id}"), builtin(id).expect("catalog entry"))),
        );
    }
    for s in specs {
        certs.push((s.clone(), load(s)?));
    }
    if certs.is_empty() {
        bail!("no certificates given");
    }
    let mut intervals = Vec::new();
    for (source, cert) in &certs {
        match verify(cert).interval {
            Some(iv) => intervals.push((source.clone(), cert.name().to_string(), iv)),
            None => {
                eprintln!("error: `{}` ({source}) does not verify", cert.name());
                return Ok(1);
            }
        }
    }
    let union = interval_union(&intervals.iter().map(|(_, _, iv)| iv.clone()).collect::<Vec<_>>());
    if json {
        let inputs: Vec<_> = intervals
            .iter()
            .map(|(source, name, iv)| serde_json::json!({ "source": source, "name": name, "interval": iv }))
            .collect();
        let value = serde_json::json!({ "certificates": inputs, "union": union });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print!("{}", output::union(&intervals, &union));
    }
    Ok(0)
}

fn parse_interval(text: &str) -> Result<(SqrtRational, SqrtRational)> {
    let (lo, hi) = text.split_once(',').context("interval must be `LO,HI`")?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn cmd_search(args: SearchArgs) -> Result<u8> {
    let (lo, hi) = match (&args.d, &args.interval) {
        (Some(d), _) => (d.clone(), d.clone()),
        (None, Some(iv)) => parse_interval(iv)?,
        (None, None) => bail!("give --d or --interval"),
    };
    let mut target = target_from_interval(&lo, &hi)?;
    target.max_index = args.max_index;
    target.max_orbits = args.max_orbits;
    if args.budget == 0 {
        bail!("--budget must be positive");
    }
    let params = SearchParams {
        target,
        lattices: None,
        node_budget: args.budget,
        time_budget: args.time_limit.map(Duration::from_secs),
    };
    let outcome = search_certificate(&params);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&outcome)?);
    } else {
        print!("{}", output::search(&params.target, &outcome));
    }
    if let Some(cert) = outcome.certificate() {
        let text = cert.to_text();
        match &args.out {
            Some(p) => write_or_print(Some(p), &text)?,
            None if !args.json => print!("\n{text}"),
            None => {}
        }
    }
    Ok(match outcome {
        SearchOutcome::Found { .. } => 0,
        SearchOutcome::Exhausted { .. } => 3,
        SearchOutcome::BudgetExceeded { .. } => 4,
        SearchOutcome::Infeasible { .. } => 5,
    })
}

fn cmd_bounds(d: Option<Rational>, scan: Option<Vec<String>>, json: bool) -> Result<u8> {
    if let Some(d) = d {
        if !d.is_positive() {
            bail!("d must be positive");
        }
        let v = density_verdict(&d);
        if json {
            println!("{}", serde_json::to_string_pretty(&v)?);
        } else {
            print!("{}", output::bounds(std::slice::from_ref(&v), None));
        }
        return Ok(0);
    }
    let Some(scan) = scan else {
        bail!("give --d or --scan LO HI STEPS")
    };
    let lo: Rational = scan[0].parse()?;
    let hi: Rational = scan[1].parse()?;
    let steps: usize = scan[2].parse().context("STEPS must be a positive integer")?;
    if !lo.is_positive() || lo >= hi || steps == 0 {
        bail!("need 0 < LO < HI and STEPS >= 1");
    }
    let s = threshold_scan(&lo, &hi, steps);
    if json {
        println!("{}", serde_json::to_string_pretty(&s)?);
    } else {
        print!("{}", output::bounds(&s.rows, Some(s.largest_uncoverable.as_ref())));
    }
    Ok(0)
}

fn cmd_render(source: &str, d: &SqrtRational, opts: &RenderOptions, out: Option<&Path>) -> Result<u8> {
    let cert = load(source)?;
    let mut banners = Vec::new();
    let d_rat = match d.as_rational() {
        Some(r) => r,
        None => {
            let r = d.floor_approx(1000).context("d must be finite")?;
            banners.push(format!("d = {} is irrational; drawn at d = {}", d.pretty(), r));
            r
        }
    };
    if !d_rat.is_positive() {
        bail!("d must be positive");
    }
    if opts.window < 0 {
        bail!("window must be nonnegative");
    }
    let report = verify(&cert);
    if !report.interval.as_ref().is_some_and(|iv| iv.contains_rational(&d_rat)) {
        banners.push(format!("not verified: d = {d_rat} is outside the certified interval"));
    }
    let svg = render_svg(&cert, &d_rat, opts, &banners);
    write_or_print(out, &svg)?;
    Ok(0)
}

fn cmd_builtin(action: BuiltinAction) -> Result<u8> {
    match action {
        BuiltinAction::List => {
            for (id, name) in CATALOG {
                let cert = builtin(id).expect("catalog entry");
                let iv = verify(&cert).interval.expect("catalog entries verify");
                println!("{id}  {name:<13} {}", iv.pretty());
            }
        }
        BuiltinAction::Emit { name, out } => {
            let cert = builtin(&name)?;
            write_or_print(out.as_deref(), &cert.to_text())?;
        }
    }
    Ok(0)
}
