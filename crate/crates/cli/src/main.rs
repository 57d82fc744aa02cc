use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use twogroups::cache::{compute_record, Cache, CacheRecord};
use twogroups::census::{
    abelian_invariants, census_from_profile, center, commutator_subgroup, frattini_pgroup,
    is_nilpotent, order_profile,
};
use twogroups::group;
use twogroups::verify::{self, Campaign, CampaignReport, SpectrumCaps};
use twogroups::{AlphaValue, Descriptor, Group};

#[derive(Parser)]
#[command(
    name = "twogroups",
    version,
    about = "Cyclic-subgroup ratios of finite 2-groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// JSON-lines cache of computed records.
    #[arg(long, global = true, env = "TWOGROUPS_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Order, |L1| and alpha of each group.
    Alpha {
        #[arg(required = true)]
        descriptors: Vec<String>,
    },
    /// Element orders and cyclic subgroups by order.
    Census { descriptor: String },
    /// Class membership and the commutator/Frattini structure.
    Structure { descriptor: String },
    /// Run a verification campaign ("all" runs every one).
    Verify {
        campaign: String,
        /// Order bound (campaign-specific default).
        #[arg(long)]
        cap: Option<u64>,
    },
    #[command(subcommand)]
    Scan(Scan),
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Subcommand)]
enum Scan {
    /// Distinct ratios over the scanned families and those near 3/4.
    Spectrum {
        /// Neighbourhood of 3/4 to report, as p/q.
        #[arg(long, default_value = "1/100")]
        eps: String,
        #[arg(long, default_value_t = 1 << 12)]
        abelian_cap: u64,
        #[arg(long, default_value_t = 1 << 8)]
        family_cap: u64,
    },
    /// Look for two abelian groups of order p^n with equal |L1|.
    #[command(alias = "conjecture25")]
    Injectivity {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum CacheCommand {
    /// Recompute a sample of stored records and report disagreements.
    Revalidate,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let out = Output(cli.format);
    match cli.command {
        Command::Alpha { descriptors } => {
            let mut cache = cli.cache.as_ref().map(Cache::open);
            if let Some(c) = &cache {
                for w in c.warnings() {
                    eprintln!("warning: {w}");
                }
            }
            let mut records = Vec::new();
            for text in &descriptors {
                let d = parse(text)?;
                let r = match cache.as_mut() {
                    Some(c) => c.get_or_compute(&d),
                    None => compute_record(&d),
                }
                .with_context(|| format!("evaluating {text}"))?;
                records.push(r);
            }
            if let Some(c) = &cache {
                for w in c.warnings() {
                    eprintln!("warning: {w}");
                }
            }
            out.alpha(&records)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census { descriptor } => {
            let g = build(&descriptor)?;
            let profile = order_profile(&g)?;
            let census = census_from_profile(&profile)?;
            let rows: Vec<Vec<String>> = profile
                .counts
                .iter()
                .map(|(d, n)| vec![d.to_string(), n.to_string(), census.count(*d).to_string()])
                .collect();
            match out.0 {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "descriptor": parse(&descriptor)?.canonical_string(),
                        "order": g.order(),
                        "elements_by_order": profile.counts,
                        "cyclic_subgroups_by_order": census.counts,
                        "l1": census.l1,
                        "alpha": census.alpha,
                    }))?
                ),
                _ => {
                    out.rows(&["order", "elements", "cyclic_subgroups"], &rows)?;
                    if out.0 == Format::Table {
                        println!("|L1| = {}, alpha = {}", census.l1, census.alpha);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Structure { descriptor } => structure(&out, &descriptor),
        Command::Verify { campaign, cap } => {
            let campaigns: Vec<Campaign> = if campaign == "all" {
                Campaign::ALL.to_vec()
            } else {
                vec![campaign.parse()?]
            };
            let mut reports = Vec::new();
            for c in campaigns {
                reports.push(verify::run_campaign(c, cap)?);
            }
            out.reports(&reports)?;
            Ok(exit_for(&reports))
        }
        Command::Scan(Scan::Injectivity { p, n }) => {
            let report = verify::alpha_injectivity_scan(p, n)?;
            out.reports(std::slice::from_ref(&report))?;
            Ok(exit_for(&[report]))
        }
        Command::Scan(Scan::Spectrum {
            eps,
            abelian_cap,
            family_cap,
        }) => {
            let eps: AlphaValue = eps.parse().map_err(|e| anyhow!("--eps: {e}"))?;
            let records = verify::alpha_spectrum(SpectrumCaps {
                abelian: abelian_cap,
                families: family_cap,
            })?;
            let summary = verify::summarize_spectrum(&records, &eps);
            match out.0 {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
                Format::Csv => {
                    let rows: Vec<Vec<String>> = records
                        .iter()
                        .map(|r| {
                            vec![
                                r.descriptor.clone(),
                                r.order.to_string(),
                                r.alpha.to_string(),
                                r.in_class.to_string(),
                            ]
                        })
                        .collect();
                    out.rows(&["descriptor", "order", "alpha", "in_class"], &rows)?;
                }
                Format::Table => {
                    let rows: Vec<Vec<String>> = summary
                        .distinct
                        .iter()
                        .map(|(a, n)| {
                            vec![a.to_string(), format!("{:.6}", a.to_f64()), n.to_string()]
                        })
                        .collect();
                    out.rows(&["alpha", "approx", "groups"], &rows)?;
                    println!();
                    println!(
                        "{} class members; within {eps} of 3/4:",
                        summary.class_members
                    );
                    for r in &summary.near_three_quarters {
                        println!("  {} (order {}): {}", r.descriptor, r.order, r.alpha);
                    }
                    if summary.near_three_quarters.is_empty() {
                        println!("  none");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cache(CacheCommand::Revalidate) => {
            let path = cli
                .cache
                .ok_or_else(|| anyhow!("no cache given (use --cache or TWOGROUPS_CACHE)"))?;
            let cache = Cache::open(&path);
            for w in cache.warnings() {
                eprintln!("warning: {w}");
            }
            let result = cache.revalidate();
            match out.0 {
                Format::Json => println!("{}", serde_json::to_string_pretty(&result)?),
                _ => {
                    let rows: Vec<Vec<String>> =
                        result.mismatches.iter().map(|m| vec![m.clone()]).collect();
                    if out.0 == Format::Table {
                        println!(
                            "{} stored, {} rechecked, {} mismatched",
                            result.stored,
                            result.checked,
                            result.mismatches.len()
                        );
                    }
                    out.rows(&["mismatch"], &rows)?;
                }
            }
            Ok(if result.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn exit_for(reports: &[CampaignReport]) -> ExitCode {
    if reports.iter().all(CampaignReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse(text: &str) -> anyhow::Result<Descriptor> {
    text.parse::<Descriptor>().map_err(|e| {
        let caret = format!("{}^", " ".repeat(e.offset.min(text.len())));
        anyhow!("cannot parse descriptor: {e}\n  {text}\n  {caret}")
    })
}

fn build(text: &str) -> anyhow::Result<Group> {
    let d = parse(text)?;
    d.build().with_context(|| format!("building {text}"))
}

fn structure(out: &Output, text: &str) -> anyhow::Result<ExitCode> {
    let d = parse(text)?;
    let name = d.canonical_string();
    let g = d.build()?;
    let profile = order_profile(&g)?;
    let census = census_from_profile(&profile)?;
    let nilpotent = is_nilpotent(&g)?;
    let in_class = nilpotent && census.alpha == AlphaValue::three_quarters();
    let derived = commutator_subgroup(&g)?;
    let z = center(&g)?;
    let abelianization = group::quotient(&g, &derived)?;
    let invariants: Vec<String> = abelian_invariants(&abelianization)?
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut fields: Vec<(&str, String)> = vec![
        ("descriptor", name.clone()),
        ("order", g.order().to_string()),
        ("alpha", census.alpha.to_string()),
        ("nilpotent", nilpotent.to_string()),
        ("in_class", in_class.to_string()),
        ("exponent", profile.exponent.to_string()),
        ("involutions", profile.involutions.to_string()),
        ("derived_order", derived.len().to_string()),
        ("center_order", z.len().to_string()),
        ("abelianization", invariants.join(" ; ")),
    ];
    if g.order().is_power_of_two() {
        let phi = frattini_pgroup(&g, 2)?;
        fields.push(("frattini_order", phi.len().to_string()));
        fields.push(("derived_is_frattini", (phi == derived).to_string()));
    }
    let mut reports = Vec::new();
    if in_class {
        reports.push(verify::verify_structure(&g, &name)?);
        if profile.exponent == 4 {
            reports.push(verify::verify_involution_criterion(&g, &name)?);
        }
    }
    match out.0 {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(
                    &serde_json::json!({ "group": map, "checks": reports })
                )?
            );
        }
        _ => {
            let rows: Vec<Vec<String>> = fields
                .into_iter()
                .map(|(k, v)| vec![k.to_string(), v])
                .collect();
            out.rows(&["field", "value"], &rows)?;
            if !reports.is_empty() {
                out.checks(&reports)?;
            }
        }
    }
    Ok(exit_for(&reports))
}

struct Output(Format);

impl Output {
    fn rows(&self, headers: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
        let stdout = io::stdout();
        match self.0 {
            Format::Csv | Format::Json => {
                let mut w = csv::Writer::from_writer(stdout.lock());
                w.write_record(headers)?;
                for r in rows {
                    w.write_record(r)?;
                }
                w.flush()?;
            }
            Format::Table => {
                let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
                for r in rows {
                    for (w, cell) in widths.iter_mut().zip(r) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let mut lock = stdout.lock();
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                };
                writeln!(lock, "{}", line(headers.to_vec()))?;
                for r in rows {
                    writeln!(lock, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
            }
        }
        Ok(())
    }

    fn alpha(&self, records: &[CacheRecord]) -> anyhow::Result<()> {
        if self.0 == Format::Json {
            let values: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "descriptor": r.descriptor,
                        "order": r.order,
                        "l1": r.l1,
                        "alpha": format!("{}/{}", r.alpha_num, r.alpha_den),
                        "nilpotent": r.nilpotent,
                        "in_class": r.in_c,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&values)?);
            return Ok(());
        }
        let rows: Vec<Vec<String>> = records
            .iter()
            .map(|r| {
                vec![
                    r.descriptor.clone(),
                    r.order.to_string(),
                    r.l1.to_string(),
                    format!("{}/{}", r.alpha_num, r.alpha_den),
                    r.nilpotent.to_string(),
                    r.in_c.to_string(),
                ]
            })
            .collect();
        self.rows(
            &[
                "descriptor",
                "order",
                "l1",
                "alpha",
                "nilpotent",
                "in_class",
            ],
            &rows,
        )
    }

    fn checks(&self, reports: &[CampaignReport]) -> anyhow::Result<()> {
        let rows: Vec<Vec<String>> = reports
            .iter()
            .flat_map(|r| {
                r.checks.iter().map(move |c| {
                    vec![
                        r.campaign.clone(),
                        c.name.clone(),
                        c.evaluated.to_string(),
                        c.failed.to_string(),
                    ]
                })
            })
            .collect();
        self.rows(&["campaign", "check", "evaluated", "failed"], &rows)
    }

    fn reports(&self, reports: &[CampaignReport]) -> anyhow::Result<()> {
        match self.0 {
            Format::Json => {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])?
                } else {
                    serde_json::to_string_pretty(reports)?
                };
                println!("{text}");
            }
            Format::Csv => self.checks(reports)?,
            Format::Table => {
                for r in reports {
                    let params: Vec<String> = r
                        .parameters
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    println!(
                        "{} [{}]: {} ({} groups, {} ms)",
                        r.campaign,
                        params.join(" "),
                        if r.passed() { "PASS" } else { "FAIL" },
                        r.groups_examined,
                        r.wall_time_ms
                    );
                }
                println!();
                self.checks(reports)?;
                for r in reports {
                    if !r.members.is_empty() {
                        println!("\n{} class members: {}", r.campaign, r.members.join(", "));
                    }
                    for o in &r.observations {
                        println!("{}: {o}", r.campaign);
                    }
                    for c in &r.counterexamples {
                        println!(
                            "COUNTEREXAMPLE {}: {} [{}] {}",
                            r.campaign, c.descriptor, c.check, c.detail
                        );
                    }
                }
            }
        }
        Ok(())
    }
}
