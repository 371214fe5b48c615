use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use kl_core::config::RunConfig;
use kl_core::equidist::{self, monodromy_target, parse_target, MomentReport, DEFAULT_BINS};
use kl_core::eulerchar::{census, swan_prediction};
use kl_core::field::FieldSpec;
use kl_core::repweights::{invariant_moments, RepLabel, WeightMultiset};
use kl_core::rootsys::{CartanType, RootSystem};
use kl_core::sums::{kloosterman, table_convolution, table_naive, weil_report, KloostermanSpec, SumTable};
use kl_core::verify::run_all;
use kl_core::wildmono::{self, pgl2_swan_bound};

#[derive(Parser)]
#[command(name = "kl", version, about = "Kloosterman sums, root systems and monodromy checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "KL_THREADS")]
    threads: Option<usize>,
    /// Directory for cached field tables.
    #[arg(long, global = true, env = "KL_CACHE_DIR", default_value = ".kl-cache")]
    cache_dir: PathBuf,
    /// Skip reading and writing field tables on disk.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cap on brute-force multiply-adds.
    #[arg(long, global = true, default_value_t = kl_core::sums::DEFAULT_BUDGET)]
    budget: u128,
    /// Moment tolerance is A / sqrt(q).
    #[arg(long, global = true, default_value_t = equidist::DEFAULT_TOLERANCE_A)]
    tolerance_a: f64,
    /// KS threshold is B / sqrt(q - 1).
    #[arg(long, global = true, default_value_t = equidist::DEFAULT_TOLERANCE_B)]
    tolerance_b: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Naive,
    Conv,
}

#[derive(Args)]
struct SumArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    n: usize,
    /// Integer-encoded coefficients of the linear form, comma separated.
    #[arg(long, value_delimiter = ',')]
    coeffs: Vec<u64>,
    /// Character exponents, comma separated.
    #[arg(long, value_delimiter = ',')]
    chi: Vec<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Describe F_{p^k}.
    Field {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// One Kloosterman sum.
    Sum {
        #[command(flatten)]
        spec: SumArgs,
        /// Integer code of the argument.
        #[arg(long)]
        a: u64,
        #[arg(long)]
        normalized: bool,
    },
    /// All values over F_q^x, indexed by discrete log.
    Table {
        #[command(flatten)]
        spec: SumArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long)]
        normalized: bool,
    },
    /// Weil bound check for a table.
    Weil {
        #[command(flatten)]
        spec: SumArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Kl2 angles against the Sato-Tate law.
    Angles {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Report the Kolmogorov-Smirnov verdict in the exit code.
        #[arg(long)]
        ks: bool,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
    },
    /// Empirical moments against a monodromy group.
    Moments {
        #[command(flatten)]
        spec: SumArgs,
        /// `auto`, or one of Sp<n>, SU<n>, SO<n>, G2.
        #[arg(long, default_value = "auto")]
        target: String,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Mixed moments as a:b pairs, comma separated.
        #[arg(long, value_delimiter = ',')]
        mixed: Vec<String>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Haar moments of a representation.
    MomentsTheory {
        #[arg(long = "type")]
        cartan: Option<String>,
        #[arg(long, default_value = "std")]
        rep: String,
        /// Group from the Kl_n table instead, e.g. G2 or SO7.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 6)]
        kmax: usize,
    },
    /// Root system data.
    Roots {
        #[arg(long = "type")]
        cartan: String,
    },
    /// Euler characteristic census of G and the Swan prediction for its dual.
    Census {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long, default_value = "qm")]
        rep: String,
    },
    /// Simple wild parameter of a dual group at p.
    Wild {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        p: u64,
    },
    /// Run the whole verification suite.
    VerifyAll,
}

struct Ctx {
    cfg: RunConfig,
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    fn field(&self, p: u64, k: u32) -> Result<Arc<FieldSpec>> {
        Ok(self.cfg.field(p, k)?)
    }

    fn spec(&self, a: &SumArgs) -> Result<KloostermanSpec> {
        let f = self.field(a.p, a.k)?;
        let coeffs = if a.coeffs.is_empty() { vec![1; a.n] } else { a.coeffs.clone() };
        let chi = if a.chi.is_empty() { vec![0; a.n] } else { a.chi.clone() };
        if coeffs.len() != a.n || chi.len() != a.n {
            bail!("usage: --coeffs and --chi need exactly n = {} entries", a.n);
        }
        Ok(KloostermanSpec::from_ints(f, &coeffs, &chi)?)
    }

    fn table(&self, spec: &KloostermanSpec, method: Method) -> Result<SumTable> {
        let small = (spec.field.order() as f64).powi(spec.n as i32) <= 1e6;
        Ok(match method {
            Method::Naive => table_naive(spec, self.cfg.budget)?,
            Method::Conv => table_convolution(spec),
            Method::Auto if small => table_naive(spec, self.cfg.budget)?,
            Method::Auto => table_convolution(spec),
        })
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(text.as_bytes())
    }

    fn emit_csv<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().context("flushing csv")?;
        self.write(&bytes)
    }

    fn write(&self, bytes: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(bytes)?;
                Ok(())
            }
        }
    }
}

fn parse_type(s: &str) -> Result<RootSystem> {
    let t: CartanType = s.parse()?;
    Ok(RootSystem::build(t))
}

fn complex_string(re: f64, im: f64) -> String {
    let round = |x: f64| (x * 1e12).round() / 1e12 + 0.0;
    let (re, im) = (round(re), round(im));
    format!("{re:?}{}{:?}i", if im < 0.0 { "-" } else { "+" }, im.abs())
}

#[derive(Serialize)]
struct MomentRow {
    k: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    empirical_re: f64,
    empirical_im: f64,
    theoretical: u128,
    q: u64,
    tolerance: f64,
    pass: bool,
}

impl From<&MomentReport> for MomentRow {
    fn from(m: &MomentReport) -> Self {
        MomentRow {
            k: m.k,
            a: m.mixed.map(|x| x.0),
            b: m.mixed.map(|x| x.1),
            empirical_re: m.empirical_re,
            empirical_im: m.empirical_im,
            theoretical: m.theoretical,
            q: m.q,
            tolerance: m.tolerance,
            pass: m.pass,
        }
    }
}

fn parse_pairs(items: &[String]) -> Result<Vec<(usize, usize)>> {
    items
        .iter()
        .map(|s| {
            let (a, b) = s.split_once(':').with_context(|| format!("usage: mixed moment {s} is not a:b"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

/// Returns whether every verdict in the output passed.
fn run(cmd: Command, ctx: &Ctx) -> Result<bool> {
    match cmd {
        Command::Field { p, k } => {
            let f = ctx.field(p, k)?;
            ctx.emit_json(&json!({
                "p": f.p,
                "k": f.k,
                "q": f.q,
                "modulus": f.modulus,
                "generator": f.to_int(f.generator()),
                "generator_trace": f.trace(f.generator()),
            }))?;
            Ok(true)
        }
        Command::Sum { spec, a, normalized } => {
            let s = ctx.spec(&spec)?;
            let x = s.field.from_int(a)?;
            let mut v = kloosterman(&s, x)?;
            if normalized {
                v /= s.weight_scale();
            }
            ctx.emit_json(&json!({
                "p": spec.p,
                "k": spec.k,
                "n": spec.n,
                "a": a,
                "normalized": normalized,
                "re": v.re,
                "im": v.im,
                "value": complex_string(v.re, v.im),
            }))?;
            Ok(true)
        }
        Command::Table { spec, method, normalized } => {
            let s = ctx.spec(&spec)?;
            let t = ctx.table(&s, method)?.with_normalized(normalized);
            let j = t.to_json();
            match ctx.format {
                Format::Json => ctx.emit_json(&j)?,
                Format::Csv => ctx.emit_csv(&j.values)?,
            }
            Ok(true)
        }
        Command::Weil { spec, method } => {
            let s = ctx.spec(&spec)?;
            let r = weil_report(&ctx.table(&s, method)?);
            ctx.emit_json(&json!({ "q": s.field.q, "n": s.n, "bound": s.n, "max_ratio": r.max_ratio, "pass": r.pass }))?;
            Ok(r.pass)
        }
        Command::Angles { p, k, ks, bins } => {
            let s = KloostermanSpec::classical(ctx.field(p, k)?, 2)?;
            let t = ctx.table(&s, Method::Conv)?;
            let stats = equidist::angle_statistics(&t, bins, ctx.cfg.tolerance_b)?;
            match ctx.format {
                Format::Json => ctx.emit_json(&stats)?,
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Bin {
                        lo: f64,
                        hi: f64,
                        count: u64,
                    }
                    let width = std::f64::consts::PI / bins as f64;
                    let rows: Vec<Bin> = stats
                        .histogram
                        .iter()
                        .enumerate()
                        .map(|(i, &count)| Bin { lo: i as f64 * width, hi: (i + 1) as f64 * width, count })
                        .collect();
                    ctx.emit_csv(&rows)?;
                }
            }
            Ok(!ks || stats.pass)
        }
        Command::Moments { spec, target, kmax, mixed, method } => {
            let s = ctx.spec(&spec)?;
            let target = if target == "auto" { monodromy_target(spec.n, spec.p)? } else { parse_target(&target)? };
            let t = ctx.table(&s, method)?;
            let mut reports = equidist::compare(&t, &target, kmax, ctx.cfg.tolerance_a)?;
            reports.extend(equidist::compare_mixed(&t, &target, &parse_pairs(&mixed)?, ctx.cfg.tolerance_a)?);
            let pass = reports.iter().all(|r| r.pass);
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({
                    "p": spec.p,
                    "k": spec.k,
                    "n": spec.n,
                    "q": s.field.q,
                    "target": target,
                    "tolerance_a": ctx.cfg.tolerance_a,
                    "note": "only the defining representation is tested",
                    "moments": reports,
                    "pass": pass,
                }))?,
                Format::Csv => ctx.emit_csv(&reports.iter().map(MomentRow::from).collect::<Vec<_>>())?,
            }
            Ok(pass)
        }
        Command::MomentsTheory { cartan, rep, target, kmax } => {
            let (label, v) = match (&target, &cartan) {
                (Some(t), _) => {
                    let t = parse_target(t)?;
                    (format!("{} {}", t.label, t.rep), t.representation()?)
                }
                (None, Some(c)) => {
                    let rs = parse_type(c)?;
                    let r: RepLabel = rep.parse()?;
                    (format!("{} {rep}", rs.cartan_type), WeightMultiset::of_label(&rs, r))
                }
                (None, None) => bail!("usage: give --type or --target"),
            };
            let m = invariant_moments(&v, kmax)?;
            match ctx.format {
                Format::Json => ctx.emit_json(&json!({ "representation": label, "dim": v.dim, "moments": m }))?,
                Format::Csv => {
                    #[derive(Serialize)]
                    struct Row {
                        k: usize,
                        moment: u128,
                    }
                    ctx.emit_csv(&m.iter().enumerate().map(|(k, &moment)| Row { k, moment }).collect::<Vec<_>>())?
                }
            }
            Ok(true)
        }
        Command::Roots { cartan } => {
            ctx.emit_json(&parse_type(&cartan)?.report())?;
            Ok(true)
        }
        Command::Census { cartan, rep } => {
            let rs = parse_type(&cartan)?;
            let r: RepLabel = rep.parse()?;
            let report = census(&rs, r)?;
            let dual = rs.dual();
            let swan = swan_prediction(&dual, r).map_err(|e| e.to_string());
            let pass = report.matches_theorem && swan.is_ok();
            let mut v = serde_json::to_value(&report)?;
            v["dual_type"] = Value::from(dual.cartan_type.to_string());
            v["swan_of_dual"] = match swan {
                Ok(s) => Value::from(s),
                Err(e) => json!({ "error": e }),
            };
            ctx.emit_json(&v)?;
            Ok(pass)
        }
        Command::Wild { cartan, p } => {
            let rs = parse_type(&cartan)?;
            let w = wildmono::report(&rs, p)?;
            let bound = pgl2_swan_bound(&rs, p)?;
            let pass = w.cox_stable
                && w.roots_nontrivial
                && w.swan_equals_rank
                && w.swan_all_factors_agree
                && w.cox_tame_no_invariants;
            let mut v = serde_json::to_value(&w)?;
            v["pgl2_bound"] = serde_json::to_value(&bound)?;
            ctx.emit_json(&v)?;
            Ok(pass)
        }
        Command::VerifyAll => {
            let outcome = run_all(&ctx.cfg);
            for (id, t) in &outcome.timings {
                eprintln!("check {id}: {t:.2?}");
            }
            ctx.emit_json(&outcome.report)?;
            Ok(outcome.report.all_pass)
        }
    }
}

/// Bad input exits 2 like a usage error; everything else is a failed check.
fn exit_code(e: &anyhow::Error) -> u8 {
    use kl_core::KlError::*;
    match e.downcast_ref::<kl_core::KlError>() {
        Some(
            NotPrime(_) | TableTooLarge { .. } | ZeroDegree | ZeroArgument | InvalidSpec(_) | BudgetExceeded { .. }
            | InvalidType(_) | UnsupportedRep(_) | WrongType(_) | BadPrime { .. } | Unlisted(_),
        ) => 2,
        Some(_) => 1,
        None if e.is::<std::num::ParseIntError>() || e.to_string().starts_with("usage:") => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    if let Some(n) = g.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({ "error": e.to_string() }));
            return ExitCode::from(2);
        }
    }
    let cfg = RunConfig {
        cache_dir: if g.no_cache { None } else { Some(g.cache_dir) },
        budget: g.budget,
        tolerance_a: g.tolerance_a,
        tolerance_b: g.tolerance_b,
        threads: g.threads,
        seed: g.seed,
    };
    let ctx = Ctx { cfg, format: g.format, out: g.out };
    match run(cli.command, &ctx) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::from(exit_code(&e))
        }
    }
}
