//! Command-line interface to the verification library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use e7check::chartab::{self, CharTable};
use e7check::lusztig;
use e7check::nilmodel::{self, ModelParams};
use e7check::pipeline::{self, PipelineConfig};
use e7check::rootdata::{self, CartanType, RootSystem, TorusPoint};
use e7check::weyl::{self, ConjClassSet, SubsystemDescriptor, WeylStore};
use e7check::{Error, Result};

#[derive(Parser)]
#[command(name = "e7check", version, about = "Exact checks for the E7 Schur-index computation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TorusArgs {
    /// Root system type (e.g. E7, D6, A1, D6xA1)
    #[arg(long = "type", default_value = "E7")]
    ctype: String,
    /// Comma-separated torus exponents on the simple roots
    #[arg(long, default_value = "1,0,0,1,0,1,0")]
    torus: String,
    /// Modulus of the exponent group (0 = formal)
    #[arg(long = "mod", default_value_t = 2)]
    modulus: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the indexed positive-root list
    Roots {
        #[arg(long = "type", default_value = "E7")]
        ctype: String,
        #[arg(long)]
        json: bool,
    },
    /// Fixed subsystem of a semisimple torus element
    Subsystem(TorusArgs),
    /// Compare the subsystem normalizer in W with the subsystem Weyl group
    NormalizerCheck(TorusArgs),
    /// Smith normal form of the subsystem kernel in the adjoint torus
    CenterSnf(TorusArgs),
    /// Character table of a reflection group
    Chartab {
        #[arg(long = "type", default_value = "E7")]
        ctype: String,
        /// Recompute even if a cached table exists
        #[arg(long)]
        recompute: bool,
        /// Cache directory (also via the E7CHECK_CACHE environment variable)
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Restriction multiplicities from an ambient group to a subsystem group
    Induct {
        #[arg(long, default_value = "E7")]
        amb: String,
        #[arg(long, default_value = "D6xA1")]
        sub: String,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// List the families of a reflection group with a-values
    Families {
        #[arg(long = "type", default_value = "D6xA1")]
        ctype: String,
        #[arg(long)]
        json: bool,
    },
    /// Fourier matrix of the family containing a given row label
    Fourier {
        /// Row label, e.g. "[21,3]x1" (a trailing "x1" means the trivial
        /// second factor)
        #[arg(long)]
        family_of: String,
        #[arg(long)]
        json: bool,
    },
    /// Model-group suite: inductions, indicators, squaring lemmas
    Nilmodel {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        f: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Comma-separated nonzero field-element indices (default all 1)
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the full verification pipeline and emit the report
    VerifyPaper {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        /// Skippable stages: e7table, nilmodel-large
        #[arg(long)]
        skip: Vec<String>,
        /// Comma-separated prime-power samples for the parity check
        #[arg(long, default_value = "25,169")]
        q: String,
    },
}

fn parse_ints<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| Error::CheckFailed(format!("cannot parse {what} entry {t:?}")))
        })
        .collect()
}

fn build(ctype: &str) -> Result<RootSystem> {
    let ct = match ctype.split_once('x') {
        Some((a, b)) => CartanType::builtin(a)?.direct_sum(&CartanType::builtin(b)?)?,
        None => CartanType::builtin(ctype)?,
    };
    rootdata::build_root_system(ct)
}

fn subsystem_of(args: &TorusArgs) -> Result<(RootSystem, SubsystemDescriptor)> {
    let rs = build(&args.ctype)?;
    let exps = parse_ints::<i64>(&args.torus, "torus")?;
    if exps.len() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: exps.len(),
        });
    }
    let t = TorusPoint::new(args.modulus, exps);
    let sub = weyl::fixed_subsystem(&rs, &t)?;
    Ok((rs, sub))
}

/// Build store, classes and labeled table for a builtin or product type.
fn full_table(ctype: &str) -> Result<(WeylStore, ConjClassSet, CharTable)> {
    match ctype.split_once('x') {
        Some((a, b)) => {
            let (_, _, ta) = full_table(a)?;
            let (_, _, tb) = full_table(b)?;
            let rs = build(ctype)?;
            let store = weyl::enumerate_group(&rs, weyl::DEFAULT_BUDGET)?;
            let classes = weyl::conjugacy_classes(&store);
            let table = chartab::product_table(&ta, &tb, &store, &classes)?;
            Ok((store, classes, table))
        }
        None => {
            let rs = build(ctype)?;
            let store = weyl::enumerate_group(&rs, weyl::DEFAULT_BUDGET)?;
            let classes = weyl::conjugacy_classes(&store);
            let mut table = chartab::char_table_dixon(&store, &classes, ctype)?;
            chartab::attach_labels(&mut table, &store, &classes)?;
            Ok((store, classes, table))
        }
    }
}

fn cache_path(cache_dir: &Option<PathBuf>, name: &str) -> Option<PathBuf> {
    cache_dir
        .clone()
        .or_else(|| std::env::var_os(pipeline::CACHE_ENV).map(PathBuf::from))
        .map(|d| d.join(format!("chartab_{name}.txt")))
}

fn e7_table_cached(
    cache_dir: &Option<PathBuf>,
    recompute: bool,
) -> Result<(WeylStore, ConjClassSet, CharTable)> {
    let rs = build("E7")?;
    let store = weyl::enumerate_group(&rs, weyl::DEFAULT_BUDGET)?;
    let classes = weyl::conjugacy_classes(&store);
    let path = cache_path(cache_dir, "E7");
    if !recompute {
        if let Some(p) = &path {
            if p.exists() {
                let cached = chartab::load_table_raw(p)?;
                let mut table = chartab::upgrade_cached(&cached, &store, &classes)?;
                chartab::attach_labels(&mut table, &store, &classes)?;
                return Ok((store, classes, table));
            }
        }
    }
    let mut table = chartab::char_table_dixon(&store, &classes, "E7")?;
    chartab::attach_labels(&mut table, &store, &classes)?;
    if let Some(p) = &path {
        chartab::save_table(&table, p)?;
    }
    Ok((store, classes, table))
}

fn print_table(table: &CharTable, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(table)?);
        return Ok(());
    }
    println!(
        "table {}  order {}  classes {}",
        table.name,
        table.order,
        table.num_classes()
    );
    let bs = table.b_invariants.as_ref();
    for (row, label) in table.labels.iter().enumerate() {
        match bs {
            Some(bs) => println!("  {:<16} degree {:>5}  b {:>2}", label.to_string(), table.degree(row), bs[row]),
            None => println!("  {:<16} degree {:>5}", label.to_string(), table.degree(row)),
        }
    }
    Ok(())
}

/// A trailing "x1" names the trivial character of the second factor, whose
/// canonical partition label is "2".
fn normalize_product_label(label: &str) -> String {
    match label.strip_suffix("x1") {
        Some(head) => format!("{head}x2"),
        None => label.to_string(),
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Roots { ctype, json } => {
            let rs = build(&ctype)?;
            if json {
                let arr: Vec<_> = rs
                    .positive_roots
                    .iter()
                    .map(|r| json!({ "index": r.index, "coeffs": r.coeffs, "height": r.height }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&arr)?);
            } else {
                print!("{}", rootdata::format_roots(&rs));
            }
            Ok(true)
        }
        Command::Subsystem(args) => {
            let json = args.json;
            let (_, sub) = subsystem_of(&args)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "simple_roots": sub.simple_roots,
                        "type": sub.ctype.name,
                        "positive_roots": sub.all_roots.len(),
                    }))?
                );
            } else {
                println!("type {}", sub.ctype.name);
                println!(
                    "simple roots {}",
                    sub.simple_roots
                        .iter()
                        .map(|r| format!("a{r}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!("positive roots {}", sub.all_roots.len());
            }
            Ok(true)
        }
        Command::NormalizerCheck(args) => {
            let json = args.json;
            let (rs, sub) = subsystem_of(&args)?;
            let store = weyl::enumerate_group(&rs, weyl::DEFAULT_BUDGET)?;
            let rep = weyl::normalizer_equals_subgroup(&store, &sub)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                println!(
                    "stabilizer order {}  subgroup order {}  index {}  equal: {}",
                    rep.stabilizer_order, rep.subgroup_order, rep.index_in_w, rep.equals_subgroup
                );
            }
            Ok(rep.equals_subgroup)
        }
        Command::CenterSnf(args) => {
            let json = args.json;
            let (rs, sub) = subsystem_of(&args)?;
            let center = weyl::center_kernel_snf(&rs, &sub);
            if json {
                println!("{}", serde_json::to_string_pretty(&center)?);
            } else {
                println!("elementary divisors {:?}", center.divisors);
                println!("free rank {}", center.free_rank);
                for g in &center.generators {
                    println!("generator exponents {:?}", g.exps);
                }
            }
            Ok(true)
        }
        Command::Chartab {
            ctype,
            recompute,
            cache_dir,
            json,
        } => {
            let (_, _, table) = if ctype == "E7" {
                e7_table_cached(&cache_dir, recompute)?
            } else {
                full_table(&ctype)?
            };
            print_table(&table, json)?;
            Ok(true)
        }
        Command::Induct {
            amb,
            sub,
            cache_dir,
            json,
        } => {
            if amb != "E7" || sub != "D6xA1" {
                return Err(Error::CheckFailed(
                    "only the pair --amb E7 --sub D6xA1 is supported".into(),
                ));
            }
            let (amb_store, amb_classes, amb_table) = e7_table_cached(&cache_dir, false)?;
            let (sub_store, sub_classes, sub_table) = full_table(&sub)?;
            let desc = weyl::fixed_subsystem(&amb_store.rs, &TorusPoint::s1())?;
            let fusion =
                weyl::class_fusion(&sub_store, &sub_classes, &desc, &amb_store, &amb_classes)?;
            let mults = chartab::restriction_table(&amb_table, &sub_table, &fusion)?;
            if json {
                let rows: Vec<_> = amb_table
                    .labels
                    .iter()
                    .zip(&mults)
                    .map(|(l, m)| json!({ "row": l.to_string(), "multiplicities": m }))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "columns": sub_table.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                        "rows": rows,
                    }))?
                );
            } else {
                for label in ["512_a", "512_a'"] {
                    let row = amb_table
                        .row_of_label(label)
                        .ok_or_else(|| Error::CheckFailed(format!("row {label} missing")))?;
                    println!("Res({label}):");
                    for (r, &m) in mults[row].iter().enumerate() {
                        if m != 0 {
                            println!("  {:>2} x {}", m, sub_table.labels[r]);
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Families { ctype, json } => {
            let (_, _, table) = full_table(&ctype)?;
            let fams = lusztig::families(&table)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&fams)?);
            } else {
                for (i, fam) in fams.iter().enumerate() {
                    let names: Vec<&str> =
                        fam.members.iter().map(|m| m.name.as_str()).collect();
                    println!("family {:>2}  a {:>2}  members {}", i, fam.a_value, names.join(", "));
                }
            }
            Ok(true)
        }
        Command::Fourier { family_of, json } => {
            let label = normalize_product_label(&family_of);
            let ctype = if label.contains('x') { "D6xA1" } else { "D6" };
            let (_, _, table) = full_table(ctype)?;
            let row = table
                .row_of_label(&label)
                .ok_or_else(|| Error::CheckFailed(format!("label {label} not found")))?;
            let fams = lusztig::families(&table)?;
            let fam = fams
                .iter()
                .find(|f| f.member_of_row(row).is_some())
                .ok_or_else(|| Error::Family("row not in any family".into()))?;
            let m = lusztig::fourier_matrix(fam)?;
            // almost-character difference: the requested row against the
            // special row of the family (or the last Weyl member when the
            // requested row is itself special)
            let special_row = fam.members[fam.special_member].row;
            let partner = if special_row == Some(row) {
                fam.weyl_members
                    .iter()
                    .rev()
                    .filter_map(|&i| fam.members[i].row)
                    .find(|&r| r != row)
            } else {
                special_row
            };
            let diff = match partner {
                Some(other) if other != row => {
                    Some(lusztig::almost_difference(fam, row, other)?)
                }
                _ => None,
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "members": fam.members.iter().map(|mm| mm.name.clone()).collect::<Vec<_>>(),
                        "a_value": fam.a_value,
                        "matrix_num": m.num,
                        "matrix_den": m.den,
                        "almost_difference": diff,
                    }))?
                );
            } else {
                println!(
                    "family of {}: {}",
                    label,
                    fam.members
                        .iter()
                        .map(|mm| mm.name.clone())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                for rw in &m.num {
                    let line: Vec<String> =
                        rw.iter().map(|v| format!("{v}/{}", m.den)).collect();
                    println!("  [{}]", line.join(" "));
                }
                if let Some(d) = diff {
                    println!("almost difference coefficients {:?} / {}", d.coeffs, d.den);
                }
            }
            Ok(true)
        }
        Command::Nilmodel {
            p,
            f,
            k,
            c,
            eta,
            json,
        } => {
            let cs = match c {
                Some(s) => parse_ints::<u16>(&s, "c")?,
                None => vec![1; k],
            };
            let etas = match eta {
                Some(s) => parse_ints::<u16>(&s, "eta")?,
                None => vec![1; k],
            };
            let report = nilmodel::run_suite(ModelParams::new(p, f, k, cs, etas)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "order {}  classes {}  psi degree {}",
                    report.order, report.num_classes, report.psi_degree
                );
                println!(
                    "fs(psi) {:+}  fs(psi') {:+}",
                    report.fs_psi, report.fs_psi_prime
                );
                for (name, v) in &report.inner_products {
                    println!("{name} = {v}");
                }
                for check in &report.checks {
                    println!("[{}] {}", if check.pass { "ok" } else { "FAIL" }, check.name);
                }
            }
            Ok(report.all_pass)
        }
        Command::VerifyPaper {
            json,
            cache_dir,
            skip,
            q,
        } => {
            for s in &skip {
                if s != "e7table" && s != "nilmodel-large" {
                    return Err(Error::CheckFailed(format!("unknown skip stage {s:?}")));
                }
            }
            let config = PipelineConfig {
                cache_dir,
                skip_e7_table: skip.iter().any(|s| s == "e7table"),
                skip_large_model: skip.iter().any(|s| s == "nilmodel-large"),
                qs: parse_ints::<u64>(&q, "q")?,
            };
            let report = pipeline::verify_all(&config);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for check in &report.checks {
                    let tag = match check.status {
                        pipeline::CheckStatus::ComputedPass => "pass   ",
                        pipeline::CheckStatus::ComputedFail => "FAIL   ",
                        pipeline::CheckStatus::Assumed => "assumed",
                    };
                    println!("[{tag}] {:<32} ({})", check.name, check.anchor);
                }
                println!("verdict: {}", report.verdict);
            }
            Ok(report.all_computed_pass())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
