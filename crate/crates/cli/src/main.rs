use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wcurve_core::arith::is_discriminant;
use wcurve_core::boundary::{build_complex, export_dot};
use wcurve_core::euler::{euler_report, h2, EulerReport};
use wcurve_core::prototypes::{enumerate, Kind, Prototype};
use wcurve_core::siegel_veech::{
    billiards_constant, sv_constant, sv_constant_components, sv_report, SvReport,
};
use wcurve_core::{decompose_discriminant, verify, Discriminant, QuadNum};

/// Prototypes, Euler characteristics, boundary complexes and Siegel-Veech
/// constants for Weierstrass curves W_D.
#[derive(Parser, Debug)]
#[command(name = "wcurve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List Y-, W- or P-prototypes.
    Prototypes {
        #[command(flatten)]
        range: RangeArgs,
        #[arg(long, value_enum, default_value = "w")]
        kind: KindArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Euler characteristics and cusp counts.
    Euler {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Siegel-Veech constants (nonsquare D only).
    Sv {
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// CSV rows D,H(2,D).
    Hseries {
        #[arg(long, default_value_t = 0)]
        dmin: i64,
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Boundary complex of Y_D.
    Boundary {
        #[arg(long)]
        d: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Regenerate the constant tables. With neither --sv nor --billiards,
    /// writes table1.csv and table2.csv into --output (a directory).
    Tables {
        /// c_D for nonsquare D <= dmax, spin-0 constant where W_D splits.
        #[arg(long, conflicts_with = "billiards")]
        sv: bool,
        /// c(D) for the billiard tables P(D).
        #[arg(long)]
        billiards: bool,
        #[arg(long, default_value_t = 100)]
        dmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run every invariant suite over a range; exits 2 on any failure.
    Verify {
        #[arg(long, default_value_t = 1)]
        dmin: i64,
        #[arg(long, default_value_t = 200)]
        dmax: i64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct RangeArgs {
    /// A single discriminant.
    #[arg(long, conflicts_with_all = ["dmin", "dmax"])]
    d: Option<i64>,
    #[arg(long)]
    dmin: Option<i64>,
    #[arg(long)]
    dmax: Option<i64>,
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this path instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Y,
    W,
    P,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Y => Kind::Y,
            KindArg::W => Kind::W,
            KindArg::P => Kind::P,
        }
    }
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Invalid(anyhow::Error),
    Verify(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<wcurve_core::Error> for Failure {
    fn from(e: wcurve_core::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

fn parse_disc(d: i64) -> Result<Discriminant> {
    decompose_discriminant(d).map_err(|e| anyhow!(e))
}

/// Resolve `--d` or `--dmin/--dmax`. `skip_small` drops D = 1, 4.
fn resolve(range: &RangeArgs, skip_small: bool) -> Result<(Vec<Discriminant>, bool)> {
    if let Some(d) = range.d {
        return Ok((vec![parse_disc(d)?], true));
    }
    let (Some(lo), Some(hi)) = (range.dmin, range.dmax) else {
        bail!("give either --d or both --dmin and --dmax");
    };
    if lo > hi {
        bail!("--dmin {lo} exceeds --dmax {hi}");
    }
    let ds = (lo.max(1)..=hi)
        .filter(|&d| is_discriminant(d))
        .filter(|&d| !(skip_small && (d == 1 || d == 4)))
        .map(|d| parse_disc(d).expect("filtered"))
        .collect();
    Ok((ds, false))
}

fn emit(out: &OutArgs, body: &str) -> Result<()> {
    emit_to(out.output.as_ref(), body)
}

fn emit_to(path: Option<&PathBuf>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn reject_format(format: Format, allowed: &[Format]) -> Result<()> {
    if !allowed.contains(&format) {
        bail!("format {format:?} is not available for this command");
    }
    Ok(())
}

fn json_lines<T: serde::Serialize>(items: &[T]) -> Result<String> {
    Ok(serde_json::to_string_pretty(items)? + "\n")
}

fn prototypes_cmd(range: &RangeArgs, kind: Kind, out: &OutArgs) -> Result<String> {
    reject_format(out.format, &[Format::Text, Format::Json, Format::Csv])?;
    let skip = kind == Kind::W;
    let (ds, _) = resolve(range, skip)?;
    let ps: Vec<Prototype> = ds.iter().flat_map(|&d| enumerate(d, kind)).collect();
    let mut s = String::new();
    match out.format {
        Format::Json => return json_lines(&ps),
        Format::Csv => {
            s.push_str("kind,D,a,b,c,q,modulus,terminal,initial,degenerate,lambda\n");
            for p in &ps {
                let cl = p.classification();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    p.kind(),
                    p.d(),
                    p.a(),
                    p.b(),
                    p.c(),
                    p.q(),
                    p.modulus(),
                    cl.terminal,
                    cl.initial,
                    cl.degenerate,
                    p.lambda()
                );
            }
        }
        _ => {
            for p in &ps {
                let mut flags = Vec::new();
                if p.is_terminal() {
                    flags.push("terminal");
                }
                if p.is_initial() {
                    flags.push("initial");
                }
                if p.is_degenerate() {
                    flags.push("degenerate");
                }
                let _ = write!(s, "D={} {}{} lambda={}", p.d(), p.kind(), p, p.lambda());
                if !flags.is_empty() {
                    let _ = write!(s, " [{}]", flags.join(","));
                }
                s.push('\n');
            }
        }
    }
    Ok(s)
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn euler_cmd(range: &RangeArgs, out: &OutArgs) -> Result<String> {
    reject_format(out.format, &[Format::Text, Format::Json, Format::Csv])?;
    let (ds, _) = resolve(range, false)?;
    let reports: Vec<EulerReport> = ds
        .iter()
        .map(|&d| euler_report(d))
        .collect::<Result<_, _>>()?;
    let mut s = String::new();
    match out.format {
        Format::Json => return json_lines(&reports),
        Format::Csv => {
            s.push_str(
                "D,chi_X,chi_W,chi_P,chi_Q,chi_S1,chi_S2,chi_W0,chi_W1,components,cusps_two_cyl,cusps_one_cyl,cusps_P\n",
            );
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.d,
                    r.chi_x,
                    r.chi_w,
                    opt(&r.chi_p),
                    opt(&r.chi_q),
                    opt(&r.chi_s1),
                    opt(&r.chi_s2),
                    opt(&r.chi_w0),
                    opt(&r.chi_w1),
                    r.components,
                    r.cusps_two_cyl,
                    opt(&r.cusps_one_cyl),
                    r.cusps_p
                );
            }
        }
        _ => {
            for r in &reports {
                let _ = writeln!(s, "D = {}", r.d);
                let _ = writeln!(s, "  chi(X)   = {}", r.chi_x);
                let _ = writeln!(s, "  chi(W)   = {}", r.chi_w);
                let rows = [
                    ("chi(P)  ", &r.chi_p),
                    ("chi(Q)  ", &r.chi_q),
                    ("chi(S1) ", &r.chi_s1),
                    ("chi(S2) ", &r.chi_s2),
                    ("chi(W0) ", &r.chi_w0),
                    ("chi(W1) ", &r.chi_w1),
                ];
                for (name, v) in rows {
                    if let Some(v) = v {
                        let _ = writeln!(s, "  {name} = {v}");
                    }
                }
                let _ = writeln!(s, "  components = {}", r.components);
                let _ = writeln!(s, "  two-cylinder cusps = {}", r.cusps_two_cyl);
                if let Some(n) = r.cusps_one_cyl {
                    let _ = writeln!(s, "  one-cylinder cusps = {n}");
                }
                let _ = writeln!(s, "  P cusps = {}", r.cusps_p);
            }
        }
    }
    Ok(s)
}

fn sv_csv_constant(r: &SvReport) -> String {
    match &r.per_component {
        Some(p) => format!("{};{}", p.c0, p.c1),
        None => r.c_total.to_string(),
    }
}

fn sv_cmd(range: &RangeArgs, out: &OutArgs) -> Result<String> {
    reject_format(out.format, &[Format::Text, Format::Json, Format::Csv])?;
    let (ds, single) = resolve(range, true)?;
    if single && ds[0].is_square() {
        bail!(
            "Siegel-Veech constants are only defined for nonsquare D; D={} is a square",
            ds[0].value
        );
    }
    let reports: Vec<SvReport> = ds
        .iter()
        .filter(|d| !d.is_square())
        .map(|&d| sv_report(d))
        .collect::<Result<_, _>>()?;
    let mut s = String::new();
    match out.format {
        Format::Json => return json_lines(&reports),
        Format::Csv => {
            s.push_str("D,c_D,billiards_c,area_exact,coefficient_decimal\n");
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.d,
                    sv_csv_constant(r),
                    r.billiards_c,
                    r.unfolding_area,
                    r.billiards_coefficient
                );
            }
        }
        _ => {
            for r in &reports {
                let _ = writeln!(s, "D = {}", r.d);
                let _ = writeln!(s, "  c_D        = {}", r.c_total);
                if let Some(p) = &r.per_component {
                    let _ = writeln!(s, "  c_D^0      = {}", p.c0);
                    let _ = writeln!(s, "  c_D^1      = {}", p.c1);
                }
                let _ = writeln!(s, "  c(D)       = {}", r.billiards_c);
                let _ = writeln!(s, "  area       = {}", r.unfolding_area);
                let _ = writeln!(s, "  coefficient ~ {}", r.billiards_coefficient);
            }
        }
    }
    Ok(s)
}

fn hseries_cmd(dmin: i64, dmax: i64) -> Result<String> {
    if dmin < 0 || dmin > dmax {
        bail!("need 0 <= --dmin <= --dmax, got {dmin} and {dmax}");
    }
    let mut s = String::from("D,H(2,D)\n");
    for d in (dmin..=dmax).filter(|&d| d == 0 || is_discriminant(d)) {
        let _ = writeln!(s, "{d},{}", h2(d)?);
    }
    Ok(s)
}

fn boundary_cmd(d: i64, out: &OutArgs) -> Result<String> {
    let disc = parse_disc(d)?;
    let cx = build_complex(disc)?;
    Ok(match out.format {
        Format::Dot => export_dot(&cx),
        Format::Json => serde_json::to_string_pretty(&cx)? + "\n",
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "D = {} ({} curves, {} junctions)",
                d,
                cx.curves.len(),
                cx.junctions.len()
            );
            for (k, chain) in cx.chains.iter().enumerate() {
                let names: Vec<_> = chain
                    .iter()
                    .map(|&i| format!("C{}", cx.curves[i].prototype))
                    .collect();
                let kind = if cx.square { "chain S1 ->" } else { "cycle" };
                let tail = if cx.square { " -> S2" } else { "" };
                let _ = writeln!(s, "  {kind} {k}: {}{tail}", names.join(" -> "));
            }
            for c in &cx.curves {
                let _ = writeln!(
                    s,
                    "  C{}: {} W-cusps, {} P-cusps, S1 {}, S2 {}",
                    c.prototype,
                    c.w_markers.len(),
                    c.p_markers.len(),
                    c.s1_contacts,
                    c.s2_contacts
                );
            }
            for j in cx.junctions.iter().filter(|j| j.order > 1) {
                let _ = writeln!(s, "  c{} has orbifold order {}", j.prototype, j.order);
            }
            if let Some(n) = cx.s1_s2_points {
                let _ = writeln!(s, "  |S1 n S2| = {n}");
            }
            if let Some(c) = &cx.s1_one_cylinder {
                let _ = writeln!(s, "  one-cylinder cusps on S1 = {}", c.total);
            }
            s
        }
        Format::Csv => bail!("format Csv is not available for boundary"),
    })
}

/// The tabulated constant: c_D, or the spin-0 constant when W_D splits.
fn table2_value(disc: Discriminant) -> Result<QuadNum> {
    Ok(if disc.value % 8 == 1 {
        sv_constant_components(disc)?.0
    } else {
        sv_constant(disc)?
    })
}

const TABLE1_D: [i64; 10] = [5, 8, 12, 13, 17, 20, 21, 24, 28, 29];

fn table_rows(billiards: bool, dmax: i64) -> Result<Vec<(i64, QuadNum)>> {
    let ds: Vec<i64> = if billiards {
        TABLE1_D.iter().copied().filter(|&d| d <= dmax).collect()
    } else {
        (5..=dmax).filter(|&d| is_discriminant(d)).collect()
    };
    let mut rows = Vec::new();
    for d in ds {
        let disc = parse_disc(d)?;
        if disc.is_square() {
            continue;
        }
        let v = if billiards {
            billiards_constant(disc)?
        } else {
            table2_value(disc)?
        };
        rows.push((d, v));
    }
    Ok(rows)
}

fn render_table(rows: &[(i64, QuadNum)], header: &str, format: Format) -> Result<String> {
    let mut s = String::new();
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(d, c)| serde_json::json!({"D": d, "value": c}))
                .collect();
            return Ok(serde_json::to_string_pretty(&v)? + "\n");
        }
        Format::Csv => {
            let _ = writeln!(s, "D,{header}");
            for (d, c) in rows {
                let _ = writeln!(s, "{d},{c}");
            }
        }
        Format::Text => {
            for (d, c) in rows {
                let _ = writeln!(s, "{d:>4}  {c}");
            }
        }
        Format::Dot => bail!("format Dot is not available for tables"),
    }
    Ok(s)
}

fn tables_cmd(sv: bool, billiards: bool, dmax: i64, out: &OutArgs) -> Result<()> {
    if sv || billiards {
        let header = if billiards { "c(D)" } else { "c_D" };
        let body = render_table(&table_rows(billiards, dmax)?, header, out.format)?;
        return emit(out, &body);
    }
    let dir = out.output.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let t1 = render_table(&table_rows(true, dmax)?, "c(D)", Format::Csv)?;
    let t2 = render_table(&table_rows(false, dmax)?, "c_D", Format::Csv)?;
    emit_to(Some(&dir.join("table1.csv")), &t1)?;
    emit_to(Some(&dir.join("table2.csv")), &t2)?;
    Ok(())
}

fn verify_cmd(dmin: i64, dmax: i64, out: &OutArgs) -> std::result::Result<(), Failure> {
    if dmin > dmax {
        return Err(anyhow!("--dmin {dmin} exceeds --dmax {dmax}").into());
    }
    let report = verify::run(dmin, dmax);
    let body = match out.format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)? + "\n",
        _ => format!("{report}\n"),
    };
    emit(out, &body)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "{} of {} suites failed",
            report.suites.iter().filter(|s| !s.passed()).count(),
            report.suites.len()
        )))
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    match cli.command {
        Command::Prototypes { range, kind, out } => {
            emit(&out, &prototypes_cmd(&range, kind.into(), &out)?)?
        }
        Command::Euler { range, out } => emit(&out, &euler_cmd(&range, &out)?)?,
        Command::Sv { range, out } => emit(&out, &sv_cmd(&range, &out)?)?,
        Command::Hseries { dmin, dmax, output } => {
            emit_to(output.as_ref(), &hseries_cmd(dmin, dmax)?)?
        }
        Command::Boundary { d, out } => emit(&out, &boundary_cmd(d, &out)?)?,
        Command::Tables {
            sv,
            billiards,
            dmax,
            out,
        } => tables_cmd(sv, billiards, dmax, &out)?,
        Command::Verify { dmin, dmax, out } => verify_cmd(dmin, dmax, &out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verify: {msg}");
            ExitCode::from(2)
        }
    }
}
