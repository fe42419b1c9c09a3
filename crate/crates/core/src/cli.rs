//! The `goodpoly` command line.
//!
//! Exit codes: 0 ok, 1 mismatch or failed verification, 2 bad input,
//! 3 violated precondition, 4 guard exceeded. Output is `key=value` lines
//! by default, JSON with `--json`; tables print CSV unless `--json` is set.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::chebotarev::{self, BoundError, TheoremProfile};
use crate::gf::{Elem, FieldRef, GfError, DEFAULT_GUARD};
use crate::goodpoly::{
    construct_family, covering_defects, splitting_covering_guarded, Family, GoodPolyError,
};
use crate::io::{self, CodeFile, CoveringFile, IoError};
use crate::lrc::{LrcCode, LrcError, DISTANCE_GUARD};
use crate::poly::{Poly, PolyError};
use crate::tables::{self, TableError, TABLE_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "goodpoly",
    version,
    about = "Good polynomials over finite fields and optimal LRCs"
)]
pub struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit CSV (tables only; other commands ignore it).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Largest field order any command may build or scan.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a field: characteristic, degree, modulus, generator.
    FieldInfo(FieldArg),
    /// Scan a polynomial for its totally split values.
    Scan {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
        /// Print every block of the covering.
        #[arg(long)]
        sets: bool,
        /// Write the covering file here.
        #[arg(long)]
        covering: Option<PathBuf>,
    },
    /// Verify a covering file.
    Covering {
        #[arg(long)]
        file: PathBuf,
    },
    /// Build a polynomial from one of the families.
    Construct {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        family: FamilyArg,
    },
    /// Counting bounds for a family, or for an explicit profile.
    Bounds {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, required_unless_present = "profile")]
        family: Option<FamilyKind>,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        /// `G,g,R`: group order, genus, ramified degree-one places.
        #[arg(long, conflicts_with = "family")]
        profile: Option<String>,
        /// Also measure ℓ by scanning.
        #[arg(long)]
        measure: bool,
    },
    /// Recompute a published table (`1a` … `3b`, or `all`).
    Table { id: String },
    /// Locally recoverable codes.
    #[command(subcommand)]
    Lrc(LrcCommand),
}

#[derive(Debug, Args)]
pub struct FieldArg {
    /// Field as `q`, `p^m`, optionally followed by `mod=<poly>`.
    #[arg(long, visible_alias = "field")]
    pub q: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Monomial,
    Additive,
    Deg3,
    Deg4,
    Deg6,
    FromRoots,
}

#[derive(Debug, Args)]
pub struct FamilyArg {
    #[arg(long)]
    pub family: FamilyKind,
    /// Family parameter: `m` for monomial, an element code for deg3/deg4/deg6,
    /// comma-separated codes for additive and from-roots.
    #[arg(long, allow_hyphen_values = true)]
    pub param: String,
}

#[derive(Debug, Subcommand)]
pub enum LrcCommand {
    /// Build a code from a polynomial and write the code file.
    Build {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        t: usize,
        /// Use only the first `ell` blocks of the covering.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode a comma-separated message.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        message: String,
    },
    /// Fill erasures (`?`), at most one per block.
    Repair {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Minimum distance by exhaustive enumeration, or a sampled upper bound.
    Distance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = DISTANCE_GUARD)]
        max_enum: u64,
        /// Sample this many random messages instead of enumerating.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        let code = match e {
            GfError::GuardExceeded { .. } => EXIT_GUARD,
            GfError::DivisionByZero | GfError::FieldMismatch(..) => EXIT_PRECONDITION,
            _ => EXIT_INPUT,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Field(inner) => inner.into(),
            PolyError::ZeroPolynomial => CliError::new(EXIT_PRECONDITION, e.to_string()),
            _ => CliError::new(EXIT_INPUT, e.to_string()),
        }
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::Poly(inner) => inner.into(),
            _ => CliError::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

impl From<GoodPolyError> for CliError {
    fn from(e: GoodPolyError) -> Self {
        match e {
            GoodPolyError::GuardExceeded { .. } => CliError::new(EXIT_GUARD, e.to_string()),
            GoodPolyError::Poly(inner) => inner.into(),
            GoodPolyError::Field(inner) => inner.into(),
            GoodPolyError::Bound(inner) => inner.into(),
            _ => CliError::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

impl From<LrcError> for CliError {
    fn from(e: LrcError) -> Self {
        let code = match e {
            LrcError::GuardExceeded { .. } => EXIT_GUARD,
            LrcError::LengthMismatch { .. } | LrcError::PositionOutOfRange { .. } => EXIT_INPUT,
            _ => EXIT_PRECONDITION,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Field(inner) => inner.into(),
            IoError::Poly(inner) => inner.into(),
            IoError::Lrc(inner) => inner.into(),
            _ => CliError::new(EXIT_INPUT, e.to_string()),
        }
    }
}

impl From<TableError> for CliError {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Unknown(_) => CliError::new(EXIT_INPUT, e.to_string()),
            TableError::Field(inner) => inner.into(),
            TableError::Scan(inner) => inner.into(),
            TableError::Bound(inner) => inner.into(),
        }
    }
}

/// Ordered key/value output, printed as `key=value` lines or one JSON object.
struct Report {
    json: bool,
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn new(json: bool) -> Self {
        Report {
            json,
            fields: Vec::new(),
        }
    }

    fn put(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key, value.into()));
        self
    }

    fn write(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let text = if self.json {
            let map: serde_json::Map<String, Value> = self
                .fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect();
            serde_json::to_string_pretty(&Value::Object(map)).expect("plain values") + "\n"
        } else {
            self.fields
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}\n"),
                    Value::Null => format!("{k}=none\n"),
                    other => format!("{k}={other}\n"),
                })
                .collect()
        };
        out.write_all(text.as_bytes()).map_err(write_error)
    }
}

fn write_error(e: std::io::Error) -> CliError {
    CliError::new(EXIT_INPUT, format!("cannot write output: {e}"))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // A pool may already exist when called from tests; keep it then.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn field(arg: &FieldArg, guard: u64) -> Result<FieldRef, CliError> {
    Ok(io::parse_field(&arg.q, guard)?)
}

fn parse_codes(field: &FieldRef, text: &str) -> Result<Vec<Elem>, CliError> {
    Ok(io::parse_symbols(field, text)?)
}

fn one_code(field: &FieldRef, text: &str) -> Result<Elem, CliError> {
    let codes = parse_codes(field, text)?;
    match codes.as_slice() {
        [e] => Ok(*e),
        _ => Err(CliError::new(
            EXIT_INPUT,
            format!("expected one element code, got {text:?}"),
        )),
    }
}

fn family(field: &FieldRef, kind: FamilyKind, param: &str) -> Result<Family, CliError> {
    Ok(match kind {
        FamilyKind::Monomial => Family::Monomial {
            m: param
                .trim()
                .parse()
                .map_err(|_| CliError::new(EXIT_INPUT, format!("bad exponent {param:?}")))?,
        },
        FamilyKind::Additive => Family::Additive {
            generators: parse_codes(field, param)?,
        },
        FamilyKind::Deg3 => Family::Cubic {
            b: one_code(field, param)?,
        },
        FamilyKind::Deg4 => Family::Quartic {
            a: one_code(field, param)?,
        },
        FamilyKind::Deg6 => Family::Sextic {
            a: one_code(field, param)?,
        },
        FamilyKind::FromRoots => Family::FromRoots {
            roots: parse_codes(field, param)?,
        },
    })
}

fn read_code(path: &PathBuf, guard: u64) -> Result<LrcCode, CliError> {
    let text = fs::read_to_string(path).map_err(IoError::from)?;
    let file: CodeFile = serde_json::from_str(&text).map_err(IoError::from)?;
    Ok(file.to_code(guard)?)
}

fn write_json(path: &PathBuf, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    fs::write(path, text).map_err(|e| CliError::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let guard = cli.guard;
    let mut report = Report::new(cli.json);
    match &cli.command {
        Command::FieldInfo(arg) => {
            let f = field(arg, guard)?;
            report
                .put("field", io::field_text(&f))
                .put("p", f.characteristic())
                .put("m", f.degree())
                .put("q", f.order())
                .put("modulus", f.modulus_text())
                .put("generator", f.generator().code());
            if let Some(nr) = f.quadratic_non_residue() {
                report.put("non_residue", nr.code());
            }
        }
        Command::Scan {
            field: arg,
            poly,
            sets,
            covering,
        } => {
            let f = field(arg, guard)?;
            let poly = Poly::parse(&f, poly)?;
            let c = splitting_covering_guarded(&poly, guard)?;
            report
                .put("field", io::field_text(&f))
                .put("poly", poly.to_string())
                .put("r", c.r())
                .put("ell", c.ell())
                .put("cap", c.cap());
            if *sets {
                let file = CoveringFile::from_covering(&c);
                if cli.json {
                    report.put("sets", serde_json::to_value(&file.sets).expect("plain"));
                } else {
                    for s in &file.sets {
                        let pts: Vec<String> = s.points.iter().map(u32::to_string).collect();
                        report.put("set", format!("t={} A={}", s.t, pts.join(",")));
                    }
                }
            }
            if let Some(path) = covering {
                write_json(path, &CoveringFile::from_covering(&c))?;
            }
        }
        Command::Covering { file } => {
            let text = fs::read_to_string(file).map_err(IoError::from)?;
            let parsed: CoveringFile = serde_json::from_str(&text).map_err(IoError::from)?;
            let f = io::parse_field(&format!("{} mod={}", parsed.field, parsed.modulus), guard)?;
            let poly = Poly::parse(&f, &parsed.poly)?;
            report
                .put("poly", poly.to_string())
                .put("ell", parsed.sets.len());
            match parsed.to_covering(guard) {
                Ok(_) => {
                    report.put("valid", true);
                }
                Err(IoError::Inconsistent(reason)) => {
                    report.put("valid", false).put("defect", reason);
                    report.write(out)?;
                    return Ok(EXIT_MISMATCH);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Construct {
            field: arg,
            family: fam,
        } => {
            let f = field(arg, guard)?;
            let family = family(&f, fam.family, &fam.param)?;
            let g = construct_family(&f, family)?;
            let c = splitting_covering_guarded(&g.poly, guard)?;
            report
                .put("family", g.family.tag())
                .put("poly", g.poly.to_string())
                .put("r", g.r())
                .put("ell", c.ell())
                .put("promised_ell", g.promised_ell)
                .put("degenerate", g.degenerate);
        }
        Command::Bounds {
            field: arg,
            family: kind,
            param,
            profile,
            measure,
        } => {
            let f = field(arg, guard)?;
            let q = f.order() as u64;
            match (kind, profile) {
                (Some(kind), _) => {
                    let param = param
                        .as_deref()
                        .ok_or_else(|| CliError::new(EXIT_INPUT, "--family needs --param"))?;
                    let family = family(&f, *kind, param)?;
                    let rep = chebotarev::theorem_bound(&f, &family)?;
                    report
                        .put("q", rep.q)
                        .put("family", rep.family_tag)
                        .put("case", rep.case)
                        .put("lower", rep.lower)
                        .put("upper", rep.upper)
                        .put("main_term", rep.main_term)
                        .put("threshold", rep.threshold);
                    if *measure {
                        let g = construct_family(&f, family)?;
                        let ell = splitting_covering_guarded(&g.poly, guard)?.ell() as i64;
                        let sound = rep.lower.is_none_or(|lo| lo <= ell)
                            && rep.upper.is_none_or(|hi| ell <= hi);
                        report.put("measured", ell).put("sound", sound);
                        if !sound {
                            report.write(out)?;
                            return Ok(EXIT_MISMATCH);
                        }
                    }
                }
                (None, Some(text)) => {
                    let nums: Vec<u64> = text
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| CliError::new(EXIT_INPUT, format!("bad profile {text:?}")))?;
                    let [group, genus, ram1] = nums[..] else {
                        return Err(CliError::new(EXIT_INPUT, "profile is G,g,R"));
                    };
                    let prof = TheoremProfile::new(group, genus, ram1);
                    let (lo, hi) = chebotarev::split_count_bounds(q, &prof)?;
                    let (lo_i, hi_i) = chebotarev::split_count_bounds_int(q, &prof)?;
                    report
                        .put("q", q)
                        .put("lower_real", lo)
                        .put("upper_real", hi)
                        .put("lower", lo_i)
                        .put("upper", hi_i)
                        .put("threshold", chebotarev::threshold_c(&prof)?);
                }
                (None, None) => {
                    return Err(CliError::new(EXIT_INPUT, "give --family or --profile"))
                }
            }
        }
        Command::Table { id } => {
            let ids: Vec<&str> = if id == "all" {
                TABLE_IDS.to_vec()
            } else {
                vec![id.as_str()]
            };
            let mut rows = Vec::new();
            for id in ids {
                rows.extend(tables::compute_table(id, guard)?);
            }
            let text = if cli.json {
                serde_json::to_string_pretty(&rows).expect("plain") + "\n"
            } else {
                let mut s = format!("{}\n", tables::CSV_HEADER);
                for row in &rows {
                    s.push_str(&tables::csv_line(row));
                    s.push('\n');
                }
                s
            };
            out.write_all(text.as_bytes()).map_err(write_error)?;
            let bad: Vec<_> = rows.iter().filter(|r| !r.matches).collect();
            for r in &bad {
                let _ = writeln!(
                    err,
                    "mismatch: table {} q={} measured {} (published {}) reference {} (published {})",
                    r.table_id, r.q, r.measured, r.expected_measured, r.reference, r.expected_reference
                );
            }
            return Ok(if bad.is_empty() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            });
        }
        Command::Lrc(cmd) => return lrc_command(cmd, guard, report, out),
    }
    report.write(out)?;
    Ok(EXIT_OK)
}

fn lrc_command(
    cmd: &LrcCommand,
    guard: u64,
    mut report: Report,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut status = EXIT_OK;
    match cmd {
        LrcCommand::Build {
            field: arg,
            poly,
            t,
            ell,
            out: path,
        } => {
            let f = field(arg, guard)?;
            let poly = Poly::parse(&f, poly)?;
            let mut c = splitting_covering_guarded(&poly, guard)?;
            if let Some(ell) = ell {
                if *ell > c.ell() {
                    return Err(CliError::new(
                        EXIT_PRECONDITION,
                        format!("requested ell = {ell} but the covering has {}", c.ell()),
                    ));
                }
                c = c.truncated(*ell);
            }
            if let Some(d) = covering_defects(&c).first() {
                return Err(CliError::new(EXIT_PRECONDITION, d.to_string()));
            }
            let code = LrcCode::build(c, *t)?;
            write_json(path, &CodeFile::from_code(&code))?;
            report
                .put("n", code.n())
                .put("k", code.k())
                .put("r", code.r())
                .put("t", code.t())
                .put("target_distance", code.target_distance());
        }
        LrcCommand::Encode { code, message } => {
            let code = read_code(code, guard)?;
            let msg = parse_codes(code.field(), message)?;
            let word = code.encode(&msg)?;
            report.put("codeword", io::format_symbols(&word));
        }
        LrcCommand::Repair { code, word } => {
            let code = read_code(code, guard)?;
            let w = io::parse_word(code.field(), word)?;
            let erased: Vec<usize> = (0..w.len()).filter(|&i| w[i].is_none()).collect();
            let fixed = code.repair(&w)?;
            report
                .put(
                    "repaired",
                    erased
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                )
                .put("codeword", io::format_symbols(&fixed));
        }
        LrcCommand::Distance {
            code,
            max_enum,
            sample,
            seed,
        } => {
            let code = read_code(code, guard)?;
            let target = code.target_distance();
            report
                .put("n", code.n())
                .put("k", code.k())
                .put("r", code.r())
                .put("target_distance", target);
            match sample {
                Some(samples) => {
                    let d = code.min_distance_sampled(*samples, *seed);
                    report
                        .put("mode", "sampled-upper-bound")
                        .put("distance_at_most", d);
                }
                None => {
                    let d = code.min_distance_bruteforce(*max_enum)?;
                    report
                        .put("mode", "exhaustive")
                        .put("distance", d)
                        .put("optimal", d == target);
                    if d != target {
                        status = EXIT_MISMATCH;
                    }
                }
            }
        }
    }
    report.write(out)?;
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("goodpoly").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn scan_reports_ell() {
        let (code, out, _) = run_text(&["scan", "--q", "151", "--poly", "x^4+7*x^2"]);
        assert_eq!(code, 0);
        assert!(out.contains("ell=18\n"), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_text(&["scan", "--q", "12", "--poly", "x"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_text(&["scan", "--q", "13", "--poly", "x*(x"]).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_text(&["scan", "--q", "2^30", "--poly", "x^2"]).0,
            EXIT_GUARD
        );
        assert_eq!(
            run_text(&["construct", "--q", "13", "--family", "deg4", "--param", "0"]).0,
            EXIT_PRECONDITION
        );
        assert_eq!(run_text(&["table", "7c"]).0, EXIT_INPUT);
        assert_eq!(run_text(&["no-such-command"]).0, EXIT_INPUT);
    }

    #[test]
    fn bounds_with_profile() {
        let (code, out, _) = run_text(&["bounds", "--q", "151", "--profile", "8,0,4"]);
        assert_eq!(code, 0);
        assert!(
            out.contains("lower=17\n") && out.contains("upper=19\n"),
            "{out}"
        );
    }

    #[test]
    fn bounds_for_a_family_with_measurement() {
        let (code, out, _) = run_text(&[
            "bounds",
            "--q",
            "151",
            "--family",
            "deg4",
            "--param",
            "7",
            "--measure",
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("case=deg4/square-case\n"), "{out}");
        assert!(
            out.contains("measured=18\n") && out.contains("sound=true\n"),
            "{out}"
        );
    }
}
