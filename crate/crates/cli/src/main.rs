use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use qldi_core::bounds::{bounds_report, BoundsInput, BoundsReport, Reading};
use qldi_core::distance::{
    distance_search, enumeration_oracle, scan_primes, DistanceReport, ScanReport, Verdict,
    WeightBound, DEFAULT_ORACLE_BUDGET,
};
use qldi_core::io::{
    emit_report, parse_code, parse_script, CanonReport, CodeSummary, LdiReport, RegisterMap,
    ReplayReport,
};
use qldi_core::ldi::{analysis_form, is_ldi, ldi_transform, AnalysisForm, LVariant};
use qldi_core::linalg::{apply_script, canonical_form};
use qldi_core::primes::primes_in;
use qldi_core::{Error, StabilizerCode, Tableau};

#[derive(Parser)]
#[command(name = "qldi", version, about = "Local-dimension-invariant forms of qudit stabilizer codes")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a code file describes a valid stabilizer code.
    Validate { file: PathBuf },
    /// Bring the generators to [I X2 | Z1 Z2] form.
    Canon {
        file: PathBuf,
        /// Write the operation script to this path.
        #[arg(long)]
        script: Option<PathBuf>,
    },
    /// Apply an operation script to a code's generators.
    Replay { file: PathBuf, script: PathBuf },
    /// Build an LDI form.
    Ldi {
        file: PathBuf,
        #[arg(long, value_parser = parse_variant, default_value = "full")]
        variant: LVariant,
    },
    /// Evaluate the local-dimension cutoffs for the code's LDI form.
    Bounds {
        file: PathBuf,
        /// Use the alternative reading of the degenerate cutoff.
        #[arg(long)]
        strict_reading: bool,
    },
    /// Search for the distance of the LDI form at a prime local-dimension.
    Distance {
        file: PathBuf,
        #[arg(short, long)]
        p: u64,
        /// Largest error weight to search (defaults to the declared distance).
        #[arg(short, long)]
        w: Option<usize>,
        /// Report the integer syndrome and class of the witness.
        #[arg(long)]
        classify: bool,
        /// Enumerate every error instead of comparing ranks.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the distance search at every prime in an inclusive range.
    Scan {
        file: PathBuf,
        #[arg(long, value_parser = parse_range)]
        primes: (u64, u64),
        #[arg(short, long)]
        w: Option<usize>,
    },
}

fn parse_variant(s: &str) -> Result<LVariant, String> {
    s.parse().map_err(|_| format!("expected one of full, plus, minus (got {s:?})"))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI (got {s:?})"))?;
    let lo: u64 = lo.trim().parse().map_err(|e| format!("bad lower end: {e}"))?;
    let hi: u64 = hi.trim().parse().map_err(|e| format!("bad upper end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Code(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Code(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Code(e) => write!(f, "{e}"),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load(path: &Path) -> Result<StabilizerCode, Failure> {
    Ok(parse_code(&read(path)?)?)
}

fn rows(t: &Tableau) -> Vec<Vec<i64>> {
    t.rows().to_vec()
}

fn require_d(code: &StabilizerCode) -> Result<usize, Failure> {
    code.d().ok_or_else(|| {
        Failure::Code(Error::Parameter("the header must declare the distance d".into()))
    })
}

#[derive(Serialize)]
struct ValidateReport {
    valid: bool,
    code: CodeSummary,
    ldi_as_given: bool,
}

#[derive(Serialize)]
struct BoundsCommand {
    code: CodeSummary,
    native_ldi: bool,
    #[serde(flatten)]
    bounds: BoundsReport,
}

#[derive(Serialize)]
struct DistanceCommand {
    code: CodeSummary,
    native_ldi: bool,
    method: &'static str,
    #[serde(flatten)]
    report: DistanceReport,
}

#[derive(Serialize)]
struct ScanCommand {
    code: CodeSummary,
    native_ldi: bool,
    primes: Vec<u64>,
    #[serde(flatten)]
    scan: ScanReport,
}

fn form_label(form: &AnalysisForm) -> &'static str {
    if form.native {
        "generators as given (already LDI)"
    } else {
        "full LDI form"
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => {
            let code = load(&file)?;
            let report = ValidateReport {
                valid: true,
                ldi_as_given: is_ldi(&code.tableau().lift()),
                code: CodeSummary::of(&code),
            };
            if json {
                return Ok(emit_report("validate", &report));
            }
            let d = code.d().map(|d| format!(",{d}")).unwrap_or_default();
            let mut out = format!(
                "valid [[{},{}{d}]]_{} code with {} generators\n",
                code.n(),
                code.k(),
                code.q(),
                code.num_generators()
            );
            if report.ldi_as_given {
                out.push_str("generators already commute over the integers\n");
            }
            Ok(out)
        }
        Command::Canon { file, script } => {
            let code = load(&file)?;
            let canon = canonical_form(&code)?;
            if let Some(path) = script {
                fs::write(&path, canon.script.to_string()).map_err(|e| Failure::Io(path.clone(), e))?;
            }
            if json {
                let report = CanonReport {
                    code: CodeSummary::of(&code),
                    tableau: rows(&canon.tableau),
                    script: canon.script.ops().iter().map(ToString::to_string).collect(),
                    column_record: RegisterMap::from(&canon.column_record),
                };
                return Ok(emit_report("canon", &report));
            }
            let map = RegisterMap::from(&canon.column_record);
            Ok(format!(
                "{}\nregisters: {:?}\nhadamard: {:?}\nscript ({} ops):\n{}",
                canon.tableau,
                map.registers,
                map.hadamard,
                canon.script.len(),
                canon.script
            ))
        }
        Command::Replay { file, script } => {
            let code = load(&file)?;
            let ops = parse_script(&read(&script)?)?;
            let t = apply_script(code.tableau(), &ops)?;
            if json {
                return Ok(emit_report("replay", &ReplayReport { tableau: rows(&t) }));
            }
            Ok(format!("{t}\n"))
        }
        Command::Ldi { file, variant } => {
            let code = load(&file)?;
            let ldi = ldi_transform(&code, variant)?;
            if json {
                let report = LdiReport {
                    code: CodeSummary::of(&code),
                    variant,
                    b: ldi.b,
                    is_ldi: is_ldi(&ldi.tableau),
                    tableau: rows(&ldi.tableau),
                    l: ldi.l.clone(),
                    canonical: rows(&ldi.canonical.tableau),
                    column_record: RegisterMap::from(&ldi.canonical.column_record),
                };
                return Ok(emit_report("ldi", &report));
            }
            Ok(format!("variant: {variant}\nB = {}\n{}\n", ldi.b, ldi.tableau))
        }
        Command::Bounds { file, strict_reading } => {
            let code = load(&file)?;
            let d = require_d(&code)?;
            let form = analysis_form(&code)?;
            let search = distance_search(&form.tableau, code.q(), d)?;
            let reading = if strict_reading { Reading::Strict } else { Reading::Decided };
            let input = BoundsInput {
                b: form.b,
                q: code.q(),
                n: code.n() as u64,
                k: code.k() as u64,
                d: d as u64,
                degenerate: search.degenerate,
            };
            let bounds = bounds_report(input, reading);
            if json {
                let report = BoundsCommand { code: CodeSummary::of(&code), native_ldi: form.native, bounds };
                return Ok(emit_report("bounds", &report));
            }
            let mut out = format!("form: {}\nB = {}\nreading: {reading}\n", form_label(&form), bounds.b);
            out.push_str(&format!("degenerate: {}\n", bounds.degenerate));
            out.push_str(&format!("p* (original) = {}\n", bounds.p_star_original));
            out.push_str(&format!("p* (alternative) = {}\n", bounds.p_star_alternative));
            out.push_str(&format!("p* = {}\n", bounds.p_star_effective));
            if let Some(pd) = &bounds.p_d_star {
                out.push_str(&format!("p_D* = {pd}\n"));
            }
            out.push_str(&format!(
                "hamming: {} vs {} ({})\n",
                bounds.hamming.lhs,
                bounds.hamming.rhs,
                if bounds.hamming.holds { "holds" } else { "fails" }
            ));
            match &bounds.p_double_star {
                Some(v) => out.push_str(&format!("p** >= {}\n", v.value)),
                None => out.push_str("p** not applicable\n"),
            }
            out.push_str(&format!("first safe prime = {}\n", bounds.first_safe_prime));
            Ok(out)
        }
        Command::Distance { file, p, w, classify, oracle } => {
            let code = load(&file)?;
            let w_max = w.or(code.d()).unwrap_or(code.n());
            let form = analysis_form(&code)?;
            let report = if oracle {
                enumeration_oracle(&form.tableau, p, w_max, DEFAULT_ORACLE_BUDGET)?
            } else {
                distance_search(&form.tableau, p, w_max)?
            };
            if json {
                let body = DistanceCommand {
                    code: CodeSummary::of(&code),
                    native_ldi: form.native,
                    method: if oracle { "enumeration" } else { "rank" },
                    report,
                };
                return Ok(emit_report("distance", &body));
            }
            let mut out = format!("form: {}\np = {p}\n", form_label(&form));
            out.push_str(&format!("distance: {}\n", bound_text(report.distance)));
            out.push_str(&format!("min stabilizer weight: {}\n", bound_text(report.min_stabilizer_weight)));
            out.push_str(&format!("degenerate: {}\n", report.degenerate));
            if let Some(wit) = &report.witness {
                out.push_str(&format!("witness: {} (weight {})\n", wit.word, wit.weight));
                if classify {
                    out.push_str(&format!("integer syndrome: {:?}\n", wit.syndrome_int));
                    out.push_str(&format!("class: {}\n", serde_plain(&wit.classification)));
                }
            }
            Ok(out)
        }
        Command::Scan { file, primes, w } => {
            let code = load(&file)?;
            let declared = require_d(&code)?;
            let w_max = w.unwrap_or(declared);
            let form = analysis_form(&code)?;
            let list = primes_in(primes.0, primes.1);
            let scan = scan_primes(&form.tableau, &list, w_max, Some(declared))?;
            if json {
                let body = ScanCommand { code: CodeSummary::of(&code), native_ldi: form.native, primes: list, scan };
                return Ok(emit_report("scan", &body));
            }
            let mut out = format!("form: {}\n", form_label(&form));
            for (r, entry) in scan.reports.iter().zip(&scan.summary) {
                let verdict = match entry.verdict {
                    Verdict::Preserved => "preserved",
                    Verdict::Violated => "violated",
                    Verdict::Undetermined => "undetermined",
                };
                out.push_str(&format!(
                    "p = {:>6}  distance {:>4}  degenerate {:<5}  {verdict}\n",
                    r.prime,
                    bound_text(r.distance),
                    r.degenerate
                ));
            }
            Ok(out)
        }
    }
}

fn bound_text(b: WeightBound) -> String {
    match b {
        WeightBound::Exact(w) => w.to_string(),
        WeightBound::Above(w) => format!(">{w}"),
    }
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
