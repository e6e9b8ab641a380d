//! Text formats for codes and operation scripts, and JSON report emission.
//!
//! A code file is line oriented:
//!
//! ```text
//! # comment
//! n=6 k=1 q=2 d=3
//! YIZXYI
//! ZXIZYI
//! ```
//!
//! Generators are either qubit letter strings (`q = 2` only) or explicit
//! rows `x: a₁ … aₙ ; z: b₁ … bₙ`. A file uses one format throughout.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::code::StabilizerCode;
use crate::linalg::{ColumnRecord, Op, OpScript};
use crate::symplectic::{Context, PauliWord, Tableau};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorFormat {
    Letters,
    Symplectic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub code: StabilizerCode,
    pub format: GeneratorFormat,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

struct Header {
    n: usize,
    k: usize,
    q: u64,
    d: Option<usize>,
}

fn parse_header(line_no: usize, line: &str) -> Result<Header> {
    let (mut n, mut k, mut q, mut d) = (None, None, None, None);
    for token in line.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("expected key=value, found {token:?}")))?;
        let number: u64 = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("{key} must be a non-negative integer")))?;
        let slot = match key {
            "n" => &mut n,
            "k" => &mut k,
            "q" => &mut q,
            "d" => &mut d,
            other => return Err(parse_err(line_no, format!("unknown header key {other:?}"))),
        };
        if slot.replace(number).is_some() {
            return Err(parse_err(line_no, format!("duplicate header key {key:?}")));
        }
    }
    let need = |v: Option<u64>, key: &str| v.ok_or_else(|| parse_err(line_no, format!("header is missing {key}")));
    Ok(Header {
        n: need(n, "n")? as usize,
        k: need(k, "k")? as usize,
        q: need(q, "q")?,
        d: d.map(|v| v as usize),
    })
}

fn parse_ints(line_no: usize, text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(line_no, format!("bad integer {t:?}"))))
        .collect()
}

fn parse_symplectic_row(line_no: usize, line: &str, n: usize) -> Result<Vec<i64>> {
    let (x_part, z_part) = line
        .split_once(';')
        .ok_or_else(|| parse_err(line_no, "symplectic row needs `x: … ; z: …`"))?;
    let x = x_part
        .trim()
        .strip_prefix("x:")
        .ok_or_else(|| parse_err(line_no, "symplectic row must start with `x:`"))?;
    let z = z_part
        .trim()
        .strip_prefix("z:")
        .ok_or_else(|| parse_err(line_no, "second half must start with `z:`"))?;
    let (x, z) = (parse_ints(line_no, x)?, parse_ints(line_no, z)?);
    if x.len() != n || z.len() != n {
        return Err(parse_err(
            line_no,
            format!("expected {n} X and {n} Z exponents, found {} and {}", x.len(), z.len()),
        ));
    }
    Ok(x.into_iter().chain(z).collect())
}

pub fn parse_code_file(text: &str) -> Result<CodeFile> {
    let mut header: Option<Header> = None;
    let mut rows = Vec::new();
    let mut format = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(h) = &header else {
            header = Some(parse_header(line_no, line)?);
            continue;
        };
        let this_format = if line.starts_with("x:") {
            GeneratorFormat::Symplectic
        } else {
            GeneratorFormat::Letters
        };
        if *format.get_or_insert(this_format) != this_format {
            return Err(parse_err(line_no, "letter and symplectic generators cannot be mixed"));
        }
        let row = match this_format {
            GeneratorFormat::Symplectic => parse_symplectic_row(line_no, line, h.n)?,
            GeneratorFormat::Letters => {
                if h.q != 2 {
                    return Err(parse_err(line_no, "letter strings are only accepted for q=2"));
                }
                if line.chars().count() != h.n {
                    return Err(parse_err(
                        line_no,
                        format!("letter string has length {}, expected {}", line.chars().count(), h.n),
                    ));
                }
                PauliWord::from_letters(line)
                    .map_err(|e| parse_err(line_no, e.to_string()))?
                    .phi_encode()
            }
        };
        rows.push(row);
    }
    let h = header.ok_or_else(|| parse_err(0, "missing header line `n=… k=… q=…`"))?;
    let tableau = Tableau::new(h.n, rows, Context::Modular(h.q))?;
    let code = StabilizerCode::new(tableau, h.k, h.d)?;
    Ok(CodeFile { code, format: format.unwrap_or(GeneratorFormat::Symplectic) })
}

pub fn parse_code(text: &str) -> Result<StabilizerCode> {
    parse_code_file(text).map(|f| f.code)
}

pub fn serialize_code(code: &StabilizerCode, format: GeneratorFormat) -> Result<String> {
    let mut out = format!("n={} k={} q={}", code.n(), code.k(), code.q());
    if let Some(d) = code.d() {
        out.push_str(&format!(" d={d}"));
    }
    out.push('\n');
    let t = code.tableau();
    let n = t.n();
    for i in 0..t.num_rows() {
        match format {
            GeneratorFormat::Letters => {
                if code.q() != 2 {
                    return Err(Error::Parameter("letter strings are only available for q=2".into()));
                }
                out.push_str(&t.word(i).to_string());
            }
            GeneratorFormat::Symplectic => {
                let row = t.row(i);
                let join = |half: &[i64]| half.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
                out.push_str(&format!("x: {} ; z: {}", join(&row[..n]), join(&row[n..])));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_script(text: &str) -> Result<OpScript> {
    let mut ops = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let name = words.next().expect("non-empty line");
        let args: Vec<&str> = words.collect();
        let index = |i: usize| -> Result<usize> {
            let v: usize = args[i]
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad index {:?}", args[i])))?;
            v.checked_sub(1).ok_or_else(|| parse_err(line_no, "indices are 1-based"))
        };
        let coeff = |i: usize| -> Result<i64> {
            args[i].parse().map_err(|_| parse_err(line_no, format!("bad coefficient {:?}", args[i])))
        };
        let arity = match name {
            "rowadd" => 3,
            "rowswap" | "rowscale" | "regswap" => 2,
            "hadamard" => 1,
            other => return Err(parse_err(line_no, format!("unknown operation {other:?}"))),
        };
        if args.len() != arity {
            return Err(parse_err(line_no, format!("{name} takes {arity} arguments")));
        }
        ops.push(match name {
            "rowadd" => Op::RowAdd { dst: index(0)?, src: index(1)?, coeff: coeff(2)? },
            "rowswap" => Op::RowSwap(index(0)?, index(1)?),
            "rowscale" => Op::RowScale { row: index(0)?, coeff: coeff(1)? },
            "regswap" => Op::RegisterSwap(index(0)?, index(1)?),
            _ => Op::HadamardSwap(index(0)?),
        });
    }
    Ok(OpScript(ops))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

/// Indented JSON with a leading schema version and command name. Arrays of
/// scalars stay on one line, so matrices print one row per line.
pub fn emit_report<T: Serialize>(command: &str, body: &T) -> String {
    let env = Envelope { schema: SCHEMA_VERSION, command, body };
    let value = serde_json::to_value(&env).expect("reports serialize");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&item.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub d: Option<usize>,
    pub generators: Vec<String>,
}

impl CodeSummary {
    pub fn of(code: &StabilizerCode) -> Self {
        let t = code.tableau();
        Self {
            n: code.n(),
            k: code.k(),
            q: code.q(),
            d: code.d(),
            generators: (0..t.num_rows()).map(|i| t.word(i).to_string()).collect(),
        }
    }
}

/// 1-based register bookkeeping for display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterMap {
    pub registers: Vec<usize>,
    pub hadamard: Vec<usize>,
}

impl From<&ColumnRecord> for RegisterMap {
    fn from(r: &ColumnRecord) -> Self {
        Self {
            registers: r.registers.iter().map(|v| v + 1).collect(),
            hadamard: r.hadamard.iter().map(|v| v + 1).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonReport {
    pub code: CodeSummary,
    pub tableau: Vec<Vec<i64>>,
    pub script: Vec<String>,
    pub column_record: RegisterMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdiReport {
    pub code: CodeSummary,
    pub variant: crate::ldi::LVariant,
    pub b: u64,
    pub is_ldi: bool,
    pub tableau: Vec<Vec<i64>>,
    pub l: Vec<Vec<i64>>,
    pub canonical: Vec<Vec<i64>>,
    pub column_record: RegisterMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub tableau: Vec<Vec<i64>>,
}
