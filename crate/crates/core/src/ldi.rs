//! Local-dimension-invariant forms: the canonical form with a correction
//! matrix `L` added to its `Z₁` block so that every pair of generators has
//! symplectic product exactly zero over the integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::linalg::{canonical_form, CanonicalForm};
use crate::symplectic::{gram, Context, GramMatrix, Tableau};
use crate::{Error, Result};

/// Which pairwise products go into `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LVariant {
    /// Every strictly lower-triangular product.
    Full,
    /// Only positive products, from either triangle.
    #[serde(rename = "plus")]
    PlusOnly,
    /// Only negative products, from either triangle.
    #[serde(rename = "minus")]
    MinusOnly,
}

impl LVariant {
    pub const ALL: [LVariant; 3] = [LVariant::Full, LVariant::PlusOnly, LVariant::MinusOnly];
}

impl fmt::Display for LVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LVariant::Full => "full",
            LVariant::PlusOnly => "plus",
            LVariant::MinusOnly => "minus",
        })
    }
}

impl FromStr for LVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(LVariant::Full),
            "plus" => Ok(LVariant::PlusOnly),
            "minus" => Ok(LVariant::MinusOnly),
            other => Err(Error::Parameter(format!("unknown variant {other:?}"))),
        }
    }
}

pub fn build_l(g: &GramMatrix, variant: LVariant) -> Result<Vec<Vec<i64>>> {
    g.check_antisymmetric()?;
    let m = g.size();
    Ok((0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let v = g.get(i, j);
                    let keep = match variant {
                        LVariant::Full => i > j,
                        LVariant::PlusOnly => v > 0,
                        LVariant::MinusOnly => v < 0,
                    };
                    if keep {
                        v
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdiForm {
    pub tableau: Tableau,
    pub variant: LVariant,
    /// Largest absolute entry of `tableau`.
    pub b: u64,
    pub source_q: u64,
    /// The matrix actually added to `Z₁`, including any repair terms.
    pub l: Vec<Vec<i64>>,
    pub canonical: CanonicalForm,
}

pub fn is_ldi(t: &Tableau) -> bool {
    gram(t).is_zero()
}

pub fn max_entry(t: &Tableau) -> Result<u64> {
    if t.context() != Context::Integers {
        return Err(Error::NeedsIntegers);
    }
    Ok(t.max_abs_entry())
}

pub fn ldi_transform(code: &StabilizerCode, variant: LVariant) -> Result<LdiForm> {
    let canonical = canonical_form(code)?;
    ldi_from_canonical(canonical, code.q(), variant)
}

/// Adds the variant's `L` to the `Z₁` block of an already canonical tableau.
///
/// Any product left nonzero afterwards is cancelled on the lower-triangle
/// entry, as the full variant would. Row `i`'s `Z₁` column `j` only meets
/// row `j`'s identity pivot, so each added entry clears exactly one pair.
pub fn ldi_from_canonical(canonical: CanonicalForm, q: u64, variant: LVariant) -> Result<LdiForm> {
    let mut t = canonical.tableau.lift();
    let n = t.n();
    let m = t.num_rows();
    let mut l = build_l(&gram(&t), variant)?;
    add_to_z1(&mut t, &l);

    for _ in 0..m.max(1) {
        let residual = gram(&t);
        if residual.is_zero() {
            break;
        }
        let mut fix = vec![vec![0; m]; m];
        for i in 0..m {
            for j in 0..i {
                fix[i][j] = residual.get(i, j);
                l[i][j] += residual.get(i, j);
            }
        }
        add_to_z1(&mut t, &fix);
    }
    if !is_ldi(&t) {
        return Err(Error::Parameter(format!(
            "tableau with {n} registers did not reach an LDI form"
        )));
    }
    let b = t.max_abs_entry();
    Ok(LdiForm { tableau: t, variant, b, source_q: q, l, canonical })
}

fn add_to_z1(t: &mut Tableau, l: &[Vec<i64>]) {
    let n = t.n();
    for (row, l_row) in t.rows_mut().iter_mut().zip(l) {
        for (j, &v) in l_row.iter().enumerate() {
            row[n + j] += v;
        }
    }
}

/// The integer tableau that distance and bound computations run on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisForm {
    pub tableau: Tableau,
    pub b: u64,
    /// `true` when the code's own generators already commute over ℤ and are
    /// used as given; otherwise `tableau` is the full-variant LDI form.
    pub native: bool,
}

pub fn analysis_form(code: &StabilizerCode) -> Result<AnalysisForm> {
    let lifted = code.tableau().lift();
    if is_ldi(&lifted) {
        let b = lifted.max_abs_entry();
        return Ok(AnalysisForm { tableau: lifted, b, native: true });
    }
    let form = ldi_transform(code, LVariant::Full)?;
    Ok(AnalysisForm { tableau: form.tableau, b: form.b, native: false })
}

impl LdiForm {
    pub fn k(&self) -> usize {
        self.tableau.n() - self.tableau.num_rows()
    }

    /// The form's generators read modulo `p`.
    pub fn at_prime(&self, p: u64) -> Result<Tableau> {
        self.tableau.reduce(p)
    }
}
