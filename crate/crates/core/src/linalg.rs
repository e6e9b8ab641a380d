//! Exact linear algebra over `ℤ_p`, the allowed tableau operations, and the
//! canonical form `[I X₂ | Z₁ Z₂]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::StabilizerCode;
use crate::primes::{check_prime, mod_inv, mod_mul, mod_reduce};
use crate::symplectic::{Context, Tableau};
use crate::{Error, Result};

/// One allowed operation. Indices are zero-based here; the text form is
/// one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    /// `row[dst] += coeff · row[src]`
    RowAdd { dst: usize, src: usize, coeff: i64 },
    RowSwap(usize, usize),
    /// Multiply a row by a unit.
    RowScale { row: usize, coeff: i64 },
    /// Relabel registers: swaps columns `(i, i+n)` with `(j, j+n)`.
    RegisterSwap(usize, usize),
    /// Fourier/Hadamard conjugation on one register: `(x, z) ↦ (−z, x)`.
    HadamardSwap(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Op::RowAdd { dst, src, coeff } => write!(f, "rowadd {} {} {}", dst + 1, src + 1, coeff),
            Op::RowSwap(i, j) => write!(f, "rowswap {} {}", i + 1, j + 1),
            Op::RowScale { row, coeff } => write!(f, "rowscale {} {}", row + 1, coeff),
            Op::RegisterSwap(i, j) => write!(f, "regswap {} {}", i + 1, j + 1),
            Op::HadamardSwap(i) => write!(f, "hadamard {}", i + 1),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OpScript(pub Vec<Op>);

impl OpScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ops(&self) -> &[Op] {
        &self.0
    }

    pub fn push(&mut self, op: Op) {
        self.0.push(op);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OpScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

fn check_index(index: usize, limit: usize) -> Result<()> {
    if index < limit {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: index + 1, limit })
    }
}

fn is_unit(coeff: i64, context: Context) -> bool {
    match context {
        Context::Modular(q) => mod_reduce(coeff, q) != 0,
        Context::Integers => coeff == 1 || coeff == -1,
    }
}

/// Applies one operation in place. Hadamard negation happens before any
/// modular reduction.
pub fn apply_op(t: &mut Tableau, op: &Op) -> Result<()> {
    let (n, m, ctx) = (t.n(), t.num_rows(), t.context());
    let rows = t.rows_mut();
    match *op {
        Op::RowAdd { dst, src, coeff } => {
            check_index(dst, m)?;
            check_index(src, m)?;
            if dst == src {
                return Err(Error::Parameter("rowadd needs distinct rows".into()));
            }
            let src_row = rows[src].clone();
            for (a, b) in rows[dst].iter_mut().zip(src_row) {
                *a = ctx.reduce(*a + coeff * b);
            }
        }
        Op::RowSwap(i, j) => {
            check_index(i, m)?;
            check_index(j, m)?;
            rows.swap(i, j);
        }
        Op::RowScale { row, coeff } => {
            check_index(row, m)?;
            if !is_unit(coeff, ctx) {
                return Err(Error::NotAUnit { scalar: coeff });
            }
            for a in rows[row].iter_mut() {
                *a = ctx.reduce(*a * coeff);
            }
        }
        Op::RegisterSwap(i, j) => {
            check_index(i, n)?;
            check_index(j, n)?;
            for row in rows.iter_mut() {
                row.swap(i, j);
                row.swap(n + i, n + j);
            }
        }
        Op::HadamardSwap(i) => {
            check_index(i, n)?;
            for row in rows.iter_mut() {
                let (x, z) = (row[i], row[n + i]);
                row[i] = ctx.reduce(-z);
                row[n + i] = x;
            }
        }
    }
    Ok(())
}

/// Deterministic replay of a script; the context of `t` is preserved.
pub fn apply_script(t: &Tableau, script: &OpScript) -> Result<Tableau> {
    let mut out = t.clone();
    for op in script.ops() {
        apply_op(&mut out, op)?;
    }
    Ok(out)
}

/// Gauss–Jordan elimination over `ℤ_p` restricted to `cols`, scanned in the
/// given order. Pivots are scaled to 1 and cleared above and below. Returns
/// `(row, col)` pivot pairs; row operations are appended to `script`.
fn gauss_jordan(
    rows: &mut [Vec<i64>],
    p: u64,
    cols: impl IntoIterator<Item = usize>,
    mut script: Option<&mut OpScript>,
) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        if found != r {
            rows.swap(found, r);
            if let Some(s) = script.as_deref_mut() {
                s.push(Op::RowSwap(r, found));
            }
        }
        let lead = rows[r][c];
        if lead != 1 {
            let inv = mod_inv(lead, p).expect("nonzero residue modulo a prime");
            for a in rows[r].iter_mut() {
                *a = mod_mul(*a, inv, p);
            }
            if let Some(s) = script.as_deref_mut() {
                s.push(Op::RowScale { row: r, coeff: inv });
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let coeff = mod_reduce(-rows[i][c], p);
            let pivot_row = rows[r].clone();
            for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                *a = mod_reduce(*a + mod_mul(coeff, *b, p), p);
            }
            if let Some(s) = script.as_deref_mut() {
                s.push(Op::RowAdd { dst: i, src: r, coeff });
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

fn reduced_copy(rows: &[Vec<i64>], p: u64) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|row| row.iter().map(|&v| mod_reduce(v, p)).collect())
        .collect()
}

/// Reduced row echelon form over `ℤ_p` with the row operations that produce
/// it from `t` reduced modulo `p`.
pub fn rref_mod(t: &Tableau, p: u64) -> Result<(Tableau, usize, OpScript)> {
    check_prime(p)?;
    let mut rows = reduced_copy(t.rows(), p);
    let mut script = OpScript::new();
    let cols = 2 * t.n();
    let rank = gauss_jordan(&mut rows, p, 0..cols, Some(&mut script)).len();
    Ok((Tableau::new(t.n(), rows, Context::Modular(p))?, rank, script))
}

/// Rank over `ℤ_p` of an arbitrary integer matrix.
pub fn rank_mod(matrix: &[Vec<i64>], p: u64) -> Result<usize> {
    check_prime(p)?;
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows = reduced_copy(matrix, p);
    Ok(gauss_jordan(&mut rows, p, 0..cols, None).len())
}

/// Basis of `{v : M v ≡ 0 (mod p)}`, one vector per free column in
/// ascending order.
pub fn kernel_mod(matrix: &[Vec<i64>], cols: usize, p: u64) -> Result<Vec<Vec<i64>>> {
    check_prime(p)?;
    for row in matrix {
        if row.len() != cols {
            return Err(Error::LengthMismatch { expected: cols, found: row.len() });
        }
    }
    let mut rows = reduced_copy(matrix, p);
    let pivots = gauss_jordan(&mut rows, p, 0..cols, None);
    let mut is_pivot = vec![false; cols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    Ok((0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for &(r, c) in &pivots {
                v[c] = mod_reduce(-rows[r][f], p);
            }
            v
        })
        .collect())
}

/// Basis of `{c : cᵀ M ≡ 0 (mod p)}`.
pub fn left_kernel_mod(matrix: &[Vec<i64>], cols: usize, p: u64) -> Result<Vec<Vec<i64>>> {
    let m = matrix.len();
    let transposed: Vec<Vec<i64>> = (0..cols).map(|j| matrix.iter().map(|r| r[j]).collect()).collect();
    kernel_mod(&transposed, m, p)
}

/// Incrementally built echelon basis over `ℤ_p` that remembers how each
/// basis vector combines the inserted vectors.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    p: u64,
    width: usize,
    inserted: usize,
    basis: Vec<(usize, Vec<i64>, Vec<i64>)>,
}

impl RowEchelon {
    pub fn new(width: usize, p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p, width, inserted: 0, basis: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Returns the residual of `v` against the basis and the combination of
    /// inserted vectors that was subtracted.
    fn reduce(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let p = self.p;
        let mut residual: Vec<i64> = v.iter().map(|&a| mod_reduce(a, p)).collect();
        let mut combo = vec![0; self.inserted];
        for (pivot, row, row_combo) in &self.basis {
            let factor = residual[*pivot];
            if factor == 0 {
                continue;
            }
            for (a, b) in residual.iter_mut().zip(row) {
                *a = mod_reduce(*a - mod_mul(factor, *b, p), p);
            }
            for (a, b) in combo.iter_mut().zip(row_combo) {
                *a = mod_reduce(*a + mod_mul(factor, *b, p), p);
            }
        }
        (residual, combo)
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.width, "vector width");
        let p = self.p;
        let index = self.inserted;
        let (mut residual, combo) = self.reduce(v);
        self.inserted += 1;
        for (_, _, c) in self.basis.iter_mut() {
            c.push(0);
        }
        let Some(pivot) = residual.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = mod_inv(residual[pivot], p).expect("nonzero residue");
        for a in residual.iter_mut() {
            *a = mod_mul(*a, inv, p);
        }
        let mut new_combo: Vec<i64> = combo.iter().map(|&a| mod_mul(-a, inv, p)).collect();
        new_combo.push(inv);
        debug_assert_eq!(new_combo.len(), index + 1);
        self.basis.push((pivot, residual, new_combo));
        true
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).0.iter().all(|&a| a == 0)
    }

    /// Coefficients `c` with `Σ c_i · inserted_i ≡ v`, when `v` is in the span.
    pub fn certificate(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (residual, combo) = self.reduce(v);
        residual.iter().all(|&a| a == 0).then_some(combo)
    }
}

/// Membership of `v` in the `ℤ_p` row space of `t`, with coefficients.
pub fn in_rowspace(v: &[i64], t: &Tableau, p: u64) -> Result<Option<Vec<i64>>> {
    let width = 2 * t.n();
    if v.len() != width {
        return Err(Error::LengthMismatch { expected: width, found: v.len() });
    }
    let mut echelon = RowEchelon::new(width, p)?;
    for row in t.rows() {
        echelon.insert(row);
    }
    Ok(echelon.certificate(v))
}

/// Where each canonical register came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRecord {
    /// `registers[c]` is the original (zero-based) register now at canonical position `c`.
    pub registers: Vec<usize>,
    /// Original registers conjugated by a Hadamard/Fourier gate, ascending.
    pub hadamard: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub tableau: Tableau,
    pub script: OpScript,
    pub column_record: ColumnRecord,
}

impl CanonicalForm {
    /// Checks the `[I X₂ | Z₁ Z₂]` block shape.
    pub fn has_identity_block(&self) -> bool {
        has_identity_block(&self.tableau)
    }
}

pub(crate) fn has_identity_block(t: &Tableau) -> bool {
    t.rows()
        .iter()
        .enumerate()
        .all(|(i, row)| (0..t.num_rows()).all(|j| row[j] == i64::from(i == j)))
}

/// Brings a validated code to `[I_{n−k} X₂ | Z₁ Z₂]` over `ℤ_q`.
///
/// Registers are scanned left to right. A register whose X column has no
/// pivot among the unused rows but whose Z column does is Hadamard-swapped
/// first. The scan repeats until every row has a pivot, and the pivot
/// registers are finally permuted to the front in row order.
pub fn canonical_form(code: &StabilizerCode) -> Result<CanonicalForm> {
    let q = code.q();
    let n = code.n();
    let m = code.num_generators();
    let mut t = code.tableau().clone();
    let mut script = OpScript::new();
    let mut pivot_regs: Vec<usize> = Vec::with_capacity(m);
    let mut is_pivot = vec![false; n];
    let mut hadamard_count = vec![0u8; n];

    let emit = |t: &mut Tableau, script: &mut OpScript, op: Op| -> Result<()> {
        apply_op(t, &op)?;
        script.push(op);
        Ok(())
    };

    while pivot_regs.len() < m {
        let before = pivot_regs.len();
        for j in 0..n {
            let r = pivot_regs.len();
            if r == m {
                break;
            }
            if is_pivot[j] {
                continue;
            }
            let row_with = |t: &Tableau, col: usize| (r..m).find(|&i| t.row(i)[col] != 0);
            let found = match row_with(&t, j) {
                Some(i) => i,
                None => match row_with(&t, n + j) {
                    Some(i) => {
                        emit(&mut t, &mut script, Op::HadamardSwap(j))?;
                        hadamard_count[j] += 1;
                        i
                    }
                    None => continue,
                },
            };
            if found != r {
                emit(&mut t, &mut script, Op::RowSwap(r, found))?;
            }
            let lead = t.row(r)[j];
            if lead != 1 {
                let inv = mod_inv(lead, q).expect("nonzero residue modulo a prime");
                emit(&mut t, &mut script, Op::RowScale { row: r, coeff: inv })?;
            }
            for i in 0..m {
                let v = t.row(i)[j];
                if i != r && v != 0 {
                    emit(&mut t, &mut script, Op::RowAdd { dst: i, src: r, coeff: mod_reduce(-v, q) })?;
                }
            }
            is_pivot[j] = true;
            pivot_regs.push(j);
        }
        if pivot_regs.len() == before {
            return Err(Error::DependentRow { row: before + 1 });
        }
    }

    let order: Vec<usize> = pivot_regs
        .iter()
        .copied()
        .chain((0..n).filter(|&j| !is_pivot[j]))
        .collect();
    let mut current: Vec<usize> = (0..n).collect();
    for (c, &label) in order.iter().enumerate() {
        let pos = current.iter().position(|&l| l == label).expect("label present");
        if pos != c {
            emit(&mut t, &mut script, Op::RegisterSwap(c, pos))?;
            current.swap(c, pos);
        }
    }
    debug_assert!(has_identity_block(&t));

    Ok(CanonicalForm {
        tableau: t,
        script,
        column_record: ColumnRecord {
            registers: current,
            hadamard: (0..n).filter(|&j| !hadamard_count[j].is_multiple_of(4)).collect(),
        },
    })
}
