//! Generalized Pauli words, their φ vectors and the symplectic product.
//!
//! A word on `n` registers maps to a `2n` vector whose first half holds the
//! X exponents and whose second half holds the Z exponents. Phases are never
//! tracked.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::primes::{check_prime, mod_reduce};
use crate::{Error, Result};

/// Arithmetic context of exponents: residues modulo a prime, or unreduced
/// signed integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Modular(u64),
    Integers,
}

impl Context {
    pub fn modulus(self) -> Option<u64> {
        match self {
            Context::Modular(q) => Some(q),
            Context::Integers => None,
        }
    }

    pub(crate) fn reduce(self, v: i64) -> i64 {
        match self {
            Context::Modular(q) => mod_reduce(v, q),
            Context::Integers => v,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Context::Modular(q) => check_prime(q),
            Context::Integers => Ok(()),
        }
    }
}

/// One `n`-register generalized Pauli as per-site `(x, z)` exponent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliWord {
    sites: Vec<(i64, i64)>,
    context: Context,
}

impl PauliWord {
    /// Builds a word, reducing exponents when the context is modular.
    pub fn new(sites: Vec<(i64, i64)>, context: Context) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::Parameter("a Pauli word needs at least one register".into()));
        }
        context.validate()?;
        let sites = sites
            .into_iter()
            .map(|(x, z)| (context.reduce(x), context.reduce(z)))
            .collect();
        Ok(Self { sites, context })
    }

    pub fn identity(n: usize, context: Context) -> Result<Self> {
        Self::new(vec![(0, 0); n], context)
    }

    /// Parses a qubit letter string over `I`, `X`, `Y`, `Z` (`Y` is `x = z = 1`).
    pub fn from_letters(letters: &str) -> Result<Self> {
        let sites = letters
            .chars()
            .map(|c| match c {
                'I' => Ok((0, 0)),
                'X' => Ok((1, 0)),
                'Y' => Ok((1, 1)),
                'Z' => Ok((0, 1)),
                other => Err(Error::MalformedVector(format!("unknown Pauli letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sites, Context::Modular(2))
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[(i64, i64)] {
        &self.sites
    }

    pub fn context(&self) -> Context {
        self.context
    }

    /// Number of registers carrying a non-identity operator.
    pub fn weight(&self) -> usize {
        self.sites.iter().filter(|&&(x, z)| x != 0 || z != 0).count()
    }

    pub fn phi_encode(&self) -> Vec<i64> {
        let n = self.n();
        let mut v = vec![0; 2 * n];
        for (i, &(x, z)) in self.sites.iter().enumerate() {
            v[i] = x;
            v[n + i] = z;
        }
        v
    }

    /// Inverts the φ map modulo `q`; the global phase is left undetermined.
    pub fn phi_decode(v: &[i64], q: u64) -> Result<Self> {
        if v.is_empty() || !v.len().is_multiple_of(2) {
            return Err(Error::MalformedVector(format!(
                "φ vector must have positive even length, found {}",
                v.len()
            )));
        }
        let n = v.len() / 2;
        Self::new((0..n).map(|i| (v[i], v[n + i])).collect(), Context::Modular(q))
    }

    /// Site-wise composition, which is componentwise addition of φ vectors.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch { expected: self.n(), found: other.n() });
        }
        let sites = self
            .sites
            .iter()
            .zip(&other.sites)
            .map(|(a, b)| (a.0 + b.0, a.1 + b.1))
            .collect();
        Self::new(sites, self.context)
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context == Context::Modular(2) {
            for &(x, z) in &self.sites {
                let c = match (x, z) {
                    (0, 0) => 'I',
                    (1, 0) => 'X',
                    (0, 1) => 'Z',
                    _ => 'Y',
                };
                write!(f, "{c}")?;
            }
            return Ok(());
        }
        for (i, &(x, z)) in self.sites.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if x == 0 && z == 0 {
                write!(f, "I")?;
                continue;
            }
            if x != 0 {
                write_power(f, 'X', x)?;
            }
            if z != 0 {
                write_power(f, 'Z', z)?;
            }
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, letter: char, exp: i64) -> fmt::Result {
    if exp == 1 {
        write!(f, "{letter}")
    } else {
        write!(f, "{letter}^{{{exp}}}")
    }
}

/// `⊕_k [v_z(k)·u_x(k) − v_x(k)·u_z(k)]`, exact when `context` is the integers.
pub fn symplectic_product(u: &[i64], v: &[i64], context: Context) -> Result<i64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { expected: u.len(), found: v.len() });
    }
    if !u.len().is_multiple_of(2) {
        return Err(Error::MalformedVector(format!("odd length {}", u.len())));
    }
    let n = u.len() / 2;
    let mut acc: i128 = 0;
    for k in 0..n {
        acc += v[n + k] as i128 * u[k] as i128 - v[k] as i128 * u[n + k] as i128;
    }
    Ok(match context {
        Context::Modular(q) => acc.rem_euclid(q as i128) as i64,
        Context::Integers => i64::try_from(acc)
            .map_err(|_| Error::Parameter("symplectic product overflows i64".into()))?,
    })
}

/// An `m × 2n` matrix of generator rows in φ layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    n: usize,
    context: Context,
    rows: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn new(n: usize, rows: Vec<Vec<i64>>, context: Context) -> Result<Self> {
        context.validate()?;
        let rows = rows
            .into_iter()
            .map(|row| {
                if row.len() != 2 * n {
                    return Err(Error::LengthMismatch { expected: 2 * n, found: row.len() });
                }
                Ok(row.into_iter().map(|v| context.reduce(v)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n, context, rows })
    }

    pub fn from_words(words: &[PauliWord]) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::Parameter("cannot infer n from an empty word list".into()))?;
        let (n, context) = (first.n(), first.context());
        for w in words {
            if w.n() != n {
                return Err(Error::LengthMismatch { expected: n, found: w.n() });
            }
            if w.context() != context {
                return Err(Error::Parameter("words have mixed contexts".into()));
            }
        }
        Self::new(n, words.iter().map(PauliWord::phi_encode).collect(), context)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    pub fn word(&self, i: usize) -> PauliWord {
        let n = self.n;
        let row = &self.rows[i];
        PauliWord {
            sites: (0..n).map(|k| (row[k], row[n + k])).collect(),
            context: self.context,
        }
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<Vec<i64>> {
        &mut self.rows
    }

    /// Reinterprets stored entries verbatim as integers.
    pub fn lift(&self) -> Tableau {
        Tableau { n: self.n, context: Context::Integers, rows: self.rows.clone() }
    }

    /// Reduces every entry modulo `p`.
    pub fn reduce(&self, p: u64) -> Result<Tableau> {
        Tableau::new(self.n, self.rows.clone(), Context::Modular(p))
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.rows
            .iter()
            .flatten()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        for row in &self.rows {
            let (x, z) = row.split_at(self.n);
            let fmt_half = |half: &[i64]| {
                half.iter()
                    .map(|v| format!("{v:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(f, "{} | {}", fmt_half(x), fmt_half(z))?;
        }
        Ok(())
    }
}

/// Pairwise symplectic products of the rows, taken over the integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        let m = entries.len();
        for row in &entries {
            if row.len() != m {
                return Err(Error::LengthMismatch { expected: m, found: row.len() });
            }
        }
        Ok(Self { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v == 0)
    }

    pub fn max_abs(&self) -> u64 {
        self.entries.iter().flatten().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn check_antisymmetric(&self) -> Result<()> {
        for i in 0..self.size() {
            for j in 0..=i {
                if self.entries[i][j] != -self.entries[j][i] {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(())
    }
}

/// Gram matrix of a tableau; modular entries are lifted verbatim as residues.
pub fn gram(t: &Tableau) -> GramMatrix {
    let rows = t.rows();
    let entries = rows
        .iter()
        .map(|u| {
            rows.iter()
                .map(|v| symplectic_product(u, v, Context::Integers).expect("rows share a length"))
                .collect()
        })
        .collect();
    GramMatrix { entries }
}
