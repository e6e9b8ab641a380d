use serde::{Deserialize, Serialize};

use crate::linalg::RowEchelon;
use crate::symplectic::{symplectic_product, Context, Tableau};
use crate::{Error, Result};

/// A validated stabilizer code `[[n, k, d]]_q`: `n − k` independent,
/// pairwise commuting generators over `ℤ_q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerCode {
    tableau: Tableau,
    k: usize,
    d: Option<usize>,
}

impl StabilizerCode {
    pub fn new(tableau: Tableau, k: usize, d: Option<usize>) -> Result<Self> {
        let q = tableau.context().modulus().ok_or_else(|| {
            Error::Parameter("a stabilizer code is declared over a prime local-dimension".into())
        })?;
        let n = tableau.n();
        if n == 0 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        if k > n || tableau.num_rows() != n - k {
            return Err(Error::GeneratorCount {
                n,
                k,
                expected: n.saturating_sub(k),
                found: tableau.num_rows(),
            });
        }
        let rows = tableau.rows();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let product = symplectic_product(&rows[i], &rows[j], Context::Integers)?;
                if product.rem_euclid(q as i64) != 0 {
                    return Err(Error::NonCommuting { i: i + 1, j: j + 1, product });
                }
            }
        }
        let mut echelon = RowEchelon::new(2 * n, q)?;
        for (i, row) in rows.iter().enumerate() {
            if !echelon.insert(row) {
                return Err(Error::DependentRow { row: i + 1 });
            }
        }
        Ok(Self { tableau, k, d })
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tableau
    }

    pub fn n(&self) -> usize {
        self.tableau.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.tableau.context().modulus().expect("validated as modular")
    }

    pub fn d(&self) -> Option<usize> {
        self.d
    }

    pub fn num_generators(&self) -> usize {
        self.tableau.num_rows()
    }
}
