//! Distance verification of an integer generator tableau read modulo a prime.
//!
//! For a register subset `T` the errors supported inside `T` that commute
//! with every generator form the null space of the column-restricted syndrome
//! matrix, and the stabilizer elements supported inside `T` form a subspace of
//! it. A logical error lives on `T` exactly when the first dimension exceeds
//! the second, so the search compares ranks per support and never enumerates
//! field elements. That keeps large primes as cheap as small ones.

use std::fmt;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{kernel_mod, left_kernel_mod, rank_mod, RowEchelon};
use crate::primes::{check_prime, mod_reduce};
use crate::symplectic::{symplectic_product, Context, PauliWord, Tableau};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    /// Integer syndrome is exactly zero: undetectable at every local-dimension.
    Unavoidable,
    /// Some integer syndrome entry is a nonzero multiple of the prime.
    Artifact,
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorClass::Unavoidable => "unavoidable",
            ErrorClass::Artifact => "artifact",
        })
    }
}

/// Either an exact weight or a lower bound `> searched`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightBound {
    Exact(usize),
    Above(usize),
}

impl WeightBound {
    pub fn exact(self) -> Option<usize> {
        match self {
            WeightBound::Exact(w) => Some(w),
            WeightBound::Above(_) => None,
        }
    }

    /// Whether the true value is known to be at least `d`.
    pub fn at_least(self, d: usize) -> Option<bool> {
        match self {
            WeightBound::Exact(w) => Some(w >= d),
            WeightBound::Above(w) if w + 1 >= d => Some(true),
            WeightBound::Above(_) => None,
        }
    }
}

impl fmt::Display for WeightBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightBound::Exact(w) => write!(f, "{w}"),
            WeightBound::Above(w) => write!(f, ">{w}"),
        }
    }
}

impl Serialize for WeightBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            WeightBound::Exact(w) => s.serialize_u64(*w as u64),
            WeightBound::Above(_) => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for WeightBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Exact(usize),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Exact(w) => Ok(WeightBound::Exact(w)),
            Raw::Text(s) => s
                .strip_prefix('>')
                .and_then(|v| v.parse().ok())
                .map(WeightBound::Above)
                .ok_or_else(|| serde::de::Error::custom(format!("bad weight bound {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorWitness {
    pub word: PauliWord,
    pub weight: usize,
    /// Products over ℤ of each generator with the balanced lift of `word`.
    pub syndrome_int: Vec<i64>,
    pub syndrome_mod: Vec<i64>,
    pub classification: ErrorClass,
    pub in_group: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub prime: u64,
    pub max_weight_searched: usize,
    pub distance: WeightBound,
    pub witness: Option<ErrorWitness>,
    pub degenerate: bool,
    pub min_stabilizer_weight: WeightBound,
    /// Wall-clock time; kept out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub timing_ms: u128,
}

/// Integer syndrome of `e` against every row, and its reduction mod `p`.
pub fn syndrome(t: &Tableau, e: &[i64], p: u64) -> Result<(Vec<i64>, Vec<i64>)> {
    let width = 2 * t.n();
    if e.len() != width {
        return Err(Error::LengthMismatch { expected: width, found: e.len() });
    }
    let int = t
        .rows()
        .iter()
        .map(|row| symplectic_product(row, e, Context::Integers))
        .collect::<Result<Vec<_>>>()?;
    let reduced = int.iter().map(|&s| mod_reduce(s, p)).collect();
    Ok((int, reduced))
}

pub fn classify(syndrome_int: &[i64], p: u64) -> Result<ErrorClass> {
    if syndrome_int.iter().any(|&s| mod_reduce(s, p) != 0) {
        return Err(Error::Detectable { p });
    }
    Ok(if syndrome_int.iter().all(|&s| s == 0) {
        ErrorClass::Unavoidable
    } else {
        ErrorClass::Artifact
    })
}

/// Residues in `(−p/2, p/2]`.
pub fn balanced_lift(v: &[i64], p: u64) -> Vec<i64> {
    let p = p as i64;
    v.iter()
        .map(|&a| {
            let r = a.rem_euclid(p);
            if r > p / 2 {
                r - p
            } else {
                r
            }
        })
        .collect()
}

/// Precomputed per-prime data for support queries.
struct SupportAnalyzer<'a> {
    t: &'a Tableau,
    p: u64,
    rows: Vec<Vec<i64>>,
    rank: usize,
}

impl<'a> SupportAnalyzer<'a> {
    fn new(t: &'a Tableau, p: u64) -> Result<Self> {
        check_prime(p)?;
        let rows: Vec<Vec<i64>> = t
            .rows()
            .iter()
            .map(|r| r.iter().map(|&v| mod_reduce(v, p)).collect())
            .collect();
        let rank = rank_mod(&rows, p)?;
        Ok(Self { t, p, rows, rank })
    }

    fn n(&self) -> usize {
        self.t.n()
    }

    /// Syndrome coefficients on `T`: columns `x_T` then `z_T`.
    fn restricted_syndrome_matrix(&self, support: &[usize]) -> Vec<Vec<i64>> {
        let n = self.n();
        self.rows
            .iter()
            .map(|row| {
                support
                    .iter()
                    .map(|&k| mod_reduce(-row[n + k], self.p))
                    .chain(support.iter().map(|&k| row[k]))
                    .collect()
            })
            .collect()
    }

    fn outside_columns(&self, support: &[usize]) -> Vec<usize> {
        let n = self.n();
        let outside: Vec<usize> = (0..n).filter(|k| !support.contains(k)).collect();
        outside.iter().copied().chain(outside.iter().map(|&k| n + k)).collect()
    }

    fn restrict(&self, cols: &[usize]) -> Vec<Vec<i64>> {
        self.rows.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect()
    }

    fn dims(&self, support: &[usize]) -> (usize, usize) {
        let m = self.rows.len();
        let w = support.len();
        let kernel_dim = if m == 0 {
            2 * w
        } else {
            2 * w - rank_mod(&self.restricted_syndrome_matrix(support), self.p).expect("prime checked")
        };
        let outside = self.outside_columns(support);
        let out_rank = if m == 0 || outside.is_empty() {
            0
        } else {
            rank_mod(&self.restrict(&outside), self.p).expect("prime checked")
        };
        (kernel_dim, self.rank - out_rank)
    }

    /// First kernel basis vector outside the group subspace, as a full
    /// `2n` vector.
    fn witness(&self, support: &[usize]) -> Option<Vec<i64>> {
        let n = self.n();
        let w = support.len();
        let kernel = if self.rows.is_empty() {
            (0..2 * w)
                .map(|i| (0..2 * w).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            kernel_mod(&self.restricted_syndrome_matrix(support), 2 * w, self.p).ok()?
        };
        let mut group = RowEchelon::new(2 * w, self.p).ok()?;
        let outside = self.outside_columns(support);
        if !self.rows.is_empty() {
            let coeffs = if outside.is_empty() {
                (0..self.rows.len())
                    .map(|i| (0..self.rows.len()).map(|j| i64::from(i == j)).collect())
                    .collect()
            } else {
                left_kernel_mod(&self.restrict(&outside), outside.len(), self.p).ok()?
            };
            for c in coeffs {
                let element: Vec<i64> = support
                    .iter()
                    .copied()
                    .chain(support.iter().map(|&k| n + k))
                    .map(|col| {
                        let s: i128 = self.rows.iter().zip(&c).map(|(r, &ci)| r[col] as i128 * ci as i128).sum();
                        s.rem_euclid(self.p as i128) as i64
                    })
                    .collect();
                group.insert(&element);
            }
        }
        let local = kernel.into_iter().find(|v| !group.contains(v))?;
        let mut full = vec![0; 2 * n];
        for (i, &k) in support.iter().enumerate() {
            full[k] = local[i];
            full[n + k] = local[w + i];
        }
        Some(full)
    }
}

/// `(kernel_dim, group_dim)` for errors supported within `support`.
pub fn support_logical_dims(t: &Tableau, p: u64, support: &[usize]) -> Result<(usize, usize)> {
    if support.is_empty() {
        return Err(Error::Parameter("support must contain at least one register".into()));
    }
    if let Some(&bad) = support.iter().find(|&&k| k >= t.n()) {
        return Err(Error::IndexOutOfRange { index: bad + 1, limit: t.n() });
    }
    let analyzer = SupportAnalyzer::new(t, p)?;
    let support: Vec<usize> = support.iter().copied().sorted().dedup().collect();
    Ok(analyzer.dims(&support))
}

fn build_witness(t: &Tableau, e: &[i64], p: u64) -> Result<ErrorWitness> {
    let lifted = balanced_lift(e, p);
    let (syndrome_int, syndrome_mod) = syndrome(t, &lifted, p)?;
    let classification = classify(&syndrome_int, p)?;
    let word = PauliWord::phi_decode(e, p)?;
    Ok(ErrorWitness {
        weight: word.weight(),
        word,
        syndrome_int,
        syndrome_mod,
        classification,
        in_group: false,
    })
}

fn check_weight(t: &Tableau, w_max: usize) -> Result<()> {
    if w_max > t.n() {
        return Err(Error::Parameter(format!("w_max = {w_max} exceeds n = {}", t.n())));
    }
    Ok(())
}

fn is_degenerate(distance: WeightBound, min_stab: WeightBound) -> bool {
    match (min_stab, distance) {
        (WeightBound::Exact(s), WeightBound::Exact(d)) => s < d,
        (WeightBound::Exact(_), WeightBound::Above(_)) => true,
        (WeightBound::Above(_), _) => false,
    }
}

/// Smallest weight `≤ w_max` of an undetectable error outside the stabilizer
/// group, over `ℤ_p`, found by per-support rank comparison.
pub fn distance_search(t: &Tableau, p: u64, w_max: usize) -> Result<DistanceReport> {
    let started = Instant::now();
    check_weight(t, w_max)?;
    let analyzer = SupportAnalyzer::new(t, p)?;
    let n = t.n();
    let mut distance = None;
    let mut min_stab = None;
    let mut witness = None;

    for w in 1..=w_max {
        if distance.is_some() && min_stab.is_some() {
            break;
        }
        let supports: Vec<Vec<usize>> = (0..n).combinations(w).collect();
        let dims: Vec<(usize, usize)> = supports.par_iter().map(|s| analyzer.dims(s)).collect();
        if min_stab.is_none() && dims.iter().any(|&(_, g)| g > 0) {
            min_stab = Some(w);
        }
        if distance.is_none() {
            let found = supports
                .iter()
                .zip(&dims)
                .filter(|(_, &(k, g))| k > g)
                .find_map(|(s, _)| analyzer.witness(s).filter(|e| weight_of(e, n) == w));
            if let Some(e) = found {
                distance = Some(w);
                witness = Some(build_witness(t, &e, p)?);
            }
        }
    }

    let distance = distance.map_or(WeightBound::Above(w_max), WeightBound::Exact);
    let min_stabilizer_weight = min_stab.map_or(WeightBound::Above(w_max), WeightBound::Exact);
    Ok(DistanceReport {
        prime: p,
        max_weight_searched: w_max,
        distance,
        witness,
        degenerate: is_degenerate(distance, min_stabilizer_weight),
        min_stabilizer_weight,
        timing_ms: started.elapsed().as_millis(),
    })
}

fn weight_of(e: &[i64], n: usize) -> usize {
    (0..n).filter(|&k| e[k] != 0 || e[n + k] != 0).count()
}

pub const DEFAULT_ORACLE_BUDGET: u128 = 50_000_000;

/// Brute-force reference for [`distance_search`]: enumerates every error of
/// weight `≤ w_max` over `ℤ_p`.
pub fn enumeration_oracle(t: &Tableau, p: u64, w_max: usize, budget: u128) -> Result<DistanceReport> {
    let started = Instant::now();
    check_weight(t, w_max)?;
    check_prime(p)?;
    let n = t.n();
    let per_site = (p as u128) * (p as u128) - 1;
    let mut needed: u128 = 0;
    for w in 1..=w_max {
        let supports = (0..n).combinations(w).count() as u128;
        needed = needed.saturating_add(supports.saturating_mul(per_site.saturating_pow(w as u32)));
    }
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let mut group = RowEchelon::new(2 * n, p)?;
    for row in t.rows() {
        group.insert(row);
    }
    let mut distance = None;
    let mut min_stab = None;
    let mut witness = None;
    let site_values: Vec<(i64, i64)> = (0..p as i64)
        .cartesian_product(0..p as i64)
        .filter(|&(x, z)| x != 0 || z != 0)
        .collect();

    'weights: for w in 1..=w_max {
        for support in (0..n).combinations(w) {
            for choice in (0..w).map(|_| site_values.iter()).multi_cartesian_product() {
                let mut e = vec![0i64; 2 * n];
                for (&k, &&(x, z)) in support.iter().zip(&choice) {
                    e[k] = x;
                    e[n + k] = z;
                }
                let (_, reduced) = syndrome(t, &e, p)?;
                if reduced.iter().any(|&s| s != 0) {
                    continue;
                }
                if group.contains(&e) {
                    min_stab.get_or_insert(w);
                } else if distance.is_none() {
                    distance = Some(w);
                    witness = Some(build_witness(t, &e, p)?);
                }
                if distance.is_some() && min_stab.is_some() {
                    break 'weights;
                }
            }
        }
    }

    let distance = distance.map_or(WeightBound::Above(w_max), WeightBound::Exact);
    let min_stabilizer_weight = min_stab.map_or(WeightBound::Above(w_max), WeightBound::Exact);
    Ok(DistanceReport {
        prime: p,
        max_weight_searched: w_max,
        distance,
        witness,
        degenerate: is_degenerate(distance, min_stabilizer_weight),
        min_stabilizer_weight,
        timing_ms: started.elapsed().as_millis(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Preserved,
    Violated,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub prime: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub declared_d: Option<usize>,
    pub reports: Vec<DistanceReport>,
    pub summary: Vec<ScanEntry>,
}

/// One independent [`distance_search`] per prime, with a verdict against
/// the declared distance when one is known.
pub fn scan_primes(t: &Tableau, primes: &[u64], w_max: usize, declared_d: Option<usize>) -> Result<ScanReport> {
    for &p in primes {
        check_prime(p)?;
    }
    let reports = primes
        .par_iter()
        .map(|&p| distance_search(t, p, w_max))
        .collect::<Result<Vec<_>>>()?;
    let summary = reports
        .iter()
        .map(|r| ScanEntry {
            prime: r.prime,
            verdict: match declared_d.and_then(|d| r.distance.at_least(d)) {
                Some(true) => Verdict::Preserved,
                Some(false) => Verdict::Violated,
                None => Verdict::Undetermined,
            },
        })
        .collect();
    Ok(ScanReport { declared_d, reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&[0, 0, 0, 0, 0], 7).unwrap(), ErrorClass::Unavoidable);
        // Single register, generator (1 | 3).
        let t = Tableau::new(1, vec![vec![1, 3]], Context::Integers).unwrap();
        let (z1, _) = syndrome(&t, &[0, 1], 3).unwrap();
        assert_eq!(z1, vec![1]);
        let (x1, x1_mod) = syndrome(&t, &[1, 0], 3).unwrap();
        assert_eq!((x1.clone(), x1_mod), (vec![-3], vec![0]));
        assert_eq!(classify(&x1, 3).unwrap(), ErrorClass::Artifact);
        let (_, at5) = syndrome(&t, &[1, 0], 5).unwrap();
        assert_eq!(at5, vec![2]);
        assert_eq!(classify(&x1, 5), Err(Error::Detectable { p: 5 }));
    }

    #[test]
    fn syndrome_dimension_mismatch() {
        let t = Tableau::new(2, vec![vec![1, 0, 0, 1]], Context::Integers).unwrap();
        assert!(matches!(syndrome(&t, &[1, 0], 2), Err(Error::LengthMismatch { .. })));
        assert_eq!(syndrome(&t, &[0; 4], 2).unwrap(), (vec![0], vec![0]));
    }

    #[test]
    fn weight_bound_serialization() {
        assert_eq!(serde_json::to_string(&WeightBound::Exact(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&WeightBound::Above(2)).unwrap(), "\">2\"");
        let back: WeightBound = serde_json::from_str("\">2\"").unwrap();
        assert_eq!(back, WeightBound::Above(2));
        assert!(serde_json::from_str::<WeightBound>("\"2\"").is_err());
    }

    #[test]
    fn no_generators_means_every_error_is_logical() {
        let t = Tableau::new(3, vec![], Context::Integers).unwrap();
        let r = distance_search(&t, 3, 2).unwrap();
        assert_eq!(r.distance, WeightBound::Exact(1));
        assert_eq!(r.min_stabilizer_weight, WeightBound::Above(2));
        assert_eq!(support_logical_dims(&t, 3, &[0, 2]).unwrap(), (4, 0));
    }

    #[test]
    fn argument_errors() {
        let t = Tableau::new(2, vec![vec![1, 0, 0, 1]], Context::Integers).unwrap();
        assert!(support_logical_dims(&t, 2, &[]).is_err());
        assert!(support_logical_dims(&t, 2, &[2]).is_err());
        assert_eq!(distance_search(&t, 4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(distance_search(&t, 2, 3).is_err());
        assert!(matches!(
            enumeration_oracle(&t, 2, 2, 10),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(scan_primes(&t, &[2, 9], 1, None).unwrap_err(), Error::NotPrime(9));
        assert!(scan_primes(&t, &[], 1, None).unwrap().reports.is_empty());
    }

    #[test]
    fn balanced_lift_is_centered() {
        assert_eq!(balanced_lift(&[0, 1, 2, 3, 4], 5), vec![0, 1, 2, -2, -1]);
        assert_eq!(balanced_lift(&[1, 0], 2), vec![1, 0]);
    }
}
