#![allow(dead_code)]

use qldi_core::io::parse_code;
use qldi_core::distance::{enumeration_oracle, DEFAULT_ORACLE_BUDGET};
use qldi_core::linalg::{apply_op, kernel_mod, Op, RowEchelon};
use qldi_core::{Context, StabilizerCode, Tableau};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x05ee_d1d1;
pub const CORPUS_SIZE: usize = 60;

pub fn six_qubit() -> StabilizerCode {
    parse_code(include_str!("../../../../fixtures/six_qubit.code")).unwrap()
}

pub fn five_qubit() -> StabilizerCode {
    parse_code(include_str!("../../../../fixtures/five_qubit.code")).unwrap()
}

/// Draws `n − k` independent, mutually commuting generators by sampling each
/// new row from the symplectic complement of the rows chosen so far.
pub fn random_code(rng: &mut impl Rng, n: usize, k: usize, q: u64) -> Option<StabilizerCode> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut echelon = RowEchelon::new(2 * n, q).unwrap();
    let mut attempts = 0;
    while rows.len() < n - k {
        attempts += 1;
        if attempts > 200 {
            return None;
        }
        // v ⊙ r = Σ r_z·v_x − r_x·v_z must vanish for every chosen r.
        let constraints: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                let (x, z) = r.split_at(n);
                z.iter().copied().chain(x.iter().map(|&v| -v)).collect()
            })
            .collect();
        let basis = if constraints.is_empty() {
            (0..2 * n)
                .map(|i| (0..2 * n).map(|j| i64::from(i == j)).collect())
                .collect()
        } else {
            kernel_mod(&constraints, 2 * n, q).unwrap()
        };
        let mut v = vec![0i64; 2 * n];
        for b in &basis {
            let c = rng.gen_range(0..q as i64);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = (*vi + c * bi).rem_euclid(q as i64);
            }
        }
        // Symplectic complement contains the rows themselves; skip those.
        if echelon.insert(&v) {
            rows.push(v);
        }
    }
    let t = Tableau::new(n, rows, Context::Modular(q)).unwrap();
    StabilizerCode::new(t, k, None).ok()
}

/// The `[[5,1,3]]_q` code generated by cyclic shifts of `X Z Z⁻¹ X⁻¹ I`.
pub fn five_register_code(q: u64) -> StabilizerCode {
    let m = q as i64 - 1;
    let x = [1, 0, 0, m, 0];
    let z = [0, 1, m, 0, 0];
    let rows = (0..4)
        .map(|s| {
            let shift = |v: [i64; 5]| (0..5).map(move |i| v[(i + 5 - s) % 5]);
            shift(x).chain(shift(z)).collect()
        })
        .collect();
    let t = Tableau::new(5, rows, Context::Modular(q)).unwrap();
    StabilizerCode::new(t, 1, Some(3)).unwrap()
}

/// Random row combinations, row scalings, Hadamards and register swaps;
/// the result is an equivalent code with the same parameters.
pub fn scramble(rng: &mut impl Rng, code: &StabilizerCode) -> StabilizerCode {
    let q = code.q() as i64;
    let n = code.n();
    let m = code.num_generators();
    let mut t = code.tableau().clone();
    for _ in 0..12 {
        let op = match rng.gen_range(0..4) {
            0 if m > 1 => {
                let dst = rng.gen_range(0..m);
                let src = (dst + rng.gen_range(1..m)) % m;
                Op::RowAdd { dst, src, coeff: rng.gen_range(1..q) }
            }
            1 if m > 0 => Op::RowScale { row: rng.gen_range(0..m), coeff: rng.gen_range(1..q) },
            2 => Op::HadamardSwap(rng.gen_range(0..n)),
            _ => Op::RegisterSwap(rng.gen_range(0..n), rng.gen_range(0..n)),
        };
        apply_op(&mut t, &op).unwrap();
    }
    StabilizerCode::new(t, code.k(), code.d()).unwrap()
}

/// Appends a register carrying its own weight-one generator `X`, which makes
/// any code of distance at least two degenerate.
pub fn pad_with_stabilizer(code: &StabilizerCode) -> StabilizerCode {
    let n = code.n();
    let mut rows: Vec<Vec<i64>> = code
        .tableau()
        .rows()
        .iter()
        .map(|r| {
            let (x, z) = r.split_at(n);
            x.iter().copied().chain([0]).chain(z.iter().copied()).chain([0]).collect()
        })
        .collect();
    let mut extra = vec![0; 2 * (n + 1)];
    extra[n] = 1;
    rows.push(extra);
    let t = Tableau::new(n + 1, rows, Context::Modular(code.q())).unwrap();
    StabilizerCode::new(t, code.k(), code.d()).unwrap()
}

fn distance_at_source(code: &StabilizerCode) -> Option<usize> {
    let w = 3.min(code.n());
    enumeration_oracle(&code.tableau().lift(), code.q(), w, DEFAULT_ORACLE_BUDGET)
        .unwrap()
        .distance
        .exact()
}

fn random_with(rng: &mut impl Rng, max_n: usize, accept: impl Fn(Option<usize>) -> bool) -> StabilizerCode {
    loop {
        let n = rng.gen_range(2..=max_n);
        let k = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(1..n) };
        let q = if rng.gen_bool(0.5) { 2 } else { 3 };
        if let Some(code) = random_code(rng, n, k, q) {
            if accept(distance_at_source(&code)) {
                return code;
            }
        }
    }
}

/// Deterministic corpus of valid codes with `n ≤ 5` over `q ∈ {2, 3}`,
/// balanced between distance one, distance two or more, distance-three
/// codes and degenerate codes.
pub fn corpus() -> Vec<StabilizerCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    for _ in 0..15 {
        out.push(random_with(&mut rng, 5, |d| d == Some(1)));
    }
    for _ in 0..15 {
        out.push(random_with(&mut rng, 5, |d| d != Some(1)));
    }
    for i in 0..10 {
        let base = five_register_code(if i % 2 == 0 { 2 } else { 3 });
        out.push(scramble(&mut rng, &base));
    }
    for _ in 0..10 {
        let base = random_with(&mut rng, 4, |d| d != Some(1));
        out.push(scramble(&mut rng, &pad_with_stabilizer(&base)));
    }
    while out.len() < CORPUS_SIZE {
        out.push(random_with(&mut rng, 5, |_| true));
    }
    out
}
