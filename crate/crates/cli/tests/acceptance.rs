//! Acceptance criteria, one line each. Tolerances are fixed below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use qldi_core::bounds::{
    bounds_report, hamming_check, p_d_star_terms, p_double_star, p_star_alternative,
    p_star_original, BoundsInput, Reading,
};
use qldi_core::distance::{
    distance_search, enumeration_oracle, scan_primes, WeightBound, DEFAULT_ORACLE_BUDGET,
};
use qldi_core::ldi::{analysis_form, is_ldi, ldi_transform, LVariant};
use qldi_core::linalg::{apply_script, in_rowspace, Op, OpScript};
use qldi_core::primes::next_prime_above;
use qldi_core::symplectic::symplectic_product;
use qldi_core::{Context, Tableau};
use serde_json::Value;

const CANON_LIMIT: Duration = Duration::from_secs(1);
const PROMISE_LIMIT: Duration = Duration::from_secs(5);
const SCAN_LIMIT: Duration = Duration::from_secs(30);
const MIN_CORPUS: usize = 50;
const P_DOUBLE_STAR_RANGE: (f64, f64) = (1.6462, 1.6463);

const REFERENCE_CANONICAL: [[i64; 12]; 5] = [
    [1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1],
    [0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
];

const REFERENCE_LDI: [[i64; 12]; 5] = [
    [1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1],
    [0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, -1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn qldi_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qldi"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("qldi {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn matrix(v: &Value) -> Result<Vec<Vec<i64>>, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

fn c1_canonical_replay() -> Outcome {
    let start = Instant::now();
    let code = common::six_qubit();
    let script = qldi_core::io::parse_script(include_str!("../../../fixtures/six_qubit_paper.script"))
        .map_err(|e| e.to_string())?;
    let t = apply_script(code.tableau(), &script).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(t.rows() == REFERENCE_CANONICAL.map(Vec::from).as_slice(), "library replay differs")?;
    let six = fixture("six_qubit.code");
    let script_path = fixture("six_qubit_paper.script");
    let json = qldi_json(&["replay", six.to_str().unwrap(), script_path.to_str().unwrap()])?;
    ensure(matrix(&json["tableau"])? == REFERENCE_CANONICAL.map(Vec::from), "cli replay differs")?;
    ensure(elapsed < CANON_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("60/60 entries match, {elapsed:?}"))
}

fn c2_ldi_form() -> Outcome {
    let six = fixture("six_qubit.code");
    let json = qldi_json(&["ldi", six.to_str().unwrap(), "--variant", "full"])?;
    ensure(matrix(&json["tableau"])? == REFERENCE_LDI.map(Vec::from), "tableau differs")?;
    ensure(json["tableau"][3][7] == -1, "missing -1 entry")?;
    ensure(json["b"] == 1, format!("B = {}", json["b"]))?;
    Ok("exact match, B = 1".into())
}

fn c3_degenerate_bound() -> Outcome {
    let (a, _) = p_d_star_terms(1, 3, 2, Reading::Decided);
    ensure(a == BigUint::from(4096u32), format!("term (a) = {a}"))?;
    let six = fixture("six_qubit.code");
    let json = qldi_json(&["bounds", six.to_str().unwrap()])?;
    ensure(json["p_d_star_term_a"] == "4096", "cli term (a)")?;
    ensure(json["first_safe_prime"] == "4099", format!("first safe prime {}", json["first_safe_prime"]))?;
    ensure(next_prime_above(&BigUint::from(4096u32)) == BigUint::from(4099u32), "next prime")?;
    Ok(format!("term (a) = 4096, p_D* = {}, first safe prime = 4099", json["p_d_star"]))
}

fn c4_two_qubit() -> Outcome {
    let xx = [1, 1, 0, 0];
    let zz = [0, 0, 1, 1];
    let product = symplectic_product(&xx, &zz, Context::Integers).map_err(|e| e.to_string())?;
    ensure(product == 2, format!("product {product}"))?;
    let fixed = Tableau::new(2, vec![vec![1, -1, 0, 0], zz.to_vec()], Context::Integers)
        .map_err(|e| e.to_string())?;
    ensure(is_ldi(&fixed), "X⊗X⁻¹, Z⊗Z not LDI")?;
    Ok(format!("product = {product}, corrected pair is LDI"))
}

fn c5_promise_above_cutoff() -> Outcome {
    let ldi = ldi_transform(&common::six_qubit(), LVariant::Full).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = distance_search(&ldi.tableau, 4099, 2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.distance == WeightBound::Above(2), format!("distance {:?}", r.distance))?;
    ensure(elapsed < PROMISE_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("distance > 2 at p = 4099, {elapsed:?}"))
}

fn c6_scan_below_cutoff() -> Outcome {
    let start = Instant::now();
    let six = ldi_transform(&common::six_qubit(), LVariant::Full).map_err(|e| e.to_string())?;
    let scan = scan_primes(&six.tableau, &[3, 5, 7, 11, 13], 3, Some(3)).map_err(|e| e.to_string())?;
    for r in &scan.reports {
        ensure(
            r.distance == WeightBound::Exact(3) && r.degenerate,
            format!("six-qubit p={}: {:?}, degenerate {}", r.prime, r.distance, r.degenerate),
        )?;
    }
    let five = analysis_form(&common::five_qubit()).map_err(|e| e.to_string())?;
    let scan = scan_primes(&five.tableau, &[2, 3, 5], 3, Some(3)).map_err(|e| e.to_string())?;
    for r in &scan.reports {
        ensure(
            r.distance == WeightBound::Exact(3) && !r.degenerate,
            format!("five-qubit p={}: {:?}, degenerate {}", r.prime, r.distance, r.degenerate),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SCAN_LIMIT, format!("took {elapsed:?}"))?;
    Ok(format!("8 prime scans agree, {elapsed:?}"))
}

fn c7_oracle_equivalence() -> Outcome {
    let corpus = common::corpus();
    ensure(corpus.len() >= MIN_CORPUS, "corpus too small")?;
    let mut disagreements = Vec::new();
    for (idx, code) in corpus.iter().enumerate() {
        let ldi = ldi_transform(code, LVariant::Full).map_err(|e| e.to_string())?;
        let w_max = 3.min(code.n());
        for p in [2u64, 3] {
            let fast = distance_search(&ldi.tableau, p, w_max).map_err(|e| e.to_string())?;
            let slow = enumeration_oracle(&ldi.tableau, p, w_max, DEFAULT_ORACLE_BUDGET).map_err(|e| e.to_string())?;
            if fast.distance != slow.distance
                || fast.degenerate != slow.degenerate
                || fast.min_stabilizer_weight != slow.min_stabilizer_weight
            {
                disagreements.push(format!("#{idx}@{p}"));
            }
        }
    }
    ensure(disagreements.is_empty(), format!("disagreements: {}", disagreements.join(", ")))?;
    Ok(format!("{} codes x 2 primes, 0 disagreements", corpus.len()))
}

fn c8_ldi_properties() -> Outcome {
    let corpus = common::corpus();
    let mut violations = Vec::new();
    for (idx, code) in corpus.iter().enumerate() {
        let q = code.q();
        for variant in LVariant::ALL {
            let ldi = ldi_transform(code, variant).map_err(|e| e.to_string())?;
            if !is_ldi(&ldi.tableau) {
                violations.push(format!("#{idx} {variant}: not LDI"));
            }
            let moves = OpScript(
                ldi.canonical
                    .script
                    .ops()
                    .iter()
                    .filter(|op| matches!(op, Op::RegisterSwap(..) | Op::HadamardSwap(_)))
                    .cloned()
                    .collect(),
            );
            let source = apply_script(code.tableau(), &moves).map_err(|e| e.to_string())?;
            let reduced = ldi.at_prime(q).map_err(|e| e.to_string())?;
            let same = (0..code.num_generators()).all(|i| {
                in_rowspace(reduced.row(i), &source, q).ok().flatten().is_some()
                    && in_rowspace(source.row(i), &reduced, q).ok().flatten().is_some()
            });
            if !same {
                violations.push(format!("#{idx} {variant}: group changed"));
            }
            if variant == LVariant::MinusOnly {
                let limit = (1 + code.k() as u64 * (q - 1)) * (q - 1);
                if ldi.b > limit {
                    violations.push(format!("#{idx}: B = {} > {limit}", ldi.b));
                }
            }
        }
    }
    ensure(violations.is_empty(), violations.join("; "))?;
    Ok(format!("{} codes x 3 variants, 0 violations", corpus.len()))
}

fn c9_bound_formulas() -> Outcome {
    ensure(p_star_alternative(1, 3, 2) == BigUint::from(100u32), "p*_alt(1,3,2) != 100")?;
    let mut checked = 0;
    for b in 0..=10u64 {
        for d in 1..=6u64 {
            let reduced = reduced_q2(b, d);
            ensure(p_star_alternative(b, d, 2) == reduced, format!("q=2 mismatch at B={b} d={d}"))?;
            checked += 1;
        }
    }
    for q in [2u64, 3, 5] {
        for d in 2..=6u64 {
            for b in 1..=8u64 {
                ensure(p_star_original(b, d) <= p_star_original(b + 1, d), "original not monotone in B")?;
                ensure(p_star_original(b, d) <= p_star_original(b, d + 1), "original not monotone in d")?;
                ensure(p_star_alternative(b, d, q) <= p_star_alternative(b + 1, d, q), "alternative not monotone in B")?;
                ensure(p_star_alternative(b, d, q) <= p_star_alternative(b, d + 1, q), "alternative not monotone in d")?;
                let r = bounds_report(BoundsInput { b, q, n: 2 * d + 3, k: 1, d, degenerate: false }, Reading::Decided);
                let min = p_star_original(b, d).min(p_star_alternative(b, d, q));
                ensure(r.p_star_effective == min, "effective is not the minimum")?;
            }
        }
    }
    Ok(format!("{checked} q=2 grid points, monotone, minimum exact"))
}

/// Independent evaluation of `(B(d−1)(1 + (d−1)²(d−2)^{(d−2)/2}))^{d−1}` by
/// rational enclosure of the square root.
fn reduced_q2(b: u64, d: u64) -> BigUint {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Pow};
    let e = d.saturating_sub(1);
    if e == 0 {
        return BigUint::one();
    }
    let eval = |s: &BigRational| -> BigInt {
        let inner = BigRational::one() + BigRational::from_integer(BigInt::from(e * e)) * s;
        Pow::pow(BigRational::from_integer(BigInt::from(b * e)) * inner, e as u32).ceil().to_integer()
    };
    let m = d - 2;
    if m == 0 || m.is_multiple_of(2) {
        let s = BigRational::from_integer(Pow::pow(BigInt::from(m.max(1)), (m / 2) as u32));
        return eval(&s).to_biguint().unwrap();
    }
    let whole = BigRational::from_integer(Pow::pow(BigInt::from(m), ((m - 1) / 2) as u32));
    let scale = Pow::pow(BigInt::from(10), 80u32);
    let radicand = BigInt::from(m) * &scale * &scale;
    let root = radicand.sqrt();
    if &root * &root == radicand {
        return eval(&(BigRational::new(root, scale) * &whole)).to_biguint().unwrap();
    }
    let lo = eval(&(BigRational::new(root.clone(), scale.clone()) * &whole));
    let hi = eval(&(BigRational::new(root + 1, scale) * &whole));
    assert_eq!(lo, hi, "enclosure too wide");
    lo.to_biguint().unwrap()
}

fn c10_hamming_gating() -> Outcome {
    let h = hamming_check(5, 1, 3, 2);
    ensure(h.holds && h.lhs == h.rhs && h.lhs == BigUint::from(32u32), format!("{} vs {}", h.lhs, h.rhs))?;
    let pds = p_double_star(5, 1, 3).map_err(|e| e.to_string())?.to_f64();
    ensure(
        (P_DOUBLE_STAR_RANGE.0..=P_DOUBLE_STAR_RANGE.1).contains(&pds),
        format!("p** = {pds}"),
    )?;
    let six = fixture("six_qubit.code");
    let json = qldi_json(&["bounds", six.to_str().unwrap()])?;
    ensure(json["degenerate"] == true, "six-qubit not reported degenerate")?;
    ensure(json["p_double_star"].is_null() && json["hamming_applicable"] == false, "p** not suppressed")?;
    Ok(format!("32 = 32, p** = {pds:.10}, suppressed for six-qubit"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("canonical form replay", c1_canonical_replay),
        ("LDI form of six-qubit code", c2_ldi_form),
        ("degenerate cutoff", c3_degenerate_bound),
        ("two-qubit demonstration", c4_two_qubit),
        ("distance promise above cutoff", c5_promise_above_cutoff),
        ("distance scan below cutoff", c6_scan_below_cutoff),
        ("oracle equivalence", c7_oracle_equivalence),
        ("LDI property suite", c8_ldi_properties),
        ("bound formula suite", c9_bound_formulas),
        ("Hamming and p** gating", c10_hamming_gating),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
