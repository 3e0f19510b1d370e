//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them on success).

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzyseq::domains::{self, DomainSpace, TransformKind, TransformMode, TransformedSequence};
use fuzzyseq::duals::{self, DualKind, MatrixClass};
use fuzzyseq::matrices::{toeplitz_audit, InfiniteMatrix};
use fuzzyseq::sequences::{self, FuzzySequence, SequenceTerms};
use fuzzyseq::{SpreadPair, Status, TriangularFuzzyNumber, TruncationPolicy};

fn report(criterion: u32, what: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    let ok = elapsed <= limit;
    println!(
        "criterion {criterion}: {} - {what} ({:.2}s, limit {:.0}s)",
        if ok { "pass" } else { "FAIL (over time budget)" },
        elapsed.as_secs_f64(),
        limit.as_secs_f64()
    );
    assert!(ok, "criterion {criterion} exceeded its time budget: {elapsed:?}");
}

fn crisp() -> SpreadPair {
    SpreadPair::crisp()
}

fn corpus20() -> Vec<FuzzySequence> {
    let fuzzy = SpreadPair::new(0.5, 1.5).unwrap();
    vec![
        FuzzySequence::zero(crisp()),
        FuzzySequence::zero(fuzzy),
        FuzzySequence::constant(crisp(), 1.0),
        FuzzySequence::constant(fuzzy, -2.0),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / k as f64),
        FuzzySequence::from_fn(fuzzy, |k| 1.0 / k as f64),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / ((k * k) as f64)),
        FuzzySequence::from_fn(crisp(), |k| 0.5f64.powi(k.min(900) as i32)),
        FuzzySequence::from_fn(crisp(), |k| (-0.5f64).powi(k.min(900) as i32)),
        FuzzySequence::from_fn(crisp(), |k| 3.0 + 1.0 / k as f64),
        FuzzySequence::from_fn(crisp(), |k| if k % 2 == 0 { 1.0 } else { -1.0 }),
        FuzzySequence::from_fn(crisp(), |k| (k as f64).sin()),
        FuzzySequence::from_fn(crisp(), |k| k as f64),
        FuzzySequence::from_fn(crisp(), |k| (k as f64).sqrt()),
        FuzzySequence::from_fn(crisp(), |k| (k as f64).ln().max(0.0)),
        FuzzySequence::explicit(crisp(), vec![5.0, -3.0, 2.0]),
        FuzzySequence::explicit(fuzzy, vec![1.0, 1.0, 1.0, 1.0]),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / (k as f64).powf(1.5)),
        FuzzySequence::from_fn(fuzzy, |k| (-1.0f64).powi((k % 2) as i32) / k as f64),
        FuzzySequence::from_fn(crisp(), |k| 10.0 / (1.0 + k as f64)),
    ]
}

#[test]
fn criterion_1_displayed_blocks() {
    let started = Instant::now();
    let expected: [(&str, [[&str; 4]; 4]); 4] = [
        (
            "omega",
            [
                ["1", "0", "0", "0"],
                ["1", "2", "0", "0"],
                ["1", "2", "3", "0"],
                ["1", "2", "3", "4"],
            ],
        ),
        (
            "gamma",
            [
                ["1", "0", "0", "0"],
                ["1", "1/2", "0", "0"],
                ["1", "1/2", "1/3", "0"],
                ["1", "1/2", "1/3", "1/4"],
            ],
        ),
        (
            "omega_inv",
            [
                ["1", "0", "0", "0"],
                ["-1/2", "1/2", "0", "0"],
                ["0", "-1/3", "1/3", "0"],
                ["0", "0", "-1/4", "1/4"],
            ],
        ),
        (
            "gamma_inv",
            [
                ["1", "0", "0", "0"],
                ["-2", "2", "0", "0"],
                ["0", "-3", "3", "0"],
                ["0", "0", "-4", "4"],
            ],
        ),
    ];
    for (name, block) in expected {
        let output = Command::new(env!("CARGO_BIN_EXE_fuzzyseq"))
            .args(["show", "--matrix", name, "--n", "4", "--mode", "rational", "--json"])
            .output()
            .expect("running the binary");
        assert!(output.status.success(), "show {name} failed");
        let report: serde_json::Value =
            serde_json::from_slice(&output.stdout).expect("JSON output");
        let got = report["block"].as_array().unwrap();
        for (i, row) in block.iter().enumerate() {
            let got_row: Vec<&str> =
                got[i].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
            assert_eq!(got_row, row.to_vec(), "{name} row {}", i + 1);
        }
    }
    report(1, "displayed 4x4 blocks reproduced in rational mode", started, Duration::from_secs(1));
}

#[test]
fn criterion_2_inverse_identities() {
    let started = Instant::now();
    let id = InfiniteMatrix::identity();
    let pairs = [
        (InfiniteMatrix::omega_inv().compose(&InfiniteMatrix::omega()), "omega_inv*omega"),
        (InfiniteMatrix::omega().compose(&InfiniteMatrix::omega_inv()), "omega*omega_inv"),
        (InfiniteMatrix::gamma_inv().compose(&InfiniteMatrix::gamma()), "gamma_inv*gamma"),
        (InfiniteMatrix::gamma().compose(&InfiniteMatrix::gamma_inv()), "gamma*gamma_inv"),
    ];
    for (product, name) in &pairs {
        assert!(product.block_equals(&id, 256), "{name} != identity at N=256");
    }
    report(2, "inverse identities exact on leading 256x256 blocks", started, Duration::from_secs(10));
}

#[test]
fn criterion_3_arithmetic_axioms() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x46555a5a);
    let tol = 1e-12;
    for _ in 0..10_000 {
        let t1: f64 = rng.gen_range(0.0..5.0);
        let t2: f64 = t1 + rng.gen_range(0.0..5.0);
        let spreads = SpreadPair::new(t1, t2).unwrap();
        let a: f64 = rng.gen_range(-1e3..1e3);
        let b: f64 = rng.gen_range(-1e3..1e3);
        let c: f64 = rng.gen_range(-1e3..1e3);
        let u = TriangularFuzzyNumber::new(a, spreads);
        let v = TriangularFuzzyNumber::new(b, spreads);
        let w = TriangularFuzzyNumber::new(c, spreads);

        assert_eq!(u.add(&v).unwrap(), v.add(&u).unwrap());
        let left = u.add(&v).unwrap().add(&w).unwrap();
        let right = u.add(&v.add(&w).unwrap()).unwrap();
        assert!((left.center() - right.center()).abs() <= tol);
        let theta = TriangularFuzzyNumber::zero(spreads);
        assert_eq!(u.add(&theta).unwrap(), u);
        assert_eq!(u.add(&u.neg()).unwrap(), theta);
        for op in [u.add(&v), u.sub(&v), u.mul(&v)] {
            assert_eq!(op.unwrap().spreads(), spreads);
        }

        let duv = u.metric(&v).unwrap();
        assert!((duv - v.metric(&u).unwrap()).abs() <= tol);
        let duw = u.metric(&w).unwrap();
        let dwv = w.metric(&v).unwrap();
        assert!(duv <= duw + dwv + tol);
    }
    report(3, "10^4 randomized arithmetic and metric axiom checks at 1e-12", started, Duration::from_secs(5));
}

#[test]
fn criterion_4_isometry() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    for (i, s) in corpus20().iter().enumerate() {
        for space_name in ["int-linf", "diff-linf"] {
            let space = DomainSpace::parse(space_name).unwrap();
            let (value, verdict) =
                domains::domain_norm(s, space, None, TransformMode::Abs, &policy).unwrap();
            let image = match space.transform {
                TransformKind::Omega => domains::phi(s),
                TransformKind::Gamma => domains::psi(s),
            };
            let zero = TransformedSequence::new(
                FuzzySequence::zero(s.spreads()),
                space.transform,
                TransformMode::Abs,
            );
            let (ivalue, iverdict) = sequences::sup_norm(&image, &zero, &policy).unwrap();
            assert_eq!(value, ivalue, "corpus[{i}] {space_name}: norm values differ");
            assert_eq!(
                verdict.evidence.ladder, iverdict.evidence.ladder,
                "corpus[{i}] {space_name}: ladders differ"
            );
        }
    }
    report(4, "domain norm equals sup norm of the isometry image, ladder for ladder", started, Duration::from_secs(5));
}

fn random_banded(rng: &mut ChaCha8Rng, rows: usize, band: usize) -> InfiniteMatrix {
    let rows: Vec<Vec<f64>> = (0..rows)
        .map(|n| {
            let width = (n + 1).min(band);
            (0..width).map(|_| rng.gen_range(-1.0..1.0)).collect()
        })
        .collect();
    InfiniteMatrix::explicit(rows)
}

#[test]
fn criterion_5_transfer_identities() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7472616e);
    use fuzzyseq::duals::TransferTheorem::*;
    for theorem in [OmegaSource, GammaSource, OmegaTarget, GammaTarget] {
        for trial in 0..100 {
            let m = random_banded(&mut rng, 32, 8);
            let len = rng.gen_range(1..=32);
            let centers: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = FuzzySequence::explicit(crisp(), centers);
            let n = rng.gen_range(1..=32);
            let report = duals::transfer_check(&m, theorem, &x, n).unwrap();
            assert!(
                report.max_abs_diff <= 1e-10,
                "{theorem:?} trial {trial}: max diff {}",
                report.max_abs_diff
            );
        }
    }
    report(5, "transfer identities within 1e-10 on 100 random pairs per theorem", started, Duration::from_secs(30));
}

/// The image of a sequence under a matrix, as a sequence (centers via row
/// dot products, spreads carried).
fn image(m: &InfiniteMatrix, s: &FuzzySequence) -> FuzzySequence {
    let m = m.clone();
    let s2 = s.clone();
    FuzzySequence::from_fn(s.spreads(), move |n| {
        (1..=m.row_support(n))
            .map(|k| m.entry_f64(n, k) * s2.center(k).unwrap_or(f64::NAN))
            .sum()
    })
}

fn space_samples(space: &str) -> Vec<FuzzySequence> {
    let mut v = vec![
        FuzzySequence::zero(crisp()),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / k as f64),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / ((k * k) as f64)),
        FuzzySequence::from_fn(crisp(), |k| 0.5f64.powi(k.min(900) as i32)),
        FuzzySequence::explicit(crisp(), vec![4.0, -1.0, 0.5]),
        FuzzySequence::from_fn(crisp(), |k| -2.0 / (k as f64).powf(1.5)),
    ];
    match space {
        "c0" => {
            v.push(FuzzySequence::from_fn(crisp(), |k| (-1.0f64).powi((k % 2) as i32) / k as f64));
            v.push(FuzzySequence::from_fn(crisp(), |k| 1.0 / (1.0 + (k as f64).ln())));
            v.push(FuzzySequence::from_fn(crisp(), |k| (k as f64).sin() / k as f64));
            v.push(FuzzySequence::from_fn(crisp(), |k| 1.0 / (k as f64).sqrt()));
        }
        "c" => {
            v.push(FuzzySequence::constant(crisp(), 1.0));
            v.push(FuzzySequence::from_fn(crisp(), |k| 2.0 + 1.0 / k as f64));
            v.push(FuzzySequence::constant(crisp(), -3.0));
            v.push(FuzzySequence::from_fn(crisp(), |k| 1.0 - 0.5f64.powi(k.min(900) as i32)));
        }
        "linf" => {
            v.push(FuzzySequence::constant(crisp(), 1.0));
            v.push(FuzzySequence::from_fn(crisp(), |k| if k % 2 == 0 { 1.0 } else { -1.0 }));
            v.push(FuzzySequence::from_fn(crisp(), |k| (k as f64).sin()));
            v.push(FuzzySequence::from_fn(crisp(), |k| 2.0 + (k as f64).cos()));
        }
        other => panic!("no samples for {other}"),
    }
    v
}

fn target_membership(s: &FuzzySequence, target: &str, policy: &TruncationPolicy) -> Status {
    match target {
        "linf" => sequences::in_linf(s, policy).unwrap().status,
        "c" => sequences::in_c(s, policy).unwrap().0.status,
        "c0" => sequences::in_c0(s, policy).unwrap().status,
        "l1" => sequences::in_lp(s, 1.0, policy).unwrap().status,
        other => panic!("no membership for {other}"),
    }
}

#[test]
fn criterion_6_class_checker_vs_oracle() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x636c6173);
    let matrices = vec![
        InfiniteMatrix::identity(),
        InfiniteMatrix::cesaro(),
        InfiniteMatrix::omega(),
        InfiniteMatrix::gamma(),
        InfiniteMatrix::zero(),
        random_banded(&mut rng, 64, 6),
    ];
    let classes = ["linf:linf", "c:linf", "c0:linf", "linf:c0", "c0:c", "c0:c0", "c:c", "c0:l1"];
    let mut findings = Vec::new();
    for m in &matrices {
        for class in classes {
            let cls = MatrixClass::parse(class).unwrap();
            let conditions = duals::check_class(m, cls, &policy).unwrap();
            let (from, to) = class.split_once(':').unwrap();
            let mut oracle = Status::Holds;
            for s in space_samples(from) {
                oracle = oracle.and(target_membership(&image(m, &s), to, &policy));
            }
            if oracle == Status::Fails && conditions.overall == Status::Holds {
                findings.push(format!("{} in ({class}): conditions Holds, oracle Fails", m.name()));
            }
        }
    }
    assert!(findings.is_empty(), "discrepancy findings: {findings:?}");
    report(6, "class checker never accepts a matrix the brute-force oracle rejects", started, Duration::from_secs(60));
}

#[test]
fn criterion_7_regularity_audit() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();

    let omega = toeplitz_audit(&InfiniteMatrix::omega(), &policy);
    assert_eq!(omega.regular, Status::Fails);
    assert_eq!(omega.sup_abs_verdict.status, Status::Fails);
    let witness = omega.sup_abs_verdict.evidence.witness.expect("divergence witness");
    assert_eq!(witness.value, (1024.0 * 1025.0) / 2.0, "omega row-sum growth n(n+1)/2");

    let gamma = toeplitz_audit(&InfiniteMatrix::gamma(), &policy);
    assert_eq!(gamma.regular, Status::Fails);
    assert_eq!(gamma.sup_abs_verdict.status, Status::Fails, "harmonic row-sum growth");

    for m in [InfiniteMatrix::identity(), InfiniteMatrix::cesaro()] {
        let audit = toeplitz_audit(&m, &policy);
        assert_eq!(audit.regular, Status::Holds, "{}", m.name());
    }
    report(7, "audit documents divergent row sums for the weight matrices, regularity for identity and Cesaro", started, Duration::from_secs(5));
}

#[test]
fn criterion_8_dual_cross_check() {
    let started = Instant::now();
    let policy = TruncationPolicy::default();
    let multipliers = vec![
        FuzzySequence::zero(crisp()),
        FuzzySequence::constant(crisp(), 1.0),
        FuzzySequence::constant(crisp(), -2.0),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / k as f64),
        FuzzySequence::from_fn(crisp(), |k| 1.0 / ((k * k) as f64)),
        FuzzySequence::from_fn(crisp(), |k| k as f64),
        FuzzySequence::from_fn(crisp(), |k| (k as f64).sqrt()),
        FuzzySequence::from_fn(crisp(), |k| if k % 2 == 0 { 1.0 } else { -1.0 }),
        FuzzySequence::explicit(crisp(), vec![3.0, 0.0, -5.0]),
        FuzzySequence::from_fn(crisp(), |k| 0.5f64.powi(k.min(900) as i32)),
    ];
    let mut findings = Vec::new();
    for (i, a) in multipliers.iter().enumerate() {
        for domain in [TransformKind::Omega, TransformKind::Gamma] {
            let samples = duals::standard_domain_samples(domain, fuzzyseq::domains::BaseSpace::C0);
            for kind in [DualKind::AlphaR, DualKind::BetaR, DualKind::GammaR] {
                let membership = duals::dual_membership(a, domain, kind, &policy);
                let oracle = duals::dual_oracle(a, kind, &samples, &policy).unwrap();
                if let Some(f) = duals::cross_check(&membership, &oracle) {
                    findings.push(format!("multiplier {i} {kind:?} {domain:?}: {f:?}"));
                }
            }
        }
    }
    assert!(findings.is_empty(), "discrepancy findings: {findings:?}");
    report(8, "dual condition sets consistent with the brute-force oracle (10 multipliers, 3 kinds, 2 domains)", started, Duration::from_secs(60));
}
