//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Every comparison is exact; there are no tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeMap;
use std::time::Instant;

use hadamard_sojourn::golden;
use hadamard_sojourn::mat2::{pqrs_compose, Mat2, PqrsCoeffs};
use hadamard_sojourn::measures::{
    classical_equidistribution, corollary_uniform_check, sojourn_measure_a,
};
use hadamard_sojourn::qr2::{ComplexQr2, Qr2};
use hadamard_sojourn::series::BiSeries;
use hadamard_sojourn::theorems::{check_cor42, check_lemma41, x_matrix_check};
use hadamard_sojourn::verify;
use hadamard_sojourn::walk::{interval_counted, QubitState, SojournTable};

fn pass(criterion: &str) {
    println!("criterion {criterion}: PASS");
}

#[test]
fn criterion_01_theorem1_reproduction() {
    let started = Instant::now();
    let display = verify::theorem1_display_check().unwrap();
    assert!(display.ok(), "{display}");
    let vs_dp = verify::theorem1_vs_dp_check(24).unwrap();
    assert!(vs_dp.ok(), "{vs_dp}");
    let residual = verify::theorem1_residual_check(24).unwrap();
    assert!(residual.ok(), "{residual}");
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "runtime target exceeded: {elapsed:?}"
    );
    pass(&format!(
        "01 theorem-1 reproduction (display z^8, path counting to z^24, residual; {elapsed:.2?})"
    ));
}

#[test]
fn criterion_02_theorem2_reproduction() {
    let display = verify::theorem2_display_check().unwrap();
    assert!(display.ok(), "{display}");
    let vs_dp = verify::theorem2_vs_dp_check(24).unwrap();
    assert!(vs_dp.ok(), "{vs_dp}");
    let vs_conv = verify::theorem2_vs_convolution_check(24).unwrap();
    assert!(vs_conv.ok(), "{vs_conv}");
    pass("02 theorem-2 reproduction (display z^10, path counting and convolution to z^24)");
}

#[test]
fn criterion_03_explicit_operator_values() {
    // Operator identities, asserted on values.
    let p = Mat2::coin_p();
    let q = Mat2::coin_q();
    let unit = Qr2::inv_sqrt2() * Qr2::from_ratio(1, 2); // 1/(2 sqrt(2))
    let combo = |pc: i64, qc: i64, rc: i64, sc: i64| {
        pqrs_compose(&PqrsCoeffs {
            p: Qr2::from_int(pc) * &unit,
            q: Qr2::from_int(qc) * &unit,
            r: Qr2::from_int(rc) * &unit,
            s: Qr2::from_int(sc) * &unit,
        })
    };
    let table = SojournTable::evolve(0, 4);
    assert_eq!(table.psi(4, 0), combo(3, 0, 0, 1), "four-step sojourn 0");
    assert_eq!(table.psi(4, 2), combo(-1, 1, 1, 1), "four-step sojourn 2");
    assert_eq!(table.psi(4, 4), combo(0, -3, 1, 0), "four-step sojourn 4");
    assert_eq!(table.gamma(2, 0), &q * &p, "bridge (2, 0)");
    assert_eq!(table.gamma(2, 2), &p * &q, "bridge (2, 2)");
    let expected = &(&q * &(&p * &p)) * &q + &(&p * &(&q * &q)) * &p;
    assert_eq!(table.gamma(4, 2), expected, "bridge (4, 2)");

    // Byte-exact golden files for the same displays.
    for name in ["psi_two_step", "psi_four_step", "gamma_small"] {
        let fresh = golden::recompute(name).unwrap();
        assert_eq!(golden::embedded(name).unwrap(), fresh, "golden {name}");
    }
    pass("03 explicit operator values (byte-exact goldens)");
}

#[test]
fn criterion_04_measures() {
    let check = verify::measures_display_check().unwrap();
    assert!(check.ok(), "{check}");
    for name in ["measures_free", "measures_bridge"] {
        let fresh = golden::recompute(name).unwrap();
        assert_eq!(golden::embedded(name).unwrap(), fresh, "golden {name}");
    }
    pass("04 free-walk and bridge measures match the displayed tables");
}

#[test]
fn criterion_05_corollary_uniform() {
    for n in 1..=5 {
        let check = corollary_uniform_check(n).unwrap();
        assert!(check.ok(), "{check}");
    }
    pass("05 bridge measure at times 4n is uniform on {2, ..., 4n-2} for n = 1..5");
}

#[test]
fn criterion_06_classical_baselines() {
    // Arc-sine displayed tables (with the 5/16 mass at time 6) are part of
    // the displayed-measures check; the generating function identity and
    // the bridge enumeration complete the baseline.
    let displays = verify::measures_display_check().unwrap();
    assert!(displays.ok(), "{displays}");
    let gf = verify::classical_gf_check().unwrap();
    assert!(gf.ok(), "{gf}");

    for n in (2..=12u32).step_by(2) {
        let measure = classical_equidistribution(n).unwrap();
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        let mut bridges = 0u64;
        for bits in 0u64..(1 << n) {
            let mut pos = 0i64;
            let mut positive = 0u32;
            for step in 0..n {
                let next = if bits >> step & 1 == 1 { pos + 1 } else { pos - 1 };
                if interval_counted(pos, next) {
                    positive += 1;
                }
                pos = next;
            }
            if pos == 0 {
                bridges += 1;
                *counts.entry(positive).or_insert(0) += 1;
            }
        }
        for k in (0..=n).step_by(2) {
            let expected = Qr2::from_ratio(counts[&k] as i64, bridges as i64);
            assert_eq!(
                measure.probability(k).unwrap(),
                expected,
                "equidistribution at n = {n}, k = {k}"
            );
        }
    }
    pass("06 classical baselines (arc-sine tables, GF identity, bridge enumeration)");
}

#[test]
fn criterion_07_recurrence_suite() {
    let lemma = check_lemma41(-5, 5, 12).unwrap();
    assert!(lemma.ok(), "{lemma}");
    assert_eq!(lemma.comparisons, 11 * 4, "eleven starts, four relations each");
    let cor = check_cor42(-5, 5, 12).unwrap();
    assert!(cor.ok(), "{cor}");
    assert_eq!(cor.comparisons, 8 * 4, "eight starts, four recurrences each");
    pass("07 recursion relations and three-term recurrences on x in [-5, 5], order 12");
}

#[test]
fn criterion_08_x_matrix_identity() {
    let check = x_matrix_check(12).unwrap();
    assert!(check.ok(), "{check}");
    pass("08 fixed-point identity X(I - X)^{-1} equals the bridge closed form to z^12");
}

#[test]
fn criterion_09_property_suites() {
    // Unitarity to time 24 and position symmetry for the symmetric state.
    let phi = QubitState::symmetric();
    let table = SojournTable::evolve(0, 24);
    for n in 0..=24 {
        let dist = table.position_distribution(n, &phi).unwrap();
        let total: Qr2 = dist.values().cloned().sum();
        assert_eq!(total, Qr2::one(), "unitarity at n = {n}");
        for (y, prob) in &dist {
            assert_eq!(dist.get(&-y), Some(prob), "symmetry at n = {n}, y = {y}");
        }
    }

    // Path counting against brute-force enumeration with independent
    // interval classification, to time 10.
    let n_max = 10u32;
    for n in 1..=n_max {
        let mut sums: BTreeMap<(i64, u32), Mat2> = BTreeMap::new();
        for bits in 0u64..(1 << n) {
            let mut pos = 0i64;
            let mut sojourn = 0u32;
            let mut op = Mat2::identity();
            for step in 0..n {
                let go_right = bits >> step & 1 == 1;
                let next = if go_right { pos + 1 } else { pos - 1 };
                if pos.max(next) >= 1 {
                    sojourn += 1;
                }
                let coin = if go_right { Mat2::coin_q() } else { Mat2::coin_p() };
                op = &coin * &op;
                pos = next;
            }
            let slot = sums.entry((pos, sojourn)).or_insert_with(Mat2::zero);
            *slot += &op;
        }
        for y in table.positions(n) {
            for k in 0..=n {
                let expected = sums.get(&(y, k)).cloned().unwrap_or_else(Mat2::zero);
                assert_eq!(table.entry(n, y, k), expected, "entry ({n}, {y}, {k})");
            }
        }
    }

    // Series round trips on a fixed mixed-coefficient series.
    let f = BiSeries::poly(
        6,
        6,
        &[
            (0, 0, Qr2::from_ratio(1, 1)),
            (1, 0, Qr2::from_ratio(-2, 3)),
            (2, 2, Qr2::inv_sqrt2()),
            (3, 1, Qr2::from_ratio(5, 7)),
            (6, 6, Qr2::sqrt2()),
        ],
    );
    let g = BiSeries::poly(
        6,
        6,
        &[
            (0, 0, Qr2::one()),
            (1, 1, Qr2::from_ratio(3, 2)),
            (2, 0, -Qr2::inv_sqrt2()),
        ],
    );
    assert_eq!((&f * &g).div(&g).unwrap(), f, "div undoes mul");
    let root = f.sqrt().unwrap();
    assert_eq!(&root * &root, f, "sqrt squares back");

    // Ring axioms on a deterministic grid.
    let values: Vec<Qr2> = (-2..=2)
        .flat_map(|a| (-2..=2).map(move |b| Qr2::from_ratio(a, 3) + Qr2::radical_ratio(b, 2)))
        .collect();
    for x in &values {
        for y in &values {
            assert_eq!(x * y, y * x);
            for z in &values {
                assert_eq!(&(x * y) * z, x * &(y * z));
                assert_eq!(x * &(y + z), &(x * y) + &(x * z));
            }
            if !y.is_zero() {
                assert_eq!(&(x * y) / y, x.clone());
            }
        }
    }
    pass("09 property suites (unitarity, symmetry, brute-force paths, series and ring laws)");
}

#[test]
fn criterion_10_symmetric_state_reduction() {
    let check = verify::symmetric_reduction_check(16).unwrap();
    assert!(check.ok(), "{check}");
    // The grid genuinely satisfies the symmetry condition.
    for phi in verify::symmetric_state_grid() {
        assert_eq!(phi.alpha_norm_sqr(), Qr2::from_ratio(1, 2));
        assert_eq!(phi.beta_norm_sqr(), Qr2::from_ratio(1, 2));
        assert!(phi.cross_term().is_zero());
    }
    // A non-symmetric state genuinely differs, so the reduction is not vacuous.
    let skewed = QubitState::new(
        ComplexQr2::new(Qr2::from_ratio(3, 5), Qr2::zero()),
        ComplexQr2::new(Qr2::from_ratio(4, 5), Qr2::zero()),
    )
    .unwrap();
    let general = sojourn_measure_a(4, &skewed).unwrap();
    let symmetric = hadamard_sojourn::measures::sojourn_measure_a_symmetric(4).unwrap();
    assert_ne!(general, symmetric, "skewed state must not reduce");
    pass("10 state-dependent measure formulas reduce on the symmetric grid, n <= 16");
}
