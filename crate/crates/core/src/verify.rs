//! The cross-verification suite behind `verify`: every check compares two
//! independently computed exact quantities coefficient for coefficient and
//! reports the first offending `(n, k)` on mismatch.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::error::Error;
use crate::golden;
use crate::measures::{
    classical_arcsine, corollary_uniform_check, sojourn_measure_a, sojourn_measure_a_symmetric,
    sojourn_measure_b, sojourn_measure_b_symmetric,
};
use crate::qr2::{ComplexQr2, Qr2};
use crate::report::CheckResult;
use crate::series::BiSeries;
use crate::theorems::{
    check_cor42, check_corollary_fourn, check_lemma41, gamma_via_convolution, path_series,
    theorem1_closed_forms, theorem1_series, theorem2_series, x_matrix_check, BASIS_LABELS,
};
use crate::walk::{QubitState, SojournTable};

/// Parameters of the full suite. The defaults match the CLI defaults.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// z-order for the series cross-checks and the DP comparisons.
    pub order: u32,
    /// Start-position range for the recursion checks.
    pub x_min: i64,
    pub x_max: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: 12, x_min: -5, x_max: 5 }
    }
}

/// Coefficient scale `m / (2^j sqrt(2))` used by the displayed series.
fn unit(m: i64, twos: i64) -> Qr2 {
    Qr2::inv_sqrt2() * Qr2::from_ratio(m, twos)
}

/// The displayed expansion of the free-walk generating functions through
/// z^8, in the order `p, q, r, s`.
pub(crate) fn displayed_theorem1() -> [BiSeries; 4] {
    let build = |terms: &[(usize, usize, i64, i64)]| {
        let scaled: Vec<(usize, usize, Qr2)> = terms
            .iter()
            .map(|&(i, j, m, twos)| (i, j, unit(m, twos)))
            .collect();
        BiSeries::poly(8, 8, &scaled)
    };
    let p = build(&[
        (2, 0, 1, 1),
        (4, 0, 3, 2), (4, 2, -1, 2),
        (6, 0, 6, 4), (6, 2, -1, 4), (6, 4, -1, 4),
        (8, 0, 11, 8), (8, 2, -2, 8), (8, 4, 1, 8), (8, 6, -2, 8),
    ]);
    let q = build(&[
        (2, 2, -1, 1),
        (4, 2, 1, 2), (4, 4, -3, 2),
        (6, 2, 1, 4), (6, 4, 1, 4), (6, 6, -6, 4),
        (8, 2, 2, 8), (8, 4, -1, 8), (8, 6, 2, 8), (8, 8, -11, 8),
    ]);
    let r = build(&[
        (2, 2, 1, 1),
        (4, 2, 1, 2), (4, 4, 1, 2),
        (6, 2, 3, 4), (6, 4, -1, 4), (6, 6, 2, 4),
        (8, 2, 6, 8), (8, 4, -1, 8), (8, 6, -2, 8), (8, 8, 5, 8),
    ]);
    let s = build(&[
        (2, 0, 1, 1),
        (4, 0, 1, 2), (4, 2, 1, 2),
        (6, 0, 2, 4), (6, 2, -1, 4), (6, 4, 3, 4),
        (8, 0, 5, 8), (8, 2, -2, 8), (8, 4, -1, 8), (8, 6, 6, 8),
    ]);
    [p, q, r, s]
}

/// The displayed expansion of the bridge generating function through z^10:
/// entry-wise t-polynomials over denominators 2, 4, 8, 16, 32.
pub(crate) fn displayed_theorem2() -> [[BiSeries; 2]; 2] {
    // (z-power, denominator, per-entry t-polynomial as (t-power, numerator)).
    type Block = (usize, i64, [&'static [(usize, i64)]; 4]);
    const BLOCKS: [Block; 5] = [
        (2, 2, [&[(2, 1)], &[(2, -1)], &[(0, 1)], &[(0, 1)]]),
        (4, 4, [&[(2, -1)], &[(2, -1)], &[(2, 1)], &[(2, -1)]]),
        (6, 8, [
            &[(4, -1), (6, -1)],
            &[(4, 1), (6, 1)],
            &[(0, -1), (2, -1)],
            &[(0, -1), (2, -1)],
        ]),
        (8, 16, [
            &[(2, 1), (4, 1), (6, 1)],
            &[(2, 1), (4, 1), (6, 1)],
            &[(2, -1), (4, -1), (6, -1)],
            &[(2, 1), (4, 1), (6, 1)],
        ]),
        // The top row at z^10 carries t^4 + t^6 + 2t^8 + 2t^10: the t^4 is
        // forced by the bridge measure at time 10 being (2,2,1,1,2,2)/10,
        // and all three computation routes agree on it.
        (10, 32, [
            &[(4, 1), (6, 1), (8, 2), (10, 2)],
            &[(4, -1), (6, -1), (8, -2), (10, -2)],
            &[(0, 2), (2, 2), (4, 1), (6, 1)],
            &[(0, 2), (2, 2), (4, 1), (6, 1)],
        ]),
    ];
    let mut entries = [
        [BiSeries::zero(10, 10), BiSeries::zero(10, 10)],
        [BiSeries::zero(10, 10), BiSeries::zero(10, 10)],
    ];
    for (z, den, per_entry) in BLOCKS {
        for (slot, terms) in per_entry.iter().enumerate() {
            let series = &mut entries[slot / 2][slot % 2];
            for &(t, num) in *terms {
                series.add_to_coeff(z, t, &Qr2::from_ratio(num, den));
            }
        }
    }
    entries
}

/// States with `|alpha| = |beta| = 1/sqrt(2)` and vanishing cross term: the
/// condition under which the free-walk and bridge measures lose their
/// state dependence.
pub fn symmetric_state_grid() -> Vec<QubitState> {
    let q = Qr2::from_ratio;
    let rad = Qr2::radical_ratio;
    let state = |ar: Qr2, ai: Qr2, br: Qr2, bi: Qr2| {
        QubitState::new(ComplexQr2::new(ar, ai), ComplexQr2::new(br, bi))
            .expect("grid states are unit")
    };
    vec![
        QubitState::symmetric(),
        state(Qr2::inv_sqrt2(), Qr2::zero(), Qr2::zero(), -Qr2::inv_sqrt2()),
        state(Qr2::zero(), Qr2::inv_sqrt2(), Qr2::inv_sqrt2(), Qr2::zero()),
        state(q(1, 2), q(1, 2), q(1, 2), q(-1, 2)),
        state(q(1, 2), q(1, 2), q(-1, 2), q(1, 2)),
        state(q(7, 10), q(1, 10), q(-1, 10), q(7, 10)),
        state(q(7, 10), q(1, 10), q(1, 10), q(-7, 10)),
        state(rad(3, 10), rad(4, 10), rad(-4, 10), rad(3, 10)),
    ]
}

pub fn theorem1_display_check() -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem1-display-z8");
    let computed = theorem1_series(8)?;
    let displayed = displayed_theorem1();
    for (u, expected) in BASIS_LABELS.iter().zip(&displayed) {
        result.compare_series(&format!("{u}-bar display"), computed.series(*u), expected, 8, 8);
    }
    Ok(result)
}

/// Closed forms against the path-counting coefficients: the coefficient of
/// `z^(2n) t^(2k)` must be the basis coefficient of the even-even path sum,
/// and the odd part of the closed form must vanish.
pub fn theorem1_vs_dp_check(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem1-vs-dp");
    let computed = theorem1_series(order)?;
    let table = SojournTable::evolve(0, order);
    let dp = path_series(&table, order).symmetrized();
    let o = order as usize;
    for u in BASIS_LABELS {
        result.compare_series(&format!("{u}-bar vs path counting"), computed.series(u), dp.series(u), o, o);
        result.record(
            computed
                .series(u)
                .iter_nonzero()
                .all(|(i, j, _)| i % 2 == 0 && j % 2 == 0),
            || format!("{u}-bar carries an odd exponent"),
        );
    }
    Ok(result)
}

/// Division-free identity `numerator = denominator * series`: immune to any
/// division edge case because it only multiplies.
pub fn theorem1_residual_check(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem1-residual");
    let forms = theorem1_closed_forms(order)?;
    let table = SojournTable::evolve(0, order);
    let dp = path_series(&table, order).symmetrized();
    let o = order as usize;
    for (u, form) in BASIS_LABELS.iter().zip(&forms) {
        let product = &form.den * dp.series(*u);
        result.compare_series(
            &format!("num_{u} = den_{u} * {u}-bar"),
            &form.num.restrict(o, o),
            &product,
            o,
            o,
        );
    }
    Ok(result)
}

pub fn theorem2_display_check() -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem2-display-z10");
    let computed = theorem2_series(10)?;
    let displayed = displayed_theorem2();
    for row in 0..2 {
        for col in 0..2 {
            result.compare_series(
                &format!("entry ({},{}) display", row + 1, col + 1),
                computed.entry(row, col),
                &displayed[row][col],
                10,
                10,
            );
        }
    }
    Ok(result)
}

pub fn theorem2_vs_dp_check(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem2-vs-dp");
    let computed = theorem2_series(order)?;
    let table = SojournTable::evolve(0, order);
    for time in (2..=order).step_by(2) {
        for sojourn in (0..=time).step_by(2) {
            let closed = computed.coefficient_matrix(time as usize, sojourn as usize);
            let dp = table.gamma(time, sojourn);
            result.record(closed == dp, || {
                format!("bridge operator at (n={time}, k={sojourn}): closed form {closed}, path counting {dp}")
            });
        }
    }
    Ok(result)
}

pub fn theorem2_vs_convolution_check(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("theorem2-vs-convolution");
    let computed = theorem2_series(order)?;
    let conv = gamma_via_convolution(order - order % 2)?;
    for time in (2..=order).step_by(2) {
        for sojourn in (0..=time).step_by(2) {
            let closed = computed.coefficient_matrix(time as usize, sojourn as usize);
            let by_conv = conv.gamma(time, sojourn);
            result.record(closed == by_conv, || {
                format!("bridge operator at (n={time}, k={sojourn}): closed form {closed}, convolution {by_conv}")
            });
        }
    }
    Ok(result)
}

/// The classical bivariate generating function
/// `1 / (sqrt(1 - z^2) sqrt(1 - z^2 t^2))` against the binomial formula
/// `(1/2)^(2n) C(2k, k) C(2(n-k), n-k)`, for `n <= 10`.
pub fn classical_gf_check() -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("classical-gf-binomial");
    let (tz, tt) = (20, 20);
    let one = BiSeries::one(tz, tt);
    let a = BiSeries::poly(tz, tt, &[(0, 0, Qr2::one()), (2, 0, -Qr2::one())]).sqrt()?;
    let b = BiSeries::poly(tz, tt, &[(0, 0, Qr2::one()), (2, 2, -Qr2::one())]).sqrt()?;
    let gf = one.div(&(&a * &b))?;
    for n in 0..=10usize {
        for k in 0..=n {
            let expected = Qr2::from_rational(BigRational::new(
                binomial(BigInt::from(2 * k), BigInt::from(k))
                    * binomial(BigInt::from(2 * (n - k)), BigInt::from(n - k)),
                BigInt::from(4).pow(n as u32),
            ));
            let got = gf.coeff(2 * n, 2 * k);
            result.record(got == expected, || {
                format!("classical GF at z^{} t^{}: {got} vs binomial {expected}", 2 * n, 2 * k)
            });
        }
    }
    result.record(
        gf.iter_nonzero().all(|(i, j, _)| i % 2 == 0 && j % 2 == 0),
        || "classical GF carries an odd exponent".to_string(),
    );
    Ok(result)
}

/// Displayed measure tables (free walk, bridge, classical) against the
/// computed ones, as exact rational values.
pub fn measures_display_check() -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("measures-displayed");
    let phi = QubitState::symmetric();
    let q = Qr2::from_ratio;

    let free_weights_4 = [(0u32, q(5, 8)), (2, q(2, 8)), (4, q(5, 8))];
    let a4 = sojourn_measure_a(4, &phi)?;
    for (k, expected) in free_weights_4 {
        let got = a4.weight(k);
        result.record(got == expected, || format!("Q(A_4 = {k}) = {got}, displayed {expected}"));
    }

    let free: [(u32, &[(u32, i64, i64)]); 4] = [
        (2, &[(0, 1, 2), (2, 1, 2)]),
        (4, &[(0, 5, 12), (2, 2, 12), (4, 5, 12)]),
        (6, &[(0, 10, 26), (2, 3, 26), (4, 3, 26), (6, 10, 26)]),
        (8, &[(0, 73, 196), (2, 24, 196), (4, 2, 196), (6, 24, 196), (8, 73, 196)]),
    ];
    for (n, rows) in free {
        let measure = sojourn_measure_a(n, &phi)?;
        for &(k, num, den) in rows {
            let got = measure.probability(k).ok_or(Error::ZeroTotalWeight)?;
            result.record(got == q(num, den), || {
                format!("P(A_{n} = {k}) = {got}, displayed {num}/{den}")
            });
        }
    }

    let bridge_weights: [(u32, &[(u32, i64, i64)]); 3] = [
        (2, &[(0, 1, 4), (2, 1, 4)]),
        (4, &[(0, 0, 1), (2, 1, 8), (4, 0, 1)]),
        (6, &[(0, 1, 64), (2, 1, 64), (4, 1, 64), (6, 1, 64)]),
    ];
    for (n, rows) in bridge_weights {
        let measure = sojourn_measure_b(n, &phi)?;
        for &(k, num, den) in rows {
            let got = measure.weight(k);
            result.record(got == q(num, den), || {
                format!("Q(B_{n} = {k}) = {got}, displayed {num}/{den}")
            });
        }
    }

    let bridge: [(u32, &[(u32, i64, i64)]); 7] = [
        (2, &[(0, 1, 2), (2, 1, 2)]),
        (4, &[(0, 0, 1), (2, 1, 1), (4, 0, 1)]),
        (6, &[(0, 1, 4), (2, 1, 4), (4, 1, 4), (6, 1, 4)]),
        (8, &[(0, 0, 1), (2, 1, 3), (4, 1, 3), (6, 1, 3), (8, 0, 1)]),
        (10, &[(0, 2, 10), (2, 2, 10), (4, 1, 10), (6, 1, 10), (8, 2, 10), (10, 2, 10)]),
        (12, &[(0, 0, 1), (2, 1, 5), (4, 1, 5), (6, 1, 5), (8, 1, 5), (10, 1, 5), (12, 0, 1)]),
        (
            14,
            &[
                (0, 25, 152), (2, 25, 152), (4, 13, 152), (6, 13, 152),
                (8, 13, 152), (10, 13, 152), (12, 25, 152), (14, 25, 152),
            ],
        ),
    ];
    for (n, rows) in bridge {
        let measure = sojourn_measure_b(n, &phi)?;
        for &(k, num, den) in rows {
            let got = measure.probability(k).ok_or(Error::ZeroTotalWeight)?;
            result.record(got == q(num, den), || {
                format!("P(B_{n} = {k}) = {got}, displayed {num}/{den}")
            });
        }
    }

    // Classical arc-sine tables; the delta_6 mass at n = 6 is 5/16 by the
    // binomial formula (the displayed table's total mass forces it).
    let classical: [(u32, &[(u32, i64, i64)]); 4] = [
        (2, &[(0, 1, 2), (2, 1, 2)]),
        (4, &[(0, 3, 8), (2, 2, 8), (4, 3, 8)]),
        (6, &[(0, 5, 16), (2, 3, 16), (4, 3, 16), (6, 5, 16)]),
        (8, &[(0, 35, 128), (2, 20, 128), (4, 18, 128), (6, 20, 128), (8, 35, 128)]),
    ];
    for (n, rows) in classical {
        let measure = classical_arcsine(n)?;
        for &(k, num, den) in rows {
            let got = measure.weight(k);
            result.record(got == q(num, den), || {
                format!("arc-sine c_{n}({k}) = {got}, displayed {num}/{den}")
            });
        }
    }
    Ok(result)
}

/// The state-dependent measure formulas reduce to the symmetric ones on the
/// grid of symmetric states, for all even horizons up to `n_max`.
pub fn symmetric_reduction_check(n_max: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("symmetric-state-reduction");
    for (index, phi) in symmetric_state_grid().iter().enumerate() {
        for n in (2..=n_max).step_by(2) {
            let general_a = sojourn_measure_a(n, phi)?;
            let symmetric_a = sojourn_measure_a_symmetric(n)?;
            result.record(general_a == symmetric_a, || {
                format!("free-walk measure differs for grid state {index} at n = {n}")
            });
            let general_b = sojourn_measure_b(n, phi)?;
            let symmetric_b = sojourn_measure_b_symmetric(n)?;
            result.record(general_b == symmetric_b, || {
                format!("bridge measure differs for grid state {index} at n = {n}")
            });
        }
    }
    Ok(result)
}

/// Byte-compare every golden file against a fresh recomputation.
pub fn goldens_check() -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("golden-files");
    for name in golden::GOLDEN_NAMES {
        let fresh = recompute_or_fail(name)?;
        let embedded = golden::embedded(name).expect("known golden");
        result.record(embedded == fresh, || {
            format!("golden {name} differs from recomputation")
        });
    }
    Ok(result)
}

fn recompute_or_fail(name: &str) -> Result<String, Error> {
    golden::recompute(name)
}

/// Run the whole suite.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CheckResult>, Error> {
    let order = opts.order;
    let mut checks = vec![
        theorem1_display_check()?,
        theorem1_vs_dp_check(order)?,
        theorem1_residual_check(order)?,
        theorem2_display_check()?,
        theorem2_vs_dp_check(order)?,
        theorem2_vs_convolution_check(order)?,
        x_matrix_check(order)?,
        check_lemma41(opts.x_min, opts.x_max, order)?,
        check_cor42(opts.x_min, opts.x_max, order)?,
        check_corollary_fourn(order.max(8))?,
    ];
    for n in 1..=5 {
        checks.push(corollary_uniform_check(n)?);
    }
    checks.push(classical_gf_check()?);
    checks.push(measures_display_check()?);
    checks.push(symmetric_reduction_check(12)?);
    checks.push(goldens_check()?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_series_match_computed() {
        let thm1 = theorem1_display_check().unwrap();
        assert!(thm1.ok(), "{thm1}");
        let thm2 = theorem2_display_check().unwrap();
        assert!(thm2.ok(), "{thm2}");
    }

    #[test]
    fn dp_cross_checks_pass_at_low_order() {
        assert!(theorem1_vs_dp_check(8).unwrap().ok());
        assert!(theorem1_residual_check(8).unwrap().ok());
        assert!(theorem2_vs_dp_check(8).unwrap().ok());
        assert!(theorem2_vs_convolution_check(8).unwrap().ok());
    }

    #[test]
    fn classical_and_measure_checks_pass() {
        assert!(classical_gf_check().unwrap().ok());
        assert!(measures_display_check().unwrap().ok());
        assert!(symmetric_reduction_check(8).unwrap().ok());
    }

    #[test]
    fn grid_states_are_symmetric() {
        let half = Qr2::from_ratio(1, 2);
        for phi in symmetric_state_grid() {
            assert_eq!(phi.alpha_norm_sqr(), half);
            assert_eq!(phi.beta_norm_sqr(), half);
            assert!(phi.cross_term().is_zero());
        }
    }
}
