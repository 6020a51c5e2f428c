//! Sojourn-time measures of the walk and their classical baselines.
//!
//! The free-walk measure weighs sojourn count `k` by the squared norm of
//! the path-sum operator applied to the initial state; the bridge measure
//! does the same with the operators restricted to paths returning to the
//! origin. Both come unnormalized (the operator sums are not a resolution
//! of the identity), with normalization as an explicit second step.
//!
//! The classical counterparts are the discrete arc-sine law for the free
//! walk and the equidistribution theorem (uniform weights) for the bridge
//! walk.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::error::Error;
use crate::mat2::pqrs_decompose;
use crate::qr2::Qr2;
use crate::report::CheckResult;
use crate::walk::{QubitState, SojournTable};

/// Unnormalized sojourn weights at a fixed even time horizon, plus the
/// normalized probabilities when the total weight is nonzero.
///
/// Weights are stored for every sojourn count that carries a nonzero value
/// and, explicitly, for every even count (the zeros there are meaningful:
/// bridge measures routinely vanish at the extremes).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SojournMeasure {
    n: u32,
    weights: BTreeMap<u32, Qr2>,
    total: Qr2,
    normalized: Option<BTreeMap<u32, Qr2>>,
}

impl SojournMeasure {
    fn from_weights(n: u32, all_weights: Vec<(u32, Qr2)>) -> Self {
        let mut weights = BTreeMap::new();
        let mut total = Qr2::zero();
        for (k, weight) in all_weights {
            total += &weight;
            if k % 2 == 0 || !weight.is_zero() {
                weights.insert(k, weight);
            }
        }
        let normalized = if total.is_zero() {
            None
        } else {
            let inv = total.inverse().expect("nonzero total");
            Some(
                weights
                    .iter()
                    .map(|(k, w)| (*k, w * &inv))
                    .collect(),
            )
        };
        SojournMeasure { n, weights, total, normalized }
    }

    /// The time horizon.
    pub fn time(&self) -> u32 {
        self.n
    }

    pub fn weight(&self, k: u32) -> Qr2 {
        self.weights.get(&k).cloned().unwrap_or_else(Qr2::zero)
    }

    pub fn weights(&self) -> impl Iterator<Item = (u32, &Qr2)> {
        self.weights.iter().map(|(k, w)| (*k, w))
    }

    pub fn total_weight(&self) -> &Qr2 {
        &self.total
    }

    /// Normalized probability of sojourn count `k`; `None` when the total
    /// weight vanishes and no probability measure exists.
    pub fn probability(&self, k: u32) -> Option<Qr2> {
        self.normalized
            .as_ref()
            .map(|m| m.get(&k).cloned().unwrap_or_else(Qr2::zero))
    }

    pub fn probabilities(&self) -> Option<&BTreeMap<u32, Qr2>> {
        self.normalized.as_ref()
    }
}

fn require_even(n: u32, what: &str) -> Result<(), Error> {
    if n % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "{what} requires an even time horizon, got {n}"
        )));
    }
    Ok(())
}

/// Free-walk sojourn measure for an arbitrary initial state.
///
/// With `u = (p, q, r, s)` the basis coefficients of the path sum at
/// `(n, k)`, the weight is
///
/// ```text
/// (p^2 + q^2 + r^2 + s^2)/2
///   + (p r + q s)(|alpha|^2 - |beta|^2)
///   + (p^2 - r^2 - q^2 + s^2)/2 * (alpha conj(beta) + conj(alpha) beta)
/// ```
///
/// which is the expansion of the squared norm of the operator applied to
/// the state.
pub fn sojourn_measure_a(n: u32, phi: &QubitState) -> Result<SojournMeasure, Error> {
    require_even(n, "the free-walk measure")?;
    let table = SojournTable::evolve(0, n);
    let diff = phi.alpha_norm_sqr() - phi.beta_norm_sqr();
    let cross = phi.cross_term();
    let half = Qr2::from_ratio(1, 2);
    let weights = (0..=n)
        .map(|k| {
            let coeffs = pqrs_decompose(&table.psi(n, k));
            let (p, q, r, s) = (&coeffs.p, &coeffs.q, &coeffs.r, &coeffs.s);
            let squares = &(&(p * p) + &(q * q)) + &(&(r * r) + &(s * s));
            let skew = &(&(p * p) - &(r * r)) - &(&(q * q) - &(s * s));
            let weight = &(&squares * &half)
                + &(&(&(&(p * r) + &(q * s)) * &diff) + &(&(&skew * &half) * &cross));
            (k, weight)
        })
        .collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// Free-walk measure via the symmetric-state formula
/// `(p^2 + q^2 + r^2 + s^2) / 2`, which is what [`sojourn_measure_a`]
/// reduces to whenever `|alpha| = |beta| = 1/sqrt(2)` and the cross term
/// vanishes.
pub fn sojourn_measure_a_symmetric(n: u32) -> Result<SojournMeasure, Error> {
    require_even(n, "the free-walk measure")?;
    let table = SojournTable::evolve(0, n);
    let half = Qr2::from_ratio(1, 2);
    let weights = (0..=n)
        .map(|k| {
            let coeffs = pqrs_decompose(&table.psi(n, k));
            let (p, q, r, s) = (&coeffs.p, &coeffs.q, &coeffs.r, &coeffs.s);
            let squares = &(&(p * p) + &(q * q)) + &(&(r * r) + &(s * s));
            (k, &squares * &half)
        })
        .collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// Bridge sojourn measure for an arbitrary initial state, from the matrix
/// elements `g` of the bridge operators:
///
/// ```text
/// (g11^2 + g21^2)|alpha|^2 + (g12^2 + g22^2)|beta|^2
///   + (g11 g12 + g21 g22)(alpha conj(beta) + conj(alpha) beta)
/// ```
pub fn sojourn_measure_b(n: u32, phi: &QubitState) -> Result<SojournMeasure, Error> {
    require_even(n, "the bridge measure")?;
    let table = SojournTable::evolve(0, n);
    let na = phi.alpha_norm_sqr();
    let nb = phi.beta_norm_sqr();
    let cross = phi.cross_term();
    let weights = (0..=n)
        .map(|k| {
            let g = table.gamma(n, k);
            let e = g.rows();
            let col_left = &(&e[0][0] * &e[0][0]) + &(&e[1][0] * &e[1][0]);
            let col_right = &(&e[0][1] * &e[0][1]) + &(&e[1][1] * &e[1][1]);
            let mixed = &(&e[0][0] * &e[0][1]) + &(&e[1][0] * &e[1][1]);
            let weight = &(&(&col_left * &na) + &(&col_right * &nb)) + &(&mixed * &cross);
            (k, weight)
        })
        .collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// Bridge measure via the symmetric-state formula: half the sum of the
/// squared matrix entries.
pub fn sojourn_measure_b_symmetric(n: u32) -> Result<SojournMeasure, Error> {
    require_even(n, "the bridge measure")?;
    let table = SojournTable::evolve(0, n);
    let half = Qr2::from_ratio(1, 2);
    let weights = (0..=n)
        .map(|k| {
            let g = table.gamma(n, k);
            let sum: Qr2 = g.rows().iter().flatten().map(|e| e * e).sum();
            (k, &sum * &half)
        })
        .collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// The discrete arc-sine law: the classical free walk spends `2k` of `2n`
/// time units positive with probability
/// `(1/2)^(2n) C(2k, k) C(2(n-k), n-k)`. Already a probability measure.
pub fn classical_arcsine(n: u32) -> Result<SojournMeasure, Error> {
    require_even(n, "the arc-sine law")?;
    let half_n = (n / 2) as u64;
    let weights = (0..=half_n)
        .map(|k| {
            let c = binomial(BigInt::from(2 * k), BigInt::from(k))
                * binomial(BigInt::from(2 * (half_n - k)), BigInt::from(half_n - k));
            let prob = BigRational::new(c, BigInt::from(4).pow(half_n as u32));
            (2 * k as u32, Qr2::from_rational(prob))
        })
        .collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// The classical equidistribution theorem: a bridge walk of length `2n`
/// spends `2k` units positive with probability `1/(n+1)`, independent of
/// `k`.
pub fn classical_equidistribution(n: u32) -> Result<SojournMeasure, Error> {
    require_even(n, "the equidistribution measure")?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "the equidistribution measure requires n >= 2, got {n}"
        )));
    }
    let slots = n / 2 + 1;
    let uniform = Qr2::from_ratio(1, i64::from(slots));
    let weights = (0..slots).map(|k| (2 * k, uniform.clone())).collect();
    Ok(SojournMeasure::from_weights(n, weights))
}

/// Check that the normalized bridge measure at time `4n` is uniform on
/// `{2, 4, ..., 4n - 2}` with mass `1/(2n - 1)` each, and zero at the
/// extremes.
pub fn corollary_uniform_check(n: u32) -> Result<CheckResult, Error> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 1, got {n}"
        )));
    }
    let mut result = CheckResult::new(format!("corollary-uniform-measure (time {})", 4 * n));
    let measure = sojourn_measure_b(4 * n, &QubitState::symmetric())?;
    let expected_mass = Qr2::from_ratio(1, i64::from(2 * n - 1));
    for k in (0..=4 * n).step_by(2) {
        let expected = if k == 0 || k == 4 * n {
            Qr2::zero()
        } else {
            expected_mass.clone()
        };
        let got = measure
            .probability(k)
            .ok_or(Error::ZeroTotalWeight)?;
        result.record(got == expected, || {
            format!("P(B_{} = {k}) = {got}, expected {expected}", 4 * n)
        });
    }
    Ok(result)
}

/// Central terms of the normalized free-walk measure against the classical
/// arc-sine law at the same horizon.
#[derive(Clone, Debug)]
pub struct CentralComparison {
    pub time: u32,
    /// `(sojourn count, quantum probability, classical probability)` for
    /// each central term (one or two, by the parity of `time / 2`).
    pub terms: Vec<(u32, Qr2, Qr2)>,
    /// Whether the quantum central term is strictly smaller at every slot.
    pub quantum_smaller: bool,
}

pub fn compare_central_terms(n: u32) -> Result<CentralComparison, Error> {
    require_even(n, "the central-term comparison")?;
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the central-term comparison requires n >= 4, got {n}"
        )));
    }
    let quantum = sojourn_measure_a(n, &QubitState::symmetric())?;
    let classical = classical_arcsine(n)?;
    let half = n / 2;
    let central: Vec<u32> = if half % 2 == 0 {
        vec![half]
    } else {
        vec![half - 1, half + 1]
    };
    let mut terms = Vec::new();
    let mut quantum_smaller = true;
    for k in central {
        let quantum_prob = quantum.probability(k).ok_or(Error::ZeroTotalWeight)?;
        let classical_prob = classical.probability(k).ok_or(Error::ZeroTotalWeight)?;
        quantum_smaller &= (&quantum_prob - &classical_prob).is_negative();
        terms.push((k, quantum_prob, classical_prob));
    }
    Ok(CentralComparison { time: n, terms, quantum_smaller })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr2::ComplexQr2;
    use crate::walk::interval_counted;

    fn q(n: i64, d: i64) -> Qr2 {
        Qr2::from_ratio(n, d)
    }

    fn assert_measure(measure: &SojournMeasure, expected: &[(u32, (i64, i64))]) {
        for &(k, (num, den)) in expected {
            assert_eq!(
                measure.probability(k).unwrap(),
                q(num, den),
                "probability at k = {k}, time {}",
                measure.time()
            );
        }
    }

    #[test]
    fn free_walk_weights_at_time_four() {
        let measure = sojourn_measure_a(4, &QubitState::symmetric()).unwrap();
        assert_eq!(measure.weight(0), q(5, 8));
        assert_eq!(measure.weight(2), q(2, 8));
        assert_eq!(measure.weight(4), q(5, 8));
        assert_eq!(measure.total_weight(), &q(12, 8));
        assert_measure(&measure, &[(0, (5, 12)), (2, (2, 12)), (4, (5, 12))]);
    }

    #[test]
    fn free_walk_measures_match_displayed_values() {
        let phi = QubitState::symmetric();
        assert_measure(
            &sojourn_measure_a(2, &phi).unwrap(),
            &[(0, (1, 2)), (2, (1, 2))],
        );
        assert_measure(
            &sojourn_measure_a(6, &phi).unwrap(),
            &[(0, (10, 26)), (2, (3, 26)), (4, (3, 26)), (6, (10, 26))],
        );
        assert_measure(
            &sojourn_measure_a(8, &phi).unwrap(),
            &[
                (0, (73, 196)),
                (2, (24, 196)),
                (4, (2, 196)),
                (6, (24, 196)),
                (8, (73, 196)),
            ],
        );
    }

    #[test]
    fn free_walk_weight_properties() {
        let phi = QubitState::symmetric();
        for n in (2..=24u32).step_by(2) {
            let measure = sojourn_measure_a(n, &phi).unwrap();
            for k in 0..=n {
                let w = measure.weight(k);
                // Symmetric under k <-> n - k, rational, nonnegative, and
                // zero at odd k (observed, not assumed upstream).
                assert_eq!(w, measure.weight(n - k), "symmetry at n={n}, k={k}");
                assert!(w.is_rational(), "rationality at n={n}, k={k}");
                assert!(!w.is_negative(), "nonnegativity at n={n}, k={k}");
                if k % 2 == 1 {
                    assert!(w.is_zero(), "odd-k weight at n={n}, k={k}");
                }
            }
        }
    }

    #[test]
    fn bridge_weight_properties() {
        let phi = QubitState::symmetric();
        for n in (2..=24u32).step_by(2) {
            let measure = sojourn_measure_b(n, &phi).unwrap();
            for k in 0..=n {
                let w = measure.weight(k);
                assert_eq!(w, measure.weight(n - k), "symmetry at n={n}, k={k}");
                assert!(w.is_rational() && !w.is_negative(), "value at n={n}, k={k}");
            }
        }
    }

    #[test]
    fn bridge_weights_match_displayed_values() {
        let phi = QubitState::symmetric();
        let b2 = sojourn_measure_b(2, &phi).unwrap();
        assert_eq!(b2.weight(0), q(1, 4));
        assert_eq!(b2.weight(2), q(1, 4));
        let b4 = sojourn_measure_b(4, &phi).unwrap();
        assert_eq!(b4.weight(0), Qr2::zero());
        assert_eq!(b4.weight(2), q(1, 8));
        assert_eq!(b4.weight(4), Qr2::zero());
        let b6 = sojourn_measure_b(6, &phi).unwrap();
        for k in (0..=6).step_by(2) {
            assert_eq!(b6.weight(k), q(1, 64), "Q(B_6 = {k})");
        }
    }

    #[test]
    fn bridge_measures_match_displayed_values() {
        let phi = QubitState::symmetric();
        assert_measure(&sojourn_measure_b(2, &phi).unwrap(), &[(0, (1, 2)), (2, (1, 2))]);
        assert_measure(
            &sojourn_measure_b(4, &phi).unwrap(),
            &[(0, (0, 1)), (2, (1, 1)), (4, (0, 1))],
        );
        assert_measure(
            &sojourn_measure_b(6, &phi).unwrap(),
            &[(0, (1, 4)), (2, (1, 4)), (4, (1, 4)), (6, (1, 4))],
        );
        assert_measure(
            &sojourn_measure_b(8, &phi).unwrap(),
            &[(0, (0, 1)), (2, (1, 3)), (4, (1, 3)), (6, (1, 3)), (8, (0, 1))],
        );
        assert_measure(
            &sojourn_measure_b(10, &phi).unwrap(),
            &[
                (0, (2, 10)),
                (2, (2, 10)),
                (4, (1, 10)),
                (6, (1, 10)),
                (8, (2, 10)),
                (10, (2, 10)),
            ],
        );
        assert_measure(
            &sojourn_measure_b(12, &phi).unwrap(),
            &[
                (0, (0, 1)),
                (2, (1, 5)),
                (4, (1, 5)),
                (6, (1, 5)),
                (8, (1, 5)),
                (10, (1, 5)),
                (12, (0, 1)),
            ],
        );
        assert_measure(
            &sojourn_measure_b(14, &phi).unwrap(),
            &[
                (0, (25, 152)),
                (2, (25, 152)),
                (4, (13, 152)),
                (6, (13, 152)),
                (8, (13, 152)),
                (10, (13, 152)),
                (12, (25, 152)),
                (14, (25, 152)),
            ],
        );
    }

    #[test]
    fn general_formula_reduces_for_symmetric_states() {
        // |alpha| = |beta| = 1/sqrt(2) with vanishing cross term.
        let states = [
            QubitState::symmetric(),
            QubitState::new(
                ComplexQr2::new(q(1, 2), q(1, 2)),
                ComplexQr2::new(q(1, 2), q(-1, 2)),
            )
            .unwrap(),
            QubitState::new(
                ComplexQr2::new(q(7, 10), q(1, 10)),
                ComplexQr2::new(q(-1, 10), q(7, 10)),
            )
            .unwrap(),
            QubitState::new(
                ComplexQr2::new(Qr2::radical_ratio(3, 10), Qr2::radical_ratio(4, 10)),
                ComplexQr2::new(Qr2::radical_ratio(-4, 10), Qr2::radical_ratio(3, 10)),
            )
            .unwrap(),
        ];
        for phi in &states {
            for n in (2..=8u32).step_by(2) {
                assert_eq!(
                    sojourn_measure_a(n, phi).unwrap(),
                    sojourn_measure_a_symmetric(n).unwrap(),
                    "free walk at n = {n}"
                );
                assert_eq!(
                    sojourn_measure_b(n, phi).unwrap(),
                    sojourn_measure_b_symmetric(n).unwrap(),
                    "bridge at n = {n}"
                );
            }
        }
    }

    #[test]
    fn arcsine_displayed_values() {
        assert_measure(&classical_arcsine(2).unwrap(), &[(0, (1, 2)), (2, (1, 2))]);
        assert_measure(
            &classical_arcsine(4).unwrap(),
            &[(0, (3, 8)), (2, (2, 8)), (4, (3, 8))],
        );
        // The delta_6 mass follows from the binomial formula (total mass 1):
        // 5/16, with the other displayed entries unchanged.
        assert_measure(
            &classical_arcsine(6).unwrap(),
            &[(0, (5, 16)), (2, (3, 16)), (4, (3, 16)), (6, (5, 16))],
        );
        assert_measure(
            &classical_arcsine(8).unwrap(),
            &[
                (0, (35, 128)),
                (2, (20, 128)),
                (4, (18, 128)),
                (6, (20, 128)),
                (8, (35, 128)),
            ],
        );
    }

    #[test]
    fn arcsine_is_normalized_and_extremal() {
        for n in (2..=24u32).step_by(2) {
            let measure = classical_arcsine(n).unwrap();
            assert_eq!(measure.total_weight(), &Qr2::one());
            let edge = measure.weight(0);
            assert_eq!(edge, measure.weight(n));
            for k in (0..=n).step_by(2) {
                assert!(!(&edge - &measure.weight(k)).is_negative(), "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn equidistribution_matches_brute_force_bridge_count() {
        for n in (2..=10u32).step_by(2) {
            let measure = classical_equidistribution(n).unwrap();
            assert_eq!(measure.total_weight(), &Qr2::one());
            // Enumerate all 2^n walks, keep bridges, classify positive
            // intervals by the same chord rule as the quantum walk.
            let mut counts = BTreeMap::new();
            let mut bridges = 0u64;
            for bits in 0u32..(1 << n) {
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
                    *counts.entry(positive).or_insert(0u64) += 1;
                }
            }
            for k in (0..=n).step_by(2) {
                let expected = Qr2::from_ratio(counts[&k] as i64, bridges as i64);
                assert_eq!(measure.probability(k).unwrap(), expected, "n={n}, k={k}");
            }
        }
    }

    #[test]
    fn corollary_uniform_measures() {
        for n in 1..=3 {
            let report = corollary_uniform_check(n).unwrap();
            assert!(report.ok(), "{report}");
        }
        // Spot values: delta_2 at time 4; (1/3)(delta_2+delta_4+delta_6) at 8.
        let mu4 = sojourn_measure_b(4, &QubitState::symmetric()).unwrap();
        assert_eq!(mu4.probability(2).unwrap(), Qr2::one());
        let mu8 = sojourn_measure_b(8, &QubitState::symmetric()).unwrap();
        assert_eq!(mu8.probability(4).unwrap(), q(1, 3));
    }

    #[test]
    fn central_terms_comparison() {
        let cmp4 = compare_central_terms(4).unwrap();
        assert_eq!(cmp4.terms, vec![(2, q(2, 12), q(2, 8))]);
        assert!(cmp4.quantum_smaller);

        let cmp6 = compare_central_terms(6).unwrap();
        assert_eq!(cmp6.terms, vec![(2, q(3, 26), q(3, 16)), (4, q(3, 26), q(3, 16))]);
        assert!(cmp6.quantum_smaller);

        let cmp8 = compare_central_terms(8).unwrap();
        assert_eq!(cmp8.terms, vec![(4, q(2, 196), q(18, 128))]);
        assert!(cmp8.quantum_smaller);
    }

    #[test]
    fn odd_horizon_rejected() {
        assert!(sojourn_measure_a(3, &QubitState::symmetric()).is_err());
        assert!(classical_arcsine(5).is_err());
        assert!(classical_equidistribution(0).is_err());
    }
}
