//! Operator-valued path counting for the Hadamard walk.
//!
//! [`SojournTable`] tabulates, for each time `n`, endpoint `y`, and sojourn
//! count `k`, the sum over all `n`-step paths from a fixed start to `y` that
//! spend exactly `k` unit intervals on the positive side, each path
//! contributing its ordered product of coin halves (`P` for a left step,
//! `Q` for a right step, later steps multiplying on the left).
//!
//! An interval counts toward the sojourn time exactly when the step touches
//! the positive side: `max(from, to) >= 1`. A step from 0 to the right is
//! counted, a step from 0 to the left is not, and steps at or below the
//! origin's left are never counted.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::mat2::Mat2;
use crate::qr2::{ComplexQr2, Qr2};

/// Whether the unit interval of a step `from -> to` lies on the positive side.
pub fn interval_counted(from: i64, to: i64) -> bool {
    from.max(to) >= 1
}

/// A qubit state `(alpha, beta)` with exact complex amplitudes, checked to
/// have unit norm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QubitState {
    alpha: ComplexQr2,
    beta: ComplexQr2,
}

impl QubitState {
    pub fn new(alpha: ComplexQr2, beta: ComplexQr2) -> Result<Self, Error> {
        if &alpha.norm_sqr() + &beta.norm_sqr() != Qr2::one() {
            return Err(Error::NonUnitState);
        }
        Ok(QubitState { alpha, beta })
    }

    /// The symmetric initial state `[1/sqrt(2), i/sqrt(2)]`, which makes the
    /// position distribution of the Hadamard walk symmetric about the origin.
    pub fn symmetric() -> Self {
        QubitState {
            alpha: ComplexQr2::real(Qr2::inv_sqrt2()),
            beta: ComplexQr2::new(Qr2::zero(), Qr2::inv_sqrt2()),
        }
    }

    pub fn alpha(&self) -> &ComplexQr2 {
        &self.alpha
    }

    pub fn beta(&self) -> &ComplexQr2 {
        &self.beta
    }

    pub fn as_vector(&self) -> (ComplexQr2, ComplexQr2) {
        (self.alpha.clone(), self.beta.clone())
    }

    /// `|alpha|^2`.
    pub fn alpha_norm_sqr(&self) -> Qr2 {
        self.alpha.norm_sqr()
    }

    /// `|beta|^2`.
    pub fn beta_norm_sqr(&self) -> Qr2 {
        self.beta.norm_sqr()
    }

    /// The real cross term `alpha conj(beta) + conj(alpha) beta`.
    pub fn cross_term(&self) -> Qr2 {
        let re = &self.alpha.re * &self.beta.re + &self.alpha.im * &self.beta.im;
        &re + &re
    }
}

/// Dense table of path-sum operators from a fixed start, indexed by
/// `(n, y, k)` over the reachable light cone; everything outside is the
/// zero matrix.
pub struct SojournTable {
    start: i64,
    n_max: u32,
    /// `levels[n]` holds `(n+1) * (n+1)` matrices: position index
    /// `i` (for `y = start - n + 2 i`) by sojourn count `k`.
    levels: Vec<Vec<Mat2>>,
}

impl SojournTable {
    /// Run the path-sum recursion from `start` up to time `n_max`.
    ///
    /// Level 0 is the identity at the start; level `n + 1` is assembled from
    /// level `n` by appending one step on the left of the operator product:
    /// `M(y, k) = P M(y + 1, k - c) + Q M(y - 1, k - c')` with `c`, `c'` the
    /// interval counts of the two incoming steps.
    pub fn evolve(start: i64, n_max: u32) -> Self {
        let p = Mat2::coin_p();
        let q = Mat2::coin_q();
        let mut levels = vec![vec![Mat2::identity()]];
        for n in 0..n_max as usize {
            let prev = &levels[n];
            let width = n + 2; // k range of the new level
            let mut next = vec![Mat2::zero(); width * width];
            for i in 0..width {
                let y = start - (n as i64 + 1) + 2 * i as i64;
                for k in 0..width {
                    let mut acc = Mat2::zero();
                    // Last step was a left move from y + 1.
                    let from_right = Self::level_entry(prev, start, n, y + 1, k, y);
                    if let Some(m) = from_right {
                        acc += &(&p * m);
                    }
                    // Last step was a right move from y - 1.
                    let from_left = Self::level_entry(prev, start, n, y - 1, k, y);
                    if let Some(m) = from_left {
                        acc += &(&q * m);
                    }
                    if !acc.is_zero() {
                        next[i * width + k] = acc;
                    }
                }
            }
            levels.push(next);
        }
        SojournTable { start, n_max, levels }
    }

    /// Entry of `level` (time `n`) at position `from` and the sojourn count
    /// left over after paying for the step `from -> to`.
    fn level_entry<'a>(
        level: &'a [Mat2],
        start: i64,
        n: usize,
        from: i64,
        k: usize,
        to: i64,
    ) -> Option<&'a Mat2> {
        let cost = usize::from(interval_counted(from, to));
        let k_prev = k.checked_sub(cost)?;
        if k_prev > n {
            return None;
        }
        let offset = from - (start - n as i64);
        if offset < 0 || offset % 2 != 0 {
            return None;
        }
        let i = (offset / 2) as usize;
        if i > n {
            return None;
        }
        let m = &level[i * (n + 1) + k_prev];
        (!m.is_zero()).then_some(m)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// The operator sum over paths `start -> y` in `n` steps with sojourn
    /// count `k`; zero outside the light cone or off parity.
    pub fn entry(&self, n: u32, y: i64, k: u32) -> Mat2 {
        self.entry_ref(n, y, k).cloned().unwrap_or_else(Mat2::zero)
    }

    fn entry_ref(&self, n: u32, y: i64, k: u32) -> Option<&Mat2> {
        if n > self.n_max || k > n {
            return None;
        }
        let n = n as usize;
        let offset = y - (self.start - n as i64);
        if offset < 0 || offset % 2 != 0 {
            return None;
        }
        let i = (offset / 2) as usize;
        if i > n {
            return None;
        }
        Some(&self.levels[n][i * (n + 1) + k as usize])
    }

    /// Endpoints `y` with a stored (possibly zero) entry at time `n`.
    pub fn positions(&self, n: u32) -> impl Iterator<Item = i64> + '_ {
        let n = n as i64;
        let start = self.start;
        (0..=n).map(move |i| start - n + 2 * i)
    }

    /// Sum over all endpoints: the operator for "sojourn count `k` by time
    /// `n`, any endpoint".
    pub fn psi(&self, n: u32, k: u32) -> Mat2 {
        if k > n {
            return Mat2::zero();
        }
        let mut acc = Mat2::zero();
        for y in self.positions(n) {
            if let Some(m) = self.entry_ref(n, y, k) {
                acc += m;
            }
        }
        acc
    }

    /// Bridge operator: paths returning to the origin. Requires a table
    /// started at 0.
    pub fn gamma(&self, n: u32, k: u32) -> Mat2 {
        assert_eq!(self.start, 0, "bridge operators are taken from a start-0 table");
        self.entry(n, 0, k)
    }

    /// The plain `n`-step evolution operator to endpoint `y` (all sojourn
    /// counts summed).
    pub fn evolution_operator(&self, n: u32, y: i64) -> Mat2 {
        let mut acc = Mat2::zero();
        for k in 0..=n {
            if let Some(m) = self.entry_ref(n, y, k) {
                acc += m;
            }
        }
        acc
    }

    /// The exact position distribution at time `n` for initial state `phi`.
    ///
    /// Values live in Q[sqrt(2)]; they are plain rationals for the standard
    /// states. Probabilities over the reached positions sum to one exactly.
    pub fn position_distribution(
        &self,
        n: u32,
        phi: &QubitState,
    ) -> Result<BTreeMap<i64, Qr2>, Error> {
        assert!(n <= self.n_max, "table computed only to time {}", self.n_max);
        let v = phi.as_vector();
        let mut dist = BTreeMap::new();
        for y in self.positions(n) {
            let op = self.evolution_operator(n, y);
            let (top, bottom) = op.apply(&v);
            let prob = top.norm_sqr() + bottom.norm_sqr();
            if !prob.is_zero() {
                dist.insert(y, prob);
            }
        }
        Ok(dist)
    }
}
