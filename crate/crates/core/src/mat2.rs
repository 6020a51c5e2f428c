//! Exact 2x2 matrices over Q[sqrt(2)] and the P/Q/R/S basis calculus.
//!
//! The coin is split as `U = P + Q`: `P` keeps the top row of `U` (a step to
//! the left), `Q` the bottom row (a step to the right). Together with `R`
//! and `S`, the Hadamard-coin matrices form an orthonormal basis of the real
//! 2x2 matrices under the trace inner product `<A|B> = tr(A^T B)` (all
//! entries are real, so the adjoint is the transpose), and every path-sum
//! operator in this crate is expressed in that basis.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::qr2::{ComplexQr2, Qr2};

/// A 2x2 matrix with [`Qr2`] entries, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    e: [[Qr2; 2]; 2],
}

impl Mat2 {
    pub fn new(e: [[Qr2; 2]; 2]) -> Self {
        Mat2 { e }
    }

    /// Build from integer-pair entries `n/d` (literal-friendly).
    pub fn from_ratios(e: [[(i64, i64); 2]; 2]) -> Self {
        Mat2::new(e.map(|row| row.map(|(n, d)| Qr2::from_ratio(n, d))))
    }

    pub fn zero() -> Self {
        Mat2::new([
            [Qr2::zero(), Qr2::zero()],
            [Qr2::zero(), Qr2::zero()],
        ])
    }

    pub fn identity() -> Self {
        Mat2::new([
            [Qr2::one(), Qr2::zero()],
            [Qr2::zero(), Qr2::one()],
        ])
    }

    /// The Hadamard gate `H = (1/sqrt(2)) [[1, 1], [1, -1]]`.
    pub fn hadamard() -> Self {
        Mat2::from_ratios([[(1, 1), (1, 1)], [(1, 1), (-1, 1)]]).scale(&Qr2::inv_sqrt2())
    }

    /// `P = (1/sqrt(2)) [[1, 1], [0, 0]]`: the left-step half of the coin.
    pub fn coin_p() -> Self {
        coin_split(&Mat2::hadamard()).0
    }

    /// `Q = (1/sqrt(2)) [[0, 0], [1, -1]]`: the right-step half of the coin.
    pub fn coin_q() -> Self {
        coin_split(&Mat2::hadamard()).1
    }

    /// `R = (1/sqrt(2)) [[1, -1], [0, 0]]`.
    pub fn basis_r() -> Self {
        Mat2::from_ratios([[(1, 1), (-1, 1)], [(0, 1), (0, 1)]]).scale(&Qr2::inv_sqrt2())
    }

    /// `S = (1/sqrt(2)) [[0, 0], [1, 1]]`.
    pub fn basis_s() -> Self {
        Mat2::from_ratios([[(0, 1), (0, 1)], [(1, 1), (1, 1)]]).scale(&Qr2::inv_sqrt2())
    }

    pub fn entry(&self, row: usize, col: usize) -> &Qr2 {
        &self.e[row][col]
    }

    pub fn rows(&self) -> &[[Qr2; 2]; 2] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Qr2::is_zero)
    }

    pub fn scale(&self, c: &Qr2) -> Self {
        Mat2::new([
            [c * &self.e[0][0], c * &self.e[0][1]],
            [c * &self.e[1][0], c * &self.e[1][1]],
        ])
    }

    pub fn transpose(&self) -> Self {
        Mat2::new([
            [self.e[0][0].clone(), self.e[1][0].clone()],
            [self.e[0][1].clone(), self.e[1][1].clone()],
        ])
    }

    pub fn trace(&self) -> Qr2 {
        &self.e[0][0] + &self.e[1][1]
    }

    /// Trace inner product `<self|other> = tr(self^T other)`.
    ///
    /// Entries are real, so conjugation is the identity and this expands to
    /// the entrywise dot product.
    pub fn trace_inner(&self, other: &Mat2) -> Qr2 {
        self.e
            .iter()
            .flatten()
            .zip(other.e.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Apply to a complex 2-vector `(top, bottom)`.
    pub fn apply(&self, v: &(ComplexQr2, ComplexQr2)) -> (ComplexQr2, ComplexQr2) {
        (
            &v.0.scale(&self.e[0][0]) + &v.1.scale(&self.e[0][1]),
            &v.0.scale(&self.e[1][0]) + &v.1.scale(&self.e[1][1]),
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

impl Add<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &Mat2) -> Mat2 {
        Mat2::new([
            [&self.e[0][0] + &rhs.e[0][0], &self.e[0][1] + &rhs.e[0][1]],
            [&self.e[1][0] + &rhs.e[1][0], &self.e[1][1] + &rhs.e[1][1]],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        &self + &rhs
    }
}

impl AddAssign<&Mat2> for Mat2 {
    fn add_assign(&mut self, rhs: &Mat2) {
        for (row, rhs_row) in self.e.iter_mut().zip(&rhs.e) {
            for (entry, rhs_entry) in row.iter_mut().zip(rhs_row) {
                *entry += rhs_entry;
            }
        }
    }
}

impl Sub<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: &Mat2) -> Mat2 {
        Mat2::new([
            [&self.e[0][0] - &rhs.e[0][0], &self.e[0][1] - &rhs.e[0][1]],
            [&self.e[1][0] - &rhs.e[1][0], &self.e[1][1] - &rhs.e[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        &self - &rhs
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::zero() - self.clone()
    }
}

/// Exact matrix product.
impl Mul<&Mat2> for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let cell = |i: usize, j: usize| {
            &self.e[i][0] * &rhs.e[0][j] + &self.e[i][1] * &rhs.e[1][j]
        };
        Mat2::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl Sum for Mat2 {
    fn sum<I: Iterator<Item = Mat2>>(iter: I) -> Mat2 {
        iter.fold(Mat2::zero(), |mut acc, m| {
            acc += &m;
            acc
        })
    }
}

/// Split a coin `U` into `P` (top row, left move) and `Q` (bottom row,
/// right move) with `P + Q = U`.
pub fn coin_split(u: &Mat2) -> (Mat2, Mat2) {
    let rows = u.rows();
    let p = Mat2::new([
        [rows[0][0].clone(), rows[0][1].clone()],
        [Qr2::zero(), Qr2::zero()],
    ]);
    let q = Mat2::new([
        [Qr2::zero(), Qr2::zero()],
        [rows[1][0].clone(), rows[1][1].clone()],
    ]);
    (p, q)
}

/// Coordinates of a matrix in the orthonormal basis `{P, Q, R, S}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PqrsCoeffs {
    pub p: Qr2,
    pub q: Qr2,
    pub r: Qr2,
    pub s: Qr2,
}

impl PqrsCoeffs {
    pub fn coeff(&self, which: char) -> &Qr2 {
        match which {
            'p' => &self.p,
            'q' => &self.q,
            'r' => &self.r,
            's' => &self.s,
            _ => panic!("no such basis coefficient: {which}"),
        }
    }
}

/// Expand `M = p P + q Q + r R + s S` via the trace inner product.
///
/// Every real 2x2 matrix lies in the real span of `{P, Q, R, S}`, so this is
/// total, and [`pqrs_compose`] is its exact inverse.
pub fn pqrs_decompose(m: &Mat2) -> PqrsCoeffs {
    PqrsCoeffs {
        p: Mat2::coin_p().trace_inner(m),
        q: Mat2::coin_q().trace_inner(m),
        r: Mat2::basis_r().trace_inner(m),
        s: Mat2::basis_s().trace_inner(m),
    }
}

pub fn pqrs_compose(c: &PqrsCoeffs) -> Mat2 {
    let mut m = Mat2::coin_p().scale(&c.p);
    m += &Mat2::coin_q().scale(&c.q);
    m += &Mat2::basis_r().scale(&c.r);
    m += &Mat2::basis_s().scale(&c.s);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis() -> [(char, Mat2); 4] {
        [
            ('P', Mat2::coin_p()),
            ('Q', Mat2::coin_q()),
            ('R', Mat2::basis_r()),
            ('S', Mat2::basis_s()),
        ]
    }

    #[test]
    fn hadamard_is_an_involution() {
        let h = Mat2::hadamard();
        assert_eq!(&h * &h, Mat2::identity());
    }

    #[test]
    fn coin_split_recomposes() {
        let h = Mat2::hadamard();
        let (p, q) = coin_split(&h);
        assert_eq!(&p + &q, h);
        assert_eq!(p, Mat2::coin_p());
        assert_eq!(q, Mat2::coin_q());

        let (pi, qi) = coin_split(&Mat2::identity());
        assert_eq!(pi, Mat2::from_ratios([[(1, 1), (0, 1)], [(0, 1), (0, 1)]]));
        assert_eq!(qi, Mat2::from_ratios([[(0, 1), (0, 1)], [(0, 1), (1, 1)]]));

        let (pz, qz) = coin_split(&Mat2::zero());
        assert_eq!(pz, Mat2::zero());
        assert_eq!(qz, Mat2::zero());
    }

    #[test]
    fn pqrs_is_orthonormal() {
        for (i, (_, a)) in basis().iter().enumerate() {
            for (j, (_, b)) in basis().iter().enumerate() {
                let expected = if i == j { Qr2::one() } else { Qr2::zero() };
                assert_eq!(a.trace_inner(b), expected, "<{i}|{j}>");
            }
        }
    }

    /// The full multiplication table of the basis at the Hadamard coin
    /// entries a = b = c = 1/sqrt(2), d = -1/sqrt(2):
    /// rows are the left factor, columns the right factor.
    #[test]
    fn pqrs_multiplication_table() {
        let a = Qr2::inv_sqrt2();
        let b = Qr2::inv_sqrt2();
        let c = Qr2::inv_sqrt2();
        let d = -Qr2::inv_sqrt2();
        let [p, q, r, s] = basis().map(|(_, m)| m);
        let table: [[(&Mat2, &Qr2, &Mat2); 4]; 4] = [
            [(&p, &a, &p), (&p, &b, &r), (&p, &a, &r), (&p, &b, &p)],
            [(&q, &c, &s), (&q, &d, &q), (&q, &c, &q), (&q, &d, &s)],
            [(&r, &c, &p), (&r, &d, &r), (&r, &c, &r), (&r, &d, &p)],
            [(&s, &a, &s), (&s, &b, &q), (&s, &a, &q), (&s, &b, &s)],
        ];
        let cols = [&p, &q, &r, &s];
        for (i, row) in table.iter().enumerate() {
            for (j, (left, coeff, result)) in row.iter().enumerate() {
                assert_eq!(
                    *left * cols[j],
                    result.scale(coeff),
                    "product at row {i}, column {j}"
                );
            }
        }
    }

    #[test]
    fn pq_and_qp_products() {
        // PQ = (1/sqrt(2)) R and QP = (1/sqrt(2)) S.
        let half = Qr2::from_ratio(1, 2);
        let pq = &Mat2::coin_p() * &Mat2::coin_q();
        assert_eq!(pq, Mat2::basis_r().scale(&Qr2::inv_sqrt2()));
        assert_eq!(pq, Mat2::from_ratios([[(1, 1), (-1, 1)], [(0, 1), (0, 1)]]).scale(&half));
        let qp = &Mat2::coin_q() * &Mat2::coin_p();
        assert_eq!(qp, Mat2::basis_s().scale(&Qr2::inv_sqrt2()));
        assert_eq!(qp, Mat2::from_ratios([[(0, 1), (0, 1)], [(1, 1), (1, 1)]]).scale(&half));
    }

    #[test]
    fn decompose_basis_elements() {
        let coeffs = pqrs_decompose(&Mat2::coin_p());
        assert_eq!(
            (coeffs.p, coeffs.q, coeffs.r, coeffs.s),
            (Qr2::one(), Qr2::zero(), Qr2::zero(), Qr2::zero())
        );
        // H = P + Q.
        let coeffs = pqrs_decompose(&Mat2::hadamard());
        assert_eq!(
            (coeffs.p, coeffs.q, coeffs.r, coeffs.s),
            (Qr2::one(), Qr2::one(), Qr2::zero(), Qr2::zero())
        );
    }

    proptest! {
        #[test]
        fn compose_inverts_decompose(
            entries in proptest::array::uniform8((-30i64..=30, 1i64..=10)),
        ) {
            // Random rational matrices; rad parts come along for free via P..S.
            let [a, b, c, d, e, f, g, h] = entries;
            let m = Mat2::from_ratios([[a, b], [c, d]]);
            prop_assert_eq!(pqrs_compose(&pqrs_decompose(&m)), m);
            let m2 = Mat2::from_ratios([[e, f], [g, h]]).scale(&Qr2::sqrt2());
            prop_assert_eq!(pqrs_compose(&pqrs_decompose(&m2)), m2);
        }
    }
}
