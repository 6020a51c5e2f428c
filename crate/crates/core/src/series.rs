//! Truncated bivariate formal power series over Q[sqrt(2)].
//!
//! A [`BiSeries`] retains the coefficients of `z^i t^j` for `i <= trunc_z`,
//! `j <= trunc_t`, and all arithmetic is exact on the retained rectangle: if
//! `f` and `g` are truncations of exact series `F` and `G`, then `f * g` is
//! the truncation of `F * G`. Division supports denominators that vanish at
//! the origin as long as they are a monomial times a unit series, which
//! covers every quotient of the closed-form generating functions expanded in
//! [`crate::theorems`].

use std::ops::{Add, Mul, Sub};

use crate::error::Error;
use crate::qr2::Qr2;

/// Bivariate series in `z` and `t`, truncated to a rectangle of exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    trunc_z: usize,
    trunc_t: usize,
    /// Row-major: index `i * (trunc_t + 1) + j` holds the coefficient of
    /// `z^i t^j`.
    coeffs: Vec<Qr2>,
}

impl BiSeries {
    pub fn zero(trunc_z: usize, trunc_t: usize) -> Self {
        BiSeries {
            trunc_z,
            trunc_t,
            coeffs: vec![Qr2::zero(); (trunc_z + 1) * (trunc_t + 1)],
        }
    }

    pub fn constant(trunc_z: usize, trunc_t: usize, c: Qr2) -> Self {
        BiSeries::monomial(trunc_z, trunc_t, 0, 0, c)
    }

    pub fn one(trunc_z: usize, trunc_t: usize) -> Self {
        BiSeries::constant(trunc_z, trunc_t, Qr2::one())
    }

    /// `c * z^i t^j`; exponents beyond the truncation are dropped.
    pub fn monomial(trunc_z: usize, trunc_t: usize, i: usize, j: usize, c: Qr2) -> Self {
        let mut s = BiSeries::zero(trunc_z, trunc_t);
        if i <= trunc_z && j <= trunc_t {
            s.coeffs[i * (trunc_t + 1) + j] = c;
        }
        s
    }

    /// Sum of monomials, literal-friendly.
    pub fn poly(trunc_z: usize, trunc_t: usize, terms: &[(usize, usize, Qr2)]) -> Self {
        let mut s = BiSeries::zero(trunc_z, trunc_t);
        for (i, j, c) in terms {
            if *i <= trunc_z && *j <= trunc_t {
                s.coeffs[i * (trunc_t + 1) + j] += c;
            }
        }
        s
    }

    pub fn trunc_z(&self) -> usize {
        self.trunc_z
    }

    pub fn trunc_t(&self) -> usize {
        self.trunc_t
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.trunc_t + 1) + j
    }

    /// Coefficient of `z^i t^j`; zero outside the retained rectangle.
    pub fn coeff(&self, i: usize, j: usize) -> Qr2 {
        self.coeff_ref(i, j).cloned().unwrap_or_else(Qr2::zero)
    }

    pub fn coeff_ref(&self, i: usize, j: usize) -> Option<&Qr2> {
        (i <= self.trunc_z && j <= self.trunc_t).then(|| &self.coeffs[self.idx(i, j)])
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Qr2) {
        assert!(i <= self.trunc_z && j <= self.trunc_t, "exponent out of truncation range");
        let at = self.idx(i, j);
        self.coeffs[at] = c;
    }

    pub fn add_to_coeff(&mut self, i: usize, j: usize, c: &Qr2) {
        assert!(i <= self.trunc_z && j <= self.trunc_t, "exponent out of truncation range");
        let at = self.idx(i, j);
        self.coeffs[at] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Qr2::is_zero)
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, usize, &Qr2)> {
        let width = self.trunc_t + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(at, c)| (at / width, at % width, c))
    }

    pub fn scale(&self, c: &Qr2) -> Self {
        let mut out = self.clone();
        for coeff in &mut out.coeffs {
            if !coeff.is_zero() {
                *coeff *= c;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Qr2::one())
    }

    /// Copy the retained coefficients into a (usually smaller) rectangle.
    pub fn restrict(&self, trunc_z: usize, trunc_t: usize) -> Self {
        let mut out = BiSeries::zero(trunc_z, trunc_t);
        for i in 0..=trunc_z.min(self.trunc_z) {
            for j in 0..=trunc_t.min(self.trunc_t) {
                let c = &self.coeffs[self.idx(i, j)];
                if !c.is_zero() {
                    out.set_coeff(i, j, c.clone());
                }
            }
        }
        out
    }

    /// Zero out every coefficient whose z-exponent fails the predicate.
    pub fn retain_z(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut out = self.clone();
        for i in 0..=out.trunc_z {
            if !keep(i) {
                for j in 0..=out.trunc_t {
                    let at = out.idx(i, j);
                    out.coeffs[at] = Qr2::zero();
                }
            }
        }
        out
    }

    /// Substitute `z -> -z` and/or `t -> -t`: coefficient `(i, j)` picks up
    /// `(-1)^(i*flip_z + j*flip_t)`.
    pub fn substitute_sign(&self, flip_z: bool, flip_t: bool) -> Self {
        let mut out = self.clone();
        for i in 0..=out.trunc_z {
            for j in 0..=out.trunc_t {
                let parity = (flip_z && i % 2 == 1) ^ (flip_t && j % 2 == 1);
                if parity {
                    let at = out.idx(i, j);
                    if !out.coeffs[at].is_zero() {
                        out.coeffs[at] = -&out.coeffs[at];
                    }
                }
            }
        }
        out
    }

    /// `(f(z,t) + f(-z,t) + f(z,-t) + f(-z,-t)) / 4`: the even-even part.
    pub fn symmetrize_even(&self) -> Self {
        let mut acc = self.clone();
        acc = &acc + &self.substitute_sign(true, false);
        acc = &acc + &self.substitute_sign(false, true);
        acc = &acc + &self.substitute_sign(true, true);
        acc.scale(&Qr2::from_ratio(1, 4))
    }

    /// `(min_i, min_j)` over the support, taken independently per variable;
    /// the greatest monomial dividing every term. `None` for the zero series.
    pub fn valuation_monomial(&self) -> Option<(usize, usize)> {
        let mut found = None;
        for (i, j, _) in self.iter_nonzero() {
            let (a, b) = found.unwrap_or((i, j));
            found = Some((a.min(i), b.min(j)));
        }
        found
    }

    fn divisible_by_monomial(&self, a: usize, b: usize) -> bool {
        self.iter_nonzero().all(|(i, j, _)| i >= a && j >= b)
    }

    /// Divide by `z^a t^b`, shrinking the truncation rectangle accordingly.
    /// The caller must have checked divisibility.
    fn shift_down(&self, a: usize, b: usize) -> Self {
        let mut out = BiSeries::zero(self.trunc_z - a, self.trunc_t - b);
        for (i, j, c) in self.iter_nonzero() {
            out.set_coeff(i - a, j - b, c.clone());
        }
        out
    }

    /// Exact truncated quotient.
    ///
    /// The denominator must be a monomial `z^a t^b` times a series with a
    /// nonzero constant term, and the numerator must be divisible by that
    /// monomial; the result is truncated to `(trunc_z - a, trunc_t - b)`.
    pub fn div(&self, den: &BiSeries) -> Result<BiSeries, Error> {
        let (a, b) = den.valuation_monomial().ok_or(Error::DivisionByZero)?;
        let den = den.shift_down(a, b);
        let den_unit = den.coeff(0, 0);
        if den_unit.is_zero() {
            return Err(Error::NonUnitDenominator);
        }
        if !self.divisible_by_monomial(a, b) {
            return Err(Error::NonPowerSeriesQuotient);
        }
        if self.is_zero() {
            return Ok(BiSeries::zero(
                self.trunc_z.saturating_sub(a).min(den.trunc_z),
                self.trunc_t.saturating_sub(b).min(den.trunc_t),
            ));
        }
        let num = self.shift_down(a, b);

        let tz = num.trunc_z.min(den.trunc_z);
        let tt = num.trunc_t.min(den.trunc_t);
        let mut quot = BiSeries::zero(tz, tt);
        let inv_unit = den_unit.inverse().expect("checked nonzero");
        for d in 0..=(tz + tt) {
            for i in d.saturating_sub(tt)..=d.min(tz) {
                let j = d - i;
                // num[i][j] = sum_{p<=i, q<=j} quot[p][q] * den[i-p][j-q]
                let mut acc = num.coeff(i, j);
                for (p, q, qc) in quot.iter_nonzero() {
                    if p <= i && q <= j && (p, q) != (i, j) {
                        if let Some(dc) = den.coeff_ref(i - p, j - q) {
                            if !dc.is_zero() {
                                acc -= &(qc * dc);
                            }
                        }
                    }
                }
                if !acc.is_zero() {
                    quot.set_coeff(i, j, &acc * &inv_unit);
                }
            }
        }
        Ok(quot)
    }

    /// Exact truncated square root, requiring constant term 1.
    ///
    /// Coefficients are solved degree by degree from `g * g = f`; the result
    /// has constant term 1 and `g * g` reproduces `f` on the retained
    /// rectangle.
    pub fn sqrt(&self) -> Result<BiSeries, Error> {
        if self.coeff(0, 0) != Qr2::one() {
            return Err(Error::SqrtConstantTerm);
        }
        let (tz, tt) = (self.trunc_z, self.trunc_t);
        let mut root = BiSeries::zero(tz, tt);
        root.set_coeff(0, 0, Qr2::one());
        let half = Qr2::from_ratio(1, 2);
        for d in 1..=(tz + tt) {
            for i in d.saturating_sub(tt)..=d.min(tz) {
                let j = d - i;
                // f[i][j] = 2 g[0][0] g[i][j] + sum of interior products.
                let mut acc = self.coeff(i, j);
                for (p, q, gc) in root.iter_nonzero() {
                    if p <= i && q <= j && (p, q) != (0, 0) && (p, q) != (i, j) {
                        if let Some(other) = root.coeff_ref(i - p, j - q) {
                            if !other.is_zero() {
                                acc -= &(gc * other);
                            }
                        }
                    }
                }
                if !acc.is_zero() {
                    root.set_coeff(i, j, &acc * &half);
                }
            }
        }
        Ok(root)
    }

    /// First coefficient where the two series disagree, scanning the shared
    /// retained rectangle capped at `(max_z, max_t)` in total-degree order.
    pub fn first_difference(
        &self,
        other: &BiSeries,
        max_z: usize,
        max_t: usize,
    ) -> Option<(usize, usize, Qr2, Qr2)> {
        let tz = max_z.min(self.trunc_z).min(other.trunc_z);
        let tt = max_t.min(self.trunc_t).min(other.trunc_t);
        for d in 0..=(tz + tt) {
            for i in d.saturating_sub(tt)..=d.min(tz) {
                let j = d - i;
                let lhs = self.coeff(i, j);
                let rhs = other.coeff(i, j);
                if lhs != rhs {
                    return Some((i, j, lhs, rhs));
                }
            }
        }
        None
    }
}

impl Add<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.trunc_z.min(rhs.trunc_z), self.trunc_t.min(rhs.trunc_t));
        for i in 0..=out.trunc_z {
            for j in 0..=out.trunc_t {
                let sum = &self.coeffs[self.idx(i, j)] + &rhs.coeffs[rhs.idx(i, j)];
                if !sum.is_zero() {
                    out.set_coeff(i, j, sum);
                }
            }
        }
        out
    }
}

impl Sub<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: &BiSeries) -> BiSeries {
        self + &rhs.neg()
    }
}

/// Cauchy product, truncated to the smaller rectangle of the operands.
impl Mul<&BiSeries> for &BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: &BiSeries) -> BiSeries {
        let mut out = BiSeries::zero(self.trunc_z.min(rhs.trunc_z), self.trunc_t.min(rhs.trunc_t));
        for (a, b, lc) in self.iter_nonzero() {
            if a > out.trunc_z || b > out.trunc_t {
                continue;
            }
            for (c, d, rc) in rhs.iter_nonzero() {
                let (i, j) = (a + c, b + d);
                if i <= out.trunc_z && j <= out.trunc_t {
                    out.add_to_coeff(i, j, &(lc * rc));
                }
            }
        }
        out
    }
}

impl Add for BiSeries {
    type Output = BiSeries;
    fn add(self, rhs: BiSeries) -> BiSeries {
        &self + &rhs
    }
}

impl Sub for BiSeries {
    type Output = BiSeries;
    fn sub(self, rhs: BiSeries) -> BiSeries {
        &self - &rhs
    }
}

impl Mul for BiSeries {
    type Output = BiSeries;
    fn mul(self, rhs: BiSeries) -> BiSeries {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::binomial;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Qr2 {
        Qr2::from_ratio(n, d)
    }

    fn z(tz: usize, tt: usize) -> BiSeries {
        BiSeries::monomial(tz, tt, 1, 0, Qr2::one())
    }

    #[test]
    fn product_of_conjugate_binomials() {
        let tz = 6;
        let one = BiSeries::one(tz, 0);
        let lhs = &(&one + &z(tz, 0)) * &(&one - &z(tz, 0));
        let expected = BiSeries::poly(tz, 0, &[(0, 0, q(1, 1)), (2, 0, q(-1, 1))]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn multiplicative_identity() {
        let f = BiSeries::poly(5, 5, &[(0, 0, q(3, 7)), (2, 1, Qr2::sqrt2()), (5, 5, q(-1, 2))]);
        assert_eq!(&f * &BiSeries::one(5, 5), f);
    }

    #[test]
    fn monomial_product() {
        let m = BiSeries::monomial(8, 8, 2, 2, Qr2::one());
        assert_eq!(&m * &m, BiSeries::monomial(8, 8, 4, 4, Qr2::one()));
    }

    #[test]
    fn sqrt_of_one_plus_z4() {
        // sqrt(1+x) = 1 + x/2 - x^2/8 + ..., so sqrt(1+z^4) = 1 + z^4/2 - z^8/8 + ...
        let f = BiSeries::poly(8, 0, &[(0, 0, q(1, 1)), (4, 0, q(1, 1))]);
        let root = f.sqrt().unwrap();
        assert_eq!(root.coeff(0, 0), q(1, 1));
        assert_eq!(root.coeff(4, 0), q(1, 2));
        assert_eq!(root.coeff(8, 0), q(-1, 8));
        assert_eq!(&root * &root, f);
    }

    #[test]
    fn sqrt_trivial_and_perfect_square() {
        let one = BiSeries::one(6, 6);
        assert_eq!(one.sqrt().unwrap(), one);
        let f = &BiSeries::one(6, 6) + &BiSeries::monomial(6, 6, 1, 0, Qr2::one());
        assert_eq!((&f * &f).sqrt().unwrap(), f);
    }

    #[test]
    fn sqrt_requires_unit_constant() {
        let f = BiSeries::constant(4, 4, q(2, 1));
        assert_eq!(f.sqrt(), Err(Error::SqrtConstantTerm));
        assert_eq!(BiSeries::zero(4, 4).sqrt(), Err(Error::SqrtConstantTerm));
    }

    #[test]
    fn division_with_common_monomial() {
        let m = BiSeries::monomial(8, 8, 2, 2, Qr2::one());
        let quot = m.div(&m).unwrap();
        assert_eq!(quot, BiSeries::one(6, 6));
    }

    #[test]
    fn geometric_series() {
        let tz = 10;
        let den = &BiSeries::one(tz, 0) - &z(tz, 0);
        let quot = BiSeries::one(tz, 0).div(&den).unwrap();
        for i in 0..=tz {
            assert_eq!(quot.coeff(i, 0), Qr2::one());
        }
    }

    #[test]
    fn division_errors() {
        let one = BiSeries::one(4, 4);
        assert_eq!(one.div(&BiSeries::zero(4, 4)), Err(Error::DivisionByZero));
        // z + t is not a monomial times a unit.
        let zt = BiSeries::poly(4, 4, &[(1, 0, q(1, 1)), (0, 1, q(1, 1))]);
        assert_eq!(one.div(&zt), Err(Error::NonUnitDenominator));
        // z / z^2 is not a power series.
        let z1 = BiSeries::monomial(4, 4, 1, 0, Qr2::one());
        let z2 = BiSeries::monomial(4, 4, 2, 0, Qr2::one());
        assert_eq!(z1.div(&z2), Err(Error::NonPowerSeriesQuotient));
    }

    #[test]
    fn sign_substitution() {
        let f = z(4, 4);
        assert_eq!(f.substitute_sign(true, false), f.neg());
        let f2 = BiSeries::monomial(4, 4, 2, 0, Qr2::one());
        assert_eq!(f2.substitute_sign(true, false), f2);
        // Symmetrization keeps only even-even terms.
        let mixed = BiSeries::poly(
            4,
            4,
            &[(1, 0, q(1, 1)), (2, 1, q(5, 3)), (2, 2, q(7, 2))],
        );
        let sym = mixed.symmetrize_even();
        assert_eq!(sym, BiSeries::monomial(4, 4, 2, 2, q(7, 2)));
    }

    /// Coefficient extraction from 1/(sqrt(1-z^2) sqrt(1-z^2 t^2)) matches the
    /// closed binomial form (1/2)^(2n) C(2k,k) C(2(n-k),n-k): the classical
    /// random-walk sojourn generating function.
    #[test]
    fn classical_generating_function_identity() {
        let (tz, tt) = (20, 20);
        let a = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (2, 0, q(-1, 1))]);
        let b = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (2, 2, q(-1, 1))]);
        let den = &a.sqrt().unwrap() * &b.sqrt().unwrap();
        let gf = BiSeries::one(tz, tt).div(&den).unwrap();
        for n in 0..=10usize {
            for k in 0..=n {
                let expected = BigRational::new(
                    binomial(BigInt::from(2 * k), BigInt::from(k))
                        * binomial(BigInt::from(2 * (n - k)), BigInt::from(n - k)),
                    BigInt::from(4).pow(n as u32),
                );
                assert_eq!(
                    gf.coeff(2 * n, 2 * k),
                    Qr2::from_rational(expected),
                    "coefficient of z^{} t^{}",
                    2 * n,
                    2 * k
                );
            }
        }
        // Odd rows and columns vanish.
        for (i, j, _) in gf.iter_nonzero() {
            assert!(i % 2 == 0 && j % 2 == 0);
        }
    }

    prop_compose! {
        fn arb_coeff()(n in -12i64..=12, d in 1i64..=6, rad in -6i64..=6) -> Qr2 {
            Qr2::from_ratio(n, d) + Qr2::radical_ratio(rad, 3)
        }
    }

    prop_compose! {
        fn arb_series(tz: usize, tt: usize)
            (coeffs in proptest::collection::vec(arb_coeff(), (tz + 1) * (tt + 1)))
            -> BiSeries
        {
            let mut s = BiSeries::zero(tz, tt);
            let mut it = coeffs.into_iter();
            for i in 0..=tz {
                for j in 0..=tt {
                    s.set_coeff(i, j, it.next().unwrap());
                }
            }
            s
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn div_undoes_mul(f in arb_series(5, 5), mut g in arb_series(5, 5),
                          shift_z in 0usize..=2, shift_t in 0usize..=2) {
            g.set_coeff(0, 0, Qr2::one());
            // Optionally push the divisor off the origin by a monomial.
            let g = &g * &BiSeries::monomial(5, 5, shift_z, shift_t, Qr2::one());
            let product = &f * &g;
            let back = product.div(&g).unwrap();
            let expected = f.restrict(back.trunc_z(), back.trunc_t());
            prop_assert_eq!(back, expected);
        }

        #[test]
        fn sqrt_squares_back(mut f in arb_series(5, 5)) {
            f.set_coeff(0, 0, Qr2::one());
            let root = f.sqrt().unwrap();
            prop_assert_eq!(&root * &root, f);
        }
    }
}
