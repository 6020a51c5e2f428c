//! Closed-form generating functions and the exact identities relating them
//! to the path-counting tables.
//!
//! Three independent routes to the same coefficients are implemented here:
//!
//! * closed-form quotients for the sojourn generating functions of the free
//!   walk ([`theorem1_series`]) and the bridge walk ([`theorem2_series`]),
//!   expanded with exact series arithmetic;
//! * a first-return convolution for the bridge operators
//!   ([`gamma_via_convolution`]) seeded by the amplitudes of
//!   [`first_return_amplitudes`];
//! * the fixed-point identity `Gamma = X (I - X)^{-1}` over the first-return
//!   matrix `X` ([`x_matrix_check`]).
//!
//! [`check_lemma41`] and [`check_cor42`] verify the generating-function
//! recursions in the start position `x` directly on path-counting data, with
//! the Hadamard coin entries `a = b = c = 1/sqrt(2)`, `d = -1/sqrt(2)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Error;
use crate::mat2::{pqrs_decompose, Mat2};
use crate::qr2::Qr2;
use crate::report::CheckResult;
use crate::series::BiSeries;
use crate::walk::SojournTable;

/// Basis labels in the fixed order used throughout: `p`, `q`, `r`, `s`.
pub const BASIS_LABELS: [char; 4] = ['p', 'q', 'r', 's'];

fn coin_a() -> Qr2 {
    Qr2::inv_sqrt2()
}
fn coin_b() -> Qr2 {
    Qr2::inv_sqrt2()
}
fn coin_c() -> Qr2 {
    Qr2::inv_sqrt2()
}
fn coin_d() -> Qr2 {
    -Qr2::inv_sqrt2()
}

/// A quotient of truncated series, kept unreduced so the identity
/// `num = den * quotient` can be re-checked without dividing.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub num: BiSeries,
    pub den: BiSeries,
}

impl RationalForm {
    pub fn expand(&self) -> Result<BiSeries, Error> {
        self.num.div(&self.den)
    }
}

/// Shared building blocks at a fixed truncation rectangle.
struct Blocks {
    tz: usize,
    tt: usize,
    one: BiSeries,
    /// `A = sqrt(1 + z^4)`
    a: BiSeries,
    /// `B = sqrt(1 + z^4 t^4)`
    b: BiSeries,
    /// `1 - z^2`
    one_minus_z2: BiSeries,
    /// `1 - z^2 t^2`
    one_minus_z2t2: BiSeries,
}

impl Blocks {
    fn new(tz: usize, tt: usize) -> Result<Self, Error> {
        let one = BiSeries::one(tz, tt);
        let q = |n: i64, d: i64| Qr2::from_ratio(n, d);
        let a = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (4, 0, q(1, 1))]).sqrt()?;
        let b = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (4, 4, q(1, 1))]).sqrt()?;
        let one_minus_z2 = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (2, 0, q(-1, 1))]);
        let one_minus_z2t2 = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (2, 2, q(-1, 1))]);
        Ok(Blocks {
            tz,
            tt,
            one,
            a,
            b,
            one_minus_z2,
            one_minus_z2t2,
        })
    }

    fn mono(&self, i: usize, j: usize) -> BiSeries {
        BiSeries::monomial(self.tz, self.tt, i, j, Qr2::one())
    }

    fn poly(&self, terms: &[(usize, usize, i64, i64)]) -> BiSeries {
        let scaled: Vec<(usize, usize, Qr2)> = terms
            .iter()
            .map(|&(i, j, n, d)| (i, j, Qr2::from_ratio(n, d)))
            .collect();
        BiSeries::poly(self.tz, self.tt, &scaled)
    }
}

/// The four sojourn generating functions of the free walk started at the
/// origin, restricted to even powers: the coefficient of `z^(2n) t^(2k)` in
/// `u_bar` is the basis coefficient `u` of the path sum at time `2n` with
/// sojourn count `2k`.
#[derive(Clone, Debug)]
pub struct Theorem1Series {
    pub p_bar: BiSeries,
    pub q_bar: BiSeries,
    pub r_bar: BiSeries,
    pub s_bar: BiSeries,
    order: usize,
}

impl Theorem1Series {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self, u: char) -> &BiSeries {
        match u {
            'p' => &self.p_bar,
            'q' => &self.q_bar,
            'r' => &self.r_bar,
            's' => &self.s_bar,
            _ => panic!("no such generating function: {u}"),
        }
    }
}

/// The closed forms behind [`theorem1_series`], as unreduced quotients in
/// the order `p, q, r, s`.
///
/// The denominators vanish at the origin only through an overall monomial,
/// which the series division extracts; headroom of two z-orders and four
/// t-orders over `order` keeps every retained coefficient of the quotient
/// exact on the `(order, order)` rectangle.
pub fn theorem1_closed_forms(order: u32) -> Result<[RationalForm; 4], Error> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let blocks = Blocks::new(order as usize + 2, order as usize + 4)?;
    let Blocks {
        ref one,
        ref a,
        ref b,
        ref one_minus_z2,
        ref one_minus_z2t2,
        ..
    } = blocks;
    let sqrt2 = BiSeries::constant(blocks.tz, blocks.tt, Qr2::sqrt2());
    let z2t2 = blocks.mono(2, 2);
    let one_plus_a = one + a;

    // p: z^2 t^2 { 2(1 - t^2) z^2 + (1 - z^2 t^2) A + (1 - z^2) B }
    //    over sqrt(2) (1 - z^2)(1 - z^2 t^2) { -1 + (1 + A) t^2 + B }.
    let p_num = &z2t2
        * &(&(&blocks.poly(&[(2, 0, 2, 1), (2, 2, -2, 1)]) + &(one_minus_z2t2 * a))
            + &(one_minus_z2 * b));
    let p_den = &(&sqrt2 * &(one_minus_z2 * one_minus_z2t2))
        * &(&(&(&one_plus_a * &blocks.mono(0, 2)) - one) + b);

    // r: { -z^4 t^2 + (1 + A)(1 - B) + z^2 (1 + (1 + A) t^2 - B) }
    //    over 2 sqrt(2) (1 - z^2)(1 - z^2 t^2).
    let r_num = &(&blocks.poly(&[(4, 2, -1, 1)]) + &(&one_plus_a * &(one - b)))
        + &(&blocks.mono(2, 0) * &(&(one + &(&one_plus_a * &blocks.mono(0, 2))) - b));
    let r_den = (&sqrt2 * &(one_minus_z2 * one_minus_z2t2)).scale(&Qr2::from_int(2));

    // q: z^2 t^2 [ -z^4 + z^6 t^2 + (1 + A){ -1 + (2 - t^2) z^2 - (1 - z^2) B } ]
    //    over sqrt(2) (1 - z^2)(1 - z^2 t^2)(1 + A){ 1 - (1 - A) t^2 + B }.
    let one_minus_a_t2 = &(one - a) * &blocks.mono(0, 2);
    let q_num = &z2t2
        * &(&blocks.poly(&[(4, 0, -1, 1), (6, 2, 1, 1)])
            + &(&one_plus_a
                * &(&blocks.poly(&[(0, 0, -1, 1), (2, 0, 2, 1), (2, 2, -1, 1)])
                    - &(one_minus_z2 * b))));
    let q_den = &(&(&sqrt2 * &(one_minus_z2 * one_minus_z2t2)) * &one_plus_a)
        * &(&(one - &one_minus_a_t2) + b);

    // s: z^4 t^2 { (1 - z^4 t^4) A + (1 - z^2)(1 + z^2 t^2) B + (1 - z^2 t^2) A B + (1 - z^2) B^2 }
    //    over sqrt(2) (1 - z^2)(1 - z^2 t^2)(1 + A)(-1 + z^2 t^2 + B){ 1 - (1 - A) t^2 + B }.
    let s_num = &blocks.mono(4, 2)
        * &(&(&(&blocks.poly(&[(0, 0, 1, 1), (4, 4, -1, 1)]) * a)
            + &(&(one_minus_z2 * &(one + &z2t2)) * b))
            + &(&(one_minus_z2t2 * &(a * b)) + &(one_minus_z2 * &(b * b))));
    let s_den = &(&(&(&sqrt2 * &(one_minus_z2 * one_minus_z2t2)) * &one_plus_a)
        * &(&(&z2t2 - one) + b))
        * &(&(one - &one_minus_a_t2) + b);

    Ok([
        RationalForm { num: p_num, den: p_den },
        RationalForm { num: q_num, den: q_den },
        RationalForm { num: r_num, den: r_den },
        RationalForm { num: s_num, den: s_den },
    ])
}

/// Expand the four closed forms exactly to the `(order, order)` rectangle.
pub fn theorem1_series(order: u32) -> Result<Theorem1Series, Error> {
    let [p, q, r, s] = theorem1_closed_forms(order)?;
    let o = order as usize;
    Ok(Theorem1Series {
        p_bar: p.expand()?.restrict(o, o),
        q_bar: q.expand()?.restrict(o, o),
        r_bar: r.expand()?.restrict(o, o),
        s_bar: s.expand()?.restrict(o, o),
        order: o,
    })
}

/// The bridge generating function: entry `(i, j)` collects the `(i, j)`
/// matrix elements of the bridge operators, the coefficient of
/// `z^(2n) t^(2k)` being that element of the time-`2n`, sojourn-`2k` bridge
/// sum.
#[derive(Clone, Debug)]
pub struct Theorem2Series {
    entries: [[BiSeries; 2]; 2],
    order: usize,
}

impl Theorem2Series {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> &BiSeries {
        &self.entries[row][col]
    }

    /// The bridge operator read off the series: coefficient matrix of
    /// `z^time t^sojourn`.
    pub fn coefficient_matrix(&self, time: usize, sojourn: usize) -> Mat2 {
        Mat2::new([
            [
                self.entries[0][0].coeff(time, sojourn),
                self.entries[0][1].coeff(time, sojourn),
            ],
            [
                self.entries[1][0].coeff(time, sojourn),
                self.entries[1][1].coeff(time, sojourn),
            ],
        ])
    }
}

/// Numerator matrix and scalar denominator `C` of the bridge closed form.
pub fn theorem2_closed_form(order: u32) -> Result<([[BiSeries; 2]; 2], BiSeries), Error> {
    if order < 2 {
        return Err(Error::InvalidParameter(format!(
            "order must be at least 2, got {order}"
        )));
    }
    let blocks = Blocks::new(order as usize + 2, order as usize + 2)?;
    let Blocks { ref one, ref a, ref b, .. } = blocks;
    // z^2 - A and z^2 t^2 - B are units times -1 at the origin, so
    // C = -1 - (z^2 - A)(z^2 t^2 - B) has constant term -2: no monomial
    // extraction is needed for these quotients.
    let z2_minus_a = &blocks.mono(2, 0) - a;
    let z2t2_minus_b = &blocks.mono(2, 2) - b;
    let c = &(one.neg()) - &(&z2_minus_a * &z2t2_minus_b);
    let top_right = &(one + &blocks.mono(2, 2)) - b;
    let bottom_left = &(&(one.neg()) - &blocks.mono(2, 0)) + a;
    // The (1,1) entry carries (z^2 - A)(1 + z^2 t^2 - B) with a positive
    // sign: that is the sign consistent with the displayed expansion, the
    // path-counting table, and the first-return convolution, all of which
    // give +t^2/2 at z^2 t^2.
    let num = [
        [&z2_minus_a * &top_right, top_right.clone()],
        [bottom_left.clone(), (&bottom_left * &z2t2_minus_b).neg()],
    ];
    Ok((num, c))
}

/// Expand the bridge closed form exactly to the `(order, order)` rectangle.
pub fn theorem2_series(order: u32) -> Result<Theorem2Series, Error> {
    let (num, c) = theorem2_closed_form(order)?;
    let o = order as usize;
    let expand = |s: &BiSeries| -> Result<BiSeries, Error> { Ok(s.div(&c)?.restrict(o, o)) };
    Ok(Theorem2Series {
        entries: [
            [expand(&num[0][0])?, expand(&num[0][1])?],
            [expand(&num[1][0])?, expand(&num[1][1])?],
        ],
        order: o,
    })
}

/// Coefficients `a_n` of the first-return generating function
/// `(-1 - z^2 + sqrt(1 + z^4)) / z`; zero at even `n`.
#[derive(Clone, Debug)]
pub struct FirstReturnAmplitudes {
    /// `values[n]` is `a_n`; index 0 is unused (zero).
    values: Vec<BigRational>,
}

impl FirstReturnAmplitudes {
    pub fn n_max(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn amplitude(&self, n: u32) -> &BigRational {
        &self.values[n as usize]
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.values.iter().enumerate().skip(1).map(|(n, a)| (n as u32, a))
    }

    /// First-return bridge block staying on the positive side: the sum over
    /// length-`2r` first-return paths with sojourn count `2r`, which is
    /// `(a_(2r-1) / 2) [[-1, 1], [0, 0]]`.
    pub fn first_return_positive(&self, r: u32) -> Mat2 {
        let half = Qr2::from_rational(self.amplitude(2 * r - 1).clone()) * Qr2::from_ratio(1, 2);
        Mat2::from_ratios([[(-1, 1), (1, 1)], [(0, 1), (0, 1)]]).scale(&half)
    }

    /// First-return bridge block staying on the negative side (sojourn 0):
    /// `(a_(2r-1) / 2) [[0, 0], [-1, -1]]`.
    pub fn first_return_negative(&self, r: u32) -> Mat2 {
        let half = Qr2::from_rational(self.amplitude(2 * r - 1).clone()) * Qr2::from_ratio(1, 2);
        Mat2::from_ratios([[(0, 1), (0, 1)], [(-1, 1), (-1, 1)]]).scale(&half)
    }
}

/// Expand `(-1 - z^2 + sqrt(1 + z^4)) / z` to order `n_max`.
pub fn first_return_amplitudes(n_max: u32) -> Result<FirstReturnAmplitudes, Error> {
    if n_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "n_max must be at least 1, got {n_max}"
        )));
    }
    let tz = n_max as usize + 1;
    let q = |n: i64, d: i64| Qr2::from_ratio(n, d);
    let radicand = BiSeries::poly(tz, 0, &[(0, 0, q(1, 1)), (4, 0, q(1, 1))]);
    let num = &BiSeries::poly(tz, 0, &[(0, 0, q(-1, 1)), (2, 0, q(-1, 1))]) + &radicand.sqrt()?;
    let series = num.div(&BiSeries::monomial(tz, 0, 1, 0, Qr2::one()))?;
    let mut values = vec![BigRational::zero()];
    for n in 1..=n_max as usize {
        let c = series.coeff(n, 0);
        let rational = c
            .as_rational()
            .expect("first-return amplitudes are rational")
            .clone();
        values.push(rational);
    }
    Ok(FirstReturnAmplitudes { values })
}

/// Bridge operators computed purely from the first-return convolution,
/// independent of the path-counting tables.
#[derive(Clone, Debug)]
pub struct BridgeConvolution {
    /// `g[n][k]` is the bridge operator at time `2n`, sojourn `2k`.
    g: Vec<Vec<Mat2>>,
}

impl BridgeConvolution {
    pub fn n_max(&self) -> u32 {
        2 * (self.g.len() as u32 - 1)
    }

    /// Bridge operator at `time` with sojourn count `sojourn`; zero for odd
    /// arguments.
    pub fn gamma(&self, time: u32, sojourn: u32) -> Mat2 {
        if time % 2 != 0 || sojourn % 2 != 0 || sojourn > time {
            return Mat2::zero();
        }
        self.g[time as usize / 2][sojourn as usize / 2].clone()
    }
}

/// Split every bridge path at its first return to the origin: the first
/// excursion is entirely positive (paying `2r` toward the sojourn count) or
/// entirely negative (paying none), and the remainder is again a bridge.
/// The excursion blocks come from [`first_return_amplitudes`], so no
/// path-counting table is involved.
pub fn gamma_via_convolution(n_max: u32) -> Result<BridgeConvolution, Error> {
    if n_max % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "n_max must be even, got {n_max}"
        )));
    }
    let half = (n_max / 2) as usize;
    let amps = first_return_amplitudes(n_max.max(2) - 1)?;
    let mut g: Vec<Vec<Mat2>> = vec![vec![Mat2::identity()]];
    for n in 1..=half {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = Mat2::zero();
            if k >= 1 {
                // First excursion positive: remainder contributes 2(k - r).
                for r in 1..=k {
                    let rest = &g[n - r][k - r];
                    if !rest.is_zero() {
                        acc += &(rest * &amps.first_return_positive(r as u32));
                    }
                }
            }
            if k + 1 <= n {
                // First excursion negative: the sojourn count is untouched.
                for r in 1..=(n - k) {
                    let rest = &g[n - r][k];
                    if !rest.is_zero() {
                        acc += &(rest * &amps.first_return_negative(r as u32));
                    }
                }
            }
            row.push(acc);
        }
        g.push(row);
    }
    Ok(BridgeConvolution { g })
}

/// Generating functions of the basis coefficients of a path-counting table:
/// the coefficient of `z^n t^k` is the `u`-coordinate of the sojourn-`k`
/// path sum at time `n` (all endpoints summed), `n >= 1`.
#[derive(Clone, Debug)]
pub struct PathSeries {
    pub p: BiSeries,
    pub q: BiSeries,
    pub r: BiSeries,
    pub s: BiSeries,
}

impl PathSeries {
    pub fn series(&self, u: char) -> &BiSeries {
        match u {
            'p' => &self.p,
            'q' => &self.q,
            'r' => &self.r,
            's' => &self.s,
            _ => panic!("no such generating function: {u}"),
        }
    }

    /// Even-even part: the normalization under which [`theorem1_series`]
    /// states its coefficients.
    pub fn symmetrized(&self) -> PathSeries {
        PathSeries {
            p: self.p.symmetrize_even(),
            q: self.q.symmetrize_even(),
            r: self.r.symmetrize_even(),
            s: self.s.symmetrize_even(),
        }
    }
}

pub fn path_series(table: &SojournTable, order: u32) -> PathSeries {
    assert!(order <= table.n_max(), "table computed only to {}", table.n_max());
    let o = order as usize;
    let mut out = [
        BiSeries::zero(o, o),
        BiSeries::zero(o, o),
        BiSeries::zero(o, o),
        BiSeries::zero(o, o),
    ];
    for n in 1..=order {
        for k in 0..=n {
            let psi = table.psi(n, k);
            if psi.is_zero() {
                continue;
            }
            let coeffs = pqrs_decompose(&psi);
            let (n, k) = (n as usize, k as usize);
            out[0].add_to_coeff(n, k, &coeffs.p);
            out[1].add_to_coeff(n, k, &coeffs.q);
            out[2].add_to_coeff(n, k, &coeffs.r);
            out[3].add_to_coeff(n, k, &coeffs.s);
        }
    }
    let [p, q, r, s] = out;
    PathSeries { p, q, r, s }
}

/// Check `Gamma = X (I - X)^{-1}` against the bridge closed form: `X` is the
/// matrix of first-return generating functions, the inverse is taken as the
/// adjugate over the determinant series, and both sides are compared
/// entrywise to z-order `order`.
pub fn x_matrix_check(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("x-matrix-identity");
    let o = order as usize;
    let (tz, tt) = (o + 2, o + 2);
    let one = BiSeries::one(tz, tt);
    let q = |n: i64, d: i64| Qr2::from_ratio(n, d);
    let half = Qr2::from_ratio(1, 2);

    let root_zt = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (4, 4, q(1, 1))]).sqrt()?;
    let root_z = BiSeries::poly(tz, tt, &[(0, 0, q(1, 1)), (4, 0, q(1, 1))]).sqrt()?;
    // (1/2)(1 + (zt)^2 - sqrt(1 + (zt)^4)) over the counted column and
    // (1/2)(1 + z^2 - sqrt(1 + z^4)) over the uncounted one.
    let x11 = (&(&one + &BiSeries::monomial(tz, tt, 2, 2, Qr2::one())) - &root_zt).scale(&half);
    let x12 = x11.neg();
    let x21 = (&(&one + &BiSeries::monomial(tz, tt, 2, 0, Qr2::one())) - &root_z).scale(&half);
    let x22 = x21.clone();

    // Every entry of X vanishes at the origin, so I - X has a determinant
    // with constant term 1 and the adjugate inverse is a power series.
    for (entry, name) in [(&x11, "(1,1)"), (&x21, "(2,1)")] {
        result.record(entry.coeff(0, 0).is_zero(), || {
            format!("X{name} has a nonzero constant term")
        });
    }

    let i11 = &one - &x11;
    let i22 = &one - &x22;
    let det = &(&i11 * &i22) - &(&x12 * &x21);
    let inv = [
        [i22.div(&det)?, x12.div(&det)?],
        [x21.div(&det)?, i11.div(&det)?],
    ];
    result.record(
        inv[0][0].coeff(0, 0) == Qr2::one() && inv[0][1].coeff(0, 0).is_zero(),
        || "(I - X)^{-1} does not start at the identity".to_string(),
    );

    let product = [
        [
            &(&x11 * &inv[0][0]) + &(&x12 * &inv[1][0]),
            &(&x11 * &inv[0][1]) + &(&x12 * &inv[1][1]),
        ],
        [
            &(&x21 * &inv[0][0]) + &(&x22 * &inv[1][0]),
            &(&x21 * &inv[0][1]) + &(&x22 * &inv[1][1]),
        ],
    ];

    let closed = theorem2_series(order)?;
    for row in 0..2 {
        for col in 0..2 {
            result.compare_series(
                &format!("X(I-X)^-1 entry ({},{})", row + 1, col + 1),
                &product[row][col],
                closed.entry(row, col),
                o,
                o,
            );
        }
    }
    Ok(result)
}

fn series_for_starts(
    x_lo: i64,
    x_hi: i64,
    order: u32,
) -> std::collections::BTreeMap<i64, PathSeries> {
    (x_lo..=x_hi)
        .map(|x| (x, path_series(&SojournTable::evolve(x, order), order)))
        .collect()
}

/// Verify the twelve generating-function relations in the start position on
/// path-counting data: four per regime (`x <= -1`, `x = 0`, `x >= 1`).
///
/// Each relation expresses the series at `x` through those at `x +- 1` with
/// a factor `z` (uncounted first step) or `z t` (counted first step) and,
/// for `p` and `q`, an inhomogeneous `+1` from the one-step seed.
pub fn check_lemma41(x_min: i64, x_max: i64, order: u32) -> Result<CheckResult, Error> {
    if !(x_min <= -1 && x_max >= 1) {
        return Err(Error::InvalidParameter(
            "x range must contain both -1 and 1".into(),
        ));
    }
    let mut result = CheckResult::new("lemma41-relations");
    let o = order as usize;
    let tables = series_for_starts(x_min - 1, x_max + 1, order);
    let (a, b, c, d) = (coin_a(), coin_b(), coin_c(), coin_d());
    let one = BiSeries::one(o, o);
    let z = BiSeries::monomial(o, o, 1, 0, Qr2::one());
    let zt = BiSeries::monomial(o, o, 1, 1, Qr2::one());

    for x in x_min..=x_max {
        let here = &tables[&x];
        let left = &tables[&(x - 1)];
        let right = &tables[&(x + 1)];
        // A first step out of x <= -1 is never counted; out of x >= 1 it is
        // always counted; at x = 0 only the step to the right is.
        let (p_factor, r_factor, q_factor, s_factor) = if x <= -1 {
            (&z, &z, &z, &z)
        } else if x == 0 {
            (&z, &zt, &zt, &z)
        } else {
            (&zt, &zt, &zt, &zt)
        };
        let checks = [
            ('p', p_factor * &(&(&left.p.scale(&a) + &left.r.scale(&c)) + &one)),
            ('r', r_factor * &(&right.p.scale(&b) + &right.r.scale(&d))),
            ('q', q_factor * &(&(&right.q.scale(&d) + &right.s.scale(&b)) + &one)),
            ('s', s_factor * &(&left.q.scale(&c) + &left.s.scale(&a))),
        ];
        for (u, rhs) in checks {
            result.compare_series(&format!("{u}~^{x} recursion"), here.series(u), &rhs, o, o);
        }
    }
    Ok(result)
}

/// Verify the eight three-term recurrences in the start position (four per
/// regime), multiplied through by `z` (resp. `z t`) so that both sides are
/// power series. The coin determinant is `ad - bc = -1`.
pub fn check_cor42(x_min: i64, x_max: i64, order: u32) -> Result<CheckResult, Error> {
    if !(x_min <= -2 && x_max >= 2) {
        return Err(Error::InvalidParameter(
            "x range must contain both -2 and 2".into(),
        ));
    }
    let mut result = CheckResult::new("cor42-recurrences");
    let o = order as usize;
    let tables = series_for_starts(x_min, x_max, order);
    let (a, b, c, d) = (coin_a(), coin_b(), coin_c(), coin_d());
    let det = &a * &d - &b * &c;
    let zero = BiSeries::zero(o, o);
    let mono = |i: usize, j: usize, coeff: &Qr2| BiSeries::monomial(o, o, i, j, coeff.clone());

    struct Regime {
        xs: Vec<i64>,
        w: (usize, usize),
        label: &'static str,
    }
    let regimes = [
        Regime { xs: (x_min..=-2).collect(), w: (1, 0), label: "left" },
        Regime { xs: (0..=(x_max - 2)).collect(), w: (1, 1), label: "right" },
    ];

    for regime in &regimes {
        let (wi, wj) = regime.w;
        let w = mono(wi, wj, &Qr2::one());
        // (det w^2 + 1), the middle coefficient after multiplying by w.
        let bracket = &mono(2 * wi, 2 * wj, &det) + &BiSeries::one(o, o);
        for &x in &regime.xs {
            let lo = &tables[&x];
            let mid = &tables[&(x + 1)];
            let hi = &tables[&(x + 2)];
            let inhomogeneous = [
                ('p', &w - &mono(2 * wi, 2 * wj, &d)),
                ('q', &w - &mono(2 * wi, 2 * wj, &a)),
                ('r', mono(2 * wi, 2 * wj, &b)),
                ('s', mono(2 * wi, 2 * wj, &c)),
            ];
            for (u, extra) in inhomogeneous {
                let lhs = &(&(&(&w * &hi.series(u).scale(&d)) - &(&bracket * mid.series(u)))
                    + &(&w * &lo.series(u).scale(&a)))
                    + &extra;
                result.compare_series(
                    &format!("{u}-recurrence ({}) at x={x}", regime.label),
                    &lhs,
                    &zero,
                    o,
                    o,
                );
            }
        }
    }
    Ok(result)
}

/// Coefficients `b_n` of `sqrt(1 + w)`.
pub fn binomial_sqrt_coefficients(n_max: u32) -> Vec<BigRational> {
    let tz = n_max as usize;
    let series = BiSeries::poly(tz, 0, &[(0, 0, Qr2::one()), (1, 0, Qr2::one())])
        .sqrt()
        .expect("unit constant term");
    (0..=tz)
        .map(|n| {
            series
                .coeff(n, 0)
                .as_rational()
                .expect("binomial coefficients are rational")
                .clone()
        })
        .collect()
}

/// The scalar factor of the `z^(4n)` part of the bridge generating function
/// as the explicit sum `(1/2) sum_n b_n (t^2 + ... + t^(4n-2)) z^(4n)`.
pub fn fourn_scalar_binomial(order: u32) -> BiSeries {
    let o = order as usize;
    let b = binomial_sqrt_coefficients(order / 4);
    let mut acc = BiSeries::zero(o, o);
    for n in 1..=(o / 4) {
        let coeff = Qr2::from_rational(b[n].clone()) * Qr2::from_ratio(1, 2);
        for j in 1..=(2 * n - 1) {
            if 2 * j <= o {
                acc.add_to_coeff(4 * n, 2 * j, &coeff);
            }
        }
    }
    acc
}

/// The same scalar factor from the closed form
/// `(1 - (1 - A) t^2 - B) / (2 (1 - t^2))`.
pub fn fourn_scalar_closed_form(order: u32) -> Result<BiSeries, Error> {
    let o = order as usize;
    let blocks = Blocks::new(o + 2, o + 2)?;
    let Blocks { ref one, ref a, ref b, .. } = blocks;
    let num = &(one - &(&(one - a) * &blocks.mono(0, 2))) - b;
    let den = (one - &blocks.mono(0, 2)).scale(&Qr2::from_int(2));
    Ok(num.div(&den)?.restrict(o, o))
}

/// Check that the `z^(4n)` sub-series of the bridge generating function
/// equals both the binomial form and the closed form, entrywise with the
/// sign pattern `[[-1, -1], [1, -1]]`.
pub fn check_corollary_fourn(order: u32) -> Result<CheckResult, Error> {
    let mut result = CheckResult::new("corollary-4n-series");
    let o = order as usize;
    let thm2 = theorem2_series(order)?;
    let binomial = fourn_scalar_binomial(order);
    let closed = fourn_scalar_closed_form(order)?;
    result.compare_series("binomial vs closed-form scalar", &binomial, &closed, o, o);
    let signs = [[-1i64, -1], [1, -1]];
    for row in 0..2 {
        for col in 0..2 {
            let part = thm2.entry(row, col).retain_z(|i| i % 4 == 0);
            let expected = binomial.scale(&Qr2::from_int(signs[row][col]));
            result.compare_series(
                &format!("4n sub-series entry ({},{})", row + 1, col + 1),
                &part,
                &expected,
                o,
                o,
            );
        }
    }
    Ok(result)
}
