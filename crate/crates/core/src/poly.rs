//! Exact integer polynomials, reduced rational functions, power-series
//! prefixes and characteristic polynomials of exact matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest matrix dimension accepted by [`charpoly`] and [`determinant`].
pub const MATRIX_SIZE_LIMIT: usize = 64;

/// Dense polynomial in `t` with arbitrary-precision integer coefficients,
/// lowest degree first. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `t^k - 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[k] += BigInt::one();
        Self::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes `t -> t^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale_div(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.scale_div(&c)
    }

    /// Exact quotient `self / d` in `Z[t]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_integral(d)?;
        r.is_zero().then_some(q)
    }

    /// Long division that stays in `Z[t]`. Returns `None` as soon as a
    /// leading coefficient is not divisible by the divisor's.
    fn div_rem_integral(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = d.degree()?;
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            let top = r.leading().unwrap().clone();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (j, dc) in d.coeffs.iter().enumerate() {
                next[shift + j] -= &top * dc;
            }
            r = IntPoly::new(next);
        }
        r
    }

    /// Greatest common divisor in `Z[t]`, normalized to positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().scale(&cont)
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The `m`-th cyclotomic polynomial, `prod_{d | m} (t^d - 1)^{mu(m / d)}`.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in (1..=m).filter(|d| m % d == 0) {
        match mobius((m / d) as u64) {
            1 => num = &num * &IntPoly::t_pow_minus_one(d),
            -1 => den = &den * &IntPoly::t_pow_minus_one(d),
            _ => {}
        }
    }
    num.div_exact(&den).expect("Mobius product is a polynomial")
}

pub fn mobius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn totient(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Quotient of integer polynomials kept in lowest terms with a
/// denominator of positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "RatFunc with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: IntPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Panics on division by zero.
    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn compose_power(&self, k: usize) -> RatFunc {
        RatFunc::new(self.num.compose_power(k), self.den.compose_power(k))
    }

    /// `num_deg - den_deg`; zero for the zero function.
    pub fn degree(&self) -> i64 {
        match (self.num.degree(), self.den.degree()) {
            (Some(a), Some(b)) => a as i64 - b as i64,
            _ => 0,
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl IntPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

/// Exact equality of rational functions by cross multiplication.
pub fn ratfunc_equal(a: &RatFunc, b: &RatFunc) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

/// Coefficients `c_0..=c_M` of a power series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPrefix(pub Vec<BigInt>);

impl SeriesPrefix {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }
}

/// Power-series expansion of `r` at `t = 0` up to and including `t^max`.
pub fn series_expand(r: &RatFunc, max: usize) -> Result<SeriesPrefix> {
    let den = r.denominator();
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::DenominatorVanishesAtZero);
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(max + 1);
    for m in 0..=max {
        let mut acc = r.numerator().coeff(m);
        for j in 1..=m.min(den.coeffs().len().saturating_sub(1)) {
            acc -= den.coeff(j) * &out[m - j];
        }
        let (q, rem) = acc.div_rem(&d0);
        if !rem.is_zero() {
            return Err(Error::NonIntegralSeries(m));
        }
        out.push(q);
    }
    Ok(SeriesPrefix(out))
}

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn qmatrix_from_i64(m: &[Vec<i64>]) -> QMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

pub fn qmatrix_from_bigint(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    if n > MATRIX_SIZE_LIMIT {
        return Err(Error::BadMatrix(format!("size {n} exceeds {MATRIX_SIZE_LIMIT}")));
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::BadMatrix("not square".into()));
    }
    Ok(n)
}

/// `det(tI - m)` by Faddeev-LeVerrier over the rationals.
pub fn charpoly(m: &QMatrix) -> Result<IntPoly> {
    let n = check_square(m)?;
    // coefficients c_n .. c_0 of t^n + c_{n-1} t^{n-1} + ... + c_0
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: QMatrix = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul_q(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = matmul_q(m, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    let ints = coeffs
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegerCharPoly(format!("t^{i} coefficient {c}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(ints))
}

fn matmul_q(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Determinant of an integer matrix by Bareiss fraction-free elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// `det(a0 + t * a1)` as a polynomial, by exact Bareiss evaluation at
/// `t = 0..=n` and Newton interpolation.
pub fn pencil_determinant(a0: &[Vec<BigInt>], a1: &[Vec<BigInt>]) -> Result<IntPoly> {
    let n = check_square(a0)?;
    if check_square(a1)? != n {
        return Err(Error::BadMatrix("pencil sizes differ".into()));
    }
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys = xs
        .iter()
        .map(|x| {
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| &a0[i][j] + x * &a1[i][j]).collect())
                .collect();
            determinant(&m)
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate(&xs, &ys)
}

/// Newton interpolation through integer nodes; fails unless the
/// interpolant has integer coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<IntPoly> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    // Horner on the Newton form, with rational coefficients
    let mut acc: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (t - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        acc = next;
    }
    acc.into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NonIntegerCharPoly(format!("t^{i} coefficient {c}")))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::new)
}
