//! Exact rationals, elements of real quadratic fields, and the small
//! arithmetic functions (divisor sums, Möbius, Kronecker, ...) that the
//! rest of the crate is built from.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision fraction, always in lowest terms with positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_bigs(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Rational::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(n.into())
            }
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::from_bigs(p, q))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational((&self.0).$m(rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for `Rational::new`.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

/// An element `rat + rad·√D` of the quadratic algebra of discriminant `D`.
///
/// For square `D = d²` the algebra is `Q ⊕ Q` and `√D` is read as `(d, -d)`;
/// the symbolic representation is kept so formulas do not need to branch.
///
/// Arithmetic operators panic when the two operands carry different
/// discriminants.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadNum {
    pub rat: Rational,
    pub rad: Rational,
    pub disc: i64,
}

impl QuadNum {
    pub fn new(disc: i64, rat: Rational, rad: Rational) -> Self {
        QuadNum { rat, rad, disc }
    }

    pub fn from_rational(disc: i64, rat: Rational) -> Self {
        QuadNum {
            rat,
            rad: Rational::zero(),
            disc,
        }
    }

    pub fn zero(disc: i64) -> Self {
        QuadNum::from_rational(disc, Rational::zero())
    }

    pub fn one(disc: i64) -> Self {
        QuadNum::from_rational(disc, Rational::one())
    }

    /// `√D` itself.
    pub fn sqrt_d(disc: i64) -> Self {
        QuadNum {
            rat: Rational::zero(),
            rad: Rational::one(),
            disc,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn galois_conjugate(&self) -> Self {
        QuadNum {
            rat: self.rat.clone(),
            rad: -&self.rad,
            disc: self.disc,
        }
    }

    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from_int(self.disc) * &self.rad * &self.rad
    }

    pub fn trace(&self) -> Rational {
        Rational::from_int(2) * &self.rat
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadNum {
            rat: &self.rat * k,
            rad: &self.rad * k,
            disc: self.disc,
        }
    }

    /// Inverse via the conjugate; `None` when the norm vanishes (zero, or a
    /// zero divisor for square `D`).
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        Some(self.galois_conjugate().scale(&n))
    }

    /// The two embeddings as rationals. Only defined for square `D`.
    pub fn embeddings_square(&self) -> Option<(Rational, Rational)> {
        let d = exact_sqrt(self.disc)?;
        let dr = &self.rad * Rational::from_int(d);
        Some((&self.rat + &dr, &self.rat - &dr))
    }

    /// Sign of the first embedding `rat + rad·√D`, decided exactly.
    pub fn sign1(&self) -> i32 {
        signum_of_sum(&self.rat, &self.rad, self.disc)
    }

    /// Sign of the second embedding `rat - rad·√D`.
    pub fn sign2(&self) -> i32 {
        signum_of_sum(&self.rat, &-&self.rad, self.disc)
    }

    /// Compare the first embedding against a rational.
    pub fn cmp1(&self, r: &Rational) -> Ordering {
        let diff = QuadNum {
            rat: &self.rat - r,
            rad: self.rad.clone(),
            disc: self.disc,
        };
        diff.sign1().cmp(&0)
    }

    /// First embedding as a float, for display only.
    pub fn approx1(&self) -> f64 {
        let r = self.rat.inner().to_f64().unwrap_or(f64::NAN);
        let s = self.rad.inner().to_f64().unwrap_or(f64::NAN);
        r + s * (self.disc as f64).sqrt()
    }

    /// First embedding as a fixed-point integer scaled by `10^digits`,
    /// truncated toward negative infinity up to an error of a few ulps.
    pub fn scaled1(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        let root = (BigInt::from(self.disc) * &scale * &scale).sqrt();
        let r = (self.rat.numer() * &scale).div_floor(self.rat.denom());
        let s = (self.rad.numer() * &root).div_floor(self.rad.denom());
        r + s
    }

    fn check(&self, other: &QuadNum) {
        assert_eq!(
            self.disc, other.disc,
            "quadratic numbers over different discriminants"
        );
    }
}

fn signum_of_sum(x: &Rational, y: &Rational, disc: i64) -> i32 {
    let (sx, sy) = (x.signum(), y.signum());
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = Rational::from_int(disc) * y * y;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => 0,
    }
}

impl fmt::Display for QuadNum {
    /// `p/q + r/s*sqrt(D)`, dropping a zero radical part.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            return write!(f, "{}", self.rat);
        }
        let sign = if self.rad.signum() < 0 { '-' } else { '+' };
        if self.rat.is_zero() {
            if sign == '-' {
                write!(f, "-")?;
            }
            return write!(f, "{}*sqrt({})", self.rad.abs(), self.disc);
        }
        write!(
            f,
            "{} {} {}*sqrt({})",
            self.rat,
            sign,
            self.rad.abs(),
            self.disc
        )
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.check(rhs);
        QuadNum {
            rat: &self.rat + &rhs.rat,
            rad: &self.rad + &rhs.rad,
            disc: self.disc,
        }
    }
}

impl Sub<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.check(rhs);
        QuadNum {
            rat: &self.rat - &rhs.rat,
            rad: &self.rad - &rhs.rad,
            disc: self.disc,
        }
    }
}

impl Mul<&QuadNum> for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.check(rhs);
        let d = Rational::from_int(self.disc);
        QuadNum {
            rat: &self.rat * &rhs.rat + d * &self.rad * &rhs.rad,
            rad: &self.rat * &rhs.rad + &self.rad * &rhs.rat,
            disc: self.disc,
        }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            rat: -&self.rat,
            rad: -&self.rad,
            disc: self.disc,
        }
    }
}

impl Add for QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: QuadNum) -> QuadNum {
        &self + &rhs
    }
}

impl Sub for QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: QuadNum) -> QuadNum {
        &self - &rhs
    }
}

impl Mul for QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: QuadNum) -> QuadNum {
        &self * &rhs
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

/// A discriminant `D = f²·D₀` with `D₀` fundamental, or `D₀ = 1` and `f = d`
/// when `D = d²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Discriminant {
    pub value: i64,
    pub fundamental: i64,
    pub conductor: i64,
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Self> {
        decompose_discriminant(value)
    }

    pub fn is_square(&self) -> bool {
        self.fundamental == 1
    }

    /// `d` with `D = d²`, if square.
    pub fn root(&self) -> Option<i64> {
        if self.is_square() {
            Some(self.conductor)
        } else {
            None
        }
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_discriminant(d: i64) -> bool {
    d > 0 && matches!(d.rem_euclid(4), 0 | 1)
}

/// `√n` when `n` is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn isqrt(n: i64) -> i64 {
    n.sqrt()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Prime factorisation by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Divisor power sum `σ_m(n)` with `σ_m(0) = ζ(-m)/2` and `σ_m(n) = 0`
/// for negative `n`. Only `m ∈ {1, 3}`.
pub fn sigma(m: u32, n: i64) -> Result<Rational> {
    let at_zero = match m {
        1 => q(-1, 24),
        3 => q(1, 240),
        _ => return Err(Error::UnsupportedSigma(m)),
    };
    Ok(match n.cmp(&0) {
        Ordering::Less => Rational::zero(),
        Ordering::Equal => at_zero,
        Ordering::Greater => {
            let s: BigInt = divisors(n as u64)
                .into_iter()
                .map(|d| BigInt::from(d).pow(m))
                .sum();
            s.into()
        }
    })
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius of 0");
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "phi of 0");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut b128 = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m128;
        }
        b128 = b128 * b128 % m128;
        e >>= 1;
    }
    r as u64
}

/// Kronecker symbol `(top / bottom)` for `bottom ≥ 1`.
pub fn kronecker(top: i64, bottom: u64) -> i8 {
    assert!(bottom >= 1, "kronecker with zero bottom");
    let mut out = 1i8;
    for (p, k) in factorize(bottom) {
        let v: i8 = if p == 2 {
            match top.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            let a = top.rem_euclid(p as i64) as u64;
            if a == 0 {
                0
            } else if pow_mod(a, (p - 1) / 2, p) == 1 {
                1
            } else {
                -1
            }
        };
        for _ in 0..k {
            out *= v;
        }
    }
    out
}

/// Split `D` as `f²·D₀` with `D₀` fundamental and `f` maximal; squares give
/// `D₀ = 1`, `f = √D`.
pub fn decompose_discriminant(d: i64) -> Result<Discriminant> {
    if !is_discriminant(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    if let Some(r) = exact_sqrt(d) {
        return Ok(Discriminant {
            value: d,
            fundamental: 1,
            conductor: r,
        });
    }
    let mut f = isqrt(d);
    while f > 1 {
        if d % (f * f) == 0 && is_discriminant(d / (f * f)) {
            break;
        }
        f -= 1;
    }
    Ok(Discriminant {
        value: d,
        fundamental: d / (f * f),
        conductor: f,
    })
}

/// `Σ_{r | n} (D₀/r)·μ(r)/r²`, with the character trivial when `D₀ = 1`.
pub fn mobius_weighted_sum(d0: i64, n: u64) -> Rational {
    divisors(n)
        .into_iter()
        .map(|r| {
            let chi = if d0 == 1 { 1 } else { kronecker(d0, r) as i64 };
            let mu = mobius(r) as i64;
            let r = r as i64;
            q(chi * mu, r * r)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!("-3/2".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn quad_display() {
        let x = QuadNum::new(89, q(702833, 68640), q(-831, 22880));
        assert_eq!(x.to_string(), "702833/68640 - 831/22880*sqrt(89)");
        assert_eq!(
            QuadNum::from_rational(96, q(3194, 345)).to_string(),
            "3194/345"
        );
        assert_eq!(
            QuadNum::new(17, q(0, 1), q(-1, 8)).to_string(),
            "-1/8*sqrt(17)"
        );
    }

    #[test]
    fn quad_json() {
        let x = QuadNum::new(17, q(1, 4), q(1, 4));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rat":"1/4","rad":"1/4","disc":17}"#);
        assert_eq!(serde_json::from_str::<QuadNum>(&s).unwrap(), x);
    }

    #[test]
    fn sign_of_embedding() {
        // (1 - √5)/2 < 0 < (1 + √5)/2
        let phi = QuadNum::new(5, q(1, 2), q(1, 2));
        assert_eq!(phi.sign1(), 1);
        assert_eq!(phi.sign2(), -1);
        assert_eq!(phi.cmp1(&q(1, 1)), Ordering::Greater);
        assert_eq!(phi.cmp1(&q(2, 1)), Ordering::Less);
        // 5/2 - (1/2)·5 = 0 in the second embedding for D = 25
        let lam = QuadNum::new(25, q(5, 2), q(1, 2));
        assert_eq!(lam.sign2(), 0);
        assert_eq!(lam.embeddings_square(), Some((q(5, 1), q(0, 1))));
    }

    #[test]
    fn inverse() {
        let x = QuadNum::new(12, q(3, 1), q(1, 1));
        assert_eq!(&x * &x.inverse().unwrap(), QuadNum::one(12));
        // zero divisor in Q ⊕ Q
        assert!(QuadNum::new(25, q(5, 1), q(1, 1)).inverse().is_none());
    }

    #[test]
    fn scaled_embedding() {
        let phi = QuadNum::new(5, q(1, 2), q(1, 2));
        assert_eq!(phi.scaled1(6), BigInt::from(1_618_033));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 6).unwrap(), q(12, 1));
        assert_eq!(sigma(1, 0).unwrap(), q(-1, 24));
        assert_eq!(sigma(3, 0).unwrap(), q(1, 240));
        assert_eq!(sigma(1, -3).unwrap(), q(0, 1));
        assert_eq!(sigma(3, 2).unwrap(), q(9, 1));
        assert!(matches!(sigma(2, 5), Err(Error::UnsupportedSigma(2))));
    }

    #[test]
    fn small_functions() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(kronecker(17, 1), 1);
        assert_eq!(kronecker(5, 3), -1);
        assert_eq!(kronecker(8, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn decompose() {
        let d = decompose_discriminant(17).unwrap();
        assert_eq!((d.fundamental, d.conductor), (17, 1));
        let d = decompose_discriminant(45).unwrap();
        assert_eq!((d.fundamental, d.conductor), (5, 3));
        let d = decompose_discriminant(12).unwrap();
        assert_eq!((d.fundamental, d.conductor), (12, 1));
        let d = decompose_discriminant(32).unwrap();
        assert_eq!((d.fundamental, d.conductor), (8, 2));
        let d = decompose_discriminant(49).unwrap();
        assert_eq!((d.fundamental, d.conductor), (1, 7));
        assert!(decompose_discriminant(7).is_err());
        assert!(decompose_discriminant(0).is_err());
        assert!(decompose_discriminant(-3).is_err());
    }

    #[test]
    fn weighted_sum() {
        assert_eq!(mobius_weighted_sum(1, 5), q(24, 25));
        assert_eq!(mobius_weighted_sum(5, 3), q(10, 9));
        assert_eq!(mobius_weighted_sum(13, 1), q(1, 1));
    }
}
