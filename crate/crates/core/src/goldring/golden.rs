use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer types that can back the rational components of a [`Golden`].
///
/// `BigInt` is the production choice; `i64` is handy for fast oracles and
/// small search spaces where overflow is impossible.
pub trait GoldenInt:
    Integer
    + Signed
    + Clone
    + Hash
    + fmt::Debug
    + fmt::Display
    + FromStr
    + Roots
    + ToPrimitive
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> GoldenInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + fmt::Debug
        + fmt::Display
        + FromStr
        + Roots
        + ToPrimitive
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// An element `a + b·τ` of `Q[τ]`, with `τ² = τ + 1`.
///
/// Both components are kept as reduced fractions with a positive
/// denominator, so structural equality is value equality. The derived
/// `Ord` is the lexicographic order on `(a, b)`; it is a canonical *total
/// order for sorting and deduplication*, not the order of the real numbers.
/// Use [`Golden::cmp_value`] or [`Golden::signum`] for the latter.
#[derive(Clone)]
pub struct Golden<T> {
    a: Ratio<T>,
    b: Ratio<T>,
}

impl<T: GoldenInt> PartialEq for Golden<T> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl<T: GoldenInt> Eq for Golden<T> {}

impl<T: GoldenInt> Hash for Golden<T> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl<T: GoldenInt> PartialOrd for Golden<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: GoldenInt> Ord for Golden<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }
}

impl<T: GoldenInt> Golden<T> {
    pub fn new(a: Ratio<T>, b: Ratio<T>) -> Self {
        Golden { a, b }
    }

    pub fn from_ints(a: T, b: T) -> Self {
        Golden {
            a: Ratio::from_integer(a),
            b: Ratio::from_integer(b),
        }
    }

    /// Builds `a + b·τ` from small machine integers.
    pub fn int(a: i64, b: i64) -> Self {
        Self::from_ints(from_i64(a), from_i64(b))
    }

    /// Builds `pa/qa + (pb/qb)·τ`. Panics if a denominator is zero.
    pub fn frac(pa: i64, qa: i64, pb: i64, qb: i64) -> Self {
        Golden {
            a: Ratio::new(from_i64(pa), from_i64(qa)),
            b: Ratio::new(from_i64(pb), from_i64(qb)),
        }
    }

    pub fn from_rational(r: Ratio<T>) -> Self {
        Golden { a: r, b: Ratio::zero() }
    }

    pub fn tau() -> Self {
        Self::from_ints(T::zero(), T::one())
    }

    /// The Galois conjugate `σ = 1 − τ`.
    pub fn sigma() -> Self {
        Self::from_ints(T::one(), -T::one())
    }

    /// `√5 = 2τ − 1`.
    pub fn sqrt5() -> Self {
        Self::from_ints(-T::one(), from_i64(2))
    }

    pub fn a(&self) -> &Ratio<T> {
        &self.a
    }

    pub fn b(&self) -> &Ratio<T> {
        &self.b
    }

    pub fn into_parts(self) -> (Ratio<T>, Ratio<T>) {
        (self.a, self.b)
    }

    /// Applies `τ ↦ 1 − τ`.
    pub fn conjugate(&self) -> Self {
        Golden {
            a: &self.a + &self.b,
            b: -self.b.clone(),
        }
    }

    /// Field norm `x·x'` = `a² + ab − b²`.
    pub fn norm(&self) -> Ratio<T> {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Field trace `x + x'` = `2a + b`.
    pub fn trace(&self) -> Ratio<T> {
        &self.a + &self.a + &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when both components are integers, i.e. the value lies in `Z[τ]`.
    pub fn is_zt_integer(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// True for the units `±τ^k` of `Z[τ]`.
    pub fn is_unit(&self) -> bool {
        self.is_zt_integer() && self.norm().abs().is_one()
    }

    pub fn tau_pow(k: i64) -> Self {
        let base = if k >= 0 {
            Self::tau()
        } else {
            Self::from_ints(-T::one(), T::one())
        };
        base.pow(k.unsigned_abs())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(Golden {
            a: c.a / &n,
            b: c.b / n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Ratio<T>) -> Self {
        Golden {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Sign of the value under `τ ↦ (1+√5)/2`, decided exactly.
    ///
    /// `a + bτ = ((2a+b) + b√5)/2`; when the two parts disagree in sign the
    /// larger of `(2a+b)²` and `5b²` wins. Equality cannot occur for a nonzero
    /// value because `√5` is irrational.
    pub fn signum(&self) -> i32 {
        let p = &self.a + &self.a + &self.b;
        let q = self.b.clone();
        let sp = ratio_sign(&p);
        let sq = ratio_sign(&q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let five = Ratio::from_integer(from_i64::<T>(5));
        if &p * &p > five * &q * &q {
            sp
        } else {
            sq
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Compares real values in the primary embedding.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }

    pub fn abs_value(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Numeric value with `τ = (1+√5)/2`. Never used for equality.
    pub fn embed<F: Float + FromPrimitive>(&self) -> F {
        let phi = F::from_f64(1.618_033_988_749_895).unwrap();
        ratio_to_float::<T, F>(&self.a) + ratio_to_float::<T, F>(&self.b) * phi
    }

    /// Numeric value with `τ = (1−√5)/2`.
    pub fn embed_conjugate<F: Float + FromPrimitive>(&self) -> F {
        self.conjugate().embed()
    }

    pub fn to_f64(&self) -> f64 {
        self.embed::<f64>()
    }

    /// The square root in `Q[τ]` that is non-negative in the primary
    /// embedding, if one exists.
    ///
    /// If `x = p + qτ` squares to `c` then `x·x' = ±√N(c)`,
    /// `(x + x')² = Tr(c) + 2x·x'` and `(x − x')² = 5q² = Tr(c) − 2x·x'`, so
    /// only finitely many rational candidates need checking.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let norm_root = ratio_sqrt(&self.norm())?;
        let trace = self.trace();
        let two = Ratio::from_integer(from_i64::<T>(2));
        let five = Ratio::from_integer(from_i64::<T>(5));
        for m in [norm_root.clone(), -norm_root] {
            let Some(t) = ratio_sqrt(&(&trace + &two * &m)) else {
                continue;
            };
            let Some(q) = ratio_sqrt(&((&trace - &two * &m) / &five)) else {
                continue;
            };
            for ts in [t.clone(), -t.clone()] {
                for qs in [q.clone(), -q.clone()] {
                    let p = (&ts - &qs) / &two;
                    let cand = Golden { a: p, b: qs };
                    if &(&cand * &cand) == self {
                        return Some(cand.abs_value());
                    }
                }
            }
        }
        None
    }
}

fn ratio_sign<T: GoldenInt>(r: &Ratio<T>) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn ratio_sqrt<T: GoldenInt>(r: &Ratio<T>) -> Option<Ratio<T>> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(n.clone() * n.clone()) == r.numer() && &(d.clone() * d.clone()) == r.denom() {
        Some(Ratio::new(n, d))
    } else {
        None
    }
}

pub(crate) fn from_i64<T: GoldenInt>(v: i64) -> T {
    T::from_i64(v).expect("integer type cannot represent the value")
}

pub(crate) fn ratio_to_float<T: GoldenInt, F: Float + FromPrimitive>(r: &Ratio<T>) -> F {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    F::from_f64(n / d).unwrap()
}

impl<T: GoldenInt> Zero for Golden<T> {
    fn zero() -> Self {
        Golden {
            a: Ratio::zero(),
            b: Ratio::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: GoldenInt> One for Golden<T> {
    fn one() -> Self {
        Golden {
            a: Ratio::one(),
            b: Ratio::zero(),
        }
    }
}

impl<T: GoldenInt> Default for Golden<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: GoldenInt> From<i64> for Golden<T> {
    fn from(v: i64) -> Self {
        Self::int(v, 0)
    }
}

impl<T: GoldenInt> From<Ratio<T>> for Golden<T> {
    fn from(r: Ratio<T>) -> Self {
        Self::from_rational(r)
    }
}

impl<'a, T: GoldenInt> Add<&'a Golden<T>> for &'a Golden<T> {
    type Output = Golden<T>;
    fn add(self, rhs: &Golden<T>) -> Golden<T> {
        Golden {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a, T: GoldenInt> Sub<&'a Golden<T>> for &'a Golden<T> {
    type Output = Golden<T>;
    fn sub(self, rhs: &Golden<T>) -> Golden<T> {
        Golden {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a, T: GoldenInt> Mul<&'a Golden<T>> for &'a Golden<T> {
    type Output = Golden<T>;
    fn mul(self, rhs: &Golden<T>) -> Golden<T> {
        // (a+bτ)(c+dτ) = (ac+bd) + (ad+bc+bd)τ
        if self.b.is_zero() && rhs.b.is_zero() {
            return Golden {
                a: &self.a * &rhs.a,
                b: Ratio::zero(),
            };
        }
        let bd = &self.b * &rhs.b;
        Golden {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

/// Panics on a zero divisor; use [`Golden::checked_div`] for a `Result`.
impl<'a, T: GoldenInt> Div<&'a Golden<T>> for &'a Golden<T> {
    type Output = Golden<T>;
    fn div(self, rhs: &Golden<T>) -> Golden<T> {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: GoldenInt> $tr<Golden<T>> for Golden<T> {
            type Output = Golden<T>;
            fn $m(self, rhs: Golden<T>) -> Golden<T> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, T: GoldenInt> $tr<&'a Golden<T>> for Golden<T> {
            type Output = Golden<T>;
            fn $m(self, rhs: &Golden<T>) -> Golden<T> {
                (&self).$m(rhs)
            }
        }
        impl<'a, T: GoldenInt> $tr<Golden<T>> for &'a Golden<T> {
            type Output = Golden<T>;
            fn $m(self, rhs: Golden<T>) -> Golden<T> {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<T: GoldenInt> Neg for Golden<T> {
    type Output = Golden<T>;
    fn neg(self) -> Golden<T> {
        Golden { a: -self.a, b: -self.b }
    }
}

impl<T: GoldenInt> Neg for &Golden<T> {
    type Output = Golden<T>;
    fn neg(self) -> Golden<T> {
        -self.clone()
    }
}

impl<T: GoldenInt> AddAssign<&Golden<T>> for Golden<T> {
    fn add_assign(&mut self, rhs: &Golden<T>) {
        self.a = &self.a + &rhs.a;
        self.b = &self.b + &rhs.b;
    }
}

impl<T: GoldenInt> AddAssign for Golden<T> {
    fn add_assign(&mut self, rhs: Golden<T>) {
        *self += &rhs;
    }
}

impl<T: GoldenInt> SubAssign<&Golden<T>> for Golden<T> {
    fn sub_assign(&mut self, rhs: &Golden<T>) {
        self.a = &self.a - &rhs.a;
        self.b = &self.b - &rhs.b;
    }
}

impl<T: GoldenInt> SubAssign for Golden<T> {
    fn sub_assign(&mut self, rhs: Golden<T>) {
        *self -= &rhs;
    }
}

impl<T: GoldenInt> MulAssign for Golden<T> {
    fn mul_assign(&mut self, rhs: Golden<T>) {
        *self = &*self * &rhs;
    }
}

impl<T: GoldenInt> Sum for Golden<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl<T: GoldenInt> Product for Golden<T> {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}

/// Text form `a`, `bt` or `a±|b|t`, e.g. `2-1t`, `1/2+3/4t`, `-1t`.
impl<T: GoldenInt> fmt::Display for Golden<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}t", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}t", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}t", self.a, self.b)
        }
    }
}

impl<T: GoldenInt> fmt::Debug for Golden<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Golden({self})")
    }
}

impl<T: GoldenInt> FromStr for Golden<T> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_golden(s)
    }
}

/// Arbitrary-precision element of `Q[τ]`.
pub type GoldenRational = Golden<BigInt>;
/// Exact rational with arbitrary precision.
pub type Rational = Ratio<BigInt>;
