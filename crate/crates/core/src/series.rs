//! Ring-generic truncated formal power series in one variable `q`.
//!
//! A [`Series`] holds the coefficients `c_0 .. c_N` of a formal power series
//! truncated at order `N` (inclusive), over either the exact integers
//! ([`ExactInts`]) or the integers modulo a machine-word modulus ([`Mod`]).
//! All operations are pure; series are immutable after construction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors from series arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("constant term {constant} is not a unit in {ring}")]
    NonUnitConstant { constant: String, ring: String },
    #[error("comparison bound {upto} exceeds available order {order}")]
    BoundOutOfRange { upto: usize, order: usize },
}

/// A coefficient ring: exact integers or integers modulo `m`.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    // Takes &self because rings carry state (the modulus).
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Fused multiply-add `acc + a*b`, reduced before returning.
    fn mul_add(&self, acc: &Self::Elem, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a unit, `None` for non-units.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn describe(&self) -> String;
    fn elem_to_string(&self, a: &Self::Elem) -> String;
}

/// Exact arbitrary-precision signed integers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ExactInts;

impl Ring for ExactInts {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn mul_add(&self, acc: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
        acc + a * b
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.is_one() || (-a).is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn describe(&self) -> String {
        "Z".to_owned()
    }
    fn elem_to_string(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// Integers modulo `m`, with `2 <= m < 2^32` and canonical representatives
/// in `[0, m)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mod {
    modulus: u64,
}

impl Mod {
    pub fn new(modulus: u64) -> Self {
        assert!(
            (2..1u64 << 32).contains(&modulus),
            "modulus must satisfy 2 <= m < 2^32, got {modulus}"
        );
        Mod { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        if self.modulus.is_power_of_two() {
            x & (self.modulus - 1)
        } else {
            x % self.modulus
        }
    }
}

impl Ring for Mod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.reduce(1)
    }
    fn from_i64(&self, n: i64) -> u64 {
        let m = self.modulus as i64;
        n.rem_euclid(m) as u64
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a + b)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a + self.modulus - b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        self.reduce(self.modulus - a)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }
    #[inline]
    fn mul_add(&self, acc: &u64, a: &u64, b: &u64) -> u64 {
        // a, b < 2^32 and acc < 2^32, so acc + a*b fits in a u64.
        self.reduce(acc + a * b)
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        let g = a.gcd(&self.modulus);
        if g != 1 {
            return None;
        }
        // Extended Euclid on (a, m).
        let (mut r0, mut r1) = (*a as i128, self.modulus as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.modulus as i128) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn describe(&self) -> String {
        format!("Z/{}", self.modulus)
    }
    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Sign of a substitution `q -> sign * q^k`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Truncated formal power series: coefficients of `q^0 .. q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> Series<R> {
    /// The zero series of the given order.
    pub fn zero(ring: &R, order: usize) -> Self {
        Series {
            ring: ring.clone(),
            coeffs: vec![ring.zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(ring: &R, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        s.coeffs[0] = ring.one();
        s
    }

    /// `c * q^exp`, zero if `exp > order`.
    pub fn monomial(ring: &R, order: usize, exp: usize, c: i64) -> Self {
        let mut s = Self::zero(ring, order);
        if exp <= order {
            s.coeffs[exp] = ring.from_i64(c);
        }
        s
    }

    pub fn from_coeffs(ring: &R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a series holds at least the constant term");
        Series {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(ring: &R, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ring, coeffs.iter().map(|&c| ring.from_i64(c)).collect())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Highest retained exponent (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Coefficient of `q^n`; panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &R::Elem {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&R::Elem> {
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn check_ring(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(SeriesError::RingMismatch {
                left: self.ring.describe(),
                right: other.ring.describe(),
            })
        }
    }

    /// Coefficientwise sum; the result carries the smaller order.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.ring.add(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Coefficientwise difference; the result carries the smaller order.
    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| self.ring.sub(&self.coeffs[n], &other.coeffs[n]))
            .collect();
        Ok(Series {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    /// Multiply every coefficient by the scalar `c`.
    pub fn scale(&self, c: i64) -> Self {
        let c = self.ring.from_i64(c);
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|x| self.ring.mul(x, &c)).collect(),
        }
    }

    /// Cauchy product truncated at the smaller operand order.
    ///
    /// Schoolbook convolution; coefficients are reduced after each fused
    /// multiply-add so that mod-m arithmetic stays in machine words.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let ring = &self.ring;
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = ring.zero();
            for i in 0..=n {
                acc = ring.mul_add(&acc, &self.coeffs[i], &other.coeffs[n - i]);
            }
            coeffs.push(acc);
        }
        Ok(Series {
            ring: ring.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse to the same order.
    ///
    /// Uses the recurrence `c'_n = -c'_0 * sum_{j=1..n} a_j c'_{n-j}` with
    /// `c'_0` the ring inverse of the constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let ring = &self.ring;
        let c0 = ring.inverse(&self.coeffs[0]).ok_or_else(|| SeriesError::NonUnitConstant {
            constant: ring.elem_to_string(&self.coeffs[0]),
            ring: ring.describe(),
        })?;
        let order = self.order();
        let mut inv: Vec<R::Elem> = Vec::with_capacity(order + 1);
        inv.push(c0.clone());
        for n in 1..=order {
            let mut acc = ring.zero();
            for j in 1..=n {
                acc = ring.mul_add(&acc, &self.coeffs[j], &inv[n - j]);
            }
            inv.push(ring.neg(&ring.mul(&c0, &acc)));
        }
        Ok(Series {
            ring: ring.clone(),
            coeffs: inv,
        })
    }

    /// Integer power by repeated squaring; `pow(a, 0) = 1` and negative
    /// exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Self::one(&self.ring, self.order()));
        }
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut result = Self::one(&self.ring, self.order());
        let mut power = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&power)?;
            }
            exp >>= 1;
            if exp > 0 {
                power = power.mul(&power)?;
            }
        }
        Ok(result)
    }

    /// Substitution `q -> sign * q^k`; the result keeps this series' order,
    /// so source coefficients beyond `order/k` are dropped.
    pub fn substitute(&self, k: usize, sign: Sign) -> Self {
        self.upsample(k, sign, self.order())
    }

    /// Substitution `q -> sign * q^k` extended to an explicit target order.
    ///
    /// Requires enough source coefficients: `self.order() >= target_order/k`.
    pub fn upsample(&self, k: usize, sign: Sign, target_order: usize) -> Self {
        assert!(k >= 1, "substitution power must be >= 1");
        let needed = target_order / k;
        assert!(
            self.order() >= needed,
            "upsample to order {target_order} with step {k} needs source order {needed}"
        );
        let ring = &self.ring;
        let mut coeffs = vec![ring.zero(); target_order + 1];
        for (n, c) in self.coeffs.iter().take(needed + 1).enumerate() {
            let c = match sign {
                Sign::Plus => c.clone(),
                Sign::Minus if n % 2 == 1 => ring.neg(c),
                Sign::Minus => c.clone(),
            };
            coeffs[k * n] = c;
        }
        Series {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Multiplication by `q^t` at fixed order: coefficient `n` of the result
    /// is coefficient `n - t` of the input, zero for `n < t`.
    pub fn shift(&self, t: usize) -> Self {
        let ring = &self.ring;
        let order = self.order();
        let mut coeffs = vec![ring.zero(); order + 1];
        if t <= order {
            coeffs[t..=order].clone_from_slice(&self.coeffs[..=order - t]);
        }
        Series {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Dissection: picks out the coefficients at indices `step*n + r`.
    ///
    /// The result has order `floor((order - r)/step)`; extracting past the
    /// truncation yields the zero series of order 0.
    pub fn extract(&self, step: usize, r: usize) -> Self {
        assert!(step >= 1, "dissection step must be >= 1");
        assert!(r < step, "dissection residue must satisfy r < step");
        let ring = &self.ring;
        if r > self.order() {
            return Self::zero(ring, 0);
        }
        let order = (self.order() - r) / step;
        let coeffs = (0..=order).map(|n| self.coeffs[step * n + r].clone()).collect();
        Series {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Truncate to a smaller (or equal) order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Series {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Least index `n <= upto` where the coefficients differ, if any.
    pub fn first_mismatch(&self, other: &Self, upto: usize) -> Result<Option<usize>, SeriesError> {
        self.check_ring(other)?;
        let available = self.order().min(other.order());
        if upto > available {
            return Err(SeriesError::BoundOutOfRange {
                upto,
                order: available,
            });
        }
        Ok((0..=upto).find(|&n| self.coeffs[n] != other.coeffs[n]))
    }

    pub(crate) fn coeff_mut(&mut self, n: usize) -> &mut R::Elem {
        &mut self.coeffs[n]
    }

    /// Like [`shift`](Self::shift) but extended to an explicit target order,
    /// so no top coefficients are lost. Requires `self.order() + t >= target_order`.
    pub(crate) fn shift_extended(&self, t: usize, target_order: usize) -> Self {
        assert!(self.order() + t >= target_order);
        let ring = &self.ring;
        let mut coeffs = vec![ring.zero(); target_order + 1];
        if t <= target_order {
            coeffs[t..=target_order].clone_from_slice(&self.coeffs[..=target_order - t]);
        }
        Series {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// In-place accumulate `self += other * q^t`, clipping at the order.
    pub(crate) fn add_assign_shifted(&mut self, other: &Self, t: usize) {
        let order = self.order();
        for (i, c) in other.coeffs.iter().enumerate() {
            let n = t + i;
            if n > order {
                break;
            }
            self.coeffs[n] = self.ring.add(&self.coeffs[n], c);
        }
    }

    /// In-place multiplication by the binomial `1 - sign * q^j`.
    pub(crate) fn mul_assign_binomial(&mut self, j: usize, sign: Sign) {
        let order = self.order();
        if j == 0 || j > order {
            if j == 0 {
                panic!("binomial exponent must be >= 1");
            }
            return;
        }
        for n in (j..=order).rev() {
            let prev = self.coeffs[n - j].clone();
            self.coeffs[n] = match sign {
                Sign::Plus => self.ring.sub(&self.coeffs[n], &prev),
                Sign::Minus => self.ring.add(&self.coeffs[n], &prev),
            };
        }
    }
}

impl Series<ExactInts> {
    /// Coefficientwise canonical reduction into `Z/m`.
    pub fn reduce_mod(&self, m: u64) -> Series<Mod> {
        let ring = Mod::new(m);
        let modulus = BigInt::from(m);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut r = c % &modulus;
                if r.is_negative() {
                    r += &modulus;
                }
                // m < 2^32, so the canonical representative fits in u64.
                let digits = r.to_u64_digits().1;
                digits.first().copied().unwrap_or(0)
            })
            .collect();
        Series::from_coeffs(&ring, coeffs)
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", self.ring.elem_to_string(c))?,
                1 => write!(f, "{}*q", self.ring.elem_to_string(c))?,
                _ => write!(f, "{}*q^{}", self.ring.elem_to_string(c), n)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> ExactInts {
        ExactInts
    }

    #[test]
    fn add_truncates_to_smaller_order() {
        let a = Series::from_i64(&z(), &[1, 2]);
        let b = Series::from_i64(&z(), &[3, 0, 1]);
        let sum = a.add(&b).unwrap();
        assert_eq!(sum, Series::from_i64(&z(), &[4, 2]));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = Series::from_i64(&z(), &[5, -1, 7]);
        let sum = a.add(&Series::zero(&z(), 2)).unwrap();
        assert_eq!(sum, a);
    }

    #[test]
    fn add_reduces_mod_m() {
        let ring = Mod::new(4);
        let a = Series::from_i64(&ring, &[3]);
        assert_eq!(a.add(&a).unwrap(), Series::from_i64(&ring, &[2]));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Series::from_i64(&Mod::new(4), &[1]);
        let b = Series::from_i64(&Mod::new(5), &[1]);
        assert!(matches!(a.add(&b), Err(SeriesError::RingMismatch { .. })));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = Series::from_i64(&z(), &[1, 1, 0]);
        let b = Series::from_i64(&z(), &[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), Series::from_i64(&z(), &[1, 0, -1]));
    }

    #[test]
    fn invert_geometric_series() {
        let a = Series::from_i64(&z(), &[1, -1, 0, 0, 0]);
        assert_eq!(a.invert().unwrap(), Series::from_i64(&z(), &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn invert_one_is_one() {
        let one = Series::one(&z(), 6);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn invert_requires_unit_constant() {
        let a = Series::from_i64(&z(), &[2, 1]);
        match a.invert() {
            Err(SeriesError::NonUnitConstant { constant, .. }) => assert_eq!(constant, "2"),
            other => panic!("expected non-unit error, got {other:?}"),
        }
        // 3 is a unit mod 4 even though it is not a unit in Z.
        let b = Series::from_i64(&Mod::new(4), &[3, 1]);
        assert!(b.invert().is_ok());
    }

    #[test]
    fn mul_by_inverse_is_one() {
        let a = Series::from_i64(&z(), &[1, 5, -3, 2, 0, 1]);
        let prod = a.mul(&a.invert().unwrap()).unwrap();
        assert_eq!(prod, Series::one(&z(), 5));
    }

    #[test]
    fn pow_binomial_square() {
        let a = Series::from_i64(&z(), &[1, 1, 0]);
        assert_eq!(a.pow(2).unwrap(), Series::from_i64(&z(), &[1, 2, 1]));
    }

    #[test]
    fn pow_zero_and_negative_one() {
        let a = Series::from_i64(&z(), &[1, 3, 3]);
        assert_eq!(a.pow(0).unwrap(), Series::one(&z(), 2));
        assert_eq!(a.pow(-1).unwrap(), a.invert().unwrap());
    }

    #[test]
    fn substitute_spreads_coefficients() {
        let a = Series::from_i64(&z(), &[1, 1, 1, 0, 0]);
        assert_eq!(a.substitute(2, Sign::Plus), Series::from_i64(&z(), &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn substitute_negation_is_involution() {
        let a = Series::from_i64(&z(), &[4, -2, 7, 1]);
        assert_eq!(a.substitute(1, Sign::Minus).substitute(1, Sign::Minus), a);
    }

    #[test]
    fn shift_moves_coefficients_up() {
        let a = Series::from_i64(&z(), &[1, 1, 0, 0]);
        assert_eq!(a.shift(2), Series::from_i64(&z(), &[0, 0, 1, 1]));
        assert_eq!(a.shift(0), a);
    }

    #[test]
    fn extract_picks_progression() {
        let a = Series::from_i64(&z(), &[1, 2, 3, 4]);
        assert_eq!(a.extract(2, 1), Series::from_i64(&z(), &[2, 4]));
        assert_eq!(a.extract(1, 0), a);
    }

    #[test]
    fn order_zero_series_are_legal() {
        let a = Series::from_i64(&z(), &[7]);
        assert_eq!(a.mul(&a).unwrap(), Series::from_i64(&z(), &[49]));
        assert_eq!(a.extract(3, 0), Series::from_i64(&z(), &[7]));
        assert_eq!(a.substitute(5, Sign::Minus), a);
    }

    #[test]
    fn reduce_mod_canonicalizes_negatives() {
        let a = Series::from_i64(&z(), &[1, -3, 0, 5]);
        assert_eq!(a.reduce_mod(4), Series::from_i64(&Mod::new(4), &[1, 1, 0, 1]));
    }

    #[test]
    fn first_mismatch_reports_least_index() {
        let a = Series::from_i64(&z(), &[1, 1, 0]);
        let b = Series::from_i64(&z(), &[1, 1, 1]);
        assert_eq!(a.first_mismatch(&a, 2).unwrap(), None);
        assert_eq!(a.first_mismatch(&b, 2).unwrap(), Some(2));
        assert!(matches!(
            a.first_mismatch(&b, 3),
            Err(SeriesError::BoundOutOfRange { .. })
        ));
    }

    #[test]
    fn mod_inverse_via_euclid() {
        let ring = Mod::new(9);
        assert_eq!(ring.inverse(&2), Some(5));
        assert_eq!(ring.inverse(&3), None);
    }
}
