//! Constructors for the named series of the study: Euler products `f_k`,
//! eta-quotients, Pochhammer products, theta functions, sparse indicator
//! series, and the mock theta functions `xi`, `omega`, `nu`, `f`, `g_3`, `F`.
//!
//! All constructors are generic over the coefficient ring. Congruence
//! consumers typically build directly in a `Mod` ring; identity checks run
//! over `ExactInts`.

use thiserror::Error;

use crate::series::{ExactInts, Ring, Series, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactoryError {
    #[error("infinite Pochhammer product requires a starting exponent >= 1")]
    DivergentPochhammer,
    #[error("g3 requires 0 < alpha < beta, got alpha={alpha}, beta={beta}")]
    InvalidG3Arguments { alpha: usize, beta: usize },
}

/// A finite product `prod f_k^{e_k}` with `f_k = (q^k; q^k)_inf`.
///
/// Scales are merged and zero exponents dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(usize, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: &[(usize, i64)]) -> Self {
        let mut merged: Vec<(usize, i64)> = Vec::new();
        for &(k, e) in factors {
            assert!(k >= 1, "eta scale must be >= 1");
            match merged.iter_mut().find(|(k2, _)| *k2 == k) {
                Some((_, e2)) => *e2 += e,
                None => merged.push((k, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        merged.sort_unstable();
        EtaQuotient { factors: merged }
    }

    pub fn factors(&self) -> &[(usize, i64)] {
        &self.factors
    }
}

/// The Euler product `f_k = prod_{j >= 1} (1 - q^{kj})` to order `n`.
pub fn euler_product<R: Ring>(ring: &R, k: usize, n: usize) -> Series<R> {
    assert!(k >= 1, "euler product scale must be >= 1");
    let mut s = Series::one(ring, n);
    let mut j = k;
    while j <= n {
        s.mul_assign_binomial(j, Sign::Plus);
        j += k;
    }
    s
}

/// Evaluate an eta-quotient to order `n`.
///
/// Negative exponents are accumulated into a single denominator which is
/// inverted once.
pub fn eta_quotient<R: Ring>(ring: &R, eq: &EtaQuotient, n: usize) -> Series<R> {
    let mut num = Series::one(ring, n);
    let mut den = Series::one(ring, n);
    for &(k, e) in &eq.factors {
        let f = euler_product(ring, k, n);
        let p = f.pow(e.abs()).expect("f_k has unit constant term");
        if e > 0 {
            num = num.mul(&p).expect("same ring");
        } else {
            den = den.mul(&p).expect("same ring");
        }
    }
    let inv = den.invert().expect("eta denominators have constant term 1");
    num.mul(&inv).expect("same ring")
}

/// Specification of a q-Pochhammer product `(a; q^b)_length` with `a = sign * q^start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochhammerSpec {
    /// Sign of `a`; `Plus` yields factors `(1 - q^...)`.
    pub sign: Sign,
    /// Exponent of the first factor.
    pub start: usize,
    /// Base step (the exponent of q in the base), >= 1.
    pub step: usize,
    /// Number of factors; `None` for the infinite product.
    pub length: Option<usize>,
}

/// Expand a Pochhammer product to order `n`.
pub fn pochhammer<R: Ring>(ring: &R, spec: &PochhammerSpec, n: usize) -> Result<Series<R>, FactoryError> {
    assert!(spec.step >= 1, "pochhammer base step must be >= 1");
    if spec.length.is_none() && spec.start == 0 {
        return Err(FactoryError::DivergentPochhammer);
    }
    let mut s = Series::one(ring, n);
    let mut i = 0usize;
    loop {
        if let Some(len) = spec.length {
            if i >= len {
                break;
            }
        }
        let exp = spec.start + i * spec.step;
        if exp > n && spec.length.is_none() {
            break;
        }
        if exp == 0 {
            // The factor (1 -+ q^0) degenerates to the constant 1 -+ 1.
            let c = match spec.sign {
                Sign::Plus => 0,
                Sign::Minus => 2,
            };
            s = s.scale(c);
        } else {
            s.mul_assign_binomial(exp, spec.sign);
        }
        i += 1;
    }
    Ok(s)
}

/// The sparse exponent shapes appearing in the characterization theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentShape {
    /// k^2
    Square,
    /// 2k^2
    TwoSquare,
    /// 3k^2
    ThreeSquare,
    /// 6k^2
    SixSquare,
    /// k(3k-1)
    Pentagonal,
    /// 6k(3k-1)
    DoublePentagonal,
    /// k(3k-1)/2
    PentagonalHalf,
    /// k(k+1)/2
    Triangular,
    /// 3k(k+1)/2
    TripleTriangular,
}

impl ExponentShape {
    pub fn exponent(self, k: i64) -> i64 {
        match self {
            ExponentShape::Square => k * k,
            ExponentShape::TwoSquare => 2 * k * k,
            ExponentShape::ThreeSquare => 3 * k * k,
            ExponentShape::SixSquare => 6 * k * k,
            ExponentShape::Pentagonal => k * (3 * k - 1),
            ExponentShape::DoublePentagonal => 6 * k * (3 * k - 1),
            ExponentShape::PentagonalHalf => k * (3 * k - 1) / 2,
            ExponentShape::Triangular => k * (k + 1) / 2,
            ExponentShape::TripleTriangular => 3 * k * (k + 1) / 2,
        }
    }
}

/// Weight attached to index `k` of a sparse family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightRule {
    /// c
    Constant(i64),
    /// c * (-1)^k
    SignedConstant(i64),
    /// (2k+1) * (-1)^k
    JacobiTriangular,
}

impl WeightRule {
    pub fn weight(self, k: i64) -> i64 {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        match self {
            WeightRule::Constant(c) => c,
            WeightRule::SignedConstant(c) => c * sign,
            WeightRule::JacobiTriangular => (2 * k + 1) * sign,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexRange {
    AllIntegers,
    FromZero,
    FromOne,
}

/// A sparse series `sum_k weight(k) q^{exponent(k)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentFamily {
    pub shape: ExponentShape,
    pub weight: WeightRule,
    pub range: IndexRange,
}

/// Expand a sparse exponent family to order `n`; coinciding exponents merge
/// by addition.
pub fn indicator_series<R: Ring>(ring: &R, fam: &ExponentFamily, n: usize) -> Series<R> {
    let mut s = Series::zero(ring, n);
    let emit = |k: i64, s: &mut Series<R>| -> bool {
        let e = fam.shape.exponent(k);
        debug_assert!(e >= 0, "family exponents are non-negative");
        if e as usize > n {
            return false;
        }
        let w = ring.from_i64(fam.weight.weight(k));
        let c = ring.add(s.coeff(e as usize), &w);
        *s.coeff_mut(e as usize) = c;
        true
    };
    match fam.range {
        IndexRange::AllIntegers => {
            emit(0, &mut s);
            let mut k = 1i64;
            loop {
                let lo = emit(-k, &mut s);
                let hi = emit(k, &mut s);
                if !lo && !hi {
                    break;
                }
                k += 1;
            }
        }
        IndexRange::FromZero | IndexRange::FromOne => {
            let mut k = if fam.range == IndexRange::FromZero { 0 } else { 1 };
            while emit(k, &mut s) {
                k += 1;
            }
        }
    }
    s
}

/// Jacobi's identity: the sparse sum form of `f_1^3`.
pub fn jacobi_cube<R: Ring>(ring: &R, n: usize) -> Series<R> {
    indicator_series(
        ring,
        &ExponentFamily {
            shape: ExponentShape::Triangular,
            weight: WeightRule::JacobiTriangular,
            range: IndexRange::FromZero,
        },
        n,
    )
}

/// Ramanujan's theta function `phi(q) = sum q^{n^2} = f_2^5 / (f_1^2 f_4^2)`.
pub fn phi<R: Ring>(ring: &R, n: usize) -> Series<R> {
    eta_quotient(ring, &EtaQuotient::new(&[(2, 5), (1, -2), (4, -2)]), n)
}

/// Ramanujan's theta function `psi(q) = sum q^{n(n+1)/2} = f_2^2 / f_1`.
pub fn psi<R: Ring>(ring: &R, n: usize) -> Series<R> {
    eta_quotient(ring, &EtaQuotient::new(&[(2, 2), (1, -1)]), n)
}

/// The theta quotient `F(q) = phi(q) phi(q^2)^2 / f_4^2 = f_2 f_4^6 / (f_1^2 f_8^4)`.
pub fn capital_f<R: Ring>(ring: &R, n: usize) -> Series<R> {
    eta_quotient(ring, &EtaQuotient::new(&[(2, 1), (4, 6), (1, -2), (8, -4)]), n)
}

/// The third-order mock theta function
/// `omega(q) = sum_{n>=0} q^{2n(n+1)} / (q; q^2)_{n+1}^2`.
pub fn mock_omega<R: Ring>(ring: &R, n: usize) -> Series<R> {
    let mut acc = Series::zero(ring, n);
    // Running (q; q^2)_{m+1}, extended one binomial per term.
    let mut poch = Series::one(ring, n);
    let mut m = 0usize;
    loop {
        let min_exp = 2 * m * (m + 1);
        if min_exp > n {
            break;
        }
        poch.mul_assign_binomial(2 * m + 1, Sign::Plus);
        let reduced = n - min_exp;
        let den = poch.truncate(reduced);
        let densq = den.mul(&den).expect("same ring");
        let inv = densq.invert().expect("constant term 1");
        acc.add_assign_shifted(&inv, min_exp);
        m += 1;
    }
    acc
}

/// The third-order mock theta function
/// `nu(q) = sum_{n>=0} q^{n(n+1)} / (-q; q^2)_{n+1}`.
pub fn mock_nu<R: Ring>(ring: &R, n: usize) -> Series<R> {
    let mut acc = Series::zero(ring, n);
    let mut poch = Series::one(ring, n);
    let mut m = 0usize;
    loop {
        let min_exp = m * (m + 1);
        if min_exp > n {
            break;
        }
        poch.mul_assign_binomial(2 * m + 1, Sign::Minus);
        let inv = poch.truncate(n - min_exp).invert().expect("constant term 1");
        acc.add_assign_shifted(&inv, min_exp);
        m += 1;
    }
    acc
}

/// Ramanujan's third-order mock theta function
/// `f(q) = sum_{n>=0} q^{n^2} / (-q; q)_n^2`.
pub fn mock_f3<R: Ring>(ring: &R, n: usize) -> Series<R> {
    let mut acc = Series::zero(ring, n);
    let mut poch = Series::one(ring, n);
    let mut m = 0usize;
    loop {
        let min_exp = m * m;
        if min_exp > n {
            break;
        }
        if m >= 1 {
            poch.mul_assign_binomial(m, Sign::Minus);
        }
        let den = poch.truncate(n - min_exp);
        let densq = den.mul(&den).expect("same ring");
        let inv = densq.invert().expect("constant term 1");
        acc.add_assign_shifted(&inv, min_exp);
        m += 1;
    }
    acc
}

/// The universal mock theta function
/// `g_3(x; q) = sum_{n>=0} q^{n(n+1)} / ((x; q)_{n+1} (q/x; q)_{n+1})`
/// specialized to monomial arguments: `g3(alpha, beta)` is `g_3(x; q)`
/// evaluated at `x = q^alpha`, base `q^beta`.
pub fn g3<R: Ring>(ring: &R, alpha: usize, beta: usize, n: usize) -> Result<Series<R>, FactoryError> {
    if alpha == 0 || alpha >= beta {
        return Err(FactoryError::InvalidG3Arguments { alpha, beta });
    }
    let mut acc = Series::zero(ring, n);
    // Running (q^a; q^b)_{m+1} and (q^{b-a}; q^b)_{m+1}.
    let mut den_a = Series::one(ring, n);
    let mut den_b = Series::one(ring, n);
    let mut m = 0usize;
    loop {
        let min_exp = beta * m * (m + 1);
        if min_exp > n {
            break;
        }
        den_a.mul_assign_binomial(alpha + beta * m, Sign::Plus);
        den_b.mul_assign_binomial(beta - alpha + beta * m, Sign::Plus);
        let reduced = n - min_exp;
        let den = den_a.truncate(reduced).mul(&den_b.truncate(reduced)).expect("same ring");
        let inv = den.invert().expect("constant term 1");
        acc.add_assign_shifted(&inv, min_exp);
        m += 1;
    }
    Ok(acc)
}

/// The defining expansion of the Gordon--McIntosh mock theta function
/// `xi(q) = 1 + 2 sum_{n>=1} q^{6n^2-6n+1} / ((q; q^6)_n (q^5; q^6)_n)`.
///
/// This is the definition-path oracle; it is deliberately kept independent of
/// [`pxi`] so the two routes can be compared coefficientwise.
pub fn mock_xi_definition(n: usize) -> Series<ExactInts> {
    let ring = ExactInts;
    let mut acc = Series::one(&ring, n);
    let mut poch_a = Series::one(&ring, n); // (q; q^6)_m
    let mut poch_b = Series::one(&ring, n); // (q^5; q^6)_m
    let mut m = 1usize;
    loop {
        let min_exp = 6 * m * m - 6 * m + 1;
        if min_exp > n {
            break;
        }
        poch_a.mul_assign_binomial(6 * (m - 1) + 1, Sign::Plus);
        poch_b.mul_assign_binomial(6 * (m - 1) + 5, Sign::Plus);
        let reduced = n - min_exp;
        let den = poch_a.truncate(reduced).mul(&poch_b.truncate(reduced)).expect("same ring");
        let inv = den.invert().expect("constant term 1");
        acc.add_assign_shifted(&inv.scale(2), min_exp);
        m += 1;
    }
    acc
}

/// The identity-path expansion of `xi(q)`:
/// `q^2 omega(q^3) + f_2^4 / (f_1^2 f_6)`.
///
/// Agrees with [`mock_xi_definition`] coefficientwise; the congruence
/// machinery uses this route since it works in any ring.
pub fn pxi<R: Ring>(ring: &R, n: usize) -> Series<R> {
    let mut acc = eta_quotient(ring, &EtaQuotient::new(&[(2, 4), (1, -2), (6, -1)]), n);
    if n >= 2 {
        let omega = mock_omega(ring, (n - 2) / 3);
        let lifted = omega.upsample(3, Sign::Plus, n - 2).shift_extended(2, n);
        acc = acc.add(&lifted).expect("same ring");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Mod;
    use num_bigint::BigInt;

    fn z() -> ExactInts {
        ExactInts
    }

    /// Brute-force product of (1 - q^j) for j <= n over i64, independent of
    /// the series machinery.
    fn naive_euler(k: usize, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        let mut j = k;
        while j <= n {
            let mut next = c.clone();
            for i in j..=n {
                next[i] -= c[i - j];
            }
            c = next;
            j += k;
        }
        c
    }

    /// Brute-force partition count by enumeration of parts.
    fn naive_partitions(n: usize) -> i64 {
        fn count(n: i64, max: i64) -> i64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).map(|p| count(n - p, p)).sum()
        }
        count(n as i64, n as i64)
    }

    #[test]
    fn euler_product_matches_naive_expansion() {
        for k in [1usize, 2, 3] {
            let f = euler_product(&z(), k, 30);
            let expected = naive_euler(k, 30);
            for (n, want) in expected.iter().enumerate() {
                assert_eq!(f.coeff(n), &BigInt::from(*want), "f_{k} at q^{n}");
            }
        }
    }

    #[test]
    fn euler_f1_to_order_7() {
        let f1 = euler_product(&z(), 1, 7);
        assert_eq!(f1, Series::from_i64(&z(), &[1, -1, -1, 0, 0, 1, 0, 1]));
    }

    #[test]
    fn euler_f2_is_substituted_f1() {
        let f2 = euler_product(&z(), 2, 40);
        let sub = euler_product(&z(), 1, 40).substitute(2, Sign::Plus);
        assert_eq!(f2, sub);
    }

    #[test]
    fn euler_matches_pentagonal_number_theorem() {
        let f1 = euler_product(&z(), 1, 200);
        let sparse = indicator_series(
            &z(),
            &ExponentFamily {
                shape: ExponentShape::PentagonalHalf,
                weight: WeightRule::SignedConstant(1),
                range: IndexRange::AllIntegers,
            },
            200,
        );
        assert_eq!(f1, sparse);
    }

    #[test]
    fn inverse_euler_counts_partitions() {
        let inv = euler_product(&z(), 1, 20).invert().unwrap();
        for n in 0..=20 {
            assert_eq!(inv.coeff(n), &BigInt::from(naive_partitions(n)), "p({n})");
        }
    }

    #[test]
    fn phi_psi_phi_neg_eta_quotients() {
        let phi9 = phi(&z(), 9);
        assert_eq!(phi9, Series::from_i64(&z(), &[1, 2, 0, 0, 2, 0, 0, 0, 0, 2]));
        let psi10 = psi(&z(), 10);
        assert_eq!(psi10, Series::from_i64(&z(), &[1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1]));
        let phi_neg = eta_quotient(&z(), &EtaQuotient::new(&[(1, 2), (2, -1)]), 9);
        assert_eq!(phi_neg, Series::from_i64(&z(), &[1, -2, 0, 0, 2, 0, 0, 0, 0, -2]));
        assert_eq!(phi_neg, phi9.substitute(1, Sign::Minus));
    }

    #[test]
    fn eta_quotient_normalizes_factors() {
        let eq = EtaQuotient::new(&[(2, 3), (1, -2), (2, 2), (4, 0)]);
        assert_eq!(eq.factors(), &[(1, -2), (2, 5)]);
    }

    #[test]
    fn pochhammer_finite_examples() {
        let one_factor = PochhammerSpec {
            sign: Sign::Plus,
            start: 1,
            step: 6,
            length: Some(1),
        };
        assert_eq!(
            pochhammer(&z(), &one_factor, 3).unwrap(),
            Series::from_i64(&z(), &[1, -1, 0, 0])
        );
        let neg_two = PochhammerSpec {
            sign: Sign::Minus,
            start: 1,
            step: 1,
            length: Some(2),
        };
        assert_eq!(
            pochhammer(&z(), &neg_two, 3).unwrap(),
            Series::from_i64(&z(), &[1, 1, 1, 1])
        );
    }

    #[test]
    fn pochhammer_infinite_odd_product() {
        // (q; q^2)_inf = (1-q)(1-q^3)(1-q^5)...
        let spec = PochhammerSpec {
            sign: Sign::Plus,
            start: 1,
            step: 2,
            length: None,
        };
        assert_eq!(
            pochhammer(&z(), &spec, 6).unwrap(),
            Series::from_i64(&z(), &[1, -1, 0, -1, 1, -1, 1])
        );
    }

    #[test]
    fn pochhammer_infinite_at_zero_rejected() {
        let spec = PochhammerSpec {
            sign: Sign::Plus,
            start: 0,
            step: 1,
            length: None,
        };
        assert_eq!(pochhammer(&z(), &spec, 5), Err(FactoryError::DivergentPochhammer));
    }

    #[test]
    fn indicator_squares_matches_phi() {
        let squares = indicator_series(
            &z(),
            &ExponentFamily {
                shape: ExponentShape::Square,
                weight: WeightRule::Constant(2),
                range: IndexRange::FromOne,
            },
            100,
        );
        let sum = squares.add(&Series::one(&z(), 100)).unwrap();
        assert_eq!(sum, phi(&z(), 100));
    }

    #[test]
    fn indicator_pentagonal_matches_f2() {
        let sparse = indicator_series(
            &z(),
            &ExponentFamily {
                shape: ExponentShape::Pentagonal,
                weight: WeightRule::SignedConstant(1),
                range: IndexRange::AllIntegers,
            },
            200,
        );
        assert_eq!(sparse, euler_product(&z(), 2, 200));
    }

    #[test]
    fn jacobi_cube_matches_f1_cubed() {
        let sparse = jacobi_cube(&z(), 200);
        let cube = euler_product(&z(), 1, 200).pow(3).unwrap();
        assert_eq!(sparse, cube);
        assert_eq!(
            sparse.truncate(6),
            Series::from_i64(&z(), &[1, -3, 0, 5, 0, 0, -7])
        );
    }

    #[test]
    fn mock_omega_low_coefficients() {
        let w = mock_omega(&z(), 10);
        // 1/(1-q)^2 dominates the first coefficients: 1, 2, 3, ...
        assert_eq!(w.coeff(0), &BigInt::from(1));
        assert_eq!(w.coeff(1), &BigInt::from(2));
        assert_eq!(w.coeff(2), &BigInt::from(3));
    }

    #[test]
    fn mock_nu_low_coefficients() {
        let v = mock_nu(&z(), 10);
        assert_eq!(v.coeff(0), &BigInt::from(1));
        assert_eq!(v.coeff(1), &BigInt::from(-1));
    }

    #[test]
    fn mock_f3_low_coefficients() {
        let f = mock_f3(&z(), 10);
        assert_eq!(f.coeff(0), &BigInt::from(1));
        assert_eq!(f.coeff(1), &BigInt::from(1));
    }

    #[test]
    fn g3_argument_validation() {
        assert!(matches!(g3(&z(), 0, 2, 10), Err(FactoryError::InvalidG3Arguments { .. })));
        assert!(matches!(g3(&z(), 2, 2, 10), Err(FactoryError::InvalidG3Arguments { .. })));
    }

    #[test]
    fn g3_1_2_equals_omega_small() {
        let g = g3(&z(), 1, 2, 60).unwrap();
        assert_eq!(g, mock_omega(&z(), 60));
    }

    #[test]
    fn xi_definition_low_coefficients_and_evenness() {
        let xi = mock_xi_definition(200);
        assert_eq!(xi.coeff(0), &BigInt::from(1));
        assert_eq!(xi.coeff(1), &BigInt::from(2));
        let reduced = xi.reduce_mod(2);
        for n in 1..=200 {
            assert_eq!(*reduced.coeff(n), 0, "p_xi({n}) must be even");
        }
        assert_eq!(*reduced.coeff(0), 1);
    }

    #[test]
    fn pxi_matches_definition_path() {
        let a = pxi(&ExactInts, 300);
        let b = mock_xi_definition(300);
        assert_eq!(a.first_mismatch(&b, 300).unwrap(), None);
    }

    #[test]
    fn pxi_mod_ring_matches_reduced_exact() {
        let exact = pxi(&ExactInts, 150);
        for m in [3u64, 4, 5, 8, 9] {
            let direct = pxi(&Mod::new(m), 150);
            assert_eq!(exact.reduce_mod(m), direct, "pxi mod {m}");
        }
    }

    #[test]
    fn three_core_parity_characterization() {
        // f_3^3 / f_1 mod 2 has coefficient 1 exactly when 3n+1 is a square.
        let ring = Mod::new(2);
        let gf = eta_quotient(&ring, &EtaQuotient::new(&[(3, 3), (1, -1)]), 5000);
        let is_square = |v: usize| {
            let r = (v as f64).sqrt().round() as usize;
            r * r == v
        };
        for n in 0..=5000usize {
            let expected = u64::from(is_square(3 * n + 1));
            assert_eq!(*gf.coeff(n), expected, "a_3({n}) parity");
        }
    }
}
