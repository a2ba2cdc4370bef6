//! Legendre symbols, quadratic-residue congruence families, verification of
//! individual congruence claims, and an arithmetic-progression scanner.

use serde::Serialize;
use thiserror::Error;

use crate::factory::{indicator_series, ExponentFamily};
use crate::series::{Mod, Series};

/// A scan reports a class only when it holds for at least this many terms;
/// smaller samples produce too many accidental zeros.
pub const MIN_SCAN_COUNT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("family kind {kind:?} requires {requirement}, got p = {p}")]
    UnsupportedPrime {
        kind: FamilyKind,
        requirement: &'static str,
        p: u64,
    },
    #[error("series order {order} is insufficient: need coefficient {needed}")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("scan requires count >= {MIN_SCAN_COUNT}, got {0}")]
    InsufficientCount(usize),
    #[error("claim is modulo {claim} but series is over Z/{series}")]
    ModulusMismatch { claim: u64, series: u64 },
}

/// Optional complete description of the non-vanishing coefficients of a claim:
/// `constant * q^0` plus a sparse exponent family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Characterization {
    pub constant: i64,
    pub family: ExponentFamily,
}

/// An arithmetic-progression congruence claim: `c(step*n + offset) == 0 (mod
/// modulus)` for all `n`, or `== characterization value` when one is present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CongruenceClaim {
    pub step: usize,
    pub offset: usize,
    pub modulus: u64,
    #[serde(skip)]
    pub characterization: Option<Characterization>,
}

impl CongruenceClaim {
    pub fn plain(step: usize, offset: usize, modulus: u64) -> Self {
        assert!(step >= 1 && offset < step, "claim offset must satisfy 0 <= B < A");
        CongruenceClaim {
            step,
            offset,
            modulus,
            characterization: None,
        }
    }
}

/// Outcome of checking one claim against an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    /// Least failing progression index `n` when the check fails.
    pub first_failure: Option<usize>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller--Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a | p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8, CongruenceError> {
    if p < 3 || !is_prime(p) {
        return Err(CongruenceError::NotOddPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return Ok(0);
    }
    let e = powmod(a, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// The five quadratic-residue congruence family shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// `p_xi(3(pn+r)) == 0 (mod 4)` when `3r` is a nonresidue mod p.
    Scaled3r,
    /// `p_xi(3(pn+r)+1) == 0 (mod 4)` when `3r+1` is a nonresidue mod p.
    Scaled3rPlus1,
    /// `p_xi(4(pn+r)+2) == 0 (mod 4)` when `2r+1` is a nonresidue mod p.
    Scaled2rPlus1,
    /// `p_xi(3(pn+r)) == 0 (mod 8)` when `r` is a nonresidue mod p = +-1 (mod 24).
    PlusMinus1Mod24,
    /// `p_xi(12(pn+r)+1)` and `p_xi(48(pn+r)+4) == 0 (mod 8)` when `12r+1` is
    /// a nonresidue mod p.
    Scaled12rPlus1,
}

/// Generate every claim of a family for the given prime, offsets reduced into
/// `[0, step)` and ordered by offset.
pub fn qr_family(kind: FamilyKind, p: u64) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    match kind {
        FamilyKind::PlusMinus1Mod24 => {
            if !is_prime(p) || (p % 24 != 1 && p % 24 != 23) {
                return Err(CongruenceError::UnsupportedPrime {
                    kind,
                    requirement: "a prime p == +-1 (mod 24)",
                    p,
                });
            }
        }
        _ => {
            if p <= 3 || !is_prime(p) {
                return Err(CongruenceError::UnsupportedPrime {
                    kind,
                    requirement: "a prime p > 3",
                    p,
                });
            }
        }
    }
    let p_us = p as usize;
    let mut claims = Vec::new();
    for r in 0..p_us {
        let tested: i64 = match kind {
            FamilyKind::Scaled3r => 3 * r as i64,
            FamilyKind::Scaled3rPlus1 => 3 * r as i64 + 1,
            FamilyKind::Scaled2rPlus1 => 2 * r as i64 + 1,
            FamilyKind::PlusMinus1Mod24 => r as i64,
            FamilyKind::Scaled12rPlus1 => 12 * r as i64 + 1,
        };
        if legendre(tested, p)? != -1 {
            continue;
        }
        match kind {
            FamilyKind::Scaled3r => claims.push(CongruenceClaim::plain(3 * p_us, 3 * r, 4)),
            FamilyKind::Scaled3rPlus1 => claims.push(CongruenceClaim::plain(3 * p_us, 3 * r + 1, 4)),
            FamilyKind::Scaled2rPlus1 => claims.push(CongruenceClaim::plain(4 * p_us, 4 * r + 2, 4)),
            FamilyKind::PlusMinus1Mod24 => claims.push(CongruenceClaim::plain(3 * p_us, 3 * r, 8)),
            FamilyKind::Scaled12rPlus1 => {
                claims.push(CongruenceClaim::plain(12 * p_us, 12 * r + 1, 8));
                claims.push(CongruenceClaim::plain(48 * p_us, 48 * r + 4, 8));
            }
        }
    }
    claims.sort_by_key(|c| (c.step, c.offset));
    Ok(claims)
}

/// Check a claim against the first `count` progression terms of an expansion.
pub fn verify_congruence(
    coeffs: &Series<Mod>,
    claim: &CongruenceClaim,
    count: usize,
) -> Result<Verdict, CongruenceError> {
    let m = coeffs.ring().modulus();
    if m != claim.modulus {
        return Err(CongruenceError::ModulusMismatch {
            claim: claim.modulus,
            series: m,
        });
    }
    if count > 0 {
        let needed = claim.step * (count - 1) + claim.offset;
        if needed > coeffs.order() {
            return Err(CongruenceError::InsufficientOrder {
                order: coeffs.order(),
                needed,
            });
        }
    }
    let ring = *coeffs.ring();
    let expected: Option<Series<Mod>> = claim.characterization.map(|ch| {
        let bound = count.saturating_sub(1);
        let mut s = indicator_series(&ring, &ch.family, bound);
        if ch.constant != 0 {
            let c = Series::monomial(&ring, bound, 0, ch.constant);
            s = s.add(&c).expect("same ring");
        }
        s
    });
    for n in 0..count {
        let actual = *coeffs.coeff(claim.step * n + claim.offset);
        let want = match &expected {
            Some(s) => *s.coeff(n),
            None => 0,
        };
        if actual != want {
            return Ok(Verdict {
                pass: false,
                first_failure: Some(n),
            });
        }
    }
    Ok(Verdict {
        pass: true,
        first_failure: None,
    })
}

/// Search an expansion for arithmetic progressions `step*n + offset` whose
/// coefficients all vanish modulo the series ring, for `step <= max_step` and
/// `n < count`. Output is ordered by `(step, offset)`.
pub fn scan(
    coeffs: &Series<Mod>,
    max_step: usize,
    count: usize,
) -> Result<Vec<CongruenceClaim>, CongruenceError> {
    if count < MIN_SCAN_COUNT {
        return Err(CongruenceError::InsufficientCount(count));
    }
    // The largest index touched is max_step*(count-1) + (max_step-1).
    let needed = max_step * count - 1;
    if needed > coeffs.order() {
        return Err(CongruenceError::InsufficientOrder {
            order: coeffs.order(),
            needed,
        });
    }
    let m = coeffs.ring().modulus();
    let mut found = Vec::new();
    for step in 1..=max_step {
        for offset in 0..step {
            let mut ok = true;
            for n in 0..count {
                if *coeffs.coeff(step * n + offset) != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                found.push(CongruenceClaim::plain(step, offset, m));
            }
        }
    }
    Ok(found)
}

/// Drop claims implied by a kept claim with smaller step: `(A', B')` is
/// implied by `(A, B)` when `A | A'` and `B' == B (mod A)`.
pub fn primitive_filter(claims: &[CongruenceClaim]) -> Vec<CongruenceClaim> {
    let mut sorted: Vec<CongruenceClaim> = claims.to_vec();
    sorted.sort_by_key(|c| (c.step, c.offset));
    let mut kept: Vec<CongruenceClaim> = Vec::new();
    for c in sorted {
        let implied = kept.iter().any(|k| {
            k.modulus == c.modulus && c.step % k.step == 0 && c.offset % k.step == k.offset
        });
        if !implied {
            kept.push(c);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Ring;

    #[test]
    fn legendre_basic_values() {
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(legendre(1, p).unwrap(), 1, "1 is a residue mod {p}");
        }
        // Squares mod 7 are {1, 2, 4}.
        assert_eq!(legendre(3, 7).unwrap(), -1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
        assert!(matches!(legendre(2, 9), Err(CongruenceError::NotOddPrime(9))));
        assert!(matches!(legendre(2, 2), Err(CongruenceError::NotOddPrime(2))));
    }

    #[test]
    fn legendre_is_multiplicative_with_balanced_counts() {
        for p in [5u64, 13, 23, 31] {
            let mut residues = 0;
            let mut nonresidues = 0;
            for a in 1..p as i64 {
                match legendre(a, p).unwrap() {
                    1 => residues += 1,
                    -1 => nonresidues += 1,
                    _ => unreachable!(),
                }
                for b in 1..p as i64 {
                    let lhs = legendre(a * b, p).unwrap();
                    let rhs = legendre(a, p).unwrap() * legendre(b, p).unwrap();
                    assert_eq!(lhs, rhs, "(a b | {p}) with a={a}, b={b}");
                }
            }
            assert_eq!(residues, (p as i32 - 1) / 2);
            assert_eq!(nonresidues, (p as i32 - 1) / 2);
        }
    }

    fn offsets(claims: &[CongruenceClaim]) -> Vec<usize> {
        claims.iter().map(|c| c.offset).collect()
    }

    #[test]
    fn qr_family_reproduces_printed_lists() {
        let f = qr_family(FamilyKind::Scaled3r, 5).unwrap();
        assert!(f.iter().all(|c| c.step == 15 && c.modulus == 4));
        assert_eq!(offsets(&f), vec![3, 12]);

        let f = qr_family(FamilyKind::Scaled2rPlus1, 7).unwrap();
        assert!(f.iter().all(|c| c.step == 28));
        assert_eq!(offsets(&f), vec![6, 10, 26]);

        let f = qr_family(FamilyKind::PlusMinus1Mod24, 23).unwrap();
        assert!(f.iter().all(|c| c.step == 69 && c.modulus == 8));
        assert_eq!(offsets(&f), vec![15, 21, 30, 33, 42, 45, 51, 57, 60, 63, 66]);
    }

    #[test]
    fn qr_family_rejects_bad_primes() {
        assert!(qr_family(FamilyKind::Scaled3r, 3).is_err());
        assert!(qr_family(FamilyKind::Scaled3r, 15).is_err());
        assert!(qr_family(FamilyKind::PlusMinus1Mod24, 5).is_err());
    }

    #[test]
    fn verify_vacuous_and_mismatch() {
        let ring = Mod::new(4);
        let s = Series::from_i64(&ring, &[1, 0, 0, 2, 0, 0, 0]);
        let vacuous = verify_congruence(&s, &CongruenceClaim::plain(3, 0, 4), 0).unwrap();
        assert!(vacuous.pass);
        let v = verify_congruence(&s, &CongruenceClaim::plain(3, 0, 4), 2).unwrap();
        assert_eq!(v.first_failure, Some(0));
        assert!(matches!(
            verify_congruence(&s, &CongruenceClaim::plain(3, 0, 4), 4),
            Err(CongruenceError::InsufficientOrder { .. })
        ));
        assert!(matches!(
            verify_congruence(&s, &CongruenceClaim::plain(3, 0, 8), 1),
            Err(CongruenceError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn scan_constant_series() {
        let ring = Mod::new(4);
        let one = Series::one(&ring, 400);
        let found = scan(&one, 5, 32).unwrap();
        // Every (A, B >= 1) passes; every (A, 0) hits the constant 1.
        let expected: Vec<(usize, usize)> = (1..=5usize)
            .flat_map(|a| (1..a).map(move |b| (a, b)))
            .collect();
        let got: Vec<(usize, usize)> = found.iter().map(|c| (c.step, c.offset)).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn scan_enforces_count_floor_and_order() {
        let ring = Mod::new(4);
        let one = Series::one(&ring, 50);
        assert!(matches!(scan(&one, 4, 8), Err(CongruenceError::InsufficientCount(8))));
        assert!(matches!(
            scan(&one, 4, 100),
            Err(CongruenceError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn primitive_filter_collapses_refinements() {
        let claims = [
            CongruenceClaim::plain(8, 6, 4),
            CongruenceClaim::plain(16, 6, 4),
            CongruenceClaim::plain(16, 14, 4),
        ];
        let kept = primitive_filter(&claims);
        assert_eq!(kept, vec![CongruenceClaim::plain(8, 6, 4)]);

        let single = [CongruenceClaim::plain(24, 19, 3)];
        assert_eq!(primitive_filter(&single), single.to_vec());

        let claims = [
            CongruenceClaim::plain(24, 19, 3),
            CongruenceClaim::plain(48, 19, 3),
            CongruenceClaim::plain(48, 43, 3),
        ];
        assert_eq!(primitive_filter(&claims), vec![CongruenceClaim::plain(24, 19, 3)]);
    }

    #[test]
    fn mod_ring_description_matches() {
        assert_eq!(Mod::new(9).describe(), "Z/9");
    }
}
