//! Period, rank, order and residue of a recurrence modulo `m`.
//!
//! Two independent routes compute a [`PisanoProfile`]:
//!
//! * [`profile_oracle`] walks consecutive pairs from `(0, 1)` until the
//!   walk closes. It works for any `(a, b)`, including eventually periodic
//!   sequences where `gcd(b, m) > 1`.
//! * [`profile_fast`] handles K-Fibonacci sequences only. It factors `m`,
//!   finds the rank of each prime by descending through divisors of
//!   `p - (D/p)` with `D = K^2 + 4`, lifts rank and period to prime powers
//!   (each lift multiplies by `p` or keeps the value), and combines the
//!   prime-power results with lcm.

use serde::{Deserialize, Serialize};

use crate::arith::{self, gcd, is_prime, legendre, mult_order, reduce_signed};
use crate::error::{Error, Result};
use crate::seq::{
    check_modulus, matrix_power, term_mod, term_mod_matrix, PairState, RecurrenceParams, Stepper,
};
use crate::MAX_MODULUS;

/// Period, rank, order, residue and preperiod of a sequence modulo `m`.
///
/// `order == 0` means the sequence is eventually periodic and its cycle
/// holds no zero; `rank` and `residue` are then `None`. For eventually
/// periodic sequences whose cycle does contain zeros, `rank` is the first
/// zero index inside the cycle and `residue` the term after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PisanoProfile {
    pub period: u64,
    pub rank: Option<u64>,
    pub order: u64,
    pub residue: Option<u64>,
    pub preperiod: u64,
}

impl PisanoProfile {
    /// Profile for `m = 1`, where the order is 1 by convention.
    pub const TRIVIAL: PisanoProfile = PisanoProfile {
        period: 1,
        rank: Some(1),
        order: 1,
        residue: Some(0),
        preperiod: 0,
    };

    pub fn is_purely_periodic(&self) -> bool {
        self.preperiod == 0
    }
}

/// Profile by direct walk over consecutive pairs.
///
/// When `gcd(b, m) = 1` the pair map is invertible and the walk simply runs
/// until `(0, 1)` comes back. Otherwise Brent's cycle finder locates the
/// preperiod and cycle length, and a second pass over the cycle counts its
/// zeros.
pub fn profile_oracle(params: RecurrenceParams, m: u64) -> Result<PisanoProfile> {
    check_modulus(m)?;
    if m == 1 {
        return Ok(PisanoProfile::TRIVIAL);
    }
    let stepper = Stepper::new(params, m)?;
    let (_, b) = params.reduced(m);
    // at most m^2 distinct pairs exist
    let limit = m * m + m;
    if gcd(b, m) == 1 {
        walk_purely_periodic(&stepper, limit)
    } else {
        walk_eventually_periodic(&stepper, limit)
    }
}

fn walk_purely_periodic(stepper: &Stepper, limit: u64) -> Result<PisanoProfile> {
    let seed = PairState::seed(stepper.modulus());
    let mut s = seed;
    let mut n = 0u64;
    let mut rank = None;
    let mut residue = None;
    let mut zeros = 0u64;
    loop {
        s = stepper.step(s);
        n += 1;
        if s.u == 0 {
            zeros += 1;
            if rank.is_none() {
                rank = Some(n);
                residue = Some(s.v);
            }
        }
        if s == seed {
            break;
        }
        if n > limit {
            return Err(walk_overrun(stepper.modulus()));
        }
    }
    Ok(PisanoProfile {
        period: n,
        rank,
        order: zeros,
        residue,
        preperiod: 0,
    })
}

fn walk_eventually_periodic(stepper: &Stepper, limit: u64) -> Result<PisanoProfile> {
    let m = stepper.modulus();
    let seed = PairState::seed(m);

    let mut power = 1u64;
    let mut period = 1u64;
    let mut tortoise = seed;
    let mut hare = stepper.step(seed);
    while tortoise != hare {
        if power == period {
            tortoise = hare;
            power *= 2;
            period = 0;
        }
        hare = stepper.step(hare);
        period += 1;
        if period > limit {
            return Err(walk_overrun(m));
        }
    }

    let mut tortoise = seed;
    let mut hare = seed;
    for _ in 0..period {
        hare = stepper.step(hare);
    }
    let mut preperiod = 0u64;
    while tortoise != hare {
        tortoise = stepper.step(tortoise);
        hare = stepper.step(hare);
        preperiod += 1;
        if preperiod > limit {
            return Err(walk_overrun(m));
        }
    }

    let mut s = tortoise;
    let mut rank = None;
    let mut residue = None;
    let mut zeros = 0u64;
    for offset in 0..period {
        if s.u == 0 {
            zeros += 1;
            if rank.is_none() {
                rank = Some(preperiod + offset);
                residue = Some(s.v);
            }
        }
        s = stepper.step(s);
    }
    Ok(PisanoProfile {
        period,
        rank,
        order: zeros,
        residue,
        preperiod,
    })
}

fn walk_overrun(m: u64) -> Error {
    Error::Invariant(format!("pair walk modulo {m} exceeded m^2 + m steps"))
}

/// Rank of apparition of the prime `p` in the K-Fibonacci sequence.
///
/// `F_{K, p - (D/p)}` vanishes modulo `p` (with `D = K^2 + 4` and the
/// index taken as `p` when `p | D`), and the indices of vanishing terms are
/// exactly the multiples of the rank, so the rank is found by stripping
/// prime factors from that index while the term stays zero.
pub fn prime_rank(k: i64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_modulus(p)?;
    if p == 2 {
        // 0, 1, K, ... : F_2 = K, F_3 = K^2 + 1 is odd
        return Ok(if k % 2 == 0 { 2 } else { 3 });
    }
    let kr = reduce_signed(k, p);
    let disc = (kr * kr + 4) % p;
    let mut rank = match legendre(disc as i64, p)? {
        0 => p,
        1 => p - 1,
        _ => p + 1,
    };
    debug_assert_eq!(term_mod_matrix(k, rank, p)?, 0);
    for q in arith::factorize(rank)?.primes().collect::<Vec<_>>() {
        while rank % q == 0 && term_mod_matrix(k, rank / q, p)? == 0 {
            rank /= q;
        }
    }
    Ok(rank)
}

/// Period and rank of a K-Fibonacci sequence modulo the prime `p`.
fn prime_period_rank(k: i64, p: u64) -> Result<(u64, u64)> {
    let rank = prime_rank(k, p)?;
    let residue = term_mod_matrix(k, rank + 1, p)?;
    let order = mult_order(residue as i64, p)?;
    Ok((rank * order, rank))
}

/// Period and rank modulo `p^e`, lifted one exponent at a time: at each
/// level the value either survives unchanged or gets multiplied by `p`.
fn prime_power_period_rank(k: i64, p: u64, e: u32) -> Result<(u64, u64)> {
    let (mut period, mut rank) = prime_period_rank(k, p)?;
    let mut q = p;
    for _ in 1..e {
        q *= p;
        if term_mod_matrix(k, rank, q)? != 0 {
            rank *= p;
        }
        if !matrix_power(k, period, q)?.is_identity(q) {
            period *= p;
        }
    }
    Ok((period, rank))
}

/// Profile of a K-Fibonacci sequence by factor, lift and combine.
pub fn profile_fast(params: RecurrenceParams, m: u64) -> Result<PisanoProfile> {
    let k = params.require_k_fibonacci()?;
    check_modulus(m)?;
    if m == 1 {
        return Ok(PisanoProfile::TRIVIAL);
    }
    let mut period = 1u64;
    let mut rank = 1u64;
    for &(p, e) in arith::factorize(m)?.factors() {
        let (pp, rp) = prime_power_period_rank(k, p, e)?;
        period = arith::checked_lcm(period, pp).ok_or(Error::Overflow("period"))?;
        rank = arith::checked_lcm(rank, rp).ok_or(Error::Overflow("rank"))?;
    }
    if !period.is_multiple_of(rank) {
        return Err(Error::Invariant(format!(
            "rank {rank} does not divide period {period} modulo {m}"
        )));
    }
    Ok(PisanoProfile {
        period,
        rank: Some(rank),
        order: period / rank,
        residue: Some(term_mod_matrix(k, rank + 1, m)?),
        preperiod: 0,
    })
}

/// Fast route for K-Fibonacci sequences, oracle walk for everything else.
pub fn profile(params: RecurrenceParams, m: u64) -> Result<PisanoProfile> {
    if params.is_k_fibonacci() {
        profile_fast(params, m)
    } else {
        profile_oracle(params, m)
    }
}

/// Largest exponent accepted by [`powers_of_two_profile`].
pub const MAX_TWO_EXPONENT: u32 = 30;

/// Closed-form profile modulo `2^x`.
///
/// Even K: period = rank = `2^(x + 1 - v)` with `v` the 2-adic valuation of
/// `gcd(2^x, K)`, order 1. Odd K: `(3, 3, 1)`, `(6, 6, 1)`, then period
/// `3 * 2^(x-1)` and rank `3 * 2^(x-2)` with order 2.
pub fn powers_of_two_profile(k: i64, x: u32) -> Result<PisanoProfile> {
    if x == 0 || x > MAX_TWO_EXPONENT {
        return Err(Error::OutOfRange {
            what: "power-of-two exponent",
            value: x as u64,
            max: MAX_TWO_EXPONENT as u64,
        });
    }
    let modulus = 1u64 << x;
    if k % 2 == 0 {
        let v = arith::nu2(gcd(modulus, k.unsigned_abs()))?;
        let period = 1u64 << (x + 1 - v);
        return Ok(PisanoProfile {
            period,
            rank: Some(period),
            order: 1,
            residue: Some(1),
            preperiod: 0,
        });
    }
    let (period, rank) = match x {
        1 => (3, 3),
        2 => (6, 6),
        _ => (3 << (x - 1), 3 << (x - 2)),
    };
    let residue = if period == rank {
        1
    } else {
        term_mod_matrix(k, rank + 1, modulus)?
    };
    Ok(PisanoProfile {
        period,
        rank: Some(rank),
        order: period / rank,
        residue: Some(residue),
        preperiod: 0,
    })
}

/// The term after the first zero, `F_{K, rank + 1} mod m`.
pub fn residue_of(params: RecurrenceParams, m: u64) -> Result<u64> {
    params.require_k_fibonacci()?;
    if m < 2 {
        return Err(Error::InvalidArgument(
            "residue needs a modulus of at least 2".into(),
        ));
    }
    profile_fast(params, m)?
        .residue
        .ok_or_else(|| Error::Invariant("K-Fibonacci profile without residue".into()))
}

/// Largest prime whose square still fits the modulus range.
pub const MAX_WALL_SUN_SUN_PRIME: u64 = 46_337;

fn check_wss_prime_bound(p: u64) -> Result<()> {
    if !p.checked_mul(p).is_some_and(|sq| sq <= MAX_MODULUS) {
        return Err(Error::OutOfRange {
            what: "prime (its square must fit the modulus range)",
            value: p,
            max: MAX_WALL_SUN_SUN_PRIME,
        });
    }
    Ok(())
}

/// Whether `p` is a K-Wall-Sun-Sun prime, i.e. the period modulo `p^2`
/// equals the period modulo `p`.
///
/// The period modulo `p` always divides the one modulo `p^2`, so equality
/// holds exactly when `U(K)` raised to the first is the identity mod `p^2`.
pub fn is_wall_sun_sun(k: i64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_wss_prime_bound(p)?;
    let (period, _) = prime_period_rank(k, p)?;
    Ok(matrix_power(k, period, p * p)?.is_identity(p * p))
}

/// All K-Wall-Sun-Sun primes up to `p_max`.
pub fn wall_sun_sun_primes(k: i64, p_max: u64) -> Result<Vec<u64>> {
    check_wss_prime_bound(p_max)?;
    let mut out = Vec::new();
    for p in arith::primes_up_to(p_max) {
        if is_wall_sun_sun(k, p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Checks `F_{K, pi - n} = (-1)^(n+1) F_{K, n} (mod m)` for `0 <= n <= pi`.
pub fn negative_index_check(params: RecurrenceParams, m: u64, n: u64) -> Result<bool> {
    params.require_k_fibonacci()?;
    let period = profile_fast(params, m)?.period;
    if n > period {
        return Err(Error::InvalidArgument(format!(
            "index {n} exceeds the period {period}"
        )));
    }
    let lhs = term_mod(params, period - n, m)?;
    let f = term_mod(params, n, m)?;
    let rhs = if n % 2 == 1 { f } else { (m - f) % m };
    Ok(lhs == rhs)
}
