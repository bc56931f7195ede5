//! Integer utilities: factorization, gcd/lcm, 2-adic valuation, Legendre
//! symbol and multiplicative order.
//!
//! Everything here works on `u64` with `u128` intermediates, so the inputs
//! may go all the way to `2^63 - 1` even though the recurrence engine itself
//! caps moduli at [`MAX_MODULUS`](crate::MAX_MODULUS).

use crate::error::{Error, Result};

/// Trial division covers every prime below this bound before Pollard rho
/// takes over.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Largest accepted input for [`factorize`].
pub const MAX_FACTOR_INPUT: u64 = (1 << 63) - 1;

/// Prime factorization of a positive integer as `(prime, exponent)` pairs,
/// primes strictly increasing. The integer 1 has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factors back together.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }

    /// Exponent of `p`, zero when `p` does not divide the value.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Euler's totient of the factored value.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * (p - 1) * p.pow(e - 1))
    }

    fn from_primes(mut primes: Vec<u64>) -> Self {
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple of two positive integers, `None` on overflow.
pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Least common multiple of a list; the empty list gives 1.
pub fn lcm_list(xs: &[u64]) -> Result<u64> {
    xs.iter().try_fold(1u64, |acc, &x| {
        if x == 0 {
            return Err(Error::InvalidArgument("lcm of zero is undefined".into()));
        }
        checked_lcm(acc, x).ok_or(Error::Overflow("lcm"))
    })
}

/// 2-adic valuation. `nu2(0)` is an error since every power of two divides 0.
pub fn nu2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::InvalidArgument("2-adic valuation of 0".into()));
    }
    Ok(n.trailing_zeros())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin; the first twelve primes as bases are exact
/// for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds a nontrivial divisor of an odd composite `n` with Brent's variant
/// of Pollard rho. The polynomial constant is stepped deterministically.
fn pollard_rho(n: u64) -> u64 {
    let f = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    for c in 1.. {
        let mut y = 2u64;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; redo one step at a time
            loop {
                ys = f(ys, c);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard rho exhausted every constant")
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factors `1 <= n <= 2^63 - 1`: trial division below 10^6, then Pollard rho
/// on whatever cofactor remains.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(Error::OutOfRange {
            what: "factorize input",
            value: n,
            max: MAX_FACTOR_INPUT,
        });
    }
    let mut rest = n;
    let mut primes = Vec::new();
    while rest.is_multiple_of(2) {
        primes.push(2);
        rest /= 2;
    }
    let mut d = 3u64;
    while d < TRIAL_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += 2;
    }
    if rest > 1 {
        if d * d > rest {
            primes.push(rest);
        } else {
            split_into(rest, &mut primes);
        }
    }
    Ok(Factorization::from_primes(primes))
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by quadratic reciprocity.
fn jacobi(a: u64, n: u64) -> i8 {
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(jacobi(reduce_signed(a, p), p))
}

/// Multiplicative order of `a` modulo `m`: the least `t >= 1` with
/// `a^t = 1 (mod m)`.
///
/// Factors the totient and strips prime factors from it while the power
/// stays at 1. [`mult_order_naive`] is the repeated-multiplication fallback.
pub fn mult_order(a: i64, m: u64) -> Result<u64> {
    let a = check_unit(a, m)?;
    if m == 1 {
        return Ok(1);
    }
    let group = factorize(m)?.totient();
    let mut order = group;
    for (q, _) in factorize(group)?.factors().iter().copied() {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Multiplicative order by repeated multiplication. Linear in the order.
pub fn mult_order_naive(a: i64, m: u64) -> Result<u64> {
    let a = check_unit(a, m)?;
    if m == 1 {
        return Ok(1);
    }
    let mut x = a;
    let mut t = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        t += 1;
    }
    Ok(t)
}

fn check_unit(a: i64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let r = reduce_signed(a, m);
    if m > 1 && gcd(r, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    Ok(r)
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Divisors of `n`, ascending.
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

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_criterion(a: u64, p: u64) -> i8 {
        match pow_mod(a, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            x => panic!("euler criterion gave {x}"),
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(144).unwrap().factors(), &[(2, 4), (3, 2)]);
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(
            factorize(610).unwrap().factors(),
            &[(2, 1), (5, 1), (61, 1)]
        );
    }

    #[test]
    fn factorize_rejects_zero_and_huge() {
        assert!(factorize(0).is_err());
        assert!(factorize(u64::MAX).is_err());
    }

    #[test]
    fn factorize_large_semiprimes() {
        // both factors above the trial-division bound
        let p = 1_000_003u64;
        let q = 2_147_483_647u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(p, 1), (q, 1)]);
        let r = 2_147_483_647u64;
        assert_eq!(factorize(r * r).unwrap().factors(), &[(r, 2)]);
        // F_90
        let f90 = 2_880_067_194_370_816_120u64;
        let f = factorize(f90).unwrap();
        assert_eq!(f.value(), f90);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn factorize_roundtrip_exhaustive() {
        for n in 1..=1_000_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.value(), n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.primes().all(is_prime));
        }
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_list(&[6, 4 * 5]).unwrap(), 60);
        assert_eq!(lcm_list(&[17]).unwrap(), 17);
        assert_eq!(lcm_list(&[3, 8]).unwrap(), 24);
        assert_eq!(lcm_list(&[]).unwrap(), 1);
        assert!(matches!(
            lcm_list(&[u64::MAX, u64::MAX - 1]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn lcm_gcd_product() {
        for a in 1..=1000u64 {
            for b in 1..=1000u64 {
                assert_eq!(checked_lcm(a, b).unwrap() * gcd(a, b), a * b);
            }
        }
    }

    #[test]
    fn nu2_values() {
        assert_eq!(nu2(8).unwrap(), 3);
        assert_eq!(nu2(12).unwrap(), 2);
        assert_eq!(nu2(gcd(8, 4)).unwrap(), 2);
        for x in 0..=40u32 {
            for odd in [1u64, 3, 5, 7, 99, 12345] {
                assert_eq!(nu2((1u64 << x) * odd).unwrap(), x);
            }
        }
        assert!(nu2(0).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(5, 11).unwrap(), 1);
        assert_eq!(legendre(5, 13).unwrap(), -1);
        assert_eq!(legendre(26, 13).unwrap(), 0);
        assert_eq!(legendre(-1, 13).unwrap(), 1);
        assert!(matches!(legendre(5, 2), Err(Error::NotOddPrime(2))));
        assert!(matches!(legendre(5, 15), Err(Error::NotOddPrime(15))));
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for p in primes_up_to(1000).into_iter().skip(1) {
            for a in 1..p {
                assert_eq!(
                    legendre(a as i64, p).unwrap(),
                    euler_criterion(a, p),
                    "a={a} p={p}"
                );
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        for m in 3..200u64 {
            assert_eq!(mult_order(-1, m).unwrap(), 2);
            assert_eq!(mult_order(1, m).unwrap(), 1);
        }
        assert_eq!(mult_order(3, 10).unwrap(), 4);
        assert!(matches!(mult_order(4, 10), Err(Error::NotCoprime { .. })));
        assert!(matches!(mult_order(1, 0), Err(Error::ZeroModulus)));
    }

    #[test]
    fn mult_order_paths_agree_and_divide_totient() {
        for m in 2..=500u64 {
            let phi = factorize(m).unwrap().totient();
            for a in 1..m {
                if gcd(a, m) != 1 {
                    continue;
                }
                let fast = mult_order(a as i64, m).unwrap();
                assert_eq!(fast, mult_order_naive(a as i64, m).unwrap());
                assert_eq!(phi % fast, 0);
            }
        }
    }

    #[test]
    fn primality_small_agrees_with_sieve() {
        let sieve = primes_up_to(100_000);
        let mut it = sieve.iter().peekable();
        for n in 0..=100_000u64 {
            let expected = it.peek() == Some(&&n);
            if expected {
                it.next();
            }
            assert_eq!(is_prime(n), expected, "n={n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn divisors_of_twelve() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
