//! Recurrence engine for `F_n = a F_{n-1} + b F_{n-2}` with `F_0 = 0`,
//! `F_1 = 1`, reduced modulo `m`.
//!
//! K-Fibonacci sequences (`b = 1`) go through the 2x2 matrix
//! `U(K) = [[K, 1], [1, 0]]`, whose n-th power is
//! `[[F_{n+1}, F_n], [F_n, F_{n-1}]]`. Every other `(a, b)` is stepped
//! term by term.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::reduce_signed;
use crate::error::{Error, Result};
use crate::MAX_MODULUS;

/// Largest index accepted by [`term_mod`].
pub const MAX_INDEX: u64 = i64::MAX as u64;

/// Coefficients of `F_n = a F_{n-1} + b F_{n-2}`. Kept signed; reduction
/// into `[0, m)` happens at use sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RecurrenceParams {
    pub a: i64,
    pub b: i64,
}

impl RecurrenceParams {
    pub const FIBONACCI: RecurrenceParams = RecurrenceParams { a: 1, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        RecurrenceParams { a, b }
    }

    /// The K-Fibonacci sequence `(K, 1)`.
    pub const fn k_fibonacci(k: i64) -> Self {
        RecurrenceParams { a: k, b: 1 }
    }

    pub fn is_k_fibonacci(&self) -> bool {
        self.b == 1
    }

    /// `(a mod m, b mod m)` in `[0, m)`.
    pub fn reduced(&self, m: u64) -> (u64, u64) {
        (reduce_signed(self.a, m), reduce_signed(self.b, m))
    }

    pub(crate) fn require_k_fibonacci(&self) -> Result<i64> {
        if self.b == 1 {
            Ok(self.a)
        } else {
            Err(Error::RequiresUnitB { b: self.b })
        }
    }
}

impl fmt::Display for RecurrenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Two consecutive terms `(F_n, F_{n+1})` modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PairState {
    pub u: u64,
    pub v: u64,
}

impl PairState {
    /// `(F_0, F_1)` reduced modulo `m`.
    pub fn seed(m: u64) -> Self {
        PairState { u: 0, v: 1 % m }
    }
}

/// Checks `1 <= m <= MAX_MODULUS`.
pub fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        Err(Error::ZeroModulus)
    } else if m > MAX_MODULUS {
        Err(Error::OutOfRange {
            what: "modulus",
            value: m,
            max: MAX_MODULUS,
        })
    } else {
        Ok(())
    }
}

/// Pre-reduced coefficients for stepping many states under one modulus.
///
/// With `m < 2^31` every `a v + b u` fits in a `u64`.
#[derive(Debug, Clone, Copy)]
pub struct Stepper {
    a: u64,
    b: u64,
    m: u64,
}

impl Stepper {
    pub fn new(params: RecurrenceParams, m: u64) -> Result<Self> {
        check_modulus(m)?;
        let (a, b) = params.reduced(m);
        Ok(Stepper { a, b, m })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline(always)]
    pub fn step(&self, s: PairState) -> PairState {
        PairState {
            u: s.v,
            v: (self.a * s.v + self.b * s.u) % self.m,
        }
    }
}

/// One step `(u, v) -> (v, a v + b u mod m)`.
pub fn step(params: RecurrenceParams, state: PairState, m: u64) -> Result<PairState> {
    if state.u >= m || state.v >= m {
        return Err(Error::InvalidArgument(format!(
            "state ({}, {}) not reduced modulo {m}",
            state.u, state.v
        )));
    }
    Ok(Stepper::new(params, m)?.step(state))
}

/// 2x2 matrix of residues, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix2(pub [[u64; 2]; 2]);

impl Matrix2 {
    pub fn identity(m: u64) -> Self {
        Matrix2([[1 % m, 0], [0, 1 % m]])
    }

    pub fn is_identity(&self, m: u64) -> bool {
        *self == Self::identity(m)
    }

    fn mul(&self, rhs: &Matrix2, m: u64) -> Matrix2 {
        let [[a, b], [c, d]] = self.0;
        let [[e, f], [g, h]] = rhs.0;
        Matrix2([
            [(a * e + b * g) % m, (a * f + b * h) % m],
            [(c * e + d * g) % m, (c * f + d * h) % m],
        ])
    }

    /// Determinant reduced into `[0, m)`.
    pub fn det(&self, m: u64) -> u64 {
        let [[a, b], [c, d]] = self.0;
        (a * d % m + m - b * c % m) % m
    }
}

/// `U(K)^n mod m` by square-and-multiply; `n = 0` gives the identity.
pub fn matrix_power(k: i64, n: u64, m: u64) -> Result<Matrix2> {
    check_modulus(m)?;
    let kr = reduce_signed(k, m);
    let mut base = Matrix2([[kr, 1 % m], [1 % m, 0]]);
    let mut acc = Matrix2::identity(m);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, m);
        }
        base = base.mul(&base, m);
        e >>= 1;
    }
    Ok(acc)
}

fn check_index(n: u64) -> Result<()> {
    if n > MAX_INDEX {
        Err(Error::OutOfRange {
            what: "index",
            value: n,
            max: MAX_INDEX,
        })
    } else {
        Ok(())
    }
}

/// `F_n mod m`. Matrix powering when `b = 1`, plain stepping otherwise.
pub fn term_mod(params: RecurrenceParams, n: u64, m: u64) -> Result<u64> {
    check_index(n)?;
    if params.is_k_fibonacci() {
        term_mod_matrix(params.a, n, m)
    } else {
        term_mod_iterative(params, n, m)
    }
}

/// `F_{K,n} mod m` read off `U(K)^n`.
pub fn term_mod_matrix(k: i64, n: u64, m: u64) -> Result<u64> {
    Ok(matrix_power(k, n, m)?.0[0][1])
}

/// `F_n mod m` by stepping `n` times. Linear in `n`.
pub fn term_mod_iterative(params: RecurrenceParams, n: u64, m: u64) -> Result<u64> {
    let stepper = Stepper::new(params, m)?;
    let mut s = PairState::seed(m);
    for _ in 0..n {
        s = stepper.step(s);
    }
    Ok(s.u)
}

/// `L_{K,n} mod m` for the companion sequence `L_0 = 2`, `L_1 = K`.
pub fn lucas_term_mod(params: RecurrenceParams, n: u64, m: u64) -> Result<u64> {
    let k = params.require_k_fibonacci()?;
    check_index(n)?;
    check_modulus(m)?;
    if n == 0 {
        return Ok(2 % m);
    }
    // L_n = F_{n+1} + F_{n-1}
    let [[next, _], [_, prev]] = matrix_power(k, n, m)?.0;
    Ok((next + prev) % m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exact terms in i128 for small n, reduced afterwards.
    fn exact_terms(a: i128, b: i128, count: usize) -> Vec<i128> {
        let mut t = vec![0i128, 1];
        while t.len() < count {
            let n = t.len();
            t.push(a * t[n - 1] + b * t[n - 2]);
        }
        t
    }

    fn md(x: i128, m: u64) -> u64 {
        x.rem_euclid(m as i128) as u64
    }

    #[test]
    fn term_examples() {
        assert_eq!(
            term_mod(RecurrenceParams::FIBONACCI, 15, 1_000_000).unwrap(),
            610
        );
        assert_eq!(
            term_mod(RecurrenceParams::k_fibonacci(2), 5, 1000).unwrap(),
            29
        );
        for p in [
            RecurrenceParams::FIBONACCI,
            RecurrenceParams::new(3, 5),
            RecurrenceParams::new(-2, 7),
        ] {
            assert_eq!(term_mod(p, 0, 97).unwrap(), 0);
            assert_eq!(term_mod(p, 1, 97).unwrap(), 1);
            assert_eq!(term_mod(p, 1, 1).unwrap(), 0);
        }
        assert_eq!(
            term_mod(RecurrenceParams::FIBONACCI, 5, 0),
            Err(Error::ZeroModulus)
        );
        assert!(term_mod(RecurrenceParams::FIBONACCI, u64::MAX, 10).is_err());
    }

    #[test]
    fn term_matches_exact_values() {
        for (a, b) in [(1, 1), (2, 1), (3, 4), (3, 5), (-3, -1), (4, -1), (0, 1)] {
            let exact = exact_terms(a, b, 40);
            for m in [2u64, 7, 10, 1_000_003] {
                for (n, &x) in exact.iter().enumerate() {
                    let p = RecurrenceParams::new(a as i64, b as i64);
                    assert_eq!(term_mod(p, n as u64, m).unwrap(), md(x, m));
                }
            }
        }
    }

    #[test]
    fn lucas_examples() {
        let fib = RecurrenceParams::FIBONACCI;
        assert_eq!(lucas_term_mod(fib, 0, 100).unwrap(), 2);
        assert_eq!(lucas_term_mod(fib, 4, 100).unwrap(), 7);
        let f5 = term_mod(fib, 5, 100).unwrap();
        let f3 = term_mod(fib, 3, 100).unwrap();
        assert_eq!(f5 + f3, 7);
        assert_eq!(
            lucas_term_mod(RecurrenceParams::new(1, 2), 3, 100),
            Err(Error::RequiresUnitB { b: 2 })
        );
    }

    #[test]
    fn lucas_matches_its_own_recurrence() {
        for k in 1..=10i128 {
            let mut l = vec![2i128, k];
            while l.len() < 30 {
                let n = l.len();
                l.push(k * l[n - 1] + l[n - 2]);
            }
            for (n, &x) in l.iter().enumerate() {
                let got =
                    lucas_term_mod(RecurrenceParams::k_fibonacci(k as i64), n as u64, 1_000_000)
                        .unwrap();
                assert_eq!(got, md(x, 1_000_000));
            }
        }
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(matrix_power(1, 2, 100).unwrap(), Matrix2([[2, 1], [1, 1]]));
        assert_eq!(matrix_power(1, 12, 1000).unwrap().0[0][1], 144);
        assert!(matrix_power(1, 0, 10).unwrap().is_identity(10));
        for k in -3..=5i64 {
            for n in 1..=60u64 {
                let m = 1_000_003;
                let want = if n % 2 == 0 { 1 } else { m - 1 };
                assert_eq!(matrix_power(k, n, m).unwrap().det(m), want);
            }
        }
    }

    #[test]
    fn step_examples() {
        let fib = RecurrenceParams::FIBONACCI;
        assert_eq!(
            step(fib, PairState { u: 0, v: 1 }, 10).unwrap(),
            PairState { u: 1, v: 1 }
        );
        assert_eq!(
            step(fib, PairState { u: 3, v: 0 }, 5).unwrap(),
            PairState { u: 0, v: 3 }
        );
        assert_eq!(
            step(RecurrenceParams::new(1, -1), PairState { u: 1, v: 1 }, 7).unwrap(),
            PairState { u: 1, v: 0 }
        );
        assert!(step(fib, PairState { u: 10, v: 1 }, 10).is_err());
    }

    #[test]
    fn log_fibonacci_identity() {
        let m = 1_000_000u64;
        for k in 1..=10i64 {
            let p = RecurrenceParams::k_fibonacci(k);
            for n in 1..=200u64 {
                let f = term_mod(p, n, m).unwrap();
                let lhs = (f * f % m + m
                    - term_mod(p, n + 1, m).unwrap() * term_mod(p, n - 1, m).unwrap() % m)
                    % m;
                let rhs = if (n + 1) % 2 == 0 { 1 } else { m - 1 };
                assert_eq!(lhs, rhs, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn doubling_identity() {
        let m = 1_000_000u64;
        for k in 1..=10i64 {
            let p = RecurrenceParams::k_fibonacci(k);
            for n in 0..=200u64 {
                let lhs = term_mod(p, 2 * n, m).unwrap();
                let rhs = term_mod(p, n, m).unwrap() * lucas_term_mod(p, n, m).unwrap() % m;
                assert_eq!(lhs, rhs, "k={k} n={n}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn matrix_and_iterative_agree(k in -50i64..50, n in 0u64..3000, m in 1u64..100_000) {
            prop_assert_eq!(
                term_mod_matrix(k, n, m).unwrap(),
                term_mod_iterative(RecurrenceParams::k_fibonacci(k), n, m).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn coefficient_shift_by_modulus(a in -100i64..100, b in -100i64..100, n in 0u64..500, m in 1u64..5000) {
            let shifted = RecurrenceParams::new(a + m as i64, b);
            prop_assert_eq!(
                term_mod(RecurrenceParams::new(a, b), n, m).unwrap(),
                term_mod(shifted, n, m).unwrap()
            );
        }
    }
}
