//! Exploratory sweeps: order censuses, degenerate recurrences, the
//! negative-K multiplication table, finite-order conjectures, even-K
//! exceptions and a few classical divisibility facts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arith::{self, checked_lcm, divisors, factorize, gcd, legendre, mult_order};
use crate::classify::OrderClass;
use crate::error::{Error, Result};
use crate::pisano::{powers_of_two_profile, profile_fast, profile_oracle, PisanoProfile};
use crate::report::{Counterexample, ScanRange, SweepParams, SweepReport};
use crate::seq::{check_modulus, lucas_term_mod, term_mod, PairState, RecurrenceParams, Stepper};

pub const MAX_CENSUS_MODULUS: u64 = 20_000;

fn oracle_order(params: RecurrenceParams, m: u64) -> Result<u64> {
    Ok(profile_oracle(params, m)?.order)
}

/// Closed-form order of the eight degenerate recurrences modulo `m >= 2`.
///
/// `(1, 0)` and `(-1, 0)` never return to zero after `F_0`, so their order
/// is 0.
pub fn degenerate_case_table(a: i64, b: i64, m: u64) -> Result<OrderClass> {
    check_modulus(m)?;
    if m < 2 {
        return Err(Error::InvalidArgument(
            "degenerate table needs m >= 2".into(),
        ));
    }
    let order = match (a, b) {
        (2, -1) | (-1, -1) | (0, 1) => 1,
        (-2, -1) => {
            if m.is_multiple_of(2) {
                1
            } else {
                2
            }
        }
        (1, -1) | (0, -1) => {
            if m == 2 {
                1
            } else {
                2
            }
        }
        (1, 0) | (-1, 0) => 0,
        _ => return Err(Error::NotDegenerate { a, b }),
    };
    Ok(OrderClass::from_order(order))
}

pub const DEGENERATE_PAIRS: [(i64, i64); 8] = [
    (2, -1),
    (-2, -1),
    (1, -1),
    (-1, -1),
    (0, -1),
    (0, 1),
    (1, 0),
    (-1, 0),
];

/// Compares [`degenerate_case_table`] with walked orders for `2 <= m <= m_max`.
pub fn verify_degenerate_table(m_max: u64) -> Result<SweepReport> {
    let rows: Vec<Vec<Counterexample>> = (2..=m_max)
        .into_par_iter()
        .map(|m| {
            let mut bad = Vec::new();
            for (a, b) in DEGENERATE_PAIRS {
                let table = degenerate_case_table(a, b, m)?;
                let walked = OrderClass::from_order(oracle_order(RecurrenceParams::new(a, b), m)?);
                if table != walked {
                    bad.push(Counterexample::new(
                        [("a", a), ("b", b), ("m", m as i64)],
                        table,
                        walked,
                    ));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "degenerate-table",
        SweepParams::PairRange {
            a_min: -2,
            a_max: 2,
            b_min: -1,
            b_max: 1,
        },
        ScanRange { lo: 2, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// Order census of `(a, b)` over `2 <= m <= m_max`.
pub fn order_census(a: i64, b: i64, m_max: u64) -> Result<SweepReport> {
    if m_max > MAX_CENSUS_MODULUS {
        return Err(Error::OutOfRange {
            what: "census bound",
            value: m_max,
            max: MAX_CENSUS_MODULUS,
        });
    }
    let params = RecurrenceParams::new(a, b);
    let orders: Vec<(u64, u64)> = (2..=m_max)
        .into_par_iter()
        .map(|m| oracle_order(params, m).map(|o| (m, o)))
        .collect::<Result<_>>()?;
    Ok(SweepReport::census(
        "order-census",
        SweepParams::Recurrence { a, b },
        ScanRange { lo: 2, hi: m_max },
        orders,
    ))
}

/// Observation: order 0 appears exactly when `m` shares a factor with `a`
/// or `b`. Disagreements are reported as counterexamples, for
/// `2 <= m <= m_max`.
pub fn verify_order_zero_gcd(a: i64, b: i64, m_max: u64) -> Result<SweepReport> {
    if m_max > MAX_CENSUS_MODULUS {
        return Err(Error::OutOfRange {
            what: "census bound",
            value: m_max,
            max: MAX_CENSUS_MODULUS,
        });
    }
    let params = RecurrenceParams::new(a, b);
    let rows: Vec<Option<Counterexample>> = (2..=m_max)
        .into_par_iter()
        .map(|m| {
            let zero = oracle_order(params, m)? == 0;
            let shared = gcd(a.unsigned_abs(), m) > 1 || gcd(b.unsigned_abs(), m) > 1;
            Ok((zero != shared).then(|| {
                Counterexample::new(
                    [("a", a), ("b", b), ("m", m as i64)],
                    format!("order 0: {shared}"),
                    format!("order 0: {zero}"),
                )
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "order-zero-gcd",
        SweepParams::Recurrence { a, b },
        ScanRange { lo: 2, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// Negative-K table for `(a, -1)` with `3 <= |a| <= a_max`: both orders lie
/// in `{1, 2}` and `omega(lcm[m, n])` is 1 when both are 1, else 2.
pub fn verify_negativemult(a_max: i64, m_max: u64) -> Result<SweepReport> {
    let mut values: Vec<u64> = Vec::new();
    for m in 2..=m_max {
        for n in m..=m_max {
            values.push(checked_lcm(m, n).ok_or(Error::Overflow("lcm"))?);
        }
    }
    values.sort_unstable();
    values.dedup();
    let a_values: Vec<i64> = (-a_max..=-3).chain(3..=a_max).collect();
    let mut bad = Vec::new();
    for &a in &a_values {
        let params = RecurrenceParams::new(a, -1);
        let orders: HashMap<u64, u64> = values
            .par_iter()
            .map(|&v| oracle_order(params, v).map(|o| (v, o)))
            .collect::<Result<_>>()?;
        for m in 2..=m_max {
            for n in m..=m_max {
                let (om, on) = (orders[&m], orders[&n]);
                let actual = orders[&checked_lcm(m, n).unwrap_or(0)];
                let inputs = [("a", a), ("m", m as i64), ("n", n as i64)];
                if !matches!(om, 1 | 2) || !matches!(on, 1 | 2) {
                    bad.push(Counterexample::new(
                        inputs,
                        "orders in {1, 2}",
                        format!("({om}, {on})"),
                    ));
                    continue;
                }
                let expected = if om == 1 && on == 1 { 1 } else { 2 };
                if actual != expected {
                    bad.push(Counterexample::new(inputs, expected, actual));
                }
            }
        }
    }
    Ok(SweepReport::verdict(
        "negativemult",
        SweepParams::PairRange {
            a_min: -a_max,
            a_max,
            b_min: -1,
            b_max: -1,
        },
        ScanRange { lo: 2, hi: m_max },
        bad,
    ))
}

/// The five cases of the finite-orders conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteOrdersCase {
    /// Degenerate pairs with order 1.
    I,
    /// Degenerate pairs with order 2 for `m > 2`.
    II,
    /// `b = 1`: orders in `{1, 2, 4}`.
    III,
    /// `b = -1`, `|a| >= 3`: orders in `{1, 2}`.
    IV,
    /// `b` not `±1`, `|a| - |b| = 1`: orders in `{0, 1, 2}`.
    V,
}

impl FiniteOrdersCase {
    pub const ALL: [FiniteOrdersCase; 5] = [Self::I, Self::II, Self::III, Self::IV, Self::V];
}

impl fmt::Display for FiniteOrdersCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "i",
            Self::II => "ii",
            Self::III => "iii",
            Self::IV => "iv",
            Self::V => "v",
        })
    }
}

impl FromStr for FiniteOrdersCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Self::I),
            "ii" | "2" => Ok(Self::II),
            "iii" | "3" => Ok(Self::III),
            "iv" | "4" => Ok(Self::IV),
            "v" | "5" => Ok(Self::V),
            _ => Err(Error::Unknown {
                kind: "finite-orders case",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteOrdersBounds {
    pub a_max: i64,
    pub m_max: u64,
}

/// Checks one case of the finite-orders conjecture by walking every pair it
/// covers over `2 <= m <= m_max`.
pub fn verify_finite_orders_conjecture(
    case: FiniteOrdersCase,
    bounds: FiniteOrdersBounds,
) -> Result<SweepReport> {
    let FiniteOrdersBounds { a_max, m_max } = bounds;
    // (pairs, smallest modulus, allowed orders)
    let (pairs, m_lo, allowed): (Vec<(i64, i64)>, u64, &[u64]) = match case {
        FiniteOrdersCase::I => (vec![(0, 1), (1, 0), (-1, -1), (2, -1), (-2, -1)], 2, &[1]),
        FiniteOrdersCase::II => (vec![(-1, 0), (1, -1), (0, -1)], 3, &[2]),
        FiniteOrdersCase::III => (
            (-a_max..=a_max)
                .filter(|&a| a != 0)
                .map(|a| (a, 1))
                .collect(),
            2,
            &[1, 2, 4],
        ),
        FiniteOrdersCase::IV => (
            (-a_max..=-3).chain(3..=a_max).map(|a| (a, -1)).collect(),
            2,
            &[1, 2],
        ),
        FiniteOrdersCase::V => {
            let mut pairs = Vec::new();
            for b in -(a_max - 1)..=(a_max - 1) {
                if b.abs() == 1 {
                    continue;
                }
                let a = b.abs() + 1;
                pairs.push((a, b));
                pairs.push((-a, b));
            }
            (pairs, 2, &[0, 1, 2])
        }
    };
    let mut extra = Vec::new();
    if case == FiniteOrdersCase::I && m_max >= 2 {
        extra = vec![(-1, 0, 2), (1, -1, 2), (0, -1, 2)];
    }
    let allowed_text = format!("{allowed:?}");
    let mut bad = Vec::new();
    for &(a, b) in &pairs {
        let params = RecurrenceParams::new(a, b);
        let rows: Vec<Option<Counterexample>> = (m_lo..=m_max)
            .into_par_iter()
            .map(|m| {
                let order = oracle_order(params, m)?;
                Ok((!allowed.contains(&order)).then(|| {
                    Counterexample::new([("a", a), ("b", b), ("m", m as i64)], &allowed_text, order)
                }))
            })
            .collect::<Result<_>>()?;
        bad.extend(rows.into_iter().flatten());
    }
    for (a, b, m) in extra {
        let order = oracle_order(RecurrenceParams::new(a, b), m)?;
        if !allowed.contains(&order) {
            bad.push(Counterexample::new(
                [("a", a), ("b", b), ("m", m as i64)],
                &allowed_text,
                order,
            ));
        }
    }
    let (a_lo, a_hi) = pairs
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), &(a, _)| {
            (lo.min(a), hi.max(a))
        });
    let (b_lo, b_hi) = pairs
        .iter()
        .fold((i64::MAX, i64::MIN), |(lo, hi), &(_, b)| {
            (lo.min(b), hi.max(b))
        });
    Ok(SweepReport::verdict(
        format!("finite-orders-{case}"),
        SweepParams::PairRange {
            a_min: a_lo,
            a_max: a_hi,
            b_min: b_lo,
            b_max: b_hi,
        },
        ScanRange { lo: 2, hi: m_max },
        bad,
    ))
}

/// Even-K behaviour for `4 <= m <= m_max`:
/// * order 4 exactly when the rank is odd;
/// * order 2 forces `4 | period` and an even rank;
/// * `4` not dividing the period forces order 1.
///
/// Also confirms that `K = 2`, `m = 8` has order 1 although `4 | period`
/// and the rank is even.
pub fn verify_even_k_exceptions(k_max: i64, m_max: u64) -> Result<SweepReport> {
    let mut bad = Vec::new();
    for k in (2..=k_max).step_by(2) {
        let params = RecurrenceParams::k_fibonacci(k);
        let rows: Vec<Vec<Counterexample>> = (4..=m_max)
            .into_par_iter()
            .map(|m| {
                let p = profile_oracle(params, m)?;
                let rank = p.rank.unwrap_or(0);
                let mut out = Vec::new();
                let mut check = |clause: i64, holds: bool, expected: &str| {
                    if !holds {
                        out.push(Counterexample::new(
                            [("clause", clause), ("k", k), ("m", m as i64)],
                            expected,
                            format!("period={} rank={} order={}", p.period, rank, p.order),
                        ));
                    }
                };
                check(1, (p.order == 4) == (rank % 2 == 1), "order 4 iff odd rank");
                if p.order == 2 {
                    check(
                        2,
                        p.period % 4 == 0 && rank % 2 == 0,
                        "4 | period and 2 | rank",
                    );
                }
                if p.period % 4 != 0 {
                    check(3, p.order == 1, "order 1");
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        bad.extend(rows.into_iter().flatten());
    }
    if k_max >= 2 && m_max >= 8 {
        let p = profile_oracle(RecurrenceParams::k_fibonacci(2), 8)?;
        let rank = p.rank.unwrap_or(0);
        if !(p.order == 1 && p.period % 4 == 0 && rank % 2 == 0) {
            bad.push(Counterexample::new(
                [("clause", 4), ("k", 2), ("m", 8)],
                "order 1 with 4 | period and even rank",
                format!("period={} rank={} order={}", p.period, rank, p.order),
            ));
        }
    }
    Ok(SweepReport::verdict(
        "even-k-exceptions",
        SweepParams::KRange { k_min: 2, k_max },
        ScanRange { lo: 4, hi: m_max },
        bad,
    ))
}

/// `p | F_{p - (5/p)}` for odd primes `p <= p_max`, with `(5/5) = 0`.
pub fn williams_check(p_max: u64) -> Result<SweepReport> {
    let primes: Vec<u64> = arith::primes_up_to(p_max)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    let rows: Vec<Option<Counterexample>> = primes
        .par_iter()
        .map(|&p| {
            let n = (p as i64 - legendre(5, p)? as i64) as u64;
            let f = term_mod(RecurrenceParams::FIBONACCI, n, p)?;
            Ok((f != 0).then(|| Counterexample::new([("p", p as i64)], 0, f)))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "williams",
        SweepParams::Recurrence { a: 1, b: 1 },
        ScanRange { lo: 3, hi: p_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// Largest index whose Fibonacci number fits in a `u64` comfortably enough
/// to factor.
pub const MAX_CARMICHAEL_INDEX: u64 = 90;

fn fibonacci_exact(n_max: usize) -> Vec<u64> {
    let mut f = vec![0u64, 1];
    while f.len() <= n_max {
        let n = f.len();
        f.push(f[n - 1] + f[n - 2]);
    }
    f
}

/// Primes dividing `F_n` but no `F_d` with `d` a proper divisor of `n`.
pub fn primitive_divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_CARMICHAEL_INDEX {
        return Err(Error::OutOfRange {
            what: "Fibonacci index",
            value: n,
            max: MAX_CARMICHAEL_INDEX,
        });
    }
    let f = fibonacci_exact(n as usize);
    let proper: Vec<u64> = divisors(n).into_iter().filter(|&d| d < n).collect();
    Ok(factorize(f[n as usize])?
        .primes()
        .filter(|&p| proper.iter().all(|&d| !f[d as usize].is_multiple_of(p)))
        .collect())
}

/// Every `F_n` with `1 <= n <= n_max` has a primitive prime divisor except
/// at `n` in `{1, 2, 6, 12}`.
pub fn carmichael_check(n_max: u64) -> Result<SweepReport> {
    let mut bad = Vec::new();
    for n in 1..=n_max {
        let has = !primitive_divisors(n)?.is_empty();
        let expected = ![1, 2, 6, 12].contains(&n);
        if has != expected {
            bad.push(Counterexample::new(
                [("n", n as i64)],
                format!("primitive divisor: {expected}"),
                format!("primitive divisor: {has}"),
            ));
        }
    }
    Ok(SweepReport::verdict(
        "carmichael",
        SweepParams::Recurrence { a: 1, b: 1 },
        ScanRange { lo: 1, hi: n_max },
        bad,
    ))
}

/// Closed-form profiles of `2^x` against walked profiles for
/// `1 <= K <= k_max`, `1 <= x <= x_max`.
pub fn verify_powers_of_two(k_max: i64, x_max: u32) -> Result<SweepReport> {
    let cells: Vec<(i64, u32)> = (1..=k_max)
        .flat_map(|k| (1..=x_max).map(move |x| (k, x)))
        .collect();
    let rows: Vec<Option<Counterexample>> = cells
        .par_iter()
        .map(|&(k, x)| {
            let closed = powers_of_two_profile(k, x)?;
            let walked = profile_oracle(RecurrenceParams::k_fibonacci(k), 1 << x)?;
            Ok((closed != walked).then(|| {
                Counterexample::new(
                    [("k", k), ("x", x as i64)],
                    describe(&closed),
                    describe(&walked),
                )
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "powers-of-two",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange {
            lo: 1,
            hi: x_max as u64,
        },
        rows.into_iter().flatten().collect(),
    ))
}

fn describe(p: &PisanoProfile) -> String {
    format!(
        "period={} rank={} order={} residue={}",
        p.period,
        p.rank.map_or("-".into(), |r| r.to_string()),
        p.order,
        p.residue.map_or("-".into(), |r| r.to_string())
    )
}

/// Term identities for `1 <= K <= k_max`, `1 <= n <= n_max`, modulo `m`:
/// * `F_{2n} = F_n L_n`;
/// * `F_{2n+1} = F_{n+1}^2 + F_n^2`;
/// * `F_{i+j} = F_{i+1} F_j + F_i F_{j-1}` for `i, j <= n_max / 2`.
pub fn verify_term_identities(k_max: i64, n_max: u64, m: u64) -> Result<SweepReport> {
    check_modulus(m)?;
    let rows: Vec<Vec<Counterexample>> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let params = RecurrenceParams::k_fibonacci(k);
            let f = |n: u64| term_mod(params, n, m);
            let mut out = Vec::new();
            for n in 1..=n_max {
                let (fn0, fn1) = (f(n)?, f(n + 1)?);
                let doubled = arith::mul_mod(fn0, lucas_term_mod(params, n, m)?, m);
                if f(2 * n)? != doubled {
                    out.push(Counterexample::new(
                        [("identity", 1), ("k", k), ("n", n as i64)],
                        doubled,
                        f(2 * n)?,
                    ));
                }
                let odd = (arith::mul_mod(fn1, fn1, m) + arith::mul_mod(fn0, fn0, m)) % m;
                if f(2 * n + 1)? != odd {
                    out.push(Counterexample::new(
                        [("identity", 2), ("k", k), ("n", n as i64)],
                        odd,
                        f(2 * n + 1)?,
                    ));
                }
            }
            let half = n_max / 2;
            for i in 1..=half {
                for j in 1..=half {
                    let sum = (arith::mul_mod(f(i + 1)?, f(j)?, m)
                        + arith::mul_mod(f(i)?, f(j - 1)?, m))
                        % m;
                    if f(i + j)? != sum {
                        out.push(Counterexample::new(
                            [("identity", 3), ("i", i as i64), ("j", j as i64), ("k", k)],
                            sum,
                            f(i + j)?,
                        ));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "term-identities",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange { lo: 1, hi: n_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// Period identities for `1 <= K <= k_max`, `2 <= m <= m_max`, each checked
/// on a walked profile and the terms of three periods:
/// 1. `period = rank * order`;
/// 2. `period` is even for `m > 2`;
/// 3. `order` is the multiplicative order of the residue;
/// 4. `F_{period - n} = (-1)^{n+1} F_n` for `0 <= n <= period`;
/// 5. `F_n = 0` exactly when `rank | n`;
/// 6. `F_n = residue * F_{n - rank}` for `n >= rank`;
/// 7. an odd rank comes with order 4 (`m > 2`).
pub fn verify_period_identities(k_max: i64, m_max: u64) -> Result<SweepReport> {
    let cells: Vec<(i64, u64)> = (1..=k_max)
        .flat_map(|k| (2..=m_max).map(move |m| (k, m)))
        .collect();
    let rows: Vec<Vec<Counterexample>> = cells
        .par_iter()
        .map(|&(k, m)| period_identities_at(k, m))
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "period-identities",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange { lo: 2, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}

fn period_identities_at(k: i64, m: u64) -> Result<Vec<Counterexample>> {
    let params = RecurrenceParams::k_fibonacci(k);
    let p = profile_oracle(params, m)?;
    let rank = p
        .rank
        .ok_or_else(|| Error::Invariant(format!("K={k} m={m} has no zero")))?;
    let residue = p.residue.unwrap_or(0);
    let mut out = Vec::new();
    let mut check = |id: i64, n: u64, expected: String, actual: String| {
        if expected != actual {
            out.push(Counterexample::new(
                [("identity", id), ("k", k), ("m", m as i64), ("n", n as i64)],
                expected,
                actual,
            ));
        }
    };
    check(1, 0, p.period.to_string(), (rank * p.order).to_string());
    if m > 2 {
        check(2, 0, "0".into(), (p.period % 2).to_string());
    }
    check(
        3,
        0,
        p.order.to_string(),
        mult_order(residue as i64, m)?.to_string(),
    );
    if m > 2 && rank % 2 == 1 {
        check(7, 0, "4".into(), p.order.to_string());
    }

    let stepper = Stepper::new(params, m)?;
    let len = 3 * p.period;
    let mut terms = Vec::with_capacity(len as usize + 1);
    let mut s = PairState::seed(m);
    for _ in 0..=len {
        terms.push(s.u);
        s = stepper.step(s);
    }
    let t = |n: u64| terms[n as usize];
    for n in 0..=p.period {
        let f = t(n);
        let signed = if n % 2 == 1 { f } else { (m - f) % m };
        if t(p.period - n) != signed {
            check(4, n, signed.to_string(), t(p.period - n).to_string());
        }
    }
    for n in 0..=len {
        if (t(n) == 0) != (n % rank == 0) {
            check(5, n, (n % rank == 0).to_string(), (t(n) == 0).to_string());
        }
        if n >= rank {
            let stepped = arith::mul_mod(residue, t(n - rank), m);
            if t(n) != stepped {
                check(6, n, stepped.to_string(), t(n).to_string());
            }
        }
    }
    Ok(out)
}

/// For general `(a, b)` with `gcd(b, m) = 1`, the order divides twice the
/// multiplicative order of `-b`. Covers `|a|, |b| <= ab_max`, `b != 0`.
pub fn verify_ab_order_bound(ab_max: i64, m_max: u64) -> Result<SweepReport> {
    let cells: Vec<(i64, i64, u64)> = (-ab_max..=ab_max)
        .flat_map(|a| (-ab_max..=ab_max).filter(|&b| b != 0).map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            (2..=m_max)
                .filter(move |&m| gcd(b.unsigned_abs(), m) == 1)
                .map(move |m| (a, b, m))
        })
        .collect();
    let rows: Vec<Option<Counterexample>> = cells
        .par_iter()
        .map(|&(a, b, m)| {
            let order = oracle_order(RecurrenceParams::new(a, b), m)?;
            let bound = 2 * mult_order(-b, m)?;
            Ok((order == 0 || bound % order != 0).then(|| {
                Counterexample::new(
                    [("a", a), ("b", b), ("m", m as i64)],
                    format!("divides {bound}"),
                    order,
                )
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "ab-order-bound",
        SweepParams::PairRange {
            a_min: -ab_max,
            a_max: ab_max,
            b_min: -ab_max,
            b_max: ab_max,
        },
        ScanRange { lo: 2, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// Both routes of the profile agree for `1 <= K <= k_max`, `1 <= m <= m_max`.
pub fn verify_fast_profile(k_max: i64, m_max: u64) -> Result<SweepReport> {
    let cells: Vec<(i64, u64)> = (1..=k_max)
        .flat_map(|k| (1..=m_max).map(move |m| (k, m)))
        .collect();
    let rows: Vec<Option<Counterexample>> = cells
        .par_iter()
        .map(|&(k, m)| {
            let params = RecurrenceParams::k_fibonacci(k);
            let (fast, walked) = (profile_fast(params, m)?, profile_oracle(params, m)?);
            Ok((fast != walked).then(|| {
                Counterexample::new(
                    [("k", k), ("m", m as i64)],
                    describe(&walked),
                    describe(&fast),
                )
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "fast-profile",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange { lo: 1, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}
