//! Classification of moduli by the number of zeros in one period.
//!
//! For K-Fibonacci sequences the order of `m` follows from its prime
//! factors alone: an odd prime `p` has order 4, 2 or 1 according to whether
//! its rank is odd, divisible by 4, or twice an odd number, and the orders
//! of coprime pieces combine through a small multiplication table. Powers
//! of two contribute order 1 (`2`, `4`) or 2 (`8` and up) when K is odd.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, checked_lcm, divisors, is_prime};
use crate::error::{Error, Result};
use crate::pisano::{prime_rank, profile_fast, profile_oracle};
use crate::report::{Counterexample, ScanRange, SweepParams, SweepReport};
use crate::seq::{check_modulus, RecurrenceParams};

/// Number of zeros in one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u64", from = "u64")]
pub enum OrderClass {
    /// Eventually periodic with a zero-free cycle.
    Zero,
    One,
    Two,
    Four,
    /// Any other count; only general `(a, b)` sequences reach these.
    Other(u64),
}

impl OrderClass {
    pub fn from_order(order: u64) -> Self {
        match order {
            0 => OrderClass::Zero,
            1 => OrderClass::One,
            2 => OrderClass::Two,
            4 => OrderClass::Four,
            t => OrderClass::Other(t),
        }
    }

    pub fn value(self) -> u64 {
        match self {
            OrderClass::Zero => 0,
            OrderClass::One => 1,
            OrderClass::Two => 2,
            OrderClass::Four => 4,
            OrderClass::Other(t) => t,
        }
    }
}

impl From<u64> for OrderClass {
    fn from(order: u64) -> Self {
        OrderClass::from_order(order)
    }
}

impl From<OrderClass> for u64 {
    fn from(c: OrderClass) -> u64 {
        c.value()
    }
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Order class of an odd prime from its rank modulo 4.
fn class_from_rank(rank: u64) -> OrderClass {
    match rank % 4 {
        0 => OrderClass::Two,
        2 => OrderClass::One,
        _ => OrderClass::Four,
    }
}

/// Combines the classes of pairwise coprime odd pieces.
fn combine_odd(classes: impl IntoIterator<Item = OrderClass>) -> Option<OrderClass> {
    classes.into_iter().reduce(|acc, c| match (acc, c) {
        (OrderClass::One, OrderClass::One) => OrderClass::One,
        (OrderClass::Four, OrderClass::Four) => OrderClass::Four,
        _ => OrderClass::Two,
    })
}

/// Folds in the power of two `2^twos` (K odd).
fn attach_power_of_two(odd: Option<OrderClass>, twos: u32) -> OrderClass {
    match (odd, twos) {
        (None, 0) => OrderClass::One,
        (None, 1 | 2) => OrderClass::One,
        (None, _) => OrderClass::Two,
        (Some(c), 0 | 1) => c,
        (Some(OrderClass::One), 2) => OrderClass::One,
        (Some(_), _) => OrderClass::Two,
    }
}

/// Order class of `m` from its factorization, without walking the sequence
/// modulo `m`.
///
/// Odd K accepts every `m >= 1`. Even K only covers odd `m`; even moduli
/// give [`Error::EvenModulusForEvenK`].
pub fn classify_by_factors(m: u64, k: i64) -> Result<OrderClass> {
    check_modulus(m)?;
    if m == 1 {
        return Ok(OrderClass::One);
    }
    let factors = arith::factorize(m)?;
    let twos = factors.exponent_of(2);
    if k % 2 == 0 && twos > 0 {
        return Err(Error::EvenModulusForEvenK { k, m });
    }
    let odd = factors
        .primes()
        .filter(|&p| p != 2)
        .map(|p| prime_rank(k, p).map(class_from_rank))
        .collect::<Result<Vec<_>>>()?;
    Ok(attach_power_of_two(combine_odd(odd), twos))
}

/// Classes of every `m` in `1..=max` for odd K, sharing the per-prime work
/// through a smallest-prime-factor sieve.
pub fn classify_range(k: i64, max: u64) -> Result<Vec<OrderClass>> {
    if k % 2 == 0 {
        return Err(Error::InvalidArgument("classify_range needs odd K".into()));
    }
    check_modulus(max.max(1))?;
    let n = max as usize;
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    let primes: Vec<u64> = (3..=n)
        .filter(|&i| spf[i] as usize == i)
        .map(|i| i as u64)
        .collect();
    let prime_class: HashMap<u64, OrderClass> = primes
        .par_iter()
        .map(|&p| prime_rank(k, p).map(|r| (p, class_from_rank(r))))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for m in 1..=n {
        let mut rest = m;
        let mut twos = 0u32;
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        let mut odd = Vec::new();
        while rest > 1 {
            let p = spf[rest] as usize;
            odd.push(prime_class[&(p as u64)]);
            while rest % p == 0 {
                rest /= p;
            }
        }
        out.push(attach_power_of_two(combine_odd(odd), twos));
    }
    Ok(out)
}

/// Which multiplication table governs `omega(lcm[m, n])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcmTable {
    /// Odd K, or even K with both arguments odd.
    Exact,
    /// Even K with at least one even argument; several cells are "1 or 2".
    EvenK,
}

/// Table-predicted order of `lcm[m, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcmPrediction {
    Exactly(OrderClass),
    Either(OrderClass, OrderClass),
}

impl LcmPrediction {
    pub fn contains(&self, c: OrderClass) -> bool {
        match *self {
            LcmPrediction::Exactly(x) => x == c,
            LcmPrediction::Either(x, y) => x == c || y == c,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LcmPrediction::Exactly(_))
    }
}

impl fmt::Display for LcmPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcmPrediction::Exactly(c) => write!(f, "{c}"),
            LcmPrediction::Either(x, y) => write!(f, "{x} or {y}"),
        }
    }
}

/// One cell of the lcm multiplication table.
///
/// `m_is_two` and `n_is_two` feed the "4 if m = 2, else 2" cells.
pub fn lcm_table_cell(
    table: LcmTable,
    order_m: OrderClass,
    m_is_two: bool,
    order_n: OrderClass,
    n_is_two: bool,
) -> Result<LcmPrediction> {
    use OrderClass::*;
    let exact = LcmPrediction::Exactly;
    let cell = match (table, order_m, order_n) {
        (_, One, One) => exact(One),
        (_, Two, Two) => exact(Two),
        (_, Four, Four) => exact(Four),
        (_, Two, Four) | (_, Four, Two) => exact(Two),
        (LcmTable::Exact, Two, One) | (LcmTable::Exact, One, Two) => exact(Two),
        (LcmTable::Exact, One, Four) => exact(if m_is_two { Four } else { Two }),
        (LcmTable::Exact, Four, One) => exact(if n_is_two { Four } else { Two }),
        (LcmTable::EvenK, One, Two | Four) | (LcmTable::EvenK, Two | Four, One) => {
            LcmPrediction::Either(One, Two)
        }
        (_, x, y) => {
            return Err(Error::InvalidArgument(format!(
                "orders ({x}, {y}) are not K-Fibonacci orders"
            )))
        }
    };
    Ok(cell)
}

fn table_for(k: i64, m: u64, n: u64) -> LcmTable {
    if k % 2 != 0 || (m % 2 == 1 && n % 2 == 1) {
        LcmTable::Exact
    } else {
        LcmTable::EvenK
    }
}

fn k_order(k: i64, m: u64) -> Result<OrderClass> {
    Ok(OrderClass::from_order(
        profile_fast(RecurrenceParams::k_fibonacci(k), m)?.order,
    ))
}

/// Predicts `omega_K(lcm[m, n])` from `omega_K(m)` and `omega_K(n)`.
///
/// `lcm[1, n] = n`, so a unit argument simply passes the other order
/// through.
pub fn omega_lcm_table(k: i64, m: u64, n: u64) -> Result<LcmPrediction> {
    let (om, on) = (k_order(k, m)?, k_order(k, n)?);
    if m == 1 {
        return Ok(LcmPrediction::Exactly(on));
    }
    if n == 1 {
        return Ok(LcmPrediction::Exactly(om));
    }
    lcm_table_cell(table_for(k, m, n), om, m == 2, on, n == 2)
}

/// Checks every table cell against the computed `omega_K(lcm[m, n])` for
/// `1 <= m <= n <= m_max` and `1 <= K <= k_max`.
pub fn verify_lcm_tables(k_max: i64, m_max: u64) -> Result<SweepReport> {
    let mut bad = Vec::new();
    for k in 1..=k_max {
        let orders: Vec<OrderClass> = (1..=m_max)
            .into_par_iter()
            .map(|m| k_order(k, m))
            .collect::<Result<_>>()?;
        let mut lcms: Vec<u64> = Vec::new();
        for m in 1..=m_max {
            for n in m..=m_max {
                lcms.push(checked_lcm(m, n).ok_or(Error::Overflow("lcm"))?);
            }
        }
        lcms.sort_unstable();
        lcms.dedup();
        let lcm_orders: HashMap<u64, OrderClass> = lcms
            .par_iter()
            .map(|&l| k_order(k, l).map(|o| (l, o)))
            .collect::<Result<_>>()?;
        for m in 1..=m_max {
            for n in m..=m_max {
                let (om, on) = (orders[(m - 1) as usize], orders[(n - 1) as usize]);
                let prediction = if m == 1 {
                    LcmPrediction::Exactly(on)
                } else {
                    lcm_table_cell(table_for(k, m, n), om, m == 2, on, n == 2)?
                };
                let actual = lcm_orders[&checked_lcm(m, n).unwrap_or(0)];
                if !prediction.contains(actual) {
                    bad.push(Counterexample::new(
                        [("k", k), ("m", m as i64), ("n", n as i64)],
                        prediction,
                        actual,
                    ));
                }
            }
        }
    }
    Ok(SweepReport::verdict(
        "lcm-tables",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange { lo: 1, hi: m_max },
        bad,
    ))
}

/// Rank modulo 4 and order class of an odd prime, both read off a direct
/// walk, after checking that they correspond (4 with odd rank, 2 with rank
/// divisible by 4, 1 with rank twice an odd number).
pub fn rank_order_correspondence(p: u64, k: i64) -> Result<(u64, OrderClass)> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let prof = profile_oracle(RecurrenceParams::k_fibonacci(k), p)?;
    let rank = prof
        .rank
        .ok_or_else(|| Error::Invariant("K-Fibonacci walk without a zero".into()))?;
    let class = OrderClass::from_order(prof.order);
    if class_from_rank(rank) != class {
        return Err(Error::Invariant(format!(
            "K={k} p={p}: rank {rank} (= {} mod 4) but order {class}",
            rank % 4
        )));
    }
    Ok((rank % 4, class))
}

/// Runs [`rank_order_correspondence`] over odd primes `<= p_max`.
pub fn verify_wyler(k_max: i64, p_max: u64) -> Result<SweepReport> {
    let primes: Vec<u64> = arith::primes_up_to(p_max)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    let mut bad = Vec::new();
    for k in 1..=k_max {
        let rows: Vec<Option<Counterexample>> = primes
            .par_iter()
            .map(|&p| match rank_order_correspondence(p, k) {
                Ok(_) => Ok(None),
                Err(Error::Invariant(msg)) => Ok(Some(Counterexample::new(
                    [("k", k), ("p", p as i64)],
                    "rank/order correspondence",
                    msg,
                ))),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        bad.extend(rows.into_iter().flatten());
    }
    Ok(SweepReport::verdict(
        "wyler",
        SweepParams::KRange { k_min: 1, k_max },
        ScanRange { lo: 3, hi: p_max },
        bad,
    ))
}

/// Compares [`classify_by_factors`] with the walked order for one K over
/// every admissible `m <= m_max` (odd `m` only when K is even).
pub fn verify_classification(k: i64, m_max: u64) -> Result<SweepReport> {
    let step = if k % 2 == 0 { 2 } else { 1 };
    let ms: Vec<u64> = (1..=m_max).step_by(step).collect();
    let rows: Vec<Option<Counterexample>> = ms
        .par_iter()
        .map(|&m| {
            let predicted = classify_by_factors(m, k)?;
            let walked =
                OrderClass::from_order(profile_oracle(RecurrenceParams::k_fibonacci(k), m)?.order);
            Ok((predicted != walked)
                .then(|| Counterexample::new([("k", k), ("m", m as i64)], predicted, walked)))
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport::verdict(
        "main-theorem",
        SweepParams::KRange { k_min: k, k_max: k },
        ScanRange { lo: 1, hi: m_max },
        rows.into_iter().flatten().collect(),
    ))
}

/// [`verify_classification`] for every `1 <= K <= k_max`, merged.
pub fn verify_main_theorem(k_max: i64, m_max: u64) -> Result<SweepReport> {
    let mut report = verify_classification(1, m_max)?;
    for k in 2..=k_max {
        report = report.merge(verify_classification(k, m_max)?);
    }
    Ok(report)
}

/// The three OEIS sequences splitting the positive integers by the order of
/// the classic Fibonacci sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OeisId {
    /// Order 4.
    A053029,
    /// Order 2.
    A053030,
    /// Order 1.
    A053031,
}

impl OeisId {
    pub const ALL: [OeisId; 3] = [OeisId::A053029, OeisId::A053030, OeisId::A053031];

    pub fn order(self) -> OrderClass {
        match self {
            OeisId::A053029 => OrderClass::Four,
            OeisId::A053030 => OrderClass::Two,
            OeisId::A053031 => OrderClass::One,
        }
    }
}

impl fmt::Display for OeisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for OeisId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A053029" => Ok(OeisId::A053029),
            "A053030" => Ok(OeisId::A053030),
            "A053031" => Ok(OeisId::A053031),
            _ => Err(Error::Unknown {
                kind: "OEIS id",
                value: s.to_string(),
            }),
        }
    }
}

pub const MAX_OEIS_TERM: u64 = 1_000_000;

/// Every `m <= max` whose classic Fibonacci order matches the sequence,
/// ascending.
pub fn oeis_sequence(id: OeisId, max: u64) -> Result<Vec<u64>> {
    if max > MAX_OEIS_TERM {
        return Err(Error::OutOfRange {
            what: "OEIS bound",
            value: max,
            max: MAX_OEIS_TERM,
        });
    }
    if max == 0 {
        return Ok(Vec::new());
    }
    let classes = classify_range(1, max)?;
    Ok((1..=max)
        .filter(|&m| classes[(m - 1) as usize] == id.order())
        .collect())
}

/// OEIS b-file text: `n a(n)` per line, 1-based, newline-terminated.
pub fn bfile(terms: &[u64]) -> String {
    terms
        .iter()
        .enumerate()
        .map(|(i, t)| format!("{} {}\n", i + 1, t))
        .collect()
}

/// Exhaustive check of the repaired OEIS characterizations against walked
/// orders for every `m <= max`.
///
/// With `m = 2^j s`, `s` odd, and "divisors" meaning divisors `> 1`:
/// * odd composite `m` whose proper divisors all have order 4 has order 4;
///   so does `2s` when every divisor of `s > 1` has order 4;
/// * order 4 forces `j <= 1`, `s > 1` and every divisor of `s` of order 4;
/// * order 1 forces `j <= 2` and every divisor of `s` of order 1;
/// * odd composite `m` whose proper divisors all have order 1 has order 1;
///   so do `2s` and `4s` when every divisor of `s` has order 1.
pub fn verify_oeis_conjectures(max: u64) -> Result<SweepReport> {
    if max < 4 {
        return Err(Error::InvalidArgument(
            "OEIS conjecture sweep needs max >= 4".into(),
        ));
    }
    let orders: Vec<u64> = (1..=max)
        .into_par_iter()
        .map(|m| profile_oracle(RecurrenceParams::FIBONACCI, m).map(|p| p.order))
        .collect::<Result<_>>()?;
    let order = |m: u64| orders[(m - 1) as usize];

    let rows: Vec<Vec<Counterexample>> = (2..=max)
        .into_par_iter()
        .map(|m| {
            let j = m.trailing_zeros();
            let s = m >> j;
            let ds: Vec<u64> = divisors(s).into_iter().filter(|&d| d > 1).collect();
            let all = |w: u64| ds.iter().all(|&d| order(d) == w);
            let proper_all = |w: u64| ds.iter().filter(|&&d| d < s).all(|&d| order(d) == w);
            let odd_composite = j == 0 && s > 1 && !is_prime(s);
            let actual = order(m);
            let mut bad = Vec::new();
            let mut check = |theorem: i64, holds: bool, expected: &str| {
                if !holds {
                    bad.push(Counterexample::new(
                        [("m", m as i64), ("theorem", theorem)],
                        expected,
                        actual,
                    ));
                }
            };
            if (odd_composite && proper_all(4)) || (j == 1 && s > 1 && all(4)) {
                check(1, actual == 4, "4");
            }
            if actual == 4 {
                check(
                    2,
                    j <= 1 && s > 1 && all(4),
                    "m = s or 2s with every divisor of s of order 4",
                );
            }
            if actual == 1 {
                check(
                    3,
                    j <= 2 && all(1),
                    "m = s, 2s or 4s with every divisor of s of order 1",
                );
            }
            if (odd_composite && proper_all(1)) || ((j == 1 || j == 2) && all(1)) {
                check(4, actual == 1, "1");
            }
            bad
        })
        .collect();
    Ok(SweepReport::verdict(
        "oeis-conjectures",
        SweepParams::Recurrence { a: 1, b: 1 },
        ScanRange { lo: 1, hi: max },
        rows.into_iter().flatten().collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use OrderClass::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify_by_factors(10, 1).unwrap(), Four);
        assert_eq!(classify_by_factors(8, 1).unwrap(), Two);
        assert_eq!(classify_by_factors(19, 1).unwrap(), One);
        assert_eq!(classify_by_factors(3, 1).unwrap(), Two);
        assert_eq!(classify_by_factors(1, 1).unwrap(), One);
        assert_eq!(classify_by_factors(5, 2).unwrap(), Four);
        assert_eq!(
            classify_by_factors(10, 2),
            Err(Error::EvenModulusForEvenK { k: 2, m: 10 })
        );
    }

    #[test]
    fn classify_range_matches_pointwise() {
        for k in [1i64, 3, -5, 7] {
            let all = classify_range(k, 3000).unwrap();
            for m in 1..=3000u64 {
                assert_eq!(
                    all[(m - 1) as usize],
                    classify_by_factors(m, k).unwrap(),
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn lcm_table_examples() {
        assert_eq!(
            lcm_table_cell(LcmTable::Exact, One, true, Four, false).unwrap(),
            LcmPrediction::Exactly(Four)
        );
        assert_eq!(
            lcm_table_cell(LcmTable::Exact, One, false, Four, false).unwrap(),
            LcmPrediction::Exactly(Two)
        );
        assert_eq!(
            lcm_table_cell(LcmTable::Exact, Two, false, Two, false).unwrap(),
            LcmPrediction::Exactly(Two)
        );
        // omega_2(8) = 1, omega_2(10) = 2, omega_2(40) = 1
        let pred = omega_lcm_table(2, 8, 10).unwrap();
        assert_eq!(pred, LcmPrediction::Either(One, Two));
        assert!(pred.contains(k_order(2, 40).unwrap()));
        assert_eq!(k_order(2, 40).unwrap(), One);
        assert_eq!(
            omega_lcm_table(1, 2, 5).unwrap(),
            LcmPrediction::Exactly(Four)
        );
        assert_eq!(
            omega_lcm_table(1, 1, 5).unwrap(),
            LcmPrediction::Exactly(Four)
        );
        assert!(lcm_table_cell(LcmTable::Exact, Zero, false, One, false).is_err());
    }

    #[test]
    fn lcm_tables_small_sweep() {
        let r = verify_lcm_tables(4, 60).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
    }

    #[test]
    fn wyler_examples() {
        assert_eq!(rank_order_correspondence(5, 1).unwrap(), (1, Four));
        assert_eq!(rank_order_correspondence(19, 1).unwrap(), (2, One));
        assert_eq!(rank_order_correspondence(7, 1).unwrap(), (0, Two));
        assert_eq!(rank_order_correspondence(2, 1), Err(Error::NotOddPrime(2)));
    }

    #[test]
    fn oeis_prefixes() {
        assert_eq!(
            oeis_sequence(OeisId::A053031, 44).unwrap(),
            vec![1, 2, 4, 11, 19, 22, 29, 31, 38, 44]
        );
        assert_eq!(
            oeis_sequence(OeisId::A053029, 37).unwrap(),
            vec![5, 10, 13, 17, 25, 26, 34, 37]
        );
        assert_eq!(
            oeis_sequence(OeisId::A053030, 15).unwrap(),
            vec![3, 6, 7, 8, 9, 12, 14, 15]
        );
        assert!(oeis_sequence(OeisId::A053030, MAX_OEIS_TERM + 1).is_err());
        assert!("A000045".parse::<OeisId>().is_err());
        assert_eq!("a053029".parse::<OeisId>().unwrap(), OeisId::A053029);
    }

    #[test]
    fn oeis_sequences_partition() {
        let max = 5000;
        let mut all: Vec<u64> = OeisId::ALL
            .iter()
            .flat_map(|&id| oeis_sequence(id, max).unwrap())
            .collect();
        all.sort_unstable();
        assert_eq!(all, (1..=max).collect::<Vec<_>>());
    }

    #[test]
    fn bfile_format() {
        assert_eq!(bfile(&[5, 10, 13]), "1 5\n2 10\n3 13\n");
        assert_eq!(bfile(&[]), "");
    }

    #[test]
    fn oeis_conjectures_hold_to_200() {
        let r = verify_oeis_conjectures(200).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn order_class_roundtrip() {
        for t in 0..20u64 {
            assert_eq!(OrderClass::from_order(t).value(), t);
        }
        assert_eq!(serde_json::to_string(&Four).unwrap(), "4");
    }
}
