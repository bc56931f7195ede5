//! Structured result of a verification sweep or an order census.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// What a sweep ran over: one recurrence, a range of K, or a range of
/// `(a, b)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepParams {
    Recurrence {
        a: i64,
        b: i64,
    },
    KRange {
        k_min: i64,
        k_max: i64,
    },
    PairRange {
        a_min: i64,
        a_max: i64,
        b_min: i64,
        b_max: i64,
    },
}

impl fmt::Display for SweepParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepParams::Recurrence { a, b } => write!(f, "a={a} b={b}"),
            SweepParams::KRange { k_min, k_max } => write!(f, "k={k_min}..={k_max}"),
            SweepParams::PairRange {
                a_min,
                a_max,
                b_min,
                b_max,
            } => {
                write!(f, "a={a_min}..={a_max} b={b_min}..={b_max}")
            }
        }
    }
}

/// Closed range of scanned values (moduli, primes or indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRange {
    pub lo: u64,
    pub hi: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Census,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Census => "census",
        })
    }
}

/// One failed check: the inputs, what the claim predicted and what was
/// observed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: BTreeMap<String, i64>,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    pub fn new<const N: usize>(
        inputs: [(&str, i64); N],
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Counterexample {
            inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Smallest modulus showing this order.
    pub first: u64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub claim: String,
    pub params: SweepParams,
    pub range: ScanRange,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub census: Option<BTreeMap<u64, CensusEntry>>,
}

impl SweepReport {
    /// Pass/fail report; status follows from whether anything failed.
    pub fn verdict(
        claim: impl Into<String>,
        params: SweepParams,
        range: ScanRange,
        mut counterexamples: Vec<Counterexample>,
    ) -> Self {
        counterexamples.sort();
        let status = if counterexamples.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        SweepReport {
            claim: claim.into(),
            params,
            range,
            status,
            counterexamples,
            census: None,
        }
    }

    /// Census report built from `(modulus, order)` observations.
    pub fn census(
        claim: impl Into<String>,
        params: SweepParams,
        range: ScanRange,
        observations: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let mut census: BTreeMap<u64, CensusEntry> = BTreeMap::new();
        for (m, order) in observations {
            census
                .entry(order)
                .and_modify(|e| {
                    e.first = e.first.min(m);
                    e.count += 1;
                })
                .or_insert(CensusEntry { first: m, count: 1 });
        }
        SweepReport {
            claim: claim.into(),
            params,
            range,
            status: Status::Census,
            counterexamples: Vec::new(),
            census: Some(census),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Distinct order values seen by a census, ascending.
    pub fn census_values(&self) -> Vec<u64> {
        self.census
            .as_ref()
            .map_or_else(Vec::new, |c| c.keys().copied().collect())
    }

    /// Combines two reports over disjoint pieces of a sweep. The result does
    /// not depend on argument order.
    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.range = ScanRange {
            lo: self.range.lo.min(other.range.lo),
            hi: self.range.hi.max(other.range.hi),
        };
        if self.params != other.params {
            self.params = merge_params(&self.params, &other.params);
        }
        if self.claim != other.claim {
            let (lo, hi) = if self.claim < other.claim {
                (self.claim.clone(), other.claim.clone())
            } else {
                (other.claim.clone(), self.claim.clone())
            };
            self.claim = format!("{lo}+{hi}");
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.sort();
        self.census = match (self.census.take(), other.census) {
            (None, None) => None,
            (Some(c), None) | (None, Some(c)) => Some(c),
            (Some(mut a), Some(b)) => {
                for (value, entry) in b {
                    a.entry(value)
                        .and_modify(|e| {
                            e.first = e.first.min(entry.first);
                            e.count += entry.count;
                        })
                        .or_insert(entry);
                }
                Some(a)
            }
        };
        self.status = if !self.counterexamples.is_empty() {
            Status::Fail
        } else if self.census.is_some()
            && (self.status == Status::Census || other.status == Status::Census)
        {
            Status::Census
        } else {
            Status::Pass
        };
        self
    }
}

fn bounds(p: &SweepParams) -> (i64, i64, i64, i64) {
    match *p {
        SweepParams::Recurrence { a, b } => (a, a, b, b),
        SweepParams::KRange { k_min, k_max } => (k_min, k_max, 1, 1),
        SweepParams::PairRange {
            a_min,
            a_max,
            b_min,
            b_max,
        } => (a_min, a_max, b_min, b_max),
    }
}

fn merge_params(x: &SweepParams, y: &SweepParams) -> SweepParams {
    let (a0, a1, b0, b1) = bounds(x);
    let (c0, c1, d0, d1) = bounds(y);
    let (a_min, a_max, b_min, b_max) = (a0.min(c0), a1.max(c1), b0.min(d0), b1.max(d1));
    if b_min == 1 && b_max == 1 {
        SweepParams::KRange {
            k_min: a_min,
            k_max: a_max,
        }
    } else {
        SweepParams::PairRange {
            a_min,
            a_max,
            b_min,
            b_max,
        }
    }
}
