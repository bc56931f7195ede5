use std::io::{self, Write};

use pisano_core::classify::bfile;
use pisano_core::report::SweepReport;
use pisano_core::{PisanoProfile, RecurrenceParams};
use serde::Serialize;

use crate::{Format, OeisFormat};

type Res = Result<(), Box<dyn std::error::Error>>;

#[derive(Serialize)]
struct ProfileRow {
    a: i64,
    b: i64,
    m: u64,
    period: u64,
    rank: Option<u64>,
    order: u64,
    residue: Option<u64>,
    preperiod: u64,
}

#[derive(Serialize)]
struct TermRow {
    n: usize,
    value: u64,
}

#[derive(Serialize)]
struct PrimeRow {
    k: i64,
    prime: u64,
}

/// Flattened report for CSV: one summary row, then one row per
/// counterexample and per census entry.
#[derive(Serialize)]
struct ReportRow {
    record: &'static str,
    claim: String,
    params: String,
    lo: Option<u64>,
    hi: Option<u64>,
    status: String,
    inputs: String,
    expected: String,
    actual: String,
    value: Option<u64>,
    first: Option<u64>,
    count: Option<u64>,
}

impl ReportRow {
    fn empty(record: &'static str) -> Self {
        ReportRow {
            record,
            claim: String::new(),
            params: String::new(),
            lo: None,
            hi: None,
            status: String::new(),
            inputs: String::new(),
            expected: String::new(),
            actual: String::new(),
            value: None,
            first: None,
            count: None,
        }
    }
}

fn opt(x: Option<u64>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub struct Output<W: Write> {
    w: W,
}

impl Output<io::StdoutLock<'static>> {
    pub fn stdout() -> Self {
        Output {
            w: io::stdout().lock(),
        }
    }
}

impl<W: Write> Output<W> {
    fn csv_rows<T: Serialize>(&mut self, rows: &[T]) -> Res {
        let mut wtr = csv::Writer::from_writer(&mut self.w);
        for r in rows {
            wtr.serialize(r)?;
        }
        wtr.flush()?;
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Res {
        serde_json::to_writer(&mut self.w, value)?;
        writeln!(self.w)?;
        Ok(())
    }

    pub fn profile(
        &mut self,
        format: Format,
        params: RecurrenceParams,
        m: u64,
        p: &PisanoProfile,
    ) -> Res {
        let row = ProfileRow {
            a: params.a,
            b: params.b,
            m,
            period: p.period,
            rank: p.rank,
            order: p.order,
            residue: p.residue,
            preperiod: p.preperiod,
        };
        match format {
            Format::Plain => writeln!(
                self.w,
                "period={} rank={} order={} residue={} preperiod={}",
                p.period,
                opt(p.rank),
                p.order,
                opt(p.residue),
                p.preperiod
            )?,
            Format::Json => self.json(&row)?,
            Format::Csv => self.csv_rows(&[row])?,
        }
        Ok(())
    }

    pub fn sequence(&mut self, format: OeisFormat, terms: &[u64]) -> Res {
        let rows: Vec<TermRow> = terms
            .iter()
            .enumerate()
            .map(|(i, &value)| TermRow { n: i + 1, value })
            .collect();
        match format {
            OeisFormat::Bfile => write!(self.w, "{}", bfile(terms))?,
            OeisFormat::Plain => writeln!(self.w, "{}", join(terms))?,
            OeisFormat::Json => self.json(&rows)?,
            OeisFormat::Csv => self.csv_rows(&rows)?,
        }
        Ok(())
    }

    pub fn primes(&mut self, format: Format, k: i64, primes: &[u64]) -> Res {
        let rows: Vec<PrimeRow> = primes.iter().map(|&prime| PrimeRow { k, prime }).collect();
        match format {
            Format::Plain => writeln!(self.w, "{}", join(primes))?,
            Format::Json => self.json(&rows)?,
            Format::Csv => self.csv_rows(&rows)?,
        }
        Ok(())
    }

    pub fn report(&mut self, format: Format, r: &SweepReport) -> Res {
        match format {
            Format::Plain => self.report_plain(r)?,
            Format::Json => self.json(r)?,
            Format::Csv => self.csv_rows(&report_rows(r)?)?,
        }
        Ok(())
    }

    fn report_plain(&mut self, r: &SweepReport) -> io::Result<()> {
        writeln!(
            self.w,
            "claim={} params={} range={}..={} status={} counterexamples={}",
            r.claim,
            r.params,
            r.range.lo,
            r.range.hi,
            r.status,
            r.counterexamples.len()
        )?;
        for c in &r.counterexamples {
            writeln!(
                self.w,
                "  {}: expected {}, actual {}",
                inputs_text(&c.inputs, " "),
                c.expected,
                c.actual
            )?;
        }
        if let Some(census) = &r.census {
            for (value, e) in census {
                writeln!(
                    self.w,
                    "order={} first={} count={}",
                    value, e.first, e.count
                )?;
            }
        }
        Ok(())
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn inputs_text(inputs: &std::collections::BTreeMap<String, i64>, sep: &str) -> String {
    inputs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(sep)
}

fn report_rows(r: &SweepReport) -> Result<Vec<ReportRow>, serde_json::Error> {
    let mut rows = vec![ReportRow {
        claim: r.claim.clone(),
        params: serde_json::to_string(&r.params)?,
        lo: Some(r.range.lo),
        hi: Some(r.range.hi),
        status: r.status.to_string(),
        ..ReportRow::empty("summary")
    }];
    for c in &r.counterexamples {
        rows.push(ReportRow {
            inputs: inputs_text(&c.inputs, ";"),
            expected: c.expected.clone(),
            actual: c.actual.clone(),
            ..ReportRow::empty("counterexample")
        });
    }
    for (&value, e) in r.census.iter().flatten() {
        rows.push(ReportRow {
            value: Some(value),
            first: Some(e.first),
            count: Some(e.count),
            ..ReportRow::empty("census")
        });
    }
    Ok(rows)
}
