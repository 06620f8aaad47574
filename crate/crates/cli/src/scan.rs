//! Scan rows, their summary, and CSV/JSON rendering.

use std::io::{self, Read, Write};

use k3cert::certify::{build_certificate_with, CertifyOptions};
use k3cert::{Certificate, ExactRational, Regime};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One line of a scan table, in output column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub g: i64,
    pub s: i64,
    pub d: i64,
    pub regime: Regime,
    pub lemma21_ok: bool,
    pub square_zero_free: bool,
    /// Empty when the (−2) question was not decidable.
    pub minus_two_method: Option<String>,
    /// Empty when the minimization did not run.
    pub clifford_pass: Option<bool>,
    pub gamma1: i64,
    #[serde(rename = "gamma_E")]
    pub gamma_e: ExactRational,
    pub gap: ExactRational,
    pub expected_dim: i64,
    pub conclusion: String,
}

impl ScanRow {
    pub const HEADER: [&'static str; 13] = [
        "g",
        "s",
        "d",
        "regime",
        "lemma21_ok",
        "square_zero_free",
        "minus_two_method",
        "clifford_pass",
        "gamma1",
        "gamma_E",
        "gap",
        "expected_dim",
        "conclusion",
    ];

    pub fn applies(&self) -> bool {
        self.conclusion == "theorem_applies"
    }
}

impl From<&Certificate> for ScanRow {
    fn from(c: &Certificate) -> Self {
        Self {
            g: c.g,
            s: c.s,
            d: c.d,
            regime: c.regime,
            lemma21_ok: c.lemma21_ok,
            square_zero_free: c.square_zero_free,
            minus_two_method: c.minus_two.as_ref().map(|m| m.method.to_string()),
            clifford_pass: c.clifford.as_ref().map(|r| r.pass),
            gamma1: c.gamma1,
            gamma_e: c.gamma_e.clone(),
            gap: c.gap_lower_bound.clone(),
            expected_dim: c.expected_dim,
            conclusion: c.conclusion.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub rows: usize,
    pub theorem_applies: usize,
    /// Largest gap over all emitted rows.
    pub max_gap: Option<ExactRational>,
    /// Largest gap over rows where the theorem applies, with its cell.
    pub max_gap_applies: Option<ExactRational>,
    pub max_gap_applies_at: Option<(i64, i64)>,
}

impl ScanSummary {
    pub fn of(rows: &[ScanRow]) -> Self {
        let best = rows
            .iter()
            .filter(|r| r.applies())
            .max_by(|a, b| a.gap.cmp(&b.gap).then(b.g.cmp(&a.g)).then(b.s.cmp(&a.s)));
        Self {
            rows: rows.len(),
            theorem_applies: rows.iter().filter(|r| r.applies()).count(),
            max_gap: rows.iter().map(|r| r.gap.clone()).max(),
            max_gap_applies: best.map(|r| r.gap.clone()),
            max_gap_applies_at: best.map(|r| (r.g, r.s)),
        }
    }
}

impl std::fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |v: &Option<ExactRational>| v.as_ref().map_or("-".to_string(), |r| r.to_string());
        write!(
            f,
            "rows={} theorem_applies={} max_gap={} max_gap_applies={}",
            self.rows,
            self.theorem_applies,
            opt(&self.max_gap),
            opt(&self.max_gap_applies),
        )?;
        if let Some((g, s)) = self.max_gap_applies_at {
            write!(f, " at=({g},{s})")?;
        }
        Ok(())
    }
}

/// Rows for every cell of the rectangle, ordered by `g` then `s`. Unless
/// `all` is set only strong- and relaxed-regime cells are kept.
pub fn scan_rows(
    g_range: std::ops::RangeInclusive<i64>,
    s_range: std::ops::RangeInclusive<i64>,
    all: bool,
    opts: &CertifyOptions,
) -> Result<Vec<ScanRow>, k3cert::certify::CertifyError> {
    let cells: Vec<(i64, i64)> = g_range
        .filter(|&g| g >= 2)
        .flat_map(|g| s_range.clone().map(move |s| (g, s)))
        .filter(|&(g, s)| all || k3cert::certify::check_hypotheses(g, s) != Regime::Outside)
        .collect();
    cells
        .into_par_iter()
        .map(|(g, s)| build_certificate_with(g, s, opts).map(|c| ScanRow::from(&c)))
        .collect()
}

/// Header row first, even when `rows` is empty.
pub fn write_csv<W: Write>(out: W, rows: &[ScanRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(ScanRow::HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<ScanRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn write_json<W: Write>(mut out: W, rows: &[ScanRow]) -> io::Result<()> {
    #[derive(Serialize)]
    struct Doc<'a> {
        rows: &'a [ScanRow],
        summary: ScanSummary,
    }
    let doc = Doc {
        rows,
        summary: ScanSummary::of(rows),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}
