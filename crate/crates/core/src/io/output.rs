//! CSV results with fixed column order and 12 significant digits.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::harness::{SweepRow, TrialStats};

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write `{}`: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot write `{}`: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

/// A row type with a stable column layout.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Decimal rendering with 12 significant digits. Magnitudes outside
/// `[1e-5, 1e15)` switch to exponent form.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if x.is_nan() {
        return "NaN".to_owned();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_owned();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
    let exp = rounded.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, rounded)
    } else {
        format!("{rounded:.11e}")
    }
}

impl CsvRecord for SweepRow {
    const HEADER: &'static [&'static str] =
        &["n", "quantum_absorptions", "classical_absorptions", "ratio", "rounds", "shots"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_sig(self.quantum_absorptions),
            format_sig(self.classical_absorptions),
            format_sig(self.ratio),
            self.rounds.to_string(),
            self.shots.to_string(),
        ]
    }
}

impl CsvRecord for TrialStats {
    const HEADER: &'static [&'static str] =
        &["trials", "successes", "point_estimate", "ci_low", "ci_high", "mean_absorptions"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.trials.to_string(),
            self.successes.to_string(),
            format_sig(self.point_estimate),
            format_sig(self.ci_low),
            format_sig(self.ci_high),
            format_sig(self.mean_absorptions),
        ]
    }
}

/// One `overlap-tail` estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct TailRow {
    pub n: usize,
    pub samples: usize,
    pub threshold: f64,
    pub tail_fraction: f64,
}

impl CsvRecord for TailRow {
    const HEADER: &'static [&'static str] = &["n", "samples", "threshold", "tail_fraction"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.samples.to_string(),
            format_sig(self.threshold),
            format_sig(self.tail_fraction),
        ]
    }
}

/// Sampled frequency of one round outcome against its exact probability.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheckRow {
    pub outcome: String,
    pub exact: f64,
    pub empirical: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CsvRecord for OracleCheckRow {
    const HEADER: &'static [&'static str] = &["outcome", "exact", "empirical", "tolerance", "pass"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.outcome.clone(),
            format_sig(self.exact),
            format_sig(self.empirical),
            format_sig(self.tolerance),
            self.pass.to_string(),
        ]
    }
}

fn write_to<R: CsvRecord, W: std::io::Write>(rows: &[R], sink: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(R::HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string<R: CsvRecord>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_to(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}

pub fn write_results<R: CsvRecord>(rows: &[R], path: &Path) -> Result<(), OutputError> {
    let file = std::fs::File::create(path).map_err(|source| OutputError::Io { path: path.to_owned(), source })?;
    write_to(rows, std::io::BufWriter::new(file)).map_err(|source| OutputError::Csv { path: path.to_owned(), source })
}

/// Right-aligned plain-text table of the same fields.
pub fn to_table<R: CsvRecord>(rows: &[R]) -> String {
    let body: Vec<Vec<String>> = rows.iter().map(|r| r.fields()).collect();
    let widths: Vec<usize> = R::HEADER
        .iter()
        .enumerate()
        .map(|(c, h)| body.iter().map(|r| r[c].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
        parts.join("  ").trim_end().to_owned() + "\n"
    };
    let mut out = line(&mut R::HEADER.iter().copied());
    for r in &body {
        out += &line(&mut r.iter().map(String::as_str));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig(0.5), "0.500000000000");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(2592.0), "2592.00000000");
        assert_eq!(format_sig(-31.5), "-31.5000000000");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(9.9999999999999e2), "1000.00000000");
        assert_eq!(format_sig(1.5e-7), "1.50000000000e-7");
        assert_eq!(format_sig(2.0e20), "2.00000000000e20");
    }

    #[test]
    fn round_trip_within_twelve_digits() {
        for &x in &[std::f64::consts::PI, 1e-4 / 7.0, 123456.789012345, 43.3, 1.0 / 1024.0] {
            let y: f64 = format_sig(x).parse().unwrap();
            assert!((x - y).abs() <= 5e-12 * x.abs(), "{x} -> {y}");
        }
    }

    #[test]
    fn empty_rows_give_header_only() {
        assert_eq!(to_csv_string::<TailRow>(&[]), "n,samples,threshold,tail_fraction\n");
    }

    #[test]
    fn table_aligns_columns() {
        let rows = [TailRow { n: 4, samples: 10, threshold: 0.5, tail_fraction: 0.1 }];
        let t = to_table(&rows);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].len(), lines[1].len());
    }
}
