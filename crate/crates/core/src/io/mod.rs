//! Scenario files and CSV results.

mod output;
mod scenario;

pub use output::{format_sig, to_csv_string, to_table, write_results, CsvRecord, OracleCheckRow, OutputError, TailRow};
pub use scenario::{RareSection, Scenario, ScenarioError};
