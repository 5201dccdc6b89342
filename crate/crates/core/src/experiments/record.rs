use std::cmp::Ordering;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::Format;
use crate::error::Result;

/// Bumped whenever a column is added, removed, or reordered.
pub const SCHEMA_VERSION: u32 = 1;

/// One output row. Every mode fills the key columns
/// `(mode, n, d, p, r, trial, rng_seed)`; the rest is mode specific and left
/// empty when it does not apply. Summary rows have `variant = "summary"` and
/// no trial.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema: u32,
    pub mode: String,
    pub n: usize,
    pub d: f64,
    pub p: f64,
    pub r: u32,
    pub trial: Option<usize>,
    pub rng_seed: Option<u64>,
    pub variant: String,
    pub seed_count: Option<usize>,
    pub active_count: Option<usize>,
    pub constructed_size: Option<usize>,
    pub exact_size: Option<usize>,
    pub tau: Option<u32>,
    pub contagious: Option<bool>,
    pub success: Option<bool>,
    /// `constructed_size d^(r/(r-1)) log2 d / n`.
    pub normalized_size: Option<f64>,
    pub critical_size: Option<f64>,
    pub value: Option<f64>,
    pub flag: Option<String>,
    pub violations: Option<usize>,
    pub wall_ms: Option<u64>,
}

pub const CSV_HEADER: &str = "schema,mode,n,d,p,r,trial,rng_seed,variant,seed_count,active_count,\
constructed_size,exact_size,tau,contagious,success,normalized_size,critical_size,value,flag,\
violations,wall_ms";

impl ExperimentRecord {
    pub fn new(mode: &str, n: usize, d: f64, p: f64, r: u32, variant: &str) -> Self {
        ExperimentRecord {
            schema: SCHEMA_VERSION,
            mode: mode.to_string(),
            n,
            d,
            p,
            r,
            variant: variant.to_string(),
            ..Default::default()
        }
    }

    pub fn trial(mut self, trial: usize, rng_seed: u64) -> Self {
        self.trial = Some(trial);
        self.rng_seed = Some(rng_seed);
        self
    }

    /// Total order used before writing: by `n`, `d`, `p`, variant, then
    /// trial, with summaries after the trials they summarize.
    pub fn key_cmp(&self, other: &Self) -> Ordering {
        self.mode
            .cmp(&other.mode)
            .then(self.n.cmp(&other.n))
            .then(self.d.total_cmp(&other.d))
            .then(self.p.total_cmp(&other.p))
            .then(self.r.cmp(&other.r))
            .then((self.trial.is_none()).cmp(&other.trial.is_none()))
            .then(self.variant.cmp(&other.variant))
            .then(self.trial.cmp(&other.trial))
    }
}

pub fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(ExperimentRecord::key_cmp);
}

pub fn write_records<W: Write>(records: &[ExperimentRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            w.write_record(CSV_HEADER.split(','))?;
            for rec in records {
                w.serialize(rec)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, records)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_matches_fields() {
        let mut buf = Vec::new();
        let mut w = csv::Writer::from_writer(&mut buf);
        w.serialize(ExperimentRecord::new("sweep", 1, 0.0, 0.0, 2, "x"))
            .unwrap();
        drop(w);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    }

    #[test]
    fn csv_leaves_missing_cells_empty() {
        let rec = ExperimentRecord::new("partial", 10, 2.0, 0.2, 2, "random_half").trial(3, 99);
        let mut buf = Vec::new();
        write_records(&[rec], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "1,partial,10,2.0,0.2,2,3,99,random_half,,,,,,,,,,,,,"
        );
    }

    #[test]
    fn summaries_sort_last() {
        let s = ExperimentRecord::new("sweep", 10, 1.0, 0.1, 2, "summary");
        let t = ExperimentRecord::new("sweep", 10, 1.0, 0.1, 2, "staged").trial(0, 1);
        let u = ExperimentRecord::new("sweep", 5, 1.0, 0.2, 2, "staged").trial(9, 1);
        let mut v = vec![s.clone(), t.clone(), u.clone()];
        sort_records(&mut v);
        assert_eq!(v, vec![u, t, s]);
    }

    #[test]
    fn json_round_trip() {
        let rec = ExperimentRecord {
            tau: Some(4),
            flag: Some("no-crossing".into()),
            ..ExperimentRecord::new("threshold", 10, 1.0, 0.1, 2, "summary")
        };
        let mut buf = Vec::new();
        write_records(std::slice::from_ref(&rec), Format::Json, &mut buf).unwrap();
        let back: Vec<ExperimentRecord> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, vec![rec]);
    }
}
