//! Stay-positive ratio tables: simulated `p_n` against `C_{k,m} / sqrt(π n)`.
//!
//! Each row carries `n`, the ratio of the simulated probability to the
//! asymptotic one, the quadrature constant, the simulated constant
//! `p̂_n sqrt(π n)`, the binomial standard error of `p̂_n`, the run count and
//! the seed. CSV output prefixes the law `(k, m)` so that several tables fit
//! in one file; JSON output follows `schemas/tables.v1.schema.json`.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::asymptotics::ckm_quadrature;
use crate::error::{Error, Result};
use crate::montecarlo::{mc_stay_positive, RunConfig};
use crate::quadrature::QuadratureSpec;
use crate::walk::StepLaw;

pub const SCHEMA_VERSION: u32 = 1;
pub const EXPERIMENT: &str = "stay-positive-ratio";
pub const CSV_HEADER: [&str; 9] = ["k", "m", "n", "ratio", "c_theor", "c_sim", "stderr", "runs", "seed"];

/// The JSON schema describing [`RatioTable`] documents.
pub const JSON_SCHEMA: &str = include_str!("../schemas/tables.v1.schema.json");

/// Laws and step counts of the published experiment.
pub const DEFAULT_LAWS: [(u64, u64); 3] = [(1, 1), (2, 1), (5, 7)];
pub const DEFAULT_NS: [usize; 3] = [100, 1000, 10_000];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub k: u64,
    pub m: u64,
    pub n: usize,
    pub ratio: f64,
    pub c_theor: f64,
    pub c_sim: f64,
    pub stderr: f64,
    pub runs: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableParams {
    pub laws: Vec<[u64; 2]>,
    pub ns: Vec<usize>,
    pub runs: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioTable {
    pub schema_version: u32,
    pub experiment: String,
    pub params: TableParams,
    pub rows: Vec<RatioRow>,
}

/// Simulate every `(law, n)` pair. Every cell uses the table seed, so run `i`
/// of each cell reads the same random stream, and any single row can be
/// reproduced on its own with [`mc_stay_positive`] and that seed.
pub fn ratio_table(
    laws: &[StepLaw],
    ns: &[usize],
    cfg: &RunConfig,
    quad: &QuadratureSpec,
) -> Result<RatioTable> {
    if ns.contains(&0) {
        return Err(Error::InvalidArgument("table step counts must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(laws.len() * ns.len());
    for law in laws {
        let c = ckm_quadrature(law, quad)?.value;
        for &n in ns {
            let est = mc_stay_positive(law, n, cfg)?;
            let c_sim = est.mean * (PI * n as f64).sqrt();
            rows.push(RatioRow {
                k: law.k(),
                m: law.m(),
                n,
                ratio: c_sim / c,
                c_theor: c,
                c_sim,
                stderr: est.stderr,
                runs: est.runs,
                seed: est.seed,
            });
        }
    }
    Ok(RatioTable {
        schema_version: SCHEMA_VERSION,
        experiment: EXPERIMENT.to_string(),
        params: TableParams {
            laws: laws.iter().map(|l| [l.k(), l.m()]).collect(),
            ns: ns.to_vec(),
            runs: cfg.runs,
            seed: cfg.seed,
        },
        rows,
    })
}

impl RatioTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.serialize(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

impl fmt::Display for RatioTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for [k, m] in &self.params.laws {
            if !first {
                writeln!(f)?;
            }
            first = false;
            writeln!(f, "k = {k}, m = {m}")?;
            writeln!(
                f,
                "{:>8}  {:>10}  {:>10}  {:>10}  {:>10}",
                "n", "ratio", "C theor.", "C sim.", "stderr"
            )?;
            for r in self.rows.iter().filter(|r| r.k == *k && r.m == *m) {
                writeln!(
                    f,
                    "{:>8}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.3e}",
                    r.n, r.ratio, r.c_theor, r.c_sim, r.stderr
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RatioTable {
        let laws = [StepLaw::new(1, 1).unwrap(), StepLaw::new(2, 1).unwrap()];
        ratio_table(&laws, &[10, 50], &RunConfig::new(1000, 3), &QuadratureSpec::default()).unwrap()
    }

    #[test]
    fn csv_layout() {
        let t = small();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "k,m,n,ratio,c_theor,c_sim,stderr,runs,seed");
        assert_eq!(lines.count(), 4);
        let mut rdr = csv::Reader::from_reader(csv.as_bytes());
        let rows: Vec<RatioRow> = rdr.deserialize().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(rows, t.rows);
    }

    #[test]
    fn json_round_trip() {
        let t = small();
        assert_eq!(RatioTable::from_json(&t.to_json()).unwrap(), t);
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["experiment"], EXPERIMENT);
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn ratio_consistent_with_columns() {
        for r in small().rows {
            assert!((r.ratio - r.c_sim / r.c_theor).abs() < 1e-15);
            assert_eq!(r.runs, 1000);
        }
    }

    #[test]
    fn display_has_captions() {
        let s = small().to_string();
        assert!(s.contains("k = 1, m = 1"));
        assert!(s.contains("k = 2, m = 1"));
    }
}
