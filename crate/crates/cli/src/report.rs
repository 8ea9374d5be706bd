//! The report document and its JSON, CSV and table renderings.

use std::fmt::Write as _;

use lasagna_core::intlinalg::GroupPiece;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub i: i64,
    pub j: i64,
    pub rank: usize,
    pub torsion: Vec<u64>,
    /// Per-degree stabilization, where the computation reports one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
}

impl RankEntry {
    pub fn new(i: i64, j: i64, piece: &GroupPiece) -> Result<Self, CliError> {
        let torsion = piece
            .torsion
            .iter()
            .map(|t| t.to_u64().ok_or_else(|| CliError::internal(format!("torsion coefficient {t} out of range"))))
            .collect::<Result<_, _>>()?;
        Ok(RankEntry { i, j, rank: piece.free_rank, torsion, stable: None })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissiblePiece {
    pub k: usize,
    pub degree: i64,
    pub monomials: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub invariant: String,
    pub parameters: Value,
    pub graded_ranks: Vec<RankEntry>,
    pub stable: bool,
    pub sign_convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_graded_ranks: Option<Vec<RankEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible_basis: Option<Vec<AdmissiblePiece>>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| CliError::internal(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self.render_csv(),
            Format::Table => Ok(self.render_table()),
        }
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let per_degree = self.graded_ranks.iter().any(|e| e.stable.is_some());
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["i", "j", "rank", "torsion"];
        if per_degree {
            header.push("stable");
        }
        let io = |e: csv::Error| CliError::internal(e.to_string());
        w.write_record(&header).map_err(io)?;
        for e in &self.graded_ranks {
            let mut record = vec![e.i.to_string(), e.j.to_string(), e.rank.to_string(), join_torsion(&e.torsion, ";")];
            if per_degree {
                record.push(e.stable.map_or(String::new(), |s| s.to_string()));
            }
            w.write_record(&record).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::internal(e.to_string()))
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "invariant: {}", self.invariant);
        if let Value::Object(params) = &self.parameters {
            let list: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "parameters: {}", list.join(" "));
        }
        if let Some(s) = &self.sign_convention {
            let _ = writeln!(out, "sign convention: {s}");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>4} {:>5} {:>5}  torsion", "i", "j", "rank");
        for e in &self.graded_ranks {
            let torsion = if e.torsion.is_empty() { "-".to_string() } else { join_torsion(&e.torsion, " ") };
            let mark = if e.stable == Some(false) { "  (unstable)" } else { "" };
            let _ = writeln!(out, "{:>4} {:>5} {:>5}  {torsion}{mark}", e.i, e.j, e.rank);
        }
        if let Some(pieces) = &self.admissible_basis {
            let _ = writeln!(out);
            let _ = writeln!(out, "admissible basis:");
            for p in pieces {
                let _ = writeln!(out, "  degree {:>2}: {}", p.degree, p.monomials.join(" "));
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "stable: {}", if self.stable { "yes" } else { "no" });
        if let Some(a) = self.oracle_agreement {
            let _ = writeln!(out, "oracle agreement: {}", if a { "yes" } else { "no" });
        }
        out
    }
}

fn join_torsion(t: &[u64], sep: &str) -> String {
    t.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}
