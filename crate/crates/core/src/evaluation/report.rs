use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClassMetrics, ConfusionCounts, EvalError, Metrics};
use crate::genre::GenreTag;
use crate::pairs::{Pair, PairMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReportGenre {
    Genre(GenreTag),
    Overall,
}

impl fmt::Display for ReportGenre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportGenre::Genre(tag) => f.write_str(tag.en_name()),
            ReportGenre::Overall => f.write_str("Overall"),
        }
    }
}

impl FromStr for ReportGenre {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Overall" {
            Ok(ReportGenre::Overall)
        } else {
            GenreTag::parse(s).map(ReportGenre::Genre).map_err(|e| e.to_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub genre: ReportGenre,
    pub mode: PairMode,
    pub accuracy: f64,
    pub f1_micro: f64,
    pub f1_weighted: f64,
    pub f1_macro: f64,
    pub recall: f64,
    pub precision: f64,
    pub support: usize,
    /// Both classes' values; absent when the row was read back from CSV.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_class: Option<[ClassMetrics; 2]>,
}

impl MetricsRow {
    fn from_metrics(genre: ReportGenre, mode: PairMode, m: &Metrics) -> Self {
        Self {
            genre,
            mode,
            accuracy: m.accuracy,
            f1_micro: m.f1_micro,
            f1_weighted: m.f1_weighted,
            f1_macro: m.f1_macro,
            recall: m.recall,
            precision: m.precision,
            support: m.support(),
            per_class: Some(m.per_class),
        }
    }

    fn values(&self) -> [f64; 6] {
        [
            self.accuracy,
            self.f1_micro,
            self.f1_weighted,
            self.f1_macro,
            self.recall,
            self.precision,
        ]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rows: Vec<MetricsRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Markdown,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format: {other}")),
        }
    }
}

fn bump(counts: &mut ConfusionCounts, truth: u8, predicted: u8) {
    match (truth, predicted) {
        (1, 1) => counts.tp += 1,
        (0, 1) => counts.fp += 1,
        (0, 0) => counts.tn += 1,
        _ => counts.fn_ += 1,
    }
}

/// One row per (genre, mode) with support, in table order, then the Overall
/// rows. A cross-genre pair counts toward both of its genres but only once
/// in Overall.
pub fn group_report(pairs: &[Pair], predictions: &[u8]) -> Result<Report, EvalError> {
    if pairs.len() != predictions.len() {
        return Err(EvalError::LengthMismatch {
            left: pairs.len(),
            right: predictions.len(),
        });
    }
    let mode_idx = |m: PairMode| match m {
        PairMode::PerGenre => 0,
        PairMode::CrossGenre => 1,
    };
    let mut per_genre = [[ConfusionCounts::default(); 2]; 5];
    let mut overall = [ConfusionCounts::default(); 2];
    for (pair, &predicted) in pairs.iter().zip(predictions) {
        if pair.label > 1 {
            return Err(EvalError::InvalidLabel(pair.label));
        }
        if predicted > 1 {
            return Err(EvalError::InvalidLabel(predicted));
        }
        let m = mode_idx(pair.mode);
        let mut seen = Vec::with_capacity(2);
        for &tag in &pair.genres {
            if !seen.contains(&tag) {
                seen.push(tag);
                bump(&mut per_genre[tag.index()][m], pair.label, predicted);
            }
        }
        bump(&mut overall[m], pair.label, predicted);
    }

    let mut rows = Vec::new();
    for tag in GenreTag::ALL {
        for mode in PairMode::ALL {
            let counts = per_genre[tag.index()][mode_idx(mode)];
            if counts.total() > 0 {
                rows.push(MetricsRow::from_metrics(
                    ReportGenre::Genre(tag),
                    mode,
                    &Metrics::from_counts(counts)?,
                ));
            }
        }
    }
    for mode in PairMode::ALL {
        let counts = overall[mode_idx(mode)];
        if counts.total() > 0 {
            rows.push(MetricsRow::from_metrics(
                ReportGenre::Overall,
                mode,
                &Metrics::from_counts(counts)?,
            ));
        }
    }
    Ok(Report { rows })
}

const MD_HEADER: &str = "| Genre | Mode | Accuracy | F1 Micro | F1 Weighted | F1 Macro | Recall | Precision |";
const MD_RULE: &str = "|---|---|---:|---:|---:|---:|---:|---:|";
const CSV_HEADER: [&str; 9] = [
    "genre",
    "mode",
    "accuracy",
    "f1_micro",
    "f1_weighted",
    "f1_macro",
    "recall",
    "precision",
    "support",
];

fn four_places(v: f64) -> String {
    format!("{v:.4}")
}

/// Renders the table. Markdown bolds each column maximum (at 4 decimals),
/// separately among genre rows and among Overall rows.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Markdown => render_markdown(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn render_markdown(report: &Report) -> String {
    let section = |row: &MetricsRow| row.genre == ReportGenre::Overall;
    let mut maxima = [[f64::NEG_INFINITY; 6]; 2];
    for row in &report.rows {
        let s = usize::from(section(row));
        for (max, v) in maxima[s].iter_mut().zip(row.values()) {
            let shown: f64 = four_places(v).parse().unwrap();
            *max = max.max(shown);
        }
    }

    let mut out = String::new();
    out.push_str(MD_HEADER);
    out.push('\n');
    out.push_str(MD_RULE);
    out.push('\n');
    for row in &report.rows {
        let s = usize::from(section(row));
        out.push_str(&format!("| {} | {} |", row.genre, row.mode));
        for (v, max) in row.values().into_iter().zip(maxima[s]) {
            let shown = four_places(v);
            if shown.parse::<f64>().unwrap() == max {
                out.push_str(&format!(" **{shown}** |"));
            } else {
                out.push_str(&format!(" {shown} |"));
            }
        }
        out.push('\n');
    }
    out
}

fn render_csv(report: &Report) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for row in &report.rows {
        let mut record = vec![row.genre.to_string(), row.mode.to_string()];
        record.extend(row.values().iter().map(|v| v.to_string()));
        record.push(row.support.to_string());
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub fn save_report_csv(report: &Report, path: impl AsRef<Path>) -> std::io::Result<()> {
    std::fs::write(path, render_csv(report))
}

pub fn load_report_csv(path: impl AsRef<Path>) -> Result<Report, EvalError> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| EvalError::Report(e.to_string()))?;
    parse_report_csv(&text)
}

fn parse_report_csv(text: &str) -> Result<Report, EvalError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| EvalError::Report(e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(EvalError::Report(format!("unexpected header: {header:?}")));
    }
    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let bad = |msg: String| EvalError::Report(format!("row {}: {msg}", idx + 2));
        let record = record.map_err(|e| bad(e.to_string()))?;
        let field = |i: usize| record.get(i).unwrap_or_default();
        let num = |i: usize| {
            field(i)
                .parse::<f64>()
                .map_err(|e| bad(format!("{}: {e}", CSV_HEADER[i])))
        };
        rows.push(MetricsRow {
            genre: field(0).parse().map_err(bad)?,
            mode: field(1).parse().map_err(bad)?,
            accuracy: num(2)?,
            f1_micro: num(3)?,
            f1_weighted: num(4)?,
            f1_macro: num(5)?,
            recall: num(6)?,
            precision: num(7)?,
            support: field(8).parse().map_err(|e| bad(format!("support: {e}")))?,
            per_class: None,
        });
    }
    Ok(Report { rows })
}
