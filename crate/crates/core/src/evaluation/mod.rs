//! Binary verification metrics, threshold sweeps and per-genre reports.

mod metrics;
mod report;
mod sweep;

pub use metrics::{compute_metrics, ClassMetrics, ConfusionCounts, Metrics};
pub use report::{
    group_report, load_report_csv, render_report, save_report_csv, MetricsRow, Report, ReportFormat, ReportGenre,
};
pub use sweep::{default_grid, predict_at, sweep_threshold};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("empty input")]
    Empty,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("label {0} is not 0 or 1")]
    InvalidLabel(u8),
    #[error("empty threshold grid")]
    EmptyGrid,
    #[error("report: {0}")]
    Report(String),
}
