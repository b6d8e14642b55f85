mod corpus;
mod pairs;
mod plot;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::Failure;

pub use corpus::{clean, label_genres, review_apply};
pub use pairs::build_pairs;
pub use plot::plot;
pub use verify::{evaluate, train, zeroshot};

/// Flag value, else the config value, else a validation failure naming both.
fn require(
    flag: Option<PathBuf>,
    configured: Option<&PathBuf>,
    flag_name: &str,
    key: &str,
) -> Result<PathBuf, Failure> {
    flag.or_else(|| configured.cloned())
        .ok_or_else(|| Failure::invalid(format!("missing {flag_name} (or set {key} in the config file)")))
}

fn ensure_parent(path: &Path) -> Result<(), Failure> {
    match path.parent().filter(|p| !p.as_os_str().is_empty()) {
        Some(parent) => std::fs::create_dir_all(parent).map_err(|e| Failure::io(parent, e)),
        None => Ok(()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    ensure_parent(path)?;
    std::fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::io(Path::new("<stdout>"), e))
}

fn bounds_arg(values: Option<Vec<f64>>) -> Result<Option<lyricav::corpus::TukeyBounds>, Failure> {
    let Some(values) = values else {
        return Ok(None);
    };
    let (lower, upper) = (values[0], values[1]);
    if !(lower.is_finite() && upper.is_finite() && lower <= upper) {
        return Err(Failure::invalid(format!(
            "--bounds needs finite LO <= HI, got {lower} {upper}"
        )));
    }
    Ok(Some(lyricav::corpus::TukeyBounds { lower, upper }))
}
