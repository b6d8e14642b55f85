//! Python bindings: corpus records, cleaning, prompts and parsers, pair
//! construction, metrics and the contrastive verifier.

use lyricav::contrastive::{self, EncoderParams, ModelFile, ThresholdModel, TrainingConfig};
use lyricav::corpus::{self, CleanOptions, QuantileMethod, TukeyBounds};
use lyricav::evaluation::{self, ReportFormat};
use lyricav::pairs::{self, PairSetSpec};
use lyricav::{genre, zeroshot, GenreTag, PairMode, PromptLanguage, Split};
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

fn invalid(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_or_invalid(e: impl std::error::Error) -> PyErr {
    let mut source: Option<&dyn std::error::Error> = e.source();
    while let Some(inner) = source {
        if inner.is::<std::io::Error>() {
            return PyOSError::new_err(e.to_string());
        }
        source = inner.source();
    }
    invalid(e)
}

fn language(name: &str) -> PyResult<PromptLanguage> {
    name.parse().map_err(invalid)
}

fn tags(names: &[String]) -> PyResult<Vec<GenreTag>> {
    names.iter().map(|n| GenreTag::parse(n).map_err(invalid)).collect()
}

fn tag_names(tags: &[GenreTag]) -> Vec<String> {
    tags.iter().map(|t| t.en_name().to_string()).collect()
}

/// A cleaned lyric work.
#[pyclass(name = "Song", from_py_object)]
#[derive(Clone)]
pub struct PySong {
    inner: lyricav::Song,
}

#[pymethods]
impl PySong {
    #[new]
    #[pyo3(signature = (id, title, lyricists, lines, genres = Vec::new(), split = "unassigned"))]
    fn new(
        id: String,
        title: String,
        lyricists: Vec<String>,
        lines: Vec<String>,
        genres: Vec<String>,
        split: &str,
    ) -> PyResult<Self> {
        let song = lyricav::Song {
            id,
            title,
            lyricists,
            length: corpus::compute_length(&lines),
            lines,
            genres: tags(&genres)?,
            split: split.parse::<Split>().map_err(invalid)?,
        };
        song.validate().map_err(invalid)?;
        Ok(Self { inner: song })
    }

    #[getter]
    fn id(&self) -> &str {
        &self.inner.id
    }
    #[getter]
    fn title(&self) -> &str {
        &self.inner.title
    }
    #[getter]
    fn lyricists(&self) -> Vec<String> {
        self.inner.lyricists.clone()
    }
    #[getter]
    fn lines(&self) -> Vec<String> {
        self.inner.lines.clone()
    }
    #[getter]
    fn length(&self) -> usize {
        self.inner.length
    }
    #[getter]
    fn genres(&self) -> Vec<String> {
        tag_names(&self.inner.genres)
    }
    #[getter]
    fn split(&self) -> &'static str {
        self.inner.split.as_str()
    }

    fn text(&self) -> String {
        self.inner.text()
    }

    fn __repr__(&self) -> String {
        format!(
            "Song(id={:?}, title={:?}, length={})",
            self.inner.id, self.inner.title, self.inner.length
        )
    }
}

/// Two songs and whether they share a lyricist.
#[pyclass(name = "Pair", from_py_object)]
#[derive(Clone)]
pub struct PyPair {
    inner: lyricav::Pair,
}

#[pymethods]
impl PyPair {
    #[new]
    #[pyo3(signature = (a_id, b_id, label, mode, genres, split = "unassigned"))]
    fn new(a_id: String, b_id: String, label: u8, mode: &str, genres: Vec<String>, split: &str) -> PyResult<Self> {
        let pair = lyricav::Pair {
            a_id,
            b_id,
            label,
            mode: mode.parse::<PairMode>().map_err(invalid)?,
            genres: tags(&genres)?,
            split: split.parse::<Split>().map_err(invalid)?,
        };
        pair.validate().map_err(invalid)?;
        Ok(Self { inner: pair })
    }

    #[getter]
    fn a_id(&self) -> &str {
        &self.inner.a_id
    }
    #[getter]
    fn b_id(&self) -> &str {
        &self.inner.b_id
    }
    #[getter]
    fn label(&self) -> u8 {
        self.inner.label
    }
    #[getter]
    fn mode(&self) -> &'static str {
        self.inner.mode.as_str()
    }
    #[getter]
    fn genres(&self) -> Vec<String> {
        tag_names(&self.inner.genres)
    }
    #[getter]
    fn split(&self) -> &'static str {
        self.inner.split.as_str()
    }

    fn __repr__(&self) -> String {
        format!(
            "Pair({:?}, {:?}, label={}, mode={:?})",
            self.inner.a_id,
            self.inner.b_id,
            self.inner.label,
            self.inner.mode.as_str()
        )
    }
}

/// Binary classification metrics; precision and recall are positive-class.
#[pyclass(name = "Metrics", get_all, skip_from_py_object)]
pub struct PyMetrics {
    tp: usize,
    fp: usize,
    tn: usize,
    #[pyo3(name = "fn_")]
    fn_: usize,
    accuracy: f64,
    f1_micro: f64,
    f1_weighted: f64,
    f1_macro: f64,
    recall: f64,
    precision: f64,
}

#[pymethods]
impl PyMetrics {
    fn __repr__(&self) -> String {
        format!(
            "Metrics(accuracy={:.4}, f1_weighted={:.4}, f1_macro={:.4}, recall={:.4}, precision={:.4})",
            self.accuracy, self.f1_weighted, self.f1_macro, self.recall, self.precision
        )
    }
}

/// Trained projection encoder plus its decision threshold.
#[pyclass(name = "ContrastiveModel", skip_from_py_object)]
pub struct PyModel {
    inner: ModelFile,
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: contrastive::load_model(path).map_err(io_or_invalid)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        contrastive::save_model(&self.inner, path).map_err(io_or_invalid)
    }

    #[getter]
    fn threshold(&self) -> f64 {
        self.inner.threshold
    }

    #[getter]
    fn best_validation_macro_f1(&self) -> f64 {
        self.inner.best_validation_macro_f1
    }

    fn similarities(&self, pairs: Vec<PyPair>, songs: Vec<PySong>) -> PyResult<Vec<f64>> {
        let pairs: Vec<_> = pairs.into_iter().map(|p| p.inner).collect();
        let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
        contrastive::pair_similarities(&self.inner.encoder, &pairs, &songs).map_err(invalid)
    }

    fn predict(&self, pairs: Vec<PyPair>, songs: Vec<PySong>) -> PyResult<Vec<u8>> {
        let threshold = self.inner.threshold;
        Ok(self
            .similarities(pairs, songs)?
            .into_iter()
            .map(|s| evaluation::predict_at(s, threshold))
            .collect())
    }
}

#[pyfunction]
#[pyo3(signature = (raw, strip_parentheses = true))]
fn clean_lyrics(raw: &str, strip_parentheses: bool) -> Vec<String> {
    let options = CleanOptions {
        strip_parentheses,
        ..CleanOptions::default()
    };
    corpus::clean_lyrics(raw, &options)
}

#[pyfunction]
fn load_corpus(path: &str) -> PyResult<Vec<PySong>> {
    let songs = corpus::load_corpus(path).map_err(io_or_invalid)?;
    Ok(songs.into_iter().map(|inner| PySong { inner }).collect())
}

#[pyfunction]
fn save_corpus(songs: Vec<PySong>, path: &str) -> PyResult<()> {
    let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
    corpus::save_corpus(&songs, path).map_err(io_or_invalid)
}

/// Length summary with Tukey fences, as a dict.
#[pyfunction]
fn length_stats(songs: Vec<PySong>) -> PyResult<std::collections::BTreeMap<&'static str, f64>> {
    let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
    let s = corpus::length_stats(&songs, QuantileMethod::Linear).map_err(invalid)?;
    Ok([
        ("min", s.min as f64),
        ("max", s.max as f64),
        ("median", s.median),
        ("mean", s.mean),
        ("q1", s.q1),
        ("q3", s.q3),
        ("lower_bound", s.lower_bound),
        ("upper_bound", s.upper_bound),
        ("outlier_count", s.outlier_count as f64),
    ]
    .into_iter()
    .collect())
}

/// Returns (kept, removed) for inclusive length bounds.
#[pyfunction]
fn filter_outliers(songs: Vec<PySong>, lower: f64, upper: f64) -> (Vec<PySong>, Vec<PySong>) {
    let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
    let (kept, removed) = corpus::filter_outliers(songs, TukeyBounds { lower, upper });
    let wrap = |v: Vec<lyricav::Song>| v.into_iter().map(|inner| PySong { inner }).collect();
    (wrap(kept), wrap(removed))
}

#[pyfunction]
#[pyo3(signature = (lyrics, language = "zh"))]
fn build_genre_prompt(lyrics: &str, language: &str) -> PyResult<String> {
    genre::build_genre_prompt(lyrics, self::language(language)?).map_err(invalid)
}

#[pyfunction]
fn parse_genre_response(raw: &str) -> PyResult<Vec<String>> {
    Ok(tag_names(&genre::parse_genre_response(raw).map_err(invalid)?))
}

#[pyfunction]
#[pyo3(signature = (lyrics_a, lyrics_b, language = "zh"))]
fn build_attrib_prompt(lyrics_a: &str, lyrics_b: &str, language: &str) -> PyResult<String> {
    zeroshot::build_attrib_prompt(lyrics_a, lyrics_b, self::language(language)?).map_err(invalid)
}

#[pyfunction]
fn parse_verdict(raw: &str) -> PyResult<u8> {
    zeroshot::parse_verdict(raw).map_err(invalid)
}

#[pyfunction]
fn load_pairs(path: &str) -> PyResult<Vec<PyPair>> {
    let pairs = pairs::load_pairs(path).map_err(io_or_invalid)?;
    Ok(pairs.into_iter().map(|inner| PyPair { inner }).collect())
}

#[pyfunction]
fn save_pairs(pairs: Vec<PyPair>, path: &str) -> PyResult<()> {
    let pairs: Vec<_> = pairs.into_iter().map(|p| p.inner).collect();
    pairs::save_pairs(&pairs, path).map_err(io_or_invalid)
}

/// Balanced pair set over tagged songs; returns (pairs, warnings).
#[pyfunction]
#[pyo3(signature = (songs, total_pairs, split = "train", seed = 0))]
fn build_pairs(songs: Vec<PySong>, total_pairs: usize, split: &str, seed: u64) -> PyResult<(Vec<PyPair>, Vec<String>)> {
    let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
    let spec = PairSetSpec {
        total_pairs,
        seed,
        ..PairSetSpec::default()
    };
    let split = split.parse::<Split>().map_err(invalid)?;
    let built = pairs::build_pairs(&songs, &spec, split).map_err(invalid)?;
    Ok((
        built.pairs.into_iter().map(|inner| PyPair { inner }).collect(),
        built.warnings.iter().map(ToString::to_string).collect(),
    ))
}

#[pyfunction]
fn compute_metrics(truth: Vec<u8>, predicted: Vec<u8>) -> PyResult<PyMetrics> {
    let m = evaluation::compute_metrics(&truth, &predicted).map_err(invalid)?;
    Ok(PyMetrics {
        tp: m.confusion.tp,
        fp: m.confusion.fp,
        tn: m.confusion.tn,
        fn_: m.confusion.fn_,
        accuracy: m.accuracy,
        f1_micro: m.f1_micro,
        f1_weighted: m.f1_weighted,
        f1_macro: m.f1_macro,
        recall: m.recall,
        precision: m.precision,
    })
}

/// Best (threshold, macro F1) over the grid, default -1.00..=1.00 step 0.01.
#[pyfunction]
#[pyo3(signature = (similarities, labels, grid = None))]
fn sweep_threshold(similarities: Vec<f64>, labels: Vec<u8>, grid: Option<Vec<f64>>) -> PyResult<(f64, f64)> {
    let grid = grid.unwrap_or_else(evaluation::default_grid);
    evaluation::sweep_threshold(&similarities, &labels, &grid).map_err(invalid)
}

/// Per genre × mode report rendered as "markdown" or "csv".
#[pyfunction]
#[pyo3(signature = (pairs, predictions, format = "markdown"))]
fn group_report(pairs: Vec<PyPair>, predictions: Vec<u8>, format: &str) -> PyResult<String> {
    let format: ReportFormat = format.parse().map_err(invalid)?;
    let pairs: Vec<_> = pairs.into_iter().map(|p| p.inner).collect();
    let report = evaluation::group_report(&pairs, &predictions).map_err(invalid)?;
    Ok(evaluation::render_report(&report, format))
}

/// Trains the contrastive verifier. Unset options keep the library defaults.
#[pyfunction]
#[pyo3(signature = (
    pairs, songs, epochs = None, learning_rate = None, batch_size = None, warmup_steps = None,
    eval_interval_steps = None, seed = None, feature_dim = 4096, embed_dim = 256, init_seed = 0
))]
#[allow(clippy::too_many_arguments)]
fn train(
    pairs: Vec<PyPair>,
    songs: Vec<PySong>,
    epochs: Option<usize>,
    learning_rate: Option<f64>,
    batch_size: Option<usize>,
    warmup_steps: Option<usize>,
    eval_interval_steps: Option<usize>,
    seed: Option<u64>,
    feature_dim: usize,
    embed_dim: usize,
    init_seed: u64,
) -> PyResult<PyModel> {
    let defaults = TrainingConfig::default();
    let config = TrainingConfig {
        epochs: epochs.unwrap_or(defaults.epochs),
        learning_rate: learning_rate.unwrap_or(defaults.learning_rate),
        batch_size: batch_size.unwrap_or(defaults.batch_size),
        warmup_steps: warmup_steps.unwrap_or(defaults.warmup_steps),
        eval_interval_steps: eval_interval_steps.unwrap_or(defaults.eval_interval_steps),
        seed: seed.unwrap_or(defaults.seed),
        ..defaults
    };
    let pairs: Vec<_> = pairs.into_iter().map(|p| p.inner).collect();
    let songs: Vec<_> = songs.into_iter().map(|s| s.inner).collect();
    let init = EncoderParams::init(feature_dim, embed_dim, 0.5, 0, 128, init_seed);
    let (params, model): (EncoderParams, ThresholdModel) =
        contrastive::train(&pairs, &songs, init, &config).map_err(invalid)?;
    Ok(PyModel {
        inner: ModelFile::new(params, &model, config),
    })
}

/// Registers every class and function on `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySong>()?;
    m.add_class::<PyPair>()?;
    m.add_class::<PyMetrics>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(clean_lyrics, m)?)?;
    m.add_function(wrap_pyfunction!(load_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(save_corpus, m)?)?;
    m.add_function(wrap_pyfunction!(length_stats, m)?)?;
    m.add_function(wrap_pyfunction!(filter_outliers, m)?)?;
    m.add_function(wrap_pyfunction!(build_genre_prompt, m)?)?;
    m.add_function(wrap_pyfunction!(parse_genre_response, m)?)?;
    m.add_function(wrap_pyfunction!(build_attrib_prompt, m)?)?;
    m.add_function(wrap_pyfunction!(parse_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(load_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(save_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(build_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(compute_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(group_report, m)?)?;
    m.add_function(wrap_pyfunction!(train, m)?)?;
    Ok(())
}

#[pymodule]
fn lyricav_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
