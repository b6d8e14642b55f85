//! Command-line front end: argument definitions, run configuration and the
//! command implementations behind the `lyricav` binary.

mod commands;
pub mod config;
pub mod failure;
pub mod svg;

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

pub use config::RunConfig;
pub use failure::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "lyricav",
    version,
    about = "Authorship verification for cross-genre Chinese lyrics"
)]
pub struct Cli {
    /// TOML run configuration; flags take precedence over its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clean raw lyrics into a corpus and print length statistics.
    Clean(CleanArgs),
    /// Ask the LLM for genre tags; writes assignments and a review sheet.
    LabelGenres(LabelArgs),
    /// Apply a filled-in review sheet and write the tagged corpus.
    ReviewApply(ReviewArgs),
    /// Split the corpus and build a balanced pair set.
    BuildPairs(BuildPairsArgs),
    /// Run the zero-shot LLM verifier over a pair set.
    Zeroshot(ZeroshotArgs),
    /// Train the contrastive verifier and pick its threshold.
    Train(TrainArgs),
    /// Score predictions per genre and pair mode.
    Evaluate(EvaluateArgs),
    /// Render an SVG chart of the corpus or pair set.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    /// Raw JSONL input (`title`, `lyricists`, `raw_lyrics`) [config: paths.raw].
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Cleaned corpus JSONL output [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Drop songs outside the Tukey fences of this input.
    #[arg(long)]
    pub filter_outliers: bool,
    /// Keep only lengths within [LO, HI]; implies filtering and overrides the fences.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub bounds: Option<Vec<f64>>,
    /// Keep the text inside parentheses, dropping only the brackets [config: clean.strip_parentheses].
    #[arg(long)]
    pub keep_parentheses: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LanguageChoice {
    Zh,
    En,
    Both,
}

#[derive(Debug, Args)]
pub struct LabelArgs {
    /// Corpus JSONL to label [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Prompt language [config: labeling.languages].
    #[arg(long, value_enum)]
    pub language: Option<LanguageChoice>,
    /// Label only the first N songs.
    #[arg(long, value_name = "N")]
    pub sample: Option<usize>,
    /// Assignments JSONL output [default: <paths.reports>/genre_assignments.jsonl].
    #[arg(long, value_name = "FILE")]
    pub assignments: Option<PathBuf>,
    /// Review sheet CSV output [default: <paths.reports>/genre_review.csv].
    #[arg(long, value_name = "FILE")]
    pub review_sheet: Option<PathBuf>,
    /// Serve responses from an exchange log instead of the network.
    #[arg(long, value_name = "LOG")]
    pub replay: Option<PathBuf>,
    /// Exchange log to append to [default: <paths.logs>/genre_exchanges.jsonl].
    #[arg(long, value_name = "LOG")]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReviewArgs {
    /// Corpus JSONL the assignments refer to [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Assignments JSONL [default: <paths.reports>/genre_assignments.jsonl].
    #[arg(long, value_name = "FILE")]
    pub assignments: Option<PathBuf>,
    /// Filled-in review sheet CSV [default: <paths.reports>/genre_review.csv].
    #[arg(long, value_name = "FILE")]
    pub review: Option<PathBuf>,
    /// Tagged corpus JSONL output [config: paths.labeled].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SplitChoice {
    Train,
    Test1,
    Test2,
}

#[derive(Debug, Args)]
pub struct BuildPairsArgs {
    /// Tagged corpus JSONL [config: paths.labeled, then paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Which split to build pairs for.
    #[arg(long, value_enum)]
    pub split: SplitChoice,
    /// TOML file with pair-set targets, replacing the [pairset] section.
    #[arg(long, value_name = "FILE")]
    pub spec: Option<PathBuf>,
    /// Add synthetic-token copies of every song before pairing (needs --songs-out).
    #[arg(long)]
    pub augment: bool,
    /// Seen-author corpus that test2 lyricists must not appear in (required for test2).
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,
    /// Pair JSONL output [config: paths.pairs].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Write the songs of the chosen split, including augmented copies.
    #[arg(long, value_name = "FILE")]
    pub songs_out: Option<PathBuf>,
    /// Train share of the song-level split [config: split.train_fraction].
    #[arg(long, value_name = "F")]
    pub train_fraction: Option<f64>,
    /// Song-level split seed [config: split.seed].
    #[arg(long, value_name = "N")]
    pub split_seed: Option<u64>,
    /// Pair sampling seed [config: pairset.seed].
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
    /// Target pair count [config: pairset.total_pairs].
    #[arg(long, value_name = "N")]
    pub total_pairs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZeroshotArgs {
    /// Pair JSONL [config: paths.pairs].
    #[arg(long, value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// Corpus JSONL holding every paired song [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Prompt language [config: zeroshot.language].
    #[arg(long, value_enum)]
    pub language: Option<PromptChoice>,
    /// Serve responses from an exchange log instead of the network.
    #[arg(long, value_name = "LOG")]
    pub replay: Option<PathBuf>,
    /// Exchange log to append to [default: <paths.logs>/zeroshot_exchanges.jsonl].
    #[arg(long, value_name = "LOG")]
    pub log: Option<PathBuf>,
    /// Verdict JSONL output [default: <paths.reports>/verdicts.jsonl].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PromptChoice {
    Zh,
    En,
}

impl From<PromptChoice> for lyricav::PromptLanguage {
    fn from(c: PromptChoice) -> Self {
        match c {
            PromptChoice::Zh => lyricav::PromptLanguage::Zh,
            PromptChoice::En => lyricav::PromptLanguage::En,
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Training pair JSONL [config: paths.pairs].
    #[arg(long, value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// Corpus JSONL holding every paired song [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Model JSON output [default: <paths.models>/contrastive.json].
    #[arg(long, value_name = "FILE")]
    pub model_out: Option<PathBuf>,
    /// Threshold history CSV output [default: <paths.models>/history.csv].
    #[arg(long, value_name = "FILE")]
    pub history_out: Option<PathBuf>,
    /// Passes over the training pairs [config: training.epochs].
    #[arg(long, value_name = "N")]
    pub epochs: Option<usize>,
    /// Peak Adam learning rate [config: training.learning_rate].
    #[arg(long, value_name = "LR")]
    pub learning_rate: Option<f64>,
    /// Pairs per optimizer step [config: training.batch_size].
    #[arg(long, value_name = "N")]
    pub batch_size: Option<usize>,
    /// Shuffle and validation-split seed [config: training.seed].
    #[arg(long, value_name = "N")]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatChoice {
    Markdown,
    Csv,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("predictions").required(true).args(["model", "verdicts"])))]
pub struct EvaluateArgs {
    /// Pair JSONL with gold labels [config: paths.pairs].
    #[arg(long, value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// Corpus JSONL, needed with --model [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Contrastive model JSON to score the pairs with.
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Zero-shot verdict JSONL to score.
    #[arg(long, value_name = "FILE")]
    pub verdicts: Option<PathBuf>,
    /// Report format [config: report.format].
    #[arg(long, value_enum)]
    pub format: Option<FormatChoice>,
    /// Also write the report to this file.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    LengthBox,
    LengthHist,
    AuthorsPerGenre,
}

impl PlotKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PlotKind::LengthBox => "length-box",
            PlotKind::LengthHist => "length-hist",
            PlotKind::AuthorsPerGenre => "authors-per-genre",
        }
    }
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Chart to draw.
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Corpus JSONL [config: paths.corpus].
    #[arg(long, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    /// Restrict the chart to songs that appear in this pair JSONL.
    #[arg(long, value_name = "FILE")]
    pub pairs: Option<PathBuf>,
    /// Fence lines drawn on length charts instead of the data's own Tukey fences.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub bounds: Option<Vec<f64>>,
    /// Histogram bin width in lines.
    #[arg(long, value_name = "N", default_value_t = 5)]
    pub bin_width: usize,
    /// SVG output [default: <paths.reports>/<kind>.svg].
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

/// Loads the config named by `--config` (defaults otherwise) and runs the command.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    match cli.command {
        Command::Clean(args) => commands::clean(args, &config, out),
        Command::LabelGenres(args) => commands::label_genres(args, &config, out),
        Command::ReviewApply(args) => commands::review_apply(args, &config, out),
        Command::BuildPairs(args) => commands::build_pairs(args, &config, out),
        Command::Zeroshot(args) => commands::zeroshot(args, &config, out),
        Command::Train(args) => commands::train(args, &config, out),
        Command::Evaluate(args) => commands::evaluate(args, &config, out),
        Command::Plot(args) => commands::plot(args, &config, out),
    }
}
