use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use lyricav::corpus::{filter_outliers, length_stats, load_corpus, load_raw_songs, save_corpus, LengthStats};
use lyricav::gateway::Gateway;
use lyricav::genre::{
    apply_assignments, apply_review, export_review_sheet, label_corpus, GenreAssignment, ReviewStatus,
};
use lyricav::jsonl::{read_jsonl, write_jsonl};
use lyricav::PromptLanguage;

use super::{bounds_arg, emit, ensure_parent, require};
use crate::config::RunConfig;
use crate::{CleanArgs, Failure, LabelArgs, LanguageChoice, ReviewArgs};

pub fn clean(args: CleanArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let input = require(args.input, config.paths.raw.as_ref(), "--input", "paths.raw")?;
    let output = require(args.output, config.paths.corpus.as_ref(), "--output", "paths.corpus")?;
    let explicit_bounds = bounds_arg(args.bounds)?;
    let mut options = config.clean.clone();
    if args.keep_parentheses {
        options.strip_parentheses = false;
    }

    let raw = load_raw_songs(&input)?;
    let songs: Vec<_> = raw
        .into_iter()
        .enumerate()
        .map(|(idx, r)| {
            let id = r.id.clone().unwrap_or_else(|| format!("song-{:05}", idx + 1));
            r.into_song(id, &options)
        })
        .collect();
    let stats = length_stats(&songs, config.stats.quantile_method)?;
    let mut report = render_stats(songs.len(), &stats);

    let kept = if args.filter_outliers || explicit_bounds.is_some() {
        let bounds = explicit_bounds.unwrap_or_else(|| stats.bounds());
        let (kept, removed) = filter_outliers(songs, bounds);
        writeln!(
            report,
            "removed: {} (outside [{}, {}])",
            removed.len(),
            bounds.lower,
            bounds.upper
        )
        .unwrap();
        for song in &removed {
            writeln!(report, "  {} ({} lines)", song.id, song.length).unwrap();
        }
        kept
    } else {
        songs
    };
    writeln!(report, "kept: {}", kept.len()).unwrap();
    if kept.is_empty() {
        return Err(Failure::invalid("no songs left after filtering; widen --bounds"));
    }
    save_corpus(&kept, &output)?;
    emit(out, &report)
}

fn render_stats(count: usize, stats: &LengthStats) -> String {
    let mut s = String::new();
    writeln!(s, "songs: {count}").unwrap();
    writeln!(s, "min: {}", stats.min).unwrap();
    writeln!(s, "max: {}", stats.max).unwrap();
    writeln!(s, "median: {}", stats.median).unwrap();
    writeln!(s, "mean: {}", stats.mean).unwrap();
    writeln!(s, "q1: {}", stats.q1).unwrap();
    writeln!(s, "q3: {}", stats.q3).unwrap();
    writeln!(s, "lower bound: {}", stats.lower_bound).unwrap();
    writeln!(s, "upper bound: {}", stats.upper_bound).unwrap();
    writeln!(s, "outliers: {}", stats.outlier_count).unwrap();
    s
}

/// Live gateway logging to `log` (or `default_log`), or a replay gateway
/// that logs only when `log` is given.
pub(super) fn open_gateway(
    config: &RunConfig,
    replay: Option<&Path>,
    log: Option<PathBuf>,
    default_log: &str,
) -> Result<Gateway, Failure> {
    let (gateway, log) = match replay {
        Some(path) => (
            Gateway::replay(config.gateway.clone(), path).map_err(|e| Failure::from(e).context(path.display()))?,
            log,
        ),
        None => (
            Gateway::new(config.gateway.clone())?,
            Some(log.unwrap_or_else(|| config.paths.logs.join(default_log))),
        ),
    };
    match log {
        Some(path) => {
            ensure_parent(&path)?;
            Ok(gateway.with_log(path)?)
        }
        None => Ok(gateway),
    }
}

pub fn label_genres(args: LabelArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
    let assignments_path = args
        .assignments
        .unwrap_or_else(|| config.paths.reports.join("genre_assignments.jsonl"));
    let sheet_path = args
        .review_sheet
        .unwrap_or_else(|| config.paths.reports.join("genre_review.csv"));
    let languages = match args.language {
        Some(LanguageChoice::Zh) => vec![PromptLanguage::Zh],
        Some(LanguageChoice::En) => vec![PromptLanguage::En],
        Some(LanguageChoice::Both) => vec![PromptLanguage::Zh, PromptLanguage::En],
        None => config.labeling.languages.clone(),
    };
    if args.sample == Some(0) {
        return Err(Failure::invalid("--sample must be at least 1"));
    }

    let mut songs = load_corpus(&corpus)?;
    let gateway = open_gateway(config, args.replay.as_deref(), args.log, "genre_exchanges.jsonl")?;
    let outcome = label_corpus(&mut songs, &gateway, &languages, args.sample);
    for error in &outcome.errors {
        eprintln!("warning: {} ({}): {}", error.song_id, error.language, error.message);
    }
    if outcome.assignments.is_empty() && !outcome.errors.is_empty() {
        return Err(Failure::Io(format!(
            "all {} labeling requests failed; first: {}",
            outcome.errors.len(),
            outcome.errors[0].message
        )));
    }

    write_jsonl(&assignments_path, &outcome.assignments)?;
    ensure_parent(&sheet_path)?;
    export_review_sheet(&outcome.assignments, &sheet_path)?;
    let labeled = songs.iter().filter(|s| !s.genres.is_empty()).count();
    emit(
        out,
        &format!(
            "assignments: {} ({} songs tagged, {} failures)\nwrote {}\nwrote {}\n",
            outcome.assignments.len(),
            labeled,
            outcome.errors.len(),
            assignments_path.display(),
            sheet_path.display()
        ),
    )
}

pub fn load_assignments(path: &Path) -> Result<Vec<GenreAssignment>, Failure> {
    Ok(read_jsonl(path, |_, line| {
        serde_json::from_str(line).map_err(|e| e.to_string())
    })?)
}

pub fn review_apply(args: ReviewArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
    let output = require(args.output, config.paths.labeled.as_ref(), "--output", "paths.labeled")?;
    let assignments_path = args
        .assignments
        .unwrap_or_else(|| config.paths.reports.join("genre_assignments.jsonl"));
    let review = args
        .review
        .unwrap_or_else(|| config.paths.reports.join("genre_review.csv"));

    let mut songs = load_corpus(&corpus)?;
    let assignments = load_assignments(&assignments_path)?;
    let reviewed = apply_review(assignments, &review)?;
    let missing = apply_assignments(&mut songs, &reviewed);
    for id in &missing {
        eprintln!("warning: assignment for unknown song {id}");
    }
    save_corpus(&songs, &output)?;

    let count = |status: ReviewStatus| reviewed.iter().filter(|a| a.verified == status).count();
    let tagged = songs.iter().filter(|s| !s.genres.is_empty()).count();
    emit(
        out,
        &format!(
            "confirmed: {}\ncorrected: {}\nunreviewed: {}\ntagged songs: {} of {}\nwrote {}\n",
            count(ReviewStatus::Confirmed),
            count(ReviewStatus::Corrected),
            count(ReviewStatus::Unreviewed),
            tagged,
            songs.len(),
            output.display()
        ),
    )
}
