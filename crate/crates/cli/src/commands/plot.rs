use std::collections::BTreeSet;
use std::io::Write;

use lyricav::corpus::{length_stats, load_corpus};
use lyricav::pairs::{load_pairs, original_id};
use lyricav::GenreTag;

use super::{bounds_arg, emit, require, write_file};
use crate::config::RunConfig;
use crate::{svg, Failure, PlotArgs, PlotKind};

pub fn plot(args: PlotArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
    let output = args
        .output
        .unwrap_or_else(|| config.paths.reports.join(format!("{}.svg", args.kind.as_str())));
    let explicit_bounds = bounds_arg(args.bounds)?;
    if args.bin_width == 0 {
        return Err(Failure::invalid("--bin-width must be at least 1"));
    }

    // Augmented copies duplicate their originals; only originals are charted.
    let mut songs: Vec<_> = load_corpus(&corpus)?
        .into_iter()
        .filter(|s| original_id(&s.id) == s.id)
        .collect();
    if let Some(path) = &args.pairs {
        let ids: BTreeSet<String> = load_pairs(path)?
            .iter()
            .flat_map(|p| [original_id(&p.a_id).to_string(), original_id(&p.b_id).to_string()])
            .collect();
        songs.retain(|s| ids.contains(&s.id));
        if songs.is_empty() {
            return Err(Failure::invalid(format!(
                "no song in {} appears in {}",
                corpus.display(),
                path.display()
            )));
        }
    }

    let chart = match args.kind {
        PlotKind::LengthBox | PlotKind::LengthHist => {
            let stats = length_stats(&songs, config.stats.quantile_method)?;
            let fences = explicit_bounds.unwrap_or_else(|| stats.bounds());
            let lengths: Vec<usize> = songs.iter().map(|s| s.length).collect();
            let title = format!("Song length distribution ({} songs)", songs.len());
            if args.kind == PlotKind::LengthBox {
                svg::length_box(&title, &lengths, stats.q1, stats.median, stats.q3, fences)
            } else {
                svg::length_hist(&title, &lengths, args.bin_width, fences)
            }
        }
        PlotKind::AuthorsPerGenre => {
            let bars: Vec<(String, usize)> = GenreTag::ALL
                .iter()
                .map(|&genre| {
                    let authors: BTreeSet<&str> = songs
                        .iter()
                        .filter(|s| s.genres.contains(&genre))
                        .flat_map(|s| s.lyricists.iter().map(String::as_str))
                        .collect();
                    (genre.en_name().to_string(), authors.len())
                })
                .collect();
            svg::bar_chart("Unique lyricists per genre", "lyricists", &bars)
        }
    };
    write_file(&output, &chart)?;
    emit(out, &format!("wrote {}\n", output.display()))
}
