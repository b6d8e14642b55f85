use std::io::Write;

use lyricav::corpus::{load_corpus, save_corpus};
use lyricav::pairs::{
    assert_unseen_authors, augment_songs, build_pairs as build, pairset_stats, save_pairs, split_songs, PairSetSpec,
};
use lyricav::Split;

use super::{emit, require};
use crate::config::RunConfig;
use crate::{BuildPairsArgs, Failure, SplitChoice};

fn load_spec(args: &BuildPairsArgs, config: &RunConfig) -> Result<PairSetSpec, Failure> {
    let mut spec = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            toml::from_str::<PairSetSpec>(&text)
                .map_err(|e| Failure::invalid(format!("{}: {}", path.display(), e.message())))?
        }
        None => config.pairset.clone(),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(total) = args.total_pairs {
        spec.total_pairs = total;
    }
    spec.validate()?;
    Ok(spec)
}

pub fn build_pairs(args: BuildPairsArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let corpus = require(
        args.corpus.clone(),
        config.paths.labeled.as_ref().or(config.paths.corpus.as_ref()),
        "--corpus",
        "paths.labeled or paths.corpus",
    )?;
    let output = require(
        args.output.clone(),
        config.paths.pairs.as_ref(),
        "--output",
        "paths.pairs",
    )?;
    let spec = load_spec(&args, config)?;
    if args.augment && args.songs_out.is_none() {
        return Err(Failure::invalid(
            "--augment needs --songs-out so the augmented songs can be found later",
        ));
    }
    let train_fraction = args.train_fraction.unwrap_or(config.split.train_fraction);
    let split_seed = args.split_seed.unwrap_or(config.split.seed);

    let songs = load_corpus(&corpus)?;
    let (split, mut selected) = match args.split {
        SplitChoice::Train | SplitChoice::Test1 => {
            let (train, test1) = split_songs(&songs, train_fraction, split_seed)?;
            if args.split == SplitChoice::Train {
                (Split::Train, train)
            } else {
                (Split::Test1, test1)
            }
        }
        SplitChoice::Test2 => {
            let reference = args
                .reference
                .as_ref()
                .ok_or_else(|| Failure::invalid("--split test2 needs --reference with the seen-author corpus"))?;
            let seen = load_corpus(reference)?;
            if let Err(overlap) = assert_unseen_authors(&songs, &seen) {
                return Err(Failure::invalid(format!(
                    "test2 lyricists also appear in {}: {}",
                    reference.display(),
                    overlap.join(", ")
                )));
            }
            (Split::Test2, songs)
        }
    };
    for song in &mut selected {
        song.split = split;
    }
    if args.augment {
        selected = augment_songs(&selected, &config.augmentation)?;
    }
    if let Some(path) = &args.songs_out {
        save_corpus(&selected, path)?;
    }

    let built = build(&selected, &spec, split)?;
    for warning in &built.warnings {
        eprintln!("warning: {warning}");
    }
    save_pairs(&built.pairs, &output)?;
    let stats = pairset_stats(&built.pairs, &selected)?;
    emit(
        out,
        &format!(
            "split: {split} ({} songs)\npairs: {}\n\n{}",
            selected.len(),
            built.pairs.len(),
            stats.to_markdown()
        ),
    )
}
