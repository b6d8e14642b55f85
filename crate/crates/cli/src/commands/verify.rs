use std::collections::HashMap;
use std::io::Write;

use lyricav::contrastive::{load_model, pair_similarities, save_history_csv, save_model, train as fit, ModelFile};
use lyricav::corpus::load_corpus;
use lyricav::evaluation::{group_report, predict_at, render_report, ReportFormat};
use lyricav::pairs::{load_pairs, unordered_key};
use lyricav::zeroshot::{load_verdicts, run_zeroshot, save_verdicts, VerdictRecord, ZeroShotError};

use super::corpus::open_gateway;
use super::{emit, ensure_parent, require, write_file};
use crate::config::RunConfig;
use crate::{EvaluateArgs, Failure, FormatChoice, TrainArgs, ZeroshotArgs};

pub fn zeroshot(args: ZeroshotArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let pairs_path = require(args.pairs, config.paths.pairs.as_ref(), "--pairs", "paths.pairs")?;
    let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
    let output = args
        .output
        .unwrap_or_else(|| config.paths.reports.join("verdicts.jsonl"));
    let language = args.language.map(Into::into).unwrap_or(config.zeroshot.language);

    let pairs = load_pairs(&pairs_path)?;
    let songs = load_corpus(&corpus)?;
    let gateway = open_gateway(config, args.replay.as_deref(), args.log, "zeroshot_exchanges.jsonl")?;
    let results = run_zeroshot(&pairs, &songs, &gateway, language);

    let mut records = Vec::new();
    let mut failures = 0;
    let mut gateway_failed = false;
    for (pair, result) in pairs.iter().zip(&results) {
        match result {
            Ok(verdict) => records.push(VerdictRecord::from(verdict)),
            Err(e) => {
                failures += 1;
                gateway_failed |= matches!(e, ZeroShotError::Gateway(_));
                eprintln!("warning: pair {} / {}: {e}", pair.a_id, pair.b_id);
            }
        }
    }
    save_verdicts(&records, &output)?;
    emit(
        out,
        &format!(
            "verdicts: {} of {}\nwrote {}\n",
            records.len(),
            pairs.len(),
            output.display()
        ),
    )?;
    if failures == 0 {
        return Ok(());
    }
    let message = format!("{failures} of {} pairs got no verdict", pairs.len());
    Err(if gateway_failed {
        Failure::Io(message)
    } else {
        Failure::Invalid(message)
    })
}

pub fn train(args: TrainArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let pairs_path = require(args.pairs, config.paths.pairs.as_ref(), "--pairs", "paths.pairs")?;
    let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
    let model_out = args
        .model_out
        .unwrap_or_else(|| config.paths.models.join("contrastive.json"));
    let history_out = args
        .history_out
        .unwrap_or_else(|| config.paths.models.join("history.csv"));
    let mut training = config.training.clone();
    if let Some(v) = args.epochs {
        training.epochs = v;
    }
    if let Some(v) = args.learning_rate {
        training.learning_rate = v;
    }
    if let Some(v) = args.batch_size {
        training.batch_size = v;
    }
    if let Some(v) = args.seed {
        training.seed = v;
    }
    training.validate()?;

    let pairs = load_pairs(&pairs_path)?;
    let songs = load_corpus(&corpus)?;
    let (params, model) = fit(&pairs, &songs, config.encoder.init(), &training)?;
    save_model(&ModelFile::new(params, &model, training), &model_out)?;
    ensure_parent(&history_out)?;
    save_history_csv(&model.history, &history_out)?;
    emit(
        out,
        &format!(
            "threshold: {}\nbest validation macro F1: {:.4}\nevaluations: {}\nwrote {}\nwrote {}\n",
            model.threshold,
            model.best_validation_macro_f1,
            model.history.len(),
            model_out.display(),
            history_out.display()
        ),
    )
}

pub fn evaluate(args: EvaluateArgs, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let pairs_path = require(args.pairs, config.paths.pairs.as_ref(), "--pairs", "paths.pairs")?;
    let format = match args.format {
        Some(FormatChoice::Markdown) => ReportFormat::Markdown,
        Some(FormatChoice::Csv) => ReportFormat::Csv,
        None => config.report.format,
    };
    let pairs = load_pairs(&pairs_path)?;

    let (scored, predictions) = if let Some(model_path) = &args.model {
        let corpus = require(args.corpus, config.paths.corpus.as_ref(), "--corpus", "paths.corpus")?;
        let model = load_model(model_path)?;
        let songs = load_corpus(&corpus)?;
        let similarities = pair_similarities(&model.encoder, &pairs, &songs)?;
        let predictions = similarities.iter().map(|&s| predict_at(s, model.threshold)).collect();
        (pairs, predictions)
    } else {
        let path = args.verdicts.as_ref().expect("clap requires --model or --verdicts");
        let verdicts: HashMap<(String, String), u8> = load_verdicts(path)?
            .into_iter()
            .map(|v| (unordered_key(&v.a_id, &v.b_id), v.predicted))
            .collect();
        let total = pairs.len();
        let (scored, predictions): (Vec<_>, Vec<_>) = pairs
            .into_iter()
            .filter_map(|p| verdicts.get(&p.key()).map(|&v| (p, v)))
            .unzip();
        if scored.len() < total {
            eprintln!(
                "warning: {} of {total} pairs have no verdict and are skipped",
                total - scored.len()
            );
        }
        if scored.is_empty() {
            return Err(Failure::invalid(format!(
                "no verdict in {} matches a pair",
                path.display()
            )));
        }
        (scored, predictions)
    };

    let report = group_report(&scored, &predictions)?;
    let rendered = render_report(&report, format);
    if let Some(path) = &args.output {
        write_file(path, &rendered)?;
    }
    emit(out, &rendered)
}
