use std::collections::{HashMap, HashSet};

use hnr_core::evaluation::sweep::{default_fractions, sample_size_sweep, write_sweep_csv};
use hnr_core::evaluation::{
    cross_validate, head_tail_breaks, ht_level_report, CvOptions, PartitionOn, Ranker,
    SplitStrategy,
};
use hnr_core::graph::{io, LabelSet};
use hnr_core::Error;
use serde::Serialize;

use crate::args::{CvArgs, DataArgs, EvaluateArgs, HtArgs, PartitionArg, SplitArg, SweepArgs};
use crate::error::CliError;
use crate::rank::{load_model, stem};
use crate::run::Run;

pub fn evaluate(mut run: Run, args: &EvaluateArgs) -> Result<(), CliError> {
    run.set("evaluate", args);
    let ranks_bytes = run.read(&args.ranks)?;
    let ranks = io::read_scores(ranks_bytes.as_slice(), &args.ranks.display().to_string())?;
    let label_bytes = run.read(&args.labels)?;
    let label_name = args.labels.display().to_string();
    let (column, labels) = io::read_values(label_bytes.as_slice(), &label_name)?;
    if column != "label" {
        return Err(Error::Parse {
            path: label_name,
            line: 1,
            message: "expected header `node_id,label`".into(),
        }
        .into());
    }
    let excluded: HashSet<String> = match &args.held_out {
        Some(path) => load_model(&mut run, path)?
            .train_node_ids
            .into_iter()
            .collect(),
        None => HashSet::new(),
    };

    let index: HashMap<&str, usize> = ranks
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (id.as_str(), i))
        .collect();
    if index.len() != ranks.len() {
        return Err(Error::DuplicateNodes {
            context: args.ranks.display().to_string(),
            ids: duplicates(ranks.iter().map(|(id, _)| id.as_str())),
        }
        .into());
    }
    let unranked = labels
        .iter()
        .filter(|(id, _)| !index.contains_key(id.as_str()))
        .count();
    if unranked > 0 {
        run.info(format!(
            "evaluate: {unranked} labeled nodes are not in the ranking and are skipped"
        ));
    }
    let entries: Vec<(usize, f64)> = labels
        .iter()
        .filter(|(id, _)| !excluded.contains(id))
        .filter_map(|(id, v)| index.get(id.as_str()).map(|&i| (i, *v)))
        .collect();
    let labels = LabelSet::new(entries, ranks.len())?;
    let scores: Vec<f64> = ranks.iter().map(|(_, s)| *s).collect();
    let on = match args.partition_on {
        PartitionArg::Labels => PartitionOn::Labels,
        PartitionArg::Scores => PartitionOn::Scores,
    };
    let report = ht_level_report(&scores, &labels, on)?;
    run.info(format!(
        "spearman {:.6} over {} nodes",
        report.overall_spearman, report.n_evaluated
    ));
    write_json(&mut run, &args.output, &report)?;
    run.finish(stem(&args.output))
}

fn duplicates<'a>(ids: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = HashSet::new();
    ids.filter(|id| !seen.insert(*id))
        .map(str::to_string)
        .collect()
}

fn write_json(run: &mut Run, name: &str, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
    text.push('\n');
    run.write(name, text.as_bytes())?;
    Ok(())
}

struct CvInputs {
    graph: hnr_core::WeightedDigraph64,
    attrs: hnr_core::AttributeMatrix64,
    groups: hnr_core::graph::GroupAssignment,
    labels: LabelSet,
}

fn load(run: &mut Run, data: &DataArgs) -> Result<CvInputs, CliError> {
    let graph = run.graph(&data.edges)?;
    let attrs = run.attributes(&data.attrs, &graph)?;
    let labels = run.labels(&data.labels, &graph)?;
    let groups = run.groups(&data.groups, data.levels, &graph)?;
    Ok(CvInputs {
        graph,
        attrs,
        groups,
        labels,
    })
}

fn cv_options(
    model: &str,
    repeats: usize,
    split: SplitArg,
    train_fraction: f64,
) -> Result<CvOptions, CliError> {
    let ranker: Ranker = model
        .parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))?;
    if repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    Ok(CvOptions {
        train_fraction,
        repeats,
        split: match split {
            SplitArg::Random => SplitStrategy::Random,
            SplitArg::Stratified => SplitStrategy::StratifiedHt,
        },
        ranker,
    })
}

fn check_fraction(f: f64) -> Result<(), CliError> {
    if f > 0.0 && f < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "training fraction {f} outside (0, 1)"
        )))
    }
}

pub fn cv(mut run: Run, args: &CvArgs) -> Result<(), CliError> {
    run.set("cv", args);
    let config = run.calibration_config(&args.data)?;
    check_fraction(args.train_frac)?;
    let options = cv_options(&args.model, args.repeats, args.split, args.train_frac)?;
    let d = load(&mut run, &args.data)?;
    let summary = cross_validate(
        &d.graph, &d.attrs, &d.groups, &d.labels, &config, &options, run.seed,
    )?;
    run.info(format!(
        "{}: mean spearman {:.6} (sd {:.6}) over {} repeats, train size {}",
        summary.model, summary.mean, summary.sd, summary.repeats, summary.train_size
    ));
    write_json(&mut run, &args.output, &summary)?;
    run.finish(stem(&args.output))
}

pub fn sweep(mut run: Run, args: &SweepArgs) -> Result<(), CliError> {
    run.set("sweep", args);
    let config = run.calibration_config(&args.data)?;
    let fractions = args.fractions.clone().unwrap_or_else(default_fractions);
    if fractions.is_empty() {
        return Err(CliError::Usage("--fractions is empty".into()));
    }
    fractions.iter().try_for_each(|&f| check_fraction(f))?;
    let options = cv_options(&args.model, args.repeats, args.split, fractions[0])?;
    let d = load(&mut run, &args.data)?;
    let points = sample_size_sweep(
        &d.graph, &d.attrs, &d.groups, &d.labels, &config, &fractions, &options, run.seed,
    )?;
    let mut out = Vec::new();
    write_sweep_csv(&mut out, &points).map_err(|source| CliError::Output {
        path: args.output.clone(),
        source,
    })?;
    run.write(&args.output, &out)?;
    run.finish(stem(&args.output))
}

#[derive(Serialize)]
struct HtLevelOut<'a> {
    level: usize,
    mean: f64,
    head: Vec<&'a str>,
    tail: Vec<&'a str>,
}

#[derive(Serialize)]
struct HtOut<'a> {
    column: String,
    cap: f64,
    levels: Vec<HtLevelOut<'a>>,
}

pub fn htbreaks(mut run: Run, args: &HtArgs) -> Result<(), CliError> {
    run.set("htbreaks", args);
    if !(args.cap > 0.0 && args.cap <= 1.0) {
        return Err(CliError::Usage("--cap must lie in (0, 1]".into()));
    }
    let bytes = run.read(&args.values)?;
    let (column, rows) = io::read_values(bytes.as_slice(), &args.values.display().to_string())?;
    let values: Vec<f64> = rows.iter().map(|(_, v)| *v).collect();
    let partition = head_tail_breaks(&values, args.cap)?;
    let ids = |idx: &[usize]| idx.iter().map(|&i| rows[i].0.as_str()).collect::<Vec<_>>();
    let out = HtOut {
        column,
        cap: args.cap,
        levels: partition
            .levels
            .iter()
            .map(|l| HtLevelOut {
                level: l.level,
                mean: l.mean,
                head: ids(&l.head),
                tail: ids(&l.tail),
            })
            .collect(),
    };
    run.info(format!(
        "htbreaks: {} values, depth {}",
        values.len(),
        partition.depth()
    ));
    write_json(&mut run, &args.output, &out)?;
    run.finish(stem(&args.output))
}
