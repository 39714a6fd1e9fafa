use std::collections::HashMap;
use std::path::Path;

use hnr_core::calibration::ModelExport;
use hnr_core::graph::{assign_groups_default, io, GroupAssignment};
use hnr_core::rankers::{
    attrirank, expected_force, expected_force_all, hnr_rank, pagerank_with, weighted_pagerank_with,
    AttriRankConfig, IterOptions, DAMPING_CAP, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use hnr_core::{Error, RankVector64, WeightedDigraph64};

use crate::args::{Algo, RankArgs};
use crate::error::{missing, CliError};
use crate::run::Run;

pub fn run(mut run: Run, args: &RankArgs) -> Result<(), CliError> {
    run.set("rank", args);
    let algo = algo_name(args.algo);
    if let Some(tol) = args.tol {
        if !(tol > 0.0) {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
    }
    if args.max_iter == Some(0) {
        return Err(CliError::Usage("--max-iter must be at least 1".into()));
    }
    if args.node.is_some() && args.algo != Algo::Exf {
        return Err(CliError::Usage("--node only applies to --algo exf".into()));
    }
    let graph = run.graph(&args.edges)?;
    let iter = |tol: f64, max_iter: usize| {
        IterOptions::new(args.tol.unwrap_or(tol), args.max_iter.unwrap_or(max_iter))
    };

    if args.algo == Algo::Exf {
        return exf(run, args, &graph);
    }
    let ranks: RankVector64 = match args.algo {
        Algo::Pagerank | Algo::Wpr => {
            if !(0.0..=DAMPING_CAP).contains(&args.damping) {
                return Err(CliError::Usage(format!(
                    "--damping must lie in [0, {DAMPING_CAP}]"
                )));
            }
            let opts = iter(DEFAULT_TOL, DEFAULT_MAX_ITER);
            if args.algo == Algo::Pagerank {
                pagerank_with(&graph, args.damping, opts)?
            } else {
                weighted_pagerank_with(&graph, args.damping, opts)?
            }
        }
        Algo::Attrirank => {
            let path = args
                .attrs
                .as_deref()
                .ok_or_else(|| missing("attrs", algo))?;
            let attrs = run.attributes(path, &graph)?;
            if args.samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            if let Some(g) = args.gamma {
                if !(g > 0.0) {
                    return Err(CliError::Usage("--gamma must be positive".into()));
                }
            }
            let defaults = AttriRankConfig::<f64>::default();
            let config = AttriRankConfig {
                gamma: args.gamma,
                damping_samples: args.samples,
                iter: iter(defaults.iter.tol, defaults.iter.max_iter),
            };
            attrirank(&graph, &attrs, config, run.seed)?
        }
        Algo::Hnr => {
            let attrs_path = args
                .attrs
                .as_deref()
                .ok_or_else(|| missing("attrs", algo))?;
            let params_path = args
                .params
                .as_deref()
                .ok_or_else(|| missing("params", algo))?;
            let attrs = run.attributes(attrs_path, &graph)?;
            let model = load_model(&mut run, params_path)?;
            if !model.attribute_names.is_empty() && model.attribute_names != attrs.names() {
                return Err(Error::DimensionMismatch(format!(
                    "model attributes [{}] differ from attribute file columns [{}]",
                    model.attribute_names.join(", "),
                    attrs.names().join(", ")
                ))
                .into());
            }
            let params = model.params()?;
            let groups = match args.groups.as_deref() {
                Some("auto") => auto_groups(&graph, model.groups)?,
                Some(path) => {
                    let bytes = run.read(Path::new(path))?;
                    io::read_groups(bytes.as_slice(), path, &graph)?
                }
                None if !model.node_groups.is_empty() => {
                    stored_groups(&graph, &model, params_path)?
                }
                None => auto_groups(&graph, model.groups)?,
            };
            hnr_rank(
                &graph,
                &attrs,
                &groups,
                &params,
                iter(model.tol, model.max_iter),
            )?
        }
        Algo::Exf => unreachable!(),
    };
    run.info(format!(
        "{algo}: {} nodes, {} iterations, residual {:e}",
        graph.node_count(),
        ranks.iterations,
        ranks.residual
    ));
    let mut out = Vec::new();
    io::write_ranks(&mut out, &graph, &ranks)?;
    let name = args.output.clone().unwrap_or_else(|| "ranks.csv".into());
    run.write(&name, &out)?;
    run.finish(stem(&name))
}

fn exf(mut run: Run, args: &RankArgs, graph: &WeightedDigraph64) -> Result<(), CliError> {
    let rows: Vec<(String, Option<f64>)> = match &args.node {
        Some(id) => {
            let i = graph.resolve_ids([id.as_str()], "--node")?[0];
            vec![(id.clone(), Some(expected_force(graph, i)?))]
        }
        None => {
            let values = expected_force_all(graph);
            let missing = values.iter().filter(|v| v.is_none()).count();
            if missing > 0 {
                run.info(format!(
                    "exf: {missing} nodes lack a two-step neighborhood; left empty"
                ));
            }
            graph.node_ids().iter().cloned().zip(values).collect()
        }
    };
    let mut out = Vec::new();
    io::write_values(&mut out, "exf", &rows)?;
    let name = args.output.clone().unwrap_or_else(|| "exf.csv".into());
    run.write(&name, &out)?;
    run.finish(stem(&name))
}

pub fn load_model(run: &mut Run, path: &Path) -> Result<ModelExport, CliError> {
    let bytes = run.read(path)?;
    let text = String::from_utf8_lossy(&bytes);
    ModelExport::from_json(&text).map_err(|e| {
        CliError::Core(Error::Parse {
            path: path.display().to_string(),
            line: 0,
            message: e.to_string(),
        })
    })
}

fn auto_groups(graph: &WeightedDigraph64, k: usize) -> Result<GroupAssignment, CliError> {
    let groups = if k > 1 {
        assign_groups_default(graph, k - 1)?
    } else {
        GroupAssignment::single(graph.node_count())
    };
    if groups.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "automatic grouping yields {} groups, model has {k}",
            groups.k()
        ))
        .into());
    }
    Ok(groups)
}

fn stored_groups(
    graph: &WeightedDigraph64,
    model: &ModelExport,
    path: &Path,
) -> Result<GroupAssignment, CliError> {
    let stored: HashMap<&str, usize> = model
        .node_groups
        .iter()
        .map(|(id, g)| (id.as_str(), *g))
        .collect();
    let context = path.display().to_string();
    let missing: Vec<String> = graph
        .node_ids()
        .iter()
        .filter(|id| !stored.contains_key(id.as_str()))
        .cloned()
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingNodes {
            context,
            ids: missing,
        }
        .into());
    }
    let unknown: Vec<String> = model
        .node_groups
        .iter()
        .filter(|(id, _)| graph.node_index(id).is_none())
        .map(|(id, _)| id.clone())
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownNodes {
            context,
            ids: unknown,
        }
        .into());
    }
    let group_of = graph
        .node_ids()
        .iter()
        .map(|id| stored[id.as_str()])
        .collect();
    Ok(GroupAssignment::new(group_of)?)
}

fn algo_name(algo: Algo) -> &'static str {
    match algo {
        Algo::Pagerank => "pagerank",
        Algo::Wpr => "wpr",
        Algo::Attrirank => "attrirank",
        Algo::Exf => "exf",
        Algo::Hnr => "hnr",
    }
}

pub fn stem(name: &str) -> &str {
    let file = name.rsplit(['/', '\\']).next().unwrap_or(name);
    file.rsplit_once('.')
        .map(|(s, _)| s)
        .filter(|s| !s.is_empty())
        .unwrap_or(file)
}
