use std::fmt::Write as _;

use hnr_core::evaluation::synth::reference_iter;
use hnr_core::evaluation::{generate_synthetic_with, SynthConfig};
use hnr_core::rankers::DAMPING_CAP;
use hnr_core::Error;
use serde::Serialize;

use crate::args::SynthArgs;
use crate::error::CliError;
use crate::run::Run;

/// Hidden parameters in the model-file layout, so `rank --algo hnr --params`
/// reproduces the noise-free scores.
#[derive(Serialize)]
struct Hidden<'a> {
    groups: usize,
    damping: &'a [f64],
    attr_weights: &'a [Vec<f64>],
    attribute_names: &'a [String],
    damping_cap: f64,
    tol: f64,
    max_iter: usize,
    noise_sd: f64,
    node_groups: Vec<(&'a str, usize)>,
}

pub fn run(mut run: Run, args: &SynthArgs) -> Result<(), CliError> {
    run.set("synth", args);
    let config = SynthConfig {
        n_nodes: args.nodes,
        k: args.groups,
        m: args.attrs,
        noise_sd: args.noise,
        out_degree: args.out_degree,
        reciprocity: args.reciprocity,
        hidden: None,
    };
    let d = generate_synthetic_with(&config, run.seed).map_err(|e| match e {
        Error::InvalidParameter(msg) => CliError::Usage(msg),
        other => other.into(),
    })?;
    let g = &d.graph;

    let mut edges = String::from("source,target,weight\n");
    for &(s, t, w) in g.edges() {
        writeln!(edges, "{},{},{w}", g.node_id(s), g.node_id(t)).unwrap();
    }
    let mut attrs = format!("node_id,{}\n", d.attrs.names().join(","));
    for (i, row) in d.raw_attributes.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(attrs, "{},{}", g.node_id(i), cells.join(",")).unwrap();
    }
    let mut labels = String::from("node_id,label\n");
    for (i, y) in d.labels.iter() {
        writeln!(labels, "{},{y}", g.node_id(i)).unwrap();
    }
    let mut groups = String::from("node_id,group\n");
    for (i, k) in d.groups.as_slice().iter().enumerate() {
        writeln!(groups, "{},{k}", g.node_id(i)).unwrap();
    }
    let iter = reference_iter();
    let hidden = Hidden {
        groups: d.hidden.groups(),
        damping: d.hidden.damping(),
        attr_weights: d.hidden.attr_weights(),
        attribute_names: d.attrs.names(),
        damping_cap: DAMPING_CAP,
        tol: iter.tol,
        max_iter: iter.max_iter,
        noise_sd: args.noise,
        node_groups: (0..g.node_count())
            .map(|i| (g.node_id(i), d.groups.group_of(i)))
            .collect(),
    };
    let mut hidden_json = serde_json::to_string_pretty(&hidden).map_err(Error::from)?;
    hidden_json.push('\n');

    run.info(format!(
        "synth: {} nodes, {} edges, K = {}, m = {}",
        g.node_count(),
        g.edges().len(),
        d.groups.k(),
        args.attrs
    ));
    run.write("edges.csv", edges.as_bytes())?;
    run.write("attrs.csv", attrs.as_bytes())?;
    run.write("labels.csv", labels.as_bytes())?;
    run.write("groups.csv", groups.as_bytes())?;
    run.write("hidden.json", hidden_json.as_bytes())?;
    run.finish("synth")
}
