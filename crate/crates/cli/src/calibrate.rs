use hnr_core::calibration::{bootstrap_coefficients, calibrate, CalibrationProblem, ModelExport};
use hnr_core::evaluation::{split_labels, SplitStrategy};
use hnr_core::Error;

use crate::args::CalibrateArgs;
use crate::error::CliError;
use crate::rank::stem;
use crate::run::Run;

pub fn run(mut run: Run, args: &CalibrateArgs) -> Result<(), CliError> {
    run.set("calibrate", args);
    let config = run.calibration_config(&args.data)?;
    if let Some(b) = args.bootstrap {
        if b < 10 {
            return Err(CliError::Usage(
                "--bootstrap needs at least 10 resamples".into(),
            ));
        }
    }
    if let Some(f) = args.train_frac {
        if !(f > 0.0 && f < 1.0) {
            return Err(CliError::Usage("--train-frac must lie in (0, 1)".into()));
        }
    }
    let graph = run.graph(&args.data.edges)?;
    let attrs = run.attributes(&args.data.attrs, &graph)?;
    let labels = run.labels(&args.data.labels, &graph)?;
    let groups = run.groups(&args.data.groups, args.data.levels, &graph)?;
    run.info(format!(
        "calibrate: {} nodes, {} labels, K = {}, m = {}",
        graph.node_count(),
        labels.len(),
        groups.k(),
        attrs.cols()
    ));

    let train: Vec<usize> = match args.train_frac {
        Some(f) => split_labels(&labels, f, SplitStrategy::Random, run.seed, 0)?.0,
        None => (0..labels.len()).collect(),
    };
    let problem = CalibrationProblem::new(
        &graph,
        &attrs,
        &groups,
        labels.sample(&train),
        config.loss,
        config.iter_options(),
    )?;
    let mut result = calibrate(&problem, &config, run.seed)?;
    if !result.best_loss.is_finite() {
        return Err(Error::NoConvergence {
            iterations: config.max_iter,
            residual: f64::NAN,
            partial: Vec::new(),
        }
        .into());
    }
    run.info(format!(
        "best {} loss {:.6} after {} generations",
        config.loss.name(),
        result.best_loss,
        result.fitness_history.len()
    ));
    if let Some(b) = args.bootstrap {
        result.bootstrap = Some(bootstrap_coefficients(
            &problem,
            &config.reduced(),
            b,
            run.seed,
        )?);
    }
    let export = ModelExport::from_result(
        &result,
        attrs.names().to_vec(),
        graph.node_ids(),
        groups.as_slice(),
        config.tol,
        config.max_iter,
    );
    let mut text = export.to_json()?;
    text.push('\n');
    run.write(&args.output, text.as_bytes())?;
    run.finish(stem(&args.output))
}
