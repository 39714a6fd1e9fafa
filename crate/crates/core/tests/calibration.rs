mod common;

use hnr_core::calibration::{
    bootstrap_coefficients, calibrate, chromosome_len, de_optimize, de_trial, decode_chromosome,
    encode_params, fitness, ga_optimize, ga_optimize_from, gaussian_mutation, loss, tournament,
    uniform_crossover, CalibrationConfig, CalibrationProblem, LossKind, ModelExport, Optimizer,
};
use hnr_core::evaluation::cv::split_labels;
use hnr_core::evaluation::{generate_synthetic, spearman, SplitStrategy, SyntheticDataset};
use hnr_core::graph::{build_graph, AttributeMatrix, GroupAssignment, LabelSet};
use hnr_core::rankers::IterOptions;
use hnr_core::seed;
use proptest::prelude::*;
use rand::Rng;

fn small_problem_data(seed: u64) -> SyntheticDataset {
    generate_synthetic(60, 2, 2, seed).unwrap()
}

fn problem<'a>(d: &'a SyntheticDataset, positions: &[usize]) -> CalibrationProblem<'a> {
    CalibrationProblem::new(
        &d.graph,
        &d.attrs,
        &d.groups,
        d.labels.sample(positions),
        LossKind::NegSpearman,
        IterOptions::default(),
    )
    .unwrap()
}

fn quick() -> CalibrationConfig {
    CalibrationConfig {
        population: 12,
        generations: 8,
        ..Default::default()
    }
}

#[test]
fn decode_examples() {
    let p = decode_chromosome(&[1.0, 0.5, 0.25], 1, 2).unwrap();
    assert_eq!(p.damping(), [0.99]);
    assert_eq!(p.attr_weights(), [vec![0.5, 0.25]]);
    let p = decode_chromosome(&[0.0, 1.0, 1.0, 0.0], 2, 1).unwrap();
    assert_eq!(p.damping(), [0.0, 0.99]);
    assert_eq!(p.attr_weights(), [vec![1.0], vec![0.0]]);
    assert!(decode_chromosome(&[0.1, 0.2], 2, 1).is_err());
}

#[test]
fn loss_examples() {
    let y = [1.0, 2.0, 4.0];
    let p = [0.1, 0.4, 0.5];
    assert_eq!(loss(&p, &y, LossKind::NegSpearman).unwrap(), 0.0);
    // normalized p = (0, 0.75, 1), y = (0, 1/3, 1)
    let l1 = (0.75 - 1.0 / 3.0) / 3.0;
    let l2 = (0.75f64 - 1.0 / 3.0).powi(2) / 3.0;
    assert!((loss(&p, &y, LossKind::L1).unwrap() - l1).abs() < 1e-15);
    assert!((loss(&p, &y, LossKind::L2).unwrap() - l2).abs() < 1e-15);
    assert_eq!(
        loss(&[3.0, 2.0, 1.0], &y, LossKind::NegSpearman).unwrap(),
        2.0
    );
    assert_eq!(
        loss(&[1.0, 1.0, 1.0], &y, LossKind::NegSpearman).unwrap(),
        1.0
    );
    assert_eq!(fitness(0.0).unwrap(), 1.0);
    assert_eq!(fitness(1.0).unwrap(), 0.5);
    assert_eq!(fitness(9.0).unwrap(), 0.1);
    assert!(fitness(-0.1).is_err());
}

#[test]
fn identical_population_single_generation() {
    let d = small_problem_data(1);
    let p = problem(&d, &(0..20).collect::<Vec<_>>());
    let genes = vec![0.4; p.gene_count()];
    let config = CalibrationConfig {
        generations: 1,
        ..quick()
    };
    let r = ga_optimize_from(&p, &config, vec![genes.clone(); config.population], 5).unwrap();
    assert_eq!(r.best_fitness, p.evaluate(&genes).unwrap().fitness);
    assert_eq!(r.fitness_history.len(), 1);
}

#[test]
fn elitism_keeps_best_fitness_monotone() {
    let d = small_problem_data(2);
    let p = problem(&d, &(0..25).collect::<Vec<_>>());
    for s in 0..10 {
        for optimizer in [Optimizer::Ga, Optimizer::De] {
            let r = calibrate(
                &p,
                &CalibrationConfig {
                    optimizer,
                    ..quick()
                },
                s,
            )
            .unwrap();
            assert!(r.fitness_history.windows(2).all(|w| w[1].best >= w[0].best));
            let re = p.evaluate(&r.best_genes).unwrap();
            assert!((re.fitness - r.best_fitness).abs() <= 1e-12);
            assert_eq!(r.best_params, p.decode(&r.best_genes).unwrap());
        }
    }
}

#[test]
fn calibration_is_deterministic() {
    let d = small_problem_data(3);
    let p = problem(&d, &(0..20).collect::<Vec<_>>());
    for optimizer in [Optimizer::Ga, Optimizer::De] {
        let config = CalibrationConfig {
            optimizer,
            ..quick()
        };
        assert_eq!(
            calibrate(&p, &config, 42).unwrap(),
            calibrate(&p, &config, 42).unwrap()
        );
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(3)
        .build()
        .unwrap();
    let threaded = pool.install(|| ga_optimize(&p, &quick(), 42).unwrap());
    assert_eq!(threaded, ga_optimize(&p, &quick(), 42).unwrap());
}

#[test]
fn de_rejects_tiny_population() {
    let d = small_problem_data(4);
    let p = problem(&d, &(0..20).collect::<Vec<_>>());
    let config = CalibrationConfig {
        population: 3,
        ..quick()
    };
    assert!(de_optimize(&p, &config, 1).is_err());
}

#[test]
fn target_loss_stops_early() {
    let d = small_problem_data(5);
    let p = problem(&d, &(0..30).collect::<Vec<_>>());
    let config = CalibrationConfig {
        target_loss: Some(2.5),
        ..quick()
    };
    let r = ga_optimize(&p, &config, 1).unwrap();
    assert_eq!(r.fitness_history.len(), 1);
}

#[test]
fn non_converging_members_get_zero_fitness() {
    let d = small_problem_data(6);
    let p = CalibrationProblem::new(
        &d.graph,
        &d.attrs,
        &d.groups,
        d.labels.sample(&(0..20).collect::<Vec<_>>()),
        LossKind::NegSpearman,
        IterOptions::new(1e-15, 2),
    )
    .unwrap();
    let e = p.evaluate(&vec![0.9; p.gene_count()]).unwrap();
    assert_eq!(e.fitness, 0.0);
    assert!(ga_optimize(&p, &quick(), 0).is_ok());
}

#[test]
fn fitness_argmax_is_loss_argmin() {
    let d = small_problem_data(7);
    let p = problem(&d, &(0..30).collect::<Vec<_>>());
    let mut rng = common::rng(7);
    let members: Vec<Vec<f64>> = (0..30)
        .map(|_| (0..p.gene_count()).map(|_| rng.random()).collect())
        .collect();
    let evals = p.evaluate_all(&members).unwrap();
    let argmax = (0..30)
        .max_by(|&a, &b| evals[a].fitness.total_cmp(&evals[b].fitness))
        .unwrap();
    let argmin = (0..30)
        .min_by(|&a, &b| evals[a].loss.total_cmp(&evals[b].loss))
        .unwrap();
    assert_eq!(evals[argmax].loss, evals[argmin].loss);
}

#[test]
fn synthetic_recovery_reaches_low_train_loss() {
    let d = generate_synthetic(300, 2, 3, 11).unwrap();
    let (train, test) = split_labels(&d.labels, 0.3, SplitStrategy::Random, 11, 0).unwrap();
    let p = problem(&d, &train);
    for optimizer in [Optimizer::Ga, Optimizer::De] {
        let r = calibrate(
            &p,
            &CalibrationConfig {
                optimizer,
                ..Default::default()
            },
            11,
        )
        .unwrap();
        assert!(r.best_loss <= 0.02, "{optimizer:?} {}", r.best_loss);
        let scores = p.rank(&r.best_params).unwrap().scores;
        let held = d.labels.sample(&test);
        let pred: Vec<f64> = held.nodes.iter().map(|&u| scores[u]).collect();
        assert!(spearman(&pred, &held.values).unwrap() >= 0.95);
    }
}

#[test]
fn degenerate_bootstrap_has_zero_width() {
    let g = build_graph([
        ("a", "b", 1.0),
        ("b", "c", 2.0),
        ("c", "a", 1.0),
        ("c", "d", 1.0),
    ])
    .unwrap();
    let attrs = AttributeMatrix::from_standardized(
        &[vec![0.1], vec![0.9], vec![0.4], vec![0.6]],
        vec!["x".into()],
    )
    .unwrap();
    let groups = GroupAssignment::single(4);
    // one labeled node repeated; every resample is the same multiset
    let labels = LabelSet::new(vec![(0, 1.0), (1, 2.0), (2, 3.0)], 4).unwrap();
    let mut train = labels.sample(&[0, 1, 2]);
    train.nodes = vec![0, 1, 2, 0, 1, 2];
    train.values = vec![1.0, 2.0, 3.0, 1.0, 2.0, 3.0];
    let p = CalibrationProblem::new(
        &g,
        &attrs,
        &groups,
        train,
        LossKind::L2,
        IterOptions::default(),
    )
    .unwrap();
    let config = CalibrationConfig {
        population: 8,
        generations: 4,
        ..Default::default()
    };
    let b = bootstrap_coefficients(&p, &config, 10, 3).unwrap();
    assert_eq!(b.resamples, 10);
    for iv in b.damping.iter().chain(b.attr_weights.iter().flatten()) {
        assert!(iv.lo <= iv.hi);
    }
}

#[test]
fn bootstrap_intervals_stay_in_box() {
    let d = small_problem_data(8);
    let p = problem(&d, &(0..25).collect::<Vec<_>>());
    let b = bootstrap_coefficients(&p, &quick(), 12, 8).unwrap();
    assert_eq!(b.damping.len(), d.groups.k());
    for iv in &b.damping {
        assert!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 0.99);
    }
    for iv in b.attr_weights.iter().flatten() {
        assert!(0.0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= 1.0);
    }
    assert_eq!(b, bootstrap_coefficients(&p, &quick(), 12, 8).unwrap());
    assert!(bootstrap_coefficients(&p, &quick(), 9, 8).is_err());
}

#[test]
fn bootstrap_covers_hidden_damping() {
    let d = generate_synthetic(300, 2, 3, 21).unwrap();
    let (train, _) = split_labels(&d.labels, 0.3, SplitStrategy::Random, 21, 0).unwrap();
    let p = problem(&d, &train);
    let b = bootstrap_coefficients(&p, &CalibrationConfig::default().reduced(), 50, 21).unwrap();
    for (k, iv) in b.damping.iter().enumerate() {
        assert!(
            iv.contains(d.hidden.damping()[k]),
            "group {k}: {iv:?} vs {}",
            d.hidden.damping()[k]
        );
    }
}

#[test]
fn model_export_round_trip() {
    let d = small_problem_data(9);
    let p = problem(&d, &(0..20).collect::<Vec<_>>());
    let r = ga_optimize(&p, &quick(), 9).unwrap();
    let ids = d.graph.node_ids().to_vec();
    let export = ModelExport::from_result(
        &r,
        d.attrs.names().to_vec(),
        &ids,
        d.groups.as_slice(),
        1e-9,
        1000,
    );
    let json = export.to_json().unwrap();
    let back = ModelExport::from_json(&json).unwrap();
    assert_eq!(back.params().unwrap(), r.best_params);
    assert_eq!(back.to_json().unwrap(), json);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in [
        "groups",
        "damping",
        "attr_weights",
        "attribute_names",
        "loss",
        "best_fitness",
        "fitness_history",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["loss"], "neg_spearman");
}

proptest! {
    #[test]
    fn encode_decode_round_trip(k in 1usize..5, m in 1usize..8, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let params = common::random_params(&mut rng, k, m);
        let genes = encode_params(&params);
        prop_assert_eq!(genes.len(), chromosome_len(k, m));
        let back = decode_chromosome(&genes.genes, k, m).unwrap();
        for (a, b) in back.damping().iter().zip(params.damping()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
        prop_assert_eq!(back.attr_weights(), params.attr_weights());
    }

    #[test]
    fn operators_keep_genes_legal(seed in any::<u64>(), len in 2usize..20, sigma in 0.0f64..2.0) {
        let mut rng = seed::rng(seed, 0, 0);
        let pop: Vec<Vec<f64>> = (0..6).map(|_| (0..len).map(|_| rng.random()).collect()).collect();
        let (mut a, b) = uniform_crossover(&mut rng, &pop[0], &pop[1], 0.9);
        gaussian_mutation(&mut rng, &mut a, 0.5, sigma);
        let t = de_trial(&mut rng, &pop, 2, 0.7, 0.9);
        for g in a.iter().chain(&b).chain(&t) {
            prop_assert!((0.0..=1.0).contains(g));
        }
        let fit: Vec<f64> = (0..6).map(|_| rng.random()).collect();
        prop_assert!(tournament(&mut rng, &fit, 3) < 6);
    }

    #[test]
    fn fitness_is_strictly_decreasing(a in 0.0f64..1e6, b in 0.0f64..1e6) {
        prop_assume!(a < b);
        prop_assert!(fitness(a).unwrap() > fitness(b).unwrap());
    }
}
