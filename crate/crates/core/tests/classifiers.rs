use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uzsent_core::classifiers::tree::{grow_tree, GrowParams};
use uzsent_core::classifiers::{fit_reptree_diagnostic, ModelState};
use uzsent_core::synth::two_gaussians;
use uzsent_core::{train, Algorithm, ClassifierSpec, Dataset, Error, Label, Schema};

fn spec(a: Algorithm) -> ClassifierSpec {
    ClassifierSpec::new(a, 17)
}

fn scaled(data: &Dataset, feature: usize, c: f64) -> Dataset {
    let rows = data
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r[feature] *= c;
            r
        })
        .collect();
    Dataset::new(data.schema().clone(), rows, data.labels().to_vec()).unwrap()
}

#[test]
fn training_is_deterministic() {
    let d = two_gaussians(120, 4, 1.5, 2);
    for a in Algorithm::ALL {
        let m1 = serde_json::to_string(&train(&spec(a), &d).unwrap()).unwrap();
        let m2 = serde_json::to_string(&train(&spec(a), &d).unwrap()).unwrap();
        assert_eq!(m1, m2, "{a}");
    }
}

#[test]
fn forest_ignores_thread_count() {
    let d = two_gaussians(150, 5, 1.0, 4);
    let fit = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| train(&spec(Algorithm::RandomForest), &d).unwrap())
    };
    assert_eq!(fit(1), fit(4));
}

#[test]
fn knn_scaling_invariance() {
    let train_d = two_gaussians(100, 3, 1.0, 5);
    let test_d = two_gaussians(60, 3, 1.0, 6);
    let base = train(&spec(Algorithm::Knn), &train_d).unwrap();
    for (f, c) in [(0, 3.7), (1, 1000.0), (2, 0.01)] {
        let m = train(&spec(Algorithm::Knn), &scaled(&train_d, f, c)).unwrap();
        let t = scaled(&test_d, f, c);
        for i in 0..test_d.len() {
            assert_eq!(
                m.predict_row(t.row(i)).label,
                base.predict_row(test_d.row(i)).label
            );
        }
    }
}

#[test]
fn knn_resubstitution_and_tie() {
    let d = two_gaussians(200, 2, 0.5, 8);
    let m = train(&spec(Algorithm::Knn), &d).unwrap();
    assert!((0..d.len()).all(|i| m.predict_row(d.row(i)).label == d.label(i)));

    // k=2 with one neighbour of each class: tie goes to the majority class.
    use Label::*;
    let d = Dataset::new(
        Schema::generic(["x"]),
        vec![vec![0.0], vec![1.0], vec![10.0], vec![11.0], vec![12.0]],
        vec![Positive, Negative, Negative, Negative, Positive],
    )
    .unwrap();
    let m = train(&spec(Algorithm::Knn).param("k", 2i64).unwrap(), &d).unwrap();
    let p = m.predict_row(&[0.5]);
    assert_eq!(p.scores, [0.5, 0.5]);
    assert_eq!(p.label, Negative);
}

#[test]
fn reptree_pruning_invariants() {
    for seed in 0..20 {
        let d = two_gaussians(150, 3, 0.8, seed);
        let s = ClassifierSpec::new(Algorithm::Reptree, seed);
        let (fit, rows) = fit_reptree_diagnostic(&s, &d).unwrap();
        assert!(fit.pruned.node_count() <= fit.unpruned.node_count());
        let correct = |t: &uzsent_core::classifiers::Tree| {
            fit.prune_indices
                .iter()
                .filter(|&&i| t.predict(&rows[i]) == d.label(i))
                .count()
        };
        assert!(
            correct(&fit.pruned) >= correct(&fit.unpruned),
            "seed {seed}"
        );
        // Back-fitting: the root has seen every training instance.
        assert_eq!(
            fit.pruned.nodes()[0].counts.iter().sum::<f64>(),
            d.len() as f64
        );
        // The trained model carries exactly the pruned tree.
        let ModelState::Reptree(t) = train(&s, &d).unwrap().state else {
            panic!("wrong state");
        };
        assert_eq!(t, fit.pruned);
    }
}

#[test]
fn single_tree_forest_equals_base_tree() {
    let d = two_gaussians(120, 4, 1.0, 9);
    let s = spec(Algorithm::RandomForest)
        .param("trees", 1i64)
        .unwrap()
        .param("features", 4i64)
        .unwrap()
        .param("bootstrap", false)
        .unwrap();
    let model = train(&s, &d).unwrap();
    let rows = model.normalization.apply_all(d.rows());
    let tree = grow_tree(
        &rows,
        d.labels(),
        (0..d.len()).collect(),
        GrowParams {
            min_leaf: 1,
            max_depth: None,
            features_per_split: None,
        },
        model.tiebreak(),
        &mut ChaCha8Rng::seed_from_u64(0),
    );
    let ModelState::RandomForest(f) = &model.state else {
        panic!("wrong state");
    };
    assert_eq!(f.trees().len(), 1);
    assert_eq!(f.trees()[0], tree);
    let probe = two_gaussians(80, 4, 1.0, 10);
    for i in 0..probe.len() {
        let x = model.normalization.apply(probe.row(i));
        assert_eq!(model.predict_row(probe.row(i)).label, tree.predict(&x));
    }
}

#[test]
fn forest_scores_are_vote_fractions() {
    let d = two_gaussians(100, 2, 6.0, 12);
    let m = train(&spec(Algorithm::RandomForest), &d).unwrap();
    let far = m.predict_row(&[10.0, 10.0]);
    assert_eq!(far.scores, [1.0, 0.0]);
    for i in 0..d.len() {
        let s = m.predict_row(d.row(i)).scores;
        assert!((s[0] + s[1] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bayes_posteriors_positive_and_normalized() {
    let d = two_gaussians(200, 6, 1.0, 13);
    let m = train(&spec(Algorithm::Bayes), &d).unwrap();
    let ModelState::Bayes(b) = &m.state else {
        panic!("wrong state");
    };
    assert!(b.bin_probabilities().all(|p| p > 0.0));
    for x in [[-50.0; 6], [50.0; 6], [0.0; 6]] {
        let s = m.predict_row(&x).scores;
        assert!(s[0] > 0.0 && s[1] > 0.0);
        assert!((s[0] + s[1] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bayes_four_instance_example() {
    use Label::*;
    let d = Dataset::new(
        Schema::generic(["x"]),
        vec![vec![0.0], vec![0.0], vec![1.0], vec![1.0]],
        vec![Positive, Positive, Negative, Negative],
    )
    .unwrap();
    let m = train(&spec(Algorithm::Bayes), &d).unwrap();
    for i in 0..4 {
        let p = m.predict_row(d.row(i));
        assert_eq!(p.label, d.label(i));
        assert!(p.scores[d.label(i).index()] > 0.5);
    }
}

#[test]
fn model_file_roundtrip_and_schema_check() {
    let d = two_gaussians(80, 3, 2.0, 14);
    let dir = std::env::temp_dir().join(format!("uzsent-model-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for a in Algorithm::ALL {
        let m = train(&spec(a), &d).unwrap();
        let path = dir.join(format!("{a}.json"));
        m.save(&path).unwrap();
        let back = uzsent_core::TrainedModel::load_for(&path, d.schema()).unwrap();
        assert_eq!(back, m);

        let other = Schema::generic(["x0", "y1", "x2"]);
        match uzsent_core::TrainedModel::load_for(&path, &other) {
            Err(Error::SchemaMismatch { index, .. }) => assert_eq!(index, 1),
            r => panic!("{r:?}"),
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn training_errors() {
    use Label::*;
    let one_class = Dataset::new(
        Schema::generic(["x"]),
        vec![vec![0.0], vec![1.0]],
        vec![Positive, Positive],
    )
    .unwrap();
    assert!(matches!(
        train(&spec(Algorithm::Knn), &one_class),
        Err(Error::Training(_))
    ));
    let nan = Dataset::new(
        Schema::generic(["x"]),
        vec![vec![0.0], vec![f64::NAN]],
        vec![Positive, Negative],
    )
    .unwrap();
    assert!(matches!(
        train(&spec(Algorithm::Bayes), &nan),
        Err(Error::Training(_))
    ));
    assert!(ClassifierSpec::new(Algorithm::Knn, 0)
        .param("trees", 5i64)
        .is_err());
    let json = r#"{"algorithm":"bayes","params":{"depth":3},"seed":1}"#;
    assert!(serde_json::from_str::<ClassifierSpec>(json).is_err());
}
