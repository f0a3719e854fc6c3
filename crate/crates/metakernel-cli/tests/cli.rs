//! End-to-end checks of the command surface: artifact layout, manifests,
//! reruns, exit codes, and the documented flag names.

use std::path::Path;
use std::process::Command;

use metakernel_cli::commands::{execute, rerun, CommandSpec};
use metakernel_cli::manifest::{sha256_file, RunManifest, MANIFEST_FILE};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_metakernel"))
}

fn spec_data_gen(seed: u64) -> CommandSpec {
    CommandSpec::DataGen {
        dataset: "moons".into(),
        n: 60,
        noise: 0.3,
        inner_radius_factor: 0.5,
        seed,
    }
}

#[test]
fn data_gen_writes_dataset_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = execute(&spec_data_gen(7), dir.path()).unwrap();
    assert_eq!(manifest.artifacts.len(), 1);
    assert!(dir.path().join("moons.csv").exists());
    assert!(dir.path().join(MANIFEST_FILE).exists());
    let read_back = RunManifest::read(&dir.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(read_back.command, spec_data_gen(7));
}

#[test]
fn rerun_from_manifest_reproduces_artifacts_byte_identically() {
    let dir_a = tempfile::tempdir().unwrap();
    let manifest_a = execute(&spec_data_gen(11), dir_a.path()).unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let manifest_b = rerun(&dir_a.path().join(MANIFEST_FILE), dir_b.path()).unwrap();
    for (a, b) in manifest_a.artifacts.iter().zip(&manifest_b.artifacts) {
        assert_eq!(a.path, b.path);
        assert_eq!(a.sha256, b.sha256, "artifact {} drifted", a.path);
    }
}

#[test]
fn train_evaluate_boundary_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let data_dir = dir.path().join("data");
    execute(&spec_data_gen(3), &data_dir).unwrap();
    let data = data_dir.join("moons.csv").to_string_lossy().into_owned();

    let train_dir = dir.path().join("train");
    execute(
        &CommandSpec::Train {
            data: data.clone(),
            family: "alpha-su2".into(),
            alpha: 1.0,
            k: 1.0,
            z: 1.0,
            gamma: 0.0,
            c: 10.0,
            tolerance: 1e-3,
            max_passes: 100_000,
            seed: 5,
            scale: true,
        },
        &train_dir,
    )
    .unwrap();
    let model = train_dir.join("model.json").to_string_lossy().into_owned();

    let eval_dir = dir.path().join("eval");
    execute(
        &CommandSpec::Evaluate {
            model: model.clone(),
            data,
        },
        &eval_dir,
    )
    .unwrap();
    let metrics: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(eval_dir.join("metrics.json")).unwrap())
            .unwrap();
    assert!(metrics["accuracy"].as_f64().unwrap() > 0.8);

    let boundary_dir = dir.path().join("boundary");
    execute(
        &CommandSpec::Boundary {
            model,
            x_min: -1.5,
            x_max: 2.5,
            y_min: -1.0,
            y_max: 1.5,
            resolution_x: 12,
            resolution_y: 10,
        },
        &boundary_dir,
    )
    .unwrap();
    let csv = std::fs::read_to_string(boundary_dir.join("boundary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 12 * 10);
}

#[test]
fn kernel_shape_center_symmetry_and_narrowing() {
    let dir = tempfile::tempdir().unwrap();
    // four parameter settings ordered by increasing alpha * k
    let settings = [(0.1, 1.0), (0.1, 2.0), (2.0, 1.0), (2.0, 2.0)];
    let mut masses = Vec::new();
    for (i, (alpha, k)) in settings.iter().enumerate() {
        let out = dir.path().join(format!("shape{i}"));
        execute(
            &CommandSpec::KernelShape {
                family: "alpha-su11".into(),
                alpha: *alpha,
                k: *k,
                z: 1.0,
                gamma: 0.0,
                resolution: 41,
            },
            &out,
        )
        .unwrap();
        let csv = std::fs::read_to_string(out.join("shape.csv")).unwrap();
        let mut values = Vec::new();
        for line in csv.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            values.push((
                fields[0].parse::<f64>().unwrap(),
                fields[1].parse::<f64>().unwrap(),
                fields[2].parse::<f64>().unwrap(),
            ));
        }
        // center cell is exactly 1
        let center = values
            .iter()
            .find(|(x0, x1, _)| *x0 == 0.0 && *x1 == 0.0)
            .expect("odd grid contains the center");
        assert!((center.2 - 1.0).abs() < 1e-12);
        // symmetric under x' -> -x'
        for (x0, x1, v) in &values {
            let mirrored = values
                .iter()
                .find(|(mx0, mx1, _)| *mx0 == -*x0 && *mx1 == -*x1)
                .unwrap();
            assert!((v - mirrored.2).abs() < 1e-12);
        }
        masses.push(values.iter().filter(|(_, _, v)| *v > 0.5).count());
    }
    // the central peak narrows as alpha * k grows
    assert!(
        masses.windows(2).all(|w| w[1] < w[0]),
        "peak masses not strictly narrowing: {masses:?}"
    );
}

#[test]
fn geometry_command_emits_curvature_and_mesh() {
    let dir = tempfile::tempdir().unwrap();
    execute(
        &CommandSpec::Geometry {
            family: "alpha-su11".into(),
            alpha: 1.0,
            k: 2.0,
            probes: 20,
            mesh_resolution: 12,
        },
        dir.path(),
    )
    .unwrap();
    let csv = std::fs::read_to_string(dir.path().join("curvature.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 40);
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let scalar: f64 = fields[4].parse().unwrap();
        assert!((scalar - (-2.0)).abs() < 1e-4, "scalar {scalar}");
    }
    let mesh = std::fs::read_to_string(dir.path().join("mesh.csv")).unwrap();
    assert_eq!(mesh.lines().count(), 1 + 12 * 12);
    assert!(dir.path().join("mesh.obj").exists());
}

#[test]
fn binary_exit_codes_are_distinct_per_failure_class() {
    let dir = tempfile::tempdir().unwrap();

    // success
    let ok = bin()
        .args([
            "data", "gen", "--dataset", "moons", "--n", "10", "--seed", "1", "--out",
        ])
        .arg(dir.path().join("ok"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "{:?}", ok);

    // input error: odd sample count
    let input = bin()
        .args([
            "data", "gen", "--dataset", "moons", "--n", "11", "--seed", "1", "--out",
        ])
        .arg(dir.path().join("bad-n"))
        .output()
        .unwrap();
    assert_eq!(input.status.code(), Some(2));

    // numerical error: tan pole
    let z = format!("{}", std::f64::consts::FRAC_PI_2);
    let numeric = bin()
        .args([
            "kernel", "shape", "--family", "alpha-su2", "--alpha", "2", "--k", "1", "--z", &z,
            "--out",
        ])
        .arg(dir.path().join("pole"))
        .output()
        .unwrap();
    assert_eq!(numeric.status.code(), Some(3));

    // io error: missing model file
    let io = bin()
        .args(["evaluate", "--model", "/nonexistent/model.json", "--data", "x.csv", "--out"])
        .arg(dir.path().join("io"))
        .output()
        .unwrap();
    assert_eq!(io.status.code(), Some(4));
}

#[test]
fn documented_flags_are_accepted() {
    // --family --alpha --k --z --c --gamma --seed --noise --train-fraction
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "grid-search",
            "--dataset",
            "circles",
            "--n",
            "40",
            "--noise",
            "0.05",
            "--family",
            "rbf",
            "--gammas",
            "1.0",
            "--cs",
            "1.0",
            "--train-fraction",
            "0.7",
            "--seed",
            "9",
            "--out",
        ])
        .arg(dir.path().join("gs"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    assert!(dir.path().join("gs/grid_rbf.csv").exists());
    assert!(dir.path().join("gs/summary_rbf.json").exists());

    let help = bin().args(["train", "--help"]).output().unwrap();
    let text = String::from_utf8_lossy(&help.stdout);
    for flag in ["--family", "--alpha", "--k", "--z", "--c", "--gamma", "--seed"] {
        assert!(text.contains(flag), "missing {flag} in train --help");
    }
}

#[test]
fn manifest_checksums_match_files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = execute(&spec_data_gen(21), dir.path()).unwrap();
    for artifact in &manifest.artifacts {
        let on_disk = sha256_file(&dir.path().join(&artifact.path)).unwrap();
        assert_eq!(on_disk, artifact.sha256);
    }
    assert!(Path::new(&dir.path().join(MANIFEST_FILE)).exists());
}
