use fburgers::diagnostics::mass;
use fburgers::output::{diagnostics_csv, DIAGNOSTICS_HEADER};
use fburgers::{
    forward_dft, make_grid, rhs, rk4_step, run_simulation, write_outputs, Characteristics,
    DetectionCause, InitialCondition, RunConfig, RunStatus, SimParams, TimeStep,
};

fn config(n: usize, gamma: f64, alpha: f64, dt: TimeStep, t_final: f64) -> RunConfig {
    RunConfig {
        n,
        params: SimParams {
            gamma,
            alpha,
            dt,
            t_final,
            ..SimParams::default()
        },
        ..RunConfig::default()
    }
}

#[test]
fn one_small_step_matches_characteristics() {
    let g = make_grid(64).unwrap();
    let u0 = g.sample(0.0, |x| -x.sin());
    let u1 = rk4_step(&u0, &g, &SimParams::default(), 1e-3).unwrap();
    let oracle = Characteristics::new(InitialCondition::NegSine);
    for (x, v) in g.nodes().iter().zip(&u1.values) {
        assert!((v - oracle.solve(*x, 1e-3).unwrap()).abs() <= 1e-10);
    }
    assert_eq!(u1.time, 1e-3);
}

#[test]
fn tendency_is_mass_neutral_and_deterministic() {
    let g = make_grid(128).unwrap();
    let f = InitialCondition::random_band(20, 3);
    let u = g.sample(0.0, |x| 0.4 + f.eval(x));
    let p = SimParams {
        gamma: 0.2,
        alpha: 0.7,
        ..SimParams::default()
    };
    let a = rhs(&u, &g, &p).unwrap();
    let b = rhs(&u, &g, &p).unwrap();
    assert_eq!(a, b);
    assert!(forward_dft(&a, &g).unwrap().get(0).norm() < 1e-16);

    let mut v = u.clone();
    let m0 = mass(&v, &g).unwrap();
    for _ in 0..200 {
        v = rk4_step(&v, &g, &p, 2e-3).unwrap();
        assert!((mass(&v, &g).unwrap() - m0).abs() <= 1e-10 * (1.0 + m0.abs()));
    }
}

#[test]
fn mass_is_conserved_across_parameters() {
    for (gamma, alpha, ic) in [
        (0.0, 1.0, InitialCondition::GaussianBump { width: 0.5 }),
        (0.3, 0.5, InitialCondition::random_band(8, 11)),
        (1.0, 2.0, InitialCondition::ScaledNegSine(2.0)),
    ] {
        let mut cfg = config(128, gamma, alpha, TimeStep::Auto, 0.4);
        cfg.ic = ic;
        let run = run_simulation(&cfg).unwrap();
        let m0 = run.records[0].mass;
        for r in &run.records {
            assert!(
                (r.mass - m0).abs() <= 1e-10 * (1.0 + m0.abs()),
                "gamma {gamma}: {}",
                r.mass
            );
        }
    }
}

#[test]
fn dissipative_run_respects_linf_bounds_and_decays() {
    let mut cfg = config(256, 0.3, 1.5, TimeStep::Auto, 1.5);
    cfg.ic = InitialCondition::random_band(5, 21);
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.status, RunStatus::Completed);
    let (max0, min0) = (run.records[0].max_u, run.records[0].min_u);
    for w in run.records.windows(2) {
        assert!(w[1].l2 <= w[0].l2 + 1e-10);
    }
    for r in run.records.iter().filter(|r| r.tail_fraction < 0.01) {
        assert!(
            r.max_u <= max0 + 1e-6 && r.min_u >= min0 - 1e-6,
            "t = {}",
            r.t
        );
    }
}

#[test]
fn viscous_heat_run_has_strictly_decreasing_l2() {
    let run = run_simulation(&config(256, 0.5, 2.0, TimeStep::Auto, 2.0)).unwrap();
    assert_eq!(run.status, RunStatus::Completed);
    assert!(run.records.windows(2).all(|w| w[1].l2 < w[0].l2));
}

#[test]
fn h3_grows_while_steepening_and_decays_under_strong_dissipation() {
    let mut cfg = config(512, 0.0, 1.0, TimeStep::Fixed(1e-3), 0.9);
    cfg.detect_blowup = false;
    let run = run_simulation(&cfg).unwrap();
    let late: Vec<_> = run.records.iter().filter(|r| r.t >= 0.5).collect();
    assert!(late.windows(2).all(|w| w[1].h3 >= w[0].h3));

    let run = run_simulation(&config(256, 1.0, 2.0, TimeStep::Auto, 1.0)).unwrap();
    assert!(run.records[1..].windows(2).all(|w| w[1].h3 <= w[0].h3));
    assert!(run.records.iter().all(|r| r.h3 >= r.l2));
}

#[test]
fn bkm_integral_tracks_the_log_law() {
    // int_0^t 1/(1 - s) ds = -ln(1 - t) for f = -sin x.
    let mut cfg = config(1024, 0.0, 1.0, TimeStep::Fixed(1e-4), 0.95);
    cfg.snapshot_every = 0.05;
    cfg.detect_blowup = false;
    let run = run_simulation(&cfg).unwrap();
    for t in [0.5, 0.8, 0.9, 0.95] {
        let r = run.record_at(t).unwrap();
        let want = -(1.0 - t).ln();
        assert!(
            (r.bkm_integral - want).abs() <= 1e-3,
            "t = {t}: {} vs {want}",
            r.bkm_integral
        );
    }
    assert!(run
        .records
        .windows(2)
        .all(|w| w[1].bkm_integral >= w[0].bkm_integral));
}

#[test]
fn inviscid_sine_is_detected_near_the_predicted_time() {
    let run = run_simulation(&config(1024, 0.0, 1.0, TimeStep::Auto, 1.2)).unwrap();
    assert_eq!(run.status, RunStatus::BlowupDetected);
    assert_eq!(run.report.detection_cause, DetectionCause::SlopeThreshold);
    let t = run.report.detected_t.unwrap();
    assert!((0.9..=1.05).contains(&t), "detected at {t}");
    assert!((run.report.predicted_t_star.unwrap() - 1.0).abs() < 1e-12);
    let last_snapshot = run.snapshots.last().unwrap();
    assert!(last_snapshot.time <= t && last_snapshot.is_finite());
}

#[test]
fn tight_tail_limit_reports_resolution_loss() {
    let mut cfg = config(64, 0.0, 1.0, TimeStep::Auto, 1.2);
    cfg.thresholds.tail_limit = 1e-6;
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.status, RunStatus::ResolutionLost);
    assert_eq!(run.report.detection_cause, DetectionCause::ResolutionLoss);
    assert_eq!(run.status.exit_code(), 3);
}

#[test]
fn zero_initial_data_stays_zero() {
    let mut cfg = config(32, 0.3, 1.0, TimeStep::Auto, 1.0);
    cfg.ic = InitialCondition::random_band(0, 5);
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.status, RunStatus::Completed);
    assert!(!run.report.detected);
    assert_eq!(run.report.predicted_t_star, None);
    let csv = diagnostics_csv(&run);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(DIAGNOSTICS_HEADER));
    for line in lines {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        assert!(fields[1..].iter().all(|&v| v == 0.0), "{line}");
    }
}

#[test]
fn snapshots_land_on_exact_multiples() {
    let mut cfg = config(64, 0.1, 1.0, TimeStep::Fixed(0.013), 1.0);
    cfg.snapshot_every = 0.1;
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.snapshots.len(), 11);
    for (i, s) in run.snapshots.iter().enumerate() {
        assert!((s.time - i as f64 * 0.1).abs() <= 1e-12, "{}", s.time);
    }
    assert!(run.records.windows(2).all(|w| w[1].t > w[0].t));
    assert_eq!(run.records[0].t, 0.0);
    assert!((run.final_record().t - 1.0).abs() <= 1e-12);
}

#[test]
fn outputs_follow_the_file_contract() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(32, 0.2, 1.0, TimeStep::Auto, 0.3);
    cfg.output_dir = dir.path().join("nested");
    let run = run_simulation(&cfg).unwrap();
    write_outputs(&run, &cfg).unwrap();

    let diag = std::fs::read_to_string(cfg.output_dir.join("diagnostics.csv")).unwrap();
    assert!(diag.starts_with("t,mass,l2,max_u,min_u,min_slope,bkm_integral,h3,tail_fraction\n"));
    assert!(!diag.contains('\r'));
    assert_eq!(diag.lines().count(), run.steps() + 2);
    let row: Vec<&str> = diag.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 9);
    for field in row {
        let mantissa = field.split('e').next().unwrap().trim_start_matches('-');
        assert_eq!(
            mantissa.chars().filter(|c| c.is_ascii_digit()).count(),
            17,
            "{field}"
        );
    }

    let snap = std::fs::read_to_string(cfg.output_dir.join("snapshot_0.csv")).unwrap();
    let mut lines = snap.lines();
    assert_eq!(lines.next(), Some("x,u"));
    for line in lines {
        let (x, u) = line.split_once(',').unwrap();
        let (x, u): (f64, f64) = (x.parse().unwrap(), u.parse().unwrap());
        assert_eq!(u, -x.sin());
    }
    for t in ["0.1", "0.2", "0.3"] {
        assert!(
            cfg.output_dir.join(format!("snapshot_{t}.csv")).exists(),
            "{t}"
        );
    }

    let report = std::fs::read_to_string(cfg.output_dir.join("report.txt")).unwrap();
    assert!(report.contains("status = completed"));
    assert!(report.contains("predicted_t_star (inviscid prediction) = 1."));
    assert!(report.contains("detected = false"));
}

#[test]
fn random_seed_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(32, 0.2, 1.0, TimeStep::Auto, 0.1);
    cfg.ic = InitialCondition::random_band(4, 1234);
    cfg.output_dir = dir.path().to_path_buf();
    let run = run_simulation(&cfg).unwrap();
    write_outputs(&run, &cfg).unwrap();
    let report = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(report.contains("random_seed = 1234"));
    assert!(report.contains("random_generator = splitmix64"));
}

#[test]
fn positive_data_triggers_linf_hypothesis_warning() {
    let mut cfg = config(32, 0.2, 1.0, TimeStep::Auto, 0.1);
    cfg.ic = InitialCondition::GaussianBump { width: 0.5 };
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.warnings.len(), 1);
    assert_eq!(run.status, RunStatus::Completed);
}

#[test]
fn unwritable_output_is_an_io_error() {
    let file = tempfile::NamedTempFile::new().unwrap();
    let mut cfg = config(16, 0.2, 1.0, TimeStep::Auto, 0.1);
    cfg.output_dir = file.path().join("sub");
    let run = run_simulation(&cfg).unwrap();
    assert!(matches!(
        write_outputs(&run, &cfg),
        Err(fburgers::Error::Io(_))
    ));
}

#[test]
fn fixed_step_overflow_is_a_numeric_failure() {
    // dt far beyond the advective limit; the state overflows within a few steps.
    let mut cfg = config(64, 0.0, 1.0, TimeStep::Fixed(0.9), 50.0);
    cfg.ic = InitialCondition::ScaledNegSine(50.0);
    cfg.detect_blowup = false;
    cfg.snapshot_every = 50.0;
    let run = run_simulation(&cfg).unwrap();
    assert_eq!(run.status, RunStatus::NumericFailure);
    assert_eq!(run.report.detection_cause, DetectionCause::NonFinite);
    assert!(run.snapshots.iter().all(|s| s.is_finite()));
    assert!(run
        .records
        .iter()
        .all(|r| r.t < run.report.detected_t.unwrap()));
}
