use cosnufft::Backend;
use cosnufft_bench::report::{accuracy_csv, summary_csv, SUMMARY_FILE};
use cosnufft_bench::{
    check_bounds, emit_report, paper_bounds, run_suite, AccuracyResult, CaseRegistry, Scope, SuiteOptions,
    SuiteReport, ThroughputResult, ThroughputSettings,
};

fn fixed_report() -> SuiteReport {
    let accuracy = vec![
        AccuracyResult {
            case: "vg1".into(),
            backend: Backend::Classic,
            reference: "cos-L20-M1048576".into(),
            strikes: 2500,
            rmse: 7.2e-7,
            max_abs: 2.0e-6,
            mean_abs: 0.1,
        },
        AccuracyResult {
            case: "vg1".into(),
            backend: Backend::Nufft,
            reference: "cos-L20-M1048576".into(),
            strikes: 2500,
            rmse: 1.0 / 3.0,
            max_abs: 2.0e-6,
            mean_abs: 5e-7,
        },
    ];
    let throughput = vec![ThroughputResult {
        case: "vg1".into(),
        backend: Backend::Nufft,
        scope: Scope::EndToEnd,
        strikes: 10,
        threads: 1,
        inner_loop: 8,
        samples: vec![1e-5, 2e-5, 3e-5],
        median_seconds: 2e-5,
        options_per_second: 5e5,
    }];
    let assertions = check_bounds(&paper_bounds(), &accuracy);
    SuiteReport {
        accuracy,
        throughput,
        assertions,
    }
}

#[test]
fn empty_report_has_headers_only() {
    let dir = tempfile::tempdir().unwrap();
    let paths = emit_report(&SuiteReport::default(), dir.path()).unwrap();
    assert_eq!(paths.len(), 6);
    let summary = std::fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
    assert_eq!(summary.lines().count(), 1);
    assert!(summary.starts_with("case,backend,end_to_end_ops_10,"));
    assert!(summary.ends_with("evaluation_only_ops_2500,rmse,max_abs,mean_abs\n"));
    for p in &paths[..5] {
        assert_eq!(std::fs::read_to_string(p).unwrap().lines().count(), 1, "{}", p.display());
    }
}

#[test]
fn golden_tables() {
    let report = fixed_report();
    assert_eq!(
        summary_csv(&report),
        "case,backend,end_to_end_ops_10,evaluation_only_ops_10,rmse,max_abs,mean_abs\n\
         vg1,classic,,,7.1999999999999999e-7,1.9999999999999999e-6,1.0000000000000001e-1\n\
         vg1,nufft,5.0000000000000000e5,,3.3333333333333331e-1,1.9999999999999999e-6,4.9999999999999998e-7\n"
    );
    assert_eq!(
        accuracy_csv(&report).lines().nth(1).unwrap(),
        "vg1,classic,cos-L20-M1048576,2500,7.1999999999999999e-7,1.9999999999999999e-6,1.0000000000000001e-1"
    );
}

#[test]
fn files_are_byte_stable() {
    let report = fixed_report();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let pa = emit_report(&report, a.path()).unwrap();
    let pb = emit_report(&report, b.path()).unwrap();
    for (x, y) in pa.iter().zip(&pb) {
        assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
    }
    let json = std::fs::read_to_string(a.path().join("report.json")).unwrap();
    let back: SuiteReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn small_suite_run() {
    let mut registry = CaseRegistry::paper();
    let mut case = registry.get("vg1").unwrap().clone();
    case.name = "vg1-small".into();
    case.reference = cosnufft_bench::ReferenceSpec::SelfReference {
        level: 20.0,
        terms: 1 << 14,
    };
    registry.register(case);
    let report = run_suite(
        &registry,
        &SuiteOptions {
            cases: vec!["vg1-small".into()],
            strike_counts: vec![25],
            throughput: Some(ThroughputSettings::default()),
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(report.accuracy.len(), 2);
    assert_eq!(report.throughput.len(), 4);
    assert!(report.accuracy.iter().all(|a| a.max_abs < 1e-4));
    assert!(report.assertions.is_empty());
    let summary = summary_csv(&report);
    assert_eq!(summary.lines().count(), 3);
    assert!(report.throughput.iter().all(|t| t.samples.len() == 20 && t.inner_loop >= 1));
    let err = run_suite(
        &registry,
        &SuiteOptions {
            cases: vec!["nope".into()],
            ..Default::default()
        },
    )
    .unwrap_err()
    .to_string();
    assert!(err.contains("vg1-small"), "{err}");
}
