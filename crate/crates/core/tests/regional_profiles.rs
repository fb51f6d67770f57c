use std::path::{Path, PathBuf};

use corpvar::features::read_annotations;
use corpvar::ingest::read_profile;
use corpvar::lexical::{a_value, ttr_from_counts};
use corpvar::rank_stats::correlate_with_size;
use corpvar::report::{build_comparison, format_cell, render, CellKind, CompareOptions, OutputFormat};
use corpvar::{Error, LexicalMetric, LexicalProfile, Profile};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn profiles() -> Vec<LexicalProfile> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures().join("profiles"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| match read_profile(p).unwrap() {
            Profile::Lexical(l) => l,
            Profile::Syntactic(_) => panic!("{} is not lexical", p.display()),
        })
        .collect()
}

#[test]
fn derived_cells_from_raw_counts() {
    let ps = profiles();
    let ph = &ps[0];
    assert!((ttr_from_counts(ph.type_count, ph.token_count).unwrap() - 0.237).abs() <= 0.001);
    assert!((100.0 * ph.hapax_count as f64 / ph.type_count as f64 - 56.11).abs() <= 0.01);
    assert!((100.0 * ph.monosyllabic_type_count as f64 / ph.type_count as f64 - 8.59).abs() <= 0.01);
    assert!((a_value(ph.token_count, ph.h_point) - 11.78).abs() <= 0.01);
    let bn = &ps[3];
    assert!((a_value(bn.token_count, bn.h_point) - 8.16).abs() <= 0.01);
}

#[test]
fn printed_proportions_follow_from_counts() {
    for p in profiles() {
        let hapax = format_cell(CellKind::Percent, p.hapax_count as f64 / p.type_count as f64);
        let printed = format_cell(CellKind::Percent, p.hapax_proportion);
        // the printed 53.7% carries one decimal
        assert!(
            (hapax.trim_end_matches('%').parse::<f64>().unwrap() - printed.trim_end_matches('%').parse::<f64>().unwrap())
                .abs()
                <= 0.01,
            "{}: {hapax} vs {printed}",
            p.id
        );
        let mono = p.monosyllabic_type_count as f64 / p.type_count as f64;
        assert!((mono - p.monosyllabic_proportion).abs() <= 0.0001, "{}", p.id);
    }
}

#[test]
fn relevance_column() {
    let table = correlate_with_size(&profiles()).unwrap();
    assert_eq!(table.len(), 9);
    let printed = [
        (LexicalMetric::TypeCount, 0.09),
        (LexicalMetric::Ttr, -0.6),
        (LexicalMetric::MonosyllabicCount, 0.143),
        // printed as -0.714; the six printed proportions rank to d² = 24
        (LexicalMetric::MonosyllabicProportion, 1.0 - 144.0 / 210.0),
        (LexicalMetric::HapaxCount, 0.086),
        (LexicalMetric::HapaxProportion, -0.029),
        (LexicalMetric::HPoint, 0.2),
        (LexicalMetric::RValue, -0.029),
        (LexicalMetric::AValue, 0.029),
    ];
    for (row, (metric, rho)) in table.iter().zip(printed) {
        assert_eq!(row.metric, metric);
        let r = row.result.as_ref().unwrap();
        assert!((r.rho - rho).abs() <= 0.005, "{}: {} vs {rho}", metric.key(), r.rho);
        assert!(r.p_value > 0.05, "{} should not be significant", metric.key());
    }
}

#[test]
fn identical_profiles_are_degenerate() {
    let p = profiles().remove(0);
    let table = correlate_with_size(&[p.clone(), p.clone(), p]).unwrap();
    assert_eq!(table.len(), 9);
    assert!(table.iter().all(|r| matches!(r.result, Err(Error::DegenerateInput(_)))));
}

#[test]
fn report_with_relevance() {
    let report = build_comparison(
        &profiles(),
        &[],
        CompareOptions {
            with_relevance: true,
            ..CompareOptions::default()
        },
    )
    .unwrap();
    assert_eq!(report.lexical_rows.len(), 9);
    assert!(report.relevance_column);
    let md = String::from_utf8(render(&report, OutputFormat::Markdown)).unwrap();
    assert!(md.contains("56.11%"));
    assert!(md.contains("0.086 ("));
    assert!(md.contains("-0.600 ("));
    assert_eq!(render(&report, OutputFormat::Csv), render(&report, OutputFormat::Csv));
}

#[test]
fn annotation_counts() {
    let expected = [
        ("philippines", 56),
        ("indonesia", 21),
        ("malaysia", 21),
        ("brunei", 23),
        ("singapore", 14),
    ];
    for (name, count) in expected {
        let records = read_annotations(fixtures().join(format!("annotations/{name}.tsv"))).unwrap();
        assert_eq!(records.iter().filter(|r| r.is_feature_word()).count(), count, "{name}");
        assert!(records.len() > count, "{name} should carry rejected rows");
    }
}

#[test]
fn unknown_category_is_rejected() {
    let err = corpvar::features::parse_annotations("word\tcategory\tmainland_equivalent\tnote\nx\td\t\t\n").unwrap_err();
    assert!(matches!(&err, Error::Schema(m) if m.contains("line 2")), "{err}");
}
