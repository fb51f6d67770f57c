use std::collections::{BTreeSet, HashMap};

use corpvar::features::{
    extract_candidates, read_annotations, reference_type_set, write_annotations, AnnotationRecord, Category,
    ExtractOptions,
};
use corpvar::Corpus;
use proptest::prelude::*;

fn corpus() -> impl Strategy<Value = Corpus> {
    prop::collection::vec(prop::collection::vec("[a-f谘咨询]{1,2}", 1..8), 1..10)
        .prop_map(|lists| Corpus::from_token_lists("c", &lists).unwrap())
}

fn opts(min_freq: u64) -> ExtractOptions {
    ExtractOptions {
        min_freq,
        ..ExtractOptions::default()
    }
}

proptest! {
    #[test]
    fn self_reference_is_empty(c in corpus()) {
        let set = reference_type_set(&c).unwrap();
        prop_assert!(extract_candidates(&c, &set, ExtractOptions::default()).is_empty());
    }

    #[test]
    fn candidates_respect_reference_and_counts(target in corpus(), reference in corpus(), min_freq in 1u64..4) {
        let set = reference_type_set(&reference).unwrap();
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for t in target.tokens() {
            *counts.entry(t.as_str()).or_default() += 1;
        }
        let got = extract_candidates(&target, &set, opts(min_freq));
        for c in &got {
            prop_assert!(!set.contains(&c.word));
            prop_assert_eq!(c.frequency, counts[c.word.as_str()]);
            prop_assert!(c.frequency >= min_freq);
            prop_assert!(c.contexts.len() as u64 <= c.frequency.min(5));
        }
        let expected: BTreeSet<&str> = counts
            .iter()
            .filter(|(w, &n)| n >= min_freq && !set.contains(**w))
            .map(|(w, _)| *w)
            .collect();
        let words: BTreeSet<&str> = got.iter().map(|c| c.word.as_str()).collect();
        prop_assert_eq!(words, expected);
    }

    #[test]
    fn monotone_in_min_freq(target in corpus(), reference in corpus(), m in 1u64..4) {
        let set = reference_type_set(&reference).unwrap();
        let lo: BTreeSet<String> = extract_candidates(&target, &set, opts(m)).into_iter().map(|c| c.word).collect();
        let hi: BTreeSet<String> = extract_candidates(&target, &set, opts(m + 1)).into_iter().map(|c| c.word).collect();
        prop_assert!(hi.is_subset(&lo));
    }
}

#[test]
fn variant_character_survives() {
    let target = Corpus::from_token_lists("t", &[vec!["请", "谘询", "我们"], vec!["谘询", "处"]]).unwrap();
    let reference = Corpus::from_token_lists("r", &[vec!["请", "咨询", "我们", "处"]]).unwrap();
    let set = reference_type_set(&reference).unwrap();
    let got = extract_candidates(&target, &set, ExtractOptions::default());
    assert_eq!(got.len(), 1);
    assert_eq!(got[0].word, "谘询");
    assert_eq!(got[0].frequency, 2);
    assert_eq!(got[0].contexts[0].to_string(), "请 [谘询] 我们");
}

#[test]
fn candidate_tsv_round_trips() {
    let target = Corpus::from_token_lists("t", &[vec!["x", "x", "y", "x"]]).unwrap();
    let set: BTreeSet<String> = ["y".to_string()].into();
    let records: Vec<AnnotationRecord> = extract_candidates(&target, &set, ExtractOptions::default())
        .iter()
        .map(AnnotationRecord::from_candidate)
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.tsv");
    write_annotations(&records, &path).unwrap();
    let mut back = read_annotations(&path).unwrap();
    assert_eq!(back, records);

    back[0].category = Some(Category::A);
    back[0].mainland_equivalent = "叉".into();
    write_annotations(&back, &path).unwrap();
    assert_eq!(read_annotations(&path).unwrap(), back);
}
