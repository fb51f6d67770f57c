//! Vocabulary richness measures over a [`FrequencyList`].
//!
//! Besides type/token ratio and hapax counts this covers the rank-frequency
//! h-point, the polyline arc lengths `L` and `L_h`, the richness ratio
//! `R = 1 - L_h / L` and the length-normalized indicator `a = N / h²`.
//!
//! `L_h` is the arc length of the rank-frequency polyline from rank 1 up to
//! the point `(h, h)`: full segments up to `⌊h⌋` plus the partial segment from
//! `(⌊h⌋, f(⌊h⌋))` to `(h, h)`. Taking the ceiling of `h` instead would walk
//! past the h-point and can make `L_h > L`.

use serde::{Deserialize, Serialize};
use unicode_script::{Script, UnicodeScript};

use crate::corpus::{Corpus, FrequencyList, Token};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexicalOptions {
    /// Count only single Han characters as monosyllabic free morphemes.
    pub han_only: bool,
    /// Drop tokens made solely of non-alphanumeric characters before counting.
    pub exclude_punctuation: bool,
}

impl Default for LexicalOptions {
    fn default() -> Self {
        LexicalOptions {
            han_only: true,
            exclude_punctuation: false,
        }
    }
}

/// One corpus's vocabulary measurements.
///
/// `arc_length_to_h` and `r_value` are `None` when the corpus has fewer than
/// two types. `arc_length_total` is only `None` for profiles transcribed from
/// sources that do not report it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexicalProfile {
    pub id: String,
    pub token_count: u64,
    pub type_count: u64,
    pub ttr: f64,
    pub hapax_count: u64,
    pub hapax_proportion: f64,
    pub monosyllabic_type_count: u64,
    pub monosyllabic_proportion: f64,
    pub h_point: f64,
    pub arc_length_total: Option<f64>,
    pub arc_length_to_h: Option<f64>,
    pub r_value: Option<f64>,
    pub a_value: f64,
}

impl LexicalProfile {
    pub const FIELDS: [&'static str; 13] = [
        "id",
        "token_count",
        "type_count",
        "ttr",
        "hapax_count",
        "hapax_proportion",
        "monosyllabic_type_count",
        "monosyllabic_proportion",
        "h_point",
        "arc_length_total",
        "arc_length_to_h",
        "r_value",
        "a_value",
    ];
}

/// The nine per-corpus vocabulary measures compared across corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexicalMetric {
    TypeCount,
    Ttr,
    MonosyllabicCount,
    MonosyllabicProportion,
    HapaxCount,
    HapaxProportion,
    HPoint,
    RValue,
    AValue,
}

impl LexicalMetric {
    pub const ALL: [LexicalMetric; 9] = [
        LexicalMetric::TypeCount,
        LexicalMetric::Ttr,
        LexicalMetric::MonosyllabicCount,
        LexicalMetric::MonosyllabicProportion,
        LexicalMetric::HapaxCount,
        LexicalMetric::HapaxProportion,
        LexicalMetric::HPoint,
        LexicalMetric::RValue,
        LexicalMetric::AValue,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LexicalMetric::TypeCount => "Number of word types",
            LexicalMetric::Ttr => "Type-token ratio",
            LexicalMetric::MonosyllabicCount => "Number of monosyllabic free morphemes",
            LexicalMetric::MonosyllabicProportion => "Proportion of monosyllabic free morphemes",
            LexicalMetric::HapaxCount => "Number of hapax legomena",
            LexicalMetric::HapaxProportion => "Proportion of hapax legomena",
            LexicalMetric::HPoint => "h-point",
            LexicalMetric::RValue => "R value",
            LexicalMetric::AValue => "a",
        }
    }

    /// Stable machine-readable key.
    pub fn key(self) -> &'static str {
        match self {
            LexicalMetric::TypeCount => "type_count",
            LexicalMetric::Ttr => "ttr",
            LexicalMetric::MonosyllabicCount => "monosyllabic_type_count",
            LexicalMetric::MonosyllabicProportion => "monosyllabic_proportion",
            LexicalMetric::HapaxCount => "hapax_count",
            LexicalMetric::HapaxProportion => "hapax_proportion",
            LexicalMetric::HPoint => "h_point",
            LexicalMetric::RValue => "r_value",
            LexicalMetric::AValue => "a_value",
        }
    }

    pub fn is_count(self) -> bool {
        matches!(
            self,
            LexicalMetric::TypeCount | LexicalMetric::MonosyllabicCount | LexicalMetric::HapaxCount
        )
    }

    pub fn is_proportion(self) -> bool {
        matches!(self, LexicalMetric::MonosyllabicProportion | LexicalMetric::HapaxProportion)
    }

    pub fn value(self, p: &LexicalProfile) -> Option<f64> {
        match self {
            LexicalMetric::TypeCount => Some(p.type_count as f64),
            LexicalMetric::Ttr => Some(p.ttr),
            LexicalMetric::MonosyllabicCount => Some(p.monosyllabic_type_count as f64),
            LexicalMetric::MonosyllabicProportion => Some(p.monosyllabic_proportion),
            LexicalMetric::HapaxCount => Some(p.hapax_count as f64),
            LexicalMetric::HapaxProportion => Some(p.hapax_proportion),
            LexicalMetric::HPoint => Some(p.h_point),
            LexicalMetric::RValue => p.r_value,
            LexicalMetric::AValue => Some(p.a_value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HapaxStats {
    pub count: usize,
    pub proportion: f64,
    /// Hapax types in rank order.
    pub types: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonosyllabicStats {
    pub count: usize,
    pub proportion: f64,
}

/// V / N.
pub fn ttr_from_counts(type_count: u64, token_count: u64) -> Result<f64> {
    if token_count == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(type_count as f64 / token_count as f64)
}

pub fn ttr(corpus: &Corpus) -> Result<f64> {
    let fl = FrequencyList::from_corpus(corpus)?;
    ttr_from_counts(fl.type_count() as u64, fl.token_count())
}

pub fn hapax_stats(list: &FrequencyList) -> HapaxStats {
    let types: Vec<String> = list
        .entries()
        .iter()
        .filter(|e| e.frequency == 1)
        .map(|e| e.word.clone())
        .collect();
    HapaxStats {
        count: types.len(),
        proportion: types.len() as f64 / list.type_count() as f64,
        types,
    }
}

pub fn is_han(c: char) -> bool {
    c.script() == Script::Han
}

pub fn monosyllabic_stats(list: &FrequencyList, han_only: bool) -> MonosyllabicStats {
    let count = list
        .entries()
        .iter()
        .filter(|e| {
            let mut chars = e.word.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => !han_only || is_han(c),
                _ => false,
            }
        })
        .count();
    MonosyllabicStats {
        count,
        proportion: count as f64 / list.type_count() as f64,
    }
}

/// A token consisting only of non-alphanumeric characters.
pub fn is_punctuation_token(token: &Token) -> bool {
    token.as_str().chars().all(|c| !c.is_alphanumeric())
}

fn segment_length(a: u64, b: u64) -> f64 {
    let d = a as f64 - b as f64;
    (d * d + 1.0).sqrt()
}

/// The rank at which frequency equals rank on the rank-frequency polyline.
///
/// Returns the fixed point `r` when `f(r) = r`; otherwise interpolates
/// between the last rank above the diagonal and the next one. If every rank
/// lies above the diagonal, a virtual point `(V + 1, 0)` closes the polyline.
pub fn h_point(list: &FrequencyList) -> f64 {
    h_point_of(&list.frequencies())
}

pub(crate) fn h_point_of(freqs: &[u64]) -> f64 {
    debug_assert!(!freqs.is_empty());
    let v = freqs.len();
    // f(r) - r is strictly decreasing, so the ranks above the diagonal form a prefix.
    let above = freqs
        .iter()
        .enumerate()
        .take_while(|&(i, &f)| f > (i + 1) as u64)
        .count();
    if above < v && freqs[above] == (above + 1) as u64 {
        return (above + 1) as f64;
    }
    // above >= 1 here: f(1) >= 1 and f(1) = 1 is a fixed point.
    let i = above as f64;
    let j = i + 1.0;
    let fi = freqs[above - 1] as f64;
    let fj = freqs.get(above).map_or(0.0, |&f| f as f64);
    (fi * j - fj * i) / (j - i + fi - fj)
}

/// L: total Euclidean length of the rank-frequency polyline.
pub fn arc_length_total(list: &FrequencyList) -> f64 {
    arc_length_total_of(&list.frequencies())
}

fn arc_length_total_of(freqs: &[u64]) -> f64 {
    freqs.windows(2).map(|w| segment_length(w[0], w[1])).sum()
}

/// L_h: polyline length from rank 1 to `(h, h)`.
///
/// When `h` falls beyond the last rank (the virtual-endpoint case) the whole
/// polyline precedes the h-point and the result is `L`.
pub fn arc_length_to_h(list: &FrequencyList, h: f64) -> Result<f64> {
    arc_length_to_h_of(&list.frequencies(), h)
}

fn arc_length_to_h_of(freqs: &[u64], h: f64) -> Result<f64> {
    let v = freqs.len();
    if v < 2 {
        return Err(Error::UndefinedMetric(format!("L_h needs at least 2 types, got {v}")));
    }
    if h.is_nan() || h < 1.0 {
        return Err(Error::UndefinedMetric(format!("h-point {h} is below rank 1")));
    }
    let floor = h.floor() as usize;
    if floor >= v && h > v as f64 {
        return Ok(arc_length_total_of(freqs));
    }
    let full: f64 = freqs[..floor].windows(2).map(|w| segment_length(w[0], w[1])).sum();
    let dy = h - freqs[floor - 1] as f64;
    let dx = h - floor as f64;
    Ok(full + (dy * dy + dx * dx).sqrt())
}

/// R = 1 - L_h / L, with `L_h` taken at the list's own h-point.
pub fn r_value(list: &FrequencyList) -> Result<f64> {
    let freqs = list.frequencies();
    r_value_of(&freqs, h_point_of(&freqs))
}

fn r_value_of(freqs: &[u64], h: f64) -> Result<f64> {
    let lh = arc_length_to_h_of(freqs, h)?;
    let l = arc_length_total_of(freqs);
    if l <= 0.0 {
        return Err(Error::UndefinedMetric("arc length L is zero".into()));
    }
    Ok(1.0 - lh / l)
}

/// a = N / h².
pub fn a_value(token_count: u64, h: f64) -> f64 {
    token_count as f64 / (h * h)
}

pub fn lexical_profile(corpus: &Corpus, opts: LexicalOptions) -> Result<LexicalProfile> {
    let filtered;
    let corpus = if opts.exclude_punctuation {
        filtered = corpus.filter_tokens(|t| !is_punctuation_token(t));
        &filtered
    } else {
        corpus
    };
    let list = FrequencyList::from_corpus(corpus)?;
    Ok(profile_from_list(corpus.id.clone(), &list, opts.han_only))
}

/// Profile of an already-built frequency list.
pub fn profile_from_list(id: String, list: &FrequencyList, han_only: bool) -> LexicalProfile {
    let freqs = list.frequencies();
    let n = list.token_count();
    let v = list.type_count() as u64;
    let hapax = hapax_stats(list);
    let mono = monosyllabic_stats(list, han_only);
    let h = h_point_of(&freqs);
    let lh = arc_length_to_h_of(&freqs, h).ok();
    let r = r_value_of(&freqs, h).ok();
    LexicalProfile {
        id,
        token_count: n,
        type_count: v,
        ttr: v as f64 / n as f64,
        hapax_count: hapax.count as u64,
        hapax_proportion: hapax.proportion,
        monosyllabic_type_count: mono.count as u64,
        monosyllabic_proportion: mono.proportion,
        h_point: h,
        arc_length_total: Some(arc_length_total_of(&freqs)),
        arc_length_to_h: lh,
        r_value: r,
        a_value: a_value(n, h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fl(freqs: &[u64]) -> FrequencyList {
        FrequencyList::from_frequencies(freqs).unwrap()
    }

    fn corpus(tokens: &[&str]) -> Corpus {
        Corpus::from_token_lists("c", &[tokens.to_vec()]).unwrap()
    }

    #[test]
    fn ttr_cases() {
        assert_abs_diff_eq!(ttr(&corpus(&["a", "a", "a"])).unwrap(), 1.0 / 3.0);
        assert_abs_diff_eq!(ttr(&corpus(&["a", "b", "c", "d", "e"])).unwrap(), 1.0);
        assert_abs_diff_eq!(ttr_from_counts(10407, 43840).unwrap(), 0.237, epsilon = 0.001);
        assert!(matches!(ttr_from_counts(1, 0), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn hapax_cases() {
        let list = FrequencyList::from_counts([("a", 2), ("b", 1)]).unwrap();
        let hs = hapax_stats(&list);
        assert_eq!((hs.count, hs.proportion, hs.types), (1, 0.5, vec!["b".to_string()]));

        let hs = hapax_stats(&fl(&[1; 7]));
        assert_eq!(hs.count, 7);
        assert_eq!(hs.proportion, 1.0);
        assert_eq!(hs.types.len(), 7);
    }

    #[test]
    fn monosyllabic_cases() {
        let list = FrequencyList::from_counts([("搨", 1), ("码头", 1)]).unwrap();
        assert_eq!(monosyllabic_stats(&list, true), MonosyllabicStats { count: 1, proportion: 0.5 });

        let list = FrequencyList::from_counts([("a", 1), ("搨", 1)]).unwrap();
        assert_eq!(monosyllabic_stats(&list, true), MonosyllabicStats { count: 1, proportion: 0.5 });
        assert_eq!(monosyllabic_stats(&list, false), MonosyllabicStats { count: 2, proportion: 1.0 });
    }

    #[test]
    fn h_point_cases() {
        assert_eq!(h_point(&fl(&[3, 2, 1])), 2.0);
        assert_abs_diff_eq!(h_point(&fl(&[5, 5, 1, 1])), 2.6, epsilon = 1e-12);
        assert_abs_diff_eq!(h_point(&fl(&[4, 1])), 1.75, epsilon = 1e-12);
        assert_eq!(h_point(&fl(&[1, 1, 1])), 1.0);
        // virtual endpoint (2, 0): line y = 14 - 7x meets y = x at 1.75
        assert_abs_diff_eq!(h_point(&fl(&[7])), 1.75, epsilon = 1e-12);
    }

    #[test]
    fn arc_length_cases() {
        assert_abs_diff_eq!(arc_length_total(&fl(&[3, 2, 1])), 2.0 * 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(arc_length_total(&fl(&[5, 5, 1, 1])), 2.0 + 17f64.sqrt(), epsilon = 1e-12);
        assert_eq!(arc_length_total(&fl(&[7])), 0.0);

        assert_abs_diff_eq!(arc_length_to_h(&fl(&[3, 2, 1]), 2.0).unwrap(), 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            arc_length_to_h(&fl(&[5, 5, 1, 1]), 2.6).unwrap(),
            1.0 + 6.12f64.sqrt(),
            epsilon = 1e-12
        );
        assert_eq!(arc_length_to_h(&fl(&[1, 1, 1]), 1.0).unwrap(), 0.0);
        assert!(matches!(arc_length_to_h(&fl(&[7]), 1.75), Err(Error::UndefinedMetric(_))));
    }

    #[test]
    fn r_value_cases() {
        assert_abs_diff_eq!(r_value(&fl(&[3, 2, 1])).unwrap(), 0.5, epsilon = 1e-12);
        assert_eq!(r_value(&fl(&[1, 1, 1, 1])).unwrap(), 1.0);
        assert!(r_value(&fl(&[7])).is_err());
    }

    #[test]
    fn virtual_endpoint_caps_lh_at_l() {
        // every rank above the diagonal: h = 15/6 lies past the last rank
        let list = fl(&[5, 5]);
        assert_abs_diff_eq!(h_point(&list), 2.5, epsilon = 1e-12);
        assert_eq!(arc_length_to_h(&list, 2.5).unwrap(), arc_length_total(&list));
        assert_eq!(r_value(&list).unwrap(), 0.0);
    }

    #[test]
    fn a_value_cases() {
        assert_abs_diff_eq!(a_value(43840, 61.0), 11.78, epsilon = 0.01);
        assert_abs_diff_eq!(a_value(49670, 78.0), 8.16, epsilon = 0.01);
        assert_eq!(a_value(100, 10.0), 1.0);
    }

    #[test]
    fn profile_composition() {
        let p = lexical_profile(&corpus(&["a", "b", "a"]), LexicalOptions::default()).unwrap();
        assert_eq!((p.token_count, p.type_count), (3, 2));
        assert_abs_diff_eq!(p.ttr, 2.0 / 3.0);
        assert_eq!((p.hapax_count, p.hapax_proportion), (1, 0.5));
        assert_abs_diff_eq!(p.a_value, 3.0 / (p.h_point * p.h_point));
        assert!(p.r_value.is_some());
    }

    #[test]
    fn single_type_profile_marks_absent_fields() {
        let p = lexical_profile(&corpus(&["a", "a"]), LexicalOptions::default()).unwrap();
        assert_eq!(p.arc_length_total, Some(0.0));
        assert_eq!(p.arc_length_to_h, None);
        assert_eq!(p.r_value, None);
    }

    #[test]
    fn punctuation_filter() {
        let c = corpus(&["我们", "，", "走", "。", "走"]);
        let on = lexical_profile(&c, LexicalOptions { exclude_punctuation: true, ..Default::default() }).unwrap();
        let off = lexical_profile(&c, LexicalOptions::default()).unwrap();
        assert_eq!((on.token_count, on.type_count), (3, 2));
        assert_eq!((off.token_count, off.type_count), (5, 4));
        let all_punct = corpus(&["，", "。"]);
        assert!(matches!(
            lexical_profile(&all_punct, LexicalOptions { exclude_punctuation: true, ..Default::default() }),
            Err(Error::EmptyCorpus)
        ));
    }

    #[test]
    fn empty_corpus_profile() {
        let c = Corpus::new("e", vec![]);
        assert!(matches!(lexical_profile(&c, LexicalOptions::default()), Err(Error::EmptyCorpus)));
    }
}
