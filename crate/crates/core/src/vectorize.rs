//! Vocabularies and sparse term-document matrices.
//!
//! Four weighting schemes over the same bag-of-words counts: raw counts,
//! smoothed TF-IDF, sublinear ("weighted") TF-IDF, and Okapi BM25.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::textprep::TokenList;

/// Term index: bijection term -> [0, V) in lexicographic term order, plus
/// the document frequencies observed at build time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    /// Sorted lexicographically; the position is the term index.
    terms: Vec<String>,
    doc_freq: Vec<usize>,
    n_docs: usize,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn doc_freq(&self, index: usize) -> usize {
        self.doc_freq[index]
    }

    /// O(log V) lookup; the sorted term list doubles as the index.
    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.terms.binary_search_by(|t| t.as_str().cmp(term)).ok()
    }
}

/// Build a vocabulary from tokenized documents.
///
/// Terms with document frequency below `min_df` are dropped. With
/// `max_features`, the highest-df terms are kept (ties broken by
/// lexicographic order). Indices are assigned in lexicographic order of the
/// retained terms.
pub fn build_vocabulary(
    docs: &[TokenList],
    min_df: usize,
    max_features: Option<usize>,
) -> Result<Vocabulary> {
    if docs.is_empty() {
        return Err(Error::data("cannot build a vocabulary from zero documents"));
    }
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in docs {
        let mut seen: Vec<&str> = doc.iter().map(String::as_str).collect();
        seen.sort_unstable();
        seen.dedup();
        for term in seen {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let mut retained: Vec<(&str, usize)> =
        df.into_iter().filter(|&(_, d)| d >= min_df.max(1)).collect();
    if let Some(cap) = max_features {
        retained.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        retained.truncate(cap);
        retained.sort_by(|a, b| a.0.cmp(b.0));
    }
    if retained.is_empty() {
        return Err(Error::data("empty vocabulary: no term passed the df cutoff"));
    }
    Ok(Vocabulary {
        terms: retained.iter().map(|(t, _)| t.to_string()).collect(),
        doc_freq: retained.iter().map(|&(_, d)| d).collect(),
        n_docs: docs.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Count,
    TfIdf,
    /// Sublinear-tf ("weighted") TF-IDF: tf term 1 + ln(tf).
    WTfIdf,
    Bm25,
}

impl std::fmt::Display for WeightMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeightMode::Count => "count",
            WeightMode::TfIdf => "tfidf",
            WeightMode::WTfIdf => "wtfidf",
            WeightMode::Bm25 => "bm25",
        })
    }
}

impl std::str::FromStr for WeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "count" => Ok(WeightMode::Count),
            "tfidf" => Ok(WeightMode::TfIdf),
            "wtfidf" => Ok(WeightMode::WTfIdf),
            "bm25" => Ok(WeightMode::Bm25),
            other => Err(Error::config(format!("unknown vectorizer mode {other:?}"))),
        }
    }
}

/// Sparse document-term matrix. Rows are documents; entries are sorted by
/// column and never store explicit zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocTermMatrix {
    n_cols: usize,
    rows: Vec<Vec<(usize, f64)>>,
    mode: WeightMode,
}

impl DocTermMatrix {
    /// Build from per-row `(col, weight)` entries. Entries must be sorted by
    /// column, nonzero and non-negative.
    pub fn from_rows(n_cols: usize, rows: Vec<Vec<(usize, f64)>>, mode: WeightMode) -> Result<Self> {
        for (r, row) in rows.iter().enumerate() {
            for window in row.windows(2) {
                if window[0].0 >= window[1].0 {
                    return Err(Error::data(format!("row {r}: columns not strictly increasing")));
                }
            }
            for &(c, w) in row {
                if c >= n_cols {
                    return Err(Error::DimMismatch(format!("row {r}: column {c} >= {n_cols}")));
                }
                if w == 0.0 {
                    return Err(Error::data(format!("row {r}: explicit zero at column {c}")));
                }
                if !(w > 0.0) {
                    return Err(Error::data(format!("row {r}: non-finite or negative weight {w}")));
                }
            }
        }
        Ok(DocTermMatrix { n_cols, rows, mode })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn mode(&self) -> WeightMode {
        self.mode
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Sum of entries in a row (the in-vocabulary token count for counts).
    pub fn row_sum(&self, i: usize) -> f64 {
        self.rows[i].iter().map(|&(_, w)| w).sum()
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.rows[row]
            .binary_search_by_key(&col, |&(c, _)| c)
            .map(|pos| self.rows[row][pos].1)
            .unwrap_or(0.0)
    }

    /// Dense copy, mostly for small tests and the MLP minibatch path.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; self.n_cols];
                for &(c, w) in row {
                    dense[c] = w;
                }
                dense
            })
            .collect()
    }

    /// Keep the listed rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> DocTermMatrix {
        DocTermMatrix {
            n_cols: self.n_cols,
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            mode: self.mode,
        }
    }

    /// Write `row col weight` triplets with a dims/mode header.
    pub fn export_coo(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path.as_ref())?);
        writeln!(out, "# rows={} cols={} nnz={} mode={}", self.n_rows(), self.n_cols, self.nnz(), self.mode)?;
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, w) in row {
                writeln!(out, "{r} {c} {w}")?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Raw term-frequency matrix; out-of-vocabulary tokens are ignored.
pub fn count_vectorize(docs: &[TokenList], vocab: &Vocabulary) -> DocTermMatrix {
    let rows = par::map_slice(docs, |doc| {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for token in doc {
            if let Some(idx) = vocab.index_of(token) {
                *counts.entry(idx).or_insert(0.0) += 1.0;
            }
        }
        counts.into_iter().collect::<Vec<_>>()
    });
    DocTermMatrix { n_cols: vocab.len(), rows, mode: WeightMode::Count }
}

/// Smoothed idf: ln((1 + n) / (1 + df)) + 1.
pub fn smoothed_idf(n_docs: usize, df: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// TF-IDF transform of a count matrix; rows are L2-normalized.
///
/// `sublinear` switches the tf term from raw counts to 1 + ln(tf), which is
/// the "weighted" TF-IDF variant.
pub fn tfidf_transform(m: &DocTermMatrix, vocab: &Vocabulary, sublinear: bool) -> Result<DocTermMatrix> {
    if m.mode != WeightMode::Count {
        return Err(Error::data(format!("tfidf transform expects a count matrix, got {}", m.mode)));
    }
    if m.n_cols != vocab.len() {
        return Err(Error::DimMismatch(format!(
            "matrix has {} columns but vocabulary has {} terms",
            m.n_cols,
            vocab.len()
        )));
    }
    let idf: Vec<f64> = (0..vocab.len())
        .map(|t| smoothed_idf(vocab.n_docs, vocab.doc_freq[t]))
        .collect();
    let rows = par::map_slice(m.rows.as_slice(), |row| {
        let mut weighted: Vec<(usize, f64)> = row
            .iter()
            .map(|&(c, tf)| {
                let tf_term = if sublinear { 1.0 + tf.ln() } else { tf };
                (c, tf_term * idf[c])
            })
            .collect();
        let norm = weighted.iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
        if norm > 0.0 {
            for entry in &mut weighted {
                entry.1 /= norm;
            }
        }
        weighted
    });
    Ok(DocTermMatrix {
        n_cols: m.n_cols,
        rows,
        mode: if sublinear { WeightMode::WTfIdf } else { WeightMode::TfIdf },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bm25Params {
    /// Term-frequency saturation.
    pub k1: f64,
    /// Document-length normalization strength, in [0, 1].
    pub b: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Bm25Params { k1: 1.5, b: 0.75 }
    }
}

/// BM25 idf: ln((n - df + 0.5) / (df + 0.5) + 1), positive even for
/// terms present in every document.
pub fn bm25_idf(n_docs: usize, df: usize) -> f64 {
    ((n_docs as f64 - df as f64 + 0.5) / (df as f64 + 0.5) + 1.0).ln()
}

/// Okapi BM25 transform of a count matrix, with document length taken as the
/// in-vocabulary token count and `avgdl` its corpus mean.
pub fn bm25_transform(m: &DocTermMatrix, vocab: &Vocabulary, params: Bm25Params) -> Result<DocTermMatrix> {
    let n = m.n_rows();
    let avgdl = if n == 0 {
        0.0
    } else {
        (0..n).map(|i| m.row_sum(i)).sum::<f64>() / n as f64
    };
    bm25_transform_with_avgdl(m, vocab, params, avgdl)
}

/// BM25 with an externally supplied `avgdl` (for transforming unseen
/// documents with the statistics of the training corpus).
pub fn bm25_transform_with_avgdl(
    m: &DocTermMatrix,
    vocab: &Vocabulary,
    params: Bm25Params,
    avgdl: f64,
) -> Result<DocTermMatrix> {
    if m.mode != WeightMode::Count {
        return Err(Error::data(format!("bm25 transform expects a count matrix, got {}", m.mode)));
    }
    if m.n_cols != vocab.len() {
        return Err(Error::DimMismatch(format!(
            "matrix has {} columns but vocabulary has {} terms",
            m.n_cols,
            vocab.len()
        )));
    }
    if !(params.k1 >= 0.0) || !(0.0..=1.0).contains(&params.b) {
        return Err(Error::config(format!("invalid bm25 params k1={}, b={}", params.k1, params.b)));
    }
    let idf: Vec<f64> = (0..vocab.len())
        .map(|t| bm25_idf(vocab.n_docs, vocab.doc_freq[t]))
        .collect();
    let rows = par::map_slice(m.rows.as_slice(), |row| {
        let dl: f64 = row.iter().map(|&(_, tf)| tf).sum();
        let len_norm = if avgdl > 0.0 { 1.0 - params.b + params.b * dl / avgdl } else { 1.0 };
        row.iter()
            .map(|&(c, tf)| {
                let sat = tf * (params.k1 + 1.0) / (tf + params.k1 * len_norm);
                (c, idf[c] * sat)
            })
            .collect::<Vec<_>>()
    });
    Ok(DocTermMatrix { n_cols: m.n_cols, rows, mode: WeightMode::Bm25 })
}

/// Average in-vocabulary document length of a count matrix.
pub fn average_doc_len(m: &DocTermMatrix) -> f64 {
    if m.n_rows() == 0 {
        return 0.0;
    }
    (0..m.n_rows()).map(|i| m.row_sum(i)).sum::<f64>() / m.n_rows() as f64
}

fn tokens(doc: &[&str]) -> TokenList {
    doc.iter().map(|s| s.to_string()).collect()
}

/// Apply the tokenizer output directly; convenience for tests and the CLI.
pub fn matrix_from_token_docs(docs: &[Vec<String>], vocab: &Vocabulary) -> DocTermMatrix {
    count_vectorize(docs, vocab)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(list: &[&[&str]]) -> Vec<TokenList> {
        list.iter().map(|d| tokens(d)).collect()
    }

    #[test]
    fn vocabulary_counts_document_frequency() {
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        assert_eq!(vocab.len(), 2);
        assert_eq!(vocab.index_of("a"), Some(0));
        assert_eq!(vocab.doc_freq(0), 2);
        assert_eq!(vocab.doc_freq(1), 1);
        assert_eq!(vocab.n_docs(), 2);
    }

    #[test]
    fn min_df_filters_rare_terms() {
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 2, None).unwrap();
        assert_eq!(vocab.terms(), &["a".to_string()]);
    }

    #[test]
    fn max_features_breaks_df_ties_lexicographically() {
        let d = docs(&[&["y", "x"], &["x", "y"]]);
        let vocab = build_vocabulary(&d, 1, Some(1)).unwrap();
        assert_eq!(vocab.terms(), &["x".to_string()]);
    }

    #[test]
    fn empty_documents_make_empty_vocabulary_error() {
        let d = docs(&[&[], &[]]);
        assert!(build_vocabulary(&d, 1, None).is_err());
        assert!(build_vocabulary(&[], 1, None).is_err());
    }

    #[test]
    fn count_rows_are_raw_term_frequencies() {
        let d = docs(&[&["a", "a", "b"]]);
        let vocab = build_vocabulary(&docs(&[&["a", "b"]]), 1, None).unwrap();
        let m = count_vectorize(&d, &vocab);
        assert_eq!(m.row(0), &[(0, 2.0), (1, 1.0)]);
    }

    #[test]
    fn oov_tokens_are_ignored() {
        let vocab = build_vocabulary(&docs(&[&["a", "b"]]), 1, None).unwrap();
        let m = count_vectorize(&docs(&[&["zz", "qq"]]), &vocab);
        assert!(m.row(0).is_empty());
        assert_eq!(vocab.len(), 2, "vectorizing unseen docs never grows the vocabulary");
    }

    #[test]
    fn count_matrix_small_corpus() {
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let m = count_vectorize(&d, &vocab);
        assert_eq!(m.to_dense(), vec![vec![1.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn tfidf_matches_hand_computation() {
        // Corpus [a b], [a]: idf(a) = ln(3/3)+1 = 1, idf(b) = ln(3/2)+1.
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let m = tfidf_transform(&counts, &vocab, false).unwrap();

        let idf_b = (3.0f64 / 2.0).ln() + 1.0;
        let norm = (1.0 + idf_b * idf_b).sqrt();
        let row = m.row(0);
        assert!((row[0].1 - 1.0 / norm).abs() < 1e-9);
        assert!((row[1].1 - idf_b / norm).abs() < 1e-9);
        // The spec-level 4-decimal picture of the same numbers.
        assert!((row[0].1 - 0.5796).abs() < 5e-5);
        assert!((row[1].1 - 0.8149).abs() < 5e-5);
        // Second doc: single term, unit weight after normalization.
        assert!((m.row(1)[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_document_corpus_collapses_idf() {
        let d = docs(&[&["a", "a", "b"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let m = tfidf_transform(&counts, &vocab, false).unwrap();
        // idf = ln(2/2)+1 = 1 for every term: row is the L2-normalized tf.
        let norm = (4.0f64 + 1.0).sqrt();
        assert!((m.row(0)[0].1 - 2.0 / norm).abs() < 1e-12);
        assert!((m.row(0)[1].1 - 1.0 / norm).abs() < 1e-12);
    }

    #[test]
    fn wtfidf_equals_tfidf_when_all_tf_are_one() {
        let d = docs(&[&["a", "b"], &["b", "c"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let plain = tfidf_transform(&counts, &vocab, false).unwrap();
        let sublinear = tfidf_transform(&counts, &vocab, true).unwrap();
        for i in 0..2 {
            for (a, b) in plain.row(i).iter().zip(sublinear.row(i)) {
                assert_eq!(a.0, b.0);
                assert!((a.1 - b.1).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn tfidf_rows_are_unit_norm() {
        let d = docs(&[&["a", "a", "b", "c"], &["b"], &["c", "c", "c"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        for sublinear in [false, true] {
            let m = tfidf_transform(&counts, &vocab, sublinear).unwrap();
            for i in 0..m.n_rows() {
                let norm: f64 = m.row(i).iter().map(|&(_, w)| w * w).sum::<f64>().sqrt();
                assert!((norm - 1.0).abs() < 1e-12, "row {i} norm {norm}");
            }
        }
    }

    #[test]
    fn tfidf_rejects_non_count_input() {
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let m = tfidf_transform(&counts, &vocab, false).unwrap();
        assert!(tfidf_transform(&m, &vocab, false).is_err());
        assert!(bm25_transform(&m, &vocab, Bm25Params::default()).is_err());
    }

    #[test]
    fn bm25_matches_hand_computation() {
        // Corpus [a a], [b]; k1 = 1.5, b = 0.75; avgdl = 1.5.
        let d = docs(&[&["a", "a"], &["b"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let m = bm25_transform(&counts, &vocab, Bm25Params::default()).unwrap();

        let idf = 2.0f64.ln();
        let tf_part = 2.0 * 2.5 / (2.0 + 1.5 * (0.25 + 0.75 * (2.0 / 1.5)));
        assert!((tf_part - 1.2903).abs() < 5e-5);
        let want = idf * tf_part;
        assert!((want - 0.8944).abs() < 5e-5);
        assert!((m.row(0)[0].1 - want).abs() < 1e-9);
    }

    #[test]
    fn bm25_idf_stays_positive_for_ubiquitous_terms() {
        for n in [1usize, 2, 10, 1000] {
            let idf = bm25_idf(n, n);
            assert!(idf > 0.0);
            assert!(idf < 1.0_f64.max(2.0 / n as f64));
        }
    }

    #[test]
    fn bm25_with_b_zero_ignores_document_length() {
        let d = docs(&[&["a"], &["a", "a", "a", "a", "b", "b"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let counts = count_vectorize(&d, &vocab);
        let p = Bm25Params { k1: 1.2, b: 0.0 };
        let m = bm25_transform(&counts, &vocab, p).unwrap();
        // Same tf anywhere gives the same weight regardless of |d|.
        let single = |tf: f64| bm25_idf(2, 2) * tf * 2.2 / (tf + 1.2);
        assert!((m.row(0)[0].1 - single(1.0)).abs() < 1e-12);
        assert!((m.row(1)[0].1 - single(4.0)).abs() < 1e-12);
    }

    #[test]
    fn bm25_weight_increases_with_tf() {
        let params = Bm25Params::default();
        let idf = bm25_idf(10, 3);
        let weight = |tf: f64, dl: f64, avgdl: f64| {
            idf * tf * (params.k1 + 1.0)
                / (tf + params.k1 * (1.0 - params.b + params.b * dl / avgdl))
        };
        for dl in [3.0, 8.0, 20.0] {
            let mut prev = 0.0;
            for tf in 1..=20 {
                let w = weight(tf as f64, dl, 7.5);
                assert!(w > prev, "tf={tf} dl={dl}");
                prev = w;
            }
        }
    }

    #[test]
    fn sparsity_counts_match_distinct_in_vocab_terms() {
        let d = docs(&[&["a", "a", "b"], &["c", "zz"], &[]]);
        let vocab = build_vocabulary(&docs(&[&["a", "b"], &["c"]]), 1, None).unwrap();
        let m = count_vectorize(&d, &vocab);
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn coo_export_has_header_and_triplets() {
        let d = docs(&[&["a", "b"], &["a"]]);
        let vocab = build_vocabulary(&d, 1, None).unwrap();
        let m = count_vectorize(&d, &vocab);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.coo");
        m.export_coo(&path).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        let mut lines = content.lines();
        assert_eq!(lines.next().unwrap(), "# rows=2 cols=2 nnz=3 mode=count");
        assert_eq!(lines.next().unwrap(), "0 0 1");
        assert_eq!(lines.next().unwrap(), "0 1 1");
        assert_eq!(lines.next().unwrap(), "1 0 1");
    }
}
