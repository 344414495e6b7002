//! Dataset loading, cleaning, splitting and label encoding.
//!
//! A [`LabeledDataset`] carries raw tag strings straight off disk; [`clean`]
//! filters it down to the twelve topic classes and reports what was dropped,
//! and [`encode_labels`] turns the surviving tags into dense class indices.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The twelve topic classes plus the reject code.
///
/// `Rj` is accepted on input and removed by [`clean`]; it never appears in a
/// cleaned dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CategoryTag {
    /// Science & technology
    St,
    /// Politics
    Pt,
    /// Health
    Ht,
    /// Business
    Bn,
    /// Education
    Ed,
    /// Sports
    Sp,
    /// Entertainment
    En,
    /// Social issues
    Si,
    /// Religion
    Re,
    /// General admin & management
    Gm,
    /// Well-being
    Wb,
    /// News
    Nw,
    /// Reject
    Rj,
}

impl CategoryTag {
    /// The twelve classes that survive cleaning, in code order.
    pub const CLASSES: [CategoryTag; 12] = [
        CategoryTag::Bn,
        CategoryTag::Ed,
        CategoryTag::En,
        CategoryTag::Gm,
        CategoryTag::Ht,
        CategoryTag::Nw,
        CategoryTag::Pt,
        CategoryTag::Re,
        CategoryTag::Si,
        CategoryTag::Sp,
        CategoryTag::St,
        CategoryTag::Wb,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            CategoryTag::St => "ST",
            CategoryTag::Pt => "PT",
            CategoryTag::Ht => "HT",
            CategoryTag::Bn => "BN",
            CategoryTag::Ed => "ED",
            CategoryTag::Sp => "SP",
            CategoryTag::En => "EN",
            CategoryTag::Si => "SI",
            CategoryTag::Re => "RE",
            CategoryTag::Gm => "GM",
            CategoryTag::Wb => "WB",
            CategoryTag::Nw => "NW",
            CategoryTag::Rj => "RJ",
        }
    }

    /// Case-insensitive parse of a two-letter code.
    pub fn parse(code: &str) -> Option<CategoryTag> {
        match code.trim().to_ascii_uppercase().as_str() {
            "ST" => Some(CategoryTag::St),
            "PT" => Some(CategoryTag::Pt),
            "HT" => Some(CategoryTag::Ht),
            "BN" => Some(CategoryTag::Bn),
            "ED" => Some(CategoryTag::Ed),
            "SP" => Some(CategoryTag::Sp),
            "EN" => Some(CategoryTag::En),
            "SI" => Some(CategoryTag::Si),
            "RE" => Some(CategoryTag::Re),
            "GM" => Some(CategoryTag::Gm),
            "WB" => Some(CategoryTag::Wb),
            "NW" => Some(CategoryTag::Nw),
            "RJ" => Some(CategoryTag::Rj),
            _ => None,
        }
    }

    pub fn is_reject(&self) -> bool {
        matches!(self, CategoryTag::Rj)
    }
}

impl fmt::Display for CategoryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for CategoryTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CategoryTag::parse(s).ok_or_else(|| Error::data(format!("unknown category tag {s:?}")))
    }
}

/// One short text with an opaque id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
}

/// A document together with its raw tag string.
///
/// Tags stay strings until [`encode_labels`] so that uncleaned datasets can
/// carry codes outside the class enumeration (`ET`, `RN`, `WBB`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledItem {
    pub doc: Document,
    pub tag: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub items: Vec<LabeledItem>,
    /// Free-text source label ("file.csv", "synthetic synonym preset", ...).
    pub provenance: String,
}

impl LabeledDataset {
    pub fn new(items: Vec<LabeledItem>, provenance: impl Into<String>) -> Self {
        LabeledDataset { items, provenance: provenance.into() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn texts(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|it| it.doc.text.as_str())
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|it| it.tag.as_str())
    }
}

/// How to normalize composite news tags of the form `NW - XX`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum NewsPolicy {
    /// Keep the news group as the class (`NW - SP` becomes `NW`).
    #[default]
    AsNews,
    /// Use the embedded subtopic as the class (`NW - SP` becomes `SP`).
    AsSubtopic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FileFormat {
    Csv,
    Jsonl,
}

impl FromStr for FileFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(FileFormat::Csv),
            "jsonl" | "json-lines" | "ndjson" => Ok(FileFormat::Jsonl),
            other => Err(Error::data(format!("unknown dataset format {other:?}"))),
        }
    }
}

impl FileFormat {
    /// Guess from the file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> FileFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("jsonl") || ext.eq_ignore_ascii_case("ndjson") => {
                FileFormat::Jsonl
            }
            _ => FileFormat::Csv,
        }
    }
}

/// Normalize a raw tag: trim, and resolve `NW - XX` composites per policy.
pub fn normalize_tag(raw: &str, policy: NewsPolicy) -> String {
    let t = raw.trim();
    let upper = t.to_ascii_uppercase();
    if let Some(rest) = upper.strip_prefix("NW") {
        let rest = rest.trim_start();
        if let Some(sub) = rest.strip_prefix('-') {
            let sub = sub.trim();
            if !sub.is_empty() {
                return match policy {
                    NewsPolicy::AsNews => "NW".to_string(),
                    NewsPolicy::AsSubtopic => sub.to_string(),
                };
            }
        }
    }
    t.to_string()
}

/// Load a `text,tag` CSV or JSON-lines dataset.
///
/// Row ids are synthesized as ordinals unless the file provides an `id`
/// column/field. Malformed rows are reported with their line number.
pub fn load_dataset(path: impl AsRef<Path>, format: FileFormat) -> Result<LabeledDataset> {
    load_dataset_with(path, format, NewsPolicy::default())
}

pub fn load_dataset_with(
    path: impl AsRef<Path>,
    format: FileFormat,
    policy: NewsPolicy,
) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let provenance = path.display().to_string();
    let items = match format {
        FileFormat::Csv => load_csv(path, policy)?,
        FileFormat::Jsonl => load_jsonl(path, policy)?,
    };
    Ok(LabeledDataset::new(items, provenance))
}

fn load_csv(path: &Path, policy: NewsPolicy) -> Result<Vec<LabeledItem>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(false)
        .from_path(path)
        .map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;

    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h.trim() == name);
    let text_col = col("text")
        .ok_or_else(|| Error::data(format!("{}: missing `text` column", path.display())))?;
    let tag_col = col("tag")
        .ok_or_else(|| Error::data(format!("{}: missing `tag` column", path.display())))?;
    let id_col = col("id");

    let mut items = Vec::new();
    for (ordinal, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line().to_string())
                .unwrap_or_else(|| "?".to_string());
            Error::data(format!("{}: malformed row at line {line}: {e}", path.display()))
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(ordinal as u64 + 2);
        let text = record.get(text_col).ok_or_else(|| {
            Error::data(format!("{}: malformed row at line {line}: missing text field", path.display()))
        })?;
        let tag = record.get(tag_col).ok_or_else(|| {
            Error::data(format!("{}: malformed row at line {line}: missing tag field", path.display()))
        })?;
        let id = id_col
            .and_then(|c| record.get(c))
            .filter(|s| !s.is_empty())
            .map(|s| s.to_string())
            .unwrap_or_else(|| ordinal.to_string());
        items.push(LabeledItem {
            doc: Document { id, text: text.to_string() },
            tag: normalize_tag(tag, policy),
        });
    }
    Ok(items)
}

fn load_jsonl(path: &Path, policy: NewsPolicy) -> Result<Vec<LabeledItem>> {
    let file = std::fs::File::open(path)
        .map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
    let mut items = Vec::new();
    for (ordinal, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&line).map_err(|e| {
            Error::data(format!("{}: malformed row at line {}: {e}", path.display(), ordinal + 1))
        })?;
        let text = value.get("text").and_then(|v| v.as_str()).ok_or_else(|| {
            Error::data(format!(
                "{}: malformed row at line {}: missing \"text\"",
                path.display(),
                ordinal + 1
            ))
        })?;
        let tag = value.get("tag").and_then(|v| v.as_str()).ok_or_else(|| {
            Error::data(format!(
                "{}: malformed row at line {}: missing \"tag\"",
                path.display(),
                ordinal + 1
            ))
        })?;
        let id = value
            .get("id")
            .and_then(|v| v.as_str())
            .map(|s| s.to_string())
            .unwrap_or_else(|| ordinal.to_string());
        items.push(LabeledItem {
            doc: Document { id, text: text.to_string() },
            tag: normalize_tag(tag, policy),
        });
    }
    Ok(items)
}

/// Write a dataset as canonical `text,tag` CSV.
pub fn write_csv(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    let mut writer = csv::Writer::from_path(path.as_ref())?;
    writer.write_record(["text", "tag"])?;
    for item in &ds.items {
        writer.write_record([item.doc.text.as_str(), item.tag.as_str()])?;
    }
    writer.flush()?;
    Ok(())
}

/// Write a dataset as JSON-lines objects `{"id","text","tag"}`.
pub fn write_jsonl(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path.as_ref())?);
    for item in &ds.items {
        let obj = serde_json::json!({
            "id": item.doc.id,
            "text": item.doc.text,
            "tag": item.tag,
        });
        writeln!(file, "{obj}")?;
    }
    file.flush()?;
    Ok(())
}

/// What [`clean`] dropped and why. `dropped_*` plus `retained` always sum to
/// the input size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanReport {
    pub input: usize,
    pub dropped_missing: usize,
    pub dropped_invalid_tag: usize,
    /// Histogram of the invalid tags seen (uppercased).
    pub invalid_tag_histogram: BTreeMap<String, usize>,
    pub dropped_rejected: usize,
    pub retained: usize,
}

/// Drop rows with missing text/tag, reject rows, and rows with tags outside
/// the twelve-class set. Retained tags are canonicalized to uppercase codes.
///
/// Cleaning never fails; everything dropped is counted in the report.
pub fn clean(ds: &LabeledDataset) -> (LabeledDataset, CleanReport) {
    let mut report = CleanReport { input: ds.len(), ..CleanReport::default() };
    let mut items = Vec::with_capacity(ds.len());
    for item in &ds.items {
        if item.doc.text.trim().is_empty() || item.tag.trim().is_empty() {
            report.dropped_missing += 1;
            continue;
        }
        match CategoryTag::parse(&item.tag) {
            Some(tag) if tag.is_reject() => report.dropped_rejected += 1,
            Some(tag) => {
                items.push(LabeledItem {
                    doc: item.doc.clone(),
                    tag: tag.code().to_string(),
                });
            }
            None => {
                report.dropped_invalid_tag += 1;
                *report
                    .invalid_tag_histogram
                    .entry(item.tag.trim().to_ascii_uppercase())
                    .or_insert(0) += 1;
            }
        }
    }
    report.retained = items.len();
    (LabeledDataset::new(items, ds.provenance.clone()), report)
}

/// Seeded uniform shuffle, then `floor(n * ratio)` items for training and the
/// rest for testing.
pub fn split(
    ds: &LabeledDataset,
    train_ratio: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if ds.is_empty() {
        return Err(Error::data("cannot split an empty dataset"));
    }
    if !(train_ratio > 0.0 && train_ratio < 1.0) {
        return Err(Error::config(format!("train ratio {train_ratio} not in (0, 1)")));
    }
    let mut order: Vec<usize> = (0..ds.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = train_size(ds.len(), train_ratio);
    let pick = |idx: &[usize]| {
        LabeledDataset::new(
            idx.iter().map(|&i| ds.items[i].clone()).collect(),
            ds.provenance.clone(),
        )
    };
    Ok((pick(&order[..n_train]), pick(&order[n_train..])))
}

/// Class-stratified variant: each tag group is shuffled and floor-split
/// independently, so class ratios carry over to both sides.
pub fn split_stratified(
    ds: &LabeledDataset,
    train_ratio: f64,
    seed: u64,
) -> Result<(LabeledDataset, LabeledDataset)> {
    if ds.is_empty() {
        return Err(Error::data("cannot split an empty dataset"));
    }
    if !(train_ratio > 0.0 && train_ratio < 1.0) {
        return Err(Error::config(format!("train ratio {train_ratio} not in (0, 1)")));
    }
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, item) in ds.items.iter().enumerate() {
        groups.entry(item.tag.as_str()).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for idx in groups.values_mut() {
        idx.shuffle(&mut rng);
        let n_train = train_size(idx.len(), train_ratio);
        train_idx.extend_from_slice(&idx[..n_train]);
        test_idx.extend_from_slice(&idx[n_train..]);
    }
    let pick = |idx: &[usize]| {
        LabeledDataset::new(
            idx.iter().map(|&i| ds.items[i].clone()).collect(),
            ds.provenance.clone(),
        )
    };
    Ok((pick(&train_idx), pick(&test_idx)))
}

pub fn train_size(n: usize, ratio: f64) -> usize {
    (n as f64 * ratio).floor() as usize
}

/// Bijection between the tags present in a cleaned dataset and `[0, K)`.
/// Indices follow sorted code order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEncoder {
    classes: Vec<CategoryTag>,
}

impl LabelEncoder {
    /// Build from the set of tags present, indices in sorted code order.
    pub fn from_tags(tags: &[CategoryTag]) -> LabelEncoder {
        let mut codes: Vec<CategoryTag> = tags.to_vec();
        codes.sort_by_key(|t| t.code());
        codes.dedup();
        LabelEncoder { classes: codes }
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[CategoryTag] {
        &self.classes
    }

    pub fn encode(&self, tag: CategoryTag) -> Option<usize> {
        self.classes.iter().position(|&t| t == tag)
    }

    pub fn decode(&self, index: usize) -> Option<CategoryTag> {
        self.classes.get(index).copied()
    }
}

/// Encode every tag of a cleaned dataset as a class index.
///
/// Fails on reject or unknown tags (i.e. on uncleaned input).
pub fn encode_labels(ds: &LabeledDataset) -> Result<(Vec<usize>, LabelEncoder)> {
    let mut present: Vec<CategoryTag> = Vec::new();
    let mut parsed = Vec::with_capacity(ds.len());
    for item in &ds.items {
        let tag = CategoryTag::parse(&item.tag)
            .ok_or_else(|| Error::data(format!("unencodable tag {:?} (uncleaned input?)", item.tag)))?;
        if tag.is_reject() {
            return Err(Error::data("reject tag RJ in input; run clean first"));
        }
        present.push(tag);
        parsed.push(tag);
    }
    let encoder = LabelEncoder::from_tags(&present);
    let indices = parsed
        .into_iter()
        .map(|t| encoder.encode(t).expect("encoder covers all present tags"))
        .collect();
    Ok((indices, encoder))
}
