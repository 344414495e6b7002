//! Multi-class short-text categorization toolkit.
//!
//! The crate covers the full desk-scale pipeline for categorizing short
//! documents (tweets and tweet-like text) into twelve topic classes:
//!
//! - [`corpus`]: loading, cleaning, splitting and label-encoding datasets
//! - [`textprep`]: tokenization, stopword removal, Porter stemming
//! - [`vectorize`]: vocabularies and sparse term-document matrices
//!   (counts, TF-IDF, sublinear TF-IDF, Okapi BM25)
//! - [`linear`], [`tree`], [`mlp`]: Naive Bayes, logistic regression,
//!   linear SVM, CART forests, gradient boosting and a ReLU MLP
//! - [`optimize`]: the shared L-BFGS and Adam optimizers
//! - [`eval`]: accuracy, macro P/R/F1, one-vs-rest AUC, confusion matrices
//! - [`tune`]: randomized hyperparameter search with k-fold CV
//! - [`agreement`]: annotator ground-truth aggregation, overlap and kappa
//! - [`bootstrap`]: coefficient-driven corpus expansion from document sources
//! - [`embedviz`]: exact t-SNE embedding plus SVG scatter plots
//! - [`synthgen`]: the deterministic synthetic corpus generator
//! - [`pipeline`]: end-to-end train/predict/evaluate glue and model envelopes
//!
//! With the default `parallel` feature the data-parallel inner loops (forest
//! trees, one-vs-rest classes, vectorization rows, affinity rows, CV trials)
//! run on rayon; without it everything falls back to equivalent sequential
//! loops with identical results.

pub mod agreement;
pub mod bootstrap;
pub mod corpus;
pub mod embedviz;
pub mod error;
pub mod eval;
pub mod linear;
pub mod mlp;
pub mod optimize;
pub mod par;
pub mod pipeline;
pub mod scores;
pub mod synthgen;
pub mod textprep;
pub mod tree;
pub mod tune;
pub mod vectorize;

pub use error::{Error, Result};
