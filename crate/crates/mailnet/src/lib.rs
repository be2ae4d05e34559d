//! Analysis of interaction networks reconstructed from mailing-list archives.
//!
//! The library covers the whole pipeline: parsing archives into message
//! stores ([`ingest`]), building directed reply networks and partitioning
//! participants into connectivity sectors ([`network`]), computing textual
//! measures over per-sector corpora ([`textmetrics`] on top of [`lexicon`]
//! resources), comparing sectors statistically ([`stats`], [`histdiff`]),
//! and orchestrating batch runs that emit table files ([`pipeline`]).

pub mod config;
pub mod histdiff;
pub mod ingest;
pub mod lexicon;
pub mod network;
pub mod pipeline;
pub mod report;
pub mod stats;
pub mod textmetrics;

#[doc(hidden)]
pub mod testutil;
