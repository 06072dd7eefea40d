//! Finding, verifying, and refuting diameter-two orientations of
//! undirected graphs.
//!
//! A graph of order n with minimum degree at least n/2 + ln n / ln(4/3)
//! always admits an orientation of diameter two, and a random orientation
//! finds one quickly; the extremal family G_k shows the logarithmic term
//! cannot be dropped. This crate provides the graph substrate, random
//! and exhaustive orientation search, the G_k construction with witness
//! extraction, and numeric checks of the supporting inequalities.

pub mod bits;
pub mod exact;
pub mod extremal;
pub mod graph;
pub mod orientation;
pub mod random;

pub use graph::{parse_graph, serialize_graph, Graph};
pub use orientation::{parse_orientation, serialize_orientation, Orientation};
