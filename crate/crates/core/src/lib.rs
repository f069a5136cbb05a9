//! Marked Gauss codes for links in `S_g x S^1` and the combinatorics built on
//! them: arc and crossing labels, diagram moves with label bookkeeping,
//! lifts to covering spaces, labeled quandles and their colorings, a
//! label-indexed bracket state sum, and a crossing-change unknotting bound.

pub mod bracket;
pub mod cli;
pub mod code;
pub mod labels;
pub mod lifting;
pub mod moves;
pub mod planarity;
pub mod quandle;
pub mod records;
pub mod sample;
pub mod text;
pub mod unknotting;

pub use code::{CrossingId, MarkedGaussCode, Position, Role, Sign, Symbol};
pub use labels::{compute_labels, LabeledDiagram};
pub use text::{format_code, parse_code};
