//! Multigraph representation, canonical forms, enumeration and file formats.

mod canon;
mod enumerate;
mod format;
mod multigraph;

pub use canon::{
    are_isomorphic, canonical_form, canonical_graph, canonical_labeling, CanonicalForm, EnumOrder,
};
pub use enumerate::{
    augment_level, augmentations, enumerate_graphs, enumerate_graphs_with, enumerate_hereditary,
    sort_enum_order, EnumBudget,
};
pub use format::{parse_graph6, parse_text, parse_text_blocks, to_graph6, to_text};
pub use multigraph::{Mode, MultiGraph};
