//! Classification of compact surfaces given as edge words.
//!
//! A surface is presented by a polygon whose edges are glued in pairs,
//! written as a cyclic word such as `a b a' b'` (the torus). Labels that
//! occur once are free edges and make up the boundary.
//!
//! [`normalize`] reduces a word to sphere, a connected sum of tori, or a
//! connected sum of projective planes (plus a hole count) by explicit
//! cut-and-paste rewriting, and returns a [`Trace`] of every rule it applied.
//! The [`oracle`] module classifies the same words from Euler
//! characteristic, orientability and boundary count alone.
//!
//! ```
//! use surfclass::{normalize, parse, SurfaceKind};
//!
//! let klein = parse("a b a' b").unwrap();
//! let (form, trace) = normalize(&klein);
//! assert_eq!(form.kind(), SurfaceKind::Nonorientable);
//! assert_eq!(form.genus(), 2);
//! assert_eq!(surfclass::replay(&klein, &trace).unwrap().len(), 0);
//! ```

pub mod normalize;
pub mod oracle;
pub mod rewrite;
pub mod word;

pub use normalize::{
    canonical_word, equivalent, glue_singles, hive_hole, normalize, tally, NormalForm, SurfaceKind,
};
pub use rewrite::{
    cancel, fold_concord, interleave_to_handle, replay, slide_block, transpose_discord,
    RewriteError, RewriteStep, Rule, Trace,
};
pub use word::{
    cyclic_equal, parse, render, Character, Label, Letter, PairingTable, Word, WordError,
};
