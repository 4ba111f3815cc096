//! # handfuse
//!
//! Peg-free hand-geometry recognition from silhouettes of both hands,
//! fused at the feature level and at the decision level with
//! Dempster-Shafer belief functions.
//!
//! The pipeline: segment a hand photograph into a binary silhouette,
//! rotate it upright, trim the wrist, locate the 13 fingertip/valley
//! landmarks, measure 26 geometric features, match left and right hand
//! templates with two probabilistic classifiers, and fuse their decisions
//! through mass-function combination.
//!
//! A parametric synthetic-hand generator with analytically known
//! landmarks and features serves as the test oracle and powers the
//! evaluation harness.

pub mod config;
pub mod error;
pub mod evaluation;
pub mod evidence;
pub mod features;
pub mod geometry;
pub mod imaging;
pub mod io;
pub mod landmarks;
pub mod matchers;
pub mod pipeline;
pub mod store;
pub mod synthhand;

pub use error::{Error, Result};
